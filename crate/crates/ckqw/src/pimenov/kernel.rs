use num_complex::Complex64;

use super::PimenovElement;
use crate::error::{Error, Result};

/// An analytic function known through its derivatives at a point.
pub trait AnalyticKernel: Sync {
    fn name(&self) -> &str;
    /// `f^{(r)}(a0)`, or `None` when the derivative is unavailable there.
    fn derivative(&self, r: usize, a0: Complex64) -> Option<Complex64>;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Kernel {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Log,
    /// `a^p` on the principal branch.
    Pow(f64),
}

impl Kernel {
    pub fn from_name(name: &str) -> Option<Kernel> {
        Some(match name {
            "exp" => Kernel::Exp,
            "sin" => Kernel::Sin,
            "cos" => Kernel::Cos,
            "sinh" => Kernel::Sinh,
            "cosh" => Kernel::Cosh,
            "log" => Kernel::Log,
            "sqrt" => Kernel::Pow(0.5),
            "inv" => Kernel::Pow(-1.0),
            _ => return None,
        })
    }
}

impl AnalyticKernel for Kernel {
    fn name(&self) -> &str {
        match self {
            Kernel::Exp => "exp",
            Kernel::Sin => "sin",
            Kernel::Cos => "cos",
            Kernel::Sinh => "sinh",
            Kernel::Cosh => "cosh",
            Kernel::Log => "log",
            Kernel::Pow(_) => "pow",
        }
    }

    fn derivative(&self, r: usize, a: Complex64) -> Option<Complex64> {
        Some(match self {
            Kernel::Exp => a.exp(),
            Kernel::Sin => [a.sin(), a.cos(), -a.sin(), -a.cos()][r % 4],
            Kernel::Cos => [a.cos(), -a.sin(), -a.cos(), a.sin()][r % 4],
            Kernel::Sinh => [a.sinh(), a.cosh()][r % 2],
            Kernel::Cosh => [a.cosh(), a.sinh()][r % 2],
            Kernel::Log => {
                if a == Complex64::new(0.0, 0.0) {
                    return None;
                }
                if r == 0 {
                    a.ln()
                } else {
                    let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
                    let fact: f64 = (1..r).map(|k| k as f64).product();
                    Complex64::new(sign * fact, 0.0) / a.powu(r as u32)
                }
            }
            Kernel::Pow(p) => {
                if a == Complex64::new(0.0, 0.0) && r > 0 {
                    return None;
                }
                let falling: f64 = (0..r).map(|k| p - k as f64).product();
                a.powf(p - r as f64) * falling
            }
        })
    }
}

/// A kernel defined by a closure over `(order, point)`.
pub struct FnKernel<F> {
    pub name: String,
    pub f: F,
}

impl<F> AnalyticKernel for FnKernel<F>
where
    F: Fn(usize, Complex64) -> Option<Complex64> + Sync,
{
    fn name(&self) -> &str {
        &self.name
    }
    fn derivative(&self, r: usize, a0: Complex64) -> Option<Complex64> {
        (self.f)(r, a0)
    }
}

/// Sum over the unordered partitions of `subset` into `r` nonempty blocks of
/// the product of the block coefficients of `a`.
pub fn partition_sum(subset: usize, r: usize, a: &PimenovElement) -> Result<Complex64> {
    let p = subset.count_ones() as usize;
    if r == 0 || r > p {
        return Err(Error::BlockCount { r, p });
    }
    Ok(partitions(subset, r, a.coeffs()))
}

fn partitions(mask: usize, r: usize, a: &[Complex64]) -> Complex64 {
    if mask == 0 {
        return if r == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
    }
    if r == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let low = mask & mask.wrapping_neg();
    let rest = mask ^ low;
    let mut total = Complex64::new(0.0, 0.0);
    let mut s = rest;
    loop {
        let block = low | s;
        if a[block] != Complex64::new(0.0, 0.0) {
            total += a[block] * partitions(rest ^ s, r - 1, a);
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & rest;
    }
    total
}

/// Lifts `f` to `D_n`: the coefficient of `K` is `Σ_r f^{(r)}(a_∅) d(K; r)`.
pub fn pim_apply(f: &dyn AnalyticKernel, a: &PimenovElement) -> Result<PimenovElement> {
    let n = a.n();
    let size = 1usize << n;
    let a0 = a.scalar_part();
    let mut derivs = Vec::with_capacity(n + 1);
    for r in 0..=n {
        derivs.push(f.derivative(r, a0).ok_or_else(|| Error::KernelDerivative {
            name: f.name().to_string(),
            order: r,
            at: format!("{a0}"),
        })?);
    }
    // table[mask][r] = d(mask; r), filled by increasing mask
    let zero = Complex64::new(0.0, 0.0);
    let mut table = vec![zero; size * (n + 1)];
    table[0] = Complex64::new(1.0, 0.0);
    let c = a.coeffs();
    for mask in 1..size {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut s = rest;
        loop {
            let block = low | s;
            if c[block] != zero {
                let rem = rest ^ s;
                for r in 1..=n {
                    let prev = table[rem * (n + 1) + r - 1];
                    if prev != zero {
                        table[mask * (n + 1) + r] += c[block] * prev;
                    }
                }
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & rest;
        }
    }
    let mut out = PimenovElement::zero(n);
    out.set_coeff(0, derivs[0]);
    for mask in 1..size {
        let mut v = zero;
        for r in 1..=mask.count_ones() as usize {
            let d = table[mask * (n + 1) + r];
            if d != zero {
                v += derivs[r] * d;
            }
        }
        out.set_coeff(mask, v);
    }
    Ok(out)
}

/// `Σ_m coeff(m) y^m`, summed until the terms fall below round-off.
pub fn even_series(y: &PimenovElement, coeff: impl Fn(usize) -> f64) -> PimenovElement {
    let n = y.n();
    let mut sum = PimenovElement::real(n, coeff(0));
    let mut pow = PimenovElement::one(n);
    let mut quiet = 0;
    for m in 1..400 {
        pow = &pow * y;
        if pow.is_zero() {
            break;
        }
        let term = pow.scale_real(coeff(m));
        sum += &term;
        if term.max_abs() <= 1e-18 * sum.max_abs().max(1.0) {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    sum
}

fn inv_fact(k: usize) -> f64 {
    let mut x = 1.0;
    for i in 2..=k {
        x /= i as f64;
    }
    x
}

/// `j⁻¹ sin(j x)` from `j²`, never dividing by `j`.
pub fn jinv_sin(j2: &PimenovElement, x: Complex64) -> PimenovElement {
    let y = j2.scale(x * x);
    even_series(&y, |m| if m % 2 == 0 { 1.0 } else { -1.0 } * inv_fact(2 * m + 1)).scale(x)
}

/// `j⁻¹ sinh(j x)` from `j²`.
pub fn jinv_sinh(j2: &PimenovElement, x: Complex64) -> PimenovElement {
    let y = j2.scale(x * x);
    even_series(&y, |m| inv_fact(2 * m + 1)).scale(x)
}

/// `cos(j x)` from `j²`.
pub fn jcos(j2: &PimenovElement, x: Complex64) -> PimenovElement {
    let y = j2.scale(x * x);
    even_series(&y, |m| if m % 2 == 0 { 1.0 } else { -1.0 } * inv_fact(2 * m))
}

/// `cosh(j x)` from `j²`.
pub fn jcosh(j2: &PimenovElement, x: Complex64) -> PimenovElement {
    let y = j2.scale(x * x);
    even_series(&y, |m| inv_fact(2 * m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pimenov::parse_element;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn sin_on_dual_numbers() {
        let a = PimenovElement::from_coeffs(1, &[c(0.3), c(1.7)]).unwrap();
        let s = pim_apply(&Kernel::Sin, &a).unwrap();
        assert_eq!(s.coeff(0), c(0.3f64.sin()));
        assert!((s.coeff(1) - c(1.7 * 0.3f64.cos())).norm() < 1e-15);
    }

    #[test]
    fn exp_over_d2() {
        let (a0, a1, a2, a12) = (0.2, 0.5, -1.1, 0.7);
        let a = PimenovElement::from_coeffs(2, &[c(a0), c(a1), c(a2), c(a12)]).unwrap();
        let e = pim_apply(&Kernel::Exp, &a).unwrap();
        let e0 = a0.exp();
        assert!((e.coeff(3) - c(e0 * (a12 + a1 * a2))).norm() < 1e-15);
        assert!((e.coeff(1) - c(e0 * a1)).norm() < 1e-15);
    }

    #[test]
    fn partition_sum_cases() {
        let a = parse_element("1 + 2*i1 + 3*i2 + 5*i3 + 7*i1*i2 + 11*i1*i3 + 13*i2*i3", 3).unwrap();
        assert_eq!(partition_sum(0b011, 2, &a).unwrap(), c(6.0));
        assert_eq!(partition_sum(0b011, 1, &a).unwrap(), c(7.0));
        // a1 a23 + a2 a13 + a3 a12
        assert_eq!(partition_sum(0b111, 2, &a).unwrap(), c(2.0 * 13.0 + 3.0 * 11.0 + 5.0 * 7.0));
        assert_eq!(partition_sum(0b111, 3, &a).unwrap(), c(30.0));
        assert!(partition_sum(0b011, 3, &a).is_err());
        assert!(partition_sum(0b011, 0, &a).is_err());
    }

    #[test]
    fn log_needs_a_unit() {
        let a = PimenovElement::tag(1, 1);
        assert!(pim_apply(&Kernel::Log, &a).is_err());
    }

    #[test]
    fn scaled_series_match_closed_forms() {
        let one = PimenovElement::one(0);
        let x = Complex64::new(0.37, 0.2);
        assert!((jinv_sinh(&one, x).coeff(0) - x.sinh()).norm() < 1e-15);
        assert!((jinv_sin(&one, x).coeff(0) - x.sin()).norm() < 1e-15);
        assert!((jcos(&one, x).coeff(0) - x.cos()).norm() < 1e-15);
        assert!((jcosh(&one, x).coeff(0) - x.cosh()).norm() < 1e-15);
        let zero = PimenovElement::zero(0);
        assert_eq!(jinv_sin(&zero, x).coeff(0), x);
    }
}
