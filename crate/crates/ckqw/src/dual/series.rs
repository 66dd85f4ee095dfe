//! Power series in `w` with `D_n` coefficients, truncated after `w^d`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pimenov::PimenovElement;

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    c: Vec<PimenovElement>,
}

impl Series {
    pub fn zero(n: usize, d: usize) -> Self {
        Series { c: vec![PimenovElement::zero(n); d + 1] }
    }

    pub fn constant(d: usize, x: &PimenovElement) -> Self {
        let mut s = Series::zero(x.n(), d);
        s.c[0] = x.clone();
        s
    }

    pub fn one(n: usize, d: usize) -> Self {
        Series::constant(d, &PimenovElement::one(n))
    }

    /// `z w^k`.
    pub fn monomial(n: usize, d: usize, k: usize, z: Complex64) -> Self {
        let mut s = Series::zero(n, d);
        if k <= d {
            s.c[k] = PimenovElement::scalar(n, z);
        }
        s
    }

    /// `Σ_k f(k) w^k`.
    pub fn from_fn(n: usize, d: usize, f: impl Fn(usize) -> PimenovElement) -> Self {
        Series { c: (0..=d).map(|k| { let x = f(k); debug_assert_eq!(x.n(), n); x }).collect() }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn tags(&self) -> usize {
        self.c[0].n()
    }

    pub fn coeff(&self, k: usize) -> &PimenovElement {
        &self.c[k]
    }

    pub fn coeffs(&self) -> &[PimenovElement] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|x| x.max_abs()).fold(0.0, f64::max)
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Series { c: self.c.iter().map(|x| x.scale(z)).collect() }
    }

    pub fn scale_pim(&self, x: &PimenovElement) -> Self {
        Series { c: self.c.iter().map(|y| y * x).collect() }
    }

    /// Multiplies by `w^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut s = Series::zero(self.tags(), self.order());
        for i in 0..=self.order() {
            if i + k <= self.order() {
                s.c[i + k] = self.c[i].clone();
            }
        }
        s
    }

    /// Sets coefficients with magnitude at most `tol` to zero.
    pub fn prune(&mut self, tol: f64) {
        for x in &mut self.c {
            for m in x.support().collect::<Vec<_>>() {
                if x.coeff(m).norm() <= tol {
                    x.set_coeff(m, Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let a0 = self.c[0].inv()?;
        let d = self.order();
        let mut out = Series::zero(self.tags(), d);
        out.c[0] = a0.clone();
        for k in 1..=d {
            let mut acc = PimenovElement::zero(self.tags());
            for i in 1..=k {
                acc += &(&self.c[i] * &out.c[k - i]);
            }
            out.c[k] = -&(&acc * &a0);
        }
        Ok(out)
    }

    /// Square root with `sqrt(a₀)` taken on the principal branch of the
    /// scalar part.
    pub fn sqrt(&self) -> Result<Self> {
        let a0 = &self.c[0];
        if !a0.is_unit() {
            return Err(Error::NotInvertible);
        }
        let r0 = crate::pimenov::pim_apply(&crate::pimenov::Kernel::Pow(0.5), a0)?;
        let two_r0_inv = r0.scale_real(2.0).inv()?;
        let d = self.order();
        let mut out = Series::zero(self.tags(), d);
        out.c[0] = r0;
        for k in 1..=d {
            let mut acc = self.c[k].clone();
            for i in 1..k {
                acc -= &(&out.c[i] * &out.c[k - i]);
            }
            out.c[k] = &acc * &two_r0_inv;
        }
        Ok(out)
    }

    /// `exp` of a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.c[0].is_zero() {
            return Err(Error::Dimension("exp needs a series without constant term".into()));
        }
        // e' = a' e
        let d = self.order();
        let n = self.tags();
        let mut out = Series::zero(n, d);
        out.c[0] = PimenovElement::one(n);
        for k in 1..=d {
            let mut acc = PimenovElement::zero(n);
            for i in 1..=k {
                acc += &(&self.c[i] * &out.c[k - i]).scale_real(i as f64);
            }
            out.c[k] = acc.scale_real(1.0 / k as f64);
        }
        Ok(out)
    }

    /// `Σ_k c_k (a w)^{2k}` for an even power series, e.g. `cos(J w)` with
    /// `(J²)^k`-weighted coefficients.
    pub fn even(n: usize, d: usize, jsq: &PimenovElement, a: f64, coeff: impl Fn(usize) -> f64) -> Self {
        Series::from_fn(n, d, |k| {
            if k % 2 == 1 {
                PimenovElement::zero(n)
            } else {
                jsq.pow((k / 2) as u32).scale_real(coeff(k / 2) * a.powi(k as i32))
            }
        })
    }

    /// `cos(a J w)`.
    pub fn jcos(n: usize, d: usize, jsq: &PimenovElement, a: f64) -> Self {
        Series::even(n, d, jsq, a, |k| sign(k) / factorial(2 * k))
    }

    /// `J⁻¹ sin(a J w)`.
    pub fn jinv_sin(n: usize, d: usize, jsq: &PimenovElement, a: f64) -> Self {
        Series::even(n, d, jsq, a, |k| sign(k) / factorial(2 * k + 1)).shift(1).scale(Complex64::new(a, 0.0))
    }
}

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|x| x as f64).product()
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        Series { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        Series { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { c: self.c.iter().map(|a| -a).collect() }
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        let d = self.order().min(o.order());
        let mut out = Series::zero(self.tags(), d);
        for i in 0..=d {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=d - i {
                if !o.c[j].is_zero() {
                    out.c[i + j] += &(&self.c[i] * &o.c[j]);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jsq(x: f64) -> PimenovElement {
        PimenovElement::real(2, x)
    }

    #[test]
    fn pythagoras() {
        let c = Series::jcos(2, 10, &jsq(1.0), 1.0);
        let s = Series::jinv_sin(2, 10, &jsq(1.0), 1.0);
        let lhs = &(&c * &c) + &(&s * &s);
        assert!(lhs.dist_one() < 1e-15);
    }

    #[test]
    fn sqrt_squares_back() {
        let s = Series::jinv_sin(2, 9, &jsq(1.0), 1.0);
        // sin(w)/w has a unit constant term
        let f = Series::from_fn(2, 8, |k| s.coeff(k + 1).clone());
        let r = f.sqrt().unwrap();
        assert!((&(&r * &r) - &f).max_abs() < 1e-15);
    }

    #[test]
    fn exp_inverse() {
        let a = Series::monomial(2, 8, 1, Complex64::new(0.5, 0.0));
        let e = a.exp().unwrap();
        let f = (-&a).exp().unwrap();
        assert!((&e * &f).dist_one() < 1e-15);
        assert!((e.inv().unwrap().coeff(3) - f.coeff(3)).max_abs() < 1e-15);
    }

    #[test]
    fn nilpotent_cos_is_one() {
        let i1 = PimenovElement::tag(2, 1);
        let j = &i1 * &PimenovElement::tag(2, 2);
        let c = Series::jcos(2, 8, &(&j * &j), 0.5);
        assert_eq!(c, Series::one(2, 8));
        let s = Series::jinv_sin(2, 8, &(&j * &j), 0.5);
        assert_eq!(s, Series::monomial(2, 8, 1, Complex64::new(0.5, 0.0)));
    }

    impl Series {
        fn dist_one(&self) -> f64 {
            (self - &Series::one(self.tags(), self.order())).max_abs()
        }
    }
}
