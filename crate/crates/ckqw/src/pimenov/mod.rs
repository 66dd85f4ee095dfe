//! The Pimenov algebra `D_n`: commuting nilpotent generators `ι_1..ι_n` with
//! `ι_k² = 0`, complex coefficients indexed by subsets of tags.
//!
//! Subsets are bitmasks; bit `k-1` stands for `ι_k`. Which coefficients may be
//! nonzero is decided by the subset rule alone, so vanishing by nilpotency is
//! structural and never a matter of tolerance.

mod grassmann;
mod kernel;
mod parse;
mod signature;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use grassmann::{verify_grassmann_embedding, GrassmannReport};
pub use kernel::{
    even_series, jcos, jcosh, jinv_sin, jinv_sinh, partition_sum, pim_apply, AnalyticKernel,
    FnKernel, Kernel,
};
pub use parse::{parse_complex, parse_element};
pub use signature::{scaled_trig, ParameterSignature, Slot};

pub const MAX_TAGS: usize = 8;

type Coeffs = SmallVec<[Complex64; 4]>;

#[derive(Clone, PartialEq)]
pub struct PimenovElement {
    n: usize,
    c: Coeffs,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl PimenovElement {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_TAGS, "tag count {n} exceeds {MAX_TAGS}");
        PimenovElement { n, c: SmallVec::from_elem(ZERO, 1 << n) }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(n: usize, z: Complex64) -> Self {
        let mut e = Self::zero(n);
        e.c[0] = z;
        e
    }

    pub fn real(n: usize, x: f64) -> Self {
        Self::scalar(n, Complex64::new(x, 0.0))
    }

    /// `z · ι^mask`.
    pub fn monomial(n: usize, mask: usize, z: Complex64) -> Self {
        let mut e = Self::zero(n);
        assert!(mask < (1 << n), "mask {mask:#b} outside {n} tags");
        e.c[mask] = z;
        e
    }

    /// The generator `ι_k`, `k` counted from 1.
    pub fn tag(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= n, "tag i{k} outside 1..={n}");
        Self::monomial(n, 1 << (k - 1), Complex64::new(1.0, 0.0))
    }

    pub fn from_coeffs(n: usize, coeffs: &[Complex64]) -> Result<Self> {
        if n > MAX_TAGS {
            return Err(Error::TooManyTags(n));
        }
        if coeffs.len() != 1 << n {
            return Err(Error::Dimension(format!(
                "{} coefficients for {} tags",
                coeffs.len(),
                n
            )));
        }
        Ok(PimenovElement { n, c: coeffs.iter().copied().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, mask: usize) -> Complex64 {
        self.c[mask]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c
    }

    pub fn set_coeff(&mut self, mask: usize, z: Complex64) {
        self.c[mask] = z;
    }

    /// The coefficient of the empty subset.
    pub fn scalar_part(&self) -> Complex64 {
        self.c[0]
    }

    pub fn nilpotent_part(&self) -> Self {
        let mut e = self.clone();
        e.c[0] = ZERO;
        e
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|z| *z == ZERO)
    }

    pub fn is_unit(&self) -> bool {
        self.c[0] != ZERO
    }

    /// Masks carrying a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.c.iter().enumerate().filter(|(_, z)| **z != ZERO).map(|(m, _)| m)
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &Self) -> f64 {
        self.c.iter().zip(&other.c).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, z: Complex64) -> Self {
        PimenovElement { n: self.n, c: self.c.iter().map(|a| a * z).collect() }
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.scale(Complex64::new(x, 0.0))
    }

    /// Moves the element into `D_m` for `m ≥ n`.
    pub fn widen(&self, m: usize) -> Self {
        assert!(m >= self.n);
        let mut e = Self::zero(m);
        e.c[..self.c.len()].copy_from_slice(&self.c);
        e
    }

    /// Product checked for matching tag counts.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::TagMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (a, x) in self.c.iter().enumerate() {
            if *x == ZERO {
                continue;
            }
            for (b, y) in other.c.iter().enumerate() {
                if a & b == 0 && *y != ZERO {
                    out.c[a | b] += x * y;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::TagMismatch(self.n, other.n));
        }
        Ok(PimenovElement { n: self.n, c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect() })
    }

    /// Inverse of a unit via the terminating geometric series.
    pub fn inv(&self) -> Result<Self> {
        let a0 = self.c[0];
        if a0 == ZERO {
            return Err(Error::NotInvertible);
        }
        let inv0 = a0.inv();
        let x = self.nilpotent_part().scale(-inv0);
        let mut sum = Self::one(self.n);
        let mut pow = Self::one(self.n);
        for _ in 0..self.n {
            pow = &pow * &x;
            if pow.is_zero() {
                break;
            }
            sum += &pow;
        }
        Ok(sum.scale(inv0))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Multiplies by `ι^mask`, dropping overlapping terms.
    pub fn shift(&self, mask: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (m, z) in self.c.iter().enumerate() {
            if m & mask == 0 {
                out.c[m | mask] = *z;
            }
        }
        out
    }
}

impl fmt::Debug for PimenovElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}[{}]", self.n, self)
    }
}

pub(crate) fn fmt_scalar(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}j", z.im)
    } else if z.im < 0.0 {
        format!("({}-{}j)", z.re, -z.im)
    } else {
        format!("({}+{}j)", z.re, z.im)
    }
}

impl fmt::Display for PimenovElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, z) in self.c.iter().enumerate() {
            if *z == ZERO {
                continue;
            }
            let (neg, z) = if z.im == 0.0 && z.re < 0.0 { (true, -z) } else { (false, *z) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let tags: Vec<String> =
                (0..self.n).filter(|k| m >> k & 1 == 1).map(|k| format!("i{}", k + 1)).collect();
            if tags.is_empty() {
                write!(f, "{}", fmt_scalar(z))?;
            } else if z == Complex64::new(1.0, 0.0) {
                write!(f, "{}", tags.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_scalar(z), tags.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a PimenovElement> for &'a PimenovElement {
    type Output = PimenovElement;
    fn mul(self, rhs: &PimenovElement) -> PimenovElement {
        self.try_mul(rhs).expect("tag counts must match")
    }
}

impl Mul for PimenovElement {
    type Output = PimenovElement;
    fn mul(self, rhs: PimenovElement) -> PimenovElement {
        &self * &rhs
    }
}

impl<'a> Add<&'a PimenovElement> for &'a PimenovElement {
    type Output = PimenovElement;
    fn add(self, rhs: &PimenovElement) -> PimenovElement {
        self.try_add(rhs).expect("tag counts must match")
    }
}

impl Add for PimenovElement {
    type Output = PimenovElement;
    fn add(self, rhs: PimenovElement) -> PimenovElement {
        &self + &rhs
    }
}

impl<'a> Sub<&'a PimenovElement> for &'a PimenovElement {
    type Output = PimenovElement;
    fn sub(self, rhs: &PimenovElement) -> PimenovElement {
        assert_eq!(self.n, rhs.n, "tag counts must match");
        PimenovElement { n: self.n, c: self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect() }
    }
}

impl Sub for PimenovElement {
    type Output = PimenovElement;
    fn sub(self, rhs: PimenovElement) -> PimenovElement {
        &self - &rhs
    }
}

impl Neg for &PimenovElement {
    type Output = PimenovElement;
    fn neg(self) -> PimenovElement {
        PimenovElement { n: self.n, c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Neg for PimenovElement {
    type Output = PimenovElement;
    fn neg(self) -> PimenovElement {
        -&self
    }
}

impl AddAssign<&PimenovElement> for PimenovElement {
    fn add_assign(&mut self, rhs: &PimenovElement) {
        assert_eq!(self.n, rhs.n, "tag counts must match");
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
    }
}

impl SubAssign<&PimenovElement> for PimenovElement {
    fn sub_assign(&mut self, rhs: &PimenovElement) {
        assert_eq!(self.n, rhs.n, "tag counts must match");
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a -= b;
        }
    }
}

/// `pim_mul` with the tag-count check surfaced as an error.
pub fn pim_mul(a: &PimenovElement, b: &PimenovElement) -> Result<PimenovElement> {
    a.try_mul(b)
}

pub fn pim_inv(a: &PimenovElement) -> Result<PimenovElement> {
    a.inv()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn iota_squares_to_zero() {
        let i1 = PimenovElement::tag(2, 1);
        assert!((&i1 * &i1).is_zero());
    }

    #[test]
    fn distributes_without_overlap() {
        let a = &PimenovElement::one(2) + &PimenovElement::tag(2, 1);
        let b = &PimenovElement::one(2) + &PimenovElement::tag(2, 2);
        let p = &a * &b;
        for m in 0..4 {
            assert_eq!(p.coeff(m), c(1.0));
        }
    }

    #[test]
    fn dual_number_product() {
        let a = PimenovElement::from_coeffs(1, &[c(2.0), c(3.0)]).unwrap();
        let b = PimenovElement::from_coeffs(1, &[c(5.0), c(7.0)]).unwrap();
        let p = &a * &b;
        assert_eq!(p.coeff(0), c(10.0));
        assert_eq!(p.coeff(1), c(2.0 * 7.0 + 3.0 * 5.0));
    }

    #[test]
    fn inverses() {
        assert_eq!(PimenovElement::real(1, 2.0).inv().unwrap(), PimenovElement::real(1, 0.5));
        let a = &PimenovElement::one(1) + &PimenovElement::tag(1, 1);
        let inv = a.inv().unwrap();
        assert_eq!(inv, &PimenovElement::one(1) - &PimenovElement::tag(1, 1));
        assert_eq!(PimenovElement::tag(1, 1).inv(), Err(Error::NotInvertible));
    }

    #[test]
    fn mismatched_tags_error() {
        let a = PimenovElement::one(1);
        let b = PimenovElement::one(2);
        assert_eq!(pim_mul(&a, &b), Err(Error::TagMismatch(1, 2)));
    }

    #[test]
    fn display_round_trip() {
        let e = parse_element("1 + 2*i1 - 0.5*i1*i2", 2).unwrap();
        assert_eq!(e.to_string(), "1 + 2*i1 - 0.5*i1*i2");
        assert_eq!(parse_element(&e.to_string(), 2).unwrap(), e);
    }
}
