//! Square and rectangular matrices with Pimenov entries.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pimenov::PimenovElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Cartesian,
    Symplectic,
}

#[derive(Clone, PartialEq)]
pub struct CKMatrix {
    rows: usize,
    cols: usize,
    n: usize,
    e: Vec<PimenovElement>,
    pub basis: Option<Basis>,
}

impl CKMatrix {
    pub fn zeros(rows: usize, cols: usize, n: usize) -> Self {
        CKMatrix { rows, cols, n, e: vec![PimenovElement::zero(n); rows * cols], basis: None }
    }

    pub fn identity(size: usize, n: usize) -> Self {
        let mut m = Self::zeros(size, size, n);
        for i in 0..size {
            m.e[i * size + i] = PimenovElement::one(n);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, n: usize, f: impl Fn(usize, usize) -> PimenovElement) -> Self {
        let mut e = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert_eq!(x.n(), n, "entry ({i},{j}) has the wrong tag count");
                e.push(x);
            }
        }
        CKMatrix { rows, cols, n, e, basis: None }
    }

    pub fn from_scalars(rows: usize, cols: usize, n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        Self::from_fn(rows, cols, n, |i, j| PimenovElement::scalar(n, f(i, j)))
    }

    /// The antidiagonal unit matrix `C₀`.
    pub fn c0(size: usize, n: usize) -> Self {
        Self::from_fn(size, size, n, |i, j| {
            if i + j + 1 == size {
                PimenovElement::one(n)
            } else {
                PimenovElement::zero(n)
            }
        })
    }

    pub fn with_basis(mut self, basis: Basis) -> Self {
        self.basis = Some(basis);
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn size(&self) -> usize {
        assert_eq!(self.rows, self.cols);
        self.rows
    }

    pub fn tags(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &PimenovElement {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: PimenovElement) {
        assert_eq!(x.n(), self.n);
        self.e[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[PimenovElement] {
        &self.e
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::from_fn(self.cols, self.rows, self.n, |i, j| self.get(j, i).clone());
        t.basis = self.basis;
        t
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.n != other.n {
            return Err(Error::TagMismatch(self.n, other.n));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.n);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.e[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        out.basis = self.basis;
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect();
        CKMatrix { rows: self.rows, cols: self.cols, n: self.n, e, basis: self.basis }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a - b).collect();
        CKMatrix { rows: self.rows, cols: self.cols, n: self.n, e, basis: self.basis }
    }

    pub fn scale(&self, x: &PimenovElement) -> Self {
        let e = self.e.iter().map(|a| a * x).collect();
        CKMatrix { rows: self.rows, cols: self.cols, n: self.n, e, basis: self.basis }
    }

    pub fn map(&self, f: impl Fn(&PimenovElement) -> PimenovElement) -> Self {
        let e = self.e.iter().map(f).collect();
        CKMatrix { rows: self.rows, cols: self.cols, n: self.n, e, basis: self.basis }
    }

    /// Largest coefficient magnitude over all entries.
    pub fn max_abs(&self) -> f64 {
        self.e.iter().map(|x| x.max_abs()).fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    /// Kronecker product, rows and columns ordered `(i, k) ↦ i·dim(other) + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        Self::from_fn(self.rows * r2, self.cols * c2, self.n, |i, j| {
            self.get(i / r2, j / c2) * other.get(i % r2, j % c2)
        })
    }

    /// Permutation matrix of a permutation `p`: row `i` has a one in column `p(i)`.
    pub fn permutation(p: &[usize], n: usize) -> Self {
        Self::from_fn(p.len(), p.len(), n, |i, j| {
            if p[i] == j {
                PimenovElement::one(n)
            } else {
                PimenovElement::zero(n)
            }
        })
    }

    /// Inverse of a lower-triangular matrix with unit diagonal entries, by
    /// forward substitution.
    pub fn lower_triangular_inverse(&self) -> Result<Self> {
        let size = self.size();
        for i in 0..size {
            for j in i + 1..size {
                if !self.get(i, j).is_zero() {
                    return Err(Error::Dimension(format!("entry ({i},{j}) above the diagonal")));
                }
            }
        }
        let diag_inv: Vec<PimenovElement> =
            (0..size).map(|i| self.get(i, i).inv()).collect::<Result<_>>()?;
        let mut x = Self::zeros(size, size, self.n);
        for col in 0..size {
            for i in col..size {
                let mut acc = if i == col { PimenovElement::one(self.n) } else { PimenovElement::zero(self.n) };
                for k in col..i {
                    let l = self.get(i, k);
                    if !l.is_zero() {
                        acc -= &(l * x.get(k, col));
                    }
                }
                x.set(i, col, &acc * &diag_inv[i]);
            }
        }
        Ok(x)
    }

    /// Permutation-sum determinant, `N ≤ 6`.
    pub fn det(&self) -> Result<PimenovElement> {
        let size = self.size();
        if size > 6 {
            return Err(Error::SizeCap(size));
        }
        let mut perm: Vec<usize> = (0..size).collect();
        let mut total = PimenovElement::zero(self.n);
        permute(&mut perm, 0, &mut |p| {
            let mut term = PimenovElement::one(self.n);
            for (i, &j) in p.iter().enumerate() {
                term = &term * self.get(i, j);
                if term.is_zero() {
                    return;
                }
            }
            if parity(p) {
                total -= &term;
            } else {
                total += &term;
            }
        });
        Ok(total)
    }
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// True for odd permutations.
fn parity(p: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                odd = !odd;
            }
        }
    }
    odd
}

impl Mul for &CKMatrix {
    type Output = CKMatrix;
    fn mul(self, rhs: &CKMatrix) -> CKMatrix {
        self.try_mul(rhs).expect("conformable matrices")
    }
}

impl fmt::Debug for CKMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CKMatrix {}x{} over D{}", self.rows, self.cols, self.n)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pimenov::parse_element;

    #[test]
    fn identity_det_is_one() {
        assert_eq!(CKMatrix::identity(4, 2).det().unwrap(), PimenovElement::one(2));
    }

    #[test]
    fn det_size_cap() {
        assert_eq!(CKMatrix::identity(7, 0).det(), Err(Error::SizeCap(7)));
    }

    #[test]
    fn lower_inverse_round_trip() {
        let n = 2;
        let p = |s: &str| parse_element(s, n).unwrap();
        let mut m = CKMatrix::identity(3, n);
        m.set(0, 0, p("2 + i1"));
        m.set(1, 0, p("3*i2"));
        m.set(2, 1, p("1 - i1*i2"));
        m.set(2, 0, p("0.5"));
        let inv = m.lower_triangular_inverse().unwrap();
        assert!((&m * &inv).dist(&CKMatrix::identity(3, n)) < 1e-15);
        assert!((&inv * &m).dist(&CKMatrix::identity(3, n)) < 1e-15);
    }

    #[test]
    fn kron_shape() {
        let a = CKMatrix::from_scalars(2, 2, 0, |i, j| Complex64::new((i * 2 + j) as f64, 0.0));
        let k = a.kron(&CKMatrix::identity(3, 0));
        assert_eq!(k.rows(), 6);
        assert_eq!(k.get(4, 1).coeff(0).re, 2.0);
        assert_eq!(k.get(4, 4).coeff(0).re, 3.0);
    }
}
