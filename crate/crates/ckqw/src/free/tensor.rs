use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{FreeElement, ReductionSystem, Word};
use crate::error::{Error, Result};

/// Element of `A ⊗_D A`: terms `ι^S u ⊗ v` with one subset shared by both
/// factors.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElement {
    gens: usize,
    n: usize,
    terms: BTreeMap<(usize, Word, Word), Complex64>,
}

impl TensorElement {
    pub fn zero(gens: usize, n: usize) -> Self {
        TensorElement { gens, n, terms: BTreeMap::new() }
    }

    pub fn one(gens: usize, n: usize) -> Self {
        let mut t = Self::zero(gens, n);
        t.add_term(0, &[], &[], Complex64::new(1.0, 0.0));
        t
    }

    pub fn add_term(&mut self, mask: usize, left: &[u8], right: &[u8], z: Complex64) {
        if z == Complex64::new(0.0, 0.0) {
            return;
        }
        let key = (mask, Word::from_slice(left), Word::from_slice(right));
        let v = self.terms.entry(key.clone()).or_default();
        *v += z;
        if *v == Complex64::new(0.0, 0.0) {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &[u8], &[u8], Complex64)> + '_ {
        self.terms.iter().map(|((m, l, r), z)| (*m, l.as_slice(), r.as_slice(), *z))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &FreeElement, b: &FreeElement) -> Result<Self> {
        if a.gens() != b.gens() {
            return Err(Error::AlphabetMismatch(a.gens(), b.gens()));
        }
        if a.tags() != b.tags() {
            return Err(Error::TagMismatch(a.tags(), b.tags()));
        }
        let mut out = Self::zero(a.gens(), a.tags());
        for (ma, wa, za) in a.terms() {
            for (mb, wb, zb) in b.terms() {
                if ma & mb == 0 {
                    out.add_term(ma | mb, wa, wb, za * zb);
                }
            }
        }
        Ok(out)
    }

    /// Splits a word over the doubled alphabet into its two banks. Every
    /// left-bank letter must precede every right-bank letter.
    pub fn from_doubled(x: &FreeElement) -> Result<Self> {
        let g = x.gens() / 2;
        let mut out = Self::zero(g, x.tags());
        for (m, w, z) in x.terms() {
            let split = w.iter().position(|c| (*c as usize) >= g).unwrap_or(w.len());
            if w[split..].iter().any(|c| (*c as usize) < g) {
                return Err(Error::Dimension("left-bank letter after a right-bank letter".into()));
            }
            let right: Word = w[split..].iter().map(|c| c - g as u8).collect();
            out.add_term(m, &w[..split], &right, z);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.gens != other.gens {
            return Err(Error::AlphabetMismatch(self.gens, other.gens));
        }
        let mut out = Self::zero(self.gens, self.n);
        for ((ma, la, ra), za) in &self.terms {
            for ((mb, lb, rb), zb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let mut l = la.clone();
                l.extend_from_slice(lb);
                let mut r = ra.clone();
                r.extend_from_slice(rb);
                out.add_term(ma | mb, &l, &r, za * zb);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.gens != other.gens {
            return Err(Error::AlphabetMismatch(self.gens, other.gens));
        }
        let mut out = self.clone();
        for ((m, l, r), z) in &other.terms {
            out.add_term(*m, l, r, *z);
        }
        Ok(out)
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut out = Self::zero(self.gens, self.n);
        for ((m, l, r), c) in &self.terms {
            out.add_term(*m, l, r, c * z);
        }
        out
    }

    /// Reduces each factor with `sys` until neither changes. The subset of a
    /// term travels with whichever factor is being rewritten.
    pub fn reduce(&self, sys: &ReductionSystem) -> Result<Self> {
        let mut cur = self.clone();
        for _ in 0..16 {
            let left = cur.reduce_side(sys, true)?;
            let next = left.reduce_side(sys, false)?;
            if next.close_to(&cur, 0.0) {
                return Ok(next);
            }
            cur = next;
        }
        Ok(cur)
    }

    fn close_to(&self, other: &Self, tol: f64) -> bool {
        let keys: std::collections::BTreeSet<_> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|k| {
            let a = self.terms.get(k).copied().unwrap_or_default();
            let b = other.terms.get(k).copied().unwrap_or_default();
            (a - b).norm() <= tol
        })
    }

    fn reduce_side(&self, sys: &ReductionSystem, left: bool) -> Result<Self> {
        // group by the untouched factor
        let mut groups: BTreeMap<Word, FreeElement> = BTreeMap::new();
        for ((m, l, r), z) in &self.terms {
            let (active, other) = if left { (l, r) } else { (r, l) };
            groups
                .entry(other.clone())
                .or_insert_with(|| FreeElement::zero(self.gens, self.n))
                .add_term(*m, active, *z);
        }
        let mut out = Self::zero(self.gens, self.n);
        for (other, x) in groups {
            let nf = sys.reduce(&x)?;
            for (m, w, z) in nf.terms() {
                if left {
                    out.add_term(m, w, &other, z);
                } else {
                    out.add_term(m, &other, w, z);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::free_tensor;

    #[test]
    fn doubled_round_trip() {
        let a = FreeElement::generator(3, 1, 1);
        let b = &FreeElement::generator(3, 1, 2) * &FreeElement::generator(3, 1, 0);
        let d = free_tensor(&a, &b).unwrap();
        let t = TensorElement::from_doubled(&d).unwrap();
        assert_eq!(t, TensorElement::tensor(&a, &b).unwrap());
    }

    #[test]
    fn shared_subset_is_nilpotent() {
        let a = FreeElement::generator(1, 1, 0).shift(1);
        let t = TensorElement::tensor(&a, &a).unwrap();
        assert!(t.is_zero());
    }
}
