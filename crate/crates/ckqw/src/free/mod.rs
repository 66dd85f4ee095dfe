//! Free associative algebra over `D_n` with complex-linear reduction in the
//! `(ι-subset, word)` basis.

mod json;
mod reduce;
mod tensor;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::pimenov::{fmt_scalar, PimenovElement};

pub use json::{RelationFile, RelationJson, TermJson};
pub use reduce::{build_reduction, ConfluenceReport, ReductionSystem, Strategy};
pub use tensor::TensorElement;

/// Generator ids, at most a few letters long.
pub type Word = SmallVec<[u8; 4]>;

pub const DEGREE_CAP: usize = 3;

/// Sort key of the monomial order: degree, then lexicographic on generator
/// ids, then subsets with the empty subset largest.
pub fn order_key(mask: usize, word: &[u8]) -> (usize, Word, std::cmp::Reverse<usize>) {
    (word.len(), Word::from_slice(word), std::cmp::Reverse(mask))
}

#[derive(Clone, PartialEq)]
pub struct FreeElement {
    gens: usize,
    n: usize,
    terms: BTreeMap<(usize, Word), Complex64>,
}

impl FreeElement {
    pub fn zero(gens: usize, n: usize) -> Self {
        FreeElement { gens, n, terms: BTreeMap::new() }
    }

    pub fn one(gens: usize, n: usize) -> Self {
        Self::monomial(gens, n, 0, &[], Complex64::new(1.0, 0.0))
    }

    pub fn monomial(gens: usize, n: usize, mask: usize, word: &[u8], z: Complex64) -> Self {
        let mut e = Self::zero(gens, n);
        e.add_term(mask, word, z);
        e
    }

    pub fn generator(gens: usize, n: usize, g: usize) -> Self {
        assert!(g < gens);
        Self::monomial(gens, n, 0, &[g as u8], Complex64::new(1.0, 0.0))
    }

    /// A constant of `D_n` as a degree-0 element.
    pub fn constant(gens: usize, x: &PimenovElement) -> Self {
        let mut e = Self::zero(gens, x.n());
        for m in x.support() {
            e.add_term(m, &[], x.coeff(m));
        }
        e
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn tags(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &[u8], Complex64)> + '_ {
        self.terms.iter().map(|((m, w), z)| (*m, w.as_slice(), *z))
    }

    pub fn get(&self, mask: usize, word: &[u8]) -> Complex64 {
        self.terms.get(&(mask, Word::from_slice(word))).copied().unwrap_or_default()
    }

    /// Adds `z ι^mask word`, removing the entry if it cancels exactly.
    pub fn add_term(&mut self, mask: usize, word: &[u8], z: Complex64) {
        if z == Complex64::new(0.0, 0.0) {
            return;
        }
        let key = (mask, Word::from_slice(word));
        let v = self.terms.entry(key.clone()).or_default();
        *v += z;
        if *v == Complex64::new(0.0, 0.0) {
            self.terms.remove(&key);
        }
    }

    /// Largest word length, 0 for the zero element.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|(_, w)| w.len()).max().unwrap_or(0)
    }

    /// Smallest word length present.
    pub fn low_degree(&self) -> usize {
        self.terms.keys().map(|(_, w)| w.len()).min().unwrap_or(0)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }

    /// Drops terms of magnitude at most `tol`.
    pub fn prune(&self, tol: f64) -> Self {
        let terms = self.terms.iter().filter(|(_, z)| z.norm() > tol).map(|(k, z)| (k.clone(), *z)).collect();
        FreeElement { gens: self.gens, n: self.n, terms }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut out = Self::zero(self.gens, self.n);
        for ((m, w), c) in &self.terms {
            out.add_term(*m, w, c * z);
        }
        out
    }

    /// Multiplication by a constant of `D_n`.
    pub fn scale_pim(&self, x: &PimenovElement) -> Self {
        assert_eq!(x.n(), self.n, "tag counts must match");
        let mut out = Self::zero(self.gens, self.n);
        for s in x.support() {
            let z = x.coeff(s);
            for ((m, w), c) in &self.terms {
                if m & s == 0 {
                    out.add_term(m | s, w, c * z);
                }
            }
        }
        out
    }

    /// `ι^mask · self`.
    pub fn shift(&self, mask: usize) -> Self {
        let mut out = Self::zero(self.gens, self.n);
        for ((m, w), c) in &self.terms {
            if m & mask == 0 {
                out.add_term(m | mask, w, *c);
            }
        }
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.gens != other.gens {
            return Err(Error::AlphabetMismatch(self.gens, other.gens));
        }
        if self.n != other.n {
            return Err(Error::TagMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.gens, self.n);
        for ((ma, wa), za) in &self.terms {
            for ((mb, wb), zb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(ma | mb, &w, za * zb);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for ((m, w), z) in &other.terms {
            out.add_term(*m, w, *z);
        }
        Ok(out)
    }

    /// Substitutes each generator by an element, as an algebra map.
    pub fn substitute(&self, images: &[FreeElement]) -> Result<FreeElement> {
        if images.len() != self.gens {
            return Err(Error::AlphabetMismatch(self.gens, images.len()));
        }
        let target = &images[0];
        let mut out = FreeElement::zero(target.gens, target.n);
        for ((m, w), z) in &self.terms {
            let mut t = FreeElement::monomial(target.gens, target.n, *m, &[], *z);
            for g in w {
                t = t.try_mul(&images[*g as usize])?;
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Applies a character `g ↦ value` that sends every `ι` to zero.
    pub fn evaluate_scalar(&self, values: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .filter(|((m, _), _)| *m == 0)
            .map(|((_, w), z)| w.iter().fold(*z, |acc, g| acc * values[*g as usize]))
            .sum()
    }

    /// Applies a character `g ↦ value ∈ D_n`, returning an element of `D_n`.
    pub fn evaluate(&self, values: &[PimenovElement]) -> PimenovElement {
        let mut acc = PimenovElement::zero(self.n);
        for ((m, w), z) in &self.terms {
            let mut t = PimenovElement::monomial(self.n, *m, *z);
            for g in w {
                t = &t * &values[*g as usize];
            }
            acc += &t;
        }
        acc
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named { e: self, names }
    }
}

struct Named<'a> {
    e: &'a FreeElement,
    names: &'a [String],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((m, w), z) in &self.e.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", fmt_scalar(*z))?;
            for k in 0..self.e.n {
                if m >> k & 1 == 1 {
                    write!(f, "*i{}", k + 1)?;
                }
            }
            for g in w {
                match self.names.get(*g as usize) {
                    Some(s) => write!(f, "*{s}")?,
                    None => write!(f, "*g{g}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeElement[{}]", self.display_with(&[]))
    }
}

impl Mul for &FreeElement {
    type Output = FreeElement;
    fn mul(self, rhs: &FreeElement) -> FreeElement {
        self.try_mul(rhs).expect("same alphabet and tags")
    }
}

impl Add for &FreeElement {
    type Output = FreeElement;
    fn add(self, rhs: &FreeElement) -> FreeElement {
        self.try_add(rhs).expect("same alphabet and tags")
    }
}

impl Sub for &FreeElement {
    type Output = FreeElement;
    fn sub(self, rhs: &FreeElement) -> FreeElement {
        self.try_add(&rhs.scale(Complex64::new(-1.0, 0.0))).expect("same alphabet and tags")
    }
}

impl Neg for &FreeElement {
    type Output = FreeElement;
    fn neg(self) -> FreeElement {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

pub fn free_mul(a: &FreeElement, b: &FreeElement) -> Result<FreeElement> {
    a.try_mul(b)
}

pub fn free_add(a: &FreeElement, b: &FreeElement) -> Result<FreeElement> {
    a.try_add(b)
}

/// `a ⊗ b` as a word over the doubled alphabet: left-bank ids first, right-bank
/// ids shifted by the alphabet size.
pub fn free_tensor(a: &FreeElement, b: &FreeElement) -> Result<FreeElement> {
    a.check(b)?;
    let g = a.gens;
    let mut out = FreeElement::zero(2 * g, a.n);
    for ((ma, wa), za) in &a.terms {
        for ((mb, wb), zb) in &b.terms {
            if ma & mb != 0 {
                continue;
            }
            let mut w = wa.clone();
            w.extend(wb.iter().map(|x| x + g as u8));
            out.add_term(ma | mb, &w, za * zb);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Rtt,
    Orthogonality,
    Derived,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Rtt => "rtt",
            Provenance::Orthogonality => "orthogonality",
            Provenance::Derived => "derived",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RelationSet {
    pub alphabet: Vec<String>,
    pub tags: usize,
    pub relations: Vec<FreeElement>,
    pub label: Provenance,
}

impl RelationSet {
    pub fn new(alphabet: Vec<String>, tags: usize, relations: Vec<FreeElement>, label: Provenance) -> Result<Self> {
        for r in &relations {
            if r.gens != alphabet.len() {
                return Err(Error::AlphabetMismatch(r.gens, alphabet.len()));
            }
            if r.n != tags {
                return Err(Error::TagMismatch(r.n, tags));
            }
            if r.degree() > 2 {
                return Err(Error::DegreeCap(r.degree(), 2));
            }
        }
        Ok(RelationSet { alphabet, tags, relations, label })
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// True when every relation has all its words of one length.
    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| r.degree() == r.low_degree())
    }

    /// Union with another set over the same alphabet.
    pub fn union(&self, other: &RelationSet) -> Result<RelationSet> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(self.alphabet.len(), other.alphabet.len()));
        }
        let mut relations = self.relations.clone();
        relations.extend(other.relations.iter().cloned());
        let label = if self.label == other.label { self.label } else { Provenance::Derived };
        RelationSet::new(self.alphabet.clone(), self.tags, relations, label)
    }
}

/// `{ι^S r}` over all relations and all subsets `S` that do not annihilate `r`.
pub fn iota_closure(rs: &RelationSet) -> RelationSet {
    let mut relations = Vec::new();
    for r in &rs.relations {
        for s in 0..(1usize << rs.tags) {
            let x = r.shift(s);
            if !x.is_zero() {
                relations.push(x);
            }
        }
    }
    RelationSet { alphabet: rs.alphabet.clone(), tags: rs.tags, relations, label: Provenance::Derived }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn concatenation_and_nilpotency() {
        let t1 = FreeElement::generator(2, 1, 0);
        let t2 = FreeElement::generator(2, 1, 1);
        let p = &(&t1 * &t2) + &FreeElement::zero(2, 1);
        assert_eq!(p.get(0, &[0, 1]), c(1.0));
        let a = t1.shift(1);
        let b = t2.shift(1);
        assert!((&a * &b).is_zero());
    }

    #[test]
    fn tensor_uses_right_bank() {
        let t1 = FreeElement::generator(2, 0, 0);
        let t2 = FreeElement::generator(2, 0, 1);
        let x = free_tensor(&t1, &t2).unwrap();
        assert_eq!(x.gens(), 4);
        assert_eq!(x.get(0, &[0, 3]), c(1.0));
    }

    #[test]
    fn alphabet_mismatch() {
        let a = FreeElement::generator(2, 0, 0);
        let b = FreeElement::generator(3, 0, 0);
        assert_eq!(a.try_mul(&b), Err(Error::AlphabetMismatch(2, 3)));
    }

    #[test]
    fn closure_sizes() {
        let names = vec!["x".to_string(), "y".to_string()];
        let x = FreeElement::generator(2, 2, 0);
        let y = FreeElement::generator(2, 2, 1);
        let r = &(&x * &y) - &(&y * &x);
        let rs = RelationSet::new(names.clone(), 2, vec![r.clone()], Provenance::Derived).unwrap();
        assert_eq!(iota_closure(&rs).len(), 4);
        let rs = RelationSet::new(names, 2, vec![r.shift(1)], Provenance::Derived).unwrap();
        // ι1 and ι1ι2 kill it
        assert_eq!(iota_closure(&rs).len(), 2);
    }

    #[test]
    fn order_key_puts_empty_subset_first_among_equals() {
        assert!(order_key(0, &[1]) > order_key(3, &[1]));
        assert!(order_key(3, &[0, 0]) > order_key(0, &[1]));
        assert!(order_key(0, &[1, 0]) > order_key(0, &[0, 1]));
    }
}
