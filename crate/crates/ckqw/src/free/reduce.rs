//! Linear normal forms modulo a relation ideal, truncated at degree 3.
//!
//! The ideal's degree-≤3 part is spanned by `ι^S r`, `ι^S g r` and `ι^S r g`
//! (generators `g`). Row reduction of that span in the `(subset, word)` basis
//! gives one rule per pivot; rewriting applies a rule literally, matching the
//! term's whole subset against the rule's subset.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{order_key, FreeElement, RelationSet, Word, DEGREE_CAP};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Terms this small are dropped during rewriting.
const REWRITE_FLOOR: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost position first, longest head first.
    LeftFirst,
    /// Rightmost position first, longest head first.
    RightFirst,
}

#[derive(Clone, Debug)]
pub struct ReductionSystem {
    gens: usize,
    n: usize,
    degree: usize,
    rules: HashMap<(usize, Word), FreeElement>,
    rank: usize,
    pivot_tol: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfluenceReport {
    pub words_checked: usize,
    pub max_discrepancy: f64,
    pub failing: Vec<String>,
    pub heads_by_degree: Vec<usize>,
    pub normal_words_by_degree: Vec<usize>,
}

impl ConfluenceReport {
    pub fn confluent(&self, tol: f64) -> bool {
        self.max_discrepancy <= tol
    }
}

fn all_words(gens: usize, degree: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    let mut layer = vec![Word::new()];
    for _ in 0..degree {
        let mut next = Vec::with_capacity(layer.len() * gens);
        for w in &layer {
            for g in 0..gens {
                let mut x = w.clone();
                x.push(g as u8);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

struct Columns {
    keys: Vec<(usize, Word)>,
    index: HashMap<(usize, Word), usize>,
}

impl Columns {
    /// Every `(subset, word)` up to `degree`, largest in the order first.
    fn new(gens: usize, n: usize, degree: usize) -> Self {
        let mut keys = Vec::new();
        for w in all_words(gens, degree) {
            for m in 0..(1usize << n) {
                keys.push((m, w.clone()));
            }
        }
        keys.sort_by(|a, b| order_key(b.0, &b.1).cmp(&order_key(a.0, &a.1)));
        let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Columns { keys, index }
    }
}

/// Incremental row echelon form over the columns, with dense scratch.
struct Echelon {
    ncols: usize,
    /// Pivot row per column, normalised to 1 at the pivot.
    pivots: Vec<Option<Vec<(usize, Complex64)>>>,
    scratch: Vec<Complex64>,
    rel_tol: f64,
}

impl Echelon {
    fn new(ncols: usize, rel_tol: f64) -> Self {
        Echelon { ncols, pivots: vec![None; ncols], scratch: vec![ZERO; ncols], rel_tol }
    }

    fn insert(&mut self, row: &[(usize, Complex64)]) -> bool {
        let scale = row.iter().map(|(_, z)| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return false;
        }
        let tol = self.rel_tol * scale;
        let start = row.iter().map(|(c, _)| *c).min().unwrap_or(0);
        for (c, z) in row {
            self.scratch[*c] += z;
        }
        let mut added = false;
        for c in start..self.ncols {
            let x = self.scratch[c];
            if x == ZERO {
                continue;
            }
            if x.norm() <= tol {
                self.scratch[c] = ZERO;
                continue;
            }
            if let Some(p) = &self.pivots[c] {
                for (k, y) in p {
                    self.scratch[*k] -= x * y;
                }
                self.scratch[c] = ZERO;
            } else {
                let inv = x.inv();
                let mut stored = vec![(c, Complex64::new(1.0, 0.0))];
                self.scratch[c] = ZERO;
                for k in c + 1..self.ncols {
                    let y = self.scratch[k];
                    if y != ZERO {
                        if y.norm() > tol {
                            stored.push((k, y * inv));
                        }
                        self.scratch[k] = ZERO;
                    }
                }
                self.pivots[c] = Some(stored);
                added = true;
                break;
            }
        }
        // clear what is left after a full reduction to zero
        if !added {
            for x in self.scratch.iter_mut() {
                *x = ZERO;
            }
        }
        added
    }

    /// Back-substitution so that no pivot column appears in another pivot row.
    fn inter_reduce(&mut self) {
        let cols: Vec<usize> = (0..self.ncols).rev().filter(|c| self.pivots[*c].is_some()).collect();
        for &p in &cols {
            let row = self.pivots[p].take().expect("pivot");
            for (c, z) in &row {
                self.scratch[*c] += z;
            }
            for (c, _) in row.iter().skip(1) {
                let x = self.scratch[*c];
                if x == ZERO {
                    continue;
                }
                if let Some(q) = &self.pivots[*c] {
                    for (k, y) in q {
                        self.scratch[*k] -= x * y;
                    }
                    self.scratch[*c] = ZERO;
                }
            }
            let mut out = Vec::new();
            for k in p..self.ncols {
                let y = self.scratch[k];
                if y != ZERO {
                    if y.norm() > 1e-13 {
                        out.push((k, y));
                    }
                    self.scratch[k] = ZERO;
                }
            }
            self.pivots[p] = Some(out);
        }
    }
}

/// Row-reduces the degree-`degree` closure of `rs` (`2` for the `ι`-closure
/// alone, `3` for the closure under one-sided multiplication by generators).
pub fn build_reduction(rs: &RelationSet, degree: usize) -> Result<ReductionSystem> {
    build_with_tol(rs, degree, 1e-8)
}

fn build_with_tol(rs: &RelationSet, degree: usize, pivot_tol: f64) -> Result<ReductionSystem> {
    if degree > DEGREE_CAP || degree < 2 {
        return Err(Error::DegreeCap(degree, DEGREE_CAP));
    }
    let gens = rs.alphabet.len();
    let n = rs.tags;
    let cols = Columns::new(gens, n, degree);
    let gen_elems: Vec<FreeElement> = (0..gens).map(|g| FreeElement::generator(gens, n, g)).collect();

    let rows: Vec<Vec<(usize, Complex64)>> = rs
        .relations
        .par_iter()
        .flat_map_iter(|r| {
            let mut out = Vec::new();
            for s in 0..(1usize << n) {
                let x = r.shift(s);
                if x.is_zero() {
                    continue;
                }
                let mult = degree == 3 && x.degree() <= 2;
                out.push(x.clone());
                if mult {
                    for g in &gen_elems {
                        out.push(g * &x);
                        out.push(&x * g);
                    }
                }
            }
            out.into_iter()
                .map(|e| {
                    e.terms()
                        .map(|(m, w, z)| (cols.index[&(m, Word::from_slice(w))], z))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let mut ech = Echelon::new(cols.keys.len(), pivot_tol);
    let mut rank = 0;
    for row in &rows {
        if ech.insert(row) {
            rank += 1;
        }
    }
    ech.inter_reduce();

    let mut rules = HashMap::new();
    for (c, row) in ech.pivots.iter().enumerate() {
        let Some(row) = row else { continue };
        let head = cols.keys[c].clone();
        if head == (0, Word::new()) {
            return Err(Error::InconsistentIdeal);
        }
        let mut tail = FreeElement::zero(gens, n);
        for (k, z) in row.iter().skip(1) {
            let (m, w) = &cols.keys[*k];
            tail.add_term(*m, w, -z);
        }
        rules.insert(head, tail);
    }
    Ok(ReductionSystem { gens, n, degree, rules, rank, pivot_tol })
}

impl ReductionSystem {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn tags(&self) -> usize {
        self.n
    }

    /// Dimension of the reduced span.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn pivot_tol(&self) -> f64 {
        self.pivot_tol
    }

    pub fn rules(&self) -> impl Iterator<Item = (usize, &[u8], &FreeElement)> + '_ {
        self.rules.iter().map(|((m, w), t)| (*m, w.as_slice(), t))
    }

    pub fn is_head(&self, mask: usize, word: &[u8]) -> bool {
        self.rules.contains_key(&(mask, Word::from_slice(word)))
    }

    /// Heads per word degree `0..=degree`.
    pub fn heads_by_degree(&self) -> Vec<usize> {
        let mut out = vec![0; self.degree + 1];
        for (_, w) in self.rules.keys() {
            out[w.len()] += 1;
        }
        out
    }

    /// Heads with the empty subset and a word of degree `d`.
    pub fn scalar_heads(&self, d: usize) -> usize {
        self.rules.keys().filter(|(m, w)| *m == 0 && w.len() == d).count()
    }

    fn find(&self, mask: usize, word: &[u8], strategy: Strategy) -> Option<(usize, usize, &FreeElement)> {
        let len = word.len();
        let positions: Vec<usize> = match strategy {
            Strategy::LeftFirst => (0..len).collect(),
            Strategy::RightFirst => (0..len).rev().collect(),
        };
        for p in positions {
            for l in (1..=(len - p).min(self.degree)).rev() {
                if let Some(t) = self.rules.get(&(mask, Word::from_slice(&word[p..p + l]))) {
                    return Some((p, l, t));
                }
            }
        }
        self.rules.get(&(mask, Word::new())).map(|t| (0, 0, t))
    }

    /// Normal form under the given rewriting strategy.
    pub fn reduce_with(&self, x: &FreeElement, strategy: Strategy) -> Result<FreeElement> {
        if x.gens() != self.gens {
            return Err(Error::AlphabetMismatch(x.gens(), self.gens));
        }
        if x.tags() != self.n {
            return Err(Error::TagMismatch(x.tags(), self.n));
        }
        if x.degree() > self.degree {
            return Err(Error::DegreeCap(x.degree(), self.degree));
        }
        let mut work: std::collections::BTreeMap<_, Complex64> = x
            .terms()
            .map(|(m, w, z)| (order_key(m, w), z))
            .collect();
        let mut out = FreeElement::zero(self.gens, self.n);
        while let Some(((_, w, std::cmp::Reverse(m)), z)) = work.pop_last() {
            if z.norm() <= REWRITE_FLOOR {
                continue;
            }
            match self.find(m, &w, strategy) {
                None => out.add_term(m, &w, z),
                Some((p, l, tail)) => {
                    for (tm, tw, tz) in tail.terms() {
                        let mut nw = Word::from_slice(&w[..p]);
                        nw.extend_from_slice(tw);
                        nw.extend_from_slice(&w[p + l..]);
                        *work.entry(order_key(tm, &nw)).or_default() += z * tz;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn reduce(&self, x: &FreeElement) -> Result<FreeElement> {
        self.reduce_with(x, Strategy::LeftFirst)
    }

    /// Compares left-first and right-first normal forms of `ι^S w` for every
    /// word `w` of degree `degree` and every subset `S`.
    pub fn confluence_check(&self, degree: usize) -> Result<ConfluenceReport> {
        if degree > self.degree {
            return Err(Error::DegreeCap(degree, self.degree));
        }
        let words: Vec<Word> = all_words(self.gens, degree).into_iter().filter(|w| w.len() == degree).collect();
        let items: Vec<(usize, Word)> =
            words.iter().flat_map(|w| (0..(1usize << self.n)).map(move |m| (m, w.clone()))).collect();
        let results: Vec<(f64, usize, Word)> = items
            .par_iter()
            .map(|(m, w)| {
                let x = FreeElement::monomial(self.gens, self.n, *m, w, Complex64::new(1.0, 0.0));
                let a = self.reduce_with(&x, Strategy::LeftFirst).expect("degree checked");
                let b = self.reduce_with(&x, Strategy::RightFirst).expect("degree checked");
                (a.dist(&b), *m, w.clone())
            })
            .collect();
        let max_discrepancy = results.iter().map(|r| r.0).fold(0.0, f64::max);
        let failing = results
            .iter()
            .filter(|r| r.0 > 1e-9)
            .take(20)
            .map(|(d, m, w)| format!("mask {m:#b} word {:?}: {d:.3e}", w.as_slice()))
            .collect();
        let heads_by_degree = self.heads_by_degree();
        let normal_words_by_degree = (0..=self.degree)
            .map(|d| self.gens.pow(d as u32) * (1 << self.n) - heads_by_degree[d])
            .collect();
        Ok(ConfluenceReport {
            words_checked: results.len(),
            max_discrepancy,
            failing,
            heads_by_degree,
            normal_words_by_degree,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::Provenance;

    fn names(k: usize) -> Vec<String> {
        (0..k).map(|i| format!("x{i}")).collect()
    }

    fn toy(q: Complex64) -> ReductionSystem {
        let x = FreeElement::generator(2, 0, 0);
        let y = FreeElement::generator(2, 0, 1);
        let r = &(&x * &y) - &(&y * &x).scale(q);
        let rs = RelationSet::new(names(2), 0, vec![r], Provenance::Derived).unwrap();
        build_reduction(&rs, 3).unwrap()
    }

    #[test]
    fn commutative_toy() {
        let sys = toy(Complex64::new(1.0, 0.0));
        let tail = &sys.rules[&(0, Word::from_slice(&[1, 0]))];
        assert_eq!(tail.get(0, &[0, 1]), Complex64::new(1.0, 0.0));
        let rep = sys.confluence_check(3).unwrap();
        assert!(rep.confluent(1e-12));
        assert_eq!(rep.normal_words_by_degree, vec![1, 2, 3, 4]);
    }

    #[test]
    fn q_plane_rule() {
        let q = Complex64::new(0.7, 0.1);
        let sys = toy(q);
        let tail = &sys.rules[&(0, Word::from_slice(&[1, 0]))];
        assert!((tail.get(0, &[0, 1]) - q.inv()).norm() < 1e-15);
        assert!(sys.confluence_check(3).unwrap().confluent(1e-12));
    }

    #[test]
    fn unit_in_ideal_is_inconsistent() {
        let x = FreeElement::generator(1, 0, 0);
        let r = &(&x * &x) - &FreeElement::one(1, 0);
        // x and x² - 1 together force 1 into the ideal
        let rs = RelationSet::new(names(1), 0, vec![r, x], Provenance::Derived).unwrap();
        let err = build_reduction(&rs, 3).unwrap_err();
        assert_eq!(err, Error::InconsistentIdeal);
    }

    #[test]
    fn reduce_is_idempotent_and_kills_relations() {
        let sys = toy(Complex64::new(2.0, 0.0));
        let x = FreeElement::generator(2, 0, 0);
        let y = FreeElement::generator(2, 0, 1);
        let w = &(&(&y * &y) * &x) + &(&y * &x);
        let a = sys.reduce(&w).unwrap();
        assert_eq!(sys.reduce(&a).unwrap(), a);
        let r = &(&x * &y) - &(&y * &x).scale(Complex64::new(2.0, 0.0));
        assert!(sys.reduce(&(&x * &r)).unwrap().max_abs() < 1e-12);
        assert_eq!(sys.reduce(&FreeElement::one(2, 0)).unwrap(), FreeElement::one(2, 0));
    }

    #[test]
    fn degree_cap() {
        let sys = toy(Complex64::new(1.0, 0.0));
        let x = FreeElement::generator(2, 0, 0);
        let x4 = &(&x * &x) * &(&x * &x);
        assert_eq!(sys.reduce(&x4), Err(Error::DegreeCap(4, 3)));
    }
}
