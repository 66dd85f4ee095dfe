//! The Hopf algebra `so_w(3; j)` on `X01, X02, X12` with normal-ordered
//! elements `Σ c(w) X01^a X02^m X12^b`, coefficients truncated after `w^{d_w}`.
//!
//! Reordering uses
//!
//! ```text
//! X02 X01 → X01 X02 − j1² X12
//! X12 X01 → X01 X12 + sinh(w X02)/w
//! X12 X02 → X02 X12 − j2² X01
//! ```

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;

use super::series::{factorial, Series};
use crate::error::Result;
use crate::frt::TAGS;
use crate::pimenov::{ParameterSignature, PimenovElement};

/// Exponents `(a, m, b)` of `X01^a X02^m X12^b`.
pub type Mono = [u16; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X01,
    X02,
    X12,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::X01, Letter::X02, Letter::X12];

    pub fn name(self) -> &'static str {
        match self {
            Letter::X01 => "X01",
            Letter::X02 => "X02",
            Letter::X12 => "X12",
        }
    }
}

fn letters(m: Mono) -> impl Iterator<Item = Letter> {
    std::iter::repeat(Letter::X01)
        .take(m[0] as usize)
        .chain(std::iter::repeat(Letter::X02).take(m[1] as usize))
        .chain(std::iter::repeat(Letter::X12).take(m[2] as usize))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SowElement {
    d: usize,
    terms: BTreeMap<Mono, Series>,
}

impl SowElement {
    pub fn zero(d: usize) -> Self {
        SowElement { d, terms: BTreeMap::new() }
    }

    pub fn term(m: Mono, s: Series) -> Self {
        let mut x = SowElement::zero(s.order());
        x.add_term(m, &s);
        x
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Series)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, m: Mono) -> Option<&Series> {
        self.terms.get(&m)
    }

    pub fn add_term(&mut self, m: Mono, s: &Series) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = &*x + s;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, s.clone());
            }
        }
    }

    pub fn add(&self, o: &SowElement) -> SowElement {
        let mut x = self.clone();
        for (m, s) in &o.terms {
            x.add_term(*m, s);
        }
        x
    }

    pub fn sub(&self, o: &SowElement) -> SowElement {
        self.add(&o.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, z: Complex64) -> SowElement {
        self.map(|s| s.scale(z))
    }

    pub fn scale_pim(&self, x: &PimenovElement) -> SowElement {
        self.map(|s| s.scale_pim(x))
    }

    pub fn scale_series(&self, t: &Series) -> SowElement {
        self.map(|s| s * t)
    }

    fn map(&self, f: impl Fn(&Series) -> Series) -> SowElement {
        let mut x = SowElement::zero(self.d);
        for (m, s) in &self.terms {
            x.add_term(*m, &f(s));
        }
        x
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|s| s.max_abs()).fold(0.0, f64::max)
    }

    /// Terms whose `X02` degree exceeds `dx`.
    pub fn overflow(&self, dx: usize) -> usize {
        self.terms.keys().filter(|m| m[1] as usize > dx).count()
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, s) in &self.terms {
            let mut word: Vec<String> = Vec::new();
            for (k, l) in Letter::ALL.iter().enumerate() {
                match m[k] {
                    0 => {}
                    1 => word.push(l.name().into()),
                    e => word.push(format!("{}^{e}", l.name())),
                }
            }
            let coeff: Vec<String> = s
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| match k {
                    0 => format!("({x})"),
                    1 => format!("({x})w"),
                    _ => format!("({x})w^{k}"),
                })
                .collect();
            let w = if word.is_empty() { "1".to_string() } else { word.join(" ") };
            parts.push(format!("[{}] {w}", coeff.join(" + ")));
        }
        parts.join(" + ")
    }
}

/// A sum of tensor products of normal-ordered monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct SowTensor {
    d: usize,
    terms: BTreeMap<Vec<Mono>, Series>,
}

impl SowTensor {
    pub fn zero(d: usize) -> Self {
        SowTensor { d, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, m: Vec<Mono>, s: &Series) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = &*x + s;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, s.clone());
            }
        }
    }

    /// `x₁ ⊗ ⋯ ⊗ x_k`.
    pub fn tensor(xs: &[&SowElement]) -> SowTensor {
        let d = xs[0].d;
        let mut acc: Vec<(Vec<Mono>, Series)> = vec![(Vec::new(), Series::one(TAGS, d))];
        for x in xs {
            let mut next = Vec::new();
            for (w, s) in &acc {
                for (m, t) in &x.terms {
                    let mut w2 = w.clone();
                    w2.push(*m);
                    next.push((w2, s * t));
                }
            }
            acc = next;
        }
        let mut out = SowTensor::zero(d);
        for (w, s) in acc {
            out.add_term(w, &s);
        }
        out
    }

    pub fn add(&self, o: &SowTensor) -> SowTensor {
        let mut x = self.clone();
        for (m, s) in &o.terms {
            x.add_term(m.clone(), s);
        }
        x
    }

    pub fn sub(&self, o: &SowTensor) -> SowTensor {
        self.add(&o.scale_pim(&PimenovElement::real(TAGS, -1.0)))
    }

    pub fn scale_pim(&self, x: &PimenovElement) -> SowTensor {
        let mut out = SowTensor::zero(self.d);
        for (m, s) in &self.terms {
            out.add_term(m.clone(), &s.scale_pim(x));
        }
        out
    }

    pub fn scale_series(&self, t: &Series) -> SowTensor {
        let mut out = SowTensor::zero(self.d);
        for (m, s) in &self.terms {
            out.add_term(m.clone(), &(s * t));
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|s| s.max_abs()).fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The algebra at one signature and truncation order, with memoized
/// products.
pub struct Sow {
    pub sig: ParameterSignature,
    pub dw: usize,
    pub dx: usize,
    j1sq: PimenovElement,
    j2sq: PimenovElement,
    jsq: PimenovElement,
    letter_memo: RefCell<HashMap<(Mono, Letter), SowElement>>,
    mono_memo: RefCell<HashMap<(Mono, Mono), SowElement>>,
    delta_memo: RefCell<HashMap<Mono, SowTensor>>,
    antipode_memo: RefCell<HashMap<Mono, SowElement>>,
}

impl Sow {
    pub fn new(sig: &ParameterSignature, dw: usize, dx: usize) -> Result<Self> {
        sig.require_quantum()?;
        if sig.size() != 3 {
            return Err(crate::error::Error::Dimension(format!("so_w(3) needs N = 3, got {}", sig.size())));
        }
        let j1 = sig.slot_value(1);
        let j2 = sig.slot_value(2);
        let j = sig.big_j();
        Ok(Sow {
            sig: sig.clone(),
            dw,
            dx,
            j1sq: &j1 * &j1,
            j2sq: &j2 * &j2,
            jsq: &j * &j,
            letter_memo: RefCell::new(HashMap::new()),
            mono_memo: RefCell::new(HashMap::new()),
            delta_memo: RefCell::new(HashMap::new()),
            antipode_memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn jsq(&self) -> &PimenovElement {
        &self.jsq
    }

    pub fn series_one(&self) -> Series {
        Series::one(TAGS, self.dw)
    }

    pub fn constant(&self, x: &PimenovElement) -> Series {
        Series::constant(self.dw, x)
    }

    pub fn zero(&self) -> SowElement {
        SowElement::zero(self.dw)
    }

    pub fn one(&self) -> SowElement {
        self.scalar(&self.series_one())
    }

    pub fn scalar(&self, s: &Series) -> SowElement {
        SowElement::term([0, 0, 0], s.clone())
    }

    pub fn mono(&self, m: Mono) -> SowElement {
        SowElement::term(m, self.series_one())
    }

    pub fn gen(&self, l: Letter) -> SowElement {
        match l {
            Letter::X01 => self.mono([1, 0, 0]),
            Letter::X02 => self.mono([0, 1, 0]),
            Letter::X12 => self.mono([0, 0, 1]),
        }
    }

    /// `Σ_k f_k(w) X02^k` from the coefficient series of `f(w X02)`:
    /// `f(wX02) = Σ_k a_k w^k X02^k` for `a_k = coeff(k)`.
    pub fn x02_series(&self, coeff: impl Fn(usize) -> f64) -> SowElement {
        let mut x = self.zero();
        for k in 0..=self.dw {
            x.add_term([0, k as u16, 0], &Series::monomial(TAGS, self.dw, k, Complex64::new(coeff(k), 0.0)));
        }
        x
    }

    /// `e^{a w X02}`.
    pub fn exp_x02(&self, a: f64) -> SowElement {
        self.x02_series(|k| a.powi(k as i32) / factorial(k))
    }

    /// `sinh(w X02)/w = Σ_k w^{2k} X02^{2k+1}/(2k+1)!`.
    pub fn sinh_x02(&self) -> SowElement {
        let mut x = self.zero();
        for k in 0..=self.dw / 2 {
            let s = Series::monomial(TAGS, self.dw, 2 * k, Complex64::new(1.0 / factorial(2 * k + 1), 0.0));
            x.add_term([0, 2 * k as u16 + 1, 0], &s);
        }
        x
    }

    /// `(a, m, b) · letter` in normal form.
    pub fn mul_mono_letter(&self, m: Mono, l: Letter) -> SowElement {
        if let Some(x) = self.letter_memo.borrow().get(&(m, l)) {
            return x.clone();
        }
        let [a, mm, b] = m;
        let x = match l {
            Letter::X12 => self.mono([a, mm, b + 1]),
            Letter::X02 if b == 0 => self.mono([a, mm + 1, 0]),
            Letter::X02 => {
                let prev = [a, mm, b - 1];
                let x = self.mul_letter(&self.mul_mono_letter(prev, Letter::X02), Letter::X12);
                x.sub(&self.mul_mono_letter(prev, Letter::X01).scale_pim(&self.j2sq))
            }
            Letter::X01 if b > 0 => {
                let prev = [a, mm, b - 1];
                let x = self.mul_letter(&self.mul_mono_letter(prev, Letter::X01), Letter::X12);
                x.add(&self.mul(&self.mono(prev), &self.sinh_x02()))
            }
            Letter::X01 if mm > 0 => {
                let prev = [a, mm - 1, 0];
                let x = self.mul_letter(&self.mul_mono_letter(prev, Letter::X01), Letter::X02);
                x.sub(&self.mono([a, mm - 1, 1]).scale_pim(&self.j1sq))
            }
            Letter::X01 => self.mono([a + 1, 0, 0]),
        };
        self.letter_memo.borrow_mut().insert((m, l), x.clone());
        x
    }

    pub fn mul_letter(&self, x: &SowElement, l: Letter) -> SowElement {
        let mut out = self.zero();
        for (m, s) in &x.terms {
            for (m2, t) in &self.mul_mono_letter(*m, l).terms {
                out.add_term(*m2, &(s * t));
            }
        }
        out
    }

    /// Product of two monomials in normal form.
    pub fn mul_mono(&self, p: Mono, q: Mono) -> SowElement {
        if q == [0, 0, 0] {
            return self.mono(p);
        }
        if let Some(x) = self.mono_memo.borrow().get(&(p, q)) {
            return x.clone();
        }
        let mut x = self.mono(p);
        for l in letters(q) {
            // X02 and X12 powers that are already in order are appended directly.
            x = self.mul_letter(&x, l);
        }
        self.mono_memo.borrow_mut().insert((p, q), x.clone());
        x
    }

    pub fn mul(&self, x: &SowElement, y: &SowElement) -> SowElement {
        let mut out = self.zero();
        for (p, s) in &x.terms {
            for (q, t) in &y.terms {
                let st = s * t;
                if st.is_zero() {
                    continue;
                }
                for (m, u) in &self.mul_mono(*p, *q).terms {
                    out.add_term(*m, &(&st * u));
                }
            }
        }
        out
    }

    pub fn product(&self, xs: &[&SowElement]) -> SowElement {
        xs.iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    pub fn commutator(&self, x: &SowElement, y: &SowElement) -> SowElement {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    pub fn tensor_mul(&self, x: &SowTensor, y: &SowTensor) -> SowTensor {
        let mut out = SowTensor::zero(self.dw);
        for (p, s) in &x.terms {
            for (q, t) in &y.terms {
                let st = s * t;
                if st.is_zero() {
                    continue;
                }
                let factors: Vec<SowElement> = p.iter().zip(q).map(|(a, b)| self.mul_mono(*a, *b)).collect();
                let refs: Vec<&SowElement> = factors.iter().collect();
                out = out.add(&SowTensor::tensor(&refs).scale_series(&st));
            }
        }
        out
    }

    /// `Δ` on generators.
    pub fn delta_gen(&self, l: Letter) -> SowTensor {
        let one = self.one();
        let x = self.gen(l);
        match l {
            Letter::X02 => SowTensor::tensor(&[&one, &x]).add(&SowTensor::tensor(&[&x, &one])),
            _ => SowTensor::tensor(&[&self.exp_x02(-0.5), &x]).add(&SowTensor::tensor(&[&x, &self.exp_x02(0.5)])),
        }
    }

    pub fn delta_mono(&self, m: Mono) -> SowTensor {
        if let Some(x) = self.delta_memo.borrow().get(&m) {
            return x.clone();
        }
        let one = self.one();
        let mut x = SowTensor::tensor(&[&one, &one]);
        for l in letters(m) {
            x = self.tensor_mul(&x, &self.delta_gen(l));
        }
        self.delta_memo.borrow_mut().insert(m, x.clone());
        x
    }

    pub fn delta(&self, x: &SowElement) -> SowTensor {
        let mut out = SowTensor::zero(self.dw);
        for (m, s) in &x.terms {
            out = out.add(&self.delta_mono(*m).scale_series(s));
        }
        out
    }

    /// `Δ` applied to factor `pos` of every term.
    pub fn delta_at(&self, t: &SowTensor, pos: usize) -> SowTensor {
        let mut out = SowTensor::zero(self.dw);
        for (w, s) in &t.terms {
            for (pair, u) in &self.delta_mono(w[pos]).terms {
                let mut w2 = w[..pos].to_vec();
                w2.extend_from_slice(pair);
                w2.extend_from_slice(&w[pos + 1..]);
                out.add_term(w2, &(s * u));
            }
        }
        out
    }

    /// `ε` applied to factor `pos` of every term.
    pub fn counit_at(&self, t: &SowTensor, pos: usize) -> SowTensor {
        let mut out = SowTensor::zero(self.dw);
        for (w, s) in &t.terms {
            if w[pos] == [0, 0, 0] {
                let mut w2 = w.clone();
                w2.remove(pos);
                out.add_term(w2, s);
            }
        }
        out
    }

    /// `S` on generators.
    pub fn antipode_gen(&self, l: Letter) -> SowElement {
        let cos = Series::jcos(TAGS, self.dw, &self.jsq, 0.5);
        let sin = Series::jinv_sin(TAGS, self.dw, &self.jsq, 0.5);
        match l {
            Letter::X02 => self.gen(Letter::X02).scale(Complex64::new(-1.0, 0.0)),
            Letter::X01 => {
                let a = self.gen(Letter::X01).scale_series(&cos);
                let b = self.gen(Letter::X12).scale_series(&sin.scale_pim(&self.j1sq));
                b.sub(&a)
            }
            Letter::X12 => {
                let a = self.gen(Letter::X12).scale_series(&cos);
                let b = self.gen(Letter::X01).scale_series(&sin.scale_pim(&self.j2sq));
                a.add(&b).scale(Complex64::new(-1.0, 0.0))
            }
        }
    }

    /// `S` on monomials, as an antihomomorphism.
    pub fn antipode_mono(&self, m: Mono) -> SowElement {
        if let Some(x) = self.antipode_memo.borrow().get(&m) {
            return x.clone();
        }
        let ls: Vec<Letter> = letters(m).collect();
        let mut x = self.one();
        for l in ls.iter().rev() {
            x = self.mul(&x, &self.antipode_gen(*l));
        }
        self.antipode_memo.borrow_mut().insert(m, x.clone());
        x
    }

    pub fn antipode(&self, x: &SowElement) -> SowElement {
        let mut out = self.zero();
        for (m, s) in &x.terms {
            out = out.add(&self.antipode_mono(*m).scale_series(s));
        }
        out
    }

    /// `m ∘ (S ⊗ id)` if `left`, `m ∘ (id ⊗ S)` otherwise, on a tensor square.
    pub fn antipode_contract(&self, t: &SowTensor, left: bool) -> SowElement {
        let mut out = self.zero();
        for (w, s) in &t.terms {
            let x = if left {
                self.mul(&self.antipode_mono(w[0]), &self.mono(w[1]))
            } else {
                self.mul(&self.mono(w[0]), &self.antipode_mono(w[1]))
            };
            out = out.add(&x.scale_series(s));
        }
        out
    }

    /// The three defining relations as differences, built with the letters
    /// in the unreduced order so their normal forms must vanish.
    pub fn relation_parts(&self) -> [(Letter, Letter, SowElement); 3] {
        let x01 = self.gen(Letter::X01);
        let x12 = self.gen(Letter::X12);
        [
            (Letter::X01, Letter::X02, x12.scale_pim(&self.j1sq)),
            (Letter::X02, Letter::X12, x01.scale_pim(&self.j2sq)),
            (Letter::X12, Letter::X01, self.sinh_x02()),
        ]
    }
}

/// An expression over the generators, normalized by [`sow_normalize`].
#[derive(Clone, Debug)]
pub enum SowExpr {
    Gen(Letter),
    Scalar(Series),
    Sum(Vec<SowExpr>),
    Product(Vec<SowExpr>),
}

impl SowExpr {
    /// A word in the generators.
    pub fn word(ls: &[Letter]) -> SowExpr {
        SowExpr::Product(ls.iter().map(|l| SowExpr::Gen(*l)).collect())
    }
}

pub fn sow_normalize(sow: &Sow, x: &SowExpr) -> SowElement {
    match x {
        SowExpr::Gen(l) => sow.gen(*l),
        SowExpr::Scalar(s) => sow.scalar(s),
        SowExpr::Sum(xs) => xs.iter().fold(sow.zero(), |acc, y| acc.add(&sow_normalize(sow, y))),
        SowExpr::Product(xs) => xs.iter().fold(sow.one(), |acc, y| sow.mul(&acc, &sow_normalize(sow, y))),
    }
}

/// `max |(xy)z − x(yz)|` over all words of length 3.
pub fn diamond_check(sow: &Sow) -> f64 {
    let mut worst: f64 = 0.0;
    for a in Letter::ALL {
        for b in Letter::ALL {
            for c in Letter::ALL {
                let (x, y, z) = (sow.gen(a), sow.gen(b), sow.gen(c));
                let left = sow.mul(&sow.mul(&x, &y), &z);
                let right = sow.mul(&x, &sow.mul(&y, &z));
                worst = worst.max(left.sub(&right).max_abs());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sow(s: &str, d: usize) -> Sow {
        Sow::new(&s.parse().unwrap(), d, d).unwrap()
    }

    #[test]
    fn first_commutator() {
        let s = sow("1,1", 8);
        let x = sow_normalize(&s, &SowExpr::word(&[Letter::X02, Letter::X01]));
        let expected = s.mono([1, 1, 0]).sub(&s.mono([0, 0, 1]));
        assert_eq!(x, expected);
    }

    #[test]
    fn sinh_term_with_nilpotent_j1() {
        let s = sow("n,1", 6);
        let x = sow_normalize(&s, &SowExpr::word(&[Letter::X12, Letter::X01]));
        let expected = s.mono([1, 0, 1]).add(&s.sinh_x02());
        assert_eq!(x, expected);
        assert_eq!(x.get([0, 7, 0]), Some(&Series::monomial(TAGS, 6, 6, Complex64::new(1.0 / 5040.0, 0.0))));
    }

    #[test]
    fn diamonds() {
        for sig in ["1,1", "n,1", "1,n", "n,n"] {
            for d in [6, 8] {
                assert!(diamond_check(&sow(sig, d)) < 1e-13, "{sig} {d}");
            }
        }
    }

    #[test]
    fn idempotent_and_linear() {
        let s = sow("1,1", 6);
        let w = SowExpr::word(&[Letter::X12, Letter::X02, Letter::X01]);
        let x = sow_normalize(&s, &w);
        let again = sow_normalize(
            &s,
            &SowExpr::Sum(x.terms().map(|(m, c)| SowExpr::Product(vec![SowExpr::Scalar(c.clone()), SowExpr::word(&letters(*m).collect::<Vec<_>>())])).collect()),
        );
        assert!(again.sub(&x).max_abs() < 1e-15);
        let two = sow_normalize(&s, &SowExpr::Sum(vec![w.clone(), w]));
        assert!(two.sub(&x.scale(Complex64::new(2.0, 0.0))).max_abs() < 1e-15);
    }

    #[test]
    fn x02_primitive_antipode() {
        let s = sow("1,1", 6);
        let d = s.delta_gen(Letter::X02);
        assert!(s.antipode_contract(&d, true).is_empty());
    }
}
