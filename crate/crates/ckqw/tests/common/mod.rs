//! Brute-force oracles shared by the integration tests. None of them calls
//! the code paths they are used to check.

#![allow(dead_code)]

use ckqw::{CKMatrix, PimenovElement};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Mixed partial `∂_{t_k, k ∈ S} g(0)` by central differences, with one
/// Richardson step.
fn mixed_partial(g: &dyn Fn(&[f64]) -> Complex64, dims: usize, h: f64) -> Complex64 {
    let stencil = |h: f64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for signs in 0..(1usize << dims) {
            let t: Vec<f64> = (0..dims).map(|k| if signs >> k & 1 == 1 { -h } else { h }).collect();
            let parity = if signs.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            acc += g(&t) * parity;
        }
        acc / (2.0 * h).powi(dims as i32)
    };
    (stencil(h / 2.0) * 4.0 - stencil(h)) / 3.0
}

/// Coefficients of `f(a)` from finite differences of the scalar function:
/// with `ι_k → t_k`, the `ι_S` coefficient is the mixed partial over `S` of
/// `f(Σ_{T ⊆ S} a_T t^T)` at `t = 0`.
pub fn finite_difference_lift(f: &dyn Fn(Complex64) -> Complex64, a: &PimenovElement, h: f64) -> Vec<Complex64> {
    let n = a.n();
    (0..1usize << n)
        .map(|s| {
            if s == 0 {
                return f(a.coeff(0));
            }
            let bits: Vec<usize> = (0..n).filter(|k| s >> k & 1 == 1).collect();
            let g = |t: &[f64]| {
                let mut x = Complex64::new(0.0, 0.0);
                for sub in 0..(1usize << n) {
                    if sub & !s != 0 {
                        continue;
                    }
                    let mut w = 1.0;
                    for (i, k) in bits.iter().enumerate() {
                        if sub >> k & 1 == 1 {
                            w *= t[i];
                        }
                    }
                    x += a.coeff(sub) * w;
                }
                f(x)
            };
            mixed_partial(&g, bits.len(), h)
        })
        .collect()
}

/// Grassmann algebra on `2n` anticommuting generators, basis monomials
/// indexed by bitmask in increasing generator order.
#[derive(Clone, Debug, PartialEq)]
pub struct Grassmann {
    pub c: Vec<Complex64>,
}

/// Sign of `ξ^p ξ^q` reordered into increasing order.
fn reorder_sign(p: usize, q: usize) -> f64 {
    let mut swaps = 0;
    for k in 0..usize::BITS as usize {
        if q >> k & 1 == 1 {
            // generators of p above k must move past ξ_k
            swaps += (p >> (k + 1)).count_ones();
        }
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl Grassmann {
    pub fn mul(&self, o: &Grassmann) -> Grassmann {
        let mut c = vec![Complex64::new(0.0, 0.0); self.c.len()];
        for (p, x) in self.c.iter().enumerate() {
            for (q, y) in o.c.iter().enumerate() {
                if p & q == 0 && (x.norm() != 0.0 && y.norm() != 0.0) {
                    c[p | q] += x * y * reorder_sign(p, q);
                }
            }
        }
        Grassmann { c }
    }

    /// `ι_k ↦ ξ_k ξ_{n+k}`, multiplied out in the Grassmann algebra itself.
    pub fn embed(a: &PimenovElement) -> Grassmann {
        let n = a.n();
        let size = 1usize << (2 * n);
        let unit = |m: usize| {
            let mut c = vec![Complex64::new(0.0, 0.0); size];
            c[m] = Complex64::new(1.0, 0.0);
            Grassmann { c }
        };
        let mut out = Grassmann { c: vec![Complex64::new(0.0, 0.0); size] };
        for s in 0..(1usize << n) {
            let z = a.coeff(s);
            if z.norm() == 0.0 {
                continue;
            }
            let mut term = unit(0);
            for k in 0..n {
                if s >> k & 1 == 1 {
                    term = term.mul(&unit(1 << k)).mul(&unit(1 << (n + k)));
                }
            }
            for (o, t) in out.c.iter_mut().zip(&term.c) {
                *o += t * z;
            }
        }
        out
    }
}

/// Numerical rank from singular values.
pub fn complex_rank(m: &DMatrix<Complex64>, rel_tol: f64) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|s| **s > rel_tol * max).count()
}

/// Coefficient matrix of the 81 entries of `R T₁ T₂ - T₂ T₁ R` in the basis
/// of the 81 words `T_{ij} T_{kl}`, for a scalar R-matrix.
pub fn rtt_coefficients(r: &CKMatrix) -> DMatrix<Complex64> {
    let rr = |i: usize, j: usize| r.get(i, j).scalar_part();
    let word = |i: usize, j: usize, k: usize, l: usize| (3 * i + j) * 9 + 3 * k + l;
    let mut m = DMatrix::from_element(81, 81, Complex64::new(0.0, 0.0));
    for a in 0..3 {
        for b in 0..3 {
            for cc in 0..3 {
                for d in 0..3 {
                    let row = ((a * 3 + b) * 3 + cc) * 3 + d;
                    for e in 0..3 {
                        for f in 0..3 {
                            // (R T₁T₂)_{ab,cd} = R_{ab,ef} T_{ec} T_{fd}
                            m[(row, word(e, cc, f, d))] += rr(3 * a + b, 3 * e + f);
                            // (T₂T₁R)_{ab,cd} = T_{bf} T_{ae} R_{ef,cd}
                            m[(row, word(b, f, a, e))] -= rr(3 * e + f, 3 * cc + d);
                        }
                    }
                }
            }
        }
    }
    m
}

/// `R₁₂R₁₃R₂₃ - R₂₃R₁₃R₁₂` built entry by entry.
pub fn qybe_residual(r: &CKMatrix) -> f64 {
    let n = r.tags();
    let zero = PimenovElement::zero(n);
    let one = PimenovElement::one(n);
    let delta = |i: usize, j: usize| if i == j { one.clone() } else { zero.clone() };
    let split = |x: usize| (x / 9, x / 3 % 3, x % 3);
    let r12 = CKMatrix::from_fn(27, 27, n, |x, y| {
        let ((a, b, c3), (d, e, f)) = (split(x), split(y));
        r.get(3 * a + b, 3 * d + e) * &delta(c3, f)
    });
    let r13 = CKMatrix::from_fn(27, 27, n, |x, y| {
        let ((a, b, c3), (d, e, f)) = (split(x), split(y));
        r.get(3 * a + c3, 3 * d + f) * &delta(b, e)
    });
    let r23 = CKMatrix::from_fn(27, 27, n, |x, y| {
        let ((a, b, c3), (d, e, f)) = (split(x), split(y));
        r.get(3 * b + c3, 3 * e + f) * &delta(a, d)
    });
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    lhs.dist(&rhs)
}
