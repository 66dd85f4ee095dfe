//! `L^±` functionals through `⟨L^σ_{ij}, T_{kl}⟩ = R^σ[(i,k),(j,l)]` and the
//! fundamental representation `ρ(L^σ_{ij})_{ab} = R^σ[(i,a),(j,b)]`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::frt::{cmatrix, idx, rmatrix3, TAGS};
use crate::matrix::CKMatrix;
use crate::pimenov::{jcosh, jinv_sinh, ParameterSignature, PimenovElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug)]
pub struct DualFunctionals {
    pub sig: ParameterSignature,
    pub v: Complex64,
    pub r: CKMatrix,
    /// `P R P`.
    pub rp: CKMatrix,
    /// `R⁻¹`.
    pub rm: CKMatrix,
}

/// The flip `P(u ⊗ w) = w ⊗ u` on `C³ ⊗ C³`.
pub fn flip(n: usize) -> CKMatrix {
    let p: Vec<usize> = (0..9).map(|k| idx(k % 3, k / 3)).collect();
    CKMatrix::permutation(&p, n)
}

pub fn build_functionals(sig: &ParameterSignature, v: Complex64) -> Result<DualFunctionals> {
    let r = rmatrix3(sig, v)?;
    let p = flip(TAGS);
    let rp = &(&p * &r) * &p;
    let rm = r.lower_triangular_inverse()?;
    Ok(DualFunctionals { sig: sig.clone(), v, r, rp, rm })
}

impl DualFunctionals {
    pub fn rsign(&self, s: Sign) -> &CKMatrix {
        match s {
            Sign::Plus => &self.rp,
            Sign::Minus => &self.rm,
        }
    }

    /// `⟨L^σ_{ij}, T_{kl}⟩`, 0-based.
    pub fn pair(&self, s: Sign, i: usize, j: usize, k: usize, l: usize) -> &PimenovElement {
        self.rsign(s).get(idx(i, k), idx(j, l))
    }

    /// `ρ(L^σ_{ij})`.
    pub fn rho(&self, s: Sign, i: usize, j: usize) -> CKMatrix {
        CKMatrix::from_fn(3, 3, TAGS, |a, b| self.pair(s, i, j, a, b).clone())
    }

    /// `ρ` of a word of functionals, by the matrix product.
    pub fn rho_word(&self, word: &[(Sign, usize, usize)]) -> CKMatrix {
        word.iter().fold(CKMatrix::identity(3, TAGS), |acc, (s, i, j)| &acc * &self.rho(*s, *i, *j))
    }

    /// `⟨x_1 ⋯ x_k, T_{ab}⟩` by pairing against `Δ^{(k)} T_{ab}`, summing over
    /// the intermediate indices.
    pub fn pair_word(&self, word: &[(Sign, usize, usize)], a: usize, b: usize) -> PimenovElement {
        match word.split_first() {
            None => {
                if a == b {
                    PimenovElement::one(TAGS)
                } else {
                    PimenovElement::zero(TAGS)
                }
            }
            Some(((s, i, j), rest)) => {
                let mut acc = PimenovElement::zero(TAGS);
                for c in 0..3 {
                    let head = self.pair(*s, *i, *j, a, c);
                    if !head.is_zero() {
                        acc += &(head * &self.pair_word(rest, c, b));
                    }
                }
                acc
            }
        }
    }

    /// `ρ(l11), ρ(l12), ρ(l̃12)` in the sign convention of the `L^±` matrices.
    pub fn generators(&self) -> [CKMatrix; 3] {
        let j1 = self.sig.slot_value(1);
        let j2 = self.sig.slot_value(2);
        let half = Complex64::new(0.5, 0.0);
        let ihalf = Complex64::new(0.0, 0.5);
        let p = self.rho(Sign::Plus, 0, 1);
        let m = self.rho(Sign::Minus, 2, 1);
        [
            self.rho(Sign::Plus, 0, 0),
            p.sub(&m).scale(&j1.scale(half)),
            p.add(&m).scale(&j2.scale(ihalf)),
        ]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LRelationsReport {
    pub eq33_plus_plus: f64,
    pub eq33_minus_minus: f64,
    pub eq33_plus_minus: f64,
    pub eq34_orthogonality: f64,
    pub eq34_diagonal: f64,
    pub residual: f64,
}

/// `R⁺ L₁^σ L₂^τ = L₂^τ L₁^σ R⁺` entrywise in `ρ`.
fn eq33(f: &DualFunctionals, la: Sign, lb: Sign) -> f64 {
    let rp = &f.rp;
    let ra: Vec<Vec<CKMatrix>> = (0..3).map(|i| (0..3).map(|j| f.rho(la, i, j)).collect()).collect();
    let rb: Vec<Vec<CKMatrix>> = (0..3).map(|i| (0..3).map(|j| f.rho(lb, i, j)).collect()).collect();
    let mut worst: f64 = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    let mut lhs = CKMatrix::zeros(3, 3, TAGS);
                    let mut rhs = CKMatrix::zeros(3, 3, TAGS);
                    for e in 0..3 {
                        for g in 0..3 {
                            let x = rp.get(idx(a, b), idx(e, g));
                            if !x.is_zero() {
                                lhs = lhs.add(&(&ra[e][c] * &rb[g][d]).scale(x));
                            }
                            let y = rp.get(idx(e, g), idx(c, d));
                            if !y.is_zero() {
                                rhs = rhs.add(&(&rb[b][g] * &ra[a][e]).scale(y));
                            }
                        }
                    }
                    worst = worst.max(lhs.dist(&rhs));
                }
            }
        }
    }
    worst
}

/// Quadratic relations of `L^±` in the fundamental representation.
pub fn verify_l_relations(sig: &ParameterSignature, v: Complex64) -> Result<LRelationsReport> {
    let f = build_functionals(sig, v)?;
    let pp = eq33(&f, Sign::Plus, Sign::Plus);
    let mm = eq33(&f, Sign::Minus, Sign::Minus);
    let pm = eq33(&f, Sign::Plus, Sign::Minus);

    let ct = cmatrix(sig, v)?.transpose();
    let cti = crate::frt::cmatrix_inverse(&cmatrix(sig, v)?)?.transpose();
    let id = CKMatrix::identity(3, TAGS);
    let mut orth: f64 = 0.0;
    for s in [Sign::Plus, Sign::Minus] {
        let l: Vec<Vec<CKMatrix>> = (0..3).map(|i| (0..3).map(|j| f.rho(s, i, j)).collect()).collect();
        for i in 0..3 {
            for j in 0..3 {
                // L Cᵗ Lᵗ = Cᵗ and Lᵗ (Cᵗ)⁻¹ L = (Cᵗ)⁻¹
                let mut a = CKMatrix::zeros(3, 3, TAGS);
                let mut b = CKMatrix::zeros(3, 3, TAGS);
                for e in 0..3 {
                    for g in 0..3 {
                        if !ct.get(e, g).is_zero() {
                            a = a.add(&(&l[i][e] * &l[j][g]).scale(ct.get(e, g)));
                        }
                        if !cti.get(e, g).is_zero() {
                            b = b.add(&(&l[e][i] * &l[g][j]).scale(cti.get(e, g)));
                        }
                    }
                }
                orth = orth.max(a.dist(&id.scale(ct.get(i, j))));
                orth = orth.max(b.dist(&id.scale(cti.get(i, j))));
            }
        }
    }
    let mut diag: f64 = 0.0;
    for k in 0..3 {
        let p = f.rho(Sign::Plus, k, k);
        let m = f.rho(Sign::Minus, k, k);
        diag = diag.max((&p * &m).dist(&id)).max((&m * &p).dist(&id));
    }
    let prod = &(&f.rho(Sign::Plus, 0, 0) * &f.rho(Sign::Plus, 1, 1)) * &f.rho(Sign::Plus, 2, 2);
    diag = diag.max(prod.dist(&id));
    let residual = pp.max(mm).max(pm).max(orth).max(diag);
    Ok(LRelationsReport {
        eq33_plus_plus: pp,
        eq33_minus_minus: mm,
        eq33_plus_minus: pm,
        eq34_orthogonality: orth,
        eq34_diagonal: diag,
        residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorReport {
    pub residuals: [f64; 3],
    pub residual: f64,
}

/// The three relations among `l11, l12, l̃12` evaluated in `ρ`.
pub fn verify_dual_commutators(sig: &ParameterSignature, v: Complex64) -> Result<CommutatorReport> {
    let f = build_functionals(sig, v)?;
    let [l11, l12, lt12] = f.generators();
    let j = sig.big_j();
    let jsq = &j * &j;
    let j1 = sig.slot_value(1);
    let j2 = sig.slot_value(2);
    let j1sq = &j1 * &j1;
    let j2sq = &j2 * &j2;
    let i = Complex64::new(0.0, 1.0);
    let ch = jcosh(&jsq, v);
    let jinv_sh = jinv_sinh(&jsq, v);
    let half = v * 0.5;
    // 2iJ sinh(Jv/2) = 2i J² · J⁻¹ sinh(Jv/2)
    let k3 = (&jsq * &jinv_sinh(&jsq, half)).scale(i * 2.0);
    // J⁻¹ tanh(Jv/2)
    let jinv_th = &jinv_sinh(&jsq, half) * &jcosh(&jsq, half).inv()?;
    let id = CKMatrix::identity(3, TAGS);

    let r1 = (&l11 * &l12)
        .scale(&ch)
        .sub(&(&l12 * &l11))
        .sub(&(&l11 * &lt12).scale(&(&j1sq * &jinv_sh).scale(i)));
    let r2 = (&l11 * &lt12)
        .scale(&ch)
        .sub(&(&lt12 * &l11))
        .add(&(&l11 * &l12).scale(&(&j2sq * &jinv_sh).scale(i)));
    let quad = (&l12 * &l12).scale(&j2sq).add(&(&lt12 * &lt12).scale(&j1sq));
    let r3 = (&l12 * &lt12)
        .sub(&(&lt12 * &l12))
        .sub(&id.sub(&(&l11 * &l11)).scale(&k3))
        .add(&quad.scale(&jinv_th.scale(i)));
    let residuals = [r1.max_abs(), r2.max_abs(), r3.max_abs()];
    Ok(CommutatorReport { residuals, residual: residuals.iter().copied().fold(0.0, f64::max) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_at_zero() {
        let f = build_functionals(&"1,1".parse().unwrap(), Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(f.rp, CKMatrix::identity(9, TAGS));
        assert_eq!(f.rm, CKMatrix::identity(9, TAGS));
    }

    #[test]
    fn flip_squares_to_identity() {
        let p = flip(0);
        assert_eq!(&p * &p, CKMatrix::identity(9, 0));
        assert_eq!(p.get(idx(0, 1), idx(1, 0)).scalar_part().re, 1.0);
    }

    #[test]
    fn nilpotent_inverse_is_first_order() {
        let sig: ParameterSignature = "n,n".parse().unwrap();
        let v = Complex64::new(0.37, 0.0);
        let f = build_functionals(&sig, v).unwrap();
        let jv = sig.big_j().scale(v);
        let expected = CKMatrix::identity(9, TAGS).sub(&crate::frt::rtilde().scale(&jv));
        assert_eq!(f.rm.dist(&expected), 0.0);
    }

    #[test]
    fn word_pairing_matches_matrix_product() {
        let f = build_functionals(&"1,n".parse().unwrap(), Complex64::new(0.61, 0.29)).unwrap();
        let w = [(Sign::Plus, 0, 1), (Sign::Minus, 2, 1), (Sign::Plus, 1, 2)];
        let m = f.rho_word(&w);
        for a in 0..3 {
            for b in 0..3 {
                assert!(f.pair_word(&w, a, b).dist(m.get(a, b)) < 1e-14);
            }
        }
    }
}
