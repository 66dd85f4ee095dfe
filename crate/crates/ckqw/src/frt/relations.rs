use super::{alphabet, idx, TMatrix, TAGS};
use crate::error::Result;
use crate::free::{FreeElement, Provenance, RelationSet, TensorElement};
use crate::matrix::CKMatrix;
use crate::pimenov::PimenovElement;

/// A polynomial in the entries `T_{ab}` (0-based) with `D_2` coefficients.
/// Keeping relations in this form lets the coproduct, counit and antipode act
/// on matrix entries directly.
#[derive(Clone, Debug, PartialEq)]
pub struct TPoly {
    pub terms: Vec<(PimenovElement, Vec<(usize, usize)>)>,
}

impl TPoly {
    pub fn new() -> Self {
        TPoly { terms: Vec::new() }
    }

    pub fn push(&mut self, coeff: PimenovElement, word: Vec<(usize, usize)>) {
        if !coeff.is_zero() {
            self.terms.push((coeff, word));
        }
    }

    /// Expands over the generator alphabet through `T(j)`.
    pub fn to_free(&self, t: &TMatrix) -> FreeElement {
        let mut out = FreeElement::zero(9, TAGS);
        for (coeff, word) in &self.terms {
            let mut x = FreeElement::constant(9, coeff);
            for (a, b) in word {
                x = &x * &t[*a][*b];
            }
            out = &out + &x;
        }
        out
    }

    /// `Δ` with `Δ T_{ab} = Σ_c T_{ac} ⊗ T_{cb}`.
    pub fn coproduct(&self, t: &TMatrix) -> Result<TensorElement> {
        let mut delta: Vec<Vec<TensorElement>> = Vec::new();
        for a in 0..3 {
            let mut row = Vec::new();
            for b in 0..3 {
                let mut s = TensorElement::zero(9, TAGS);
                for c in 0..3 {
                    s = s.try_add(&TensorElement::tensor(&t[a][c], &t[c][b])?)?;
                }
                row.push(s);
            }
            delta.push(row);
        }
        let mut out = TensorElement::zero(9, TAGS);
        for (coeff, word) in &self.terms {
            let mut x = TensorElement::tensor(&FreeElement::constant(9, coeff), &FreeElement::one(9, TAGS))?;
            for (a, b) in word {
                x = x.try_mul(&delta[*a][*b])?;
            }
            out = out.try_add(&x)?;
        }
        Ok(out)
    }

    /// `ε` with `ε(T_{ab}) = δ_{ab}`.
    pub fn counit(&self) -> PimenovElement {
        let mut acc = PimenovElement::zero(TAGS);
        for (coeff, word) in &self.terms {
            if word.iter().all(|(a, b)| a == b) {
                acc += coeff;
            }
        }
        acc
    }

    /// Applies the antipode `S(T) = C Tᵗ C⁻¹` as an antihomomorphism.
    pub fn antipode(&self, cm: &CKMatrix, cinv: &CKMatrix) -> TPoly {
        let mut out = TPoly::new();
        for (coeff, word) in &self.terms {
            // each entry S(T)_{ab} = Σ_{pq} C_{ap} T_{qp} C⁻¹_{qb}
            let mut partial: Vec<(PimenovElement, Vec<(usize, usize)>)> = vec![(coeff.clone(), Vec::new())];
            for (a, b) in word.iter().rev() {
                let mut next = Vec::new();
                for (x, w) in &partial {
                    for p in 0..3 {
                        for q in 0..3 {
                            let k = &(x * cm.get(*a, p)) * cinv.get(q, *b);
                            if !k.is_zero() {
                                let mut w2 = w.clone();
                                w2.push((q, p));
                                next.push((k, w2));
                            }
                        }
                    }
                }
                partial = next;
            }
            for (x, w) in partial {
                out.push(x, w);
            }
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.len()).max().unwrap_or(0)
    }
}

impl Default for TPoly {
    fn default() -> Self {
        TPoly::new()
    }
}

/// Entries of `R T₁ T₂ - T₂ T₁ R`, indexed `((a, b), (c, d))` row-major.
pub fn rtt_tpoly(r: &CKMatrix) -> Vec<TPoly> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    let mut p = TPoly::new();
                    for e in 0..3 {
                        for f in 0..3 {
                            p.push(r.get(idx(a, b), idx(e, f)).clone(), vec![(e, c), (f, d)]);
                            p.push(-r.get(idx(e, f), idx(c, d)), vec![(b, f), (a, e)]);
                        }
                    }
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Entries of `T C Tᵗ - C` followed by those of `Tᵗ C T - C`, interleaved per
/// entry.
pub fn orthogonality_tpoly(cm: &CKMatrix) -> Vec<TPoly> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            let mut p = TPoly::new();
            let mut q = TPoly::new();
            for e in 0..3 {
                for f in 0..3 {
                    let x = cm.get(e, f);
                    if !x.is_zero() {
                        p.push(x.clone(), vec![(a, e), (b, f)]);
                        q.push(x.clone(), vec![(e, a), (f, b)]);
                    }
                }
            }
            p.push(-cm.get(a, b), vec![]);
            q.push(-cm.get(a, b), vec![]);
            out.push(p);
            out.push(q);
        }
    }
    out
}

/// RTT polynomials followed by orthogonality polynomials.
pub fn relations_tpoly(r: &CKMatrix, cm: &CKMatrix) -> Vec<TPoly> {
    let mut out = rtt_tpoly(r);
    out.extend(orthogonality_tpoly(cm));
    out
}

fn to_set(polys: &[TPoly], t: &TMatrix, label: Provenance) -> RelationSet {
    let relations = polys.iter().map(|p| p.to_free(t)).filter(|e| !e.is_zero()).collect();
    RelationSet::new(alphabet(), TAGS, relations, label).expect("degree-2 relations over the fixed alphabet")
}

/// The 81 entries of `R T₁ T₂ - T₂ T₁ R`, zeros dropped.
pub fn rtt_relations(r: &CKMatrix, t: &TMatrix) -> RelationSet {
    to_set(&rtt_tpoly(r), t, Provenance::Rtt)
}

/// The 18 entries of `T C Tᵗ - C` and `Tᵗ C T - C`.
pub fn orthogonality_relations(cm: &CKMatrix, t: &TMatrix) -> RelationSet {
    to_set(&orthogonality_tpoly(cm), t, Provenance::Orthogonality)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use crate::frt::{cmatrix, rmatrix3, tmatrix};
    use crate::pimenov::ParameterSignature;

    fn unit(z: f64) -> Complex64 {
        Complex64::new(z, 0.0)
    }

    #[test]
    fn counts() {
        let sig: ParameterSignature = "1,1".parse().unwrap();
        let t = tmatrix(&sig).unwrap();
        let r = rmatrix3(&sig, unit(0.37)).unwrap();
        let cm = cmatrix(&sig, unit(0.37)).unwrap();
        assert!(rtt_relations(&r, &t).len() <= 81);
        assert_eq!(orthogonality_relations(&cm, &t).len(), 18);
    }

    #[test]
    fn classical_limit_is_commutators() {
        let sig: ParameterSignature = "1,1".parse().unwrap();
        let t = tmatrix(&sig).unwrap();
        let r = rmatrix3(&sig, unit(0.0)).unwrap();
        for p in rtt_tpoly(&r) {
            // R = I: T_ac T_bd - T_bd T_ac
            assert!(p.terms.len() == 2 || p.to_free(&t).is_zero());
        }
    }

    #[test]
    fn counit_kills_relations() {
        let sig: ParameterSignature = "n,1".parse().unwrap();
        let r = rmatrix3(&sig, unit(0.61)).unwrap();
        let cm = cmatrix(&sig, unit(0.61)).unwrap();
        for p in relations_tpoly(&r, &cm) {
            assert!(p.counit().is_zero());
        }
    }
}
