use rayon::prelude::*;
use serde::Serialize;

use super::relations::{relations_tpoly, TPoly};
use super::{alphabet, cmatrix_inverse, FrtData, TAGS};
use crate::error::Result;
use crate::free::{build_reduction, FreeElement, Provenance, ReductionSystem, RelationSet};
use crate::pimenov::PimenovElement;

#[derive(Clone, Debug, Serialize)]
pub struct HopfReport {
    pub check: String,
    pub residual: f64,
    pub failing: Vec<String>,
}

impl FrtData {
    pub fn tpolys(&self) -> Vec<TPoly> {
        relations_tpoly(&self.r, &self.c)
    }

    /// RTT and orthogonality relations together.
    pub fn relation_set(&self) -> RelationSet {
        let relations = self.tpolys().iter().map(|p| p.to_free(&self.t)).filter(|e| !e.is_zero()).collect();
        RelationSet::new(alphabet(), TAGS, relations, Provenance::Derived).expect("degree-2 relations")
    }

    pub fn system(&self) -> Result<ReductionSystem> {
        build_reduction(&self.relation_set(), 3)
    }
}

/// `ε` on every relation: exactly on the matrix-entry form, and to rounding
/// on the expanded form (`ε(t11) = ε(t22) = 1`, all other generators 0).
pub fn counit_check(data: &FrtData) -> (bool, f64) {
    let exact = data.tpolys().iter().all(|p| p.counit().is_zero());
    let mut values = vec![PimenovElement::zero(TAGS); 9];
    values[0] = PimenovElement::one(TAGS);
    values[8] = PimenovElement::one(TAGS);
    let expanded = data
        .tpolys()
        .iter()
        .map(|p| p.to_free(&data.t).evaluate(&values).max_abs())
        .fold(0.0, f64::max);
    (exact, expanded)
}

fn report(check: &str, items: Vec<(String, f64)>, tol: f64) -> HopfReport {
    let residual = items.iter().map(|x| x.1).fold(0.0, f64::max);
    let failing = items.into_iter().filter(|x| x.1 > tol).map(|(s, r)| format!("{s}: {r:.3e}")).collect();
    HopfReport { check: check.to_string(), residual, failing }
}

/// `S(T) T - I` and `T S(T) - I` reduce to zero, and `S` maps every relation
/// into the ideal.
pub fn antipode_check(data: &FrtData, sys: &ReductionSystem) -> Result<HopfReport> {
    let cm = &data.c;
    let cinv = cmatrix_inverse(cm)?;
    let one = PimenovElement::one(TAGS);
    let mut polys: Vec<(String, TPoly)> = Vec::new();
    for i in 0..3 {
        for l in 0..3 {
            let mut left = TPoly::new();
            let mut right = TPoly::new();
            for k in 0..3 {
                for a in 0..3 {
                    for b in 0..3 {
                        // S(T)_{ik} = Σ C_{ia} T_{ba} C⁻¹_{bk}
                        left.push(cm.get(i, a) * cinv.get(b, k), vec![(b, a), (k, l)]);
                        right.push(cm.get(k, a) * cinv.get(b, l), vec![(i, k), (b, a)]);
                    }
                }
            }
            if i == l {
                left.push(-&one, vec![]);
                right.push(-&one, vec![]);
            }
            polys.push((format!("(S(T)T - I)[{}{}]", i + 1, l + 1), left));
            polys.push((format!("(T S(T) - I)[{}{}]", i + 1, l + 1), right));
        }
    }
    for (k, p) in data.tpolys().iter().enumerate() {
        polys.push((format!("S(relation {k})"), p.antipode(cm, &cinv)));
    }
    let items = polys
        .par_iter()
        .map(|(name, p)| Ok((name.clone(), sys.reduce(&p.to_free(&data.t))?.max_abs())))
        .collect::<Result<Vec<_>>>()?;
    Ok(report("antipode", items, 1e-9))
}

/// `Δ(relation)` reduces to zero in the tensor square for every relation.
pub fn coproduct_compatibility(data: &FrtData, sys: &ReductionSystem) -> Result<HopfReport> {
    let items = data
        .tpolys()
        .par_iter()
        .enumerate()
        .map(|(k, p)| {
            let d = p.coproduct(&data.t)?;
            Ok((format!("relation {k}"), d.reduce(sys)?.max_abs()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report("coproduct", items, 1e-9))
}

/// Expanded relations of `data` reduce to zero under `sys`.
pub fn membership_residual(data: &FrtData, sys: &ReductionSystem) -> Result<f64> {
    let xs: Vec<FreeElement> = data.relation_set().relations;
    let r = xs.par_iter().map(|x| Ok(sys.reduce(x)?.max_abs())).collect::<Result<Vec<f64>>>()?;
    Ok(r.into_iter().fold(0.0, f64::max))
}
