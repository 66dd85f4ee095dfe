use num_complex::Complex64;
use serde::Serialize;

use super::relations::relations_tpoly;
use super::{alphabet, rmatrix_at, tmatrix, FrtData, TAGS};
use crate::error::Result;
use crate::free::{build_reduction, FreeElement, Provenance, RelationSet};
use crate::matrix::CKMatrix;
use crate::pimenov::{pim_apply, Kernel, ParameterSignature, PimenovElement};

#[derive(Clone, Debug, Serialize)]
pub struct ContractionReport {
    pub signature: String,
    /// Largest coefficient difference between matching relations.
    pub termwise: f64,
    /// Transformed relations reduced by the directly built system.
    pub transformed_in_direct: f64,
    /// Directly built relations reduced by the transformed system.
    pub direct_in_transformed: f64,
}

impl ContractionReport {
    pub fn residual(&self) -> f64 {
        self.transformed_in_direct.max(self.direct_in_transformed)
    }
}

/// `C = C₀ diag(e^{z/2}, 1, e^{-z/2})` by lifting `exp`.
fn cmatrix_at(z: &PimenovElement) -> Result<CKMatrix> {
    let n = z.n();
    let mut d = CKMatrix::identity(3, n);
    d.set(0, 0, pim_apply(&Kernel::Exp, &z.scale_real(0.5))?);
    d.set(2, 2, pim_apply(&Kernel::Exp, &z.scale_real(-0.5))?);
    Ok(&CKMatrix::c0(3, n) * &d)
}

/// Builds the undeformed-parameter relations in primed generators, substitutes
/// `z = Jv` and `t' = (j-monomial) t`, and compares with the relations built
/// directly at `(sig, v)`.
pub fn verify_contraction_transform(sig: &ParameterSignature, v: Complex64) -> Result<ContractionReport> {
    let z = sig.big_j().scale(v);
    let plain: ParameterSignature = "1,1".parse()?;
    let tp = tmatrix(&plain)?;
    let primed = relations_tpoly(&rmatrix_at(&z)?, &cmatrix_at(&z)?);

    let j1 = sig.slot_value(1);
    let j2 = sig.slot_value(2);
    let jj = &j1 * &j2;
    let one = PimenovElement::one(TAGS);
    let scales = [&one, &jj, &j1, &j2, &one, &jj, &j1, &j2, &one];
    let images: Vec<FreeElement> =
        (0..9).map(|g| FreeElement::generator(9, TAGS, g).scale_pim(scales[g])).collect();

    let direct_data = FrtData::new(sig, v)?;
    let direct: Vec<FreeElement> = direct_data.tpolys().iter().map(|p| p.to_free(&direct_data.t)).collect();
    let transformed: Vec<FreeElement> =
        primed.iter().map(|p| p.to_free(&tp).substitute(&images)).collect::<Result<_>>()?;

    let termwise = direct.iter().zip(&transformed).map(|(a, b)| a.dist(b)).fold(0.0, f64::max);

    let set = |xs: &[FreeElement]| {
        let rels = xs.iter().filter(|e| !e.is_zero()).cloned().collect();
        RelationSet::new(alphabet(), TAGS, rels, Provenance::Derived)
    };
    let sd = build_reduction(&set(&direct)?, 2)?;
    let st = build_reduction(&set(&transformed)?, 2)?;
    let mut a: f64 = 0.0;
    for x in &transformed {
        a = a.max(sd.reduce(x)?.max_abs());
    }
    let mut b: f64 = 0.0;
    for x in &direct {
        b = b.max(st.reduce(x)?.max_abs());
    }
    Ok(ContractionReport {
        signature: sig.to_string(),
        termwise,
        transformed_in_direct: a,
        direct_in_transformed: b,
    })
}
