//! Hopf axioms of `so_w(3; j)` and the substitution of the `l` generators.

use num_complex::Complex64;
use serde::Serialize;

use super::series::Series;
use super::sow::{Letter, Sow, SowElement, SowTensor};
use crate::error::Result;
use crate::frt::TAGS;
use crate::pimenov::ParameterSignature;

/// Residuals below this are treated as rounding when comparing truncation
/// orders.
pub const NOISE_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct SowHopfReport {
    pub signature: String,
    pub truncation: usize,
    /// `Δ` of the three relations in the tensor square.
    pub coproduct: [f64; 3],
    /// `m(S⊗id)Δ` and `m(id⊗S)Δ` on `X01, X02, X12`.
    pub antipode: [f64; 3],
    pub coassociativity: f64,
    pub counit: f64,
    pub overflow: usize,
    pub residual: f64,
}

fn relation_delta(sow: &Sow, k: usize) -> SowTensor {
    let (a, b, rhs) = &sow.relation_parts()[k];
    let da = sow.delta_gen(*a);
    let db = sow.delta_gen(*b);
    let lhs = sow.tensor_mul(&da, &db).sub(&sow.tensor_mul(&db, &da));
    lhs.sub(&sow.delta(rhs))
}

pub fn verify_sow_hopf(sig: &ParameterSignature, dw: usize, dx: usize) -> Result<SowHopfReport> {
    let sow = Sow::new(sig, dw, dx)?;
    let mut coproduct = [0.0; 3];
    let mut overflow = 0;
    for (k, c) in coproduct.iter_mut().enumerate() {
        *c = relation_delta(&sow, k).max_abs();
        let (_, _, rhs) = &sow.relation_parts()[k];
        overflow = overflow.max(rhs.overflow(dx));
    }
    let mut antipode = [0.0; 3];
    let mut coassociativity: f64 = 0.0;
    let mut counit: f64 = 0.0;
    for (k, l) in Letter::ALL.iter().enumerate() {
        let d = sow.delta_gen(*l);
        let left = sow.antipode_contract(&d, true);
        let right = sow.antipode_contract(&d, false);
        overflow = overflow.max(left.overflow(dx)).max(right.overflow(dx));
        antipode[k] = left.max_abs().max(right.max_abs());
        let a = sow.delta_at(&d, 0);
        let b = sow.delta_at(&d, 1);
        coassociativity = coassociativity.max(a.sub(&b).max_abs());
        let x = SowTensor::tensor(&[&sow.gen(*l)]);
        counit = counit.max(sow.counit_at(&d, 0).sub(&x).max_abs()).max(sow.counit_at(&d, 1).sub(&x).max_abs());
    }
    let residual = coproduct.iter().chain(&antipode).copied().fold(coassociativity.max(counit), f64::max);
    Ok(SowHopfReport {
        signature: sig.to_string(),
        truncation: dw,
        coproduct,
        antipode,
        coassociativity,
        counit,
        overflow,
        residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IsomorphismReport {
    pub signature: String,
    pub truncation: usize,
    pub residuals: [f64; 3],
    /// Whether every residual vanished identically.
    pub structural_zero: bool,
    pub residual: f64,
}

/// `l11, l12, l̃12` expressed in `so_w(3; j)`.
pub fn l_generators(sow: &Sow) -> Result<[SowElement; 3]> {
    let d = sow.dw;
    let j = sow.sig.big_j();
    // E = i √2 w sqrt(F), F = J⁻¹ sin(Jw)/w
    let sin_over_w = Series::jinv_sin(TAGS, d + 1, sow.jsq(), 1.0);
    let f = Series::from_fn(TAGS, d, |k| sin_over_w.coeff(k + 1).clone());
    let e = f.sqrt()?.shift(1).scale(Complex64::new(0.0, 2f64.sqrt()));
    let je = e.scale_pim(&j);
    let tail = sow.exp_x02(-0.5);
    let l12 = sow.mul(&sow.gen(Letter::X01), &tail).scale_series(&je);
    let lt12 = sow.mul(&sow.gen(Letter::X12), &tail).scale_series(&je);
    Ok([sow.exp_x02(-1.0), l12, lt12])
}

/// The three dual commutators with `v = −iw`, after substituting the `l`
/// generators.
pub fn verify_duality_isomorphism(sig: &ParameterSignature, dw: usize, dx: usize) -> Result<IsomorphismReport> {
    let sow = Sow::new(sig, dw, dx)?;
    let [l11, l12, lt12] = l_generators(&sow)?;
    let jsq = sow.jsq().clone();
    let j1 = sig.slot_value(1);
    let j2 = sig.slot_value(2);
    let (j1sq, j2sq) = (&j1 * &j1, &j2 * &j2);
    // cosh Jv → cos Jw, i J⁻¹ sinh Jv → J⁻¹ sin Jw,
    // 2iJ sinh(Jv/2) → 2 J² J⁻¹ sin(Jw/2), i J⁻¹ tanh(Jv/2) → J⁻¹ tan(Jw/2)
    let cos = Series::jcos(TAGS, dw, &jsq, 1.0);
    let sin = Series::jinv_sin(TAGS, dw, &jsq, 1.0);
    let sin_h = Series::jinv_sin(TAGS, dw, &jsq, 0.5);
    let cos_h = Series::jcos(TAGS, dw, &jsq, 0.5);
    let k3 = sin_h.scale_pim(&jsq.scale_real(2.0));
    let tan_h = &sin_h * &cos_h.inv()?;

    let r1 = sow
        .mul(&l11, &l12)
        .scale_series(&cos)
        .sub(&sow.mul(&l12, &l11))
        .sub(&sow.mul(&l11, &lt12).scale_series(&sin.scale_pim(&j1sq)));
    let r2 = sow
        .mul(&l11, &lt12)
        .scale_series(&cos)
        .sub(&sow.mul(&lt12, &l11))
        .add(&sow.mul(&l11, &l12).scale_series(&sin.scale_pim(&j2sq)));
    let quad = sow.mul(&l12, &l12).scale_pim(&j2sq).add(&sow.mul(&lt12, &lt12).scale_pim(&j1sq));
    let r3 = sow
        .commutator(&l12, &lt12)
        .sub(&sow.one().sub(&sow.mul(&l11, &l11)).scale_series(&k3))
        .add(&quad.scale_series(&tan_h));
    let rs = [r1, r2, r3];
    let residuals = [rs[0].max_abs(), rs[1].max_abs(), rs[2].max_abs()];
    Ok(IsomorphismReport {
        signature: sig.to_string(),
        truncation: dw,
        residuals,
        structural_zero: rs.iter().all(|r| r.is_empty()),
        residual: residuals.iter().copied().fold(0.0, f64::max),
    })
}

/// Whether residuals taken at increasing truncation never grow beyond the
/// noise floor.
pub fn non_increasing(residuals: &[f64]) -> bool {
    residuals.windows(2).all(|w| w[1] <= w[0].max(NOISE_FLOOR))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_helper() {
        assert!(non_increasing(&[1e-3, 1e-5, 1e-5]));
        assert!(non_increasing(&[1e-14, 3e-13]));
        assert!(!non_increasing(&[1e-9, 1e-6]));
    }

    #[test]
    fn contracted_antipode_closed_form() {
        let sow = Sow::new(&"n,n".parse().unwrap(), 6, 6).unwrap();
        let s = sow.antipode_gen(Letter::X01);
        // S(X01) = −X01 + j1² X12 w/2 and j1² = 0
        assert_eq!(s, sow.gen(Letter::X01).scale(Complex64::new(-1.0, 0.0)));
    }
}
