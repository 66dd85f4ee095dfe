//! One-dimensional geometries of constant curvature `ω ∈ {1, 0, -1}` in the
//! Beltrami coordinate `ξ = x_1 / x_0`, and the rotation orbits in the three
//! planes.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pimenov::{ParameterSignature, PimenovElement, Slot};

use super::real_rotation;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GeodesicPoint {
    pub xi: f64,
    pub omega: i8,
}

fn check_omega(omega: i8) -> Result<()> {
    if matches!(omega, -1..=1) {
        Ok(())
    } else {
        Err(Error::Geometry(format!("curvature {omega} is not one of 1, 0, -1")))
    }
}

/// `ξ' = (ξ + a) / (1 - ω a ξ)`.
pub fn translate(omega: i8, xi: f64, a: f64) -> Result<f64> {
    check_omega(omega)?;
    if omega == -1 && a.abs() >= 1.0 {
        return Err(Error::Geometry(format!("hyperbolic translation parameter {a} outside (-1, 1)")));
    }
    let wax = omega as f64 * a * xi;
    let den = 1.0 - wax;
    if den.abs() <= 1e-12 * (1.0 + wax.abs()) {
        return Err(Error::PoleEncountered);
    }
    Ok((xi + a) / den)
}

/// The translation-invariant distance: `atan|t|`, `|t|` or `atanh|t|` with
/// `t = (ξ_B - ξ_A) / (1 + ω ξ_B ξ_A)`. The elliptic case lives on the
/// projective line, so distances lie in `[0, π/2]`.
pub fn distance(omega: i8, xa: f64, xb: f64) -> Result<f64> {
    check_omega(omega)?;
    let num = xb - xa;
    let den = 1.0 + omega as f64 * xa * xb;
    match omega {
        0 => Ok(num.abs()),
        1 => {
            if den == 0.0 {
                Ok(std::f64::consts::FRAC_PI_2)
            } else {
                Ok((num / den).abs().atan())
            }
        }
        _ => {
            if xa.abs() >= 1.0 || xb.abs() >= 1.0 {
                return Err(Error::Geometry("ideal or outer point in the hyperbolic line".into()));
            }
            Ok((num / den).abs().atanh())
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContractionStep {
    pub eps: f64,
    pub err0: f64,
    pub err1: f64,
    /// `err(ε) / err(2ε)`, absent for the first step.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContractionDemo {
    pub phi: f64,
    pub x0: f64,
    pub x1: f64,
    /// The image computed with `j = ι`.
    pub exact: (f64, f64),
    pub steps: Vec<ContractionStep>,
}

/// Compares the `j = ε` rotation with the exact Galilei image obtained from
/// `j = ι` arithmetic.
pub fn contraction_limit_demo(phi: f64, x0: f64, x1: f64, eps: &[f64]) -> Result<ContractionDemo> {
    if eps.iter().any(|e| *e <= 0.0) || eps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Geometry("ε values must be positive and decreasing".into()));
    }
    // x(ι) = (x0, ι x1); R(ι) acts in D_1
    let sig: ParameterSignature = ParameterSignature::new(vec![Slot::Nil])?;
    let r = super::elementary_rotation(&sig, 1, 2, phi)?;
    let v = super::CKVector::cartesian(&sig, &[x0, x1])?;
    let out = v.apply(&r);
    let exact = (out.comps[0].scalar_part().re, out.comps[1].coeff(1).re);
    debug_assert_eq!(out.comps[0].coeff(1), Complex64::new(0.0, 0.0));

    let mut steps: Vec<ContractionStep> = Vec::new();
    for &e in eps {
        let (s, c) = (e * phi).sin_cos();
        let y0 = x0 * c - e * x1 * s;
        let y1 = x1 * c + x0 * s / e;
        let err0 = (y0 - exact.0).abs();
        let err1 = (y1 - exact.1).abs();
        let ratio = steps.last().map(|p| err0.max(err1) / p.err0.max(p.err1));
        steps.push(ContractionStep { eps: e, err0, err1, ratio });
    }
    Ok(ContractionDemo { phi, x0, x1, exact, steps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitPlane {
    Euclid,
    Galilei,
    Minkowski,
}

impl OrbitPlane {
    pub fn parse(s: &str) -> Result<OrbitPlane> {
        match s {
            "euclid" => Ok(OrbitPlane::Euclid),
            "galilei" => Ok(OrbitPlane::Galilei),
            "minkowski" => Ok(OrbitPlane::Minkowski),
            _ => Err(Error::Geometry(format!("unknown plane `{s}` (euclid, galilei, minkowski)"))),
        }
    }

    fn slot(self) -> Slot {
        match self {
            OrbitPlane::Euclid => Slot::One,
            OrbitPlane::Galilei => Slot::Nil,
            OrbitPlane::Minkowski => Slot::Im,
        }
    }

    /// `x_0² + ω x_1²`.
    pub fn invariant(self, x0: f64, x1: f64) -> f64 {
        match self {
            OrbitPlane::Euclid => x0 * x0 + x1 * x1,
            OrbitPlane::Galilei => x0 * x0,
            OrbitPlane::Minkowski => x0 * x0 - x1 * x1,
        }
    }
}

/// Points `A(φ) x` for `φ` on a uniform grid of `steps` intervals over
/// `[-π, π]`, as `(φ, x_0', x_1')`.
pub fn orbit_sample(plane: OrbitPlane, x: (f64, f64), steps: usize) -> Result<Vec<(f64, f64, f64)>> {
    if steps == 0 {
        return Err(Error::Geometry("empty φ grid".into()));
    }
    let sig = ParameterSignature::new(vec![plane.slot()])?;
    let pi = std::f64::consts::PI;
    (0..=steps)
        .map(|k| {
            let phi = -pi + 2.0 * pi * k as f64 / steps as f64;
            let a = real_rotation(&sig, 1, 2, phi)?;
            let re = |e: &PimenovElement| e.scalar_part().re;
            let y0 = re(a.get(0, 0)) * x.0 + re(a.get(0, 1)) * x.1;
            let y1 = re(a.get(1, 0)) * x.0 + re(a.get(1, 1)) * x.1;
            Ok((phi, y0, y1))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_translation_adds() {
        assert_eq!(translate(0, 1.5, 2.0).unwrap(), 3.5);
        assert_eq!(distance(0, -1.0, 2.5).unwrap(), 3.5);
    }

    #[test]
    fn elliptic_translation_adds_angles() {
        let (u, v) = (0.3f64, 0.5f64);
        let t = translate(1, u.tan(), v.tan()).unwrap();
        assert!((t - (u + v).tan()).abs() < 1e-14);
    }

    #[test]
    fn hyperbolic_translation_adds_rapidities() {
        let (u, v) = (0.3f64, -0.7f64);
        let t = translate(-1, u.tanh(), v.tanh()).unwrap();
        assert!((t - (u + v).tanh()).abs() < 1e-14);
        assert!(translate(-1, 0.1, 1.0).is_err());
    }

    #[test]
    fn pole() {
        assert_eq!(translate(1, 2.0, 0.5), Err(Error::PoleEncountered));
    }

    #[test]
    fn galilei_exact_image() {
        let d = contraction_limit_demo(0.7, 2.0, -1.0, &[1e-1, 5e-2]).unwrap();
        assert_eq!(d.exact, (2.0, -1.0 + 0.7 * 2.0));
    }

    #[test]
    fn galilei_orbit_keeps_x0() {
        for (_, y0, _) in orbit_sample(OrbitPlane::Galilei, (1.2, 0.4), 16).unwrap() {
            assert_eq!(y0, 1.2);
        }
    }
}
