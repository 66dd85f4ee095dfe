//! Orthogonal Cayley-Klein groups `SO(N; j)` over `D_{N-1}` in the Cartesian
//! and symplectic bases, and the one-dimensional geometries of constant
//! curvature.

mod geometry;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use geometry::{
    contraction_limit_demo, distance, orbit_sample, translate, ContractionDemo, ContractionStep,
    GeodesicPoint, OrbitPlane,
};

use crate::error::{Error, Result};
use crate::matrix::{Basis, CKMatrix};
use crate::pimenov::{jcos, jinv_sin, ParameterSignature, PimenovElement};

fn check_plane(sig: &ParameterSignature, mu: usize, nu: usize) -> Result<()> {
    if mu == 0 || mu >= nu || nu > sig.size() {
        return Err(Error::Index(format!("plane ({mu},{nu}) with N = {}", sig.size())));
    }
    Ok(())
}

/// Rotation in the plane `(μ, ν)` acting on `x(j) = (x_1, J_{12}x_2, ...)`:
/// `cos J_{μν}φ` on the diagonal, `-sin J_{μν}φ` at `(μ, ν)`, `sin J_{μν}φ` at
/// `(ν, μ)`. Indices count from 1.
pub fn elementary_rotation(sig: &ParameterSignature, mu: usize, nu: usize, phi: f64) -> Result<CKMatrix> {
    check_plane(sig, mu, nu)?;
    let n = sig.tags();
    let j = sig.jfactor(mu, nu)?;
    let j2 = &j * &j;
    let x = Complex64::new(phi, 0.0);
    let sin = &j * &jinv_sin(&j2, x);
    let cos = jcos(&j2, x);
    let mut m = CKMatrix::identity(sig.size(), n);
    m.set(mu - 1, mu - 1, cos.clone());
    m.set(nu - 1, nu - 1, cos);
    m.set(mu - 1, nu - 1, -&sin);
    m.set(nu - 1, mu - 1, sin);
    Ok(m.with_basis(Basis::Cartesian))
}

/// The same rotation acting on real coordinates `(x_μ, x_ν)`: `-J sin Jφ` at
/// `(μ, ν)` and `J⁻¹ sin Jφ` at `(ν, μ)`.
pub fn real_rotation(sig: &ParameterSignature, mu: usize, nu: usize, phi: f64) -> Result<CKMatrix> {
    check_plane(sig, mu, nu)?;
    let n = sig.tags();
    let j = sig.jfactor(mu, nu)?;
    let j2 = &j * &j;
    let x = Complex64::new(phi, 0.0);
    let jinv = jinv_sin(&j2, x);
    let cos = jcos(&j2, x);
    let mut m = CKMatrix::identity(sig.size(), n);
    m.set(mu - 1, mu - 1, cos.clone());
    m.set(nu - 1, nu - 1, cos);
    m.set(mu - 1, nu - 1, -(&j2 * &jinv));
    m.set(nu - 1, mu - 1, jinv);
    Ok(m)
}

/// Product of `factors` random elementary rotations.
pub fn random_group_element(sig: &ParameterSignature, factors: usize, rng: &mut impl Rng) -> CKMatrix {
    let size = sig.size();
    let mut m = CKMatrix::identity(size, sig.tags()).with_basis(Basis::Cartesian);
    for _ in 0..factors {
        let mu = rng.gen_range(1..size);
        let nu = rng.gen_range(mu + 1..=size);
        let phi = rng.gen_range(-1.5..1.5);
        m = &m * &elementary_rotation(sig, mu, nu, phi).expect("valid plane");
    }
    m
}

pub fn ck_det(m: &CKMatrix) -> Result<PimenovElement> {
    m.det()
}

/// `max(|A Aᵗ - I|, |Aᵗ A - I|)` over all coefficients.
pub fn verify_j_orthogonality(m: &CKMatrix) -> f64 {
    let id = CKMatrix::identity(m.size(), m.tags());
    let t = m.transpose();
    (m * &t).dist(&id).max((&t * m).dist(&id))
}

/// Distance of `m` from the special-matrix shape: entry `(k, p)` must be
/// `J̃_{kp}` times a real number.
pub fn special_shape_residual(sig: &ParameterSignature, m: &CKMatrix) -> f64 {
    let size = m.size();
    let mut worst: f64 = 0.0;
    for k in 1..=size {
        for p in 1..=size {
            let jt = sig.jtilde(k, p).expect("in range");
            let mask = jt.support().next().expect("J factors are nonzero monomials");
            let unit = jt.coeff(mask);
            let x = m.get(k - 1, p - 1);
            for s in 0..(1 << m.tags()) {
                let z = x.coeff(s);
                if s == mask {
                    worst = worst.max((z / unit).im.abs());
                } else {
                    worst = worst.max(z.norm());
                }
            }
        }
    }
    worst
}

#[derive(Clone, Debug, PartialEq)]
pub struct CKVector {
    pub comps: Vec<PimenovElement>,
    pub basis: Basis,
}

impl CKVector {
    /// `x(j) = (x_1, J_{12} x_2, ..., J_{1N} x_N)` from real coordinates.
    pub fn cartesian(sig: &ParameterSignature, x: &[f64]) -> Result<CKVector> {
        if x.len() != sig.size() {
            return Err(Error::Dimension(format!("{} coordinates for N = {}", x.len(), sig.size())));
        }
        let comps = x
            .iter()
            .enumerate()
            .map(|(k, xi)| Ok(sig.jfactor(1, k + 1)?.scale_real(*xi)))
            .collect::<Result<_>>()?;
        Ok(CKVector { comps, basis: Basis::Cartesian })
    }

    pub fn apply(&self, m: &CKMatrix) -> CKVector {
        let comps = (0..m.rows())
            .map(|i| {
                let mut acc = PimenovElement::zero(m.tags());
                for (k, c) in self.comps.iter().enumerate() {
                    acc += &(m.get(i, k) * c);
                }
                acc
            })
            .collect();
        CKVector { comps, basis: self.basis }
    }

    /// Residual of the Cartesian shape: component `k` is `J_{1k}` times a real.
    pub fn shape_residual(&self, sig: &ParameterSignature) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, x) in self.comps.iter().enumerate() {
            let jf = sig.jfactor(1, k + 1).expect("in range");
            let mask = jf.support().next().expect("nonzero");
            let unit = jf.coeff(mask);
            for s in 0..(1 << x.n()) {
                let z = x.coeff(s);
                worst = worst.max(if s == mask { (z / unit).im.abs() } else { z.norm() });
            }
        }
        worst
    }
}

/// `xᵗx` in the Cartesian basis, `yᵗC₀y` in the symplectic one.
pub fn quadratic_form(x: &CKVector) -> PimenovElement {
    let n = x.comps[0].n();
    let len = x.comps.len();
    let mut acc = PimenovElement::zero(n);
    for k in 0..len {
        let partner = match x.basis {
            Basis::Cartesian => k,
            Basis::Symplectic => len - 1 - k,
        };
        acc += &(&x.comps[k] * &x.comps[partner]);
    }
    acc
}

/// The symplectic-basis matrix `D` (entry for entry as in the block forms for
/// even and odd `N`) and its inverse `C₀ Dᵗ`.
pub fn symplectic_transform(size: usize, n: usize) -> Result<(CKMatrix, CKMatrix)> {
    if size < 2 {
        return Err(Error::Dimension("symplectic basis needs N ≥ 2".into()));
    }
    let h = size / 2;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut d = vec![Complex64::new(0.0, 0.0); size * size];
    let set = |d: &mut Vec<Complex64>, i: usize, j: usize, z: Complex64| d[i * size + j] = z;
    let off = size - h; // first row of the lower block
    for k in 0..h {
        // upper block [I, C̃₀]
        set(&mut d, k, k, Complex64::new(s, 0.0));
        set(&mut d, k, off + (h - 1 - k), Complex64::new(s, 0.0));
        // lower block [iC̃₀, -iI]
        set(&mut d, off + k, h - 1 - k, Complex64::new(0.0, s));
        set(&mut d, off + k, off + k, Complex64::new(0.0, -s));
    }
    if size % 2 == 1 {
        set(&mut d, h, h, Complex64::new(1.0, 0.0));
    }
    let dm = CKMatrix::from_scalars(size, size, n, |i, j| d[i * size + j]);
    let inv = &CKMatrix::c0(size, n) * &dm.transpose();
    Ok((dm.with_basis(Basis::Symplectic), inv.with_basis(Basis::Symplectic)))
}

/// `B = D⁻¹ A D`.
pub fn to_symplectic(a: &CKMatrix) -> Result<CKMatrix> {
    let (d, dinv) = symplectic_transform(a.size(), a.tags())?;
    Ok((&(&dinv * a) * &d).with_basis(Basis::Symplectic))
}

/// `max(|B C₀ Bᵗ - C₀|, |Bᵗ C₀ B - C₀|)`.
pub fn symplectic_orthogonality_residual(b: &CKMatrix) -> f64 {
    let c0 = CKMatrix::c0(b.size(), b.tags());
    let bt = b.transpose();
    (&(b * &c0) * &bt).dist(&c0).max((&(&bt * &c0) * b).dist(&c0))
}

/// Residuals of the defining conditions of `D`: `D C₀ Dᵗ = I` (equivalently
/// `Dᵗ D = C₀`, the invariance `xᵗx = yᵗC₀y` for `x = D y`) and the literal
/// `Dᵗ C₀ D = I`.
pub fn symplectic_defining_residuals(size: usize) -> Result<(f64, f64)> {
    let (d, _) = symplectic_transform(size, 0)?;
    let c0 = CKMatrix::c0(size, 0);
    let id = CKMatrix::identity(size, 0);
    let oriented = (&(&d * &c0) * &d.transpose()).dist(&id);
    let literal = (&(&d.transpose() * &c0) * &d).dist(&id);
    Ok((oriented, literal))
}

/// Convenience: seeded RNG used across the classical sweeps.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> ParameterSignature {
        s.parse().unwrap()
    }

    #[test]
    fn galilei_real_rotation() {
        let m = real_rotation(&sig("n"), 1, 2, 0.8).unwrap();
        assert_eq!(m.get(0, 0), &PimenovElement::one(1));
        assert!(m.get(0, 1).is_zero());
        assert_eq!(m.get(1, 0), &PimenovElement::real(1, 0.8));
    }

    #[test]
    fn lorentz_real_rotation() {
        let phi: f64 = 0.4;
        let m = real_rotation(&sig("i"), 1, 2, phi).unwrap();
        assert!((m.get(0, 1).coeff(0) - Complex64::new(phi.sinh(), 0.0)).norm() < 1e-15);
        assert!((m.get(1, 0).coeff(0) - Complex64::new(phi.sinh(), 0.0)).norm() < 1e-15);
        assert!((m.get(0, 0).coeff(0) - Complex64::new(phi.cosh(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn euclid_rotation_is_standard() {
        let phi: f64 = 0.3;
        let m = elementary_rotation(&sig("1"), 1, 2, phi).unwrap();
        assert!((m.get(0, 1).coeff(0).re + phi.sin()).abs() < 1e-15);
        assert!((m.get(1, 0).coeff(0).re - phi.sin()).abs() < 1e-15);
    }

    #[test]
    fn rotations_are_orthogonal_and_special() {
        for s in ParameterSignature::all(2) {
            for (mu, nu) in [(1, 2), (1, 3), (2, 3)] {
                let m = elementary_rotation(&s, mu, nu, 0.9).unwrap();
                assert!(verify_j_orthogonality(&m) < 1e-12, "{s} ({mu},{nu})");
                assert!(special_shape_residual(&s, &m) < 1e-15);
                assert!(ck_det(&m).unwrap().dist(&PimenovElement::one(2)) < 1e-12);
            }
        }
    }

    #[test]
    fn galilei_form_is_x0_squared() {
        let s = sig("n");
        let x = CKVector::cartesian(&s, &[1.5, -2.0]).unwrap();
        assert_eq!(quadratic_form(&x), PimenovElement::real(1, 2.25));
        let m = CKVector::cartesian(&sig("i"), &[1.5, -2.0]).unwrap();
        assert!(quadratic_form(&m).dist(&PimenovElement::real(1, 2.25 - 4.0)) < 1e-15);
    }

    #[test]
    fn d_matches_block_form() {
        let (d, dinv) = symplectic_transform(2, 0).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(d.get(0, 0).coeff(0), Complex64::new(s, 0.0));
        assert_eq!(d.get(0, 1).coeff(0), Complex64::new(s, 0.0));
        assert_eq!(d.get(1, 0).coeff(0), Complex64::new(0.0, s));
        assert_eq!(d.get(1, 1).coeff(0), Complex64::new(0.0, -s));
        assert!((&d * &dinv).dist(&CKMatrix::identity(2, 0)) < 1e-15);
        let (d3, _) = symplectic_transform(3, 0).unwrap();
        assert_eq!(d3.get(1, 1).coeff(0), Complex64::new(1.0, 0.0));
        for size in 2..=6 {
            let (oriented, _) = symplectic_defining_residuals(size).unwrap();
            assert!(oriented < 1e-15);
        }
    }

    #[test]
    fn identity_stays_identity_in_symplectic_basis() {
        let id = CKMatrix::identity(3, 2);
        assert!(to_symplectic(&id).unwrap().dist(&id) < 1e-15);
    }

    #[test]
    fn plane_errors() {
        assert!(elementary_rotation(&sig("1,1"), 2, 2, 0.1).is_err());
        assert!(elementary_rotation(&sig("1,1"), 1, 4, 0.1).is_err());
    }
}
