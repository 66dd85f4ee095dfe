//! The `N = 3` quantum orthogonal Cayley-Klein group: R-matrix, C-matrix,
//! relation ideal and Hopf structure maps, all over `D_2`.

mod contraction;
mod hopf;
mod relations;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::free::FreeElement;
use crate::matrix::CKMatrix;
use crate::pimenov::{jcosh, jinv_sinh, pim_apply, Kernel, ParameterSignature, PimenovElement};

pub use contraction::{verify_contraction_transform, ContractionReport};
pub use hopf::{antipode_check, coproduct_compatibility, counit_check, membership_residual, HopfReport};
pub use relations::{orthogonality_relations, relations_tpoly, rtt_relations, rtt_tpoly, TPoly};

pub const GENERATORS: [&str; 9] = ["t11", "tt11", "t12", "tt12", "t13", "tt13", "t21", "tt21", "t22"];

pub fn alphabet() -> Vec<String> {
    GENERATORS.iter().map(|s| s.to_string()).collect()
}

/// Tags in scope for `N = 3`.
pub const TAGS: usize = 2;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The generating matrix `T(j)` as linear forms in the nine generators.
pub type TMatrix = [[FreeElement; 3]; 3];

pub fn tmatrix(sig: &ParameterSignature) -> Result<TMatrix> {
    check_sig(sig)?;
    let n = TAGS;
    let j1 = sig.slot_value(1);
    let j2 = sig.slot_value(2);
    let jj = &j1 * &j2;
    let one = PimenovElement::one(n);
    let g = |name: &str| {
        let k = GENERATORS.iter().position(|x| *x == name).expect("known generator");
        FreeElement::generator(9, n, k)
    };
    let lin = |parts: &[(&PimenovElement, Complex64, &str)]| {
        let mut e = FreeElement::zero(9, n);
        for (coef, z, name) in parts {
            e = &e + &g(name).scale_pim(&coef.scale(*z));
        }
        e
    };
    let (p, i, mi) = (c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0));
    Ok([
        [
            lin(&[(&one, p, "t11"), (&jj, i, "tt11")]),
            lin(&[(&j1, p, "t12"), (&j2, mi, "tt12")]),
            lin(&[(&one, p, "t13"), (&jj, mi, "tt13")]),
        ],
        [
            lin(&[(&j1, p, "t21"), (&j2, i, "tt21")]),
            lin(&[(&one, p, "t22")]),
            lin(&[(&j1, p, "t21"), (&j2, mi, "tt21")]),
        ],
        [
            lin(&[(&one, p, "t13"), (&jj, i, "tt13")]),
            lin(&[(&j1, p, "t12"), (&j2, i, "tt12")]),
            lin(&[(&one, p, "t11"), (&jj, mi, "tt11")]),
        ],
    ])
}

fn check_sig(sig: &ParameterSignature) -> Result<()> {
    if sig.size() != 3 {
        return Err(Error::Dimension(format!("only N = 3 is constructed, got N = {}", sig.size())));
    }
    sig.require_quantum()
}

/// Index of the tensor slot `(i, k)` in the 9-dimensional space.
pub fn idx(i: usize, k: usize) -> usize {
    3 * i + k
}

/// The R-matrix table with entries given as functions of `z ∈ D_2`.
fn rmatrix_from(e: &PimenovElement, em: &PimenovElement, emh: &PimenovElement, sh: &PimenovElement) -> CKMatrix {
    let n = e.n();
    let mut r = CKMatrix::identity(9, n);
    r.set(0, 0, e.clone());
    r.set(8, 8, e.clone());
    r.set(2, 2, em.clone());
    r.set(6, 6, em.clone());
    let two_sh = sh.scale_real(2.0);
    r.set(3, 1, two_sh.clone());
    r.set(7, 5, two_sh);
    let x = (emh * sh).scale_real(-2.0);
    r.set(4, 2, x.clone());
    r.set(6, 4, x);
    r.set(6, 2, (&(&PimenovElement::one(n) - em) * sh).scale_real(2.0));
    r
}

/// `R_q(z)` with every entry obtained by lifting `exp` and `sinh` to `z ∈ D_n`.
pub fn rmatrix_at(z: &PimenovElement) -> Result<CKMatrix> {
    let e = pim_apply(&Kernel::Exp, z)?;
    let em = pim_apply(&Kernel::Exp, &-z)?;
    let emh = pim_apply(&Kernel::Exp, &z.scale_real(-0.5))?;
    let sh = pim_apply(&Kernel::Sinh, z)?;
    Ok(rmatrix_from(&e, &em, &emh, &sh))
}

/// `e^{a J v}` from even series in `J²`.
pub fn jexp(sig: &ParameterSignature, a: f64, v: Complex64) -> PimenovElement {
    let j = sig.big_j();
    let j2 = &j * &j;
    let x = v * a;
    &jcosh(&j2, x) + &(&j * &jinv_sinh(&j2, x))
}

/// `sinh(a J v)`.
pub fn jsinh(sig: &ParameterSignature, a: f64, v: Complex64) -> PimenovElement {
    let j = sig.big_j();
    let j2 = &j * &j;
    &j * &jinv_sinh(&j2, v * a)
}

/// `R_v(j) = R_q(z → Jv)`.
pub fn rmatrix3(sig: &ParameterSignature, v: Complex64) -> Result<CKMatrix> {
    check_sig(sig)?;
    Ok(rmatrix_from(&jexp(sig, 1.0, v), &jexp(sig, -1.0, v), &jexp(sig, -0.5, v), &jsinh(sig, 1.0, v)))
}

/// `R̃` with `R = I + J v R̃` whenever `J² = 0`.
pub fn rtilde() -> CKMatrix {
    let mut r = CKMatrix::zeros(9, 9, TAGS);
    let set = |r: &mut CKMatrix, i: usize, j: usize, x: f64| r.set(i, j, PimenovElement::real(TAGS, x));
    set(&mut r, 0, 0, 1.0);
    set(&mut r, 8, 8, 1.0);
    set(&mut r, 2, 2, -1.0);
    set(&mut r, 6, 6, -1.0);
    set(&mut r, 3, 1, 2.0);
    set(&mut r, 7, 5, 2.0);
    set(&mut r, 4, 2, -2.0);
    set(&mut r, 6, 4, -2.0);
    r
}

/// `(ρ_1, ..., ρ_N)`.
pub fn rho_vector(size: usize) -> Vec<f64> {
    let n = size / 2;
    if size % 2 == 1 {
        (0..size)
            .map(|k| {
                let x = n as f64 - k as f64;
                if x == 0.0 {
                    0.0
                } else {
                    x - 0.5 * x.signum()
                }
            })
            .collect()
    } else {
        let mut out: Vec<f64> = (1..=n).rev().map(|k| (k - 1) as f64).collect();
        out.extend((0..n).map(|k| -(k as f64)));
        out
    }
}

/// `C(j) = C₀ exp(J v ρ)`.
pub fn cmatrix(sig: &ParameterSignature, v: Complex64) -> Result<CKMatrix> {
    sig.require_quantum()?;
    let size = sig.size();
    let rho = rho_vector(size);
    let n = sig.tags();
    let mut d = CKMatrix::zeros(size, size, n);
    for (k, r) in rho.iter().enumerate() {
        d.set(k, k, jexp(sig, *r, v));
    }
    Ok(&CKMatrix::c0(size, n) * &d)
}

/// Inverse of a C-matrix, `exp(-Jvρ) C₀`.
pub fn cmatrix_inverse(cm: &CKMatrix) -> Result<CKMatrix> {
    let size = cm.size();
    let n = cm.tags();
    let c0 = CKMatrix::c0(size, n);
    // C = C₀ Δ with Δ diagonal, Δ = C₀ C
    let delta = &c0 * cm;
    let mut inv = CKMatrix::zeros(size, size, n);
    for k in 0..size {
        inv.set(k, k, delta.get(k, k).inv()?);
    }
    Ok(&inv * &c0)
}

/// `max |R₁₂R₁₃R₂₃ - R₂₃R₁₃R₁₂|` on the 27-dimensional space.
pub fn qybe_check(r: &CKMatrix) -> f64 {
    let n = r.tags();
    let id = CKMatrix::identity(3, n);
    let r12 = r.kron(&id);
    let r23 = id.kron(r);
    let mut p = vec![0; 27];
    for a in 0..3 {
        for b in 0..3 {
            for cc in 0..3 {
                p[a * 9 + b * 3 + cc] = a * 9 + cc * 3 + b;
            }
        }
    }
    let p23 = CKMatrix::permutation(&p, n);
    let r13 = &(&p23 * &r12) * &p23;
    let lhs = &(&r12 * &r13) * &r23;
    let rhs = &(&r23 * &r13) * &r12;
    lhs.dist(&rhs)
}

/// A copy of `r` with `0.1` added to the `(4, 2)` entry, used as a negative
/// control. The offset is a plain number, so it is not killed by `J² = 0`.
pub fn corrupt(r: &CKMatrix) -> CKMatrix {
    let mut out = r.clone();
    let bump = PimenovElement::real(r.tags(), 0.1);
    out.set(3, 1, r.get(3, 1) + &bump);
    out
}

/// Everything needed for the group-side checks at one signature and sample.
#[derive(Clone, Debug)]
pub struct FrtData {
    pub sig: ParameterSignature,
    pub v: Complex64,
    pub r: CKMatrix,
    pub c: CKMatrix,
    pub t: TMatrix,
}

impl FrtData {
    pub fn new(sig: &ParameterSignature, v: Complex64) -> Result<Self> {
        Ok(FrtData {
            sig: sig.clone(),
            v,
            r: rmatrix3(sig, v)?,
            c: cmatrix(sig, v)?,
            t: tmatrix(sig)?,
        })
    }

    pub fn with_r(&self, r: CKMatrix) -> Self {
        FrtData { r, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> ParameterSignature {
        s.parse().unwrap()
    }

    #[test]
    fn identity_at_zero() {
        for s in ParameterSignature::quantum3() {
            let r = rmatrix3(&s, c(0.0, 0.0)).unwrap();
            assert_eq!(r, CKMatrix::identity(9, 2));
        }
    }

    #[test]
    fn imaginary_slot_rejected() {
        assert_eq!(rmatrix3(&sig("i,1"), c(0.3, 0.0)), Err(Error::ImaginarySlot));
    }

    #[test]
    fn simple_entry() {
        let v = 0.37;
        let r = rmatrix3(&sig("1,1"), c(v, 0.0)).unwrap();
        assert!((r.get(3, 1).scalar_part() - c(2.0 * v.sinh(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rho_lists() {
        assert_eq!(rho_vector(3), vec![0.5, 0.0, -0.5]);
        assert_eq!(rho_vector(5), vec![1.5, 0.5, 0.0, -0.5, -1.5]);
        assert_eq!(rho_vector(4), vec![1.0, 0.0, 0.0, -1.0]);
    }

    #[test]
    fn c_at_zero_is_c0() {
        let cm = cmatrix(&sig("n,1"), c(0.0, 0.0)).unwrap();
        assert_eq!(cm, CKMatrix::c0(3, 2));
    }

    #[test]
    fn c_inverse() {
        let cm = cmatrix(&sig("1,n"), c(0.4, 0.2)).unwrap();
        let inv = cmatrix_inverse(&cm).unwrap();
        assert!((&cm * &inv).dist(&CKMatrix::identity(3, 2)) < 1e-14);
    }

    #[test]
    fn qybe_small() {
        let r = rmatrix3(&sig("1,1"), c(0.3, 0.0)).unwrap();
        assert!(qybe_check(&r) < 1e-12);
        assert!(qybe_check(&corrupt(&r)) > 1e-3);
    }

    #[test]
    fn corrupted_contracted_r_fails() {
        for s in ["n,1", "1,n", "n,n"] {
            let r = rmatrix3(&sig(s), c(0.3, 0.0)).unwrap();
            assert!(qybe_check(&r) < 1e-12);
            assert!(qybe_check(&corrupt(&r)) > 1e-3, "{s}");
        }
    }
}
