//! The verification suites behind `verify`. Checks run concurrently; the
//! returned reports are sorted by check id and inputs.

use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classical::{contraction_limit_demo, distance, orbit_sample, translate, OrbitPlane};
use crate::classical::{
    ck_det, quadratic_form, random_group_element, rng, special_shape_residual, symplectic_defining_residuals,
    symplectic_orthogonality_residual, to_symplectic, verify_j_orthogonality, CKVector,
};
use crate::config::RunConfig;
use crate::dual::{
    build_functionals, diamond_check, non_increasing, verify_dual_commutators, verify_duality_isomorphism,
    verify_l_relations, verify_pairing_table, verify_sow_hopf, Sign, Sow,
};
use crate::error::{Error, Result};
use crate::frt::{
    antipode_check, coproduct_compatibility, corrupt, counit_check, membership_residual, qybe_check, rmatrix_at,
    rtilde, verify_contraction_transform, FrtData,
};
use crate::matrix::CKMatrix;
use crate::pimenov::{jcos, jcosh, jinv_sin, jinv_sinh, pim_apply, verify_grassmann_embedding, Kernel};
use crate::pimenov::{ParameterSignature, PimenovElement};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Pimenov,
    Classical,
    Frt,
    Dual,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "pimenov" => Ok(Suite::Pimenov),
            "classical" => Ok(Suite::Classical),
            "frt" => Ok(Suite::Frt),
            "dual" => Ok(Suite::Dual),
            "all" => Ok(Suite::All),
            _ => Err(Error::Config { line: 0, field: "suite".into(), msg: format!("unknown suite `{s}`") }),
        }
    }
}

/// `a+bi` in a form accepted back by the complex parser.
pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

type Task<'a> = Box<dyn Fn() -> Result<Vec<Report>> + Send + Sync + 'a>;

fn timed(cfg: &RunConfig, f: impl Fn() -> Result<Vec<Report>>) -> Result<Vec<Report>> {
    let t = Instant::now();
    let mut out = f()?;
    if cfg.timing {
        let ms = t.elapsed().as_secs_f64() * 1e3;
        for r in &mut out {
            r.wall_ms = Some(ms);
        }
    }
    Ok(out)
}

pub fn run_suite(cfg: &RunConfig, suite: Suite) -> Result<Vec<Report>> {
    cfg.validate()?;
    let mut tasks: Vec<Task> = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Pimenov {
        tasks.push(Box::new(|| pimenov_checks(cfg)));
    }
    if all || suite == Suite::Classical {
        tasks.push(Box::new(|| classical_checks(cfg)));
        tasks.push(Box::new(|| geometry_checks(cfg)));
    }
    if all || suite == Suite::Frt || suite == Suite::Dual {
        frt_sig(&cfg.signature)?;
    }
    if all || suite == Suite::Frt {
        for v in &cfg.v {
            tasks.push(Box::new(move || frt_checks(cfg, *v)));
        }
    }
    if all || suite == Suite::Dual {
        for v in &cfg.v {
            tasks.push(Box::new(move || dual_rep_checks(cfg, *v)));
        }
        tasks.push(Box::new(|| sow_checks(cfg)));
        tasks.push(Box::new(|| isomorphism_checks(cfg)));
    }
    let results: Vec<Vec<Report>> = tasks.par_iter().map(|t| timed(cfg, t)).collect::<Result<_>>()?;
    let mut out: Vec<Report> = results.into_iter().flatten().collect();
    out.sort_by_key(|r| r.sort_key());
    Ok(out)
}

fn frt_sig(sig: &ParameterSignature) -> Result<()> {
    sig.require_quantum()?;
    if sig.size() != 3 {
        return Err(Error::Dimension(format!(
            "quantum checks are built for N = 3 (two slots), got {} slots",
            sig.slots().len()
        )));
    }
    Ok(())
}

fn random_element(n: usize, rng: &mut ChaCha8Rng, scale: f64) -> PimenovElement {
    let coeffs: Vec<Complex64> = (0..1 << n)
        .map(|_| Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)))
        .collect();
    PimenovElement::from_coeffs(n, &coeffs).expect("sized")
}

fn pimenov_checks(cfg: &RunConfig) -> Result<Vec<Report>> {
    let n = cfg.signature.tags().clamp(2, 4);
    let mut rng = rng(cfg.seed);
    let trials = 50;
    let one = PimenovElement::one(n);
    let (mut add, mut trig, mut inv, mut log) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..trials {
        let a = random_element(n, &mut rng, 1.0);
        let b = random_element(n, &mut rng, 1.0);
        let lhs = pim_apply(&Kernel::Exp, &(&a + &b))?;
        let rhs = &pim_apply(&Kernel::Exp, &a)? * &pim_apply(&Kernel::Exp, &b)?;
        add = add.max(lhs.dist(&rhs) / (1.0 + rhs.max_abs()));
        let s = pim_apply(&Kernel::Sin, &a)?;
        let c = pim_apply(&Kernel::Cos, &a)?;
        trig = trig.max((&(&s * &s) + &(&c * &c)).dist(&one));
        let mut u = a.clone();
        u.set_coeff(0, Complex64::new(1.5, 0.0) + a.coeff(0));
        inv = inv.max((&u * &u.inv()?).dist(&one));
        log = log.max(pim_apply(&Kernel::Exp, &pim_apply(&Kernel::Log, &u)?)?.dist(&u) / (1.0 + u.max_abs()));
    }
    let g = verify_grassmann_embedding(n, 100, cfg.seed);

    let j = cfg.signature.big_j();
    let jsq = &j * &j;
    let unit = PimenovElement::one(jsq.n());
    let mut even: f64 = 0.0;
    for k in 0..10 {
        let x = Complex64::new(-1.0 + 0.2 * k as f64, 0.1 * k as f64);
        let (c, s) = (jcos(&jsq, x), jinv_sin(&jsq, x));
        even = even.max((&(&c * &c) + &(&jsq * &(&s * &s))).dist(&unit));
        let (ch, sh) = (jcosh(&jsq, x), jinv_sinh(&jsq, x));
        even = even.max((&(&ch * &ch) - &(&jsq * &(&sh * &sh))).dist(&unit));
    }
    let tags = serde_json::Value::from(n);
    let seed = serde_json::Value::from(cfg.seed);
    let with = |r: Report| r.input("tags", tags.clone()).input("seed", seed.clone());
    Ok(vec![
        with(Report::new("pimenov.exp-additive", add, 1e-12)),
        with(Report::new("pimenov.trig-identity", trig, 1e-12)),
        with(Report::new("pimenov.inverse", inv, 1e-12)),
        with(Report::new("pimenov.log-exp", log, 1e-12)),
        with(Report::new("pimenov.grassmann", g.mismatches as f64, 0.0).detail(format!("{} products", g.trials))),
        Report::new("pimenov.even-kernels", even, 1e-12).input("signature", cfg.signature.to_string()),
    ])
}

fn classical_checks(cfg: &RunConfig) -> Result<Vec<Report>> {
    let sig = &cfg.signature;
    let size = sig.size();
    let mut rng = rng(cfg.seed);
    let n = sig.tags();
    let one = PimenovElement::one(n);
    let (mut orth, mut det, mut form, mut shape, mut sympl) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..20 {
        let a = random_group_element(sig, 5, &mut rng);
        orth = orth.max(verify_j_orthogonality(&a));
        det = det.max(ck_det(&a)?.dist(&one));
        shape = shape.max(special_shape_residual(sig, &a));
        let xs: Vec<f64> = (0..size).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let x = CKVector::cartesian(sig, &xs)?;
        form = form.max(quadratic_form(&x.apply(&a)).dist(&quadratic_form(&x)));
        sympl = sympl.max(symplectic_orthogonality_residual(&to_symplectic(&a)?));
    }
    let (oriented, literal) = symplectic_defining_residuals(size)?;
    let s = serde_json::Value::from(sig.to_string());
    let with = |r: Report| r.input("signature", s.clone()).input("seed", cfg.seed);
    Ok(vec![
        with(Report::new("classical.orthogonality", orth, 1e-10)),
        with(Report::new("classical.determinant", det, 1e-10)),
        with(Report::new("classical.quadratic-form", form, 1e-10)),
        with(Report::new("classical.special-shape", shape, 1e-10)),
        with(Report::new("classical.symplectic-orthogonality", sympl, 1e-10)),
        Report::new("classical.symplectic-basis", oriented, 1e-14)
            .input("size", size)
            .detail(format!("D C0 D^t = I; the transposed product D^t C0 D differs from I by {literal:.3e}")),
    ])
}

fn geometry_checks(cfg: &RunConfig) -> Result<Vec<Report>> {
    let mut rng = rng(cfg.seed ^ 0x9e37);
    let (mut comp, mut dist) = (0.0f64, 0.0f64);
    let mut cases = 0;
    for omega in [1i8, 0, -1] {
        let bound = if omega == -1 { 0.9 } else { 2.0 };
        let mut done = 0;
        while done < 1000 {
            let xi = rng.gen_range(-bound..bound);
            let a = rng.gen_range(-bound..bound);
            let b = rng.gen_range(-bound..bound);
            let xb = rng.gen_range(-bound..bound);
            let ab = (a + b) / (1.0 - omega as f64 * a * b);
            let composed = translate(omega, xi, a).and_then(|t| translate(omega, t, b));
            let direct = translate(omega, xi, ab);
            let (ya, yb) = (translate(omega, xi, a), translate(omega, xb, a));
            let (Ok(t1), Ok(t2), Ok(ya), Ok(yb)) = (composed, direct, ya, yb) else { continue };
            if [t1, t2, ya, yb, ab].iter().any(|x| x.abs() >= 1e6) {
                continue;
            }
            if omega == -1 && (ya.abs() >= 1.0 || yb.abs() >= 1.0) {
                continue;
            }
            comp = comp.max((t1 - t2).abs() / (1.0 + t2.abs()));
            let before = distance(omega, xi, xb)?;
            let after = distance(omega, ya, yb)?;
            dist = dist.max((before - after).abs() / (1.0 + before));
            done += 1;
        }
        cases += done;
    }
    let eps: Vec<f64> = (0..7).map(|k| 0.2 / 2f64.powi(k)).collect();
    let demo = contraction_limit_demo(0.7, 1.3, -0.4, &eps)?;
    let ratio = demo.steps.last().and_then(|s| s.ratio).unwrap_or(f64::NAN);
    let mut orbit: f64 = 0.0;
    for plane in [OrbitPlane::Euclid, OrbitPlane::Galilei, OrbitPlane::Minkowski] {
        let x = (1.2, 0.5);
        let inv = plane.invariant(x.0, x.1);
        for (_, y0, y1) in orbit_sample(plane, x, 64)? {
            orbit = orbit.max((plane.invariant(y0, y1) - inv).abs() / (1.0 + inv.abs()));
        }
    }
    Ok(vec![
        Report::new("classical.translation-composition", comp, 1e-12).input("cases", cases).input("seed", cfg.seed),
        Report::new("classical.distance-invariance", dist, 1e-12).input("cases", cases).input("seed", cfg.seed),
        Report::new("classical.contraction-order", (ratio - 0.25).abs(), 0.05)
            .input("halvings", eps.len() - 1)
            .detail(format!("final error ratio {ratio:.4}")),
        Report::new("classical.orbit-invariant", orbit, 1e-10).input("steps", 64),
    ])
}

/// `R − (I + J v R̃)` for contracted signatures, and `rmatrix3` against the
/// entries obtained by lifting `exp` and `sinh` otherwise.
pub fn rmatrix_structure_residual(sig: &ParameterSignature, v: Complex64) -> Result<f64> {
    let r = crate::frt::rmatrix3(sig, v)?;
    let jv = sig.big_j().scale(v);
    if sig.is_contracted() {
        let expected = CKMatrix::identity(9, 2).add(&rtilde().scale(&jv));
        Ok(r.dist(&expected))
    } else {
        Ok(r.dist(&rmatrix_at(&jv)?))
    }
}

fn frt_checks(cfg: &RunConfig, v: Complex64) -> Result<Vec<Report>> {
    let sig = &cfg.signature;
    let tol = cfg.tolerances.residual;
    let data = FrtData::new(sig, v)?;
    let sys = data.system()?;
    let conf = sys.confluence_check(3)?;
    let ap = antipode_check(&data, &sys)?;
    let cp = coproduct_compatibility(&data, &sys)?;
    let (exact, expanded) = counit_check(&data);
    let member = membership_residual(&data, &sys)?;
    let bad = corrupt(&data.r);
    let mut out = vec![
        Report::new("frt.rmatrix-structure", rmatrix_structure_residual(sig, v)?, 1e-12),
        Report::new("frt.qybe", qybe_check(&data.r), 1e-10),
        Report::control("frt.qybe-control", qybe_check(&bad), 1e-6).detail("corrupted R must violate QYBE"),
        Report::new("frt.confluence", conf.max_discrepancy, tol).detail(format!(
            "{} words, heads by degree {:?}",
            conf.words_checked, conf.heads_by_degree
        )),
        Report::new("frt.antipode", ap.residual, tol),
        Report::new("frt.coproduct", cp.residual, tol),
        Report::new("frt.counit", expanded, 1e-15).require(exact),
        Report::new("frt.membership", member, tol),
    ];
    if sig.is_contracted() {
        let c = verify_contraction_transform(sig, v)?;
        out.push(Report::new("frt.contraction", c.residual(), tol).detail(format!("termwise {:.3e}", c.termwise)));
    }
    let s = sig.to_string();
    let vs = fmt_complex(v);
    Ok(out.into_iter().map(|r| r.input("signature", s.clone()).input("v", vs.clone())).collect())
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Vec<(Sign, usize, usize)> {
    (0..len)
        .map(|_| {
            let s = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            (s, rng.gen_range(0..3), rng.gen_range(0..3))
        })
        .collect()
}

fn dual_rep_checks(cfg: &RunConfig, v: Complex64) -> Result<Vec<Report>> {
    let sig = &cfg.signature;
    let tol = cfg.tolerances.residual;
    let pairing = verify_pairing_table(sig, v)?;
    let mut notes: Vec<String> = pairing.mismatches.clone();
    notes.extend(pairing.unlisted_nonzero.iter().cloned());
    for e in pairing.entries.iter().filter(|e| e.flagged && !e.matches) {
        notes.push(format!("flagged {}({}) matches: {}", e.functional, e.generator, e.variants.join(", ")));
    }
    let bad = pairing.mismatches.len() + pairing.unlisted_nonzero.len();
    let pair_report = Report::new("dual.pairing-table", bad as f64, 0.0).require(pairing.pass).detail(format!(
        "{}/{} listed entries reproduced with {:?}; {}",
        pairing.matched,
        pairing.listed,
        pairing.convention,
        notes.join("; ")
    ));

    let f = build_functionals(sig, v)?;
    let mut rng = rng(cfg.seed ^ 0x51);
    let mut hom: f64 = 0.0;
    for _ in 0..50 {
        let (lu, lv) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let u = random_word(&mut rng, lu);
        let w = random_word(&mut rng, lv);
        let product = &f.rho_word(&u) * &f.rho_word(&w);
        let uw: Vec<_> = u.iter().chain(&w).copied().collect();
        for a in 0..3 {
            for b in 0..3 {
                hom = hom.max(f.pair_word(&uw, a, b).dist(product.get(a, b)));
            }
        }
    }
    let l = verify_l_relations(sig, v)?;
    let c = verify_dual_commutators(sig, v)?;
    let s = sig.to_string();
    let vs = fmt_complex(v);
    Ok(vec![
        pair_report,
        Report::new("dual.rho-homomorphism", hom, 1e-10).input("seed", cfg.seed),
        Report::new("dual.l-relations", l.residual, tol).detail(format!(
            "RLL ++ {:.2e}, -- {:.2e}, +- {:.2e}; orthogonality {:.2e}; diagonal {:.2e}",
            l.eq33_plus_plus, l.eq33_minus_minus, l.eq33_plus_minus, l.eq34_orthogonality, l.eq34_diagonal
        )),
        Report::new("dual.commutators", c.residual, tol)
            .detail(format!("{:.2e}, {:.2e}, {:.2e}", c.residuals[0], c.residuals[1], c.residuals[2])),
    ]
    .into_iter()
    .map(|r| r.input("signature", s.clone()).input("v", vs.clone()))
    .collect())
}

fn sci(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.3e}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Truncation orders of the decay checks.
pub const DECAY_ORDERS: [usize; 3] = [6, 8, 10];

fn sow_checks(cfg: &RunConfig) -> Result<Vec<Report>> {
    let sig = &cfg.signature;
    let tol = cfg.tolerances.residual;
    let (dw, dx) = (cfg.trunc_w, cfg.trunc_x);
    let sow = Sow::new(sig, dw, dx)?;
    let diamond = diamond_check(&sow);
    let h = verify_sow_hopf(sig, dw, dx)?;
    let decay: Vec<f64> = DECAY_ORDERS
        .iter()
        .map(|d| Ok(verify_sow_hopf(sig, *d, *d)?.residual))
        .collect::<Result<_>>()?;
    let s = sig.to_string();
    Ok(vec![
        Report::new("dual.sow-diamond", diamond, 1e-12).input("truncation", dw),
        Report::new("dual.sow-hopf", h.residual, tol).input("truncation", dw).detail(format!(
            "coproduct {:?}, antipode {:?}, coassociativity {:.2e}, counit {:.2e}, X02-degree overflow terms {}",
            h.coproduct, h.antipode, h.coassociativity, h.counit, h.overflow
        )),
        Report::flag("dual.sow-hopf-decay", non_increasing(&decay))
            .input("truncation", format!("{:?}", DECAY_ORDERS))
            .detail(format!("residuals {}", sci(&decay))),
    ]
    .into_iter()
    .map(|r| r.input("signature", s.clone()))
    .collect())
}

fn isomorphism_checks(cfg: &RunConfig) -> Result<Vec<Report>> {
    let sig = &cfg.signature;
    let (dw, dx) = (cfg.trunc_w, cfg.trunc_x);
    let iso = verify_duality_isomorphism(sig, dw, dx)?;
    let decay: Vec<f64> = DECAY_ORDERS
        .iter()
        .map(|d| Ok(verify_duality_isomorphism(sig, *d, *d)?.residual))
        .collect::<Result<_>>()?;
    let s = sig.to_string();
    // contracted signatures must cancel up to coefficients that normal forms drop
    let tol = if sig.is_contracted() { cfg.tolerances.coefficient } else { 1e-8 };
    Ok(vec![
        Report::new("dual.isomorphism", iso.residual, tol).input("truncation", dw).detail(format!(
            "residuals {}, identically zero: {}",
            sci(&iso.residuals),
            iso.structural_zero
        )),
        Report::flag("dual.isomorphism-decay", non_increasing(&decay))
            .input("truncation", format!("{:?}", DECAY_ORDERS))
            .detail(format!("residuals {}", sci(&decay))),
    ]
    .into_iter()
    .map(|r| r.input("signature", s.clone()))
    .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_format_round_trips() {
        for z in [Complex64::new(0.37, 0.0), Complex64::new(0.61, 0.29), Complex64::new(-1.0, -2.5)] {
            assert_eq!(crate::pimenov::parse_complex(&fmt_complex(z)).unwrap(), z);
        }
    }

    #[test]
    fn quantum_suites_reject_imaginary() {
        let cfg = RunConfig { signature: "i,1".parse().unwrap(), ..RunConfig::default() };
        assert_eq!(run_suite(&cfg, Suite::Frt).unwrap_err(), Error::ImaginarySlot);
        assert!(run_suite(&cfg, Suite::Classical).unwrap().iter().all(|r| r.pass));
    }
}
