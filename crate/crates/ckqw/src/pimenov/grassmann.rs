//! `D_n` inside the even part of a Grassmann algebra, `ι_k = ξ_k ξ_{n+k}`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::PimenovElement;

/// Grassmann element over `2n` generators, coefficients indexed by sorted
/// monomial masks.
struct Grassmann {
    c: Vec<Complex64>,
}

fn sign(a: usize, b: usize) -> f64 {
    // count pairs x in a, y in b with x > y
    let mut swaps = 0;
    let mut bb = b;
    while bb != 0 {
        let y = bb.trailing_zeros();
        swaps += (a >> (y + 1)).count_ones();
        bb &= bb - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl Grassmann {
    fn mul(&self, other: &Grassmann) -> Grassmann {
        let mut c = vec![Complex64::new(0.0, 0.0); self.c.len()];
        for (a, x) in self.c.iter().enumerate() {
            if x.norm() == 0.0 {
                continue;
            }
            for (b, y) in other.c.iter().enumerate() {
                if a & b == 0 && y.norm() != 0.0 {
                    c[a | b] += x * y * sign(a, b);
                }
            }
        }
        Grassmann { c }
    }

    fn embed(e: &PimenovElement) -> Grassmann {
        let n = e.n();
        let mut c = vec![Complex64::new(0.0, 0.0); 1 << (2 * n)];
        for mask in 0..(1 << n) {
            let z = e.coeff(mask);
            if z.norm() == 0.0 {
                continue;
            }
            // ordered product of the pairs ξ_k ξ_{n+k} over k in mask
            let mut mono = 0usize;
            let mut s = 1.0;
            for k in 0..n {
                if mask >> k & 1 == 1 {
                    let pair = (1 << k) | (1 << (n + k));
                    s *= sign(mono, 1 << k) * sign(mono | (1 << k), 1 << (n + k));
                    mono |= pair;
                }
            }
            c[mono] += z * s;
        }
        Grassmann { c }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GrassmannReport {
    pub n: usize,
    pub trials: usize,
    pub mismatches: usize,
    pub max_deviation: f64,
}

fn random_integer_element(n: usize, rng: &mut ChaCha8Rng) -> PimenovElement {
    let coeffs: Vec<Complex64> = (0..1 << n)
        .map(|_| Complex64::new(rng.gen_range(-9..=9) as f64, rng.gen_range(-9..=9) as f64))
        .collect();
    PimenovElement::from_coeffs(n, &coeffs).expect("sized")
}

/// Compares products in `D_n` with products of the embedded Grassmann
/// elements. Small-integer coefficients keep both sides exact.
pub fn verify_grassmann_embedding(n: usize, trials: usize, seed: u64) -> GrassmannReport {
    assert!(n <= 4, "the Grassmann oracle is exponential; n ≤ 4");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0;
    let mut max_dev: f64 = 0.0;
    for _ in 0..trials {
        let a = random_integer_element(n, &mut rng);
        let b = random_integer_element(n, &mut rng);
        let lhs = Grassmann::embed(&(&a * &b));
        let rhs = Grassmann::embed(&a).mul(&Grassmann::embed(&b));
        let dev = lhs.c.iter().zip(&rhs.c).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        if dev != 0.0 {
            mismatches += 1;
        }
        max_dev = max_dev.max(dev);
    }
    GrassmannReport { n, trials, mismatches, max_deviation: max_dev }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iota_squared_vanishes_in_both() {
        let i1 = PimenovElement::tag(1, 1);
        let g = Grassmann::embed(&i1);
        assert!(g.mul(&g).c.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn product_of_two_tags_has_matching_sign() {
        let i1 = Grassmann::embed(&PimenovElement::tag(2, 1));
        let i2 = Grassmann::embed(&PimenovElement::tag(2, 2));
        let direct = Grassmann::embed(&(&PimenovElement::tag(2, 1) * &PimenovElement::tag(2, 2)));
        assert_eq!(i1.mul(&i2).c, direct.c);
        // ξ1ξ3ξ2ξ4 = -ξ1ξ2ξ3ξ4
        assert_eq!(direct.c[0b1111], Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn random_products_agree() {
        let r = verify_grassmann_embedding(2, 100, 7);
        assert_eq!(r.mismatches, 0);
    }
}
