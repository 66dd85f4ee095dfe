use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{jcos, jinv_sin, PimenovElement, MAX_TAGS};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    One,
    /// Slot `r` carries the tag `ι_r`.
    Nil,
    Im,
}

/// `j = (j_1, ..., j_{N-1})`; slot `r` is `1`, `ι_r` or `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterSignature {
    slots: Vec<Slot>,
}

impl ParameterSignature {
    pub fn new(slots: Vec<Slot>) -> Result<Self> {
        if slots.is_empty() {
            return Err(Error::Signature("at least one slot is required".into()));
        }
        if slots.len() > MAX_TAGS {
            return Err(Error::TooManyTags(slots.len()));
        }
        Ok(ParameterSignature { slots })
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// Matrix size `N`.
    pub fn size(&self) -> usize {
        self.slots.len() + 1
    }

    /// Number of nilpotent tags in scope, `N - 1`.
    pub fn tags(&self) -> usize {
        self.slots.len()
    }

    pub fn quantum_allowed(&self) -> bool {
        !self.slots.contains(&Slot::Im)
    }

    pub fn require_quantum(&self) -> Result<()> {
        if self.quantum_allowed() {
            Ok(())
        } else {
            Err(Error::ImaginarySlot)
        }
    }

    pub fn is_contracted(&self) -> bool {
        self.slots.contains(&Slot::Nil)
    }

    /// `j_r`, `r` counted from 1.
    pub fn slot_value(&self, r: usize) -> PimenovElement {
        let n = self.tags();
        match self.slots[r - 1] {
            Slot::One => PimenovElement::one(n),
            Slot::Nil => PimenovElement::tag(n, r),
            Slot::Im => PimenovElement::scalar(n, Complex64::new(0.0, 1.0)),
        }
    }

    /// `J_{μν} = j_μ ⋯ j_{ν-1}`, the unit when `μ ≥ ν`.
    pub fn jfactor(&self, mu: usize, nu: usize) -> Result<PimenovElement> {
        let size = self.size();
        if mu == 0 || nu == 0 || mu > size || nu > size {
            return Err(Error::Index(format!("J_({mu},{nu}) with N = {size}")));
        }
        let mut out = PimenovElement::one(self.tags());
        for r in mu..nu {
            out = &out * &self.slot_value(r);
        }
        Ok(out)
    }

    /// `J = J_{1N}`.
    pub fn big_j(&self) -> PimenovElement {
        self.jfactor(1, self.size()).expect("in range")
    }

    /// `J̃_{kp}` of the special-matrix shape: `J_{kp}` for `k < p`, `J_{pk}` otherwise.
    pub fn jtilde(&self, k: usize, p: usize) -> Result<PimenovElement> {
        if k < p {
            self.jfactor(k, p)
        } else {
            self.jfactor(p, k)
        }
    }

    /// All `3^{len}` signatures of a given length in a fixed order.
    pub fn all(len: usize) -> Vec<ParameterSignature> {
        let mut out = Vec::new();
        for code in 0..3usize.pow(len as u32) {
            let mut c = code;
            let slots = (0..len)
                .map(|_| {
                    let s = [Slot::One, Slot::Nil, Slot::Im][c % 3];
                    c /= 3;
                    s
                })
                .collect();
            out.push(ParameterSignature { slots });
        }
        out
    }

    /// The four quantum signatures for `N = 3`.
    pub fn quantum3() -> Vec<ParameterSignature> {
        ParameterSignature::all(2).into_iter().filter(|s| s.quantum_allowed()).collect()
    }
}

impl FromStr for ParameterSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let slots = s
            .split(',')
            .map(|t| match t.trim() {
                "1" => Ok(Slot::One),
                "n" => Ok(Slot::Nil),
                "i" => Ok(Slot::Im),
                other => Err(Error::Signature(format!("unknown token `{other}` (expected 1, n or i)"))),
            })
            .collect::<Result<Vec<_>>>()?;
        ParameterSignature::new(slots)
    }
}

impl fmt::Display for ParameterSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<&str> = self
            .slots
            .iter()
            .map(|s| match s {
                Slot::One => "1",
                Slot::Nil => "n",
                Slot::Im => "i",
            })
            .collect();
        write!(f, "{}", toks.join(","))
    }
}

/// `(sin jφ, j⁻¹ sin jφ, cos jφ)` through even series in `j²`.
pub fn scaled_trig(j: &PimenovElement, phi: f64) -> (PimenovElement, PimenovElement, PimenovElement) {
    let j2 = j * j;
    let x = Complex64::new(phi, 0.0);
    let jinv = jinv_sin(&j2, x);
    (j * &jinv, jinv, jcos(&j2, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jfactor_examples() {
        let sig: ParameterSignature = "n,1".parse().unwrap();
        assert_eq!(sig.jfactor(2, 2).unwrap(), PimenovElement::one(2));
        assert_eq!(sig.jfactor(3, 1).unwrap(), PimenovElement::one(2));
        assert_eq!(sig.jfactor(1, 3).unwrap(), PimenovElement::tag(2, 1));
        let im: ParameterSignature = "i,i".parse().unwrap();
        assert_eq!(im.jfactor(1, 3).unwrap(), PimenovElement::real(2, -1.0));
        assert!(sig.jfactor(0, 2).is_err());
        assert!(sig.jfactor(1, 4).is_err());
    }

    #[test]
    fn parse_and_display() {
        let sig: ParameterSignature = "1, n,i".parse().unwrap();
        assert_eq!(sig.to_string(), "1,n,i");
        assert!(!sig.quantum_allowed());
        assert!("1,x".parse::<ParameterSignature>().is_err());
        assert_eq!(ParameterSignature::all(3).len(), 27);
        assert_eq!(ParameterSignature::quantum3().len(), 4);
    }

    #[test]
    fn scaled_trig_cases() {
        let phi = 0.7;
        let iota = PimenovElement::tag(1, 1);
        let (s, si, c) = scaled_trig(&iota, phi);
        assert_eq!(s, iota.scale_real(phi));
        assert_eq!(si, PimenovElement::real(1, phi));
        assert_eq!(c, PimenovElement::one(1));
        let (s, si, c) = scaled_trig(&PimenovElement::one(1), phi);
        assert!((s.coeff(0).re - phi.sin()).abs() < 1e-15);
        assert!((si.coeff(0).re - phi.sin()).abs() < 1e-15);
        assert!((c.coeff(0).re - phi.cos()).abs() < 1e-15);
        let i = PimenovElement::scalar(1, Complex64::new(0.0, 1.0));
        let (s, si, c) = scaled_trig(&i, phi);
        assert!((s.coeff(0) - Complex64::new(0.0, phi.sinh())).norm() < 1e-15);
        assert!((si.coeff(0).re - phi.sinh()).abs() < 1e-15);
        assert!((c.coeff(0).re - phi.cosh()).abs() < 1e-15);
    }
}
