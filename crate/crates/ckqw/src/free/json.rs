//! `{"relations":[{"terms":[{"iota":[1],"word":["t12","t21"],"re":…,"im":…}]}]}`

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{FreeElement, Provenance, RelationSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub iota: Vec<usize>,
    pub word: Vec<String>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RelationJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RelationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    pub relations: Vec<RelationJson>,
}

impl RelationSet {
    pub fn to_json(&self) -> RelationFile {
        let relations = self
            .relations
            .iter()
            .map(|r| RelationJson {
                terms: r
                    .terms()
                    .map(|(m, w, z)| TermJson {
                        iota: (0..self.tags).filter(|k| m >> k & 1 == 1).map(|k| k + 1).collect(),
                        word: w.iter().map(|g| self.alphabet[*g as usize].clone()).collect(),
                        re: z.re,
                        im: z.im,
                    })
                    .collect(),
            })
            .collect();
        RelationFile {
            label: Some(self.label.as_str().to_string()),
            tags: Some(self.tags),
            alphabet: Some(self.alphabet.clone()),
            relations,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("plain data")
    }

    /// Reads a relation file. The alphabet and tag count come from the file
    /// when present and from the arguments otherwise.
    pub fn from_json(s: &str, alphabet: &[String], tags: usize) -> Result<RelationSet> {
        let f: RelationFile = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        let alphabet = f.alphabet.unwrap_or_else(|| alphabet.to_vec());
        let tags = f.tags.unwrap_or(tags);
        let label = match f.label.as_deref() {
            Some("rtt") => Provenance::Rtt,
            Some("orthogonality") => Provenance::Orthogonality,
            _ => Provenance::Derived,
        };
        let mut relations = Vec::new();
        for r in f.relations {
            let mut e = FreeElement::zero(alphabet.len(), tags);
            for t in r.terms {
                let mut mask = 0;
                for k in t.iota {
                    if k == 0 || k > tags {
                        return Err(Error::Json(format!("tag {k} outside 1..={tags}")));
                    }
                    mask |= 1 << (k - 1);
                }
                let word = t
                    .word
                    .iter()
                    .map(|g| {
                        alphabet
                            .iter()
                            .position(|a| a == g)
                            .map(|i| i as u8)
                            .ok_or_else(|| Error::Json(format!("unknown generator `{g}`")))
                    })
                    .collect::<Result<Vec<u8>>>()?;
                e.add_term(mask, &word, Complex64::new(t.re, t.im));
            }
            relations.push(e);
        }
        RelationSet::new(alphabet, tags, relations, label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let a = FreeElement::generator(2, 2, 0);
        let b = FreeElement::generator(2, 2, 1);
        let r = &(&a * &b).shift(1) - &(&b * &a).scale(Complex64::new(0.5, -1.0));
        let rs = RelationSet::new(names.clone(), 2, vec![r], Provenance::Rtt).unwrap();
        let s = rs.to_json_string();
        assert!(s.contains("\"iota\":[1]"));
        let back = RelationSet::from_json(&s, &names, 2).unwrap();
        assert_eq!(back.relations, rs.relations);
        assert_eq!(back.label, Provenance::Rtt);
    }

    #[test]
    fn unknown_generator() {
        let s = r#"{"relations":[{"terms":[{"iota":[],"word":["zz"],"re":1.0,"im":0.0}]}]}"#;
        assert!(RelationSet::from_json(s, &["a".to_string()], 0).is_err());
    }
}
