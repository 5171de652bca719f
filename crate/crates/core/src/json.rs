//! Canonical JSON for Cuntz and quantum-matrix elements.
//!
//! Cuntz terms are listed in `(degree, mu, nu)` order, quantum-matrix terms in
//! `(degree, monomial)` order; coefficients are scalar strings.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cuntz::{CuntzElement, Word};
use crate::qmatrix::{QMatElement, UMonomial};
use crate::qscalar::QScalar;

#[derive(Serialize, Deserialize)]
struct CuntzTerm {
    mu: Vec<u8>,
    nu: Vec<u8>,
    coeff: QScalar,
}

#[derive(Serialize, Deserialize)]
struct CuntzDoc {
    d: usize,
    terms: Vec<CuntzTerm>,
}

impl Serialize for CuntzElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CuntzDoc {
            d: self.d(),
            terms: self
                .terms()
                .map(|(w, c)| CuntzTerm { mu: w.mu().to_vec(), nu: w.nu().to_vec(), coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CuntzElement {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let doc = CuntzDoc::deserialize(de)?;
        CuntzElement::from_terms(doc.d, doc.terms.into_iter().map(|t| (Word::new(t.mu, t.nu), t.coeff)))
            .map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct QMatTerm {
    monomial: Vec<[u8; 2]>,
    coeff: QScalar,
}

#[derive(Serialize, Deserialize)]
struct QMatDoc {
    d: usize,
    terms: Vec<QMatTerm>,
}

impl Serialize for QMatElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QMatDoc {
            d: self.d(),
            terms: self
                .terms()
                .map(|(m, c)| QMatTerm {
                    monomial: m.factors().iter().map(|&(i, j)| [i, j]).collect(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatElement {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let doc = QMatDoc::deserialize(de)?;
        QMatElement::from_terms(
            doc.d,
            doc.terms
                .into_iter()
                .map(|t| (UMonomial::new(t.monomial.into_iter().map(|[i, j]| (i, j)).collect()), t.coeff)),
        )
        .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use crate::parse::{parse_element, parse_qmat};
    use crate::{CuntzElement, QMatElement};

    #[test]
    fn cuntz_round_trip_and_order() {
        let x = parse_element("q s2 s1* + s1 - 2/(q + 1) s1 s2 s1*", 2).unwrap();
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(
            text,
            r#"{"d":2,"terms":[{"mu":[2],"nu":[1],"coeff":"q"},{"mu":[1],"nu":[],"coeff":"1"},{"mu":[1,2],"nu":[1],"coeff":"-2/(q + 1)"}]}"#
        );
        let back: CuntzElement = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn qmat_round_trip() {
        let x = parse_qmat("u22 u11 - q^-1 u12", 2).unwrap();
        let text = serde_json::to_string(&x).unwrap();
        assert!(text.contains(r#""monomial":[[1,1],[2,2]]"#), "{text}");
        let back: QMatElement = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn rejects_bad_index() {
        let bad = r#"{"d":2,"terms":[{"mu":[3],"nu":[],"coeff":"1"}]}"#;
        assert!(serde_json::from_str::<CuntzElement>(bad).is_err());
    }
}
