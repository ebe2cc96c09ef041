//! Quasipolynomials: one [`Poly`] per residue class modulo a period, and the
//! JSON document they are exchanged in.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{lcm, Rational};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// `classes[c]` is the polynomial in `s` that applies when `s = c (mod period)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPoly {
    period: u64,
    classes: Vec<Poly>,
}

impl QuasiPoly {
    pub fn new(period: u64, classes: Vec<Poly>) -> Result<Self> {
        if period == 0 || classes.len() as u64 != period {
            return Err(Error::Domain(format!(
                "period {period} with {} residue classes",
                classes.len()
            )));
        }
        Ok(QuasiPoly { period, classes })
    }

    pub fn from_poly(p: Poly) -> Self {
        QuasiPoly {
            period: 1,
            classes: vec![p],
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn classes(&self) -> &[Poly] {
        &self.classes
    }

    pub fn class(&self, c: u64) -> &Poly {
        &self.classes[(c % self.period) as usize]
    }

    /// Largest class degree, `None` if every class is zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.classes.iter().filter_map(Poly::degree).max()
    }

    pub fn eval(&self, s: u64) -> Rational {
        self.class(s).eval(&Rational::from(s))
    }

    /// Same function over a longer period, which must be a multiple of the
    /// current one.
    pub fn lift(&self, period: u64) -> Result<QuasiPoly> {
        if period == 0 || !period.is_multiple_of(self.period) {
            return Err(Error::Domain(format!(
                "cannot lift period {} to {period}",
                self.period
            )));
        }
        Ok(QuasiPoly {
            period,
            classes: (0..period).map(|c| self.class(c).clone()).collect(),
        })
    }

    /// Pointwise sum over the common period.
    pub fn add(&self, other: &QuasiPoly) -> QuasiPoly {
        let period = lcm(self.period, other.period);
        QuasiPoly {
            period,
            classes: (0..period)
                .map(|c| self.class(c) + other.class(c))
                .collect(),
        }
    }
}

/// `q(s)`, the polynomial of `s`'s residue class evaluated at `s`.
pub fn eval_quasipoly(q: &QuasiPoly, s: u64) -> Rational {
    q.eval(s)
}

/// Wire form of a quasipolynomial:
///
/// ```json
/// {"generators": [1, 2], "period": 2, "degree_bound": 1,
///  "classes": [["1", "1/2"], ["1/2", "1/2"]]}
/// ```
///
/// `waves`, when present, maps each divisor `j` to a document of the same
/// shape holding that wave alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolyDocument {
    pub generators: Vec<u64>,
    pub period: u64,
    pub degree_bound: usize,
    pub classes: Vec<Poly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub waves: Option<BTreeMap<u64, QuasiPolyDocument>>,
}

impl QuasiPolyDocument {
    pub fn new(generators: &[u64], q: &QuasiPoly) -> Self {
        QuasiPolyDocument {
            generators: generators.to_vec(),
            period: q.period,
            degree_bound: generators.len().saturating_sub(1),
            classes: q.classes.clone(),
            waves: None,
        }
    }

    pub fn with_waves(mut self, waves: &BTreeMap<u64, QuasiPoly>) -> Self {
        self.waves = Some(
            waves
                .iter()
                .map(|(&j, w)| (j, QuasiPolyDocument::new(&self.generators, w)))
                .collect(),
        );
        self
    }

    pub fn quasipoly(&self) -> Result<QuasiPoly> {
        QuasiPoly::new(self.period, self.classes.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}
