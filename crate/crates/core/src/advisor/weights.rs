use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::AdvisorError;
use crate::kb::KnowledgeBase;

/// Per-QA priority. Absent attributes weigh zero.
///
/// Weights are exact rationals so that scores compare without rounding.
/// Values arriving from users are checked against `[0, 1]`; sums and scalings
/// built internally only need to stay non-negative.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QaWeights {
    weights: BTreeMap<String, BigRational>,
}

impl QaWeights {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds weights from user-supplied `(qa, value)` pairs. QA names may be
    /// aliases; later pairs overwrite earlier ones for the same attribute.
    pub fn from_user<'a, I>(kb: &KnowledgeBase, pairs: I) -> Result<Self, AdvisorError>
    where
        I: IntoIterator<Item = (&'a str, f64)>,
    {
        let mut w = QaWeights::new();
        for (qa, value) in pairs {
            w.set_user(kb, qa, value)?;
        }
        Ok(w)
    }

    /// Sets one user-supplied weight, returning the canonical id it landed on
    /// and the value it replaced, if any.
    pub fn set_user(
        &mut self,
        kb: &KnowledgeBase,
        qa: &str,
        value: f64,
    ) -> Result<(String, Option<BigRational>), AdvisorError> {
        let invalid = || AdvisorError::InvalidWeight {
            qa: qa.to_string(),
            value: value.to_string(),
        };
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(invalid());
        }
        let exact = BigRational::from_float(value).ok_or_else(invalid)?;
        let id = kb
            .resolve_qa(qa)
            .ok_or_else(|| AdvisorError::UnknownQa(qa.to_string()))?
            .id
            .clone();
        let prev = self.weights.insert(id.clone(), exact);
        Ok((id, prev))
    }

    /// Sets an exact weight by canonical id or alias. Any non-negative value
    /// is accepted.
    pub fn set_exact(&mut self, kb: &KnowledgeBase, qa: &str, value: BigRational) -> Result<(), AdvisorError> {
        if value.is_negative() {
            return Err(AdvisorError::InvalidWeight {
                qa: qa.to_string(),
                value: value.to_string(),
            });
        }
        let id = kb
            .resolve_qa(qa)
            .ok_or_else(|| AdvisorError::UnknownQa(qa.to_string()))?
            .id
            .clone();
        self.weights.insert(id, value);
        Ok(())
    }

    /// Unit weight on a single attribute.
    pub fn unit(kb: &KnowledgeBase, qa: &str) -> Result<Self, AdvisorError> {
        let mut w = QaWeights::new();
        w.set_exact(kb, qa, BigRational::one())?;
        Ok(w)
    }

    pub fn get(&self, qa: &str) -> BigRational {
        self.weights.get(qa).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BigRational)> {
        self.weights.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_empty(&self) -> bool {
        self.weights.values().all(Zero::is_zero)
    }

    /// Every weight multiplied by `factor`.
    pub fn scaled(&self, factor: &BigRational) -> Self {
        QaWeights {
            weights: self.weights.iter().map(|(k, v)| (k.clone(), v * factor)).collect(),
        }
    }

    /// Attribute-wise sum.
    pub fn sum(&self, other: &QaWeights) -> Self {
        let mut weights = self.weights.clone();
        for (k, v) in &other.weights {
            *weights.entry(k.clone()).or_insert_with(BigRational::zero) += v;
        }
        QaWeights { weights }
    }

    /// First id that is not a canonical attribute of `kb`.
    pub(crate) fn first_unknown<'a>(&'a self, kb: &KnowledgeBase) -> Option<&'a str> {
        self.weights
            .keys()
            .find(|k| kb.qa_position(k).is_none())
            .map(String::as_str)
    }
}

/// `n / d` as an exact weight.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
