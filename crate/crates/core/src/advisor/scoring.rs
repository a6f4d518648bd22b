//! QA-weighted pattern ranking.
//!
//! A pattern's score is the sum, over its impacts, of the attribute's weight
//! signed by the impact polarity. Every score therefore decomposes into the
//! individual impact statements that produced it, which are returned as
//! contributions alongside the total.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::weights::QaWeights;
use crate::error::AdvisorError;
use crate::kb::KnowledgeBase;
use crate::model::{Pattern, Polarity};

pub(crate) fn ratio_as_f64<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(value.to_f64().unwrap_or(f64::NAN))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contribution {
    pub qa: String,
    pub polarity: Polarity,
    #[serde(serialize_with = "ratio_as_f64")]
    pub weight: BigRational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankedPattern {
    pub pattern: String,
    pub name: String,
    #[serde(serialize_with = "ratio_as_f64")]
    pub score: BigRational,
    pub positive_impacts: usize,
    pub contributions: Vec<Contribution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ranking {
    pub scope: String,
    pub entries: Vec<RankedPattern>,
}

impl Ranking {
    pub fn pattern_order(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.pattern.as_str()).collect()
    }

    pub fn score_of(&self, pattern: &str) -> Option<&BigRational> {
        self.entries.iter().find(|e| e.pattern == pattern).map(|e| &e.score)
    }
}

/// Patterns covered by a scope: a model id, or `"all"` for the full catalog.
pub fn patterns_in_scope<'a>(kb: &'a KnowledgeBase, scope: &str) -> Result<Vec<&'a Pattern>, AdvisorError> {
    if scope == "all" {
        return Ok(kb.patterns().iter().collect());
    }
    let model = kb.model_by_id(scope)?;
    Ok(model
        .pattern_ids()
        .into_iter()
        .filter_map(|id| kb.pattern(id))
        .collect())
}

fn score_one(pattern: &Pattern, weights: &QaWeights) -> RankedPattern {
    let mut score = BigRational::zero();
    let mut contributions = Vec::new();
    for imp in &pattern.impacts {
        let w = weights.get(&imp.qa);
        if w.is_zero() {
            continue;
        }
        match imp.polarity {
            Polarity::Positive => score += &w,
            Polarity::Negative => score -= &w,
        }
        contributions.push(Contribution {
            qa: imp.qa.clone(),
            polarity: imp.polarity,
            weight: w,
            note: imp.note.clone(),
        });
    }
    RankedPattern {
        pattern: pattern.id.clone(),
        name: pattern.name.clone(),
        score,
        positive_impacts: pattern.positive_impacts(),
        contributions,
    }
}

/// Descending score, then more positive impacts, then name.
pub fn rank_order(a: &RankedPattern, b: &RankedPattern) -> Ordering {
    b.score
        .cmp(&a.score)
        .then_with(|| b.positive_impacts.cmp(&a.positive_impacts))
        .then_with(|| a.name.cmp(&b.name))
        .then_with(|| a.pattern.cmp(&b.pattern))
}

pub fn score_patterns(kb: &KnowledgeBase, scope: &str, weights: &QaWeights) -> Result<Ranking, AdvisorError> {
    if let Some(qa) = weights.first_unknown(kb) {
        return Err(AdvisorError::UnknownQa(qa.to_string()));
    }
    let mut entries: Vec<RankedPattern> = patterns_in_scope(kb, scope)?
        .into_iter()
        .map(|p| score_one(p, weights))
        .collect();
    entries.sort_by(rank_order);
    Ok(Ranking {
        scope: scope.to_string(),
        entries,
    })
}
