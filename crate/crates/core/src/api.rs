//! JSON request and response bodies shared by the HTTP service and the CLI.
//!
//! Both front ends render through the functions here so that identical
//! inputs produce byte-identical output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::advisor::{
    score_patterns, tradeoff_report, PendingDecision, QaWeights, Ranking, Session, SessionStatus, TradeoffReport,
};
use crate::error::AdvisorError;
use crate::kb::{export_dot, KnowledgeBase};
use crate::model::{DecisionModel, DesignArea, Pattern};

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RecommendRequest {
    pub model: String,
    #[serde(default)]
    pub weights: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TradeoffRequest {
    pub patterns: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSessionRequest {
    pub model: String,
}

/// Snapshot of a walkthrough between answers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SessionView {
    pub session: String,
    pub model: DesignArea,
    pub status: SessionStatus,
    pub pending: Vec<PendingDecision>,
    pub selected: Vec<String>,
}

impl SessionView {
    pub fn of(kb: &KnowledgeBase, s: &Session) -> Self {
        SessionView {
            session: s.id().to_string(),
            model: s.model(),
            status: s.status(),
            pending: s.pending_decisions(kb),
            selected: s.selected(kb).into_iter().map(str::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelSummary {
    pub id: DesignArea,
    pub title: String,
    pub pattern_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelDetail<'a> {
    pub model: &'a DecisionModel,
    pub patterns: Vec<&'a Pattern>,
    pub dot: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorDetail {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorBody {
    pub error: ErrorDetail,
}

impl ErrorBody {
    pub fn new(code: &str, message: impl Into<String>) -> Self {
        ErrorBody {
            error: ErrorDetail {
                code: code.to_string(),
                message: message.into(),
            },
        }
    }
}

impl From<&AdvisorError> for ErrorBody {
    fn from(e: &AdvisorError) -> Self {
        ErrorBody::new(e.code(), e.to_string())
    }
}

/// Compact JSON rendering used for every response body.
pub fn to_body<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("response types serialize")
}

pub fn list_models(kb: &KnowledgeBase) -> Vec<ModelSummary> {
    kb.models()
        .iter()
        .map(|m| ModelSummary {
            id: m.id,
            title: m.title.clone(),
            pattern_count: m.pattern_ids().len(),
        })
        .collect()
}

pub fn model_detail<'a>(kb: &'a KnowledgeBase, id: &str) -> Result<ModelDetail<'a>, AdvisorError> {
    let model = kb.model_by_id(id)?;
    Ok(ModelDetail {
        model,
        patterns: model.pattern_ids().into_iter().filter_map(|p| kb.pattern(p)).collect(),
        dot: export_dot(model, kb.catalog()),
    })
}

pub fn recommend_with(kb: &KnowledgeBase, model: &str, weights: &QaWeights) -> Result<Ranking, AdvisorError> {
    score_patterns(kb, model, weights)
}

pub fn recommend(kb: &KnowledgeBase, req: &RecommendRequest) -> Result<Ranking, AdvisorError> {
    let weights = QaWeights::from_user(kb, req.weights.iter().map(|(k, v)| (k.as_str(), *v)))?;
    recommend_with(kb, &req.model, &weights)
}

pub fn tradeoff(kb: &KnowledgeBase, req: &TradeoffRequest) -> Result<TradeoffReport, AdvisorError> {
    tradeoff_report(kb, &req.patterns)
}
