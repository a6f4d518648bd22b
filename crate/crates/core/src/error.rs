use std::fmt;

use thiserror::Error;

use crate::model::{DesignArea, NodeKind};
use crate::validate::ValidationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntityKind {
    Model,
    Node,
    Pattern,
    QualityAttribute,
    Session,
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntityKind::Model => "model",
            EntityKind::Node => "node",
            EntityKind::Pattern => "pattern",
            EntityKind::QualityAttribute => "quality attribute",
            EntityKind::Session => "session",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {kind} `{id}`")]
pub struct NotFound {
    pub kind: EntityKind,
    pub id: String,
}

impl NotFound {
    pub fn model(id: &str) -> Self {
        NotFound {
            kind: EntityKind::Model,
            id: id.to_string(),
        }
    }

    pub fn node(model: DesignArea, id: &str) -> Self {
        NotFound {
            kind: EntityKind::Node,
            id: format!("{model}/{id}"),
        }
    }

    pub fn pattern(id: &str) -> Self {
        NotFound {
            kind: EntityKind::Pattern,
            id: id.to_string(),
        }
    }

    pub fn session(id: &str) -> Self {
        NotFound {
            kind: EntityKind::Session,
            id: id.to_string(),
        }
    }
}

/// Failure to turn a document into a knowledge base.
#[derive(Debug, Error)]
pub enum KbError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("knowledge base is invalid: {} error(s)", .0.errors.len())]
    Invalid(ValidationReport),
}

impl KbError {
    pub fn code(&self) -> &'static str {
        match self {
            KbError::Parse { .. } => "E_PARSE",
            KbError::Invalid(_) => "E_INVALID_KB",
        }
    }
}

impl From<serde_json::Error> for KbError {
    fn from(e: serde_json::Error) -> Self {
        KbError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// Errors raised by the decision engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdvisorError {
    #[error(transparent)]
    NotFound(#[from] NotFound),
    #[error("unknown quality attribute `{0}`")]
    UnknownQa(String),
    #[error("weight for `{qa}` must be a finite number in [0, 1], got {value}")]
    InvalidWeight { qa: String, value: String },
    #[error("pattern `{pattern}` does not belong to model `{model}`")]
    ForeignPattern { pattern: String, model: DesignArea },
    #[error("{kind} gateway `{gateway}` cannot take {given} edge(s)")]
    ChoiceArity {
        gateway: String,
        kind: NodeKind,
        given: usize,
    },
    #[error("`{edge}` is not an outgoing edge of gateway `{gateway}`")]
    BadEdge { gateway: String, edge: String },
    #[error("gateway `{0}` is not awaiting a decision")]
    NotPending(String),
    #[error("session is incomplete; pending gateways: {}", .0.join(", "))]
    Incomplete(Vec<String>),
}

impl AdvisorError {
    pub fn code(&self) -> &'static str {
        match self {
            AdvisorError::NotFound(_) => "E_NOT_FOUND",
            AdvisorError::UnknownQa(_) => "E_UNKNOWN_QA",
            AdvisorError::InvalidWeight { .. } => "E_INVALID_WEIGHT",
            AdvisorError::ForeignPattern { .. } => "E_FOREIGN_PATTERN",
            AdvisorError::ChoiceArity { .. } => "E_CHOICE_ARITY",
            AdvisorError::BadEdge { .. } => "E_BAD_EDGE",
            AdvisorError::NotPending(_) => "E_NOT_PENDING",
            AdvisorError::Incomplete(_) => "E_INCOMPLETE",
        }
    }
}
