//! Knowledge base: catalogs plus decision models, with JSON load/save,
//! linting and Graphviz export.

mod builtin;
mod dot;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{KbError, NotFound};
use crate::model::{DecisionModel, DesignArea, Pattern, QualityAttribute};
use crate::validate::{validate_catalog, validate_model, Catalog, IssueCode, ValidationReport};

pub use builtin::BUILTIN_VERSION;
pub use dot::export_dot;

/// The document shape of a knowledge base file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KbData {
    pub kb_version: String,
    #[serde(default)]
    pub qa_catalog: Vec<QualityAttribute>,
    #[serde(default)]
    pub patterns: Vec<Pattern>,
    #[serde(default)]
    pub models: Vec<DecisionModel>,
}

impl KbData {
    pub fn catalog(&self) -> Catalog<'_> {
        Catalog::new(&self.qa_catalog, &self.patterns)
    }

    /// Rewrites impact QA references given by alias to their canonical id.
    /// Unknown names are left alone for validation to report.
    pub fn resolve_aliases(&mut self) {
        let lookup = qa_lookup(&self.qa_catalog);
        for p in &mut self.patterns {
            for imp in &mut p.impacts {
                if let Some(&i) = lookup.get(imp.qa.as_str()) {
                    imp.qa = self.qa_catalog[i].id.clone();
                }
            }
        }
    }
}

fn qa_lookup(qas: &[QualityAttribute]) -> HashMap<&str, usize> {
    let mut map = HashMap::new();
    for (i, qa) in qas.iter().enumerate() {
        for alias in &qa.aliases {
            map.entry(alias.as_str()).or_insert(i);
        }
    }
    // canonical ids win over aliases
    for (i, qa) in qas.iter().enumerate() {
        map.insert(qa.id.as_str(), i);
    }
    map
}

/// Full validation of a knowledge base candidate.
pub fn validate_kb(data: &KbData) -> ValidationReport {
    let mut report = validate_catalog(data.catalog());
    let mut seen = HashSet::new();
    for m in &data.models {
        if !seen.insert(m.id) {
            report.push(IssueCode::DupId, m.id.as_str(), "duplicate model id");
        }
        report.merge(validate_model(m, data.catalog()));
    }
    report
}

/// A validated, immutable knowledge base.
#[derive(Debug, Clone)]
pub struct KnowledgeBase {
    data: KbData,
    pattern_index: HashMap<String, usize>,
    qa_index: HashMap<String, usize>,
}

impl PartialEq for KnowledgeBase {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data
    }
}

impl Eq for KnowledgeBase {}

impl KnowledgeBase {
    /// Resolves aliases and validates; fails if any error is reported.
    pub fn from_data(mut data: KbData) -> Result<Self, KbError> {
        data.resolve_aliases();
        let report = validate_kb(&data);
        if !report.is_valid() {
            return Err(KbError::Invalid(report));
        }
        let pattern_index = data
            .patterns
            .iter()
            .enumerate()
            .map(|(i, p)| (p.id.clone(), i))
            .collect();
        let qa_index = qa_lookup(&data.qa_catalog)
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        Ok(KnowledgeBase {
            data,
            pattern_index,
            qa_index,
        })
    }

    pub fn data(&self) -> &KbData {
        &self.data
    }

    pub fn into_data(self) -> KbData {
        self.data
    }

    pub fn version(&self) -> &str {
        &self.data.kb_version
    }

    pub fn qa_catalog(&self) -> &[QualityAttribute] {
        &self.data.qa_catalog
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.data.patterns
    }

    pub fn models(&self) -> &[DecisionModel] {
        &self.data.models
    }

    pub fn catalog(&self) -> Catalog<'_> {
        self.data.catalog()
    }

    pub fn pattern(&self, id: &str) -> Option<&Pattern> {
        self.pattern_index.get(id).map(|&i| &self.data.patterns[i])
    }

    pub fn require_pattern(&self, id: &str) -> Result<&Pattern, NotFound> {
        self.pattern(id).ok_or_else(|| NotFound::pattern(id))
    }

    pub fn model(&self, area: DesignArea) -> Option<&DecisionModel> {
        self.data.models.iter().find(|m| m.id == area)
    }

    /// Looks a model up by its textual id.
    pub fn model_by_id(&self, id: &str) -> Result<&DecisionModel, NotFound> {
        id.parse::<DesignArea>()
            .ok()
            .and_then(|a| self.model(a))
            .ok_or_else(|| NotFound::model(id))
    }

    /// The model whose graph places `pattern`.
    pub fn owning_model(&self, pattern: &str) -> Option<&DecisionModel> {
        self.data.models.iter().find(|m| m.references_pattern(pattern))
    }

    /// Canonical QA for an id or alias.
    pub fn resolve_qa(&self, name: &str) -> Option<&QualityAttribute> {
        self.qa_index.get(name).map(|&i| &self.data.qa_catalog[i])
    }

    pub fn qa_position(&self, id: &str) -> Option<usize> {
        self.data.qa_catalog.iter().position(|q| q.id == id)
    }
}

/// The compiled-in knowledge base covering all four design areas.
pub fn builtin_kb() -> KnowledgeBase {
    KnowledgeBase::from_data(builtin::builtin_data()).expect("built-in knowledge base is valid")
}

/// Parses and validates a knowledge base document.
pub fn load_kb(doc: &str) -> Result<KnowledgeBase, KbError> {
    let data: KbData = serde_json::from_str(doc)?;
    KnowledgeBase::from_data(data)
}

/// Parses a document without validating it.
pub fn parse_kb(doc: &str) -> Result<KbData, KbError> {
    Ok(serde_json::from_str(doc)?)
}

/// Deterministic pretty-printed JSON, newline terminated.
pub fn serialize_kb(kb: &KnowledgeBase) -> String {
    serialize_data(kb.data())
}

pub fn serialize_data(data: &KbData) -> String {
    let mut out = serde_json::to_string_pretty(data).expect("knowledge base serializes");
    out.push('\n');
    out
}

/// Validation warnings plus catalog hygiene checks.
pub fn lint_kb(kb: &KnowledgeBase) -> ValidationReport {
    let mut report = validate_kb(kb.data());
    let used: HashSet<&str> = kb
        .patterns()
        .iter()
        .flat_map(|p| p.impacts.iter().map(|i| i.qa.as_str()))
        .collect();
    for qa in kb.qa_catalog() {
        if !used.contains(qa.id.as_str()) {
            report.push(
                IssueCode::UnusedQa,
                format!("qa:{}", qa.id),
                "quality attribute is not referenced by any pattern",
            );
        }
    }
    for p in kb.patterns() {
        for (i, c) in p.constraints.iter().enumerate() {
            if c.trim().is_empty() {
                report.push(
                    IssueCode::NoConstraintText,
                    format!("pattern:{}#constraint{i}", p.id),
                    "constraint has no text",
                );
            }
        }
    }
    report
}
