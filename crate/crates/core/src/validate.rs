//! Structural validation of decision models and their catalogs.
//!
//! Validation never fails: every violation becomes an [`Issue`] in the
//! returned [`ValidationReport`]. A model is well-formed exactly when the
//! report has no errors; warnings are advisory.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{DecisionModel, NodeKind, Pattern, QualityAttribute};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IssueCode {
    #[serde(rename = "E_CYCLE")]
    Cycle,
    #[serde(rename = "E_UNREACHABLE")]
    Unreachable,
    #[serde(rename = "E_GATEWAY_ARITY")]
    GatewayArity,
    #[serde(rename = "E_DANGLING_REF")]
    DanglingRef,
    #[serde(rename = "E_DUP_ID")]
    DupId,
    #[serde(rename = "E_MULTI_START")]
    MultiStart,
    #[serde(rename = "E_NO_START")]
    NoStart,
    #[serde(rename = "E_START_ARITY")]
    StartArity,
    #[serde(rename = "E_START_INCOMING")]
    StartIncoming,
    #[serde(rename = "E_SELF_LOOP")]
    SelfLoop,
    #[serde(rename = "E_PATTERN_REF")]
    PatternRef,
    #[serde(rename = "E_AREA_MISMATCH")]
    AreaMismatch,
    #[serde(rename = "E_FOREIGN_COMPLEMENT")]
    ForeignComplement,
    #[serde(rename = "E_DUP_IMPACT")]
    DupImpact,
    #[serde(rename = "E_ALIAS_COLLISION")]
    AliasCollision,
    #[serde(rename = "E_BAD_ID")]
    BadId,
    #[serde(rename = "W_NO_IMPACTS")]
    NoImpacts,
    #[serde(rename = "W_ISOLATED_PATTERN")]
    IsolatedPattern,
    #[serde(rename = "W_UNUSED_QA")]
    UnusedQa,
    #[serde(rename = "W_NO_CONSTRAINT_TEXT")]
    NoConstraintText,
    #[serde(rename = "W_MISSING_CONDITION")]
    MissingCondition,
    #[serde(rename = "W_MISSING_QUESTION")]
    MissingQuestion,
}

impl IssueCode {
    pub fn as_str(self) -> &'static str {
        match self {
            IssueCode::Cycle => "E_CYCLE",
            IssueCode::Unreachable => "E_UNREACHABLE",
            IssueCode::GatewayArity => "E_GATEWAY_ARITY",
            IssueCode::DanglingRef => "E_DANGLING_REF",
            IssueCode::DupId => "E_DUP_ID",
            IssueCode::MultiStart => "E_MULTI_START",
            IssueCode::NoStart => "E_NO_START",
            IssueCode::StartArity => "E_START_ARITY",
            IssueCode::StartIncoming => "E_START_INCOMING",
            IssueCode::SelfLoop => "E_SELF_LOOP",
            IssueCode::PatternRef => "E_PATTERN_REF",
            IssueCode::AreaMismatch => "E_AREA_MISMATCH",
            IssueCode::ForeignComplement => "E_FOREIGN_COMPLEMENT",
            IssueCode::DupImpact => "E_DUP_IMPACT",
            IssueCode::AliasCollision => "E_ALIAS_COLLISION",
            IssueCode::BadId => "E_BAD_ID",
            IssueCode::NoImpacts => "W_NO_IMPACTS",
            IssueCode::IsolatedPattern => "W_ISOLATED_PATTERN",
            IssueCode::UnusedQa => "W_UNUSED_QA",
            IssueCode::NoConstraintText => "W_NO_CONSTRAINT_TEXT",
            IssueCode::MissingCondition => "W_MISSING_CONDITION",
            IssueCode::MissingQuestion => "W_MISSING_QUESTION",
        }
    }

    pub fn is_error(self) -> bool {
        self.as_str().starts_with("E_")
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Issue {
    pub code: IssueCode,
    /// Offending entity, e.g. `security/g-levels` or `pattern:api-gateway`.
    pub subject: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn push(&mut self, code: IssueCode, subject: impl Into<String>, message: impl Into<String>) {
        let issue = Issue {
            code,
            subject: subject.into(),
            message: message.into(),
        };
        if code.is_error() {
            self.errors.push(issue);
        } else {
            self.warnings.push(issue);
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.errors.extend(other.errors);
        self.warnings.extend(other.warnings);
    }

    pub fn has(&self, code: IssueCode) -> bool {
        self.errors.iter().chain(&self.warnings).any(|i| i.code == code)
    }

    pub fn count(&self, code: IssueCode) -> usize {
        self.errors
            .iter()
            .chain(&self.warnings)
            .filter(|i| i.code == code)
            .count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.errors.iter().chain(&self.warnings) {
            writeln!(f, "{} {}: {}", i.code, i.subject, i.message)?;
        }
        write!(f, "{} errors, {} warnings", self.errors.len(), self.warnings.len())
    }
}

/// Read-only view of the pattern and QA catalogs a model is checked against.
#[derive(Debug, Clone, Copy)]
pub struct Catalog<'a> {
    pub qas: &'a [QualityAttribute],
    pub patterns: &'a [Pattern],
}

impl<'a> Catalog<'a> {
    pub fn new(qas: &'a [QualityAttribute], patterns: &'a [Pattern]) -> Self {
        Catalog { qas, patterns }
    }

    fn pattern(&self, id: &str) -> Option<&'a Pattern> {
        self.patterns.iter().find(|p| p.id == id)
    }
}

/// Lowercase kebab-case: `[a-z0-9]+(-[a-z0-9]+)*`.
pub fn is_kebab_id(id: &str) -> bool {
    !id.is_empty()
        && id
            .split('-')
            .all(|seg| !seg.is_empty() && seg.bytes().all(|b| b.is_ascii_lowercase() || b.is_ascii_digit()))
}

/// Checks one model's graph against the catalogs.
pub fn validate_model(model: &DecisionModel, catalog: Catalog<'_>) -> ValidationReport {
    let mut report = ValidationReport::default();
    let m = model.id;
    let at = |id: &str| format!("{m}/{id}");

    let mut node_ids: HashSet<&str> = HashSet::new();
    for n in &model.nodes {
        if !node_ids.insert(n.id.as_str()) {
            report.push(IssueCode::DupId, at(&n.id), "duplicate node id");
        }
    }

    let starts: Vec<&str> = model
        .nodes
        .iter()
        .filter(|n| n.kind == NodeKind::Start)
        .map(|n| n.id.as_str())
        .collect();
    match starts.len() {
        0 => report.push(IssueCode::NoStart, m.as_str(), "model has no start node"),
        1 => {}
        _ => report.push(
            IssueCode::MultiStart,
            m.as_str(),
            format!("model has {} start nodes: {}", starts.len(), starts.join(", ")),
        ),
    }

    let mut pattern_nodes: HashMap<&str, &str> = HashMap::new();
    for n in &model.nodes {
        match (n.kind, &n.pattern_ref) {
            (NodeKind::Pattern, None) => report.push(
                IssueCode::PatternRef,
                at(&n.id),
                "pattern node lacks a pattern reference",
            ),
            (NodeKind::Pattern, Some(p)) => {
                match catalog.pattern(p) {
                    None => report.push(IssueCode::DanglingRef, at(&n.id), format!("unknown pattern `{p}`")),
                    Some(pat) if pat.area != m => report.push(
                        IssueCode::AreaMismatch,
                        at(&n.id),
                        format!("pattern `{p}` belongs to area `{}`", pat.area),
                    ),
                    Some(_) => {}
                }
                if let Some(prev) = pattern_nodes.insert(p.as_str(), n.id.as_str()) {
                    report.push(
                        IssueCode::DupId,
                        at(&n.id),
                        format!("pattern `{p}` already placed at node `{prev}`"),
                    );
                }
            }
            (_, Some(p)) => report.push(
                IssueCode::PatternRef,
                at(&n.id),
                format!("{} node must not reference pattern `{p}`", n.kind),
            ),
            (_, None) => {}
        }
        if n.kind.is_decision() && n.label.as_deref().is_none_or(|l| l.trim().is_empty()) {
            report.push(IssueCode::MissingQuestion, at(&n.id), "gateway has no question label");
        }
    }

    let mut edge_keys: HashSet<(&str, &str)> = HashSet::new();
    for e in &model.flow_edges {
        let subject = at(&format!("{}->{}", e.from, e.to));
        for end in [&e.from, &e.to] {
            if !node_ids.contains(end.as_str()) {
                report.push(
                    IssueCode::DanglingRef,
                    subject.clone(),
                    format!("edge endpoint `{end}` does not exist"),
                );
            }
        }
        if e.from == e.to {
            report.push(IssueCode::SelfLoop, subject.clone(), "flow edge is a self-loop");
        }
        if !edge_keys.insert((e.from.as_str(), e.to.as_str())) {
            report.push(IssueCode::DupId, subject.clone(), "duplicate flow edge");
        }
        if starts.contains(&e.to.as_str()) {
            report.push(
                IssueCode::StartIncoming,
                subject.clone(),
                "start node has an incoming edge",
            );
        }
        let from_decision = model.node(&e.from).is_some_and(|n| n.kind.is_decision());
        if from_decision && e.condition.as_deref().is_none_or(|c| c.trim().is_empty()) {
            report.push(
                IssueCode::MissingCondition,
                subject,
                "gateway branch has no condition label",
            );
        }
    }

    // Self-loops are reported separately; exclude them from the cycle check.
    if has_cycle(model) {
        report.push(IssueCode::Cycle, m.as_str(), "flow edges contain a cycle");
    }

    if let [start] = starts.as_slice() {
        let reached = reachable_nodes(model, start);
        for n in &model.nodes {
            if !reached.contains(n.id.as_str()) {
                report.push(
                    IssueCode::Unreachable,
                    at(&n.id),
                    "node is not reachable from the start node",
                );
            }
        }
    }

    for n in &model.nodes {
        let out = model.flow_edges.iter().filter(|e| e.from == n.id).count();
        if n.kind.is_gateway() && out < 2 {
            report.push(
                IssueCode::GatewayArity,
                at(&n.id),
                format!("{} has {out} outgoing edge(s), needs at least 2", n.kind),
            );
        }
        if n.kind == NodeKind::Start && out == 0 {
            report.push(IssueCode::StartArity, at(&n.id), "start node has no outgoing edge");
        }
    }

    let mut pairs: HashSet<(String, String)> = HashSet::new();
    for c in &model.complements_edges {
        let subject = format!("{m}/complements:{}<->{}", c.a, c.b);
        if c.a == c.b {
            report.push(IssueCode::SelfLoop, subject.clone(), "pattern cannot complement itself");
        }
        for end in [&c.a, &c.b] {
            if catalog.pattern(end).is_none() {
                report.push(
                    IssueCode::DanglingRef,
                    subject.clone(),
                    format!("unknown pattern `{end}`"),
                );
            } else if !pattern_nodes.contains_key(end.as_str()) {
                report.push(
                    IssueCode::ForeignComplement,
                    subject.clone(),
                    format!("pattern `{end}` is not part of this model"),
                );
            }
        }
        let (a, b) = c.key();
        if !pairs.insert((a.to_string(), b.to_string())) {
            report.push(IssueCode::DupId, subject, "duplicate complements pair");
        }
    }

    for n in &model.nodes {
        if let Some(p) = n.pattern_ref.as_deref().and_then(|p| catalog.pattern(p)) {
            if p.impacts.is_empty() {
                report.push(
                    IssueCode::NoImpacts,
                    format!("pattern:{}", p.id),
                    "pattern has no quality-attribute impacts",
                );
            }
        }
    }
    for p in catalog.patterns.iter().filter(|p| p.area == m) {
        if !pattern_nodes.contains_key(p.id.as_str()) {
            report.push(
                IssueCode::IsolatedPattern,
                format!("pattern:{}", p.id),
                format!("pattern is not placed in the `{m}` model"),
            );
        }
    }

    report
}

/// Checks the QA and pattern catalogs themselves, independent of any model.
pub fn validate_catalog(catalog: Catalog<'_>) -> ValidationReport {
    let mut report = ValidationReport::default();

    let mut names: HashMap<&str, &str> = HashMap::new();
    for qa in catalog.qas {
        if !is_kebab_id(&qa.id) {
            report.push(
                IssueCode::BadId,
                format!("qa:{}", qa.id),
                "id is not lowercase kebab-case",
            );
        }
        if names.insert(qa.id.as_str(), qa.id.as_str()).is_some() {
            report.push(
                IssueCode::DupId,
                format!("qa:{}", qa.id),
                "duplicate quality attribute id",
            );
        }
    }
    for qa in catalog.qas {
        for alias in &qa.aliases {
            if let Some(owner) = names.insert(alias.as_str(), qa.id.as_str()) {
                report.push(
                    IssueCode::AliasCollision,
                    format!("qa:{}", qa.id),
                    format!("alias `{alias}` collides with `{owner}`"),
                );
            }
        }
    }

    let qa_ids: HashSet<&str> = catalog.qas.iter().map(|q| q.id.as_str()).collect();
    let mut pattern_ids = HashSet::new();
    for p in catalog.patterns {
        let subject = format!("pattern:{}", p.id);
        if !is_kebab_id(&p.id) {
            report.push(IssueCode::BadId, subject.clone(), "id is not lowercase kebab-case");
        }
        if !pattern_ids.insert(p.id.as_str()) {
            report.push(IssueCode::DupId, subject.clone(), "duplicate pattern id");
        }
        let mut seen = BTreeSet::new();
        for imp in &p.impacts {
            if !qa_ids.contains(imp.qa.as_str()) {
                report.push(
                    IssueCode::DanglingRef,
                    subject.clone(),
                    format!("unknown quality attribute `{}`", imp.qa),
                );
            }
            if !seen.insert(imp.qa.as_str()) {
                report.push(
                    IssueCode::DupImpact,
                    subject.clone(),
                    format!("more than one impact on `{}`", imp.qa),
                );
            }
        }
    }
    report
}

fn has_cycle(model: &DecisionModel) -> bool {
    let looped = DecisionModel {
        flow_edges: model.flow_edges.iter().filter(|e| e.from != e.to).cloned().collect(),
        ..model.clone()
    };
    // duplicate node ids would confuse the index; dedupe first
    let mut seen = HashSet::new();
    let nodes = looped
        .nodes
        .iter()
        .filter(|n| seen.insert(n.id.clone()))
        .cloned()
        .collect();
    DecisionModel { nodes, ..looped }.topological_order().is_none()
}

fn reachable_nodes<'a>(model: &'a DecisionModel, start: &'a str) -> HashSet<&'a str> {
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(id) = queue.pop_front() {
        for e in model.flow_edges.iter().filter(|e| e.from == id) {
            if seen.insert(e.to.as_str()) {
                queue.push_back(e.to.as_str());
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ComplementsEdge, DesignArea, FlowEdge, Node, Polarity, QaImpact};

    fn catalog() -> (Vec<QualityAttribute>, Vec<Pattern>) {
        let qas = vec![QualityAttribute::new("latency", "Latency")];
        let patterns = ["a", "b"]
            .iter()
            .map(|id| Pattern {
                id: id.to_string(),
                name: id.to_uppercase(),
                area: DesignArea::Discovery,
                summary: String::new(),
                impacts: vec![QaImpact {
                    qa: "latency".into(),
                    polarity: Polarity::Negative,
                    note: None,
                }],
                constraints: vec![],
                sources: vec![],
            })
            .collect();
        (qas, patterns)
    }

    fn model() -> DecisionModel {
        DecisionModel {
            id: DesignArea::Discovery,
            title: "t".into(),
            nodes: vec![
                Node::start("s"),
                Node::gateway("g", NodeKind::GatewayExclusive, "which?"),
                Node::pattern("pa", "a"),
                Node::pattern("pb", "b"),
            ],
            flow_edges: vec![
                FlowEdge::new("s", "g", None),
                FlowEdge::new("g", "pa", Some("x")),
                FlowEdge::new("g", "pb", Some("y")),
            ],
            complements_edges: vec![ComplementsEdge::new("a", "b")],
        }
    }

    #[test]
    fn clean_model_has_no_issues() {
        let (q, p) = catalog();
        let r = validate_model(&model(), Catalog::new(&q, &p));
        assert_eq!(r, ValidationReport::default(), "{r}");
    }

    #[test]
    fn single_branch_exclusive_gateway() {
        let (q, p) = catalog();
        let mut m = model();
        m.flow_edges.retain(|e| e.to != "pb");
        m.flow_edges.push(FlowEdge::new("s", "pb", None));
        let r = validate_model(&m, Catalog::new(&q, &p));
        assert_eq!(r.errors.len(), 1, "{r}");
        assert_eq!(r.errors[0].code, IssueCode::GatewayArity);
    }

    #[test]
    fn complement_to_absent_pattern() {
        let (q, p) = catalog();
        let mut m = model();
        m.complements_edges.push(ComplementsEdge::new("a", "ghost"));
        let r = validate_model(&m, Catalog::new(&q, &p));
        assert!(r.has(IssueCode::DanglingRef));
        assert_eq!(r.errors.len(), 1, "{r}");
    }

    #[test]
    fn back_edge_is_a_cycle() {
        let (q, p) = catalog();
        let mut m = model();
        m.flow_edges.push(FlowEdge::new("pa", "g", None));
        let r = validate_model(&m, Catalog::new(&q, &p));
        assert!(r.has(IssueCode::Cycle));
    }

    #[test]
    fn self_loop_is_not_reported_as_cycle() {
        let (q, p) = catalog();
        let mut m = model();
        m.flow_edges.push(FlowEdge::new("pa", "pa", None));
        let r = validate_model(&m, Catalog::new(&q, &p));
        assert!(r.has(IssueCode::SelfLoop));
        assert!(!r.has(IssueCode::Cycle));
    }

    #[test]
    fn isolated_and_impactless_patterns_warn() {
        let (q, mut p) = catalog();
        p[0].impacts.clear();
        let mut extra = p[1].clone();
        extra.id = "c".into();
        p.push(extra);
        let r = validate_model(&model(), Catalog::new(&q, &p));
        assert!(r.is_valid());
        assert_eq!(r.count(IssueCode::NoImpacts), 1);
        assert_eq!(r.count(IssueCode::IsolatedPattern), 1);
    }

    #[test]
    fn catalog_alias_collision_and_dup_impact() {
        let (mut q, mut p) = catalog();
        q.push(QualityAttribute::new("resilience", "Resilience").with_alias("latency"));
        let dup = p[0].impacts[0].clone();
        p[0].impacts.push(dup);
        let r = validate_catalog(Catalog::new(&q, &p));
        assert!(r.has(IssueCode::AliasCollision));
        assert!(r.has(IssueCode::DupImpact));
    }

    #[test]
    fn kebab_ids() {
        assert!(is_kebab_id("3rd-party-registration"));
        assert!(is_kebab_id("api-gateway"));
        assert!(!is_kebab_id("Api-gateway"));
        assert!(!is_kebab_id("a--b"));
        assert!(!is_kebab_id("-a"));
        assert!(!is_kebab_id(""));
    }
}
