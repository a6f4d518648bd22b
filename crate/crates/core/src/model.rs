//! Domain types for decision models.
//!
//! A decision model is a directed acyclic graph of start, gateway and pattern
//! nodes joined by condition-labelled flow edges, plus an undirected
//! "complements" relation between pattern pairs. The serde representation of
//! every type here is the on-disk knowledge base format.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::NotFound;

/// One of the four design areas covered by the knowledge base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignArea {
    Decomposition,
    Security,
    Communication,
    Discovery,
}

impl DesignArea {
    pub const ALL: [DesignArea; 4] = [
        DesignArea::Decomposition,
        DesignArea::Security,
        DesignArea::Communication,
        DesignArea::Discovery,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DesignArea::Decomposition => "decomposition",
            DesignArea::Security => "security",
            DesignArea::Communication => "communication",
            DesignArea::Discovery => "discovery",
        }
    }
}

impl fmt::Display for DesignArea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DesignArea {
    type Err = NotFound;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DesignArea::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| NotFound::model(s))
    }
}

/// A quality attribute with its canonical id and accepted spelling variants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QualityAttribute {
    pub id: String,
    pub display_name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
}

impl QualityAttribute {
    pub fn new(id: &str, display_name: &str) -> Self {
        QualityAttribute {
            id: id.to_string(),
            display_name: display_name.to_string(),
            aliases: Vec::new(),
        }
    }

    pub fn with_alias(mut self, alias: &str) -> Self {
        self.aliases.push(alias.to_string());
        self
    }
}

/// Direction of a pattern's effect on a quality attribute. `+` is a benefit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Polarity {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Polarity {
    pub fn sign(self) -> i64 {
        match self {
            Polarity::Positive => 1,
            Polarity::Negative => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Polarity::Positive => "+",
            Polarity::Negative => "-",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QaImpact {
    pub qa: String,
    pub polarity: Polarity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A named reusable solution within one design area.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pattern {
    pub id: String,
    pub name: String,
    pub area: DesignArea,
    pub summary: String,
    #[serde(default)]
    pub impacts: Vec<QaImpact>,
    #[serde(default)]
    pub constraints: Vec<String>,
    #[serde(default)]
    pub sources: Vec<String>,
}

impl Pattern {
    pub fn positive_impacts(&self) -> usize {
        self.impacts.iter().filter(|i| i.polarity == Polarity::Positive).count()
    }

    pub fn impact_on(&self, qa: &str) -> Option<&QaImpact> {
        self.impacts.iter().find(|i| i.qa == qa)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Start,
    GatewayExclusive,
    GatewayInclusive,
    GatewayParallel,
    Pattern,
}

impl NodeKind {
    pub fn is_gateway(self) -> bool {
        matches!(
            self,
            NodeKind::GatewayExclusive | NodeKind::GatewayInclusive | NodeKind::GatewayParallel
        )
    }

    /// Gateways that stop a walkthrough until someone answers them.
    pub fn is_decision(self) -> bool {
        matches!(self, NodeKind::GatewayExclusive | NodeKind::GatewayInclusive)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Start => "start",
            NodeKind::GatewayExclusive => "gateway_exclusive",
            NodeKind::GatewayInclusive => "gateway_inclusive",
            NodeKind::GatewayParallel => "gateway_parallel",
            NodeKind::Pattern => "pattern",
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
    #[serde(rename = "pattern", default, skip_serializing_if = "Option::is_none")]
    pub pattern_ref: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Node {
    pub fn start(id: &str) -> Self {
        Node {
            id: id.to_string(),
            kind: NodeKind::Start,
            pattern_ref: None,
            label: None,
        }
    }

    pub fn gateway(id: &str, kind: NodeKind, question: &str) -> Self {
        Node {
            id: id.to_string(),
            kind,
            pattern_ref: None,
            label: Some(question.to_string()),
        }
    }

    pub fn pattern(id: &str, pattern: &str) -> Self {
        Node {
            id: id.to_string(),
            kind: NodeKind::Pattern,
            pattern_ref: Some(pattern.to_string()),
            label: None,
        }
    }
}

/// A directed decision-flow edge. Within one model an edge is identified by
/// its `(from, to)` pair, so the answer to a gateway is named by target node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowEdge {
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
}

impl FlowEdge {
    pub fn new(from: &str, to: &str, condition: Option<&str>) -> Self {
        FlowEdge {
            from: from.to_string(),
            to: to.to_string(),
            condition: condition.map(str::to_string),
        }
    }
}

/// Unordered pair of pattern ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplementsEdge {
    pub a: String,
    pub b: String,
}

impl ComplementsEdge {
    pub fn new(a: &str, b: &str) -> Self {
        ComplementsEdge {
            a: a.to_string(),
            b: b.to_string(),
        }
    }

    pub fn touches(&self, pattern: &str) -> bool {
        self.a == pattern || self.b == pattern
    }

    /// The endpoint opposite `pattern`, if `pattern` is one of the two.
    pub fn other(&self, pattern: &str) -> Option<&str> {
        if self.a == pattern {
            Some(&self.b)
        } else if self.b == pattern {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Canonical (sorted) form of the pair.
    pub fn key(&self) -> (&str, &str) {
        if self.a <= self.b {
            (&self.a, &self.b)
        } else {
            (&self.b, &self.a)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecisionModel {
    pub id: DesignArea,
    pub title: String,
    #[serde(default)]
    pub nodes: Vec<Node>,
    #[serde(rename = "edges", default)]
    pub flow_edges: Vec<FlowEdge>,
    #[serde(rename = "complements", default)]
    pub complements_edges: Vec<ComplementsEdge>,
}

impl DecisionModel {
    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn start_node(&self) -> Option<&Node> {
        self.nodes.iter().find(|n| n.kind == NodeKind::Start)
    }

    /// Node declaration index, used as the stable ordering key.
    pub fn node_position(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    /// Node that carries `pattern`.
    pub fn pattern_node(&self, pattern: &str) -> Option<&Node> {
        self.nodes
            .iter()
            .find(|n| n.kind == NodeKind::Pattern && n.pattern_ref.as_deref() == Some(pattern))
    }

    /// Pattern ids in node declaration order.
    pub fn pattern_ids(&self) -> Vec<&str> {
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Pattern)
            .filter_map(|n| n.pattern_ref.as_deref())
            .collect()
    }

    pub fn references_pattern(&self, pattern: &str) -> bool {
        self.pattern_node(pattern).is_some()
    }

    /// Outgoing flow edges of `node`, in serialization order.
    pub fn flow_successors(&self, node: &str) -> Result<Vec<&FlowEdge>, NotFound> {
        if self.node(node).is_none() {
            return Err(NotFound::node(self.id, node));
        }
        Ok(self.flow_edges.iter().filter(|e| e.from == node).collect())
    }

    pub fn flow_predecessors(&self, node: &str) -> Vec<&FlowEdge> {
        self.flow_edges.iter().filter(|e| e.to == node).collect()
    }

    /// Patterns reachable from `node` (inclusive) over flow edges only.
    pub fn reachable_patterns(&self, node: &str) -> Result<BTreeSet<String>, NotFound> {
        if self.node(node).is_none() {
            return Err(NotFound::node(self.id, node));
        }
        let mut seen = BTreeSet::new();
        let mut out = BTreeSet::new();
        let mut queue = VecDeque::from([node.to_string()]);
        while let Some(id) = queue.pop_front() {
            if !seen.insert(id.clone()) {
                continue;
            }
            if let Some(n) = self.node(&id) {
                if n.kind == NodeKind::Pattern {
                    if let Some(p) = &n.pattern_ref {
                        out.insert(p.clone());
                    }
                }
            }
            for e in self.flow_edges.iter().filter(|e| e.from == id) {
                queue.push_back(e.to.clone());
            }
        }
        Ok(out)
    }

    /// Patterns paired with `pattern` by a complements edge, sorted.
    pub fn complements_of(&self, pattern: &str) -> Vec<&str> {
        let mut v: Vec<&str> = self.complements_edges.iter().filter_map(|c| c.other(pattern)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Kahn topological order over flow edges, or `None` if there is a cycle.
    /// Edges whose endpoints are missing are ignored.
    pub fn topological_order(&self) -> Option<Vec<&str>> {
        let index: HashMap<&str, usize> = self.nodes.iter().enumerate().map(|(i, n)| (n.id.as_str(), i)).collect();
        let mut indegree = vec![0usize; self.nodes.len()];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        for e in &self.flow_edges {
            if let (Some(&f), Some(&t)) = (index.get(e.from.as_str()), index.get(e.to.as_str())) {
                adj[f].push(t);
                indegree[t] += 1;
            }
        }
        let mut queue: VecDeque<usize> = (0..self.nodes.len()).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(i) = queue.pop_front() {
            order.push(self.nodes[i].id.as_str());
            for &t in &adj[i] {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        (order.len() == self.nodes.len()).then_some(order)
    }

    /// Every start-to-node path, each given as the flow edges it traverses.
    /// Only meaningful on an acyclic model.
    pub fn paths_to(&self, target: &str) -> Vec<Vec<&FlowEdge>> {
        let Some(start) = self.start_node() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut stack: Vec<&FlowEdge> = Vec::new();
        self.collect_paths(&start.id, target, &mut stack, &mut out, 0);
        out
    }

    fn collect_paths<'a>(
        &'a self,
        at: &str,
        target: &str,
        stack: &mut Vec<&'a FlowEdge>,
        out: &mut Vec<Vec<&'a FlowEdge>>,
        depth: usize,
    ) {
        if at == target {
            out.push(stack.clone());
            return;
        }
        // bail out on cyclic input
        if depth > self.nodes.len() {
            return;
        }
        for e in self.flow_edges.iter().filter(|e| e.from == at) {
            stack.push(e);
            self.collect_paths(&e.to, target, stack, out, depth + 1);
            stack.pop();
        }
    }
}
