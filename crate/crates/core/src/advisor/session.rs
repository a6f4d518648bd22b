//! Token-driven walkthrough of a decision model.
//!
//! A session starts with one token on the start node. Tokens move on their
//! own through start, pattern and parallel-gateway nodes: a pattern node adds
//! its pattern to the selection and forwards, a parallel gateway fans out to
//! every branch. Tokens stop at exclusive and inclusive gateways, which stay
//! pending until [`Session::apply_answer`] picks their branches. The session
//! is complete once no token remains.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::tradeoff::{complements_closure, surfaced_constraints, tradeoff_report, SurfacedConstraint, TradeoffReport};
use crate::error::{AdvisorError, NotFound};
use crate::kb::KnowledgeBase;
use crate::model::{DecisionModel, DesignArea, NodeKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SessionStatus {
    AwaitingDecision,
    Complete,
}

/// One answered gateway. Edges are named by their target node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Decision {
    pub gateway: String,
    pub edges: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecisionOption {
    pub edge: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PendingDecision {
    pub gateway: String,
    pub kind: NodeKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub question: Option<String>,
    pub options: Vec<DecisionOption>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Session {
    id: String,
    model: DesignArea,
    /// Node indices holding a token.
    tokens: BTreeSet<usize>,
    /// Node indices of selected pattern nodes.
    selected: BTreeSet<usize>,
    log: Vec<Decision>,
    emitted: u64,
    consumed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionResult {
    pub session: String,
    pub model: DesignArea,
    pub selected: Vec<String>,
    pub constraints: Vec<SurfacedConstraint>,
    pub suggestions: Vec<String>,
    pub tradeoff: TradeoffReport,
    pub decision_log: Vec<Decision>,
}

impl Session {
    /// Starts a walkthrough with a fresh random id.
    pub fn start(kb: &KnowledgeBase, model: &str) -> Result<Session, AdvisorError> {
        Self::start_with_id(kb, model, uuid::Uuid::new_v4().simple().to_string())
    }

    pub fn start_with_id(kb: &KnowledgeBase, model: &str, id: String) -> Result<Session, AdvisorError> {
        let m = kb.model_by_id(model)?;
        let start = m
            .nodes
            .iter()
            .position(|n| n.kind == NodeKind::Start)
            .ok_or_else(|| NotFound::node(m.id, "start"))?;
        let mut s = Session {
            id,
            model: m.id,
            tokens: BTreeSet::new(),
            selected: BTreeSet::new(),
            log: Vec::new(),
            emitted: 0,
            consumed: 0,
        };
        s.emit(start);
        s.advance(m);
        Ok(s)
    }

    /// Rebuilds a session by replaying a decision log from the start.
    pub fn replay(kb: &KnowledgeBase, model: &str, log: &[Decision]) -> Result<Session, AdvisorError> {
        let mut s = Session::start(kb, model)?;
        for d in log {
            s.apply_answer(kb, &d.gateway, &d.edges)?;
        }
        Ok(s)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn model(&self) -> DesignArea {
        self.model
    }

    pub fn status(&self) -> SessionStatus {
        if self.tokens.is_empty() {
            SessionStatus::Complete
        } else {
            SessionStatus::AwaitingDecision
        }
    }

    pub fn is_complete(&self) -> bool {
        self.status() == SessionStatus::Complete
    }

    pub fn decision_log(&self) -> &[Decision] {
        &self.log
    }

    /// Tokens created so far, counting the initial one.
    pub fn tokens_emitted(&self) -> u64 {
        self.emitted
    }

    /// Tokens consumed at nodes, including tokens absorbed when two arrive at
    /// the same node.
    pub fn tokens_consumed(&self) -> u64 {
        self.consumed
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }

    fn model_of<'a>(&self, kb: &'a KnowledgeBase) -> Result<&'a DecisionModel, AdvisorError> {
        Ok(kb
            .model(self.model)
            .ok_or_else(|| NotFound::model(self.model.as_str()))?)
    }

    /// Node ids holding a token, in declaration order.
    pub fn token_nodes<'a>(&self, kb: &'a KnowledgeBase) -> Vec<&'a str> {
        let Some(m) = kb.model(self.model) else {
            return Vec::new();
        };
        self.tokens.iter().map(|&i| m.nodes[i].id.as_str()).collect()
    }

    /// Selected pattern ids, in node declaration order.
    pub fn selected<'a>(&self, kb: &'a KnowledgeBase) -> Vec<&'a str> {
        let Some(m) = kb.model(self.model) else {
            return Vec::new();
        };
        self.selected
            .iter()
            .filter_map(|&i| m.nodes[i].pattern_ref.as_deref())
            .collect()
    }

    pub fn pending_decisions(&self, kb: &KnowledgeBase) -> Vec<PendingDecision> {
        let Some(m) = kb.model(self.model) else {
            return Vec::new();
        };
        self.tokens
            .iter()
            .map(|&i| {
                let node = &m.nodes[i];
                PendingDecision {
                    gateway: node.id.clone(),
                    kind: node.kind,
                    question: node.label.clone(),
                    options: m
                        .flow_edges
                        .iter()
                        .filter(|e| e.from == node.id)
                        .map(|e| DecisionOption {
                            edge: e.to.clone(),
                            condition: e.condition.clone(),
                        })
                        .collect(),
                }
            })
            .collect()
    }

    /// Answers a pending gateway. Nothing changes if the answer is rejected.
    pub fn apply_answer<S: AsRef<str>>(
        &mut self,
        kb: &KnowledgeBase,
        gateway: &str,
        edges: &[S],
    ) -> Result<(), AdvisorError> {
        let m = self.model_of(kb)?;
        let idx = m
            .node_position(gateway)
            .filter(|i| self.tokens.contains(i))
            .ok_or_else(|| AdvisorError::NotPending(gateway.to_string()))?;
        let node = &m.nodes[idx];

        let outgoing: Vec<&str> = m
            .flow_edges
            .iter()
            .filter(|e| e.from == node.id)
            .map(|e| e.to.as_str())
            .collect();
        let mut chosen = BTreeSet::new();
        for e in edges {
            let e = e.as_ref();
            let pos = outgoing
                .iter()
                .position(|o| *o == e)
                .ok_or_else(|| AdvisorError::BadEdge {
                    gateway: gateway.to_string(),
                    edge: e.to_string(),
                })?;
            chosen.insert(pos);
        }
        let lawful = match node.kind {
            NodeKind::GatewayExclusive => chosen.len() == 1,
            NodeKind::GatewayInclusive => !chosen.is_empty(),
            _ => false,
        };
        if !lawful {
            return Err(AdvisorError::ChoiceArity {
                gateway: gateway.to_string(),
                kind: node.kind,
                given: chosen.len(),
            });
        }

        self.tokens.remove(&idx);
        self.consumed += 1;
        let targets: Vec<&str> = chosen.iter().map(|&p| outgoing[p]).collect();
        for t in &targets {
            if let Some(ti) = m.node_position(t) {
                self.emit(ti);
            }
        }
        self.log.push(Decision {
            gateway: gateway.to_string(),
            edges: targets.iter().map(|t| t.to_string()).collect(),
        });
        self.advance(m);
        Ok(())
    }

    fn emit(&mut self, node: usize) {
        self.emitted += 1;
        if !self.tokens.insert(node) {
            // joins with the token already waiting there
            self.consumed += 1;
        }
    }

    /// Moves tokens through every node that needs no decision.
    fn advance(&mut self, m: &DecisionModel) {
        while let Some(idx) = self.tokens.iter().copied().find(|&i| !m.nodes[i].kind.is_decision()) {
            self.tokens.remove(&idx);
            self.consumed += 1;
            let node = &m.nodes[idx];
            if node.kind == NodeKind::Pattern {
                self.selected.insert(idx);
            }
            let targets: Vec<usize> = m
                .flow_edges
                .iter()
                .filter(|e| e.from == node.id)
                .filter_map(|e| m.node_position(&e.to))
                .collect();
            for t in targets {
                self.emit(t);
            }
        }
    }

    /// Selected patterns with their constraints, complement suggestions and
    /// trade-offs. Only available once every gateway is answered.
    pub fn result(&self, kb: &KnowledgeBase) -> Result<SessionResult, AdvisorError> {
        if !self.is_complete() {
            return Err(AdvisorError::Incomplete(
                self.token_nodes(kb).into_iter().map(str::to_string).collect(),
            ));
        }
        let selected: Vec<String> = self.selected(kb).into_iter().map(str::to_string).collect();
        let suggestions = complements_closure(kb, self.model.as_str(), &selected)?
            .into_iter()
            .collect();
        Ok(SessionResult {
            session: self.id.clone(),
            model: self.model,
            constraints: surfaced_constraints(kb, &selected)?,
            suggestions,
            tradeoff: tradeoff_report(kb, &selected)?,
            selected,
            decision_log: self.log.clone(),
        })
    }
}
