use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{AdvisorError, NotFound};
use crate::kb::KnowledgeBase;
use crate::model::{Pattern, Polarity};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contributor {
    pub pattern: String,
    pub polarity: Polarity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QaTally {
    pub qa: String,
    pub plus_count: usize,
    pub minus_count: usize,
    pub net: i64,
    pub contributors: Vec<Contributor>,
}

impl QaTally {
    pub fn is_conflict(&self) -> bool {
        self.plus_count > 0 && self.minus_count > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfacedConstraint {
    pub pattern: String,
    pub constraint: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TradeoffReport {
    /// Tallies for every attribute touched by the set, in catalog order.
    pub qas: Vec<QaTally>,
    pub conflicts: Vec<String>,
    pub constraints: Vec<SurfacedConstraint>,
}

impl TradeoffReport {
    pub fn tally(&self, qa: &str) -> Option<&QaTally> {
        self.qas.iter().find(|t| t.qa == qa)
    }
}

/// Resolves ids, drops duplicates and orders by catalog position.
fn resolve_set<'a, S: AsRef<str>>(kb: &'a KnowledgeBase, patterns: &[S]) -> Result<Vec<&'a Pattern>, NotFound> {
    let mut positions = BTreeSet::new();
    for p in patterns {
        let p = p.as_ref();
        let pos = kb
            .patterns()
            .iter()
            .position(|c| c.id == p)
            .ok_or_else(|| NotFound::pattern(p))?;
        positions.insert(pos);
    }
    Ok(positions.into_iter().map(|i| &kb.patterns()[i]).collect())
}

/// Constraint texts of the given patterns, in catalog order.
pub fn surfaced_constraints<S: AsRef<str>>(
    kb: &KnowledgeBase,
    patterns: &[S],
) -> Result<Vec<SurfacedConstraint>, AdvisorError> {
    Ok(resolve_set(kb, patterns)?
        .into_iter()
        .flat_map(|p| {
            p.constraints.iter().map(|c| SurfacedConstraint {
                pattern: p.id.clone(),
                constraint: c.clone(),
            })
        })
        .collect())
}

/// Per-attribute plus/minus tallies over an arbitrary pattern set. An
/// attribute conflicts when it is both helped and hurt within the set.
pub fn tradeoff_report<S: AsRef<str>>(kb: &KnowledgeBase, patterns: &[S]) -> Result<TradeoffReport, AdvisorError> {
    let set = resolve_set(kb, patterns)?;
    let mut qas = Vec::new();
    for qa in kb.qa_catalog() {
        let contributors: Vec<Contributor> = set
            .iter()
            .filter_map(|p| {
                p.impact_on(&qa.id).map(|imp| Contributor {
                    pattern: p.id.clone(),
                    polarity: imp.polarity,
                })
            })
            .collect();
        if contributors.is_empty() {
            continue;
        }
        let plus_count = contributors.iter().filter(|c| c.polarity == Polarity::Positive).count();
        let minus_count = contributors.len() - plus_count;
        qas.push(QaTally {
            qa: qa.id.clone(),
            plus_count,
            minus_count,
            net: plus_count as i64 - minus_count as i64,
            contributors,
        });
    }
    let conflicts = qas.iter().filter(|t| t.is_conflict()).map(|t| t.qa.clone()).collect();
    Ok(TradeoffReport {
        qas,
        conflicts,
        constraints: surfaced_constraints(kb, patterns)?,
    })
}

/// One-hop complements neighbourhood of `patterns` within a model, minus the
/// input set itself.
pub fn complements_closure<S: AsRef<str>>(
    kb: &KnowledgeBase,
    model: &str,
    patterns: &[S],
) -> Result<BTreeSet<String>, AdvisorError> {
    let m = kb.model_by_id(model)?;
    let input: BTreeSet<&str> = patterns.iter().map(AsRef::as_ref).collect();
    for p in &input {
        if kb.pattern(p).is_none() {
            return Err(NotFound::pattern(p).into());
        }
        if !m.references_pattern(p) {
            return Err(AdvisorError::ForeignPattern {
                pattern: p.to_string(),
                model: m.id,
            });
        }
    }
    Ok(input
        .iter()
        .flat_map(|p| m.complements_of(p))
        .filter(|q| !input.contains(q))
        .map(str::to_string)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::builtin_kb;

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn service_per_team_neighbours() {
        let kb = builtin_kb();
        assert_eq!(
            complements_closure(&kb, "decomposition", &["service-per-team"]).unwrap(),
            set(&["decomposed-by-business-capabilities", "decomposed-by-subdomains"])
        );
    }

    #[test]
    fn asynchronous_messaging_neighbours() {
        let kb = builtin_kb();
        assert_eq!(
            complements_closure(&kb, "communication", &["asynchronous-messaging"]).unwrap(),
            set(&[
                "asynchronous-request-reply",
                "idempotent-consumer",
                "publish-asynchronous-messaging",
                "publish-subscribe-messaging",
            ])
        );
    }

    #[test]
    fn closure_excludes_input_and_rejects_foreign() {
        let kb = builtin_kb();
        let empty: [&str; 0] = [];
        assert!(complements_closure(&kb, "discovery", &empty).unwrap().is_empty());
        let c = complements_closure(
            &kb,
            "discovery",
            &["client-side-service-discovery", "self-registration"],
        )
        .unwrap();
        assert_eq!(c, set(&["microservice-chassis"]));
        let err = complements_closure(&kb, "discovery", &["api-gateway"]).unwrap_err();
        assert_eq!(err.code(), "E_FOREIGN_PATTERN");
        let err = complements_closure(&kb, "discovery", &["nope"]).unwrap_err();
        assert_eq!(err.code(), "E_NOT_FOUND");
    }

    #[test]
    fn sync_and_async_conflict_on_coupling() {
        let kb = builtin_kb();
        let r = tradeoff_report(&kb, &["synchronous-messaging", "asynchronous-messaging"]).unwrap();
        assert!(r.conflicts.contains(&"coupling".to_string()));
        let scal = r.tally("scalability").unwrap();
        assert_eq!((scal.plus_count, scal.minus_count, scal.net), (2, 0, 2));
        let coupling = r.tally("coupling").unwrap();
        assert_eq!(coupling.contributors.len(), 2);
    }

    #[test]
    fn api_gateway_alone() {
        let kb = builtin_kb();
        let r = tradeoff_report(&kb, &["api-gateway"]).unwrap();
        assert!(r.conflicts.is_empty());
        for qa in ["security", "availability", "portability"] {
            assert_eq!(r.tally(qa).unwrap().net, 1, "{qa}");
        }
        for qa in ["response-time", "complexity"] {
            assert_eq!(r.tally(qa).unwrap().net, -1, "{qa}");
        }
        assert_eq!(r.qas.len(), 5);
    }

    #[test]
    fn duplicates_and_unknowns() {
        let kb = builtin_kb();
        let once = tradeoff_report(&kb, &["api-gateway"]).unwrap();
        let twice = tradeoff_report(&kb, &["api-gateway", "api-gateway"]).unwrap();
        assert_eq!(once, twice);
        let err = tradeoff_report(&kb, &["api-gateway", "warp-drive"]).unwrap_err();
        assert_eq!(err, AdvisorError::NotFound(NotFound::pattern("warp-drive")));
    }

    #[test]
    fn constraints_come_from_selected_patterns() {
        let kb = builtin_kb();
        let r = tradeoff_report(&kb, &["edge-level-authorization", "service-per-team"]).unwrap();
        assert!(r.constraints.iter().any(|c| c.constraint.contains("defense-in-depth")));
        assert!(r.constraints.iter().any(|c| c.constraint.contains("5–9 people")));
        assert!(r
            .constraints
            .iter()
            .all(|c| c.pattern == "edge-level-authorization" || c.pattern == "service-per-team"));
    }
}
