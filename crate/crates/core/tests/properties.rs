use std::collections::BTreeSet;

use msa_advisor_core::advisor::{complements_closure, score_patterns, tradeoff_report, QaWeights, Session};
use msa_advisor_core::kb::{builtin_kb, load_kb, serialize_kb, validate_kb, KbData};
use msa_advisor_core::model::{DesignArea, FlowEdge, NodeKind, Polarity};
use msa_advisor_core::KnowledgeBase;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::sample::Index;

fn kb() -> &'static KnowledgeBase {
    use std::sync::OnceLock;
    static KB: OnceLock<KnowledgeBase> = OnceLock::new();
    KB.get_or_init(builtin_kb)
}

fn area() -> impl Strategy<Value = DesignArea> {
    prop::sample::select(DesignArea::ALL.to_vec())
}

fn scope() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["decomposition", "security", "communication", "discovery", "all"])
}

fn weights() -> impl Strategy<Value = QaWeights> {
    let n = kb().qa_catalog().len();
    prop::collection::vec(prop::option::of((0i64..=1000, 1i64..=1000)), n).prop_map(|ws| {
        let mut w = QaWeights::new();
        for (qa, v) in kb().qa_catalog().iter().zip(ws) {
            if let Some((num, den)) = v {
                w.set_exact(kb(), &qa.id, BigRational::new(num.into(), den.into()))
                    .unwrap();
            }
        }
        w
    })
}

/// Drives a session with arbitrary but lawful answers until it completes.
fn walk(area: DesignArea, picks: &[(Index, u32)]) -> Session {
    let kb = kb();
    let mut s = Session::start(kb, area.as_str()).unwrap();
    let mut i = 0;
    while let Some(p) = s.pending_decisions(kb).into_iter().next() {
        let (idx, mask) = picks[i % picks.len()];
        i += 1;
        let opts: Vec<&str> = p.options.iter().map(|o| o.edge.as_str()).collect();
        let chosen: Vec<&str> = match p.kind {
            NodeKind::GatewayExclusive => vec![opts[idx.index(opts.len())]],
            _ => {
                let mut c: Vec<&str> = opts
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << k) != 0)
                    .map(|(_, o)| *o)
                    .collect();
                if c.is_empty() {
                    c.push(opts[idx.index(opts.len())]);
                }
                c
            }
        };
        s.apply_answer(kb, &p.gateway, &chosen).unwrap();
        assert!(i < 100, "walkthrough did not terminate");
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn scaling_preserves_order_and_scales_scores(w in weights(), scope in scope(), num in 1i64..500, den in 1i64..500) {
        let c = BigRational::new(BigInt::from(num), BigInt::from(den));
        let base = score_patterns(kb(), scope, &w).unwrap();
        let scaled = score_patterns(kb(), scope, &w.scaled(&c)).unwrap();
        prop_assert_eq!(base.pattern_order(), scaled.pattern_order());
        for e in &base.entries {
            prop_assert_eq!(&(&e.score * &c), scaled.score_of(&e.pattern).unwrap());
        }
    }

    #[test]
    fn scores_are_additive(w1 in weights(), w2 in weights(), scope in scope()) {
        let a = score_patterns(kb(), scope, &w1).unwrap();
        let b = score_patterns(kb(), scope, &w2).unwrap();
        let ab = score_patterns(kb(), scope, &w1.sum(&w2)).unwrap();
        for e in &ab.entries {
            prop_assert_eq!(&e.score, &(a.score_of(&e.pattern).unwrap() + b.score_of(&e.pattern).unwrap()));
        }
    }

    #[test]
    fn ranking_is_sorted_and_contributions_positive(w in weights(), scope in scope()) {
        let r = score_patterns(kb(), scope, &w).unwrap();
        for pair in r.entries.windows(2) {
            let (x, y) = (&pair[0], &pair[1]);
            prop_assert!(
                x.score > y.score
                    || (x.score == y.score && x.positive_impacts > y.positive_impacts)
                    || (x.score == y.score && x.positive_impacts == y.positive_impacts && x.name <= y.name)
            );
        }
        for e in &r.entries {
            prop_assert!(e.contributions.iter().all(|c| c.weight > BigRational::from_integer(0.into())));
        }
    }

    #[test]
    fn lawful_walks_conserve_tokens_and_replay(area in area(), picks in prop::collection::vec((any::<Index>(), any::<u32>()), 1..8)) {
        let s = walk(area, &picks);
        prop_assert!(s.is_complete());
        prop_assert_eq!(s.token_count(), 0);
        prop_assert_eq!(s.tokens_emitted(), s.tokens_consumed());
        let m = kb().model(area).unwrap();
        for d in s.decision_log() {
            match m.node(&d.gateway).unwrap().kind {
                NodeKind::GatewayExclusive => prop_assert_eq!(d.edges.len(), 1),
                NodeKind::GatewayInclusive => prop_assert!(!d.edges.is_empty()),
                k => prop_assert!(false, "answered non-decision node {:?}", k),
            }
        }
        let again = Session::replay(kb(), area.as_str(), s.decision_log()).unwrap();
        prop_assert_eq!(again.selected(kb()), s.selected(kb()));
        if area == DesignArea::Discovery {
            prop_assert!(s.selected(kb()).contains(&"service-registry"));
        }
        let res = s.result(kb()).unwrap();
        let picked: BTreeSet<&str> = res.selected.iter().map(String::as_str).collect();
        prop_assert!(res.suggestions.iter().all(|p| !picked.contains(p.as_str())));
    }

    #[test]
    fn partial_walks_conserve_tokens(area in area(), picks in prop::collection::vec((any::<Index>(), any::<u32>()), 1..8), stop in 0usize..4) {
        let kb = kb();
        let mut s = Session::start(kb, area.as_str()).unwrap();
        for (k, (idx, _)) in picks.iter().take(stop).enumerate() {
            let Some(p) = s.pending_decisions(kb).into_iter().next() else { break };
            let edge = p.options[idx.index(p.options.len())].edge.clone();
            s.apply_answer(kb, &p.gateway, &[edge]).unwrap();
            prop_assert!(k < 100);
        }
        prop_assert_eq!(s.tokens_emitted(), s.tokens_consumed() + s.token_count() as u64);
    }

    #[test]
    fn conflicts_follow_counts(set in prop::collection::btree_set(0usize..33, 0..6)) {
        let ids: Vec<String> = set.iter().map(|&i| kb().patterns()[i].id.clone()).collect();
        let r = tradeoff_report(kb(), &ids).unwrap();
        for qa in kb().qa_catalog() {
            let plus = ids.iter().any(|p| kb().pattern(p).unwrap().impact_on(&qa.id).is_some_and(|i| i.polarity == Polarity::Positive));
            let minus = ids.iter().any(|p| kb().pattern(p).unwrap().impact_on(&qa.id).is_some_and(|i| i.polarity == Polarity::Negative));
            prop_assert_eq!(r.conflicts.contains(&qa.id), plus && minus);
        }
        for c in &r.constraints {
            prop_assert!(ids.contains(&c.pattern));
            prop_assert!(kb().pattern(&c.pattern).unwrap().constraints.contains(&c.constraint));
        }
    }

    #[test]
    fn disconnecting_edge_drop_breaks_validity(area in area(), pick in any::<Index>()) {
        let mut data = kb().data().clone();
        let m = data.models.iter_mut().find(|m| m.id == area).unwrap();
        let i = pick.index(m.flow_edges.len());
        let target = m.flow_edges[i].to.clone();
        // join nodes stay reachable through their other inbound edge
        prop_assume!(m.flow_predecessors(&target).len() == 1);
        m.flow_edges.remove(i);
        prop_assert!(!validate_kb(&data).is_valid());
    }

    #[test]
    fn back_edge_breaks_validity(area in area(), pick in any::<Index>()) {
        let mut data = kb().data().clone();
        let m = data.models.iter_mut().find(|m| m.id == area).unwrap();
        let e = m.flow_edges[pick.index(m.flow_edges.len())].clone();
        m.flow_edges.push(FlowEdge::new(&e.to, &e.from, None));
        prop_assert!(!validate_kb(&data).is_valid());
    }

    #[test]
    fn duplicate_node_id_breaks_validity(area in area(), a in any::<Index>(), b in any::<Index>()) {
        let mut data = kb().data().clone();
        let m = data.models.iter_mut().find(|m| m.id == area).unwrap();
        let (i, j) = (a.index(m.nodes.len()), b.index(m.nodes.len()));
        prop_assume!(i != j);
        let id = m.nodes[i].id.clone();
        m.nodes[j].id = id;
        let report = validate_kb(&data);
        prop_assert!(!report.is_valid());
    }
}

#[test]
fn closure_is_symmetric() {
    let kb = kb();
    for m in kb.models() {
        let ids = m.pattern_ids();
        for p in &ids {
            for q in &ids {
                if p == q {
                    continue;
                }
                let pq = complements_closure(kb, m.id.as_str(), &[q]).unwrap().contains(*p);
                let qp = complements_closure(kb, m.id.as_str(), &[p]).unwrap().contains(*q);
                assert_eq!(pq, qp, "{p} / {q}");
            }
        }
        for e in &m.complements_edges {
            assert!(m.complements_of(&e.a).contains(&e.b.as_str()));
            assert!(m.complements_of(&e.b).contains(&e.a.as_str()));
        }
    }
}

#[test]
fn reachability_closure_at_start() {
    let kb = kb();
    for m in kb.models() {
        let start = m.start_node().unwrap();
        let mut union = BTreeSet::new();
        for e in m.flow_successors(&start.id).unwrap() {
            union.extend(m.reachable_patterns(&e.to).unwrap());
        }
        assert_eq!(m.reachable_patterns(&start.id).unwrap(), union);
        let all: BTreeSet<String> = m.pattern_ids().into_iter().map(str::to_string).collect();
        assert_eq!(union, all, "{}", m.id);
        assert!(m.topological_order().is_some());
    }
}

#[test]
fn serialized_kb_round_trips() {
    let text = serialize_kb(kb());
    let back = load_kb(&text).unwrap();
    assert_eq!(&back, kb());
    assert_eq!(serialize_kb(&back), text);
    let data: KbData = serde_json::from_str(&text).unwrap();
    assert_eq!(&data, kb().data());
}
