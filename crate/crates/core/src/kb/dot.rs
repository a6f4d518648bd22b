use std::fmt::Write;

use crate::model::{DecisionModel, NodeKind, Polarity};
use crate::validate::Catalog;

/// Renders a model as a Graphviz digraph in the decision-model notation:
/// start as a circle, gateways as diamonds marked `X` / `O` / `+`, patterns as
/// rounded boxes listing their impacts, constraints as octagons hung off
/// dashed arrows, and complements as double-headed edges.
pub fn export_dot(model: &DecisionModel, catalog: Catalog<'_>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", model.id).unwrap();
    writeln!(
        out,
        "    graph [label=\"{}\", labelloc=t, rankdir=LR, fontname=\"Helvetica\"];",
        escape(&model.title)
    )
    .unwrap();
    writeln!(out, "    node [fontname=\"Helvetica\"];").unwrap();
    writeln!(out, "    edge [fontname=\"Helvetica\", fontsize=10];").unwrap();
    writeln!(out).unwrap();

    let mut constraint_edges = Vec::new();
    for node in &model.nodes {
        let id = escape(&node.id);
        match node.kind {
            NodeKind::Start => {
                writeln!(out, "    \"{id}\" [shape=circle, label=\"\", width=0.3];").unwrap();
            }
            NodeKind::GatewayExclusive | NodeKind::GatewayInclusive | NodeKind::GatewayParallel => {
                let mark = match node.kind {
                    NodeKind::GatewayExclusive => "X",
                    NodeKind::GatewayInclusive => "O",
                    _ => "+",
                };
                let question = node.label.as_deref().unwrap_or("");
                writeln!(
                    out,
                    "    \"{id}\" [shape=diamond, label=\"{mark}\", xlabel=\"{}\"];",
                    escape(question)
                )
                .unwrap();
            }
            NodeKind::Pattern => {
                let pattern = node
                    .pattern_ref
                    .as_deref()
                    .and_then(|p| catalog.patterns.iter().find(|c| c.id == p));
                let mut label = escape(pattern.map_or(node.id.as_str(), |p| p.name.as_str()));
                if let Some(p) = pattern {
                    for polarity in [Polarity::Positive, Polarity::Negative] {
                        for imp in p.impacts.iter().filter(|i| i.polarity == polarity) {
                            let qa = catalog
                                .qas
                                .iter()
                                .find(|q| q.id == imp.qa)
                                .map_or(imp.qa.as_str(), |q| q.display_name.as_str());
                            write!(label, "\\n{} {}", polarity.symbol(), escape(qa)).unwrap();
                        }
                    }
                }
                writeln!(out, "    \"{id}\" [shape=box, style=rounded, label=\"{label}\"];").unwrap();
                for (i, c) in pattern.map_or(&[][..], |p| &p.constraints[..]).iter().enumerate() {
                    let cid = format!("{id}-constraint-{i}");
                    writeln!(
                        out,
                        "    \"{cid}\" [shape=octagon, fontsize=10, label=\"{}\"];",
                        escape(c)
                    )
                    .unwrap();
                    constraint_edges.push((id.clone(), cid));
                }
            }
        }
    }

    writeln!(out).unwrap();
    for e in &model.flow_edges {
        match &e.condition {
            Some(c) => writeln!(
                out,
                "    \"{}\" -> \"{}\" [label=\"{}\"];",
                escape(&e.from),
                escape(&e.to),
                escape(c)
            ),
            None => writeln!(out, "    \"{}\" -> \"{}\";", escape(&e.from), escape(&e.to)),
        }
        .unwrap();
    }
    for (from, to) in &constraint_edges {
        writeln!(out, "    \"{from}\" -> \"{to}\" [style=dashed, arrowhead=none];").unwrap();
    }
    for c in &model.complements_edges {
        let node_of = |p: &str| model.pattern_node(p).map_or_else(|| p.to_string(), |n| n.id.clone());
        writeln!(
            out,
            "    \"{}\" -> \"{}\" [dir=both, style=bold, constraint=false];",
            escape(&node_of(&c.a)),
            escape(&node_of(&c.b))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::builtin_kb;
    use crate::model::DesignArea;

    #[test]
    fn discovery_has_six_rounded_boxes() {
        let kb = builtin_kb();
        let dot = export_dot(kb.model(DesignArea::Discovery).unwrap(), kb.catalog());
        assert_eq!(dot.matches("style=rounded").count(), 6);
        assert_eq!(dot.matches("dir=both").count(), 2);
        assert!(dot.contains("label=\"+\""));
    }

    #[test]
    fn one_complements_edge_one_dir_both() {
        let kb = builtin_kb();
        let dot = export_dot(kb.model(DesignArea::Security).unwrap(), kb.catalog());
        assert_eq!(dot.matches("dir=both").count(), 1);
        assert!(dot.contains("[shape=diamond, label=\"O\""));
        assert!(dot.contains("shape=octagon"));
        assert!(dot.contains("style=dashed"));
    }

    #[test]
    fn escapes_quotes() {
        assert_eq!(escape("a \"b\"\\"), "a \\\"b\\\"\\\\");
    }
}
