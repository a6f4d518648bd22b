use serde::Serialize;

use crate::error::AdvisorError;
use crate::kb::KnowledgeBase;
use crate::model::{DesignArea, Polarity};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImpactLine {
    pub qa: String,
    pub display_name: String,
    pub polarity: Polarity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Everything the knowledge base knows about one pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplanationCard {
    pub pattern: String,
    pub name: String,
    pub area: DesignArea,
    pub summary: String,
    pub impacts: Vec<ImpactLine>,
    pub constraints: Vec<String>,
    pub complements: Vec<String>,
    /// Condition labels along each start-to-pattern path of the owning model.
    pub paths: Vec<Vec<String>>,
    pub sources: Vec<String>,
}

pub fn explain_pattern(kb: &KnowledgeBase, id: &str) -> Result<ExplanationCard, AdvisorError> {
    let p = kb.require_pattern(id)?;
    let model = kb.owning_model(id);
    let impacts = p
        .impacts
        .iter()
        .map(|i| ImpactLine {
            qa: i.qa.clone(),
            display_name: kb
                .resolve_qa(&i.qa)
                .map_or_else(|| i.qa.clone(), |q| q.display_name.clone()),
            polarity: i.polarity,
            note: i.note.clone(),
        })
        .collect();
    let complements = model
        .map(|m| m.complements_of(id).into_iter().map(str::to_string).collect())
        .unwrap_or_default();
    let paths = match (model, model.and_then(|m| m.pattern_node(id))) {
        (Some(m), Some(node)) => m
            .paths_to(&node.id)
            .into_iter()
            .map(|path| path.into_iter().filter_map(|e| e.condition.clone()).collect())
            .collect(),
        _ => Vec::new(),
    };
    Ok(ExplanationCard {
        pattern: p.id.clone(),
        name: p.name.clone(),
        area: p.area,
        summary: p.summary.clone(),
        impacts,
        constraints: p.constraints.clone(),
        complements,
        paths,
        sources: p.sources.clone(),
    })
}
