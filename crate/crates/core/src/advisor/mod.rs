//! The decision engine: weighted scoring, gateway walkthroughs, complements
//! suggestions, trade-off reports and pattern explanations.
//!
//! Everything here is a pure function of the knowledge base and its inputs,
//! except [`Session`], which is single-writer state owned by the caller.

mod explain;
mod scoring;
mod session;
mod tradeoff;
mod weights;

pub use explain::{explain_pattern, ExplanationCard, ImpactLine};
pub use scoring::{patterns_in_scope, rank_order, score_patterns, Contribution, RankedPattern, Ranking};
pub use session::{Decision, DecisionOption, PendingDecision, Session, SessionResult, SessionStatus};
pub use tradeoff::{
    complements_closure, surfaced_constraints, tradeoff_report, Contributor, QaTally, SurfacedConstraint,
    TradeoffReport,
};
pub use weights::{ratio, QaWeights};
