//! Decision support for selecting microservices architecture patterns.
//!
//! The crate ships four decision models (application decomposition,
//! security, communication, service discovery) as gateway graphs over a
//! catalog of patterns and their quality-attribute impacts, and an engine
//! that walks those graphs, ranks patterns by weighted quality attributes and
//! reports trade-offs.
//!
//! ```
//! use msa_advisor_core::{advisor::{score_patterns, QaWeights}, kb::builtin_kb};
//!
//! let kb = builtin_kb();
//! let weights = QaWeights::from_user(&kb, [("flexibility", 1.0)]).unwrap();
//! let ranking = score_patterns(&kb, "decomposition", &weights).unwrap();
//! assert_eq!(ranking.entries[0].pattern, "decomposed-by-subdomains");
//! ```

pub mod advisor;
pub mod api;
pub mod error;
pub mod kb;
pub mod model;
pub mod validate;

pub use error::{AdvisorError, KbError, NotFound};
pub use kb::{builtin_kb, KnowledgeBase};
