//! Finite experiment-state-outcome entities and the structures built on them.

pub mod classify;
pub mod closure;
pub mod diagnostics;
pub mod entity;
pub mod error;
pub mod mixture;
pub mod morphism;
pub mod probability;
pub mod property;
pub mod quantum;
pub mod relation;
pub mod set;
pub mod verify;

pub use diagnostics::{Check, Diagnostics};
pub use entity::{Couple, Entity, ExperimentId, OutcomeId, StateId};
pub use error::{Error, IdKind, Result};
pub use relation::{relation_report, Element, RelationKind, RelationReport, RelationSection};
pub use set::Subset;
