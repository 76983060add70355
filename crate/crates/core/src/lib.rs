//! Counting embeddings of small trees into random trees.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod family;
pub mod numbers;
pub mod oracle;
pub mod series;
pub mod stopping;
pub mod tree;

pub use error::{Error, Result};
pub use family::FamilyId;
pub use tree::{PlaneForest, PlaneTree};

/// Where a reported number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Oracle,
    Series,
    Asymptotic,
}
