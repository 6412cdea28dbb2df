//! Coauthorship-network toolkit: corpus ingest, collaboration graph, Turing
//! Number (distance to a laureate seed set), centralities, bibliometrics and
//! correlation reports.

pub mod bibliometrics;
pub mod centrality;
pub mod config;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod pipeline;
pub mod report;
pub mod stats;
pub mod tn;

pub use error::{Error, Result};
