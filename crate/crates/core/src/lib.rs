//! Explicit girth-8 graph constructions over finite fields.
//!
//! The pipeline starts from the coordinatized Moore (q+1, 8)-graph Γ_q
//! ([`cage`]), removes a perfect dominating set to obtain a q-regular girth-8
//! graph G^x_q, then removes a second perfect dominating set to reach a
//! (q−1)-regular girth-8 graph of order 2q(q−1)² ([`dominating`],
//! [`pipeline`]). Every claimed property is recomputed from adjacency by
//! [`cert`].

pub mod cage;
pub mod cert;
pub mod cli;
pub mod dominating;
pub mod field;
pub mod graph;
pub mod io;
pub mod pipeline;
pub mod vertex;

use thiserror::Error;

pub use cert::{certify, certify_with, girth, CertOptions, CertReport};
pub use field::{FieldElement, FieldError, FieldSpec};
pub use graph::{DominationReport, Graph, GraphError, LabeledGraph};
pub use vertex::{Coord, Side, Vertex, VertexError, VertexSet};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("adjacency rules disagree: {0}")]
    BlockMismatch(String),
    #[error("{stage} certificate failed: {detail}")]
    Certificate { stage: String, detail: String },
    #[error("set {set}: {detail}")]
    Contract { set: &'static str, detail: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status: 1 for a failed property, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::BlockMismatch(_) | Error::Certificate { .. } | Error::Contract { .. } => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
