//! Corpus-to-ontology toolkit.
//!
//! Learns terminology ontologies from plain-text corpora with either a
//! latent-semantic-indexing backend (length-scaled term weighting, column
//! normalization, one-sided Jacobi SVD, concept extraction) or a
//! shard-parallel variational LDA backend; answers semantic queries against
//! the learned bipartite graph with synonym expansion and an edge-count
//! similarity; and ranks competing ontologies with a four-measure weighted
//! score.
//!
//! Every capability has a runnable demo under `examples/`; the `ontoforge`
//! binary exposes the same pipeline as `build`, `query`, `rank`, and
//! `export` subcommands.
//!
//! ```
//! use ontoforge::ontology::{self, LearnParams};
//!
//! # fn main() -> ontoforge::Result<()> {
//! let corpus = tempfile::tempdir().unwrap();
//! std::fs::write(corpus.path().join("a.txt"), "law crime courts law").unwrap();
//! std::fs::write(corpus.path().join("b.txt"), "energy solar grid energy").unwrap();
//!
//! let graph = ontology::learn_with(
//!     corpus.path(),
//!     &Default::default(),
//!     &LearnParams::lsi_defaults(),
//! )?;
//! assert_eq!(graph.concepts().len(), 2);
//! assert!(graph.has_term("law") && graph.has_term("energy"));
//! # Ok(())
//! # }
//! ```

pub mod cli;
pub mod corpus;
pub mod error;
pub mod lda;
pub mod lsi_concepts;
mod math;
pub mod matrix;
pub mod ontology;
pub mod ranking;
pub mod retrieval;
pub mod svd;
pub mod weights;

pub use error::{Error, Result};
