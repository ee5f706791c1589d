//! Verification harness: seeded corpora, inequality checkers with
//! structured reports, growth experiments and extremal search.

pub mod checks;
pub mod corpus;
pub mod fit;
pub mod growth;
pub mod report;
pub mod search;
pub mod special;
pub mod suites;
pub mod tol;

pub use corpus::{generate_corpus, Corpus, CorpusConfig};
pub use report::{CheckReport, Violation};
