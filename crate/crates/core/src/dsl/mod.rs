//! Text formats: the formation language, group specifications, corpus files,
//! the on-disk lattice cache, and JSON reports.

pub mod cache;
pub mod corpus;
pub mod formation;
pub mod group;
pub mod report;

pub use cache::LatticeCache;
pub use corpus::{load_corpus, parse_corpus, shipped_corpus, CorpusEntry, SHIPPED_CORPUS};
pub use formation::{compile_formation, parse_formation, print_formation};
pub use group::{build_group, parse_group, parse_group_spec, GroupSpec};
pub use report::{to_canonical_json, write_report};
