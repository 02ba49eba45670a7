//! Graph I/O, corpus generation and batch verification.

pub mod corpus;
pub mod edgelist;
pub mod graph6;
pub mod verify;

pub use corpus::{generate_corpus, CorpusError, CorpusItem, CorpusSpec, Filters, Source};
pub use edgelist::{emit_edge_list, parse_edge_list, EdgeListError};
pub use graph6::{emit_graph6, graph6_string, parse_graph6, Graph6Error};
pub use verify::{
    verify, verify_collect, Check, Record, RecordStatus, RunReport, Summary, VerifyError,
    VerifyOptions,
};
