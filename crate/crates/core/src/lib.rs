//! Propositional answer set programming toolkit centred on super-coherence:
//! programs that keep at least one answer set under every addition of facts.
//!
//! Everything here is exhaustive by construction. Answer sets are found by
//! enumerating interpretations, super-coherence by enumerating fact sets, and
//! QBF validity by truth tables, so the library doubles as a reference oracle
//! for the program transformations it implements.

pub mod analysis;
pub mod embedding;
pub mod error;
pub mod generate;
pub mod qbf;
pub mod semantics;
pub mod supercoherence;
pub mod syntax;

pub use analysis::{classify, dependency_graph, ClassReport, DependencyGraph};
pub use embedding::{
    embed_brave_query, embed_cautious_query, embed_coherence, embed_query, recover_answer_sets,
    recover_answer_sets_with, shift_embedding, shift_transform, strat_shift, strat_shift_with,
    strat_transform, strat_transform_with, EmbeddingArtifact, StratOptions, Transform,
};
pub use error::{Error, ParseError, Result};
pub use semantics::{
    answer_sets, answer_sets_with, is_answer_set, query, query_with, reduct, satisfies,
    AnswerSetReport, Interpretation, Limits, QueryMode,
};
pub use syntax::{
    atoms_of, eliminate_constraints, parse_program, render_program, AtomId, AtomSet, AtomTable,
    Program, Rule,
};
