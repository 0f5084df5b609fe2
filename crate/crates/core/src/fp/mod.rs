//! Finitely presented groups: presentations, coset enumeration, low-index
//! subgroups and Reidemeister–Schreier rewriting.

mod coset;
mod low_index;
mod presentation;
mod schreier;
mod word;

use alloc::string::String;

pub use coset::{coset_enumerate, CosetTable, DEFAULT_BUDGET};
pub use low_index::{
    low_index_subgroups, low_index_subgroups_with, LowIndexOptions, DEFAULT_NODE_BUDGET,
};
pub use presentation::{
    builtin, builtin_from_spec, free_product, is_valid_symbol, parse_presentation,
    GroupPresentation,
};
pub use schreier::{reidemeister_schreier, reidemeister_schreier_detailed, SchreierPresentation};
pub use word::Word;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FpError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate generator `{symbol}` at {line}:{column}")]
    DuplicateGenerator {
        symbol: String,
        line: usize,
        column: usize,
    },
    #[error("undeclared symbol `{symbol}` at {line}:{column}")]
    UndeclaredSymbol {
        symbol: String,
        line: usize,
        column: usize,
    },
    #[error("invalid generator symbol `{0}`")]
    InvalidSymbol(String),
    #[error("letter {letter} out of range for {generators} generators")]
    LetterOutOfRange { letter: usize, generators: usize },
    #[error("unknown builtin group `{0}`")]
    UnknownBuiltin(String),
    #[error("builtin `{name}` takes {expected} parameter(s), got {got}")]
    BadParameters {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("builtin `{name}` needs a positive parameter, got {value}")]
    NonPositiveParameter { name: String, value: i64 },
    #[error("budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },
    #[error("index bound must be at least 1")]
    InvalidIndexBound,
    #[error("coset table has {table_gens} generators but presentation has {presentation_gens}")]
    TableMismatch {
        table_gens: usize,
        presentation_gens: usize,
    },
    #[error("relator {relator} does not fix coset {coset}")]
    RelatorViolated { relator: usize, coset: usize },
    #[error("invalid coset table: {0}")]
    InvalidTable(String),
}
