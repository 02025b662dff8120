//! Command-line front end for `wordmap-core`.
//!
//! Exit codes: 0 on success, 1 when a checked property fails, 2 on usage or
//! input errors.

pub mod cli;
pub mod format;
pub mod report;

use wordmap_core::eval::EvalError;
use wordmap_core::literal::LiteralError;
use wordmap_core::rootsys::RootError;
use wordmap_core::sl2::Sl2Error;
use wordmap_core::word::WordError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("ring or literal: {0}")]
    Literal(#[from] LiteralError),
    #[error("word: {0}")]
    Word(#[from] WordError),
    #[error("evaluation: {0}")]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Sl2(#[from] Sl2Error),
    #[error("{0}")]
    Root(#[from] RootError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
