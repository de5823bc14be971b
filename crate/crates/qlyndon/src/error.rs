//! Error type shared by all modules.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the crate, as one typed enum so callers
/// (in particular the CLI) can map failures to exit codes without string matching.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero in Q(q)")]
    DivisionByZero,

    #[error("pole: denominator vanishes at q = {0}")]
    Pole(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unsupported Cartan datum: {0}")]
    BadCartan(String),

    #[error("not a positive root: {0}")]
    NotAPositiveRoot(String),

    #[error("color {0} out of range 1..={1}")]
    BadColor(usize, usize),

    #[error("empty word")]
    EmptyWord,

    #[error("word is not Lyndon: {0}")]
    NotLyndon(String),

    #[error("degree is not supported here: {0}")]
    BadDegree(String),

    #[error("window [{lo},{hi}] not certifiable; certified window is [{need_lo},{need_hi}]")]
    WindowTooNarrow {
        lo: i64,
        hi: i64,
        need_lo: i64,
        need_hi: i64,
    },

    #[error("operands carry no exact expression and their stored tables are truncated; refusing an uncertified product")]
    UncertifiedProduct,

    #[error("leading word undetermined: {0}")]
    LeadingWordUndetermined(String),

    #[error("variable budget exceeded: profile has {got} variables, cap is {cap}")]
    ProfileTooLarge { got: usize, cap: usize },

    #[error("reduced-word recovery failed: {0}")]
    WeylRecovery(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}
