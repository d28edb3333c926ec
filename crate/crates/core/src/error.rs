use std::fmt;

use thiserror::Error;

/// Byte offsets into a source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub begin: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(begin: usize, end: usize) -> Self {
        debug_assert!(begin <= end);
        SourceSpan { begin, end }
    }

    pub fn point(at: usize) -> Self {
        SourceSpan { begin: at, end: at }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.begin, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("arity error: {0}")]
    Arity(String),
    #[error("duplicate quantified variable `{0}`")]
    DuplicateQuantifiedVariable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at {span}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn syntax(span: SourceSpan, reason: impl Into<String>) -> Self {
        ParseError { span, kind: ParseErrorKind::Syntax(reason.into()) }
    }

    pub fn arity(span: SourceSpan, reason: impl Into<String>) -> Self {
        ParseError { span, kind: ParseErrorKind::Arity(reason.into()) }
    }

    pub fn duplicate(span: SourceSpan, name: impl Into<String>) -> Self {
        ParseError { span, kind: ParseErrorKind::DuplicateQuantifiedVariable(name.into()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("symbol `{0}` is free but has no binding")]
    UnboundSymbol(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("formula is not a sentence (free: {0})")]
    NotASentence(String),
    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded { what: &'static str, needed: u128, cap: u128 },
    #[error("instance has a universal (U) block; expected a pure DQBF instance")]
    NotExistential,
    #[error("supplementing choice is not total on the team")]
    IncompleteChoice,
    #[error("variable `{0}` is not in the team domain")]
    FreeVarOutsideDomain(String),
    #[error("unknown generalized dependence atom `{0}`")]
    UnknownGda(String),
    #[error("formula is outside the flat (tilde- and atom-free) fragment")]
    NotFlatFragment,
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("extension and definition of atom `{0}` disagree")]
    DefinitionMismatch(String),
    #[error("unknown atom family `{0}`")]
    UnknownFamily(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("symbol clash: `{0}` already occurs")]
    SymbolClash(String),
    #[error("formula is not closed (free: {0})")]
    NotClosed(String),
    #[error("formula is not normalized: {0}")]
    NotNormalized(String),
    #[error("the last block is not a U block")]
    LastBlockNotUnion,
    #[error("instance has no universal variables")]
    EmptyUniversalPrefix,
    #[error("variable list is empty")]
    EmptyVarList,
    #[error("formula is not prenex: {0}")]
    NotPrenex(String),
    #[error("formula is outside the required fragment: {0}")]
    WrongFragment(String),
    #[error("atom `{0}` has no SO2 definition")]
    UndefinableGda(String),
    #[error("unexpected free symbols: {0}")]
    UnexpectedFreeSymbols(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid value: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn budget(what: &'static str, needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        Err(Error::BudgetExceeded { what, needed, cap })
    } else {
        Ok(())
    }
}
