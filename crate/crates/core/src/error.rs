//! Error types shared across the crate.

use alloc::string::String;
use core::fmt;

/// Structural or validation failure on terms and oracle operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermError {
    /// A child object does not sit one level below its parent.
    ChildLevel { parent_level: u32, child_level: u32 },
    /// A term was used at the wrong level.
    LevelMismatch { expected: u32, found: u32 },
    /// Bracket arity disagrees with the number of children or block count.
    ArityMismatch { expected: usize, found: usize },
    /// Monotone map values are not weakly increasing.
    NotMonotone { position: usize },
    /// A monotone map value exceeds the declared target size.
    ValueOutOfRange { value: u32, target: u32 },
    /// A monotone map must carry at least the value at 0.
    EmptyValues,
    /// Block `block` should have `expected` components, found `found`.
    BlockLength {
        block: usize,
        expected: usize,
        found: usize,
    },
    /// Two morphisms cannot be composed: sizes do not line up.
    ComposeMismatch { expected: u32, found: u32 },
    /// A morphism does not match the declared domain or codomain.
    NotAMorphism { reason: String },
    /// Components of a multimorphism disagree with the declared domain.
    DomainMismatch,
    /// An object lies outside the active truncation or oracle.
    UnknownObject { rendered: String },
    /// A morphism is not an element of the relevant hom-set.
    UnknownMorphism { rendered: String },
    /// The inner oracle failed to factorize a gathered family.
    InnerFactorization { reason: String },
    /// A presheaf map is not componentwise injective where required.
    NotMono { object: String },
    /// An idempotent was expected.
    NotIdempotent,
    /// Presheaf data is inconsistent (bad point index, missing table, ...).
    PresheafData { reason: String },
}

impl fmt::Display for TermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermError::ChildLevel {
                parent_level,
                child_level,
            } => write!(
                f,
                "child has level {child_level}, expected {} under a level-{parent_level} term",
                parent_level.saturating_sub(1)
            ),
            TermError::LevelMismatch { expected, found } => {
                write!(f, "level mismatch: expected {expected}, found {found}")
            }
            TermError::ArityMismatch { expected, found } => {
                write!(f, "arity mismatch: expected {expected}, found {found}")
            }
            TermError::NotMonotone { position } => {
                write!(f, "values not weakly increasing at position {position}")
            }
            TermError::ValueOutOfRange { value, target } => {
                write!(f, "value {value} exceeds target size {target}")
            }
            TermError::EmptyValues => write!(f, "a monotone map needs at least one value"),
            TermError::BlockLength {
                block,
                expected,
                found,
            } => write!(
                f,
                "block {block} has {found} components, expected {expected}"
            ),
            TermError::ComposeMismatch { expected, found } => write!(
                f,
                "composition mismatch: inner size {found}, expected {expected}"
            ),
            TermError::NotAMorphism { reason } => write!(f, "invalid morphism: {reason}"),
            TermError::DomainMismatch => write!(f, "multimorphism components disagree on domain"),
            TermError::UnknownObject { rendered } => {
                write!(f, "object {rendered} not known to this oracle/truncation")
            }
            TermError::UnknownMorphism { rendered } => {
                write!(f, "morphism {rendered} not in the expected hom-set")
            }
            TermError::InnerFactorization { reason } => {
                write!(f, "inner factorization failed: {reason}")
            }
            TermError::NotMono { object } => {
                write!(f, "map is not injective at {object}")
            }
            TermError::NotIdempotent => write!(f, "endomorphism is not idempotent"),
            TermError::PresheafData { reason } => write!(f, "bad presheaf data: {reason}"),
        }
    }
}

/// Syntax error while reading the bracket grammar for object terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Unexpected character; `expected` describes what would be legal.
    Unexpected { found: char, expected: &'static str },
    /// Input ended while a term was still open.
    UnexpectedEnd { expected: &'static str },
    /// Input continues past a complete term.
    TrailingInput,
    /// The bracket number does not equal the number of children.
    ArityAnnotation { declared: u32, found: usize },
    /// Numeric literal does not fit.
    NumberOverflow,
    /// The term cannot be assigned the requested level.
    Level(TermError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "unexpected {found:?}, expected {expected}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "unexpected end of input, expected {expected}")
            }
            ParseErrorKind::TrailingInput => write!(f, "trailing input after term"),
            ParseErrorKind::ArityAnnotation { declared, found } => write!(
                f,
                "bracket declares arity {declared} but has {found} children"
            ),
            ParseErrorKind::NumberOverflow => write!(f, "numeric literal too large"),
            ParseErrorKind::Level(e) => write!(f, "{e}"),
        }
    }
}
