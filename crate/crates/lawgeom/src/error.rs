//! Error type shared by every module of the crate.

use crate::tree::Address;
use thiserror::Error;

/// Unified error type for all partial operations in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text input does not conform to the expected grammar.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// An address was used that is not in the skeleton of the tree at hand.
    #[error("address {0} lies outside the skeleton")]
    AddressOutsideSkeleton(Address),

    /// A nonempty sequence was required.
    #[error("expected a nonempty sequence")]
    EmptyInput,

    /// A Polish-notation symbol sequence violates the defect condition.
    #[error("malformed Polish expression: defect violation at position {position}")]
    MalformedPolish { position: usize },

    /// A substitution was applied to a tree containing a label it does not bind.
    #[error("substitution does not bind label {0}")]
    UnboundLabel(u32),

    /// An operation requiring pairwise-distinct leaf labels received a tree with repeats.
    #[error("tree labels are not pairwise distinct")]
    NotInjective,

    /// A word's action on a tree is undefined; `at` is the length of the
    /// shortest undefined prefix (1-based position of the failing letter).
    #[error("action undefined at prefix {at}: letter `{letter}` does not apply")]
    UndefinedAction { at: usize, letter: String },

    /// The given address is consumed, not transported, by the operator.
    #[error("address {0} has no heir under this operator")]
    NoHeir(Address),

    /// Tree labels outside the carrier of the supplied label algebra.
    #[error("tree labels do not belong to the label algebra's carrier")]
    CarrierMismatch,

    /// An index-style alias letter was passed where only address-style letters are valid.
    #[error("letter `{0}` is an unexpanded alias; expand aliases first")]
    UnexpandedAlias(String),

    /// An enumeration exceeded its configured cap.
    #[error("enumeration exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },

    /// Sorting words require disjoint index sets.
    #[error("sorting-word index sets overlap")]
    OverlappingSets,

    /// The seed calculus covers plain letters only, not the twisted braided letters.
    #[error("seed calculus does not cover twisted letters")]
    TwistedNotSupported,

    /// A twisted inverse was requested over a bracket with no cancellation rule.
    #[error("bracket operation has no left-cancellation rule; inverse undefined")]
    NonCancellativeBracket,

    /// Sampled verification found no tree on which both sides act.
    #[error("no sampled tree admitted both sides of the relation")]
    DomainNeverIntersects,

    /// Twisted braid letters have no address-form expansion.
    #[error("twisted braid letters have no address-form expansion")]
    SigmaHasNoLinearExpansion,

    /// A representation probe ran out of readable depth.
    #[error("probe budget exhausted: address is not readable for this word")]
    BudgetExhausted,

    /// A tree exceeded the configured size cap.
    #[error("tree size {size} exceeds cap of {cap} leaves")]
    SizeCapExceeded { size: usize, cap: usize },

    /// The seed permutes its leaves, so it has no orientation-preserving
    /// piecewise-linear realization.
    #[error("seed reorders leaf labels; only an order-preserving seed yields a homeomorphism")]
    NotAnFSeed,
}

pub type Result<T> = std::result::Result<T, Error>;
