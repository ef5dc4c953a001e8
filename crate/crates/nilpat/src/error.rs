//! One error type for the whole crate.
//!
//! Every fallible operation reports through [`Error`]; the variants name the
//! contract that was violated rather than the function that noticed.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A modulus passed to [`crate::field::Field::prime`] is not prime.
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),

    /// Division or inversion of zero in a field.
    #[error("division by zero")]
    DivisionByZero,

    /// Two operands live over different fields or polynomial rings.
    #[error("mixed rings: {0}")]
    MixedRings(String),

    /// The zero polynomial has no leading term.
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,

    /// An evaluation point does not assign every variable of the ring.
    #[error("no value assigned to variable {0}")]
    MissingAssignment(String),

    /// A variable or symbol outside the ring appeared in polynomial text.
    #[error("unknown variable {0}")]
    UnknownVariable(String),

    /// Polynomial text that does not match the term grammar.
    #[error("malformed polynomial text: {0}")]
    BadPolynomialText(String),

    /// A Gröbner-basis computation exceeded its reduction budget.
    #[error("resource limit: {0} S-polynomial reductions exhausted")]
    ResourceLimit(usize),

    /// Colon or saturation by the zero polynomial.
    #[error("colon/saturation divisor is zero")]
    ZeroDivisorInput,

    /// Pattern text whose lines do not form an n-by-n block.
    #[error("ragged pattern text: {0}")]
    RaggedInput(String),

    /// Pattern text mixing the zero-nonzero and the sign alphabet.
    #[error("pattern mixes '*' with sign symbols")]
    MixedAlphabet,

    /// A character outside the pattern alphabets.
    #[error("bad pattern symbol {0:?} at line {1}, column {2}")]
    BadSymbol(char, usize, usize),

    /// An operation capped at small orders received a larger pattern.
    #[error("order {0} exceeds the supported bound {1} for this operation")]
    OrderTooLarge(usize, usize),

    /// An operation that needs a minimum order received a smaller pattern.
    #[error("order {0} is below the minimum {1} for this operation")]
    OrderTooSmall(usize, usize),

    /// A scalar of the wrong field was supplied.
    #[error("wrong field: {0}")]
    WrongField(String),

    /// An assignment that is not a realization of the pattern: a zero value
    /// on a nonzero position, or a value on a zero position.
    #[error("not a realization: {0}")]
    NotARealization(String),

    /// The brute-force search space exceeds the configured budget.
    #[error("search space of {space} assignments exceeds budget {budget}")]
    SearchBudgetExceeded { space: u128, budget: u128 },
}
