use std::fmt;

use serde::Serialize;

/// A tuple at which a structure's associativity identity fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AssociativityViolation {
    /// `{x} * (y o z) != (x o y) * {z}`
    Hyper { x: usize, y: usize, z: usize },
    /// `a g (b m c) != (a g b) m c`
    Gamma {
        a: usize,
        gamma: usize,
        b: usize,
        mu: usize,
        c: usize,
    },
}

impl fmt::Display for AssociativityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AssociativityViolation::Hyper { x, y, z } => {
                write!(f, "{{{x}}}*({y}o{z}) != ({x}o{y})*{{{z}}}")
            }
            AssociativityViolation::Gamma { a, gamma, b, mu, c } => write!(
                f,
                "{a}g{gamma}({b}g{mu}{c}) != ({a}g{gamma}{b})g{mu}{c}"
            ),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("carrier size {0} is outside 1..=64")]
    InvalidCarrier(usize),
    #[error("gamma set size must be at least 1")]
    EmptyGamma,
    #[error("subsets over carriers of size {left} and {right} cannot be combined")]
    CarrierMismatch { left: usize, right: usize },
    #[error("element {element} is out of range for a carrier of size {n}")]
    OutOfRange { element: usize, n: usize },
    #[error("{0} requires nonempty operands")]
    EmptyOperand(&'static str),
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("operation requires an associative structure; identity fails at {0}")]
    NotAssociative(AssociativityViolation),
    #[error("a product chain needs at least one factor")]
    EmptyChain,
    #[error("search space of {space} tables exceeds the budget of {limit}")]
    BudgetExceeded { space: String, limit: u128 },
    #[error("not a witness: {0}")]
    InvalidWitness(String),
}

pub type Result<T> = std::result::Result<T, Error>;
