use std::fmt;

use thiserror::Error;

/// Reason a rational function failed the fixed-point decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The Laurent expansion has a nonzero coefficient at a negative index.
    NegativeSupport,
    NonCyclotomicPole,
    RepeatedPole {
        r: u64,
        c: u64,
        multiplicity: usize,
    },
    /// A pole of order `r`, where `r` is not distinguished for the pair.
    NonDistinguished {
        r: u64,
    },
    /// Residues along the coset of `n` mod `r` do not follow the orbit pattern.
    CosetPatternMismatch {
        r: u64,
        n: u64,
    },
    IllegalPolynomialPart,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeSupport => write!(f, "negative support"),
            Violation::NonCyclotomicPole => write!(f, "non-cyclotomic pole"),
            Violation::RepeatedPole { r, c, multiplicity } => write!(
                f,
                "repeated pole (pole w{{{r}}}^{c} has multiplicity {multiplicity})"
            ),
            Violation::NonDistinguished { r } => {
                write!(f, "non-distinguished r (pole of order {r})")
            }
            Violation::CosetPatternMismatch { r, n } => {
                write!(f, "coset pattern mismatch (r={r}, n={n})")
            }
            Violation::IllegalPolynomialPart => write!(f, "polynomial part illegal"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("DivisionByZero: division by the zero element")]
    DivisionByZero,
    #[error("ConductorMismatch: conductor {from} does not divide {to}")]
    ConductorMismatch { from: u64, to: u64 },
    #[error("ConductorLimit: conductor {conductor} exceeds the limit {limit}")]
    ConductorLimit { conductor: u64, limit: u64 },
    #[error("ParseError at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("ZeroDenominator: the denominator is identically zero")]
    ZeroDenominator,
    #[error("RepeatedPole: pole w{{{r}}}^{c} has multiplicity {multiplicity}")]
    RepeatedPole { r: u64, c: u64, multiplicity: usize },
    #[error("NonCyclotomicPole: the denominator has a root that is not a root of unity")]
    NonCyclotomicPole,
    #[error(
        "NonCyclotomicFactor: a factor of degree {degree} is not a product of cyclotomic factors"
    )]
    NonCyclotomicFactor { degree: usize },
    #[error("PoleAtZero: the function has a pole at x = 0")]
    PoleAtZero,
    #[error("NotCoprime: gcd({a}, {b}) = {gcd}")]
    NotCoprime { a: i64, b: u64, gcd: u64 },
    #[error("InsufficientWindow: index {needed} is beyond the last available index {available}")]
    InsufficientWindow { needed: i64, available: i64 },
    #[error(
        "ReconstructionMismatch: reconstructed recurrence disagrees at decimated index {index}"
    )]
    ReconstructionMismatch { index: i64 },
    #[error("NonLaurentImage: the image has unbounded negative support and is not a Laurent series at 0")]
    NonLaurentImage,
    #[error("NotDistinguished: r={r} is not distinguished with respect to (s,t)=({s},{t})")]
    NotDistinguished { r: u64, s: i64, t: i64 },
    #[error("BadIndex: gcd(n={n}, r={r}) is not 1")]
    BadIndex { r: u64, n: u64 },
    #[error("BadParameter: {0}")]
    BadParameter(String),
    #[error("NotAFixedPoint: {0}")]
    NotAFixedPoint(Violation),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
