//! Exact rational functions over cyclotomic fields and their Laurent series.

mod parse;
mod partial;
mod poly;
mod ratfn;
mod series;
mod text;

pub use parse::{parse_expression, parse_expression_with_limit, DEFAULT_CONDUCTOR_LIMIT};
pub use partial::{
    detect_cyclotomic_denominator, partial_fractions, PartialFractions, PoleEntry, PoleSpec,
    PoleTerm, RootOfUnity,
};
pub use poly::Poly;
pub use ratfn::RationalFunction;
pub use series::{expand_series, LaurentPrefix};
pub use text::{canonical_text, pole_factor_text, poly_text, quotient_text};
