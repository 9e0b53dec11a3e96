//! Exact scalars: arbitrary-precision rationals and cyclotomic field elements.

pub mod arith;
mod cyclo;
mod modular;
mod table;

pub use cyclo::{cyclo_arith, cyclo_promote, root_of_unity, ArithOp, CycloNum};
pub use table::{cyclotomic_poly, CycloPolyTable};

/// Reduced rational with positive denominator.
pub type Rat = num_rational::BigRational;
