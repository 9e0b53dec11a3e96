//! Exact computation of the rational functions fixed by the operators
//! `Σ a_n x^n ↦ Σ a_{sn+t} x^n`.

pub mod cli;
pub mod cosets;
pub mod decimation;
pub mod error;
pub mod exactnum;
pub mod fixedpoints;
pub mod ratfunc;
