//! Exact arithmetic for ternary digit-substitution maps.
//!
//! A number in `[0, 1]` is held as an eventually periodic ternary expansion
//! ([`TernaryRep`]); a [`DigitMap`] rewrites that expansion digit by digit.
//! The main map `f` swaps the digits 1 and 2 and keeps 0. The [`analysis`]
//! module checks its functional equations, jumps, difference quotients,
//! level sets, graph box counts and integral in exact rational arithmetic.
//!
//! `f` acts on expansions, so at a ternary-rational point it matters which
//! expansion is used. Canonical representations always pick the terminating
//! one, except for the number 1, whose only expansion is `0.(2)`; hence
//! `f(1) = 0.(1) = 1/2`.

pub mod analysis;
pub mod budget;
pub mod error;
pub mod rational;
pub mod transducer;
pub mod trit;

pub use budget::Budget;
pub use error::{Error, Result};
pub use rational::{format_rational, parse_rational, Rational};
pub use transducer::{apply, apply_raw, builtin, compose, decompose, eval, Decomposition, DigitMap, Pair};
pub use trit::{
    canonicalize, compare, complement, from_rational, parse_rep, parse_rep_strict, to_rational,
    TernaryRep, Trit,
};
