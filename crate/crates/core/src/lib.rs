//! Exact finite combinatorics for unions of arithmetic progressions with
//! pairwise distinct differences.
//!
//! The crate is `no_std` and only needs `alloc`. Every count is an exact
//! integer and every set element an exact rational; floating point shows up
//! only in bound values that are labelled approximate.
//!
//! Layout:
//!
//! * [`arith`]: positive rationals, divisor and totient sieves, the
//!   divisor-bound constant.
//! * [`ratio`]: bounded-ratio sets `R_d`, pair and cycle censuses, integer
//!   quotient counts and the triple counts built on them.
//! * [`progression`]: exact arithmetic progressions, intersections, unions
//!   with multiplicities and union-size lower bounds.
//! * [`construct`]: explicit extremal sets and families.
//! * [`search`]: exhaustive and heuristic minimisation of union size, and the
//!   piecewise lower-bound formula.
//! * [`gcd_sum`]: gcd-quotient sums, the Pillai-function fast path and the
//!   Graham quotient.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod arith;
pub mod construct;
mod error;
pub mod gcd_sum;
pub mod progression;
pub mod ratio;
pub mod search;

pub use error::{Error, Result};
