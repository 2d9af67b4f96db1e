//! Quasi-unbiased, weakly unbiased and Type II weakly unbiased Hadamard
//! matrices through self-complementary binary codes and Z4-codes.
//!
//! The crate provides:
//!
//! * sign-matrix arithmetic with Hadamard/weighing verification and pair
//!   classification ([`matrix`]);
//! * feasible parameter enumeration and nonexistence filters ([`params`]);
//! * binary and Z4 codes with exact distance distributions, the Gray map,
//!   and the condition checkers linking codes to matrix families
//!   ([`binary`], [`z4`]);
//! * exact Krawtchouk-basis annihilator expansions and the absolute and
//!   linear programming bounds, plus an association scheme axiom checker
//!   ([`bounds`]);
//! * canonical forms for vertex-colored (di)graphs and codes ([`canon`]);
//! * the mate-graph clique reduction and exhaustive mate searches
//!   ([`clique`]);
//! * coset- and generator-augmentation classification engines with
//!   equivalence deduplication ([`classify`]).

pub mod binary;
pub mod bitvec;
pub mod bounds;
pub mod canon;
pub mod classify;
pub mod clique;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod matrix;
pub mod params;
pub mod z4;

pub use binary::{BinaryCode, DistanceDistribution};
pub use bitvec::BitVec;
pub use canon::ColoredGraph;
pub use error::{Error, Result};
pub use matrix::{PairClassification, SignMatrix};
pub use z4::{Z4LinearCode, Z4Vector};
