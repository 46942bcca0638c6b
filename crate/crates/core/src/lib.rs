//! Executable combinatorics for degree-truncated multi-Reedy categories:
//! the simplex category, the theta construction over any oracle, finite
//! tabulated presheaves with Eilenberg-Zilber machinery, and exhaustive,
//! witness-producing verifiers for the Reedy, multi-Reedy, EZ, and
//! elegance axiom systems.
//!
//! The crate is `no_std` (with `alloc`); everything is a pure function on
//! immutable term values, safe to call concurrently.  IO, JSON formats,
//! and the command-line front end live in the companion `thetakit` crate.

#![no_std]
// index-based loops over parallel object/morphism tables are the idiom here
#![allow(clippy::needless_range_loop)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod delta;
pub mod error;
pub mod oracle;
pub mod parse;
pub mod presheaf;
pub mod term;
pub mod theta;
pub mod trunc;
pub mod unionfind;
pub mod verify;

pub use error::{ParseError, ParseErrorKind, TermError};
pub use oracle::{enumerate_objects, sections, Factorization, ReedyOracle, TerminalOracle};
pub use parse::{parse_object, parse_object_infer, render_object};
pub use term::{MonotoneMap, MorphismTerm, MultiMorphism, ObjectTerm};
pub use theta::{theta_tower, theta_tower_over_delta, ThetaOracle};
pub use trunc::Truncation;
