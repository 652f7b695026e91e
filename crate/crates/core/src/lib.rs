//! Box-ball systems on permutations and the tableau combinatorics around them.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`bbs`]: box-ball moves (ball-by-ball and carrier sweep), increasing runs,
//!   configuration arrays, steady-state detection, soliton decompositions and the
//!   local statistics `local_incr` / `local_decr`;
//! * [`rs`]: Robinson-Schensted insertion and its inverse, reading words,
//!   superstandard tableaux, `incr` / `decr` / `des`;
//! * [`knuth`]: dual Knuth moves on permutations and configurations,
//!   Bender-Knuth involutions and the chain of tableaux with growing steady-state time;
//! * [`involutions`]: crossings, nestings and the noncrossing shape formula;
//! * [`patterns`]: classical and consecutive containment;
//! * [`good`]: good permutations and tableaux, Motzkin numbers.
//!
//! Enable the `serde` feature for the JSON wire encodings of [`Permutation`],
//! [`Tableau`] and [`BbsConfiguration`].
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bbs;
pub mod config;
pub mod error;
pub mod good;
pub mod involutions;
pub mod knuth;
pub mod partition;
pub mod patterns;
pub mod permutation;
pub mod rs;
pub mod tableau;

pub use config::{ArrayRow, BbsConfiguration, Cell, ConfigurationArray};
pub use error::{Error, Result};
pub use partition::Partition;
pub use permutation::{permutations, validate_permutation, Permutation};
pub use tableau::{is_standard, shape_of, Tableau};
