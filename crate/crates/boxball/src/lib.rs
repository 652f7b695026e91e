//! Verification lab, report files and command-line front end for the box-ball
//! system on permutations. The combinatorics live in [`boxball_core`].

pub use boxball_core;

pub mod cli;
pub mod lab;
pub mod report;
