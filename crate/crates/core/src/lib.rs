//! Exact combinatorics for closed walks on trees with given degree sequences.
//!
//! The crate builds greedy trees, counts closed walks per vertex with
//! unbounded integers, compares walk vectors under weak majorization, and
//! exhaustively verifies the majorization claims at desk scale. All counting
//! is exact; nothing here touches floating point except the Estrada index,
//! which carries an explicit truncation bound.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `treewalk-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod degseq;
pub mod error;
pub mod treekit;
pub mod verifier;
pub mod walkcount;

pub use error::{Error, Result};
