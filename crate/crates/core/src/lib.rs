//! Exact-arithmetic engine for truncated modules over noncommutative
//! algebras of solvable type, with the monolithic-module constructions
//! for the quantum plane, the quantized Weyl algebra, the Ore extensions
//! `ab = ba + a^r` and the noetherian down-up algebras.

pub mod algebra;
pub mod arith;
pub mod constructions;
pub mod error;
pub mod linalg;
pub mod module;
pub mod pipeline;
pub mod report;

pub use error::{Error, Result};
