//! Exact computations in linear categories of set partitions.
//!
//! Linear combinations of partitions carry coefficients either in the
//! rationals ([`Q`]) or in rational functions of the loop parameter and
//! free parameters ([`Coeff`]). On top of the category operations the crate
//! approximates the category generated by given elements up to a length
//! bound, compares it with the easy categories, and implements the linear
//! maps and matrix functors used to relate such categories.

pub mod basis;
mod cache;
pub mod catalog;
pub mod closure;
pub mod coeff;
pub mod error;
pub mod lincomb;
pub mod maps;
pub mod ops;
pub mod parse;
pub mod partition;
pub mod plan;
pub mod poly;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod table1;
pub mod tensor_rep;

pub use basis::{Insertion, ModuleBasis};
pub use cache::CACHE_ENV;
pub use closure::{CategoryApprox, ClosureConfig};
pub use coeff::{Coeff, Specialization};
pub use error::{Error, Result};
pub use lincomb::LinComb;
pub use partition::{Partition, PartitionIndex};
pub use poly::{Poly, Symbol, Q};
pub use scalar::Scalar;
