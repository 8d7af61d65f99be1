//! Exact computations for the free two-step nilpotent Lie algebra
//! `g = V ⊕ Λ²V`: Chevalley–Eilenberg homology, its decomposition into Schur
//! modules indexed by self-conjugate partitions, and the C∞ structure
//! transferred to harmonic forms.
//!
//! All arithmetic is over `Q` with arbitrary precision.

pub mod cecomplex;
pub mod exterior;
pub mod partitions;
pub mod ratlinalg;
pub mod report;
pub mod runner;
pub mod transfer;

pub use cecomplex::{CeComplex, HomologyTable};
pub use exterior::{Element, ExteriorAlgebra, Generator, Monomial, MultiDegree};
pub use partitions::{Partition, TruncatedSymPoly};
pub use ratlinalg::{Rational, RationalMatrix};
pub use transfer::{HClass, SignVariant, Transfer, TransferConfig};
