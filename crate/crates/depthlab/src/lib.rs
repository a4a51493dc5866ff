//! Exact-arithmetic workbench for (weight, depth)-bigraded Lie algebras
//! built out of period polynomials of cusp forms.
//!
//! The crate materializes, cell by cell, the objects needed to test the
//! standard conjectures about depth-graded multizeta Lie algebras at desk
//! scale: the free Lie algebra on two letters with its Ihara bracket, the
//! even period polynomial spaces, the quadratically presented model Lie
//! algebras built from them, their Chevalley-Eilenberg homology, Koszulity
//! diagnostics for the enveloping algebra, and bivariate Hilbert series of
//! Broadhurst-Kreimer type. Every computation is exact (rational
//! arithmetic); every claim is checked on an explicit inclusive window
//! `(max_weight, max_depth)` and reported with machine-readable evidence.

pub mod cli;
pub mod depthgraded;
pub mod exactlin;
pub mod freelie;
pub mod homology;
pub mod koszul;
pub mod periodpoly;
pub mod presented;
pub mod report;
pub mod series;

pub use exactlin::{Matrix, Scalar, Subspace};
pub use freelie::{Bidegree, LieElement, Word};
pub use report::{Report, Status, Window};
