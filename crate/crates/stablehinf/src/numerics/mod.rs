//! Self-contained complex-arithmetic utilities: polynomials, simultaneous
//! root finding, rational functions, Hermitian PSD tests and partial
//! fractions. Everything here is pure and safe to use from multiple threads.

pub mod hermitian;
pub mod partial_fractions;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod simplex;

pub use hermitian::{is_psd, HermitianMatrix, PSD_TOL};
pub use partial_fractions::{partial_fractions, PartialFractions, PoleTerm};
pub use poly::Poly;
pub use rational::RationalFn;
pub use roots::{cluster_roots, poly_roots, TOL_ROOT};
