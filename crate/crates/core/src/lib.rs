//! Anyon models, q-deformed recoupling theory, braid-group gate synthesis,
//! qutrit circuit simulation, ternary arithmetic circuits, and Kauffman
//! bracket evaluation.
//!
//! The flow: `qdeform` supplies the q-6j kernel; `su2k` assembles the level-k
//! topological data; `anyon_models` packages Fibonacci, Ising, and
//! metaplectic instances with pentagon/hexagon/ribbon verifiers;
//! `fusion_space` turns fusion trees into braid-group representations;
//! `metaplectic_gates` multiplies braid generators into the named one- and
//! two-qutrit gates; `circuit` and `arithmetic` simulate and verify the
//! ternary circuits built from them; `kauffman` evaluates braid closures as
//! Laurent polynomials.

pub mod anyon_models;
pub mod arithmetic;
pub mod circuit;
pub mod error;
pub mod fusion_space;
pub mod kauffman;
pub mod matrix;
pub mod metaplectic_gates;
pub mod qdeform;
pub mod rng;
pub mod su2k;

pub use error::{Error, Result};
