//! Finite groupoids as exact simplicial diagrams, built over a category of
//! finite sets with distinguished injections and surjections.
//!
//! The crate verifies the axioms of such two-class categories over capped
//! universes, constructs finite groupoids from sketch or composition-table
//! data with exhaustively validated laws, computes nerves in three
//! equivalent descriptions, classifies functors through their source-map
//! and transitor squares, and implements the Morita fraction calculus
//! (spans of equivalences, butterfly validation, irreducible reduction and
//! composition) with brute-force oracles at desk scale.

pub mod diptych;
pub mod finmap;
pub mod simplicial;

pub use finmap::{FiniteMap, FiniteSet};
