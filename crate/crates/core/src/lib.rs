//! Exact-arithmetic engine for cochain-level algebraic topology on finite
//! ordered simplicial complexes.
//!
//! The crate computes cohomology over `Z` and `Z/m` with explicit generator
//! cocycles, cup and cup-i products, classical and generalized Steenrod
//! squares, Bockstein operations and the Bockstein spectral sequence, Wu
//! classes, and the auxiliary/linking pairings of odd-dimensional
//! Poincare-duality complexes. Everything is integer arithmetic; there is no
//! floating point anywhere.

pub mod abelian;
pub mod bss;
pub mod cochain;
pub mod cohomology;
pub mod complex;
pub mod error;
pub mod pairings;
pub mod reduction;
pub mod ring;
pub mod snf;
pub mod steenrod;
pub mod verify;

pub use bss::{BssDegree, BssPage};
pub use cochain::Cochain;
pub use cohomology::{CohomologyClass, CohomologyGroup, SesSpec, Space};
pub use complex::{CochainComplex, Simplex, SimplicialComplex};
pub use error::Error;
pub use pairings::{
    DualityCertificate, Dyadic, Gram, PairingMatrix, Theorem73Report, WuClassVector,
    WuLiftObstruction,
};
pub use ring::Ring;
pub use snf::{kernel_mod, rank_gf2, smith_normal_form, solve_mod, IntMatrix, SnfResult};
pub use steenrod::{pullback_cochain, suspend_cochain, Beta2Coset};
