//! Construction and verification of code loops.
//!
//! The pipeline: a doubly even binary code ([`codes`]) induces a cubic form
//! with symmetric and trilinear polarizations ([`cubic`]); the form's
//! coefficients parametrize a finite 2-group with an order-3 symmetry
//! ([`triality`]); a coset space of that group carries a Moufang loop
//! multiplication ([`moufang`]), recovering the code loop of the code.

pub mod codes;
pub mod cubic;
pub mod error;
pub mod gf2;
pub mod moufang;
pub mod report;
pub mod sampling;
pub mod triality;

pub use codes::{validate_doubly_even, DoublyEvenCode};
pub use cubic::CubicSpace;
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use moufang::table::CayleyTable;
pub use moufang::{CodeLoop, LoopElement};
pub use report::{Mode, Report};
pub use triality::maps::TrialityMap;
pub use triality::{GroupElement, Subgroup, TrialityGroup};
