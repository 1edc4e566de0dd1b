//! Exact computations with group actions on finite linear categories:
//! orbit categories, smash products, and the 2-equivalence between
//! G-categories and G-graded categories, checked on concrete instances.
//!
//! Scalars are exact (rationals or a prime field). Every construction
//! comes with a validator returning a [`VerificationReport`].

pub mod bundle;
pub mod cli;
pub mod error;
pub mod exactlin;
pub mod fixtures;
pub mod gcat;
pub mod ginv;
pub mod graded;
pub mod lincat;
pub mod orbit;
pub mod report;
pub mod smash;
pub mod twofun;

pub use bundle::{Bundle, Model};
pub use error::{Error, Result};
pub use exactlin::{Mat, MatError, RingSpec, Scalar};
pub use gcat::{EquivFunctor, EquivMorphism, FinGroup, GCategory};
pub use ginv::{DensityWitness, InvFunctor, InvMorphism};
pub use graded::{DegFunctor, DegMorphism, GradedCat};
pub use lincat::{LinCat, LinCatBuilder, LinFunctor, Morphism, NatTrans};
pub use orbit::OrbitCat;
pub use report::{Check, VerificationReport};
pub use smash::SmashCat;
pub use twofun::{verify_main_theorem, FixtureSuite, TheoremReport};
