//! Berezin symbol analysis on reproducing kernel Hilbert spaces.
//!
//! The library models operators as dense complex matrices, evaluates their
//! Berezin symbols over concrete kernel spaces (standard basis, truncated
//! Hardy, truncated Bergman), and machine-checks a family of Berezin
//! number/norm inequalities on finite sample plans.

pub mod berezin;
pub mod bounds;
pub mod cli;
pub mod linalg;
pub mod rkhs;
pub mod verify;

pub use berezin::BerezinEstimate;
pub use bounds::BoundReport;
pub use linalg::{ComplexMatrix, HermitianEigen};
pub use rkhs::{KernelSpace, Point, SamplePlan, SpaceKind};
pub use verify::{OperatorClass, OperatorSpec, SuiteReport};
