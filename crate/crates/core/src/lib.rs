//! Classical invariants of Legendrian and transverse knots, and the
//! d₃-invariant of the ambient contact structure, for manifolds presented
//! by contact (±1/n)-surgery diagrams in the standard tight 3-sphere.
//!
//! All arithmetic is exact: integers are arbitrary precision and every
//! fractional quantity is a [`Rational`].

pub mod d3;
pub mod exactlin;
pub mod frontlang;
pub mod invariants;
pub mod model;
pub mod surgery;

pub use model::{
    CompanionKnot, ContactCoefficient, Diagnostic, KnotKind, LegendrianComponent, Rational,
    Severity, Sign, SurgeryDiagram, TransverseSign,
};
