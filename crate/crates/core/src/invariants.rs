//! Classical invariants of a companion knot after surgery.
//!
//! For a knot `K` with linking vector `l`, let `d ≥ 1` be minimal with
//! `Q·a = d·l` solvable over ℤ. Then, with `q_i = m_i`,
//!
//! ```text
//! tb_M  = tb  − (1/d) Σ a_i q_i l_i
//! rot_M = rot − (1/d) Σ a_i q_i rot_i
//! sl_M  = sl  − (1/d) Σ a_i q_i (l_i ∓ rot_i)      (− for positively transverse)
//! ```
//!
//! With `d = 1` these are the integral invariants of a nullhomologous knot;
//! with `d > 1` they are the rational ones. The vector `a` encodes the
//! Seifert class. When `ker Q ≠ 0` the class is not unique and `rot_M`,
//! `sl_M` may shift by kernel vectors; `tb_M` never does.

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactlin::{minimal_order_solve, SolveResult};
use crate::model::{CompanionKnot, KnotKind, Rational, SurgeryDiagram, TransverseSign};
use crate::surgery::build_q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("no knot named {0:?} in the diagram")]
    UnknownKnot(String),
    #[error("knot {0:?} is not Legendrian")]
    NotLegendrian(String),
    #[error("knot {0:?} is not transverse")]
    NotTransverse(String),
    #[error("knot {name:?} has {got} linking numbers but the surgery link has {expected} components")]
    LinkingLength { name: String, got: usize, expected: usize },
}

/// Change of a Seifert-class dependent invariant when the solution `a` is
/// moved by one kernel generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelShift {
    pub generator: Vec<BigInt>,
    pub shift: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeifertDependence {
    /// `Q` is injective, so the Seifert class is unique.
    Unique,
    /// One entry per generator of `ker Q`. The invariant is determined up to
    /// the subgroup generated by the shifts.
    Kernel(Vec<KernelShift>),
}

impl SeifertDependence {
    /// True when no choice of Seifert class changes the value.
    pub fn is_independent(&self) -> bool {
        match self {
            SeifertDependence::Unique => true,
            SeifertDependence::Kernel(shifts) => shifts.iter().all(|s| s.shift.is_zero()),
        }
    }
}

/// A value computed with respect to the Seifert class given by the
/// solution vector, together with how it moves under other choices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeredValue {
    pub value: Rational,
    pub dependence: SeifertDependence,
}

fn check_knot(diagram: &SurgeryDiagram, knot: &CompanionKnot) -> Result<(), InvariantError> {
    if knot.lk.len() != diagram.len() {
        return Err(InvariantError::LinkingLength {
            name: knot.name.clone(),
            got: knot.lk.len(),
            expected: diagram.len(),
        });
    }
    Ok(())
}

/// Minimal order `d` and an integral solution of `Q·a = d·l`, or `None` when
/// the knot is not rationally nullhomologous in the surgered manifold.
pub fn order_and_solution(
    diagram: &SurgeryDiagram,
    knot: &CompanionKnot,
) -> Result<Option<SolveResult>, InvariantError> {
    check_knot(diagram, knot)?;
    let q = build_q(diagram);
    let l: Vec<BigInt> = knot.lk.iter().map(|&x| BigInt::from(x)).collect();
    Ok(minimal_order_solve(q.matrix(), &l).expect("Q is k×k and l has length k"))
}

/// `(1/d) Σ a_i q_i x_i`
fn correction(diagram: &SurgeryDiagram, a: &[BigInt], order: &BigInt, x: impl Fn(usize) -> BigInt) -> Rational {
    let sum: BigInt = diagram
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| &a[i] * BigInt::from(c.coeff.magnitude()) * x(i))
        .sum();
    Rational::new(sum, order.clone())
}

fn dependence(
    diagram: &SurgeryDiagram,
    solution: &SolveResult,
    x: impl Fn(usize) -> BigInt,
) -> SeifertDependence {
    if solution.kernel_basis.is_empty() {
        return SeifertDependence::Unique;
    }
    let shifts = solution
        .kernel_basis
        .iter()
        .map(|v| KernelShift {
            generator: v.clone(),
            shift: -correction(diagram, v, &solution.order, &x),
        })
        .collect();
    SeifertDependence::Kernel(shifts)
}

pub fn tb_surgered(
    diagram: &SurgeryDiagram,
    knot: &CompanionKnot,
    solution: &SolveResult,
) -> Result<Rational, InvariantError> {
    check_knot(diagram, knot)?;
    let KnotKind::Legendrian { tb, .. } = knot.kind else {
        return Err(InvariantError::NotLegendrian(knot.name.clone()));
    };
    let lk = |i: usize| BigInt::from(knot.lk[i]);
    Ok(Rational::from(tb) - correction(diagram, &solution.particular, &solution.order, lk))
}

pub fn rot_surgered(
    diagram: &SurgeryDiagram,
    knot: &CompanionKnot,
    solution: &SolveResult,
) -> Result<SurgeredValue, InvariantError> {
    check_knot(diagram, knot)?;
    let KnotKind::Legendrian { rot, .. } = knot.kind else {
        return Err(InvariantError::NotLegendrian(knot.name.clone()));
    };
    let rots = |i: usize| BigInt::from(diagram.components[i].rot);
    Ok(SurgeredValue {
        value: Rational::from(rot) - correction(diagram, &solution.particular, &solution.order, rots),
        dependence: dependence(diagram, solution, rots),
    })
}

pub fn sl_surgered(
    diagram: &SurgeryDiagram,
    knot: &CompanionKnot,
    solution: &SolveResult,
) -> Result<SurgeredValue, InvariantError> {
    check_knot(diagram, knot)?;
    let KnotKind::Transverse { sl, sign } = knot.kind else {
        return Err(InvariantError::NotTransverse(knot.name.clone()));
    };
    let term = |i: usize| {
        let (l, r) = (knot.lk[i], diagram.components[i].rot);
        BigInt::from(match sign {
            TransverseSign::Positive => l - r,
            TransverseSign::Negative => l + r,
        })
    };
    Ok(SurgeredValue {
        value: Rational::from(sl) - correction(diagram, &solution.particular, &solution.order, term),
        dependence: dependence(diagram, solution, term),
    })
}

/// Self-linking number of the positive (negative) transverse push-off of a
/// Legendrian knot: `tb ∓ rot`. Valid for integral and rational invariants.
pub fn legendrian_pushoff_sl(tb: &Rational, rot: &Rational, sign: TransverseSign) -> Rational {
    match sign {
        TransverseSign::Positive => tb - rot,
        TransverseSign::Negative => tb + rot,
    }
}

/// Everything known about one companion knot after surgery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub knot: String,
    /// `None` when the knot is not rationally nullhomologous; every value
    /// below is then absent as well.
    pub solution: Option<SolveResult>,
    pub tb: Option<Rational>,
    pub rot: Option<SurgeredValue>,
    pub sl: Option<SurgeredValue>,
}

impl InvariantReport {
    pub fn order(&self) -> Option<&BigInt> {
        self.solution.as_ref().map(|s| &s.order)
    }

    pub fn is_nullhomologous(&self) -> bool {
        self.order().is_some_and(|d| *d == BigInt::from(1))
    }
}

pub fn report(diagram: &SurgeryDiagram, knot: &CompanionKnot) -> Result<InvariantReport, InvariantError> {
    let Some(solution) = order_and_solution(diagram, knot)? else {
        return Ok(InvariantReport { knot: knot.name.clone(), solution: None, tb: None, rot: None, sl: None });
    };
    let (tb, rot, sl) = if knot.is_legendrian() {
        (Some(tb_surgered(diagram, knot, &solution)?), Some(rot_surgered(diagram, knot, &solution)?), None)
    } else {
        (None, None, Some(sl_surgered(diagram, knot, &solution)?))
    };
    Ok(InvariantReport { knot: knot.name.clone(), solution: Some(solution), tb, rot, sl })
}

pub fn report_by_name(diagram: &SurgeryDiagram, name: &str) -> Result<InvariantReport, InvariantError> {
    let knot = diagram.knot(name).ok_or_else(|| InvariantError::UnknownKnot(name.to_string()))?;
    report(diagram, knot)
}
