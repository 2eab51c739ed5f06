//! Euler class and d₃-invariant of the contact structure of a surgery
//! diagram.
//!
//! Two independent evaluations are provided. [`d3_pm1`] is the classical
//! formula for (±1)-diagrams,
//!
//! ```text
//! d₃ = ¼(⟨b, rot⟩ − 3σ(Q) − 2k) − ½ + q₊
//! ```
//!
//! where `q₊` counts the `+1` surgeries. [`d3_closed_form`] works directly on
//! a (±1/m)-diagram,
//!
//! ```text
//! d₃ = ¼ Σ (m_i b_i rot_i + (3 − m_i) s_i) − ¾σ(Q) − ½
//! ```
//!
//! and agrees with `d3_pm1(expand_to_pm1(diagram))`. In both, `b` is any
//! rational solution of `Q·b = rot`; one exists iff the Euler class is
//! torsion.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactlin::{solve_rational, symmetric_signature};
use crate::model::{Rational, SurgeryDiagram};
use crate::surgery::{build_q, positive_surgery_count, signature_of_q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum D3Error {
    #[error("component {name:?} has contact coefficient {coeff}; the (±1) formula needs ±1 everywhere")]
    NotPm1 { name: String, coeff: String },
}

/// Poincaré dual of the Euler class in the meridian basis, plus the torsion
/// witness `b` with `Q·b = rot` when one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerClassVector {
    /// `m_i·rot_i`, the coefficient of `μ_i`.
    pub coefficients: Vec<BigInt>,
    pub torsion: bool,
    pub b: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum D3Value {
    Defined(Rational),
    /// The Euler class is not torsion.
    Undefined,
}

impl D3Value {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            D3Value::Defined(r) => Some(r),
            D3Value::Undefined => None,
        }
    }
}

impl fmt::Display for D3Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            D3Value::Defined(r) => write!(f, "{r}"),
            D3Value::Undefined => write!(f, "undefined"),
        }
    }
}

pub fn euler_class(diagram: &SurgeryDiagram) -> EulerClassVector {
    let coefficients = diagram
        .components
        .iter()
        .map(|c| BigInt::from(c.coeff.magnitude()) * c.rot)
        .collect();
    let q = build_q(diagram);
    let rot: Vec<Rational> = diagram.components.iter().map(|c| Rational::from(c.rot)).collect();
    let b = solve_rational(q.matrix(), &rot)
        .expect("Q is k×k")
        .map(|s| s.particular);
    EulerClassVector { coefficients, torsion: b.is_some(), b }
}

/// `Σ m_i b_i rot_i`
pub fn euler_pairing(diagram: &SurgeryDiagram, b: &[Rational]) -> Rational {
    diagram
        .components
        .iter()
        .zip(b)
        .map(|(c, bi)| bi * &Rational::from(c.coeff.magnitude() as i64 * c.rot))
        .sum()
}

pub fn d3_closed_form(diagram: &SurgeryDiagram) -> D3Value {
    let Some(b) = euler_class(diagram).b else {
        return D3Value::Undefined;
    };
    let sign_terms: i64 = diagram
        .components
        .iter()
        .map(|c| (3 - c.coeff.magnitude() as i64) * c.coeff.sign().as_i64())
        .sum();
    let sigma = signature_of_q(diagram);
    let quarter = Rational::new(1, 4);
    let value = &quarter * &(euler_pairing(diagram, &b) + Rational::from(sign_terms))
        - Rational::new(3 * sigma, 4)
        - Rational::new(1, 2);
    D3Value::Defined(value)
}

pub fn d3_pm1(diagram: &SurgeryDiagram) -> Result<D3Value, D3Error> {
    if let Some(c) = diagram.components.iter().find(|c| c.coeff.magnitude() != 1) {
        return Err(D3Error::NotPm1 { name: c.name.clone(), coeff: c.coeff.to_string() });
    }
    let Some(b) = euler_class(diagram).b else {
        return Ok(D3Value::Undefined);
    };
    let q = build_q(diagram);
    let sigma = symmetric_signature(q.matrix())
        .expect("linking matrix of a (±1)-diagram is symmetric")
        .signature();
    let k = diagram.len() as i64;
    let plus = positive_surgery_count(diagram) as i64;
    let pairing = euler_pairing(diagram, &b);
    let value = Rational::new(1, 4) * (pairing - Rational::from(3 * sigma + 2 * k))
        - Rational::new(1, 2)
        + Rational::from(plus);
    Ok(D3Value::Defined(value))
}
