//! Surgery diagrams: the Legendrian surgery link, its contact coefficients
//! and the knots living in its complement.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_positive() {
            1
        } else if self.0.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// The integer value, if the number is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid rational number {0:?}")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.trim_start_matches('+').parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rational::new(n, d))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Sign of a contact surgery coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A contact surgery coefficient of the form `±1/m` with `m ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ContactCoefficient {
    sign: Sign,
    magnitude: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoefficientError {
    #[error("contact coefficient denominator must be a positive integer")]
    ZeroMagnitude,
    #[error(
        "contact coefficient {0:?} is not of the form ±1/m; general rational coefficients \
         must be expanded into a (±1/m)-diagram before they can be used"
    )]
    General(String),
    #[error("malformed contact coefficient {0:?}")]
    Malformed(String),
}

impl ContactCoefficient {
    pub fn new(sign: Sign, magnitude: u64) -> Result<Self, CoefficientError> {
        if magnitude == 0 {
            return Err(CoefficientError::ZeroMagnitude);
        }
        Ok(ContactCoefficient { sign, magnitude })
    }

    pub fn plus_one() -> Self {
        ContactCoefficient { sign: Sign::Plus, magnitude: 1 }
    }

    pub fn minus_one() -> Self {
        ContactCoefficient { sign: Sign::Minus, magnitude: 1 }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn magnitude(&self) -> u64 {
        self.magnitude
    }

    /// The coefficient as an exact rational `s/m`.
    pub fn value(&self) -> Rational {
        Rational::new(self.sign.as_i64(), self.magnitude)
    }
}

impl fmt::Display for ContactCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        if self.magnitude == 1 {
            write!(f, "{s}1")
        } else {
            write!(f, "{s}1/{}", self.magnitude)
        }
    }
}

impl FromStr for ContactCoefficient {
    type Err = CoefficientError;

    /// Accepts `[+-]1/<m>`, `[+-]1`, and an unsigned `1/<m>` or `1`.
    /// Any other rational is reported as a general coefficient.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (sign, rest) = match t.as_bytes().first() {
            Some(b'+') => (Sign::Plus, &t[1..]),
            Some(b'-') => (Sign::Minus, &t[1..]),
            _ => (Sign::Plus, t),
        };
        let (num, den) = match rest.split_once('/') {
            Some((n, d)) => (n, d),
            None => (rest, "1"),
        };
        let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
        if !digits(num) || !digits(den) {
            return Err(CoefficientError::Malformed(s.to_string()));
        }
        let num: BigInt = num.parse().map_err(|_| CoefficientError::Malformed(s.to_string()))?;
        let den: BigInt = den.parse().map_err(|_| CoefficientError::Malformed(s.to_string()))?;
        if den.is_zero() {
            return Err(CoefficientError::ZeroMagnitude);
        }
        if !num.is_one() {
            return Err(CoefficientError::General(s.to_string()));
        }
        let magnitude = den
            .to_u64()
            .ok_or_else(|| CoefficientError::Malformed(s.to_string()))?;
        ContactCoefficient::new(sign, magnitude)
    }
}

/// A component `L_i` of the Legendrian surgery link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendrianComponent {
    pub name: String,
    pub tb: i64,
    pub rot: i64,
    pub coeff: ContactCoefficient,
}

impl LegendrianComponent {
    pub fn new(name: impl Into<String>, tb: i64, rot: i64, coeff: ContactCoefficient) -> Self {
        LegendrianComponent { name: name.into(), tb, rot, coeff }
    }

    /// Topological surgery slope `p/q`, normalized to `q = m > 0`.
    ///
    /// The topological coefficient is the contact coefficient plus `tb`,
    /// so for a contact coefficient `s/m` this is `(m·tb + s) / m`.
    /// `m·tb + s` is coprime to `m`, so the fraction is already reduced.
    pub fn topological_coefficient(&self) -> (BigInt, BigInt) {
        let m = BigInt::from(self.coeff.magnitude);
        let p = &m * self.tb + self.coeff.sign.as_i64();
        (p, m)
    }
}

/// Orientation of a transverse knot relative to the contact planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransverseSign {
    Positive,
    Negative,
}

impl TransverseSign {
    pub fn flip(self) -> Self {
        match self {
            TransverseSign::Positive => TransverseSign::Negative,
            TransverseSign::Negative => TransverseSign::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotKind {
    Legendrian { tb: i64, rot: i64 },
    Transverse { sl: i64, sign: TransverseSign },
}

/// A knot in the complement of the surgery link whose invariants we want
/// in the surgered manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionKnot {
    pub name: String,
    pub kind: KnotKind,
    /// Linking numbers with `L_1, …, L_k`.
    pub lk: Vec<i64>,
}

impl CompanionKnot {
    pub fn legendrian(name: impl Into<String>, tb: i64, rot: i64, lk: Vec<i64>) -> Self {
        CompanionKnot { name: name.into(), kind: KnotKind::Legendrian { tb, rot }, lk }
    }

    pub fn transverse(name: impl Into<String>, sl: i64, sign: TransverseSign, lk: Vec<i64>) -> Self {
        CompanionKnot { name: name.into(), kind: KnotKind::Transverse { sl, sign }, lk }
    }

    pub fn is_legendrian(&self) -> bool {
        matches!(self.kind, KnotKind::Legendrian { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryDiagram {
    pub components: Vec<LegendrianComponent>,
    /// Pairwise linking numbers `lk(L_i, L_j)`, zero on the diagonal.
    pub linking: Vec<Vec<i64>>,
    pub knots: Vec<CompanionKnot>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    fn error(message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Error, message: message.into() }
    }

    fn warning(message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Warning, message: message.into() }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

impl SurgeryDiagram {
    pub fn new(
        components: Vec<LegendrianComponent>,
        linking: Vec<Vec<i64>>,
        knots: Vec<CompanionKnot>,
    ) -> Self {
        SurgeryDiagram { components, linking, knots }
    }

    /// The standard tight 3-sphere: no surgery at all.
    pub fn empty() -> Self {
        SurgeryDiagram::default()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn knot(&self, name: &str) -> Option<&CompanionKnot> {
        self.knots.iter().find(|k| k.name == name)
    }

    /// True when every contact coefficient is `±1`.
    pub fn is_pm1(&self) -> bool {
        self.components.iter().all(|c| c.coeff.magnitude() == 1)
    }

    pub fn has_errors(&self) -> bool {
        self.validate().iter().any(Diagnostic::is_error)
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let k = self.components.len();

        for c in &self.components {
            if (c.tb + c.rot).is_even() {
                out.push(Diagnostic::warning(format!(
                    "component {:?}: tb+rot even (tb={}, rot={})",
                    c.name, c.tb, c.rot
                )));
            }
        }

        if self.linking.len() != k || self.linking.iter().any(|row| row.len() != k) {
            out.push(Diagnostic::error(format!(
                "linking matrix must be {k}x{k} to match the number of components"
            )));
        } else {
            for i in 0..k {
                if self.linking[i][i] != 0 {
                    out.push(Diagnostic::error(format!(
                        "linking matrix diagonal entry {} is {} (must be 0; framing is carried by tb)",
                        i + 1,
                        self.linking[i][i]
                    )));
                }
            }
            let symmetric = (0..k).all(|i| (0..i).all(|j| self.linking[i][j] == self.linking[j][i]));
            if !symmetric {
                out.push(Diagnostic::error("linking matrix not symmetric"));
            }
        }

        let mut names: Vec<&str> = self.components.iter().map(|c| c.name.as_str()).collect();
        names.extend(self.knots.iter().map(|c| c.name.as_str()));
        let mut sorted = names.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                out.push(Diagnostic::error(format!("duplicate name {:?}", w[0])));
            }
        }

        for knot in &self.knots {
            if knot.lk.len() != k {
                out.push(Diagnostic::error(format!(
                    "knot {:?}: lk vector has length {}, expected {k}",
                    knot.name,
                    knot.lk.len()
                )));
            }
            if let KnotKind::Legendrian { tb, rot } = knot.kind {
                if (tb + rot).is_even() {
                    out.push(Diagnostic::warning(format!(
                        "knot {:?}: tb+rot even (tb={tb}, rot={rot})",
                        knot.name
                    )));
                }
            }
        }
        out
    }
}

impl Default for SurgeryDiagram {
    fn default() -> Self {
        SurgeryDiagram { components: Vec::new(), linking: Vec::new(), knots: Vec::new() }
    }
}

/// Free-function form of [`LegendrianComponent::topological_coefficient`].
pub fn topological_coefficient(c: &LegendrianComponent) -> (BigInt, BigInt) {
    c.topological_coefficient()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unknot(coeff: &str) -> LegendrianComponent {
        LegendrianComponent::new("L", -1, 0, coeff.parse().unwrap())
    }

    #[test]
    fn minimal_diagram_is_valid() {
        let d = SurgeryDiagram::new(vec![unknot("+1/1")], vec![vec![0]], vec![]);
        assert!(d.validate().is_empty());
    }

    #[test]
    fn parity_violation_is_a_warning() {
        let c = LegendrianComponent::new("L", -1, 1, ContactCoefficient::plus_one());
        let d = SurgeryDiagram::new(vec![c], vec![vec![0]], vec![]);
        let diags = d.validate();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].severity, Severity::Warning);
        assert!(diags[0].message.contains("tb+rot even"));
        assert!(!d.has_errors());
    }

    #[test]
    fn asymmetric_linking_is_an_error() {
        let a = LegendrianComponent::new("A", -1, 0, ContactCoefficient::plus_one());
        let b = LegendrianComponent::new("B", -1, 0, ContactCoefficient::plus_one());
        let d = SurgeryDiagram::new(vec![a, b], vec![vec![0, 1], vec![2, 0]], vec![]);
        let diags = d.validate();
        assert!(diags.iter().any(|x| x.is_error() && x.message == "linking matrix not symmetric"));
    }

    #[test]
    fn lk_length_mismatch_is_an_error() {
        let knot = CompanionKnot::legendrian("K", -1, 0, vec![1, 2]);
        let d = SurgeryDiagram::new(vec![unknot("+1")], vec![vec![0]], vec![knot]);
        assert!(d.has_errors());
    }

    #[test]
    fn nonzero_diagonal_is_an_error() {
        let d = SurgeryDiagram::new(vec![unknot("+1")], vec![vec![3]], vec![]);
        assert!(d.has_errors());
    }

    #[test]
    fn topological_coefficients() {
        let tc = |tb: i64, c: &str| {
            let (p, q) = LegendrianComponent::new("L", tb, 0, c.parse().unwrap()).topological_coefficient();
            (p, q)
        };
        assert_eq!(tc(-1, "+1/1"), (BigInt::from(0), BigInt::from(1)));
        assert_eq!(tc(-1, "-1/1"), (BigInt::from(-2), BigInt::from(1)));
        assert_eq!(tc(-1, "+1/2"), (BigInt::from(-1), BigInt::from(2)));
        assert_eq!(tc(-1, "-1/2"), (BigInt::from(-3), BigInt::from(2)));
    }

    #[test]
    fn general_coefficients_are_rejected() {
        assert!(matches!("-3/4".parse::<ContactCoefficient>(), Err(CoefficientError::General(_))));
        assert!(matches!("3/4".parse::<ContactCoefficient>(), Err(CoefficientError::General(_))));
        assert!(matches!("2".parse::<ContactCoefficient>(), Err(CoefficientError::General(_))));
        assert_eq!("1/0".parse::<ContactCoefficient>(), Err(CoefficientError::ZeroMagnitude));
        assert!(matches!("x/2".parse::<ContactCoefficient>(), Err(CoefficientError::Malformed(_))));
        assert!(matches!("+-1".parse::<ContactCoefficient>(), Err(CoefficientError::Malformed(_))));
    }

    #[test]
    fn coefficient_parse_and_display() {
        let c: ContactCoefficient = "-1/3".parse().unwrap();
        assert_eq!(c.sign(), Sign::Minus);
        assert_eq!(c.magnitude(), 3);
        assert_eq!(c.to_string(), "-1/3");
        assert_eq!("1".parse::<ContactCoefficient>().unwrap(), ContactCoefficient::plus_one());
        assert_eq!("-1".parse::<ContactCoefficient>().unwrap(), ContactCoefficient::minus_one());
        assert_eq!(c.value(), Rational::new(-1, 3));
    }

    #[test]
    fn rational_is_reduced() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::from(4).to_string(), "4");
        assert_eq!("-6/4".parse::<Rational>().unwrap(), r);
        assert_eq!("+5".parse::<Rational>().unwrap(), Rational::from(5));
        assert!("1/0".parse::<Rational>().is_err());
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn topological_slope_is_reduced(tb in -20i64..20, m in 1u64..30, plus in any::<bool>()) {
            let sign = if plus { Sign::Plus } else { Sign::Minus };
            let c = LegendrianComponent::new("L", tb, 0, ContactCoefficient::new(sign, m).unwrap());
            let (p, q) = c.topological_coefficient();
            prop_assert!(q > BigInt::zero());
            if !p.is_zero() {
                prop_assert!(p.gcd(&q).is_one());
            }
            // slope = contact coefficient + tb
            prop_assert_eq!(Rational::new(p, q), c.coeff.value() + Rational::from(tb));
        }
    }
}
