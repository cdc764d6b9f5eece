//! Involutive commutative semirings used as matrix entries.
//!
//! Four domains ship with the crate:
//!
//! | kind        | carrier            | addition | involution  |
//! |-------------|--------------------|----------|-------------|
//! | `bool`      | {0, 1}             | or       | identity    |
//! | `complex`   | ℂ                  | +        | conjugation |
//! | `nonneg_real` | [0, ∞)           | +        | identity    |
//! | `quantale_ext_nonneg_real` | [0, ∞] | sup   | identity    |
//!
//! The quantale only ever takes joins of finite families, since every
//! matrix in the crate is finite.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance used by the approximate domains unless overridden.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Boolean,
    Complex,
    NonnegReal,
    Quantale,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::Boolean, Kind::Complex, Kind::NonnegReal, Kind::Quantale];

    /// The string tag used in algebra files.
    pub fn tag(self) -> &'static str {
        match self {
            Kind::Boolean => "bool",
            Kind::Complex => "complex",
            Kind::NonnegReal => "nonneg_real",
            Kind::Quantale => "quantale_ext_nonneg_real",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.tag() == tag)
    }

    /// Domains whose equality is exact (no tolerance).
    pub fn is_exact(self) -> bool {
        matches!(self, Kind::Boolean)
    }

    /// Domains whose addition is a join (idempotent supremum).
    pub fn is_lattice(self) -> bool {
        matches!(self, Kind::Boolean | Kind::Quantale)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarDomain {
    pub kind: Kind,
    pub tolerance: f64,
}

/// A single matrix entry. `Real` carries both the nonnegative reals and the
/// extended quantale, where `f64::INFINITY` is the top element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scalar {
    Bool(bool),
    Complex(Complex64),
    Real(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Mul,
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match *self {
            Scalar::Bool(b) => !b,
            Scalar::Complex(z) => z == Complex64::new(0.0, 0.0),
            Scalar::Real(x) => x == 0.0,
        }
    }

    /// Modulus; booleans map to 0 or 1.
    pub fn magnitude(&self) -> f64 {
        match *self {
            Scalar::Bool(b) => f64::from(u8::from(b)),
            Scalar::Complex(z) => z.norm(),
            Scalar::Real(x) => x,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Scalar::Bool(b) => write!(f, "{}", u8::from(b)),
            Scalar::Complex(z) if z.im == 0.0 => write!(f, "{}", z.re),
            Scalar::Complex(z) => write!(f, "{}{:+}i", z.re, z.im),
            Scalar::Real(x) if x.is_infinite() => f.write_str("inf"),
            Scalar::Real(x) => write!(f, "{x}"),
        }
    }
}

impl ScalarDomain {
    pub fn new(kind: Kind) -> Self {
        ScalarDomain {
            kind,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn boolean() -> Self {
        Self::new(Kind::Boolean)
    }

    pub fn complex() -> Self {
        Self::new(Kind::Complex)
    }

    pub fn nonneg_real() -> Self {
        Self::new(Kind::NonnegReal)
    }

    pub fn quantale() -> Self {
        Self::new(Kind::Quantale)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn zero(&self) -> Scalar {
        match self.kind {
            Kind::Boolean => Scalar::Bool(false),
            Kind::Complex => Scalar::Complex(Complex64::new(0.0, 0.0)),
            Kind::NonnegReal | Kind::Quantale => Scalar::Real(0.0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.kind {
            Kind::Boolean => Scalar::Bool(true),
            Kind::Complex => Scalar::Complex(Complex64::new(1.0, 0.0)),
            Kind::NonnegReal | Kind::Quantale => Scalar::Real(1.0),
        }
    }

    /// Embeds a nonnegative real weight (booleans: nonzero becomes 1).
    pub fn from_real(&self, x: f64) -> Scalar {
        match self.kind {
            Kind::Boolean => Scalar::Bool(x != 0.0),
            Kind::Complex => Scalar::Complex(Complex64::new(x, 0.0)),
            Kind::NonnegReal | Kind::Quantale => Scalar::Real(x),
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (self.kind, *x) {
            (Kind::Boolean, Scalar::Bool(_)) => true,
            (Kind::Complex, Scalar::Complex(z)) => z.re.is_finite() && z.im.is_finite(),
            (Kind::NonnegReal, Scalar::Real(v)) => v.is_finite() && v >= 0.0,
            (Kind::Quantale, Scalar::Real(v)) => v >= 0.0,
            _ => false,
        }
    }

    pub fn check(&self, x: Scalar) -> Result<Scalar> {
        if self.contains(&x) {
            Ok(x)
        } else {
            Err(Error::NotInDomain {
                kind: self.kind,
                value: x,
            })
        }
    }

    /// `x + y` (join in the lattice domains) or `x · y`.
    pub fn combine(&self, op: Op, x: Scalar, y: Scalar) -> Result<Scalar> {
        let x = self.check(x)?;
        let y = self.check(y)?;
        Ok(match (x, y) {
            (Scalar::Bool(a), Scalar::Bool(b)) => Scalar::Bool(match op {
                Op::Add => a | b,
                Op::Mul => a & b,
            }),
            (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(match op {
                Op::Add => a + b,
                Op::Mul => a * b,
            }),
            (Scalar::Real(a), Scalar::Real(b)) => Scalar::Real(match op {
                Op::Add => real_add(self.kind, a, b),
                Op::Mul => real_mul(a, b),
            }),
            _ => unreachable!("both operands were checked against the domain"),
        })
    }

    pub fn add(&self, x: Scalar, y: Scalar) -> Result<Scalar> {
        self.combine(Op::Add, x, y)
    }

    pub fn mul(&self, x: Scalar, y: Scalar) -> Result<Scalar> {
        self.combine(Op::Mul, x, y)
    }

    pub fn involve(&self, x: Scalar) -> Scalar {
        match x {
            Scalar::Complex(z) => Scalar::Complex(z.conj()),
            other => other,
        }
    }

    /// Tolerance-aware equality. Booleans compare exactly; +∞ only equals +∞.
    pub fn scalar_eq(&self, x: Scalar, y: Scalar) -> bool {
        match (x, y) {
            (Scalar::Bool(a), Scalar::Bool(b)) => a == b,
            (Scalar::Complex(a), Scalar::Complex(b)) => complex_eq(self.tolerance, a, b),
            (Scalar::Real(a), Scalar::Real(b)) => real_eq(self.tolerance, a, b),
            _ => false,
        }
    }
}

pub(crate) fn real_add(kind: Kind, a: f64, b: f64) -> f64 {
    if kind == Kind::Quantale {
        a.max(b)
    } else {
        a + b
    }
}

/// Product with the quantale convention `0 · ∞ = 0`.
pub(crate) fn real_mul(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

pub(crate) fn real_eq(tol: f64, a: f64, b: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

pub(crate) fn complex_eq(tol: f64, a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
}
