//! Exact scalars: big rationals and the rational-function field ℚ(t).
//!
//! Algorithms elsewhere in the crate are generic over [`Field`], which is
//! implemented by [`BigRational`] (numeric runs, e.g. `q = 2`) and by
//! [`RationalFunction`] (symbolic runs, `q = t`). The tagged [`Scalar`] is
//! the untyped surface used for parsing, rendering and checked arithmetic.

pub(crate) mod modp;
mod ratfun;
mod text;
mod unipoly;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use ratfun::RationalFunction;
pub use text::{parse_rational, parse_scalar};
pub use unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands mix rational and rational-function scalars")]
    MixedScalarVariants,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole at evaluation point t = {0}")]
    PoleAtEvaluationPoint(BigRational),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Exact field of characteristic zero.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: BigRational) -> Self;
    fn to_scalar(&self) -> Scalar;
    fn from_scalar(s: &Scalar) -> Result<Self, ArithError>;

    /// Like [`Field::from_scalar`] but embeds rationals into ℚ(t).
    fn coerce_scalar(s: &Scalar) -> Result<Self, ArithError> {
        Self::from_scalar(s)
    }

    /// True if the value is the constant `c`.
    fn is_constant(&self, c: &BigRational) -> bool;

    fn is_one(&self) -> bool {
        self.is_constant(&<BigRational as One>::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        rhs.inv()
            .map(|r| self.clone() * r)
            .ok_or(ArithError::DivisionByZero)
    }

    /// Integer power; negative exponents invert.
    fn powi(&self, n: i64) -> Result<Self, ArithError> {
        let base = if n < 0 {
            self.inv().ok_or(ArithError::DivisionByZero)?
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc * &base;
        }
        Ok(acc)
    }

    /// Image in 𝔽_p under `t ↦ t0`, or `None` where a denominator vanishes.
    /// Ranks of residues bound exact ranks from below.
    fn residue(&self, p: u64, t0: u64) -> Option<u64>;

    /// Whether values depend on `t`; symbolic values need many samples to
    /// [`lift`](Field::lift).
    const SYMBOLIC: bool;

    /// Small exact value with residue `v_i` modulo 2^61 − 1 at each sample
    /// `(t_i, v_i)`. Rationals read only the first sample.
    fn lift(samples: &[(u64, u64)]) -> Option<Self>;
}

impl Field for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if <BigRational as Zero>::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: BigRational) -> Self {
        r
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Rat(self.clone())
    }
    fn from_scalar(s: &Scalar) -> Result<Self, ArithError> {
        match s {
            Scalar::Rat(r) => Ok(r.clone()),
            Scalar::RatFun(_) => Err(ArithError::MixedScalarVariants),
        }
    }
    fn is_constant(&self, c: &BigRational) -> bool {
        self == c
    }
    const SYMBOLIC: bool = false;
    fn lift(samples: &[(u64, u64)]) -> Option<Self> {
        let (n, d) = modp::rational_reconstruction(samples.first()?.1)?;
        Some(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
    fn residue(&self, p: u64, _t0: u64) -> Option<u64> {
        let d = int_residue(self.denom(), p);
        (d != 0).then(|| mul_mod(int_residue(self.numer(), p), inv_mod(d, p), p))
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
    fn from_rational(r: BigRational) -> Self {
        RationalFunction::constant(r)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::RatFun(self.clone())
    }
    fn from_scalar(s: &Scalar) -> Result<Self, ArithError> {
        match s {
            Scalar::RatFun(r) => Ok(r.clone()),
            Scalar::Rat(_) => Err(ArithError::MixedScalarVariants),
        }
    }
    fn coerce_scalar(s: &Scalar) -> Result<Self, ArithError> {
        Ok(s.embed())
    }
    fn is_constant(&self, c: &BigRational) -> bool {
        self.as_constant().is_some_and(|v| &v == c)
    }
    const SYMBOLIC: bool = true;
    fn lift(samples: &[(u64, u64)]) -> Option<Self> {
        let (n, d) = modp::rational_interpolation(samples)?;
        let coeffs = |p: &[u64]| {
            p.iter()
                .map(|&c| BigRational::lift(&[(0, c)]))
                .collect::<Option<Vec<_>>>()
        };
        RationalFunction::new(UniPoly::from_coeffs(coeffs(&n)?), UniPoly::from_coeffs(coeffs(&d)?)).ok()
    }
    fn residue(&self, p: u64, t0: u64) -> Option<u64> {
        let eval = |poly: &UniPoly| {
            poly.coeffs().iter().rev().try_fold(0u64, |acc, c| {
                Some((mul_mod(acc, t0 % p, p) + c.residue(p, t0)?) % p)
            })
        };
        let d = eval(self.denom())?;
        if d == 0 {
            return None;
        }
        Some(mul_mod(eval(self.numer())?, inv_mod(d, p), p))
    }
}

fn int_residue(n: &BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    n.mod_floor(&BigInt::from(p)).to_u64().expect("reduced below p")
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// A field element from either ℚ or ℚ(t).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    RatFun(RationalFunction),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn integer(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// The symbolic parameter `t`.
    pub fn t() -> Self {
        Scalar::RatFun(RationalFunction::t())
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Scalar::RatFun(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => <BigRational as Zero>::is_zero(r),
            Scalar::RatFun(r) => r.is_zero(),
        }
    }

    /// Reinterprets a rational as a constant rational function.
    pub fn embed(&self) -> RationalFunction {
        match self {
            Scalar::Rat(r) => RationalFunction::constant(r.clone()),
            Scalar::RatFun(r) => r.clone(),
        }
    }
}

/// Exact `a op b` for same-variant operands.
pub fn field_arithmetic(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ArithError> {
    fn apply<F: Field>(a: &F, b: &F, op: ArithOp) -> Result<F, ArithError> {
        Ok(match op {
            ArithOp::Add => a.clone() + b,
            ArithOp::Sub => a.clone() - b,
            ArithOp::Mul => a.clone() * b,
            ArithOp::Div => a.checked_div(b)?,
        })
    }
    match (a, b) {
        (Scalar::Rat(x), Scalar::Rat(y)) => apply(x, y, op).map(Scalar::Rat),
        (Scalar::RatFun(x), Scalar::RatFun(y)) => apply(x, y, op).map(Scalar::RatFun),
        _ => Err(ArithError::MixedScalarVariants),
    }
}

/// Evaluates a scalar at `t = t0`; rationals are constants.
pub fn specialize(s: &Scalar, t0: &BigRational) -> Result<BigRational, ArithError> {
    match s {
        Scalar::Rat(r) => Ok(r.clone()),
        Scalar::RatFun(r) => r.eval(t0),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => unipoly::fmt_rational(r, f),
            Scalar::RatFun(r) => write!(f, "{r}"),
        }
    }
}

impl std::str::FromStr for Scalar {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

/// Serialized as its rendering, which [`parse_scalar`] reads back.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_scalar(&text).map_err(serde::de::Error::custom)
    }
}

/// Shorthand for `n/d` as a big rational.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
