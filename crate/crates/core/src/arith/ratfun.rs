use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;

use super::unipoly::UniPoly;
use super::ArithError;

/// Element of ℚ(t), kept as a reduced fraction with monic denominator so that
/// equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numer: UniPoly,
    denom: UniPoly,
}

impl RationalFunction {
    pub fn new(numer: UniPoly, denom: UniPoly) -> Result<Self, ArithError> {
        if denom.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::canonical(numer, denom))
    }

    /// Returns the canonical form of `self`. Construction already
    /// canonicalizes, so this is idempotent by definition; it exists for
    /// callers holding raw parts via [`RationalFunction::from_raw_parts`].
    pub fn canonicalize(&self) -> Result<Self, ArithError> {
        Self::new(self.numer.clone(), self.denom.clone())
    }

    /// Builds without reducing. Only [`canonicalize`](Self::canonicalize) and
    /// the accessors are meaningful on such a value.
    pub fn from_raw_parts(numer: UniPoly, denom: UniPoly) -> Self {
        Self { numer, denom }
    }

    fn canonical(numer: UniPoly, denom: UniPoly) -> Self {
        if numer.is_zero() {
            return Self::zero_value();
        }
        if denom.is_one() {
            return Self { numer, denom };
        }
        if let Some(c) = denom.as_constant() {
            let inv = c.recip();
            return Self {
                numer: numer.scale(&inv),
                denom: UniPoly::one(),
            };
        }
        let g = numer.gcd(&denom);
        let (mut n, mut d) = if g.is_one() {
            (numer, denom)
        } else {
            (numer.div_rem(&g).0, denom.div_rem(&g).0)
        };
        if !d.is_monic() {
            let inv = d.leading().expect("nonzero denominator").recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Self { numer: n, denom: d }
    }

    fn zero_value() -> Self {
        Self {
            numer: UniPoly::zero(),
            denom: UniPoly::one(),
        }
    }

    pub fn t() -> Self {
        Self::from_poly(UniPoly::t())
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self {
            numer: p,
            denom: UniPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn numer(&self) -> &UniPoly {
        &self.numer
    }

    pub fn denom(&self) -> &UniPoly {
        &self.denom
    }

    pub fn zero() -> Self {
        Self::zero_value()
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.numer.is_one() && self.denom.is_one()
    }

    /// Some(c) when the function is the constant c.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.denom.is_one() {
            self.numer.as_constant()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::canonical(self.denom.clone(), self.numer.clone()))
        }
    }

    /// Value at `t = t0`.
    pub fn eval(&self, t0: &BigRational) -> Result<BigRational, ArithError> {
        let d = self.denom.eval(t0);
        if num_traits::Zero::is_zero(&d) {
            return Err(ArithError::PoleAtEvaluationPoint(t0.clone()));
        }
        Ok(self.numer.eval(t0) / d)
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        let rn = if negate { -&rhs.numer } else { rhs.numer.clone() };
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return Self {
                numer: rn,
                denom: rhs.denom.clone(),
            };
        }
        if self.denom == rhs.denom {
            let n = &self.numer + &rn;
            if self.denom.is_one() {
                return Self::from_poly(n);
            }
            return Self::canonical(n, self.denom.clone());
        }
        let n = &(&self.numer * &rhs.denom) + &(&rn * &self.denom);
        Self::canonical(n, &self.denom * &rhs.denom)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero_value();
        }
        if self.denom.is_one() && rhs.denom.is_one() {
            return Self::from_poly(&self.numer * &rhs.numer);
        }
        // Cross-cancel first so the product is already reduced.
        let g1 = self.numer.gcd(&rhs.denom);
        let g2 = rhs.numer.gcd(&self.denom);
        let n1 = if g1.is_one() { self.numer.clone() } else { self.numer.div_rem(&g1).0 };
        let d2 = if g1.is_one() { rhs.denom.clone() } else { rhs.denom.div_rem(&g1).0 };
        let n2 = if g2.is_one() { rhs.numer.clone() } else { rhs.numer.div_rem(&g2).0 };
        let d1 = if g2.is_one() { self.denom.clone() } else { self.denom.div_rem(&g2).0 };
        let n = &n1 * &n2;
        let d = &d1 * &d2;
        let inv = d.leading().expect("nonzero denominator").recip();
        if num_traits::One::is_one(&inv) {
            Self { numer: n, denom: d }
        } else {
            Self {
                numer: n.scale(&inv),
                denom: d.scale(&inv),
            }
        }
    }
}


macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                let f: fn(&RationalFunction, &RationalFunction) -> RationalFunction = $body;
                f(self, rhs)
            }
        }
        impl $trait<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
        impl $trait<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a.mul_impl(&b.recip().expect("division by zero rational function")));

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        Self {
            numer: -&self.numer,
            denom: self.denom,
        }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.clone().neg()
    }
}

/// `(numer)/(denom)` with both polynomials in ascending sparse form.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.numer, self.denom)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
