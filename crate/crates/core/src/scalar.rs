//! Exact rationals and one-parameter affine scalars `a + b·t`.
//!
//! Every quantity the engine touches is either a plain rational or an affine
//! expression in a single free parameter: the odd Dynkin label of a type I
//! superalgebra, or the deformation parameter of `osp(4|2;α)`. The two never
//! occur together inside one algebra context, so products of two
//! non-constant scalars are reported as [`ScalarError::QuadraticOverflow`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds `num/den` from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `INT` or `INT/INT` with an optional leading `-`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let valid = |s: &str, signed: bool| {
        let digits = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Which free parameter an affine scalar depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamTag {
    None,
    /// The free odd Dynkin label of a type I superalgebra (printed `t`).
    OddLabel,
    /// The deformation parameter of `osp(4|2;α)` (printed `a`).
    Alpha,
}

impl ParamTag {
    pub fn symbol(self) -> &'static str {
        match self {
            ParamTag::None => "",
            ParamTag::OddLabel => "t",
            ParamTag::Alpha => "a",
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot combine scalars in different parameters ({0:?} and {1:?})")]
    ParamMismatch(ParamTag, ParamTag),
    #[error("product of two parameter-dependent scalars is not affine")]
    QuadraticOverflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("quotient {0} / {1} is not parameter-free")]
    NotProportional(String, String),
}

/// Result of solving `a + b·t = 0` for `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroSet {
    /// Exactly one solution.
    At(Rational),
    /// Nonzero constant, never vanishes.
    Never,
    /// Vanishes for every value of the parameter.
    IdenticallyZero,
}

/// `constant + slope·param`, in canonical form: a zero slope always carries
/// [`ParamTag::None`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineScalar {
    constant: Rational,
    slope: Rational,
    param: ParamTag,
}

impl AffineScalar {
    pub fn new(constant: Rational, slope: Rational, param: ParamTag) -> Self {
        let mut s = AffineScalar { constant, slope, param };
        s.canonicalize();
        s
    }

    pub fn constant(c: Rational) -> Self {
        AffineScalar { constant: c, slope: Rational::zero(), param: ParamTag::None }
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// The bare parameter `0 + 1·t`.
    pub fn param(tag: ParamTag) -> Self {
        Self::new(Rational::zero(), Rational::one(), tag)
    }

    fn canonicalize(&mut self) {
        if self.slope.is_zero() || self.param == ParamTag::None {
            self.slope = Rational::zero();
            self.param = ParamTag::None;
        }
    }

    pub fn constant_part(&self) -> &Rational {
        &self.constant
    }

    pub fn slope(&self) -> &Rational {
        &self.slope
    }

    pub fn tag(&self) -> ParamTag {
        self.param
    }

    pub fn is_constant(&self) -> bool {
        self.param == ParamTag::None
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.constant.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_constant().then_some(&self.constant)
    }

    fn join_tags(a: ParamTag, b: ParamTag) -> Result<ParamTag, ScalarError> {
        match (a, b) {
            (ParamTag::None, t) | (t, ParamTag::None) => Ok(t),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(ScalarError::ParamMismatch(x, y)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ScalarError> {
        let tag = Self::join_tags(self.param, other.param)?;
        Ok(Self::new(&self.constant + &other.constant, &self.slope + &other.slope, tag))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.constant, -&self.slope, self.param)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ScalarError> {
        match (self.is_constant(), other.is_constant()) {
            (false, false) => Err(ScalarError::QuadraticOverflow),
            (true, _) => Ok(other.scale(&self.constant)),
            (false, true) => Ok(self.scale(&other.constant)),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.constant * k, &self.slope * k, self.param)
    }

    pub fn add_rational(&self, k: &Rational) -> Self {
        Self::new(&self.constant + k, self.slope.clone(), self.param)
    }

    /// Exact quotient, defined when the divisor is a nonzero constant or when
    /// both operands are proportional (the quotient is then a constant).
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, ScalarError> {
        if let Some(d) = divisor.as_rational() {
            if d.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            return Ok(self.scale(&d.recip()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let not_prop = || ScalarError::NotProportional(self.to_string(), divisor.to_string());
        if self.param != divisor.param {
            return Err(not_prop());
        }
        let k = &self.slope / &divisor.slope;
        if &divisor.constant * &k != self.constant {
            return Err(not_prop());
        }
        Ok(Self::constant(k))
    }

    pub fn solve_zero(&self) -> ZeroSet {
        if self.is_constant() {
            if self.constant.is_zero() {
                ZeroSet::IdenticallyZero
            } else {
                ZeroSet::Never
            }
        } else {
            ZeroSet::At(-&self.constant / &self.slope)
        }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        &self.constant + &self.slope * t
    }

    /// Substitutes a value for the parameter only if it matches `tag`.
    pub fn eval_tag(&self, tag: ParamTag, t: &Rational) -> Self {
        if self.param == tag {
            Self::constant(self.eval(t))
        } else {
            self.clone()
        }
    }
}

impl From<Rational> for AffineScalar {
    fn from(q: Rational) -> Self {
        AffineScalar::constant(q)
    }
}

impl From<&Rational> for AffineScalar {
    fn from(q: &Rational) -> Self {
        AffineScalar::constant(q.clone())
    }
}

/// Ordering by constant part first, then slope; parameter-free values sort
/// before parametric ones with the same constant.
impl Ord for AffineScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.constant
            .cmp(&other.constant)
            .then_with(|| self.param.cmp(&other.param))
            .then_with(|| self.slope.cmp(&other.slope))
    }
}

impl PartialOrd for AffineScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `t`, `-t`, `3/2*a+2`, `5`, ...
impl fmt::Display for AffineScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return f.write_str(&fmt_rational(&self.constant));
        }
        let sym = self.param.symbol();
        if self.slope.is_one() {
            write!(f, "{sym}")?;
        } else if (-&self.slope).is_one() {
            write!(f, "-{sym}")?;
        } else {
            write!(f, "{}*{sym}", fmt_rational(&self.slope))?;
        }
        if self.constant.is_positive() {
            write!(f, "+{}", fmt_rational(&self.constant))?;
        } else if self.constant.is_negative() {
            write!(f, "{}", fmt_rational(&self.constant))?;
        }
        Ok(())
    }
}
