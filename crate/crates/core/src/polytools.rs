//! Integer-valued polynomials in one variable, through their expansion in
//! binomial coefficients `C(x - x0, l)`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::scalar::Rational;

/// A polynomial of degree at most `values.len() - 1`, given by its values at
/// `base_point, base_point + 1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledPolynomial {
    pub base_point: BigInt,
    pub values: Vec<Rational>,
}

impl SampledPolynomial {
    /// `values` must be nonempty.
    pub fn new(base_point: BigInt, values: Vec<Rational>) -> Self {
        assert!(!values.is_empty(), "a sampled polynomial needs at least one value");
        SampledPolynomial { base_point, values }
    }

    /// Samples `f` at `base_point, …, base_point + degree`.
    pub fn sample(base_point: i64, degree: usize, f: impl Fn(&BigInt) -> Rational) -> Self {
        let values = (0..=degree).map(|k| f(&BigInt::from(base_point + k as i64))).collect();
        Self::new(BigInt::from(base_point), values)
    }

    pub fn degree_bound(&self) -> usize {
        self.values.len() - 1
    }

    /// Value at an arbitrary integer, via the binomial expansion.
    pub fn eval(&self, x: &BigInt) -> Rational {
        eval_binomial(&binomial_coefficients(self), &(x - &self.base_point))
    }
}

/// `C(y, l)` for any integer `y` (negative `y` included).
pub fn binom_any(y: &BigInt, l: usize) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..l {
        num *= y - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    Rational::new(num, den)
}

/// `Σ a_l C(y, l)`.
pub fn eval_binomial(a: &[Rational], y: &BigInt) -> Rational {
    a.iter().enumerate().map(|(l, c)| c * binom_any(y, l)).sum()
}

/// Coefficients `a_0, …, a_r` with `P(x) = Σ a_l C(x - base_point, l)`,
/// read off the leading entries of the forward-difference table.
pub fn binomial_coefficients(p: &SampledPolynomial) -> Vec<Rational> {
    let mut row = p.values.clone();
    let mut out = Vec::with_capacity(row.len());
    while let Some(first) = row.first() {
        out.push(first.clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// The same coefficients from the closed form
/// `a_p = Σ_i (-1)^{p-i} C(p, i) P(x0 + i)`.
pub fn binomial_coefficients_alternating(p: &SampledPolynomial) -> Vec<Rational> {
    (0..p.values.len())
        .map(|k| {
            (0..=k).fold(Rational::zero(), |acc, i| {
                let c = Rational::from_integer(binomial(BigInt::from(k), BigInt::from(i)));
                let term = c * &p.values[i];
                if (k - i) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// Whether `P` takes integer values on all integers.
pub fn is_integer_valued(p: &SampledPolynomial) -> bool {
    binomial_coefficients(p).iter().all(|a| a.is_integer())
}
