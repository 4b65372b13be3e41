//! Weyl dimension polynomials of the simple Lie algebras `A_n, B_n, C_n, D_n`
//! and `G2`, evaluated exactly at arbitrary rational label vectors.
//!
//! Label orderings (Bourbaki, except `G2`):
//! - `A_n`: along the chain.
//! - `B_n`: short simple root last.
//! - `C_n`: long simple root last.
//! - `D_n`: the two fork roots last.
//! - `G2`: `(long, short)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{int, Rational};
use crate::search::monotone_search;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    G2,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("invalid simple factor `{0}`")]
    Invalid(String),
    #[error("{factor} takes {expected} labels, got {got}")]
    LabelCount { factor: String, expected: usize, got: usize },
}

/// A simple Lie algebra of one of the supported series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleFactor {
    series: Series,
    rank: usize,
}

impl SimpleFactor {
    pub fn new(series: Series, rank: usize) -> Result<Self, FactorError> {
        let ok = match series {
            Series::A | Series::B | Series::C => rank >= 1,
            Series::D => rank >= 2,
            Series::G2 => rank == 2,
        };
        if ok {
            Ok(SimpleFactor { series, rank })
        } else {
            Err(FactorError::Invalid(format!("{series:?}{rank}")))
        }
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Series::A, rank).expect("A_n needs n >= 1")
    }
    pub fn b(rank: usize) -> Self {
        Self::new(Series::B, rank).expect("B_n needs n >= 1")
    }
    pub fn c(rank: usize) -> Self {
        Self::new(Series::C, rank).expect("C_n needs n >= 1")
    }
    pub fn d(rank: usize) -> Self {
        Self::new(Series::D, rank).expect("D_n needs n >= 2")
    }
    pub fn g2() -> Self {
        SimpleFactor { series: Series::G2, rank: 2 }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots, scaled to integers.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        if self.series == Series::G2 {
            return vec![vec![6, -3], vec![-3, 2]];
        }
        // Bourbaki ε-realization: α_i = e_i - e_{i+1} for the chain part.
        for i in 0..n {
            g[i][i] = 2;
            if i + 1 < n {
                g[i][i + 1] = -1;
                g[i + 1][i] = -1;
            }
        }
        match self.series {
            Series::A => {}
            Series::B => {
                // α_n = e_n
                g[n - 1][n - 1] = 1;
            }
            Series::C => {
                // α_n = 2 e_n
                g[n - 1][n - 1] = 4;
                if n >= 2 {
                    g[n - 2][n - 1] = -2;
                    g[n - 1][n - 2] = -2;
                }
            }
            Series::D => {
                // α_n = e_{n-1} + e_n
                if n >= 2 {
                    g[n - 2][n - 1] = 0;
                    g[n - 1][n - 2] = 0;
                }
                if n >= 3 {
                    g[n - 3][n - 1] = -1;
                    g[n - 1][n - 3] = -1;
                }
            }
            Series::G2 => unreachable!(),
        }
        g
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.series {
            Series::G2 => f.write_str("G2"),
            s => write!(f, "{s:?}{}", self.rank),
        }
    }
}

impl FromStr for SimpleFactor {
    type Err = FactorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FactorError::Invalid(s.to_string());
        let upper = s.trim().to_ascii_uppercase();
        if upper == "G2" {
            return Ok(Self::g2());
        }
        let (head, tail) = upper.split_at(upper.len().min(1));
        let series = match head {
            "A" => Series::A,
            "B" => Series::B,
            "C" => Series::C,
            "D" => Series::D,
            _ => return Err(bad()),
        };
        let rank: usize = tail.parse().map_err(|_| bad())?;
        Self::new(series, rank).map_err(|_| bad())
    }
}

/// Positive roots of a factor, as coefficient vectors over the simple roots.
#[derive(Debug)]
pub struct FactorData {
    pub factor: SimpleFactor,
    gram: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
}

impl FactorData {
    fn build(factor: SimpleFactor) -> Self {
        let gram = factor.gram();
        let n = factor.rank;
        let mut roots: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
        // Grow root strings level by level: β + α_i is a root iff q > 0 where
        // q = p - <β, α_i^∨> and p is the length of the downward α_i-string.
        let mut layer = roots.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    let pair: i64 = (0..n).map(|j| beta[j] * gram[j][i]).sum();
                    let coroot = 2 * pair / gram[i][i];
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - coroot > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            roots.extend(next.iter().cloned());
            layer = next;
        }
        FactorData { factor, gram, positive_roots: roots }
    }

    /// Shared, lazily built data for `factor`.
    pub fn get(factor: SimpleFactor) -> Arc<FactorData> {
        static CACHE: OnceLock<Mutex<HashMap<SimpleFactor, Arc<FactorData>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("factor cache poisoned");
        guard.entry(factor).or_insert_with(|| Arc::new(FactorData::build(factor))).clone()
    }

    /// `∏_{α>0} (λ+ρ, α) / (ρ, α)`, using `(λ+ρ, α_j) = (l_j + 1)(α_j, α_j)/2`.
    pub fn dim(&self, labels: &[Rational]) -> Rational {
        assert_eq!(labels.len(), self.factor.rank, "label count mismatch for {}", self.factor);
        let lengths: Vec<i64> = (0..self.factor.rank).map(|i| self.gram[i][i]).collect();
        if let Some(d) = self.dim_small(labels, &lengths) {
            return d;
        }
        let shifted: Vec<Rational> = labels.iter().map(|l| l + int(1)).collect();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for root in &self.positive_roots {
            let mut top = Rational::zero();
            let mut bottom = 0i64;
            for (j, &c) in root.iter().enumerate() {
                if c != 0 {
                    top += &shifted[j] * int(c * lengths[j]);
                    bottom += c * lengths[j];
                }
            }
            num *= top.numer();
            den *= top.denom() * BigInt::from(bottom);
        }
        Rational::new(num, den)
    }

    /// Same product with machine-integer factors, when the labels allow it.
    fn dim_small(&self, labels: &[Rational], lengths: &[i64]) -> Option<Rational> {
        let mut common = BigInt::one();
        for l in labels {
            common = common.lcm(l.denom());
        }
        let common = common.to_i64()?;
        let mut shifted = Vec::with_capacity(labels.len());
        for l in labels {
            let scaled = (l + int(1)) * int(common);
            shifted.push(scaled.to_integer().to_i64().filter(|v| v.abs() < (1 << 40))?);
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for root in &self.positive_roots {
            let mut top: i128 = 0;
            let mut bottom: i128 = 0;
            for (j, &c) in root.iter().enumerate() {
                if c != 0 {
                    let w = i128::from(c) * i128::from(lengths[j]);
                    top += w * i128::from(shifted[j]);
                    bottom += w;
                }
            }
            num *= BigInt::from(top);
            den *= BigInt::from(bottom) * BigInt::from(common);
        }
        Some(Rational::new(num, den))
    }
}

fn check_len(factor: SimpleFactor, labels: &[Rational]) -> Result<(), FactorError> {
    if labels.len() != factor.rank() {
        return Err(FactorError::LabelCount {
            factor: factor.to_string(),
            expected: factor.rank(),
            got: labels.len(),
        });
    }
    Ok(())
}

/// Weyl dimension polynomial of `factor` at `labels` (any rationals).
pub fn weyl_dim(factor: SimpleFactor, labels: &[Rational]) -> Result<Rational, FactorError> {
    check_len(factor, labels)?;
    Ok(FactorData::get(factor).dim(labels))
}

/// Product of [`weyl_dim`] over a semisimple sum; the empty sum gives 1.
pub fn semisimple_dim(
    factors: &[SimpleFactor],
    labels: &[Vec<Rational>],
) -> Result<Rational, FactorError> {
    assert_eq!(factors.len(), labels.len(), "factor/label lists must be aligned");
    let mut d = Rational::one();
    for (f, l) in factors.iter().zip(labels) {
        d *= weyl_dim(*f, l)?;
    }
    Ok(d)
}

/// All dominant integral label vectors of `factor` whose irreducible
/// representation has dimension `target`, in lexicographic order.
pub fn enumerate_labels(factor: SimpleFactor, target: &BigInt) -> Vec<Vec<Rational>> {
    if !target.is_positive() {
        return Vec::new();
    }
    let data = FactorData::get(factor);
    let mins = vec![Rational::zero(); factor.rank()];
    let target = Rational::from_integer(target.clone());
    monotone_search(&mins, &target, &|l: &[Rational]| data.dim(l), 1).hits
}
