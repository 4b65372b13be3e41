//! Highest weights, the typicality criterion and the typical dimension.
//!
//! A weight is kept both as Dynkin labels (`g_labels`, one per simple root)
//! and as coordinates over the root-system basis. Coordinates may be affine
//! in the free odd label `t` of a type I algebra; the form may be affine in
//! `α` for `osp(4|2;α)`. The two parameters never meet in one product.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::solve;
use crate::rootdata::{Alpha, AlgebraId, Family, Root, RootSystem};
use crate::scalar::{fmt_rational, int, AffineScalar, ParamTag, Rational, ScalarError, ZeroSet};
use crate::weyldim::{semisimple_dim, SimpleFactor};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TypicalityError {
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("even label {0} is not a nonnegative integer")]
    NonDominant(String),
    #[error("hidden label {0} is not a nonnegative integer")]
    NonIntegralHidden(String),
    #[error("parameter misuse: {0}")]
    ParamMisuse(String),
    #[error("labels do not determine a weight")]
    Inconsistent,
    #[error("{0} is not of type II")]
    NotTypeII(String),
    #[error("hidden label {0} lies above the integer part of the shift")]
    OutOfRange(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

fn is_nonneg_integer(x: &AffineScalar) -> bool {
    x.as_rational().is_some_and(|q| q.is_integer() && !q.is_negative())
}

/// A highest weight bound to its root system.
#[derive(Clone, Debug)]
pub struct HighestWeight<'a> {
    pub rs: &'a RootSystem,
    pub g_labels: Vec<AffineScalar>,
    pub coords: Vec<AffineScalar>,
    /// Label of the hidden simple root; `None` for type I.
    pub ls0: Option<AffineScalar>,
}

/// Even-part labels with the hidden entry shifted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedWeight {
    pub factors: Vec<SimpleFactor>,
    pub even_labels: Vec<Vec<Rational>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Typical,
    Atypical,
    /// Typical except at finitely many values of the free parameter.
    Conditional,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Typical => "yes",
            Verdict::Atypical => "no",
            Verdict::Conditional => "conditional",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypicalityReport {
    pub verdict: Verdict,
    /// Odd roots with `(Λ+ρ, α) = 0` identically.
    pub vanishing_roots: Vec<Root>,
    pub param: ParamTag,
    /// Sorted, without duplicates.
    pub excluded_values: Vec<Rational>,
}

/// Where a weight of the strip `l_s^0 ≤ b` stands w.r.t. the supplementary
/// conditions for finite-dimensional irreducibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StripStatus {
    /// No condition applies.
    Unconstrained,
    /// Conditions hold and force `Λ+ρ ⟂` this odd root.
    Forced(Root),
    /// Conditions fail: not the highest weight of a finite-dimensional
    /// irreducible representation.
    NotHighestWeight,
}

impl<'a> HighestWeight<'a> {
    /// Weight with the given Dynkin labels.
    ///
    /// Type I: only the odd label may carry the parameter `t`. `osp(4|2;α)`
    /// with symbolic `α`: only the odd label may be affine in `α`.
    pub fn from_g_labels(rs: &'a RootSystem, labels: &[AffineScalar]) -> Result<Self, TypicalityError> {
        let r = rs.rank();
        if labels.len() != r {
            return Err(TypicalityError::LabelCount { expected: r, got: labels.len() });
        }
        let allowed = match &rs.algebra {
            AlgebraId::D21A(Alpha::Symbolic) => ParamTag::Alpha,
            id if id.is_type_i() => ParamTag::OddLabel,
            _ => ParamTag::None,
        };
        for (i, l) in labels.iter().enumerate() {
            if l.is_constant() {
                continue;
            }
            if i != rs.s || l.tag() != allowed {
                return Err(TypicalityError::ParamMisuse(format!("label {} = {l}", i + 1)));
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if i != rs.s && !is_nonneg_integer(l) {
                return Err(TypicalityError::NonDominant(l.to_string()));
            }
        }
        let coords = if matches!(rs.algebra, AlgebraId::D21A(Alpha::Symbolic)) {
            d21a_coords(labels)?
        } else if let Some(cols) = &rs.derived().label_solver {
            combine(cols, labels, rs.dim())
        } else {
            let funcs = rs.label_functionals()?;
            let rows: Vec<Vec<Rational>> = funcs
                .iter()
                .map(|f| f.iter().map(|c| c.as_rational().cloned().expect("parameter-free form")).collect())
                .collect();
            solve(&rows, labels, rs.dim())?.ok_or(TypicalityError::Inconsistent)?
        };
        let hw = Self::from_coords_unchecked(rs, coords)?;
        if let Some(h) = &hw.ls0 {
            if !is_nonneg_integer(h) {
                return Err(TypicalityError::NonIntegralHidden(h.to_string()));
            }
        }
        Ok(hw)
    }

    /// Weight with the given even-part labels, one vector per factor of
    /// `rs.even_factors` (the hidden label sits in its factor). For type I
    /// the odd label becomes the free parameter `t`.
    pub fn from_even_labels(rs: &'a RootSystem, even: &[Vec<Rational>]) -> Result<Self, TypicalityError> {
        let expected: usize = rs.even_factors.iter().map(|f| f.factor.rank()).sum();
        let got: usize = even.iter().map(Vec::len).sum();
        if even.len() != rs.even_factors.len() || got != expected {
            return Err(TypicalityError::LabelCount { expected, got });
        }
        for l in even.iter().flatten() {
            if !(l.is_integer() && !l.is_negative()) {
                return Err(TypicalityError::NonDominant(fmt_rational(l)));
            }
        }
        if rs.algebra.is_type_i() {
            let mut labels = vec![AffineScalar::zero(); rs.rank()];
            labels[rs.s] = AffineScalar::param(ParamTag::OddLabel);
            for (f, ls) in rs.even_factors.iter().zip(even) {
                for (root, l) in f.roots.iter().zip(ls) {
                    let i = rs.simple.iter().position(|x| &x.coords == root).expect("factor root is simple");
                    labels[i] = AffineScalar::constant(l.clone());
                }
            }
            return Self::from_g_labels(rs, &labels);
        }
        if let Some(cols) = &rs.derived().even_solver {
            let rhs: Vec<AffineScalar> = even.iter().flatten().cloned().map(AffineScalar::constant).collect();
            return Self::from_coords_unchecked(rs, combine(cols, &rhs, rs.dim()));
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (f, ls) in rs.even_factors.iter().zip(even) {
            for (root, l) in f.roots.iter().zip(ls) {
                let func = rs.coroot_functional(root)?;
                rows.push(func.iter().map(|c| c.as_rational().cloned().expect("constant coroot")).collect());
                rhs.push(AffineScalar::constant(l.clone()));
            }
        }
        let coords = solve(&rows, &rhs, rs.dim())?.ok_or(TypicalityError::Inconsistent)?;
        Self::from_coords_unchecked(rs, coords)
    }

    /// Weight with the given coordinates; no dominance checks.
    pub fn from_coords_unchecked(rs: &'a RootSystem, coords: Vec<AffineScalar>) -> Result<Self, TypicalityError> {
        let d = rs.derived();
        let funcs = d.label_functionals.as_ref().map_err(|e| e.clone())?;
        let g_labels = funcs.iter().map(|f| dot(f, &coords)).collect::<Result<Vec<_>, _>>()?;
        let ls0 = match (&rs.hidden, &d.hidden_coroot) {
            (Some(_), Some(Some(c))) => Some(dot(c, &coords)?),
            (Some(h), _) => Some(coroot_label(rs, &coords, &h.coords)?),
            (None, _) => None,
        };
        Ok(HighestWeight { rs, g_labels, coords, ls0 })
    }

    pub fn algebra(&self) -> &AlgebraId {
        &self.rs.algebra
    }

    /// Unshifted even-part labels per factor.
    pub fn even_labels(&self) -> Result<Vec<Vec<Rational>>, TypicalityError> {
        let cached = &self.rs.derived().even_coroots;
        self.rs
            .even_factors
            .iter()
            .zip(cached)
            .map(|(f, covectors)| {
                f.roots
                    .iter()
                    .zip(covectors)
                    .map(|(root, c)| {
                        let l = match c {
                            Some(c) => dot(c, &self.coords)?,
                            None => coroot_label(self.rs, &self.coords, root)?,
                        };
                        l.as_rational()
                            .cloned()
                            .ok_or_else(|| TypicalityError::ParamMisuse(format!("even label {l}")))
                    })
                    .collect()
            })
            .collect()
    }

    /// The shifted weight; type I passes through unchanged.
    pub fn shifted(&self) -> Result<ShiftedWeight, TypicalityError> {
        let mut even_labels = self.even_labels()?;
        if let Some((fi, pi)) = self.rs.hidden_slot {
            let (shift, _) =
                self.rs.derived().shift.as_ref().ok_or_else(|| TypicalityError::NotTypeII(self.rs.algebra.to_string()))?;
            even_labels[fi][pi] -= shift;
        }
        let factors = self.rs.even_factors.iter().map(|f| f.factor).collect();
        Ok(ShiftedWeight { factors, even_labels })
    }

    /// `Λ + ρ` in coordinates.
    pub fn plus_rho(&self) -> Vec<AffineScalar> {
        self.coords.iter().zip(&self.rs.derived().rho).map(|(x, r)| x.add_rational(r)).collect()
    }

    /// `2^{N_1} · d_0(Λ̃)`. Equal to [`Self::root_product_dim`].
    pub fn typical_dim(&self) -> Result<Rational, TypicalityError> {
        let sw = self.shifted()?;
        let d0 = semisimple_dim(&sw.factors, &sw.even_labels).expect("factor label counts match");
        let volume = Rational::from_integer(BigInt::one() << self.rs.n1());
        Ok(volume * d0)
    }

    /// Kac's product form of the typical dimension.
    pub fn root_product_dim(&self) -> Result<Rational, TypicalityError> {
        let lr = self.plus_rho();
        let mut d = Rational::from_integer(BigInt::one() << self.rs.n1());
        for (g, den) in &self.rs.derived().even_products {
            let num = dot(g, &lr)?;
            let q = num.div_exact(den)?;
            d *= q.as_rational().cloned().ok_or_else(|| TypicalityError::ParamMisuse(format!("factor {q}")))?;
        }
        Ok(d)
    }

    /// `(Λ+ρ, α)` for the given root.
    pub fn rho_pairing(&self, root: &[Rational]) -> Result<AffineScalar, TypicalityError> {
        Ok(self.rs.pair(&self.plus_rho(), root)?)
    }

    /// Typicality over the positive odd roots `α` with `2α` not an even root.
    pub fn is_typical(&self) -> Result<TypicalityReport, TypicalityError> {
        let mut vanishing = Vec::new();
        let mut excluded: Vec<Rational> = Vec::new();
        let mut param = ParamTag::None;
        let lr = self.plus_rho();
        for (root, g) in &self.rs.derived().typicality {
            let p = dot(g, &lr)?;
            match p.solve_zero() {
                ZeroSet::IdenticallyZero => vanishing.push(root.clone()),
                ZeroSet::At(v) => {
                    param = p.tag();
                    excluded.push(v);
                }
                ZeroSet::Never => {}
            }
        }
        excluded.sort();
        excluded.dedup();
        let verdict = if !vanishing.is_empty() {
            Verdict::Atypical
        } else if !excluded.is_empty() {
            Verdict::Conditional
        } else {
            Verdict::Typical
        };
        if verdict == Verdict::Atypical {
            excluded.clear();
            param = ParamTag::None;
        }
        Ok(TypicalityReport { verdict, vanishing_roots: vanishing, param, excluded_values: excluded })
    }

    fn label(&self, i: usize) -> Rational {
        self.g_labels[i].as_rational().cloned().expect("even label is constant")
    }

    /// Supplementary conditions on the strip `l_s^0 < b` and the boundary
    /// `l_s^0 = b`.
    pub fn strip_status(&self) -> Result<StripStatus, TypicalityError> {
        let rs = self.rs;
        let ls0 = self.ls0.as_ref().ok_or_else(|| TypicalityError::NotTypeII(rs.algebra.to_string()))?;
        let ls0 = ls0.as_rational().cloned().ok_or_else(|| TypicalityError::NonIntegralHidden(ls0.to_string()))?;
        let (_, b) = rs.shift().map_err(|_| TypicalityError::NotTypeII(rs.algebra.to_string()))?;
        let b = Rational::from_integer(b);
        if ls0 > b {
            return Err(TypicalityError::OutOfRange(fmt_rational(&ls0)));
        }
        let k0 = ls0.to_integer();
        let k0: i64 = (&k0).try_into().expect("small hidden label");
        let zero = |range: std::ops::Range<usize>| range.into_iter().all(|i| self.label(i).is_zero());
        let forced = |coords: Vec<Rational>| -> StripStatus {
            StripStatus::Forced(rs.find_odd(&coords).expect("forced root is a positive odd root").clone())
        };
        let by_simple = |coeffs: &[i64]| forced(rs.from_simple(coeffs));
        let at_boundary = ls0 == b;
        let status = match rs.algebra.family() {
            Family::B { m: 0, .. } => StripStatus::Unconstrained,
            Family::B { m, n } | Family::D { m, n } => {
                let (m, n) = (m as usize, n as usize);
                let is_d = matches!(rs.algebra.family(), Family::D { .. });
                let delta_eps = |k: usize, sign: i64| {
                    let mut v = vec![Rational::zero(); rs.dim()];
                    v[n - 1] = int(1);
                    v[n + k - 1] = int(sign);
                    forced(v)
                };
                // 0-based position of l_{n+j}.
                let pos = |j: usize| n + j - 1;
                let k = (k0 + 1) as usize;
                if at_boundary {
                    let cond = if is_d { zero(pos(m - 1)..pos(m) + 1) } else { zero(pos(m)..pos(m) + 1) };
                    if cond {
                        delta_eps(if is_d { m - 1 } else { m }, 1)
                    } else {
                        StripStatus::Unconstrained
                    }
                } else if is_d && k == m {
                    if self.label(pos(m - 1)) == self.label(pos(m)) {
                        delta_eps(m, -1)
                    } else {
                        StripStatus::NotHighestWeight
                    }
                } else if zero(pos(k)..pos(m) + 1) {
                    delta_eps(k, -1)
                } else {
                    StripStatus::NotHighestWeight
                }
            }
            Family::D21A => {
                let (l2, l3) = (self.label(1), self.label(2));
                match k0 {
                    0 if l2.is_zero() && l3.is_zero() => by_simple(&[1, 0, 0]),
                    1 => match &rs.algebra {
                        AlgebraId::D21A(Alpha::Value(a)) if a * (&l3 + int(1)) == &l2 + int(1) => {
                            by_simple(&[1, 1, 0])
                        }
                        AlgebraId::D21A(Alpha::Symbolic) => StripStatus::Unconstrained,
                        _ => StripStatus::NotHighestWeight,
                    },
                    2 => StripStatus::Unconstrained,
                    _ => StripStatus::NotHighestWeight,
                }
            }
            Family::F4 => {
                let (l2, l3, l4) = (self.label(1), self.label(2), self.label(3));
                match k0 {
                    0 if l2.is_zero() && l3.is_zero() && l4.is_zero() => by_simple(&[1, 0, 0, 0]),
                    2 if l2.is_zero() && l4.is_zero() => by_simple(&[1, 1, 1, 0]),
                    3 if l2 == &l4 * int(2) + int(1) => by_simple(&[1, 1, 1, 1]),
                    4 => StripStatus::Unconstrained,
                    _ => StripStatus::NotHighestWeight,
                }
            }
            Family::G3 => {
                let (l2, l3) = (self.label(1), self.label(2));
                // At l_s^0 = 3 the condition l_2 = 0 alone forces α_1 + 3α_2 + α_3.
                match k0 {
                    0 if l2.is_zero() && l3.is_zero() => by_simple(&[1, 0, 0]),
                    2 if l2.is_zero() => by_simple(&[1, 1, 1]),
                    3 if l2.is_zero() => by_simple(&[1, 3, 1]),
                    3 => StripStatus::Unconstrained,
                    _ => StripStatus::NotHighestWeight,
                }
            }
            Family::A { .. } | Family::C { .. } => {
                return Err(TypicalityError::NotTypeII(rs.algebra.to_string()));
            }
        };
        Ok(status)
    }

    /// The odd root to which the supplementary conditions force `Λ+ρ`
    /// orthogonal, if they apply.
    pub fn supplementary_check(&self) -> Result<Option<Root>, TypicalityError> {
        Ok(match self.strip_status()? {
            StripStatus::Forced(root) => Some(root),
            _ => None,
        })
    }
}

/// `Σ_j l_j x_j` over the given columns.
fn combine(cols: &[Vec<Rational>], labels: &[AffineScalar], n: usize) -> Vec<AffineScalar> {
    let mut out = vec![AffineScalar::zero(); n];
    for (col, l) in cols.iter().zip(labels) {
        if l.is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(col) {
            if !c.is_zero() {
                *o = o.add(&l.scale(c)).expect("labels share one parameter");
            }
        }
    }
    out
}

fn dot(f: &[AffineScalar], x: &[AffineScalar]) -> Result<AffineScalar, ScalarError> {
    f.iter().zip(x).try_fold(AffineScalar::zero(), |acc, (a, b)| acc.add(&a.mul(b)?))
}

/// `2(w, β)/(β, β)`.
fn coroot_label(rs: &RootSystem, w: &[AffineScalar], beta: &[Rational]) -> Result<AffineScalar, TypicalityError> {
    let num = rs.pair(w, beta)?.scale(&int(2));
    Ok(num.div_exact(&rs.norm(beta))?)
}

/// `osp(4|2;α)` with symbolic `α`: `x_2 = l_2`, `x_3 = l_3`,
/// `x_1 = (2 l_1 - l_2 - α l_3)/(1 + α)`.
fn d21a_coords(labels: &[AffineScalar]) -> Result<Vec<AffineScalar>, TypicalityError> {
    let alpha = AffineScalar::param(ParamTag::Alpha);
    let num = labels[0].scale(&int(2)).sub(&labels[1])?.sub(&alpha.mul(&labels[2])?)?;
    let x1 = num.div_exact(&alpha.add_rational(&int(1))).map_err(|_| {
        TypicalityError::NonIntegralHidden(format!("odd label {} gives an α-dependent hidden label", labels[0]))
    })?;
    Ok(vec![x1, labels[1].clone(), labels[2].clone()])
}
