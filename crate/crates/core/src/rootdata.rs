//! Catalog of basic classical Lie superalgebras and their distinguished root
//! data.
//!
//! Roots are stored as rational coordinate vectors over an orthogonal-type
//! basis (`δ_i` for the symplectic block, `ε_j` for the orthogonal or second
//! block). The invariant form is a symmetric matrix of [`AffineScalar`]s and
//! is parameter-free except for `osp(4|2;α)` with symbolic `α`.
//!
//! Conventions per family:
//!
//! | family        | basis            | form                          | odd simple root         |
//! |---------------|------------------|-------------------------------|-------------------------|
//! | `sl(p|q)`     | `ε_1..ε_p, δ_1..δ_q` | `+1` on ε, `-1` on δ      | `ε_p - δ_1`             |
//! | `osp(2|2n)`   | `δ_1..δ_n, ε_1`  | `+1` on δ, `-1` on ε          | `ε_1 - δ_1`             |
//! | `osp(2m+1|2n)`| `δ_1..δ_n, ε_1..ε_m` | `+1` on δ, `-1` on ε      | `δ_n - ε_1` (or `δ_n`)  |
//! | `osp(2m|2n)`  | `δ_1..δ_n, ε_1..ε_m` | `+1` on δ, `-1` on ε      | `δ_n - ε_1`             |
//! | `osp(4|2;α)`  | `ε_1, ε_2, ε_3`  | `diag(-(1+α)/2, 1/2, α/2)`    | `ε_1 - ε_2 - ε_3`       |
//! | `F(4)`        | `δ, ε_1, ε_2, ε_3` | `diag(-3, 1, 1, 1)`         | `½(δ - ε_1 - ε_2 - ε_3)`|
//! | `G(3)`        | `δ, ε_1, ε_2` (`ε_3 = -ε_1-ε_2`) | `(δ,δ)=2`, `(ε_i,ε_j)=1-3δ_ij` | `δ + ε_1`   |

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{solve_columns, Expander};
use crate::scalar::{fmt_rational, int, parse_rational, rat, AffineScalar, ParamTag, Rational, ScalarError};
use crate::weyldim::SimpleFactor;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid algebra: {0}")]
    Validation(String),
    #[error("{0} is not of type II")]
    NotTypeII(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The deformation parameter of `osp(4|2;α)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alpha {
    /// Kept as a free parameter; weights become affine in `α`.
    Symbolic,
    Value(Rational),
}

/// A validated basic classical Lie superalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraId {
    /// `sl(p|q)`, `p ≥ q ≥ 1`, `(p,q) ≠ (1,1)`.
    Sl { p: u32, q: u32 },
    /// `osp(m|2n)` with `m` the orthogonal dimension.
    Osp { m: u32, n: u32 },
    /// `osp(4|2;α) = D(2|1;α)`.
    D21A(Alpha),
    F4,
    G3,
}

/// Finer family split used by the formulas that depend on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `sl(p|q)`.
    A { p: u32, q: u32 },
    /// `osp(2|2n) = C(n+1)`.
    C { n: u32 },
    /// `osp(2m+1|2n) = B(m|n)`, including `m = 0`.
    B { m: u32, n: u32 },
    /// `osp(2m|2n) = D(m|n)`, `m ≥ 2`.
    D { m: u32, n: u32 },
    D21A,
    F4,
    G3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlgebraType {
    TypeI0,
    TypeI1,
    TypeII,
}

impl AlgebraId {
    pub fn sl(p: u32, q: u32) -> Result<Self, AlgebraError> {
        if q < 1 || p < q {
            return Err(AlgebraError::Validation(format!("sl({p}|{q}) requires p >= q >= 1")));
        }
        if p == 1 && q == 1 {
            return Err(AlgebraError::Validation("sl(1|1) is excluded: A(0|0) is not simple".into()));
        }
        Ok(AlgebraId::Sl { p, q })
    }

    /// `osp(m|2n)`; `osp(4|2)` is returned as `osp(4|2;1)`.
    pub fn osp(m: u32, n: u32) -> Result<Self, AlgebraError> {
        if m < 1 || n < 1 {
            return Err(AlgebraError::Validation(format!("osp({m}|{}) requires m >= 1, n >= 1", 2 * n)));
        }
        if m == 2 && n < 2 {
            return Err(AlgebraError::Validation("osp(2|2) is excluded (not in the type I list)".into()));
        }
        if m == 4 && n == 1 {
            return Ok(AlgebraId::D21A(Alpha::Value(int(1))));
        }
        Ok(AlgebraId::Osp { m, n })
    }

    pub fn d21a(alpha: Rational) -> Result<Self, AlgebraError> {
        if alpha.is_zero() || alpha == int(-1) {
            return Err(AlgebraError::Validation(format!(
                "osp(4|2;{}) requires alpha not in {{0, -1}}",
                fmt_rational(&alpha)
            )));
        }
        Ok(AlgebraId::D21A(Alpha::Value(alpha)))
    }

    pub fn d21a_symbolic() -> Self {
        AlgebraId::D21A(Alpha::Symbolic)
    }

    pub fn family(&self) -> Family {
        match *self {
            AlgebraId::Sl { p, q } => Family::A { p, q },
            AlgebraId::Osp { m: 2, n } => Family::C { n },
            AlgebraId::Osp { m, n } if m % 2 == 1 => Family::B { m: m / 2, n },
            AlgebraId::Osp { m, n } => Family::D { m: m / 2, n },
            AlgebraId::D21A(_) => Family::D21A,
            AlgebraId::F4 => Family::F4,
            AlgebraId::G3 => Family::G3,
        }
    }

    /// The free parameter carried by this algebra's weights or form, if any.
    pub fn param_tag(&self) -> ParamTag {
        match self {
            AlgebraId::Sl { .. } | AlgebraId::Osp { m: 2, .. } => ParamTag::OddLabel,
            AlgebraId::D21A(Alpha::Symbolic) => ParamTag::Alpha,
            _ => ParamTag::None,
        }
    }

    pub fn classify(&self) -> AlgebraType {
        match self.family() {
            Family::A { p, q } if p == q => AlgebraType::TypeI0,
            Family::A { .. } | Family::C { .. } => AlgebraType::TypeI1,
            _ => AlgebraType::TypeII,
        }
    }

    pub fn is_type_i(&self) -> bool {
        self.classify() != AlgebraType::TypeII
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraId::Sl { p, q } => write!(f, "sl({p}|{q})"),
            AlgebraId::Osp { m, n } => write!(f, "osp({m}|{})", 2 * n),
            AlgebraId::D21A(Alpha::Symbolic) => f.write_str("osp(4|2;a)"),
            AlgebraId::D21A(Alpha::Value(a)) => write!(f, "osp(4|2;{})", fmt_rational(a)),
            AlgebraId::F4 => f.write_str("F(4)"),
            AlgebraId::G3 => f.write_str("G(3)"),
        }
    }
}

/// Parses `sl(INT|INT)`, `osp(INT|INT)`, `osp(4|2;RATIONAL)`, `osp(4|2;a)`,
/// `F(4)` or `G(3)`. Family keywords are case-insensitive; no whitespace.
pub fn parse_algebra(text: &str) -> Result<AlgebraId, AlgebraError> {
    let syntax = || AlgebraError::Syntax(format!("cannot parse algebra name `{text}`"));
    let lower = text.to_ascii_lowercase();
    if lower == "f(4)" {
        return Ok(AlgebraId::F4);
    }
    if lower == "g(3)" {
        return Ok(AlgebraId::G3);
    }
    let (keyword, rest) = lower.split_once('(').ok_or_else(syntax)?;
    let body = rest.strip_suffix(')').ok_or_else(syntax)?;
    let (dims, param) = match body.split_once(';') {
        Some((d, p)) => (d, Some(p)),
        None => (body, None),
    };
    let (a, b) = dims.split_once('|').ok_or_else(syntax)?;
    let parse_u = |s: &str| -> Result<u32, AlgebraError> {
        if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
            return Err(syntax());
        }
        s.parse().map_err(|_| syntax())
    };
    let (a, b) = (parse_u(a)?, parse_u(b)?);
    match (keyword, param) {
        ("sl", None) => AlgebraId::sl(a, b),
        ("osp", None) => {
            if b % 2 == 1 {
                return Err(AlgebraError::Validation(format!("osp({a}|{b}): symplectic dimension must be even")));
            }
            AlgebraId::osp(a, b / 2)
        }
        ("osp", Some(p)) => {
            if (a, b) != (4, 2) {
                return Err(syntax());
            }
            if p == "a" {
                return Ok(AlgebraId::d21a_symbolic());
            }
            let alpha = parse_rational(p).ok_or_else(syntax)?;
            AlgebraId::d21a(alpha)
        }
        _ => Err(syntax()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// A positive root with its simple-root expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coords: Vec<Rational>,
    pub parity: Parity,
    /// Degree in the distinguished ℤ-gradation: the coefficient of the odd
    /// simple root.
    pub grade: i32,
    /// Coefficients over the simple roots.
    pub expansion: Vec<Rational>,
}

/// Simple factor of the even part with its simple roots in label order.
#[derive(Clone, Debug)]
pub struct EvenFactor {
    pub factor: SimpleFactor,
    pub roots: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenPart {
    pub factors: Vec<SimpleFactor>,
    pub center: bool,
}

impl fmt::Display for EvenPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", names.join(", "))?;
        if self.center {
            f.write_str(" + center")?;
        }
        Ok(())
    }
}

/// Distinguished root data of one algebra. Immutable after [`build`].
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub algebra: AlgebraId,
    /// Names of the coordinate basis vectors.
    pub basis: Vec<String>,
    /// Symmetric invariant form over the basis.
    pub form: Vec<Vec<AffineScalar>>,
    pub pos_even: Vec<Root>,
    pub pos_odd: Vec<Root>,
    pub simple: Vec<Root>,
    /// Index of the unique odd simple root.
    pub s: usize,
    /// Hidden simple root of the even part (type II only).
    pub hidden: Option<Root>,
    /// Even-part factors; for type II the hidden root sits in one of them.
    pub even_factors: Vec<EvenFactor>,
    /// `(factor, position)` of the hidden root inside `even_factors`.
    pub hidden_slot: Option<(usize, usize)>,
    pub center: bool,
    pub rho0: Vec<Rational>,
    pub rho1: Vec<Rational>,
    derived: OnceLock<Derived>,
}

/// Quantities derived from the root data on first use. Reset whenever the
/// form changes.
#[derive(Clone, Debug)]
pub(crate) struct Derived {
    pub label_functionals: Result<Vec<Vec<AffineScalar>>, ScalarError>,
    /// Coroot covectors of the even simple roots, per factor; `None` where
    /// the quotient is not parameter-free.
    pub even_coroots: Vec<Vec<Option<Vec<AffineScalar>>>>,
    pub hidden_coroot: Option<Option<Vec<AffineScalar>>>,
    pub shift: Option<(Rational, BigInt)>,
    /// `ρ_0 - ρ_1`.
    pub rho: Vec<Rational>,
    /// Typicality roots with their covectors `G·α`.
    pub typicality: Vec<(Root, Vec<AffineScalar>)>,
    /// `G·α` and `(ρ_0, α)` for each positive even root.
    pub even_products: Vec<(Vec<AffineScalar>, AffineScalar)>,
    /// Columns `x_j` with `coords = Σ l_j x_j` solving the Dynkin labels;
    /// `None` when the label functionals are not parameter-free.
    pub label_solver: Option<Vec<Vec<Rational>>>,
    /// The same for the even-part labels, in factor order.
    pub even_solver: Option<Vec<Vec<Rational>>>,
}

/// Unit-vector solutions of `rows · x = e_j`, or `None` if some system is
/// inconsistent or `rows` has a parameter.
fn unit_solutions(rows: &[Vec<AffineScalar>], ncols: usize) -> Option<Vec<Vec<Rational>>> {
    let rows: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.as_rational().cloned()).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    solve_columns(&rows, ncols)
}

/// Coordinate-vector helpers.
fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

fn comb(n: usize, terms: &[(usize, Rational)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for (i, c) in terms {
        v[*i] += c;
    }
    v
}

fn plus(i: usize) -> (usize, Rational) {
    (i, int(1))
}

fn minus(i: usize) -> (usize, Rational) {
    (i, int(-1))
}

fn twice(i: usize) -> (usize, Rational) {
    (i, int(2))
}

fn diagonal_form(entries: Vec<AffineScalar>) -> Vec<Vec<AffineScalar>> {
    let n = entries.len();
    let mut g = vec![vec![AffineScalar::zero(); n]; n];
    for (i, e) in entries.into_iter().enumerate() {
        g[i][i] = e;
    }
    g
}

/// Raw description produced per family before derived data is filled in.
struct Skeleton {
    basis: Vec<String>,
    form: Vec<Vec<AffineScalar>>,
    even: Vec<Vec<Rational>>,
    odd: Vec<Vec<Rational>>,
    simple: Vec<Vec<Rational>>,
    s: usize,
    hidden: Option<Vec<Rational>>,
    factors: Vec<(SimpleFactor, Vec<Vec<Rational>>)>,
    center: bool,
}

fn names(prefix: &str, k: u32) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

fn skeleton_sl(p: u32, q: u32) -> Skeleton {
    let (p, q) = (p as usize, q as usize);
    let n = p + q;
    let e = |i: usize| i;
    let d = |j: usize| p + j;
    let mut even = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            even.push(comb(n, &[plus(e(i)), minus(e(j))]));
        }
    }
    for i in 0..q {
        for j in i + 1..q {
            even.push(comb(n, &[plus(d(i)), minus(d(j))]));
        }
    }
    let mut odd = Vec::new();
    for i in 0..p {
        for j in 0..q {
            odd.push(comb(n, &[plus(e(i)), minus(d(j))]));
        }
    }
    let mut simple = Vec::new();
    let mut a_eps = Vec::new();
    for i in 0..p - 1 {
        let r = comb(n, &[plus(e(i)), minus(e(i + 1))]);
        a_eps.push(r.clone());
        simple.push(r);
    }
    simple.push(comb(n, &[plus(e(p - 1)), minus(d(0))]));
    let mut a_delta = Vec::new();
    for j in 0..q - 1 {
        let r = comb(n, &[plus(d(j)), minus(d(j + 1))]);
        a_delta.push(r.clone());
        simple.push(r);
    }
    let mut factors = Vec::new();
    if p >= 2 {
        factors.push((SimpleFactor::a(p - 1), a_eps));
    }
    if q >= 2 {
        factors.push((SimpleFactor::a(q - 1), a_delta));
    }
    let mut basis = names("e", p as u32);
    basis.extend(names("d", q as u32));
    let form = diagonal_form(
        (0..n).map(|i| AffineScalar::from_int(if i < p { 1 } else { -1 })).collect(),
    );
    Skeleton { basis, form, even, odd, simple, s: p - 1, hidden: None, factors, center: true }
}

/// Symplectic block `δ_1..δ_n` (indices `0..n`): positive roots, simple roots
/// `δ_i - δ_{i+1}` and the long root `2δ_n`.
fn symplectic_block(dim: usize, n: usize) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>, Vec<Rational>) {
    let mut pos = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pos.push(comb(dim, &[plus(i), minus(j)]));
            pos.push(comb(dim, &[plus(i), plus(j)]));
        }
        pos.push(comb(dim, &[twice(i)]));
    }
    let chain = (0..n.saturating_sub(1)).map(|i| comb(dim, &[plus(i), minus(i + 1)])).collect();
    (pos, chain, comb(dim, &[twice(n - 1)]))
}

fn skeleton_osp_c(n: u32) -> Skeleton {
    let n = n as usize;
    let dim = n + 1;
    let eps = n;
    let (even, chain, long) = symplectic_block(dim, n);
    let mut odd = Vec::new();
    for i in 0..n {
        odd.push(comb(dim, &[plus(eps), minus(i)]));
        odd.push(comb(dim, &[plus(eps), plus(i)]));
    }
    let mut simple = vec![comb(dim, &[plus(eps), minus(0)])];
    simple.extend(chain.iter().cloned());
    simple.push(long.clone());
    let mut c_roots = chain;
    c_roots.push(long);
    let mut basis = names("d", n as u32);
    basis.push("e1".into());
    let form = diagonal_form(
        (0..dim).map(|i| AffineScalar::from_int(if i < n { 1 } else { -1 })).collect(),
    );
    Skeleton {
        basis,
        form,
        even,
        odd,
        simple,
        s: 0,
        hidden: None,
        factors: vec![(SimpleFactor::c(n), c_roots)],
        center: true,
    }
}

/// `osp(M|2n)` with `M = 2m + 1` (`odd_m = true`) or `M = 2m`, `m ≥ 2`.
fn skeleton_osp_bd(m: u32, n: u32, odd_m: bool) -> Skeleton {
    let (m, n) = (m as usize, n as usize);
    let dim = n + m;
    let e = |j: usize| n + j;
    let (mut even, chain, long) = symplectic_block(dim, n);
    for i in 0..m {
        for j in i + 1..m {
            even.push(comb(dim, &[plus(e(i)), minus(e(j))]));
            even.push(comb(dim, &[plus(e(i)), plus(e(j))]));
        }
        if odd_m {
            even.push(unit(dim, e(i)));
        }
    }
    let mut odd = Vec::new();
    for i in 0..n {
        if odd_m {
            odd.push(unit(dim, i));
        }
        for j in 0..m {
            odd.push(comb(dim, &[plus(i), minus(e(j))]));
            odd.push(comb(dim, &[plus(i), plus(e(j))]));
        }
    }
    let mut simple = chain.clone();
    let mut orth = Vec::new();
    if m == 0 {
        simple.push(unit(dim, n - 1));
    } else {
        simple.push(comb(dim, &[plus(n - 1), minus(e(0))]));
        for j in 0..m - 1 {
            orth.push(comb(dim, &[plus(e(j)), minus(e(j + 1))]));
        }
        if odd_m {
            orth.push(unit(dim, e(m - 1)));
        } else {
            orth.push(comb(dim, &[plus(e(m - 2)), plus(e(m - 1))]));
        }
        simple.extend(orth.iter().cloned());
    }
    let mut c_roots = chain;
    c_roots.push(long.clone());
    let mut factors = vec![(SimpleFactor::c(n), c_roots)];
    if m >= 1 {
        let f = if odd_m { SimpleFactor::b(m) } else { SimpleFactor::d(m) };
        factors.push((f, orth));
    }
    let mut basis = names("d", n as u32);
    basis.extend(names("e", m as u32));
    let form = diagonal_form(
        (0..dim).map(|i| AffineScalar::from_int(if i < n { 1 } else { -1 })).collect(),
    );
    Skeleton { basis, form, even, odd, simple, s: n - 1, hidden: Some(long), factors, center: false }
}

fn skeleton_d21a(alpha: &Alpha) -> Skeleton {
    let a = match alpha {
        Alpha::Symbolic => AffineScalar::param(ParamTag::Alpha),
        Alpha::Value(v) => AffineScalar::constant(v.clone()),
    };
    let half = rat(1, 2);
    let g1 = a.add_rational(&int(1)).scale(&rat(-1, 2));
    let form = diagonal_form(vec![g1, AffineScalar::constant(half.clone()), a.scale(&half)]);
    let even: Vec<Vec<Rational>> = (0..3).map(|i| comb(3, &[twice(i)])).collect();
    let mut odd = Vec::new();
    for s2 in [1, -1] {
        for s3 in [1, -1] {
            odd.push(comb(3, &[plus(0), (1, int(s2)), (2, int(s3))]));
        }
    }
    let simple = vec![comb(3, &[plus(0), minus(1), minus(2)]), even[1].clone(), even[2].clone()];
    let factors = (0..3).map(|i| (SimpleFactor::a(1), vec![even[i].clone()])).collect();
    Skeleton {
        basis: names("e", 3),
        form,
        even: even.clone(),
        odd,
        simple,
        s: 0,
        hidden: Some(even[0].clone()),
        factors,
        center: false,
    }
}

fn skeleton_f4() -> Skeleton {
    let dim = 4;
    let h = rat(1, 2);
    let mut even = vec![unit(dim, 0)];
    for i in 1..4 {
        for j in i + 1..4 {
            even.push(comb(dim, &[plus(i), minus(j)]));
            even.push(comb(dim, &[plus(i), plus(j)]));
        }
        even.push(unit(dim, i));
    }
    let mut odd = Vec::new();
    for s1 in [1, -1] {
        for s2 in [1, -1] {
            for s3 in [1, -1] {
                odd.push(comb(dim, &[(0, h.clone()), (1, &h * int(s1)), (2, &h * int(s2)), (3, &h * int(s3))]));
            }
        }
    }
    let b3 = vec![comb(dim, &[plus(1), minus(2)]), comb(dim, &[plus(2), minus(3)]), unit(dim, 3)];
    let simple = vec![
        comb(dim, &[(0, h.clone()), (1, -&h), (2, -&h), (3, -&h)]),
        unit(dim, 3),
        comb(dim, &[plus(2), minus(3)]),
        comb(dim, &[plus(1), minus(2)]),
    ];
    let form = diagonal_form(vec![
        AffineScalar::from_int(-3),
        AffineScalar::one(),
        AffineScalar::one(),
        AffineScalar::one(),
    ]);
    Skeleton {
        basis: vec!["d".into(), "e1".into(), "e2".into(), "e3".into()],
        form,
        even,
        odd,
        simple,
        s: 0,
        hidden: Some(unit(dim, 0)),
        factors: vec![(SimpleFactor::a(1), vec![unit(dim, 0)]), (SimpleFactor::b(3), b3)],
        center: false,
    }
}

fn skeleton_g3() -> Skeleton {
    let dim = 3;
    // ε_3 = -ε_1 - ε_2
    let eps = |k: usize, sign: i64| -> Vec<(usize, Rational)> {
        match k {
            1 => vec![(1, int(sign))],
            2 => vec![(2, int(sign))],
            _ => vec![(1, int(-sign)), (2, int(-sign))],
        }
    };
    let with = |parts: &[Vec<(usize, Rational)>]| -> Vec<Rational> {
        let all: Vec<(usize, Rational)> = parts.iter().flatten().cloned().collect();
        comb(dim, &all)
    };
    let delta = vec![(0, int(1))];
    let two_delta = comb(dim, &[twice(0)]);
    let g2_pos = vec![
        with(&[eps(2, 1)]),
        with(&[eps(3, 1)]),
        with(&[eps(1, -1)]),
        with(&[eps(3, 1), eps(2, -1)]),
        with(&[eps(2, 1), eps(1, -1)]),
        with(&[eps(3, 1), eps(1, -1)]),
    ];
    let mut even = vec![two_delta.clone()];
    even.extend(g2_pos);
    let mut odd = vec![with(&[delta.clone()])];
    for k in 1..=3 {
        odd.push(with(&[delta.clone(), eps(k, 1)]));
        odd.push(with(&[delta.clone(), eps(k, -1)]));
    }
    let long = with(&[eps(3, 1), eps(2, -1)]);
    let short = with(&[eps(2, 1)]);
    let simple = vec![with(&[delta, eps(1, 1)]), short.clone(), long.clone()];
    let mut form = vec![vec![AffineScalar::zero(); dim]; dim];
    form[0][0] = AffineScalar::from_int(2);
    form[1][1] = AffineScalar::from_int(-2);
    form[2][2] = AffineScalar::from_int(-2);
    form[1][2] = AffineScalar::one();
    form[2][1] = AffineScalar::one();
    Skeleton {
        basis: vec!["d".into(), "e1".into(), "e2".into()],
        form,
        even,
        odd,
        simple,
        s: 0,
        hidden: Some(two_delta.clone()),
        factors: vec![(SimpleFactor::a(1), vec![two_delta]), (SimpleFactor::g2(), vec![long, short])],
        center: false,
    }
}

/// Constructs the distinguished root data of `id`.
pub fn build(id: &AlgebraId) -> RootSystem {
    let sk = match (id, id.family()) {
        (_, Family::A { p, q }) => skeleton_sl(p, q),
        (_, Family::C { n }) => skeleton_osp_c(n),
        (_, Family::B { m, n }) => skeleton_osp_bd(m, n, true),
        (_, Family::D { m, n }) => skeleton_osp_bd(m, n, false),
        (AlgebraId::D21A(alpha), _) => skeleton_d21a(alpha),
        (_, Family::F4) => skeleton_f4(),
        (_, Family::G3) => skeleton_g3(),
        (_, Family::D21A) => unreachable!(),
    };
    let s = sk.s;
    let expander = Expander::new(&sk.simple).expect("simple roots are independent");
    let expand = |coords: &Vec<Rational>| -> Vec<Rational> {
        expander.expand(coords).expect("root outside the span of the simple roots")
    };
    let make = |coords: Vec<Rational>, parity: Parity| -> Root {
        let expansion = expand(&coords);
        let grade = expansion[s].to_integer().try_into().expect("grade fits in i32");
        Root { coords, parity, grade, expansion }
    };
    let pos_even: Vec<Root> = sk.even.iter().map(|c| make(c.clone(), Parity::Even)).collect();
    let pos_odd: Vec<Root> = sk.odd.iter().map(|c| make(c.clone(), Parity::Odd)).collect();
    let simple: Vec<Root> = sk
        .simple
        .iter()
        .enumerate()
        .map(|(i, c)| make(c.clone(), if i == s { Parity::Odd } else { Parity::Even }))
        .collect();
    let hidden = sk.hidden.map(|c| make(c, Parity::Even));
    let half_sum = |roots: &[Root]| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); sk.basis.len()];
        for r in roots {
            for (a, b) in v.iter_mut().zip(&r.coords) {
                *a += b;
            }
        }
        v.into_iter().map(|x| x / int(2)).collect()
    };
    let rho0 = half_sum(&pos_even);
    let rho1 = half_sum(&pos_odd);
    let hidden_slot = hidden.as_ref().and_then(|h| {
        sk.factors.iter().enumerate().find_map(|(fi, (_, roots))| {
            roots.iter().position(|r| *r == h.coords).map(|pi| (fi, pi))
        })
    });
    let even_factors = sk
        .factors
        .into_iter()
        .map(|(factor, roots)| EvenFactor { factor, roots })
        .collect();
    RootSystem {
        algebra: id.clone(),
        basis: sk.basis,
        form: sk.form,
        pos_even,
        pos_odd,
        simple,
        s,
        hidden,
        even_factors,
        hidden_slot,
        center: sk.center,
        rho0,
        rho1,
        derived: OnceLock::new(),
    }
}

impl RootSystem {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn n0(&self) -> usize {
        self.pos_even.len()
    }

    pub fn n1(&self) -> usize {
        self.pos_odd.len()
    }

    pub fn classify(&self) -> AlgebraType {
        self.algebra.classify()
    }

    /// `G · v` for a rational vector; entries are affine.
    fn form_times(&self, v: &[Rational]) -> Vec<AffineScalar> {
        self.form
            .iter()
            .map(|row| {
                row.iter().zip(v).filter(|(g, x)| !x.is_zero() && !g.is_zero()).fold(AffineScalar::zero(), |acc, (g, x)| {
                    acc.add(&g.scale(x)).expect("form entries share one parameter")
                })
            })
            .collect()
    }

    /// `(x, y)` for rational vectors.
    pub fn pair_roots(&self, x: &[Rational], y: &[Rational]) -> AffineScalar {
        let gy = self.form_times(y);
        x.iter().zip(&gy).fold(AffineScalar::zero(), |acc, (a, b)| {
            acc.add(&b.scale(a)).expect("form entries share one parameter")
        })
    }

    /// `(w, y)` for an affine weight `w` and a rational vector `y`.
    pub fn pair(&self, w: &[AffineScalar], y: &[Rational]) -> Result<AffineScalar, ScalarError> {
        let gy = self.form_times(y);
        w.iter().zip(&gy).try_fold(AffineScalar::zero(), |acc, (a, b)| acc.add(&a.mul(b)?))
    }

    pub fn norm(&self, v: &[Rational]) -> AffineScalar {
        self.pair_roots(v, v)
    }

    pub fn is_odd_isotropic(&self) -> bool {
        self.norm(&self.simple[self.s].coords).is_zero()
    }

    /// Covector `c` with `2(w, β)/(β, β) = Σ_k w_k c_k` for a non-isotropic `β`.
    pub fn coroot_functional(&self, beta: &[Rational]) -> Result<Vec<AffineScalar>, ScalarError> {
        let norm = self.norm(beta).scale(&rat(1, 2));
        self.form_times(beta).iter().map(|g| g.div_exact(&norm)).collect()
    }

    /// Normalization `(α_s, α_{s'})` for the isotropic odd row: the right
    /// neighbour when there is one, otherwise minus the left neighbour, so
    /// that the odd row reads `(…, -1, 0, 1, …)` on `sl(p|q)`.
    pub fn odd_normalization(&self) -> AffineScalar {
        let odd = &self.simple[self.s].coords;
        if self.s + 1 < self.rank() {
            self.pair_roots(odd, &self.simple[self.s + 1].coords)
        } else {
            self.pair_roots(odd, &self.simple[self.s - 1].coords).neg()
        }
    }

    /// Covectors computing the Dynkin labels `l_1..l_r` of a weight.
    pub fn label_functionals(&self) -> Result<Vec<Vec<AffineScalar>>, ScalarError> {
        self.simple
            .iter()
            .enumerate()
            .map(|(i, root)| {
                if i == self.s && self.is_odd_isotropic() {
                    let nu = self.odd_normalization();
                    self.form_times(&root.coords).iter().map(|g| g.div_exact(&nu)).collect()
                } else {
                    self.coroot_functional(&root.coords)
                }
            })
            .collect()
    }

    /// Cartan matrix `a_ij = l_i(α_j)`.
    pub fn cartan_matrix(&self) -> Result<Vec<Vec<AffineScalar>>, ScalarError> {
        let funcs = self.label_functionals()?;
        funcs
            .iter()
            .map(|f| {
                self.simple
                    .iter()
                    .map(|root| {
                        f.iter().zip(&root.coords).try_fold(AffineScalar::zero(), |acc, (c, x)| acc.add(&c.scale(x)))
                    })
                    .collect()
            })
            .collect()
    }

    /// `(2(ρ_1, α_s^0)/(α_s^0, α_s^0), b)` with `b` the integer part.
    pub fn shift(&self) -> Result<(Rational, BigInt), AlgebraError> {
        let h = self.hidden.as_ref().ok_or_else(|| AlgebraError::NotTypeII(self.algebra.to_string()))?;
        let num = self.pair_roots(&self.rho1, &h.coords).scale(&int(2));
        let q = num.div_exact(&self.norm(&h.coords))?;
        let q = q.as_rational().cloned().expect("shift is parameter-free");
        let b = q.floor().to_integer();
        Ok((q, b))
    }

    pub fn even_part(&self) -> EvenPart {
        EvenPart { factors: self.even_factors.iter().map(|f| f.factor).collect(), center: self.center }
    }

    /// Whether `2α` is an even root.
    pub fn doubles_to_even(&self, root: &Root) -> bool {
        let doubled: Vec<Rational> = root.coords.iter().map(|x| x * int(2)).collect();
        self.pos_even.iter().any(|r| r.coords == doubled)
    }

    /// Positive odd roots entering the typicality criterion.
    pub fn typicality_roots(&self) -> impl Iterator<Item = &Root> {
        self.pos_odd.iter().filter(|r| !self.doubles_to_even(r))
    }

    /// The positive odd root with these coordinates, if any.
    pub fn find_odd(&self, coords: &[Rational]) -> Option<&Root> {
        self.pos_odd.iter().find(|r| r.coords == coords)
    }

    /// The root `Σ c_i α_i`, as coordinates.
    pub fn from_simple(&self, coeffs: &[i64]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (c, root) in coeffs.iter().zip(&self.simple) {
            for (a, b) in v.iter_mut().zip(&root.coords) {
                *a += b * int(*c);
            }
        }
        v
    }

    /// Kac–Dynkin diagram as one line of ASCII.
    ///
    /// Nodes: `O` even, `X` isotropic odd, `B` non-isotropic odd. Edges: `-`
    /// single line; `=<=`, `=>=` double and `#<#`, `#>#` triple lines with
    /// the arrow pointing at the shorter root. A fork is written
    /// `…-N-{O,O}`: `N` joins each braced node by a single line.
    pub fn diagram(&self) -> String {
        let r = self.rank();
        let cartan = self.cartan_matrix().expect("Cartan matrix of a catalog algebra");
        let d21a = matches!(self.algebra, AlgebraId::D21A(_));
        let lines = |j: usize, k: usize| -> u32 {
            let size = |x: &AffineScalar| -> u32 {
                match x.as_rational() {
                    Some(q) => q.abs().ceil().to_integer().try_into().unwrap_or(u32::MAX),
                    None => 1,
                }
            };
            let n = size(&cartan[j][k]).max(size(&cartan[k][j]));
            if d21a && n > 0 && (j == self.s || k == self.s) {
                1
            } else {
                n
            }
        };
        let node = |i: usize| -> char {
            if i != self.s {
                'O'
            } else if self.is_odd_isotropic() {
                'X'
            } else {
                'B'
            }
        };
        let abs_len = |i: usize| -> Rational {
            self.norm(&self.simple[i].coords).as_rational().map(|q| q.abs()).unwrap_or_default()
        };
        let edge = |a: usize, b: usize| -> String {
            let n = lines(a, b);
            if n <= 1 {
                return "-".into();
            }
            let bar = if n == 2 { '=' } else { '#' };
            let arrow = if abs_len(a) > abs_len(b) { '>' } else { '<' };
            format!("{bar}{arrow}{bar}")
        };
        let adj: Vec<Vec<usize>> =
            (0..r).map(|i| (0..r).filter(|&k| k != i && lines(i, k) > 0).collect()).collect();
        if let Some(branch) = (0..r).find(|&i| adj[i].len() == 3) {
            // Walk from node 0 to the branch node, then list the two leaves.
            let mut out = String::new();
            let mut prev = usize::MAX;
            let mut cur = 0;
            loop {
                out.push(node(cur));
                if cur == branch {
                    break;
                }
                let next = *adj[cur].iter().find(|&&k| k != prev && k < r).expect("path to branch");
                out.push_str(&edge(cur, next));
                prev = cur;
                cur = next;
            }
            let leaves: Vec<usize> = adj[branch].iter().copied().filter(|&k| k != prev).collect();
            out.push_str(&format!("-{{{},{}}}", node(leaves[0]), node(leaves[1])));
            return out;
        }
        let start = (0..r).find(|&i| adj[i].len() <= 1).unwrap_or(0);
        let mut out = String::new();
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            out.push(node(cur));
            match adj[cur].iter().find(|&&k| k != prev) {
                Some(&next) => {
                    out.push_str(&edge(cur, next));
                    prev = cur;
                    cur = next;
                }
                None => break,
            }
        }
        out
    }

    pub(crate) fn derived(&self) -> &Derived {
        self.derived.get_or_init(|| {
            let coroot = |beta: &[Rational]| self.coroot_functional(beta).ok();
            let label_functionals = self.label_functionals();
            let even_coroots: Vec<Vec<Option<Vec<AffineScalar>>>> =
                self.even_factors.iter().map(|f| f.roots.iter().map(|r| coroot(r)).collect()).collect();
            let even_rows: Option<Vec<Vec<AffineScalar>>> = even_coroots.iter().flatten().cloned().collect();
            let rho0: Vec<AffineScalar> = self.rho0.iter().cloned().map(AffineScalar::constant).collect();
            Derived {
                label_solver: label_functionals.as_ref().ok().and_then(|f| unit_solutions(f, self.dim())),
                label_functionals,
                even_solver: even_rows.and_then(|rows| unit_solutions(&rows, self.dim())),
                even_coroots,
                hidden_coroot: self.hidden.as_ref().map(|h| coroot(&h.coords)),
                shift: self.shift().ok(),
                rho: self.rho0.iter().zip(&self.rho1).map(|(a, b)| a - b).collect(),
                typicality: self.typicality_roots().map(|r| (r.clone(), self.form_times(&r.coords))).collect(),
                even_products: self
                    .pos_even
                    .iter()
                    .map(|r| {
                        let g = self.form_times(&r.coords);
                        let den = self.pair(&rho0, &r.coords).expect("rational weight");
                        (g, den)
                    })
                    .collect(),
            }
        })
    }

    /// A copy with the invariant form multiplied by `k`.
    pub fn with_scaled_form(&self, k: &Rational) -> RootSystem {
        let mut rs = self.clone();
        rs.derived = OnceLock::new();
        for row in rs.form.iter_mut() {
            for g in row.iter_mut() {
                *g = g.scale(k);
            }
        }
        rs
    }
}

/// Closed-form `N_1` per family.
pub fn expected_n1(id: &AlgebraId) -> usize {
    let n1 = match id.family() {
        Family::A { p, q } => p * q,
        Family::C { n } => 2 * n,
        Family::B { m, n } => (2 * m + 1) * n,
        Family::D { m, n } => 2 * m * n,
        Family::D21A => 4,
        Family::F4 => 8,
        Family::G3 => 7,
    };
    n1 as usize
}

/// Closed-form `N_0` per family.
pub fn expected_n0(id: &AlgebraId) -> usize {
    let n0 = match id.family() {
        Family::A { p, q } => p * (p - 1) / 2 + q * (q - 1) / 2,
        Family::C { n } => n * n,
        Family::B { m, n } => n * n + m * m,
        Family::D { m, n } => n * n + m * (m - 1),
        Family::D21A => 3,
        Family::F4 => 10,
        Family::G3 => 7,
    };
    n0 as usize
}

/// Every catalog algebra whose simple-root count is at most `max_rank`
/// (with `osp(4|2;α)` at a few sample values of `α`).
pub fn catalog_up_to_rank(max_rank: u32) -> Vec<AlgebraId> {
    let mut out = Vec::new();
    for q in 1..=max_rank {
        for p in q..=max_rank {
            if p + q - 1 <= max_rank {
                if let Ok(id) = AlgebraId::sl(p, q) {
                    out.push(id);
                }
            }
        }
    }
    for n in 1..=max_rank {
        for m in 1..=2 * max_rank + 1 {
            let rank = n + m / 2;
            if rank > max_rank {
                continue;
            }
            if let Ok(id) = AlgebraId::osp(m, n) {
                if !matches!(id, AlgebraId::D21A(_)) {
                    out.push(id);
                }
            }
        }
    }
    out.push(AlgebraId::d21a_symbolic());
    for a in [int(1), rat(1, 3), rat(-2, 5), int(2)] {
        out.push(AlgebraId::d21a(a).expect("sample alpha"));
    }
    if max_rank >= 4 {
        out.push(AlgebraId::F4);
    }
    if max_rank >= 3 {
        out.push(AlgebraId::G3);
    }
    let mut seen = HashSet::new();
    out.retain(|id| seen.insert(id.clone()));
    out
}
