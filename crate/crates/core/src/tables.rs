//! Canonical text forms of enumeration results.
//!
//! Table files are tab-separated with one header line:
//!
//! ```text
//! algebra  N1  highest_weight  even_weight  param  excluded
//! ```
//!
//! * `highest_weight` lists the Dynkin labels; the free odd label of a
//!   type I algebra prints as `t`, and an `osp(4|2;a)` label affine in α
//!   prints as `p/q*a+r/s`.
//! * `even_weight` lists the labels of each even factor, joined by `-`.
//! * `param` is `t`, `a` or `-`. `excluded` is the sorted set of parameter
//!   values where the representation fails to be typical, or `-`. For
//!   `osp(4|2;a)` the values `0` and `-1` (where the algebra degenerates)
//!   are left out of the table.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerate::TypicalRep;
use crate::rootdata::{build, AlgebraId, Alpha};
use crate::scalar::{fmt_rational, int, rat, ParamTag, Rational};

/// One representation as plain strings; the JSON-lines record format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepRecord {
    pub algebra: String,
    pub type_i: bool,
    pub n1: usize,
    pub g_labels: Vec<String>,
    pub even_labels: Vec<Vec<String>>,
    pub dim: String,
    /// `t`, `a`, or absent.
    pub param: Option<String>,
    /// Sorted; empty when `param` is absent.
    pub excluded: Vec<String>,
}

impl From<&TypicalRep> for RepRecord {
    fn from(rep: &TypicalRep) -> Self {
        let (param, excluded) = match &rep.excluded {
            Some((tag, values)) if *tag != ParamTag::None => {
                (Some(tag.symbol().to_string()), values.iter().map(fmt_rational).collect())
            }
            _ => (None, Vec::new()),
        };
        RepRecord {
            algebra: rep.algebra.to_string(),
            type_i: rep.algebra.is_type_i(),
            n1: rep.n1,
            g_labels: rep.g_labels.iter().map(|l| l.to_string()).collect(),
            even_labels: rep
                .even_labels
                .iter()
                .map(|f| f.iter().map(fmt_rational).collect())
                .collect(),
            dim: rep.dim.to_string(),
            param,
            excluded,
        }
    }
}

pub const HEADER: &str = "algebra\tN1\thighest_weight\teven_weight\tparam\texcluded";

/// The table row of one record, without trailing newline.
pub fn format_row(r: &RepRecord) -> String {
    let even: Vec<String> = r.even_labels.iter().map(|f| format!("({})", f.join(","))).collect();
    let excluded: Vec<&str> = r
        .excluded
        .iter()
        .map(String::as_str)
        .filter(|v| !(r.param.as_deref() == Some("a") && (*v == "0" || *v == "-1")))
        .collect();
    let excluded = if r.param.is_some() { format!("{{{}}}", excluded.join(",")) } else { "-".to_string() };
    format!(
        "{}\t{}\t({})\t{}\t{}\t{}",
        r.algebra,
        r.n1,
        r.g_labels.join(","),
        even.join("-"),
        r.param.as_deref().unwrap_or("-"),
        excluded
    )
}

/// Header plus one line per record, newline-terminated.
pub fn format_table(records: &[RepRecord]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format_row(r));
        out.push('\n');
    }
    out
}

/// Records of type I (`type_i = true`) or type II algebras, order kept.
pub fn select(reps: &[TypicalRep], type_i: bool) -> Vec<RepRecord> {
    reps.iter().filter(|r| r.algebra.is_type_i() == type_i).map(RepRecord::from).collect()
}

/// One line of the shift table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftRow {
    pub family: &'static str,
    pub shift: String,
    pub b: String,
}

/// `c + k·m` rendered with `m` as the variable.
fn fmt_in_m(k: &Rational, c: &Rational) -> String {
    match (k.is_zero(), c.is_zero()) {
        (true, _) => fmt_rational(c),
        (false, true) if k.is_one() => "m".to_string(),
        (false, true) => format!("{}*m", fmt_rational(k)),
        (false, false) => {
            let head = if k.is_one() { "m".to_string() } else { format!("{}*m", fmt_rational(k)) };
            if c > &Rational::zero() {
                format!("{head}+{}", fmt_rational(c))
            } else {
                format!("{head}{}", fmt_rational(c))
            }
        }
    }
}

/// Fits `value = k·m + c` over all samples; `None` if no such fit exists.
fn fit_in_m(samples: &[(u32, Rational)]) -> Option<(Rational, Rational)> {
    let (m0, v0) = samples.first()?;
    let k = samples
        .iter()
        .find(|(m, _)| m != m0)
        .map(|(m, v)| (v - v0) / int(i64::from(*m) - i64::from(*m0)))
        .unwrap_or_else(Rational::zero);
    let c = v0 - &k * int(i64::from(*m0));
    samples.iter().all(|(m, v)| &(&k * int(i64::from(*m)) + &c) == v).then_some((k, c))
}

fn shift_row(family: &'static str, ids: &[(u32, AlgebraId)]) -> Result<ShiftRow, String> {
    let mut shifts = Vec::new();
    let mut bs = Vec::new();
    for (m, id) in ids {
        let (s, b) = build(id).shift().map_err(|e| e.to_string())?;
        shifts.push((*m, s));
        bs.push((*m, Rational::from_integer(b)));
    }
    let (ks, cs) = fit_in_m(&shifts).ok_or_else(|| format!("{family}: shift is not affine in m"))?;
    let (kb, cb) = fit_in_m(&bs).ok_or_else(|| format!("{family}: b is not affine in m"))?;
    Ok(ShiftRow { family, shift: fmt_in_m(&ks, &cs), b: fmt_in_m(&kb, &cb) })
}

/// Shift `2(ρ₁,α_s⁰)/(α_s⁰,α_s⁰)` and its integer part `b` per type II
/// family, recomputed over `m, n ≤ 4` and expressed in `m`.
pub fn shift_table() -> Result<Vec<ShiftRow>, String> {
    let grid = |lo: u32, f: &dyn Fn(u32, u32) -> AlgebraId| -> Vec<(u32, AlgebraId)> {
        (lo..=4).flat_map(|m| (1..=4).map(move |n| (m, n))).map(|(m, n)| (m, f(m, n))).collect()
    };
    let osp = |m: u32, n: u32| AlgebraId::osp(m, n).expect("valid osp");
    let alphas = [int(1), rat(1, 3), rat(-2, 5)];
    Ok(vec![
        shift_row("B(m|n)", &grid(1, &|m, n| osp(2 * m + 1, n)))?,
        shift_row("B(0|n)", &(1..=4).map(|n| (0, osp(1, n))).collect::<Vec<_>>())?,
        shift_row("D(m|n)", &grid(2, &|m, n| osp(2 * m, n)))?,
        shift_row(
            "D(2|1;a)",
            &alphas
                .iter()
                .map(|a| (0, AlgebraId::d21a(a.clone()).expect("valid alpha")))
                .chain(std::iter::once((0, AlgebraId::D21A(Alpha::Symbolic))))
                .collect::<Vec<_>>(),
        )?,
        shift_row("F(4)", &[(0, AlgebraId::F4)])?,
        shift_row("G(3)", &[(0, AlgebraId::G3)])?,
    ])
}

/// Tab-separated shift table with header.
pub fn format_shift_table(rows: &[ShiftRow]) -> String {
    let mut out = String::from("family\tshift\tb\n");
    for r in rows {
        out.push_str(&format!("{}\t{}\t{}\n", r.family, r.shift, r.b));
    }
    out
}
