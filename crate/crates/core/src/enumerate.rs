//! Exhaustive search for typical irreducible representations of a given
//! dimension.
//!
//! The search runs over even-part labels. For type II the hidden label
//! starts at `b`, where the shifted label is at least `-1/2` and the
//! dimension is strictly increasing in every label, so a partial assignment
//! is abandoned as soon as its minimal completion exceeds the target. The
//! strip below `b` is scanned separately as an audit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::rootdata::{build, AlgebraId, Family, RootSystem};
use crate::scalar::{fmt_rational, int, AffineScalar, ParamTag, Rational};
use crate::search::monotone_search;
use crate::typicality::{HighestWeight, StripStatus, Verdict};
use crate::weyldim::{weyl_dim, SimpleFactor};

/// One typical representation of the target dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypicalRep {
    pub algebra: AlgebraId,
    pub g_labels: Vec<AffineScalar>,
    /// Even-part labels per factor, hidden label included.
    pub even_labels: Vec<Vec<Rational>>,
    pub ls0: Option<Rational>,
    pub n1: usize,
    pub dim: BigInt,
    /// Present iff the algebra carries a free parameter.
    pub excluded: Option<(ParamTag, Vec<Rational>)>,
}

impl TypicalRep {
    fn sort_key(&self) -> (String, Vec<AffineScalar>) {
        (self.algebra.to_string(), self.g_labels.clone())
    }
}

/// Result of auditing the strip `l_s^0 ≤ b` of one type II algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StripAudit {
    pub checked: u64,
    /// Weights the supplementary conditions force to be atypical.
    pub forced_atypical: u64,
    /// Weights excluded as highest weights by the supplementary conditions.
    pub not_highest_weight: u64,
    /// Forced weights that nevertheless pass the typicality test, or strip
    /// weights that are typical of the target dimension. Must stay empty.
    pub violations: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub reps: Vec<TypicalRep>,
    pub nodes: u64,
    pub strip: StripAudit,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub target: BigInt,
    pub candidates_considered: usize,
    /// `(algebra, lower bound)` for every candidate, in scan order.
    pub bound_log: Vec<(AlgebraId, BigInt)>,
    pub reps: Vec<TypicalRep>,
    pub nodes: u64,
    pub strip: StripAudit,
}

impl SearchReport {
    /// Distinct algebras among the representations.
    pub fn algebras(&self) -> Vec<AlgebraId> {
        let mut out: Vec<AlgebraId> = Vec::new();
        for r in &self.reps {
            if !out.contains(&r.algebra) {
                out.push(r.algebra.clone());
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub workers: usize,
    /// Audit the strip below the shift; off only for timing experiments.
    pub audit_strip: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { workers: 1, audit_strip: true }
    }
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// Even-part data in flat label order.
struct Plan {
    factors: Vec<SimpleFactor>,
    offsets: Vec<usize>,
    hidden: Option<usize>,
    shift: Rational,
    b: Rational,
    volume: Rational,
}

impl Plan {
    fn new(rs: &RootSystem) -> Self {
        let factors: Vec<SimpleFactor> = rs.even_factors.iter().map(|f| f.factor).collect();
        let mut offsets = vec![0];
        for f in &factors {
            offsets.push(offsets.last().unwrap() + f.rank());
        }
        let hidden = rs.hidden_slot.map(|(fi, pi)| offsets[fi] + pi);
        let (shift, b) = match rs.shift() {
            Ok((s, b)) => (s, Rational::from_integer(b)),
            Err(_) => (Rational::zero(), Rational::zero()),
        };
        let volume = Rational::from_integer(pow2(rs.n1() as u64));
        Plan { factors, offsets, hidden, shift, b, volume }
    }

    fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn split(&self, flat: &[Rational]) -> Vec<Vec<Rational>> {
        self.offsets.windows(2).map(|w| flat[w[0]..w[1]].to_vec()).collect()
    }

    fn mins(&self) -> Vec<Rational> {
        let mut m = vec![Rational::zero(); self.len()];
        if let Some(h) = self.hidden {
            m[h] = self.b.clone();
        }
        m
    }

    /// `2^{N_1} · d_0(Λ̃)` from flat unshifted labels.
    fn dim(&self, flat: &[Rational]) -> Rational {
        let mut d = self.volume.clone();
        for (fi, f) in self.factors.iter().enumerate() {
            let mut labels = flat[self.offsets[fi]..self.offsets[fi + 1]].to_vec();
            if let Some(h) = self.hidden {
                if (self.offsets[fi]..self.offsets[fi + 1]).contains(&h) {
                    labels[h - self.offsets[fi]] -= &self.shift;
                }
            }
            d *= weyl_dim(*f, &labels).expect("label count");
        }
        d
    }
}

/// Lower bound on the dimension of any typical representation other than
/// the trivial one.
///
/// Type II bounds are evaluated at the corner weights of the monotone region
/// and checked against their closed forms.
pub fn min_typical_dim_bound(id: &AlgebraId) -> BigInt {
    let rs_n1 = crate::rootdata::expected_n1(id) as u64;
    match id.family() {
        Family::A { .. } | Family::C { .. } => pow2(rs_n1),
        Family::B { m: 0, n } => {
            let bound = BigInt::from(2 * n + 1);
            let mut labels = vec![Rational::zero(); n as usize];
            labels[0] = int(1);
            let hidden = if n == 1 { int(1) } else { int(0) };
            *labels.last_mut().unwrap() = hidden - Rational::new(1.into(), 2.into());
            let corner = Rational::from_integer(pow2(rs_n1)) * weyl_dim(SimpleFactor::c(n as usize), &labels).unwrap();
            assert_eq!(corner, Rational::from_integer(bound.clone()), "osp(1|{}) corner", 2 * n);
            bound
        }
        Family::B { .. } | Family::D { .. } => {
            let closed = corner_closed_forms(id);
            let corners = corner_dims(id);
            assert_eq!(corners, closed, "{id} corner weights");
            closed.into_iter().min().unwrap()
        }
        Family::D21A => BigInt::from(16),
        Family::F4 => BigInt::from(256),
        Family::G3 => BigInt::from(64),
    }
}

/// Closed forms of the two corner dimensions of `B(m|n)` or `D(m|n)`,
/// `m ≥ 1`: strictly inside the monotone region, and on its boundary.
pub fn corner_closed_forms(id: &AlgebraId) -> Vec<BigInt> {
    match id.family() {
        Family::B { m, n } => {
            let (m, n) = (u64::from(m), u64::from(n));
            let inner = pow2(2 * m * n) * binomial(BigInt::from(2 * n + 1), BigInt::from(n));
            vec![inner, pow2(m * (2 * n + 1))]
        }
        Family::D { m, n } => {
            let (m, n) = (u64::from(m), u64::from(n));
            let inner = pow2(2 * m * n + 1) * binomial(BigInt::from(2 * n + 1), BigInt::from(n - 1)) / BigInt::from(n);
            vec![inner, pow2(m * (2 * n + 1) - 1)]
        }
        _ => panic!("{id} has no corner formula"),
    }
}

/// Typical dimensions at the corner weights of `B(m|n)` or `D(m|n)`: hidden
/// label `m + 1` with all other labels zero, then hidden label `m` with the
/// last orthogonal label (B) or the first fork label (D) equal to one.
pub fn corner_dims(id: &AlgebraId) -> Vec<BigInt> {
    let rs = build(id);
    let (m, n) = match id.family() {
        Family::B { m, n } | Family::D { m, n } => (m as usize, n as usize),
        _ => panic!("{id} has no corner weights"),
    };
    let eval = |hidden: usize, orth: Vec<Rational>| -> BigInt {
        let mut c = vec![Rational::zero(); n];
        c[n - 1] = int(hidden as i64);
        let hw = HighestWeight::from_even_labels(&rs, &[c, orth]).expect("corner weight");
        let d = hw.typical_dim().expect("corner dimension");
        assert!(d.is_integer(), "{id}: corner dimension {d}");
        d.to_integer()
    };
    let mut edge = vec![Rational::zero(); m];
    let fork_or_last = if matches!(id.family(), Family::D { .. }) { m - 2 } else { m - 1 };
    edge[fork_or_last] = int(1);
    vec![eval(m + 1, vec![Rational::zero(); m]), eval(m, edge)]
}

/// Every algebra whose lower bound does not exceed `target`, scanning each
/// family in increasing rank until the bound exceeds `target`.
pub fn algebra_candidates(target: &BigInt) -> Vec<AlgebraId> {
    candidates_with_bounds(target).into_iter().map(|(id, _)| id).collect()
}

fn candidates_with_bounds(target: &BigInt) -> Vec<(AlgebraId, BigInt)> {
    let mut out = Vec::new();
    let push_row = |out: &mut Vec<(AlgebraId, BigInt)>, ids: &mut dyn Iterator<Item = AlgebraId>| -> bool {
        let mut any = false;
        let mut last = BigInt::zero();
        for id in ids {
            let bound = min_typical_dim_bound(&id);
            assert!(bound >= last, "bounds must be nondecreasing along {id}");
            last = bound.clone();
            if &bound > target {
                break;
            }
            any = true;
            out.push((id, bound));
        }
        any
    };
    for q in 1.. {
        let row = (q.max(2)..).map(move |p| AlgebraId::sl(p, q).expect("valid sl"));
        if !push_row(&mut out, &mut row.into_iter()) {
            break;
        }
    }
    push_row(&mut out, &mut (2..).map(|n| AlgebraId::osp(2, n).expect("valid osp(2|2n)")));
    push_row(&mut out, &mut (1..).map(|n| AlgebraId::osp(1, n).expect("valid osp(1|2n)")));
    for n in 1.. {
        let row = (1..).map(move |m| AlgebraId::osp(2 * m + 1, n).expect("valid B(m|n)"));
        if !push_row(&mut out, &mut row.into_iter()) {
            break;
        }
    }
    for n in 1.. {
        let row = (2..).filter(move |&m| (m, n) != (2, 1)).map(move |m| AlgebraId::osp(2 * m, n).expect("valid D(m|n)"));
        if !push_row(&mut out, &mut row.into_iter()) {
            break;
        }
    }
    for id in [AlgebraId::d21a_symbolic(), AlgebraId::G3, AlgebraId::F4] {
        let bound = min_typical_dim_bound(&id);
        if &bound <= target {
            out.push((id, bound));
        }
    }
    out
}

fn make_rep(rs: &RootSystem, hw: &HighestWeight<'_>, even: Vec<Vec<Rational>>, dim: BigInt) -> Option<TypicalRep> {
    let report = hw.is_typical().expect("typicality of a dominant weight");
    if report.verdict == Verdict::Atypical {
        return None;
    }
    let tag = rs.algebra.param_tag();
    let excluded = (tag != ParamTag::None).then(|| {
        let mut values = report.excluded_values.clone();
        if tag == ParamTag::Alpha {
            values.extend([int(0), int(-1)]);
            values.sort();
            values.dedup();
        }
        (tag, values)
    });
    Some(TypicalRep {
        algebra: rs.algebra.clone(),
        g_labels: hw.g_labels.clone(),
        even_labels: even,
        ls0: hw.ls0.as_ref().and_then(|x| x.as_rational().cloned()),
        n1: rs.n1(),
        dim,
        excluded,
    })
}

fn is_trivial(flat: &[Rational]) -> bool {
    flat.iter().all(Zero::is_zero)
}

/// All typical representations of `id` of dimension `target`.
pub fn enumerate_typical(id: &AlgebraId, target: &BigInt) -> Vec<TypicalRep> {
    enumerate_typical_with(id, target, SearchOptions::default()).reps
}

pub fn enumerate_typical_with(id: &AlgebraId, target: &BigInt, opts: SearchOptions) -> Enumeration {
    let rs = build(id);
    let plan = Plan::new(&rs);
    let goal = Rational::from_integer(target.clone());
    let outcome = monotone_search(&plan.mins(), &goal, &|x: &[Rational]| plan.dim(x), opts.workers);
    let mut reps = Vec::new();
    for flat in &outcome.hits {
        if plan.hidden.is_some() && is_trivial(flat) {
            continue;
        }
        let even = plan.split(flat);
        let hw = HighestWeight::from_even_labels(&rs, &even).expect("dominant even labels");
        debug_assert_eq!(hw.typical_dim().unwrap(), goal);
        if let Some(rep) = make_rep(&rs, &hw, even, target.clone()) {
            reps.push(rep);
        }
    }
    reps.sort_by_key(TypicalRep::sort_key);
    let strip = if opts.audit_strip && plan.hidden.is_some() {
        audit_strip(&rs, &plan, &goal)
    } else {
        StripAudit::default()
    };
    Enumeration { reps, nodes: outcome.nodes, strip }
}

/// Per-label box: the largest value whose minimal completion stays within
/// `goal`, with the hidden label at `b`.
fn label_box(plan: &Plan, goal: &Rational) -> Vec<Rational> {
    let mins = plan.mins();
    (0..plan.len())
        .map(|i| {
            let mut x = mins.clone();
            while plan.dim(&x) <= *goal {
                x[i] += Rational::one();
            }
            x[i].clone() - Rational::one()
        })
        .collect()
}

fn for_each_in_box(lo: &[Rational], hi: &[Rational], f: &mut dyn FnMut(&[Rational])) {
    let mut x = lo.to_vec();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    loop {
        f(&x);
        let mut i = 0;
        loop {
            if i == x.len() {
                return;
            }
            if x[i] < hi[i] {
                x[i] += Rational::one();
                break;
            }
            x[i] = lo[i].clone();
            i += 1;
        }
    }
}

/// Scans `l_s^0 ≤ b` over the search box: supplementary conditions that
/// hold must force atypicality, and no valid strip weight below `b` may be
/// a typical representation of the target dimension.
fn audit_strip(rs: &RootSystem, plan: &Plan, goal: &Rational) -> StripAudit {
    let h = plan.hidden.expect("type II");
    let mut hi = label_box(plan, goal);
    hi[h] = plan.b.clone();
    let lo = vec![Rational::zero(); plan.len()];
    let mut audit = StripAudit::default();
    for_each_in_box(&lo, &hi, &mut |flat| {
        let even = plan.split(flat);
        let hw = HighestWeight::from_even_labels(rs, &even).expect("dominant even labels");
        audit.checked += 1;
        let status = hw.strip_status().expect("strip weight");
        let report = hw.is_typical().expect("typicality");
        match status {
            StripStatus::NotHighestWeight => audit.not_highest_weight += 1,
            StripStatus::Forced(root) => {
                audit.forced_atypical += 1;
                if !report.vanishing_roots.contains(&root) {
                    audit.violations.push(format!("{} {:?}: forced root not orthogonal", rs.algebra, flat));
                }
            }
            StripStatus::Unconstrained => {
                if flat[h] < plan.b && report.verdict != Verdict::Atypical && plan.dim(flat) == *goal {
                    audit.violations.push(format!("{} {:?}: typical below the shift", rs.algebra, flat));
                }
            }
        }
    });
    audit
}

/// Reference search without pruning: every even-label vector in
/// `[0, bound]^k`, with the supplementary conditions applied on the strip.
pub fn enumerate_unpruned(id: &AlgebraId, target: &BigInt, bound: u32) -> Vec<TypicalRep> {
    let rs = build(id);
    let plan = Plan::new(&rs);
    let goal = Rational::from_integer(target.clone());
    let lo = vec![Rational::zero(); plan.len()];
    let hi = vec![int(i64::from(bound)); plan.len()];
    let mut reps = Vec::new();
    for_each_in_box(&lo, &hi, &mut |flat| {
        if plan.hidden.is_some() && is_trivial(flat) {
            return;
        }
        let even = plan.split(flat);
        let hw = HighestWeight::from_even_labels(&rs, &even).expect("dominant even labels");
        if let Some(h) = plan.hidden {
            if flat[h] <= plan.b && hw.strip_status().expect("strip") == StripStatus::NotHighestWeight {
                return;
            }
        }
        if hw.typical_dim().expect("dimension") != goal {
            return;
        }
        if let Some(rep) = make_rep(&rs, &hw, even, target.clone()) {
            reps.push(rep);
        }
    });
    reps.sort_by_key(TypicalRep::sort_key);
    reps
}

/// Union of [`enumerate_typical_with`] over [`algebra_candidates`].
pub fn enumerate_all(target: &BigInt, opts: SearchOptions) -> SearchReport {
    let bound_log = candidates_with_bounds(target);
    let mut reps = Vec::new();
    let mut nodes = 0;
    let mut strip = StripAudit::default();
    for (id, _) in &bound_log {
        let e = enumerate_typical_with(id, target, opts);
        nodes += e.nodes;
        strip.checked += e.strip.checked;
        strip.forced_atypical += e.strip.forced_atypical;
        strip.not_highest_weight += e.strip.not_highest_weight;
        strip.violations.extend(e.strip.violations);
        reps.extend(e.reps);
    }
    reps.sort_by_key(TypicalRep::sort_key);
    SearchReport { target: target.clone(), candidates_considered: bound_log.len(), bound_log, reps, nodes, strip }
}

/// Representations identified up to the label-reversing diagram symmetry.
#[derive(Clone, Debug)]
pub struct ConjugateClass {
    pub members: Vec<TypicalRep>,
}

/// Even labels of the conjugate representation: `sl(n|n)` reverses the whole
/// even-label vector, `sl(p|q)` with `p ≠ q` reverses each factor; other
/// algebras are self-conjugate in this sense.
pub fn conjugate_even_labels(id: &AlgebraId, even: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    match id.family() {
        Family::A { p, q } if p == q => {
            let mut flat: Vec<Rational> = even.iter().flatten().cloned().collect();
            flat.reverse();
            let mut out = Vec::new();
            let mut it = flat.into_iter();
            for f in even {
                out.push(it.by_ref().take(f.len()).collect());
            }
            out
        }
        Family::A { .. } => even.iter().map(|f| f.iter().rev().cloned().collect()).collect(),
        _ => even.to_vec(),
    }
}

/// Groups conjugate representations; classes keep the canonical order of
/// their first member.
pub fn merge_conjugates(reps: &[TypicalRep]) -> Vec<ConjugateClass> {
    let mut classes: BTreeMap<(String, Vec<Vec<Rational>>), usize> = BTreeMap::new();
    let mut out: Vec<ConjugateClass> = Vec::new();
    for rep in reps {
        let conj = conjugate_even_labels(&rep.algebra, &rep.even_labels);
        let canon = rep.even_labels.clone().min(conj);
        let key = (rep.algebra.to_string(), canon);
        match classes.get(&key) {
            Some(&i) => out[i].members.push(rep.clone()),
            None => {
                classes.insert(key, out.len());
                out.push(ConjugateClass { members: vec![rep.clone()] });
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct B0nCrossCheck {
    pub n: u32,
    /// Sorted typical dimensions of `osp(1|2n)` over the label box.
    pub super_dims: Vec<String>,
    /// Sorted `so(2n+1)` dimensions with even last label over the box.
    pub even_dims: Vec<String>,
    pub agree: bool,
    /// `osp(1|2n)` weights of the target dimension.
    pub target_hits: usize,
    /// `so(2n+1)` weights of the target dimension with even last label.
    pub so_hits_even: usize,
}

/// Compares `osp(1|2n)` typical dimensions with `so(2n+1)` dimensions of
/// even last label, over the box `l_i ≤ bound` (last label `≤ 2·bound`),
/// and counts weights of dimension `target` on both sides.
pub fn b0n_cross_check(n: u32, target: &BigInt, bound: u32) -> B0nCrossCheck {
    let id = AlgebraId::osp(1, n).expect("osp(1|2n)");
    let rs = build(&id);
    let plan = Plan::new(&rs);
    let lo = vec![Rational::zero(); plan.len()];
    let hi = vec![int(i64::from(bound)); plan.len()];
    let mut super_dims = Vec::new();
    for_each_in_box(&lo, &hi, &mut |flat| {
        let hw = HighestWeight::from_even_labels(&rs, &plan.split(flat)).expect("dominant");
        super_dims.push(hw.typical_dim().expect("dimension"));
    });
    let bn = SimpleFactor::b(n as usize);
    let mut even_dims = Vec::new();
    for_each_in_box(&lo, &hi, &mut |flat| {
        let mut l = flat.to_vec();
        *l.last_mut().unwrap() *= int(2);
        even_dims.push(weyl_dim(bn, &l).expect("B_n labels"));
    });
    super_dims.sort();
    even_dims.sort();
    let target_hits = enumerate_typical(&id, target).len()
        + usize::from(target.is_one()); // trivial representation
    let so_hits_even = crate::weyldim::enumerate_labels(bn, target)
        .iter()
        .filter(|l| (l.last().unwrap() / int(2)).is_integer())
        .count();
    let fmt = |v: &[Rational]| v.iter().map(fmt_rational).collect::<Vec<_>>();
    B0nCrossCheck {
        n,
        agree: super_dims == even_dims,
        super_dims: fmt(&super_dims),
        even_dims: fmt(&even_dims),
        target_hits,
        so_hits_even,
    }
}

/// `true` when `d` is an integer power of two times `k` for some integer.
pub fn divisible_by(d: &Rational, k: u64) -> bool {
    d.is_integer() && (d.to_integer() % BigInt::from(k)).is_zero()
}
