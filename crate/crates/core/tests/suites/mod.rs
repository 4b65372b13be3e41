//! Shared fixtures for the integration suites.

pub mod cli;
pub mod properties;

use std::path::PathBuf;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use superweyl::enumerate::{enumerate_all, SearchOptions, SearchReport};
use superweyl::rootdata::RootSystem;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The full search at dimension 64, computed once per test binary.
pub fn report64() -> &'static SearchReport {
    static REPORT: OnceLock<SearchReport> = OnceLock::new();
    REPORT.get_or_init(|| enumerate_all(&BigInt::from(64), SearchOptions::default()))
}

pub fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../tables").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Position of the hidden label in the flattened even-label vector.
pub fn hidden_index(rs: &RootSystem) -> Option<usize> {
    rs.hidden_slot.map(|(f, pos)| rs.even_factors[..f].iter().map(|x| x.factor.rank()).sum::<usize>() + pos)
}

pub fn even_len(rs: &RootSystem) -> usize {
    rs.even_factors.iter().map(|f| f.factor.rank()).sum()
}

/// Cuts a flat label vector into per-factor vectors.
pub fn split(rs: &RootSystem, flat: &[Q]) -> Vec<Vec<Q>> {
    let mut it = flat.iter().cloned();
    rs.even_factors.iter().map(|f| it.by_ref().take(f.factor.rank()).collect()).collect()
}

/// Integer part of the shift (type II) or zero.
pub fn hidden_min(rs: &RootSystem) -> i64 {
    rs.shift().map(|(_, b)| i64::try_from(b).expect("small b")).unwrap_or(0)
}

/// Calls `f` on every integer vector in `[lo_i, hi_i]`.
pub fn for_each_in_box(lo: &[i64], hi: &[i64], f: &mut dyn FnMut(&[Q])) {
    let mut cur: Vec<i64> = lo.to_vec();
    loop {
        let v: Vec<Q> = cur.iter().map(|&x| q(x)).collect();
        f(&v);
        let mut i = 0;
        loop {
            if i == cur.len() {
                return;
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}
