//! The command-line front end: documented invocations, exit codes, golden
//! tables, JSON-lines records, and the thin-adapter property.

use std::process::Command;

use num_bigint::BigInt;
use superweyl::cli::{
    run_with, CliError, DimReport, Engine, EnumerateReport, InfoReport, LibraryEngine, PolyReport,
};
use superweyl::rootdata::AlgebraId;
use superweyl::scalar::{AffineScalar, Rational};
use superweyl::tables::RepRecord;
use superweyl::weyldim::SimpleFactor;

use super::golden;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_superweyl")).args(args).output().expect("spawn");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn documented_invocations() {
    assert_eq!(bin(&["dim", "osp(5|2)", "--labels", "5/2,0,1"]), (0, "dim=64 typical=yes\n".into(), String::new()));
    assert_eq!(bin(&["weyl", "B2", "--labels", "1,3"]).1, "64\n");
    assert_eq!(bin(&["dim", "osp(3|2)", "--labels", "17/2,15"]).1, "dim=64 typical=yes\n");
    assert_eq!(bin(&["dim", "sl(2|2)", "--labels", "3,t,0"]).1, "dim=64 typical=conditional excluded(t)={-4,-3,0,1}\n");
}

#[test]
fn exit_codes_and_diagnostics() {
    let (code, out, err) = bin(&["dim", "sl(2|x)", "--labels", "1,t"]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert_eq!(err.lines().count(), 1);
    assert_eq!(bin(&["dim", "sl(3|1)", "--labels", "t,1,t"]).0, 2);
    assert_eq!(bin(&["enumerate", "--dim", "64"]).0, 2);
    let (code, _, err) = bin(&["dim", "osp(5|2)", "--labels", "5/2,1/2,1"]);
    assert_eq!(code, 3);
    assert!(err.starts_with("validation error"), "{err}");
    assert_eq!(bin(&["info", "osp(2|2)"]).0, 3);
}

#[test]
fn golden_tables() {
    assert_eq!(bin(&["table", "--id", "2"]).1, golden("table2.tsv"));
    assert_eq!(bin(&["table", "--id", "3"]).1, golden("table3.tsv"));
}

#[test]
fn jsonl_enumeration() {
    let (code, out, _) = bin(&["enumerate", "--dim", "64", "--all", "--format", "jsonl", "--workers", "4"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 20);
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).expect("one JSON object per line");
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["algebra", "dim", "even_labels", "excluded", "g_labels", "n1", "param", "type_i"]);
        assert_eq!(v["dim"], "64");
        let rec: RepRecord = serde_json::from_value(v).unwrap();
        assert_eq!(serde_json::to_string(&rec).unwrap().len(), line.len());
    }
    let (_, out, _) = bin(&["enumerate", "--dim", "64", "--algebra", "sl(2|2)", "--merge-conjugates", "--format", "jsonl"]);
    let classes: Vec<u64> = out
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["class"].as_u64().unwrap())
        .collect();
    assert_eq!(classes, [1, 1, 2]);
}

/// Returns fixed sentinel values; panics if a command reaches it after a
/// parse error.
struct StubEngine;

fn sentinel_record() -> RepRecord {
    RepRecord {
        algebra: "stub(7|7)".into(),
        type_i: true,
        n1: 99,
        g_labels: vec!["1/7".into(), "t".into()],
        even_labels: vec![vec!["-5".into()]],
        dim: "12345".into(),
        param: Some("t".into()),
        excluded: vec!["13/3".into()],
    }
}

impl Engine for StubEngine {
    fn info(&self, _: &AlgebraId) -> Result<InfoReport, CliError> {
        Err(CliError::Validation("stub info".into()))
    }
    fn dim(&self, _: &AlgebraId, labels: &[AffineScalar]) -> Result<DimReport, CliError> {
        Ok(DimReport {
            algebra: "stub".into(),
            labels: labels.iter().map(|l| l.to_string()).collect(),
            dim: "-17/3".into(),
            typical: "sentinel".into(),
            param: Some("q".into()),
            excluded: vec!["x".into(), "y".into()],
            vanishing_roots: vec![],
            highest_weight: true,
        })
    }
    fn weyl(&self, _: SimpleFactor, _: &[Rational]) -> Result<String, CliError> {
        Ok("not-a-number".into())
    }
    fn enumerate(&self, _: &BigInt, _: Option<&AlgebraId>, _: usize, _: bool) -> Result<EnumerateReport, CliError> {
        Ok(EnumerateReport { records: vec![sentinel_record()], classes: None, candidates: 0, algebras: 5 })
    }
    fn table(&self, id: u8) -> Result<String, CliError> {
        Ok(format!("TABLE {id} FROM STUB\n"))
    }
    fn poly(&self, _: &BigInt, _: &[Rational]) -> Result<PolyReport, CliError> {
        Ok(PolyReport { base_point: "b".into(), coefficients: vec!["c".into()], integer_valued: false })
    }
}

struct PanickingEngine;

impl Engine for PanickingEngine {
    fn info(&self, _: &AlgebraId) -> Result<InfoReport, CliError> {
        panic!("reached engine")
    }
    fn dim(&self, _: &AlgebraId, _: &[AffineScalar]) -> Result<DimReport, CliError> {
        panic!("reached engine")
    }
    fn weyl(&self, _: SimpleFactor, _: &[Rational]) -> Result<String, CliError> {
        panic!("reached engine")
    }
    fn enumerate(&self, _: &BigInt, _: Option<&AlgebraId>, _: usize, _: bool) -> Result<EnumerateReport, CliError> {
        panic!("reached engine")
    }
    fn table(&self, _: u8) -> Result<String, CliError> {
        panic!("reached engine")
    }
    fn poly(&self, _: &BigInt, _: &[Rational]) -> Result<PolyReport, CliError> {
        panic!("reached engine")
    }
}

fn run_engine(engine: &dyn Engine, args: &[&str]) -> (i32, String) {
    let argv: Vec<String> = std::iter::once("superweyl").chain(args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(engine, &argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn commands_only_relay_engine_results() {
    let s = &StubEngine;
    assert_eq!(
        run_engine(s, &["dim", "sl(2|1)", "--labels", "15,t"]),
        (0, "dim=-17/3 typical=sentinel excluded(q)={x,y}\n".into())
    );
    assert_eq!(run_engine(s, &["weyl", "B2", "--labels", "1,3"]), (0, "not-a-number\n".into()));
    assert_eq!(run_engine(s, &["table", "--id", "4"]), (0, "TABLE 4 FROM STUB\n".into()));
    assert_eq!(run_engine(s, &["poly", "--values", "1,2"]), (0, "coefficients=(c) integer_valued=no\n".into()));
    assert_eq!(run_engine(s, &["info", "F(4)"]).0, 3);
    let (code, out) = run_engine(s, &["enumerate", "--dim", "64", "--all"]);
    assert_eq!(code, 0);
    assert!(out.contains("stub(7|7)\t99\t(1/7,t)\t(-5)\tt\t{13/3}\n"), "{out}");
    assert!(out.contains("# 1 representations, 5 algebras, 0 candidates"), "{out}");
    let (_, out) = run_engine(s, &["--format", "jsonl", "enumerate", "--dim", "64", "--all"]);
    let rec: RepRecord = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(rec, sentinel_record());
}

#[test]
fn parse_errors_never_reach_the_engine() {
    let p = &PanickingEngine;
    for args in [
        &["dim", "sl(2|", "--labels", "1"][..],
        &["dim", "sl(2|1)", "--labels", "1,,t"],
        &["dim", "sl(2|1)", "--labels", "t,t"],
        &["weyl", "E8", "--labels", "1"],
        &["weyl", "B2", "--labels", "x"],
        &["poly", "--values", "1/0"],
        &["table", "--id", "9"],
    ] {
        assert_eq!(run_engine(p, args).0, 2, "{args:?}");
    }
}

#[test]
fn library_engine_matches_direct_calls() {
    let e = LibraryEngine;
    let id = AlgebraId::sl(2, 1).unwrap();
    let r = e.dim(&id, &[AffineScalar::from_int(15), AffineScalar::param(superweyl::scalar::ParamTag::OddLabel)]).unwrap();
    assert_eq!((r.dim.as_str(), r.typical.as_str()), ("64", "conditional"));
    assert_eq!(r.excluded, ["-16", "0"]);
}
