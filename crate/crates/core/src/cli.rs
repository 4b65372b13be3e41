//! Command-line front end.
//!
//! Every command parses its arguments, hands typed values to an [`Engine`]
//! and prints the strings it gets back. Formatting is the only work done
//! here.
//!
//! Exit codes: 0 on success, 2 on a parse error, 3 on a validation error.
//!
//! JSON-lines output writes one object per line. Field names:
//!
//! * `info`: `algebra`, `kind`, `rank`, `superdim`, `n0`, `n1`, `even_part`,
//!   `cartan`, `diagram`, `basis`, `rho0`, `rho1`, `shift`, `b`.
//! * `dim`/`typical`: `algebra`, `labels`, `dim`, `typical`, `param`,
//!   `excluded`, `vanishing_roots`, `highest_weight`.
//! * `enumerate`: the fields of [`RepRecord`], plus `class` with
//!   `--merge-conjugates`.
//! * `weyl`: `factor`, `labels`, `dim`.
//! * `poly`: `base_point`, `coefficients`, `integer_valued`.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{enumerate_all, enumerate_typical_with, merge_conjugates, SearchOptions};
use crate::polytools::{binomial_coefficients, is_integer_valued, SampledPolynomial};
use crate::rootdata::{build, parse_algebra, AlgebraError, AlgebraId, AlgebraType};
use crate::scalar::{fmt_rational, parse_rational, AffineScalar, ParamTag, Rational};
use crate::tables::{format_shift_table, format_table, select, shift_table, RepRecord};
use crate::typicality::{HighestWeight, StripStatus, TypicalityError};
use crate::weyldim::{weyl_dim, SimpleFactor};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Syntax(_) => CliError::Parse(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<TypicalityError> for CliError {
    fn from(e: TypicalityError) -> Self {
        CliError::Validation(e.to_string())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LabelError {
    #[error("cannot parse label `{0}`")]
    Syntax(String),
    #[error("at most one label may carry a parameter")]
    MultipleParams,
}

impl From<LabelError> for CliError {
    fn from(e: LabelError) -> Self {
        CliError::Parse(e.to_string())
    }
}

/// `p/q*a+r/s`, `a`, `-a`, `2*a-1` and similar.
fn parse_alpha_affine(entry: &str) -> Option<AffineScalar> {
    let (head, tail) = entry.split_once('a')?;
    let slope = match head {
        "" => Rational::from_integer(1.into()),
        "-" => Rational::from_integer((-1).into()),
        h => parse_rational(h.strip_suffix('*')?)?,
    };
    let constant = match tail {
        "" => Rational::from_integer(0.into()),
        t => parse_rational(t.strip_prefix('+').unwrap_or(t))?,
    };
    Some(AffineScalar::new(constant, slope, ParamTag::Alpha))
}

/// Comma-separated labels. Each entry is a rational, the letter `t` (the
/// free odd label, tagged `odd_tag`) or an expression affine in `a`.
pub fn parse_labels(text: &str, odd_tag: ParamTag) -> Result<Vec<AffineScalar>, LabelError> {
    let mut out = Vec::new();
    for raw in text.split(',') {
        let entry: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        let value = if entry == "t" {
            AffineScalar::param(odd_tag)
        } else if let Some(q) = parse_rational(&entry) {
            AffineScalar::constant(q)
        } else {
            parse_alpha_affine(&entry).ok_or_else(|| LabelError::Syntax(raw.trim().to_string()))?
        };
        out.push(value);
    }
    if out.iter().filter(|x| !x.is_constant()).count() > 1 {
        return Err(LabelError::MultipleParams);
    }
    Ok(out)
}

fn parse_rationals(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|s| parse_rational(s).ok_or_else(|| CliError::Parse(format!("cannot parse number `{}`", s.trim()))))
        .collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InfoReport {
    pub algebra: String,
    pub kind: String,
    pub rank: usize,
    pub superdim: String,
    pub n0: usize,
    pub n1: usize,
    pub even_part: String,
    pub cartan: Vec<Vec<String>>,
    pub diagram: String,
    pub basis: Vec<String>,
    pub rho0: Vec<String>,
    pub rho1: Vec<String>,
    pub shift: Option<String>,
    pub b: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DimReport {
    pub algebra: String,
    pub labels: Vec<String>,
    pub dim: String,
    /// `yes`, `no` or `conditional`.
    pub typical: String,
    pub param: Option<String>,
    pub excluded: Vec<String>,
    /// Simple-root expansions of the odd roots with `(Λ+ρ, α) = 0`.
    pub vanishing_roots: Vec<Vec<String>>,
    /// `false` when the supplementary conditions on the hidden label fail.
    pub highest_weight: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EnumerateReport {
    pub records: Vec<RepRecord>,
    /// With conjugate merging: indices into `records`, one list per class.
    pub classes: Option<Vec<Vec<usize>>>,
    pub candidates: usize,
    pub algebras: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PolyReport {
    pub base_point: String,
    pub coefficients: Vec<String>,
    pub integer_valued: bool,
}

/// The computations behind the commands.
pub trait Engine {
    fn info(&self, id: &AlgebraId) -> Result<InfoReport, CliError>;
    fn dim(&self, id: &AlgebraId, labels: &[AffineScalar]) -> Result<DimReport, CliError>;
    fn weyl(&self, factor: SimpleFactor, labels: &[Rational]) -> Result<String, CliError>;
    fn enumerate(
        &self,
        target: &BigInt,
        algebra: Option<&AlgebraId>,
        workers: usize,
        merge: bool,
    ) -> Result<EnumerateReport, CliError>;
    fn table(&self, id: u8) -> Result<String, CliError>;
    fn poly(&self, base_point: &BigInt, values: &[Rational]) -> Result<PolyReport, CliError>;
}

/// The engine backed by this crate.
#[derive(Clone, Copy, Debug, Default)]
pub struct LibraryEngine;

impl Engine for LibraryEngine {
    fn info(&self, id: &AlgebraId) -> Result<InfoReport, CliError> {
        let rs = build(id);
        let strs = |v: &[Rational]| v.iter().map(fmt_rational).collect::<Vec<_>>();
        let cartan = rs
            .cartan_matrix()
            .map_err(|e| CliError::Validation(e.to_string()))?
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect())
            .collect();
        let (shift, b) = match rs.classify() {
            AlgebraType::TypeII => {
                let (s, b) = rs.shift()?;
                (Some(fmt_rational(&s)), Some(b.to_string()))
            }
            _ => (None, None),
        };
        Ok(InfoReport {
            algebra: id.to_string(),
            kind: format!("{:?}", rs.classify()),
            rank: rs.rank(),
            superdim: format!("{}|{}", 2 * rs.n0() + rs.rank(), 2 * rs.n1()),
            n0: rs.n0(),
            n1: rs.n1(),
            even_part: rs.even_part().to_string(),
            cartan,
            diagram: rs.diagram(),
            basis: rs.basis.clone(),
            rho0: strs(&rs.rho0),
            rho1: strs(&rs.rho1),
            shift,
            b,
        })
    }

    fn dim(&self, id: &AlgebraId, labels: &[AffineScalar]) -> Result<DimReport, CliError> {
        let rs = build(id);
        let hw = HighestWeight::from_g_labels(&rs, labels)?;
        let dim = hw.typical_dim()?;
        let report = hw.is_typical()?;
        let highest_weight = match (&hw.ls0, rs.shift()) {
            (Some(ls0), Ok((_, b))) if ls0.as_rational().is_some_and(|h| h.to_integer() <= b) => {
                hw.strip_status()? != StripStatus::NotHighestWeight
            }
            _ => true,
        };
        Ok(DimReport {
            algebra: id.to_string(),
            labels: labels.iter().map(|l| l.to_string()).collect(),
            dim: fmt_rational(&dim),
            typical: report.verdict.to_string(),
            param: (report.param != ParamTag::None).then(|| report.param.symbol().to_string()),
            excluded: report.excluded_values.iter().map(fmt_rational).collect(),
            vanishing_roots: report
                .vanishing_roots
                .iter()
                .map(|r| r.expansion.iter().map(fmt_rational).collect())
                .collect(),
            highest_weight,
        })
    }

    fn weyl(&self, factor: SimpleFactor, labels: &[Rational]) -> Result<String, CliError> {
        weyl_dim(factor, labels).map(|d| fmt_rational(&d)).map_err(|e| CliError::Validation(e.to_string()))
    }

    fn enumerate(
        &self,
        target: &BigInt,
        algebra: Option<&AlgebraId>,
        workers: usize,
        merge: bool,
    ) -> Result<EnumerateReport, CliError> {
        let opts = SearchOptions { workers, ..SearchOptions::default() };
        let (reps, candidates) = match algebra {
            Some(id) => (enumerate_typical_with(id, target, opts).reps, 1),
            None => {
                let report = enumerate_all(target, opts);
                (report.reps, report.candidates_considered)
            }
        };
        let classes = merge.then(|| {
            let classes = merge_conjugates(&reps);
            classes
                .iter()
                .map(|c| c.members.iter().map(|m| reps.iter().position(|r| r == m).expect("member of reps")).collect())
                .collect()
        });
        let mut algebras: Vec<String> = reps.iter().map(|r| r.algebra.to_string()).collect();
        algebras.dedup();
        Ok(EnumerateReport {
            records: reps.iter().map(RepRecord::from).collect(),
            classes,
            candidates,
            algebras: algebras.len(),
        })
    }

    fn table(&self, id: u8) -> Result<String, CliError> {
        let target = BigInt::from(64);
        match id {
            2 => shift_table().map(|rows| format_shift_table(&rows)).map_err(CliError::Validation),
            3 | 4 => {
                let report = enumerate_all(&target, SearchOptions::default());
                Ok(format_table(&select(&report.reps, id == 3)))
            }
            _ => Err(CliError::Validation(format!("no table {id}"))),
        }
    }

    fn poly(&self, base_point: &BigInt, values: &[Rational]) -> Result<PolyReport, CliError> {
        if values.is_empty() {
            return Err(CliError::Validation("at least one value is required".into()));
        }
        let p = SampledPolynomial::new(base_point.clone(), values.to_vec());
        Ok(PolyReport {
            base_point: base_point.to_string(),
            coefficients: binomial_coefficients(&p).iter().map(fmt_rational).collect(),
            integer_valued: is_integer_valued(&p),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
}

/// Dimensions and typicality of Lie superalgebra representations.
#[derive(Debug, Parser)]
#[command(name = "superweyl", version)]
pub struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root data, Cartan matrix, diagram and shift of an algebra.
    Info { algebra: String },
    /// Typical dimension and typicality of a highest weight.
    Dim {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        labels: String,
    },
    /// Typicality report of a highest weight.
    Typical {
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        labels: String,
    },
    /// All typical representations of a given dimension.
    Enumerate {
        #[arg(long)]
        dim: BigInt,
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        algebra: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        merge_conjugates: bool,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        workers: u16,
    },
    /// Weyl dimension of a simple Lie algebra representation.
    Weyl {
        factor: String,
        #[arg(long, allow_hyphen_values = true)]
        labels: String,
    },
    /// Shift table (2) or the typical 64-dimensional representations of
    /// type I (3) and type II (4).
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        id: u8,
    },
    /// Binomial coefficients and integrality of a sampled polynomial.
    Poly {
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long, default_value_t = BigInt::from(0), allow_hyphen_values = true)]
        base: BigInt,
    },
}

fn algebra_arg(text: &str) -> Result<AlgebraId, CliError> {
    Ok(parse_algebra(text)?)
}

fn labels_for(id: &AlgebraId, text: &str) -> Result<Vec<AffineScalar>, CliError> {
    let tag = if id.is_type_i() { ParamTag::OddLabel } else { ParamTag::None };
    Ok(parse_labels(text, tag)?)
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(value).expect("serializable"))
}

fn braces(v: &[String]) -> String {
    format!("{{{}}}", v.join(","))
}

fn tuple(v: &[String]) -> String {
    format!("({})", v.join(","))
}

fn print_dim(out: &mut dyn Write, r: &DimReport, with_dim: bool) -> std::io::Result<()> {
    let mut line = String::new();
    if with_dim {
        line.push_str(&format!("dim={} ", r.dim));
    }
    line.push_str(&format!("typical={}", r.typical));
    if let Some(p) = &r.param {
        line.push_str(&format!(" excluded({p})={}", braces(&r.excluded)));
    }
    if !r.vanishing_roots.is_empty() {
        let roots: Vec<String> = r.vanishing_roots.iter().map(|v| tuple(v)).collect();
        line.push_str(&format!(" vanishing={}", roots.join(";")));
    }
    if !r.highest_weight {
        line.push_str(" highest_weight=no");
    }
    writeln!(out, "{line}")
}

fn execute(engine: &dyn Engine, cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Validation(format!("write failed: {e}"));
    let jsonl = cli.format == Format::Jsonl;
    match cli.command {
        Command::Info { algebra } => {
            let r = engine.info(&algebra_arg(&algebra)?)?;
            if jsonl {
                return json_line(out, &r).map_err(io);
            }
            let mut text = format!(
                "algebra {}\ntype {}\nrank {}\nsuperdimension {}\nN0 {}\nN1 {}\neven part {}\ndiagram {}\n",
                r.algebra, r.kind, r.rank, r.superdim, r.n0, r.n1, r.even_part, r.diagram
            );
            text.push_str("cartan\n");
            for row in &r.cartan {
                text.push_str(&format!("  {}\n", row.join(" ")));
            }
            text.push_str(&format!("basis {}\nrho0 {}\nrho1 {}\n", tuple(&r.basis), tuple(&r.rho0), tuple(&r.rho1)));
            if let (Some(s), Some(b)) = (&r.shift, &r.b) {
                text.push_str(&format!("shift {s}\nb {b}\n"));
            }
            out.write_all(text.as_bytes()).map_err(io)
        }
        Command::Dim { algebra, labels } | Command::Typical { algebra, labels } if jsonl => {
            let id = algebra_arg(&algebra)?;
            let r = engine.dim(&id, &labels_for(&id, &labels)?)?;
            json_line(out, &r).map_err(io)
        }
        Command::Dim { algebra, labels } => {
            let id = algebra_arg(&algebra)?;
            let r = engine.dim(&id, &labels_for(&id, &labels)?)?;
            print_dim(out, &r, true).map_err(io)
        }
        Command::Typical { algebra, labels } => {
            let id = algebra_arg(&algebra)?;
            let r = engine.dim(&id, &labels_for(&id, &labels)?)?;
            print_dim(out, &r, false).map_err(io)
        }
        Command::Enumerate { dim, algebra, all: _, merge_conjugates, workers } => {
            let id = algebra.as_deref().map(algebra_arg).transpose()?;
            let r = engine.enumerate(&dim, id.as_ref(), usize::from(workers), merge_conjugates)?;
            if jsonl {
                #[derive(Serialize)]
                struct WithClass<'a> {
                    #[serde(flatten)]
                    record: &'a RepRecord,
                    class: usize,
                }
                match &r.classes {
                    Some(classes) => {
                        for (k, members) in classes.iter().enumerate() {
                            for &i in members {
                                json_line(out, &WithClass { record: &r.records[i], class: k + 1 }).map_err(io)?;
                            }
                        }
                    }
                    None => {
                        for rec in &r.records {
                            json_line(out, rec).map_err(io)?;
                        }
                    }
                }
                return Ok(());
            }
            let mut text = format_table(&r.records);
            text.push_str(&format!(
                "# {} representations, {} algebras, {} candidates\n",
                r.records.len(),
                r.algebras,
                r.candidates
            ));
            if let Some(classes) = &r.classes {
                for (k, members) in classes.iter().enumerate() {
                    let rows: Vec<String> = members
                        .iter()
                        .map(|&i| format!("{} {}", r.records[i].algebra, tuple(&r.records[i].g_labels)))
                        .collect();
                    text.push_str(&format!("# class {}: {}\n", k + 1, rows.join(" ~ ")));
                }
                text.push_str(&format!("# {} conjugate classes\n", classes.len()));
            }
            out.write_all(text.as_bytes()).map_err(io)
        }
        Command::Weyl { factor, labels } => {
            let f: SimpleFactor = factor.parse().map_err(|e: crate::weyldim::FactorError| CliError::Parse(e.to_string()))?;
            let labels = parse_rationals(&labels)?;
            let d = engine.weyl(f, &labels)?;
            if jsonl {
                #[derive(Serialize)]
                struct Weyl {
                    factor: String,
                    labels: Vec<String>,
                    dim: String,
                }
                let w = Weyl { factor: f.to_string(), labels: labels.iter().map(fmt_rational).collect(), dim: d };
                return json_line(out, &w).map_err(io);
            }
            writeln!(out, "{d}").map_err(io)
        }
        Command::Table { id } => {
            let t = engine.table(id)?;
            out.write_all(t.as_bytes()).map_err(io)
        }
        Command::Poly { values, base } => {
            let values = parse_rationals(&values)?;
            let r = engine.poly(&base, &values)?;
            if jsonl {
                return json_line(out, &r).map_err(io);
            }
            writeln!(
                out,
                "coefficients={} integer_valued={}",
                tuple(&r.coefficients),
                if r.integer_valued { "yes" } else { "no" }
            )
            .map_err(io)
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name. Returns the exit
/// code.
pub fn run_with(engine: &dyn Engine, argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match execute(engine, cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

/// [`run_with`] on the library engine.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    run_with(&LibraryEngine, argv, out, err)
}
