//! Command-line front end. Every command is deterministic for fixed flags; `--jobs`
//! only sizes the thread pool. Exit codes: 0 success, 1 comparison mismatch, 2 usage
//! or computation error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::charzero::{char0_row, char0_table_csv, char0_table_json, default_cutoff, ExtClass};
use crate::complex::DgComplex;
use crate::dg::{self, build_b, build_tilde_c, build_truncated_algebra, parse_word, Letter, Monomial, SignRule};
use crate::error::Error;
use crate::homology::{cohomology, compare};
use crate::predict::{
    ext_row, predicted_cohomology_with, specialize_prediction, ModulePresentation, WeightRule,
};
use crate::qnum::{cyclotomic, pascal_csv, pascal_triangle, phi, qbinomial, qnum, Color};
use crate::reduce::{labeled_edges, reduced_blocks};
use crate::ring::Specialization;
use crate::shrub::{
    ef_classes, enumerate, enumerate_subwords, enumerate_word, euler_sums, stroll_enumerate, Filter,
};

#[derive(Parser, Debug)]
#[command(name = "wakimoto", version, about = "Exact computations for reduced Wakimoto dg-modules")]
pub struct Cli {
    /// Output format; each command accepts a subset.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    #[default]
    Koszul,
    RightLeibniz,
}

impl From<Sign> for SignRule {
    fn from(s: Sign) -> SignRule {
        match s {
            Sign::Koszul => SignRule::Koszul,
            Sign::RightLeibniz => SignRule::RightLeibniz,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Weight {
    /// Twice the number of parts minus the number of distinct parts.
    #[default]
    Distinct,
    /// Twice the number of parts minus one.
    MinusOne,
}

impl From<Weight> for WeightRule {
    fn from(w: Weight) -> WeightRule {
        match w {
            Weight::Distinct => WeightRule::TwiceLengthMinusDistinct,
            Weight::MinusOne => WeightRule::TwiceLengthMinusOne,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Layout {
    /// One line per Ext-degree.
    Ext,
    /// One line per stacked copy of `H_k`.
    HRows,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Two-colored quantum number.
    Qnum {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "y")]
        color: Color,
    },
    /// Two-colored quantum binomial coefficient.
    Qbinom {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, default_value = "y")]
        color: Color,
    },
    /// Two-colored cyclotomic polynomial; without `--color`, the symmetric one.
    Cyclo {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        color: Option<Color>,
    },
    /// Cyclotomic factors of the quantum Pascal triangle.
    Pascal {
        #[arg(long, default_value_t = 7)]
        rows: u32,
    },
    /// Build, draw or check a complex.
    Dg {
        #[command(subcommand)]
        action: DgAction,
    },
    /// Cohomology of the antispherical module after specialization.
    Cohomology {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "Z:2,2")]
        spec: Specialization,
        #[arg(long, value_enum, default_value_t)]
        sign: Sign,
    },
    /// Closed-form cohomology prediction.
    Predict {
        #[arg(long, conflicts_with = "n_max", required_unless_present = "n_max")]
        n: Option<u32>,
        /// Table for every index up to this one.
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long, value_enum, default_value_t = Layout::Ext)]
        layout: Layout,
        #[arg(long, value_enum, default_value_t)]
        weight: Weight,
    },
    /// Compare direct cohomology with the specialized prediction.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "Z:2,2")]
        spec: Specialization,
        #[arg(long, value_enum, default_value_t)]
        weight: Weight,
        #[arg(long, value_enum, default_value_t)]
        sign: Sign,
        /// Drop one free piece from the prediction before comparing.
        #[arg(long)]
        sabotage: bool,
    },
    /// Characteristic-zero computations.
    Char0 {
        #[command(subcommand)]
        action: Char0Action,
    },
    /// Shrubbery combinatorics.
    Shrub {
        #[command(subcommand)]
        action: ShrubAction,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["n", "block", "truncated"])))]
pub struct Source {
    /// Antispherical module for the word of length 2n.
    #[arg(long)]
    n: Option<u32>,
    /// With `--n`: keep the ρ generators.
    #[arg(long, requires = "n")]
    full: bool,
    /// The summand of total parameter m.
    #[arg(long)]
    block: Option<u32>,
    /// The algebra truncated at total parameter m.
    #[arg(long)]
    truncated: Option<u32>,
    #[arg(long, value_enum, default_value_t)]
    sign: Sign,
}

impl Source {
    fn build(&self) -> DgComplex<Monomial> {
        let rule = self.sign.into();
        match (self.n, self.block, self.truncated) {
            (Some(n), _, _) => build_tilde_c(n, !self.full, rule),
            (_, Some(m), _) => build_b(m, rule),
            (_, _, Some(m)) => build_truncated_algebra(m, rule),
            _ => unreachable!("clap requires one source"),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum DgAction {
    /// Basis and differential.
    Build(Source),
    /// Graph description in DOT.
    Dot {
        #[command(flatten)]
        source: Source,
        /// With `--block`: the blocks after the change of basis and rescaling.
        #[arg(long, requires = "block")]
        reduced: bool,
    },
    /// Check `d² = 0` symbolically.
    Check(Source),
}

#[derive(Subcommand, Debug)]
pub enum Char0Action {
    /// Ext table of the minimal complexes.
    Table {
        #[arg(long, default_value_t = 9)]
        n_max: u32,
        #[arg(long, default_value = "t")]
        start: Letter,
        /// Highest internal degree inspected; defaults to `n + 6` per row.
        #[arg(long)]
        cutoff: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ShrubAction {
    /// List shrubberies.
    Enum {
        #[arg(long, conflicts_with = "word", required_unless_present = "word")]
        len: Option<usize>,
        /// Fixed word such as `stst`.
        #[arg(long)]
        word: Option<String>,
        /// With `--word`: all subwords.
        #[arg(long, requires = "word")]
        subwords: bool,
        #[arg(long)]
        color: Option<Letter>,
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        complete: bool,
    },
    /// Run the combinatorial checks.
    Check {
        /// Compare enumeration with the 01-sequence oracle up to this length.
        #[arg(long, default_value_t = 9)]
        oracle_len: usize,
        /// Euler characteristic identity up to this index.
        #[arg(long, default_value_t = 4)]
        euler_n: u32,
        /// E/F bijection for complete shrubberies with stems up to this length.
        #[arg(long, default_value_t = 11)]
        ef_len: usize,
    },
}

enum Outcome {
    Done(String),
    Mismatch(String),
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type Run = std::result::Result<Outcome, Failure>;

/// Parse `args` (including the program name), run, write to `out`/`err`, return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => execute(&cli),
    };
    match result {
        Ok(Outcome::Done(s)) => {
            let _ = out.write_all(s.as_bytes());
            0
        }
        Ok(Outcome::Mismatch(s)) => {
            let _ = out.write_all(s.as_bytes());
            1
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {}", m);
            2
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {}", e);
            2
        }
    }
}

fn unsupported(f: Format, what: &str) -> Failure {
    Failure::Usage(format!("format {:?} is not available for {}", f, what).to_lowercase())
}

fn json_out(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Run {
    let f = cli.format;
    match &cli.command {
        Command::Qnum { n, color } => poly_out(f, "qnum", json!({"n": n}), qnum(*n, *color).to_string()),
        Command::Qbinom { n, k, color } => {
            let v = qbinomial(*n, *k, *color)?;
            poly_out(f, "qbinom", json!({"n": n, "k": k}), v.to_string())
        }
        Command::Cyclo { n, color } => {
            if *n == 0 {
                return Err(Failure::Usage("--n must be positive".into()));
            }
            let v = match color {
                Some(c) => cyclotomic(*n, *c),
                None => phi(*n),
            };
            poly_out(f, "cyclo", json!({"n": n}), v.to_string())
        }
        Command::Pascal { rows } => pascal(f, *rows),
        Command::Dg { action } => dg_command(f, action),
        Command::Cohomology { n, spec, sign } => {
            let h = cohomology(&build_tilde_c(*n, true, (*sign).into()), spec)?;
            match f {
                Format::Text => Ok(Outcome::Done(h.to_string())),
                Format::Json => Ok(Outcome::Done(json_out(h.to_json()))),
                _ => Err(unsupported(f, "cohomology")),
            }
        }
        Command::Predict { n, n_max, layout, weight } => predict(f, *n, *n_max, *layout, (*weight).into()),
        Command::Verify { n, spec, weight, sign, sabotage } => {
            verify(f, *n, spec, (*weight).into(), (*sign).into(), *sabotage)
        }
        Command::Char0 { action: Char0Action::Table { n_max, start, cutoff } } => {
            char0_table(f, *n_max, *start, *cutoff)
        }
        Command::Shrub { action } => shrub_command(f, action),
    }
}

fn poly_out(f: Format, what: &str, mut meta: Value, text: String) -> Run {
    match f {
        Format::Text => Ok(Outcome::Done(format!("{}\n", text))),
        Format::Json => {
            meta["value"] = Value::String(text);
            Ok(Outcome::Done(json_out(meta)))
        }
        _ => Err(unsupported(f, what)),
    }
}

fn factor_text(idx: &[u32]) -> String {
    if idx.is_empty() {
        "1".into()
    } else {
        idx.iter().map(|d| format!("phi{}", d)).collect::<Vec<_>>().join("*")
    }
}

fn pascal(f: Format, rows: u32) -> Run {
    let t = pascal_triangle(rows);
    match f {
        Format::Text => {
            let mut s = String::new();
            for (n, row) in t.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|e| factor_text(e)).collect();
                let _ = writeln!(s, "{}: {}", n, cells.join("  "));
            }
            Ok(Outcome::Done(s))
        }
        Format::Csv => Ok(Outcome::Done(pascal_csv(rows))),
        Format::Json => Ok(Outcome::Done(json_out(json!(t)))),
        Format::Dot => Err(unsupported(f, "pascal")),
    }
}

fn dg_command(f: Format, action: &DgAction) -> Run {
    match action {
        DgAction::Build(src) => {
            let c = src.build();
            match f {
                Format::Text => Ok(Outcome::Done(complex_text(&c))),
                Format::Json => Ok(Outcome::Done(json_out(dg::to_json(&c)))),
                Format::Dot => Ok(Outcome::Done(dg::to_dot(&c, "complex"))),
                Format::Csv => {
                    let mut s = String::from("source,target,coefficient\n");
                    for (a, b, v) in c.map_labels(dg::composition_label).edges() {
                        let _ = writeln!(s, "\"{}\",\"{}\",\"{}\"", a, b, v);
                    }
                    Ok(Outcome::Done(s))
                }
            }
        }
        DgAction::Dot { source, reduced } => {
            if !matches!(f, Format::Text | Format::Dot) {
                return Err(unsupported(f, "dg dot"));
            }
            if *reduced {
                let m = source.block.expect("clap requires --block");
                let mut s = format!("digraph reduced_{} {{\n  rankdir=LR;\n", m);
                for (i, (key, block)) in reduced_blocks(m, source.sign.into())?.iter().enumerate() {
                    let _ = writeln!(s, "  subgraph cluster_{} {{\n    label=\"{}\";", i, key);
                    for l in block.basis.values().flatten() {
                        let _ = writeln!(s, "    \"{}\";", l);
                    }
                    for (a, b, lab) in labeled_edges(block, m) {
                        let _ = writeln!(s, "    \"{}\" -> \"{}\" [label=\"{}\"];", a, b, lab);
                    }
                    s.push_str("  }\n");
                }
                s.push_str("}\n");
                Ok(Outcome::Done(s))
            } else {
                Ok(Outcome::Done(dg::to_dot(&source.build(), "complex")))
            }
        }
        DgAction::Check(src) => {
            let c = src.build();
            let line = format!("rank {}, {} entries", c.total_rank(), c.num_edges());
            let ok = c.check_d_squared();
            let s = match f {
                Format::Text => format!("d^2 = 0: {} ({})\n", if ok { "ok" } else { "FAILED" }, line),
                Format::Json => json_out(json!({"d_squared_zero": ok, "rank": c.total_rank(), "entries": c.num_edges()})),
                _ => return Err(unsupported(f, "dg check")),
            };
            Ok(if ok { Outcome::Done(s) } else { Outcome::Mismatch(s) })
        }
    }
}

fn complex_text(c: &DgComplex<Monomial>) -> String {
    let mut s = String::new();
    for (d, b) in &c.basis {
        let labels: Vec<String> = b.iter().map(dg::composition_label).collect();
        let _ = writeln!(s, "C^{} [{}]: {}", d, b.len(), labels.join(" "));
    }
    for (a, b, v) in c.map_labels(dg::composition_label).edges() {
        let _ = writeln!(s, "{} -> {}: {}", a, b, v);
    }
    s
}

/// Stacked copies of `H_k` as lines `Hk[s] deg:cells …`, cells at one degree joined by `|`.
pub fn h_rows(p: &ModulePresentation) -> Vec<String> {
    let mut rows: BTreeMap<(u32, i64), BTreeMap<i64, Vec<String>>> = BTreeMap::new();
    for piece in &p.summands {
        let origin = piece.origin.unwrap_or((0, 0));
        rows.entry(origin).or_default().entry(piece.degree()).or_default().push(piece.cell());
    }
    rows.into_iter()
        .map(|((k, s), cells)| {
            let mut line = format!("H{}[{}]", k, s);
            for (d, c) in &cells {
                let _ = write!(line, " {}:{}", d, c.join("|"));
            }
            line
        })
        .collect()
}

fn predict(f: Format, n: Option<u32>, n_max: Option<u32>, layout: Layout, rule: WeightRule) -> Run {
    let ns: Vec<u32> = match (n, n_max) {
        (Some(n), _) => vec![n],
        (_, Some(m)) => (0..=m).collect(),
        _ => unreachable!("clap requires --n or --n-max"),
    };
    match (f, layout) {
        (Format::Text, Layout::HRows) => {
            let mut s = String::new();
            for &n in &ns {
                if ns.len() > 1 {
                    let _ = writeln!(s, "n = {}", n);
                }
                for line in h_rows(&predicted_cohomology_with(n, rule)) {
                    let _ = writeln!(s, "{}", line);
                }
            }
            Ok(Outcome::Done(s))
        }
        (Format::Text, Layout::Ext) => {
            let mut s = String::new();
            for &n in &ns {
                let cells: Vec<String> = ext_row(&predicted_cohomology_with(n, rule), n)
                    .into_iter()
                    .map(|(j, c)| format!("{}:{}", j, c.join("|")))
                    .collect();
                let _ = writeln!(s, "n={} {}", n, cells.join(" "));
            }
            Ok(Outcome::Done(s))
        }
        (Format::Csv, Layout::Ext) => {
            let mut s = String::from("n,j,cells\n");
            for &n in &ns {
                for (j, c) in ext_row(&predicted_cohomology_with(n, rule), n) {
                    let _ = writeln!(s, "{},{},\"{}\"", n, j, c.join("|"));
                }
            }
            Ok(Outcome::Done(s))
        }
        (Format::Json, _) => {
            let v: Vec<Value> = ns
                .iter()
                .map(|&n| json!({"n": n, "summands": predicted_cohomology_with(n, rule).to_json()}))
                .collect();
            Ok(Outcome::Done(json_out(json!(v))))
        }
        _ => Err(unsupported(f, "predict")),
    }
}

fn verify(f: Format, n: u32, spec: &Specialization, rule: WeightRule, sign: SignRule, sabotage: bool) -> Run {
    let computed = cohomology(&build_tilde_c(n, true, sign), spec)?;
    let mut p = predicted_cohomology_with(n, rule);
    if sabotage {
        match p.summands.iter().position(|s| s.generators.is_empty()) {
            Some(i) => {
                p.summands.remove(i);
            }
            None => return Err(Failure::Usage("nothing to sabotage for this n".into())),
        }
    }
    let predicted = specialize_prediction(&p, spec)?;
    let diff = compare(&predicted, &computed);
    let s = match f {
        Format::Text => {
            if diff.is_empty() {
                format!("n={} {}: match in {} degrees\n", n, spec, computed.groups.len())
            } else {
                let mut s = format!("n={} {}: mismatch\n", n, spec);
                for d in &diff {
                    let _ = writeln!(s, "  {}", d);
                }
                s
            }
        }
        Format::Json => json_out(json!({
            "n": n,
            "spec": spec.to_string(),
            "match": diff.is_empty(),
            "diff": diff,
            "computed": computed.to_json(),
            "predicted": predicted.to_json(),
        })),
        _ => return Err(unsupported(f, "verify")),
    };
    Ok(if diff.is_empty() { Outcome::Done(s) } else { Outcome::Mismatch(s) })
}

fn char0_table(f: Format, n_max: u32, start: Letter, cutoff: Option<i64>) -> Run {
    let rows: Vec<(u32, BTreeMap<i64, ExtClass>)> = (0..=n_max)
        .into_par_iter()
        .map(|n| char0_row(n, start, cutoff.unwrap_or_else(|| default_cutoff(n))).map(|r| (n, r)))
        .collect::<crate::error::Result<_>>()?;
    let table: BTreeMap<u32, BTreeMap<i64, ExtClass>> = rows.into_iter().collect();
    match f {
        Format::Csv => Ok(Outcome::Done(char0_table_csv(&table))),
        Format::Json => Ok(Outcome::Done(json_out(char0_table_json(&table)))),
        Format::Text => {
            let mut s = String::new();
            for (n, row) in &table {
                let cells: Vec<String> = row.iter().map(|(j, c)| format!("{}:{}", j, c)).collect();
                let _ = writeln!(s, "n={} {}", n, cells.join(" "));
            }
            Ok(Outcome::Done(s))
        }
        Format::Dot => Err(unsupported(f, "char0 table")),
    }
}

fn shrub_command(f: Format, action: &ShrubAction) -> Run {
    match action {
        ShrubAction::Enum { len, word, subwords, color, basis, complete } => {
            let filter = Filter { color: *color, basis_only: *basis, complete_only: *complete };
            let list = match (len, word) {
                (Some(l), _) => enumerate(*l, filter),
                (_, Some(w)) => {
                    let w = parse_word(w)?;
                    if *subwords {
                        enumerate_subwords(&w, filter)
                    } else {
                        enumerate_word(&w, filter)
                    }
                }
                _ => unreachable!("clap requires --len or --word"),
            };
            match f {
                Format::Text => Ok(Outcome::Done(list.iter().map(|l| format!("{}\n", l)).collect())),
                Format::Json => Ok(Outcome::Done(json_out(json!(list.iter().map(|l| l.to_json()).collect::<Vec<_>>())))),
                Format::Csv => {
                    let mut s = String::from("shrubbery,length,stems,complete\n");
                    for l in &list {
                        let _ = writeln!(s, "{},{},{},{}", l, l.len(), l.stem_count(), l.is_complete());
                    }
                    Ok(Outcome::Done(s))
                }
                Format::Dot => Err(unsupported(f, "shrub enum")),
            }
        }
        ShrubAction::Check { oracle_len, euler_n, ef_len } => {
            if f != Format::Text {
                return Err(unsupported(f, "shrub check"));
            }
            let report = shrub_checks(*oracle_len, *euler_n, *ef_len)?;
            let ok = report.iter().all(|(_, ok)| *ok);
            let s: String = report
                .iter()
                .map(|(line, ok)| format!("{} {}\n", if *ok { "ok  " } else { "FAIL" }, line))
                .collect();
            Ok(if ok { Outcome::Done(s) } else { Outcome::Mismatch(s) })
        }
    }
}

/// Enumeration against the oracle, Euler sums and E/F bijections, one line each.
pub fn shrub_checks(oracle_len: usize, euler_n: u32, ef_len: usize) -> crate::error::Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    let colors = [None, Some(Letter::S), Some(Letter::T)];
    let mut oracle_ok = true;
    let mut count = 0;
    for len in 0..=oracle_len {
        for color in colors {
            for basis_only in [false, true] {
                let filter = Filter { color, basis_only, complete_only: false };
                let ours: std::collections::BTreeSet<String> =
                    enumerate(len, filter).iter().map(|l| l.to_string()).collect();
                count += ours.len();
                oracle_ok &= ours == stroll_enumerate(len, color, basis_only);
            }
        }
    }
    out.push((format!("enumeration matches the oracle up to length {} ({} shrubberies)", oracle_len, count), oracle_ok));
    let mut euler_ok = true;
    for n in 0..=euler_n {
        let (a, b) = euler_sums(n);
        euler_ok &= a == b;
    }
    out.push((format!("Euler sums agree up to n = {}", euler_n), euler_ok));
    let mut ef_ok = true;
    let mut checked = 0;
    for len in 0..=ef_len {
        let filter = Filter { color: None, basis_only: false, complete_only: true };
        for l in enumerate(len, filter).iter().filter(|l| l.stem_count() > 0) {
            checked += 1;
            ef_ok &= ef_classes(l)?.is_bijection();
        }
    }
    out.push((format!("E/F bijection for {} shrubberies up to length {}", checked, ef_len), ef_ok));
    Ok(out)
}

/// Entry point for the binary.
pub fn main_with_args() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
