//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed self-check, 2 usage error, 3 domain error,
//! 4 resource limit. Big integers are written as decimal strings in JSON.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::asymptotics::{
    asym_count, asym_count_forest, compare_patterns, ln_bigint, ratio_coefficient, solve_nonplane_constants,
    RatioLimit, DEFAULT_PRECISION,
};
use crate::error::Error;
use crate::family::{enumerate_family, FamilyId};
use crate::oracle::{count_forest_in_family_with, count_in_family_with, EmbedCount, Limits};
use crate::series::{GfEngine, Kind};
use crate::stopping::{best_choice_win_prob, simulate_best_choice};
use crate::tree::{canonical_text, PlaneForest, PlaneTree};
use crate::Engine;

/// Version of the JSON layout; bumped on any incompatible change.
pub const SCHEMA_VERSION: u32 = 1;
/// Environment variable holding the default output format.
pub const FORMAT_ENV: &str = "TREEMBED_FORMAT";

#[derive(Parser, Debug)]
#[command(name = "treembed", version, about = "Exact and asymptotic counts of tree pattern embeddings")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = FORMAT_ENV, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Brute-force counts over every host of one size.
    Count {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Generating-function coefficients for sizes 1..=N.
    Series {
        #[command(flatten)]
        target: Target,
        #[arg(long = "N", alias = "order")]
        order: usize,
    },
    /// Leading-order estimate `K beta^n n^alpha`.
    Asym {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "all")]
        kind: KindArg,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Exact `sqrt(n) g/a` against its limit.
    Ratio {
        #[command(flatten)]
        target: Target,
        #[arg(long = "N", alias = "order")]
        order: usize,
        /// Report every k-th admissible size.
        #[arg(long, default_value_t = 1)]
        every: usize,
    },
    /// Monotonicity verdict for two patterns.
    Compare {
        #[arg(long, value_parser = parse_family)]
        family: FamilyId,
        #[arg(long)]
        pattern1: String,
        #[arg(long)]
        pattern2: String,
    },
    /// Singularity constants of non-plane binary trees.
    Constants {
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Monte Carlo run of the best-choice game.
    Simulate {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Checks series against the oracle on all small patterns.
    Selfcheck {
        /// Largest pattern size.
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Largest host size.
        #[arg(long, default_value_t = 11)]
        max_n: usize,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long, value_parser = parse_family)]
    family: FamilyId,
    /// Tree such as "(()())"; components of a forest are separated by ';'.
    #[arg(long)]
    pattern: String,
}

#[derive(Args, Debug)]
struct Budget {
    /// Most hosts one query may enumerate.
    #[arg(long)]
    max_hosts: Option<u64>,
    /// Most (host, subset) pairs one query may inspect.
    #[arg(long)]
    budget: Option<u128>,
    /// Lift all budgets.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    All,
    Good,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::All => Kind::All,
            KindArg::Good => Kind::Good,
        }
    }
}

fn parse_family(s: &str) -> Result<FamilyId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Pattern {
    Tree(PlaneTree),
    Forest(PlaneForest),
}

impl Pattern {
    fn parse(text: &str) -> Result<Self, Failure> {
        let f: PlaneForest = text.parse().map_err(Failure::Usage)?;
        Ok(match f.as_tree() {
            Some(t) => Pattern::Tree(t.clone()),
            None => Pattern::Forest(f),
        })
    }

    fn tree(self, what: &str) -> Result<PlaneTree, Failure> {
        match self {
            Pattern::Tree(t) => Ok(t),
            Pattern::Forest(_) => Err(Failure::Lib(Error::Domain(format!("{what} needs a connected pattern")))),
        }
    }
}

enum Failure {
    Usage(Error),
    Lib(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// A rendered result: scalar fields plus an optional table.
struct Report {
    command: &'static str,
    engine: Option<Engine>,
    fields: Vec<(String, Value)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

impl Report {
    fn new(command: &'static str, engine: Option<Engine>) -> Self {
        Report { command, engine, fields: Vec::new(), columns: Vec::new(), rows: Vec::new() }
    }

    fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
                obj.insert("command".into(), json!(self.command));
                if let Some(e) = self.engine {
                    obj.insert("engine".into(), serde_json::to_value(e).unwrap_or(Value::Null));
                }
                for (k, v) in &self.fields {
                    obj.insert(k.clone(), v.clone());
                }
                if !self.columns.is_empty() {
                    let rows = self
                        .rows
                        .iter()
                        .map(|r| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect()))
                        .collect();
                    obj.insert("rows".into(), Value::Array(rows));
                }
                serde_json::to_writer(&mut *out, &Value::Object(obj))?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                if self.columns.is_empty() {
                    w.write_record(self.fields.iter().map(|(k, _)| k.as_str()))?;
                    w.write_record(self.fields.iter().map(|(_, v)| plain(v)))?;
                } else {
                    w.write_record(&self.columns)?;
                    for r in &self.rows {
                        w.write_record(r.iter().map(plain))?;
                    }
                }
                w.flush()
            }
            Format::Plain => {
                if let Some(e) = self.engine {
                    writeln!(out, "engine: {}", plain(&serde_json::to_value(e).unwrap_or(Value::Null)))?;
                }
                for (k, v) in &self.fields {
                    writeln!(out, "{k}: {}", plain(v))?;
                }
                if !self.columns.is_empty() {
                    writeln!(out, "{}", self.columns.join("\t"))?;
                    for r in &self.rows {
                        writeln!(out, "{}", r.iter().map(plain).collect::<Vec<_>>().join("\t"))?;
                    }
                }
                Ok(())
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn big(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

/// Runs the tool on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let format = cli.format;
    match dispatch(cli.command, err) {
        Ok(report) => match report.render(format, out) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                4
            }
        },
        Err(Failure::Usage(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse { .. } => 2,
                Error::Resource(_) => 4,
                _ => 3,
            }
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "selfcheck failed: {msg}");
            1
        }
    }
}

fn dispatch(command: Command, err: &mut dyn Write) -> Result<Report, Failure> {
    match command {
        Command::Count { target, n, budget } => {
            let limits = limits(&budget, err);
            let (fam, pattern) = (target.family, Pattern::parse(&target.pattern)?);
            let counts = match &pattern {
                Pattern::Tree(t) => count_in_family_with(t, fam, n, &limits)?,
                Pattern::Forest(f) => count_forest_in_family_with(f, fam, n, &limits)?,
            };
            Ok(count_report(&target, n, &counts))
        }
        Command::Series { target, order } => series(&target, order),
        Command::Asym { target, kind, n } => {
            let fam = target.family;
            let est = match Pattern::parse(&target.pattern)? {
                Pattern::Tree(t) => asym_count(&t, fam, kind.into())?,
                Pattern::Forest(f) => asym_count_forest(&f, fam, kind.into())?,
            };
            let mut r = Report::new("asym", Some(Engine::Asymptotic))
                .field("family", fam.name())
                .field("pattern", target.pattern.trim())
                .field("kind", format!("{:?}", Kind::from(kind)).to_lowercase())
                .field("K", num(est.k_const))
                .field("beta", num(est.beta))
                .field("alpha", num(est.alpha))
                .field("parity", serde_json::to_value(est.parity).unwrap_or(Value::Null));
            if let Some(n) = n {
                r = r
                    .field("n", n)
                    .field("estimate", num(est.value(n)))
                    .field("log10_estimate", num(est.ln_value(n) / std::f64::consts::LN_10));
            }
            Ok(r)
        }
        Command::Ratio { target, order, every } => ratio(&target, order, every.max(1)),
        Command::Compare { family, pattern1, pattern2 } => {
            let s1 = Pattern::parse(&pattern1)?.tree("compare")?;
            let s2 = Pattern::parse(&pattern2)?.tree("compare")?;
            let c = compare_patterns(&s1, &s2, family);
            Ok(Report::new("compare", Some(Engine::Asymptotic))
                .field("family", family.name())
                .field("pattern1", s1.to_string())
                .field("pattern2", s2.to_string())
                .field("subposet", c.subposet)
                .field("k1", num(c.k1))
                .field("k2", num(c.k2))
                .field("limit1", limit_value(&c.limit1))
                .field("limit2", limit_value(&c.limit2))
                .field("ordered", c.ordered.map(Value::Bool).unwrap_or(Value::Null))
                .field("verdict", c.verdict()))
        }
        Command::Constants { precision } => {
            let c = solve_nonplane_constants(precision)?;
            Ok(Report::new("constants", Some(Engine::Asymptotic))
                .field("precision", precision)
                .field("rho", c.decimals.rho)
                .field("b", c.decimals.b)
                .field("sigma", c.decimals.sigma)
                .field("a", c.decimals.a_const)
                .field("residual_f", num(c.residual_f))
                .field("residual_fv", num(c.residual_fv)))
        }
        Command::Simulate { target, n, trials, seed } => {
            let fam = target.family;
            let s = Pattern::parse(&target.pattern)?.tree("simulate")?;
            let sim = simulate_best_choice(fam, n, &s, trials, seed)?;
            let exact = best_choice_win_prob(&s, fam, n).ok();
            Ok(Report::new("simulate", Some(Engine::Oracle))
                .field("family", fam.name())
                .field("pattern", s.to_string())
                .field("n", n)
                .field("seed", seed)
                .field("trials", sim.trials)
                .field("hits", sim.hits)
                .field("successes", sim.successes)
                .field("estimate", sim.estimate.map(num).unwrap_or(Value::Null))
                .field("std_error", sim.std_error.map(num).unwrap_or(Value::Null))
                .field("inconclusive", sim.inconclusive)
                .field("exact", exact.map(big).unwrap_or(Value::Null)))
        }
        Command::Selfcheck { max_size, max_n } => selfcheck(max_size, max_n),
    }
}

fn limits(budget: &Budget, err: &mut dyn Write) -> Limits {
    if budget.force {
        let _ = writeln!(err, "warning: --force lifts all budgets; this query may run for a long time");
        return Limits::unlimited();
    }
    let mut l = Limits::default();
    if let Some(h) = budget.max_hosts {
        l.enumeration_cap = h;
    }
    if let Some(b) = budget.budget {
        l.subset_budget = b;
    }
    l
}

fn count_report(target: &Target, n: usize, counts: &EmbedCount) -> Report {
    Report::new("count", Some(Engine::Oracle))
        .field("family", target.family.name())
        .field("pattern", target.pattern.trim())
        .field("n", n)
        .field("all", big(&counts.all))
        .field("good", big(&counts.good))
}

fn limit_value(l: &RatioLimit) -> Value {
    match l {
        RatioLimit::InverseN => Value::String("1/n".into()),
        RatioLimit::Coefficient { coefficient } => num(*coefficient),
    }
}

fn series(target: &Target, order: usize) -> Result<Report, Failure> {
    let fam = target.family;
    let engine = GfEngine::new(order);
    let (a, g) = match Pattern::parse(&target.pattern)? {
        Pattern::Tree(t) => {
            let a = engine.series(&t, fam, Kind::All)?;
            let g = engine.good_from_all(&a, fam);
            (a, Some(g))
        }
        Pattern::Forest(f) => (engine.forest_series(&f, fam)?, None),
    };
    let mut r = Report::new("series", Some(Engine::Series))
        .field("family", fam.name())
        .field("pattern", target.pattern.trim())
        .field("N", order);
    r.columns = vec!["n", "all", "good"];
    for n in 1..=order {
        let good = g.as_ref().map(|g| big(g.coeff(n))).unwrap_or_else(|| big(0));
        r.rows.push(vec![json!(n), big(a.coeff(n)), good]);
    }
    Ok(r)
}

fn ratio(target: &Target, order: usize, every: usize) -> Result<Report, Failure> {
    let fam = target.family;
    let s = Pattern::parse(&target.pattern)?.tree("ratio")?;
    let engine = GfEngine::new(order);
    let a = engine.series(&s, fam, Kind::All)?;
    let g = engine.good_from_all(&a, fam);
    let limit = ratio_coefficient(&s, fam);
    // sqrt(n) g/a tends to the coefficient; in the 1/n regime n g/a is reported.
    let power = if limit == RatioLimit::InverseN { 1.0 } else { 0.5 };
    let mut r = Report::new("ratio", Some(Engine::Series))
        .field("family", fam.name())
        .field("pattern", s.to_string())
        .field("limit", limit_value(&limit))
        .field("scaling", if power == 1.0 { "n" } else { "sqrt(n)" });
    r.columns = vec!["n", "good", "all", "scaled_ratio"];
    let admissible = (1..=order).filter(|&n| !a.coeff(n).eq(&BigInt::from(0)));
    for n in admissible.step_by(every) {
        let scaled = (ln_bigint(g.coeff(n)) - ln_bigint(a.coeff(n))).exp() * (n as f64).powf(power);
        r.rows.push(vec![json!(n), big(g.coeff(n)), big(a.coeff(n)), num(scaled)]);
    }
    Ok(r)
}

/// Every plane pattern of each size (Motzkin classes only for the non-plane family)
/// against the oracle at every host size up to `max_n`.
fn selfcheck(max_size: usize, max_n: usize) -> Result<Report, Failure> {
    if max_size == 0 || max_size > 6 || max_n > 15 {
        return Err(Error::Resource("selfcheck is limited to patterns of size <= 6 and hosts of size <= 15".into()).into());
    }
    let mut checked = 0u64;
    let mut mismatches = Vec::new();
    for fam in FamilyId::ALL {
        let engine = GfEngine::new(max_n);
        let top = if fam == FamilyId::PlantedPlane { max_n.min(9) } else { max_n };
        for m in 1..=max_size {
            let mut patterns = enumerate_family(FamilyId::PlantedPlane, m)?;
            if fam == FamilyId::NonplaneBinary {
                patterns.retain(|p| p.is_motzkin());
                patterns.sort_by_key(canonical_text);
                patterns.dedup_by_key(|p| canonical_text(p));
            }
            for s in &patterns {
                let a = engine.series(s, fam, Kind::All)?;
                let g = engine.good_from_all(&a, fam);
                for n in 1..=top {
                    let counts = count_in_family_with(s, fam, n, &Limits::default())?;
                    checked += 1;
                    if BigInt::from(counts.all.clone()) != *a.coeff(n) || BigInt::from(counts.good.clone()) != *g.coeff(n) {
                        mismatches.push(format!("{fam} {s} n={n}"));
                    }
                }
            }
        }
    }
    if !mismatches.is_empty() {
        return Err(Failure::Check(mismatches.join(", ")));
    }
    Ok(Report::new("selfcheck", Some(Engine::Series))
        .field("reference", "oracle")
        .field("max_size", max_size)
        .field("max_n", max_n)
        .field("checked", checked)
        .field("mismatches", 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["treembed"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn count_json() {
        let (code, out, _) = call(&["count", "--family", "plane-binary", "--pattern", "(()())", "--n", "5"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["all"], "10");
        assert_eq!(v["good"], "8");
        assert_eq!(v["engine"], "oracle");
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["count", "--family", "x", "--pattern", "()", "--n", "5"]).0, 2);
        assert_eq!(call(&["count", "--family", "b", "--pattern", "(()", "--n", "5"]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
        assert_eq!(call(&["constants", "--precision", "40"]).0, 3);
        assert_eq!(call(&["count", "--family", "b", "--pattern", "()", "--n", "25", "--budget", "10"]).0, 4);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn csv_and_plain() {
        let (code, out, _) = call(&["--format", "csv", "series", "--family", "t", "--pattern", "()", "--N", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().collect::<Vec<_>>(), ["n,all,good", "1,1,1", "2,2,1", "3,6,2", "4,20,5"]);
        let (_, out, _) = call(&["--format", "plain", "constants"]);
        assert!(out.contains("rho: 0.6345"));
    }
}
