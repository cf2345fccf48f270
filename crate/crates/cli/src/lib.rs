//! Command-line front end. [`run`] takes an argv and returns the exit code
//! and both output streams, so tests can drive it without spawning a process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use scorza_core::catalog::{self, catalog_scorza, list_hermitian};
use scorza_core::dual_pair::{reduce, CaseKind, DualPairCase};
use scorza_core::rng::{trial_rng, DEFAULT_HEIGHT};
use scorza_core::strata::{defects, rank_of, relative_invariant, sample_secant, stratum_dimension};
use scorza_core::verify::{verify_suite, Suite, VerificationReport};
use scorza_core::{Error, Matrix, PSpaceModel, Scalar, StratumPoint};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

/// Both selector grammars, quoted in diagnostics.
pub const SELECTOR_GRAMMAR: &str = "sym:R | mat:Q,P | skew:N | exc27 | sp:L | u:P,Q | ostar:D";

#[derive(Parser, Debug)]
#[command(name = "scorza", version, about = "Exact checks on Jordan-rank strata, Scorza varieties and dual pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Random seed.
    #[arg(long, env = "SCORZA_SEED", default_value_t = 0, global = true)]
    seed: u64,

    /// Height bound for random numerators and denominators.
    #[arg(long, default_value_t = DEFAULT_HEIGHT, global = true)]
    height: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Scorza tables by index k, or hermitian Lie algebras by real rank.
    Catalog(CatalogArgs),
    /// Run a property suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Sample a point of the rank-s secant stratum.
    Sample {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
    },
    /// Dimension of the closure of the rank-s stratum.
    Dim {
        #[arg(long)]
        model: String,
        #[arg(long)]
        stratum: usize,
    },
    /// Secant defects and the Scorza conditions.
    Defects {
        #[arg(long)]
        model: String,
    },
    /// Relative invariant of a point read from JSON, or of a sampled full-rank point.
    Invariant {
        #[arg(long)]
        model: Option<String>,
        /// StratumPoint JSON file; `-` is not supported.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Sample the zero level of mu_K and reduce.
    Reduce {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
}

#[derive(Args, Debug)]
struct CatalogArgs {
    #[arg(long, required_unless_present = "rank", conflicts_with = "rank")]
    k: Option<usize>,
    #[arg(long)]
    rank: Option<usize>,
    /// With --rank, only algebras whose relative root system is of type C.
    #[arg(long, requires = "rank")]
    regular_only: bool,
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Self { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Result of a dispatched command before it is routed to stdout or a file.
struct Rendered {
    text: String,
    code: u8,
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code, stdout: String::new(), stderr: text }
            } else {
                Output { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let rendered = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            let code = match e {
                Error::Internal(_) => EXIT_VERIFY_FAILED,
                _ => EXIT_INPUT,
            };
            return Output { code, stdout: String::new(), stderr: format!("error: {e}\n") };
        }
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &rendered.text) {
            Ok(()) => Output { code: rendered.code, ..Output::default() },
            Err(e) => Output::input_error(format!("cannot write {}: {e}", path.display())),
        },
        None => Output { code: rendered.code, stdout: rendered.text, stderr: String::new() },
    }
}

fn selector_error(s: &str, e: Error) -> Error {
    let why = match e {
        Error::Input(m) | Error::Unsupported(m) => m,
        other => other.to_string(),
    };
    Error::Input(format!("bad selector {s:?} ({why}); grammar: {SELECTOR_GRAMMAR}"))
}

fn parse_model(s: &str) -> Result<PSpaceModel, Error> {
    s.parse::<PSpaceModel>().map_err(|e| selector_error(s, e))
}

fn parse_case(s: &str) -> Result<CaseKind, Error> {
    s.parse::<CaseKind>().map_err(|e| selector_error(s, e))
}

fn json_line<T: Serialize>(v: &T) -> String {
    catalog::to_json_line(v)
}

fn ok(text: String) -> Result<Rendered, Error> {
    Ok(Rendered { text, code: EXIT_OK })
}

fn dispatch(cli: &Cli) -> Result<Rendered, Error> {
    let table = cli.format == Format::Table;
    let h = cli.height;
    if h == 0 {
        return Err(Error::Input("height must be >= 1".into()));
    }
    match &cli.command {
        Command::Catalog(a) => {
            if let Some(k) = a.k {
                let rows = catalog_scorza(k)?;
                if table {
                    return ok(scorza_table(&rows));
                }
                ok(json_line(&rows))
            } else {
                let r = a.rank.expect("clap requires --k or --rank");
                let rows = list_hermitian(r, a.regular_only)?;
                if table {
                    return ok(hermitian_table(&rows));
                }
                ok(json_line(&rows))
            }
        }
        Command::Verify { suite, trials } => {
            let suite: Suite = suite.parse()?;
            let rep = verify_suite(suite, *trials, cli.seed)?;
            let code = if rep.pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
            let text = if table { report_table(&rep) } else { json_line(&rep) };
            Ok(Rendered { text, code })
        }
        Command::Sample { model, rank } => {
            let model = parse_model(model)?;
            if *rank == 0 || *rank > model.max_rank() {
                return Err(Error::Input(format!("rank must be in 1..={} for {model}", model.max_rank())));
            }
            let mut rng = trial_rng(cli.seed, "cli/sample", 0);
            let pt = sample_secant(model, rank - 1, &mut rng, h)?.with_rank()?;
            if table {
                return ok(point_table(&pt));
            }
            ok(json_line(&pt))
        }
        Command::Dim { model, stratum } => {
            let model = parse_model(model)?;
            let mut rng = trial_rng(cli.seed, "cli/dim", 0);
            let d = stratum_dimension(model, *stratum, &mut rng, h)?;
            if table {
                return ok(format!("model {model}  stratum {stratum}  cone_dim {}  proj_dim {}\n", d.cone_dim, d.proj_dim));
            }
            ok(json_line(&d))
        }
        Command::Defects { model } => {
            let model = parse_model(model)?;
            let mut rng = trial_rng(cli.seed, "cli/defects", 0);
            let d = defects(model, &mut rng, h)?;
            if table {
                let mut s = String::new();
                writeln!(s, "model {model}").ok();
                writeln!(s, "secant dims {:?}", d.secant_dims).ok();
                writeln!(s, "delta       {:?}", d.delta).ok();
                writeln!(s, "k0 {}  floor(dim/delta1) {}  scorza_ok {}", d.k0, d.k0_bound, d.scorza_ok).ok();
                return ok(s);
            }
            ok(json_line(&d))
        }
        Command::Invariant { model, input } => {
            let pt = match (input, model) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
                    let pt: StratumPoint =
                        serde_json::from_str(&text).map_err(|e| Error::Input(format!("bad StratumPoint JSON: {e}")))?;
                    if let Some(m) = model {
                        if parse_model(m)? != pt.model() {
                            return Err(Error::Input("--model disagrees with the model in --input".into()));
                        }
                    }
                    pt
                }
                (None, Some(m)) => {
                    let model = parse_model(m)?;
                    let mut rng = trial_rng(cli.seed, "cli/invariant", 0);
                    sample_secant(model, model.max_rank() - 1, &mut rng, h)?
                }
                (None, None) => return Err(Error::Input("invariant needs --input FILE or --model SELECTOR".into())),
            };
            let inv = relative_invariant(&pt)?;
            let rank = rank_of(&pt)?;
            if table {
                return ok(format!("{}rank {rank}\ninvariant {inv}\n", point_table(&pt)));
            }
            ok(json_line(&json!({ "point": pt.with_rank()?, "invariant": inv })))
        }
        Command::Reduce { case, s } => {
            let kind = parse_case(case)?;
            let case = DualPairCase::new(kind, *s)?;
            let mut rng = trial_rng(cli.seed, "cli/reduce", 0);
            let red = reduce(&case, &mut rng, h)?;
            if table {
                let mut t = String::new();
                writeln!(t, "case {kind}  s {s}  rank {}", red.rank).ok();
                for (name, m) in [("alpha", &red.alpha), ("mu_K", &red.mu_k), ("mu_G", &red.mu_g)] {
                    writeln!(t, "{name}:").ok();
                    t.push_str(&matrix_table(m));
                }
                writeln!(t, "reduced point:").ok();
                t.push_str(&point_table(&red.reduced_point));
                return ok(t);
            }
            ok(json_line(&red))
        }
    }
}

fn matrix_table(m: &Matrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(Scalar::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut s = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(s, "  {}", line.join(" ")).ok();
    }
    s
}

fn point_table(p: &StratumPoint) -> String {
    let mut s = format!("model {}\n", p.model());
    match p.matrix() {
        Some(m) => s.push_str(&matrix_table(m)),
        None => {
            let coords: Vec<String> = p.coordinate_vector().iter().map(Scalar::to_string).collect();
            writeln!(s, "  coordinates [{}]", coords.join(", ")).ok();
        }
    }
    if let Some(r) = p.cached_rank() {
        writeln!(s, "rank {r}").ok();
    }
    s
}

fn scorza_table(rows: &[scorza_core::ScorzaEntry]) -> String {
    let mut s = format!(
        "{:<10} {:<12} {:<12} {:>6} {:>6} {:>6} {:>4}  {:<7} {}\n",
        "label", "model", "embedding", "dim_X", "m", "delta", "k0", "regular", "variety"
    );
    for e in rows {
        writeln!(
            s,
            "{:<10} {:<12} {:<12} {:>6} {:>6} {:>6} {:>4}  {:<7} {}",
            e.label,
            e.model.to_string(),
            e.embedding,
            e.dim_x,
            e.ambient_m,
            e.delta,
            e.k0,
            e.regular,
            e.variety
        )
        .ok();
    }
    s
}

fn hermitian_table(rows: &[scorza_core::HermitianAlgebraEntry]) -> String {
    let mut s = format!("{:<10} {:<8} {:<7} {:<12} {:>6}  {}\n", "family", "param", "regular", "p", "dim p", "k^C");
    for e in rows {
        let dim = e.dim_p.map_or_else(|| e.dim_p_formula.clone(), |d| d.to_string());
        writeln!(
            s,
            "{:<10} {:<8} {:<7} {:<12} {:>6}  {}",
            e.family,
            e.parameter.as_deref().unwrap_or("-"),
            e.regular,
            e.p_model_name,
            dim,
            e.kc
        )
        .ok();
    }
    s
}

fn report_table(rep: &VerificationReport) -> String {
    let mut s = String::new();
    for c in &rep.checks {
        let mark = if c.pass { "PASS" } else { "FAIL" };
        let generic = c.generic.map(|g| format!("  generic {g}/{}", c.trials)).unwrap_or_default();
        writeln!(s, "{mark} {}  {}/{}{generic}", c.name, c.passes, c.trials).ok();
        if let Some(w) = &c.witness {
            writeln!(s, "     witness: seed {} trial {}: {}", w.seed, w.trial, w.detail).ok();
        }
    }
    let failed = rep.checks.iter().filter(|c| !c.pass).count();
    writeln!(
        s,
        "suite {}: {} checks, {} failed, {:.2}s",
        rep.suite,
        rep.checks.len(),
        failed,
        rep.wall_time.as_secs_f64()
    )
    .ok();
    s
}
