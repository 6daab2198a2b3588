//! `quartika`: verify, generate and search solutions of n(x⁴ + y⁴) = z⁴ + w⁴.
//!
//! Exit codes: 0 success, 1 domain error or failed verification, 2 usage.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quartika::exact_arith::{fourth, verify};
use quartika::families::{family1_closed_form, family2_closed_form, Family1Form, Family2Form, Pipeline};
use quartika::richmond::{chain, default_selectors, Branch, Seed, Selector};
use quartika::search::{sweep, SearchConfig, SearchOutcome};
use quartika::{Error, Integer, Quadruple, Rational};

use output::{Format, OutputRecord, Sink};

#[derive(Parser)]
#[command(name = "quartika", version, about = "Solutions of n(x⁴ + y⁴) = z⁴ + w⁴ in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write records here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check n(x⁴ + y⁴) = z⁴ + w⁴ for the given integers.
    Verify {
        #[arg(allow_negative_numbers = true)]
        n: Integer,
        #[arg(allow_negative_numbers = true)]
        x: Integer,
        #[arg(allow_negative_numbers = true)]
        y: Integer,
        #[arg(allow_negative_numbers = true)]
        z: Integer,
        #[arg(allow_negative_numbers = true)]
        w: Integer,
    },
    /// Closed-form family members.
    Family {
        /// 1: N = a² + b² from (m, n); 2: N = (m⁴ + 1)/2 from odd m.
        #[arg(long, value_parser = ["1", "2"])]
        method: String,
        #[arg(long, allow_negative_numbers = true)]
        m: Integer,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<Integer>,
        /// Only one form: `2q`/`3q` for method 1, `first`/`second` for method 2.
        #[arg(long)]
        which: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Multiples of a generator pushed through a birational map.
    Pipeline {
        #[arg(long, value_parser = ["1", "2", "41", "17"])]
        method: String,
        #[arg(long, allow_negative_numbers = true)]
        m: Option<Integer>,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<Integer>,
        /// Inclusive range `J1..J2` with J1 >= 2.
        #[arg(long, default_value = "2..5", value_parser = parse_range)]
        multiples: (u64, u64),
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tangent-line descent from a known solution.
    Richmond {
        #[arg(long)]
        n: Integer,
        /// `x,y,z,w` satisfying either x⁴ + y⁴ = n(z⁴ + w⁴) or n(x⁴ + y⁴) = z⁴ + w⁴.
        #[arg(long, value_parser = parse_seed)]
        seed: [Integer; 4],
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Fix the line parameter (integer or `a/b`) instead of trying the default list.
        #[arg(long, allow_negative_numbers = true)]
        p: Option<Rational>,
        /// Use the other line of the split conic with `--p`.
        #[arg(long, requires = "p")]
        secondary: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Smallest solution with coordinates <= bound for each admissible n.
    Search {
        #[arg(long, default_value_t = 2)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        bound: u32,
        /// Worker threads; `QUARTIKA_THREADS` takes precedence.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Search every n, not only n ≡ 1, 2, 8, 9 (mod 16).
        #[arg(long)]
        no_filter: bool,
        /// Allow zero coordinates.
        #[arg(long)]
        allow_zero: bool,
        /// Also search n divisible by a fourth power greater than 1.
        #[arg(long)]
        keep_fourth_power_multiples: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected J1..J2, got {s:?}"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a < 2 || a > b {
        return Err(format!("need 2 <= J1 <= J2, got {a}..{b}"));
    }
    Ok((a, b))
}

fn parse_seed(s: &str) -> Result<[Integer; 4], String> {
    let parts: Vec<Integer> = s
        .split(',')
        .map(|p| p.trim().parse::<Integer>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    parts.try_into().map_err(|_| format!("expected four comma-separated integers, got {s:?}"))
}

/// Usage problems detected after clap has parsed the arguments.
struct Usage(String);

enum Failure {
    Usage(Usage),
    Domain(Error),
    Unverified(Box<OutputRecord>),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(Usage(msg.into()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Verify { n, x, y, z, w } => return cmd_verify(&n, &x, &y, &z, &w),
        Command::Family { method, m, n, which, output } => cmd_family(&method, &m, n.as_ref(), which.as_deref(), &output),
        Command::Pipeline { method, m, n, multiples, output } => {
            cmd_pipeline(&method, m.as_ref(), n.as_ref(), multiples, &output)
        }
        Command::Richmond { n, seed, steps, p, secondary, output } => {
            cmd_richmond(n, seed, steps, p, secondary, &output)
        }
        Command::Search { n_min, n_max, bound, threads, checkpoint, no_filter, allow_zero, keep_fourth_power_multiples, output } => {
            let mut cfg = SearchConfig::new(n_min, n_max, bound);
            cfg.checkpoint = checkpoint;
            cfg.allow_zero = allow_zero;
            cfg.fourth_power_free_only = !keep_fourth_power_multiples;
            if no_filter {
                cfg.residues.clear();
            }
            match resolve_threads(threads) {
                Ok(t) => {
                    cfg.threads = t;
                    cmd_search(&cfg, &output)
                }
                Err(f) => Err(f),
            }
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("{}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Unverified(rec)) => {
            eprintln!("EquationFails: refusing to emit unverified record {rec:?}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("Io: {e}");
            ExitCode::from(1)
        }
    }
}

fn resolve_threads(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    match std::env::var("QUARTIKA_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t >= 1 => Ok(Some(t)),
            _ => Err(usage(format!("QUARTIKA_THREADS must be a positive integer, got {v:?}"))),
        },
        Err(_) => {
            if flag == Some(0) {
                return Err(usage("--threads must be >= 1"));
            }
            Ok(flag)
        }
    }
}

fn cmd_verify(n: &Integer, x: &Integer, y: &Integer, z: &Integer, w: &Integer) -> ExitCode {
    if verify(n, x, y, z, w) {
        println!("OK");
        ExitCode::SUCCESS
    } else {
        let lhs = n * (fourth(x) + fourth(y));
        let rhs = fourth(z) + fourth(w);
        println!("FAIL lhs={lhs} rhs={rhs}");
        ExitCode::from(1)
    }
}

/// Verifies everything first so a bad record leaves no partial output.
fn emit_all(records: &[OutputRecord], output: &OutputArgs) -> Result<(), Failure> {
    if let Some(bad) = records.iter().find(|r| !r.verifies()) {
        return Err(Failure::Unverified(Box::new(bad.clone())));
    }
    let mut sink = Sink::open(output.format, output.out.as_deref())?;
    for r in records {
        sink.emit(r)?;
    }
    sink.finish()?;
    Ok(())
}

fn cmd_family(method: &str, m: &Integer, n: Option<&Integer>, which: Option<&str>, output: &OutputArgs) -> Result<(), Failure> {
    let mut records = Vec::new();
    if method == "1" {
        let n = n.ok_or_else(|| usage("family --method 1 needs --n"))?;
        let forms = match which {
            None => vec![Family1Form::TwoQ, Family1Form::ThreeQ],
            Some("2q" | "2Q") => vec![Family1Form::TwoQ],
            Some("3q" | "3Q") => vec![Family1Form::ThreeQ],
            Some(other) => return Err(usage(format!("--which for method 1 is 2q or 3q, got {other:?}"))),
        };
        for form in forms {
            let q = family1_closed_form(m, n, form)?;
            let tag = match form {
                Family1Form::TwoQ => "family1-2Q",
                Family1Form::ThreeQ => "family1-3Q",
            };
            records.push(OutputRecord::new(tag, &q, &[("m", m.to_string()), ("n", n.to_string())]));
        }
    } else {
        if n.is_some() {
            return Err(usage("family --method 2 takes only --m"));
        }
        let forms = match which {
            None => vec![Family2Form::First, Family2Form::Second],
            Some("first") => vec![Family2Form::First],
            Some("second") => vec![Family2Form::Second],
            Some(other) => return Err(usage(format!("--which for method 2 is first or second, got {other:?}"))),
        };
        for form in forms {
            let q = family2_closed_form(m, form)?;
            let label = if form == Family2Form::First { "first" } else { "second" };
            records.push(OutputRecord::new("family2", &q, &[("m", m.to_string()), ("form", label.to_string())]));
        }
    }
    emit_all(&records, output)
}

fn cmd_pipeline(method: &str, m: Option<&Integer>, n: Option<&Integer>, (j1, j2): (u64, u64), output: &OutputArgs) -> Result<(), Failure> {
    let (pipeline, tag, mut meta) = match method {
        "1" => {
            let (m, n) = m.zip(n).ok_or_else(|| usage("pipeline --method 1 needs --m and --n"))?;
            (Pipeline::theorem1(m, n)?, "pipeline-t1", vec![("m", m.to_string()), ("n", n.to_string())])
        }
        "2" => {
            let m = m.ok_or_else(|| usage("pipeline --method 2 needs --m"))?;
            if n.is_some() {
                return Err(usage("pipeline --method 2 takes only --m"));
            }
            (Pipeline::theorem2(m)?, "pipeline-t1", vec![("m", m.to_string()), ("n", "1".to_string())])
        }
        "41" | "17" => {
            if m.is_some() || n.is_some() {
                return Err(usage(format!("pipeline --method {method} takes no --m/--n")));
            }
            if method == "41" {
                (Pipeline::instance41()?, "pipeline-41", Vec::new())
            } else {
                (Pipeline::instance17()?, "pipeline-17", Vec::new())
            }
        }
        _ => unreachable!("restricted by clap"),
    };
    meta.push(("j", String::new()));
    let mut records = Vec::new();
    for j in j1..=j2 {
        let r = pipeline.run(j)?;
        meta.last_mut().expect("j entry").1 = j.to_string();
        records.push(OutputRecord::new(tag, &r.quadruple, &meta));
    }
    emit_all(&records, output)
}

fn cmd_richmond(n: Integer, seed: [Integer; 4], steps: usize, p: Option<Rational>, secondary: bool, output: &OutputArgs) -> Result<(), Failure> {
    let seed_text = seed.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(":");
    let seed = match Seed::new(n.clone(), seed.clone()) {
        Ok(s) => s,
        Err(_) => {
            let [x, y, z, w] = seed;
            Seed::from_quadruple(&Quadruple::new(n, x, y, z, w)?)
        }
    };
    let selectors = match p {
        Some(v) => vec![Selector::new(v, if secondary { Branch::Secondary } else { Branch::Primary })],
        None => default_selectors(),
    };
    let sols = chain(&seed, steps, &selectors)?;
    let records: Vec<_> = sols
        .iter()
        .enumerate()
        .map(|(i, q)| OutputRecord::new("richmond", q, &[("seed", seed_text.clone()), ("step", (i + 1).to_string())]))
        .collect();
    emit_all(&records, output)
}

fn cmd_search(cfg: &SearchConfig, output: &OutputArgs) -> Result<(), Failure> {
    let results = sweep(cfg)?;
    let mut records = Vec::new();
    for (n, outcome) in &results {
        match outcome {
            SearchOutcome::Hit(h) => records.push(OutputRecord::new(
                "search",
                &h.quadruple,
                &[("bound", cfg.bound.to_string()), ("s", h.objective.to_string())],
            )),
            SearchOutcome::NotFound => log::info!("n={n}: no solution with coordinates <= {}", cfg.bound),
        }
    }
    emit_all(&records, output)
}
