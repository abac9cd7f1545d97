use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use partcat::catalog::{self, EasyClass};
use partcat::closure::{closure, easiness_report, singleton_free_check, ClosureConfig, DEFAULT_L0, DEFAULT_MAX_PASSES};
use partcat::maps::{apply_map, dimension_witnesses, MapKind};
use partcat::parse::{parse_generators, parse_rational, GeneratorSpec};
use partcat::plan::{execute_plan, parse_plan, Heuristic};
use partcat::table1::ENTRIES;
use partcat::tensor_rep::{functor_checks, matrix_of, specialize_to_n, twist, SignMatrix};
use partcat::{Coeff, Error, LinComb, Scalar, Specialization, Q};

#[derive(Parser)]
#[command(name = "partcat", version, about = "Exact computations in linear categories of partitions")]
struct Cli {
    /// Worker threads for tensor batches; results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate the category generated by the elements of FILE.
    Closure {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_L0)]
        l0: usize,
        /// Loop parameter as an exact rational `p/q`; symbolic when absent.
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_PASSES)]
        passes: usize,
        /// Also write the report to PATH.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Repeat a symbolic run at each rational value where a pivot vanishes.
        #[arg(long)]
        rerun_degenerate: bool,
    },
    /// Run every built-in candidate generator through the closure engine.
    CheckTable1 {
        #[arg(long, default_value = "7")]
        delta: String,
        #[arg(long, default_value_t = 6)]
        l0: usize,
        /// Skip the runs with symbolic loop parameter.
        #[arg(long)]
        no_symbolic: bool,
        /// Print the built-in generator list and exit.
        #[arg(long)]
        list: bool,
    },
    /// Print the image of each element of FILE under a map.
    ApplyMap {
        /// One of P, T, D, J, B, V+, V-.
        map: String,
        file: PathBuf,
        #[arg(long)]
        delta: Option<String>,
    },
    /// Print the matrices of the elements of FILE and check functoriality.
    TensorRep {
        file: PathBuf,
        #[arg(long = "N", alias = "n")]
        n: usize,
        /// `qdef` or `grad:K` (the first K indices even).
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Dimensions of an easy category by length.
    Dims {
        #[arg(long)]
        class: String,
        #[arg(long)]
        upto: usize,
    },
    /// Evaluate a contraction diagram with the element of FILE at every vertex.
    Plan {
        file: PathBuf,
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        first_fit: bool,
    },
}

/// A failed verification, as opposed to an error in the run itself.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<CheckFailed>().is_some() {
        return 1;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::Capacity { .. } | Error::Pole { .. } | Error::DivisionByZero | Error::PassLimit { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let jobs = cli.jobs;
    match cli.command {
        Command::Closure { file, l0, delta, passes, report, rerun_degenerate } => {
            let config = ClosureConfig { l0, max_passes: passes, jobs, record_arrivals: false };
            cmd_closure(&file, delta.as_deref(), &config, report.as_deref(), rerun_degenerate)
        }
        Command::CheckTable1 { delta, l0, no_symbolic, list } => {
            if list {
                print!("{}", partcat::table1::builtin_text());
                return Ok(());
            }
            let config = ClosureConfig { l0, jobs, ..ClosureConfig::default() };
            cmd_check_table1(&rational(&delta)?, &config, !no_symbolic)
        }
        Command::ApplyMap { map, file, delta } => cmd_apply_map(&map, &file, delta.as_deref()),
        Command::TensorRep { file, n, sigma } => cmd_tensor_rep(&file, n, sigma.as_deref()),
        Command::Dims { class, upto } => {
            let class: EasyClass = class.parse()?;
            let dims = catalog::dims(class, upto)?;
            println!("{}", dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "));
            Ok(())
        }
        Command::Plan { file, plan, delta, first_fit } => cmd_plan(&file, &plan, delta.as_deref(), first_fit),
    }
}

fn rational(text: &str) -> Result<Q> {
    parse_rational(text).with_context(|| format!("invalid rational {text:?}"))
}

fn read_generators(path: &Path) -> Result<Vec<GeneratorSpec>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let specs = parse_generators(&text).with_context(|| format!("parsing {}", path.display()))?;
    if specs.is_empty() {
        bail!("{} contains no generator", path.display());
    }
    Ok(specs)
}

/// The loop parameter from the command line, else from the file.
fn chosen_delta(flag: Option<&str>, specs: &[GeneratorSpec]) -> Result<Option<Q>> {
    match flag {
        Some(t) => Ok(Some(rational(t)?)),
        None => Ok(specs.iter().find_map(|s| s.delta_binding.clone())),
    }
}

fn substitute(specs: &[GeneratorSpec], delta: Option<&Q>) -> Result<Vec<LinComb<Coeff>>> {
    specs
        .iter()
        .map(|s| {
            let v = s.to_lincomb();
            Ok(match delta {
                Some(d) => {
                    let spec = Specialization::delta(d.clone());
                    v.try_map_coeffs(|c| c.specialize(&spec))?
                }
                None => v,
            })
        })
        .collect()
}

fn all_rational(gens: &[LinComb<Coeff>]) -> Option<Vec<LinComb<Q>>> {
    gens.iter().map(|g| g.try_map_coeffs(|c| c.as_rational().ok_or(Error::DivisionByZero)).ok()).collect()
}

fn closure_text<S: Scalar>(gens: &[LinComb<S>], delta: S, config: &ClosureConfig) -> Result<(String, Vec<Q>)> {
    let approx = closure(gens, delta, config)?;
    let report = easiness_report(&approx, gens)?;
    Ok((report.to_string(), report.degeneration))
}

fn cmd_closure(file: &Path, delta: Option<&str>, config: &ClosureConfig, out: Option<&Path>, rerun: bool) -> Result<()> {
    let specs = read_generators(file)?;
    let delta = chosen_delta(delta, &specs)?;
    let gens = substitute(&specs, delta.as_ref())?;
    let start = Instant::now();
    let mut text = String::new();
    let degeneration = match (&delta, all_rational(&gens)) {
        (Some(d), Some(qs)) => {
            writeln!(text, "loop parameter d = {d}")?;
            let (t, _) = closure_text(&qs, d.clone(), config)?;
            text.push_str(&t);
            Vec::new()
        }
        (Some(d), None) => {
            writeln!(text, "loop parameter d = {d}")?;
            let (t, _) = closure_text(&gens, Coeff::from_q(d.clone()), config)?;
            text.push_str(&t);
            Vec::new()
        }
        (None, _) => {
            writeln!(text, "loop parameter d symbolic")?;
            let (t, degen) = closure_text(&gens, Coeff::delta(), config)?;
            text.push_str(&t);
            degen
        }
    };
    if rerun {
        for d in &degeneration {
            writeln!(text, "\nrerun at d = {d}")?;
            match substitute(&specs, Some(d)) {
                Ok(g) => match all_rational(&g) {
                    Some(qs) => text.push_str(&closure_text(&qs, d.clone(), config)?.0),
                    None => text.push_str(&closure_text(&g, Coeff::from_q(d.clone()), config)?.0),
                },
                Err(e) => writeln!(text, "skipped: {e}")?,
            }
        }
    }
    print!("{text}");
    eprintln!("wall time {:.3}s", start.elapsed().as_secs_f64());
    if let Some(path) = out {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_check_table1(delta: &Q, config: &ClosureConfig, symbolic: bool) -> Result<()> {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut verdict = |label: String, non_easy: bool, contained: usize| {
        let status = if non_easy && contained == 0 { "ok" } else { "FAIL" };
        println!("{label}: {} ({contained} summands contained) {status}", if non_easy { "NON-EASY CANDIDATE" } else { "EASY" });
        if status != "ok" {
            failures.push(label);
        }
    };
    for e in ENTRIES {
        let g = e.generator()?;
        let d = e.delta_for(Some(delta)).expect("a value is always supplied");
        let gq = g.to_rational(&Specialization::delta(d.clone()))?;
        let approx = closure(std::slice::from_ref(&gq), d.clone(), config)?;
        let report = easiness_report(&approx, std::slice::from_ref(&gq))?;
        let gv = &report.generators[0];
        let label = if e.has_square_root() { e.label.to_string() } else { format!("{} at d = {d}", e.label) };
        verdict(label, report.all_non_easy(), gv.contained());
        if symbolic && !e.has_square_root() {
            let approx = closure(std::slice::from_ref(&g), Coeff::delta(), config)?;
            let report = easiness_report(&approx, std::slice::from_ref(&g))?;
            verdict(format!("{} symbolic", e.label), report.all_non_easy(), report.generators[0].contained());
        }
    }
    let row1 = ENTRIES[0].generator()?.to_rational(&Specialization::delta(delta.clone()))?;
    let free = singleton_free_check(&row1, delta)?;
    println!("row 1 singleton-free at d = {delta}: {free}");
    if !free {
        failures.push("row 1 singleton-free check".into());
    }
    let witnesses = dimension_witnesses(delta, &Q::from_integer(9.into()), config.l0)?;
    for w in &witnesses {
        println!("{w}");
        if !w.holds {
            failures.push(w.label.clone());
        }
    }
    println!("[check-table1]");
    println!("l0={}", config.l0);
    println!("failures={}", failures.len());
    eprintln!("wall time {:.3}s", start.elapsed().as_secs_f64());
    if !failures.is_empty() {
        return Err(CheckFailed(format!("{} checks failed: {}", failures.len(), failures.join("; "))).into());
    }
    Ok(())
}

fn cmd_apply_map(map: &str, file: &Path, delta: Option<&str>) -> Result<()> {
    let kind: MapKind = map.parse()?;
    let specs = read_generators(file)?;
    let delta = chosen_delta(delta, &specs)?;
    for g in substitute(&specs, delta.as_ref())? {
        println!("{}", apply_map(kind, &g, delta.as_ref())?);
    }
    Ok(())
}

fn parse_sigma(text: &str, n: usize) -> Result<SignMatrix> {
    if text == "qdef" {
        return Ok(SignMatrix::qdef(n));
    }
    if let Some(k) = text.strip_prefix("grad:") {
        let k: usize = k.parse().with_context(|| format!("invalid grading {text:?}"))?;
        return Ok(SignMatrix::grad(n, k)?);
    }
    bail!("unknown sign matrix {text:?}; expected qdef or grad:K")
}

fn cmd_tensor_rep(file: &Path, n: usize, sigma: Option<&str>) -> Result<()> {
    let specs = read_generators(file)?;
    let sigma = sigma.map(|s| parse_sigma(s, n)).transpose()?;
    let mut failed = 0;
    for spec in &specs {
        let v = specialize_to_n(&spec.to_lincomb(), n)?;
        println!("element {v}");
        let m = matrix_of(&v, n)?;
        print!("T\n{m}");
        if let Some(s) = &sigma {
            print!("T^sigma\n{}", twist(&m, s)?);
        }
        for (label, sig) in [("T", None), ("T^sigma", sigma.as_ref())] {
            if label == "T^sigma" && sig.is_none() {
                continue;
            }
            for c in functor_checks(&v, n, sig)? {
                let status = match c.holds {
                    Some(true) => "ok",
                    Some(false) => {
                        failed += 1;
                        "FAIL"
                    }
                    None => "skipped (too large)",
                };
                println!("{label} {}: {status}", c.name);
            }
        }
    }
    if failed > 0 {
        return Err(CheckFailed(format!("{failed} functor checks failed")).into());
    }
    Ok(())
}

fn cmd_plan(file: &Path, plan: &Path, delta: Option<&str>, first_fit: bool) -> Result<()> {
    let specs = read_generators(file)?;
    if specs.len() != 1 {
        bail!("{} must hold exactly one generator", file.display());
    }
    let plan_text = fs::read_to_string(plan).with_context(|| format!("reading {}", plan.display()))?;
    let plan = parse_plan(&plan_text).with_context(|| format!("parsing {}", plan_text.trim()))?;
    let delta = chosen_delta(delta, &specs)?;
    let g = substitute(&specs, delta.as_ref())?.remove(0);
    let d = delta.map(Coeff::from_q).unwrap_or_else(Coeff::delta);
    let heuristic = if first_fit { Heuristic::FirstFit } else { Heuristic::Greedy };
    let result = execute_plan(&plan, &g, &d, heuristic)?;
    println!("{result}");
    Ok(())
}
