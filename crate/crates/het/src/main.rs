use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use het::checks::{run_witness, CheckReport, Verdict};
use het::core::constructions::{heilbronn_sum, ConvexKind, PrimeField};
use het::core::energy::{energy2, energy_of, mult_energy, EnergyKind, EnergyValue, Number};
use het::core::harmonic::dft;
use het::core::sets::{diffset, sumset};
use het::core::spectral::{build_op, spectrum, OpSign};
use het::core::{DenseFn, Error, GSet};
use het::format::{EnergyJson, SetJson, SpectrumJson};
use het::instance::{gen_instance, InstanceKind};
use het::suite::{count_failures, read_jsonl, render_summary, run_suite, summarize, write_jsonl, SuiteOptions};

#[derive(Parser)]
#[command(name = "het", version, about = "Higher sumsets and energies over finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a set instance as JSON.
    Gen(GenArgs),
    /// Compute one quantity of a set.
    Compute(ComputeArgs),
    /// Run the check suite and write JSONL reports.
    Verify(VerifyArgs),
    /// Spectrum of a weighted Cayley operator on a set.
    Spectrum(SpectrumArgs),
    /// Summarize a JSONL report file.
    Report {
        file: PathBuf,
        /// Print the summary as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Re-evaluate the witnesses carried by failed reports.
    Rerun { file: PathBuf },
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    /// Group order (random-set) or number of elements (convex).
    #[arg(long)]
    n: Option<u64>,
    /// Set size for random-set.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    p: Option<u64>,
    /// Subgroup order.
    #[arg(long)]
    t: Option<u64>,
    /// Convex family.
    #[arg(long, value_enum, default_value = "squares")]
    family: Family,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum GenKind {
    RandomSet,
    Subgroup,
    Residues,
    Convex,
    Heilbronn,
}

#[derive(Copy, Clone, ValueEnum)]
enum Family {
    Squares,
    Cubes,
    Random,
}

/// Where a set comes from: a JSON file, or `--group` with inline `--elems`.
#[derive(Args, Clone)]
struct SetSource {
    /// Set file in the `{"group":[...],"set":[...]}` format.
    #[arg(long)]
    set: Option<PathBuf>,
    /// Group factors, e.g. `64` or `4,8`.
    #[arg(long, value_delimiter = ',')]
    group: Option<Vec<u64>>,
    /// Inline elements (packed indices), used with --group.
    #[arg(long, value_delimiter = ',')]
    elems: Option<Vec<u64>>,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(value_enum)]
    what: Quantity,
    #[command(flatten)]
    src: SetSource,
    /// Second set file, for mixed quantities.
    #[arg(long = "with")]
    with: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "e2")]
    kind: Kind,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    /// Operator weight for `compute spectrum`.
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "SET"])]
    weight: Option<Vec<String>>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Quantity {
    Energy,
    Sumset,
    Diffset,
    Spectrum,
    HeilbronnSum,
}

#[derive(Copy, Clone, ValueEnum)]
enum Kind {
    E2,
    Mixed,
    Mult,
    Ekl,
    Ealpha,
    Tk,
    Sigmak,
}

#[derive(Args)]
struct VerifyArgs {
    /// Glob over check names, e.g. `heilbronn*`.
    #[arg(long)]
    filter: Option<String>,
    #[arg(long, default_value_t = 50)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSONL output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to HET_THREADS, then the core count.
    #[arg(long)]
    threads: Option<usize>,
    /// Write elapsed_ms as 0 so output depends only on the seed.
    #[arg(long)]
    deterministic: bool,
    /// Do not print the summary table on stderr.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    src: SetSource,
    /// autocorr, diff, sum, or `dft-of SET`.
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "SET"], default_value = "autocorr")]
    weight: Vec<String>,
}

/// A failure mapped to an exit code: 2 for bad input, 3 for a cap.
struct Fail {
    code: u8,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::CapExceeded { .. }) { 3 } else { 2 };
        Fail { code, msg: e.to_string() }
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail { code: 2, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail { code: 2, msg: msg.into() }
}

fn read_set_file(path: &Path) -> Result<GSet, Fail> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let json: SetJson = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(json.to_set()?)
}

fn load(src: &SetSource) -> Result<GSet, Fail> {
    match (&src.set, &src.group, &src.elems) {
        (Some(path), None, None) => read_set_file(path),
        (Some(path), Some(g), None) => {
            let a = read_set_file(path)?;
            if &a.group().factors() != g {
                return Err(usage("--group does not match the set file"));
            }
            Ok(a)
        }
        (None, Some(g), elems) => {
            let json = SetJson { group: g.clone(), set: elems.clone().unwrap_or_default() };
            Ok(json.to_set()?)
        }
        _ => Err(usage("give --set FILE, or --group with --elems")),
    }
}

fn emit<T: serde::Serialize>(v: &T, out: Option<&Path>) -> Result<(), Fail> {
    let text = serde_json::to_string(v).map_err(|e| usage(e.to_string()))?;
    match out {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Fail> {
    v.ok_or_else(|| usage(format!("missing {flag}")))
}

fn cmd_gen(a: GenArgs) -> Result<u8, Fail> {
    let kind = match a.kind {
        GenKind::RandomSet => InstanceKind::RandomSet { n: need(a.n, "--n")?, m: need(a.m, "--m")? },
        GenKind::Subgroup => InstanceKind::Subgroup { p: need(a.p, "--p")?, t: need(a.t, "--t")? },
        GenKind::Residues => InstanceKind::Residues { p: need(a.p, "--p")? },
        GenKind::Convex => {
            let kind = match a.family {
                Family::Squares => ConvexKind::Squares,
                Family::Cubes => ConvexKind::Cubes,
                Family::Random => ConvexKind::Random,
            };
            InstanceKind::Convex { kind, n: need(a.n, "--n")? as usize }
        }
        GenKind::Heilbronn => InstanceKind::Heilbronn { p: need(a.p, "--p")? },
    };
    emit(&gen_instance(&kind, a.seed)?, a.out.as_deref())?;
    Ok(0)
}

fn weight_of(a: &GSet, spec: &[String]) -> Result<(DenseFn, OpSign), Fail> {
    let ind = |s: &GSet| DenseFn::indicator(s);
    match spec {
        [k] if k == "autocorr" => Ok((ind(a).correlate(&ind(a))?, OpSign::Difference)),
        [k] if k == "diff" => Ok((ind(&diffset(a, a)?), OpSign::Difference)),
        [k] if k == "sum" => Ok((ind(&sumset(a, a)?), OpSign::Sum)),
        [k, path] if k == "dft-of" => {
            let s = read_set_file(Path::new(path))?;
            if s.group() != a.group() {
                return Err(usage("the dft-of set lives in another group"));
            }
            Ok((dft(&ind(&s))?, OpSign::Difference))
        }
        _ => Err(usage("--weight is one of autocorr, diff, sum, dft-of SET")),
    }
}

fn spectrum_of(a: &GSet, spec: &[String]) -> Result<SpectrumJson, Fail> {
    let (w, sign) = weight_of(a, spec)?;
    Ok(SpectrumJson::from_spectrum(&spectrum(&build_op(a, &w, sign)?)?))
}

fn cmd_compute(c: ComputeArgs) -> Result<u8, Fail> {
    if let Quantity::HeilbronnSum = c.what {
        let s = heilbronn_sum(need(c.p, "--p")?, need(c.a, "--a")?)?;
        emit(&serde_json::json!({ "re": s.re, "im": s.im, "abs": s.norm() }), None)?;
        return Ok(0);
    }
    let a = load(&c.src)?;
    let other = c.with.as_deref().map(read_set_file).transpose()?;
    match c.what {
        Quantity::Sumset | Quantity::Diffset => {
            let b = other.unwrap_or_else(|| a.clone());
            let r = if let Quantity::Sumset = c.what { sumset(&a, &b)? } else { diffset(&a, &b)? };
            emit(&SetJson::from_set(&r), None)?;
        }
        Quantity::Spectrum => {
            let w = c.weight.unwrap_or_else(|| vec!["autocorr".into()]);
            emit(&spectrum_of(&a, &w)?, None)?;
        }
        Quantity::Energy => {
            let v = match c.kind {
                Kind::E2 => energy_of(&a, EnergyKind::E2)?,
                Kind::Ekl => energy_of(&a, EnergyKind::Ekl(need(c.k, "--k")?, need(c.l, "--l")?))?,
                Kind::Ealpha => energy_of(&a, EnergyKind::Ealpha(need(c.alpha, "--alpha")?))?,
                Kind::Tk => energy_of(&a, EnergyKind::Tk(need(c.k, "--k")?))?,
                Kind::Sigmak => energy_of(&a, EnergyKind::SigmaK(need(c.k, "--k")?))?,
                Kind::Mixed => {
                    let b = need(other, "--with")?;
                    EnergyValue { kind: EnergyKind::Mixed, value: Number::Exact(energy2(&a, &b)?) }
                }
                Kind::Mult => {
                    let p = a.group().modulus().ok_or(Error::NotPrimeField)?;
                    let field = PrimeField::new(p)?;
                    let b = other.unwrap_or_else(|| a.clone());
                    EnergyValue { kind: EnergyKind::Mult, value: Number::Exact(mult_energy(&a, &b, &field)?) }
                }
            };
            emit(&EnergyJson::from_value(&v), None)?;
        }
        Quantity::HeilbronnSum => unreachable!("handled above"),
    }
    Ok(0)
}

fn cmd_verify(v: VerifyArgs) -> Result<u8, Fail> {
    if let Some(f) = &v.filter {
        glob::Pattern::new(f).map_err(|e| usage(format!("--filter: {e}")))?;
    }
    let opts = SuiteOptions {
        filter: v.filter,
        trials: v.trials,
        seed: v.seed,
        threads: v.threads.or_else(het::cap::threads),
        deterministic: v.deterministic,
    };
    let run = run_suite(&opts)?;
    match &v.out {
        Some(p) => write_jsonl(&run.reports, BufWriter::new(File::create(p)?))?,
        None => write_jsonl(&run.reports, io::stdout().lock())?,
    }
    if !v.quiet {
        render_summary(&summarize(&run.reports), io::stderr().lock())?;
    }
    Ok(run.exit_code() as u8)
}

fn read_reports(path: &Path) -> Result<Vec<CheckReport>, Fail> {
    let f = File::open(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    read_jsonl(BufReader::new(f)).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn cmd_report(file: &Path, json: bool) -> Result<u8, Fail> {
    let reports = read_reports(file)?;
    let summary = summarize(&reports);
    if json {
        emit(&summary, None)?;
    } else {
        render_summary(&summary, io::stdout().lock())?;
    }
    Ok(if count_failures(&reports) > 0 { 1 } else { 0 })
}

fn cmd_rerun(file: &Path) -> Result<u8, Fail> {
    let reports = read_reports(file)?;
    let mut again = Vec::new();
    for r in reports.iter().filter(|r| r.verdict == Verdict::Fail) {
        again.push(run_witness(r)?);
    }
    write_jsonl(&again, io::stdout().lock())?;
    Ok(if count_failures(&again) > 0 { 1 } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Compute(c) => cmd_compute(c),
        Cmd::Verify(v) => cmd_verify(v),
        Cmd::Spectrum(s) => load(&s.src).and_then(|a| {
            emit(&spectrum_of(&a, &s.weight)?, None)?;
            Ok(0)
        }),
        Cmd::Report { file, json } => cmd_report(&file, json),
        Cmd::Rerun { file } => cmd_rerun(&file),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = writeln!(io::stderr(), "het: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
