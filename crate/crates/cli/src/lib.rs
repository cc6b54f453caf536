//! Command-line front end for `sympmod-core`.
//!
//! [`run`] parses arguments and writes to the supplied streams, returning the
//! process exit code; the binary is a thin wrapper around it.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sympmod_core::lollipop::{self, Enumerator};
use sympmod_core::modules::{self, DimMethod, ModuleDescriptor};
use sympmod_core::params::{self, Case};
use sympmod_core::verlinde::{self, TrigEvalConfig};
use sympmod_core::weights::alcove_pairing;
use sympmod_core::Error;

pub mod verify;

/// Relative `--output` paths are resolved against this directory when set.
pub const OUTPUT_DIR_ENV: &str = "SYMPMOD_OUTPUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_PARAMS: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "sympmod", version, about = "Dimensions, characters and highest weights of small-coloring Sp(2g) modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    /// Override the working precision of the trigonometric sums.
    #[arg(long, global = true)]
    pub precision_bits: Option<usize>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Prefix plain and CSV output with the generation time.
    #[arg(long, global = true)]
    pub timestamp: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ModuleArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub g: usize,
    #[arg(long)]
    pub c: u32,
    #[arg(long)]
    pub eps: u8,
}

impl ModuleArgs {
    fn descriptor(&self) -> Result<ModuleDescriptor, Error> {
        ModuleDescriptor::new(self.p, self.g, self.c, self.eps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Count,
    Formula,
    Polynomial,
}

impl From<MethodArg> for DimMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Count => DimMethod::Count,
            MethodArg::Formula => DimMethod::Formula,
            MethodArg::Polynomial => DimMethod::Polynomial,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension of a module.
    Dim {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Formula)]
        method: MethodArg,
    },
    /// Count or list the small admissible colorings of a given type.
    Colorings {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, conflicts_with = "list")]
        count: bool,
        #[arg(long)]
        list: bool,
        /// Refuse to list more colorings than this.
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
    },
    /// Formal character and its highest weight.
    Character {
        #[command(flatten)]
        module: ModuleArgs,
        /// Reduce weights modulo p - 1.
        #[arg(long)]
        reduced: bool,
    },
    /// Run cross-check suites over a parameter grid.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        #[arg(long, default_value_t = 13)]
        pmax: u32,
        #[arg(long, default_value_t = 5)]
        gmax: usize,
    },
    /// Highest weight, dimension and alcove pairing for every (p, c, eps).
    Table {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 13)]
        pmax: u32,
    },
    /// Interpolate the dimension as a polynomial in p.
    Fit {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        eps: u8,
        /// Comma-separated sample primes; defaults to the smallest admissible ones.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u32>,
    },
}

/// A command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PrecisionExhausted { .. } => EXIT_PRECISION,
            Error::ParityViolation(_) | Error::NonIntegralResult(_) | Error::NoUniqueMaximum => EXIT_VERIFY,
            _ => EXIT_PARAMS,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_PARAMS, message: e.to_string() }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure { code: EXIT_PARAMS, message: e.to_string() }
    }
}

pub(crate) type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARAMS } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> CmdResult {
    match &cli.output {
        Some(path) => {
            let path = match std::env::var_os(OUTPUT_DIR_ENV) {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path.clone(),
            };
            let mut file = BufWriter::new(File::create(&path)?);
            let code = dispatch(cli, &mut file)?;
            file.flush()?;
            Ok(code)
        }
        None => dispatch(cli, stdout),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    if cli.timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        match cli.format {
            Format::Json => {}
            _ => writeln!(out, "# generated at unix time {secs}")?,
        }
    }
    let fmt = cli.format;
    match &cli.command {
        Command::Dim { module, method } => cmd_dim(module, (*method).into(), fmt, cli.precision_bits, out),
        Command::Colorings { module, list, cap, .. } => cmd_colorings(module, *list, *cap, fmt, out),
        Command::Character { module, reduced } => cmd_character(module, *reduced, fmt, out),
        Command::Verify { suite, pmax, gmax } => verify::cmd_verify(*suite, *pmax, *gmax, fmt, out),
        Command::Table { g, pmax } => cmd_table(*g, *pmax, fmt, out),
        Command::Fit { g, c, eps, primes } => cmd_fit(*g, *c, *eps, primes, fmt, out),
    }
}

pub(crate) fn write_json(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

fn descriptor_json(d: &ModuleDescriptor) -> Value {
    json!({ "p": d.p, "g": d.g, "c": d.c, "eps": d.eps })
}

pub fn cmd_dim(
    module: &ModuleArgs,
    method: DimMethod,
    fmt: Format,
    precision_bits: Option<usize>,
    out: &mut dyn Write,
) -> CmdResult {
    let desc = module.descriptor()?;
    let mut cfg = TrigEvalConfig::for_params(desc.p, desc.g);
    if let Some(bits) = precision_bits {
        cfg = TrigEvalConfig::new(bits, cfg.residual_bound)?;
    }
    let n = modules::dim_with(&desc, method, &cfg)?;
    match fmt {
        Format::Plain => writeln!(out, "{n}")?,
        Format::Json => {
            let mut v = descriptor_json(&desc);
            v["method"] = json!(method.to_string());
            v["dim"] = json!(n.to_string());
            write_json(out, &v)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["p", "g", "c", "eps", "method", "dim"])?;
            w.write_record([
                desc.p.to_string(),
                desc.g.to_string(),
                desc.c.to_string(),
                desc.eps.to_string(),
                method.to_string(),
                n.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_colorings(module: &ModuleArgs, list: bool, cap: u64, fmt: Format, out: &mut dyn Write) -> CmdResult {
    let desc = module.descriptor()?;
    let n = lollipop::count(desc.p, desc.g, desc.c, desc.eps)?;
    if !list {
        match fmt {
            Format::Plain => writeln!(out, "{n}")?,
            Format::Json => {
                let mut v = descriptor_json(&desc);
                v["count"] = json!(n.to_string());
                write_json(out, &v)?;
            }
            Format::Csv => {
                writeln!(out, "p,g,c,eps,count")?;
                writeln!(out, "{},{},{},{},{n}", desc.p, desc.g, desc.c, desc.eps)?;
            }
        }
        return Ok(EXIT_OK);
    }
    if n > cap.into() {
        return Err(Failure {
            code: EXIT_CAP,
            message: format!("{n} colorings exceed the list cap of {cap}; raise --cap to list them"),
        });
    }
    let en = Enumerator::new(desc.p, desc.g, desc.c, desc.eps)?;
    let mut status = Ok(());
    match fmt {
        Format::Plain => en.for_each(|s| {
            if status.is_ok() {
                status = writeln!(out, "a={:?} b={:?} t={:?}", s.a, s.b, s.t);
            }
        }),
        Format::Json => en.for_each(|s| {
            if status.is_ok() {
                status = serde_json::to_writer(&mut *out, s).map_err(io::Error::from).and_then(|_| writeln!(out));
            }
        }),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(lollipop::csv_header(desc.g))?;
            let mut csv_status = Ok(());
            en.for_each(|s| {
                if csv_status.is_ok() {
                    csv_status = w.write_record(lollipop::csv_record(s));
                }
            });
            csv_status?;
            w.flush()?;
        }
    }
    status?;
    Ok(EXIT_OK)
}

pub fn cmd_character(module: &ModuleArgs, reduced: bool, fmt: Format, out: &mut dyn Write) -> CmdResult {
    let desc = module.descriptor()?;
    let chi = modules::character(&desc)?;
    let highest = if chi.is_empty() { None } else { Some(modules::highest_weight_from_character(&chi)?) };
    let modulus = desc.p as u64 - 1;
    let entries: Vec<(Vec<i64>, u64)> = if reduced {
        chi.reduce(modulus).into_iter().map(|(w, k)| (w.coords().iter().map(|&x| x as i64).collect(), k)).collect()
    } else {
        chi.iter().map(|(w, k)| (w.coords().to_vec(), k)).collect()
    };
    match fmt {
        Format::Plain => {
            for (w, k) in &entries {
                let coords: Vec<String> = w.iter().map(i64::to_string).collect();
                writeln!(out, "({}) {k}", coords.join(","))?;
            }
            match &highest {
                Some(lam) => writeln!(out, "highest weight: {lam}")?,
                None => writeln!(out, "empty module")?,
            }
        }
        Format::Json => {
            let mut v = json!({
                "g": desc.g,
                "entries": entries.iter().map(|(w, k)| json!({ "weight": w, "mult": k })).collect::<Vec<_>>(),
                "highest_weight": highest,
            });
            if reduced {
                v["modulus"] = json!(modulus);
            }
            if highest.is_none() {
                v["note"] = json!("empty module");
            }
            write_json(out, &v)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header: Vec<String> = (1..=desc.g).map(|i| format!("w_{i}")).collect();
            header.push("mult".into());
            w.write_record(&header)?;
            for (wt, k) in &entries {
                let mut row: Vec<String> = wt.iter().map(i64::to_string).collect();
                row.push(k.to_string());
                w.write_record(&row)?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_table(g: usize, pmax: u32, fmt: Format, out: &mut dyn Write) -> CmdResult {
    let primes = params::primes_between(5, pmax);
    if g == 0 || primes.is_empty() {
        return Err(Error::BadParameters("need g ≥ 1 and pmax ≥ 5".into()).into());
    }
    let mut rows = Vec::new();
    for p in primes {
        for c in 0..params::half(p) {
            for eps in 0..2 {
                let desc = ModuleDescriptor::new(p, g, c, eps)?;
                let Ok(lam) = modules::highest_weight_closed(&desc) else { continue };
                let n = modules::dim(&desc, DimMethod::Count)?;
                rows.push((desc, lam, n));
            }
        }
    }
    match fmt {
        Format::Plain => {
            for (d, lam, n) in &rows {
                writeln!(
                    out,
                    "p={} c={} eps={} case={:<3} weight={} dim={} alcove={}",
                    d.p,
                    d.c,
                    d.eps,
                    d.case(),
                    lam,
                    n,
                    alcove_pairing(lam)
                )?;
            }
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(d, lam, n)| {
                    json!({
                        "p": d.p, "c": d.c, "eps": d.eps, "case": d.case().to_string(),
                        "highest_weight": lam.omega_coeffs(),
                        "dim": n.to_string(),
                        "alcove": alcove_pairing(lam),
                    })
                })
                .collect();
            write_json(out, &Value::Array(v))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header: Vec<String> = ["p", "c", "eps", "case"].map(String::from).to_vec();
            header.extend((1..=g).map(|i| format!("omega_{i}")));
            header.extend(["dim", "alcove"].map(String::from));
            w.write_record(&header)?;
            for (d, lam, n) in &rows {
                let mut row = vec![d.p.to_string(), d.c.to_string(), d.eps.to_string(), d.case().to_string()];
                row.extend(lam.omega_coeffs().iter().map(u64::to_string));
                row.push(n.to_string());
                row.push(alcove_pairing(lam).to_string());
                w.write_record(&row)?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_fit(g: usize, c: u32, eps: u8, primes: &[u32], fmt: Format, out: &mut dyn Write) -> CmdResult {
    if g == 0 {
        return Err(Error::BadParameters("g must be ≥ 1".into()).into());
    }
    let primes = if primes.is_empty() {
        verlinde::sample_primes(c, verlinde::required_points(g))
    } else {
        primes.to_vec()
    };
    let fit = verlinde::interpolate_dim(g, c, eps, &primes)?;
    let case = Case::of(c, eps);
    let reference = verlinde::closed_form_at_c(g, case, c).ok();
    let diff = reference.as_ref().map(|r| fit.coefficient_diff(r));
    match fmt {
        Format::Plain => {
            writeln!(out, "{fit}")?;
            writeln!(out, "degree: {}", fit.degree().map_or("-".into(), |k| k.to_string()))?;
            match &diff {
                None => writeln!(out, "no closed form for rank {g} case {case}")?,
                Some(d) if d.is_empty() => writeln!(out, "diff: empty")?,
                Some(d) => {
                    for (k, a, b) in d {
                        writeln!(out, "diff p^{k}: fit {a} vs closed form {b}")?;
                    }
                }
            }
        }
        Format::Json => {
            let v = json!({
                "g": g, "c": c, "eps": eps,
                "primes": primes,
                "polynomial": fit,
                "text": fit.to_string(),
                "degree": fit.degree(),
                "case": case.to_string(),
                "diff": diff.map(|d| d.iter().map(|(k, a, b)| json!({
                    "power": k, "fit": a.to_string(), "closed_form": b.to_string(),
                })).collect::<Vec<_>>()),
            });
            write_json(out, &v)?;
        }
        Format::Csv => {
            writeln!(out, "power,coefficient")?;
            for (k, a) in fit.coeffs().iter().enumerate() {
                writeln!(out, "{k},{a}")?;
            }
        }
    }
    Ok(EXIT_OK)
}
