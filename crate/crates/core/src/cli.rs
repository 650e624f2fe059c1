//! Command-line front end for the `fdas` binary.
//!
//! Three subcommands: `run` (one configuration, one strategy), `sweep-w`
//! (sum throughput versus the weight) and `sweep-snr` (sum throughput versus
//! the average SNR). All parameters are given in dB. A `--config FILE` of
//! `key = value` lines, keyed by flag name without the dashes, supplies
//! defaults that explicit flags override.
//!
//! Exit status: 0 on success, 1 for an invalid configuration, 2 for a usage
//! error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, FieldError};
use crate::montecarlo::{run_trials, step_grid, sweep_snr_with, sweep_weight, SimConfig, WeightRule, DEFAULT_SAMPLES};
use crate::selection::{empirical_weight, GainScale, MoMethod, Strategy, DEFAULT_EWC_SHARPNESS};
use crate::svg::LineChart;
use crate::table::{estimate_table, snr_sweep_table, weight_sweep_table, OutputTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fdas", version, about = "Full-duplex antenna selection simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one strategy at one configuration; prints a one-row CSV.
    Run(RunArgs),
    /// Sum throughput of MM-AS, LI-AS and the multi-objective rule versus w.
    SweepW(SweepWArgs),
    /// Sum throughput of MM-AS, LI-AS and the multi-objective rule versus SNR.
    SweepSnr(SweepSnrArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Mm,
    Li,
    MoWs,
    MoEwc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MoMethodArg {
    Ws,
    Ewc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GainScaleArg {
    Amplitude,
    Power,
}

#[derive(Debug, Clone, Default, Args)]
struct Common {
    /// key = value file supplying defaults for any flag.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long)]
    mt: Option<usize>,
    #[arg(long)]
    mr: Option<usize>,
    /// Average SNR gamma0 [dB].
    #[arg(long = "snr-db")]
    snr_db: Option<f64>,
    /// Self-interference cancellation factor [dB], at most 0.
    #[arg(long = "eta-db")]
    eta_db: Option<f64>,
    /// SINR threshold [dB] for both links.
    #[arg(long = "gamma-t-db")]
    gamma_t_db: Option<f64>,
    /// UL SINR threshold [dB], defaults to --gamma-t-db.
    #[arg(long = "gamma-t-ul-db")]
    gamma_t_ul_db: Option<f64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Multi-objective weight in [0, 1].
    #[arg(long)]
    w: Option<f64>,
    /// MO-EWC sharpness (default 1).
    #[arg(long)]
    p: Option<f64>,
    /// Use the empirical weight rule for the multi-objective weight.
    #[arg(long = "auto-w")]
    auto_w: bool,
    /// Scale the multi-objective criteria operate on.
    #[arg(long = "gain-scale", value_enum)]
    gain_scale: Option<GainScaleArg>,
    /// Write the CSV to PATH. `run` also prints it; sweeps print it only when
    /// no path is given.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct RunArgs {
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SweepWArgs {
    /// Weight grid as start:stop:step.
    #[arg(long = "w-grid")]
    w_grid: Option<String>,
    #[arg(long = "mo-method", value_enum)]
    mo_method: Option<MoMethodArg>,
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SweepSnrArgs {
    /// SNR grid [dB] as start:stop:step.
    #[arg(long = "snr-grid")]
    snr_grid: Option<String>,
    /// Weight grid used by --tune-w.
    #[arg(long = "w-grid")]
    w_grid: Option<String>,
    #[arg(long = "mo-method", value_enum)]
    mo_method: Option<MoMethodArg>,
    /// Pick the best weight on --w-grid at every SNR point.
    #[arg(long = "tune-w")]
    tune_w: bool,
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

/// Failure of a subcommand after parsing succeeded.
#[derive(Debug)]
enum Failure {
    Config(Vec<FieldError>),
    Other(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(f) => Failure::Config(f),
            other => Failure::Other(other),
        }
    }
}

fn field(name: &'static str, msg: impl Into<String>) -> Failure {
    Failure::Config(vec![FieldError::new(name, msg)])
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Parsed `key = value` config file.
struct ConfigFile(BTreeMap<String, String>);

const FILE_KEYS: &[&str] = &[
    "mt",
    "mr",
    "snr-db",
    "eta-db",
    "gamma-t-db",
    "gamma-t-ul-db",
    "samples",
    "seed",
    "w",
    "p",
    "auto-w",
    "gain-scale",
    "strategy",
    "w-grid",
    "snr-grid",
    "mo-method",
    "tune-w",
];

impl ConfigFile {
    fn load(path: Option<&Path>) -> Outcome<Self> {
        let Some(path) = path else {
            return Ok(Self(BTreeMap::new()));
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| field("config", format!("cannot read {}: {e}", path.display())))?;
        let mut map = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(field("config", format!("line {}: expected key = value", n + 1)));
            };
            let k = k.trim().trim_start_matches("--").to_string();
            if !FILE_KEYS.contains(&k.as_str()) {
                return Err(field("config", format!("line {}: unknown key `{k}`", n + 1)));
            }
            map.insert(k, v.trim().to_string());
        }
        Ok(Self(map))
    }

    fn get<T: std::str::FromStr>(&self, key: &'static str) -> Outcome<Option<T>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| field(key, format!("cannot parse `{v}` from config file"))),
        }
    }

    fn flag(&self, key: &'static str) -> Outcome<bool> {
        Ok(self.get::<bool>(key)?.unwrap_or(false))
    }

    fn choice<T: ValueEnum>(&self, key: &'static str) -> Outcome<Option<T>> {
        match self.0.get(key) {
            None => Ok(None),
            Some(v) => T::from_str(v, false)
                .map(Some)
                .map_err(|_| field(key, format!("invalid value `{v}` in config file"))),
        }
    }
}

/// Flags merged over the config file, before strategy resolution.
struct Resolved {
    base: SimConfig,
    w: Option<f64>,
    p: f64,
    auto_w: bool,
    scale: GainScale,
    csv: Option<PathBuf>,
}

fn resolve_common(c: &Common, file: &ConfigFile) -> Outcome<Resolved> {
    let d = SimConfig::default();
    let gamma_t = pick(c.gamma_t_db, file.get("gamma-t-db")?, d.gamma_t_dl_db);
    let scale = match c.gain_scale.or(file.choice("gain-scale")?) {
        Some(GainScaleArg::Power) => GainScale::Power,
        Some(GainScaleArg::Amplitude) | None => GainScale::Amplitude,
    };
    Ok(Resolved {
        base: SimConfig {
            m_t: pick(c.mt, file.get("mt")?, d.m_t),
            m_r: pick(c.mr, file.get("mr")?, d.m_r),
            snr_db: pick(c.snr_db, file.get("snr-db")?, d.snr_db),
            eta_db: pick(c.eta_db, file.get("eta-db")?, d.eta_db),
            gamma_t_dl_db: gamma_t,
            gamma_t_ul_db: pick(c.gamma_t_ul_db, file.get("gamma-t-ul-db")?, gamma_t),
            n_samples: pick(c.samples, file.get("samples")?, DEFAULT_SAMPLES),
            seed: pick(c.seed, file.get("seed")?, d.seed),
            strategy: Strategy::MaxMax,
        },
        w: c.w.or(file.get("w")?),
        p: pick(c.p, file.get("p")?, DEFAULT_EWC_SHARPNESS),
        auto_w: c.auto_w || file.flag("auto-w")?,
        scale,
        csv: c.csv.clone(),
    })
}

fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

fn mo_method(arg: Option<MoMethodArg>, r: &Resolved) -> MoMethod {
    match arg.unwrap_or(MoMethodArg::Ws) {
        MoMethodArg::Ws => MoMethod::WeightedSum { scale: r.scale },
        MoMethodArg::Ewc => MoMethod::ExpWeighted { p: r.p, scale: r.scale },
    }
}

fn parse_grid(key: &'static str, text: &str) -> Outcome<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let nums: Vec<f64> = parts
        .iter()
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| field(key, format!("expected start:stop:step, got `{text}`")))?;
    match nums[..] {
        [a, b, step] => step_grid(a, b, step).map_err(|e| field(key, e.to_string())),
        [a] => Ok(vec![a]),
        _ => Err(field(key, format!("expected start:stop:step, got `{text}`"))),
    }
}

fn provenance(mut t: OutputTable, command: &str, base: &SimConfig, scale: GainScale) -> OutputTable {
    t = t
        .with_provenance("command", command)
        .with_provenance("mt", base.m_t)
        .with_provenance("mr", base.m_r)
        .with_provenance("eta-db", base.eta_db)
        .with_provenance("gamma-t-db", base.gamma_t_dl_db)
        .with_provenance("gamma-t-ul-db", base.gamma_t_ul_db)
        .with_provenance("samples", base.n_samples)
        .with_provenance("seed", base.seed)
        .with_provenance("gain-scale", scale.name());
    t
}

fn write_file(path: &Path, contents: &str) -> Outcome<()> {
    std::fs::write(path, contents).map_err(|e| Failure::Other(Error::Io(e)))
}

fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> Outcome<()> {
    let file = ConfigFile::load(args.common.config.as_deref())?;
    let r = resolve_common(&args.common, &file)?;
    let kind = args
        .strategy
        .or(file.choice("strategy")?)
        .ok_or_else(|| field("strategy", "required: one of mm, li, mo-ws, mo-ewc"))?;
    let needs_w = matches!(kind, StrategyArg::MoWs | StrategyArg::MoEwc);
    let w = if !needs_w {
        0.0
    } else if r.auto_w {
        empirical_weight(r.base.eta_linear(), r.base.snr_db).map_err(|e| field("eta-db", e.to_string()))?
    } else {
        r.w.ok_or_else(|| field("w", "required for multi-objective strategies unless --auto-w is given"))?
    };
    let strategy = match kind {
        StrategyArg::Mm => Strategy::MaxMax,
        StrategyArg::Li => Strategy::LeastInterference,
        StrategyArg::MoWs => Strategy::WeightedSum { w, scale: r.scale },
        StrategyArg::MoEwc => Strategy::ExpWeighted {
            w,
            p: r.p,
            scale: r.scale,
        },
    };
    let cfg = SimConfig { strategy, ..r.base };
    let est = run_trials(&cfg)?;
    let mut table = provenance(
        estimate_table(strategy.label(), strategy.weight(), &est),
        "run",
        &cfg,
        r.scale,
    )
    .with_provenance("snr-db", cfg.snr_db)
    .with_provenance("strategy", strategy);
    if let Strategy::ExpWeighted { p, .. } = strategy {
        table = table.with_provenance("p", p);
    }
    let csv = table.to_csv();
    out.write_all(csv.as_bytes())
        .map_err(|e| Failure::Other(Error::Io(e)))?;
    if let Some(path) = &r.csv {
        write_file(path, &csv)?;
    }
    Ok(())
}

fn emit(csv: &str, svg: Option<(&Path, String)>, csv_path: Option<&Path>, out: &mut dyn Write) -> Outcome<()> {
    match csv_path {
        Some(path) => write_file(path, csv)?,
        None => out
            .write_all(csv.as_bytes())
            .map_err(|e| Failure::Other(Error::Io(e)))?,
    }
    if let Some((path, body)) = svg {
        write_file(path, &body)?;
    }
    Ok(())
}

fn cmd_sweep_w(args: &SweepWArgs, out: &mut dyn Write) -> Outcome<()> {
    let file = ConfigFile::load(args.common.config.as_deref())?;
    let r = resolve_common(&args.common, &file)?;
    let grid_text = args
        .w_grid
        .clone()
        .or(file.get("w-grid")?)
        .unwrap_or_else(|| "0:1:0.05".into());
    let grid = parse_grid("w-grid", &grid_text)?;
    let method = mo_method(args.mo_method.or(file.choice("mo-method")?), &r);
    r.base.budget()?;
    let sweep = sweep_weight(&r.base, &grid, method).map_err(|e| field("w-grid", e.to_string()))?;
    let mut table = provenance(weight_sweep_table(&sweep), "sweep-w", &r.base, r.scale)
        .with_provenance("snr-db", r.base.snr_db)
        .with_provenance("w-grid", &grid_text)
        .with_provenance("mo-method", method.label());
    if let MoMethod::ExpWeighted { p, .. } = method {
        table = table.with_provenance("p", p);
    }
    let svg = args.svg.as_deref().map(|p| {
        let title = format!(
            "M_T={} M_R={} gamma0={} dB eta={} dB",
            r.base.m_t, r.base.m_r, r.base.snr_db, r.base.eta_db
        );
        (p, LineChart::sum_throughput(&table, "w", "w", &title).render())
    });
    emit(&table.to_csv(), svg, r.csv.as_deref(), out)
}

fn cmd_sweep_snr(args: &SweepSnrArgs, out: &mut dyn Write) -> Outcome<()> {
    let file = ConfigFile::load(args.common.config.as_deref())?;
    let r = resolve_common(&args.common, &file)?;
    let grid_text = args
        .snr_grid
        .clone()
        .or(file.get("snr-grid")?)
        .unwrap_or_else(|| "0:30:5".into());
    let grid = parse_grid("snr-grid", &grid_text)?;
    let method = mo_method(args.mo_method.or(file.choice("mo-method")?), &r);
    let tune = args.tune_w || file.flag("tune-w")?;
    let w_text = args
        .w_grid
        .clone()
        .or(file.get("w-grid")?)
        .unwrap_or_else(|| "0:1:0.05".into());
    let (rule, w0, rule_name) = if tune {
        (
            WeightRule::Tuned(parse_grid("w-grid", &w_text)?),
            0.0,
            format!("tuned on {w_text}"),
        )
    } else if r.auto_w {
        (WeightRule::Empirical, 0.0, "empirical".to_string())
    } else {
        let w =
            r.w.ok_or_else(|| field("w", "required unless --auto-w or --tune-w is given"))?;
        (WeightRule::Fixed, w, format!("fixed {w}"))
    };
    let base = SimConfig {
        strategy: method.strategy(w0),
        ..r.base
    };
    base.budget()?;
    let strategies = [Strategy::MaxMax, Strategy::LeastInterference, method.strategy(w0)];
    let sweep = sweep_snr_with(&base, &grid, &strategies, &rule).map_err(|e| field("snr-grid", e.to_string()))?;
    let mut table = provenance(snr_sweep_table(&sweep), "sweep-snr", &base, r.scale)
        .with_provenance("snr-grid", &grid_text)
        .with_provenance("mo-method", method.label())
        .with_provenance("weight-rule", rule_name);
    if let MoMethod::ExpWeighted { p, .. } = method {
        table = table.with_provenance("p", p);
    }
    let svg = args.svg.as_deref().map(|p| {
        let title = format!("M_T={} M_R={} eta={} dB", base.m_t, base.m_r, base.eta_db);
        (
            p,
            LineChart::sum_throughput(&table, "gamma0_db", "gamma0 [dB]", &title).render(),
        )
    });
    emit(&table.to_csv(), svg, r.csv.as_deref(), out)
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().ansi().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a, out),
        Command::SweepW(a) => cmd_sweep_w(a, out),
        Command::SweepSnr(a) => cmd_sweep_snr(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Config(fields)) => {
            for f in fields {
                let _ = writeln!(err, "error: invalid {}: {}", f.field, f.message);
            }
            EXIT_CONFIG
        }
        Err(Failure::Other(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CONFIG
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("fdas").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["run", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["run", "--mt", "four"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&[]).0, EXIT_USAGE);
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("sweep-snr"));
    }

    #[test]
    fn config_errors_exit_1() {
        let (code, _, err) = call(&["run", "--strategy", "mm", "--samples", "0"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("samples"), "{err}");
        let (code, _, err) = call(&["run", "--strategy", "mo-ws"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("invalid w"), "{err}");
        let (code, _, err) = call(&["run", "--strategy", "mm", "--eta-db", "3"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("eta-db"), "{err}");
        let (code, _, err) = call(&["run"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("strategy"), "{err}");
        let (code, _, err) = call(&["sweep-w", "--w-grid", "0:2:0.5", "--samples", "10"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("w-grid"), "{err}");
    }

    #[test]
    fn negative_numbers_parse() {
        let (code, out, err) = call(&["run", "--strategy", "li", "--eta-db", "-10", "--samples", "500"]);
        assert_eq!(code, EXIT_OK, "{err}");
        assert!(out.contains("# eta-db = -10"));
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("x", "0:1:0.5").ok().unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("x", "7").ok().unwrap(), vec![7.0]);
        assert!(parse_grid("x", "0:1").is_err());
        assert!(parse_grid("x", "a:b:c").is_err());
    }
}
