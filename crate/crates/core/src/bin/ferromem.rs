use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;

use ferromem::bounds::{self, Sizing};
use ferromem::spectrum::SpectralModel;
use ferromem::verify::{self, Suite, VerifyConfig};
use ferromem::{output, sim, Error, Result};

/// Storage-error bounds for quantum memories in mean-field Heisenberg ferromagnets.
///
/// Units: GHz for J and a, ns for tau. A `--config` file holds `key = value`
/// lines named like the long flags (`J`, `a-min`, `tau-steps`, ...); flags win.
#[derive(Parser, Debug)]
#[command(name = "ferromem", version)]
struct Cli {
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Spectrum,
    Divdiff,
    Frechet,
    Sim,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Levels, eigenvalues, multiplicities and cumulative dimension.
    Spectrum {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long = "J")]
        j: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Best certified lifetime and enhancement over a log range of noise strengths.
    Lifetime {
        #[arg(long = "J")]
        j: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long = "a-min")]
        a_min: Option<f64>,
        #[arg(long = "a-max")]
        a_max: Option<f64>,
        #[arg(long = "a-steps")]
        a_steps: Option<usize>,
        #[arg(long = "t-min")]
        t_min: Option<usize>,
        #[arg(long = "t-max")]
        t_max: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid of -log10(eps) over storage time and correctable errors.
    Contour {
        #[arg(long = "J")]
        j: Option<f64>,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long = "tau-min")]
        tau_min: Option<f64>,
        #[arg(long = "tau-max")]
        tau_max: Option<f64>,
        #[arg(long = "tau-steps")]
        tau_steps: Option<usize>,
        #[arg(long = "t-min")]
        t_min: Option<usize>,
        #[arg(long = "t-max")]
        t_max: Option<usize>,
        /// Fix the register size instead of n = (2t+1)^2.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dense simulation of codes under a random local field.
    Simulate {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "J")]
        j: Option<f64>,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long = "tau-min")]
        tau_min: Option<f64>,
        #[arg(long = "tau-max")]
        tau_max: Option<f64>,
        #[arg(long = "tau-steps")]
        tau_steps: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification battery; exits 1 if any check fails.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long)]
        seed: Option<u64>,
        /// Multiplies every tolerance (values below 1 tighten the battery).
        #[arg(long = "tolerance-scale")]
        tolerance_scale: Option<f64>,
    },
}

const CONFIG_KEYS: &[&str] = &[
    "J", "a", "a-min", "a-max", "a-steps", "eps", "t-min", "t-max", "tau-min", "tau-max", "tau-steps", "n", "seed",
    "out", "format", "tolerance-scale",
];

struct Config(HashMap<String, String>);

impl Config {
    fn load(path: Option<&Path>) -> Result<Self> {
        let mut map = HashMap::new();
        let Some(path) = path else {
            return Ok(Self(map));
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            let k = k.trim();
            if !CONFIG_KEYS.contains(&k) {
                return Err(Error::Config(format!("line {}: unknown key '{k}'", i + 1)));
            }
            map.insert(k.to_string(), v.trim().to_string());
        }
        Ok(Self(map))
    }

    fn get<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.0.get(key) {
            Some(s) => s
                .parse()
                .map_err(|_| Error::Config(format!("invalid value '{s}' for '{key}'"))),
            None => Ok(default),
        }
    }

    fn path(&self, flag: Option<PathBuf>) -> Option<PathBuf> {
        flag.or_else(|| self.0.get("out").map(PathBuf::from))
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn t_range(min: usize, max: usize) -> Result<std::ops::RangeInclusive<usize>> {
    if min > max {
        return Err(Error::Config(format!("empty t range {min}..={max}")));
    }
    Ok(min..=max)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::Spectrum { n, j, out } => {
            let model = SpectralModel::new(cfg.get(n, "n", 4)?, cfg.get(j, "J", 1.0)?)?;
            output::write_spectrum_csv(&model, sink(cfg.path(out).as_deref())?)?;
        }
        Command::Lifetime {
            j,
            eps,
            a,
            a_min,
            a_max,
            a_steps,
            t_min,
            t_max,
            out,
        } => {
            let exchange = cfg.get(j, "J", 10.0)?;
            let eps = cfg.get(eps, "eps", 1e-4)?;
            let a_values = match a.or(cfg.get(None, "a", f64::NAN).ok().filter(|v| !v.is_nan())) {
                Some(a) => vec![a],
                None => bounds::log_space(
                    cfg.get(a_min, "a-min", 1e-6)?,
                    cfg.get(a_max, "a-max", 1e-2)?,
                    cfg.get(a_steps, "a-steps", 41)?,
                )?,
            };
            let ts = t_range(
                cfg.get(t_min, "t-min", *bounds::DEFAULT_T_RANGE.start())?,
                cfg.get(t_max, "t-max", *bounds::DEFAULT_T_RANGE.end())?,
            )?;
            let rows = bounds::lifetime_curve(exchange, eps, &a_values, ts)?;
            output::write_lifetime_csv(&rows, sink(cfg.path(out).as_deref())?)?;
        }
        Command::Contour {
            j,
            a,
            tau_min,
            tau_max,
            tau_steps,
            t_min,
            t_max,
            n,
            format,
            out,
        } => {
            let taus = bounds::lin_space(
                cfg.get(tau_min, "tau-min", 1.0)?,
                cfg.get(tau_max, "tau-max", 100.0)?,
                cfg.get(tau_steps, "tau-steps", 100)?,
            )?;
            let ts: Vec<usize> = t_range(cfg.get(t_min, "t-min", 1)?, cfg.get(t_max, "t-max", 25)?)?.collect();
            let sizing = match n.or(cfg.get(None, "n", 0u64).ok().filter(|&v| v > 0)) {
                Some(n) => Sizing::Fixed(n),
                None => Sizing::Family,
            };
            let format = match format {
                Some(f) => f,
                None => match cfg.0.get("format").map(String::as_str) {
                    None | Some("csv") => Format::Csv,
                    Some("svg") => Format::Svg,
                    Some(other) => return Err(Error::Config(format!("unknown format '{other}'"))),
                },
            };
            let grid = bounds::contour_grid(cfg.get(j, "J", 10.0)?, cfg.get(a, "a", 4e-5)?, &taus, &ts, sizing)?;
            let mut w = sink(cfg.path(out).as_deref())?;
            match format {
                Format::Csv => output::write_contour_csv(&grid, w)?,
                Format::Svg => {
                    w.write_all(output::contour_svg(&grid).as_bytes())?;
                    w.flush()?;
                }
            }
        }
        Command::Simulate {
            n,
            j,
            a,
            tau_min,
            tau_max,
            tau_steps,
            seed,
            out,
        } => {
            simulate(
                cfg.get(n, "n", 4)?,
                cfg.get(j, "J", 1.0)?,
                cfg.get(a, "a", 1e-3)?,
                bounds::lin_space(
                    cfg.get(tau_min, "tau-min", 0.5)?,
                    cfg.get(tau_max, "tau-max", 5.0)?,
                    cfg.get(tau_steps, "tau-steps", 10)?,
                )?,
                cfg.get(seed, "seed", verify::DEFAULT_SEED)?,
                sink(cfg.path(out).as_deref())?,
            )?;
        }
        Command::Verify {
            suite,
            seed,
            tolerance_scale,
        } => {
            let suite = match suite {
                SuiteArg::Spectrum => Suite::Spectrum,
                SuiteArg::Divdiff => Suite::Divdiff,
                SuiteArg::Frechet => Suite::Frechet,
                SuiteArg::Sim => Suite::Sim,
                SuiteArg::All => Suite::All,
            };
            let config = VerifyConfig {
                seed: cfg.get(seed, "seed", verify::DEFAULT_SEED)?,
                tolerance_scale: cfg.get(tolerance_scale, "tolerance-scale", 1.0)?,
            };
            let report = verify::run(suite, &config)?;
            print!("{report}");
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Repetition code under random dephasing, and a small code under a random local field.
fn simulate(n: usize, exchange: f64, a: f64, taus: Vec<f64>, seed: u64, out: Box<dyn Write>) -> Result<()> {
    if !(a >= 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!("noise strength must be >= 0, got {a}")));
    }
    let mut rng = verify::trial_rng(seed, 0, 0);
    let z: Vec<f64> = (0..n).map(|_| rng.random_range(-a..=a)).collect();
    let dephasing = sim::LocalField::dephasing(&z)?;
    let field = verify::random_field(&mut rng, n, a * n as f64);
    let code = match n {
        4 => Some((sim::gnu_codewords(2, 2, 1)?, 0)),
        6 => Some((sim::gnu_codewords(2, 3, 1)?, 0)),
        9 => Some((sim::pi_codewords(2, 1)?, 1)),
        _ => None,
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["tau", "repetition_error", "sin_theta", "code_t", "max_b", "storage_error"])?;
    for tau in taus {
        let rep = sim::repetition_storage_error(&dephasing, tau, exchange)?;
        let theta: f64 = z.iter().sum::<f64>() * tau;
        let (t, b, e) = match &code {
            Some((code, t)) => {
                let evolved = verify::evolve_code(code, exchange, &field, tau)?;
                let r = sim::gersgorin_check_states(&evolved, code, *t, None)?;
                let b = r.b.iter().copied().fold(0.0, f64::max);
                (t.to_string(), b.to_string(), r.storage_error.to_string())
            }
            None => Default::default(),
        };
        w.write_record([tau.to_string(), rep.to_string(), theta.sin().abs().to_string(), t, b, e])?;
    }
    w.flush()?;
    Ok(())
}
