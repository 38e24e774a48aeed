//! Flag values parsed into a validated [`RunConfig`].

use std::path::PathBuf;
use std::str::FromStr;

use evt_accompany::numeric::geometric_n;
use evt_accompany::{scalar_fn, Approximant, ApproximantKind, Distribution, Error, Family, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Table,
    Rates,
    Norming,
    CheckIdentity,
    Simulate,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Table => "table",
            Command::Rates => "rates",
            Command::Norming => "norming",
            Command::CheckIdentity => "check-identity",
            Command::Simulate => "simulate",
        }
    }

    /// Grid used when `--x` is absent.
    pub fn default_window(&self) -> XWindow {
        let steps = match self {
            Command::Table => 17,
            Command::CheckIdentity => 61,
            _ => 161,
        };
        XWindow { lo: -2.0, hi: 6.0, steps }
    }
}

/// `lo:hi:steps`, with `lo < hi` and `steps ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XWindow {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl XWindow {
    pub fn parse(flag: &str, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::parse(flag, format!("expected lo:hi:steps, got {text:?}")));
        }
        let lo = parse_f64(flag, parts[0])?;
        let hi = parse_f64(flag, parts[1])?;
        let steps = parse_int::<usize>(flag, parts[2])?;
        if !(lo < hi) || steps < 2 {
            return Err(Error::domain(format!("{flag}: need lo < hi and steps ≥ 2, got {text}")));
        }
        Ok(XWindow { lo, hi, steps })
    }
}

/// Either an explicit `--n` list or `--n-geom start:stop:count`.
pub fn parse_n_grid(list: Option<&str>, geom: Option<&str>) -> Result<Vec<u64>> {
    let (flag, ns) = match (list, geom) {
        (Some(_), Some(_)) => return Err(Error::parse("--n", "give either --n or --n-geom, not both")),
        (None, None) => return Err(Error::parse("--n", "one of --n or --n-geom is required")),
        (Some(text), None) => {
            let ns = text
                .split(',')
                .map(|s| parse_int::<u64>("--n", s))
                .collect::<Result<Vec<_>>>()?;
            ("--n", ns)
        }
        (None, Some(text)) => {
            let parts: Vec<&str> = text.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::parse("--n-geom", format!("expected start:stop:count, got {text:?}")));
            }
            let start = parse_int::<u64>("--n-geom", parts[0])?;
            let stop = parse_int::<u64>("--n-geom", parts[1])?;
            let count = parse_int::<usize>("--n-geom", parts[2])?;
            if start < 2 || stop < start || count < 1 {
                return Err(Error::domain(format!(
                    "--n-geom: need 2 ≤ start ≤ stop and count ≥ 1, got {text}"
                )));
            }
            ("--n-geom", geometric_n(start, stop, count))
        }
    };
    if let Some(&n) = ns.iter().find(|&&n| n < 2) {
        return Err(Error::domain(format!("{flag}: n must be at least 2, got {n}")));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(format!("{flag}: n values must be strictly increasing")));
    }
    Ok(ns)
}

/// `A(n)` for the second-order approximant: `logn:K` is `K / log n`,
/// `pow:K:theta` is `K n^theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateSpec {
    InverseLog { k: f64 },
    Power { k: f64, theta: f64 },
}

impl FromStr for RateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["logn", k] => Ok(RateSpec::InverseLog { k: parse_f64("--a-n", k)? }),
            ["pow", k, theta] => Ok(RateSpec::Power {
                k: parse_f64("--a-n", k)?,
                theta: parse_f64("--a-n", theta)?,
            }),
            _ => Err(Error::parse("--a-n", format!("expected logn:K or pow:K:theta, got {s:?}"))),
        }
    }
}

impl RateSpec {
    fn kind(self, rho: f64) -> Result<Approximant> {
        let a_n = match self {
            RateSpec::InverseLog { k } => scalar_fn(move |n: f64| k / n.ln()),
            RateSpec::Power { k, theta } => scalar_fn(move |n: f64| k * n.powf(theta)),
        };
        ApproximantKind::second_order(rho, a_n).map_err(|e| Error::domain(format!("--rho: {e}")))
    }
}

const APPROX_NAMES: [&str; 6] = ["exact", "gumbel", "accompanying", "two_term", "first_order", "second_order"];

/// Resolves the second-order kind: explicit `--rho`/`--a-n`, else the
/// Weibull-like preset, else none.
fn second_order_kind(dist: &Distribution, rho: Option<f64>, a_n: Option<RateSpec>) -> Result<Option<Approximant>> {
    match (rho, a_n) {
        (Some(rho), Some(spec)) => spec.kind(rho).map(Some),
        (Some(_), None) => Err(Error::parse("--a-n", "--rho needs --a-n")),
        (None, Some(_)) => Err(Error::parse("--rho", "--a-n needs --rho")),
        (None, None) => match dist.family() {
            Family::WeibullLike { p, .. } => ApproximantKind::weibull_second_order(*p).map(Some),
            _ => Ok(None),
        },
    }
}

/// Parses `--approx a,b,...`; `second_order` needs a resolvable `A(n)`.
pub fn parse_approximants(text: &str, second: Option<&Approximant>) -> Result<Vec<Approximant>> {
    let mut out: Vec<Approximant> = Vec::new();
    for name in text.split(',').map(str::trim) {
        let kind = match name {
            "exact" => ApproximantKind::Exact,
            "gumbel" => ApproximantKind::Gumbel,
            "accompanying" => ApproximantKind::Accompanying,
            "two_term" => ApproximantKind::TwoTerm,
            "first_order" => ApproximantKind::FirstOrderCorrected,
            "second_order" => match second {
                Some(kind) => kind.clone(),
                None => {
                    return Err(Error::domain(
                        "--approx: second_order needs --rho and --a-n for this distribution",
                    ))
                }
            },
            other => {
                return Err(Error::parse(
                    "--approx",
                    format!("unknown approximant {other:?}; expected one of {}", APPROX_NAMES.join(", ")),
                ))
            }
        };
        if out.iter().any(|k| k.name() == kind.name()) {
            return Err(Error::parse("--approx", format!("{name} listed twice")));
        }
        out.push(kind);
    }
    Ok(out)
}

/// Raw flag values, before validation.
#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub dist: String,
    pub n: Option<String>,
    pub n_geom: Option<String>,
    pub x: Option<String>,
    pub approx: Option<String>,
    pub at: Option<f64>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub replications: Option<usize>,
    pub tol: Option<f64>,
    pub rho: Option<f64>,
    pub a_n: Option<String>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub dist: Distribution,
    pub n: Vec<u64>,
    pub x: XWindow,
    /// Requested approximants; `None` means the command's default set.
    pub approximants: Option<Vec<Approximant>>,
    /// Second-order kind available for this run, if any.
    pub second_order: Option<Approximant>,
    pub at: Option<f64>,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub replications: usize,
    pub tol: f64,
}

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_REPLICATIONS: usize = 1000;

impl RunConfig {
    pub fn from_flags(command: Command, flags: Flags) -> Result<Self> {
        let dist: Distribution = flags.dist.parse()?;
        let n = parse_n_grid(flags.n.as_deref(), flags.n_geom.as_deref())?;
        let x = match flags.x.as_deref() {
            Some(text) => XWindow::parse("--x", text)?,
            None => command.default_window(),
        };
        let a_n = flags.a_n.as_deref().map(str::parse::<RateSpec>).transpose()?;
        let second_order = second_order_kind(&dist, flags.rho, a_n)?;
        let approximants = flags
            .approx
            .as_deref()
            .map(|text| parse_approximants(text, second_order.as_ref()))
            .transpose()?;
        if let Some(at) = flags.at {
            if !at.is_finite() {
                return Err(Error::domain(format!("--at: must be finite, got {at}")));
            }
        }
        let tol = flags.tol.unwrap_or(DEFAULT_TOL);
        if !(tol >= 0.0) || !tol.is_finite() {
            return Err(Error::domain(format!("--tol: must be a finite non-negative number, got {tol}")));
        }
        let replications = flags.replications.unwrap_or(DEFAULT_REPLICATIONS);
        if replications == 0 {
            return Err(Error::domain("--replications: must be at least 1"));
        }
        let config = RunConfig {
            command,
            dist,
            n,
            x,
            approximants,
            second_order,
            at: flags.at,
            out: flags.out,
            seed: flags.seed.unwrap_or(0),
            replications,
            tol,
        };
        config.check_command()?;
        Ok(config)
    }

    fn check_command(&self) -> Result<()> {
        let single_n = matches!(self.command, Command::Table | Command::Simulate);
        if single_n && self.n.len() != 1 {
            return Err(Error::domain(format!(
                "--n: {} takes a single n, got {}",
                self.command.name(),
                self.n.len()
            )));
        }
        if self.command == Command::Rates {
            if let Some(kinds) = &self.approximants {
                if kinds.len() != 1 {
                    return Err(Error::domain("--approx: rates takes a single approximant"));
                }
            }
        }
        Ok(())
    }
}

fn parse_f64(flag: &str, s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::parse(flag, format!("not a number: {s:?}")))?;
    if !v.is_finite() {
        return Err(Error::parse(flag, format!("not finite: {s:?}")));
    }
    Ok(v)
}

fn parse_int<I: FromStr>(flag: &str, s: &str) -> Result<I> {
    let t = s.trim();
    // Accept integral scientific notation such as 1e6.
    if let Ok(v) = t.parse::<I>() {
        return Ok(v);
    }
    match t.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v < 1.8e19 => format!("{v:.0}")
            .parse::<I>()
            .map_err(|_| Error::parse(flag, format!("not an integer in range: {s:?}"))),
        _ => Err(Error::parse(flag, format!("not a non-negative integer: {s:?}"))),
    }
}
