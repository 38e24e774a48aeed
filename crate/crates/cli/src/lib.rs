//! Command-line workflows over `evt-accompany`: tabulation, rate fits,
//! norming comparisons, the two-term identity check and Monte Carlo maxima.
//!
//! Each workflow renders one CSV table (first line a `#` metadata comment)
//! and a short human-readable summary.

pub mod config;

use std::fmt::Write as _;
use std::fs;

use evt_accompany::analysis::{
    empirical_cdf, error_curve, fit_rate, guarded_grid, simulate_max, Metric, RateModel, RNG_ALGORITHM,
};
use evt_accompany::approx::{evaluate, exact_max_cdf, two_term};
use evt_accompany::gamma::gamma_exact;
use evt_accompany::norming::{norming_closed, norming_exact, types_equivalence_gap};
use evt_accompany::numeric::linspace;
use evt_accompany::{Approximant, ApproximantKind, Error, ErrorClass, Result};

pub use config::{Command, Flags, RunConfig, XWindow};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Rendered output of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub csv: String,
    pub summary: String,
}

/// Process exit status for an error class.
pub fn exit_code(class: ErrorClass) -> i32 {
    match class {
        ErrorClass::Parse => 2,
        ErrorClass::Domain => 3,
        ErrorClass::Numerical => 4,
    }
}

/// Shortest round-trip decimal; scientific notation outside `[1e-4, 1e16)`.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let m = v.abs();
    if !(1e-4..1e16).contains(&m) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn cell(v: Option<f64>) -> String {
    v.map(fmt_num).unwrap_or_default()
}

/// `Ok(None)` for points where the quantity is undefined (below `x0`, or
/// past the `B_n` cutoff); other numerical failures propagate.
fn defined(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.class() == ErrorClass::Domain => Ok(None),
        Err(e) if matches!(innermost(&e), Error::Divergence(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn innermost(e: &Error) -> &Error {
    match e {
        Error::At { source, .. } => innermost(source),
        other => other,
    }
}

fn header(config: &RunConfig) -> String {
    format!(
        "# evt-accompany v{VERSION} dist={} cmd={}\n",
        config.dist,
        config.command.name()
    )
}

/// Runs the configured workflow and writes the CSV to `--out` when given.
pub fn run(config: &RunConfig) -> Result<Report> {
    let report = match config.command {
        Command::Table => table(config)?,
        Command::Rates => rates(config)?,
        Command::Norming => norming(config)?,
        Command::CheckIdentity => check_identity(config)?,
        Command::Simulate => simulate(config)?,
    };
    if let Some(path) = &config.out {
        fs::write(path, &report.csv)
            .map_err(|e| Error::domain(format!("--out: cannot write {}: {e}", path.display())))?;
    }
    Ok(report)
}

fn table(config: &RunConfig) -> Result<Report> {
    let d = &config.dist;
    let n = config.n[0];
    let pair = norming_exact(d, n)?;
    let columns: Vec<Approximant> = match &config.approximants {
        Some(kinds) => kinds.clone(),
        None => {
            let mut all = vec![
                ApproximantKind::Gumbel,
                ApproximantKind::Accompanying,
                ApproximantKind::TwoTerm,
                ApproximantKind::FirstOrderCorrected,
            ];
            all.extend(config.second_order.clone());
            all
        }
    };
    const NAMES: [&str; 5] = ["gumbel", "accompanying", "two_term", "first_order", "second_order"];

    let mut csv = header(config);
    csv.push_str("x,exact,gumbel,accompanying,two_term,first_order,second_order,gamma\n");
    let mut worst = vec![0.0f64; NAMES.len()];
    let XWindow { lo, hi, steps } = config.x;
    for x in linspace(lo, hi, steps) {
        let exact = exact_max_cdf(d, &pair, x).map_err(|e| e.at(n, x))?;
        let mut row = vec![fmt_num(x), fmt_num(exact)];
        for (i, name) in NAMES.iter().enumerate() {
            let value = match columns.iter().find(|k| k.name() == *name) {
                Some(kind) => defined(evaluate(kind, d, &pair, x).map_err(|e| e.at(n, x)))?,
                None => None,
            };
            if let Some(v) = value {
                worst[i] = worst[i].max((exact - v).abs());
            }
            row.push(cell(value));
        }
        let gamma = defined(gamma_exact(d, &pair, x).map(|g| g.value).map_err(|e| e.at(n, x)))?;
        row.push(cell(gamma));
        csv.push_str(&row.join(","));
        csv.push('\n');
    }

    let mut summary = format!("table: n={n} a_n={} b_n={} rows={steps}\n", fmt_num(pair.a), fmt_num(pair.b));
    for (i, name) in NAMES.iter().enumerate() {
        if columns.iter().any(|k| k.name() == *name) {
            let _ = writeln!(summary, "  max |exact - {name}| = {}", fmt_num(worst[i]));
        }
    }
    Ok(Report { csv, summary })
}

fn rates(config: &RunConfig) -> Result<Report> {
    let kind = match &config.approximants {
        Some(kinds) => kinds[0].clone(),
        None => ApproximantKind::Accompanying,
    };
    let metric = match config.at {
        Some(x) => Metric::AtPoint(x),
        None => Metric::SupOnGrid { lo: config.x.lo, hi: config.x.hi, steps: config.x.steps },
    };
    let curve = error_curve(&config.dist, &kind, metric, &config.n)?;
    let mut csv = header(config);
    let metric_label = match metric {
        Metric::AtPoint(x) => format!("at:{}", fmt_num(x)),
        Metric::SupOnGrid { lo, hi, steps } => format!("grid-sup:{}:{}:{steps}", fmt_num(lo), fmt_num(hi)),
    };
    let _ = writeln!(csv, "# approx={} metric={metric_label}", kind.name());
    csv.push_str("model,exponent,r_squared,n_min,n_max,points\n");
    let mut summary = format!("rates: approx={} metric={metric_label}\n", kind.name());
    for &(n, err) in &curve.points {
        let _ = writeln!(summary, "  n={n} error={}", fmt_num(err));
    }
    for model in [RateModel::PowerInN, RateModel::PowerInLogN] {
        let fit = fit_rate(&curve, model)?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            model.name(),
            fmt_num(fit.exponent),
            fmt_num(fit.r_squared),
            fit.n_min,
            fit.n_max,
            fit.points
        );
        let _ = writeln!(
            summary,
            "  {}: exponent={} r2={}",
            model.name(),
            fmt_num(fit.exponent),
            fmt_num(fit.r_squared)
        );
    }
    Ok(Report { csv, summary })
}

fn norming(config: &RunConfig) -> Result<Report> {
    let d = &config.dist;
    let mut csv = header(config);
    csv.push_str("n,a_exact,b_exact,a_closed,b_closed,ratio_gap,shift_gap\n");
    let mut summary = String::from("norming:\n");
    for &n in &config.n {
        let exact = norming_exact(d, n)?;
        let closed = norming_closed(d, n).transpose()?;
        let gap = closed.as_ref().map(|c| types_equivalence_gap(&exact, c)).transpose()?;
        let _ = writeln!(
            csv,
            "{n},{},{},{},{},{},{}",
            fmt_num(exact.a),
            fmt_num(exact.b),
            cell(closed.as_ref().map(|c| c.a)),
            cell(closed.as_ref().map(|c| c.b)),
            cell(gap.map(|g| g.0)),
            cell(gap.map(|g| g.1)),
        );
        match gap {
            Some((r, s)) => {
                let _ = writeln!(summary, "  n={n} ratio_gap={} shift_gap={}", fmt_num(r), fmt_num(s));
            }
            None => {
                let _ = writeln!(summary, "  n={n} no closed form for this family");
            }
        }
    }
    Ok(Report { csv, summary })
}

fn check_identity(config: &RunConfig) -> Result<Report> {
    let d = &config.dist;
    let XWindow { lo, hi, steps } = config.x;
    let mut csv = header(config);
    csv.push_str("n,x,exact,two_term,abs_gap\n");
    let mut worst = (0.0f64, 0u64, f64::NAN);
    let mut rows = 0usize;
    for &n in &config.n {
        let pair = norming_exact(d, n)?;
        for x in guarded_grid(d, &pair, &ApproximantKind::Gumbel, lo, hi, steps)? {
            let exact = exact_max_cdf(d, &pair, x).map_err(|e| e.at(n, x))?;
            let tt = two_term(d, &pair, x).map_err(|e| e.at(n, x))?;
            let gap = (exact - tt).abs();
            if !(gap <= worst.0) {
                worst = (gap, n, x);
            }
            rows += 1;
            let _ = writeln!(csv, "{n},{},{},{},{}", fmt_num(x), fmt_num(exact), fmt_num(tt), fmt_num(gap));
        }
    }
    let summary = format!(
        "check-identity: rows={rows} max_gap={} at n={} x={} tol={}\n",
        fmt_num(worst.0),
        worst.1,
        fmt_num(worst.2),
        fmt_num(config.tol)
    );
    if rows == 0 {
        return Err(Error::domain("--x: no grid point passes the cutoff guard"));
    }
    if !(worst.0 <= config.tol) {
        if let Some(path) = &config.out {
            let _ = fs::write(path, &csv);
        }
        return Err(Error::Tolerance(format!(
            "--tol: two-term gap {} at n={}, x={} exceeds {}",
            fmt_num(worst.0),
            worst.1,
            fmt_num(worst.2),
            fmt_num(config.tol)
        )));
    }
    Ok(Report { csv, summary })
}

fn simulate(config: &RunConfig) -> Result<Report> {
    let d = &config.dist;
    let n = config.n[0];
    let samples = simulate_max(d, n, config.replications, config.seed)?;
    let mut csv = header(config);
    let _ = writeln!(csv, "# rng={RNG_ALGORITHM} seed={} replications={} n={n}", config.seed, config.replications);
    csv.push_str("replication,scaled_max\n");
    for (i, v) in samples.iter().enumerate() {
        let _ = writeln!(csv, "{i},{}", fmt_num(*v));
    }
    let pair = norming_exact(d, n)?;
    let mut summary = format!("simulate: n={n} replications={} seed={}\n", config.replications, config.seed);
    let reps = samples.len() as f64;
    for x in [-1.0, 0.0, 1.0, 2.0] {
        let exact = exact_max_cdf(d, &pair, x)?;
        let emp = empirical_cdf(&samples, x);
        let band = 3.0 * (exact * (1.0 - exact) / reps).sqrt();
        let _ = writeln!(
            summary,
            "  x={x}: empirical={} exact={} 3-sigma band={}",
            fmt_num(emp),
            fmt_num(exact),
            fmt_num(band)
        );
    }
    Ok(Report { csv, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(0.25), "0.25");
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(1e-7), "1e-7");
        assert_eq!(fmt_num(-2.5e-12), "-2.5e-12");
        assert_eq!(fmt_num(1e20), "1e20");
        assert_eq!(fmt_num(12345.5), "12345.5");
        assert_eq!(fmt_num(1.5e-5), "1.5e-5");
        assert_eq!(fmt_num(0.00025), "0.00025");
        assert_eq!(fmt_num(0.1 + 0.2), "0.30000000000000004");
        assert_eq!(fmt_num(f64::NAN), "NaN");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(ErrorClass::Parse), 2);
        assert_eq!(exit_code(ErrorClass::Domain), 3);
        assert_eq!(exit_code(ErrorClass::Numerical), 4);
    }

    fn config(command: Command, dist: &str, n: &str) -> RunConfig {
        let flags = Flags { dist: dist.into(), n: Some(n.into()), ..Flags::default() };
        RunConfig::from_flags(command, flags).unwrap()
    }

    #[test]
    fn exponential_table_has_matching_columns() {
        let mut c = config(Command::Table, "exp", "1000");
        c.x = XWindow { lo: -2.0, hi: 6.0, steps: 9 };
        c.approximants = Some(config::parse_approximants("gumbel,accompanying", None).unwrap());
        let report = run(&c).unwrap();
        let lines: Vec<&str> = report.csv.lines().collect();
        assert_eq!(lines[0], "# evt-accompany v0.1.0 dist=exp cmd=table");
        assert_eq!(lines.len(), 2 + 9);
        for line in &lines[2..] {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f.len(), 8);
            assert_eq!(f[2], f[3]);
            assert!(f[4].is_empty() && f[5].is_empty() && f[6].is_empty());
        }
    }

    #[test]
    fn table_leaves_undefined_cells_empty() {
        let mut c = config(Command::Table, "weibull:c=1,p=2,alpha=0,ell=const:1,x0=0", "10");
        c.x = XWindow { lo: -6.0, hi: 6.0, steps: 13 };
        let report = run(&c).unwrap();
        let first: Vec<&str> = report.csv.lines().nth(2).unwrap().split(',').collect();
        // b_n - 6 a_n < x0 = 0 at n = 10.
        assert_eq!(first[0], "-6");
        assert!(first[7].is_empty());
    }

    #[test]
    fn identity_check_fails_with_numerical_class() {
        // Rounding alone leaves gaps near 1e-14 here, so tol = 0 must fail.
        let mut c = config(Command::CheckIdentity, "weibull:c=1,p=2,alpha=0,ell=const:1", "1000");
        c.tol = 0.0;
        let err = run(&c).unwrap_err();
        assert!(matches!(err, Error::Tolerance(_)));
        assert_eq!(exit_code(err.class()), 4);
    }

    #[test]
    fn norming_rows_for_family_without_closed_form() {
        let c = config(Command::Norming, "iterlog:k=2,a=1,C=1", "1000,1000000");
        let report = run(&c).unwrap();
        let row: Vec<&str> = report.csv.lines().nth(2).unwrap().split(',').collect();
        assert_eq!(row.len(), 7);
        assert!(row[3].is_empty() && row[6].is_empty());
    }
}
