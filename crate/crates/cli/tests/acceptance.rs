//! Acceptance suite: nine criteria, one PASS/FAIL line each, followed by
//! indented detail lines. Exits nonzero if any criterion fails.

use std::process::Command as Process;
use std::time::Instant;

use evt_accompany::analysis::{empirical_cdf, error_curve, fit_rate, guarded_grid, simulate_max, Metric, RateModel};
use evt_accompany::approx::{accompanying_law, exact_max_cdf, gumbel_cdf, two_term};
use evt_accompany::gamma::{
    correction_generalized_weibull, correction_logweibull, correction_weibull_like, gamma_exact, gamma_quadrature,
};
use evt_accompany::norming::{
    norming_closed, norming_exact, norming_exact_with, types_equivalence_gap, NormingOptions, ScaleRule,
};
use evt_accompany::numeric::{geometric_n, linspace};
use evt_accompany::{ApproximantKind, Distribution, DistributionSpec, SlowlyVarying};

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(summary: impl Into<String>) -> Self {
        Outcome { pass: true, summary: summary.into(), details: Vec::new() }
    }

    /// Records one sub-check; any failing sub-check fails the criterion.
    fn check(&mut self, ok: bool, line: String) {
        self.pass &= ok;
        self.details.push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, line: String) {
        self.details.push(format!("note {line}"));
    }
}

type Criterion = fn() -> Outcome;

fn weibull(p: f64, alpha: f64, ell: SlowlyVarying<f64>, x0: Option<f64>) -> Distribution {
    DistributionSpec::weibull_like(1.0, p, alpha, ell, x0).expect("weibull parameters")
}

fn pure_weibull(p: f64) -> Distribution {
    weibull(p, 0.0, SlowlyVarying::one(), Some(0.0))
}

fn log_weibull(p: f64, alpha: f64, ell: SlowlyVarying<f64>) -> Distribution {
    DistributionSpec::log_weibull_like(1.0, p, alpha, ell, None).expect("log-weibull parameters")
}

fn log_power() -> SlowlyVarying<f64> {
    SlowlyVarying::log_power(1.0, 1.0).unwrap()
}

/// exp; Weibull c=1, p ∈ {0.5,1,2,3}, α ∈ {0,2}; log-Weibull c=1, p=2, α ∈ {0,1}.
fn identity_families() -> Vec<Distribution> {
    let mut out = vec![DistributionSpec::exponential()];
    for p in [0.5, 1.0, 2.0, 3.0] {
        out.push(pure_weibull(p));
        out.push(weibull(p, 2.0, SlowlyVarying::one(), None));
    }
    out.push(log_weibull(2.0, 0.0, SlowlyVarying::one()));
    out.push(log_weibull(2.0, 1.0, SlowlyVarying::one()));
    out
}

fn in_band(v: f64, lo: f64, hi: f64) -> bool {
    v >= lo && v <= hi
}

fn eventually_decreasing(values: &[f64]) -> bool {
    let tail = &values[values.len().saturating_sub(3)..];
    tail.windows(2).all(|w| w[1] <= w[0] || w[1] < 1e-9)
}

fn master_identity() -> Outcome {
    let mut out = Outcome::new("|F^n - exp(-e^-γ) exp(-Σ/n)| ≤ 1e-10 on the guarded 61-point grid");
    let d: Distribution = DistributionSpec::exponential();
    let pair = norming_exact(&d, 2).unwrap();
    let exact = exact_max_cdf(&d, &pair, 0.0).unwrap();
    let tt = two_term(&d, &pair, 0.0).unwrap();
    out.check(
        (exact - 0.25).abs() <= 1e-15 && (tt - 0.25).abs() <= 1e-15,
        format!("exp n=2 x=0: exact={exact} two_term={tt} (both 0.25)"),
    );
    for d in identity_families() {
        for n in [10u64, 1_000, 1_000_000] {
            let result = (|| {
                let pair = norming_exact(&d, n)?;
                let grid = guarded_grid(&d, &pair, &ApproximantKind::Gumbel, -2.0, 6.0, 61)?;
                let mut worst = 0.0f64;
                for &x in &grid {
                    let gap = (exact_max_cdf(&d, &pair, x)? - two_term(&d, &pair, x)?).abs();
                    worst = worst.max(gap);
                }
                Ok::<_, evt_accompany::Error>((worst, grid.len()))
            })();
            match result {
                Ok((worst, points)) => out.check(worst <= 1e-10, format!("{d} n={n}: max gap {worst:.3e} over {points} points")),
                Err(e) => out.check(false, format!("{d} n={n}: {e}")),
            }
        }
    }
    out
}

fn power_rate() -> Outcome {
    let mut out = Outcome::new("pure Weibull p=2, accompanying error ~ n^θ with θ ∈ [-1.15, -0.85], r² ≥ 0.99");
    let d = pure_weibull(2.0);
    let ns = geometric_n(100, 100_000_000, 7);
    for metric in [Metric::AtPoint(1.0), Metric::default_sup()] {
        let fit = error_curve(&d, &ApproximantKind::Accompanying, metric, &ns)
            .and_then(|c| fit_rate(&c, RateModel::PowerInN));
        match fit {
            Ok(f) => out.check(
                in_band(f.exponent, -1.15, -0.85) && f.r_squared >= 0.99,
                format!("{metric:?}: exponent {:.4}, r² {:.6}", f.exponent, f.r_squared),
            ),
            Err(e) => out.check(false, format!("{metric:?}: {e}")),
        }
    }
    out
}

fn gumbel_log_rate() -> Outcome {
    let mut out = Outcome::new("pure Weibull p=2, n=1e8: (exact - Λ)·4 log n / (Λ e^-x x²) ∈ [0.85, 1.15]");
    let d = pure_weibull(2.0);
    let n = 100_000_000u64;
    let pair = norming_exact(&d, n).unwrap();
    for x in [0.5, 1.0, 2.0] {
        let lambda = gumbel_cdf(x);
        let exact = exact_max_cdf(&d, &pair, x).unwrap();
        let ratio = (exact - lambda) * 4.0 * (n as f64).ln() / (lambda * (-x).exp() * x * x);
        out.check(in_band(ratio, 0.85, 1.15), format!("x={x}: ratio {ratio:.4}"));
    }
    out
}

fn correction_formulas() -> Outcome {
    let mut out = Outcome::new("(γ_n(x) - x) / predicted correction ∈ [0.85, 1.15] at n=1e8");
    let n = 100_000_000u64;
    let aux = NormingOptions { scale: ScaleRule::Auxiliary, ..NormingOptions::default() };
    for (p, alpha) in [(2.0, 0.0), (0.5, 0.0), (2.0, 3.0)] {
        let d = if alpha == 0.0 { pure_weibull(p) } else { weibull(p, alpha, SlowlyVarying::one(), None) };
        let pair = norming_exact_with(&d, n, aux).unwrap();
        for x in [0.5, 1.0, 2.0] {
            let gamma = gamma_exact(&d, &pair, x).unwrap().value;
            let predicted = correction_weibull_like(p, alpha, n, x).unwrap();
            let ratio = (gamma - x) / predicted;
            out.check(in_band(ratio, 0.85, 1.15), format!("weibull p={p} α={alpha} x={x}: ratio {ratio:.4}"));
            if alpha != 0.0 {
                let alpha_fn = d.alpha_fn().unwrap();
                let generic = correction_generalized_weibull(1.0 / p, p, &alpha_fn, &pair, x).unwrap();
                out.note(format!(
                    "weibull p={p} α={alpha} x={x}: α-integral form with b_n gives ratio {:.4}",
                    (gamma - x) / generic
                ));
            }
        }
    }
    for alpha in [0.0, 1.0] {
        let d = log_weibull(2.0, alpha, SlowlyVarying::one());
        let pair = norming_exact_with(&d, n, aux).unwrap();
        let alpha_fn = d.alpha_fn().unwrap();
        // f(t) = C t log^{1-p} t with C = 1/(cp).
        let scale = 0.5;
        for x in [0.5, 1.0, 2.0] {
            let gamma = gamma_exact(&d, &pair, x).unwrap().value;
            let predicted = correction_logweibull(scale, 2.0, &alpha_fn, &pair, x).unwrap();
            let ratio = (gamma - x) / predicted;
            out.check(in_band(ratio, 0.85, 1.15), format!("logweibull p=2 α={alpha} x={x}: ratio {ratio:.4}"));
        }
    }
    out
}

fn norming_closed_forms() -> Outcome {
    let mut out = Outcome::new("closed-form norming: exact for pure Weibull, ≤ (0.05, 0.1) at n=1e9 otherwise");
    let ns = geometric_n(1_000, 1_000_000_000, 7);
    let gaps = |d: &Distribution| -> Vec<(f64, f64)> {
        ns.iter()
            .map(|&n| {
                let closed = norming_closed(d, n).unwrap().unwrap();
                types_equivalence_gap(&norming_exact(d, n).unwrap(), &closed).unwrap()
            })
            .collect()
    };
    for p in [0.5, 1.0, 2.0, 3.0] {
        let d = pure_weibull(p);
        let g = gaps(&d);
        let worst = g.iter().fold((0.0f64, 0.0f64), |m, v| (m.0.max(v.0), m.1.max(v.1)));
        out.check(worst.0 <= 1e-8 && worst.1 <= 1e-8, format!("{d}: max gap ({:.2e}, {:.2e})", worst.0, worst.1));
    }
    let mut cases = Vec::new();
    for p in [0.5, 1.0, 2.0, 3.0] {
        cases.push(weibull(p, 2.0, SlowlyVarying::one(), None));
        cases.push(weibull(p, 0.0, log_power(), None));
    }
    cases.push(log_weibull(2.0, 1.0, SlowlyVarying::one()));
    cases.push(log_weibull(2.0, 0.0, log_power()));
    for d in cases {
        let g = gaps(&d);
        let last = g[g.len() - 1];
        let ratio: Vec<f64> = g.iter().map(|v| v.0).collect();
        let shift: Vec<f64> = g.iter().map(|v| v.1).collect();
        let ok = last.0 <= 0.05 && last.1 <= 0.1 && eventually_decreasing(&ratio) && eventually_decreasing(&shift);
        let trail = |v: &[f64]| v[v.len() - 3..].iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(" ");
        out.check(
            ok,
            format!("{d}: at 1e9 ({:.3e}, {:.3e}); last ratio gaps [{}], shift gaps [{}]", last.0, last.1, trail(&ratio), trail(&shift)),
        );
    }
    out
}

fn exponential_exactness() -> Outcome {
    let mut out = Outcome::new("exponential: γ_n ≡ x, B_n = Λ, Gumbel error exponent ∈ [-1.05, -0.95]");
    let d: Distribution = DistributionSpec::exponential();
    let mut worst_gamma = 0.0f64;
    let mut worst_acc = 0.0f64;
    for n in geometric_n(10, 1_000_000_000, 9) {
        let pair = norming_exact(&d, n).unwrap();
        for x in linspace(-2.0f64, 6.0, 161) {
            worst_gamma = worst_gamma.max((gamma_exact(&d, &pair, x).unwrap().value - x).abs());
            worst_acc = worst_acc.max((accompanying_law(&d, &pair, x).unwrap() - gumbel_cdf(x)).abs());
        }
    }
    out.check(worst_gamma <= 1e-12, format!("max |γ_n(x) - x| = {worst_gamma:.3e}"));
    out.check(worst_acc <= 1e-12, format!("max |B_n - Λ| = {worst_acc:.3e}"));
    let ns = geometric_n(100, 1_000_000, 5);
    match error_curve(&d, &ApproximantKind::Gumbel, Metric::default_sup(), &ns).and_then(|c| fit_rate(&c, RateModel::PowerInN)) {
        Ok(f) => out.check(in_band(f.exponent, -1.05, -0.95), format!("sup Gumbel error exponent {:.4}, r² {:.6}", f.exponent, f.r_squared)),
        Err(e) => out.check(false, format!("rate fit: {e}")),
    }
    out
}

fn gamma_routes() -> Outcome {
    let mut out = Outcome::new("tail-ratio and quadrature γ_n agree to 1e-8");
    let mut families = identity_families();
    for p in [0.5, 2.0] {
        families.push(weibull(p, 0.0, log_power(), if p >= 2.0 { Some(1.5) } else { None }));
    }
    families.push(log_weibull(2.0, 0.0, log_power()));
    families.push(DistributionSpec::iterated_log_scale(2, 1.0, 1.0, None).unwrap());
    families.push(DistributionSpec::iterated_log_scale(2, 0.5, 2.0, None).unwrap());
    for d in families {
        for n in [1_000u64, 1_000_000] {
            let pair = norming_exact(&d, n).unwrap();
            let mut worst = 0.0f64;
            let mut error = None;
            for x in linspace(-2.0, 6.0, 61) {
                if pair.point(x) < d.x0() {
                    continue;
                }
                match (gamma_exact(&d, &pair, x), gamma_quadrature(&d, &pair, x)) {
                    (Ok(a), Ok(b)) => worst = worst.max((a.value - b.value).abs()),
                    (Err(e), _) | (_, Err(e)) => error = Some(e),
                }
            }
            match error {
                None => out.check(worst <= 1e-8, format!("{d} n={n}: max gap {worst:.3e}")),
                Some(e) => out.check(false, format!("{d} n={n}: {e}")),
            }
        }
    }
    out
}

fn monte_carlo() -> Outcome {
    let mut out = Outcome::new("exponential n=1e3, 1e5 replications inside the 3σ binomial band, ≤ 60 s");
    let d: Distribution = DistributionSpec::exponential();
    let (n, reps, seed) = (1_000u64, 100_000usize, 20_240_601u64);
    let start = Instant::now();
    let samples = simulate_max(&d, n, reps, seed).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let pair = norming_exact(&d, n).unwrap();
    for x in [-1.0, 0.0, 1.0, 2.0, 4.0] {
        let p = exact_max_cdf(&d, &pair, x).unwrap();
        let emp = empirical_cdf(&samples, x);
        let band = 3.0 * (p * (1.0 - p) / reps as f64).sqrt();
        out.check((emp - p).abs() <= band, format!("x={x}: empirical {emp:.5}, exact {p:.5}, band {band:.5}"));
    }
    out.check(elapsed <= 60.0, format!("simulation took {elapsed:.2} s"));
    out
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let output = Process::new(env!("CARGO_BIN_EXE_evt-accompany"))
        .args(args)
        .output()
        .expect("spawn evt-accompany");
    (output.status.code().unwrap_or(-1), output.stdout)
}

fn cli_contract() -> Outcome {
    let mut out = Outcome::new("byte-identical CSV, exact schemas, exit codes 2/3/4");
    let dir = tempfile::tempdir().unwrap();
    let weibull = "weibull:c=1,p=2,alpha=0,ell=const:1";
    let runs: [(&str, &[&str], &str); 5] = [
        ("table", &["--dist", weibull, "--n", "1000", "--x", "-2:6:9"], "x,exact,gumbel,accompanying,two_term,first_order,second_order,gamma"),
        ("rates", &["--dist", "exp", "--approx", "accompanying", "--n-geom", "100:1000000:5", "--at", "0"], "model,exponent,r_squared,n_min,n_max,points"),
        ("norming", &["--dist", weibull, "--n", "1000,1000000"], "n,a_exact,b_exact,a_closed,b_closed,ratio_gap,shift_gap"),
        ("check-identity", &["--dist", weibull, "--n", "1000000", "--tol", "1e-10"], "n,x,exact,two_term,abs_gap"),
        ("simulate", &["--dist", "exp", "--n", "1000", "--replications", "200", "--seed", "7"], "replication,scaled_max"),
    ];
    for (cmd, args, columns) in runs {
        let mut files = Vec::new();
        for round in 0..2 {
            let path = dir.path().join(format!("{cmd}-{round}.csv"));
            let mut full = vec![cmd];
            full.extend_from_slice(args);
            let path_str = path.to_str().unwrap().to_string();
            full.extend_from_slice(&["--out", &path_str]);
            let (code, _) = run_cli(&full);
            files.push((code, std::fs::read(&path).unwrap_or_default()));
        }
        let identical = files[0].1 == files[1].1 && !files[0].1.is_empty();
        let text = String::from_utf8_lossy(&files[0].1).to_string();
        let header_ok = text.lines().next().is_some_and(|l| l.starts_with("# evt-accompany v") && l.ends_with(&format!("cmd={cmd}")));
        let schema_ok = text.lines().find(|l| !l.starts_with('#')) == Some(columns);
        out.check(
            files[0].0 == 0 && identical && header_ok && schema_ok,
            format!("{cmd}: exit {}, identical={identical}, header={header_ok}, schema={schema_ok}", files[0].0),
        );
    }
    let forced: [(&[&str], i32, &str); 3] = [
        (&["table", "--dist", "gamma:1", "--n", "100"], 2, "parse"),
        (&["table", "--dist", "exp", "--n", "1"], 3, "domain"),
        (&["check-identity", "--dist", weibull, "--n", "1000", "--tol", "0"], 4, "numerical"),
    ];
    for (args, expected, class) in forced {
        let (code, _) = run_cli(args);
        out.check(code == expected, format!("{class} error: exit {code} (expected {expected})"));
    }
    out
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("master identity", master_identity),
        ("power rate of the accompanying law", power_rate),
        ("logarithmic Gumbel rate", gumbel_log_rate),
        ("correction formulas", correction_formulas),
        ("norming closed forms", norming_closed_forms),
        ("exponential exactness", exponential_exactness),
        ("cross-route γ agreement", gamma_routes),
        ("Monte Carlo sanity", monte_carlo),
        ("CLI determinism and schema", cli_contract),
    ];
    let verbose = std::env::var_os("ACCEPTANCE_QUIET").is_none();
    let mut failed = Vec::new();
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = criterion();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {} [{status}] {name}: {} ({:.1} s)",
            i + 1,
            outcome.summary,
            start.elapsed().as_secs_f64()
        );
        if verbose {
            for line in &outcome.details {
                println!("    {line}");
            }
        }
        if !outcome.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
    } else {
        println!("acceptance: {} of {} criteria fail: {failed:?}", failed.len(), criteria.len());
        std::process::exit(1);
    }
}
