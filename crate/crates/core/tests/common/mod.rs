#![allow(dead_code)]

use evt_accompany::{Distribution, DistributionSpec, SlowlyVarying};

pub fn weibull(c: f64, p: f64, alpha: f64, x0: Option<f64>) -> Distribution {
    DistributionSpec::weibull_like(c, p, alpha, SlowlyVarying::one(), x0).unwrap()
}

pub fn pure_weibull(p: f64) -> Distribution {
    weibull(1.0, p, 0.0, Some(0.0))
}

pub fn log_weibull(c: f64, p: f64, alpha: f64) -> Distribution {
    DistributionSpec::log_weibull_like(c, p, alpha, SlowlyVarying::one(), None).unwrap()
}

/// One representative of every built-in family, with a label.
pub fn built_in() -> Vec<(&'static str, Distribution)> {
    let log_power = SlowlyVarying::log_power(1.0, 1.0).unwrap();
    vec![
        ("exp", DistributionSpec::exponential()),
        ("weibull p=0.5", pure_weibull(0.5)),
        ("weibull p=2", pure_weibull(2.0)),
        ("weibull p=2 alpha=2", weibull(1.0, 2.0, 2.0, Some(1.5))),
        ("weibull p=1 alpha=-1", weibull(1.0, 1.0, -1.0, None)),
        (
            "weibull p=3 logpow",
            DistributionSpec::weibull_like(1.0, 3.0, 0.0, log_power.clone(), Some(1.5)).unwrap(),
        ),
        ("logweibull p=2", log_weibull(1.0, 2.0, 0.0)),
        ("logweibull p=2 alpha=1", log_weibull(1.0, 2.0, 1.0)),
        (
            "logweibull p=2 logpow",
            DistributionSpec::log_weibull_like(1.0, 2.0, 0.0, log_power, None).unwrap(),
        ),
        ("iterlog k=2", DistributionSpec::iterated_log_scale(2, 1.0, 1.0, None).unwrap()),
    ]
}

/// `1/n` lies within the tail mass above `x0`.
pub fn admissible(d: &Distribution, n: u64) -> bool {
    1.0 / n as f64 <= d.tail(d.x0()).unwrap()
}
