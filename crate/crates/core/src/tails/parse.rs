//! Distribution-spec strings.
//!
//! ```text
//! exp
//! weibull:c=<f>,p=<f>,alpha=<f>,ell=const:<f>[,x0=<f>]
//! weibull:c=<f>,p=<f>,alpha=<f>,ell=logpow:<f>:<f>[,x0=<f>]
//! logweibull:c=<f>,p=<f>,alpha=<f>,ell=...[,x0=<f>]
//! iterlog:k=<int>,a=<f>,C=<f>[,x0=<f>]
//! ```
//!
//! Keys may appear in any order; each required key exactly once.

use std::collections::BTreeMap;
use std::str::FromStr;

use super::{DistributionSpec, SlowlyVarying};
use crate::error::{Error, Result};
use crate::scalar::Real;

fn parse_real<T: Real>(field: &str, text: &str) -> Result<T> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| Error::parse(field, format!("expected a real number, got {text:?}")))?;
    if !v.is_finite() {
        return Err(Error::parse(field, format!("value must be finite, got {text:?}")));
    }
    T::from_f64(v).ok_or_else(|| Error::parse(field, format!("{text:?} is not representable")))
}

fn parse_ell<T: Real>(text: &str) -> Result<SlowlyVarying<T>> {
    let parts: Vec<&str> = text.split(':').collect();
    let ell = match parts.as_slice() {
        ["const", ell0] => {
            let ell0 = parse_real("ell", ell0)?;
            SlowlyVarying::constant(ell0)
        }
        ["logpow", ell0, beta] => {
            let ell0 = parse_real("ell", ell0)?;
            let beta = parse_real("ell", beta)?;
            SlowlyVarying::log_power(ell0, beta)
        }
        _ => {
            return Err(Error::parse(
                "ell",
                format!("expected const:<f> or logpow:<f>:<f>, got {text:?}"),
            ))
        }
    };
    ell.map_err(|e| Error::parse("ell", domain_message(e)))
}

fn domain_message(e: Error) -> String {
    match e {
        Error::Domain(m) => m,
        other => other.to_string(),
    }
}

struct Params<'a> {
    family: &'a str,
    map: BTreeMap<&'a str, &'a str>,
}

impl<'a> Params<'a> {
    fn new(family: &'a str, body: &'a str, allowed: &[&str]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for item in body.split(',') {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::parse(family, format!("expected key=value, got {item:?}")))?;
            let key = key.trim();
            if !allowed.contains(&key) {
                return Err(Error::parse(
                    key,
                    format!("unknown key for {family} (allowed: {})", allowed.join(", ")),
                ));
            }
            if map.insert(key, value.trim()).is_some() {
                return Err(Error::parse(key, "key given more than once"));
            }
        }
        Ok(Params { family, map })
    }

    fn required(&self, key: &str) -> Result<&'a str> {
        self.map
            .get(key)
            .copied()
            .ok_or_else(|| Error::parse(key, format!("missing key for {}", self.family)))
    }

    fn real<T: Real>(&self, key: &str) -> Result<T> {
        parse_real(key, self.required(key)?)
    }

    fn positive<T: Real>(&self, key: &str) -> Result<T> {
        let v: T = self.real(key)?;
        if v > T::zero() {
            Ok(v)
        } else {
            Err(Error::parse(key, format!("must be positive, got {v}")))
        }
    }

    fn x0<T: Real>(&self) -> Result<Option<T>> {
        self.map.get("x0").map(|v| parse_real("x0", v)).transpose()
    }
}

/// Maps a constructor domain failure onto the field that carries the blame.
fn constructor_error(e: Error, x0_given: bool) -> Error {
    let field = if x0_given { "x0" } else { "dist" };
    Error::parse(field, domain_message(e))
}

impl<T: Real> FromStr for DistributionSpec<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, body) = match s.split_once(':') {
            Some((name, body)) => (name.trim(), Some(body)),
            None => (s, None),
        };
        match (name, body) {
            ("exp", None) => Ok(DistributionSpec::exponential()),
            ("exp", Some(_)) => Err(Error::parse("exp", "takes no parameters")),
            ("weibull" | "logweibull", Some(body)) => {
                let params = Params::new(name, body, &["c", "p", "alpha", "ell", "x0"])?;
                let c = params.positive("c")?;
                let p = params.positive("p")?;
                let alpha = params.real("alpha")?;
                let ell = parse_ell(params.required("ell")?)?;
                let x0 = params.x0()?;
                if name == "weibull" {
                    DistributionSpec::weibull_like(c, p, alpha, ell, x0)
                        .map_err(|e| constructor_error(e, x0.is_some()))
                } else {
                    if !(p > T::one()) {
                        return Err(Error::parse("p", format!("must exceed 1 for logweibull, got {p}")));
                    }
                    DistributionSpec::log_weibull_like(c, p, alpha, ell, x0)
                        .map_err(|e| constructor_error(e, x0.is_some()))
                }
            }
            ("iterlog", Some(body)) => {
                let params = Params::new(name, body, &["k", "a", "C", "x0"])?;
                let k_text = params.required("k")?;
                let k: u32 = k_text
                    .parse()
                    .map_err(|_| Error::parse("k", format!("expected an integer, got {k_text:?}")))?;
                if k < 2 {
                    return Err(Error::parse("k", format!("must be at least 2, got {k}")));
                }
                let a = params.positive("a")?;
                let scale = params.positive("C")?;
                let x0 = params.x0()?;
                DistributionSpec::iterated_log_scale(k, a, scale, x0).map_err(|e| match x0 {
                    Some(_) => constructor_error(e, true),
                    None => Error::parse("k", domain_message(e)),
                })
            }
            ("weibull" | "logweibull" | "iterlog", None) => {
                Err(Error::parse(name, "missing parameter list after ':'"))
            }
            _ => Err(Error::parse(
                "dist",
                format!("unknown family {name:?} (expected exp, weibull, logweibull or iterlog)"),
            )),
        }
    }
}
