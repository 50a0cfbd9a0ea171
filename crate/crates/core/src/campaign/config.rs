//! Flat `key = value` hunt configuration files.

use std::collections::HashMap;

use super::hunt::{HuntConfig, RangeMode, ResonatorChoice};
use crate::error::{Result, ZrError};
use crate::zeta::ProgressionSpec;

const KEYS: &[&str] = &[
    "sigma", "alpha", "beta", "N", "range", "resonator", "x", "ell", "kappa", "gamma", "classes", "delta", "c",
    "precision", "seed", "top_fraction", "random_fraction", "output",
];

struct Entries {
    map: HashMap<String, (usize, String)>,
}

impl Entries {
    fn raw(&self, key: &str) -> Option<&(usize, String)> {
        self.map.get(key)
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some((line, v)) => v.parse().map(Some).map_err(|_| ZrError::Config {
                line: *line,
                msg: format!("cannot parse {key} = {v:?}"),
            }),
        }
    }

    fn require<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.parse(key)?.ok_or_else(|| ZrError::Config {
            line: 0,
            msg: format!("missing required key {key}"),
        })
    }

    fn line(&self, key: &str) -> usize {
        self.raw(key).map_or(0, |(l, _)| *l)
    }
}

fn tokenize(text: &str) -> Result<Entries> {
    let mut map = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (k, v) = content.split_once('=').ok_or_else(|| ZrError::Config {
            line,
            msg: format!("expected key = value, got {content:?}"),
        })?;
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            return Err(ZrError::Config {
                line,
                msg: format!("unknown key {k:?}"),
            });
        }
        if map.insert(k.to_string(), (line, v.to_string())).is_some() {
            return Err(ZrError::Config {
                line,
                msg: format!("duplicate key {k:?}"),
            });
        }
    }
    Ok(Entries { map })
}

/// Parse a hunt configuration. `sigma`, `alpha` and `N` are required.
pub fn parse_config(text: &str) -> Result<HuntConfig> {
    let e = tokenize(text)?;
    let sigma: f64 = e.require("sigma")?;
    let alpha: f64 = e.require("alpha")?;
    let beta: f64 = e.parse("beta")?.unwrap_or(0.0);
    let prog = ProgressionSpec::new(sigma, alpha, beta)?;
    let n_raw: f64 = e.require("N")?;
    if !(n_raw >= 1.0 && n_raw.fract() == 0.0 && n_raw < 2f64.powi(63)) {
        return Err(ZrError::Config {
            line: e.line("N"),
            msg: format!("N must be a positive integer, got {n_raw}"),
        });
    }
    let n = n_raw as u64;
    let range = match e.raw("range").map(|(_, v)| v.as_str()) {
        None | Some("thm11") => RangeMode::Thm11,
        Some("thm12_13") => RangeMode::Thm12_13,
        Some(other) => {
            return Err(ZrError::Config {
                line: e.line("range"),
                msg: format!("range must be thm11 or thm12_13, got {other:?}"),
            })
        }
    };
    let mut c = HuntConfig::new(prog, n, range);
    c.resonator = match e.raw("resonator").map(|(_, v)| v.as_str()) {
        None | Some("auto") => ResonatorChoice::Auto,
        Some("strip") => ResonatorChoice::Strip {
            x: e.require("x")?,
            ell: e.require("ell")?,
        },
        Some("sigma1") => ResonatorChoice::Sigma1 { x: e.require("x")? },
        Some("critical") => ResonatorChoice::Critical {
            kappa: e.parse("kappa")?.unwrap_or(0.4),
            gamma: e.parse("gamma")?.unwrap_or(0.5),
            classes: e.parse("classes")?.unwrap_or(4),
        },
        Some(other) => {
            return Err(ZrError::Config {
                line: e.line("resonator"),
                msg: format!("unknown resonator kind {other:?}"),
            })
        }
    };
    if let Some(v) = e.parse("delta")? {
        c.delta = v;
    }
    if let Some(v) = e.parse("c")? {
        c.c = v;
    }
    if let Some(v) = e.parse("precision")? {
        c.precision_target = v;
    }
    if let Some(v) = e.parse("seed")? {
        c.seed = v;
    }
    if let Some(v) = e.parse("top_fraction")? {
        c.top_fraction = v;
    }
    if let Some(v) = e.parse("random_fraction")? {
        c.random_fraction = v;
    }
    c.output_path = e.raw("output").map(|(_, v)| v.clone());
    c.validate()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_file() {
        let text = "# strip hunt\nsigma = 0.75\nalpha=1\nN = 1000 # trailing comment\n\nresonator = strip\nx = 7\nell = 2\nseed = 42\noutput = out.json\n";
        let c = parse_config(text).unwrap();
        assert_eq!(c.n, 1000);
        assert_eq!(c.resonator, ResonatorChoice::Strip { x: 7.0, ell: 2 });
        assert_eq!(c.seed, 42);
        assert_eq!(c.output_path.as_deref(), Some("out.json"));
        assert_eq!(c.range_mode, RangeMode::Thm11);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_config("sigma = 0.75\nalpha = 1\nbogus = 3\n").unwrap_err();
        assert!(matches!(e, ZrError::Config { line: 3, .. }));
        let e = parse_config("sigma = 0.75\nalpha = one\nN = 10\n").unwrap_err();
        assert!(matches!(e, ZrError::Config { line: 2, .. }));
        let e = parse_config("sigma = 0.75\nno equals\n").unwrap_err();
        assert!(matches!(e, ZrError::Config { line: 2, .. }));
        assert!(matches!(parse_config("alpha = 1\nN = 100\n"), Err(ZrError::Config { .. })));
    }

    #[test]
    fn critical_line_shift_rejected() {
        let e = parse_config("sigma = 0.5\nalpha = 1\nbeta = 0.5\nN = 1000\nrange = thm12_13\n").unwrap_err();
        assert!(matches!(e, ZrError::Beta { .. }));
    }
}
