//! Flat `key = value` run configuration.
//!
//! ```text
//! # lines starting with '#' are comments
//! n = 100000
//! seed = 42
//! a = 3.6
//! c = 0.9
//! mixing = 1, 0.5, 0, 1      # row-major a11, a12, a21, a22
//! output_dir = out
//! ```
//!
//! Every key is optional; unknown or repeated keys are errors.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::transforms::{Mixing2, MpaParams};
use crate::verify::{AuditConfig, MIN_CONTINUITY_PAIRS};

const KEYS: &[&str] = &[
    "n",
    "seed",
    "a",
    "c",
    "mixing",
    "bins_support",
    "min_count",
    "bins_uniformity",
    "bins_relation",
    "threshold_functional",
    "alpha",
    "l_max",
    "continuity_pairs",
    "swirl_bins",
    "output_dir",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub seed: u64,
    pub mpa: MpaParams,
    pub mixing: Mixing2,
    pub audit: AuditConfig,
    /// Radius bins inside the cutoff for the swirl profile.
    pub swirl_bins: usize,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 100_000,
            seed: 42,
            mpa: MpaParams::new(3.6, 0.9).expect("default parameters are valid"),
            mixing: Mixing2::default_shear(),
            audit: AuditConfig::default(),
            swirl_bins: 100,
            output_dir: PathBuf::from("out"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Accept `a = 0`, producing the degenerate identity automorphism.
    pub allow_degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigIssue {
    pub line: Option<usize>,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: `{}`: {}", self.key, self.message),
            None => write!(f, "`{}`: {}", self.key, self.message),
        }
    }
}

/// Every problem found while loading a configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub issues: Vec<ConfigIssue>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigError {}

/// Reads and validates a configuration file. A missing key takes its default.
pub fn load_config(path: &Path, options: LoadOptions) -> Result<RunConfig, super::RunError> {
    let text = std::fs::read_to_string(path).map_err(|source| super::RunError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(parse_config(&text, options)?)
}

pub fn parse_config(text: &str, options: LoadOptions) -> Result<RunConfig, ConfigError> {
    let mut issues = Vec::new();
    let mut entries: BTreeMap<&str, (usize, &str)> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            issues.push(ConfigIssue {
                line: Some(line),
                key: content.to_string(),
                message: "expected `key = value`".into(),
            });
            continue;
        };
        let key = key.trim();
        let value = unquote(value.trim());
        if !KEYS.contains(&key) {
            issues.push(ConfigIssue {
                line: Some(line),
                key: key.to_string(),
                message: "unknown key".into(),
            });
        } else if entries.insert(key, (line, value)).is_some() {
            issues.push(ConfigIssue {
                line: Some(line),
                key: key.to_string(),
                message: "key given more than once".into(),
            });
        }
    }

    let mut p = Parser {
        entries: &entries,
        issues: &mut issues,
    };
    let defaults = RunConfig::default();
    let n = p.get("n", defaults.n, |v: usize| v >= 1, "n ≥ 1");
    let seed = p.get("seed", defaults.seed, |_| true, "");
    let a = p.get("a", defaults.mpa.a(), f64::is_finite, "finite");
    let c = p.get(
        "c",
        defaults.mpa.c(),
        |v: f64| v > 0.0 && v < 1.0,
        "c ∈ (0,1)",
    );
    let mixing_rows = p.get_mixing(defaults.mixing.rows());
    let d = defaults.audit;
    let audit = AuditConfig {
        bins_support: p.get(
            "bins_support",
            d.bins_support,
            |v: usize| v >= 2,
            "bins_support ≥ 2",
        ),
        min_count: p.get("min_count", d.min_count, |v: usize| v >= 1, "min_count ≥ 1"),
        bins_uniformity: p.get(
            "bins_uniformity",
            d.bins_uniformity,
            |v: usize| v >= 2,
            "bins_uniformity ≥ 2",
        ),
        bins_relation: p.get(
            "bins_relation",
            d.bins_relation,
            |v: usize| v >= 2,
            "bins_relation ≥ 2",
        ),
        functional_threshold: p.get(
            "threshold_functional",
            d.functional_threshold,
            |v: f64| v > 0.0 && v <= 1.0,
            "threshold_functional ∈ (0,1]",
        ),
        alpha: p.get(
            "alpha",
            d.alpha,
            |v: f64| v > 0.0 && v < 1.0,
            "alpha ∈ (0,1)",
        ),
        l_max: p.get(
            "l_max",
            d.l_max,
            |v: f64| v > 0.0 && v.is_finite(),
            "l_max > 0",
        ),
        continuity_pairs: p.get(
            "continuity_pairs",
            d.continuity_pairs,
            |v: usize| v >= MIN_CONTINUITY_PAIRS,
            "continuity_pairs ≥ 100",
        ),
    };
    let swirl_bins = p.get(
        "swirl_bins",
        defaults.swirl_bins,
        |v: usize| v >= 1,
        "swirl_bins ≥ 1",
    );
    let output_dir = p.get_path("output_dir", defaults.output_dir);

    let mpa = if a == 0.0 && options.allow_degenerate {
        MpaParams::degenerate(c)
    } else {
        MpaParams::new(a, c)
    };
    let mpa = match mpa {
        Ok(m) => Some(m),
        Err(crate::Error::InvalidParameter {
            name, constraint, ..
        }) => {
            // c is already reported by its range check.
            if name == "a" {
                issues.push(ConfigIssue {
                    line: entries.get("a").map(|e| e.0),
                    key: "a".into(),
                    message: format!("violates {constraint}"),
                });
            }
            None
        }
        Err(e) => {
            issues.push(ConfigIssue {
                line: None,
                key: "a".into(),
                message: e.to_string(),
            });
            None
        }
    };
    let mixing = match Mixing2::from_rows(mixing_rows) {
        Ok(m) => Some(m),
        Err(e) => {
            issues.push(ConfigIssue {
                line: entries.get("mixing").map(|e| e.0),
                key: "mixing".into(),
                message: e.to_string(),
            });
            None
        }
    };

    match (mpa, mixing) {
        (Some(mpa), Some(mixing)) if issues.is_empty() => Ok(RunConfig {
            n,
            seed,
            mpa,
            mixing,
            audit,
            swirl_bins,
            output_dir,
        }),
        _ => Err(ConfigError { issues }),
    }
}

fn unquote(v: &str) -> &str {
    v.strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .unwrap_or(v)
}

struct Parser<'a, 'b> {
    entries: &'a BTreeMap<&'a str, (usize, &'a str)>,
    issues: &'b mut Vec<ConfigIssue>,
}

impl Parser<'_, '_> {
    fn issue(&mut self, key: &str, line: usize, message: String) {
        self.issues.push(ConfigIssue {
            line: Some(line),
            key: key.to_string(),
            message,
        });
    }

    fn get<T>(&mut self, key: &str, default: T, valid: impl Fn(T) -> bool, constraint: &str) -> T
    where
        T: std::str::FromStr + Copy,
    {
        let Some(&(line, raw)) = self.entries.get(key) else {
            return default;
        };
        match raw.parse::<T>() {
            Ok(v) if valid(v) => v,
            Ok(_) => {
                self.issue(key, line, format!("value `{raw}` violates {constraint}"));
                default
            }
            Err(_) => {
                self.issue(key, line, format!("cannot parse `{raw}`"));
                default
            }
        }
    }

    fn get_mixing(&mut self, default: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
        let Some(&(line, raw)) = self.entries.get("mixing") else {
            return default;
        };
        let cleaned: String = raw.chars().filter(|ch| !matches!(ch, '[' | ']')).collect();
        let values: Result<Vec<f64>, _> = cleaned
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect();
        match values {
            Ok(v) if v.len() == 4 && v.iter().all(|x| x.is_finite()) => {
                [[v[0], v[1]], [v[2], v[3]]]
            }
            _ => {
                self.issue(
                    "mixing",
                    line,
                    format!("expected four finite comma-separated reals, got `{raw}`"),
                );
                default
            }
        }
    }

    fn get_path(&mut self, key: &str, default: PathBuf) -> PathBuf {
        match self.entries.get(key) {
            Some(&(line, "")) => {
                self.issue(key, line, "path must not be empty".into());
                default
            }
            Some(&(_, raw)) => PathBuf::from(raw),
            None => default,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn messages(err: &ConfigError) -> String {
        err.to_string()
    }

    #[test]
    fn empty_file_gives_defaults() {
        let cfg = parse_config("", LoadOptions::default()).unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.mpa.a(), 3.6);
        assert_eq!(cfg.mpa.c(), 0.9);
        assert_eq!(cfg.n, 100_000);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.mixing.rows(), [[1.0, 0.5], [0.0, 1.0]]);
    }

    #[test]
    fn full_file() {
        let text = "\
# comment
n = 5000
seed = 7
a = -2.5
c = 0.5   # trailing comment
mixing = [[2, 0], [0.5, 1]]
bins_support = 8
min_count = 3
bins_uniformity = 6
bins_relation = 20
threshold_functional = 0.02
alpha = 0.01
l_max = 50
continuity_pairs = 200
swirl_bins = 40
output_dir = \"results/run 1\"
";
        let cfg = parse_config(text, LoadOptions::default()).unwrap();
        assert_eq!(cfg.n, 5000);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.mpa.a(), -2.5);
        assert_eq!(cfg.mixing.rows(), [[2.0, 0.0], [0.5, 1.0]]);
        assert_eq!(cfg.audit.bins_relation, 20);
        assert_eq!(cfg.audit.continuity_pairs, 200);
        assert_eq!(cfg.output_dir, PathBuf::from("results/run 1"));
    }

    #[test]
    fn cutoff_out_of_range() {
        let err = parse_config("c = 1.5", LoadOptions::default()).unwrap_err();
        assert!(messages(&err).contains("c ∈ (0,1)"), "{err}");
        assert_eq!(err.issues.len(), 1);
        assert_eq!(err.issues[0].key, "c");
    }

    #[test]
    fn zero_rate_rejected_unless_degenerate_allowed() {
        let err = parse_config("a = 0", LoadOptions::default()).unwrap_err();
        assert!(messages(&err).contains("a ≠ 0"), "{err}");
        let cfg = parse_config(
            "a = 0",
            LoadOptions {
                allow_degenerate: true,
            },
        )
        .unwrap();
        assert!(cfg.mpa.is_degenerate());
    }

    #[test]
    fn unknown_and_duplicate_keys() {
        let err = parse_config("colour = red\nn = 5\nn = 6", LoadOptions::default()).unwrap_err();
        assert_eq!(err.issues.len(), 2);
        assert!(messages(&err).contains("unknown key"));
        assert!(messages(&err).contains("more than once"));
    }

    #[test]
    fn reports_every_violation() {
        let err = parse_config(
            "n = 0\nc = 2\nmixing = 1, 2, 2, 4\nalpha = x",
            LoadOptions::default(),
        )
        .unwrap_err();
        let keys: Vec<_> = err.issues.iter().map(|i| i.key.as_str()).collect();
        assert_eq!(keys.len(), 4, "{err}");
        for k in ["n", "c", "mixing", "alpha"] {
            assert!(keys.contains(&k), "{err}");
        }
    }

    #[test]
    fn malformed_line() {
        let err = parse_config("just words", LoadOptions::default()).unwrap_err();
        assert_eq!(err.issues[0].line, Some(1));
    }
}
