//! Run configuration for the verification suites.
//!
//! Config files are flat key-value text: one `key = value` pair per line,
//! `#` comments. Recognized keys: `gammaParams` (a comma-separated list of
//! `(e,eta)` pairs), `searchRadius`, `randomSeed`, `outputFormat`.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {0}: expected `key = value`")]
    BadLine(usize),
    #[error("line {0}: unknown key `{1}`")]
    UnknownKey(usize, String),
    #[error("invalid value for {0}: {1}")]
    BadValue(&'static str, String),
    #[error("invalid gamma parameters ({0},{1}): {2}")]
    BadGammaEntry(i64, i64, &'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Markdown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// (e, eta) pairs; e even, eta = +-1, q = 3e - eta - 2 nonzero
    pub gamma_params: Vec<(i64, i64)>,
    pub search_radius: i64,
    pub random_seed: u64,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            // covers |q| in {1, 3, 5, 7, 9}: both the doubly-slice and the
            // obstructed regimes
            gamma_params: vec![(-2, 1), (-2, -1), (0, 1), (0, -1), (2, 1), (2, -1)],
            search_radius: 6,
            random_seed: 0,
            output_format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.search_radius < 1 {
            return Err(ConfigError::BadValue(
                "searchRadius",
                format!("{} (must be positive)", self.search_radius),
            ));
        }
        if self.gamma_params.is_empty() {
            return Err(ConfigError::BadValue("gammaParams", "empty list".into()));
        }
        for &(e, eta) in &self.gamma_params {
            if e % 2 != 0 {
                return Err(ConfigError::BadGammaEntry(e, eta, "e must be even"));
            }
            if eta != 1 && eta != -1 {
                return Err(ConfigError::BadGammaEntry(e, eta, "eta must be +1 or -1"));
            }
            if 3 * e - eta - 2 == 0 {
                return Err(ConfigError::BadGammaEntry(e, eta, "q = 3e - eta - 2 vanishes"));
            }
        }
        Ok(())
    }

    pub fn from_file(path: &std::path::Path) -> Result<RunConfig, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(ConfigError::BadLine(lineno))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "gammaParams" => cfg.gamma_params = parse_gamma_params(value)?,
                "searchRadius" => {
                    cfg.search_radius = value
                        .parse()
                        .map_err(|_| ConfigError::BadValue("searchRadius", value.into()))?;
                }
                "randomSeed" => {
                    cfg.random_seed = value
                        .parse()
                        .map_err(|_| ConfigError::BadValue("randomSeed", value.into()))?;
                }
                "outputFormat" => {
                    cfg.output_format = match value {
                        "json" => OutputFormat::Json,
                        "markdown" | "md" => OutputFormat::Markdown,
                        other => {
                            return Err(ConfigError::BadValue("outputFormat", other.into()))
                        }
                    };
                }
                other => return Err(ConfigError::UnknownKey(lineno, other.into())),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parse `(-2,1),(0,-1),...`; whitespace is free.
fn parse_gamma_params(value: &str) -> Result<Vec<(i64, i64)>, ConfigError> {
    let compact: String = value.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        rest = rest.strip_prefix(',').unwrap_or(rest);
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| ConfigError::BadValue("gammaParams", value.into()))?;
        let (pair, tail) = body
            .split_once(')')
            .ok_or_else(|| ConfigError::BadValue("gammaParams", value.into()))?;
        let (e, eta) = pair
            .split_once(',')
            .ok_or_else(|| ConfigError::BadValue("gammaParams", value.into()))?;
        let e = e
            .parse()
            .map_err(|_| ConfigError::BadValue("gammaParams", value.into()))?;
        let eta = eta
            .parse()
            .map_err(|_| ConfigError::BadValue("gammaParams", value.into()))?;
        out.push((e, eta));
        rest = tail;
    }
    if out.is_empty() {
        return Err(ConfigError::BadValue("gammaParams", value.into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn default_is_valid() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn file_parsing() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(
            f,
            "# comment\ngammaParams = (0,-1), (2, 1)\nsearchRadius = 4\nrandomSeed = 99\noutputFormat = markdown"
        )
        .unwrap();
        let cfg = RunConfig::from_file(f.path()).unwrap();
        assert_eq!(cfg.gamma_params, vec![(0, -1), (2, 1)]);
        assert_eq!(cfg.search_radius, 4);
        assert_eq!(cfg.random_seed, 99);
        assert_eq!(cfg.output_format, OutputFormat::Markdown);
    }

    #[test]
    fn rejections() {
        let bad = |body: &str| {
            let mut f = tempfile::NamedTempFile::new().unwrap();
            writeln!(f, "{}", body).unwrap();
            RunConfig::from_file(f.path()).is_err()
        };
        assert!(bad("gammaParams = (1,1)")); // odd e
        assert!(bad("gammaParams = (0,2)")); // eta not a sign
        assert!(bad("gammaParams = (1,-1)")); // odd e again
        assert!(bad("searchRadius = 0"));
        assert!(bad("mystery = 1"));
        assert!(bad("searchRadius")); // no `=`
    }

    #[test]
    fn q_zero_is_rejected() {
        // q = 3e - eta - 2 = 0 has no even-e solutions, so construct directly
        let cfg = RunConfig {
            gamma_params: vec![(1, 1)],
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
