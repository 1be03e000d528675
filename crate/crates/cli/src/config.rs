use std::path::Path;

use serde::Deserialize;

use qkadams::expr::ExprContext;
use qkadams::io::twist_from_json;
use qkadams::twistkit::TwistData;

pub const MAX_RANK: usize = 16;
pub const MAX_TRUNCATION: i64 = 16;
pub const MAX_EPS_ORDER: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Settings read from a TOML file; every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<usize>,
    pub truncation: Option<i64>,
    pub eps_order: Option<u32>,
    #[serde(default)]
    pub params: Vec<String>,
    pub format: Option<Format>,
    pub twist: Option<toml::Value>,
    pub twist_file: Option<String>,
}

/// The resolved run configuration.
#[derive(Debug)]
pub struct RunConfig {
    pub n: usize,
    pub truncation: i64,
    pub eps_order: u32,
    pub params: Vec<String>,
    pub format: Format,
    pub twist: Option<TwistData>,
}

#[derive(Debug)]
pub enum ConfigError {
    Malformed(String),
    TooLarge(String),
}

pub struct Overrides {
    pub config: Option<String>,
    pub n: Option<usize>,
    pub truncation: Option<i64>,
    pub eps_order: Option<u32>,
    pub params: Vec<String>,
    pub format: Option<Format>,
    pub twist: Option<String>,
}

fn read(path: &str) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|e| ConfigError::Malformed(format!("{path}: {e}")))
}

fn parse_twist_json(src: &str, origin: &str) -> Result<serde_json::Value, ConfigError> {
    serde_json::from_str(src).map_err(|e| {
        ConfigError::Malformed(format!("{origin}: line {}, column {}: {e}", e.line(), e.column()))
    })
}

impl RunConfig {
    pub fn resolve(o: Overrides) -> Result<RunConfig, ConfigError> {
        let file: FileConfig = match &o.config {
            Some(path) => {
                let src = read(path)?;
                toml::from_str(&src).map_err(|e| ConfigError::Malformed(format!("{path}: {e}")))?
            }
            None => FileConfig::default(),
        };
        let n = o.n.or(file.n).unwrap_or(2);
        let truncation = o.truncation.or(file.truncation).unwrap_or(3);
        let eps_order = o.eps_order.or(file.eps_order).unwrap_or(1);
        if n == 0 {
            return Err(ConfigError::Malformed("n must be at least 1".into()));
        }
        if truncation < 0 {
            return Err(ConfigError::Malformed("truncation must be nonnegative".into()));
        }
        if eps_order == 0 {
            return Err(ConfigError::Malformed("eps order must be at least 1".into()));
        }
        if n > MAX_RANK {
            return Err(ConfigError::TooLarge(format!("n = {n} exceeds the limit {MAX_RANK}")));
        }
        if truncation > MAX_TRUNCATION {
            return Err(ConfigError::TooLarge(format!(
                "truncation {truncation} exceeds the limit {MAX_TRUNCATION}"
            )));
        }
        if eps_order > MAX_EPS_ORDER {
            return Err(ConfigError::TooLarge(format!(
                "eps order {eps_order} exceeds the limit {MAX_EPS_ORDER}"
            )));
        }
        let mut params = file.params;
        for p in o.params {
            if !params.contains(&p) {
                params.push(p);
            }
        }
        let format = o.format.or(file.format).unwrap_or_default();
        let mut cfg = RunConfig {
            n,
            truncation,
            eps_order,
            params,
            format,
            twist: None,
        };
        let twist_json = match (&o.twist, &file.twist, &file.twist_file) {
            (Some(t), _, _) => {
                let trimmed = t.trim_start();
                if trimmed.starts_with('{') {
                    Some(parse_twist_json(t, "--twist")?)
                } else {
                    Some(parse_twist_json(&read(t)?, t)?)
                }
            }
            (None, Some(v), _) => Some(
                serde_json::to_value(v).map_err(|e| ConfigError::Malformed(format!("twist: {e}")))?,
            ),
            (None, None, Some(path)) => {
                let base = o.config.as_deref().and_then(|c| Path::new(c).parent());
                let full = match base {
                    Some(dir) if Path::new(path).is_relative() => dir.join(path),
                    _ => Path::new(path).to_path_buf(),
                };
                let full = full.to_string_lossy().into_owned();
                Some(parse_twist_json(&read(&full)?, &full)?)
            }
            _ => None,
        };
        if let Some(v) = twist_json {
            let t = twist_from_json(&v, &cfg.expr_context())
                .map_err(|e| ConfigError::Malformed(format!("twist data: {e}")))?;
            cfg.twist = Some(t);
        }
        Ok(cfg)
    }

    pub fn expr_context(&self) -> ExprContext {
        ExprContext::new(self.n)
            .with_eps_order(self.eps_order)
            .with_params(self.params.iter().cloned())
    }
}
