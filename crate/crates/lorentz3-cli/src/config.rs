//! Run configuration: JSON, UTF-8, lower_snake_case keys, strict parsing.
//! Trig-polynomial coefficients are exact rationals serialized as strings
//! ("3/2", "-1", "0"), so configs carry no float-formatting drift.

use serde::{Deserialize, Serialize};

use lorentz3::models::{self, CatalogModel, TrigPoly, TrigTerm};

#[derive(Debug)]
pub enum ConfigError {
    Parse(String),
    BadRational(String),
    BadModel(String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Parse(e) => write!(f, "config parse error: {e}"),
            ConfigError::BadRational(s) => write!(f, "bad rational literal: {s:?}"),
            ConfigError::BadModel(e) => write!(f, "invalid model: {e}"),
        }
    }
}

impl std::error::Error for ConfigError {}

/// A rational number kept as its literal string form ("p", "p/q").
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(transparent)]
pub struct Rational(pub String);

impl Rational {
    pub fn value(&self) -> Result<f64, ConfigError> {
        let s = self.0.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| ConfigError::BadRational(self.0.clone()))
        };
        if let Some((num, den)) = s.split_once('/') {
            let d = parse(den)?;
            if d == 0 {
                return Err(ConfigError::BadRational(self.0.clone()));
            }
            Ok(parse(num)? as f64 / d as f64)
        } else {
            Ok(parse(s)? as f64)
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TrigTermConfig {
    pub k: u32,
    pub cos: Rational,
    pub sin: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TrigPolyConfig {
    pub terms: Vec<TrigTermConfig>,
}

impl TrigPolyConfig {
    /// 2 + cos(2 pi t), the catalog default.
    pub fn two_plus_cos() -> Self {
        TrigPolyConfig {
            terms: vec![
                TrigTermConfig { k: 0, cos: Rational("2".into()), sin: Rational("0".into()) },
                TrigTermConfig { k: 1, cos: Rational("1".into()), sin: Rational("0".into()) },
            ],
        }
    }

    pub fn constant(c: &str) -> Self {
        TrigPolyConfig {
            terms: vec![TrigTermConfig {
                k: 0,
                cos: Rational(c.into()),
                sin: Rational("0".into()),
            }],
        }
    }

    pub fn build(&self) -> Result<TrigPoly<f64>, ConfigError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(TrigTerm { freq: t.k, cos: t.cos.value()?, sin: t.sin.value()? });
        }
        Ok(TrigPoly::new(terms))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, rename_all = "snake_case", tag = "family")]
pub enum ModelConfig {
    FlatDiag,
    FlatNull,
    GA { a: TrigPolyConfig },
    HA { a: TrigPolyConfig },
    HeisNormalForm { beta: TrigPolyConfig, gamma: TrigPolyConfig },
    LorentzHeisenberg,
}

impl ModelConfig {
    pub fn build(&self) -> Result<CatalogModel<f64>, ConfigError> {
        let model = match self {
            ModelConfig::FlatDiag => models::make_flat(models::FlatVariant::MinkowskiDiag),
            ModelConfig::FlatNull => models::make_flat(models::FlatVariant::NullFrame),
            ModelConfig::GA { a } => models::make_g_a(&a.build()?)
                .map_err(|e| ConfigError::BadModel(e.to_string()))?,
            ModelConfig::HA { a } => models::make_h_a(&a.build()?)
                .map_err(|e| ConfigError::BadModel(e.to_string()))?,
            ModelConfig::HeisNormalForm { beta, gamma } => {
                models::make_heis_normal_form(&beta.build()?, &gamma.build()?)
                    .map_err(|e| ConfigError::BadModel(e.to_string()))?
            }
            ModelConfig::LorentzHeisenberg => models::make_lorentz_heisenberg_chart(),
        };
        Ok(model)
    }

    /// The trig coefficient attached to the family, if any (for flow and
    /// return-time commands).
    pub fn coefficient(&self) -> Result<Option<TrigPoly<f64>>, ConfigError> {
        Ok(match self {
            ModelConfig::GA { a } | ModelConfig::HA { a } => Some(a.build()?),
            ModelConfig::HeisNormalForm { beta, .. } => Some(beta.build()?),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub points_per_axis: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { points_per_axis: 9 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ToleranceConfig {
    /// singular values above rank_tol * sigma_max count toward the rank
    pub rank_tol: f64,
    /// |q| below parabolic_tol * |u|^2 types an element as parabolic
    pub parabolic_tol: f64,
    /// generic zero threshold relative to the metric scale
    pub zero_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig { rank_tol: 1e-6, parabolic_tol: 1e-10, zero_tol: 1e-9 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FlowConfig {
    pub start: [f64; 3],
    pub velocity: [f64; 3],
    pub length: f64,
    pub step: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig { start: [0.0, 0.0, 0.0], velocity: [1.0, 0.0, 0.0], length: 2.0, step: 1e-3 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub tolerances: ToleranceConfig,
    #[serde(default = "default_jet_order")]
    pub jet_order: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub flow: Option<FlowConfig>,
    #[serde(default)]
    pub out: Option<String>,
}

fn default_jet_order() -> usize {
    2
}

fn default_seed() -> u64 {
    42
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            model: ModelConfig::GA { a: TrigPolyConfig::two_plus_cos() },
            grid: GridConfig::default(),
            tolerances: ToleranceConfig::default(),
            jet_order: 2,
            seed: 42,
            flow: None,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig =
            serde_json::from_str(s).map_err(|e| ConfigError::Parse(e.to_string()))?;
        if cfg.jet_order == 0 || cfg.jet_order > 2 {
            return Err(ConfigError::Parse(format!(
                "jet_order must be 1 or 2, got {}",
                cfg.jet_order
            )));
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}
