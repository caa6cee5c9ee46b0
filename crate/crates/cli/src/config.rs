//! Run configuration: JSON file, command-line flags, and their merge.
//!
//! ```json
//! {
//!   "interaction": {"alpha": 50, "beta": 0, "gamma": "0+0i"},
//!   "channel": {"l": 0, "radius": 1},
//!   "search": {"re_max": 40, "im_min": "auto"},
//!   "outputs": {"csv_path": "poles.csv", "svg_path": null, "table": false},
//!   "tolerances": {"residual": 1e-9, "dedupe": 1e-8}
//! }
//! ```
//!
//! `interaction` may also be an array of such objects to overlay several
//! couplings in one run. Every section and key is optional.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use winterres_core::{default_im_min, Channel, GpiParams, PoleSearch, SearchRegion};

use crate::complex::{format_complex, parse_complex};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InteractionConfig {
    pub alpha: f64,
    pub beta: f64,
    #[serde(serialize_with = "ser_gamma", deserialize_with = "de_gamma")]
    pub gamma: Complex64,
}

impl InteractionConfig {
    pub fn params(&self) -> GpiParams {
        GpiParams::new(self.alpha, self.beta, self.gamma)
    }
}

impl From<GpiParams> for InteractionConfig {
    fn from(p: GpiParams) -> Self {
        Self {
            alpha: p.alpha,
            beta: p.beta,
            gamma: p.gamma,
        }
    }
}

impl fmt::Display for InteractionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={},beta={},gamma={}", self.alpha, self.beta, format_complex(self.gamma))
    }
}

/// `alpha=50`, `gamma=1+1i`, `alpha=1,beta=0.2,gamma=0.5-0.1i`; unspecified
/// couplings are zero.
impl FromStr for InteractionConfig {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = InteractionConfig::default();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| format!("expected key=value in interaction '{s}', got '{item}'"))?;
            let real = || {
                value
                    .trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| format!("invalid number '{value}' for {key}"))
            };
            match key.trim() {
                "alpha" => out.alpha = real()?,
                "beta" => out.beta = real()?,
                "gamma" => out.gamma = parse_complex(value)?,
                other => return Err(format!("unknown interaction key '{other}'")),
            }
        }
        Ok(out)
    }
}

fn ser_gamma<S: Serializer>(g: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_complex(*g))
}

fn de_gamma<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Real(f64),
        Text(String),
    }
    match Repr::deserialize(d)? {
        Repr::Real(v) => Ok(Complex64::new(v, 0.0)),
        Repr::Text(t) => parse_complex(&t).map_err(serde::de::Error::custom),
    }
}

/// One interaction or a list of them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Interactions {
    One(InteractionConfig),
    Many(Vec<InteractionConfig>),
}

impl Default for Interactions {
    fn default() -> Self {
        Interactions::One(InteractionConfig::default())
    }
}

impl Interactions {
    pub fn to_vec(&self) -> Vec<InteractionConfig> {
        match self {
            Interactions::One(i) => vec![*i],
            Interactions::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChannelConfig {
    pub l: u32,
    pub radius: f64,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self { l: 0, radius: 1.0 }
    }
}

/// Lower edge of the search window: a number or `"auto"`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ImMin {
    #[default]
    Auto,
    Value(f64),
}

impl Serialize for ImMin {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ImMin::Auto => s.serialize_str("auto"),
            ImMin::Value(v) => s.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for ImMin {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Value(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Value(v) => Ok(ImMin::Value(v)),
            Repr::Text(t) if t == "auto" => Ok(ImMin::Auto),
            Repr::Text(t) => Err(serde::de::Error::custom(format!(
                "im_min must be a number or \"auto\", got \"{t}\""
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SearchConfig {
    pub re_max: f64,
    pub im_min: ImMin,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            re_max: 40.0,
            im_min: ImMin::Auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputsConfig {
    pub csv_path: Option<PathBuf>,
    pub svg_path: Option<PathBuf>,
    pub table: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TolerancesConfig {
    pub residual: f64,
    pub dedupe: f64,
}

impl Default for TolerancesConfig {
    fn default() -> Self {
        let s = PoleSearch::default();
        Self {
            residual: s.residual_tol,
            dedupe: s.dedupe_tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub interaction: Interactions,
    pub channel: ChannelConfig,
    pub search: SearchConfig,
    pub outputs: OutputsConfig,
    pub tolerances: TolerancesConfig,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    pub fn interactions(&self) -> Vec<InteractionConfig> {
        self.interaction.to_vec()
    }

    pub fn channel(&self) -> Result<Channel, CliError> {
        Channel::new(self.channel.l, self.channel.radius).map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn pole_search(&self) -> PoleSearch {
        PoleSearch {
            residual_tol: self.tolerances.residual,
            dedupe_tol: self.tolerances.dedupe,
            ..PoleSearch::default()
        }
    }

    /// The search window `[10⁻³/R, re_max] × [im_min, 0]`.
    pub fn region(&self) -> Result<SearchRegion, CliError> {
        let ch = self.channel()?;
        let re_min = 1e-3 / ch.radius;
        let re_max = self.search.re_max;
        if !(re_max > re_min) {
            return Err(CliError::Usage(format!("re_max must exceed 1e-3/R = {re_min}, got {re_max}")));
        }
        let im_min = match self.search.im_min {
            ImMin::Auto => default_im_min(&ch, re_max),
            ImMin::Value(v) => v,
        };
        SearchRegion::new(re_min, re_max, im_min, 0.0).map_err(|e| CliError::Usage(e.to_string()))
    }

    /// Checks everything that can be checked before any numerical work.
    pub fn validate(&self) -> Result<(), CliError> {
        let interactions = self.interactions();
        if interactions.is_empty() {
            return Err(CliError::Usage("at least one interaction is required".into()));
        }
        for i in &interactions {
            if !i.params().is_finite() {
                return Err(CliError::Usage(format!("non-finite coupling in {i}")));
            }
        }
        self.region()?;
        let t = &self.tolerances;
        if !(t.residual > 0.0 && t.dedupe > 0.0) {
            return Err(CliError::Usage("tolerances must be positive".into()));
        }
        for path in [&self.outputs.csv_path, &self.outputs.svg_path].into_iter().flatten() {
            check_writable(path)?;
        }
        Ok(())
    }
}

fn check_writable(path: &Path) -> Result<(), CliError> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if !parent.is_dir() {
        return Err(CliError::Usage(format!(
            "output directory {} does not exist",
            parent.display()
        )));
    }
    if path.is_dir() {
        return Err(CliError::Usage(format!("output path {} is a directory", path.display())));
    }
    Ok(())
}

/// Command-line values that override the configuration file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<Complex64>,
    pub interactions: Vec<InteractionConfig>,
    pub l: Option<u32>,
    pub radius: Option<f64>,
    pub re_max: Option<f64>,
    pub im_min: Option<f64>,
    pub csv_path: Option<PathBuf>,
    pub svg_path: Option<PathBuf>,
    pub table: bool,
}

impl Overrides {
    /// Flags win over file values. Repeated `--interaction` flags replace the
    /// interaction list; `--alpha`/`--beta`/`--gamma` then adjust every entry.
    pub fn apply(&self, mut cfg: RunConfig) -> RunConfig {
        if !self.interactions.is_empty() {
            cfg.interaction = Interactions::Many(self.interactions.clone());
        }
        if self.alpha.is_some() || self.beta.is_some() || self.gamma.is_some() {
            let mut list = cfg.interactions();
            for i in &mut list {
                i.alpha = self.alpha.unwrap_or(i.alpha);
                i.beta = self.beta.unwrap_or(i.beta);
                i.gamma = self.gamma.unwrap_or(i.gamma);
            }
            cfg.interaction = match list.len() {
                1 => Interactions::One(list[0]),
                _ => Interactions::Many(list),
            };
        }
        if let Some(l) = self.l {
            cfg.channel.l = l;
        }
        if let Some(r) = self.radius {
            cfg.channel.radius = r;
        }
        if let Some(v) = self.re_max {
            cfg.search.re_max = v;
        }
        if let Some(v) = self.im_min {
            cfg.search.im_min = ImMin::Value(v);
        }
        if self.csv_path.is_some() {
            cfg.outputs.csv_path = self.csv_path.clone();
        }
        if self.svg_path.is_some() {
            cfg.outputs.svg_path = self.svg_path.clone();
        }
        cfg.outputs.table |= self.table;
        cfg
    }
}
