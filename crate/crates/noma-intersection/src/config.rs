//! Plain-text key/value configuration files.
//!
//! The format is deliberately small: one `key = value` pair per line,
//! `#` starts a comment, blank lines and surrounding whitespace are
//! ignored. A scenario file carries the node, channel, and power-split
//! keys; a sweep file adds `sweep.*` keys and optionally `mc.*` keys to
//! attach Monte Carlo columns.
//!
//! Scenario keys: `s.x`, `s.y`, `r.x`, `r.y`, `d1.x`, `d1.y`, `d2.x`,
//! `d2.y` (meters, intersection at the origin), `alpha`, `lambda_x`,
//! `lambda_y`, `p`, `a1`, `a2`, `rate1`, `rate2`. The bundled files under
//! `configs/` are complete examples.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::monte_carlo::{Coupling, SlotModel, TrialConfig};
use crate::outage::Scheme;
use crate::scenario::{ChannelParams, NomaConfig, Position, Scenario};
use crate::sweep::{SweepSpec, SweepVariable};

const SCENARIO_KEYS: [&str; 16] = [
    "s.x", "s.y", "r.x", "r.y", "d1.x", "d1.y", "d2.x", "d2.y", "alpha", "lambda_x", "lambda_y",
    "p", "a1", "a2", "rate1", "rate2",
];

const SWEEP_KEYS: [&str; 3] = ["sweep.variable", "sweep.grid", "sweep.schemes"];
const MC_KEYS: [&str; 5] = [
    "mc.trials",
    "mc.seed",
    "mc.window",
    "mc.coupling",
    "mc.slot",
];

/// Raw `key = value` pairs of one file.
#[derive(Debug, Clone, Default)]
pub struct KeyValues {
    entries: BTreeMap<String, String>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<KeyValues> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                )));
            };
            let key = key.trim().to_ascii_lowercase();
            let value = value.trim().to_string();
            if value.is_empty() {
                return Err(Error::Config(format!(
                    "line {}: empty value for `{key}`",
                    lineno + 1
                )));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(Error::Config(format!(
                    "line {}: duplicate key `{key}`",
                    lineno + 1
                )));
            }
        }
        Ok(KeyValues { entries })
    }

    pub fn load(path: &Path) -> Result<KeyValues> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        KeyValues::parse(&text)
    }

    fn get(&self, key: &str) -> Result<&str> {
        self.entries
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::Config(format!("missing key `{key}`")))
    }

    fn number(&self, key: &str) -> Result<f64> {
        let raw = self.get(key)?;
        raw.parse::<f64>()
            .map_err(|_| Error::Config(format!("key `{key}`: `{raw}` is not a number")))
    }

    fn integer(&self, key: &str) -> Result<u64> {
        let raw = self.get(key)?;
        raw.parse::<u64>().map_err(|_| {
            Error::Config(format!("key `{key}`: `{raw}` is not a nonnegative integer"))
        })
    }

    fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    fn reject_unknown(&self, allowed: &[&[&str]]) -> Result<()> {
        for key in self.entries.keys() {
            if !allowed.iter().any(|set| set.contains(&key.as_str())) {
                return Err(Error::Config(format!("unknown key `{key}`")));
            }
        }
        Ok(())
    }
}

/// Build a [`Scenario`] from parsed key/values. Sweep and Monte Carlo keys
/// are tolerated and ignored so one file can describe a whole experiment.
pub fn scenario_from_values(kv: &KeyValues) -> Result<Scenario> {
    kv.reject_unknown(&[&SCENARIO_KEYS, &SWEEP_KEYS, &MC_KEYS])?;
    let channel = ChannelParams::new(
        kv.number("alpha")?,
        kv.number("lambda_x")?,
        kv.number("lambda_y")?,
        kv.number("p")?,
    )?;
    let noma = NomaConfig::from_split(
        kv.number("a1")?,
        kv.number("a2")?,
        kv.number("rate1")?,
        kv.number("rate2")?,
    )?;
    Scenario::new(
        Position::new(kv.number("s.x")?, kv.number("s.y")?),
        Position::new(kv.number("r.x")?, kv.number("r.y")?),
        Position::new(kv.number("d1.x")?, kv.number("d1.y")?),
        Position::new(kv.number("d2.x")?, kv.number("d2.y")?),
        channel,
        noma,
    )
}

/// Load a scenario from a config file.
pub fn load_scenario(path: &Path) -> Result<Scenario> {
    scenario_from_values(&KeyValues::load(path)?)
}

/// Parse a scenario from config text.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    scenario_from_values(&KeyValues::parse(text)?)
}

/// Optional `mc.*` block. Present when `mc.trials` is set.
pub fn trial_config_from_values(kv: &KeyValues) -> Result<Option<TrialConfig>> {
    if !kv.has("mc.trials") {
        return Ok(None);
    }
    let mut cfg = TrialConfig::new(
        kv.integer("mc.trials")?,
        if kv.has("mc.seed") {
            kv.integer("mc.seed")?
        } else {
            0
        },
    );
    if kv.has("mc.window") {
        cfg = cfg.with_window(kv.number("mc.window")?);
    }
    if kv.has("mc.coupling") {
        cfg = cfg.with_coupling(Coupling::parse(kv.get("mc.coupling")?)?);
    }
    if kv.has("mc.slot") {
        cfg = cfg.with_slot_model(SlotModel::parse(kv.get("mc.slot")?)?);
    }
    Ok(Some(cfg))
}

/// Build a [`SweepSpec`] from parsed key/values: the scenario keys form the
/// base, `sweep.variable` and `sweep.grid` are required, `sweep.schemes`
/// defaults to all four.
pub fn sweep_from_values(kv: &KeyValues) -> Result<SweepSpec> {
    let base = scenario_from_values(kv)?;
    let variable = SweepVariable::parse(kv.get("sweep.variable")?)?;
    let grid = kv
        .get("sweep.grid")?
        .split([',', ' '])
        .filter(|tok| !tok.is_empty())
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| Error::Config(format!("sweep.grid: `{tok}` is not a number")))
        })
        .collect::<Result<Vec<f64>>>()?;
    let schemes = if kv.has("sweep.schemes") {
        kv.get("sweep.schemes")?
            .split([',', ' '])
            .filter(|tok| !tok.is_empty())
            .map(Scheme::parse)
            .collect::<Result<Vec<Scheme>>>()?
    } else {
        Scheme::ALL.to_vec()
    };
    SweepSpec::new(variable, grid, schemes, base, trial_config_from_values(kv)?)
}

/// Load a sweep specification from a config file.
pub fn load_sweep(path: &Path) -> Result<SweepSpec> {
    sweep_from_values(&KeyValues::load(path)?)
}
