//! Plain `key = value` configuration files for the bench and scaling
//! subcommands. `#` starts a comment; keys are case-insensitive.

use crate::bench::Algorithm;
use crate::gen::{EdgeBudget, WeightBound};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
}

fn invalid(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub n_left: usize,
    pub ratios: Vec<usize>,
    pub edge_rules: Vec<EdgeBudget>,
    pub weight_lo: i64,
    pub weight_hi: WeightBound,
    pub rounds: usize,
    pub algorithms: Vec<Algorithm>,
    pub seed: Option<u64>,
    pub greedy: bool,
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingConfig {
    pub e_values: Vec<usize>,
    pub l_factors: Vec<f64>,
    pub rounds: usize,
    pub weight_lo: i64,
    pub weight_hi: WeightBound,
    pub seed: Option<u64>,
}

impl Default for ScalingConfig {
    fn default() -> Self {
        Self {
            e_values: (1..=20).map(|k| k * 1000).collect(),
            l_factors: vec![
                1.0, 1.3, 1.7, 2.2, 2.8, 3.6, 4.6, 6.0, 7.7, 10.0, 13.0, 16.0, 20.0,
            ],
            rounds: 10,
            weight_lo: 1,
            weight_hi: WeightBound::NRightSquared,
            seed: None,
        }
    }
}

fn key_values(text: &str) -> Result<Vec<(usize, String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let stripped = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed = stripped.trim();
        if trimmed.is_empty() {
            continue;
        }
        let (key, value) = trimmed
            .split_once('=')
            .ok_or_else(|| invalid(line, "expected `key = value`"))?;
        out.push((
            line,
            key.trim().to_ascii_lowercase(),
            value.trim().to_string(),
        ));
    }
    Ok(out)
}

fn parse_list<T, F: Fn(&str) -> Option<T>>(
    line: usize,
    value: &str,
    what: &str,
    f: F,
) -> Result<Vec<T>, ConfigError> {
    let items: Result<Vec<T>, _> = value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| f(s).ok_or_else(|| invalid(line, format!("invalid {what} `{s}`"))))
        .collect();
    let items = items?;
    if items.is_empty() {
        return Err(invalid(line, format!("empty {what} list")));
    }
    Ok(items)
}

pub fn parse_edge_rule(s: &str) -> Option<EdgeBudget> {
    let (name, arg) = s.split_once(':')?;
    match name.trim().to_ascii_lowercase().as_str() {
        "c_lgr" | "clgr" => arg.trim().parse().ok().map(EdgeBudget::CLgR),
        "frac" => arg.trim().parse().ok().filter(|&k: &u64| k > 0).map(EdgeBudget::Frac),
        "fixed" => arg.trim().parse().ok().map(EdgeBudget::Fixed),
        _ => None,
    }
}

pub fn parse_weight_bound(s: &str) -> Option<WeightBound> {
    match s.trim() {
        "R" | "r" => Some(WeightBound::NRight),
        "R2" | "r2" | "R^2" | "r^2" => Some(WeightBound::NRightSquared),
        v => v.parse().ok().map(WeightBound::Fixed),
    }
}

pub fn parse_algorithm(s: &str) -> Option<Algorithm> {
    match s.trim().to_ascii_lowercase().as_str() {
        "kwok" => Some(Algorithm::Kwok),
        "kwok-sorted" => Some(Algorithm::KwokSorted),
        "hungarian" => Some(Algorithm::Hungarian),
        "hungarian-virtual" => Some(Algorithm::HungarianVirtual),
        "mcmf" => Some(Algorithm::Mcmf),
        _ => None,
    }
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Some(true),
        "false" | "no" | "off" | "0" => Some(false),
        _ => None,
    }
}

/// `lo:hi:step` inclusive range or a comma list.
fn parse_usize_values(line: usize, value: &str) -> Result<Vec<usize>, ConfigError> {
    if value.contains(':') {
        let parts: Vec<&str> = value.split(':').collect();
        if parts.len() != 3 {
            return Err(invalid(line, "range must be `start:stop:step`"));
        }
        let nums: Result<Vec<usize>, _> = parts.iter().map(|p| p.trim().parse()).collect();
        let nums = nums.map_err(|_| invalid(line, "invalid range bound"))?;
        let (start, stop, step) = (nums[0], nums[1], nums[2]);
        if step == 0 || start > stop {
            return Err(invalid(line, "empty range"));
        }
        Ok((start..=stop).step_by(step).collect())
    } else {
        parse_list(line, value, "count", |s| s.parse().ok())
    }
}

pub fn parse_bench_config(text: &str) -> Result<BenchConfig, ConfigError> {
    let mut n_left = None;
    let mut ratios = None;
    let mut edge_rules = None;
    let mut weight_lo = 1i64;
    let mut weight_hi = WeightBound::NRight;
    let mut rounds = 10usize;
    let mut algorithms = vec![
        Algorithm::Kwok,
        Algorithm::Hungarian,
        Algorithm::HungarianVirtual,
        Algorithm::Mcmf,
    ];
    let mut seed = None;
    let mut greedy = true;
    let mut parallel = false;

    for (line, key, value) in key_values(text)? {
        match key.as_str() {
            "n_left" => {
                n_left = Some(
                    value
                        .parse()
                        .map_err(|_| invalid(line, "invalid n_left"))?,
                )
            }
            "ratios" => ratios = Some(parse_list(line, &value, "ratio", |s| s.parse().ok())?),
            "edge_rules" => {
                edge_rules = Some(parse_list(line, &value, "edge rule", parse_edge_rule)?)
            }
            "weight_lo" => {
                weight_lo = value
                    .parse()
                    .map_err(|_| invalid(line, "invalid weight_lo"))?
            }
            "weight_hi" => {
                weight_hi = parse_weight_bound(&value)
                    .ok_or_else(|| invalid(line, "invalid weight_hi"))?
            }
            "rounds" => {
                rounds = value.parse().map_err(|_| invalid(line, "invalid rounds"))?;
                if rounds < 2 {
                    return Err(invalid(line, "rounds must be at least 2"));
                }
            }
            "algorithms" => {
                algorithms = parse_list(line, &value, "algorithm", parse_algorithm)?
            }
            "seed" => seed = Some(value.parse().map_err(|_| invalid(line, "invalid seed"))?),
            "greedy" => {
                greedy = parse_bool(&value).ok_or_else(|| invalid(line, "invalid greedy"))?
            }
            "parallel" => {
                parallel = parse_bool(&value).ok_or_else(|| invalid(line, "invalid parallel"))?
            }
            other => return Err(invalid(line, format!("unknown key `{other}`"))),
        }
    }

    Ok(BenchConfig {
        n_left: n_left.ok_or(ConfigError::MissingKey("n_left"))?,
        ratios: ratios.ok_or(ConfigError::MissingKey("ratios"))?,
        edge_rules: edge_rules.ok_or(ConfigError::MissingKey("edge_rules"))?,
        weight_lo,
        weight_hi,
        rounds,
        algorithms,
        seed,
        greedy,
        parallel,
    })
}

pub fn parse_scaling_config(text: &str) -> Result<ScalingConfig, ConfigError> {
    let mut cfg = ScalingConfig::default();
    for (line, key, value) in key_values(text)? {
        match key.as_str() {
            "e_values" => cfg.e_values = parse_usize_values(line, &value)?,
            "l_factors" => {
                cfg.l_factors = parse_list(line, &value, "factor", |s| s.parse().ok())?
            }
            "rounds" => {
                cfg.rounds = value.parse().map_err(|_| invalid(line, "invalid rounds"))?;
                if cfg.rounds < 1 {
                    return Err(invalid(line, "rounds must be at least 1"));
                }
            }
            "weight_lo" => {
                cfg.weight_lo = value
                    .parse()
                    .map_err(|_| invalid(line, "invalid weight_lo"))?
            }
            "weight_hi" => {
                cfg.weight_hi = parse_weight_bound(&value)
                    .ok_or_else(|| invalid(line, "invalid weight_hi"))?
            }
            "seed" => {
                cfg.seed = Some(value.parse().map_err(|_| invalid(line, "invalid seed"))?)
            }
            other => return Err(invalid(line, format!("unknown key `{other}`"))),
        }
    }
    Ok(cfg)
}
