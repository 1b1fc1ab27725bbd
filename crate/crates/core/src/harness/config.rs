//! Flat `key = value` network configuration files.
//!
//! Keys mirror [`NetworkConfig`] fields. Scalar keys accept a `_db` suffix
//! for values given in dB; `p_max` sets both power caps. Ranges are written
//! `lo, hi`. Blank lines and `#` comments are ignored.

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{db_to_linear, NetworkConfig, VarianceRange};

const SCALARS: &[&str] = &[
    "zeta",
    "sigma2_relay",
    "sigma2_dest",
    "sigma2_pu",
    "var_sr",
    "var_rd",
    "var_sd",
    "var_rr",
    "p_s_max",
    "p_r_max",
    "p_max",
    "i_bar_p",
    "sampling_freq",
];

pub fn load_config(path: &Path) -> Result<NetworkConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

/// Parses a configuration, starting from the defaults, and validates it.
pub fn parse_config(text: &str) -> Result<NetworkConfig> {
    let mut config = NetworkConfig::default();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| Error::config(Some(line), None, format!("expected `key = value`, got `{body}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let (base, in_db) = match key.strip_suffix("_db") {
            Some(b) => (b, true),
            None => (key, false),
        };
        if !seen.insert(base.to_string()) {
            return Err(Error::config(Some(line), Some(key), "set more than once"));
        }
        let err = |msg: String| Error::config(Some(line), Some(key), msg);
        let number = |s: &str| -> Result<f64> {
            let v: f64 = s.trim().parse().map_err(|_| err(format!("`{s}` is not a number")))?;
            Ok(if in_db { db_to_linear(v) } else { v })
        };
        match base {
            "num_relays" if !in_db => {
                config.num_relays = value.parse().map_err(|_| err(format!("`{value}` is not a count")))?;
            }
            "var_sp_range" | "var_rp_range" => {
                let (lo, hi) = value
                    .split_once(',')
                    .ok_or_else(|| err("expected `lo, hi`".to_string()))?;
                let r = VarianceRange::new(number(lo)?, number(hi)?);
                if base == "var_sp_range" {
                    config.var_sp_range = r;
                } else {
                    config.var_rp_range = r;
                }
            }
            b if SCALARS.contains(&b) => {
                let v = number(value)?;
                match b {
                    "zeta" => config.zeta = v,
                    "sigma2_relay" => config.sigma2_relay = v,
                    "sigma2_dest" => config.sigma2_dest = v,
                    "sigma2_pu" => config.sigma2_pu = v,
                    "var_sr" => config.var_sr = v,
                    "var_rd" => config.var_rd = v,
                    "var_sd" => config.var_sd = v,
                    "var_rr" => config.var_rr = v,
                    "p_s_max" => config.p_s_max = v,
                    "p_r_max" => config.p_r_max = v,
                    "p_max" => {
                        config.p_s_max = v;
                        config.p_r_max = v;
                    }
                    "i_bar_p" => config.i_bar_p = v,
                    _ => config.sampling_freq = v,
                }
            }
            _ => return Err(err("unknown key".to_string())),
        }
    }
    if seen.contains("p_max") && (seen.contains("p_s_max") || seen.contains("p_r_max")) {
        return Err(Error::config(None, Some("p_max"), "conflicts with p_s_max / p_r_max"));
    }
    config.validate().map_err(|e| match e {
        Error::InvalidConfig(m) => Error::config(None, None, m),
        other => other,
    })?;
    Ok(config)
}
