use serde::{Deserialize, Serialize};

/// Environment variable naming the config file.
pub const CONFIG_ENV: &str = "THICKCALC_CONFIG";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub window_radius: i64,
    pub witness_bound: u64,
    pub dfs_cap: usize,
    /// Bits of interval refinement for non-surd irrationals.
    pub precision: u32,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config { window_radius: 10_000, witness_bound: 100_000, dfs_cap: 64, precision: 256, seed: 0 }
    }
}

impl Config {
    /// `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Config, String> {
        let mut c = Config::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", no + 1))?;
            let (k, v) = (k.trim(), v.trim());
            let bad = |e: std::num::ParseIntError| format!("line {}: {k}: {e}", no + 1);
            match k {
                "window_radius" => c.window_radius = v.parse().map_err(bad)?,
                "witness_bound" => c.witness_bound = v.parse().map_err(bad)?,
                "dfs_cap" => c.dfs_cap = v.parse().map_err(bad)?,
                "precision" => c.precision = v.parse().map_err(bad)?,
                "seed" => c.seed = v.parse().map_err(bad)?,
                _ => return Err(format!("line {}: unknown key {k}", no + 1)),
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.window_radius <= 0 || self.witness_bound == 0 || self.dfs_cap == 0 || self.precision == 0 {
            return Err("window_radius, witness_bound, dfs_cap and precision must be positive".into());
        }
        Ok(())
    }

    pub fn load(path: Option<&str>) -> Result<Config, String> {
        let path = match path {
            Some(p) => p.to_string(),
            None => match std::env::var(CONFIG_ENV) {
                Ok(p) if !p.is_empty() => p,
                _ => return Ok(Config::default()),
            },
        };
        let text = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
        Config::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let c = Config::parse("# comment\nwindow_radius = 50\nseed=7  # trailing\n\n").unwrap();
        assert_eq!(c.window_radius, 50);
        assert_eq!(c.seed, 7);
        assert_eq!(c.witness_bound, 100_000);
        assert!(Config::parse("dfs_cap = 0").is_err());
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("seed 4").is_err());
        assert!(Config::parse("seed = -1").is_err());
    }
}
