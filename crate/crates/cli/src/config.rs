use std::path::Path;

use anyhow::{bail, Context};

/// Settings from a `key = value` file; command-line flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Config {
    pub prover: Option<String>,
    pub timeout: Option<u64>,
    pub jobs: Option<usize>,
    pub max_worlds: Option<usize>,
    pub max_ind: Option<usize>,
    pub max_regions: Option<usize>,
    pub mode: Option<String>,
    pub run_dir: Option<String>,
}

impl Config {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut c = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected `key = value`", i + 1);
            };
            let (key, value) = (key.trim(), value.trim().trim_matches('"').to_string());
            let num = |v: &str| v.parse::<u64>().with_context(|| format!("line {}: `{key}` needs a number", i + 1));
            match key {
                "prover" => c.prover = Some(value),
                "timeout" => c.timeout = Some(num(&value)?),
                "jobs" => c.jobs = Some(num(&value)? as usize),
                "max_worlds" => c.max_worlds = Some(num(&value)? as usize),
                "max_ind" => c.max_ind = Some(num(&value)? as usize),
                "max_regions" => c.max_regions = Some(num(&value)? as usize),
                "mode" => c.mode = Some(value),
                "run_dir" => c.run_dir = Some(value),
                _ => bail!("line {}: unknown key `{key}`", i + 1),
            }
        }
        Ok(c)
    }
}
