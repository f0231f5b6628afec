//! Flat key=value experiment configs with flag overrides and run manifests.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use crossparse::model::ModelDims;
use crossparse::strategy::SharingStrategy;
use crossparse::train::OptimizerChoice;

/// Seed override honored by every command (deterministic-mode override).
pub const SEED_ENV: &str = "CROSSPARSE_SEED";

/// What the `strategy` key asks for.
#[derive(Debug, Clone, PartialEq)]
pub enum RunKind {
    Single(SharingStrategy),
    Grid,
    Ours,
}

/// One experiment, fully resolved.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub languages: Vec<String>,
    pub train_paths: BTreeMap<String, PathBuf>,
    pub dev_paths: BTreeMap<String, PathBuf>,
    pub test_paths: BTreeMap<String, PathBuf>,
    pub run: RunKind,
    pub sample_size: usize,
    pub epochs: usize,
    pub seed: u64,
    pub word_dropout: f64,
    pub explore_from_epoch: usize,
    pub explore_prob: f64,
    pub margin: f64,
    pub learning_rate: f64,
    pub optimizer: OptimizerChoice,
    pub dims: ModelDims,
    pub out_dir: PathBuf,
    pub jobs: usize,
    pub shuffles: usize,
    /// Languages evaluated by the `ours` pipeline.
    pub targets: Vec<String>,
    pub stop_at_dev_las: Option<f64>,
}

fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected key = value, got {line:?}", i + 1))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn take<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str, default: T) -> Result<T> {
    match map.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|_| anyhow!("config key {key}: cannot parse {v:?}")),
    }
}

fn dims_from(map: &BTreeMap<String, String>) -> Result<ModelDims> {
    let mut dims = match map.get("dims").map(|s| s.as_str()) {
        None | Some("default") => ModelDims::default(),
        Some("tiny") => ModelDims::tiny(),
        Some("reduced") => ModelDims::reduced(),
        Some(other) => bail!("unknown dims preset {other:?}"),
    };
    dims.word_emb = take(map, "dims.word_emb", dims.word_emb)?;
    dims.char_emb = take(map, "dims.char_emb", dims.char_emb)?;
    dims.char_hidden = take(map, "dims.char_hidden", dims.char_hidden)?;
    dims.word_hidden = take(map, "dims.word_hidden", dims.word_hidden)?;
    dims.lang_emb = take(map, "dims.lang_emb", dims.lang_emb)?;
    dims.mlp_hidden = take(map, "dims.mlp_hidden", dims.mlp_hidden)?;
    dims.stack_feats = take(map, "dims.stack_feats", dims.stack_feats)?;
    dims.buffer_feats = take(map, "dims.buffer_feats", dims.buffer_feats)?;
    dims.lambda = take(map, "dims.lambda", dims.lambda)?;
    Ok(dims)
}

impl ExperimentConfig {
    /// Load `path` and apply `overrides` (flag values win over file keys);
    /// the `CROSSPARSE_SEED` env var wins over both.
    pub fn load(path: &Path, overrides: &BTreeMap<String, String>) -> Result<ExperimentConfig> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let mut map = parse_kv(&text)?;
        for (k, v) in overrides {
            map.insert(k.clone(), v.clone());
        }
        if let Ok(seed) = std::env::var(SEED_ENV) {
            map.insert("seed".into(), seed);
        }
        Self::from_map(map)
    }

    fn from_map(map: BTreeMap<String, String>) -> Result<ExperimentConfig> {
        let languages: Vec<String> = map
            .get("languages")
            .ok_or_else(|| anyhow!("config needs a languages key"))?
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        if languages.is_empty() || languages.len() > 2 {
            bail!("languages must name 1 or 2 codes, got {languages:?}");
        }
        let paths = |role: &str| -> BTreeMap<String, PathBuf> {
            languages
                .iter()
                .filter_map(|l| {
                    map.get(&format!("{role}.{l}"))
                        .map(|p| (l.clone(), PathBuf::from(p)))
                })
                .collect()
        };
        let run = match map.get("strategy").map(|s| s.as_str()) {
            None => bail!("config needs a strategy key (a strategy string, grid, or ours)"),
            Some("grid") => RunKind::Grid,
            Some("ours") => RunKind::Ours,
            Some(s) => RunKind::Single(s.parse::<SharingStrategy>().map_err(|e| anyhow!("{e}"))?),
        };
        let optimizer = match map.get("optimizer").map(|s| s.as_str()) {
            None | Some("adam") => OptimizerChoice::Adam,
            Some("sgd") => OptimizerChoice::Sgd,
            Some(other) => bail!("unknown optimizer {other:?}"),
        };
        let targets: Vec<String> = match map.get("target") {
            None => languages.clone(),
            Some(t) => t.split(',').map(|s| s.trim().to_string()).collect(),
        };
        for t in &targets {
            if !languages.contains(t) {
                bail!("target {t:?} is not one of the configured languages");
            }
        }
        let stop_at_dev_las = match map.get("stop_at_dev_las") {
            None => None,
            Some(v) => Some(
                v.parse()
                    .map_err(|_| anyhow!("bad stop_at_dev_las {v:?}"))?,
            ),
        };
        let config = ExperimentConfig {
            train_paths: paths("train"),
            dev_paths: paths("dev"),
            test_paths: paths("test"),
            run,
            sample_size: take(&map, "sample_size", 5000)?,
            epochs: take(&map, "epochs", 30)?,
            seed: take(&map, "seed", 1)?,
            word_dropout: take(&map, "word_dropout", 0.25)?,
            explore_from_epoch: take(&map, "explore_from_epoch", 2)?,
            explore_prob: take(&map, "explore_prob", 0.1)?,
            margin: take(&map, "margin", 1.0)?,
            learning_rate: take(&map, "learning_rate", 1e-3)?,
            optimizer,
            dims: dims_from(&map)?,
            out_dir: PathBuf::from(map.get("out_dir").cloned().unwrap_or_else(|| "runs".into())),
            jobs: take(&map, "jobs", 1)?,
            shuffles: take(&map, "shuffles", 10_000)?,
            targets,
            stop_at_dev_las,
            languages,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        for l in &self.languages {
            let train = self
                .train_paths
                .get(l)
                .ok_or_else(|| anyhow!("missing train.{l} path"))?;
            if !train.exists() {
                bail!("train.{l} file does not exist: {}", train.display());
            }
            let dev = self
                .dev_paths
                .get(l)
                .ok_or_else(|| anyhow!("missing dev.{l} path"))?;
            if !dev.exists() {
                bail!("dev.{l} file does not exist: {}", dev.display());
            }
            if let Some(test) = self.test_paths.get(l) {
                if !test.exists() {
                    bail!("test.{l} file does not exist: {}", test.display());
                }
            }
        }
        if self.run == RunKind::Ours {
            if self.languages.len() != 2 {
                bail!("the ours pipeline needs exactly 2 languages");
            }
            for l in &self.targets {
                if !self.test_paths.contains_key(l) {
                    bail!("the ours pipeline needs test.{l}");
                }
            }
        }
        if self.run == RunKind::Grid && self.languages.len() != 2 {
            bail!("the grid needs exactly 2 languages");
        }
        if self.jobs == 0 {
            bail!("jobs must be at least 1");
        }
        Ok(())
    }

    /// FNV-1a content hash used in manifests.
    pub fn file_hash(path: &Path) -> Result<u64> {
        let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        let mut h: u64 = 0xcbf29ce484222325;
        for b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        Ok(h)
    }

    /// Resolved-config manifest, including input content hashes.
    pub fn manifest(&self, command: &str) -> Result<String> {
        let mut out = String::new();
        out.push_str("# experiment manifest\n");
        out.push_str(&format!("version = {}\n", env!("CARGO_PKG_VERSION")));
        out.push_str(&format!("command = {command}\n"));
        out.push_str(&format!("languages = {}\n", self.languages.join(",")));
        let run = match &self.run {
            RunKind::Single(s) => s.to_string(),
            RunKind::Grid => "grid".into(),
            RunKind::Ours => "ours".into(),
        };
        out.push_str(&format!("strategy = {run}\n"));
        out.push_str(&format!("sample_size = {}\n", self.sample_size));
        out.push_str(&format!("epochs = {}\n", self.epochs));
        out.push_str(&format!("seed = {}\n", self.seed));
        out.push_str(&format!("word_dropout = {}\n", self.word_dropout));
        out.push_str(&format!(
            "explore_from_epoch = {}\n",
            self.explore_from_epoch
        ));
        out.push_str(&format!("explore_prob = {}\n", self.explore_prob));
        out.push_str(&format!("margin = {}\n", self.margin));
        out.push_str(&format!("learning_rate = {}\n", self.learning_rate));
        out.push_str(&format!(
            "optimizer = {}\n",
            match self.optimizer {
                OptimizerChoice::Adam => "adam",
                OptimizerChoice::Sgd => "sgd",
            }
        ));
        let d = &self.dims;
        out.push_str(&format!(
            "dims = word_emb={} char_emb={} char_hidden={} word_hidden={} lang_emb={} mlp_hidden={} stack_feats={} buffer_feats={} lambda={}\n",
            d.word_emb, d.char_emb, d.char_hidden, d.word_hidden, d.lang_emb, d.mlp_hidden,
            d.stack_feats, d.buffer_feats, d.lambda
        ));
        out.push_str(&format!("jobs = {}\n", self.jobs));
        out.push_str(&format!("shuffles = {}\n", self.shuffles));
        out.push_str(&format!("target = {}\n", self.targets.join(",")));
        for (role, paths) in [
            ("train", &self.train_paths),
            ("dev", &self.dev_paths),
            ("test", &self.test_paths),
        ] {
            for (lang, path) in paths {
                out.push_str(&format!(
                    "input.{role}.{lang} = {} fnv64:{:016x}\n",
                    path.display(),
                    Self::file_hash(path)?
                ));
            }
        }
        Ok(out)
    }
}
