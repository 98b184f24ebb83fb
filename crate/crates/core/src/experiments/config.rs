use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Recipe {
    /// Rigidity hitting time against minimum-degree hitting time.
    Theorem1,
    /// Rigidity probability of `G(n, p)` at the sharp threshold.
    Cor12,
    /// Closure density and clique trace of `G(n, cn)`.
    Closure,
    /// Exhaustive expansion and sandwich dichotomy scans.
    Expansion,
    /// Cores, orientability and rigidity of the extended core across `c`.
    Conjecture,
}

impl Recipe {
    pub const ALL: [Recipe; 5] = [
        Recipe::Theorem1,
        Recipe::Cor12,
        Recipe::Closure,
        Recipe::Expansion,
        Recipe::Conjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Recipe::Theorem1 => "theorem1",
            Recipe::Cor12 => "cor12",
            Recipe::Closure => "closure",
            Recipe::Expansion => "expansion",
            Recipe::Conjecture => "conjecture",
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Recipe::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| invalid(format!("unknown recipe {s:?}")))
    }
}

/// Parameters of one experiment run.
///
/// Text form is one `key = value` per line, `#` comments allowed. Keys:
/// `recipe`, `n` (comma list), `d`, `trials`, `seed`, `c` (comma list),
/// `delta`, `global`, `reps`, `max_pairs`, `level`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub recipe: Recipe,
    pub ns: Vec<usize>,
    pub d: usize,
    pub trials: usize,
    /// Base seed; per-trial seeds are derived from it.
    pub seed: Option<u64>,
    pub cs: Vec<f64>,
    pub delta: f64,
    /// Also compute the global rigidity hitting time (theorem1).
    pub global: bool,
    /// Independent embeddings per randomized rigidity answer.
    pub reps: usize,
    /// Pair budget of the clique trace (closure).
    pub max_pairs: usize,
    /// Confidence level of the reported intervals.
    pub level: f64,
}

impl ExperimentConfig {
    pub fn new(recipe: Recipe) -> Self {
        Self {
            recipe,
            ns: vec![64],
            d: 2,
            trials: 100,
            seed: None,
            cs: vec![0.0],
            delta: 1.0 / 18.0,
            global: false,
            reps: 2,
            max_pairs: crate::rigidity::DEFAULT_CLIQUE_PAIRS,
            level: 0.95,
        }
    }

    /// Parses the text form. `recipe` must be present unless `fallback` is
    /// given.
    pub fn parse(text: &str, fallback: Option<Recipe>) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut recipe = fallback;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(Error::Parse {
                line: i + 1,
                msg: format!("expected key = value, got {line:?}"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if key == "recipe" {
                recipe = Some(value.parse()?);
            } else {
                pairs.push((i + 1, key.to_string(), value.to_string()));
            }
        }
        let recipe = recipe.ok_or_else(|| invalid("config names no recipe"))?;
        let mut cfg = Self::new(recipe);
        for (line, key, value) in pairs {
            cfg.set(&key, &value).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        Ok(cfg)
    }

    /// Sets one field from its text form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| invalid(format!("bad value for {key}: {v:?}")))
        }
        fn list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
            v.split(',').map(|x| num(key, x.trim())).collect()
        }
        match key {
            "recipe" => self.recipe = value.parse()?,
            "n" => self.ns = list(key, value)?,
            "d" => self.d = num(key, value)?,
            "trials" => self.trials = num(key, value)?,
            "seed" => self.seed = Some(num(key, value)?),
            "c" => self.cs = list(key, value)?,
            "delta" => self.delta = num(key, value)?,
            "global" => self.global = num(key, value)?,
            "reps" => self.reps = num(key, value)?,
            "max_pairs" => self.max_pairs = num(key, value)?,
            "level" => self.level = num(key, value)?,
            _ => return Err(invalid(format!("unknown config key {key:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        if self.d == 0 {
            return Err(invalid("d must be at least 1"));
        }
        if self.ns.is_empty() {
            return Err(invalid("n grid is empty"));
        }
        if self.cs.is_empty() || self.cs.iter().any(|c| !c.is_finite()) {
            return Err(invalid("c grid must be non-empty and finite"));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(invalid("level must lie in (0, 1)"));
        }
        if self.seed.is_none() {
            return Err(invalid("no base seed set"));
        }
        Ok(())
    }

    /// Canonical text form; parsing it gives back the same config.
    pub fn to_text(&self) -> String {
        let join = |v: Vec<String>| v.join(",");
        let mut out = format!(
            "recipe = {}\nn = {}\nd = {}\ntrials = {}\n",
            self.recipe,
            join(self.ns.iter().map(|x| x.to_string()).collect()),
            self.d,
            self.trials
        );
        if let Some(s) = self.seed {
            out.push_str(&format!("seed = {s}\n"));
        }
        out.push_str(&format!(
            "c = {}\ndelta = {}\nglobal = {}\nreps = {}\nmax_pairs = {}\nlevel = {}\n",
            join(self.cs.iter().map(|x| x.to_string()).collect()),
            self.delta,
            self.global,
            self.reps,
            self.max_pairs,
            self.level
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let text = "# demo\nrecipe = cor12\nn = 128, 256\nd = 1\nc = 0, 3\ntrials=20\nseed = 5\n";
        let cfg = ExperimentConfig::parse(text, None).unwrap();
        assert_eq!(cfg.recipe, Recipe::Cor12);
        assert_eq!(cfg.ns, vec![128, 256]);
        assert_eq!(cfg.cs, vec![0.0, 3.0]);
        assert_eq!(cfg.seed, Some(5));
        assert_eq!(ExperimentConfig::parse(&cfg.to_text(), None).unwrap(), cfg);
        cfg.validate().unwrap();
    }

    #[test]
    fn errors() {
        assert!(ExperimentConfig::parse("n = 4\n", None).is_err());
        assert!(ExperimentConfig::parse("recipe = nope\n", None).is_err());
        assert!(ExperimentConfig::parse("recipe = closure\nwidth = 3\n", None).is_err());
        assert!(ExperimentConfig::parse("recipe = closure\nn = x\n", None).is_err());
        assert!(ExperimentConfig::parse("just words\n", Some(Recipe::Closure)).is_err());
        let mut cfg = ExperimentConfig::new(Recipe::Theorem1);
        assert!(cfg.validate().is_err());
        cfg.seed = Some(1);
        cfg.validate().unwrap();
        cfg.trials = 0;
        assert!(cfg.validate().is_err());
    }
}
