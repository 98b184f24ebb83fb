//! `rigid`: graph rigidity queries and random-graph experiments.
//!
//! Query commands print one line of JSON. Randomized commands take `--seed`;
//! without it the seed comes from the config file, then `RIGID_SEED`, then
//! fresh entropy, and is echoed in the output either way.
//!
//! Exit codes: 0 success, 1 other failure, 2 usage, 3 file, 4 integrity.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigidity::experiments::{run, ExperimentConfig, Recipe};
use rigidity::graphs::{extended_core, is_d_orientable, kcore, read_edge_list, write_edge_list};
use rigidity::rigidity::{closure, is_globally_rigid, is_rigid, rigid_components, rigidity_rank, ComponentMode};
use rigidity::{Error, Graph};
use serde_json::{json, Value};

const SEED_ENV: &str = "RIGID_SEED";

#[derive(Parser)]
#[command(name = "rigid", version, about = "Generic rigidity of graphs and random graph evolutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generic rank of the rigidity matrix.
    Rank {
        #[command(flatten)]
        q: Query,
    },
    /// Whether the graph is generically rigid.
    Rigid {
        #[command(flatten)]
        q: Query,
    },
    /// Rigidity closure; optionally written as an edge list.
    Closure {
        #[command(flatten)]
        q: Query,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whether the graph is generically globally rigid.
    Global {
        #[command(flatten)]
        q: Query,
    },
    /// Maximal rigid vertex sets.
    Components {
        #[command(flatten)]
        q: Query,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Vertices of the k-core.
    Core {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Vertices of the (d+1)-core extended by vertices with d neighbors inside.
    Extcore {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Whether edges can be oriented with every in-degree at most d.
    Orient {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Hitting times along random graph evolutions, as CSV.
    Hitting {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        /// Also locate the global rigidity hitting time.
        #[arg(long)]
        global: bool,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Runs an experiment recipe, writing CSV and a JSON manifest.
    Exp {
        #[arg(long)]
        recipe: Option<String>,
        /// key = value config file.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Extra `key=value` overrides, applied after the file.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(clap::Args)]
struct Query {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Heuristic,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidArgument(_) | Error::TooLarge { .. } => 2,
            Error::Io(_) | Error::Parse { .. } | Error::InvalidGraph(_) | Error::Csv(_) => 3,
            Error::Integrity(_) => 4,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn file_error(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure {
        code: 3,
        msg: format!("{}: {e}", path.display()),
    }
}

fn load(path: &Path) -> Result<Graph, Failure> {
    read_edge_list(path).map_err(|e| file_error(path, e))
}

/// `flag`, else `RIGID_SEED`, else fresh entropy.
fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure {
            code: 2,
            msg: format!("{SEED_ENV} is not an unsigned integer: {v:?}"),
        }),
        Err(_) => Ok(rand::random()),
    }
}

fn query(q: &Query) -> Result<(Graph, u64, ChaCha8Rng), Failure> {
    let g = load(&q.graph)?;
    let seed = resolve_seed(q.seed)?;
    Ok((g, seed, ChaCha8Rng::seed_from_u64(seed)))
}

fn execute(cmd: Command) -> Result<Value, Failure> {
    Ok(match cmd {
        Command::Rank { q } => {
            let (g, seed, mut rng) = query(&q)?;
            json!({"rank": rigidity_rank(&g, q.dim, &mut rng)?, "n": g.n(), "edges": g.edge_count(), "dim": q.dim, "seed": seed})
        }
        Command::Rigid { q } => {
            let (g, seed, mut rng) = query(&q)?;
            json!({"rigid": is_rigid(&g, q.dim, &mut rng)?, "dim": q.dim, "seed": seed})
        }
        Command::Closure { q, out } => {
            let (g, seed, mut rng) = query(&q)?;
            let c = closure(&g, q.dim, &mut rng)?;
            if let Some(path) = &out {
                write_edge_list(path, c.graph()).map_err(|e| file_error(path, e))?;
            }
            json!({
                "edges": c.len(),
                "new_edges": c.new_edges().len(),
                "complete": c.is_complete(),
                "rank": c.rank(),
                "dim": q.dim,
                "seed": seed,
                "out": out,
            })
        }
        Command::Global { q } => {
            let (g, seed, mut rng) = query(&q)?;
            json!({"globally_rigid": is_globally_rigid(&g, q.dim, &mut rng)?, "dim": q.dim, "seed": seed})
        }
        Command::Components { q, mode } => {
            let (g, seed, mut rng) = query(&q)?;
            let mode = match mode {
                Mode::Exact => ComponentMode::Exact,
                Mode::Heuristic => ComponentMode::Heuristic,
            };
            let comps = rigid_components(&g, q.dim, mode, &mut rng)?;
            json!({"components": comps, "mode": mode, "dim": q.dim, "seed": seed})
        }
        Command::Core { graph, k } => {
            let g = load(&graph)?;
            json!({"core": kcore(&g, k), "k": k})
        }
        Command::Extcore { graph, dim } => {
            let g = load(&graph)?;
            json!({"extended_core": extended_core(&g, dim), "dim": dim})
        }
        Command::Orient { graph, d } => {
            let g = load(&graph)?;
            let ans = is_d_orientable(&g, d)?;
            json!({"orientable": ans.is_orientable(), "d": d, "certificate": ans})
        }
        Command::Hitting {
            n,
            dim,
            global,
            trials,
            seed,
            out,
            jobs,
        } => {
            let mut cfg = ExperimentConfig::new(Recipe::Theorem1);
            cfg.ns = vec![n];
            cfg.d = dim;
            cfg.trials = trials;
            cfg.global = global;
            cfg.seed = Some(resolve_seed(seed)?);
            let report = run(&cfg, jobs)?;
            let csv = report.to_csv()?;
            match &out {
                Some(path) => {
                    std::fs::write(path, &csv).map_err(|e| file_error(path, e))?;
                    json!({"rows": report.rows.len(), "out": path, "seed": cfg.seed})
                }
                None => {
                    print!("{csv}");
                    return Ok(Value::Null);
                }
            }
        }
        Command::Exp {
            recipe,
            config,
            out,
            seed,
            trials,
            overrides,
            jobs,
        } => {
            let recipe: Option<Recipe> = recipe.map(|r| r.parse()).transpose()?;
            let mut cfg = match &config {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| file_error(path, e))?;
                    let mut cfg = ExperimentConfig::parse(&text, recipe).map_err(|e| file_error(path, e))?;
                    if let Some(r) = recipe {
                        cfg.recipe = r;
                    }
                    cfg
                }
                None => ExperimentConfig::new(recipe.ok_or_else(|| Failure {
                    code: 2,
                    msg: "exp needs --recipe or a --config naming one".into(),
                })?),
            };
            for kv in &overrides {
                let (k, v) = kv.split_once('=').ok_or_else(|| Failure {
                    code: 2,
                    msg: format!("--set expects KEY=VALUE, got {kv:?}"),
                })?;
                cfg.set(k.trim(), v.trim())?;
            }
            if let Some(t) = trials {
                cfg.trials = t;
            }
            cfg.seed = match (seed, cfg.seed) {
                (Some(s), _) => Some(s),
                (None, Some(s)) => Some(s),
                (None, None) => Some(resolve_seed(None)?),
            };
            let report = run(&cfg, jobs)?;
            let manifest = report.write(&out).map_err(|e| file_error(&out, e))?;
            json!({
                "recipe": cfg.recipe,
                "rows": report.rows.len(),
                "out": out,
                "manifest": manifest,
                "seed": cfg.seed,
                "summaries": report.summaries,
            })
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(Value::Null) => ExitCode::SUCCESS,
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("rigid: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_exit_codes() {
        let code = |e: Error| Failure::from(e).code;
        assert_eq!(code(Error::InvalidArgument("x".into())), 2);
        assert_eq!(code(Error::Parse { line: 1, msg: "x".into() }), 3);
        assert_eq!(code(Error::Integrity("x".into())), 4);
        assert_eq!(code(Error::ZeroInverse), 1);
    }
}
