use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{run_trials, timed, ExperimentConfig, Report, Summary};
use crate::error::{invalid, Error, Result};
use crate::evolve::{hitting_times, sandwich_coupling};
use crate::graphs::{
    dichotomy_violator, expansion_violator, extended_core, gnm, gnp, is_d_orientable, kcore, pair_count, star,
    ExpansionMode, Graph, Orientability,
};
use crate::rigidity::{closure, is_rigid_with};

fn flag(b: bool) -> String {
    b.to_string()
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn vertices(set: &[usize]) -> String {
    set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn count(xs: impl IntoIterator<Item = bool>) -> u64 {
    xs.into_iter().filter(|&b| b).count() as u64
}

/// Hitting times along `G(n, M)`: success means rigidity appears at the
/// same edge as minimum degree `d` (and, with `global`, global rigidity at
/// minimum degree `d + 1`). The deterministic orderings abort the run with
/// an integrity error if ever broken.
pub fn run_theorem1(cfg: &ExperimentConfig) -> Result<Report> {
    timed(|| {
        let d = cfg.d;
        let mut report = Report::new(
            cfg,
            &[
                "n", "d", "trial", "seed", "M_d", "M_d1", "M_rigid_d", "M_rigid_d1", "M_GR_d", "equal_thm1", "equal_cor15",
            ],
        );
        for &n in &cfg.ns {
            if n < d + 2 {
                return Err(invalid(format!("theorem1 needs n >= d + 2, got n = {n}")));
            }
            let times = run_trials(cfg, &format!("theorem1/n={n}"), |_, seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                hitting_times(n, d, cfg.global, &mut rng)
            })?;
            for (i, h) in times.iter().enumerate() {
                let seed = trial_seed_of(cfg, i, &format!("theorem1/n={n}"));
                report.rows.push(vec![
                    n.to_string(),
                    d.to_string(),
                    i.to_string(),
                    seed.to_string(),
                    h.m_d.to_string(),
                    h.m_d1.to_string(),
                    h.m_rigid_d.to_string(),
                    h.m_rigid_d1.to_string(),
                    opt(h.m_gr_d),
                    flag(h.rigid_at_min_degree()),
                    opt(h.global_at_min_degree()),
                ]);
            }
            let group = format!("n={n}");
            let trials = times.len() as u64;
            let ok = count(times.iter().map(|h| h.rigid_at_min_degree()));
            report
                .summaries
                .push(Summary::new(&group, "rigid_at_min_degree", ok, trials, cfg.level, Some(1.0))?);
            if cfg.global {
                let ok = count(times.iter().map(|h| h.global_at_min_degree() == Some(true)));
                report
                    .summaries
                    .push(Summary::new(&group, "global_at_min_degree", ok, trials, cfg.level, Some(1.0))?);
            }
        }
        report
            .notes
            .push("hitting-time orderings held in every trial".into());
        Ok(report)
    })
}

fn trial_seed_of(cfg: &ExperimentConfig, trial: usize, tag: &str) -> u64 {
    super::trial_seed(cfg.seed.unwrap_or_default(), trial as u64, tag)
}

/// `(ln n + (d-1) ln ln n + c) / n`.
pub(crate) fn threshold_p(n: usize, d: usize, c: f64) -> f64 {
    let l = (n as f64).ln();
    (l + (d as f64 - 1.0) * l.ln() + c) / n as f64
}

/// `exp(-e^{-c} / (d-1)!)`.
pub(crate) fn threshold_limit(d: usize, c: f64) -> f64 {
    let fact: f64 = (1..d).map(|k| k as f64).product();
    (-(-c).exp() / fact).exp()
}

/// Rigidity of `G(n, p)` at `p = (ln n + (d-1) ln ln n + c)/n`, with the
/// minimum-degree indicator as a second channel. Both are compared with
/// `exp(-e^{-c}/(d-1)!)`.
pub fn run_corollary12(cfg: &ExperimentConfig) -> Result<Report> {
    timed(|| {
        let d = cfg.d;
        let mut report = Report::new(
            cfg,
            &["n", "d", "c", "p", "trial", "seed", "edges", "min_degree", "rigid", "min_degree_ok"],
        );
        for &n in &cfg.ns {
            for &c in &cfg.cs {
                let p = threshold_p(n, d, c);
                if !(p > 0.0 && p < 1.0) {
                    return Err(invalid(format!("edge probability {p} for n = {n}, c = {c} outside (0, 1)")));
                }
                let tag = format!("cor12/n={n}/c={c}");
                let results = run_trials(cfg, &tag, |_, seed| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let g = gnp(n, p, &mut rng)?;
                    let rigid = is_rigid_with(&g, d, cfg.reps, &mut rng)?;
                    let min_ok = g.min_degree() >= d;
                    if rigid && !min_ok && n > d {
                        return Err(Error::Integrity(format!(
                            "rigid graph with minimum degree {} < {d}",
                            g.min_degree()
                        )));
                    }
                    Ok((g.edge_count(), g.min_degree(), rigid, min_ok))
                })?;
                for (i, &(edges, min_deg, rigid, min_ok)) in results.iter().enumerate() {
                    report.rows.push(vec![
                        n.to_string(),
                        d.to_string(),
                        c.to_string(),
                        p.to_string(),
                        i.to_string(),
                        trial_seed_of(cfg, i, &tag).to_string(),
                        edges.to_string(),
                        min_deg.to_string(),
                        flag(rigid),
                        flag(min_ok),
                    ]);
                }
                let group = format!("n={n},c={c}");
                let target = Some(threshold_limit(d, c));
                let trials = results.len() as u64;
                let rigid = count(results.iter().map(|r| r.2));
                let min_ok = count(results.iter().map(|r| r.3));
                report
                    .summaries
                    .push(Summary::new(&group, "rigid", rigid, trials, cfg.level, target)?);
                report
                    .summaries
                    .push(Summary::new(&group, "min_degree", min_ok, trials, cfg.level, target)?);
            }
        }
        Ok(report)
    })
}

/// Closure of `G(n, round(cn))`: channels are closure density at least
/// `1 - delta`, a high-degree side `A` with `|A| >= 5n/9`, and a clean
/// greedy witness trace.
pub fn run_closure_density(cfg: &ExperimentConfig) -> Result<Report> {
    timed(|| {
        let d = cfg.d;
        let mut report = Report::new(
            cfg,
            &[
                "n", "d", "c", "delta", "trial", "seed", "edges", "closure_size", "density", "a_size", "b_size",
                "pairs_checked", "witness_ok", "density_ok", "clique_ok",
            ],
        );
        for &c in &cfg.cs {
            if c * cfg.delta <= d as f64 {
                report.notes.push(format!(
                    "c * delta = {} <= d = {d}: outside the hypothesis of the density bound",
                    c * cfg.delta
                ));
            }
        }
        for &n in &cfg.ns {
            for &c in &cfg.cs {
                if c < 0.0 {
                    return Err(invalid(format!("c = {c} is negative")));
                }
                let m = (c * n as f64).round() as usize;
                if m > pair_count(n) {
                    return Err(invalid(format!("cn = {m} exceeds C({n}, 2)")));
                }
                let tag = format!("closure/n={n}/c={c}");
                let results = run_trials(cfg, &tag, |_, seed| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let g = gnm(n, m, &mut rng)?;
                    let cl = closure(&g, d, &mut rng)?;
                    let trace = cl.clique_trace(cfg.max_pairs, &mut rng);
                    Ok((cl.len(), cl.density(), trace))
                })?;
                let mut dens_ok = 0;
                let mut clique_ok = 0;
                let mut witness_ok = 0;
                for (i, (size, density, trace)) in results.iter().enumerate() {
                    let dens = *density >= 1.0 - cfg.delta;
                    let clique = 9 * trace.a.len() >= 5 * n;
                    dens_ok += dens as u64;
                    clique_ok += clique as u64;
                    witness_ok += trace.witness_ok as u64;
                    report.rows.push(vec![
                        n.to_string(),
                        d.to_string(),
                        c.to_string(),
                        cfg.delta.to_string(),
                        i.to_string(),
                        trial_seed_of(cfg, i, &tag).to_string(),
                        m.to_string(),
                        size.to_string(),
                        density.to_string(),
                        trace.a.len().to_string(),
                        trace.b.len().to_string(),
                        trace.pairs_checked.to_string(),
                        flag(trace.witness_ok),
                        flag(dens),
                        flag(clique),
                    ]);
                }
                let group = format!("n={n},c={c}");
                let t = results.len() as u64;
                report.summaries.push(Summary::new(&group, "density", dens_ok, t, cfg.level, None)?);
                report.summaries.push(Summary::new(&group, "clique", clique_ok, t, cfg.level, None)?);
                report.summaries.push(Summary::new(&group, "witness", witness_ok, t, cfg.level, None)?);
            }
        }
        Ok(report)
    })
}

/// Checks the exhaustive scans on graphs with a known answer; any miss is an
/// integrity error.
fn expansion_injections(n: usize, d: usize) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let leafy = star(n - 1);
    let complete = Graph::complete(n);
    let star_flagged = expansion_violator(&leafy, d, ExpansionMode::Exhaustive, &mut rng)?.is_some();
    let complete_clean = expansion_violator(&complete, d, ExpansionMode::Exhaustive, &mut rng)?.is_none();
    let dichotomy_flagged = d < 2 || dichotomy_violator(&leafy, &complete, d)?.is_some();
    if !(star_flagged && complete_clean && dichotomy_flagged) {
        return Err(Error::Integrity(format!(
            "injection checks failed at n = {n}: star flagged {star_flagged}, complete clean {complete_clean}, \
             star/complete dichotomy flagged {dichotomy_flagged}"
        )));
    }
    Ok(())
}

/// Exhaustive expansion scans on `G(n, M_d)` from the sandwich coupling:
/// channels are "no violator in `G(n, M_d)`", "the sandwich dichotomy holds
/// for every set" (over valid sandwiches only) and sandwich validity.
pub fn run_expansion(cfg: &ExperimentConfig) -> Result<Report> {
    timed(|| {
        let d = cfg.d;
        let mut report = Report::new(
            cfg,
            &[
                "n", "d", "trial", "seed", "M_d", "valid", "g_minus_edges", "g_plus_edges", "violator_free",
                "violator", "dichotomy_holds", "dichotomy_violator",
            ],
        );
        for &n in &cfg.ns {
            if n > crate::graphs::EXHAUSTIVE_MAX_N {
                return Err(Error::TooLarge {
                    what: "exhaustive expansion recipe",
                    n,
                    limit: crate::graphs::EXHAUSTIVE_MAX_N,
                });
            }
            expansion_injections(n, d)?;
            report
                .notes
                .push(format!("n={n}: star flagged, complete graph clean, star/complete dichotomy flagged"));
            let tag = format!("expansion/n={n}");
            let results = run_trials(cfg, &tag, |_, seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let s = sandwich_coupling(n, d, &mut rng)?;
                let violator = expansion_violator(&s.g_star, d, ExpansionMode::Exhaustive, &mut rng)?;
                let dichotomy = if s.valid {
                    Some(dichotomy_violator(&s.g_minus, &s.g_plus, d)?)
                } else {
                    None
                };
                Ok((s, violator, dichotomy))
            })?;
            let (mut free, mut valid, mut holds) = (0, 0, 0);
            for (i, (s, violator, dichotomy)) in results.iter().enumerate() {
                free += violator.is_none() as u64;
                valid += s.valid as u64;
                holds += matches!(dichotomy, Some(None)) as u64;
                report.rows.push(vec![
                    n.to_string(),
                    d.to_string(),
                    i.to_string(),
                    trial_seed_of(cfg, i, &tag).to_string(),
                    s.m_d.to_string(),
                    flag(s.valid),
                    s.g_minus.edge_count().to_string(),
                    s.g_plus.edge_count().to_string(),
                    flag(violator.is_none()),
                    violator.as_deref().map(vertices).unwrap_or_default(),
                    opt(dichotomy.as_ref().map(|v| v.is_none())),
                    dichotomy.as_ref().and_then(|v| v.as_deref()).map(vertices).unwrap_or_default(),
                ]);
            }
            let group = format!("n={n}");
            let t = results.len() as u64;
            report.summaries.push(Summary::new(&group, "violator_free", free, t, cfg.level, Some(1.0))?);
            report.summaries.push(Summary::new(&group, "dichotomy", holds, valid, cfg.level, Some(1.0))?);
            report.summaries.push(Summary::new(&group, "valid", valid, t, cfg.level, Some(1.0))?);
        }
        Ok(report)
    })
}

/// Core structure of `G(n, c/n)` across a grid of `c`: the `(d+1)`-core,
/// its average degree and `d`-orientability, the extended core and its
/// rigidity. No channel is a pass/fail criterion.
pub fn run_conjecture_scan(cfg: &ExperimentConfig) -> Result<Report> {
    timed(|| {
        let d = cfg.d;
        let mut report = Report::new(
            cfg,
            &[
                "n", "d", "c", "trial", "seed", "edges", "core_size", "core_avg_degree", "core_orientable",
                "witness_size", "ext_core_size", "ext_core_rigid", "criteria_agree",
            ],
        );
        for &n in &cfg.ns {
            for &c in &cfg.cs {
                if c <= 0.0 {
                    return Err(invalid(format!("c grid must be positive, got {c}")));
                }
                let p = c / n as f64;
                if p > 1.0 {
                    return Err(invalid(format!("c = {c} gives p > 1 at n = {n}")));
                }
                let tag = format!("conjecture/n={n}/c={c}");
                let results = run_trials(cfg, &tag, |_, seed| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let g = gnp(n, p, &mut rng)?;
                    let core_vertices = kcore(&g, d + 1);
                    let core = g.induced(&core_vertices);
                    let avg = if core.n() == 0 {
                        0.0
                    } else {
                        2.0 * core.edge_count() as f64 / core.n() as f64
                    };
                    let orient = is_d_orientable(&core, d)?;
                    let witness = match &orient {
                        Orientability::Obstructed { witness } => {
                            if core.induced_edge_count(witness) <= d * witness.len() {
                                return Err(Error::Integrity("orientability witness is not dense".into()));
                            }
                            witness.len()
                        }
                        Orientability::Orientable { .. } => 0,
                    };
                    let dense = core.edge_count() > d * core.n();
                    if dense && orient.is_orientable() {
                        return Err(Error::Integrity("dense core reported orientable".into()));
                    }
                    let ext = extended_core(&g, d);
                    let ext_rigid = ext.len() >= 2 && is_rigid_with(&g.induced(&ext), d, cfg.reps, &mut rng)?;
                    Ok(ConjectureTrial {
                        edges: g.edge_count(),
                        core_size: core.n(),
                        avg,
                        orientable: orient.is_orientable(),
                        witness,
                        ext_size: ext.len(),
                        ext_rigid,
                        agree: dense != orient.is_orientable(),
                    })
                })?;
                for (i, t) in results.iter().enumerate() {
                    report.rows.push(vec![
                        n.to_string(),
                        d.to_string(),
                        c.to_string(),
                        i.to_string(),
                        trial_seed_of(cfg, i, &tag).to_string(),
                        t.edges.to_string(),
                        t.core_size.to_string(),
                        t.avg.to_string(),
                        flag(t.orientable),
                        t.witness.to_string(),
                        t.ext_size.to_string(),
                        flag(t.ext_rigid),
                        flag(t.agree),
                    ]);
                }
                let group = format!("n={n},c={c}");
                let tr = results.len() as u64;
                let channels = [
                    ("core_nonempty", count(results.iter().map(|t| t.core_size > 0))),
                    ("core_avg_degree_above_2d", count(results.iter().map(|t| t.avg > 2.0 * d as f64))),
                    ("core_non_orientable", count(results.iter().map(|t| !t.orientable))),
                    ("ext_core_rigid", count(results.iter().map(|t| t.ext_rigid))),
                    ("ext_core_everything", count(results.iter().map(|t| t.ext_size == n))),
                    ("criteria_agree", count(results.iter().map(|t| t.agree))),
                ];
                for (name, ok) in channels {
                    report.summaries.push(Summary::new(&group, name, ok, tr, cfg.level, None)?);
                }
            }
        }
        Ok(report)
    })
}

struct ConjectureTrial {
    edges: usize,
    core_size: usize,
    avg: f64,
    orientable: bool,
    witness: usize,
    ext_size: usize,
    ext_rigid: bool,
    agree: bool,
}
