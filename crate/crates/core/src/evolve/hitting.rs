use rand::Rng;
use serde::Serialize;

use super::MinDegreeTracker;
use crate::error::{invalid, Error, Result};
use crate::graphs::EvolutionStream;
use crate::rigidity::{is_globally_rigid, Embedding, Framework};

/// First edge counts, along one evolution stream, at which each monotone
/// property appears.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HittingTimes {
    pub n: usize,
    pub d: usize,
    /// Seed of the evolution stream.
    pub seed: u64,
    /// Minimum degree first reaches `d`.
    pub m_d: usize,
    /// Minimum degree first reaches `d + 1`.
    pub m_d1: usize,
    pub m_rigid_d: usize,
    pub m_rigid_d1: usize,
    /// First globally `d`-rigid prefix, when requested.
    pub m_gr_d: Option<usize>,
}

impl HittingTimes {
    /// Rigidity arrives together with minimum degree `d`.
    pub fn rigid_at_min_degree(&self) -> bool {
        self.m_rigid_d == self.m_d
    }

    /// Global rigidity arrives together with minimum degree `d + 1`.
    pub fn global_at_min_degree(&self) -> Option<bool> {
        self.m_gr_d.map(|m| m == self.m_d1)
    }
}

/// Draws a stream seed from `rng` and runs [`hitting_times_on`].
pub fn hitting_times<R: Rng + ?Sized>(n: usize, d: usize, with_global: bool, rng: &mut R) -> Result<HittingTimes> {
    if d == 0 || n < d + 2 {
        return Err(invalid(format!("hitting times need d >= 1 and n >= d + 2, got n = {n}, d = {d}")));
    }
    let stream = EvolutionStream::new(n, rng.random())?;
    hitting_times_on(&stream, d, with_global, rng)
}

/// Walks the stream once, maintaining the minimum degree and two row bases
/// (dimensions `d` and `d + 1`). The global time, if requested, is then
/// found by bisection between `M_{d+1} - 1` and `M_{(d+1)-rigid}`.
///
/// Fails with [`Error::Integrity`] if any of the deterministic orderings
/// `M_rigid_d >= M_d`, `M_rigid_d1 >= M_d1` or
/// `M_rigid_d1 >= M_gr_d >= M_d1` is broken.
pub fn hitting_times_on<R: Rng + ?Sized>(
    stream: &EvolutionStream,
    d: usize,
    with_global: bool,
    rng: &mut R,
) -> Result<HittingTimes> {
    let n = stream.n();
    if d == 0 || n < d + 2 {
        return Err(invalid(format!("hitting times need d >= 1 and n >= d + 2, got n = {n}, d = {d}")));
    }
    let mut degrees = MinDegreeTracker::new(n);
    let mut low = Framework::new(Embedding::sample(n, d, rng)?);
    let mut high = Framework::new(Embedding::sample(n, d + 1, rng)?);
    let (mut m_d, mut m_d1, mut m_rigid_d, mut m_rigid_d1) = (None, None, None, None);

    for (i, &(u, v)) in stream.order().iter().enumerate() {
        let m = i + 1;
        degrees.add_edge(u, v);
        if m_d.is_none() && degrees.min() >= d {
            m_d = Some(m);
        }
        if m_d1.is_none() && degrees.min() > d {
            m_d1 = Some(m);
        }
        if m_rigid_d.is_none() {
            low.insert_edge(u, v);
            if low.is_full() {
                m_rigid_d = Some(m);
            }
        }
        if m_rigid_d1.is_none() {
            high.insert_edge(u, v);
            if high.is_full() {
                m_rigid_d1 = Some(m);
            }
        }
        if m_d1.is_some() && m_rigid_d.is_some() && m_rigid_d1.is_some() {
            break;
        }
    }
    let missing = || Error::Integrity("complete graph did not reach every property".into());
    let m_d = m_d.ok_or_else(missing)?;
    let m_d1 = m_d1.ok_or_else(missing)?;
    let m_rigid_d = m_rigid_d.ok_or_else(missing)?;
    let m_rigid_d1 = m_rigid_d1.ok_or_else(missing)?;

    if m_rigid_d < m_d {
        return Err(Error::Integrity(format!("M_rigid_d = {m_rigid_d} < M_d = {m_d}")));
    }
    if m_rigid_d1 < m_d1 {
        return Err(Error::Integrity(format!("M_rigid_d1 = {m_rigid_d1} < M_d1 = {m_d1}")));
    }

    let m_gr_d = if with_global {
        Some(global_time(stream, d, m_d1, m_rigid_d1, rng)?)
    } else {
        None
    };

    Ok(HittingTimes {
        n,
        d,
        seed: stream.seed(),
        m_d,
        m_d1,
        m_rigid_d,
        m_rigid_d1,
        m_gr_d,
    })
}

/// First globally rigid prefix. The prefix at `m_d1 - 1` has a vertex of
/// degree `d` and the one at `m_rigid_d1` is `(d+1)`-rigid, so the answer
/// lies in between; both ends are re-checked.
fn global_time<R: Rng + ?Sized>(
    stream: &EvolutionStream,
    d: usize,
    m_d1: usize,
    m_rigid_d1: usize,
    rng: &mut R,
) -> Result<usize> {
    let mut lo = m_d1 - 1;
    let mut hi = m_rigid_d1;
    if is_globally_rigid(&stream.prefix(lo), d, rng)? {
        return Err(Error::Integrity(format!(
            "globally rigid at M = {lo} with minimum degree below d + 1"
        )));
    }
    if !is_globally_rigid(&stream.prefix(hi), d, rng)? {
        return Err(Error::Integrity(format!(
            "({})-rigid prefix at M = {hi} failed the global test",
            d + 1
        )));
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if is_globally_rigid(&stream.prefix(mid), d, rng)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
