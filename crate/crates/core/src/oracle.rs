//! Ground-truth solvers on the full parse graph.
//!
//! The full graph has an edge `(i, j)` for every `j` such that `text[i..j]`
//! occurs earlier, weighted with the smallest such distance (which is
//! cheapest in both objectives), plus a literal edge `(i, i + 1)`. Nothing
//! is pruned, so these solvers can check the pruned graph rather than trust
//! it.

use thiserror::Error;

use crate::cost::{CostModel, Phrase, MAX_COPY_LENGTH};
use crate::index::{Edge, ParseGraph};

/// Largest text [`enumerate_parsings`] accepts.
pub const MAX_ENUMERATION_LEN: usize = 24;
/// Largest text the full-graph dynamic programs accept.
pub const MAX_DP_LEN: usize = 512;
/// Largest budget [`dp_wcspp`] accepts.
pub const MAX_DP_BUDGET: u64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for the reference oracle")]
    TooLarge,
    #[error("no parsing fits the budget")]
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoPoint {
    pub s_bits: u64,
    pub t_ticks: u64,
    pub parsing: Vec<Phrase>,
}

/// Out-edges of every node of the full graph.
pub fn full_graph(text: &[u8], model: &CostModel) -> Vec<Vec<Edge>> {
    let n = text.len();
    // lce[i][p]: common prefix length of text[i..] and text[p..].
    let mut lce = vec![vec![0u32; n + 1]; n + 1];
    for i in (0..n).rev() {
        for p in (0..n).rev() {
            if text[i] == text[p] {
                lce[i][p] = lce[i + 1][p + 1] + 1;
            }
        }
    }
    (0..n)
        .map(|i| {
            let mut edges = vec![Edge {
                from: i as u32,
                to: i as u32 + 1,
                witness: 0,
                s_bits: model.literal_bits(),
                t_ticks: model.literal_ticks(),
            }];
            let mut reached = 0u32;
            for d in 1..=i {
                let l = lce[i][i - d].min(MAX_COPY_LENGTH);
                for len in reached + 1..=l {
                    let d = d as u32;
                    edges.push(Edge {
                        from: i as u32,
                        to: i as u32 + len,
                        witness: d,
                        s_bits: model.copy_bits(d, len),
                        t_ticks: model.copy_ticks(d, len),
                    });
                }
                reached = reached.max(l);
            }
            edges
        })
        .collect()
}

/// Out-edges of every node of a pruned graph, in the same shape as
/// [`full_graph`].
pub fn graph_edges(graph: &ParseGraph<'_>) -> Vec<Vec<Edge>> {
    (0..graph.n()).map(|i| graph.edges(i).collect()).collect()
}

#[derive(Clone, Copy)]
struct Label {
    s: u64,
    t: u64,
    /// Predecessor node and label index; `u32::MAX` at the source.
    prev: (u32, u32),
    edge: Edge,
}

/// Exact Pareto frontier of `0 -> n` paths over arbitrary edge lists,
/// sorted by increasing size.
pub fn pareto_frontier(text: &[u8], edges: &[Vec<Edge>]) -> Vec<ParetoPoint> {
    let n = text.len();
    let origin = Label {
        s: 0,
        t: 0,
        prev: (u32::MAX, u32::MAX),
        edge: Edge {
            from: 0,
            to: 0,
            witness: 0,
            s_bits: 0,
            t_ticks: 0,
        },
    };
    let mut labels: Vec<Vec<Label>> = vec![Vec::new(); n + 1];
    labels[0].push(origin);
    for i in 0..=n {
        let mut here = std::mem::take(&mut labels[i]);
        here.sort_by_key(|l| (l.s, l.t));
        let mut kept: Vec<Label> = Vec::with_capacity(here.len());
        for l in here {
            if kept.last().is_none_or(|k| l.t < k.t) {
                kept.push(l);
            }
        }
        labels[i] = kept;
        if i == n {
            break;
        }
        for (idx, l) in labels[i].clone().into_iter().enumerate() {
            for e in &edges[i] {
                labels[e.to as usize].push(Label {
                    s: l.s + e.s_bits as u64,
                    t: l.t + e.t_ticks as u64,
                    prev: (i as u32, idx as u32),
                    edge: *e,
                });
            }
        }
    }
    labels[n]
        .iter()
        .map(|l| {
            let mut phrases = Vec::new();
            let mut cur = *l;
            while cur.prev.0 != u32::MAX {
                let e = cur.edge;
                phrases.push(match e.witness {
                    0 => Phrase::Literal(text[e.from as usize]),
                    d => Phrase::Copy {
                        distance: d,
                        length: e.to - e.from,
                    },
                });
                cur = labels[cur.prev.0 as usize][cur.prev.1 as usize];
            }
            phrases.reverse();
            ParetoPoint {
                s_bits: l.s,
                t_ticks: l.t,
                parsing: phrases,
            }
        })
        .collect()
}

/// Pareto frontier of all parsings of a short text.
pub fn enumerate_parsings(text: &[u8], model: &CostModel) -> Result<Vec<ParetoPoint>, OracleError> {
    if text.len() > MAX_ENUMERATION_LEN {
        return Err(OracleError::TooLarge);
    }
    Ok(pareto_frontier(text, &full_graph(text, model)))
}

/// Pareto frontier of all parsings of a desk-scale text.
pub fn full_frontier(text: &[u8], model: &CostModel) -> Result<Vec<ParetoPoint>, OracleError> {
    if text.len() > MAX_DP_LEN {
        return Err(OracleError::TooLarge);
    }
    Ok(pareto_frontier(text, &full_graph(text, model)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WcsppOptimum {
    pub s_bits: u64,
    pub t_ticks: u64,
    pub parsing: Vec<Phrase>,
}

/// `dp[v][t]`: fewest bits of a `0 -> v` path taking exactly `t` ticks.
pub struct WcsppTable {
    text: Vec<u8>,
    edges: Vec<Vec<Edge>>,
    limit: u64,
    dp: Vec<Vec<u32>>,
}

const UNREACHED: u32 = u32::MAX;

impl WcsppTable {
    /// Fills the table for all times up to `limit`.
    pub fn build(text: &[u8], model: &CostModel, limit: u64) -> Result<WcsppTable, OracleError> {
        if text.len() > MAX_DP_LEN || limit > MAX_DP_BUDGET {
            return Err(OracleError::TooLarge);
        }
        let n = text.len();
        let edges = full_graph(text, model);
        let width = limit as usize + 1;
        let mut dp = vec![vec![UNREACHED; width]; n + 1];
        dp[0][0] = 0;
        for i in 0..n {
            let (head, tail) = dp.split_at_mut(i + 1);
            let row = &head[i];
            for e in &edges[i] {
                let target = &mut tail[e.to as usize - i - 1];
                let dt = e.t_ticks as usize;
                if dt >= width {
                    continue;
                }
                for t in 0..width - dt {
                    let s = row[t];
                    if s != UNREACHED {
                        let cand = s + e.s_bits;
                        if cand < target[t + dt] {
                            target[t + dt] = cand;
                        }
                    }
                }
            }
        }
        Ok(WcsppTable {
            text: text.to_vec(),
            edges,
            limit,
            dp,
        })
    }

    /// Optimal size within `budget`, or `None` if no parsing fits.
    pub fn phi(&self, budget: u64) -> Option<u64> {
        let row = &self.dp[self.text.len()];
        let top = budget.min(self.limit) as usize;
        row[..=top].iter().filter(|&&s| s != UNREACHED).min().map(|&s| s as u64)
    }

    /// Pareto frontier `(s, t)` restricted to `t <= limit`, by increasing `t`.
    pub fn frontier(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        for (t, &s) in self.dp[self.text.len()].iter().enumerate() {
            if s != UNREACHED && out.last().is_none_or(|&(best, _)| (s as u64) < best) {
                out.push((s as u64, t as u64));
            }
        }
        out
    }

    pub fn optimum(&self, budget: u64) -> Result<WcsppOptimum, OracleError> {
        let n = self.text.len();
        let top = budget.min(self.limit) as usize;
        let (mut t, s) = (0..=top)
            .filter(|&t| self.dp[n][t] != UNREACHED)
            .map(|t| (t, self.dp[n][t]))
            .min_by_key(|&(t, s)| (s, t))
            .ok_or(OracleError::Infeasible)?;
        let t_total = t as u64;
        let mut v = n;
        let mut rest = s;
        let mut phrases = Vec::new();
        while v > 0 {
            let e = (0..v)
                .flat_map(|i| self.edges[i].iter())
                .find(|e| {
                    e.to as usize == v
                        && e.t_ticks as usize <= t
                        && e.s_bits <= rest
                        && self.dp[e.from as usize][t - e.t_ticks as usize] == rest - e.s_bits
                })
                .expect("dp table is consistent");
            phrases.push(match e.witness {
                0 => Phrase::Literal(self.text[e.from as usize]),
                d => Phrase::Copy {
                    distance: d,
                    length: e.to - e.from,
                },
            });
            t -= e.t_ticks as usize;
            rest -= e.s_bits;
            v = e.from as usize;
        }
        phrases.reverse();
        Ok(WcsppOptimum {
            s_bits: s as u64,
            t_ticks: t_total,
            parsing: phrases,
        })
    }
}

/// Fewest bits of a parsing that decodes within `budget` ticks.
pub fn dp_wcspp(text: &[u8], model: &CostModel, budget: u64) -> Result<WcsppOptimum, OracleError> {
    WcsppTable::build(text, model, budget)?.optimum(budget)
}
