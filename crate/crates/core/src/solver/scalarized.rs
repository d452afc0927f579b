use num_rational::Ratio;

use super::PathSummary;
use crate::index::ParseGraph;

/// Secondary objective among paths of equal weighted cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tiebreak {
    PreferLowTime,
    PreferLowSpace,
}

/// Objective `space * s + time * t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Weights {
    pub space: u64,
    pub time: u64,
}

impl Weights {
    /// Weights for `s + lambda * t`, scaled by the denominator of `lambda`.
    pub fn from_lambda(lambda: Ratio<u64>) -> Weights {
        Weights {
            space: *lambda.denom(),
            time: *lambda.numer(),
        }
    }

    #[inline]
    pub fn apply(&self, s: u64, t: u64) -> u128 {
        self.space as u128 * s as u128 + self.time as u128 * t as u128
    }
}

/// Shortest `0 -> n` path under `s + lambda * t`.
///
/// Ties are broken by the secondary objective and then by the
/// lexicographically smallest node sequence.
pub fn shortest_path_scalarized(graph: &ParseGraph<'_>, lambda: Ratio<u64>, tiebreak: Tiebreak) -> PathSummary {
    weighted_shortest_path(graph, Weights::from_lambda(lambda), tiebreak)
}

/// Path with the fewest ticks; ties go to fewer bits.
pub fn time_optimal(graph: &ParseGraph<'_>) -> PathSummary {
    weighted_shortest_path(graph, Weights { space: 0, time: 1 }, Tiebreak::PreferLowSpace)
}

/// Path with the fewest bits; ties go to fewer ticks.
pub fn space_optimal(graph: &ParseGraph<'_>) -> PathSummary {
    weighted_shortest_path(graph, Weights { space: 1, time: 0 }, Tiebreak::PreferLowTime)
}

/// Right-to-left dynamic program over the DAG. Scanning suffixes lets the
/// smallest-next-node rule realize the lexicographic tie-break exactly.
pub(crate) fn weighted_shortest_path(graph: &ParseGraph<'_>, w: Weights, tiebreak: Tiebreak) -> PathSummary {
    let n = graph.n();
    let mut suf_s = vec![0u64; n + 1];
    let mut suf_t = vec![0u64; n + 1];
    let mut choice = vec![0u32; n];
    for i in (0..n).rev() {
        let mut best: Option<(u128, u64, usize, usize)> = None;
        for k in graph.edge_range(i) {
            let j = graph.target(k);
            let (es, et) = graph.cost(k);
            let s = suf_s[j] + es as u64;
            let t = suf_t[j] + et as u64;
            let key = (
                w.apply(s, t),
                match tiebreak {
                    Tiebreak::PreferLowTime => t,
                    Tiebreak::PreferLowSpace => s,
                },
                j,
            );
            if best.is_none_or(|(a, b, c, _)| key < (a, b, c)) {
                best = Some((key.0, key.1, key.2, k));
            }
        }
        let (_, _, j, k) = best.expect("every node below n has a literal edge");
        let (es, et) = graph.cost(k);
        suf_s[i] = suf_s[j] + es as u64;
        suf_t[i] = suf_t[j] + et as u64;
        choice[i] = k as u32;
    }
    let mut path = PathSummary::start();
    let mut i = 0;
    while i < n {
        let e = graph.edge_at(i, choice[i] as usize);
        path.push(e.to, e.witness, e.s_bits, e.t_ticks);
        i = e.to as usize;
    }
    path
}
