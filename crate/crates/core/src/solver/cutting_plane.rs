use num_rational::Ratio;

use super::scalarized::{space_optimal, time_optimal, weighted_shortest_path, Tiebreak, Weights};
use super::{PathSummary, SolveError};
use crate::index::ParseGraph;

/// Two paths optimal for the same multiplier, one on each side of the
/// budget.
#[derive(Debug, Clone)]
pub struct DualBasis {
    pub lambda: Ratio<u64>,
    /// Over budget: `t > T`.
    pub infeasible: PathSummary,
    /// Under budget: `t < T`.
    pub feasible: PathSummary,
    /// `s + lambda * (t - T)` of either path.
    pub z_star: Ratio<u128>,
    pub iterations: u32,
}

#[derive(Debug, Clone)]
pub enum CuttingPlaneOutcome {
    /// A path that is provably optimal under the budget.
    Exact {
        path: PathSummary,
        lambda: Option<Ratio<u64>>,
        iterations: u32,
    },
    Basis(DualBasis),
}

/// Upper bound on cutting-plane iterations, `4 * ceil(log2(n * t_max * s_max))`.
pub fn iteration_cap(n: usize, t_max: u32, s_max: u32) -> u32 {
    let x = (n.max(1) as u128) * t_max.max(1) as u128 * s_max.max(1) as u128;
    let log = 128 - (x.max(2) - 1).leading_zeros();
    4 * log
}

/// Maximizes the Lagrangian dual of the budgeted problem by bisecting the
/// lower convex hull of the path costs.
pub fn cutting_plane(graph: &ParseGraph<'_>, budget: u64) -> Result<CuttingPlaneOutcome, SolveError> {
    let fastest = time_optimal(graph);
    if fastest.t_ticks() > budget {
        return Err(SolveError::Infeasible {
            budget,
            min_ticks: fastest.t_ticks(),
        });
    }
    if fastest.t_ticks() == budget {
        return Ok(CuttingPlaneOutcome::Exact {
            path: fastest,
            lambda: None,
            iterations: 0,
        });
    }
    let smallest = space_optimal(graph);
    if smallest.t_ticks() <= budget {
        return Ok(CuttingPlaneOutcome::Exact {
            path: smallest,
            lambda: Some(Ratio::from_integer(0)),
            iterations: 0,
        });
    }

    let cap = iteration_cap(graph.n(), graph.t_max(), graph.s_max());
    let (mut left, mut right) = (smallest, fastest);
    let mut iterations = 0;
    loop {
        // Slope of the hull segment joining the two paths.
        let p = right.s_bits() - left.s_bits();
        let q = left.t_ticks() - right.t_ticks();
        debug_assert!(p > 0 && q > 0);
        let lambda = Ratio::new(p, q);
        if iterations == cap {
            return Err(SolveError::IterationLimit(cap));
        }
        iterations += 1;
        let w = Weights::from_lambda(lambda);
        let candidate = weighted_shortest_path(graph, w, Tiebreak::PreferLowTime);
        let l_cand = w.apply(candidate.s_bits(), candidate.t_ticks());
        let l_left = w.apply(left.s_bits(), left.t_ticks());
        debug_assert!(l_cand <= l_left);
        if l_cand == l_left {
            let (p, q) = (*lambda.numer() as u128, *lambda.denom() as u128);
            let numer = q * left.s_bits() as u128 + p * (left.t_ticks() - budget) as u128;
            return Ok(CuttingPlaneOutcome::Basis(DualBasis {
                lambda,
                infeasible: left,
                feasible: right,
                z_star: Ratio::new(numer, q),
                iterations,
            }));
        }
        if candidate.t_ticks() == budget {
            return Ok(CuttingPlaneOutcome::Exact {
                path: candidate,
                lambda: Some(lambda),
                iterations,
            });
        }
        if candidate.t_ticks() > budget {
            left = candidate;
        } else {
            right = candidate;
        }
    }
}
