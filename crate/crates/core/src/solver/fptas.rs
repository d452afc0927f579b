use num_rational::Ratio;

use super::{report, solve_graph, Exactness, PathSummary, SolveError, SolveReport};
use crate::index::ParseGraph;

const NONE: u32 = u32::MAX;

/// Largest exhaustive-search grid, in cells.
const MAX_GRID_CELLS: u128 = 1 << 25;

/// Exhaustive search over exact `(size, time)` totals.
///
/// Cell `(s, t)` holds the farthest node reachable by a path of exactly that
/// size and time. A farther node dominates a nearer one with the same
/// totals, so one node per cell suffices. Paths are extended in rounds
/// until no cell improves.
pub struct FptasGrid {
    space_bound: u64,
    time_bound: u64,
    cells: Vec<u32>,
    arena: Vec<Step>,
    pub rounds: u32,
}

#[derive(Clone, Copy)]
struct Step {
    node: u32,
    parent: u32,
    witness: u32,
    s: u32,
    t: u32,
}

impl FptasGrid {
    pub fn new(space_bound: u64, time_bound: u64) -> Result<FptasGrid, SolveError> {
        let cells = (space_bound as u128 + 1) * (time_bound as u128 + 1);
        if cells > MAX_GRID_CELLS {
            return Err(SolveError::GridTooLarge(cells));
        }
        Ok(FptasGrid {
            space_bound,
            time_bound,
            cells: vec![NONE; cells as usize],
            arena: Vec::new(),
            rounds: 0,
        })
    }

    #[inline]
    fn cell(&self, s: u64, t: u64) -> usize {
        (s * (self.time_bound + 1) + t) as usize
    }

    /// Smallest-size path to `n` within both bounds; ties go to less time.
    pub fn search(&mut self, graph: &ParseGraph<'_>) -> Option<PathSummary> {
        let n = graph.n() as u32;
        self.arena.push(Step {
            node: 0,
            parent: NONE,
            witness: 0,
            s: 0,
            t: 0,
        });
        let origin = self.cell(0, 0);
        self.cells[origin] = 0;
        let mut frontier = vec![(0u64, 0u64)];
        let mut queued = vec![0u32; self.cells.len()];
        while !frontier.is_empty() {
            self.rounds += 1;
            let stamp = self.rounds;
            let mut next = Vec::new();
            for &(s, t) in &frontier {
                let at = self.cells[self.cell(s, t)];
                let node = self.arena[at as usize].node;
                if node == n {
                    continue;
                }
                for k in graph.edge_range(node as usize) {
                    let (es, et) = graph.cost(k);
                    let (s2, t2) = (s + es as u64, t + et as u64);
                    if s2 > self.space_bound || t2 > self.time_bound {
                        continue;
                    }
                    let to = graph.target(k) as u32;
                    let c = self.cell(s2, t2);
                    let cur = self.cells[c];
                    if cur != NONE && self.arena[cur as usize].node >= to {
                        continue;
                    }
                    self.cells[c] = self.arena.len() as u32;
                    self.arena.push(Step {
                        node: to,
                        parent: at,
                        witness: graph.edge_at(node as usize, k).witness,
                        s: es,
                        t: et,
                    });
                    if queued[c] != stamp {
                        queued[c] = stamp;
                        next.push((s2, t2));
                    }
                }
            }
            frontier = next;
        }
        for s in 0..=self.space_bound {
            for t in 0..=self.time_bound {
                let at = self.cells[self.cell(s, t)];
                if at != NONE && self.arena[at as usize].node == n {
                    return Some(self.unwind(at));
                }
            }
        }
        None
    }

    fn unwind(&self, mut at: u32) -> PathSummary {
        let mut steps = Vec::new();
        while self.arena[at as usize].parent != NONE {
            steps.push(self.arena[at as usize]);
            at = self.arena[at as usize].parent;
        }
        let mut path = PathSummary::start();
        for st in steps.iter().rev() {
            path.push(st.node, st.witness, st.s, st.t);
        }
        path
    }
}

/// `(1 + eps)`-approximation of the size under a `(1 + 2 eps)` time
/// allowance.
///
/// Runs [`solve_graph`] and keeps its answer when it is exact. When the
/// budget is small relative to `t_max / eps`, or the Lagrangian bound is
/// small relative to `s_max / eps`, the optimum is found by exhaustive
/// search instead, since in those regimes the additive gap is not within a
/// factor `eps` of the optimum.
pub fn solve_fptas(graph: &ParseGraph<'_>, budget: u64, epsilon: f64) -> Result<SolveReport, SolveError> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(SolveError::InvalidEpsilon);
    }
    let base = solve_graph(graph, budget)?;
    if base.is_exact() {
        return Ok(base);
    }
    let t_threshold = (graph.t_max() as f64 / epsilon).ceil() as u64;
    let s_threshold = (graph.s_max() as f64 / epsilon).ceil() as u64;
    let space_bound = if budget < t_threshold {
        // Every edge costs at least as many ticks as bits.
        budget
    } else if Ratio::from_integer(s_threshold as u128) > base.z_star {
        s_threshold
    } else {
        return Ok(base);
    };
    let time_bound = budget.min(space_bound.saturating_mul(graph.t_max() as u64));
    let mut grid = FptasGrid::new(space_bound, time_bound)?;
    match grid.search(graph) {
        Some(path) => {
            let z = Ratio::from_integer(path.s_bits() as u128);
            Ok(report(
                graph,
                path,
                budget,
                z,
                base.lambda,
                base.iterations,
                Exactness::Optimal,
            ))
        }
        None => Ok(base),
    }
}
