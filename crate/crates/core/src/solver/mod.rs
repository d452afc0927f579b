//! Time-budgeted parsing.
//!
//! [`solve`] finds a parsing whose decode time is at most `T + 2 t_max` and
//! whose size is at most `z* + s_max`, where `z*` is the Lagrangian lower
//! bound on the optimum under budget `T`. [`solve_fptas`] adds a size-bounded
//! exhaustive search for instances where that additive gap is large
//! relative to the optimum.

mod cutting_plane;
mod fptas;
mod scalarized;
mod swap;

pub use cutting_plane::{cutting_plane, iteration_cap, CuttingPlaneOutcome, DualBasis};
pub use fptas::{solve_fptas, FptasGrid};
pub use scalarized::{shortest_path_scalarized, space_optimal, time_optimal, Tiebreak};
pub use swap::path_swap_close_gap;

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::cost::{CostModel, Phrase};
use crate::index::{IndexError, ParseGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("no parsing decodes within {budget} ticks; the fastest needs {min_ticks}")]
    Infeasible { budget: u64, min_ticks: u64 },
    #[error("cutting plane did not converge within {0} iterations")]
    IterationLimit(u32),
    #[error("approximation guarantee violated: {0}")]
    GuaranteeViolated(String),
    #[error("epsilon must be a positive finite number")]
    InvalidEpsilon,
    #[error("exhaustive search grid of {0} cells is too large")]
    GridTooLarge(u128),
    #[error(transparent)]
    Index(#[from] IndexError),
}

/// A `0 -> n` path with per-edge costs and running totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSummary {
    /// Visited nodes, starting at 0.
    pub nodes: Vec<u32>,
    /// Witness distance of each edge; 0 for literals.
    pub witnesses: Vec<u32>,
    /// `prefix_s[k]` is the size of the first `k` edges.
    pub prefix_s: Vec<u64>,
    pub prefix_t: Vec<u64>,
}

impl PathSummary {
    pub(crate) fn start() -> PathSummary {
        PathSummary {
            nodes: vec![0],
            witnesses: Vec::new(),
            prefix_s: vec![0],
            prefix_t: vec![0],
        }
    }

    pub(crate) fn push(&mut self, to: u32, witness: u32, s: u32, t: u32) {
        self.nodes.push(to);
        self.witnesses.push(witness);
        self.prefix_s.push(self.s_bits() + s as u64);
        self.prefix_t.push(self.t_ticks() + t as u64);
    }

    pub fn s_bits(&self) -> u64 {
        *self.prefix_s.last().unwrap()
    }

    pub fn t_ticks(&self) -> u64 {
        *self.prefix_t.last().unwrap()
    }

    pub fn edge_count(&self) -> usize {
        self.witnesses.len()
    }

    pub fn phrases(&self, text: &[u8]) -> Vec<Phrase> {
        (0..self.edge_count())
            .map(|k| {
                let (from, to) = (self.nodes[k], self.nodes[k + 1]);
                match self.witnesses[k] {
                    0 => Phrase::Literal(text[from as usize]),
                    d => Phrase::Copy {
                        distance: d,
                        length: to - from,
                    },
                }
            })
            .collect()
    }

    /// Checks that every copy is a real repetition and that the stored costs
    /// match the model.
    pub fn verify(&self, text: &[u8], model: &CostModel) -> bool {
        if self.nodes.first() != Some(&0) || *self.nodes.last().unwrap() as usize != text.len() {
            return false;
        }
        for k in 0..self.edge_count() {
            let (from, to) = (self.nodes[k] as usize, self.nodes[k + 1] as usize);
            if to <= from {
                return false;
            }
            let (s, t) = match self.witnesses[k] {
                0 if to == from + 1 => (model.literal_bits(), model.literal_ticks()),
                0 => return false,
                d => {
                    let (d, len) = (d as usize, to - from);
                    if d > from || len > crate::cost::MAX_COPY_LENGTH as usize {
                        return false;
                    }
                    if (0..len).any(|x| text[from + x] != text[from - d + x]) {
                        return false;
                    }
                    (model.copy_bits(d as u32, len as u32), model.copy_ticks(d as u32, len as u32))
                }
            };
            if self.prefix_s[k + 1] - self.prefix_s[k] != s as u64
                || self.prefix_t[k + 1] - self.prefix_t[k] != t as u64
            {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    /// The parsing minimizes size among all parsings within the budget.
    Optimal,
    /// The parsing carries only the additive guarantee.
    Additive,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub path: PathSummary,
    pub parsing: Vec<Phrase>,
    pub s_bits: u64,
    pub t_ticks: u64,
    pub budget: u64,
    /// Lagrangian lower bound on the optimal size under the budget.
    pub z_star: Ratio<u128>,
    /// Multiplier of the final basis; `None` when no multiplier was needed.
    pub lambda: Option<Ratio<u64>>,
    pub iterations: u32,
    pub exactness: Exactness,
    pub s_max: u32,
    pub t_max: u32,
    /// Ticks spent on per-byte decoder bookkeeping, `2n`. Not part of the
    /// budget.
    pub decode_base_ticks: u64,
}

impl SolveReport {
    /// `s - z*`. Negative only when the path exceeds the budget.
    pub fn slack_s(&self) -> Ratio<i128> {
        Ratio::new(
            self.s_bits as i128 * *self.z_star.denom() as i128 - *self.z_star.numer() as i128,
            *self.z_star.denom() as i128,
        )
    }

    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Optimal
    }

    pub fn report_line(&self) -> String {
        let lambda = self.lambda.map_or_else(|| "inf".to_string(), |l| l.to_string());
        format!(
            "s_bits={} t_ticks={} z_star={} lambda={} iters={} exact={}",
            self.s_bits,
            self.t_ticks,
            self.z_star,
            lambda,
            self.iterations,
            self.is_exact()
        )
    }
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.report_line())
    }
}

/// Builds the pruned graph and solves it.
pub fn solve(text: &[u8], model: CostModel, budget: u64) -> Result<SolveReport, SolveError> {
    let graph = ParseGraph::build(text, model)?;
    solve_graph(&graph, budget)
}

pub fn solve_graph(graph: &ParseGraph<'_>, budget: u64) -> Result<SolveReport, SolveError> {
    match cutting_plane(graph, budget)? {
        CuttingPlaneOutcome::Exact { path, lambda, iterations } => {
            let z = Ratio::from_integer(path.s_bits() as u128);
            Ok(report(graph, path, budget, z, lambda, iterations, Exactness::Optimal))
        }
        CuttingPlaneOutcome::Basis(basis) => {
            let path = path_swap_close_gap(&basis.infeasible, &basis.feasible, budget, graph)?;
            let s_cap = basis.z_star.ceil().to_integer() + graph.s_max() as u128;
            if path.s_bits() as u128 > s_cap {
                return Err(SolveError::GuaranteeViolated(format!(
                    "size {} exceeds ceil(z*) + s_max = {}",
                    path.s_bits(),
                    s_cap
                )));
            }
            Ok(report(
                graph,
                path,
                budget,
                basis.z_star,
                Some(basis.lambda),
                basis.iterations,
                Exactness::Additive,
            ))
        }
    }
}

pub(crate) fn report(
    graph: &ParseGraph<'_>,
    path: PathSummary,
    budget: u64,
    z_star: Ratio<u128>,
    lambda: Option<Ratio<u64>>,
    iterations: u32,
    exactness: Exactness,
) -> SolveReport {
    SolveReport {
        parsing: path.phrases(graph.text()),
        s_bits: path.s_bits(),
        t_ticks: path.t_ticks(),
        path,
        budget,
        z_star,
        lambda,
        iterations,
        exactness,
        s_max: graph.s_max(),
        t_max: graph.t_max(),
        decode_base_ticks: 2 * graph.n() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{SpaceModel, TimeModel};

    fn model() -> CostModel {
        CostModel::new(SpaceModel::ByteOriented, TimeModel::log())
    }

    #[test]
    fn generous_budget_gives_space_optimum() {
        let text = b"abcabcabcabcabcabcXabcabcabc";
        let g = ParseGraph::build(text, model()).unwrap();
        let best = space_optimal(&g);
        let r = solve_graph(&g, u64::MAX / 4).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.s_bits, best.s_bits());
        assert_eq!(r.lambda, Some(Ratio::from_integer(0)));
        assert!(r.path.verify(text, g.model()));
        assert_eq!(r.decode_base_ticks, 2 * text.len() as u64);
    }

    #[test]
    fn tight_budget_is_infeasible() {
        let text = b"aaaaaaaaaaaaaaaaaaaaaaaa";
        let g = ParseGraph::build(text, model()).unwrap();
        let fastest = time_optimal(&g).t_ticks();
        let err = solve_graph(&g, fastest - 1).unwrap_err();
        assert_eq!(
            err,
            SolveError::Infeasible {
                budget: fastest - 1,
                min_ticks: fastest
            }
        );
        let r = solve_graph(&g, fastest).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.t_ticks, fastest);
        assert_eq!(r.lambda, None);
        assert!(r.report_line().contains("lambda=inf"));
    }

    #[test]
    fn empty_text_solves_trivially() {
        let r = solve(b"", model(), 0).unwrap();
        assert_eq!((r.s_bits, r.t_ticks), (0, 0));
        assert!(r.parsing.is_empty());
    }

    #[test]
    fn report_line_format() {
        let text = b"abababababababab";
        let r = solve(text, model(), u64::MAX / 4).unwrap();
        let line = r.report_line();
        for key in ["s_bits=", "t_ticks=", "z_star=", "lambda=", "iters=", "exact=true"] {
            assert!(line.contains(key), "{line}");
        }
    }
}
