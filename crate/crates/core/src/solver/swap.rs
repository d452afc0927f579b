use super::{PathSummary, SolveError};
use crate::index::ParseGraph;

/// One way to cross from the infeasible path to the feasible one at node
/// `v`: the prefix of the left path up to `v` followed by the suffix of the
/// right path from `v`. An edge that spans `v` is cut into a shorter copy
/// with the same witness.
#[derive(Debug, Clone, Copy)]
struct Crossing {
    v: u32,
    /// Index in the left path of the last node at or before `v`.
    a: usize,
    /// Index in the right path of the first node at or after `v`.
    b: usize,
    s: u64,
    t: u64,
}

/// Splices the two paths of a dual basis into one path with
/// `t <= T + 2 t_max` and size at most `s_max` above the better of the
/// neighbouring crossings.
///
/// Consecutive crossings differ by at most one edge on each side, so the
/// totals move in steps bounded by `s_max` and `t_max`; the crossing at node
/// 0 is the feasible path and the one at node `n` the infeasible path.
pub fn path_swap_close_gap(
    infeasible: &PathSummary,
    feasible: &PathSummary,
    budget: u64,
    graph: &ParseGraph<'_>,
) -> Result<PathSummary, SolveError> {
    let (left, right) = (infeasible, feasible);
    let model = graph.model();
    let (s_max, t_max) = (graph.s_max() as u64, graph.t_max() as u64);
    let t_limit = budget.saturating_add(2 * t_max);

    let mut points: Vec<u32> = left.nodes.iter().chain(&right.nodes).copied().collect();
    points.sort_unstable();
    points.dedup();

    let connector = |witness: u32, len: u32| -> Result<(u64, u64), SolveError> {
        if witness == 0 {
            return Err(SolveError::GuaranteeViolated("literal edge spans a swap point".into()));
        }
        Ok((model.copy_bits(witness, len) as u64, model.copy_ticks(witness, len) as u64))
    };

    let mut chosen: Option<Crossing> = None;
    let mut prev: Option<Crossing> = None;
    let (mut a, mut b) = (0usize, 0usize);
    for &v in &points {
        while a + 1 < left.nodes.len() && left.nodes[a + 1] <= v {
            a += 1;
        }
        while right.nodes[b] < v {
            b += 1;
        }
        let (mut s, mut t) = (left.prefix_s[a], left.prefix_t[a]);
        if left.nodes[a] < v {
            let (cs, ct) = connector(left.witnesses[a], v - left.nodes[a])?;
            s += cs;
            t += ct;
        }
        s += right.s_bits() - right.prefix_s[b];
        t += right.t_ticks() - right.prefix_t[b];
        if right.nodes[b] > v {
            let (cs, ct) = connector(right.witnesses[b - 1], right.nodes[b] - v)?;
            s += cs;
            t += ct;
        }
        let here = Crossing { v, a, b, s, t };
        if let Some(p) = prev {
            if p.s.abs_diff(s) > s_max || p.t.abs_diff(t) > t_max {
                return Err(SolveError::GuaranteeViolated(format!(
                    "crossing step {} -> {} changes cost by ({}, {})",
                    p.v,
                    v,
                    p.s.abs_diff(s),
                    p.t.abs_diff(t)
                )));
            }
        }
        prev = Some(here);
        if t <= t_limit && chosen.is_none_or(|c| (s, t) < (c.s, c.t)) {
            chosen = Some(here);
        }
    }
    let c = chosen.ok_or_else(|| SolveError::GuaranteeViolated("no crossing within T + 2 t_max".into()))?;

    let mut path = PathSummary::start();
    for k in 0..c.a {
        path.push(
            left.nodes[k + 1],
            left.witnesses[k],
            (left.prefix_s[k + 1] - left.prefix_s[k]) as u32,
            (left.prefix_t[k + 1] - left.prefix_t[k]) as u32,
        );
    }
    let from = left.nodes[c.a];
    if from < c.v {
        let w = left.witnesses[c.a];
        let len = c.v - from;
        path.push(c.v, w, model.copy_bits(w, len), model.copy_ticks(w, len));
    }
    if right.nodes[c.b] > c.v {
        let w = right.witnesses[c.b - 1];
        let len = right.nodes[c.b] - c.v;
        path.push(right.nodes[c.b], w, model.copy_bits(w, len), model.copy_ticks(w, len));
    }
    for k in c.b..right.edge_count() {
        path.push(
            right.nodes[k + 1],
            right.witnesses[k],
            (right.prefix_s[k + 1] - right.prefix_s[k]) as u32,
            (right.prefix_t[k + 1] - right.prefix_t[k]) as u32,
        );
    }
    debug_assert_eq!((path.s_bits(), path.t_ticks()), (c.s, c.t));
    if !connectors_valid(&path, graph.text()) {
        return Err(SolveError::GuaranteeViolated("swapped path is not a valid parsing".into()));
    }
    Ok(path)
}

fn connectors_valid(path: &PathSummary, text: &[u8]) -> bool {
    (0..path.edge_count()).all(|k| {
        let (from, to) = (path.nodes[k] as usize, path.nodes[k + 1] as usize);
        match path.witnesses[k] as usize {
            0 => to == from + 1,
            d => d <= from && text[from..to] == text[from - d..to - d],
        }
    })
}
