//! Longest-match queries and the pruned parse graph.
//!
//! For every position `i` and every distance class `D_c` the index finds the
//! longest match of `text[i..]` starting within `D_c` bytes behind `i`. The
//! maximal edges leaving `i` are derived from those lengths: since costs are
//! monotone in distance and length, an edge is only worth keeping if no edge
//! with a smaller distance class reaches as far.

mod graph;
mod suffix;
mod window;

pub use graph::{brute_force_edges, ParseGraph};

use thiserror::Error;

use crate::cost::{CostClassTable, MAX_COPY_LENGTH};
use suffix::SuffixData;
use window::RankSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("text length {text} does not match class table length {table}")]
    LengthMismatch { text: usize, table: u32 },
    #[error("text of {0} bytes is too large to index")]
    TooLarge(usize),
}

/// A back-reference candidate: the text at `i - distance` repeats for
/// `length` bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Match {
    pub length: u32,
    pub distance: u32,
}

/// Edge `(from, to)` of the parse graph. `witness == 0` marks a literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: u32,
    pub to: u32,
    pub witness: u32,
    pub s_bits: u32,
    pub t_ticks: u32,
}

impl Edge {
    pub fn is_literal(&self) -> bool {
        self.witness == 0
    }

    pub fn length(&self) -> u32 {
        self.to - self.from
    }
}

pub struct MatchIndex<'t> {
    text: &'t [u8],
    classes: CostClassTable,
    suffix: SuffixData,
}

impl<'t> MatchIndex<'t> {
    pub fn build(text: &'t [u8], classes: &CostClassTable) -> Result<MatchIndex<'t>, IndexError> {
        if text.len() >= u32::MAX as usize {
            return Err(IndexError::TooLarge(text.len()));
        }
        if !text.is_empty() && text.len() != classes.n as usize {
            return Err(IndexError::LengthMismatch {
                text: text.len(),
                table: classes.n,
            });
        }
        Ok(MatchIndex {
            text,
            classes: classes.clone(),
            suffix: SuffixData::build(text),
        })
    }

    pub fn text(&self) -> &'t [u8] {
        self.text
    }

    pub fn classes(&self) -> &CostClassTable {
        &self.classes
    }

    pub fn suffix_array(&self) -> &[u32] {
        &self.suffix.sa
    }

    /// Longest match of `text[i..]` with a source in `[i - max_distance, i)`,
    /// capped at the copy length cap. Ties go to the smallest distance.
    pub fn longest_match_within(&self, i: usize, max_distance: u32) -> Option<Match> {
        let n = self.text.len();
        if i >= n || i == 0 || max_distance == 0 {
            return None;
        }
        let lo = i.saturating_sub(max_distance as usize);
        let sd = &self.suffix;
        let r = sd.rank[i] as usize;
        let mut best = Match { length: 0, distance: 0 };
        let consider = |best: &mut Match, run: u32, p: usize| {
            if p < i && p >= lo {
                let d = (i - p) as u32;
                if run > best.length || (run == best.length && d < best.distance) {
                    *best = Match { length: run, distance: d };
                }
            }
        };
        let mut run = u32::MAX;
        for k in (0..r).rev() {
            run = run.min(sd.lcp[k + 1] as u32);
            if run == 0 || run < best.length {
                break;
            }
            consider(&mut best, run, sd.sa[k] as usize);
        }
        let mut run = u32::MAX;
        for k in r + 1..n {
            run = run.min(sd.lcp[k] as u32);
            if run == 0 || run < best.length {
                break;
            }
            consider(&mut best, run, sd.sa[k] as usize);
        }
        (best.length > 0).then_some(best)
    }

    /// Maximal edges leaving `i`, found by independent queries per class.
    pub fn maximal_edges(&self, i: usize) -> Vec<Edge> {
        let mut out = Vec::new();
        if i >= self.text.len() {
            return out;
        }
        let max_len = self.max_len_at(i);
        let mut best = Vec::with_capacity(self.classes.distance_ceilings.len());
        for &ceiling in &self.classes.distance_ceilings {
            let m = self
                .longest_match_within(i, ceiling)
                .map(|m| (m.length.min(max_len), m.distance))
                .unwrap_or((0, 0));
            best.push(m);
            if m.0 == max_len {
                break;
            }
        }
        emit_edges(i, &best, &self.classes, &mut out);
        out
    }

    /// Streams the maximal edges of every node in increasing order.
    pub fn sweep(&self) -> EdgeSweep<'_, 't> {
        let universe = self.text.len();
        EdgeSweep {
            index: self,
            sets: self
                .classes
                .distance_ceilings
                .iter()
                .map(|_| RankSet::new(universe))
                .collect(),
            next: 0,
            best: Vec::with_capacity(self.classes.distance_ceilings.len()),
            buf: Vec::new(),
        }
    }

    fn max_len_at(&self, i: usize) -> u32 {
        ((self.text.len() - i) as u64).min(MAX_COPY_LENGTH as u64) as u32
    }
}

/// Left-to-right generator of maximal edges.
///
/// One sliding-window rank set per distance class holds the suffix ranks of
/// the positions `[i - D_c, i)`. The best match within the window is at the
/// predecessor or successor of `rank(i)`.
pub struct EdgeSweep<'a, 't> {
    index: &'a MatchIndex<'t>,
    sets: Vec<RankSet>,
    next: usize,
    best: Vec<(u32, u32)>,
    buf: Vec<Edge>,
}

impl EdgeSweep<'_, '_> {
    /// Edges of the next node, or `None` once all `n` nodes are done.
    pub fn next_node(&mut self) -> Option<&[Edge]> {
        let index = self.index;
        let n = index.text.len();
        let i = self.next;
        if i >= n {
            return None;
        }
        self.next += 1;
        let sd = &index.suffix;
        let ceilings = &index.classes.distance_ceilings;
        if i > 0 {
            let entering = sd.rank[i - 1];
            for (set, &ceiling) in self.sets.iter_mut().zip(ceilings) {
                set.insert(entering);
                let ceiling = ceiling as usize;
                if i > ceiling {
                    set.remove(sd.rank[i - 1 - ceiling]);
                }
            }
        }

        let r = sd.rank[i];
        let max_len = index.max_len_at(i);
        self.best.clear();
        let mut cache: [(u32, u32); 2] = [(u32::MAX, 0); 2];
        for set in &self.sets {
            let mut found = (0u32, 0u32);
            for (slot, neighbor) in [set.pred(r), set.succ(r)].into_iter().enumerate() {
                let Some(nr) = neighbor else { continue };
                let len = if cache[slot].0 == nr {
                    cache[slot].1
                } else {
                    let l = sd.lcp_of_ranks(r, nr).min(max_len);
                    cache[slot] = (nr, l);
                    l
                };
                if len == 0 {
                    continue;
                }
                let d = (i - sd.sa[nr as usize] as usize) as u32;
                if len > found.0 || (len == found.0 && d < found.1) {
                    found = (len, d);
                }
            }
            self.best.push(found);
            if found.0 == max_len {
                break;
            }
        }
        self.buf.clear();
        emit_edges(i, &self.best, &index.classes, &mut self.buf);
        Some(&self.buf)
    }
}

/// Turns per-class longest matches `(length, witness)` into maximal edges.
pub(crate) fn emit_edges(i: usize, best: &[(u32, u32)], classes: &CostClassTable, out: &mut Vec<Edge>) {
    let model = &classes.model;
    let from = i as u32;
    out.push(Edge {
        from,
        to: from + 1,
        witness: 0,
        s_bits: model.literal_bits(),
        t_ticks: model.literal_ticks(),
    });
    let first_copy = out.len();
    let push = |out: &mut Vec<Edge>, d: u32, len: u32| {
        let e = Edge {
            from,
            to: from + len,
            witness: d,
            s_bits: model.copy_bits(d, len),
            t_ticks: model.copy_ticks(d, len),
        };
        if let Some(last) = out[first_copy..].last_mut() {
            if last.s_bits == e.s_bits && last.t_ticks == e.t_ticks {
                *last = e;
                return;
            }
        }
        out.push(e);
    };
    let mut prev = 0u32;
    for &(len, d) in best {
        if len <= prev {
            continue;
        }
        for &lc in &classes.length_ceilings {
            if lc > prev && lc < len {
                push(out, d, lc);
            }
        }
        push(out, d, len);
        prev = len;
    }
}
