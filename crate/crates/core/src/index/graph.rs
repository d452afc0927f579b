use std::ops::Range;

use super::{emit_edges, Edge, IndexError, MatchIndex};
use crate::cost::{cost_classes, CostClassTable, CostModel, MAX_COPY_LENGTH};

/// The pruned parse graph in compressed sparse row form.
///
/// Node `i` owns the edges `offsets[i]..offsets[i + 1]`, literal first, then
/// copies in increasing length.
pub struct ParseGraph<'t> {
    text: &'t [u8],
    classes: CostClassTable,
    offsets: Vec<u32>,
    targets: Vec<u32>,
    witnesses: Vec<u32>,
    s_bits: Vec<u8>,
    t_ticks: Vec<u32>,
}

impl<'t> ParseGraph<'t> {
    pub fn build(text: &'t [u8], model: CostModel) -> Result<ParseGraph<'t>, IndexError> {
        let classes = cost_classes(model, text.len());
        let index = MatchIndex::build(text, &classes)?;
        ParseGraph::from_index(&index)
    }

    pub fn from_index(index: &MatchIndex<'t>) -> Result<ParseGraph<'t>, IndexError> {
        let n = index.text().len();
        let mut graph = ParseGraph::empty(index.text(), index.classes().clone());
        let mut sweep = index.sweep();
        while let Some(edges) = sweep.next_node() {
            graph.push_node(edges)?;
        }
        debug_assert_eq!(graph.offsets.len(), n + 1);
        Ok(graph)
    }

    /// Graph whose edges come from [`brute_force_edges`]. Quadratic.
    pub fn brute_force(text: &'t [u8], model: CostModel) -> Result<ParseGraph<'t>, IndexError> {
        let classes = cost_classes(model, text.len());
        let mut graph = ParseGraph::empty(text, classes);
        for i in 0..text.len() {
            let edges = brute_force_edges(text, &graph.classes, i);
            graph.push_node(&edges)?;
        }
        Ok(graph)
    }

    fn empty(text: &'t [u8], classes: CostClassTable) -> ParseGraph<'t> {
        let cap = text.len() * 4;
        ParseGraph {
            text,
            classes,
            offsets: {
                let mut v = Vec::with_capacity(text.len() + 1);
                v.push(0);
                v
            },
            targets: Vec::with_capacity(cap),
            witnesses: Vec::with_capacity(cap),
            s_bits: Vec::with_capacity(cap),
            t_ticks: Vec::with_capacity(cap),
        }
    }

    fn push_node(&mut self, edges: &[Edge]) -> Result<(), IndexError> {
        for e in edges {
            self.targets.push(e.to);
            self.witnesses.push(e.witness);
            self.s_bits.push(u8::try_from(e.s_bits).expect("edge cost fits a byte"));
            self.t_ticks.push(e.t_ticks);
        }
        let end = u32::try_from(self.targets.len()).map_err(|_| IndexError::TooLarge(self.text.len()))?;
        self.offsets.push(end);
        Ok(())
    }

    /// Number of text bytes; nodes are `0..=n`.
    pub fn n(&self) -> usize {
        self.text.len()
    }

    pub fn text(&self) -> &'t [u8] {
        self.text
    }

    pub fn model(&self) -> &CostModel {
        &self.classes.model
    }

    pub fn classes(&self) -> &CostClassTable {
        &self.classes
    }

    pub fn s_max(&self) -> u32 {
        self.classes.s_max
    }

    pub fn t_max(&self) -> u32 {
        self.classes.t_max
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn mean_out_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            self.edge_count() as f64 / self.n() as f64
        }
    }

    pub fn max_out_degree(&self) -> usize {
        self.offsets.windows(2).map(|w| (w[1] - w[0]) as usize).max().unwrap_or(0)
    }

    #[inline]
    pub(crate) fn edge_range(&self, i: usize) -> Range<usize> {
        self.offsets[i] as usize..self.offsets[i + 1] as usize
    }

    #[inline]
    pub(crate) fn edge_at(&self, i: usize, k: usize) -> Edge {
        Edge {
            from: i as u32,
            to: self.targets[k],
            witness: self.witnesses[k],
            s_bits: self.s_bits[k] as u32,
            t_ticks: self.t_ticks[k],
        }
    }

    #[inline]
    pub(crate) fn target(&self, k: usize) -> usize {
        self.targets[k] as usize
    }

    #[inline]
    pub(crate) fn cost(&self, k: usize) -> (u32, u32) {
        (self.s_bits[k] as u32, self.t_ticks[k])
    }

    /// Out-edges of node `i < n`.
    pub fn edges(&self, i: usize) -> impl ExactSizeIterator<Item = Edge> + '_ {
        self.edge_range(i).map(move |k| self.edge_at(i, k))
    }
}

/// Maximal edges of node `i` by direct comparison against every earlier
/// position. Witnesses are the smallest distances. Quadratic; meant as a
/// reference for small texts.
pub fn brute_force_edges(text: &[u8], classes: &CostClassTable, i: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    if i >= text.len() {
        return out;
    }
    let max_len = (text.len() - i).min(MAX_COPY_LENGTH as usize);
    let lengths: Vec<u32> = (1..=i)
        .map(|d| {
            (0..max_len)
                .take_while(|&k| text[i + k] == text[i - d + k])
                .count() as u32
        })
        .collect();
    let best: Vec<(u32, u32)> = classes
        .distance_ceilings
        .iter()
        .map(|&ceiling| {
            let top = (ceiling as usize).min(i);
            let mut found = (0u32, 0u32);
            for d in 1..=top {
                if lengths[d - 1] > found.0 {
                    found = (lengths[d - 1], d as u32);
                }
            }
            found
        })
        .collect();
    emit_edges(i, &best, classes, &mut out);
    out
}
