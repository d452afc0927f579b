//! Compression levels, level sweeps and the pathological family of strings
//! with many Pareto-optimal parsings.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

use crate::index::ParseGraph;
use crate::solver::{solve_graph, space_optimal, time_optimal, SolveError, SolveReport};

/// Maps a level `C` in `[0, 1]` to a budget between the time-optimal and the
/// space-optimal parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelMapping {
    /// Ticks of the fastest parsing.
    pub fastest: u64,
    /// Ticks of the smallest parsing.
    pub smallest: u64,
}

impl LevelMapping {
    pub fn for_graph(graph: &ParseGraph<'_>) -> LevelMapping {
        LevelMapping {
            fastest: time_optimal(graph).t_ticks(),
            smallest: space_optimal(graph).t_ticks(),
        }
    }

    /// `T_t + C (T_s - T_t)`, rounded to the nearest tick.
    pub fn budget(&self, level: f64) -> u64 {
        let level = level.clamp(0.0, 1.0);
        let span = self.smallest.saturating_sub(self.fastest);
        self.fastest + (level * span as f64).round() as u64
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LevelError {
    #[error("expected `start:end:step`, got `{0}`")]
    Syntax(String),
    #[error("levels must satisfy 0 <= start <= end <= 1 and step > 0")]
    OutOfRange,
}

/// Evenly spaced levels `start, start + step, ..., end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelRange {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl LevelRange {
    pub fn new(start: f64, end: f64, step: f64) -> Result<LevelRange, LevelError> {
        let ok = (0.0..=1.0).contains(&start) && (start..=1.0).contains(&end) && step > 0.0 && step.is_finite();
        if !ok {
            return Err(LevelError::OutOfRange);
        }
        Ok(LevelRange { start, end, step })
    }

    pub fn levels(&self) -> Vec<f64> {
        let count = ((self.end - self.start) / self.step).round() as usize + 1;
        (0..count)
            .map(|k| {
                let x = self.start + k as f64 * self.step;
                ((x * 1e9).round() / 1e9).min(self.end)
            })
            .collect()
    }
}

impl FromStr for LevelRange {
    type Err = LevelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let nums: Option<Vec<f64>> = parts.iter().map(|p| p.trim().parse().ok()).collect();
        match nums.as_deref() {
            Some(&[a, b, step]) => LevelRange::new(a, b, step),
            Some(&[a]) => LevelRange::new(a, a, 1.0),
            _ => Err(LevelError::Syntax(s.to_string())),
        }
    }
}

pub const SWEEP_CSV_HEADER: &str = "level,T,s_bits,t_ticks,z_star,exact";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub level: f64,
    pub budget: u64,
    pub s_bits: u64,
    pub t_ticks: u64,
    pub z_star: Ratio<u128>,
    pub exact: bool,
}

impl SweepRow {
    fn from_report(level: f64, r: &SolveReport) -> SweepRow {
        SweepRow {
            level,
            budget: r.budget,
            s_bits: r.s_bits,
            t_ticks: r.t_ticks,
            z_star: r.z_star,
            exact: r.is_exact(),
        }
    }
}

impl fmt::Display for SweepRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{}",
            self.level, self.budget, self.s_bits, self.t_ticks, self.z_star, self.exact
        )
    }
}

/// Solves the graph once per level, in level order.
pub fn sweep(graph: &ParseGraph<'_>, levels: &[f64]) -> Result<Vec<SweepRow>, SolveError> {
    let mapping = LevelMapping::for_graph(graph);
    levels
        .iter()
        .map(|&level| {
            let report = solve_graph(graph, mapping.budget(level))?;
            Ok(SweepRow::from_report(level, &report))
        })
        .collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathologicalError {
    #[error("pattern must be non-empty")]
    EmptyPattern,
    #[error("pattern must not contain `$`")]
    DollarInPattern,
    #[error("c must be at least 1")]
    ZeroPadding,
}

/// `B_0 B_1 ... B_m` with `B_i = '$'^(c + i) P`.
pub fn gen_pathological(pattern: &[u8], c: usize, m: usize) -> Result<Vec<u8>, PathologicalError> {
    if pattern.is_empty() {
        return Err(PathologicalError::EmptyPattern);
    }
    if pattern.contains(&b'$') {
        return Err(PathologicalError::DollarInPattern);
    }
    if c == 0 {
        return Err(PathologicalError::ZeroPadding);
    }
    let mut out = Vec::new();
    for i in 0..=m {
        out.extend(std::iter::repeat_n(b'$', c + i));
        out.extend_from_slice(pattern);
    }
    Ok(out)
}
