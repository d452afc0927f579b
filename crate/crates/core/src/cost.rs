//! Space and time cost functions on LZ77 phrases.
//!
//! A phrase is either a literal byte or a back-reference `(distance, length)`.
//! Every cost here is an integer: space in bits, time in model ticks. The
//! decode time of a copy is its random-access latency `t(d)` plus the time to
//! read its codeword, which is charged one tick per codeword bit, so
//! `t(d, l) = t(d) + s(d, l)`.
//!
//! Both families of functions are non-decreasing in distance and in length,
//! which is what makes the parse graph prunable (see [`crate::index`]).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Longest copy the byte-oriented container can express.
pub const MAX_COPY_LENGTH: u32 = 8191;

/// Longest distance the byte-oriented container can express.
pub const MAX_COPY_DISTANCE: u32 = u32::MAX;

/// Distances strictly below this hit the first memory level.
pub const NEAR_THRESHOLD: u32 = 16_000;

/// Distances up to and including this hit the second memory level.
pub const FAR_THRESHOLD: u32 = 2_300_000;

/// Placeholder latencies used when no calibration file is supplied.
pub const DEFAULT_MISS_TICKS: [u32; 3] = [25, 130, 500];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CostError {
    #[error("copy distance must be at least 1")]
    ZeroDistance,
    #[error("copy length must be at least 1")]
    ZeroLength,
    #[error("phrase exceeds format cap (distance {distance}, length {length})")]
    CapExceeded { distance: u64, length: u64 },
}

/// One unit of an LZ77 parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phrase {
    Literal(u8),
    Copy { distance: u32, length: u32 },
}

impl Phrase {
    /// Builds a copy phrase, checking the distance and length caps.
    pub fn copy(distance: u64, length: u64) -> Result<Phrase, CostError> {
        if distance == 0 {
            return Err(CostError::ZeroDistance);
        }
        if length == 0 {
            return Err(CostError::ZeroLength);
        }
        if length > MAX_COPY_LENGTH as u64 || distance > MAX_COPY_DISTANCE as u64 {
            return Err(CostError::CapExceeded { distance, length });
        }
        Ok(Phrase::Copy {
            distance: distance as u32,
            length: length as u32,
        })
    }

    pub fn validate(&self) -> Result<(), CostError> {
        match *self {
            Phrase::Literal(_) => Ok(()),
            Phrase::Copy { distance, length } => Phrase::copy(distance as u64, length as u64).map(|_| ()),
        }
    }

    /// Number of text bytes the phrase expands to.
    pub fn len(&self) -> usize {
        match *self {
            Phrase::Literal(_) => 1,
            Phrase::Copy { length, .. } => length as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Phrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phrase::Literal(c) => write!(f, "<0,{c:#04x}>"),
            Phrase::Copy { distance, length } => write!(f, "<{distance},{length}>"),
        }
    }
}

/// Bits of the Elias gamma code of `x >= 1`.
#[inline]
pub fn gamma_bits(x: u32) -> u32 {
    debug_assert!(x >= 1);
    2 * (31 - x.leading_zeros()) + 1
}

/// Bytes needed for `distance` in the byte-oriented codeword.
#[inline]
pub fn distance_bytes(distance: u32) -> u32 {
    match distance {
        0..=0xFF => 1,
        0x100..=0xFFFF => 2,
        0x1_0000..=0xFF_FFFF => 3,
        _ => 4,
    }
}

/// How codewords are sized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceModel {
    /// The container format: 1 header byte, an optional length-extension
    /// byte and 1 to 4 distance bytes. Literals take 3 bytes.
    ByteOriented,
    /// Gamma-coded distance plus gamma-coded length; literals are a flag bit
    /// plus 8 raw bits.
    EliasGamma,
    /// Every phrase costs one unit, so space counts phrases.
    Fixed,
}

impl SpaceModel {
    pub fn literal_bits(self) -> u32 {
        match self {
            SpaceModel::ByteOriented => 24,
            SpaceModel::EliasGamma => 9,
            SpaceModel::Fixed => 1,
        }
    }

    /// Codeword bits of a copy. Callers guarantee `distance, length >= 1`.
    #[inline]
    pub fn copy_bits(self, distance: u32, length: u32) -> u32 {
        match self {
            SpaceModel::ByteOriented => {
                let ext = u32::from(length > 31);
                8 * (1 + ext + distance_bytes(distance))
            }
            SpaceModel::EliasGamma => gamma_bits(distance) + gamma_bits(length),
            SpaceModel::Fixed => 1,
        }
    }

    /// Largest copy cost under the format caps.
    pub fn max_copy_bits(self) -> u32 {
        self.copy_bits(MAX_COPY_DISTANCE, MAX_COPY_LENGTH)
    }

    pub fn space_cost(self, phrase: &Phrase) -> Result<u32, CostError> {
        phrase.validate()?;
        Ok(match *phrase {
            Phrase::Literal(_) => self.literal_bits(),
            Phrase::Copy { distance, length } => self.copy_bits(distance, length),
        })
    }

    /// Largest distances at which the copy cost still has a given value.
    fn distance_ceilings(self) -> Vec<u64> {
        match self {
            SpaceModel::ByteOriented => vec![0xFF, 0xFFFF, 0xFF_FFFF, u32::MAX as u64],
            SpaceModel::EliasGamma => (1..=32).map(|k| (1u64 << k) - 1).collect(),
            SpaceModel::Fixed => Vec::new(),
        }
    }

    fn length_ceilings(self) -> Vec<u64> {
        match self {
            SpaceModel::ByteOriented => vec![31, MAX_COPY_LENGTH as u64],
            SpaceModel::EliasGamma => (1..=13).map(|k| (1u64 << k) - 1).collect(),
            SpaceModel::Fixed => Vec::new(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceModel::ByteOriented => "byte-oriented",
            SpaceModel::EliasGamma => "elias-gamma",
            SpaceModel::Fixed => "fixed",
        }
    }
}

impl fmt::Display for SpaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpaceModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "byte-oriented" | "byte" | "full" => Ok(SpaceModel::ByteOriented),
            "elias-gamma" | "gamma" => Ok(SpaceModel::EliasGamma),
            "fixed" => Ok(SpaceModel::Fixed),
            other => Err(format!("unknown space model `{other}`")),
        }
    }
}

/// Three-level memory latency table.
///
/// A copy at distance `d` costs `miss[0]` if `d < thresholds[0]`, `miss[1]`
/// if `d <= thresholds[1]` and `miss[2]` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MemoryLevels {
    pub miss: [u32; 3],
    pub thresholds: [u32; 2],
}

impl MemoryLevels {
    pub fn new(miss: [u32; 3]) -> Self {
        MemoryLevels {
            miss,
            thresholds: [NEAR_THRESHOLD, FAR_THRESHOLD],
        }
    }

    pub fn with_thresholds(mut self, near: u32, far: u32) -> Self {
        self.thresholds = [near, far];
        self
    }
}

impl Default for MemoryLevels {
    fn default() -> Self {
        MemoryLevels::new(DEFAULT_MISS_TICKS)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AccessModel {
    /// `t(d) = ceil(log2 d)`.
    Log,
    Calibrated(MemoryLevels),
}

/// Random-access latency model for copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TimeModel {
    pub access: AccessModel,
    /// Ticks charged to a literal on top of reading its codeword.
    pub literal_access: u32,
}

impl TimeModel {
    pub fn log() -> Self {
        TimeModel {
            access: AccessModel::Log,
            literal_access: 0,
        }
    }

    pub fn calibrated(levels: MemoryLevels) -> Self {
        TimeModel {
            access: AccessModel::Calibrated(levels),
            literal_access: 0,
        }
    }

    pub fn with_literal_access(mut self, ticks: u32) -> Self {
        self.literal_access = ticks;
        self
    }

    #[inline]
    pub fn access_ticks(&self, distance: u32) -> u32 {
        match self.access {
            AccessModel::Log => {
                if distance <= 1 {
                    0
                } else {
                    32 - (distance - 1).leading_zeros()
                }
            }
            AccessModel::Calibrated(levels) => {
                if distance < levels.thresholds[0] {
                    levels.miss[0]
                } else if distance <= levels.thresholds[1] {
                    levels.miss[1]
                } else {
                    levels.miss[2]
                }
            }
        }
    }

    pub fn time_cost(&self, space: SpaceModel, phrase: &Phrase) -> Result<u32, CostError> {
        let bits = space.space_cost(phrase)?;
        Ok(match *phrase {
            Phrase::Literal(_) => self.literal_access + bits,
            Phrase::Copy { distance, .. } => self.access_ticks(distance) + bits,
        })
    }

    fn distance_ceilings(&self) -> Vec<u64> {
        match self.access {
            AccessModel::Log => (0..=32).map(|k| 1u64 << k).collect(),
            AccessModel::Calibrated(levels) => {
                let near = levels.thresholds[0] as u64;
                let mut out = Vec::with_capacity(2);
                if near > 1 {
                    out.push(near - 1);
                }
                out.push(levels.thresholds[1] as u64);
                out
            }
        }
    }
}

/// A space model paired with a time model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CostModel {
    pub space: SpaceModel,
    pub time: TimeModel,
}

impl CostModel {
    pub fn new(space: SpaceModel, time: TimeModel) -> Self {
        CostModel { space, time }
    }

    #[inline]
    pub fn literal_bits(&self) -> u32 {
        self.space.literal_bits()
    }

    #[inline]
    pub fn literal_ticks(&self) -> u32 {
        self.time.literal_access + self.space.literal_bits()
    }

    #[inline]
    pub fn copy_bits(&self, distance: u32, length: u32) -> u32 {
        self.space.copy_bits(distance, length)
    }

    #[inline]
    pub fn copy_ticks(&self, distance: u32, length: u32) -> u32 {
        self.time.access_ticks(distance) + self.space.copy_bits(distance, length)
    }

    /// `(bits, ticks)` of a phrase.
    pub fn phrase_cost(&self, phrase: &Phrase) -> Result<(u32, u32), CostError> {
        Ok((self.space.space_cost(phrase)?, self.time.time_cost(self.space, phrase)?))
    }
}

/// Breakpoints of the cost functions over a text of length `n`.
///
/// Within the grid cell `(D_{k-1}, D_k] x (L_{j-1}, L_j]` both the copy bits
/// and the access ticks are constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostClassTable {
    pub model: CostModel,
    pub n: u32,
    pub space_distance_ceilings: Vec<u32>,
    pub time_distance_ceilings: Vec<u32>,
    /// Union of the two lists above, ascending, ending in `n`.
    pub distance_ceilings: Vec<u32>,
    /// Ascending, ending in `min(n, MAX_COPY_LENGTH)`.
    pub length_ceilings: Vec<u32>,
    /// Distinct copy costs in bits over `d, l <= n`.
    pub s_costs: usize,
    /// Distinct access latencies `t(d)` over `d <= n`.
    pub t_costs: usize,
    /// Largest edge space cost, literals included.
    pub s_max: u32,
    /// Largest edge time cost, literals included.
    pub t_max: u32,
}

fn restrict(ceilings: Vec<u64>, bound: u32) -> Vec<u32> {
    let mut out: Vec<u32> = ceilings
        .into_iter()
        .filter(|&c| c >= 1 && c < bound as u64)
        .map(|c| c as u32)
        .collect();
    out.push(bound);
    out
}

/// Computes the cost-class grid for a text of length `n >= 1`.
pub fn cost_classes(model: CostModel, n: usize) -> CostClassTable {
    let n = n.clamp(1, u32::MAX as usize) as u32;
    let max_len = n.min(MAX_COPY_LENGTH);
    let space_distance_ceilings = restrict(model.space.distance_ceilings(), n);
    let time_distance_ceilings = restrict(model.time.distance_ceilings(), n);
    let distance_ceilings: Vec<u32> = space_distance_ceilings
        .iter()
        .chain(&time_distance_ceilings)
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let length_ceilings = restrict(model.space.length_ceilings(), max_len);

    let s_values: BTreeSet<u32> = distance_ceilings
        .iter()
        .flat_map(|&d| length_ceilings.iter().map(move |&l| model.copy_bits(d, l)))
        .collect();
    let t_values: BTreeSet<u32> = distance_ceilings
        .iter()
        .map(|&d| model.time.access_ticks(d))
        .collect();

    let (d_top, l_top) = (n, max_len);
    let s_max = model.copy_bits(d_top, l_top).max(model.literal_bits());
    let t_max = model.copy_ticks(d_top, l_top).max(model.literal_ticks());

    CostClassTable {
        model,
        n,
        space_distance_ceilings,
        time_distance_ceilings,
        distance_ceilings,
        length_ceilings,
        s_costs: s_values.len(),
        t_costs: t_values.len(),
        s_max,
        t_max,
    }
}

impl CostClassTable {
    /// Index of the merged distance class containing `distance`.
    pub fn distance_class(&self, distance: u32) -> usize {
        self.distance_ceilings.partition_point(|&c| c < distance)
    }

    pub fn max_copy_length(&self) -> u32 {
        *self.length_ceilings.last().unwrap_or(&1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalibrationError {
    #[error("line {line}: expected `key=value`")]
    Malformed { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: `{value}` is not an unsigned tick count")]
    BadValue { line: usize, value: String },
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("latencies must satisfy miss1 <= miss2 <= miss3")]
    NotMonotone,
}

/// Contents of a calibration file: one `key=value` per line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Calibration {
    pub miss: [u32; 3],
    pub literal_access: u32,
}

impl Calibration {
    pub fn parse(text: &str) -> Result<Calibration, CalibrationError> {
        let mut miss: [Option<u32>; 3] = [None; 3];
        let mut literal_access: Option<u32> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            let (key, value) = trimmed
                .split_once('=')
                .ok_or(CalibrationError::Malformed { line })?;
            let (key, value) = (key.trim(), value.trim());
            let parsed: u32 = value.parse().map_err(|_| CalibrationError::BadValue {
                line,
                value: value.to_string(),
            })?;
            let slot = match key {
                "miss1" => &mut miss[0],
                "miss2" => &mut miss[1],
                "miss3" => &mut miss[2],
                "literal_access" => &mut literal_access,
                _ => {
                    return Err(CalibrationError::UnknownKey {
                        line,
                        key: key.to_string(),
                    })
                }
            };
            if slot.replace(parsed).is_some() {
                return Err(CalibrationError::DuplicateKey {
                    line,
                    key: key.to_string(),
                });
            }
        }
        let miss = [
            miss[0].ok_or(CalibrationError::MissingKey("miss1"))?,
            miss[1].ok_or(CalibrationError::MissingKey("miss2"))?,
            miss[2].ok_or(CalibrationError::MissingKey("miss3"))?,
        ];
        if miss[0] > miss[1] || miss[1] > miss[2] {
            return Err(CalibrationError::NotMonotone);
        }
        Ok(Calibration {
            miss,
            literal_access: literal_access.unwrap_or(0),
        })
    }

    pub fn time_model(&self) -> TimeModel {
        TimeModel::calibrated(MemoryLevels::new(self.miss)).with_literal_access(self.literal_access)
    }
}

impl Default for Calibration {
    fn default() -> Self {
        Calibration {
            miss: DEFAULT_MISS_TICKS,
            literal_access: 0,
        }
    }
}

impl fmt::Display for Calibration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "miss1={}", self.miss[0])?;
        writeln!(f, "miss2={}", self.miss[1])?;
        writeln!(f, "miss3={}", self.miss[2])?;
        writeln!(f, "literal_access={}", self.literal_access)
    }
}
