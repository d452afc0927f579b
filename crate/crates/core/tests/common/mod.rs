#![allow(dead_code)]

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bczip::cost::{CostModel, MemoryLevels, SpaceModel, TimeModel};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_string(rng: &mut ChaCha8Rng, len: usize, alphabet: u8) -> Vec<u8> {
    (0..len).map(|_| b'a'.wrapping_add(rng.random_range(0..alphabet))).collect()
}

pub fn log_models() -> [CostModel; 3] {
    [SpaceModel::Fixed, SpaceModel::EliasGamma, SpaceModel::ByteOriented]
        .map(|s| CostModel::new(s, TimeModel::log()))
}

/// Calibrated models whose thresholds fall inside small texts.
pub fn small_calibrated_models() -> Vec<CostModel> {
    let levels = MemoryLevels::new([2, 9, 40]).with_thresholds(5, 20);
    [SpaceModel::Fixed, SpaceModel::EliasGamma, SpaceModel::ByteOriented]
        .into_iter()
        .map(|s| CostModel::new(s, TimeModel::calibrated(levels).with_literal_access(1)))
        .collect()
}

/// Text with the statistics of prose: Zipf-like words, punctuation, numbers
/// and the odd binary byte.
pub fn mixed_text(len: usize, seed: u64) -> Vec<u8> {
    let mut rng = rng(seed);
    let vocab: Vec<Vec<u8>> = (0..4000)
        .map(|_| {
            let l = 2 + rng.random_range(0..9usize);
            (0..l).map(|_| b'a' + rng.random_range(0..26u8)).collect()
        })
        .collect();
    let mut out = Vec::with_capacity(len + 16);
    while out.len() < len {
        let r: f64 = rng.random();
        let idx = ((vocab.len() as f64).powf(r * r) as usize).min(vocab.len() - 1);
        out.extend_from_slice(&vocab[idx]);
        match rng.random_range(0..20u32) {
            0 => out.extend_from_slice(b". "),
            1 => out.extend_from_slice(b", "),
            2 => out.extend_from_slice(format!(" {} ", rng.random_range(0..100_000u32)).as_bytes()),
            3 => out.push(rng.random()),
            4 => out.push(b'\n'),
            _ => out.push(b' '),
        }
    }
    out.truncate(len);
    out
}

/// Sums the model costs of a parsing.
pub fn parsing_cost(model: &CostModel, parsing: &[bczip::Phrase]) -> (u64, u64) {
    parsing.iter().fold((0, 0), |(s, t), p| {
        let (ps, pt) = model.phrase_cost(p).unwrap();
        (s + ps as u64, t + pt as u64)
    })
}

/// Replays a parsing.
pub fn expand(parsing: &[bczip::Phrase]) -> Vec<u8> {
    let mut out = Vec::new();
    for p in parsing {
        match *p {
            bczip::Phrase::Literal(c) => out.push(c),
            bczip::Phrase::Copy { distance, length } => {
                for _ in 0..length {
                    out.push(out[out.len() - distance as usize]);
                }
            }
        }
    }
    out
}
