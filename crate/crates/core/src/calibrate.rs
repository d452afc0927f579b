//! Measures memory latencies for the calibrated time model.
//!
//! One tick is the time to stream one bit of a large buffer sequentially.
//! Each miss level is timed by chasing a random cyclic permutation of cache
//! lines spread over a working set sized to the distances of that level.

use std::hint::black_box;
use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::{Calibration, FAR_THRESHOLD, NEAR_THRESHOLD};

const LINE_WORDS: usize = 16;

#[derive(Debug, Clone, Copy)]
pub struct CalibrationOptions {
    /// Working set of the far level, in bytes.
    pub far_bytes: usize,
    /// Dependent loads timed per level.
    pub accesses: usize,
    pub seed: u64,
}

impl Default for CalibrationOptions {
    fn default() -> Self {
        CalibrationOptions {
            far_bytes: 32 << 20,
            accesses: 4 << 20,
            seed: 0x5eed,
        }
    }
}

/// Latency per level in nanoseconds, and the tick length.
#[derive(Debug, Clone, Copy)]
pub struct Measurement {
    pub latency_ns: [f64; 3],
    pub tick_ns: f64,
}

impl Measurement {
    /// Converts latencies to ticks, forcing `miss1 <= miss2 <= miss3`.
    pub fn calibration(&self) -> Calibration {
        let mut miss = [0u32; 3];
        let mut floor = 1u32;
        for (slot, &ns) in miss.iter_mut().zip(&self.latency_ns) {
            let ticks = (ns / self.tick_ns).round().clamp(1.0, u32::MAX as f64) as u32;
            floor = floor.max(ticks);
            *slot = floor;
        }
        Calibration {
            miss,
            literal_access: 0,
        }
    }
}

pub fn measure(opts: &CalibrationOptions) -> Measurement {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let near = (NEAR_THRESHOLD as usize / 2).max(256);
    let mid = (FAR_THRESHOLD as usize / 2).max(near * 2);
    let far = opts.far_bytes.max(FAR_THRESHOLD as usize * 4);
    let latency_ns = [near, mid, far].map(|bytes| chase_ns(bytes, opts.accesses, &mut rng));
    Measurement {
        latency_ns,
        tick_ns: stream_ns_per_bit(far),
    }
}

/// Mean latency of a dependent load inside a `bytes`-sized working set.
fn chase_ns(bytes: usize, accesses: usize, rng: &mut ChaCha8Rng) -> f64 {
    let lines = (bytes / (LINE_WORDS * 4)).max(2);
    // Sattolo's shuffle yields a single cycle through all lines.
    let mut order: Vec<usize> = (0..lines).collect();
    for i in (1..lines).rev() {
        let j = rng.random_range(0..i);
        order.swap(i, j);
    }
    let mut next = vec![0u32; lines * LINE_WORDS];
    for (line, &succ) in order.iter().enumerate() {
        next[line * LINE_WORDS] = (succ * LINE_WORDS) as u32;
    }
    let mut at = 0u32;
    for _ in 0..lines {
        at = next[at as usize];
    }
    let start = Instant::now();
    for _ in 0..accesses {
        at = next[at as usize];
    }
    let elapsed = start.elapsed();
    black_box(at);
    elapsed.as_nanos() as f64 / accesses.max(1) as f64
}

fn stream_ns_per_bit(bytes: usize) -> f64 {
    let buf: Vec<u64> = (0..bytes / 8).map(|k| k as u64).collect();
    let mut sum = 0u64;
    for &w in &buf {
        sum = sum.wrapping_add(w);
    }
    let rounds = 4;
    let start = Instant::now();
    for _ in 0..rounds {
        for &w in black_box(&buf) {
            sum = sum.wrapping_add(w);
        }
    }
    let elapsed = start.elapsed();
    black_box(sum);
    let ns = elapsed.as_nanos().max(1) as f64;
    ns / (rounds * buf.len() * 64).max(1) as f64
}
