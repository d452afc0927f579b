/// Dynamic set of integers in `0..universe` with predecessor and successor
/// queries, stored as a 64-ary tree of bit words.
pub(crate) struct RankSet {
    levels: Vec<Vec<u64>>,
}

impl RankSet {
    pub fn new(universe: usize) -> RankSet {
        let mut levels = Vec::new();
        let mut size = universe.max(1);
        loop {
            let words = size.div_ceil(64);
            levels.push(vec![0u64; words]);
            if words == 1 {
                break;
            }
            size = words;
        }
        RankSet { levels }
    }

    pub fn insert(&mut self, x: u32) {
        let mut idx = x as usize;
        for level in &mut self.levels {
            let word = &mut level[idx >> 6];
            let was_empty = *word == 0;
            *word |= 1 << (idx & 63);
            if !was_empty {
                return;
            }
            idx >>= 6;
        }
    }

    pub fn remove(&mut self, x: u32) {
        let mut idx = x as usize;
        for level in &mut self.levels {
            let word = &mut level[idx >> 6];
            *word &= !(1 << (idx & 63));
            if *word != 0 {
                return;
            }
            idx >>= 6;
        }
    }

    /// Largest element strictly below `x`.
    pub fn pred(&self, x: u32) -> Option<u32> {
        let mut idx = x as usize;
        for (depth, level) in self.levels.iter().enumerate() {
            let (w, b) = (idx >> 6, idx & 63);
            let bits = level[w] & ((1u64 << b) - 1);
            if bits != 0 {
                let mut pos = (w << 6) | (63 - bits.leading_zeros() as usize);
                for lower in self.levels[..depth].iter().rev() {
                    pos = (pos << 6) | (63 - lower[pos].leading_zeros() as usize);
                }
                return Some(pos as u32);
            }
            idx = w;
        }
        None
    }

    /// Smallest element strictly above `x`.
    pub fn succ(&self, x: u32) -> Option<u32> {
        let mut idx = x as usize;
        for (depth, level) in self.levels.iter().enumerate() {
            let (w, b) = (idx >> 6, idx & 63);
            let mask = if b == 63 { 0 } else { !0u64 << (b + 1) };
            let bits = level.get(w).map_or(0, |&word| word & mask);
            if bits != 0 {
                let mut pos = (w << 6) | bits.trailing_zeros() as usize;
                for lower in self.levels[..depth].iter().rev() {
                    pos = (pos << 6) | lower[pos].trailing_zeros() as usize;
                }
                return Some(pos as u32);
            }
            idx = w;
        }
        None
    }
}
