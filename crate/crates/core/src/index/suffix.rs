use crate::cost::MAX_COPY_LENGTH;

/// Suffix array, its inverse, and a range-minimum structure over the
/// capped LCP array.
pub(crate) struct SuffixData {
    pub sa: Vec<u32>,
    pub rank: Vec<u32>,
    /// `lcp[r]` is the common prefix of suffixes `sa[r - 1]` and `sa[r]`,
    /// capped at the copy length cap. `lcp[0] = 0`.
    pub lcp: Vec<u16>,
    pub rmq: RangeMin,
}

impl SuffixData {
    pub fn build(text: &[u8]) -> SuffixData {
        let n = text.len();
        let mut sa32 = vec![0i32; n];
        if n > 0 {
            divsufsort::sort_in_place(text, &mut sa32);
        }
        let sa: Vec<u32> = sa32.into_iter().map(|x| x as u32).collect();
        let mut rank = vec![0u32; n];
        for (r, &p) in sa.iter().enumerate() {
            rank[p as usize] = r as u32;
        }
        let lcp = kasai(text, &sa, &rank);
        let rmq = RangeMin::new(&lcp);
        SuffixData { sa, rank, lcp, rmq }
    }

    /// Capped LCP of the suffixes at ranks `a != b`.
    #[inline]
    pub fn lcp_of_ranks(&self, a: u32, b: u32) -> u32 {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.rmq.min(lo as usize + 1, hi as usize) as u32
    }
}

fn kasai(text: &[u8], sa: &[u32], rank: &[u32]) -> Vec<u16> {
    let n = text.len();
    let mut lcp = vec![0u16; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[r] = h.min(MAX_COPY_LENGTH as usize) as u16;
        h = h.saturating_sub(1);
    }
    lcp
}

const BLOCK: usize = 64;

/// Constant-time range minimum over `u16` values.
///
/// Queries spanning several blocks combine an in-block suffix minimum, a
/// sparse table over whole blocks and an in-block prefix minimum. Queries
/// inside one block scan it.
pub(crate) struct RangeMin {
    values: Vec<u16>,
    prefix: Vec<u16>,
    suffix: Vec<u16>,
    sparse: Vec<Vec<u16>>,
}

impl RangeMin {
    pub fn new(values: &[u16]) -> RangeMin {
        let n = values.len();
        let mut prefix = vec![0u16; n];
        let mut suffix = vec![0u16; n];
        let blocks = n.div_ceil(BLOCK);
        let mut block_min = Vec::with_capacity(blocks);
        for (b, chunk) in values.chunks(BLOCK).enumerate() {
            let base = b * BLOCK;
            let mut m = u16::MAX;
            for (k, &v) in chunk.iter().enumerate() {
                m = m.min(v);
                prefix[base + k] = m;
            }
            block_min.push(m);
            let mut m = u16::MAX;
            for (k, &v) in chunk.iter().enumerate().rev() {
                m = m.min(v);
                suffix[base + k] = m;
            }
        }
        let mut sparse = vec![block_min];
        let mut width = 1;
        while 2 * width <= blocks {
            let prev = sparse.last().unwrap();
            let next: Vec<u16> = (0..=blocks - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            sparse.push(next);
            width *= 2;
        }
        RangeMin {
            values: values.to_vec(),
            prefix,
            suffix,
            sparse,
        }
    }

    /// Minimum over `values[lo..=hi]`.
    #[inline]
    pub fn min(&self, lo: usize, hi: usize) -> u16 {
        debug_assert!(lo <= hi && hi < self.values.len());
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bl == bh {
            return self.values[lo..=hi].iter().copied().min().unwrap();
        }
        let mut m = self.suffix[lo].min(self.prefix[hi]);
        if bh > bl + 1 {
            let (a, b) = (bl + 1, bh - 1);
            let k = usize::BITS - 1 - (b - a + 1).leading_zeros();
            let row = &self.sparse[k as usize];
            m = m.min(row[a]).min(row[b + 1 - (1 << k)]);
        }
        m
    }
}
