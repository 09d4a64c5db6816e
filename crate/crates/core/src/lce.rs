//! Constant-time longest common extension between a pattern and a text.
//!
//! Built on the suffix array of `pattern ⧺ $ ⧺ text`, where symbols are
//! rank-compressed to `1..` and the separator `$` is rank 0, together with its
//! LCP array and a sparse table for range minimum.

pub(crate) struct LceIndex {
    pattern_len: usize,
    text_len: usize,
    rank: Vec<u32>,
    lcp: SparseTable,
}

impl LceIndex {
    pub(crate) fn new(pattern: &[i64], text: &[i64]) -> Self {
        let mut alphabet: Vec<i64> = pattern.iter().chain(text).copied().collect();
        alphabet.sort_unstable();
        alphabet.dedup();
        let code = |v: &i64| alphabet.binary_search(v).unwrap() as u32 + 1;
        let mut s: Vec<u32> = Vec::with_capacity(pattern.len() + text.len() + 1);
        s.extend(pattern.iter().map(code));
        s.push(0);
        s.extend(text.iter().map(code));

        let sa = suffix_array(&s);
        let mut rank = vec![0u32; s.len()];
        for (r, &p) in sa.iter().enumerate() {
            rank[p as usize] = r as u32;
        }
        let lcp = lcp_array(&s, &sa, &rank);
        LceIndex {
            pattern_len: pattern.len(),
            text_len: text.len(),
            rank,
            lcp: SparseTable::new(lcp),
        }
    }

    /// Length of the longest common prefix of `pattern[p..]` and `text[t..]`.
    pub(crate) fn extend(&self, p: usize, t: usize) -> usize {
        if p >= self.pattern_len || t >= self.text_len {
            return 0;
        }
        let a = self.rank[p] as usize;
        let b = self.rank[self.pattern_len + 1 + t] as usize;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.lcp.min(lo + 1, hi) as usize
    }
}

/// Suffix array by prefix doubling with two counting-sort passes per round.
fn suffix_array(s: &[u32]) -> Vec<u32> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let mut rank: Vec<u32> = s.to_vec();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut buf = vec![0u32; n];
    let mut next_rank = vec![0u32; n];
    let mut classes = *rank.iter().max().unwrap() as usize + 1;
    let mut k = 0usize;
    loop {
        // Second key: rank[i + k] + 1, or 0 past the end. With k = 0 the
        // first pass is a no-op ordering.
        let second = |i: u32, rank: &[u32]| -> usize {
            let j = i as usize + k;
            if k == 0 {
                0
            } else if j < n {
                rank[j] as usize + 1
            } else {
                0
            }
        };
        counting_sort(&sa, &mut buf, classes + 1, |i| second(i, &rank));
        counting_sort(&buf, &mut sa, classes, |i| rank[i as usize] as usize);

        next_rank[sa[0] as usize] = 0;
        let mut r = 0u32;
        for w in 1..n {
            let (x, y) = (sa[w - 1], sa[w]);
            if rank[x as usize] != rank[y as usize] || second(x, &rank) != second(y, &rank) {
                r += 1;
            }
            next_rank[y as usize] = r;
        }
        std::mem::swap(&mut rank, &mut next_rank);
        classes = r as usize + 1;
        if classes == n {
            break;
        }
        k = if k == 0 { 1 } else { k * 2 };
    }
    sa
}

fn counting_sort<F: Fn(u32) -> usize>(src: &[u32], dst: &mut [u32], buckets: usize, key: F) {
    let mut count = vec![0usize; buckets + 1];
    for &i in src {
        count[key(i) + 1] += 1;
    }
    for b in 1..count.len() {
        count[b] += count[b - 1];
    }
    for &i in src {
        let slot = &mut count[key(i)];
        dst[*slot] = i;
        *slot += 1;
    }
}

/// Kasai et al.; `lcp[r]` is the LCP of the suffixes ranked `r - 1` and `r`.
fn lcp_array(s: &[u32], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

struct SparseTable {
    levels: Vec<Vec<u32>>,
}

impl SparseTable {
    fn new(base: Vec<u32>) -> Self {
        let n = base.len();
        let mut levels = vec![base];
        let mut width = 1;
        while 2 * width <= n {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = (0..=n - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        SparseTable { levels }
    }

    /// Minimum over the inclusive range `[lo, hi]`.
    fn min(&self, lo: usize, hi: usize) -> u32 {
        let len = hi - lo + 1;
        let level = (usize::BITS - 1 - len.leading_zeros()) as usize;
        let row = &self.levels[level];
        row[lo].min(row[hi + 1 - (1 << level)])
    }
}
