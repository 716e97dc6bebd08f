//! Word-level helpers backing the dense adjacency matrix and vertex sets.
//!
//! Everything in this crate stores vertex sets as little-endian `u64` words:
//! bit `i & 63` of word `i >> 6` stands for vertex `i`.

/// Number of 64-bit words needed to hold `n` bits.
#[inline]
pub(crate) const fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub(crate) fn get(words: &[u64], i: usize) -> bool {
    (words[i >> 6] >> (i & 63)) & 1 == 1
}

#[inline]
pub(crate) fn set(words: &mut [u64], i: usize) {
    words[i >> 6] |= 1u64 << (i & 63);
}

#[inline]
pub(crate) fn unset(words: &mut [u64], i: usize) {
    words[i >> 6] &= !(1u64 << (i & 63));
}

/// Sets all bits in `[lo, hi)`.
pub(crate) fn set_range(words: &mut [u64], lo: usize, hi: usize) {
    if lo >= hi {
        return;
    }
    let (lw, hw) = (lo >> 6, (hi - 1) >> 6);
    let lmask = !0u64 << (lo & 63);
    let hmask = !0u64 >> (63 - ((hi - 1) & 63));
    if lw == hw {
        words[lw] |= lmask & hmask;
    } else {
        words[lw] |= lmask;
        for w in &mut words[lw + 1..hw] {
            *w = !0;
        }
        words[hw] |= hmask;
    }
}

#[inline]
pub(crate) fn count(words: &[u64]) -> u64 {
    words.iter().map(|w| w.count_ones() as u64).sum()
}

#[inline]
pub(crate) fn and_count(a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as u64).sum()
}

#[inline]
pub(crate) fn and_count3(a: &[u64], b: &[u64], c: &[u64]) -> u64 {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((x, y), z)| (x & y & z).count_ones() as u64)
        .sum()
}

/// Visits every set bit in ascending order.
#[inline]
pub(crate) fn for_each_one(words: &[u64], mut f: impl FnMut(usize)) {
    for (wi, &word) in words.iter().enumerate() {
        let mut w = word;
        while w != 0 {
            f((wi << 6) | w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
}

/// Iterator over set bits in ascending order.
pub(crate) fn ones(words: &[u64]) -> Ones<'_> {
    Ones { words, wi: 0, cur: words.first().copied().unwrap_or(0) }
}

pub(crate) struct Ones<'a> {
    words: &'a [u64],
    wi: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.cur == 0 {
            self.wi += 1;
            if self.wi >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.wi];
        }
        let b = self.cur.trailing_zeros() as usize;
        self.cur &= self.cur - 1;
        Some((self.wi << 6) | b)
    }
}

/// First set bit, if any.
#[inline]
pub(crate) fn first_one(words: &[u64]) -> Option<usize> {
    for (wi, &w) in words.iter().enumerate() {
        if w != 0 {
            return Some((wi << 6) | w.trailing_zeros() as usize);
        }
    }
    None
}

/// Transposes a 64x64 bit matrix in place (`m[r]` bit `c` becomes `m[c]` bit `r`).
///
/// Recursive block swap: at width `j`, the high-column bits of row `k` trade
/// places with the low-column bits of row `k + j` (bit index = column index).
pub(crate) fn transpose64(m: &mut [u64; 64]) {
    let mut j = 32;
    let mut mask: u64 = 0x0000_0000_FFFF_FFFF;
    while j != 0 {
        let mut k = 0;
        while k < 64 {
            let t = ((m[k] >> j) ^ m[k + j]) & mask;
            m[k] ^= t << j;
            m[k + j] ^= t;
            k = (k + j + 1) & !j;
        }
        j >>= 1;
        mask ^= mask << j;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_range_spans_words() {
        let mut w = vec![0u64; 3];
        set_range(&mut w, 60, 130);
        assert_eq!(count(&w), 70);
        assert!(get(&w, 60) && get(&w, 129));
        assert!(!get(&w, 59) && !get(&w, 130));
    }

    #[test]
    fn ones_iterates_ascending() {
        let mut w = vec![0u64; 2];
        for i in [0usize, 3, 64, 100, 127] {
            set(&mut w, i);
        }
        let got: Vec<usize> = ones(&w).collect();
        assert_eq!(got, vec![0, 3, 64, 100, 127]);
    }

    #[test]
    fn transpose64_is_involution_and_correct() {
        let mut m = [0u64; 64];
        // deterministic scribble
        let mut x: u64 = 0x243F_6A88_85A3_08D3;
        for r in &mut m {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            *r = x;
        }
        let orig = m;
        transpose64(&mut m);
        for r in 0..64 {
            for c in 0..64 {
                assert_eq!((m[c] >> r) & 1, (orig[r] >> c) & 1);
            }
        }
        transpose64(&mut m);
        assert_eq!(m, orig);
    }
}
