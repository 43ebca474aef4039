//! Row-packed bit matrix used for adjacency rows.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    cols: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        BitMatrix { cols, words_per_row, words: vec![0; rows * words_per_row] }
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.words[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    #[inline]
    pub fn contains(&self, r: usize, c: usize) -> bool {
        if c >= self.cols {
            return false;
        }
        match self.words.get(r * self.words_per_row + c / 64) {
            Some(w) => w >> (c % 64) & 1 == 1,
            None => false,
        }
    }

    #[inline]
    pub fn insert(&mut self, r: usize, c: usize) {
        self.words[r * self.words_per_row + c / 64] |= 1 << (c % 64);
    }

    #[inline]
    pub fn remove(&mut self, r: usize, c: usize) {
        self.words[r * self.words_per_row + c / 64] &= !(1 << (c % 64));
    }

    pub fn row_count(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_all(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_iter(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.row(r))
    }
}

/// Indices of set bits in a packed slice, increasing.
pub(crate) fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + bit)
        })
    })
}

/// Lowest set bit of `x & y`, if any.
#[inline]
pub(crate) fn first_common(x: &[u64], y: &[u64]) -> Option<usize> {
    x.iter()
        .zip(y)
        .enumerate()
        .find_map(|(i, (a, b))| match a & b {
            0 => None,
            w => Some(i * 64 + w.trailing_zeros() as usize),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_rows() {
        let mut m = BitMatrix::new(2, 130);
        m.insert(1, 0);
        m.insert(1, 64);
        m.insert(1, 129);
        assert_eq!(m.row_iter(1).collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(m.row_count(0), 0);
        assert!(m.contains(1, 129));
        assert!(!m.contains(1, 130));
        m.remove(1, 64);
        assert_eq!(m.count_all(), 2);
    }

    #[test]
    fn first_common_bit() {
        assert_eq!(first_common(&[0b1010, 0], &[0b1100, 0]), Some(3));
        assert_eq!(first_common(&[0, 1 << 5], &[0, 1 << 5]), Some(69));
        assert_eq!(first_common(&[1, 0], &[2, 0]), None);
    }
}
