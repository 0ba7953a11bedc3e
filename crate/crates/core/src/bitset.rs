/// Dense row-major bit matrix used for relations over state pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let n = rows * cols;
        BitMatrix { rows, cols, words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        let mut m = Self::new(rows, cols);
        for i in 0..rows * cols {
            m.words[i / 64] |= 1 << (i % 64);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        let i = r * self.cols + c;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let i = r * self.cols + c;
        if v {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |r| (0..self.cols).filter(move |&c| self.get(r, c)).map(move |c| (r, c)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::new(self.cols, self.rows);
        for (r, c) in self.iter() {
            t.set(c, r, true);
        }
        t
    }

    pub fn and(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        BitMatrix {
            rows: self.rows,
            cols: self.cols,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// First `(r, c)` in `self` but not in `other`.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        self.iter().find(|&(r, c)| !other.get(r, c))
    }
}
