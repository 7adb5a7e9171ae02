//! Bit-packed matrices over `F_2` and incremental row echelon form.

/// Dense `rows × cols` matrix over `F_2`, rows packed into `u64` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

#[inline]
fn words_for(cols: usize) -> usize {
    cols.div_ceil(64)
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = words_for(cols);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
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
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn rank(&self) -> usize {
        let mut echelon = Echelon::new(self.cols);
        for chunk in self.data.chunks(self.words * Echelon::BATCH) {
            echelon.insert_batch(&mut chunk.to_vec());
        }
        echelon.rank()
    }
}

/// Row space in semi-echelon form: pivot `i` has a one in its pivot column
/// and zeros in the pivot columns of all earlier pivots.
#[derive(Clone, Debug)]
pub struct Echelon {
    words: usize,
    pivot_cols: Vec<usize>,
    data: Vec<u64>,
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

impl Echelon {
    /// Rows reduced together per pass over the stored pivots.
    pub const BATCH: usize = 256;

    pub fn new(cols: usize) -> Self {
        Echelon {
            words: words_for(cols),
            pivot_cols: Vec::new(),
            data: Vec::new(),
        }
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// Reduces the packed rows in `batch` against the stored pivots, then
    /// among themselves, and stores the independent ones. `batch` is
    /// clobbered.
    pub fn insert_batch(&mut self, batch: &mut [u64]) {
        let w = self.words;
        assert_eq!(batch.len() % w, 0, "batch must hold whole rows");
        for (p, &col) in self.pivot_cols.iter().enumerate() {
            let pivot = &self.data[p * w..(p + 1) * w];
            let (word, bit) = (col / 64, col % 64);
            for row in batch.chunks_exact_mut(w) {
                if row[word] >> bit & 1 == 1 {
                    xor_into(row, pivot);
                }
            }
        }
        let rows = batch.len() / w;
        for i in 0..rows {
            let (head, tail) = batch.split_at_mut((i + 1) * w);
            let row = &head[i * w..];
            let Some(col) = row.iter().position(|&v| v != 0).map(|k| k * 64 + row[k].trailing_zeros() as usize)
            else {
                continue;
            };
            let (word, bit) = (col / 64, col % 64);
            for other in tail.chunks_exact_mut(w) {
                if other[word] >> bit & 1 == 1 {
                    xor_into(other, row);
                }
            }
            self.pivot_cols.push(col);
            self.data.extend_from_slice(row);
        }
    }
}
