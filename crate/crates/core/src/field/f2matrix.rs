/// Bit-packed matrix over the two-element field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        F2Matrix {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, b);
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

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// `self * v` where `v` is given as a bit vector of length `cols`.
    pub fn mul_vec(&self, v: &[bool]) -> Vec<bool> {
        (0..self.rows)
            .map(|i| (0..self.cols).filter(|&j| self.get(i, j) && v[j]).count() % 2 == 1)
            .collect()
    }

    /// Row reduction in place; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            if p != r {
                for w in 0..self.words {
                    self.bits.swap(r * self.words + w, p * self.words + w);
                }
            }
            let pivot_row: Vec<u64> = self.row_words(r).to_vec();
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    for (w, pw) in pivot_row.iter().enumerate() {
                        self.bits[i * self.words + w] ^= pw;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{v : A v = 0}`; an empty matrix has the
    /// full space as kernel.
    pub fn kernel(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let pivots = m.rref();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![false; self.cols];
                v[f] = true;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = m.get(r, f);
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force_kernel_dim(a: &F2Matrix) -> usize {
        let n = a.cols();
        let count = (0u32..1 << n)
            .filter(|&mask| {
                let v: Vec<bool> = (0..n).map(|j| mask >> j & 1 == 1).collect();
                a.mul_vec(&v).iter().all(|&b| !b)
            })
            .count();
        count.trailing_zeros() as usize
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(F2Matrix::identity(3).kernel().is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        assert_eq!(F2Matrix::zeros(2, 5).kernel().len(), 5);
        assert_eq!(F2Matrix::zeros(0, 4).kernel().len(), 4);
    }

    #[test]
    fn elimination_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rows: Vec<Vec<bool>> = (0..6)
                .map(|_| (0..6).map(|_| rng.gen_bool(0.4)).collect())
                .collect();
            let a = F2Matrix::from_rows(&rows);
            let ker = a.kernel();
            assert_eq!(ker.len(), brute_force_kernel_dim(&a));
            assert_eq!(ker.len(), a.cols() - a.rank());
            for v in &ker {
                assert!(a.mul_vec(v).iter().all(|&b| !b));
            }
            // the returned vectors are linearly independent
            let extended = F2Matrix::from_rows(&ker);
            assert_eq!(extended.rank(), ker.len());
        }
    }
}
