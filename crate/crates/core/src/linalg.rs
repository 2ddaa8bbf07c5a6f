//! Dense bit-packed matrices over F_2.

use std::fmt;

use rand::RngCore;

/// A dense matrix over F_2, row-major with each row packed into `u64` words.
/// Column j of a row lives in bit j % 64 of word j / 64.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Result of [`BitMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: BitMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// A solution set `particular + span(kernel rows)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<bool>,
    pub kernel: BitMatrix,
}

/// The system has no solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inconsistent;

impl fmt::Display for Inconsistent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("linear system is inconsistent")
    }
}

impl std::error::Error for Inconsistent {}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from 0/1 rows; panics on ragged input.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(rows.iter().all(|r| r.as_ref().len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| rows[i].as_ref()[j] != 0)
    }

    pub fn random<R: RngCore + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for w in m.row_mut(i) {
                *w = rng.next_u64();
            }
            m.clear_tail(i);
        }
        m
    }

    fn clear_tail(&mut self, i: usize) {
        let rem = self.cols % 64;
        if rem != 0 {
            let last = self.stride - 1;
            self.row_mut(i)[last] &= (1u64 << rem) - 1;
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.stride + j / 64];
        let mask = 1u64 << (j % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize, j: usize) {
        self.data[i * self.stride + j / 64] ^= 1u64 << (j % 64);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_bits(&self, i: usize) -> Vec<bool> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|&w| w == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (a, b) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(b * self.stride);
        head[a * self.stride..(a + 1) * self.stride].swap_with_slice(&mut tail[..self.stride]);
    }

    /// row[dst] ^= row[src], touching words from `from_word` on.
    fn xor_row_into(&mut self, src: usize, dst: usize, from_word: usize) {
        let s = self.stride;
        if src < dst {
            let (head, tail) = self.data.split_at_mut(dst * s);
            let src_row = &head[src * s..(src + 1) * s];
            for (d, v) in tail[from_word..s].iter_mut().zip(&src_row[from_word..]) {
                *d ^= v;
            }
        } else {
            let (head, tail) = self.data.split_at_mut(src * s);
            let dst_row = &mut head[dst * s..(dst + 1) * s];
            for (d, v) in dst_row[from_word..].iter_mut().zip(&tail[from_word..s]) {
                *d ^= v;
            }
        }
    }

    /// Reduced row echelon form with leading ones, pivots taken left to right.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            let w = c / 64;
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.xor_row_into(r, i, w);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.ones_in_row(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Column indices of the set bits of row `i`.
    pub fn ones_in_row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(64 * k + b)
            })
        })
    }

    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in self.ones_in_row(i).collect::<Vec<_>>() {
                let s = out.stride;
                let (o, r) = (&mut out.data[i * s..(i + 1) * s], rhs.row(k));
                for (d, v) in o.iter_mut().zip(r) {
                    *d ^= v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.ones_in_row(i).filter(|&j| v[j]).count() % 2 == 1)
            .collect()
    }

    /// Solves `self * x = b`, returning a particular solution and a kernel basis.
    pub fn solve(&self, b: &[bool]) -> Result<Solution, Inconsistent> {
        assert_eq!(self.rows, b.len(), "right-hand side length mismatch");
        let n = self.cols;
        let mut aug = BitMatrix::zeros(self.rows, n + 1);
        for (i, &bi) in b.iter().enumerate() {
            for j in self.ones_in_row(i) {
                aug.set(i, j, true);
            }
            if bi {
                aug.set(i, n, true);
            }
        }
        let ech = aug.rref();
        if ech.pivots.last() == Some(&n) {
            return Err(Inconsistent);
        }
        let mut particular = vec![false; n];
        let mut is_pivot = vec![false; n];
        for (r, &c) in ech.pivots.iter().enumerate() {
            particular[c] = ech.matrix.get(r, n);
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut kernel = BitMatrix::zeros(free.len(), n);
        for (k, &f) in free.iter().enumerate() {
            kernel.set(k, f, true);
            for (r, &c) in ech.pivots.iter().enumerate() {
                if ech.matrix.get(r, f) {
                    kernel.set(k, c, true);
                }
            }
        }
        Ok(Solution { particular, kernel })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let s: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        write!(f, "]")
    }
}
