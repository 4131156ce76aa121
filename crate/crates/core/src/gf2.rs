//! Dense GF(2) matrices with packed rows.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitVec;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

/// Two rows sharing two columns: a length-4 cycle in the Tanner graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourCycle {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

/// Result of row reduction.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: BinaryMatrix,
    pub pivots: Vec<usize>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryMatrix { rows, cols, data: vec![BitVec::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Mismatch("row length differs from column count"));
        }
        Ok(BinaryMatrix { rows: rows.len(), cols, data: rows })
    }

    /// Parses rows of 0/1 values.
    pub fn from_bits(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| {
            assert_eq!(r.len(), cols, "ragged rows");
            BitVec::from_bits(r)
        });
        BinaryMatrix { rows: rows.len(), cols, data: data.collect() }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.data[r].set(c, v)
    }

    #[inline]
    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut BitVec {
        &mut self.data[r]
    }

    pub fn into_rows(self) -> Vec<BitVec> {
        self.data
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(BitVec::count_ones).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn matmul(&self, other: &BinaryMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Mismatch("matmul inner dimensions"));
        }
        let data = self.data.iter().map(|row| other.left_mul_unchecked(row)).collect();
        Ok(BinaryMatrix { rows: self.rows, cols: other.cols, data })
    }

    /// Row vector times matrix: `v M`.
    pub fn left_mul(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.rows {
            return Err(Error::Mismatch("vector length differs from row count"));
        }
        Ok(self.left_mul_unchecked(v))
    }

    fn left_mul_unchecked(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.cols);
        for i in v.iter_ones() {
            out.xor_assign(&self.data[i]);
        }
        out
    }

    /// Matrix times column vector: `M v^t`, e.g. a syndrome.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::Mismatch("vector length differs from column count"));
        }
        let mut out = BitVec::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn hstack(&self, other: &BinaryMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Mismatch("hstack row counts"));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| BitVec::concat([a, b])).collect();
        Ok(BinaryMatrix { rows: self.rows, cols: self.cols + other.cols, data })
    }

    pub fn vstack(&self, other: &BinaryMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Mismatch("vstack column counts"));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(BinaryMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        BinaryMatrix { rows: idx.len(), cols: self.cols, data: idx.iter().map(|&i| self.data[i].clone()).collect() }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, idx.len());
        for (r, row) in self.data.iter().enumerate() {
            for (k, &c) in idx.iter().enumerate() {
                if row.get(c) {
                    out.set(r, k, true);
                }
            }
        }
        out
    }

    /// Copies `src` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, src: &BinaryMatrix) {
        for r in 0..src.rows {
            for c in src.data[r].iter_ones() {
                self.data[r0 + r].set(c0 + c, true);
            }
        }
    }

    pub fn kron(&self, other: &BinaryMatrix) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for r in 0..self.rows {
            for c in self.data[r].iter_ones() {
                out.paste(r * other.rows, c * other.cols, other);
            }
        }
        out
    }

    /// Reduced row echelon form, pivots by first nonzero column.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.data[i].get(c)) else { continue };
            m.data.swap(r, p);
            let pivot = m.data[r].clone();
            for i in 0..self.rows {
                if i != r && m.data[i].get(c) {
                    m.data[i].xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let words = crate::bits::words_for(self.cols);
        let mut r = 0;
        for w in 0..words {
            for bit in 0..64 {
                let c = w * 64 + bit;
                if c >= self.cols || r == m.len() {
                    break;
                }
                let mask = 1u64 << bit;
                let Some(p) = (r..m.len()).find(|&i| m[i].words()[w] & mask != 0) else { continue };
                m.swap(r, p);
                let (head, tail) = m.split_at_mut(r + 1);
                let pivot = &head[r];
                for row in tail.iter_mut() {
                    if row.words()[w] & mask != 0 {
                        let pw = pivot.words();
                        for (a, b) in row.words_mut()[w..].iter_mut().zip(&pw[w..]) {
                            *a ^= *b;
                        }
                    }
                }
                r += 1;
            }
        }
        r
    }

    /// Basis of the right nullspace `{x : M x^t = 0}`.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if matrix.data[i].get(f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Rows that are independent of all earlier rows, in order.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut basis = ReducedBasis::new(self.cols);
        (0..self.rows).filter(|&i| basis.insert(&self.data[i])).collect()
    }

    /// `C` with `M C = I` for a full-row-rank `M`.
    pub fn right_inverse(&self) -> Result<Self> {
        let mut aug = self.hstack(&Self::identity(self.rows))?;
        // eliminate on the left block only
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| aug.data[i].get(c)) else { continue };
            aug.data.swap(r, p);
            let pivot = aug.data[r].clone();
            for i in 0..self.rows {
                if i != r && aug.data[i].get(c) {
                    aug.data[i].xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
        }
        if r < self.rows {
            return Err(Error::NotInvertible);
        }
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, &p) in pivots.iter().enumerate() {
            out.data[p] = aug.data[i].slice(self.cols, self.rows);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Mismatch("inverse of a non-square matrix"));
        }
        self.right_inverse()
    }

    pub fn four_cycle(&self) -> Option<FourCycle> {
        for i in 0..self.rows {
            for j in i + 1..self.rows {
                if self.data[i].and_count(&self.data[j]) >= 2 {
                    let mut both = self.data[i].clone();
                    for (a, b) in both.words_mut().iter_mut().zip(self.data[j].words()) {
                        *a &= *b;
                    }
                    let mut it = both.iter_ones();
                    let c0 = it.next().unwrap();
                    let c1 = it.next().unwrap();
                    return Some(FourCycle { rows: (i, j), cols: (c0, c1) });
                }
            }
        }
        None
    }

    pub fn has_4cycle(&self) -> bool {
        self.four_cycle().is_some()
    }

    /// Tanner-graph girth, or `None` when no cycle of length `<= cap` exists.
    pub fn girth(&self, cap: usize) -> Option<usize> {
        let n = self.cols;
        let var_adj: Vec<Vec<usize>> = {
            let mut a = vec![Vec::new(); n];
            for (r, row) in self.data.iter().enumerate() {
                for c in row.iter_ones() {
                    a[c].push(r);
                }
            }
            a
        };
        let chk_adj: Vec<Vec<usize>> = self.data.iter().map(|r| r.iter_ones().collect()).collect();
        // nodes: variables 0..n, checks n..n+m
        let total = n + self.rows;
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        let mut touched = Vec::new();
        for s in 0..n {
            for &t in &touched {
                dist[t] = usize::MAX;
                parent[t] = usize::MAX;
            }
            touched.clear();
            dist[s] = 0;
            touched.push(s);
            let mut q = VecDeque::from([s]);
            'bfs: while let Some(v) = q.pop_front() {
                if 2 * dist[v] + 1 >= best.min(cap + 1) {
                    break;
                }
                let nbrs: &[usize] = if v < n { &var_adj[v] } else { &chk_adj[v - n] };
                for &w0 in nbrs {
                    let w = if v < n { w0 + n } else { w0 };
                    if w == parent[v] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        touched.push(w);
                        q.push_back(w);
                    } else {
                        let len = dist[v] + dist[w] + 1;
                        if len < best {
                            best = len;
                        }
                        if best <= 4 {
                            break 'bfs;
                        }
                    }
                }
            }
            if best == 4 {
                break;
            }
        }
        (best <= cap).then_some(best)
    }

    /// Column and row weight sets.
    pub fn weights(&self) -> (Vec<usize>, Vec<usize>) {
        let rows: Vec<usize> = self.data.iter().map(BitVec::count_ones).collect();
        let mut cols = vec![0; self.cols];
        for row in &self.data {
            for c in row.iter_ones() {
                cols[c] += 1;
            }
        }
        (cols, rows)
    }
}

/// Incrementally built row-reduced basis.
#[derive(Debug, Clone)]
pub struct ReducedBasis {
    len: usize,
    rows: Vec<(usize, BitVec)>,
}

impl ReducedBasis {
    pub fn new(len: usize) -> Self {
        ReducedBasis { len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        debug_assert_eq!(v.len(), self.len);
        let mut x = v.clone();
        for (p, b) in &self.rows {
            if x.get(*p) {
                x.xor_assign(b);
            }
        }
        x
    }

    /// Adds `v` when independent; returns whether it was.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let x = self.reduce(v);
        match x.first_one() {
            Some(p) => {
                self.rows.push((p, x));
                true
            }
            None => false,
        }
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.data {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}
