//! Dense linear algebra over GF(2).
//!
//! Vectors are bit-packed into `u64` words and elimination works a word at a
//! time. Every routine picks pivots lowest column first, so bases returned by
//! [`Gf2Matrix::nullspace`] and [`Subspace::span`] are identical across runs.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set index, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Keeps only the coordinates whose `mask` bit is set.
    pub fn and(&self, mask: &BitVec) -> BitVec {
        assert_eq!(self.len, mask.len);
        BitVec {
            words: self.words.iter().zip(&mask.words).map(|(a, b)| a & b).collect(),
            len: self.len,
        }
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Matrix {
    rows: Vec<BitVec>,
    cols: usize,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<BitVec>,
    pub pivots: Vec<usize>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| BitVec::from_indices(n, [i])).collect(),
            cols: n,
        }
    }

    pub fn empty(cols: usize) -> Self {
        Self {
            rows: Vec::new(),
            cols,
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
        }
        Self { rows, cols }
    }

    /// Builds a matrix from 0/1 entries. Panics on ragged input or entries other than 0/1.
    pub fn from_dense(entries: &[Vec<u8>]) -> Self {
        let cols = entries.first().map_or(0, Vec::len);
        let rows = entries
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix");
                let bits: Vec<bool> = r
                    .iter()
                    .map(|&e| match e {
                        0 => false,
                        1 => true,
                        other => panic!("entry {other} is not a GF(2) value"),
                    })
                    .collect();
                BitVec::from_bools(&bits)
            })
            .collect();
        Self { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.cols, "cannot stack matrices of different width");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Gf2Matrix {
            rows,
            cols: self.cols,
        }
    }

    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.cols);
        BitVec::from_indices(
            self.rows.len(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.dot(x))
                .map(|(i, _)| i),
        )
    }

    /// `self * other`.
    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for i in r.ones() {
                    acc.xor_assign(&other.rows[i]);
                }
                acc
            })
            .collect();
        Gf2Matrix {
            rows,
            cols: other.cols,
        }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// Reduced row echelon form, pivots chosen lowest column first.
    pub fn echelon(&self) -> Echelon {
        let mut rows: Vec<BitVec> = self.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(found) = (rank..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot_row = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        Echelon { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{x : self * x = 0}`; one basis vector per free column.
    pub fn nullspace(&self) -> Subspace {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let basis = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::zeros(self.cols);
                v.set(free, true);
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.cols, basis)
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows.len(), "right-hand side length must equal row count");
        // Augment with the right-hand side as an extra column.
        let aug_rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = BitVec::zeros(self.cols + 1);
                for c in r.ones() {
                    row.set(c, true);
                }
                row.set(self.cols, b.get(i));
                row
            })
            .collect();
        let aug = Gf2Matrix::from_rows(self.cols + 1, aug_rows);
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }
}

/// A linear subspace of GF(2)^n, stored as a reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, Gf2Matrix::identity(ambient).rows)
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: Vec<BitVec>) -> Self {
        let ech = Gf2Matrix::from_rows(ambient, vectors).echelon();
        Self {
            ambient,
            basis: ech.rows,
            pivots: ech.pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Representative of `v + self` with every pivot coordinate cleared; this is the
    /// lexicographically least element of the coset when index 0 is most significant.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(b);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, v)
    }

    /// Rows spanning the orthogonal complement; its nullspace is `self`.
    pub fn annihilator(&self) -> Gf2Matrix {
        let m = Gf2Matrix::from_rows(self.ambient, self.basis.clone());
        let comp = m.nullspace();
        Gf2Matrix::from_rows(self.ambient, comp.basis)
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &BitVec) -> Option<BitVec> {
        let mut rest = v.clone();
        let mut coords = BitVec::zeros(self.basis.len());
        for (i, (b, &p)) in self.basis.iter().zip(&self.pivots).enumerate() {
            if rest.get(p) {
                rest.xor_assign(b);
                coords.set(i, true);
            }
        }
        rest.is_zero().then_some(coords)
    }
}

/// `dim(v) - dim(w)` for `w ⊆ v`.
pub fn quotient_dim(v: &Subspace, w: &Subspace) -> Result<usize, Gf2Error> {
    if v.ambient_dim() != w.ambient_dim() {
        return Err(Gf2Error::AmbientMismatch(v.ambient_dim(), w.ambient_dim()));
    }
    if !v.contains_subspace(w) {
        return Err(Gf2Error::NotContained);
    }
    Ok(v.dim() - w.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(bits: &[u8]) -> BitVec {
        BitVec::from_bools(&bits.iter().map(|b| *b == 1).collect::<Vec<_>>())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        assert_eq!(Gf2Matrix::zeros(4, 7).rank(), 0);
        assert_eq!(Gf2Matrix::from_dense(&[vec![1, 1], vec![1, 1]]).rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Gf2Matrix::identity(2).nullspace().dim(), 0);
        assert_eq!(Gf2Matrix::zeros(2, 3).nullspace().dim(), 3);
        let m = Gf2Matrix::from_dense(&[vec![1, 1, 0]]);
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 2);
        for v in ns.basis() {
            assert_eq!(v.get(0), v.get(1));
        }
    }

    #[test]
    fn quotient_dim_examples() {
        let v = Subspace::full(3);
        let w = Subspace::span(3, vec![bv(&[1, 1, 0])]);
        assert_eq!(quotient_dim(&v, &w), Ok(2));
        assert_eq!(quotient_dim(&v, &v), Ok(0));
        let small = Subspace::span(3, vec![bv(&[1, 0, 0])]);
        let other = Subspace::span(3, vec![bv(&[0, 1, 0])]);
        assert_eq!(quotient_dim(&small, &other), Err(Gf2Error::NotContained));
    }

    #[test]
    fn solve_examples() {
        assert_eq!(Gf2Matrix::identity(2).solve(&bv(&[1, 0])), Some(bv(&[1, 0])));
        assert_eq!(Gf2Matrix::zeros(1, 1).solve(&bv(&[1])), None);
        let m = Gf2Matrix::from_dense(&[vec![1, 1]]);
        let x = m.solve(&bv(&[0])).unwrap();
        assert_eq!(m.mul_vec(&x), bv(&[0]));
    }

    #[test]
    fn reduce_gives_coset_minimum() {
        let s = Subspace::span(4, vec![bv(&[1, 1, 0, 0]), bv(&[0, 1, 1, 0])]);
        let v = bv(&[1, 0, 0, 1]);
        // brute force over the four coset elements
        let members: Vec<BitVec> = (0..4u8)
            .map(|m| {
                let mut x = v.clone();
                for (i, b) in s.basis().iter().enumerate() {
                    if m >> i & 1 == 1 {
                        x.xor_assign(b);
                    }
                }
                x
            })
            .collect();
        let least = members.iter().min_by_key(|x| x.to_bools()).unwrap().clone();
        assert_eq!(s.reduce(&v), least);
    }

    #[test]
    fn wide_vectors_cross_word_boundaries() {
        let v = BitVec::from_indices(130, [0, 63, 64, 129]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(v.first_one(), Some(0));
        assert_eq!(v.count_ones(), 4);
    }

    fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Gf2Matrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| Gf2Matrix::from_rows(c, rows.iter().map(|b| BitVec::from_bools(b)).collect()),
            )
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in matrix_strategy(10, 12)) {
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.dim(), m.ncols());
            for v in ns.basis() {
                prop_assert!(m.mul_vec(v).is_zero());
            }
            prop_assert!(m.rank() <= m.nrows().min(m.ncols()));
        }

        #[test]
        fn solve_satisfies_system(m in matrix_strategy(8, 8), seed in any::<u64>()) {
            let mut b = BitVec::zeros(m.nrows());
            for i in 0..m.nrows() {
                b.set(i, (seed >> (i % 64)) & 1 == 1);
            }
            match m.solve(&b) {
                Some(x) => prop_assert_eq!(m.mul_vec(&x), b),
                None => {
                    // inconsistent: b is outside the column space
                    let cols = Subspace::span(m.nrows(), m.transpose().rows().to_vec());
                    prop_assert!(!cols.contains(&b));
                }
            }
        }

        #[test]
        fn annihilator_nullspace_is_subspace(m in matrix_strategy(6, 10)) {
            let s = Subspace::span(m.ncols(), m.rows().to_vec());
            let back = s.annihilator().nullspace();
            prop_assert_eq!(back, s);
        }
    }
}
