//! Packed bit vectors and bit matrices over GF(2).
//!
//! Columns are addressed 0-based. A matrix is a list of equal-width rows; the
//! row space operations (`rref`, `in_span`, `unit_rows_in_span`) never mutate
//! their input.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("width mismatch: expected {expected}, got {actual}")]
    WidthMismatch { expected: usize, actual: usize },
    #[error("column {col} out of range for width {width}")]
    ColumnOutOfRange { col: usize, width: usize },
    #[error("column {0} listed twice in projection")]
    DuplicateColumn(usize),
    #[error("invalid bit character {0:?}")]
    BadChar(char),
}

/// A fixed-width vector over GF(2). Addition is XOR.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    width: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(width: usize) -> Self {
        BitVec {
            width,
            words: vec![0; width.div_ceil(WORD)],
        }
    }

    /// The unit vector `e_col`.
    pub fn unit(width: usize, col: usize) -> Result<Self, Gf2Error> {
        let mut v = Self::zeros(width);
        v.try_set(col, true)?;
        Ok(v)
    }

    pub fn from_indices<I>(width: usize, cols: I) -> Result<Self, Gf2Error>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut v = Self::zeros(width);
        for c in cols {
            v.try_set(c, true)?;
        }
        Ok(v)
    }

    /// Parses a string of `0`/`1` characters, leftmost character is column 0.
    pub fn parse(bits: &str) -> Result<Self, Gf2Error> {
        let chars: Vec<char> = bits.chars().filter(|c| !c.is_whitespace()).collect();
        let mut v = Self::zeros(chars.len());
        for (i, c) in chars.into_iter().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Gf2Error::BadChar(other)),
            }
        }
        Ok(v)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, col: usize) -> bool {
        assert!(col < self.width, "column {col} out of range {}", self.width);
        self.words[col / WORD] >> (col % WORD) & 1 == 1
    }

    pub fn set(&mut self, col: usize, value: bool) {
        self.try_set(col, value).expect("column in range")
    }

    fn try_set(&mut self, col: usize, value: bool) -> Result<(), Gf2Error> {
        if col >= self.width {
            return Err(Gf2Error::ColumnOutOfRange {
                col,
                width: self.width,
            });
        }
        let mask = 1u64 << (col % WORD);
        if value {
            self.words[col / WORD] |= mask;
        } else {
            self.words[col / WORD] &= !mask;
        }
        Ok(())
    }

    pub fn flip(&mut self, col: usize) {
        let v = self.get(col);
        self.set(col, !v);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.width, other.width, "xor of vectors with different widths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set column, if any.
    pub fn leading_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Set columns in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(i * WORD + bit)
                }
            })
        })
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 0..self.width {
            f.write_str(if self.get(c) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// An ordered list of equal-width GF(2) rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitMatrix {
    width: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(width: usize) -> Self {
        BitMatrix {
            width,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(width: usize, rows: Vec<BitVec>) -> Result<Self, Gf2Error> {
        if let Some(bad) = rows.iter().find(|r| r.width() != width) {
            return Err(Gf2Error::WidthMismatch {
                expected: width,
                actual: bad.width(),
            });
        }
        Ok(BitMatrix { width, rows })
    }

    /// Builds a matrix from `0`/`1` strings; all strings must have the same length.
    pub fn parse(width: usize, rows: &[&str]) -> Result<Self, Gf2Error> {
        let rows = rows
            .iter()
            .map(|r| BitVec::parse(r))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(width, rows)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<(), Gf2Error> {
        if row.width() != self.width {
            return Err(Gf2Error::WidthMismatch {
                expected: self.width,
                actual: row.width(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Reduced row echelon form with zero rows dropped.
    pub fn rref(&self) -> BitMatrix {
        let space = RowSpace::from_rows(self.width, self.rows.iter());
        space.into_matrix()
    }

    pub fn rank(&self) -> usize {
        RowSpace::from_rows(self.width, self.rows.iter()).dim()
    }

    pub fn in_span(&self, v: &BitVec) -> Result<bool, Gf2Error> {
        if v.width() != self.width {
            return Err(Gf2Error::WidthMismatch {
                expected: self.width,
                actual: v.width(),
            });
        }
        Ok(RowSpace::from_rows(self.width, self.rows.iter()).contains(v))
    }

    /// Restricts every row to `cols`, in the listed order. Zero rows are kept.
    pub fn project(&self, cols: &[usize]) -> Result<BitMatrix, Gf2Error> {
        let mut seen = vec![false; self.width];
        for &c in cols {
            if c >= self.width {
                return Err(Gf2Error::ColumnOutOfRange {
                    col: c,
                    width: self.width,
                });
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(Gf2Error::DuplicateColumn(c));
            }
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = BitVec::zeros(cols.len());
                for (k, &c) in cols.iter().enumerate() {
                    if r.get(c) {
                        out.set(k, true);
                    }
                }
                out
            })
            .collect();
        Ok(BitMatrix {
            width: cols.len(),
            rows,
        })
    }

    /// Columns `j` whose unit vector `e_j` lies in the row space.
    pub fn unit_rows_in_span(&self) -> Vec<usize> {
        RowSpace::from_rows(self.width, self.rows.iter()).unit_vectors()
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A row space held as a fully reduced echelon basis, rows sorted by pivot.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RowSpace {
    width: usize,
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn empty(width: usize) -> Self {
        RowSpace {
            width,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a, I>(width: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = &'a BitVec>,
    {
        let mut space = Self::empty(width);
        for r in rows {
            space.insert(r.clone());
        }
        space
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &mut BitVec) {
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.is_zero()
    }

    /// Adds `v` to the space. Returns `false` when `v` was already in it.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        assert_eq!(v.width(), self.width, "row width mismatch");
        self.reduce(&mut v);
        let Some(p) = v.leading_one() else {
            return false;
        };
        for row in &mut self.basis {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, v);
        true
    }

    /// Columns `j` with `e_j` in the space, ascending.
    ///
    /// In a fully reduced basis every pivot column has a single one, so a sum
    /// of `k` basis rows has weight at least `k`. Hence `e_j` is in the span
    /// exactly when it is itself a basis row.
    pub fn unit_vectors(&self) -> Vec<usize> {
        self.basis
            .iter()
            .zip(&self.pivots)
            .filter(|(row, _)| row.count_ones() == 1)
            .map(|(_, &p)| p)
            .collect()
    }

    pub fn into_matrix(self) -> BitMatrix {
        BitMatrix {
            width: self.width,
            rows: self.basis,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_vectors_by_membership(space: &RowSpace) -> Vec<usize> {
        (0..space.width)
            .filter(|&j| space.contains(&BitVec::unit(space.width, j).unwrap()))
            .collect()
    }

    fn m(width: usize, rows: &[&str]) -> BitMatrix {
        BitMatrix::parse(width, rows).unwrap()
    }

    fn v(bits: &str) -> BitVec {
        BitVec::parse(bits).unwrap()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(m(3, &["110", "011"]).rref(), m(3, &["101", "011"]));
        assert_eq!(m(3, &["000"]).rref(), BitMatrix::new(3));
        assert_eq!(m(3, &["111", "111"]).rref(), m(3, &["111"]));
    }

    #[test]
    fn in_span_examples() {
        let a = m(3, &["101", "011"]);
        assert!(a.in_span(&v("110")).unwrap());
        // span = {000, 101, 011, 110}
        assert!(!a.in_span(&v("100")).unwrap());
        assert!(BitMatrix::new(3).in_span(&v("000")).unwrap());
        assert_eq!(
            a.in_span(&v("10")),
            Err(Gf2Error::WidthMismatch {
                expected: 3,
                actual: 2
            })
        );
    }

    #[test]
    fn project_examples() {
        let a = m(4, &["1101", "0110"]);
        assert_eq!(a.project(&[1, 2]).unwrap(), m(2, &["10", "11"]));
        assert_eq!(m(4, &["1101"]).project(&[0, 1, 2, 3]).unwrap(), m(4, &["1101"]));
        assert_eq!(a.project(&[3]).unwrap(), m(1, &["1", "0"]));
        assert!(matches!(
            a.project(&[4]),
            Err(Gf2Error::ColumnOutOfRange { col: 4, width: 4 })
        ));
        assert_eq!(a.project(&[1, 1]), Err(Gf2Error::DuplicateColumn(1)));
    }

    #[test]
    fn unit_rows_examples() {
        assert_eq!(m(3, &["100", "011"]).unit_rows_in_span(), vec![0]);
        // span = {000, 110, 011, 101}
        assert!(m(3, &["110", "011"]).unit_rows_in_span().is_empty());
        assert_eq!(
            m(3, &["100", "010", "001"]).unit_rows_in_span(),
            vec![0, 1, 2]
        );
        assert_eq!(m(3, &["110", "010"]).unit_rows_in_span(), vec![0, 1]);
    }

    #[test]
    fn zero_width_is_legal() {
        let z = BitMatrix::from_rows(0, vec![BitVec::zeros(0), BitVec::zeros(0)]).unwrap();
        assert_eq!(z.rank(), 0);
        assert!(z.rref().rows().is_empty());
        assert!(z.in_span(&BitVec::zeros(0)).unwrap());
        assert!(z.unit_rows_in_span().is_empty());
    }

    #[test]
    fn wide_vectors_cross_word_boundaries() {
        let a = BitVec::from_indices(130, [0, 63, 64, 129]).unwrap();
        assert_eq!(a.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(a.leading_one(), Some(0));
        assert_eq!(a.count_ones(), 4);
        let mut b = a.clone();
        b.xor_assign(&a);
        assert!(b.is_zero());
    }

    /// Every XOR-combination of the rows, as a sorted list.
    fn enumerate_span(a: &BitMatrix) -> Vec<BitVec> {
        let rows = a.rows();
        let mut out = Vec::new();
        for mask in 0u32..(1 << rows.len()) {
            let mut acc = BitVec::zeros(a.width());
            for (k, r) in rows.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    acc.xor_assign(r);
                }
            }
            out.push(acc);
        }
        out.sort();
        out.dedup();
        out
    }

    fn matrix_strategy(max_rows: usize, max_width: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max_width).prop_flat_map(move |w| {
            prop::collection::vec(prop::collection::vec(any::<bool>(), w), 0..=max_rows).prop_map(
                move |rows| {
                    let rows = rows
                        .into_iter()
                        .map(|bits| {
                            BitVec::from_indices(
                                w,
                                bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
                            )
                            .unwrap()
                        })
                        .collect();
                    BitMatrix::from_rows(w, rows).unwrap()
                },
            )
        })
    }

    fn is_reduced_echelon(a: &BitMatrix) -> bool {
        let pivots: Vec<usize> = a.rows().iter().map(|r| r.leading_one().unwrap()).collect();
        pivots.windows(2).all(|w| w[0] < w[1])
            && pivots.iter().enumerate().all(|(i, &p)| {
                a.rows()
                    .iter()
                    .enumerate()
                    .all(|(k, r)| (k == i) == r.get(p))
            })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent_and_reduced(a in matrix_strategy(8, 12)) {
            let r = a.rref();
            prop_assert!(is_reduced_echelon(&r));
            prop_assert_eq!(r.rref(), r.clone());
            prop_assert!(r.num_rows() <= a.num_rows().min(a.width()));
        }

        #[test]
        fn rref_preserves_span(a in matrix_strategy(8, 12)) {
            prop_assert_eq!(enumerate_span(&a), enumerate_span(&a.rref()));
        }

        #[test]
        fn unit_rows_match_enumeration(a in matrix_strategy(6, 10)) {
            let expected: Vec<usize> = enumerate_span(&a)
                .into_iter()
                .filter(|x| x.count_ones() == 1)
                .map(|x| x.leading_one().unwrap())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            prop_assert_eq!(a.unit_rows_in_span(), expected);
        }

        #[test]
        fn unit_vectors_match_membership(a in matrix_strategy(12, 40)) {
            let space = RowSpace::from_rows(a.width(), a.rows());
            prop_assert_eq!(space.unit_vectors(), unit_vectors_by_membership(&space));
        }

        #[test]
        fn in_span_invariant_under_row_moves(
            a in matrix_strategy(6, 10),
            probe in any::<u64>(),
            seed in any::<u64>(),
        ) {
            prop_assume!(a.num_rows() >= 2);
            let w = a.width();
            let target = BitVec::from_indices(w, (0..w).filter(|i| probe >> i & 1 == 1)).unwrap();
            let before = a.in_span(&target).unwrap();

            let mut rows = a.rows().to_vec();
            let n = rows.len();
            rows.rotate_left((seed as usize) % n);
            let i = (seed >> 8) as usize % n;
            let j = (i + 1 + (seed >> 16) as usize % (n - 1)) % n;
            let other = rows[j].clone();
            rows[i].xor_assign(&other);
            let moved = BitMatrix::from_rows(w, rows).unwrap();
            prop_assert_eq!(moved.in_span(&target).unwrap(), before);
        }
    }
}
