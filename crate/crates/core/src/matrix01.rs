//! Bit-packed 0-1 matrices, the saturating `{0, 1, 2+}` power semiring,
//! permutations, and exact 64-bit integer matrices used by the oracles.
//!
//! Rows are stored as packed `u64` words, bit `j % 64` of word `j / 64`
//! holding column `j`. Products over the saturating semiring work on two
//! bit-planes per matrix: one marking entries `>= 1`, one marking `>= 2`.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};

const WORD_BITS: usize = u64::BITS as usize;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct BitRows {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitRows {
    fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD_BITS);
        BitRows {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    bits.set(i, j);
                }
            }
        }
        bits
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of bounds"
        );
        self.words[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.words[i * self.stride + j / WORD_BITS] |= 1 << (j % WORD_BITS);
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    fn row_count(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn nnz(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn row_string(&self, i: usize) -> String {
        (0..self.cols)
            .map(|j| if self.get(i, j) { '1' } else { '0' })
            .collect()
    }
}

fn ones_in(word: u64, base: usize) -> impl Iterator<Item = usize> {
    let mut w = word;
    std::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(base + bit)
        }
    })
}

/// Square 0-1 matrix of order `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix01 {
    bits: BitRows,
}

impl Matrix01 {
    pub fn zeros(n: usize) -> Self {
        Matrix01 {
            bits: BitRows::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j)
    }

    pub fn all_ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Adjacency matrix of the directed `n`-cycle `0 -> 1 -> ... -> n-1 -> 0`.
    /// `cycle(1)` is `[1]`.
    pub fn cycle(n: usize) -> Self {
        Self::from_fn(n, |i, j| (i + 1) % n == j)
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> bool) -> Self {
        Matrix01 {
            bits: BitRows::from_fn(n, n, f),
        }
    }

    /// Builds a matrix from rows of 0/1 values. Every row must have length
    /// equal to the number of rows and hold only 0 or 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(v) = row.iter().find(|&&v| v > 1) {
                return Err(Error::DimensionMismatch(format!("entry {v} is not 0 or 1")));
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i].as_ref()[j] == 1))
    }

    /// Decodes an enumeration index: bit `t` of `index` is entry `(t / n, t % n)`.
    pub fn from_index(n: usize, index: u64) -> Self {
        assert!(n * n <= 64, "order {n} does not fit a 64-bit index");
        Self::from_fn(n, |i, j| index >> (i * n + j) & 1 == 1)
    }

    pub fn to_index(&self) -> u64 {
        let n = self.n();
        assert!(n * n <= 64, "order {n} does not fit a 64-bit index");
        let mut index = 0u64;
        for i in 0..n {
            for j in self.row_ones(i) {
                index |= 1 << (i * n + j);
            }
        }
        index
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.bits.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits.get(i, j)
    }

    /// Column indices of the ones in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .row(i)
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| ones_in(word, w * WORD_BITS))
    }

    /// Number of ones, `f(A)`.
    pub fn nnz(&self) -> usize {
        self.bits.nnz()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (0..self.n()).map(|i| self.bits.row_count(i)).collect()
    }

    /// `(min, max)` row sum; these bracket the spectral radius. `None` for order 0.
    pub fn row_sum_bounds(&self) -> Option<(usize, usize)> {
        let sums = self.row_sums();
        Some((*sums.iter().min()?, *sums.iter().max()?))
    }

    pub fn is_zero(&self) -> bool {
        self.bits.words.iter().all(|&w| w == 0)
    }

    pub fn is_strictly_upper_triangular(&self) -> bool {
        (0..self.n()).all(|i| self.row_ones(i).all(|j| j > i))
    }

    /// `B(i,j) = A(σ(i), σ(j))`, i.e. `PᵀAP` for the permutation matrix of `σ`.
    pub fn permute(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: sigma.len(),
            });
        }
        Ok(Self::from_fn(self.n(), |i, j| {
            self.get(sigma.apply(i), sigma.apply(j))
        }))
    }

    /// Boolean product: entry `(i,j)` is set iff some `l` has `A(i,l) = B(l,j) = 1`.
    pub fn bool_mul(&self, other: &Matrix01) -> Result<Matrix01> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        let mut out = BitRows::zeros(self.n(), self.n());
        let stride = out.stride;
        for i in 0..self.n() {
            let acc = &mut out.words[i * stride..(i + 1) * stride];
            for l in self.row_ones(i) {
                for (a, b) in acc.iter_mut().zip(other.bits.row(l)) {
                    *a |= b;
                }
            }
        }
        Ok(Matrix01 { bits: out })
    }

    pub fn to_sat(&self) -> SatMatrix {
        SatMatrix {
            one: self.bits.clone(),
            two: BitRows::zeros(self.n(), self.n()),
        }
    }

    /// Image of `A^m` in the saturating semiring `{0, 1, 2+}`, by repeated squaring.
    /// `m = 0` yields the identity.
    pub fn sat_power(&self, m: u64) -> SatMatrix {
        self.to_sat().power(m)
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.n(), self.n(), |i, j| self.get(i, j) as u64)
    }

    /// Copies the rectangular block with the given row and column index lists.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Block01 {
        Block01 {
            bits: BitRows::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j])),
        }
    }

    pub fn row_string(&self, i: usize) -> String {
        self.bits.row_string(i)
    }

    /// Serializes to the text format: `n`, then `n` lines of `0`/`1`, each newline-terminated.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n());
        for i in 0..self.n() {
            s.push_str(&self.row_string(i));
            s.push('\n');
        }
        s
    }

    /// Parses the text format. The input must be exactly one matrix with a
    /// trailing newline and no extra lines or whitespace.
    pub fn parse_text(text: &str) -> Result<Self> {
        let body = text
            .strip_suffix('\n')
            .ok_or_else(|| parse_err(1, "missing trailing newline"))?;
        let mut lines = body.split('\n');
        let header = lines.next().unwrap_or("");
        let n =
            parse_decimal(header).ok_or_else(|| parse_err(1, format!("bad order {header:?}")))?;
        let mut bits = BitRows::zeros(n, n);
        for i in 0..n {
            let line_no = i + 2;
            let line = lines
                .next()
                .ok_or_else(|| parse_err(line_no, format!("expected {n} rows, found {i}")))?;
            if line.len() != n {
                return Err(parse_err(
                    line_no,
                    format!("row has {} characters, expected {n}", line.len()),
                ));
            }
            for (j, c) in line.bytes().enumerate() {
                match c {
                    b'0' => {}
                    b'1' => bits.set(i, j),
                    _ => {
                        return Err(parse_err(
                            line_no,
                            format!("invalid character {:?}", c as char),
                        ))
                    }
                }
            }
        }
        if lines.next().is_some() {
            return Err(parse_err(n + 2, "unexpected trailing content"));
        }
        Ok(Matrix01 { bits })
    }
}

pub(crate) fn parse_decimal(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Debug for Matrix01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n()).map(|i| self.row_string(i)).collect();
        write!(f, "Matrix01[{}]", rows.join(","))
    }
}

impl fmt::Display for Matrix01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Matrix01 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Matrix01::parse_text(s)
    }
}

/// Rectangular 0-1 matrix, used for the off-diagonal blocks of a decomposition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block01 {
    bits: BitRows,
}

impl Block01 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Block01 {
            bits: BitRows::zeros(rows, cols),
        }
    }

    /// `J_{rows,cols}`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| true)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> bool) -> Self {
        Block01 {
            bits: BitRows::from_fn(rows, cols, f),
        }
    }

    /// Parses `rows` strings of exactly `cols` characters from `{0,1}`.
    pub fn from_row_strings<S: AsRef<str>>(rows: usize, cols: usize, lines: &[S]) -> Result<Self> {
        if lines.len() != rows {
            return Err(Error::DimensionMismatch(format!(
                "expected {rows} rows, found {}",
                lines.len()
            )));
        }
        let mut bits = BitRows::zeros(rows, cols);
        for (i, line) in lines.iter().enumerate() {
            let line = line.as_ref();
            if line.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} characters, expected {cols}",
                    line.len()
                )));
            }
            for (j, c) in line.bytes().enumerate() {
                match c {
                    b'0' => {}
                    b'1' => bits.set(i, j),
                    _ => {
                        return Err(Error::DimensionMismatch(format!(
                            "invalid character {:?} in row {i}",
                            c as char
                        )))
                    }
                }
            }
        }
        Ok(Block01 { bits })
    }

    pub fn rows(&self) -> usize {
        self.bits.rows
    }

    pub fn cols(&self) -> usize {
        self.bits.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits.get(i, j)
    }

    pub fn nnz(&self) -> usize {
        self.bits.nnz()
    }

    pub fn is_all_ones(&self) -> bool {
        self.nnz() == self.rows() * self.cols()
    }

    pub fn row_count(&self, i: usize) -> usize {
        self.bits.row_count(i)
    }

    pub fn col_count(&self, j: usize) -> usize {
        (0..self.rows()).filter(|&i| self.get(i, j)).count()
    }

    pub fn row_string(&self, i: usize) -> String {
        self.bits.row_string(i)
    }

    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows()).map(|i| self.row_string(i)).collect()
    }

    /// Block with rows and columns reindexed: `B(i,j) = self(rows[i], cols[j])`.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Block01 {
        Block01::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows(), self.cols(), |i, j| self.get(i, j) as u64)
    }
}

impl fmt::Debug for Block01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Block01[{}x{}: {}]",
            self.rows(),
            self.cols(),
            self.row_strings().join(",")
        )
    }
}

/// An element of the saturating semiring `{0, 1, 2+}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SatValue {
    Zero,
    One,
    TwoPlus,
}

impl std::ops::Add for SatValue {
    type Output = SatValue;

    fn add(self, other: SatValue) -> SatValue {
        SatValue::saturate(self.as_u64() + other.as_u64())
    }
}

impl std::ops::Mul for SatValue {
    type Output = SatValue;

    fn mul(self, other: SatValue) -> SatValue {
        SatValue::saturate(self.as_u64() * other.as_u64())
    }
}

impl SatValue {
    pub fn saturate(v: u64) -> SatValue {
        match v {
            0 => SatValue::Zero,
            1 => SatValue::One,
            _ => SatValue::TwoPlus,
        }
    }

    fn as_u64(self) -> u64 {
        match self {
            SatValue::Zero => 0,
            SatValue::One => 1,
            SatValue::TwoPlus => 2,
        }
    }
}

impl fmt::Display for SatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SatValue::Zero => "0",
            SatValue::One => "1",
            SatValue::TwoPlus => "2+",
        })
    }
}

/// Square matrix over `{0, 1, 2+}` stored as two bit-planes.
///
/// Invariant: the `two` plane is a subset of the `one` plane.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SatMatrix {
    one: BitRows,
    two: BitRows,
}

impl SatMatrix {
    pub fn identity(n: usize) -> Self {
        Matrix01::identity(n).to_sat()
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> SatValue) -> Self {
        let mut one = BitRows::zeros(n, n);
        let mut two = BitRows::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                match f(i, j) {
                    SatValue::Zero => {}
                    SatValue::One => one.set(i, j),
                    SatValue::TwoPlus => {
                        one.set(i, j);
                        two.set(i, j);
                    }
                }
            }
        }
        SatMatrix { one, two }
    }

    pub fn n(&self) -> usize {
        self.one.rows
    }

    pub fn get(&self, i: usize, j: usize) -> SatValue {
        match (self.one.get(i, j), self.two.get(i, j)) {
            (false, _) => SatValue::Zero,
            (true, false) => SatValue::One,
            (true, true) => SatValue::TwoPlus,
        }
    }

    pub fn has_two_plus(&self) -> bool {
        self.two.words.iter().any(|&w| w != 0)
    }

    /// First entry holding `2+`, scanning row-major.
    pub fn first_two_plus(&self) -> Option<(usize, usize)> {
        (0..self.n()).find_map(|i| {
            self.two
                .row(i)
                .iter()
                .enumerate()
                .find_map(|(w, &word)| ones_in(word, w * WORD_BITS).next())
                .map(|j| (i, j))
        })
    }

    /// The 0-1 matrix this equals, if no entry is `2+`.
    pub fn to_matrix01(&self) -> Option<Matrix01> {
        (!self.has_two_plus()).then(|| Matrix01 {
            bits: self.one.clone(),
        })
    }

    /// Entrywise equality with a 0-1 matrix of the same order.
    pub fn equals_matrix(&self, a: &Matrix01) -> bool {
        self.n() == a.n() && !self.has_two_plus() && self.one.words == a.bits.words
    }

    /// First row-major entry where `self` differs from `a` (orders must agree).
    pub fn first_difference(&self, a: &Matrix01) -> Option<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != SatValue::saturate(a.get(i, j) as u64))
    }

    /// Saturating product. Row `i` of the result accumulates `A(i,l) ⊗ row_l(B)`
    /// over `l`, carrying the `>= 1` and `>= 2` planes word-parallel.
    pub fn mul(&self, other: &SatMatrix) -> SatMatrix {
        assert_eq!(self.n(), other.n(), "order mismatch in saturating product");
        let n = self.n();
        let mut one = BitRows::zeros(n, n);
        let mut two = BitRows::zeros(n, n);
        let stride = one.stride;
        for i in 0..n {
            let acc1 = &mut one.words[i * stride..(i + 1) * stride];
            let acc2 = &mut two.words[i * stride..(i + 1) * stride];
            for (w, &word) in self.one.row(i).iter().enumerate() {
                for l in ones_in(word, w * WORD_BITS) {
                    let b1 = other.one.row(l);
                    let b2 = if self.two.get(i, l) {
                        b1
                    } else {
                        other.two.row(l)
                    };
                    for t in 0..stride {
                        acc2[t] |= b2[t] | (acc1[t] & b1[t]);
                        acc1[t] |= b1[t];
                    }
                }
            }
        }
        SatMatrix { one, two }
    }

    pub fn power(&self, mut m: u64) -> SatMatrix {
        let mut result = SatMatrix::identity(self.n());
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                result = result.mul(&base);
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}

impl fmt::Debug for SatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n())
            .map(|i| {
                (0..self.n())
                    .map(|j| match self.get(i, j) {
                        SatValue::Zero => '0',
                        SatValue::One => '1',
                        SatValue::TwoPlus => '2',
                    })
                    .collect()
            })
            .collect();
        write!(f, "SatMatrix[{}]", rows.join(","))
    }
}

/// Bijection on `{0..n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n {
                return Err(Error::InvalidPermutation(format!(
                    "index {v} out of range 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("index {v} repeated")));
            }
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    /// `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "permutation length mismatch");
        Permutation {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    /// All permutations of `{0..n-1}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                map: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

/// Dense rectangular matrix of `u64`, with overflow-checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| (i == j) as u64)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn checked_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a.checked_mul(other.get(l, j)).ok_or(Error::Overflow)?;
                    let cell = &mut out.data[i * other.cols + j];
                    *cell = cell.checked_add(term).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// `self^m` by `m - 1` successive multiplications (no squaring).
    pub fn checked_pow(&self, m: u64) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                "power of a non-square matrix".into(),
            ));
        }
        let mut acc = ExactMatrix::identity(self.rows);
        for _ in 0..m {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Entrywise `min(2, ·)` image; square matrices only.
    pub fn saturate(&self) -> SatMatrix {
        assert_eq!(self.rows, self.cols, "saturate needs a square matrix");
        SatMatrix::from_fn(self.rows, |i, j| SatValue::saturate(self.get(i, j)))
    }

    pub fn max_entry(&self) -> u64 {
        self.data.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> =
                    (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
                cells.join(" ")
            })
            .collect();
        write!(
            f,
            "ExactMatrix[{}x{}: {}]",
            self.rows,
            self.cols,
            rows.join("; ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u8]]) -> Matrix01 {
        Matrix01::from_rows(rows).unwrap()
    }

    #[test]
    fn nnz_examples() {
        assert_eq!(Matrix01::zeros(3).nnz(), 0);
        assert_eq!(Matrix01::identity(4).nnz(), 4);
        assert_eq!(Matrix01::all_ones(2).nnz(), 4);
    }

    #[test]
    fn permute_examples() {
        let a = m(&[&[0, 1, 1], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(a.permute(&Permutation::identity(3)).unwrap(), a);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(
            Matrix01::cycle(2).permute(&swap).unwrap(),
            Matrix01::cycle(2)
        );
        assert_eq!(
            m(&[&[0, 1], &[0, 0]]).permute(&swap).unwrap(),
            m(&[&[0, 0], &[1, 0]])
        );
        assert!(matches!(
            a.permute(&swap),
            Err(Error::SizeMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn sat_power_examples() {
        for n in 0..5 {
            for p in 0..6 {
                assert!(Matrix01::identity(n)
                    .sat_power(p)
                    .equals_matrix(&Matrix01::identity(n)));
            }
        }
        assert!(Matrix01::cycle(3)
            .sat_power(3)
            .equals_matrix(&Matrix01::identity(3)));
        // exact power of J_2 cubed is 4 everywhere
        let exact = Matrix01::all_ones(2).to_exact().checked_pow(3).unwrap();
        assert!((0..2).all(|i| (0..2).all(|j| exact.get(i, j) == 4)));
        let p = Matrix01::all_ones(2).sat_power(3);
        assert!((0..2).all(|i| (0..2).all(|j| p.get(i, j) == SatValue::TwoPlus)));
    }

    #[test]
    fn row_sum_examples() {
        assert_eq!(Matrix01::cycle(5).row_sums(), vec![1; 5]);
        assert_eq!(Matrix01::zeros(2).row_sums(), vec![0, 0]);
        let a = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(a.row_sums(), vec![2, 1]);
        assert_eq!(a.row_sum_bounds(), Some((1, 2)));
        assert_eq!(Matrix01::zeros(0).row_sum_bounds(), None);
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 70;
        let c = Matrix01::cycle(n);
        assert_eq!(c.nnz(), n);
        assert!(c.get(63, 64) && c.get(69, 0));
        assert!(c.sat_power(n as u64).equals_matrix(&Matrix01::identity(n)));
        assert_eq!(
            c.bool_mul(&c).unwrap(),
            Matrix01::from_fn(n, |i, j| (i + 2) % n == j)
        );
    }

    #[test]
    fn text_format_round_trip_and_rejections() {
        let a = m(&[&[0, 1, 1], &[0, 1, 1], &[0, 0, 0]]);
        assert_eq!(a.to_text(), "3\n011\n011\n000\n");
        assert_eq!(Matrix01::parse_text("3\n011\n011\n000\n").unwrap(), a);
        assert_eq!(Matrix01::zeros(0).to_text(), "0\n");
        assert_eq!(Matrix01::parse_text("0\n").unwrap(), Matrix01::zeros(0));

        for bad in [
            "2\n01\n10",
            "2\n01\n1\n",
            "2\n01\n102\n",
            "2\n01\n12\n",
            "2\n01\n10\n\n",
            "2\n01\n",
            "x\n",
            "+1\n1\n",
            "",
            "2\r\n01\r\n10\r\n",
        ] {
            assert!(
                Matrix01::parse_text(bad).is_err(),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn enumeration_index_bit_order() {
        // bit 0 = (0,0), bit 1 = (0,1), bit 2 = (1,0)
        assert_eq!(Matrix01::from_index(2, 0b0010), m(&[&[0, 1], &[0, 0]]));
        assert_eq!(Matrix01::from_index(2, 0b0100), m(&[&[0, 0], &[1, 0]]));
        for idx in 0..512 {
            assert_eq!(Matrix01::from_index(3, idx).to_index(), idx);
        }
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(0).len(), 1);
    }

    #[test]
    fn exact_overflow_is_reported() {
        let big = ExactMatrix::from_fn(2, 2, |_, _| u64::MAX / 2);
        assert_eq!(big.checked_mul(&big), Err(Error::Overflow));
    }

    #[test]
    fn sat_semiring_tables() {
        use SatValue::*;
        assert_eq!(One + One, TwoPlus);
        assert_eq!(TwoPlus * Zero, Zero);
        assert_eq!(One * One, One);
        assert_eq!(TwoPlus * One, TwoPlus);
    }
}
