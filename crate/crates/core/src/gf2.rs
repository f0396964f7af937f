//! Bit-packed linear algebra over F2.
//!
//! [`BitVec`] stores coordinate `i` at bit `i % 64` of word `i / 64`; the
//! unused high bits of the last word are kept zero so that equality, hashing
//! and popcounts work directly on the words. [`BitMatrix`] is a row list with
//! deterministic reduced row echelon form (pivots chosen left to right) and
//! span enumeration in subset-indicator order.

use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// Packed vector over F2.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    /// The zero vector of length `n`.
    pub fn zeros(n: usize) -> Self {
        BitVec {
            words: vec![0; n.div_ceil(WORD_BITS)],
            len: n,
        }
    }

    /// Parse a `0`/`1` string, leftmost character = coordinate 0.
    pub fn from_str01(s: &str) -> Result<Self> {
        let mut v = BitVec::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("invalid character `{other}` in bit string"),
                    })
                }
            }
        }
        Ok(v)
    }

    /// Vector with ones exactly at `positions`.
    pub fn from_ones(n: usize, positions: &[usize]) -> Self {
        let mut v = BitVec::zeros(n);
        for &p in positions {
            v.set(p, true);
        }
        v
    }

    /// Standard basis vector `e_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        Self::from_ones(n, &[i])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Coordinatewise sum (XOR). Errors on length mismatch.
    pub fn add(&self, other: &BitVec) -> Result<BitVec> {
        self.check_len(other)?;
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
        Ok(out)
    }

    /// Coordinatewise product (AND), i.e. the meet of supports.
    pub fn meet(&self, other: &BitVec) -> Result<BitVec> {
        self.check_len(other)?;
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        Ok(out)
    }

    /// Parity of the meet, i.e. the standard F2 inner product.
    pub fn dot(&self, other: &BitVec) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.dot_uc(other))
    }

    #[inline]
    pub(crate) fn dot_uc(&self, other: &BitVec) -> bool {
        let mut acc = 0u64;
        for (w, o) in self.words.iter().zip(&other.words) {
            acc ^= w & o;
        }
        acc.count_ones() & 1 == 1
    }

    #[inline]
    pub(crate) fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi * WORD_BITS;
            std::iter::successors(
                if w == 0 { None } else { Some(w) },
                |&rest| {
                    let next = rest & (rest - 1);
                    if next == 0 {
                        None
                    } else {
                        Some(next)
                    }
                },
            )
            .map(move |rest| base + rest.trailing_zeros() as usize)
        })
    }

    /// The vector read as an integer with coordinate 0 most significant
    /// (i.e. the displayed bit string read as a binary numeral).
    pub fn to_be_uint(&self) -> Result<u64> {
        if self.len > 63 {
            return Err(Error::Capacity {
                what: "big-endian integer encoding of a bit vector",
                needed: self.len as u128,
                limit: 63,
            });
        }
        let mut acc = 0u64;
        for i in 0..self.len {
            acc = (acc << 1) | u64::from(self.get(i));
        }
        Ok(acc)
    }

    /// Inverse of [`to_be_uint`](Self::to_be_uint).
    pub fn from_be_uint(n: usize, value: u64) -> Result<Self> {
        if n > 63 {
            return Err(Error::Capacity {
                what: "big-endian integer encoding of a bit vector",
                needed: n as u128,
                limit: 63,
            });
        }
        let mut v = BitVec::zeros(n);
        for i in 0..n {
            if (value >> (n - 1 - i)) & 1 == 1 {
                v.set(i, true);
            }
        }
        Ok(v)
    }

    fn check_len(&self, other: &BitVec) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }
}

/// Orders vectors of equal length like their big-endian integer values;
/// shorter vectors sort before longer ones.
impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (w, o) in self.words.iter().zip(&other.words) {
                let diff = w ^ o;
                if diff != 0 {
                    // The lowest differing bit is the most significant
                    // differing coordinate.
                    let bit = 1u64 << diff.trailing_zeros();
                    return if w & bit == 0 {
                        std::cmp::Ordering::Less
                    } else {
                        std::cmp::Ordering::Greater
                    };
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// A list of equal-length rows over F2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        BitMatrix {
            rows: Vec::new(),
            cols,
        }
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self> {
        let cols = rows.first().map_or(0, BitVec::len);
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    left: cols,
                    right: r.len(),
                });
            }
        }
        Ok(BitMatrix { rows, cols })
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduced row echelon form with pivot columns chosen left to right;
    /// zero rows are dropped, so the result has exactly `rank` rows.
    pub fn rref(&self) -> BitMatrix {
        let mut rows = self.rows.clone();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(found) = (pivot_row..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(pivot_row, found);
            let pivot = rows[pivot_row].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != pivot_row && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivot_row += 1;
            if pivot_row == rows.len() {
                break;
            }
        }
        rows.truncate(pivot_row);
        BitMatrix {
            rows,
            cols: self.cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rows.len()
    }

    /// Iterate the full row span, one vector per subset of rows, in
    /// ascending subset-indicator order (bit `i` of the counter selects
    /// row `i`). The first item is always the zero vector.
    pub fn span_iter(&self) -> Result<SpanIter<'_>> {
        if self.rows.len() >= 64 {
            return Err(Error::Capacity {
                what: "span enumeration",
                needed: self.rows.len() as u128,
                limit: 63,
            });
        }
        Ok(SpanIter {
            rows: &self.rows,
            cols: self.cols,
            next: 0,
            total: 1u64 << self.rows.len(),
        })
    }
}

/// Iterator over all row combinations of a [`BitMatrix`].
pub struct SpanIter<'a> {
    rows: &'a [BitVec],
    cols: usize,
    next: u64,
    total: u64,
}

impl Iterator for SpanIter<'_> {
    type Item = BitVec;

    fn next(&mut self) -> Option<BitVec> {
        if self.next == self.total {
            return None;
        }
        let mut acc = BitVec::zeros(self.cols);
        let mut m = self.next;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            acc.xor_assign(&self.rows[i]);
            m &= m - 1;
        }
        self.next += 1;
        Some(acc)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn bv(s: &str) -> BitVec {
        BitVec::from_str01(s).unwrap()
    }

    #[test]
    fn weight_matches_naive_count() {
        let v = bv("1011001110001");
        assert_eq!(v.weight(), 7);
        assert_eq!(v.ones().count(), 7);
        let long = BitVec::from_ones(200, &[0, 63, 64, 127, 128, 199]);
        assert_eq!(long.weight(), 6);
        assert_eq!(
            long.ones().collect::<Vec<_>>(),
            vec![0, 63, 64, 127, 128, 199]
        );
    }

    #[test]
    fn add_meet_and_inclusion_exclusion() {
        let x = bv("11110000");
        let y = bv("11001100");
        let sum = x.add(&y).unwrap();
        let meet = x.meet(&y).unwrap();
        assert_eq!(sum, bv("00111100"));
        assert_eq!(meet, bv("11000000"));
        // w(x + y) = w(x) + w(y) - 2 w(x & y)
        assert_eq!(sum.weight(), x.weight() + y.weight() - 2 * meet.weight());
        assert!(!x.dot(&y).unwrap()); // |meet| = 2, even parity
    }

    #[test]
    fn dot_is_meet_parity() {
        let x = bv("1110");
        let y = bv("0111");
        assert_eq!(x.meet(&y).unwrap().weight() % 2 == 1, x.dot(&y).unwrap());
        assert!(!x.dot(&y).unwrap());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let x = bv("101");
        let y = bv("10");
        assert!(x.add(&y).is_err());
        assert!(x.meet(&y).is_err());
        assert!(x.dot(&y).is_err());
    }

    #[test]
    fn big_endian_integer_round_trip() {
        let v = bv("0100");
        assert_eq!(v.to_be_uint().unwrap(), 4);
        assert_eq!(bv("0011").to_be_uint().unwrap(), 3);
        for k in 0..16 {
            let v = BitVec::from_be_uint(4, k).unwrap();
            assert_eq!(v.to_be_uint().unwrap(), k);
        }
    }

    #[test]
    fn ordering_matches_big_endian_value() {
        let mut vals: Vec<BitVec> = (0..32).map(|k| BitVec::from_be_uint(5, k).unwrap()).collect();
        let sorted = vals.clone();
        vals.reverse();
        vals.sort();
        assert_eq!(vals, sorted);
        assert!(bv("0011") < bv("0100"));
    }

    #[test]
    fn rref_small_example() {
        // rows 110, 011, 101 span a rank-2 code with 4 words
        let m = BitMatrix::from_rows(vec![bv("110"), bv("011"), bv("101")]).unwrap();
        let r = m.rref();
        assert_eq!(r.rows().len(), 2);
        assert_eq!(m.rank(), 2);
        let span: BTreeSet<String> = r
            .span_iter()
            .unwrap()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(span.len(), 4);
        let expect: BTreeSet<String> = ["000", "110", "011", "101"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(span, expect);
    }

    #[test]
    fn rref_is_idempotent_and_pivots_are_unique() {
        let m = BitMatrix::from_rows(vec![
            bv("11110000"),
            bv("11001100"),
            bv("10101010"),
            bv("11111111"),
        ])
        .unwrap();
        let r = m.rref();
        assert_eq!(r, r.rref());
        assert_eq!(r.rows().len(), 4);
        // each pivot column contains a single one
        for row in r.rows() {
            let pivot = row.ones().next().unwrap();
            let count = r.rows().iter().filter(|other| other.get(pivot)).count();
            assert_eq!(count, 1);
        }
    }

    #[test]
    fn span_iter_order_is_subset_indicator_ascending() {
        let m = BitMatrix::from_rows(vec![bv("100"), bv("010")]).unwrap();
        let got: Vec<String> = m.span_iter().unwrap().map(|v| v.to_string()).collect();
        // counter 0 -> 0, 1 -> row0, 2 -> row1, 3 -> row0+row1
        assert_eq!(got, vec!["000", "100", "010", "110"]);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(BitMatrix::from_rows(vec![bv("10"), bv("100")]).is_err());
        let mut m = BitMatrix::new(2);
        assert!(m.push_row(bv("101")).is_err());
        assert!(m.push_row(bv("11")).is_ok());
    }
}
