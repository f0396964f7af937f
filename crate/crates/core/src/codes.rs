//! Doubly even binary codes: parsing, validation, builtins.
//!
//! A binary code is *doubly even* when every codeword weight is divisible
//! by 4. That holds if and only if every basis row has weight divisible by 4
//! and every pair of basis rows meets in an even number of coordinates
//! (by `w(x+y) = w(x) + w(y) - 2 w(x & y)` and induction), which is the
//! cheap criterion the validator uses; for small codes it additionally
//! enumerates the whole span as a cross-check.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, SpanIter};
use crate::report::{Mode, Report};

/// Largest span (number of codewords) enumerated by exhaustive checks.
pub const SPAN_ENUM_LIMIT: u64 = 4096;

/// A validated doubly even binary code with a fixed, ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublyEvenCode {
    length: usize,
    basis: BitMatrix,
}

impl DoublyEvenCode {
    /// Build from independent generator rows, keeping their order.
    /// Errors when rows are dependent or the span is not doubly even.
    pub fn from_basis(basis: BitMatrix) -> Result<Self> {
        if basis.rank() != basis.rows().len() {
            return Err(Error::Structure(format!(
                "generator rows are dependent: {} rows of rank {}",
                basis.rows().len(),
                basis.rank()
            )));
        }
        if let Some((witness, weight)) = doubly_even_witness(&basis) {
            return Err(Error::NotDoublyEven {
                witness: witness.to_string(),
                weight,
            });
        }
        Ok(DoublyEvenCode {
            length: basis.cols(),
            basis,
        })
    }

    /// Build from arbitrary generator rows; the stored basis is their
    /// reduced row echelon form.
    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self> {
        Self::from_basis(BitMatrix::from_rows(rows)?.rref())
    }

    /// Parse the line-oriented generator format: `#` comment lines,
    /// equal-length rows of `0`/`1`. The stored basis is the reduced row
    /// echelon form of the parsed rows.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_rows(parse_generator_rows(text)?)
    }

    /// One of the named builtin codes: `hamming8`, `hamming8_sub3`,
    /// `golay24`, or `zero_<k>` (k pairwise disjoint weight-4 blocks).
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "hamming8" => Self::from_basis(hamming8_basis()),
            "hamming8_sub3" => {
                let mut rows = hamming8_basis().rows().to_vec();
                rows.truncate(3);
                Self::from_basis(BitMatrix::from_rows(rows)?)
            }
            "golay24" => Self::from_rows(golay24_rows()),
            _ => {
                if let Some(k) = name.strip_prefix("zero_") {
                    let k: usize = k.parse().map_err(|_| {
                        Error::UnknownBuiltin(name.to_string())
                    })?;
                    let rows: Vec<BitVec> = (0..k)
                        .map(|i| {
                            BitVec::from_ones(4 * k, &[4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3])
                        })
                        .collect();
                    let mut m = BitMatrix::new(4 * k);
                    for r in rows {
                        m.push_row(r)?;
                    }
                    Self::from_basis(m)
                } else {
                    Err(Error::UnknownBuiltin(name.to_string()))
                }
            }
        }
    }

    /// Ambient length m of the code (codewords live in F2^m).
    pub fn length(&self) -> usize {
        self.length
    }

    /// Dimension n of the code.
    pub fn dim(&self) -> usize {
        self.basis.rows().len()
    }

    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    /// The codeword with coordinate vector `coords` in the stored basis.
    pub fn codeword(&self, coords: &BitVec) -> Result<BitVec> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: coords.len(),
            });
        }
        let mut acc = BitVec::zeros(self.length);
        for i in coords.ones() {
            acc = acc.add(&self.basis.rows()[i])?;
        }
        Ok(acc)
    }

    /// All codewords, in subset-indicator order over the stored basis.
    pub fn codewords(&self) -> Result<SpanIter<'_>> {
        self.basis.span_iter()
    }

    /// Weight -> count over all 2^n codewords.
    pub fn weight_distribution(&self) -> Result<BTreeMap<usize, u64>> {
        if 1u128 << self.dim() > u128::from(SPAN_ENUM_LIMIT) {
            return Err(Error::Capacity {
                what: "weight distribution enumeration",
                needed: 1u128 << self.dim(),
                limit: u128::from(SPAN_ENUM_LIMIT),
            });
        }
        let mut dist = BTreeMap::new();
        for w in self.codewords()? {
            *dist.entry(w.weight()).or_insert(0u64) += 1;
        }
        Ok(dist)
    }

    /// Smallest nonzero codeword weight (None for the zero-dimensional code).
    pub fn min_weight(&self) -> Result<Option<usize>> {
        Ok(self
            .weight_distribution()?
            .iter()
            .find(|(w, _)| **w > 0)
            .map(|(w, _)| *w))
    }

    /// Generator rows, one per line.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for row in self.basis.rows() {
            let _ = writeln!(out, "{row}");
        }
        out
    }
}

/// Parse the line-oriented generator format without validating the span:
/// `#` comment lines and blank lines are skipped; every other line must be
/// a row of `0`/`1`, all of equal length, and at least one row must appear.
pub fn parse_generator_rows(text: &str) -> Result<Vec<BitVec>> {
    let mut rows: Vec<BitVec> = Vec::new();
    let mut width: Option<(usize, usize)> = None; // (cols, first line no)
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(bad) = line.chars().find(|c| *c != '0' && *c != '1') {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("invalid character `{bad}` in generator row"),
            });
        }
        match width {
            None => width = Some((line.len(), line_no)),
            Some((cols, first)) if cols != line.len() => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!(
                        "row has length {}, but line {} has length {}",
                        line.len(),
                        first,
                        cols
                    ),
                });
            }
            _ => {}
        }
        rows.push(BitVec::from_str01(line)?);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no generator rows found".into(),
        });
    }
    Ok(rows)
}

/// Basis-criterion witness: a codeword of weight not divisible by 4 derived
/// from a bad row or a bad row pair, if one exists.
fn doubly_even_witness(basis: &BitMatrix) -> Option<(BitVec, usize)> {
    let rows = basis.rows();
    for r in rows {
        if r.weight() % 4 != 0 {
            return Some((r.clone(), r.weight()));
        }
    }
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if rows[i].meet(&rows[j]).ok()?.weight() % 2 != 0 {
                let sum = rows[i].add(&rows[j]).ok()?;
                let w = sum.weight();
                return Some((sum, w));
            }
        }
    }
    None
}

/// Check that the span of `basis` is doubly even: row weights and pairwise
/// meets (always), plus full span enumeration when the span has at most
/// [`SPAN_ENUM_LIMIT`] words.
pub fn validate_doubly_even(basis: &BitMatrix) -> Report {
    let mut report = Report::new("doubly-even", Mode::Exhaustive);
    let rows = basis.rows();
    for r in rows {
        report.record(r.weight() % 4 == 0, || {
            format!("row {r} has weight {}", r.weight())
        });
    }
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let meet = rows[i].meet(&rows[j]).expect("equal-length rows");
            report.record(meet.weight().is_multiple_of(2), || {
                format!(
                    "rows {i} and {j} meet in {} coordinates; their sum has weight {}",
                    meet.weight(),
                    rows[i].add(&rows[j]).expect("equal-length rows").weight()
                )
            });
        }
    }
    if rows.len() < 64 && (1u64 << rows.len()) <= SPAN_ENUM_LIMIT {
        for w in basis.span_iter().expect("span within limit") {
            report.record(w.weight() % 4 == 0, || {
                format!("codeword {w} has weight {}", w.weight())
            });
        }
        report.note("basis criterion and full span enumeration");
    } else {
        report.note("basis criterion only; span too large to enumerate");
    }
    report
}

/// The conventional generator rows of the extended Hamming [8,4] code.
fn hamming8_basis() -> BitMatrix {
    let rows = ["11110000", "11001100", "10101010", "11111111"]
        .iter()
        .map(|s| BitVec::from_str01(s).expect("literal rows"))
        .collect();
    BitMatrix::from_rows(rows).expect("equal-length rows")
}

/// Generator rows for the extended binary Golay [24,12,8] code: the twelve
/// cyclic shifts of x^11+x^10+x^6+x^5+x^4+x^2+1 over 23 coordinates, each
/// extended by an overall parity bit. The span is verified doubly even with
/// weights {0, 8, 12, 16, 24} by the validator and the tests.
fn golay24_rows() -> Vec<BitVec> {
    const POLY: [usize; 7] = [0, 2, 4, 5, 6, 10, 11];
    (0..12)
        .map(|shift| {
            let positions: Vec<usize> = POLY.iter().map(|p| p + shift).collect();
            let mut row = BitVec::from_ones(24, &positions);
            if row.weight() % 2 == 1 {
                row.set(23, true);
            }
            row
        })
        .collect()
}
