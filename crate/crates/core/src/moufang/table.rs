//! Materialized Cayley tables and their exchange format.
//!
//! The text format is line based and fully deterministic:
//!
//! ```text
//! order 16
//! legend
//! 1 000 0
//! 2 000 1
//! 3 001 0
//! ...
//! 1 2 3 4 ...        (16 rows of 16 one-based indices)
//! ```
//!
//! Elements are listed by ascending big-endian exponent vector, then by
//! the `s` exponent, so index 1 is always the unit and index 2 is `s`.
//! Row `i`, column `j` holds the index of `element_i o element_j`. For a
//! zero-dimensional loop the (empty) exponent field is written as `-`.
//! Parsing is strict: it rejects any deviation from this shape with the
//! offending line number.

use std::fmt::Write as _;
use std::io::Write;

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::report::{Mode, Report};
use crate::triality::mask_to_bitvec;

use super::{big_endian, CodeLoop};

/// Default ceiling on materialized table order; callers must opt in above
/// this.
pub const TABLE_SOFT_LIMIT: u64 = 1 << 12;

/// Absolute ceiling on materialized table order (entry storage is
/// `order^2` 16-bit values, 128 MiB at this cap).
pub const TABLE_HARD_LIMIT: u64 = 1 << 13;

/// Ceiling on `order^3` for exhaustive triple scans over a table.
const TABLE_TRIPLE_LIMIT: u128 = 1 << 24;

/// A fully materialized loop multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    dim: usize,
    order: usize,
    /// Exponent vector and `s` exponent per rank, in table order.
    legend: Vec<(BitVec, bool)>,
    /// Row-major zero-based ranks: `entries[i * order + j] = rank(e_i o e_j)`.
    entries: Vec<u16>,
}

/// The legend entry at a rank, derived from the table ordering.
fn legend_entry(dim: usize, rank: usize) -> (BitVec, bool) {
    let x = big_endian(dim, (rank >> 1) as u64);
    (mask_to_bitvec(dim, x), rank & 1 == 1)
}

impl CayleyTable {
    /// Materialize the table of a loop. `limit` caps the order and is
    /// itself capped by [`TABLE_HARD_LIMIT`].
    pub fn build(l: &CodeLoop, limit: u64) -> Result<Self> {
        let cap = limit.min(TABLE_HARD_LIMIT);
        if l.order() > cap {
            return Err(Error::Capacity {
                what: "Cayley table order",
                needed: l.order() as u128,
                limit: cap as u128,
            });
        }
        let order = l.order() as usize;
        let elems: Vec<_> = l.elements().collect();
        let legend = elems.iter().map(|a| (a.xbits(), a.t())).collect();
        let mut entries = Vec::with_capacity(order * order);
        for &a in &elems {
            for &b in &elems {
                let p = l.position(l.mul(a, b)?)?;
                entries.push(p as u16);
            }
        }
        Ok(CayleyTable {
            dim: l.dim(),
            order,
            legend,
            entries,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Zero-based rank of `element_i o element_j`.
    pub fn entry(&self, i: usize, j: usize) -> usize {
        assert!(i < self.order && j < self.order, "rank out of range");
        self.entries[i * self.order + j] as usize
    }

    /// Exponent vector and `s` exponent of the element at a rank.
    pub fn legend(&self, rank: usize) -> &(BitVec, bool) {
        &self.legend[rank]
    }

    fn legend_label(&self, rank: usize) -> String {
        let (bits, t) = &self.legend[rank];
        let shown = if bits.is_empty() {
            "-".into()
        } else {
            bits.to_string()
        };
        format!("{} {}", shown, u8::from(*t))
    }

    // -- serialization ---------------------------------------------------------

    /// Write the exchange format to a sink (streaming; rows are not
    /// buffered together).
    pub fn write_to(&self, w: &mut dyn Write) -> std::io::Result<()> {
        writeln!(w, "order {}", self.order)?;
        writeln!(w, "legend")?;
        for rank in 0..self.order {
            writeln!(w, "{} {}", rank + 1, self.legend_label(rank))?;
        }
        let mut line = String::new();
        for i in 0..self.order {
            line.clear();
            for j in 0..self.order {
                if j > 0 {
                    line.push(' ');
                }
                let _ = write!(line, "{}", self.entry(i, j) + 1);
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    /// The exchange format as a string.
    pub fn serialize(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("write to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Parse the exchange format, validating shape, legend ordering, and
    /// entry ranges.
    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse { line, msg };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
        let mut next_line = |what: &str| {
            lines
                .next()
                .ok_or_else(|| err(0, format!("unexpected end of input, expected {what}")))
        };

        let (ln, head) = next_line("`order <m>`")?;
        let order: usize = match head.split_whitespace().collect::<Vec<_>>()[..] {
            ["order", m] => m
                .parse()
                .map_err(|_| err(ln, format!("invalid order `{m}`")))?,
            _ => return Err(err(ln, format!("expected `order <m>`, found `{head}`"))),
        };
        if order < 2 || !order.is_power_of_two() || order as u64 > TABLE_HARD_LIMIT {
            return Err(err(
                ln,
                format!(
                    "order must be a power of two in [2, {TABLE_HARD_LIMIT}], found {order}"
                ),
            ));
        }
        let dim = order.trailing_zeros() as usize - 1;

        let (ln, tag) = next_line("`legend`")?;
        if tag != "legend" {
            return Err(err(ln, format!("expected `legend`, found `{tag}`")));
        }

        let mut legend = Vec::with_capacity(order);
        for rank in 0..order {
            let (ln, line) = next_line("a legend line")?;
            let fields: Vec<_> = line.split_whitespace().collect();
            let [idx, bits, t] = fields[..] else {
                return Err(err(
                    ln,
                    format!("expected `<index> <bits> <0|1>`, found `{line}`"),
                ));
            };
            if idx.parse::<usize>().ok() != Some(rank + 1) {
                return Err(err(ln, format!("expected index {}, found `{idx}`", rank + 1)));
            }
            let parsed = if bits == "-" {
                BitVec::zeros(0)
            } else {
                BitVec::from_str01(bits).map_err(|_| {
                    err(ln, format!("invalid exponent string `{bits}`"))
                })?
            };
            let t = match t {
                "0" => false,
                "1" => true,
                other => return Err(err(ln, format!("invalid s exponent `{other}`"))),
            };
            let expect = legend_entry(dim, rank);
            if (parsed.clone(), t) != expect {
                return Err(err(
                    ln,
                    format!(
                        "legend out of canonical order: expected `{} {}`, found `{bits} {}`",
                        if expect.0.is_empty() {
                            "-".into()
                        } else {
                            expect.0.to_string()
                        },
                        u8::from(expect.1),
                        u8::from(t),
                    ),
                ));
            }
            legend.push((parsed, t));
        }

        let mut entries = Vec::with_capacity(order * order);
        for row in 0..order {
            let (ln, line) = next_line("a table row")?;
            let mut count = 0usize;
            for tok in line.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| err(ln, format!("invalid entry `{tok}`")))?;
                if v < 1 || v > order {
                    return Err(err(
                        ln,
                        format!("entry {v} out of range 1..={order}"),
                    ));
                }
                entries.push((v - 1) as u16);
                count += 1;
            }
            if count != order {
                return Err(err(
                    ln,
                    format!("row {} has {count} entries, expected {order}", row + 1),
                ));
            }
        }
        for (ln, rest) in lines {
            if !rest.trim().is_empty() {
                return Err(err(ln, format!("unexpected trailing content `{rest}`")));
            }
        }

        Ok(CayleyTable {
            dim,
            order,
            legend,
            entries,
        })
    }

    // -- table-level checks ------------------------------------------------------

    /// Unit row/column and the Latin property: every row and every column
    /// is a permutation of the ranks.
    pub fn latin_report(&self) -> Report {
        let mut report = Report::new("table-latin", Mode::Exhaustive);
        let m = self.order;
        for i in 0..m {
            report.record(self.entry(0, i) == i && self.entry(i, 0) == i, || {
                format!("rank {} is not preserved by the unit", i + 1)
            });
        }
        let mut row_seen = vec![0u64; m.div_ceil(64)];
        let mut col_seen = vec![0u64; m.div_ceil(64)];
        for i in 0..m {
            row_seen.iter_mut().for_each(|w| *w = 0);
            col_seen.iter_mut().for_each(|w| *w = 0);
            for j in 0..m {
                let r = self.entry(i, j);
                row_seen[r / 64] |= 1 << (r % 64);
                let c = self.entry(j, i);
                col_seen[c / 64] |= 1 << (c % 64);
            }
            let row_full = row_seen.iter().map(|w| w.count_ones()).sum::<u32>() as usize == m;
            report.record(row_full, || {
                format!("row {} ({}) repeats a value", i + 1, self.legend_label(i))
            });
            let col_full = col_seen.iter().map(|w| w.count_ones()).sum::<u32>() as usize == m;
            report.record(col_full, || {
                format!("column {} ({}) repeats a value", i + 1, self.legend_label(i))
            });
        }
        report
    }

    fn require_triples(&self, what: &'static str) -> Result<()> {
        let cube = (self.order as u128).pow(3);
        if cube > TABLE_TRIPLE_LIMIT {
            return Err(Error::Capacity {
                what,
                needed: cube,
                limit: TABLE_TRIPLE_LIMIT,
            });
        }
        Ok(())
    }

    /// Exhaustive check of `x o (y o (x o z)) = ((x o y) o x) o z` by
    /// table lookups.
    pub fn moufang_report(&self) -> Result<Report> {
        self.require_triples("table triple scan")?;
        let mut report = Report::new("table-moufang", Mode::Exhaustive);
        let m = self.order;
        for x in 0..m {
            for y in 0..m {
                let xyx = self.entry(self.entry(x, y), x);
                for z in 0..m {
                    let lhs = self.entry(x, self.entry(y, self.entry(x, z)));
                    let rhs = self.entry(xyx, z);
                    report.record(lhs == rhs, || {
                        format!(
                            "bent associativity fails at ranks ({}, {}, {})",
                            x + 1,
                            y + 1,
                            z + 1
                        )
                    });
                }
            }
        }
        Ok(report)
    }

    /// First non-associative triple of ranks, if any.
    pub fn associativity_witness(&self) -> Result<Option<(usize, usize, usize)>> {
        self.require_triples("table triple scan")?;
        let m = self.order;
        for x in 0..m {
            for y in 0..m {
                let xy = self.entry(x, y);
                for z in 0..m {
                    if self.entry(xy, z) != self.entry(x, self.entry(y, z)) {
                        return Ok(Some((x, y, z)));
                    }
                }
            }
        }
        Ok(None)
    }
}
