//! Symplectic cubic spaces: a cubic form sigma on F2^n together with its
//! polarizations.
//!
//! The data is the coefficient family on basis tuples: `sigma_i` on single
//! indices, `kappa_ij` on pairs `i < j`, `alpha_ijk` on triples `i < j < k`.
//! Evaluation extends these to arbitrary vectors:
//!
//! * `sigma(x) = sum x_i sigma_i + sum_{i<j} x_i x_j kappa_ij
//!   + sum_{i<j<k} x_i x_j x_k alpha_ijk`
//! * `kappa(x, y) = sigma(x + y) + sigma(x) + sigma(y)` — a symmetric form,
//! * `alpha(x, y, z) = kappa(x + y, z) + kappa(x, z) + kappa(y, z)` — a
//!   symmetric trilinear alternating form.
//!
//! A doubly even binary code yields such a space with
//! `sigma(c) = w(c)/4`, `kappa(c, d) = w(c & d)/2`,
//! `alpha(c, d, e) = w(c & d & e)`, all mod 2.

use std::fmt::Write as _;

use rand::Rng;

use crate::codes::DoublyEvenCode;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::report::{Mode, Report};
use crate::sampling::{random_bitvec, suite_rng};

/// Largest supported dimension (keeps coordinate vectors addressable as u64).
pub const MAX_DIM: usize = 63;

/// Largest number of (x, y, z) triples an exhaustive axiom check may visit.
pub const EXHAUSTIVE_TRIPLE_LIMIT: u128 = 1 << 24;

fn binom2(a: usize) -> usize {
    a * a.saturating_sub(1) / 2
}

fn binom3(a: usize) -> usize {
    if a < 3 {
        0
    } else {
        a * (a - 1) * (a - 2) / 6
    }
}

/// Rank of the pair `i < j < n` in lexicographic order.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    binom2(n) - binom2(n - i) + (j - i - 1)
}

/// Rank of the triple `i < j < k < n` in lexicographic order.
fn triple_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k && k < n);
    binom3(n) - binom3(n - i) + binom2(n - 1 - i) - binom2(n - j) + (k - j - 1)
}

/// A cubic form on F2^n with its symmetric and trilinear polarizations,
/// stored as coefficients on strictly increasing index tuples.
#[derive(Clone, Debug)]
pub struct CubicSpace {
    n: usize,
    sigma: BitVec,
    kappa: BitVec,
    alpha: BitVec,
    /// Row i: bit j = kappa(i, j), zero on the diagonal.
    krows: Vec<BitVec>,
    /// Entry `pair_index(i, j)`: bit k = alpha(i, j, k), zero for k in {i, j}.
    arows: Vec<BitVec>,
}

impl PartialEq for CubicSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.sigma == other.sigma
            && self.kappa == other.kappa
            && self.alpha == other.alpha
    }
}

impl Eq for CubicSpace {}

impl CubicSpace {
    /// Assemble a space from raw coefficient vectors of lengths
    /// `n`, `binom(n, 2)`, `binom(n, 3)`.
    pub fn from_parts(n: usize, sigma: BitVec, kappa: BitVec, alpha: BitVec) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::Capacity {
                what: "cubic space dimension",
                needed: n as u128,
                limit: MAX_DIM as u128,
            });
        }
        if sigma.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: sigma.len(),
            });
        }
        if kappa.len() != binom2(n) {
            return Err(Error::DimensionMismatch {
                left: binom2(n),
                right: kappa.len(),
            });
        }
        if alpha.len() != binom3(n) {
            return Err(Error::DimensionMismatch {
                left: binom3(n),
                right: alpha.len(),
            });
        }
        let mut krows = vec![BitVec::zeros(n); n];
        for i in 0..n {
            for j in i + 1..n {
                let v = kappa.get(pair_index(n, i, j));
                krows[i].set(j, v);
                krows[j].set(i, v);
            }
        }
        let mut arows = vec![BitVec::zeros(n); binom2(n)];
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let v = alpha.get(triple_index(n, i, j, k));
                    arows[pair_index(n, i, j)].set(k, v);
                    arows[pair_index(n, i, k)].set(j, v);
                    arows[pair_index(n, j, k)].set(i, v);
                }
            }
        }
        Ok(CubicSpace {
            n,
            sigma,
            kappa,
            alpha,
            krows,
            arows,
        })
    }

    /// The space attached to a doubly even code: coefficients are the
    /// quarter-weights, half-meet-weights, and triple-meet parities of the
    /// generator rows.
    pub fn from_code(code: &DoublyEvenCode) -> Result<Self> {
        let n = code.dim();
        let rows = code.basis().rows();
        let mut sigma = BitVec::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            sigma.set(i, (r.weight() / 4) % 2 == 1);
        }
        let mut kappa = BitVec::zeros(binom2(n));
        let mut alpha = BitVec::zeros(binom3(n));
        for i in 0..n {
            for j in i + 1..n {
                let meet = rows[i].meet(&rows[j])?;
                kappa.set(pair_index(n, i, j), (meet.weight() / 2) % 2 == 1);
                for (k, row_k) in rows.iter().enumerate().skip(j + 1) {
                    let triple = meet.meet(row_k)?;
                    alpha.set(triple_index(n, i, j, k), triple.weight() % 2 == 1);
                }
            }
        }
        Self::from_parts(n, sigma, kappa, alpha)
    }

    /// A space with uniformly random coefficients. Every coefficient family
    /// defines a valid space, so no rejection is needed.
    pub fn random(n: usize, rng: &mut impl Rng) -> Result<Self> {
        Self::from_parts(
            n,
            random_bitvec(n, rng),
            random_bitvec(binom2(n), rng),
            random_bitvec(binom3(n), rng),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Coefficient `sigma_i`.
    pub fn sigma_at(&self, i: usize) -> bool {
        self.sigma.get(i)
    }

    /// Coefficient `kappa_ij`, extended symmetrically with zero diagonal.
    pub fn kappa_at(&self, i: usize, j: usize) -> bool {
        if i == j {
            false
        } else {
            self.krows[i].get(j)
        }
    }

    /// Coefficient `alpha_ijk`, extended symmetrically, zero on repeats.
    pub fn alpha_at(&self, i: usize, j: usize, k: usize) -> bool {
        if i == j || i == k || j == k {
            false
        } else {
            let (a, b) = (i.min(j), i.max(j));
            self.arows[pair_index(self.n, a, b)].get(k)
        }
    }

    /// Bit j of the returned vector is `kappa(i, j)`.
    pub fn kappa_row(&self, i: usize) -> &BitVec {
        &self.krows[i]
    }

    /// Bit k of the returned vector is `alpha(i, j, k)`; requires `i != j`.
    pub fn alpha_row(&self, i: usize, j: usize) -> &BitVec {
        debug_assert_ne!(i, j);
        let (a, b) = (i.min(j), i.max(j));
        &self.arows[pair_index(self.n, a, b)]
    }

    fn check_dim(&self, x: &BitVec) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: x.len(),
            });
        }
        Ok(())
    }

    /// The cubic form at `x`.
    pub fn eval_sigma(&self, x: &BitVec) -> Result<bool> {
        self.check_dim(x)?;
        let idx: Vec<usize> = x.ones().collect();
        let mut acc = false;
        for (a, &i) in idx.iter().enumerate() {
            acc ^= self.sigma.get(i);
            for (b, &j) in idx.iter().enumerate().skip(a + 1) {
                acc ^= self.krows[i].get(j);
                for &k in &idx[b + 1..] {
                    acc ^= self.arows[pair_index(self.n, i, j)].get(k);
                }
            }
        }
        Ok(acc)
    }

    /// The symmetric form `kappa(x, y) = sigma(x+y) + sigma(x) + sigma(y)`,
    /// computed in closed form.
    pub fn eval_kappa(&self, x: &BitVec, y: &BitVec) -> Result<bool> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let mut acc = false;
        let xi: Vec<usize> = x.ones().collect();
        let yi: Vec<usize> = y.ones().collect();
        for &i in &xi {
            acc ^= y.dot_uc(&self.krows[i]);
        }
        for (a, &i) in xi.iter().enumerate() {
            for &j in &xi[a + 1..] {
                acc ^= y.dot_uc(&self.arows[pair_index(self.n, i, j)]);
            }
        }
        for (a, &j) in yi.iter().enumerate() {
            for &k in &yi[a + 1..] {
                acc ^= x.dot_uc(&self.arows[pair_index(self.n, j, k)]);
            }
        }
        Ok(acc)
    }

    /// The trilinear form `alpha(x, y, z)`.
    pub fn eval_alpha(&self, x: &BitVec, y: &BitVec, z: &BitVec) -> Result<bool> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        self.check_dim(z)?;
        let mut acc = false;
        for i in x.ones() {
            for j in y.ones() {
                if i != j {
                    let (a, b) = (i.min(j), i.max(j));
                    acc ^= z.dot_uc(&self.arows[pair_index(self.n, a, b)]);
                }
            }
        }
        Ok(acc)
    }

    /// Check the defining identities on (x, y, z) triples: symmetry of
    /// kappa, the two polarization identities, symmetry / alternation /
    /// trilinearity of alpha, and the full expansion of `sigma(x+y+z)`.
    pub fn validate_axioms(&self, mode: Mode) -> Result<Report> {
        let mut report = Report::new("cubic-axioms", mode);
        match mode {
            Mode::Exhaustive => {
                if self.n >= 64 || (1u128 << (3 * self.n)) > EXHAUSTIVE_TRIPLE_LIMIT {
                    return Err(Error::Capacity {
                        what: "exhaustive axiom triples",
                        needed: if self.n >= 64 {
                            u128::MAX
                        } else {
                            1u128 << (3 * self.n)
                        },
                        limit: EXHAUSTIVE_TRIPLE_LIMIT,
                    });
                }
                let all: Vec<BitVec> = (0..1u64 << self.n)
                    .map(|v| BitVec::from_be_uint(self.n, v).expect("dim below limit"))
                    .collect();
                for x in &all {
                    for y in &all {
                        for z in &all {
                            self.axiom_checks(&mut report, x, y, z)?;
                        }
                    }
                }
            }
            Mode::Sampled { samples, seed } => {
                let mut rng = suite_rng(seed, "cubic-axioms");
                for _ in 0..samples {
                    let x = random_bitvec(self.n, &mut rng);
                    let y = random_bitvec(self.n, &mut rng);
                    let z = random_bitvec(self.n, &mut rng);
                    self.axiom_checks(&mut report, &x, &y, &z)?;
                }
            }
        }
        Ok(report)
    }

    fn axiom_checks(&self, report: &mut Report, x: &BitVec, y: &BitVec, z: &BitVec) -> Result<()> {
        let sx = self.eval_sigma(x)?;
        let sy = self.eval_sigma(y)?;
        let sz = self.eval_sigma(z)?;
        let kxy = self.eval_kappa(x, y)?;
        let kxz = self.eval_kappa(x, z)?;
        let kyz = self.eval_kappa(y, z)?;
        let axyz = self.eval_alpha(x, y, z)?;
        let xy = x.add(y)?;

        report.record(kxy == self.eval_kappa(y, x)?, || {
            format!("kappa symmetry fails at x={x} y={y}")
        });
        report.record(self.eval_sigma(&xy)? == sx ^ sy ^ kxy, || {
            format!("sigma polarization fails at x={x} y={y}")
        });
        report.record(self.eval_kappa(&xy, z)? == kxz ^ kyz ^ axyz, || {
            format!("kappa polarization fails at x={x} y={y} z={z}")
        });
        report.record(
            axyz == self.eval_alpha(y, x, z)? && axyz == self.eval_alpha(x, z, y)?,
            || format!("alpha symmetry fails at x={x} y={y} z={z}"),
        );
        report.record(!self.eval_alpha(x, x, z)?, || {
            format!("alpha alternation fails at x={x} z={z}")
        });
        report.record(
            self.eval_alpha(&xy, y, z)? == axyz ^ self.eval_alpha(y, y, z)?,
            || format!("alpha linearity fails at x={x} y={y} z={z}"),
        );
        let xyz = xy.add(z)?;
        report.record(
            self.eval_sigma(&xyz)? == sx ^ sy ^ sz ^ kxy ^ kxz ^ kyz ^ axyz,
            || format!("three-vector sigma expansion fails at x={x} y={y} z={z}"),
        );
        Ok(())
    }

    /// Check that evaluation agrees with the weight formulas on the code the
    /// space was built from: for codewords `c(x)` spanned by the basis,
    /// `sigma(x) = w(c(x))/4`, `kappa(x,y) = w(c(x) & c(y))/2`,
    /// `alpha(x,y,z) = w(c(x) & c(y) & c(z))`, all mod 2.
    pub fn consistency_with_code(&self, code: &DoublyEvenCode, mode: Mode) -> Result<Report> {
        if code.dim() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: code.dim(),
            });
        }
        let mut report = Report::new("cubic-code-consistency", mode);
        let mut run = |x: &BitVec, y: &BitVec, z: &BitVec| -> Result<()> {
            let (cx, cy, cz) = (code.codeword(x)?, code.codeword(y)?, code.codeword(z)?);
            let wx = cx.weight();
            report.record(
                wx % 4 == 0 && self.eval_sigma(x)? == ((wx / 4) % 2 == 1),
                || format!("sigma mismatch at x={x} (codeword weight {wx})"),
            );
            let wxy = cx.meet(&cy)?.weight();
            report.record(
                wxy % 2 == 0 && self.eval_kappa(x, y)? == ((wxy / 2) % 2 == 1),
                || format!("kappa mismatch at x={x} y={y} (meet weight {wxy})"),
            );
            let wxyz = cx.meet(&cy)?.meet(&cz)?.weight();
            report.record(self.eval_alpha(x, y, z)? == (wxyz % 2 == 1), || {
                format!("alpha mismatch at x={x} y={y} z={z} (meet weight {wxyz})")
            });
            Ok(())
        };
        match mode {
            Mode::Exhaustive => {
                if self.n >= 64 || (1u128 << (3 * self.n)) > EXHAUSTIVE_TRIPLE_LIMIT {
                    return Err(Error::Capacity {
                        what: "exhaustive consistency triples",
                        needed: if self.n >= 64 {
                            u128::MAX
                        } else {
                            1u128 << (3 * self.n)
                        },
                        limit: EXHAUSTIVE_TRIPLE_LIMIT,
                    });
                }
                let all: Vec<BitVec> = (0..1u64 << self.n)
                    .map(|v| BitVec::from_be_uint(self.n, v).expect("dim below limit"))
                    .collect();
                for x in &all {
                    for y in &all {
                        for z in &all {
                            run(x, y, z)?;
                        }
                    }
                }
            }
            Mode::Sampled { samples, seed } => {
                let mut rng = suite_rng(seed, "cubic-code-consistency");
                for _ in 0..samples {
                    let x = random_bitvec(self.n, &mut rng);
                    let y = random_bitvec(self.n, &mut rng);
                    let z = random_bitvec(self.n, &mut rng);
                    run(&x, &y, &z)?;
                }
            }
        }
        Ok(report)
    }

    /// Parse the line-oriented coefficient format:
    ///
    /// ```text
    /// dim 4
    /// sigma 1110
    /// kappa 1 2 1        # 1-based pair i < j, value
    /// alpha 1 2 3 1      # 1-based triple i < j < k, value
    /// ```
    ///
    /// `dim` must come first; `sigma` and coefficient lines are optional and
    /// default to zero; duplicates are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut sigma: Option<BitVec> = None;
        let mut kappa: Option<BitVec> = None;
        let mut alpha: Option<BitVec> = None;
        let mut seen_sigma = false;
        let mut seen_kappa: Vec<bool> = Vec::new();
        let mut seen_alpha: Vec<bool> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(p) => raw[..p].trim(),
                None => raw.trim(),
            };
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |msg: String| Error::Parse { line: line_no, msg };
            match tokens[0] {
                "dim" => {
                    if n.is_some() {
                        return Err(parse_err("duplicate `dim` line".into()));
                    }
                    if tokens.len() != 2 {
                        return Err(parse_err("expected `dim <n>`".into()));
                    }
                    let d: usize = tokens[1]
                        .parse()
                        .map_err(|_| parse_err(format!("invalid dimension `{}`", tokens[1])))?;
                    if d > MAX_DIM {
                        return Err(Error::Capacity {
                            what: "cubic space dimension",
                            needed: d as u128,
                            limit: MAX_DIM as u128,
                        });
                    }
                    n = Some(d);
                    sigma = Some(BitVec::zeros(d));
                    kappa = Some(BitVec::zeros(binom2(d)));
                    alpha = Some(BitVec::zeros(binom3(d)));
                    seen_kappa = vec![false; binom2(d)];
                    seen_alpha = vec![false; binom3(d)];
                }
                keyword @ ("sigma" | "kappa" | "alpha") => {
                    let d = n.ok_or_else(|| parse_err("`dim` must come first".into()))?;
                    let index = |tok: &str| -> Result<usize> {
                        let v: usize = tok
                            .parse()
                            .map_err(|_| parse_err(format!("invalid index `{tok}`")))?;
                        if v < 1 || v > d {
                            return Err(parse_err(format!("index {v} out of range 1..={d}")));
                        }
                        Ok(v - 1)
                    };
                    let value = |tok: &str| -> Result<bool> {
                        match tok {
                            "0" => Ok(false),
                            "1" => Ok(true),
                            _ => Err(parse_err(format!("invalid value `{tok}`, expected 0 or 1"))),
                        }
                    };
                    match keyword {
                        "sigma" => {
                            if tokens.len() != 2 {
                                return Err(parse_err("expected `sigma <bits>`".into()));
                            }
                            let bits = BitVec::from_str01(tokens[1]).map_err(|_| {
                                parse_err(format!("invalid sigma bits `{}`", tokens[1]))
                            })?;
                            if bits.len() != d {
                                return Err(parse_err(format!(
                                    "sigma has {} bits, dimension is {d}",
                                    bits.len()
                                )));
                            }
                            if seen_sigma {
                                return Err(parse_err("duplicate `sigma` line".into()));
                            }
                            seen_sigma = true;
                            *sigma.as_mut().expect("set with dim") = bits;
                        }
                        "kappa" => {
                            if tokens.len() != 4 {
                                return Err(parse_err("expected `kappa <i> <j> <v>`".into()));
                            }
                            let (i, j) = (index(tokens[1])?, index(tokens[2])?);
                            if i >= j {
                                return Err(parse_err(
                                    "kappa indices must be strictly increasing".into(),
                                ));
                            }
                            let p = pair_index(d, i, j);
                            if seen_kappa[p] {
                                return Err(parse_err(format!(
                                    "duplicate kappa entry ({} {})",
                                    i + 1,
                                    j + 1
                                )));
                            }
                            seen_kappa[p] = true;
                            kappa.as_mut().expect("set with dim").set(p, value(tokens[3])?);
                        }
                        _ => {
                            if tokens.len() != 5 {
                                return Err(parse_err("expected `alpha <i> <j> <k> <v>`".into()));
                            }
                            let (i, j, k) =
                                (index(tokens[1])?, index(tokens[2])?, index(tokens[3])?);
                            if i >= j || j >= k {
                                return Err(parse_err(
                                    "alpha indices must be strictly increasing".into(),
                                ));
                            }
                            let t = triple_index(d, i, j, k);
                            if seen_alpha[t] {
                                return Err(parse_err(format!(
                                    "duplicate alpha entry ({} {} {})",
                                    i + 1,
                                    j + 1,
                                    k + 1
                                )));
                            }
                            seen_alpha[t] = true;
                            alpha.as_mut().expect("set with dim").set(t, value(tokens[4])?);
                        }
                    }
                }
                other => {
                    return Err(parse_err(format!(
                        "unknown keyword `{other}` (expected dim/sigma/kappa/alpha)"
                    )));
                }
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "missing `dim` line".into(),
        })?;
        Self::from_parts(
            n,
            sigma.expect("set with dim"),
            kappa.expect("set with dim"),
            alpha.expect("set with dim"),
        )
    }

    /// Inverse of [`CubicSpace::parse`]: `dim` and `sigma` lines, then the
    /// nonzero kappa and alpha coefficients in lexicographic order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dim {}", self.n);
        if self.n > 0 {
            let _ = writeln!(out, "sigma {}", self.sigma);
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.kappa.get(pair_index(self.n, i, j)) {
                    let _ = writeln!(out, "kappa {} {} 1", i + 1, j + 1);
                }
            }
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    if self.alpha.get(triple_index(self.n, i, j, k)) {
                        let _ = writeln!(out, "alpha {} {} {} 1", i + 1, j + 1, k + 1);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_indices_enumerate_lexicographically() {
        for n in 0..10 {
            let mut next = 0;
            for i in 0..n {
                for j in i + 1..n {
                    assert_eq!(pair_index(n, i, j), next);
                    next += 1;
                }
            }
            assert_eq!(next, binom2(n));
            next = 0;
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        assert_eq!(triple_index(n, i, j, k), next);
                        next += 1;
                    }
                }
            }
            assert_eq!(next, binom3(n));
        }
    }

    fn hamming8_space() -> CubicSpace {
        let code = DoublyEvenCode::builtin("hamming8").unwrap();
        CubicSpace::from_code(&code).unwrap()
    }

    #[test]
    fn hamming8_coefficients() {
        let s = hamming8_space();
        assert_eq!(s.dim(), 4);
        // conventional basis: first three rows have weight 4, last weight 8
        assert_eq!(s.sigma.to_string(), "1110");
        assert!(s.kappa_at(0, 1) && s.kappa_at(0, 2) && s.kappa_at(1, 2));
        assert!(!s.kappa_at(0, 3) && !s.kappa_at(1, 3) && !s.kappa_at(2, 3));
        assert!(s.alpha_at(0, 1, 2));
        assert!(!s.alpha_at(0, 1, 3) && !s.alpha_at(0, 2, 3) && !s.alpha_at(1, 2, 3));
        // symmetric extension and alternation
        assert!(s.kappa_at(1, 0));
        assert!(!s.kappa_at(2, 2));
        assert!(s.alpha_at(2, 0, 1));
        assert!(!s.alpha_at(0, 0, 2));
    }

    #[test]
    fn hamming8_axioms_and_code_consistency_exhaustive() {
        let code = DoublyEvenCode::builtin("hamming8").unwrap();
        let s = CubicSpace::from_code(&code).unwrap();
        let axioms = s.validate_axioms(Mode::Exhaustive).unwrap();
        assert!(axioms.passed(), "{}", axioms.text_line());
        assert_eq!(axioms.checks, 4096 * 7);
        let consistency = s.consistency_with_code(&code, Mode::Exhaustive).unwrap();
        assert!(consistency.passed(), "{}", consistency.text_line());
    }

    #[test]
    fn golay24_space_sampled() {
        let code = DoublyEvenCode::builtin("golay24").unwrap();
        let s = CubicSpace::from_code(&code).unwrap();
        let mode = Mode::Sampled {
            samples: 500,
            seed: 7,
        };
        assert!(s.validate_axioms(mode).unwrap().passed());
        assert!(s.consistency_with_code(&code, mode).unwrap().passed());
        // exhaustive request is rejected, not silently truncated
        assert!(matches!(
            s.validate_axioms(Mode::Exhaustive),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn random_spaces_satisfy_axioms() {
        let mut rng = suite_rng(99, "cubic-random-test");
        for n in 0..=5 {
            let s = CubicSpace::random(n, &mut rng).unwrap();
            let report = s.validate_axioms(Mode::Exhaustive).unwrap();
            assert!(report.passed(), "n={n}: {}", report.text_line());
        }
    }

    #[test]
    fn corrupted_coefficients_still_form_a_space() {
        // flipping one stored coefficient yields a different but equally
        // valid space: axioms constrain evaluation, not the coefficients
        let mut s = hamming8_space();
        let mut kappa = s.kappa.clone();
        kappa.set(pair_index(4, 1, 2), false);
        s = CubicSpace::from_parts(4, s.sigma.clone(), kappa, s.alpha.clone()).unwrap();
        assert!(s.validate_axioms(Mode::Exhaustive).unwrap().passed());
        // but it no longer matches the code it came from
        let code = DoublyEvenCode::builtin("hamming8").unwrap();
        let report = s.consistency_with_code(&code, Mode::Exhaustive).unwrap();
        assert!(!report.passed());
        assert!(!report.witnesses.is_empty());
    }

    #[test]
    fn serialize_hamming8_exact_and_round_trip() {
        let s = hamming8_space();
        let text = s.serialize();
        assert_eq!(
            text,
            "dim 4\nsigma 1110\nkappa 1 2 1\nkappa 1 3 1\nkappa 2 3 1\nalpha 1 2 3 1\n"
        );
        let again = CubicSpace::parse(&text).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn parse_defaults_and_errors() {
        let s = CubicSpace::parse("dim 3\n# nothing else\n").unwrap();
        assert_eq!(s.dim(), 3);
        assert!(!s.eval_sigma(&BitVec::from_str01("111").unwrap()).unwrap());

        let cases = [
            ("sigma 11\ndim 2\n", "dim` must come first"),
            ("dim 2\ndim 2\n", "duplicate `dim`"),
            ("dim 2\nkappa 2 1 1\n", "strictly increasing"),
            ("dim 2\nkappa 1 2 1\nkappa 1 2 0\n", "duplicate kappa"),
            ("dim 4\nalpha 1 2 3 1\nalpha 1 2 3 1\n", "duplicate alpha"),
            ("dim 2\nkappa 1 3 1\n", "out of range"),
            ("dim 2\nsigma 111\n", "dimension is 2"),
            ("dim 2\nkappa 1 2 2\n", "expected 0 or 1"),
            ("dim 2\ngamma 1 2\n", "unknown keyword"),
            ("", "missing `dim`"),
        ];
        for (text, needle) in cases {
            let err = CubicSpace::parse(text).unwrap_err();
            let msg = err.to_string();
            assert!(msg.contains(needle), "text {text:?} gave {msg:?}");
        }
    }

    #[test]
    fn evaluation_matches_definition_by_polarization() {
        // kappa and alpha as defined from sigma by finite differences
        let mut rng = suite_rng(3, "cubic-polarization-test");
        let s = CubicSpace::random(6, &mut rng).unwrap();
        for _ in 0..200 {
            let x = random_bitvec(6, &mut rng);
            let y = random_bitvec(6, &mut rng);
            let z = random_bitvec(6, &mut rng);
            let k = s.eval_sigma(&x.add(&y).unwrap()).unwrap()
                ^ s.eval_sigma(&x).unwrap()
                ^ s.eval_sigma(&y).unwrap();
            assert_eq!(k, s.eval_kappa(&x, &y).unwrap());
            let a = s.eval_kappa(&x.add(&y).unwrap(), &z).unwrap()
                ^ s.eval_kappa(&x, &z).unwrap()
                ^ s.eval_kappa(&y, &z).unwrap();
            assert_eq!(a, s.eval_alpha(&x, &y, &z).unwrap());
        }
    }

    #[test]
    fn zero_code_space_is_trivial() {
        let code = DoublyEvenCode::builtin("zero_3").unwrap();
        let s = CubicSpace::from_code(&code).unwrap();
        assert_eq!(s.dim(), 3);
        // disjoint weight-4 blocks: sigma = 1 on every generator, all
        // pairwise and triple meets empty
        assert_eq!(s.sigma.to_string(), "111");
        assert!(s.kappa.is_zero() && s.alpha.is_zero());
    }
}
