//! The finite 2-group G parametrized by a cubic space, together with its
//! outer S3 symmetry and the coset geometry carrying the loop.
//!
//! G is generated by three families `g_1..g_n`, `f_1..f_n`, `h_1..h_n` and
//! two central involutions `u`, `v`, subject to:
//!
//! * squares: `g_i^2 = u^{sigma_i}`, `f_i^2 = v^{sigma_i}`, `h_i^2 = 1`,
//!   `u^2 = v^2 = 1`;
//! * commutators: `[g_i, g_j] = u^{kappa_ij}`, `[f_i, f_j] = v^{kappa_ij}`,
//!   `[g_i, f_j] = (uv)^{kappa_ij} prod_k h_k^{alpha_ijk}`,
//!   `[g_i, h_j] = u^{delta_ij}`, `[f_i, h_j] = v^{delta_ij}`,
//!   `[h_i, h_j] = 1`, and `u`, `v` commute with everything.
//!
//! Every element has the unique normal form
//! `g^x f^y h^z u^{t1} v^{t2}` (exponent vectors over F2), so |G| = 2^(3n+2).
//! Products are computed by a closed-form collection formula, differentially
//! tested against a letter-level collector ([`words`]).

pub mod maps;
pub mod verify;
pub mod words;

use std::sync::atomic::{AtomicU32, Ordering};

use rand::Rng;

use crate::cubic::CubicSpace;
use crate::codes::DoublyEvenCode;
use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Largest group order for which full element enumeration is offered.
pub const ELEMENT_ENUM_LIMIT: u64 = 1 << 20;

static NEXT_GROUP_ID: AtomicU32 = AtomicU32::new(1);

/// Parity of a machine word.
#[inline]
pub(crate) fn par(m: u64) -> bool {
    m.count_ones() & 1 == 1
}

/// Iterator over the set bit positions of a word, ascending.
#[derive(Clone, Copy)]
pub(crate) struct Ones64(pub u64);

impl Iterator for Ones64 {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// Exponent vectors of a normal form, packed as masks (bit i = index i).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Elt {
    pub x: u64,
    pub y: u64,
    pub z: u64,
    pub t1: bool,
    pub t2: bool,
}

pub(crate) const ELT_IDENTITY: Elt = Elt {
    x: 0,
    y: 0,
    z: 0,
    t1: false,
    t2: false,
};

pub(crate) const ELT_U: Elt = Elt {
    t1: true,
    ..ELT_IDENTITY
};

pub(crate) const ELT_V: Elt = Elt {
    t2: true,
    ..ELT_IDENTITY
};

pub(crate) const ELT_UV: Elt = Elt {
    t1: true,
    t2: true,
    ..ELT_IDENTITY
};

/// A group element in normal form. Values are tied to the group that made
/// them; mixing elements of different groups is a context error.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    ctx: u32,
    n: u8,
    raw: Elt,
}

impl GroupElement {
    /// Exponents of `g_1..g_n`.
    pub fn x(&self) -> BitVec {
        mask_to_bitvec(self.n as usize, self.raw.x)
    }

    /// Exponents of `f_1..f_n`.
    pub fn y(&self) -> BitVec {
        mask_to_bitvec(self.n as usize, self.raw.y)
    }

    /// Exponents of `h_1..h_n`.
    pub fn z(&self) -> BitVec {
        mask_to_bitvec(self.n as usize, self.raw.z)
    }

    /// Exponent of `u`.
    pub fn t1(&self) -> bool {
        self.raw.t1
    }

    /// Exponent of `v`.
    pub fn t2(&self) -> bool {
        self.raw.t2
    }

    pub fn is_identity(&self) -> bool {
        self.raw == ELT_IDENTITY
    }
}

/// Convert a packed mask (bit i = index i) to a coordinate vector.
pub(crate) fn mask_to_bitvec(n: usize, m: u64) -> BitVec {
    let mut v = BitVec::zeros(n);
    for i in Ones64(m) {
        v.set(i, true);
    }
    v
}

/// Convert a coordinate vector to a packed mask (bit i = index i).
pub(crate) fn bitvec_to_mask(v: &BitVec) -> u64 {
    let mut m = 0u64;
    for i in v.ones() {
        m |= 1 << i;
    }
    m
}

/// One of the three distinguished subgroups of G, each of order 2^(2n+1).
///
/// * `H1 = <g_i, h_i, u>`: elements with y = 0, t2 = 0;
/// * `H2 = <f_i, h_i, v>`: elements with x = 0, t1 = 0;
/// * `H3 = <g_i f_i, h_i, uv>`: the fixed subgroup of the swap symmetry.
///   Its elements have x = y, but not every element with x = y and t1 = t2
///   is fixed: reordering the swapped normal form produces correction
///   factors that depend on the triple form.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Subgroup {
    H1,
    H2,
    H3,
}

/// The group G attached to a cubic space.
pub struct TrialityGroup {
    id: u32,
    n: usize,
    space: CubicSpace,
    all_mask: u64,
    sigma_mask: u64,
    /// krow[i]: bit j = kappa(i, j).
    krow: Vec<u64>,
    /// klow[i]: bit j = kappa(i, j) restricted to j < i.
    klow: Vec<u64>,
    /// pm[j*n + k]: bit i = alpha(i, j, k) (zero when j = k or on repeats).
    pm: Vec<u64>,
    /// gf[i] = g_i * f_i and its inverse, used by the rotation map and the
    /// coset normalization.
    gf: Vec<Elt>,
    gf_inv: Vec<Elt>,
}

impl TrialityGroup {
    pub fn new(space: CubicSpace) -> Self {
        let n = space.dim();
        let all_mask = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        let mut sigma_mask = 0u64;
        let mut krow = vec![0u64; n];
        for (i, k) in krow.iter_mut().enumerate() {
            if space.sigma_at(i) {
                sigma_mask |= 1 << i;
            }
            *k = bitvec_to_mask(space.kappa_row(i));
        }
        let klow: Vec<u64> = (0..n)
            .map(|i| krow[i] & ((1u64 << i) - 1))
            .collect();
        let mut pm = vec![0u64; n * n];
        for j in 0..n {
            for k in 0..n {
                if j != k {
                    pm[j * n + k] = bitvec_to_mask(space.alpha_row(j, k));
                }
            }
        }
        let mut group = TrialityGroup {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            n,
            space,
            all_mask,
            sigma_mask,
            krow,
            klow,
            pm,
            gf: Vec::new(),
            gf_inv: Vec::new(),
        };
        for i in 0..n {
            let gi = Elt {
                x: 1 << i,
                ..ELT_IDENTITY
            };
            let fi = Elt {
                y: 1 << i,
                ..ELT_IDENTITY
            };
            let gf = group.mul_raw(gi, fi);
            group.gf.push(gf);
            let inv = group.inv_raw(gf);
            group.gf_inv.push(inv);
        }
        group
    }

    /// The group of the cubic space attached to a doubly even code.
    pub fn from_code(code: &DoublyEvenCode) -> Result<Self> {
        Ok(Self::new(CubicSpace::from_code(code)?))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> &CubicSpace {
        &self.space
    }

    /// log2 of the group order: 3n + 2.
    pub fn order_log2(&self) -> u32 {
        3 * self.n as u32 + 2
    }

    /// Exact group order 2^(3n+2), when it fits in 128 bits.
    pub fn order(&self) -> Option<u128> {
        let e = self.order_log2();
        (e < 128).then(|| 1u128 << e)
    }

    /// Context id used to stamp elements (and loop elements) of this group.
    pub(crate) fn ctx_id(&self) -> u32 {
        self.id
    }

    /// Mask of valid coordinate bits (low n bits set).
    pub(crate) fn coord_mask(&self) -> u64 {
        self.all_mask
    }

    // -- cubic-form evaluation on packed masks -------------------------------

    /// The cubic form on a coordinate mask: linear sigma terms, pair kappa
    /// terms, and triple alpha terms. Each unordered triple inside `x` is
    /// hit once because the three pair slots contribute it three times.
    pub(crate) fn eval_sigma_mask(&self, x: u64) -> bool {
        let mut acc = self.q_raw(x);
        for i in Ones64(x) {
            for j in Ones64(x & !(((1u64 << i) << 1).wrapping_sub(1))) {
                acc ^= par(x & self.pm[i * self.n + j]);
            }
        }
        acc
    }

    /// The polarized pair form: kappa terms across the two masks plus the
    /// alpha terms with two indices on one side.
    pub(crate) fn eval_kappa_mask(&self, x: u64, y: u64) -> bool {
        let mut acc = false;
        for i in Ones64(x) {
            acc ^= par(y & self.krow[i]);
        }
        for i in Ones64(x) {
            for j in Ones64(x & !(((1u64 << i) << 1).wrapping_sub(1))) {
                acc ^= par(y & self.pm[i * self.n + j]);
            }
        }
        for i in Ones64(y) {
            for j in Ones64(y & !(((1u64 << i) << 1).wrapping_sub(1))) {
                acc ^= par(x & self.pm[i * self.n + j]);
            }
        }
        acc
    }

    /// The fully polarized triple form across three masks.
    pub(crate) fn eval_alpha_mask(&self, x: u64, y: u64, z: u64) -> bool {
        let mut acc = false;
        for i in Ones64(x) {
            for j in Ones64(y) {
                acc ^= par(z & self.pm[i * self.n + j]);
            }
        }
        acc
    }

    // -- element plumbing ---------------------------------------------------

    pub(crate) fn wrap(&self, raw: Elt) -> GroupElement {
        debug_assert_eq!(raw.x & !self.all_mask, 0);
        debug_assert_eq!(raw.y & !self.all_mask, 0);
        debug_assert_eq!(raw.z & !self.all_mask, 0);
        GroupElement {
            ctx: self.id,
            n: self.n as u8,
            raw,
        }
    }

    pub(crate) fn raw(&self, a: GroupElement) -> Result<Elt> {
        if a.ctx != self.id {
            return Err(Error::Context(
                "element does not belong to this group".into(),
            ));
        }
        Ok(a.raw)
    }

    pub fn identity(&self) -> GroupElement {
        self.wrap(ELT_IDENTITY)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::Context(format!(
                "generator index {i} out of range for dimension {}",
                self.n
            )));
        }
        Ok(())
    }

    /// Generator `g_i` (0-based index).
    pub fn g(&self, i: usize) -> Result<GroupElement> {
        self.check_index(i)?;
        Ok(self.wrap(Elt {
            x: 1 << i,
            ..ELT_IDENTITY
        }))
    }

    /// Generator `f_i` (0-based index).
    pub fn f(&self, i: usize) -> Result<GroupElement> {
        self.check_index(i)?;
        Ok(self.wrap(Elt {
            y: 1 << i,
            ..ELT_IDENTITY
        }))
    }

    /// Generator `h_i` (0-based index).
    pub fn h(&self, i: usize) -> Result<GroupElement> {
        self.check_index(i)?;
        Ok(self.wrap(Elt {
            z: 1 << i,
            ..ELT_IDENTITY
        }))
    }

    pub fn u_elem(&self) -> GroupElement {
        self.wrap(ELT_U)
    }

    pub fn v_elem(&self) -> GroupElement {
        self.wrap(ELT_V)
    }

    /// All 3n + 2 generators in collection order.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(3 * self.n + 2);
        for i in 0..self.n {
            out.push(self.g(i).expect("index in range"));
        }
        for i in 0..self.n {
            out.push(self.f(i).expect("index in range"));
        }
        for i in 0..self.n {
            out.push(self.h(i).expect("index in range"));
        }
        out.push(self.u_elem());
        out.push(self.v_elem());
        out
    }

    /// The element with the given exponent vectors.
    pub fn element(
        &self,
        x: &BitVec,
        y: &BitVec,
        z: &BitVec,
        t1: bool,
        t2: bool,
    ) -> Result<GroupElement> {
        for part in [x, y, z] {
            if part.len() != self.n {
                return Err(Error::DimensionMismatch {
                    left: self.n,
                    right: part.len(),
                });
            }
        }
        Ok(self.wrap(Elt {
            x: bitvec_to_mask(x),
            y: bitvec_to_mask(y),
            z: bitvec_to_mask(z),
            t1,
            t2,
        }))
    }

    /// Normal form as a word in the generators, e.g. `g1 g3 f2 h1 u`;
    /// the identity renders as `e`. Indices are 1-based.
    pub fn word_string(&self, a: GroupElement) -> Result<String> {
        let raw = self.raw(a)?;
        let mut parts: Vec<String> = Vec::new();
        for i in Ones64(raw.x) {
            parts.push(format!("g{}", i + 1));
        }
        for i in Ones64(raw.y) {
            parts.push(format!("f{}", i + 1));
        }
        for i in Ones64(raw.z) {
            parts.push(format!("h{}", i + 1));
        }
        if raw.t1 {
            parts.push("u".into());
        }
        if raw.t2 {
            parts.push("v".into());
        }
        if parts.is_empty() {
            Ok("e".into())
        } else {
            Ok(parts.join(" "))
        }
    }

    // -- arithmetic ---------------------------------------------------------

    /// Closed-form product of two normal forms.
    ///
    /// Writing the product `(g^x f^y h^z u v) (g^X f^Y h^Z u v)` and
    /// collecting letters into normal-form order moves each `f_i` of the
    /// left factor past each `g_j` of the right factor (and re-sorts within
    /// the g and f blocks), which accumulates:
    ///
    /// * an h correction `w` with `w_k = alpha(y, X, e_k)`,
    /// * central corrections from kappa terms between the crossing blocks
    ///   and from re-sorting within blocks (the `q`-like sums below).
    pub(crate) fn mul_raw(&self, a: Elt, b: Elt) -> Elt {
        let n = self.n;
        let mut w = 0u64;
        let mut kyx = false;
        let mut pv = false;
        let mut pu = false;
        let mut qf = false;
        if a.y != 0 {
            // h and central corrections from moving f^y past g^X
            for j in Ones64(b.x) {
                let base = j * n;
                for (k, m) in self.pm[base..base + n].iter().enumerate() {
                    if par(a.y & m) {
                        w ^= 1 << k;
                    }
                }
            }
            for i in Ones64(a.y) {
                kyx ^= par(b.x & self.krow[i]);
            }
            let mut rest = b.x;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                for j2 in Ones64(rest) {
                    pu ^= par(a.y & self.pm[j * n + j2]);
                }
            }
            let mut rest = a.y;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                for i2 in Ones64(rest) {
                    pv ^= par(b.x & self.pm[i * n + i2]);
                }
            }
            // re-sorting f^y f^Y
            qf = par(a.y & b.y & self.sigma_mask);
            for i in Ones64(a.y) {
                qf ^= par(b.y & self.klow[i]);
            }
        }
        // re-sorting g^x g^X
        let mut qg = par(a.x & b.x & self.sigma_mask);
        for i in Ones64(a.x) {
            qg ^= par(b.x & self.klow[i]);
        }
        let cu = par(a.z & b.x) ^ kyx ^ pu ^ qg;
        let cv = kyx ^ pv ^ par((w ^ a.z) & b.y) ^ qf;
        Elt {
            x: a.x ^ b.x,
            y: a.y ^ b.y,
            z: a.z ^ w ^ b.z,
            t1: a.t1 ^ b.t1 ^ cu,
            t2: a.t2 ^ b.t2 ^ cv,
        }
    }

    /// `q(x) = sum_i sigma_i x_i + sum_{i<j} kappa_ij x_i x_j`: the central
    /// correction in `(g^x)^{-1} = g^x u^{q(x)}` (and `f`-side with v).
    pub(crate) fn q_raw(&self, x: u64) -> bool {
        let mut r = par(x & self.sigma_mask);
        for i in Ones64(x) {
            r ^= par(x & self.klow[i]);
        }
        r
    }

    pub(crate) fn inv_raw(&self, a: Elt) -> Elt {
        // (g^x f^y h^z u^t1 v^t2)^{-1} = (h^z u^{t1+q(x)} v^{t2+q(y)}) f^y g^x
        let part = Elt {
            x: 0,
            y: 0,
            z: a.z,
            t1: a.t1 ^ self.q_raw(a.x),
            t2: a.t2 ^ self.q_raw(a.y),
        };
        let fy = Elt {
            y: a.y,
            ..ELT_IDENTITY
        };
        let gx = Elt {
            x: a.x,
            ..ELT_IDENTITY
        };
        self.mul_raw(self.mul_raw(part, fy), gx)
    }

    pub(crate) fn comm_raw(&self, a: Elt, b: Elt) -> Elt {
        let ia = self.inv_raw(a);
        let ib = self.inv_raw(b);
        self.mul_raw(self.mul_raw(self.mul_raw(ia, ib), a), b)
    }

    pub(crate) fn conj_raw(&self, a: Elt, by: Elt) -> Elt {
        let ib = self.inv_raw(by);
        self.mul_raw(self.mul_raw(ib, a), by)
    }

    pub fn mul(&self, a: GroupElement, b: GroupElement) -> Result<GroupElement> {
        Ok(self.wrap(self.mul_raw(self.raw(a)?, self.raw(b)?)))
    }

    pub fn inv(&self, a: GroupElement) -> Result<GroupElement> {
        Ok(self.wrap(self.inv_raw(self.raw(a)?)))
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: GroupElement, b: GroupElement) -> Result<GroupElement> {
        Ok(self.wrap(self.comm_raw(self.raw(a)?, self.raw(b)?)))
    }

    /// `b^{-1} a b`.
    pub fn conj(&self, a: GroupElement, by: GroupElement) -> Result<GroupElement> {
        Ok(self.wrap(self.conj_raw(self.raw(a)?, self.raw(by)?)))
    }

    // -- subgroups and cosets -----------------------------------------------

    pub(crate) fn in_subgroup_raw(&self, a: Elt, which: Subgroup) -> bool {
        match which {
            Subgroup::H1 => a.y == 0 && !a.t2,
            Subgroup::H2 => a.x == 0 && !a.t1,
            // The fixed subgroup of the swap symmetry. Every fixed element
            // has matching g- and f-exponents, but the converse fails once
            // the triple form is nonzero, so membership applies the map.
            Subgroup::H3 => a.x == a.y && self.apply_sigma_raw(a) == a,
        }
    }

    /// The element `(g_1 f_1)^{m_1} .. (g_n f_n)^{m_n} h^z (uv)^t` of the
    /// fixed subgroup of the swap symmetry; over all `(m, z, t)` this
    /// parametrizes that subgroup bijectively.
    pub(crate) fn h3_element_raw(&self, m: u64, z: u64, t: bool) -> Elt {
        let mut a = ELT_IDENTITY;
        for i in Ones64(m & self.all_mask) {
            a = self.mul_raw(a, self.gf[i]);
        }
        a = self.mul_raw(
            a,
            Elt {
                z: z & self.all_mask,
                ..ELT_IDENTITY
            },
        );
        if t {
            a = self.mul_raw(a, ELT_UV);
        }
        a
    }

    /// Uniformly random element of the fixed subgroup of the swap symmetry.
    pub(crate) fn random_h3_raw(&self, rng: &mut impl Rng) -> Elt {
        self.h3_element_raw(
            rng.gen::<u64>() & self.all_mask,
            rng.gen::<u64>() & self.all_mask,
            rng.gen(),
        )
    }

    pub fn in_subgroup(&self, a: GroupElement, which: Subgroup) -> Result<bool> {
        Ok(self.in_subgroup_raw(self.raw(a)?, which))
    }

    /// Canonical representative of the right coset `H3 * a`, as the data
    /// `(x', t)` of the representative `g^{x'} u^t`: left-multiply by
    /// `g_i f_i` for each set `y_i`, then by the `h^z` block, then by `uv`
    /// if t2 remains.
    pub(crate) fn coset_rep_raw(&self, a: Elt) -> (u64, bool) {
        let mut a = a;
        if a.y != 0 {
            for i in Ones64(a.y) {
                a = self.mul_raw(self.gf[i], a);
            }
        }
        if a.z != 0 {
            let hz = Elt {
                z: a.z,
                ..ELT_IDENTITY
            };
            a = self.mul_raw(hz, a);
        }
        if a.t2 {
            a = self.mul_raw(ELT_UV, a);
        }
        debug_assert!(a.y == 0 && a.z == 0 && !a.t2);
        (a.x, a.t1)
    }

    /// Canonical coset data `(xbits, t)` for `H3 * a`.
    pub fn canonical_coset_rep(&self, a: GroupElement) -> Result<(BitVec, bool)> {
        let (x, t) = self.coset_rep_raw(self.raw(a)?);
        Ok((mask_to_bitvec(self.n, x), t))
    }

    // -- enumeration and sampling -------------------------------------------

    /// All 2^(3n+2) elements in a fixed order (capacity-gated).
    pub fn elements(&self) -> Result<ElementsIter<'_>> {
        let log2 = self.order_log2();
        if log2 >= 63 || (1u64 << log2) > ELEMENT_ENUM_LIMIT {
            return Err(Error::Capacity {
                what: "group element enumeration",
                needed: if log2 >= 128 {
                    u128::MAX
                } else {
                    1u128 << log2
                },
                limit: u128::from(ELEMENT_ENUM_LIMIT),
            });
        }
        Ok(ElementsIter {
            group: self,
            next: 0,
            total: 1u64 << log2,
        })
    }

    pub(crate) fn decode_raw(&self, c: u64) -> Elt {
        let n = self.n;
        Elt {
            t2: c & 1 == 1,
            t1: (c >> 1) & 1 == 1,
            z: (c >> 2) & self.all_mask,
            y: (c >> (2 + n)) & self.all_mask,
            x: (c >> (2 + 2 * n)) & self.all_mask,
        }
    }

    pub(crate) fn encode_raw(&self, a: Elt) -> u64 {
        let n = self.n;
        (a.x << (2 + 2 * n))
            | (a.y << (2 + n))
            | (a.z << 2)
            | (u64::from(a.t1) << 1)
            | u64::from(a.t2)
    }

    pub(crate) fn random_raw(&self, rng: &mut impl Rng) -> Elt {
        Elt {
            x: rng.gen::<u64>() & self.all_mask,
            y: rng.gen::<u64>() & self.all_mask,
            z: rng.gen::<u64>() & self.all_mask,
            t1: rng.gen(),
            t2: rng.gen(),
        }
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> GroupElement {
        self.wrap(self.random_raw(rng))
    }
}

/// Iterator over all group elements, x slowest, then y, z, t1, t2.
pub struct ElementsIter<'a> {
    group: &'a TrialityGroup,
    next: u64,
    total: u64,
}

impl Iterator for ElementsIter<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        if self.next >= self.total {
            return None;
        }
        let raw = self.group.decode_raw(self.next);
        self.next += 1;
        Some(self.group.wrap(raw))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::suite_rng;

    pub(crate) fn hamming8_group() -> TrialityGroup {
        let code = DoublyEvenCode::builtin("hamming8").unwrap();
        TrialityGroup::from_code(&code).unwrap()
    }

    #[test]
    fn identity_and_generator_squares() {
        let g = hamming8_group();
        let e = g.identity();
        let g1 = g.g(0).unwrap();
        assert_eq!(g.mul(e, g1).unwrap(), g1);
        assert_eq!(g.mul(g1, e).unwrap(), g1);
        // sigma = (1,1,1,0): g_1^2 = u, g_4^2 = e
        assert_eq!(g.mul(g1, g1).unwrap(), g.u_elem());
        let g4 = g.g(3).unwrap();
        assert_eq!(g.mul(g4, g4).unwrap(), e);
        let f1 = g.f(0).unwrap();
        assert_eq!(g.mul(f1, f1).unwrap(), g.v_elem());
        let h1 = g.h(0).unwrap();
        assert_eq!(g.mul(h1, h1).unwrap(), e);
    }

    #[test]
    fn forced_rearrangements_match_known_values() {
        let g = hamming8_group();
        // h_1 * g_1 = g_1 h_1 u
        let prod = g.mul(g.h(0).unwrap(), g.g(0).unwrap()).unwrap();
        assert_eq!(
            g.raw(prod).unwrap(),
            Elt {
                x: 1,
                z: 1,
                t1: true,
                ..ELT_IDENTITY
            }
        );
        // f_1 * g_2 = g_2 f_1 h_3 uv (kappa_12 = 1, alpha_123 = 1)
        let prod = g.mul(g.f(0).unwrap(), g.g(1).unwrap()).unwrap();
        assert_eq!(
            g.raw(prod).unwrap(),
            Elt {
                x: 0b10,
                y: 0b01,
                z: 0b100,
                t1: true,
                t2: true,
            }
        );
        // [g_1, f_2] = (uv)^{kappa_12} h_3^{alpha_123} = uv h_3
        let c = g.commutator(g.g(0).unwrap(), g.f(1).unwrap()).unwrap();
        assert_eq!(
            g.raw(c).unwrap(),
            Elt {
                z: 0b100,
                t1: true,
                t2: true,
                ..ELT_IDENTITY
            }
        );
        assert_eq!(g.word_string(c).unwrap(), "h3 u v");
    }

    #[test]
    fn inverses_and_conjugation() {
        let g = hamming8_group();
        // g_1^{-1} = g_1 u since g_1^2 = u
        let inv = g.inv(g.g(0).unwrap()).unwrap();
        assert_eq!(
            g.raw(inv).unwrap(),
            Elt {
                x: 1,
                t1: true,
                ..ELT_IDENTITY
            }
        );
        let mut rng = suite_rng(11, "triality-inverse-test");
        for _ in 0..500 {
            let a = g.random_element(&mut rng);
            assert!(g.mul(a, g.inv(a).unwrap()).unwrap().is_identity());
            assert!(g.mul(g.inv(a).unwrap(), a).unwrap().is_identity());
            let b = g.random_element(&mut rng);
            // conj(a, b) = b^{-1} a b and commutator consistency
            let lhs = g.mul(a, g.commutator(a, b).unwrap()).unwrap();
            assert_eq!(lhs, g.conj(a, b).unwrap());
        }
    }

    #[test]
    fn element_accessors_round_trip() {
        let g = hamming8_group();
        let x = BitVec::from_str01("1010").unwrap();
        let y = BitVec::from_str01("0110").unwrap();
        let z = BitVec::from_str01("0011").unwrap();
        let a = g.element(&x, &y, &z, true, false).unwrap();
        assert_eq!(a.x(), x);
        assert_eq!(a.y(), y);
        assert_eq!(a.z(), z);
        assert!(a.t1() && !a.t2());
        assert_eq!(g.word_string(a).unwrap(), "g1 g3 f2 f3 h3 h4 u");
        assert!(g
            .element(&BitVec::zeros(3), &y, &z, false, false)
            .is_err());
    }

    #[test]
    fn mixing_groups_is_a_context_error() {
        let g1 = hamming8_group();
        let g2 = hamming8_group();
        let a = g1.g(0).unwrap();
        let b = g2.g(0).unwrap();
        assert!(matches!(g1.mul(a, b), Err(Error::Context(_))));
        assert!(matches!(g2.inv(a), Err(Error::Context(_))));
    }

    #[test]
    fn subgroup_membership_examples() {
        let g = hamming8_group();
        let g1 = g.g(0).unwrap();
        assert!(g.in_subgroup(g1, Subgroup::H1).unwrap());
        assert!(!g.in_subgroup(g1, Subgroup::H2).unwrap());
        assert!(!g.in_subgroup(g1, Subgroup::H3).unwrap());
        let g1f1 = g.mul(g1, g.f(0).unwrap()).unwrap();
        assert!(g.in_subgroup(g1f1, Subgroup::H3).unwrap());
        let h1 = g.h(0).unwrap();
        for which in [Subgroup::H1, Subgroup::H2, Subgroup::H3] {
            assert!(g.in_subgroup(h1, which).unwrap());
        }
    }

    #[test]
    fn coset_representatives() {
        let g = hamming8_group();
        // a in H3 -> identity coset
        let g1f1 = g.mul(g.g(0).unwrap(), g.f(0).unwrap()).unwrap();
        let (x, t) = g.canonical_coset_rep(g1f1).unwrap();
        assert!(x.is_zero() && !t);
        // a = g_1: already canonical
        let (x, t) = g.canonical_coset_rep(g.g(0).unwrap()).unwrap();
        assert_eq!((x.to_string(), t), ("1000".into(), false));
        // a = f_1 -> (e1, 1) since sigma_1 = 1
        let (x, t) = g.canonical_coset_rep(g.f(0).unwrap()).unwrap();
        assert_eq!((x.to_string(), t), ("1000".into(), true));
        // representatives are constant on right H3-cosets
        let mut rng = suite_rng(21, "triality-coset-test");
        for _ in 0..300 {
            let a = g.random_element(&mut rng);
            let h3 = g.random_h3_raw(&mut rng);
            assert!(g.in_subgroup_raw(h3, Subgroup::H3));
            let moved = g.wrap(g.mul_raw(h3, g.raw(a).unwrap()));
            assert_eq!(
                g.canonical_coset_rep(a).unwrap(),
                g.canonical_coset_rep(moved).unwrap()
            );
        }
        // the naive diagonal set is not closed here: some x = y, t1 = t2
        // element is not fixed by the swap
        let els = (0u64..1 << 14).map(|c| g.decode_raw(c));
        let fixed = els
            .filter(|&a| g.in_subgroup_raw(a, Subgroup::H3))
            .count();
        assert_eq!(fixed, 1 << 9);
        let diag_not_fixed = (0u64..1 << 14)
            .map(|c| g.decode_raw(c))
            .filter(|a| a.x == a.y && a.t1 == a.t2)
            .any(|a| !g.in_subgroup_raw(a, Subgroup::H3));
        assert!(diag_not_fixed);
    }

    #[test]
    fn enumeration_counts_and_caps() {
        let code = DoublyEvenCode::builtin("zero_1").unwrap();
        let g = TrialityGroup::from_code(&code).unwrap();
        assert_eq!(g.order(), Some(32));
        let els: Vec<_> = g.elements().unwrap().collect();
        assert_eq!(els.len(), 32);
        let set: std::collections::HashSet<_> = els.iter().collect();
        assert_eq!(set.len(), 32);
        // encode/decode round trip
        for (i, a) in els.iter().enumerate() {
            assert_eq!(g.encode_raw(g.raw(*a).unwrap()), i as u64);
        }
        let golay = DoublyEvenCode::builtin("golay24").unwrap();
        let gg = TrialityGroup::from_code(&golay).unwrap();
        assert_eq!(gg.order_log2(), 38);
        assert!(matches!(gg.elements(), Err(Error::Capacity { .. })));
    }

    #[test]
    fn trivial_dimension_zero_group() {
        let sp = CubicSpace::from_parts(0, BitVec::zeros(0), BitVec::zeros(0), BitVec::zeros(0))
            .unwrap();
        let g = TrialityGroup::new(sp);
        assert_eq!(g.order(), Some(4));
        let u = g.u_elem();
        let v = g.v_elem();
        assert_eq!(g.mul(u, v).unwrap(), g.mul(v, u).unwrap());
        assert!(g.mul(u, u).unwrap().is_identity());
    }

    #[test]
    fn mask_form_evaluations_match_space() {
        let mut rng = suite_rng(31, "mask-eval");
        for n in 1..=6usize {
            for _ in 0..4 {
                let sp = CubicSpace::random(n, &mut rng).unwrap();
                let g = TrialityGroup::new(sp);
                for _ in 0..200 {
                    let x = rng.gen::<u64>() & g.coord_mask();
                    let y = rng.gen::<u64>() & g.coord_mask();
                    let z = rng.gen::<u64>() & g.coord_mask();
                    let xb = mask_to_bitvec(n, x);
                    let yb = mask_to_bitvec(n, y);
                    let zb = mask_to_bitvec(n, z);
                    assert_eq!(g.eval_sigma_mask(x), g.space().eval_sigma(&xb).unwrap());
                    assert_eq!(
                        g.eval_kappa_mask(x, y),
                        g.space().eval_kappa(&xb, &yb).unwrap()
                    );
                    assert_eq!(
                        g.eval_alpha_mask(x, y, z),
                        g.space().eval_alpha(&xb, &yb, &zb).unwrap()
                    );
                }
            }
        }
        // the hamming8 space carries nonzero alpha, so the triple term is live
        let g = hamming8_group();
        let mut seen_true = false;
        for x in 0..16u64 {
            for y in 0..16u64 {
                for z in 0..16u64 {
                    seen_true |= g.eval_alpha_mask(x, y, z);
                }
            }
        }
        assert!(seen_true);
    }
}
