//! Code loops built directly from a cubic space.
//!
//! The loop lives on the coset space `H3 \ G`: each class has a unique
//! representative of the form `g^x u^t`, so the underlying set is
//! `F_2^n x F_2` with `2^(n+1)` elements. The product folds the right
//! factor through the rotation symmetry before multiplying in `G`:
//!
//! ```text
//! a o b  =  rep( r_a * rho(inv(r_b) * sigma(r_b)) )
//! ```
//!
//! where `r_a = g^x u^t` lifts a class to its representative. The result
//! is a Moufang loop whose squares, commutators, and associators read off
//! the three layers of the cubic form, with the distinguished central
//! element `s` (the class of `u`) as the common value carrier.

pub mod table;
pub mod verify;

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::triality::{bitvec_to_mask, mask_to_bitvec, Elt, TrialityGroup, ELT_IDENTITY};
use crate::{CubicSpace, DoublyEvenCode};

/// Largest supported loop dimension (loop order `2^(n+1)`).
///
/// The fold cache stores one group element per loop element, so this cap
/// keeps construction costs around a few megabytes.
pub const MAX_LOOP_DIM: usize = 16;

/// An element of a code loop: a coset class determined by the exponent
/// vector of the `g` generators and the exponent of `u`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LoopElement {
    ctx: u32,
    n: u8,
    x: u64,
    t: bool,
}

impl LoopElement {
    /// Exponents of the loop generators `x_1..x_n`.
    pub fn xbits(&self) -> BitVec {
        mask_to_bitvec(self.n as usize, self.x)
    }

    /// Exponent of the central element `s`.
    pub fn t(&self) -> bool {
        self.t
    }

    pub fn is_one(&self) -> bool {
        self.x == 0 && !self.t
    }
}

impl fmt::Display for LoopElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "one");
        }
        let mut first = true;
        for i in 0..self.n as usize {
            if self.x >> i & 1 == 1 {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "x{}", i + 1)?;
                first = false;
            }
        }
        if self.t {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "s")?;
        }
        Ok(())
    }
}

/// Reverse the low `n` bits of a word (big-endian reading of the exponent
/// vector). Involutive, so it converts both ways between coordinate masks
/// and table ranks.
pub(crate) fn big_endian(n: usize, v: u64) -> u64 {
    if n == 0 {
        0
    } else {
        v.reverse_bits() >> (64 - n)
    }
}

/// A code loop of order `2^(n+1)` over a cubic space of dimension `n`.
pub struct CodeLoop {
    group: TrialityGroup,
    n: usize,
    mask: u64,
    /// gamma[(x << 1) | t] = rho(inv(r) * sigma(r)) for r = g^x u^t: the
    /// folded right factor of the loop product.
    gamma: Vec<Elt>,
}

impl CodeLoop {
    /// Build the loop of a group, caching the folded right factors.
    pub fn new(group: TrialityGroup) -> Result<Self> {
        let n = group.dim();
        if n > MAX_LOOP_DIM {
            return Err(Error::Capacity {
                what: "loop dimension",
                needed: n as u128,
                limit: MAX_LOOP_DIM as u128,
            });
        }
        let mask = group.coord_mask();
        let mut gamma = Vec::with_capacity(1 << (n + 1));
        for x in 0..1u64 << n {
            for t in [false, true] {
                let r = Elt {
                    x,
                    t1: t,
                    ..ELT_IDENTITY
                };
                gamma.push(group.apply_rho_raw(group.bracket_sigma_raw(r)));
            }
        }
        Ok(CodeLoop {
            group,
            n,
            mask,
            gamma,
        })
    }

    pub fn from_space(space: CubicSpace) -> Result<Self> {
        Self::new(TrialityGroup::new(space))
    }

    pub fn from_code(code: &DoublyEvenCode) -> Result<Self> {
        Self::new(TrialityGroup::from_code(code)?)
    }

    /// The group the loop is carved from.
    pub fn group(&self) -> &TrialityGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Loop order `2^(n+1)`.
    pub fn order(&self) -> u64 {
        1 << (self.n + 1)
    }

    // -- element plumbing ----------------------------------------------------

    fn wrap(&self, x: u64, t: bool) -> LoopElement {
        debug_assert_eq!(x & !self.mask, 0);
        LoopElement {
            ctx: self.group.ctx_id(),
            n: self.n as u8,
            x,
            t,
        }
    }

    fn raw(&self, a: LoopElement) -> Result<(u64, bool)> {
        if a.ctx != self.group.ctx_id() {
            return Err(Error::Context(
                "element does not belong to this loop".into(),
            ));
        }
        Ok((a.x, a.t))
    }

    pub fn one(&self) -> LoopElement {
        self.wrap(0, false)
    }

    /// The distinguished central element `s` (the class of `u`).
    pub fn s_element(&self) -> LoopElement {
        self.wrap(0, true)
    }

    /// The i-th loop generator `x_i` (the class of `g_i`), 0-based.
    pub fn x_generator(&self, i: usize) -> Result<LoopElement> {
        if i >= self.n {
            return Err(Error::Context(format!(
                "generator index {i} out of range for dimension {}",
                self.n
            )));
        }
        Ok(self.wrap(1 << i, false))
    }

    /// The element with the given exponent vector and `s` exponent.
    pub fn element(&self, xbits: &BitVec, t: bool) -> Result<LoopElement> {
        if xbits.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: xbits.len(),
            });
        }
        Ok(self.wrap(bitvec_to_mask(xbits), t))
    }

    /// The canonical group representative `g^x u^t` of a loop element.
    pub fn lift(&self, a: LoopElement) -> Result<crate::GroupElement> {
        let (x, t) = self.raw(a)?;
        Ok(self.group.wrap(Elt {
            x,
            t1: t,
            ..ELT_IDENTITY
        }))
    }

    /// The loop element of the coset class of a group element.
    pub fn class_of(&self, a: crate::GroupElement) -> Result<LoopElement> {
        let (x, t) = self.group.coset_rep_raw(self.group.raw(a)?);
        Ok(self.wrap(x, t))
    }

    // -- table ordering -------------------------------------------------------

    pub(crate) fn position_raw(&self, a: (u64, bool)) -> usize {
        ((big_endian(self.n, a.0) << 1) | u64::from(a.1)) as usize
    }

    pub(crate) fn element_raw_at(&self, pos: usize) -> (u64, bool) {
        (big_endian(self.n, (pos >> 1) as u64), pos & 1 == 1)
    }

    /// The table rank of an element: ascending big-endian exponent vector,
    /// then the `s` exponent. The unit has rank 0.
    pub fn position(&self, a: LoopElement) -> Result<usize> {
        Ok(self.position_raw(self.raw(a)?))
    }

    /// The element at a table rank (inverse of [`CodeLoop::position`]).
    pub fn element_at(&self, pos: usize) -> Result<LoopElement> {
        if pos as u64 >= self.order() {
            return Err(Error::Context(format!(
                "rank {pos} out of range for order {}",
                self.order()
            )));
        }
        let (x, t) = self.element_raw_at(pos);
        Ok(self.wrap(x, t))
    }

    /// All elements in table order.
    pub fn elements(&self) -> impl Iterator<Item = LoopElement> + '_ {
        (0..self.order() as usize).map(move |p| self.element_at(p).expect("rank in range"))
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> LoopElement {
        self.wrap(rng.gen::<u64>() & self.mask, rng.gen())
    }

    // -- operations ------------------------------------------------------------

    pub(crate) fn mul_raw(&self, a: (u64, bool), b: (u64, bool)) -> (u64, bool) {
        let ra = Elt {
            x: a.0,
            t1: a.1,
            ..ELT_IDENTITY
        };
        let folded = self.gamma[((b.0 << 1) | u64::from(b.1)) as usize];
        self.group.coset_rep_raw(self.group.mul_raw(ra, folded))
    }

    pub fn mul(&self, a: LoopElement, b: LoopElement) -> Result<LoopElement> {
        let (x, t) = self.mul_raw(self.raw(a)?, self.raw(b)?);
        Ok(self.wrap(x, t))
    }

    pub(crate) fn inv_raw(&self, a: (u64, bool)) -> (u64, bool) {
        if self.mul_raw(a, a) == (0, false) {
            a
        } else {
            self.mul_raw(a, (0, true))
        }
    }

    /// Two-sided inverse: `a` itself when `a` squares to one, `a o s`
    /// otherwise.
    pub fn inv(&self, a: LoopElement) -> Result<LoopElement> {
        let (x, t) = self.inv_raw(self.raw(a)?);
        Ok(self.wrap(x, t))
    }

    /// Integer power; every element has order dividing 4, so only the
    /// exponent mod 4 matters.
    pub fn power(&self, a: LoopElement, k: i64) -> Result<LoopElement> {
        let a = self.raw(a)?;
        let mut acc = (0u64, false);
        for _ in 0..k.rem_euclid(4) {
            acc = self.mul_raw(acc, a);
        }
        Ok(self.wrap(acc.0, acc.1))
    }

    /// `inv(b o a) o (a o b)`.
    pub fn commutator(&self, a: LoopElement, b: LoopElement) -> Result<LoopElement> {
        let (a, b) = (self.raw(a)?, self.raw(b)?);
        let c = self.mul_raw(self.inv_raw(self.mul_raw(b, a)), self.mul_raw(a, b));
        Ok(self.wrap(c.0, c.1))
    }

    /// `inv((a o b) o c) o (a o (b o c))`.
    pub fn associator(
        &self,
        a: LoopElement,
        b: LoopElement,
        c: LoopElement,
    ) -> Result<LoopElement> {
        let (a, b, c) = (self.raw(a)?, self.raw(b)?, self.raw(c)?);
        let d = self.mul_raw(
            self.inv_raw(self.mul_raw(self.mul_raw(a, b), c)),
            self.mul_raw(a, self.mul_raw(b, c)),
        );
        Ok(self.wrap(d.0, d.1))
    }

    /// The unique `x` with `a o x = b` (uses the inverse property).
    pub fn left_div(&self, a: LoopElement, b: LoopElement) -> Result<LoopElement> {
        let (a, b) = (self.raw(a)?, self.raw(b)?);
        let x = self.mul_raw(self.inv_raw(a), b);
        debug_assert_eq!(self.mul_raw(a, x), b);
        Ok(self.wrap(x.0, x.1))
    }

    /// The unique `x` with `x o a = b` (uses the inverse property).
    pub fn right_div(&self, b: LoopElement, a: LoopElement) -> Result<LoopElement> {
        let (b, a) = (self.raw(b)?, self.raw(a)?);
        let x = self.mul_raw(b, self.inv_raw(a));
        debug_assert_eq!(self.mul_raw(x, a), b);
        Ok(self.wrap(x.0, x.1))
    }
}
