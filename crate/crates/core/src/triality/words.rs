//! Letter-level collection: the reference product implementation.
//!
//! A normal form is flattened into a word of generator letters; the product
//! of two elements is the concatenation of their words, sorted back into
//! collection order `g_1 < .. < g_n < f_1 < .. < f_n < h_1 < .. < h_n < u < v`
//! by adjacent swaps `b a = a b [b, a]` (commutators read off the defining
//! relations) and square reductions. Every correction letter lands strictly
//! later in the order, so the process terminates.
//!
//! This is quadratic in word length and exists as the independent oracle for
//! the closed-form [`TrialityGroup::mul`]; the two are compared on random
//! pairs by the test suite.

use super::{Elt, GroupElement, Ones64, TrialityGroup, ELT_IDENTITY};
use crate::error::Result;

/// A single generator occurrence (0-based indices).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Letter {
    G(usize),
    F(usize),
    H(usize),
    U,
    V,
}

impl Letter {
    /// Collection order key.
    fn rank(self) -> (u8, usize) {
        match self {
            Letter::G(i) => (0, i),
            Letter::F(i) => (1, i),
            Letter::H(i) => (2, i),
            Letter::U => (3, 0),
            Letter::V => (4, 0),
        }
    }
}

/// The letters of a normal form, in collection order.
pub(crate) fn word_of(a: Elt) -> Vec<Letter> {
    let mut w = Vec::new();
    for i in Ones64(a.x) {
        w.push(Letter::G(i));
    }
    for i in Ones64(a.y) {
        w.push(Letter::F(i));
    }
    for i in Ones64(a.z) {
        w.push(Letter::H(i));
    }
    if a.t1 {
        w.push(Letter::U);
    }
    if a.t2 {
        w.push(Letter::V);
    }
    w
}

impl TrialityGroup {
    /// `a^2` as letters: generator squares are central (or trivial).
    fn square_letters(&self, a: Letter) -> Vec<Letter> {
        match a {
            Letter::G(i) if self.space().sigma_at(i) => vec![Letter::U],
            Letter::F(i) if self.space().sigma_at(i) => vec![Letter::V],
            _ => Vec::new(),
        }
    }

    /// `[a, b]` (= `[b, a]`: all commutator values are central-or-h and
    /// self-inverse) as letters, read off the defining relations.
    fn comm_letters(&self, a: Letter, b: Letter) -> Vec<Letter> {
        let space = self.space();
        let mut out = Vec::new();
        match (a, b) {
            (Letter::G(i), Letter::G(j)) => {
                if space.kappa_at(i, j) {
                    out.push(Letter::U);
                }
            }
            (Letter::F(i), Letter::F(j)) => {
                if space.kappa_at(i, j) {
                    out.push(Letter::V);
                }
            }
            (Letter::G(i), Letter::F(j)) | (Letter::F(j), Letter::G(i)) => {
                for k in 0..space.dim() {
                    if space.alpha_at(i, j, k) {
                        out.push(Letter::H(k));
                    }
                }
                if space.kappa_at(i, j) {
                    out.push(Letter::U);
                    out.push(Letter::V);
                }
            }
            (Letter::G(i), Letter::H(j)) | (Letter::H(j), Letter::G(i)) if i == j => {
                out.push(Letter::U);
            }
            (Letter::F(i), Letter::H(j)) | (Letter::H(j), Letter::F(i)) if i == j => {
                out.push(Letter::V);
            }
            // h-h pairs and anything against u or v commute
            _ => {}
        }
        out
    }

    /// Sort a word into collection order and fold it into a normal form.
    pub(crate) fn collect(&self, mut w: Vec<Letter>) -> Elt {
        let mut changed = true;
        while changed {
            changed = false;
            let mut i = 0;
            while i + 1 < w.len() {
                let (a, b) = (w[i], w[i + 1]);
                if a == b {
                    let sq = self.square_letters(a);
                    w.splice(i..i + 2, sq);
                    changed = true;
                    i = i.saturating_sub(1);
                } else if a.rank() > b.rank() {
                    let mut repl = vec![b, a];
                    repl.extend(self.comm_letters(a, b));
                    w.splice(i..i + 2, repl);
                    changed = true;
                } else {
                    i += 1;
                }
            }
        }
        let mut out = ELT_IDENTITY;
        for l in w {
            match l {
                Letter::G(i) => out.x |= 1 << i,
                Letter::F(i) => out.y |= 1 << i,
                Letter::H(i) => out.z |= 1 << i,
                Letter::U => out.t1 ^= true,
                Letter::V => out.t2 ^= true,
            }
        }
        out
    }

    pub(crate) fn mul_collected_raw(&self, a: Elt, b: Elt) -> Elt {
        let mut w = word_of(a);
        w.extend(word_of(b));
        self.collect(w)
    }

    /// Product via letter collection — the reference implementation the
    /// closed-form [`TrialityGroup::mul`] is differentially tested against.
    pub fn mul_via_collection(&self, a: GroupElement, b: GroupElement) -> Result<GroupElement> {
        Ok(self.wrap(self.mul_collected_raw(self.raw(a)?, self.raw(b)?)))
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::hamming8_group;
    use super::*;
    use crate::sampling::suite_rng;

    #[test]
    fn collection_reproduces_known_products() {
        let g = hamming8_group();
        // f_1 * g_2 = g_2 f_1 h_3 uv
        let a = Elt {
            y: 1,
            ..ELT_IDENTITY
        };
        let b = Elt {
            x: 0b10,
            ..ELT_IDENTITY
        };
        assert_eq!(
            g.mul_collected_raw(a, b),
            Elt {
                x: 0b10,
                y: 0b01,
                z: 0b100,
                t1: true,
                t2: true,
            }
        );
        // square reduction: g_1 g_1 = u
        let g1 = Elt {
            x: 1,
            ..ELT_IDENTITY
        };
        assert_eq!(
            g.mul_collected_raw(g1, g1),
            Elt {
                t1: true,
                ..ELT_IDENTITY
            }
        );
    }

    #[test]
    fn collection_agrees_with_closed_form() {
        let g = hamming8_group();
        let mut rng = suite_rng(5, "collector-differential-unit");
        for _ in 0..2000 {
            let a = g.random_raw(&mut rng);
            let b = g.random_raw(&mut rng);
            assert_eq!(g.mul_collected_raw(a, b), g.mul_raw(a, b), "{a:?} {b:?}");
        }
        let pub_a = g.random_element(&mut rng);
        let pub_b = g.random_element(&mut rng);
        assert_eq!(
            g.mul_via_collection(pub_a, pub_b).unwrap(),
            g.mul(pub_a, pub_b).unwrap()
        );
    }
}
