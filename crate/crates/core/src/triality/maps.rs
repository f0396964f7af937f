//! The outer S3 symmetry of the group and its action.
//!
//! Two primitive maps generate the symmetry: the *swap* `sigma`
//! (`g_i <-> f_i`, `h_i` fixed, `u <-> v`, order 2) and the *rotation* `rho`
//! (`g_i -> f_i`, `f_i -> (g_i f_i)^{-1}`, `h_i` fixed, `u -> v`,
//! `v -> uv`, order 3). Together they satisfy the S3 relations
//! `sigma^2 = rho^3 = (sigma rho)^2 = id`, so a map is identified by the
//! permutation it induces on the three-element set {1, 2, 3} on which S3
//! acts faithfully.
//!
//! Applying a map to an element decomposes the normal form into generator
//! letters, replaces each letter by its image, and multiplies the images.

use super::{Elt, GroupElement, Ones64, TrialityGroup, ELT_IDENTITY, ELT_U, ELT_UV, ELT_V};
use crate::error::Result;

/// The two primitive generators of the symmetry.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Primitive {
    Swap,
    Rotation,
}

/// An element of the S3 symmetry group, stored as the permutation p it
/// induces (`p[i]` = image of point i).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TrialityMap {
    perm: [u8; 3],
}

const P_ID: [u8; 3] = [0, 1, 2];
const P_SIGMA: [u8; 3] = [0, 2, 1];
const P_RHO: [u8; 3] = [1, 2, 0];

impl TrialityMap {
    pub const IDENTITY: TrialityMap = TrialityMap { perm: P_ID };

    /// The swap `sigma`: `g_i <-> f_i`, `u <-> v`.
    pub fn sigma() -> TrialityMap {
        TrialityMap { perm: P_SIGMA }
    }

    /// The rotation `rho`: `g_i -> f_i -> (g_i f_i)^{-1}`.
    pub fn rho() -> TrialityMap {
        TrialityMap { perm: P_RHO }
    }

    /// `self` followed by `other`: applying the result applies `self` first.
    pub fn then(self, other: TrialityMap) -> TrialityMap {
        let perm = std::array::from_fn(|i| other.perm[self.perm[i] as usize]);
        TrialityMap { perm }
    }

    pub fn inverse(self) -> TrialityMap {
        let mut perm = [0u8; 3];
        for i in 0..3 {
            perm[self.perm[i] as usize] = i as u8;
        }
        TrialityMap { perm }
    }

    pub fn is_identity(self) -> bool {
        self.perm == P_ID
    }

    /// Smallest k >= 1 with self^k = identity.
    pub fn order(self) -> u32 {
        let mut acc = self;
        for k in 1..=3 {
            if acc.is_identity() {
                return k;
            }
            acc = self.then(acc);
        }
        unreachable!("S3 element orders divide 3!")
    }

    /// All six maps, identity first.
    pub fn all() -> [TrialityMap; 6] {
        let s = Self::sigma();
        let r = Self::rho();
        [
            Self::IDENTITY,
            s,
            r,
            r.then(r),
            s.then(r),
            s.then(r).then(r),
        ]
    }

    /// The three involutions: the swap and its two conjugates under the
    /// rotation.
    pub fn involutions() -> [TrialityMap; 3] {
        let s = Self::sigma();
        let r = Self::rho();
        [s, s.then(r).then(r), s.then(r)]
    }

    /// Canonical decomposition into primitive maps, applied left-to-right.
    fn letters(self) -> &'static [Primitive] {
        use Primitive::{Rotation as R, Swap as S};
        match self.perm {
            P_ID => &[],
            P_SIGMA => &[S],
            P_RHO => &[R],
            [2, 0, 1] => &[R, R],
            [1, 0, 2] => &[S, R],
            [2, 1, 0] => &[S, R, R],
            _ => unreachable!("not an S3 permutation"),
        }
    }
}

/// An element of the extended group G x S3 (the symmetry acting on G),
/// written as a pair (g, map). Conjugating `(a, id)` by `(identity, m)`
/// applies `m` to `a`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct ExtElt {
    pub g: Elt,
    pub tag: TrialityMap,
}

pub(crate) const EXT_IDENTITY: ExtElt = ExtElt {
    g: ELT_IDENTITY,
    tag: TrialityMap::IDENTITY,
};

impl TrialityGroup {
    /// The swap applied to a normal form, image letter by image letter.
    pub(crate) fn apply_sigma_raw(&self, a: Elt) -> Elt {
        let mut acc = ELT_IDENTITY;
        for i in Ones64(a.x) {
            acc = self.mul_raw(
                acc,
                Elt {
                    y: 1 << i,
                    ..ELT_IDENTITY
                },
            );
        }
        for i in Ones64(a.y) {
            acc = self.mul_raw(
                acc,
                Elt {
                    x: 1 << i,
                    ..ELT_IDENTITY
                },
            );
        }
        if a.z != 0 {
            acc = self.mul_raw(
                acc,
                Elt {
                    z: a.z,
                    ..ELT_IDENTITY
                },
            );
        }
        if a.t1 {
            acc = self.mul_raw(acc, ELT_V);
        }
        if a.t2 {
            acc = self.mul_raw(acc, ELT_U);
        }
        acc
    }

    /// The rotation applied to a normal form.
    pub(crate) fn apply_rho_raw(&self, a: Elt) -> Elt {
        let mut acc = ELT_IDENTITY;
        for i in Ones64(a.x) {
            acc = self.mul_raw(
                acc,
                Elt {
                    y: 1 << i,
                    ..ELT_IDENTITY
                },
            );
        }
        for i in Ones64(a.y) {
            acc = self.mul_raw(acc, self.gf_inv[i]);
        }
        if a.z != 0 {
            acc = self.mul_raw(
                acc,
                Elt {
                    z: a.z,
                    ..ELT_IDENTITY
                },
            );
        }
        if a.t1 {
            acc = self.mul_raw(acc, ELT_V);
        }
        if a.t2 {
            acc = self.mul_raw(acc, ELT_UV);
        }
        acc
    }

    pub(crate) fn apply_map_raw(&self, map: TrialityMap, a: Elt) -> Elt {
        let mut a = a;
        for p in map.letters() {
            a = match p {
                Primitive::Swap => self.apply_sigma_raw(a),
                Primitive::Rotation => self.apply_rho_raw(a),
            };
        }
        a
    }

    /// Apply a symmetry map to an element.
    pub fn apply(&self, map: TrialityMap, a: GroupElement) -> Result<GroupElement> {
        Ok(self.wrap(self.apply_map_raw(map, self.raw(a)?)))
    }

    pub(crate) fn bracket_sigma_raw(&self, a: Elt) -> Elt {
        self.mul_raw(self.inv_raw(a), self.apply_sigma_raw(a))
    }

    /// `inv(a) * sigma(a)`: the deviation of `a` from being fixed by the
    /// swap.
    pub fn bracket_sigma(&self, a: GroupElement) -> Result<GroupElement> {
        Ok(self.wrap(self.bracket_sigma_raw(self.raw(a)?)))
    }

    pub(crate) fn check_triality_raw(&self, a: Elt) -> bool {
        let c1 = self.bracket_sigma_raw(a);
        let c2 = self.apply_rho_raw(c1);
        let c3 = self.apply_rho_raw(c2);
        self.mul_raw(self.mul_raw(c1, c2), c3) == ELT_IDENTITY
    }

    /// The triality identity at `a`: with `c = inv(a) * sigma(a)`,
    /// `c * rho(c) * rho(rho(c)) = identity`.
    pub fn check_triality(&self, a: GroupElement) -> Result<bool> {
        Ok(self.check_triality_raw(self.raw(a)?))
    }

    // -- extended group -----------------------------------------------------

    pub(crate) fn ext_mul(&self, e: ExtElt, f: ExtElt) -> ExtElt {
        ExtElt {
            g: self.mul_raw(e.g, self.apply_map_raw(e.tag.inverse(), f.g)),
            tag: e.tag.then(f.tag),
        }
    }

    pub(crate) fn ext_inv(&self, e: ExtElt) -> ExtElt {
        ExtElt {
            g: self.apply_map_raw(e.tag, self.inv_raw(e.g)),
            tag: e.tag.inverse(),
        }
    }

    pub(crate) fn ext_conj(&self, a: ExtElt, by: ExtElt) -> ExtElt {
        self.ext_mul(self.ext_mul(self.ext_inv(by), a), by)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::hamming8_group;
    use super::*;
    use crate::sampling::suite_rng;

    #[test]
    fn s3_structure() {
        let s = TrialityMap::sigma();
        let r = TrialityMap::rho();
        assert_eq!(s.order(), 2);
        assert_eq!(r.order(), 3);
        assert_eq!(s.then(r).order(), 2);
        assert!(s.then(s).is_identity());
        assert!(r.then(r).then(r).is_identity());
        // s r s = r r
        assert_eq!(s.then(r).then(s), r.then(r));
        let all = TrialityMap::all();
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 6);
        for m in all {
            assert!(m.then(m.inverse()).is_identity());
        }
        for m in TrialityMap::involutions() {
            assert_eq!(m.order(), 2);
        }
    }

    #[test]
    fn generator_images() {
        let g = hamming8_group();
        let s = TrialityMap::sigma();
        let r = TrialityMap::rho();
        // swap: g_1 <-> f_1, h fixed, u <-> v
        assert_eq!(
            g.apply(s, g.g(0).unwrap()).unwrap(),
            g.f(0).unwrap()
        );
        assert_eq!(
            g.apply(s, g.f(0).unwrap()).unwrap(),
            g.g(0).unwrap()
        );
        assert_eq!(g.apply(s, g.h(0).unwrap()).unwrap(), g.h(0).unwrap());
        assert_eq!(g.apply(s, g.u_elem()).unwrap(), g.v_elem());
        // rotation: g_1 -> f_1, v -> uv, f_1 -> (g_1 f_1)^{-1} = g_1 f_1 u v
        assert_eq!(
            g.apply(r, g.g(0).unwrap()).unwrap(),
            g.f(0).unwrap()
        );
        let uv = g.mul(g.u_elem(), g.v_elem()).unwrap();
        assert_eq!(g.apply(r, g.v_elem()).unwrap(), uv);
        let rho_f1 = g.apply(r, g.f(0).unwrap()).unwrap();
        assert_eq!(
            g.raw(rho_f1).unwrap(),
            Elt {
                x: 1,
                y: 1,
                t1: true,
                t2: true,
                ..ELT_IDENTITY
            }
        );
        // bracket examples
        assert!(g.bracket_sigma(g.identity()).unwrap().is_identity());
        assert!(g.bracket_sigma(g.h(0).unwrap()).unwrap().is_identity());
        let bu = g.bracket_sigma(g.u_elem()).unwrap();
        assert_eq!(bu, uv);
    }

    #[test]
    fn map_orders_hold_pointwise() {
        let g = hamming8_group();
        let mut rng = suite_rng(31, "maps-order-unit");
        let s = TrialityMap::sigma();
        let r = TrialityMap::rho();
        let sr = s.then(r);
        for _ in 0..300 {
            let a = g.random_element(&mut rng);
            assert_eq!(g.apply(s, g.apply(s, a).unwrap()).unwrap(), a);
            let r3 = g
                .apply(r, g.apply(r, g.apply(r, a).unwrap()).unwrap())
                .unwrap();
            assert_eq!(r3, a);
            assert_eq!(g.apply(sr, g.apply(sr, a).unwrap()).unwrap(), a);
            // composite application = sequential application
            assert_eq!(
                g.apply(sr, a).unwrap(),
                g.apply(r, g.apply(s, a).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn triality_identity_on_samples() {
        let g = hamming8_group();
        let mut rng = suite_rng(41, "triality-unit");
        assert!(g.check_triality(g.identity()).unwrap());
        assert!(g.check_triality(g.g(0).unwrap()).unwrap());
        for _ in 0..500 {
            assert!(g.check_triality(g.random_element(&mut rng)).unwrap());
        }
    }

    #[test]
    fn extended_group_conjugation_applies_maps() {
        let g = hamming8_group();
        let mut rng = suite_rng(51, "ext-unit");
        for m in TrialityMap::all() {
            for _ in 0..50 {
                let a = g.random_raw(&mut rng);
                let x = ExtElt {
                    g: a,
                    tag: TrialityMap::IDENTITY,
                };
                let by = ExtElt {
                    g: ELT_IDENTITY,
                    tag: m,
                };
                let c = g.ext_conj(x, by);
                assert!(c.tag.is_identity());
                assert_eq!(c.g, g.apply_map_raw(m, a));
            }
        }
        // associativity and inverses of the extended product, sampled
        for _ in 0..200 {
            let all = TrialityMap::all();
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| ExtElt {
                g: g.random_raw(rng),
                tag: all[rand::Rng::gen_range(rng, 0..6)],
            };
            let e = pick(&mut rng);
            let f = pick(&mut rng);
            let k = pick(&mut rng);
            assert_eq!(
                g.ext_mul(g.ext_mul(e, f), k),
                g.ext_mul(e, g.ext_mul(f, k))
            );
            assert_eq!(g.ext_mul(e, g.ext_inv(e)), EXT_IDENTITY);
            assert_eq!(g.ext_mul(g.ext_inv(e), e), EXT_IDENTITY);
        }
    }
}
