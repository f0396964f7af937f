//! Property tests over randomly drawn cubic spaces: group laws, the order-3
//! symmetry, coset-class invariance, loop laws, structure-constant recovery,
//! and serialization round trips.

use codeloop_core::moufang::verify::recovered_constants;
use codeloop_core::sampling::suite_rng;
use codeloop_core::{
    CayleyTable, CodeLoop, CubicSpace, DoublyEvenCode, Subgroup, TrialityGroup, TrialityMap,
};
use proptest::prelude::*;

fn draw_space(n: usize, seed: u64) -> CubicSpace {
    let mut rng = suite_rng(seed, "property-space");
    CubicSpace::random(n, &mut rng).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_laws_hold_on_random_spaces(n in 0usize..=5, seed in any::<u64>()) {
        let g = TrialityGroup::new(draw_space(n, seed));
        let e = g.identity();
        let mut rng = suite_rng(seed, "group-laws");
        for _ in 0..64 {
            let a = g.random_element(&mut rng);
            let b = g.random_element(&mut rng);
            let c = g.random_element(&mut rng);
            let ab_c = g.mul(g.mul(a, b).unwrap(), c).unwrap();
            let a_bc = g.mul(a, g.mul(b, c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(g.mul(a, g.inv(a).unwrap()).unwrap(), e);
            prop_assert_eq!(g.mul(g.inv(a).unwrap(), a).unwrap(), e);
            prop_assert_eq!(g.mul(a, e).unwrap(), a);
            prop_assert_eq!(g.mul(e, a).unwrap(), a);
        }
    }

    #[test]
    fn symmetries_are_multiplicative_with_stated_orders(n in 0usize..=5, seed in any::<u64>()) {
        let g = TrialityGroup::new(draw_space(n, seed));
        let sigma = TrialityMap::sigma();
        let rho = TrialityMap::rho();
        let mut rng = suite_rng(seed, "symmetry");
        for _ in 0..48 {
            let a = g.random_element(&mut rng);
            let b = g.random_element(&mut rng);
            for map in [sigma, rho] {
                let lhs = g.apply(map, g.mul(a, b).unwrap()).unwrap();
                let rhs = g
                    .mul(g.apply(map, a).unwrap(), g.apply(map, b).unwrap())
                    .unwrap();
                prop_assert_eq!(lhs, rhs);
            }
            // sigma^2 = rho^3 = (sigma rho)^2 = identity, pointwise
            prop_assert_eq!(g.apply(sigma, g.apply(sigma, a).unwrap()).unwrap(), a);
            let r3 = g
                .apply(rho, g.apply(rho, g.apply(rho, a).unwrap()).unwrap())
                .unwrap();
            prop_assert_eq!(r3, a);
            let sr = sigma.then(rho);
            prop_assert_eq!(g.apply(sr, g.apply(sr, a).unwrap()).unwrap(), a);
            // the defining three-fold product collapses to the identity
            prop_assert!(g.check_triality(a).unwrap());
        }
    }

    #[test]
    fn coset_classes_are_constant_on_fixed_subgroup_orbits(n in 0usize..=2, seed in any::<u64>()) {
        let l = CodeLoop::from_space(draw_space(n, seed)).unwrap();
        let g = l.group();
        let fixed: Vec<_> = g
            .elements()
            .unwrap()
            .filter(|&h| g.in_subgroup(h, Subgroup::H3).unwrap())
            .collect();
        prop_assert_eq!(fixed.len() as u128, g.order().unwrap() >> (n + 1));
        let mut rng = suite_rng(seed, "coset-class");
        for _ in 0..16 {
            let a = l.random_element(&mut rng);
            let lifted = l.lift(a).unwrap();
            prop_assert_eq!(l.class_of(lifted).unwrap(), a);
            for &h in &fixed {
                prop_assert_eq!(l.class_of(g.mul(h, lifted).unwrap()).unwrap(), a);
            }
        }
    }

    #[test]
    fn loop_laws_hold_on_random_spaces(n in 0usize..=5, seed in any::<u64>()) {
        let l = CodeLoop::from_space(draw_space(n, seed)).unwrap();
        let one = l.one();
        let s = l.s_element();
        let mut rng = suite_rng(seed, "loop-laws");
        for _ in 0..48 {
            let a = l.random_element(&mut rng);
            let b = l.random_element(&mut rng);
            let c = l.random_element(&mut rng);
            // Moufang law
            let lhs = l.mul(a, l.mul(b, l.mul(a, c).unwrap()).unwrap()).unwrap();
            let rhs = l.mul(l.mul(l.mul(a, b).unwrap(), a).unwrap(), c).unwrap();
            prop_assert_eq!(lhs, rhs);
            // inverses, squares, central involution
            prop_assert_eq!(l.mul(a, l.inv(a).unwrap()).unwrap(), one);
            let sq = l.power(a, 2).unwrap();
            prop_assert!(sq == one || sq == s);
            prop_assert_eq!(l.mul(a, s).unwrap(), l.mul(s, a).unwrap());
            // division laws
            prop_assert_eq!(l.mul(a, l.left_div(a, b).unwrap()).unwrap(), b);
            prop_assert_eq!(l.mul(l.right_div(b, a).unwrap(), a).unwrap(), b);
        }
    }

    #[test]
    fn structure_constants_recover_the_space(n in 0usize..=6, seed in any::<u64>()) {
        let sp = draw_space(n, seed);
        let l = CodeLoop::from_space(sp.clone()).unwrap();
        prop_assert_eq!(recovered_constants(&l).unwrap(), sp);
    }

    #[test]
    fn table_serialization_round_trips(n in 0usize..=4, seed in any::<u64>()) {
        let l = CodeLoop::from_space(draw_space(n, seed)).unwrap();
        let table = CayleyTable::build(&l, 1 << 12).unwrap();
        let text = table.serialize();
        let back = CayleyTable::parse(&text).unwrap();
        prop_assert_eq!(&back, &table);
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn space_serialization_round_trips(n in 0usize..=8, seed in any::<u64>()) {
        let sp = draw_space(n, seed);
        let back = CubicSpace::parse(&sp.serialize()).unwrap();
        prop_assert_eq!(back, sp);
    }
}

#[test]
fn builtin_code_serialization_round_trips() {
    for name in ["hamming8", "hamming8_sub3", "golay24", "zero_3"] {
        let code = DoublyEvenCode::builtin(name).unwrap();
        let back = DoublyEvenCode::parse(&code.serialize()).unwrap();
        // parsing normalizes to reduced row echelon form; the span must match
        assert_eq!(back.basis().rref(), code.basis().rref(), "{name}");
        assert_eq!(back.length(), code.length(), "{name}");
        assert_eq!(back.dim(), code.dim(), "{name}");
        let dist = code.weight_distribution().unwrap();
        let total: u64 = dist.values().sum();
        assert_eq!(total, 1u64 << code.dim(), "{name}");
    }
}
