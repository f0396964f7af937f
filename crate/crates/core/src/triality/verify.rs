//! Verification suites for the group: group axioms of the closed-form
//! product, the defining relations, the symmetry laws, the subgroup and
//! coset structure, and the conjugated-involutions criterion.

use std::collections::HashSet;

use rand::Rng;

use super::maps::{ExtElt, TrialityMap, EXT_IDENTITY};
use super::words::Letter;
use super::{
    Elt, GroupElement, Subgroup, TrialityGroup, ELEMENT_ENUM_LIMIT, ELT_IDENTITY, ELT_U, ELT_V,
};
use crate::error::{Error, Result};
use crate::report::{Mode, Report};
use crate::sampling::suite_rng;

/// Largest number of ordered triples enumerated by exhaustive associativity.
pub const TRIPLE_ENUM_LIMIT: u128 = 1 << 24;

/// Largest number of ordered pairs enumerated by exhaustive pair scans
/// (cancellation tables, conjugated-involution pairs).
pub const PAIR_ENUM_LIMIT: u128 = 1 << 22;

/// Largest number of (candidate, conjugator) membership tests run by the
/// normal-core sweep.
pub const CORE_SWEEP_LIMIT: u128 = 1 << 24;

/// Cap on the elements fed to the generator-multiplicativity sub-check of
/// [`check_automorphisms`]; it is quadratic-ish in the dimension per element.
const MULTIPLICATIVITY_CAP: u64 = 1 << 12;

fn letter_elt(l: Letter) -> Elt {
    match l {
        Letter::G(i) => Elt {
            x: 1 << i,
            ..ELT_IDENTITY
        },
        Letter::F(i) => Elt {
            y: 1 << i,
            ..ELT_IDENTITY
        },
        Letter::H(i) => Elt {
            z: 1 << i,
            ..ELT_IDENTITY
        },
        Letter::U => ELT_U,
        Letter::V => ELT_V,
    }
}

fn elt_str(a: Elt) -> String {
    format!(
        "(x={:b}, y={:b}, z={:b}, t1={}, t2={})",
        a.x, a.y, a.z, a.t1 as u8, a.t2 as u8
    )
}

/// The exhaustive-element mode gate shared by the element-sweeping suites.
fn require_enumerable(g: &TrialityGroup, what: &'static str) -> Result<u64> {
    let lg = g.order_log2();
    if u64::from(lg) >= 64 || (1u128 << lg) > u128::from(ELEMENT_ENUM_LIMIT) {
        return Err(Error::Capacity {
            what,
            needed: if lg < 128 { 1u128 << lg } else { u128::MAX },
            limit: u128::from(ELEMENT_ENUM_LIMIT),
        });
    }
    Ok(1u64 << lg)
}

/// Evaluate every defining relation with each generator letter replaced by
/// `img(letter)` and each relation value mapped through `val`; with the
/// identity substitution this checks the relations themselves, and with a
/// symmetry substitution it checks that the generator images again satisfy
/// the relations (so the assignment extends to the whole group).
fn relation_suite(
    g: &TrialityGroup,
    tag: &str,
    img: &dyn Fn(Letter) -> Elt,
    val: &dyn Fn(Elt) -> Elt,
    report: &mut Report,
) {
    let n = g.dim();
    let suffix = if tag.is_empty() {
        String::new()
    } else {
        format!(" under {tag}")
    };
    let mut check = |ok: bool, name: &str| {
        report.record(ok, || format!("relation {name} fails{suffix}"));
    };

    let e = ELT_IDENTITY;
    // Squares of the generators.
    for i in 0..n {
        let si = g.space().sigma_at(i);
        let gi = img(Letter::G(i));
        let fi = img(Letter::F(i));
        let hi = img(Letter::H(i));
        let usq = val(if si { ELT_U } else { e });
        let vsq = val(if si { ELT_V } else { e });
        check(
            g.mul_raw(gi, gi) == usq,
            &format!("g{}^2 = u^sigma{}", i + 1, i + 1),
        );
        check(
            g.mul_raw(fi, fi) == vsq,
            &format!("f{}^2 = v^sigma{}", i + 1, i + 1),
        );
        check(g.mul_raw(hi, hi) == val(e), &format!("h{}^2 = 1", i + 1));
    }
    // Commutators within one family and between families.
    for i in 0..n {
        for j in 0..n {
            let kij = g.space().kappa_at(i, j);
            if i < j {
                let cu = val(if kij { ELT_U } else { e });
                let cv = val(if kij { ELT_V } else { e });
                check(
                    g.comm_raw(img(Letter::G(i)), img(Letter::G(j))) == cu,
                    &format!("[g{}, g{}] = u^kappa", i + 1, j + 1),
                );
                check(
                    g.comm_raw(img(Letter::F(i)), img(Letter::F(j))) == cv,
                    &format!("[f{}, f{}] = v^kappa", i + 1, j + 1),
                );
                check(
                    g.comm_raw(img(Letter::H(i)), img(Letter::H(j))) == val(e),
                    &format!("[h{}, h{}] = 1", i + 1, j + 1),
                );
            }
            // Mixed commutator: an h-block plus (uv)^kappa.
            let mixed = val(Elt {
                z: g.pm[i * n + j],
                t1: kij,
                t2: kij,
                ..ELT_IDENTITY
            });
            check(
                g.comm_raw(img(Letter::G(i)), img(Letter::F(j))) == mixed,
                &format!("[g{}, f{}] = (uv)^kappa h^alpha", i + 1, j + 1),
            );
            let delta = i == j;
            check(
                g.comm_raw(img(Letter::G(i)), img(Letter::H(j)))
                    == val(if delta { ELT_U } else { e }),
                &format!("[g{}, h{}] = u^delta", i + 1, j + 1),
            );
            check(
                g.comm_raw(img(Letter::F(i)), img(Letter::H(j)))
                    == val(if delta { ELT_V } else { e }),
                &format!("[f{}, h{}] = v^delta", i + 1, j + 1),
            );
        }
    }
    // u and v are central involutions.
    let letters_u = [Letter::U, Letter::V];
    check(
        g.mul_raw(img(Letter::U), img(Letter::U)) == val(e),
        "u^2 = 1",
    );
    check(
        g.mul_raw(img(Letter::V), img(Letter::V)) == val(e),
        "v^2 = 1",
    );
    let mut all_letters: Vec<Letter> = Vec::new();
    for i in 0..n {
        all_letters.push(Letter::G(i));
        all_letters.push(Letter::F(i));
        all_letters.push(Letter::H(i));
    }
    all_letters.extend(letters_u);
    for c in letters_u {
        for &l in &all_letters {
            check(
                g.comm_raw(img(c), img(l)) == val(e),
                &format!("{c:?} central against {l:?}"),
            );
        }
    }
}

/// Check every defining relation of the presentation against the closed-form
/// product. Always exhaustive over the (finitely many) relations.
pub fn check_relations(g: &TrialityGroup) -> Report {
    let mut report = Report::new("presentation.relations", Mode::Exhaustive);
    relation_suite(g, "", &letter_elt, &|e| e, &mut report);
    report
}

/// Associativity of the closed-form product: exhaustive over all ordered
/// triples when they fit under [`TRIPLE_ENUM_LIMIT`], otherwise sampled.
pub fn check_associativity(g: &TrialityGroup, mode: Mode) -> Result<Report> {
    check_associativity_with(g, mode, &|g, a, b| g.mul_raw(a, b))
}

/// Same as [`check_associativity`] but with a pluggable product, so the test
/// suite can confirm the check rejects a corrupted multiplication.
pub(crate) fn check_associativity_with(
    g: &TrialityGroup,
    mode: Mode,
    mul: &dyn Fn(&TrialityGroup, Elt, Elt) -> Elt,
) -> Result<Report> {
    let suite = "presentation.associativity";
    let mut report = Report::new(suite, mode);
    let assoc = |a: Elt, b: Elt, c: Elt| mul(g, mul(g, a, b), c) == mul(g, a, mul(g, b, c));
    match mode {
        Mode::Exhaustive => {
            let lg = g.order_log2();
            let triples = if 3 * lg < 128 {
                1u128 << (3 * lg)
            } else {
                u128::MAX
            };
            if triples > TRIPLE_ENUM_LIMIT {
                return Err(Error::Capacity {
                    what: "ordered element triples",
                    needed: triples,
                    limit: TRIPLE_ENUM_LIMIT,
                });
            }
            let order = 1u64 << lg;
            let elts: Vec<Elt> = (0..order).map(|c| g.decode_raw(c)).collect();
            for &a in &elts {
                for &b in &elts {
                    for &c in &elts {
                        report.record(assoc(a, b, c), || {
                            format!(
                                "associativity fails at {} * {} * {}",
                                elt_str(a),
                                elt_str(b),
                                elt_str(c)
                            )
                        });
                    }
                }
            }
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = suite_rng(seed, suite);
            for _ in 0..samples {
                let a = g.random_raw(&mut rng);
                let b = g.random_raw(&mut rng);
                let c = g.random_raw(&mut rng);
                report.record(assoc(a, b, c), || {
                    format!(
                        "associativity fails at {} * {} * {}",
                        elt_str(a),
                        elt_str(b),
                        elt_str(c)
                    )
                });
            }
        }
    }
    Ok(report)
}

/// Group axioms by brute force: distinct normal forms, two-sided identity
/// and inverses, and full cancellation tables (every row and column of the
/// multiplication table is a permutation). Quadratic in the group order.
pub fn check_group_axioms(g: &TrialityGroup) -> Result<Report> {
    let lg = g.order_log2();
    let pairs = if 2 * lg < 128 {
        1u128 << (2 * lg)
    } else {
        u128::MAX
    };
    if pairs > PAIR_ENUM_LIMIT {
        return Err(Error::Capacity {
            what: "ordered element pairs",
            needed: pairs,
            limit: PAIR_ENUM_LIMIT,
        });
    }
    let order = 1u64 << lg;
    let mut report = Report::new("group-axioms", Mode::Exhaustive);
    report.note(format!("order 2^{lg} = {order}"));

    let elts: Vec<Elt> = (0..order).map(|c| g.decode_raw(c)).collect();
    // Normal forms are pairwise distinct (the packed encoding is injective).
    for (c, &a) in elts.iter().enumerate() {
        report.record(g.encode_raw(a) == c as u64, || {
            format!("normal form {} does not round-trip", elt_str(a))
        });
    }
    // Identity and inverses, two-sided.
    for &a in &elts {
        report.record(
            g.mul_raw(ELT_IDENTITY, a) == a && g.mul_raw(a, ELT_IDENTITY) == a,
            || format!("identity law fails at {}", elt_str(a)),
        );
        let inv = g.inv_raw(a);
        report.record(
            g.mul_raw(a, inv) == ELT_IDENTITY && g.mul_raw(inv, a) == ELT_IDENTITY,
            || format!("inverse law fails at {}", elt_str(a)),
        );
    }
    // Cancellation: rows and columns of the product table are permutations.
    let words = order.div_ceil(64) as usize;
    let mut col_seen = vec![0u64; words * order as usize];
    let mut col_ok = vec![true; order as usize];
    for &a in &elts {
        let mut row_seen = vec![0u64; words];
        let mut row_ok = true;
        for (bi, &b) in elts.iter().enumerate() {
            let c = g.encode_raw(g.mul_raw(a, b)) as usize;
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            if row_seen[w] & bit != 0 {
                row_ok = false;
            }
            row_seen[w] |= bit;
            let cw = bi * words + w;
            if col_seen[cw] & bit != 0 {
                col_ok[bi] = false;
            }
            col_seen[cw] |= bit;
        }
        report.record(row_ok, || {
            format!("left translation by {} is not injective", elt_str(a))
        });
    }
    for (bi, ok) in col_ok.into_iter().enumerate() {
        report.record(ok, || {
            format!(
                "right translation by {} is not injective",
                elt_str(elts[bi])
            )
        });
    }
    Ok(report)
}

/// The swap and rotation symmetries: their generator images satisfy all
/// defining relations (exact), the order laws `swap^2 = rot^3 =
/// (swap.rot)^2 = id` hold pointwise, and multiplicativity against every
/// generator holds on a capped element sweep.
pub fn check_automorphisms(g: &TrialityGroup, mode: Mode) -> Result<Report> {
    let suite = "presentation.automorphisms";
    let mut report = Report::new(suite, mode);
    let swap = TrialityMap::sigma();
    let rot = TrialityMap::rho();

    for (map, tag) in [(swap, "swap"), (rot, "rotation")] {
        relation_suite(
            g,
            tag,
            &|l| g.apply_map_raw(map, letter_elt(l)),
            &|e| g.apply_map_raw(map, e),
            &mut report,
        );
    }

    let order_laws = |a: Elt, report: &mut Report| {
        let s2 = g.apply_sigma_raw(g.apply_sigma_raw(a));
        report.record(s2 == a, || format!("swap^2 moves {}", elt_str(a)));
        let r3 = g.apply_rho_raw(g.apply_rho_raw(g.apply_rho_raw(a)));
        report.record(r3 == a, || format!("rotation^3 moves {}", elt_str(a)));
        let sr = |x: Elt| g.apply_rho_raw(g.apply_sigma_raw(x));
        report.record(sr(sr(a)) == a, || {
            format!("(swap then rotation)^2 moves {}", elt_str(a))
        });
    };
    let multiplicative = |a: Elt, report: &mut Report| {
        for map in [swap, rot] {
            for i in 0..3 * g.dim() + 2 {
                let x = letter_elt(generator_letter(g.dim(), i));
                let lhs = g.apply_map_raw(map, g.mul_raw(a, x));
                let rhs = g.mul_raw(g.apply_map_raw(map, a), g.apply_map_raw(map, x));
                report.record(lhs == rhs, || {
                    format!(
                        "map not multiplicative at {} * generator {}",
                        elt_str(a),
                        i
                    )
                });
            }
        }
    };

    match mode {
        Mode::Exhaustive => {
            let order = require_enumerable(g, "element sweep for symmetry laws")?;
            for c in 0..order {
                order_laws(g.decode_raw(c), &mut report);
            }
            if order <= MULTIPLICATIVITY_CAP {
                for c in 0..order {
                    multiplicative(g.decode_raw(c), &mut report);
                }
            } else {
                report.note(format!(
                    "multiplicativity sweep capped at {MULTIPLICATIVITY_CAP} of {order} elements"
                ));
                for c in 0..MULTIPLICATIVITY_CAP {
                    multiplicative(g.decode_raw(c), &mut report);
                }
            }
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = suite_rng(seed, suite);
            for _ in 0..samples {
                order_laws(g.random_raw(&mut rng), &mut report);
            }
            let m = samples.min(MULTIPLICATIVITY_CAP);
            for _ in 0..m {
                multiplicative(g.random_raw(&mut rng), &mut report);
            }
        }
    }
    Ok(report)
}

fn generator_letter(n: usize, i: usize) -> Letter {
    if i < n {
        Letter::G(i)
    } else if i < 2 * n {
        Letter::F(i - n)
    } else if i < 3 * n {
        Letter::H(i - 2 * n)
    } else if i == 3 * n {
        Letter::U
    } else {
        Letter::V
    }
}

/// Bundle of the three presentation-level suites.
pub struct PresentationReport {
    pub relations: Report,
    pub associativity: Report,
    pub automorphisms: Report,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.relations.passed() && self.associativity.passed() && self.automorphisms.passed()
    }
}

/// Run relations (exhaustive), associativity, and symmetry suites.
pub fn verify_presentation(g: &TrialityGroup, mode: Mode) -> Result<PresentationReport> {
    Ok(PresentationReport {
        relations: check_relations(g),
        associativity: check_associativity(g, mode)?,
        automorphisms: check_automorphisms(g, mode)?,
    })
}

/// The fixed set of the swap symmetry is exactly the subgroup generated by
/// `g_i f_i`, `h_i`, and `uv`: an element is fixed if and only if its coset
/// representative is trivial (two independent computations).
pub fn check_centralizer(g: &TrialityGroup, mode: Mode) -> Result<Report> {
    let suite = "centralizer";
    let mut report = Report::new(suite, mode);
    let equiv =
        |a: Elt| (g.apply_sigma_raw(a) == a) == (g.coset_rep_raw(a) == (0, false));
    match mode {
        Mode::Exhaustive => {
            let order = require_enumerable(g, "element sweep for the fixed subgroup")?;
            let mut fixed = 0u64;
            for c in 0..order {
                let a = g.decode_raw(c);
                report.record(equiv(a), || {
                    format!("fixed-set membership mismatch at {}", elt_str(a))
                });
                fixed += u64::from(g.apply_sigma_raw(a) == a);
            }
            let expect = 1u64 << (2 * g.dim() + 1);
            report.record(fixed == expect, || {
                format!("fixed subgroup has {fixed} elements, expected {expect}")
            });
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = suite_rng(seed, suite);
            for _ in 0..samples {
                let a = g.random_raw(&mut rng);
                report.record(equiv(a), || {
                    format!("fixed-set membership mismatch at {}", elt_str(a))
                });
                // A product of the diagonal generators must be fixed.
                let d = g.random_h3_raw(&mut rng);
                report.record(g.apply_sigma_raw(d) == d, || {
                    format!("diagonal-generator product {} not fixed by swap", elt_str(d))
                });
            }
        }
    }
    Ok(report)
}

/// Exact coset counts by orbit closure on canonical representatives: the
/// number of right cosets of the fixed subgroup in the whole group, and the
/// number of its cosets intersected into the point subgroup with trivial
/// g-part. The closure walks at most `2^(n+1)` representative values, so the
/// counts are exact at any group order.
pub fn coset_orbit_counts(g: &TrialityGroup) -> Result<(u64, u64)> {
    let n = g.dim();
    if n > 16 {
        return Err(Error::Capacity {
            what: "representative orbit closure",
            needed: 1u128 << (n + 1),
            limit: 1 << 17,
        });
    }
    let lift = |(x, t): (u64, bool)| Elt {
        x,
        t1: t,
        ..ELT_IDENTITY
    };
    let orbit = |gens: &[Elt]| -> u64 {
        let mut seen: HashSet<(u64, bool)> = HashSet::new();
        let start = g.coset_rep_raw(ELT_IDENTITY);
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(r) = stack.pop() {
            for &x in gens {
                let next = g.coset_rep_raw(g.mul_raw(lift(r), x));
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        seen.len() as u64
    };
    let full: Vec<Elt> = (0..3 * n + 2)
        .map(|i| letter_elt(generator_letter(n, i)))
        .collect();
    let inner: Vec<Elt> = full
        .iter()
        .copied()
        .filter(|&x| g.in_subgroup_raw(x, Subgroup::H2))
        .collect();
    Ok((orbit(&full), orbit(&inner)))
}

/// Subgroup sizes and coset structure. The orbit-closure index counts and
/// the canonical-representative section are checked in any mode; exhaustive
/// mode additionally counts the three subgroups (order `2^(2n+1)` each),
/// their pairwise intersections (`2^n`), and the `2^(n+1)` uniform
/// representative classes.
pub fn check_indices(g: &TrialityGroup, mode: Mode) -> Result<Report> {
    let suite = "index";
    let n = g.dim();
    let mut report = Report::new(suite, mode);
    report.note(format!(
        "diagonal subgroup has index 2^{} = {}",
        n + 1,
        1u64 << (n + 1)
    ));

    match coset_orbit_counts(g) {
        Ok((full, inner)) => {
            let expect = 1u64 << (n + 1);
            report.record(full == expect, || {
                format!("orbit closure finds {full} cosets in the whole group, expected {expect}")
            });
            report.record(inner == expect, || {
                format!(
                    "orbit closure finds {inner} cosets inside the point subgroup, expected {expect}"
                )
            });
        }
        Err(_) => report.note("representative orbit closure skipped: dimension too large"),
    }

    let lift = |(x, t): (u64, bool)| Elt {
        x,
        t1: t,
        ..ELT_IDENTITY
    };
    // rep is constant on cosets, maps each element into its own coset, and
    // canonical lifts are their own representatives.
    let section_checks = |a: Elt, d: Elt, report: &mut Report| {
        let r = g.coset_rep_raw(a);
        report.record(g.coset_rep_raw(g.mul_raw(d, a)) == r, || {
            format!(
                "representative changes under diagonal factor {} * {}",
                elt_str(d),
                elt_str(a)
            )
        });
        report.record(
            g.in_subgroup_raw(g.mul_raw(lift(r), g.inv_raw(a)), Subgroup::H3),
            || format!("representative of {} leaves its coset", elt_str(a)),
        );
        report.record(g.coset_rep_raw(lift(r)) == r, || {
            format!("representative of {} is not canonical", elt_str(a))
        });
    };

    match mode {
        Mode::Exhaustive => {
            let order = require_enumerable(g, "element sweep for subgroup counts")?;
            let mut sizes = [0u64; 3];
            let mut meets = [0u64; 3]; // |H1 n H2|, |H1 n H3|, |H2 n H3|
            let mut classes: Vec<u64> = vec![0; 1 << (n + 1)];
            for c in 0..order {
                let a = g.decode_raw(c);
                let member = [
                    g.in_subgroup_raw(a, Subgroup::H1),
                    g.in_subgroup_raw(a, Subgroup::H2),
                    g.in_subgroup_raw(a, Subgroup::H3),
                ];
                for (s, m) in sizes.iter_mut().zip(member) {
                    *s += u64::from(m);
                }
                meets[0] += u64::from(member[0] && member[1]);
                meets[1] += u64::from(member[0] && member[2]);
                meets[2] += u64::from(member[1] && member[2]);
                let (x, t) = g.coset_rep_raw(a);
                classes[((x << 1) | u64::from(t)) as usize] += 1;
                let h = c.wrapping_mul(0x9e37_79b9_7f4a_7c15);
                let diag = g.h3_element_raw(h, h >> 21, (h >> 42) & 1 == 1);
                section_checks(a, diag, &mut report);
            }
            let expect_sub = 1u64 << (2 * n + 1);
            for (which, s) in ["H1", "H2", "H3"].iter().zip(sizes) {
                report.record(s == expect_sub, || {
                    format!("|{which}| = {s}, expected {expect_sub}")
                });
            }
            let expect_meet = 1u64 << n;
            for (which, m) in ["H1 n H2", "H1 n H3", "H2 n H3"].iter().zip(meets) {
                report.record(m == expect_meet, || {
                    format!("|{which}| = {m}, expected {expect_meet}")
                });
            }
            let class_size = 1u64 << (2 * n + 1);
            report.record(classes.iter().all(|&c| c == class_size), || {
                "representative classes are not uniform cosets".into()
            });
            report.note(format!(
                "{} representative classes of size {}",
                classes.len(),
                class_size
            ));
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = suite_rng(seed, suite);
            let mut reps: HashSet<(u64, bool)> = HashSet::new();
            for _ in 0..samples {
                let a = g.random_raw(&mut rng);
                let diag = g.random_h3_raw(&mut rng);
                section_checks(a, diag, &mut report);
                reps.insert(g.coset_rep_raw(a));
                // Equal representatives means equal cosets.
                let b = g.random_raw(&mut rng);
                if g.coset_rep_raw(b) == g.coset_rep_raw(a) {
                    report.record(
                        g.in_subgroup_raw(g.mul_raw(a, g.inv_raw(b)), Subgroup::H3),
                        || {
                            format!(
                                "{} and {} share a representative across cosets",
                                elt_str(a),
                                elt_str(b)
                            )
                        },
                    );
                }
            }
            if n < 20 {
                report.record(reps.len() as u64 <= 1 << (n + 1), || {
                    format!(
                        "observed {} representative classes, bound {}",
                        reps.len(),
                        1u64 << (n + 1)
                    )
                });
                report.note(format!(
                    "observed {} of {} representative classes",
                    reps.len(),
                    1u64 << (n + 1)
                ));
            }
        }
    }
    Ok(report)
}

/// With `c = inv(a) * sigma(a)`, the product `c * rho(c) * rho(rho(c))` is
/// the identity for every element `a`, exhaustively or over random samples.
pub fn check_triality_identity(g: &TrialityGroup, mode: Mode) -> Result<Report> {
    let suite = "triality-identity";
    let mut report = Report::new(suite, mode);
    match mode {
        Mode::Exhaustive => {
            let order = require_enumerable(g, "element sweep for the triality identity")?;
            for c in 0..order {
                let a = g.decode_raw(c);
                report.record(g.check_triality_raw(a), || {
                    format!("triality identity fails at {}", elt_str(a))
                });
            }
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = suite_rng(seed, suite);
            for _ in 0..samples {
                let a = g.random_raw(&mut rng);
                report.record(g.check_triality_raw(a), || {
                    format!("triality identity fails at {}", elt_str(a))
                });
            }
        }
    }
    Ok(report)
}

/// Conjugated-involutions criterion: conjugating the three point symmetries
/// of order two by arbitrary group elements and multiplying any two distinct
/// results gives an extended element whose cube is an inner central element.
pub fn check_parker(g: &TrialityGroup, mode: Mode) -> Result<Report> {
    let suite = "parker";
    let mut report = Report::new(suite, mode);
    let invols = TrialityMap::involutions();
    let tau = |m: TrialityMap, a: Elt| {
        g.ext_conj(
            ExtElt {
                g: ELT_IDENTITY,
                tag: m,
            },
            ExtElt {
                g: a,
                tag: TrialityMap::IDENTITY,
            },
        )
    };
    let gens: Vec<Elt> = (0..3 * g.dim() + 2)
        .map(|i| letter_elt(generator_letter(g.dim(), i)))
        .collect();
    let run_pair = |i: usize, a: Elt, j: usize, b: Elt, report: &mut Report| {
        let ti = tau(invols[i], a);
        let tj = tau(invols[j], b);
        let t2 = g.ext_mul(ti, ti);
        report.record(t2 == EXT_IDENTITY, || {
            format!(
                "conjugated point symmetry {} by {} is not an involution",
                i,
                elt_str(a)
            )
        });
        let p = g.ext_mul(ti, tj);
        let p3 = g.ext_mul(g.ext_mul(p, p), p);
        let central = p3.tag.is_identity()
            && gens
                .iter()
                .all(|&x| g.mul_raw(p3.g, x) == g.mul_raw(x, p3.g));
        report.record(central, || {
            format!(
                "cube of product of conjugated symmetries ({i} by {}, {j} by {}) is not inner central",
                elt_str(a),
                elt_str(b)
            )
        });
    };
    match mode {
        Mode::Exhaustive => {
            let lg = g.order_log2();
            let pairs = if 2 * lg < 128 {
                6u128 << (2 * lg)
            } else {
                u128::MAX
            };
            if pairs > PAIR_ENUM_LIMIT {
                return Err(Error::Capacity {
                    what: "conjugated involution pairs",
                    needed: pairs,
                    limit: PAIR_ENUM_LIMIT,
                });
            }
            let order = 1u64 << lg;
            for i in 0..3 {
                for j in 0..3 {
                    if i == j {
                        continue;
                    }
                    for ca in 0..order {
                        for cb in 0..order {
                            run_pair(i, g.decode_raw(ca), j, g.decode_raw(cb), &mut report);
                        }
                    }
                }
            }
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = suite_rng(seed, suite);
            for _ in 0..samples {
                let i = rng.gen_range(0..3usize);
                let j = (i + 1 + rng.gen_range(0..2usize)) % 3;
                let a = g.random_raw(&mut rng);
                let b = g.random_raw(&mut rng);
                run_pair(i, a, j, b, &mut report);
            }
        }
    }
    Ok(report)
}

/// The largest normal subgroup of the whole group contained in the fixed
/// subgroup of the swap symmetry, by brute force over all conjugators.
/// Cost is (subgroup size) x (group order) = 2^(5n+3) membership tests.
pub fn core_subgroup(g: &TrialityGroup) -> Result<Vec<GroupElement>> {
    let lg = 5 * g.dim() as u32 + 3;
    let sweeps = if lg < 128 { 1u128 << lg } else { u128::MAX };
    if sweeps > CORE_SWEEP_LIMIT {
        return Err(Error::Capacity {
            what: "conjugation sweep for the normal core",
            needed: sweeps,
            limit: CORE_SWEEP_LIMIT,
        });
    }
    let lg = g.order_log2();
    let order = 1u64 << lg;
    let conjugators: Vec<Elt> = (0..order).map(|c| g.decode_raw(c)).collect();
    let mut out = Vec::new();
    'cand: for code in 0..order {
        let a = g.decode_raw(code);
        if !g.in_subgroup_raw(a, Subgroup::H3) {
            continue;
        }
        for &c in &conjugators {
            if !g.in_subgroup_raw(g.conj_raw(a, c), Subgroup::H3) {
                continue 'cand;
            }
        }
        out.push(g.wrap(a));
    }
    Ok(out)
}
