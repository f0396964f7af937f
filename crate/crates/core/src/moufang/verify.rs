//! Verification suites for code loops: loop axioms, the bent associative
//! law, central structure, recovery of the cubic coefficients, the
//! multiplication-group permutation identities, and an independent
//! conjugation-based reconstruction of the product.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;

use crate::cubic::CubicSpace;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::report::{Mode, Report};
use crate::sampling::suite_rng;
use crate::triality::maps::ExtElt;
use crate::triality::maps::TrialityMap;
use crate::triality::verify::core_subgroup;
use crate::triality::{Elt, ELT_IDENTITY};

use super::{CodeLoop, LoopElement};

/// Ceiling on `order^2` for exhaustive pair sweeps.
const PAIR_SWEEP_LIMIT: u128 = 1 << 22;

/// Ceiling on `order^2` for the quotient-homomorphism sweep; one product
/// per pair, so the largest supported table-free loop (order 8192) still
/// sweeps exactly.
const QUOTIENT_PAIR_LIMIT: u128 = 1 << 26;

/// Ceiling on `order^3` for the exhaustive bent-associativity sweep.
const TRIPLE_SWEEP_LIMIT: u128 = 1 << 24;

/// Ceiling on `order^3` for the exhaustive coefficient-form sweep (each
/// triple costs several products and a form evaluation).
const FORM_TRIPLE_LIMIT: u128 = 1 << 18;

/// Largest order whose translation permutations are materialized.
const PERMUTATION_LIMIT: u64 = 1 << 10;

/// Largest order for the exhaustive permutation-identity sweep (the triple
/// identity composes permutations, adding a factor of `order`).
const IDENTITY_ORDER_LIMIT: u64 = 1 << 6;

/// Largest order for the exhaustive center computation.
const CENTER_ORDER_LIMIT: u64 = 1 << 7;

/// Largest order for the exhaustive two-letter word sweep.
const WORD_PAIR_LIMIT: u128 = 1 << 14;

/// Largest dimension for the conjugation-based product reconstruction and
/// the multiplication-group closure (the latter calls [`core_subgroup`],
/// which sweeps `2^(5n+3)` conjugations).
const SMALL_DIM_LIMIT: usize = 3;

type Raw = (u64, bool);

const RAW_ONE: Raw = (0, false);
const RAW_S: Raw = (0, true);

fn le_str(l: &CodeLoop, a: Raw) -> String {
    l.wrap(a.0, a.1).to_string()
}

fn raw_elements(l: &CodeLoop) -> Vec<Raw> {
    (0..l.order() as usize).map(|p| l.element_raw_at(p)).collect()
}

fn random_raw(l: &CodeLoop, rng: &mut impl Rng) -> Raw {
    let mask = if l.dim() == 0 {
        0
    } else {
        u64::MAX >> (64 - l.dim())
    };
    (rng.gen::<u64>() & mask, rng.gen())
}

// -- loop axioms ---------------------------------------------------------------

/// Unit laws and cancellation: the multiplication table is a Latin square
/// with the unit in the first row and column.
pub fn latin_check(l: &CodeLoop, mode: Mode) -> Result<Report> {
    let suite = "loop-latin";
    let mut report = Report::new(suite, mode);
    let order = l.order();
    for a in raw_elements(l) {
        let ok = l.mul_raw(RAW_ONE, a) == a && l.mul_raw(a, RAW_ONE) == a;
        report.record(ok, || format!("unit law fails at {}", le_str(l, a)));
    }
    match mode {
        Mode::Exhaustive => {
            let pairs = (order as u128).pow(2);
            if pairs > PAIR_SWEEP_LIMIT {
                return Err(Error::Capacity {
                    what: "cancellation pair sweep",
                    needed: pairs,
                    limit: PAIR_SWEEP_LIMIT,
                });
            }
            let m = order as usize;
            let elems = raw_elements(l);
            let mut row = vec![0u64; m.div_ceil(64)];
            let mut col = vec![0u64; m.div_ceil(64)];
            for &a in &elems {
                row.iter_mut().for_each(|w| *w = 0);
                col.iter_mut().for_each(|w| *w = 0);
                for &b in &elems {
                    let r = l.position_raw(l.mul_raw(a, b));
                    row[r / 64] |= 1 << (r % 64);
                    let c = l.position_raw(l.mul_raw(b, a));
                    col[c / 64] |= 1 << (c % 64);
                }
                let full = |seen: &[u64]| {
                    seen.iter().map(|w| w.count_ones()).sum::<u32>() as usize == m
                };
                report.record(full(&row), || {
                    format!("left translation by {} repeats a value", le_str(l, a))
                });
                report.record(full(&col), || {
                    format!("right translation by {} repeats a value", le_str(l, a))
                });
            }
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = suite_rng(seed, suite);
            for _ in 0..samples {
                let a = random_raw(l, &mut rng);
                let b = random_raw(l, &mut rng);
                // both divisions solve their equations...
                let q = l.mul_raw(l.inv_raw(a), b);
                report.record(l.mul_raw(a, q) == b, || {
                    format!(
                        "left division fails for {} \\ {}",
                        le_str(l, a),
                        le_str(l, b)
                    )
                });
                let r = l.mul_raw(b, l.inv_raw(a));
                report.record(l.mul_raw(r, a) == b, || {
                    format!(
                        "right division fails for {} / {}",
                        le_str(l, b),
                        le_str(l, a)
                    )
                });
                // ...and translations cancel
                let c = random_raw(l, &mut rng);
                let cancel = c == b
                    || (l.mul_raw(a, b) != l.mul_raw(a, c)
                        && l.mul_raw(b, a) != l.mul_raw(c, a));
                report.record(cancel, || {
                    format!(
                        "translation by {} identifies {} and {}",
                        le_str(l, a),
                        le_str(l, b),
                        le_str(l, c)
                    )
                });
            }
        }
    }
    Ok(report)
}

/// The bent associative law `x o (y o (x o z)) = ((x o y) o x) o z`.
pub fn is_moufang(l: &CodeLoop, mode: Mode) -> Result<Report> {
    let suite = "moufang-law";
    let mut report = Report::new(suite, mode);
    let check = |x: Raw, y: Raw, z: Raw, report: &mut Report| {
        let lhs = l.mul_raw(x, l.mul_raw(y, l.mul_raw(x, z)));
        let rhs = l.mul_raw(l.mul_raw(l.mul_raw(x, y), x), z);
        report.record(lhs == rhs, || {
            format!(
                "bent associativity fails at ({}, {}, {})",
                le_str(l, x),
                le_str(l, y),
                le_str(l, z)
            )
        });
    };
    match mode {
        Mode::Exhaustive => {
            let triples = (l.order() as u128).pow(3);
            if triples > TRIPLE_SWEEP_LIMIT {
                return Err(Error::Capacity {
                    what: "bent-associativity triple sweep",
                    needed: triples,
                    limit: TRIPLE_SWEEP_LIMIT,
                });
            }
            let elems = raw_elements(l);
            for &x in &elems {
                for &y in &elems {
                    for &z in &elems {
                        check(x, y, z, &mut report);
                    }
                }
            }
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = suite_rng(seed, suite);
            for _ in 0..samples {
                check(
                    random_raw(l, &mut rng),
                    random_raw(l, &mut rng),
                    random_raw(l, &mut rng),
                    &mut report,
                );
            }
        }
    }
    Ok(report)
}

// -- central structure ----------------------------------------------------------

/// `s` is a central involution, every square lies in `{one, s}`, and the
/// quotient by `{one, s}` is coordinatewise addition. The element sweeps
/// are always exhaustive; the mode governs the quotient pair sweep.
pub fn small_frattini_check(l: &CodeLoop, mode: Mode) -> Result<Report> {
    let suite = "small-frattini";
    let mut report = Report::new(suite, mode);
    report.record(l.mul_raw(RAW_S, RAW_S) == RAW_ONE, || {
        "s is not an involution".into()
    });
    for a in raw_elements(l) {
        report.record(l.mul_raw(RAW_S, a) == l.mul_raw(a, RAW_S), || {
            format!("s does not commute with {}", le_str(l, a))
        });
        let sq = l.mul_raw(a, a);
        report.record(sq == RAW_ONE || sq == RAW_S, || {
            format!("square of {} escapes the center", le_str(l, a))
        });
    }
    let quotient_pair = |a: Raw, b: Raw, report: &mut Report| {
        let p = l.mul_raw(a, b);
        report.record(p.0 == a.0 ^ b.0, || {
            format!(
                "quotient of {} o {} is not coordinatewise addition",
                le_str(l, a),
                le_str(l, b)
            )
        });
    };
    match mode {
        Mode::Exhaustive => {
            let pairs = (l.order() as u128).pow(2);
            if pairs > QUOTIENT_PAIR_LIMIT {
                return Err(Error::Capacity {
                    what: "quotient homomorphism pair sweep",
                    needed: pairs,
                    limit: QUOTIENT_PAIR_LIMIT,
                });
            }
            let elems = raw_elements(l);
            for &a in &elems {
                for &b in &elems {
                    quotient_pair(a, b, &mut report);
                }
            }
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = suite_rng(seed, suite);
            for _ in 0..samples {
                quotient_pair(random_raw(l, &mut rng), random_raw(l, &mut rng), &mut report);
            }
            report.note("element sweeps exhaustive; quotient pairs sampled");
        }
    }
    Ok(report)
}

/// The center: elements commuting and associating with everything.
/// Exhaustive up to order 128; above that, candidates are eliminated by
/// random probes (`samples` probes per surviving candidate), which can
/// only over-approximate the center.
pub fn center(l: &CodeLoop, mode: Mode) -> Result<Vec<LoopElement>> {
    let elems = raw_elements(l);
    let survivors: Vec<Raw> = match mode {
        Mode::Exhaustive => {
            if l.order() > CENTER_ORDER_LIMIT {
                return Err(Error::Capacity {
                    what: "exhaustive center computation",
                    needed: l.order() as u128,
                    limit: CENTER_ORDER_LIMIT as u128,
                });
            }
            elems
                .iter()
                .copied()
                .filter(|&c| {
                    elems.iter().all(|&b| l.mul_raw(c, b) == l.mul_raw(b, c))
                        && elems.iter().all(|&b| {
                            elems.iter().all(|&d| {
                                let assoc = |p: Raw, q: Raw, r: Raw| {
                                    l.mul_raw(l.mul_raw(p, q), r)
                                        == l.mul_raw(p, l.mul_raw(q, r))
                                };
                                assoc(c, b, d) && assoc(b, c, d) && assoc(b, d, c)
                            })
                        })
                })
                .collect()
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = suite_rng(seed, "center");
            elems
                .iter()
                .copied()
                .filter(|&c| {
                    (0..samples).all(|_| {
                        let b = random_raw(l, &mut rng);
                        let d = random_raw(l, &mut rng);
                        let assoc = |p: Raw, q: Raw, r: Raw| {
                            l.mul_raw(l.mul_raw(p, q), r) == l.mul_raw(p, l.mul_raw(q, r))
                        };
                        l.mul_raw(c, b) == l.mul_raw(b, c)
                            && assoc(c, b, d)
                            && assoc(b, c, d)
                            && assoc(b, d, c)
                    })
                })
                .collect()
        }
    };
    Ok(survivors.into_iter().map(|a| l.wrap(a.0, a.1)).collect())
}

/// Report wrapper around [`center`]: the unit and `s` always belong, and
/// the center is a subloop, so its size is a power of two.
pub fn center_check(l: &CodeLoop, mode: Mode) -> Result<Report> {
    let suite = "center";
    let mut report = Report::new(suite, mode);
    let z = center(l, mode)?;
    report.record(z.iter().any(|a| a.is_one()), || {
        "the unit is missing from the center".into()
    });
    report.record(z.contains(&l.s_element()), || {
        "s is missing from the center".into()
    });
    report.record(z.len().is_power_of_two(), || {
        format!("center size {} is not a power of two", z.len())
    });
    report.note(format!("center size {}", z.len()));
    Ok(report)
}

// -- coefficient recovery ---------------------------------------------------------

/// Read the cubic coefficients back off the loop: squares of generators,
/// commutators of generator pairs, and associators of generator triples,
/// each of which must land in `{one, s}`.
pub fn recovered_constants(l: &CodeLoop) -> Result<CubicSpace> {
    let n = l.dim();
    let gen = |i: usize| -> Raw { (1 << i, false) };
    let read = |v: Raw, what: String| -> Result<bool> {
        match v {
            RAW_ONE => Ok(false),
            RAW_S => Ok(true),
            other => Err(Error::Structure(format!(
                "{what} is {}, outside {{one, s}}",
                le_str(l, other)
            ))),
        }
    };
    let mut sigma = BitVec::zeros(n);
    for i in 0..n {
        let sq = l.mul_raw(gen(i), gen(i));
        sigma.set(i, read(sq, format!("square of x{}", i + 1))?);
    }
    let mut kappa = BitVec::zeros(n * n.saturating_sub(1) / 2);
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (gen(i), gen(j));
            let c = l.mul_raw(l.inv_raw(l.mul_raw(b, a)), l.mul_raw(a, b));
            kappa.set(
                idx,
                read(c, format!("commutator of x{} and x{}", i + 1, j + 1))?,
            );
            idx += 1;
        }
    }
    let mut alpha = BitVec::zeros(if n < 3 { 0 } else { n * (n - 1) * (n - 2) / 6 });
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (gen(i), gen(j), gen(k));
                let d = l.mul_raw(
                    l.inv_raw(l.mul_raw(l.mul_raw(a, b), c)),
                    l.mul_raw(a, l.mul_raw(b, c)),
                );
                alpha.set(
                    idx,
                    read(
                        d,
                        format!("associator of x{}, x{}, x{}", i + 1, j + 1, k + 1),
                    )?,
                );
                idx += 1;
            }
        }
    }
    CubicSpace::from_parts(n, sigma, kappa, alpha)
}

/// Squares, commutators, and associators of arbitrary elements evaluate
/// the three layers of the cubic form on the quotient coordinates.
pub fn structure_constants_check(l: &CodeLoop, mode: Mode) -> Result<Report> {
    let suite = "structure-constants";
    let mut report = Report::new(suite, mode);
    let g = l.group();
    let s_pow = |b: bool| if b { RAW_S } else { RAW_ONE };
    let square = |a: Raw, report: &mut Report| {
        report.record(l.mul_raw(a, a) == s_pow(g.eval_sigma_mask(a.0)), || {
            format!("square of {} disagrees with the cubic form", le_str(l, a))
        });
    };
    let comm = |a: Raw, b: Raw, report: &mut Report| {
        let c = l.mul_raw(l.inv_raw(l.mul_raw(b, a)), l.mul_raw(a, b));
        report.record(c == s_pow(g.eval_kappa_mask(a.0, b.0)), || {
            format!(
                "commutator of {} and {} disagrees with the pair form",
                le_str(l, a),
                le_str(l, b)
            )
        });
    };
    let assoc = |a: Raw, b: Raw, c: Raw, report: &mut Report| {
        let d = l.mul_raw(
            l.inv_raw(l.mul_raw(l.mul_raw(a, b), c)),
            l.mul_raw(a, l.mul_raw(b, c)),
        );
        report.record(d == s_pow(g.eval_alpha_mask(a.0, b.0, c.0)), || {
            format!(
                "associator of {}, {}, {} disagrees with the triple form",
                le_str(l, a),
                le_str(l, b),
                le_str(l, c)
            )
        });
    };
    match mode {
        Mode::Exhaustive => {
            let triples = (l.order() as u128).pow(3);
            if triples > FORM_TRIPLE_LIMIT {
                return Err(Error::Capacity {
                    what: "coefficient-form triple sweep",
                    needed: triples,
                    limit: FORM_TRIPLE_LIMIT,
                });
            }
            let elems = raw_elements(l);
            for &a in &elems {
                square(a, &mut report);
                for &b in &elems {
                    comm(a, b, &mut report);
                    for &c in &elems {
                        assoc(a, b, c, &mut report);
                    }
                }
            }
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = suite_rng(seed, suite);
            for _ in 0..samples {
                let a = random_raw(l, &mut rng);
                let b = random_raw(l, &mut rng);
                let c = random_raw(l, &mut rng);
                square(a, &mut report);
                comm(a, b, &mut report);
                assoc(a, b, c, &mut report);
            }
        }
    }
    Ok(report)
}

// -- multiplication group -----------------------------------------------------------

/// Translation permutations in table ranks: `right[i] = rank(e_i o a)`,
/// `left[i] = rank(a o e_i)` for each `a` in table order.
struct Translations {
    right: Vec<Vec<u16>>,
    left: Vec<Vec<u16>>,
}

fn translations(l: &CodeLoop) -> Result<Translations> {
    if l.order() > PERMUTATION_LIMIT {
        return Err(Error::Capacity {
            what: "translation permutation table",
            needed: l.order() as u128,
            limit: PERMUTATION_LIMIT as u128,
        });
    }
    let elems = raw_elements(l);
    let perm = |f: &dyn Fn(Raw) -> Raw| -> Vec<u16> {
        elems.iter().map(|&p| l.position_raw(f(p)) as u16).collect()
    };
    let mut right = Vec::with_capacity(elems.len());
    let mut left = Vec::with_capacity(elems.len());
    for &a in &elems {
        right.push(perm(&|p| l.mul_raw(p, a)));
        left.push(perm(&|p| l.mul_raw(a, p)));
    }
    Ok(Translations { right, left })
}

fn pcomp(p: &[u16], q: &[u16]) -> Vec<u16> {
    p.iter().map(|&i| q[i as usize]).collect()
}

fn pinv(p: &[u16]) -> Vec<u16> {
    let mut r = vec![0u16; p.len()];
    for (i, &v) in p.iter().enumerate() {
        r[v as usize] = i as u16;
    }
    r
}

/// `P^-1 Q^-1 P Q`, composing left to right.
fn pcommutator(p: &[u16], q: &[u16]) -> Vec<u16> {
    pcomp(&pcomp(&pcomp(&pinv(p), &pinv(q)), p), q)
}

/// Identities tying permutation commutators of translations to loop
/// commutators and associators:
///
/// 1. `[R_x, R_y] = R_{comm(x, y)}`
/// 2. `[R_y, L_x] = R_{inv(y)} R_x R_{inv(y) o x}^-1`
/// 3. `[[R_x, L_y], R_z] = R_{assoc(x, y, z)}`
///
/// plus `R_s = L_s`, a fixed-point-free involution commuting with every
/// translation.
pub fn verify_mult_identities(l: &CodeLoop, mode: Mode) -> Result<Report> {
    let suite = "mult-identities";
    let mut report = Report::new(suite, mode);
    let t = translations(l)?;
    let pos = |a: Raw| l.position_raw(a);
    let s_pos = pos(RAW_S);

    let rs = &t.right[s_pos];
    report.record(rs == &t.left[s_pos], || {
        "translations by s disagree".into()
    });
    report.record(pcomp(rs, rs).iter().enumerate().all(|(i, &v)| v as usize == i), || {
        "translation by s is not an involution".into()
    });
    report.record(rs.iter().enumerate().all(|(i, &v)| v as usize != i), || {
        "translation by s has a fixed point".into()
    });
    for p in t.right.iter().chain(t.left.iter()) {
        report.record(pcomp(rs, p) == pcomp(p, rs), || {
            "translation by s fails to commute with a translation".into()
        });
    }

    let rpair = |a: Raw, b: Raw| -> Vec<u16> {
        pcomp(
            &pcomp(&t.right[pos(a)], &t.right[pos(b)]),
            &pinv(&t.right[pos(l.mul_raw(a, b))]),
        )
    };
    let comm_elt = |a: Raw, b: Raw| l.mul_raw(l.inv_raw(l.mul_raw(b, a)), l.mul_raw(a, b));
    let assoc_elt = |a: Raw, b: Raw, c: Raw| {
        l.mul_raw(
            l.inv_raw(l.mul_raw(l.mul_raw(a, b), c)),
            l.mul_raw(a, l.mul_raw(b, c)),
        )
    };
    let pair_ids = |x: Raw, y: Raw, report: &mut Report| {
        let ok1 = pcommutator(&t.right[pos(x)], &t.right[pos(y)])
            == t.right[pos(comm_elt(x, y))];
        report.record(ok1, || {
            format!(
                "right-translation commutator of {} and {} misses the loop commutator",
                le_str(l, x),
                le_str(l, y)
            )
        });
        let ok2 = pcommutator(&t.right[pos(y)], &t.left[pos(x)])
            == rpair(l.inv_raw(y), x);
        report.record(ok2, || {
            format!(
                "mixed commutator of translations by {} and {} misses its pair form",
                le_str(l, y),
                le_str(l, x)
            )
        });
    };
    let triple_id = |x: Raw, y: Raw, z: Raw, report: &mut Report| {
        let inner = pcommutator(&t.right[pos(x)], &t.left[pos(y)]);
        let ok = pcommutator(&inner, &t.right[pos(z)])
            == t.right[pos(assoc_elt(x, y, z))];
        report.record(ok, || {
            format!(
                "iterated translation commutator at ({}, {}, {}) misses the associator",
                le_str(l, x),
                le_str(l, y),
                le_str(l, z)
            )
        });
    };

    match mode {
        Mode::Exhaustive => {
            if l.order() > IDENTITY_ORDER_LIMIT {
                return Err(Error::Capacity {
                    what: "permutation identity sweep",
                    needed: l.order() as u128,
                    limit: IDENTITY_ORDER_LIMIT as u128,
                });
            }
            let elems = raw_elements(l);
            for &x in &elems {
                for &y in &elems {
                    pair_ids(x, y, &mut report);
                    for &z in &elems {
                        triple_id(x, y, z, &mut report);
                    }
                }
            }
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = suite_rng(seed, suite);
            for _ in 0..samples {
                let x = random_raw(l, &mut rng);
                let y = random_raw(l, &mut rng);
                let z = random_raw(l, &mut rng);
                pair_ids(x, y, &mut report);
                triple_id(x, y, z, &mut report);
            }
        }
    }
    Ok(report)
}

/// Generate the multiplication group as a permutation closure and compare
/// its size against the order of the group modulo the normal core of the
/// fixed subgroup. Dimension-gated by the core sweep.
pub fn mlt_bound_check(l: &CodeLoop) -> Result<Report> {
    let n = l.dim();
    if n > SMALL_DIM_LIMIT {
        return Err(Error::Capacity {
            what: "multiplication-group closure dimension",
            needed: n as u128,
            limit: SMALL_DIM_LIMIT as u128,
        });
    }
    let mut report = Report::new("mlt-bound", Mode::Exhaustive);
    let t = translations(l)?;
    let gens: Vec<&Vec<u16>> = t.right.iter().chain(t.left.iter()).collect();

    let identity: Vec<u16> = (0..l.order() as u16).collect();
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for &g in &gens {
            let next = pcomp(&p, g);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mlt = seen.len() as u64;

    let core = core_subgroup(l.group())?;
    let quotient = (1u64 << l.group().order_log2()) / core.len() as u64;
    report.record(mlt.is_power_of_two(), || {
        format!("closure size {mlt} is not a power of two")
    });
    report.record(quotient.is_multiple_of(mlt), || {
        format!("closure size {mlt} does not divide the core quotient {quotient}")
    });
    let s_perm = &t.right[l.position_raw(RAW_S)];
    report.record(
        seen.iter().all(|p| pcomp(s_perm, p) == pcomp(p, s_perm)),
        || "translation by s is not central in the closure".into(),
    );
    report.note(format!(
        "multiplication group order {mlt}; group order {} / core {} = {quotient}",
        1u64 << l.group().order_log2(),
        core.len()
    ));
    Ok(report)
}

// -- independent product reconstruction -------------------------------------------

/// Rebuild the product from the symmetry action alone: each class is keyed
/// by the conjugate of the swap symmetry by its representative, and the
/// product of two classes is read off by conjugating through the rotation.
/// Every pair must land exactly on the directly computed product.
pub fn dual_product_check(l: &CodeLoop) -> Result<Report> {
    let suite = "dual-product";
    if l.dim() > SMALL_DIM_LIMIT {
        return Ok(Report::skipped(
            suite,
            format!(
                "conjugation-based reconstruction runs at dimension <= {SMALL_DIM_LIMIT}, loop has {}",
                l.dim()
            ),
        ));
    }
    let mut report = Report::new(suite, Mode::Exhaustive);
    let g = l.group();
    let lift = |a: Raw| Elt {
        x: a.0,
        t1: a.1,
        ..ELT_IDENTITY
    };
    let pure = |tag: TrialityMap| ExtElt {
        g: ELT_IDENTITY,
        tag,
    };
    let embed = |e: Elt| ExtElt {
        g: e,
        tag: TrialityMap::IDENTITY,
    };
    let sig_e = pure(TrialityMap::sigma());
    let rho_e = pure(TrialityMap::rho());

    let elems = raw_elements(l);
    let mut reps: HashMap<ExtElt, Raw> = HashMap::new();
    for &a in &elems {
        let key = ExtElt {
            g: g.bracket_sigma_raw(lift(a)),
            tag: TrialityMap::sigma(),
        };
        reps.insert(key, a);
    }
    report.record(reps.len() as u64 == l.order(), || {
        "conjugates of the swap symmetry do not separate classes".into()
    });

    for &a in &elems {
        let alpha = g.ext_conj(sig_e, embed(lift(a)));
        let w = g.ext_mul(g.ext_mul(g.ext_mul(rho_e, alpha), rho_e), sig_e);
        for &b in &elems {
            let beta = g.ext_conj(sig_e, embed(lift(b)));
            let res = g.ext_conj(beta, w);
            let ok = reps.get(&res) == Some(&l.mul_raw(a, b));
            report.record(ok, || {
                format!(
                    "reconstructed product of {} and {} disagrees",
                    le_str(l, a),
                    le_str(l, b)
                )
            });
        }
    }
    Ok(report)
}

// -- word-level structure -------------------------------------------------------

fn all_bracketings(l: &CodeLoop, word: &[Raw]) -> Vec<Raw> {
    if word.len() == 1 {
        return vec![word[0]];
    }
    let mut out = Vec::new();
    for cut in 1..word.len() {
        for lhs in all_bracketings(l, &word[..cut]) {
            for rhs in all_bracketings(l, &word[cut..]) {
                out.push(l.mul_raw(lhs, rhs));
            }
        }
    }
    out
}

/// Every two-generated subloop is a group: all bracketings of words of
/// length 3 and 4 over two letters agree.
pub fn diassociativity_check(l: &CodeLoop, mode: Mode) -> Result<Report> {
    let suite = "diassociativity";
    let mut report = Report::new(suite, mode);
    let pair_words = |a: Raw, b: Raw, report: &mut Report| {
        for len in [3usize, 4] {
            for pattern in 0..1u32 << len {
                let word: Vec<Raw> = (0..len)
                    .map(|i| if pattern >> i & 1 == 1 { b } else { a })
                    .collect();
                let vals = all_bracketings(l, &word);
                let ok = vals.iter().all(|&v| v == vals[0]);
                report.record(ok, || {
                    format!(
                        "bracketings of a length-{len} word in {} and {} disagree",
                        le_str(l, a),
                        le_str(l, b)
                    )
                });
            }
        }
    };
    match mode {
        Mode::Exhaustive => {
            let pairs = (l.order() as u128).pow(2);
            if pairs > WORD_PAIR_LIMIT {
                return Err(Error::Capacity {
                    what: "two-letter word pair sweep",
                    needed: pairs,
                    limit: WORD_PAIR_LIMIT,
                });
            }
            let elems = raw_elements(l);
            for &a in &elems {
                for &b in &elems {
                    pair_words(a, b, &mut report);
                }
            }
        }
        Mode::Sampled { samples, seed } => {
            let mut rng = suite_rng(seed, suite);
            for _ in 0..samples {
                let a = random_raw(l, &mut rng);
                let b = random_raw(l, &mut rng);
                pair_words(a, b, &mut report);
            }
        }
    }
    Ok(report)
}

/// First associativity failure, if any (order-gated triple sweep).
pub fn associativity_witness(
    l: &CodeLoop,
) -> Result<Option<(LoopElement, LoopElement, LoopElement)>> {
    let triples = (l.order() as u128).pow(3);
    if triples > TRIPLE_SWEEP_LIMIT {
        return Err(Error::Capacity {
            what: "associativity triple sweep",
            needed: triples,
            limit: TRIPLE_SWEEP_LIMIT,
        });
    }
    let elems = raw_elements(l);
    for &a in &elems {
        for &b in &elems {
            let ab = l.mul_raw(a, b);
            for &c in &elems {
                if l.mul_raw(ab, c) != l.mul_raw(a, l.mul_raw(b, c)) {
                    return Ok(Some((
                        l.wrap(a.0, a.1),
                        l.wrap(b.0, b.1),
                        l.wrap(c.0, c.1),
                    )));
                }
            }
        }
    }
    Ok(None)
}

/// Whether the loop is a group (order-gated triple sweep).
pub fn is_associative(l: &CodeLoop) -> Result<bool> {
    Ok(associativity_witness(l)?.is_none())
}
