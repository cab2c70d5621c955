//! Property tests for the cross-module invariants. Each comparison uses a
//! route independent of the code under test where one exists.

use std::collections::BTreeMap;

use coxdeform::additive::{b_decomposition, SignedWordAlgebra};
use coxdeform::coxeter::{
    finite_rank3_order, CoxeterGroup, CoxeterMatrix, LengthBound, Order, Word, WordSolver,
};
use coxdeform::deform::{
    apply_z, dim_a_plus, dim_a_plus_upper_bound, ParameterPoint, ZElement,
};
use coxdeform::exact::Rational;
use coxdeform::flatness::{
    build_twisted_algebra, check_global_membership, sample_theta, theta_membership, ThetaPoint,
};
use coxdeform::hecke::{random_admissible, verify_freeness};
use coxdeform::ncalg::{buchberger, Dimension, FreeWord, NcPoly, Presentation};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_rational() -> impl Strategy<Value = Rational> {
    (1i64..=4, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| {
        Rational::new((if neg { -n } else { n }).into(), d.into())
    })
}

fn point_strategy(m: &CoxeterMatrix) -> impl Strategy<Value = ParameterPoint> {
    let m = m.clone();
    let sizes: Vec<(usize, usize, usize)> = m
        .finite_edges()
        .into_iter()
        .map(|(i, j, k)| (i, j, k as usize))
        .collect();
    let strat: Vec<_> = sizes
        .iter()
        .map(|&(_, _, k)| prop::collection::vec(small_rational(), k))
        .collect();
    strat.prop_map(move |vals| {
        let entries = sizes
            .iter()
            .zip(vals)
            .map(|(&(i, j, _), v)| ((i, j), v))
            .collect();
        ParameterPoint::new(&m, entries).expect("nonzero values")
    })
}

fn group_order(m: &CoxeterMatrix) -> u64 {
    CoxeterGroup::enumerate(m, LengthBound::All).unwrap().len() as u64
}

// ---- Coxeter groups ----

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent_and_class_constant(letters in prop::collection::vec(0usize..3, 0..=10)) {
        let m = CoxeterMatrix::type_b(3);
        let mut solver = WordSolver::new(&m);
        let x = solver.normal_form(&Word::new(letters)).unwrap();
        prop_assert_eq!(&solver.normal_form(x.word()).unwrap(), &x);
        for w in solver.reduced_words(&x).unwrap() {
            prop_assert_eq!(w.len(), x.length());
            prop_assert_eq!(&solver.normal_form(&w).unwrap(), &x);
        }
    }
}

#[test]
fn growth_is_palindromic_and_matches_closed_form() {
    let mut cases: Vec<((u32, u32, u32), CoxeterMatrix)> = (2..=6)
        .map(|n| ((2, 2, n), CoxeterMatrix::triangle(2, 2, n)))
        .collect();
    for (p, q, r) in [(2, 3, 3), (2, 3, 4), (2, 3, 5)] {
        cases.push(((p, q, r), CoxeterMatrix::triangle(p, q, r)));
    }
    for ((p, q, r), m) in cases {
        let g = CoxeterGroup::enumerate(&m, LengthBound::All).unwrap();
        let counts = g.growth().counts;
        let mut rev = counts.clone();
        rev.reverse();
        assert_eq!(counts, rev, "({p},{q},{r})");
        assert_eq!(g.len() as u64, finite_rank3_order(p, q, r).unwrap());
    }
}

// ---- noncommutative Gröbner bases ----

/// Dimension of the span of words of length at most `d` modulo the
/// two-sided multiples of the relations that stay within length `d`,
/// by plain Gaussian elimination.
fn brute_force_dimension(p: &Presentation, d: usize) -> usize {
    let gens = p.num_generators() as u16;
    let mut words: Vec<Vec<u16>> = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..gens {
                let mut v: Vec<u16> = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let index: BTreeMap<Vec<u16>, usize> =
        words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
    for r in &p.relations {
        let deg = r.degree().unwrap();
        for a in words.iter().filter(|a| a.len() + deg <= d) {
            for b in words.iter().filter(|b| a.len() + deg + b.len() <= d) {
                let mut row = BTreeMap::new();
                for (w, c) in r.terms() {
                    let full: Vec<u16> =
                        a.iter().chain(w.letters()).chain(b.iter()).copied().collect();
                    *row.entry(index[&full]).or_insert_with(Rational::zero) += c;
                }
                row.retain(|_, c: &mut Rational| !c.is_zero());
                rows.push(row);
            }
        }
    }
    // sparse elimination keyed by pivot column
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for mut row in rows {
        while let Some((&col, c)) = row.iter().next() {
            let Some(piv) = pivots.get(&col) else {
                let inv = c.recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                pivots.insert(col, row);
                break;
            };
            let c = c.clone();
            for (k, v) in piv {
                let e = row.entry(*k).or_insert_with(Rational::zero);
                *e -= &c * v;
            }
            row.retain(|_, v| !v.is_zero());
        }
    }
    words.len() - pivots.len()
}

fn gen(g: u16) -> NcPoly {
    NcPoly::generator(g)
}

fn constant(c: &Rational) -> NcPoly {
    NcPoly::constant(c.clone())
}

/// Quadratic-plus-braid presentation on two generators: dimension `2m`
/// when it is free.
fn dihedral_hecke(m: u32, u: &Rational, v: &Rational) -> Presentation {
    let quad = |g| &(&(&gen(g) * &gen(g)) - &(&constant(u) * &gen(g))) - &constant(v);
    let braid = |a, b| (0..m).fold(NcPoly::one(), |acc, k| &acc * &gen(if k % 2 == 0 { a } else { b }));
    Presentation::new(
        vec!["x".into(), "y".into()],
        vec![quad(0), quad(1), &braid(0, 1) - &braid(1, 0)],
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dimension_matches_brute_force(m in 2u32..=4, u in small_rational(), v in small_rational(), extra in prop::option::of(small_rational())) {
        let mut p = dihedral_hecke(m, &u, &v);
        if let Some(c) = extra {
            // x*y = c*y*x collapses the algebra for most c
            p.relations.push(&(&gen(0) * &gen(1)) - &(&constant(&c) * &(&gen(1) * &gen(0))));
        }
        let gb = buchberger(&p, 12);
        let Dimension::Finite(d) = gb.dimension() else {
            return Err(TestCaseError::fail("finite presentation did not complete"));
        };
        prop_assert!(d <= 12);
        prop_assert_eq!(brute_force_dimension(&p, m as usize + 4) as u64, d);
    }

    #[test]
    fn reduction_is_associative(a in prop::collection::vec(0u16..2, 0..6), b in prop::collection::vec(0u16..2, 0..6), c in prop::collection::vec(0u16..2, 0..6), u in small_rational(), v in small_rational()) {
        let p = dihedral_hecke(3, &u, &v);
        let gb = buchberger(&p, 12);
        let w = |s: &[u16]| NcPoly::word(FreeWord::from_slice(s));
        let (a, b, c) = (w(&a), w(&b), w(&c));
        let nf = |x: &NcPoly| gb.reduce(x);
        let left = nf(&(&nf(&(&a * &b)) * &c));
        let right = nf(&(&a * &nf(&(&b * &c))));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&left, &nf(&(&(&a * &b) * &c)));
    }

    #[test]
    fn completion_ignores_relation_order(u in small_rational(), v in small_rational(), rot in 0usize..3) {
        let p = dihedral_hecke(4, &u, &v);
        let mut q = p.clone();
        q.relations.rotate_left(rot);
        q.relations.swap(0, 2);
        let (g1, g2) = (buchberger(&p, 12), buchberger(&q, 12));
        prop_assert_eq!(g1.basis(), g2.basis());
        prop_assert_eq!(g1.standard_words(), g2.standard_words());
    }
}

// ---- deformed even-part algebras ----

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rank_two_is_always_flat(m in 2u32..=6, seed in any::<u64>()) {
        let cm = CoxeterMatrix::dihedral(m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = (0..m).map(|_| coxdeform::flatness::random_small_rational(&mut rng)).collect();
        let u = ParameterPoint::new(&cm, BTreeMap::from([((0, 1), t)])).unwrap();
        prop_assert_eq!(dim_a_plus(&cm, &u, None).unwrap(), Dimension::Finite(m as u64));
    }

    #[test]
    fn dimension_is_invariant_under_rescaling_and_edge_permutation(
        u in point_strategy(&CoxeterMatrix::triangle(2, 2, 3)),
        zeta in prop::collection::vec(small_rational(), 3),
        shift in 0usize..3,
    ) {
        let m = CoxeterMatrix::triangle(2, 2, 3);
        let base = dim_a_plus(&m, &u, None).unwrap();
        let Dimension::Finite(d) = base else {
            return Err(TestCaseError::fail("incomplete run"));
        };
        prop_assert!(d <= group_order(&m) / 2);

        let z = ZElement::new(zeta).unwrap();
        prop_assert_eq!(dim_a_plus(&m, &apply_z(&u, &z), None).unwrap(), base);

        let mut permuted = u.clone();
        for (&(i, j), t) in u.entries() {
            let mut t = t.clone();
            let k = shift % t.len();
            t.rotate_left(k);
            t.reverse();
            permuted.set_edge(i, j, t);
        }
        prop_assert_eq!(dim_a_plus(&m, &permuted, None).unwrap(), base);
    }

    #[test]
    fn modular_bound_dominates_on_rank_three(u in point_strategy(&CoxeterMatrix::type_a(3))) {
        let m = CoxeterMatrix::type_a(3);
        let bound = dim_a_plus_upper_bound(&m, &u, None).unwrap().expect("small parameters are units");
        let Dimension::Finite(b) = bound.dimension else {
            return Err(TestCaseError::fail("modular run incomplete"));
        };
        prop_assert!(b <= 12);
    }
}

// ---- group-like points and twisted algebras ----

fn theta_strategy(m: &CoxeterMatrix) -> impl Strategy<Value = ThetaPoint> {
    let m = m.clone();
    let edges: Vec<(usize, usize)> = m.finite_edges().into_iter().map(|(i, j, _)| (i, j)).collect();
    let n = edges.len();
    (any::<bool>(), any::<u64>(), prop::collection::vec(small_rational(), n)).prop_map(
        move |(on, seed, vals)| {
            if on {
                sample_theta(&m, &mut ChaCha8Rng::seed_from_u64(seed))
            } else {
                ThetaPoint::new(&m, edges.iter().copied().zip(vals).collect()).unwrap()
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theta_membership_matches_global_membership(t in theta_strategy(&CoxeterMatrix::type_b(3))) {
        let m = CoxeterMatrix::type_b(3);
        let global = check_global_membership(&m, &t.to_symmetric(&m)).unwrap();
        prop_assert_eq!(theta_membership(&t, &m), global.member);
    }

    #[test]
    fn twisted_algebras_are_cocycles(seed in any::<u64>(), which in 0usize..3) {
        let m = [CoxeterMatrix::type_a(3), CoxeterMatrix::type_b(3), CoxeterMatrix::dihedral(6)][which].clone();
        let t = sample_theta(&m, &mut ChaCha8Rng::seed_from_u64(seed));
        let alg = build_twisted_algebra(&m, &t).unwrap();
        prop_assert_eq!(alg.cocycle_failure(), None);
        prop_assert_eq!(alg.power_failure(), None);
        let one = Rational::one();
        for x in 0..alg.dimension() {
            prop_assert_eq!(alg.psi(0, x), &one);
            prop_assert_eq!(alg.psi(x, 0), &one);
        }
    }
}

// ---- Hecke-type algebras ----

#[test]
fn ordinary_hecke_draws_are_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for m in [CoxeterMatrix::type_a(2), CoxeterMatrix::type_a(3), CoxeterMatrix::type_b(3)] {
        for _ in 0..10 {
            let p = random_admissible(&m, &mut rng, true);
            assert!(p.f.values().flatten().all(Zero::is_zero));
            assert!(verify_freeness(&m, &p).unwrap().is_free());
        }
    }
}

#[test]
fn braid_deformed_draws_are_free() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let i5a1 = CoxeterMatrix::from_edges(3, &[(1, 2, Order::Finite(5))]).unwrap();
    for m in [
        CoxeterMatrix::type_a(2),
        CoxeterMatrix::type_a(3),
        CoxeterMatrix::type_b(3),
        i5a1,
        CoxeterMatrix::type_h3(),
    ] {
        for _ in 0..5 {
            let p = random_admissible(&m, &mut rng, false);
            let r = verify_freeness(&m, &p).unwrap();
            assert!(r.is_free(), "{:?}", r);
        }
    }
}

// ---- additive degeneration ----

#[test]
fn signed_tables_are_associative() {
    let i4a1 = CoxeterMatrix::from_edges(3, &[(1, 2, Order::Finite(4))]).unwrap();
    for m in [CoxeterMatrix::type_a(2), i4a1, CoxeterMatrix::type_b(3)] {
        let alg = SignedWordAlgebra::full(&m).unwrap();
        assert_eq!(alg.associativity_failure(), None);
    }
}

#[test]
fn decomposition_does_not_depend_on_base_vertex() {
    for m in [CoxeterMatrix::type_a(3), CoxeterMatrix::type_b(3)] {
        let dims: Vec<(u64, u64, bool)> = (0..m.rank())
            .map(|b| {
                let d = b_decomposition(&m, b).unwrap();
                (d.dim_b, d.dim_sum, d.direct_sum)
            })
            .collect();
        assert!(dims.windows(2).all(|w| w[0] == w[1]), "{dims:?}");
        assert_eq!(2 * dims[0].0, group_order(&m));
    }
}
