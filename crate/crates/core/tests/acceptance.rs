//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. Each criterion is exact unless stated, and
//! its wall-clock budget is part of the check.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use coxdeform::additive::{b_decomposition, compare_hilbert, lemma_addmult_mult};
use coxdeform::coxeter::{
    enumerate, finite_rank3_order, parabolic_index, triangle_type, CoxeterGroup, CoxeterMatrix,
    LengthBound, Order, TriangleType,
};
use coxdeform::deform::{flatness_by_dimension, DimensionVerdict, ParameterPoint};
use coxdeform::exact::{int, LaurentPoly};
use coxdeform::flatness::{
    build_twisted_algebra, check_global_membership, coefficients_from_eigenvalues, eta,
    lemma_components, sample_off_locus, sample_theta, theta_membership, tilde_equations,
    verify_spin_numeric, z_orbit_witness, ThetaPoint,
};
use coxdeform::hecke::{build_hecke_unchecked, freeness_of, random_admissible, verify_freeness};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// The seven finite triangle shapes with the orders of their even subgroups.
const SHAPES: [(TriangleType, u64); 7] = [
    (TriangleType::Dihedral(2), 4),
    (TriangleType::Dihedral(3), 6),
    (TriangleType::Dihedral(4), 8),
    (TriangleType::Dihedral(5), 10),
    (TriangleType::E233, 12),
    (TriangleType::E234, 24),
    (TriangleType::E235, 60),
];

const DRAWS: usize = 5;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group_order(m: &CoxeterMatrix) -> u64 {
    CoxeterGroup::enumerate(m, LengthBound::All)
        .expect("finite group")
        .len() as u64
}

/// Per-point budget for the dimension computations.
fn point_budget(ty: TriangleType) -> Duration {
    match ty {
        TriangleType::E235 => Duration::from_secs(300),
        _ => Duration::from_secs(60),
    }
}

fn timed_verdict(
    m: &CoxeterMatrix,
    u: &ParameterPoint,
    ty: TriangleType,
) -> Result<DimensionVerdict, String> {
    let start = Instant::now();
    let v = flatness_by_dimension(m, u, None).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(took <= point_budget(ty), || {
        format!("{}: one point took {took:?}", ty.tag())
    })?;
    Ok(v)
}

fn group_sizes() -> Outcome {
    let mut cases = vec![
        (CoxeterMatrix::type_a(3), 24),
        (CoxeterMatrix::type_b(3), 48),
        (CoxeterMatrix::type_h3(), 120),
    ];
    for n in 2..=6u32 {
        let m = CoxeterMatrix::from_edges(3, &[(1, 2, Order::Finite(n))]).unwrap();
        cases.push((m, 4 * n as u64));
    }
    for (m, want) in &cases {
        let (elements, growth) = enumerate(m, LengthBound::All).map_err(|e| e.to_string())?;
        ensure(elements.len() as u64 == *want && growth.total() == *want, || {
            format!("enumerated {} elements, expected {want}", elements.len())
        })?;
        let (p, q, r) = triangle_type(m, [0, 1, 2])
            .map_err(|e| e.to_string())?
            .orders()
            .ok_or("finite triangle reported infinite")?;
        let closed = finite_rank3_order(p, q, r).map_err(|e| e.to_string())?;
        ensure(closed == *want, || {
            format!("closed form gives {closed} for ({p},{q},{r}), expected {want}")
        })?;
    }
    Ok(format!("{} groups", cases.len()))
}

fn flatness_positive() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut points = 0;
    for (ty, even) in SHAPES {
        for comp in lemma_components(ty).map_err(|e| e.to_string())? {
            let m = comp.matrix();
            ensure(group_order(&m) == 2 * even, || format!("{}: |W+| mismatch", ty.tag()))?;
            for _ in 0..DRAWS {
                let u = comp.sample(&mut rng);
                let v = timed_verdict(&m, &u, ty)?;
                ensure(v == DimensionVerdict::Flat { dimension: even }, || {
                    format!("{} {:?}: {v:?}, expected dimension {even}", ty.tag(), comp.kind)
                })?;
                points += 1;
            }
        }
    }
    Ok(format!("{points} component points flat"))
}

fn flatness_negative() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut points = 0;
    for (ty, even) in SHAPES {
        let m = lemma_components(ty).map_err(|e| e.to_string())?[0].matrix();
        for _ in 0..DRAWS {
            let u = sample_off_locus(&m, &mut rng);
            match timed_verdict(&m, &u, ty)? {
                DimensionVerdict::NotFlat { dimension, .. } if dimension < even => points += 1,
                v => return Err(format!("{}: off-locus point gave {v:?}", ty.tag())),
            }
        }
    }
    Ok(format!("{points} off-locus points non-flat"))
}

fn symbolic_containment() -> Outcome {
    let mut checked = 0;
    for (ty, _) in SHAPES {
        let eqs = tilde_equations(ty).map_err(|e| e.to_string())?;
        let (p, q, _) = ty.orders().unwrap();
        let (p, q) = (p as usize, q as usize);
        for comp in lemma_components(ty).map_err(|e| e.to_string())? {
            for t in comp.symbolic_points() {
                // the third edge polynomial is read from the reversed edge
                let inv: Vec<LaurentPoly> = t[p + q..]
                    .iter()
                    .map(|x| x.pow(-1).expect("monomial coordinates"))
                    .collect();
                let c = coefficients_from_eigenvalues(&t[..p], &t[p..p + q], &inv);
                for e in &eqs {
                    ensure(e.holds(&c), || format!("{} {:?}: {e}", ty.tag(), comp.kind))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} identities"))
}

fn exponent_cross_check() -> Outcome {
    let listed: BTreeMap<(u32, u32, u32), (u64, u64, u64)> = BTreeMap::from([
        ((2, 3, 5), (30, 20, 12)),
        ((2, 3, 4), (12, 8, 6)),
        ((2, 3, 3), (6, 4, 4)),
        ((2, 2, 2), (2, 2, 2)),
        ((2, 2, 3), (3, 3, 2)),
        ((2, 2, 4), (4, 4, 2)),
        ((2, 2, 5), (5, 5, 2)),
    ]);
    for (ty, _) in SHAPES {
        let (p, q, r) = ty.orders().unwrap();
        let m = CoxeterMatrix::triangle(p, q, r);
        let index = |a, b| parabolic_index(&m, [0, 1, 2], (a, b)).map_err(|e| e.to_string());
        let indices = (index(0, 1)?, index(1, 2)?, index(0, 2)?);
        ensure(listed[&(p, q, r)] == indices, || {
            format!("({p},{q},{r}): parabolic indices {indices:?}")
        })?;
        let constants: Vec<_> = tilde_equations(ty)
            .map_err(|e| e.to_string())?
            .iter()
            .filter_map(|e| e.constant_exponents(p, q, r))
            .map(|(a, b, c)| (a as u64, b as u64, c as u64))
            .collect();
        ensure(constants == vec![indices], || {
            format!("({p},{q},{r}): constant equations {constants:?}, indices {indices:?}")
        })?;
    }
    Ok("7 shapes".into())
}

fn rank_four() -> Outcome {
    let m = CoxeterMatrix::type_a(4);
    let ones = ParameterPoint::ones(&m);
    let v = check_global_membership(&m, &ones.to_symmetric()).map_err(|e| e.to_string())?;
    ensure(v.member, || "t = 1 rejected on A4".into())?;
    let d = flatness_by_dimension(&m, &ones, None).map_err(|e| e.to_string())?;
    ensure(d == DimensionVerdict::Flat { dimension: 60 }, || {
        format!("t = 1 on A4 gave {d:?}")
    })?;

    let mut bent = ones.clone();
    bent.set_edge(0, 1, vec![int(1), int(-1), int(-1)]);
    let v = check_global_membership(&m, &bent.to_symmetric()).map_err(|e| e.to_string())?;
    let failing: Vec<[usize; 3]> = v.failing().map(|t| t.vertices).collect();
    ensure(!v.member && failing == vec![[1, 2, 3]], || {
        format!("perturbed point fails triangles {failing:?}")
    })?;
    match flatness_by_dimension(&m, &bent, None).map_err(|e| e.to_string())? {
        DimensionVerdict::NotFlat { dimension, prime } if dimension < 60 => Ok(format!(
            "dim 60 at t = 1; perturbed dim {dimension}{}",
            if prime.is_some() { " (modular bound)" } else { "" }
        )),
        other => Err(format!("perturbed point gave {other:?}")),
    }
}

fn theta_and_cocycles() -> Outcome {
    let mut all = vec![
        CoxeterMatrix::type_a(1),
        CoxeterMatrix::type_a(2),
        CoxeterMatrix::type_a(3),
        CoxeterMatrix::type_a(4),
        CoxeterMatrix::type_b(3),
        CoxeterMatrix::type_h3(),
        CoxeterMatrix::affine_a(2),
        CoxeterMatrix::triangle(2, 3, 7),
        CoxeterMatrix::from_edges(3, &[(1, 2, Order::Infinite), (2, 3, Order::Finite(3))])
            .unwrap(),
    ];
    all.extend((2..=8).map(CoxeterMatrix::dihedral));
    for m in &all {
        ensure(theta_membership(&ThetaPoint::ones(m), m), || {
            format!("t = 1 rejected for rank {} matrix", m.rank())
        })?;
    }
    for (name, m) in [
        ("A3", CoxeterMatrix::type_a(3)),
        ("B3", CoxeterMatrix::type_b(3)),
        ("H3", CoxeterMatrix::type_h3()),
    ] {
        let alg = build_twisted_algebra(&m, &ThetaPoint::ones(&m)).map_err(|e| e.to_string())?;
        ensure(alg.dimension() as u64 * 2 == group_order(&m), || {
            format!("{name}: twisted algebra has dimension {}", alg.dimension())
        })?;
        ensure(alg.cocycle_failure().is_none(), || format!("{name}: cocycle identity fails"))?;
        ensure(alg.power_failure().is_none(), || format!("{name}: power relation fails"))?;
    }
    Ok(format!("{} matrices accept t = 1; A3, B3, H3 cocycles verified", all.len()))
}

fn eta_inversion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (name, m) in [("A3", CoxeterMatrix::type_a(3)), ("B3", CoxeterMatrix::type_b(3))] {
        for _ in 0..DRAWS {
            let t = sample_theta(&m, &mut rng);
            let alg = build_twisted_algebra(&m, &t).map_err(|e| e.to_string())?;
            let back = eta(&alg, 0);
            ensure(z_orbit_witness(&m, &t, &back).is_some(), || {
                format!("{name}: recovered point outside the rescaling orbit of {}", t.to_json())
            })?;
        }
    }
    Ok(format!("{} points on A3 and B3", 2 * DRAWS))
}

fn spin_numeric() -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=6 {
        let r = verify_spin_numeric(&CoxeterMatrix::dihedral(n), 1e-9).map_err(|e| e.to_string())?;
        worst = worst.max(r.max_deviation);
    }
    Ok(format!("max deviation {worst:.1e}"))
}

fn hecke_freeness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut draws = 0;
    for (name, m, order) in [
        ("A2", CoxeterMatrix::type_a(2), 6),
        ("A3", CoxeterMatrix::type_a(3), 24),
        ("B3", CoxeterMatrix::type_b(3), 48),
    ] {
        for k in 0..DRAWS + 1 {
            // the first draw has every braid parameter zero
            let p = random_admissible(&m, &mut rng, k == 0);
            let r = verify_freeness(&m, &p).map_err(|e| e.to_string())?;
            ensure(r.group_order == order && r.is_free(), || {
                format!("{name}: {:?} with independence {}", r.dimension, r.independent)
            })?;
            draws += 1;
        }
    }
    let m = CoxeterMatrix::type_a(3);
    let mut p = random_admissible(&m, &mut rng, false);
    let shifted = p.braid_parameter(0, 1, 1) + int(1);
    p.f.insert((1, 2), vec![shifted]);
    ensure(p.validate(&m).is_err(), || "chain violation not detected".into())?;
    let r = freeness_of(&m, &build_hecke_unchecked(&m, &p)).map_err(|e| e.to_string())?;
    match r.dimension {
        coxdeform::ncalg::Dimension::Finite(d) if d < 24 => {
            Ok(format!("{draws} admissible draws free; chain violation gives dim {d}"))
        }
        other => Err(format!("chain violation gave {other:?}")),
    }
}

fn additive_hilbert() -> Outcome {
    let literal: BTreeMap<&str, Vec<u64>> =
        BTreeMap::from([("A2", vec![1, 1, 1]), ("A3", vec![1, 2, 3, 3, 2, 1])]);
    for (name, m, top) in [
        ("A2", CoxeterMatrix::type_a(2), 3),
        ("A3", CoxeterMatrix::type_a(3), 6),
        ("B3", CoxeterMatrix::type_b(3), 9),
        ("H3", CoxeterMatrix::type_h3(), 15),
    ] {
        let c = compare_hilbert(&m, 0, top).map_err(|e| e.to_string())?;
        ensure(c.matches(), || {
            format!("{name}: computed {:?}, expected {:?}", c.computed, c.expected)
        })?;
        let total: u64 = c.computed.iter().sum();
        ensure(2 * total == group_order(&m), || format!("{name}: total {total}"))?;
        if let Some(want) = literal.get(name) {
            let nonzero: Vec<u64> = c.computed.iter().copied().filter(|&x| x > 0).collect();
            ensure(&nonzero == want, || format!("{name}: {nonzero:?}, listed {want:?}"))?;
        }
    }
    for (name, m) in [
        ("affine A2", CoxeterMatrix::affine_a(2)),
        ("(2,3,7)", CoxeterMatrix::triangle(2, 3, 7)),
    ] {
        let c = compare_hilbert(&m, 0, 6).map_err(|e| e.to_string())?;
        ensure(c.matches(), || {
            format!("{name}: computed {:?}, expected {:?}", c.computed, c.expected)
        })?;
    }
    for (name, m) in [("A3", CoxeterMatrix::type_a(3)), ("B3", CoxeterMatrix::type_b(3))] {
        let d = b_decomposition(&m, 0).map_err(|e| e.to_string())?;
        ensure(d.fills_algebra() && 2 * d.dim_b == d.group_order, || {
            format!("{name}: {d:?}")
        })?;
    }
    Ok("A2, A3, B3, H3 full; affine A2, (2,3,7) to degree 6; B + s0 B on A3, B3".into())
}

fn presentation_equivalence() -> Outcome {
    for (name, m) in [
        ("A2", CoxeterMatrix::type_a(2)),
        ("I2(4)", CoxeterMatrix::dihedral(4)),
        ("B3", CoxeterMatrix::type_b(3)),
    ] {
        let r = lemma_addmult_mult(&m).map_err(|e| e.to_string())?;
        ensure(r.holds(), || format!("{name}: {r:?}"))?;
    }
    Ok("A2, I2(4), B3".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 12] = [
        ("group sizes", group_sizes, 10),
        ("flatness on lemma components", flatness_positive, 7 * 300),
        ("non-flatness off the locus", flatness_negative, 7 * 300),
        ("symbolic containment", symbolic_containment, 10),
        ("constant exponents are parabolic indices", exponent_cross_check, 1),
        ("rank-4 membership and dimension", rank_four, 600),
        ("group-like points and cocycles", theta_and_cocycles, 300),
        ("recovery up to rescaling", eta_inversion, 60),
        ("Clifford power identity", spin_numeric, 1),
        ("Hecke freeness", hecke_freeness, 300),
        ("additive Hilbert functions", additive_hilbert, 600),
        ("two presentations of the group algebra", presentation_equivalence, 120),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if took > Duration::from_secs(*budget) {
                Err(format!("{detail}, but over the {budget} s budget"))
            } else {
                Ok(detail)
            }
        });
        let (mark, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {mark} {name}: {detail} ({:.2} s)",
            k + 1,
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
