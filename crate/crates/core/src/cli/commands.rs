use std::collections::BTreeMap;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::report::{RunReport, Stopwatch};
use super::CliError;
use crate::additive::{
    b_decomposition, build_a_tau_plus, compare_hilbert, check_spanning_words, lemma_addmult_mult,
    phi0_check,
};
use crate::coxeter::{
    is_finite, triangle_type, triangles, CoxeterGroup, CoxeterMatrix, LengthBound, TriangleType,
};
use crate::deform::{
    build_a_tilde_plus, default_degree_cap, flatness_by_dimension, DimensionVerdict, EdgeRecord,
    ParameterPoint, SymmetricPoint,
};
use crate::exact::rational::serde_q;
use crate::exact::{format_rational, Rational};
use crate::flatness::{
    build_twisted_with, check_global_membership, eta, lemma_components, matches_presentation,
    sample_off_locus, sample_theta, theta_membership, theta_torus, z_orbit_witness,
    BraidRewriting, ThetaPoint,
};
use crate::hecke::{
    build_hecke_unchecked, freeness_of, random_admissible, verify_freeness, HeckeParams,
};
use crate::ncalg::buchberger;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn load_matrix(path: &Path) -> Result<CoxeterMatrix, CliError> {
    CoxeterMatrix::parse_config(&read(path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// A vertex given by name or by 1-based position.
pub fn resolve_vertex(m: &CoxeterMatrix, v: &str) -> Result<usize, CliError> {
    if let Some(i) = m.index_of(v) {
        return Ok(i);
    }
    match v.parse::<usize>() {
        Ok(i) if (1..=m.rank()).contains(&i) => Ok(i - 1),
        _ => Err(CliError::Usage(format!("unknown vertex {v:?}"))),
    }
}

/// Seeded generator for draw `index`, independent of scheduling.
pub fn draw_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn matrix_input(path: &Path, m: &CoxeterMatrix) -> Value {
    json!({ "matrix": path.display().to_string(), "vertices": m.names() })
}

pub fn cmd_coxeter(path: &Path, max_length: usize, sw: &mut Stopwatch) -> Result<RunReport, CliError> {
    let m = load_matrix(path)?;
    let mut report = RunReport::new("coxeter", matrix_input(path, &m));
    let finite = is_finite(&m);
    let orders: Vec<Value> = (0..m.rank())
        .flat_map(|i| (i + 1..m.rank()).map(move |j| (i, j)))
        .map(|(i, j)| {
            json!({
                "edge": [m.name(i), m.name(j)],
                "m": m.m(i, j).map_or(json!("inf"), |k| json!(k)),
            })
        })
        .collect();
    report.dimension("orders", orders);
    report.dimension("finite", finite);
    let bound = if finite {
        LengthBound::All
    } else {
        LengthBound::UpTo(max_length)
    };
    let g = sw
        .time("enumerate", || CoxeterGroup::enumerate(&m, bound))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if finite {
        report.dimension("order", g.len());
        report.dimension("even_order", g.even_indices().len());
    }
    report.dimension("growth", g.growth().counts);
    let tri: Vec<Value> = triangles(&m)
        .into_iter()
        .map(|d| {
            let ty = triangle_type(&m, d).expect("valid triangle");
            json!({ "vertices": d.map(|v| m.name(v).to_string()), "type": ty.tag(), "finite": ty.is_finite() })
        })
        .collect();
    report.dimension("triangles", tri);
    if finite {
        let growth_total: u64 = g.growth().counts.iter().sum();
        report.verdict("growth sums to order", growth_total == g.len() as u64, Value::Null);
    }
    Ok(report)
}

/// Parsed point file: eigenvalue records (`t`) or symmetric records (`e`).
pub enum PointFile {
    Eigen(ParameterPoint),
    Symmetric(SymmetricPoint),
}

pub fn load_point(m: &CoxeterMatrix, path: &Path) -> Result<PointFile, CliError> {
    let text = read(path)?;
    let recs: Vec<EdgeRecord> = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let bad = |e: crate::deform::DeformError| CliError::Usage(format!("{}: {e}", path.display()));
    if recs.iter().all(|r| r.t.is_some()) {
        Ok(PointFile::Eigen(ParameterPoint::from_records(m, &recs).map_err(bad)?))
    } else {
        Ok(PointFile::Symmetric(SymmetricPoint::from_records(m, &recs).map_err(bad)?))
    }
}

fn even_order(m: &CoxeterMatrix) -> Option<u64> {
    CoxeterGroup::enumerate(m, LengthBound::All)
        .ok()
        .map(|g| g.even_indices().len() as u64)
}

pub fn cmd_flatness(
    matrix: &Path,
    point: &Path,
    with_dimension: bool,
    sw: &mut Stopwatch,
) -> Result<RunReport, CliError> {
    let m = load_matrix(matrix)?;
    let p = load_point(&m, point)?;
    let mut inputs = matrix_input(matrix, &m);
    inputs["point"] = json!(point.display().to_string());
    let mut report = RunReport::new("flatness", inputs);
    let e = match &p {
        PointFile::Eigen(u) => u.to_symmetric(),
        PointFile::Symmetric(e) => e.clone(),
    };
    let verdict = sw
        .time("membership", || check_global_membership(&m, &e))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    report.dimension("member", verdict.member);
    report.dimension("triangles", &verdict.triangles);
    if !(with_dimension && is_finite(&m)) {
        return Ok(report);
    }
    let target = even_order(&m).expect("finite group");
    report.dimension("even_order", target);
    let flat = match &p {
        PointFile::Eigen(u) => {
            let v = sw
                .time("dimension", || flatness_by_dimension(&m, u, None))
                .map_err(|e| CliError::Usage(e.to_string()))?;
            report.dimension("dimension", v);
            match v {
                DimensionVerdict::Flat { .. } => Some(true),
                DimensionVerdict::NotFlat { .. } => Some(false),
                DimensionVerdict::Inconclusive => None,
            }
        }
        PointFile::Symmetric(e) => {
            let cap = default_degree_cap(&m).map_err(|e| CliError::Usage(e.to_string()))?;
            let d = sw.time("dimension", || buchberger(&build_a_tilde_plus(&m, e), cap).dimension());
            report.dimension("dimension", d);
            d.finite().map(|d| d == target)
        }
    };
    match flat {
        Some(f) => report.verdict(
            "membership agrees with dimension",
            f == verdict.member,
            json!({ "member": verdict.member, "flat": f }),
        ),
        None => report.verdict("dimension conclusive", false, Value::Null),
    }
    Ok(report)
}

fn load_theta(m: &CoxeterMatrix, path: Option<&Path>) -> Result<ThetaPoint, CliError> {
    match path {
        None => Ok(ThetaPoint::ones(m)),
        Some(p) => ThetaPoint::from_json(m, &read(p)?)
            .map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
    }
}

fn theta_value(t: &ThetaPoint) -> Value {
    serde_json::from_str(&t.to_json()).expect("valid json")
}

pub fn cmd_theta(
    matrix: &Path,
    point: Option<&Path>,
    draws: usize,
    seed: u64,
    sw: &mut Stopwatch,
) -> Result<RunReport, CliError> {
    let m = load_matrix(matrix)?;
    let mut inputs = matrix_input(matrix, &m);
    inputs["point"] = json!(point.map(|p| p.display().to_string()));
    inputs["draws"] = json!(draws);
    let mut report = RunReport::new("theta", inputs);
    report.seed = Some(seed);
    let par = theta_torus(&m);
    report.dimension("free_parameters", par.free.len());
    report.dimension("sign_parameters", par.signs.len());
    let t = load_theta(&m, point)?;
    let member = theta_membership(&t, &m);
    report.dimension("member", member);
    if !is_finite(&m) || draws == 0 {
        return Ok(report);
    }
    let rw = sw
        .time("rewriting", || BraidRewriting::new(&m))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    report.verdict(
        "rewriting confluent at the given point iff member",
        rw.confluence_failure(&t).is_none() == member,
        Value::Null,
    );
    let failures: Vec<Value> = sw.time("draws", || {
        (0..draws)
            .into_par_iter()
            .filter_map(|i| {
                let s = sample_theta(&m, &mut draw_rng(seed, i));
                let ok = theta_membership(&s, &m) && rw.confluence_failure(&s).is_none();
                (!ok).then(|| json!({ "draw": i, "point": theta_value(&s) }))
            })
            .collect()
    });
    report.verdict(
        format!("{draws} sampled points are members with confluent rewriting"),
        failures.is_empty(),
        if failures.is_empty() { Value::Null } else { json!(failures) },
    );
    Ok(report)
}

pub fn cmd_twisted(
    matrix: &Path,
    point: Option<&Path>,
    base: Option<&str>,
    check_presentation: bool,
    sw: &mut Stopwatch,
) -> Result<RunReport, CliError> {
    let m = load_matrix(matrix)?;
    let mut inputs = matrix_input(matrix, &m);
    inputs["point"] = json!(point.map(|p| p.display().to_string()));
    let mut report = RunReport::new("twisted", inputs);
    let t = load_theta(&m, point)?;
    let base = base.map(|b| resolve_vertex(&m, b)).transpose()?.unwrap_or(0);
    let rw = sw
        .time("rewriting", || BraidRewriting::new(&m))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    report.dimension("loops", rw.loops().len());
    let alg = match sw.time("build", || build_twisted_with(rw, &t)) {
        Ok(a) => a,
        Err(e) => {
            report.verdict("twisted algebra defined at the point", false, json!(e.to_string()));
            return Ok(report);
        }
    };
    report.dimension("dimension", alg.dimension());
    let cocycle = sw.time("cocycle", || alg.cocycle_failure());
    report.verdict(
        "2-cocycle identity on all triples",
        cocycle.is_none(),
        json!(cocycle),
    );
    let power = alg.power_failure();
    report.verdict("a_ij^m = (-1)^(m+1) t_ij", power.is_none(), json!(power));
    let recovered = sw.time("eta", || eta(&alg, base));
    let witness = z_orbit_witness(&m, &t, &recovered);
    report.verdict(
        "recovered point lies in the rescaling orbit",
        witness.is_some(),
        json!({
            "recovered": theta_value(&recovered),
            "zeta": witness.map(|z| z.zeta.iter().map(format_rational).collect::<Vec<_>>()),
        }),
    );
    if check_presentation {
        let ok = sw
            .time("presentation", || matches_presentation(&alg, None))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        report.verdict("structure constants match the presented algebra", ok, Value::Null);
    }
    Ok(report)
}

pub fn cmd_hecke(
    matrix: &Path,
    params: Option<&Path>,
    draws: usize,
    seed: u64,
    ordinary: bool,
    sw: &mut Stopwatch,
) -> Result<RunReport, CliError> {
    let m = load_matrix(matrix)?;
    let mut inputs = matrix_input(matrix, &m);
    inputs["params"] = json!(params.map(|p| p.display().to_string()));
    inputs["draws"] = json!(draws);
    inputs["ordinary"] = json!(ordinary);
    let mut report = RunReport::new("hecke", inputs);
    report.seed = Some(seed);
    if !is_finite(&m) {
        return Err(CliError::Usage("freeness checks need a finite group".into()));
    }
    if let Some(path) = params {
        let p = HeckeParams::from_json(&m, &read(path)?)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        match p.validate(&m) {
            Ok(()) => {
                let r = sw
                    .time("freeness", || verify_freeness(&m, &p))
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                report.dimension("given", r);
                report.verdict("given parameters: free of rank |W|", r.is_free(), Value::Null);
            }
            Err(e) => {
                let r = sw
                    .time("freeness", || freeness_of(&m, &build_hecke_unchecked(&m, &p)))
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                report.dimension("given", r);
                report.verdict("given parameters admissible", false, json!(e.to_string()));
            }
        }
    }
    let results: Vec<_> = sw.time("draws", || {
        (0..draws)
            .into_par_iter()
            .map(|i| {
                let p = random_admissible(&m, &mut draw_rng(seed, i), ordinary);
                (verify_freeness(&m, &p), p)
            })
            .collect()
    });
    if draws > 0 {
        let mut failures = Vec::new();
        for (i, (r, p)) in results.iter().enumerate() {
            match r {
                Ok(r) if r.is_free() => {}
                other => failures.push(json!({
                    "draw": i,
                    "result": format!("{other:?}"),
                    "params": serde_json::from_str::<Value>(&p.to_json()).expect("valid json"),
                })),
            }
        }
        report.dimension(
            "group_order",
            results
                .iter()
                .find_map(|(r, _)| r.as_ref().ok().map(|r| r.group_order)),
        );
        report.verdict(
            format!("{draws} admissible draws are free of rank |W|"),
            failures.is_empty(),
            if failures.is_empty() { Value::Null } else { json!(failures) },
        );
    }
    Ok(report)
}

pub fn cmd_additive_hilbert(
    matrix: &Path,
    degree: usize,
    base: Option<&str>,
    sw: &mut Stopwatch,
) -> Result<RunReport, CliError> {
    let m = load_matrix(matrix)?;
    let base = base.map(|b| resolve_vertex(&m, b)).transpose()?.unwrap_or(0);
    let mut inputs = matrix_input(matrix, &m);
    inputs["degree"] = json!(degree);
    inputs["base"] = json!(m.name(base));
    let mut report = RunReport::new("additive hilbert", inputs);
    let cmp = sw
        .time("hilbert", || compare_hilbert(&m, base, degree))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    report.dimension("computed", &cmp.computed);
    report.dimension("expected", &cmp.expected);
    report.verdict("hilbert function equals h(z)/(1+z)", cmp.matches(), Value::Null);
    let span = sw
        .time("spanning words", || check_spanning_words(&m, base, degree))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    report.dimension("spanning_words", &span.counts);
    report.verdict("spanning words form a basis", span.is_basis(), Value::Null);
    Ok(report)
}

pub fn cmd_additive_decompose(
    matrix: &Path,
    base: Option<&str>,
    sw: &mut Stopwatch,
) -> Result<RunReport, CliError> {
    let m = load_matrix(matrix)?;
    let base = base.map(|b| resolve_vertex(&m, b)).transpose()?.unwrap_or(0);
    let mut inputs = matrix_input(matrix, &m);
    inputs["base"] = json!(m.name(base));
    let mut report = RunReport::new("additive decompose", inputs);
    let phi = sw
        .time("phi0", || phi0_check(&m, base, 0))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    report.verdict("difference relations vanish in the graded algebra", phi, Value::Null);
    let d = sw
        .time("decomposition", || b_decomposition(&m, base))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    report.dimension("decomposition", &d);
    report.verdict(
        "graded algebra is B + s_0 B, direct, with dim B = |W|/2",
        d.fills_algebra() && 2 * d.dim_b == d.group_order,
        Value::Null,
    );
    Ok(report)
}

pub fn cmd_additive_addmult(matrix: &Path, sw: &mut Stopwatch) -> Result<RunReport, CliError> {
    let m = load_matrix(matrix)?;
    let mut report = RunReport::new("additive addmult", matrix_input(matrix, &m));
    let r = sw
        .time("groebner", || lemma_addmult_mult(&m))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    report.dimension("presentations", r);
    report.verdict("both presentations have dimension |W|", r.holds(), Value::Null);
    Ok(report)
}

#[derive(serde::Deserialize)]
struct TauRecord {
    edge: [usize; 2],
    #[serde(with = "serde_q::vec")]
    tau: Vec<Rational>,
}

/// Exploratory: standard-word counts by length at a user-supplied `tau`.
pub fn cmd_additive_tau(
    matrix: &Path,
    tau: &Path,
    degree: usize,
    base: Option<&str>,
    sw: &mut Stopwatch,
) -> Result<RunReport, CliError> {
    let m = load_matrix(matrix)?;
    let base = base.map(|b| resolve_vertex(&m, b)).transpose()?.unwrap_or(0);
    let recs: Vec<TauRecord> = serde_json::from_str(&read(tau)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", tau.display())))?;
    let mut values = BTreeMap::new();
    for r in recs {
        let [a, b] = r.edge;
        if a == 0 || b == 0 || a > m.rank() || b > m.rank() || a == b {
            return Err(CliError::Usage(format!("bad edge {:?}", r.edge)));
        }
        let (i, j) = (a - 1, b - 1);
        // tau_{ji,k} = -tau_{ij,-k}; only the multiset enters the relation
        let v = if i < j {
            r.tau
        } else {
            r.tau.iter().map(|x| -x).collect()
        };
        values.insert((i.min(j), i.max(j)), v);
    }
    let mut inputs = matrix_input(matrix, &m);
    inputs["tau"] = json!(tau.display().to_string());
    inputs["degree"] = json!(degree);
    let mut report = RunReport::new("additive tau", inputs);
    let ap = build_a_tau_plus(&m, base, &values).map_err(|e| CliError::Usage(e.to_string()))?;
    let cap = degree.max(ap.presentation.max_degree());
    let gb = sw.time("groebner", || buchberger(&ap.presentation, cap));
    report.dimension("standard_words_by_length", gb.counts_by_length(degree));
    report.dimension("complete", gb.is_complete());
    Ok(report)
}

/// Which points a sweep samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepTarget {
    Group,
    Spin,
    OffLocus,
}

pub fn cmd_sweep(
    orders: (u32, u32, u32),
    target: SweepTarget,
    draws: usize,
    seed: u64,
    sw: &mut Stopwatch,
) -> Result<RunReport, CliError> {
    use crate::coxeter::Order;
    use crate::flatness::ComponentKind;
    let (p, q, r) = orders;
    let ty = TriangleType::from_orders([Order::Finite(p), Order::Finite(q), Order::Finite(r)]);
    if !ty.is_finite() {
        return Err(CliError::Usage(format!("({p},{q},{r}) is not a finite triangle")));
    }
    let mut report = RunReport::new(
        "sweep",
        json!({ "triangle": ty.tag(), "target": format!("{target:?}"), "draws": draws }),
    );
    report.seed = Some(seed);
    let components: Vec<_> = lemma_components(ty)
        .map_err(|e| CliError::Usage(e.to_string()))?
        .into_iter()
        .filter(|c| match target {
            SweepTarget::Group => c.kind == ComponentKind::GroupLemma,
            SweepTarget::Spin => c.kind == ComponentKind::SpinLemma,
            SweepTarget::OffLocus => false,
        })
        .collect();
    let (cp, cq, cr) = ty.orders().expect("finite");
    let m = CoxeterMatrix::triangle(cp, cq, cr);
    if target != SweepTarget::OffLocus && components.is_empty() {
        report.dimension("components", 0);
        return Ok(report);
    }
    report.dimension("components", components.len());
    let expect_flat = target != SweepTarget::OffLocus;
    let outcomes: Vec<(ParameterPoint, Result<DimensionVerdict, String>)> = sw.time("draws", || {
        (0..draws)
            .into_par_iter()
            .map(|i| {
                let mut rng = draw_rng(seed, i);
                let u = if expect_flat {
                    components[i % components.len()].sample(&mut rng)
                } else {
                    sample_off_locus(&m, &mut rng)
                };
                let v = flatness_by_dimension(&m, &u, None).map_err(|e| e.to_string());
                (u, v)
            })
            .collect()
    });
    let flat = outcomes
        .iter()
        .filter(|(_, v)| v.as_ref().is_ok_and(|v| v.is_flat()))
        .count();
    report.dimension("flat", flat);
    report.dimension("draws", draws);
    let witnesses: Vec<Value> = outcomes
        .iter()
        .enumerate()
        .filter(|(_, (_, v))| {
            !v.as_ref()
                .is_ok_and(|v| if expect_flat { v.is_flat() } else { v.is_not_flat() })
        })
        .map(|(i, (u, v))| {
            json!({
                "draw": i,
                "verdict": format!("{v:?}"),
                "point": serde_json::from_str::<Value>(&u.to_json()).expect("valid json"),
            })
        })
        .collect();
    report.verdict(
        if expect_flat {
            "every draw is flat"
        } else {
            "every draw is certified non-flat"
        },
        witnesses.is_empty(),
        if witnesses.is_empty() { Value::Null } else { json!(witnesses) },
    );
    if let Some(n) = even_order(&m) {
        report.dimension("even_order", n);
    }
    Ok(report)
}
