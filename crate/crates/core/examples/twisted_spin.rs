//! Twisted group algebras at group-like parameter points: confluence, the
//! 2-cocycle identity, power relations, recovery of the point up to
//! rescaling, and the Clifford realisation of the spin class.

use coxdeform::coxeter::CoxeterMatrix;
use coxdeform::exact::format_rational;
use coxdeform::flatness::{
    build_twisted_algebra, eta, sample_theta, theta_membership, verify_spin_numeric,
    z_orbit_witness, ThetaPoint,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, m) in [
        ("A3", CoxeterMatrix::type_a(3)),
        ("B3", CoxeterMatrix::type_b(3)),
    ] {
        let ones = ThetaPoint::ones(&m);
        let alg = build_twisted_algebra(&m, &ones).expect("unit point is admissible");
        println!(
            "{name}: dim {}, cocycle failure {:?}, power failure {:?}",
            alg.dimension(),
            alg.cocycle_failure(),
            alg.power_failure()
        );
        let t = sample_theta(&m, &mut rng);
        assert!(theta_membership(&t, &m));
        let alg = build_twisted_algebra(&m, &t).expect("sampled point is admissible");
        let back = eta(&alg, 0);
        let show = |p: &ThetaPoint| {
            p.entries()
                .iter()
                .map(|(&(i, j), v)| format!("t{}{} = {}", i + 1, j + 1, format_rational(v)))
                .collect::<Vec<_>>()
                .join(", ")
        };
        println!("  sampled   {}", show(&t));
        println!("  recovered {}", show(&back));
        match z_orbit_witness(&m, &t, &back) {
            Some(z) => {
                let zeta: Vec<String> = z.zeta.iter().map(format_rational).collect();
                println!("  rescaling zeta = [{}]", zeta.join(", "));
            }
            None => println!("  not in the rescaling orbit"),
        }
    }
    for n in 2..=6 {
        let report = verify_spin_numeric(&CoxeterMatrix::dihedral(n), 1e-9).unwrap();
        println!("Clifford check m = {n}: max deviation {:.1e}", report.max_deviation);
    }
}
