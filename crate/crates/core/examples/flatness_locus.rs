//! Samples points on every known flat component of each finite triangle,
//! plus one point off the locus, and decides flatness by dimension.
//!
//! Run with `cargo run --release --example flatness_locus [seed]`.

use std::time::Instant;

use coxdeform::coxeter::TriangleType;
use coxdeform::deform::flatness_by_dimension;
use coxdeform::flatness::{lemma_components, sample_off_locus};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = [
        TriangleType::Dihedral(2),
        TriangleType::Dihedral(3),
        TriangleType::Dihedral(4),
        TriangleType::Dihedral(5),
        TriangleType::E233,
        TriangleType::E234,
        TriangleType::E235,
    ];
    for ty in shapes {
        let comps = lemma_components(ty).expect("finite shape");
        for comp in &comps {
            let u = comp.sample(&mut rng);
            let start = Instant::now();
            let v = flatness_by_dimension(&comp.matrix(), &u, None).expect("finite group");
            println!(
                "{:>4} {:<11} {:?}  ({:.2}s)",
                ty.tag(),
                format!("{:?}", comp.kind),
                v,
                start.elapsed().as_secs_f64()
            );
        }
        let m = comps[0].matrix();
        let u = sample_off_locus(&m, &mut rng);
        let start = Instant::now();
        let v = flatness_by_dimension(&m, &u, None).expect("finite group");
        println!(
            "{:>4} {:<11} {:?}  ({:.2}s)",
            ty.tag(),
            "off locus",
            v,
            start.elapsed().as_secs_f64()
        );
    }
}
