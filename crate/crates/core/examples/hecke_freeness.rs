//! Freeness of Hecke-type algebras with braid deformations: admissible
//! random parameters give rank |W|, a broken chain condition does not.

use coxdeform::coxeter::CoxeterMatrix;
use coxdeform::exact::int;
use coxdeform::hecke::{build_hecke_unchecked, freeness_of, random_admissible, verify_freeness};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, m) in [
        ("A2", CoxeterMatrix::type_a(2)),
        ("A3", CoxeterMatrix::type_a(3)),
        ("B3", CoxeterMatrix::type_b(3)),
        ("H3", CoxeterMatrix::type_h3()),
    ] {
        let p = random_admissible(&m, &mut rng, false);
        let r = verify_freeness(&m, &p).expect("admissible draw");
        println!("{name}: |W| = {}, dimension {:?}, free {}", r.group_order, r.dimension, r.is_free());
    }

    let m = CoxeterMatrix::type_a(3);
    let mut p = random_admissible(&m, &mut rng, false);
    p.f.insert((1, 2), vec![p.braid_parameter(0, 1, 1) + int(1)]);
    println!("A3 chain check rejects the edit: {:?}", p.validate(&m).err());
    let r = freeness_of(&m, &build_hecke_unchecked(&m, &p)).unwrap();
    println!("A3 with unequal first braid parameters: dimension {:?}", r.dimension);
}
