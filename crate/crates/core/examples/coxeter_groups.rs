//! Enumerates a few Coxeter groups and prints orders, growth counts and the
//! shapes of their rank-3 parabolic triangles.

use coxdeform::coxeter::{
    finite_rank3_order, triangle_type, triangles, CoxeterGroup, CoxeterMatrix, LengthBound,
};

fn show(name: &str, m: &CoxeterMatrix, bound: LengthBound) {
    let g = CoxeterGroup::enumerate(m, bound).expect("enumeration within the bound");
    let growth = g.growth().counts;
    let size = if g.is_complete() {
        format!("|W| = {}", g.len())
    } else {
        format!("{} elements up to the bound", g.len())
    };
    println!("{name}: {size}, growth {growth:?}");
    for delta in triangles(m) {
        let ty = triangle_type(m, delta).expect("valid triangle");
        println!("  triangle {delta:?}: {}", ty.tag());
    }
}

fn main() {
    show("A3", &CoxeterMatrix::type_a(3), LengthBound::All);
    show("B3", &CoxeterMatrix::type_b(3), LengthBound::All);
    show("H3", &CoxeterMatrix::type_h3(), LengthBound::All);
    show("affine A2", &CoxeterMatrix::affine_a(2), LengthBound::UpTo(6));
    show("(2,3,7)", &CoxeterMatrix::triangle(2, 3, 7), LengthBound::UpTo(6));
    for (p, q, r) in [(2, 3, 3), (2, 3, 4), (2, 3, 5), (2, 2, 6)] {
        println!(
            "closed form |W| for ({p},{q},{r}) = {}",
            finite_rank3_order(p, q, r).unwrap()
        );
    }
}
