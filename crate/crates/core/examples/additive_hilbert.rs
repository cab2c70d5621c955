//! The additive degeneration: Hilbert functions against h(z)/(1+z), the
//! decomposition of the graded algebra, and the two presentations of the
//! group algebra.

use coxdeform::additive::{b_decomposition, compare_hilbert, lemma_addmult_mult};
use coxdeform::coxeter::CoxeterMatrix;

fn main() {
    for (name, m, n) in [
        ("A3", CoxeterMatrix::type_a(3), 6),
        ("B3", CoxeterMatrix::type_b(3), 9),
        ("affine A2", CoxeterMatrix::affine_a(2), 6),
        ("(2,3,7)", CoxeterMatrix::triangle(2, 3, 7), 6),
    ] {
        let c = compare_hilbert(&m, 0, n).expect("hilbert function");
        println!("{name}: computed {:?}, expected {:?}, equal {}", c.computed, c.expected, c.matches());
    }
    for (name, m) in [("A3", CoxeterMatrix::type_a(3)), ("B3", CoxeterMatrix::type_b(3))] {
        let d = b_decomposition(&m, 0).unwrap();
        println!(
            "{name}: dim B = {}, dim s0 B = {}, direct {}, |W| = {}",
            d.dim_b, d.dim_s0_b, d.direct_sum, d.group_order
        );
        let a = lemma_addmult_mult(&m).unwrap();
        println!(
            "{name}: difference presentation {:?}, chart presentation {:?}",
            a.difference_dim, a.chart_dim
        );
    }
}
