//! Completes a small finitely presented algebra given in the text format and
//! reports its dimension, standard words and Hilbert function.

use coxdeform::ncalg::{
    buchberger, format_presentation, hilbert_function, parse_presentation, Dimension,
};

fn main() {
    // The group algebra of S3 on two involutions.
    let src = "gens: x, y; rel: x^2 - 1; rel: y^2 - 1; rel: x*y*x - y*x*y;";
    let p = parse_presentation(src).expect("well-formed presentation");
    print!("{}", format_presentation(&p));
    let gb = buchberger(&p, 8);
    println!("status {:?}, {} basis elements", gb.status(), gb.basis().len());
    match gb.dimension() {
        Dimension::Finite(d) => println!("dimension {d}"),
        other => println!("dimension {other:?}"),
    }
    let names = &p.names;
    let words: Vec<String> = gb
        .standard_words()
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.0.iter().map(|&g| names[g as usize].as_str()).collect::<Vec<_>>().join("")
            }
        })
        .collect();
    println!("standard words: {}", words.join(" "));

    // Its associated graded algebra: squares vanish, the braid relation stays.
    let graded =
        parse_presentation("gens: x, y; rel: x^2; rel: y^2; rel: x*y*x - y*x*y;").unwrap();
    println!("graded Hilbert function: {:?}", hilbert_function(&graded, 5).unwrap());
}
