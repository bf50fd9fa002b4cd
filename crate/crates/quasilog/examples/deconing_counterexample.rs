//! Freeness of a deconing does not lift to the cone: the affine arrangement
//! `x1 x2 (x1 + x2 + 1)` is free, but its cone picks up an extra factor of
//! the new coordinate in the determinant and fails the criterion.

use quasilog::logder::{
    affine_free_check, cone_derivation, coned_free_check, Derivation, MultiArrangement,
};
use quasilog::parse::parse_poly;
use quasilog::report::certificate_report;

fn main() {
    let p = |s: &str| parse_poly(s, 2, 2).unwrap();
    let arr = MultiArrangement::new(
        "deconing-fixture",
        vec![p("x1"), p("x2"), p("x1 + x2 + 1")],
        vec![1, 1, 1],
        false,
    );
    let t1 = Derivation {
        components: vec![p("x1*(x1 + 1)"), p("x1*x2")],
    };
    let t2 = Derivation {
        components: vec![p("x1*x2"), p("x2*(x2 + 1)")],
    };

    let affine = affine_free_check(&arr, &[t1.clone(), t2.clone()]);
    println!("affine check:\n{}", certificate_report(&affine));
    assert!(affine.verdict);

    let coned_field = cone_derivation(&t1);
    println!("coned first field: {}", coned_field.to_text());

    let coned = coned_free_check(&arr, &[t1, t2]);
    println!("coned check:\n{}", certificate_report(&coned));
    assert!(!coned.verdict);
    assert_eq!(coned.residual.unwrap().to_text(), "x3");
    println!("the cone is not free: the determinant carries an extra factor of the cone variable");
}
