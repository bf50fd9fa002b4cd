//! Freeness of the reflection multiarrangements with multiplicities
//! `m n + 1` and `m n`: quasi-invariant transport, greedy generator
//! selection, and the determinant certificate.

use quasilog::group::{Family, MultFn, ReflectionGroup};
use quasilog::logder::{free_basis_dm, free_basis_dtilde};
use quasilog::quasi::vector_quasi_space;
use quasilog::report::certificate_report;

fn main() {
    let g = ReflectionGroup::build(Family::G(3, 2)).unwrap();
    let m = MultFn::constant(&g, 1);

    // the m n case is generated in a single degree by vector-valued
    // quasi-invariants
    let generators = vector_quasi_space(&g, &m, 6);
    println!("vector-valued generators at degree 6:");
    for e in &generators {
        println!(
            "  ({}) e1 + ({}) e2",
            e.components[0], e.components[1]
        );
    }
    assert_eq!(generators.len(), 2);

    let tilde = free_basis_dtilde(&g, &m).unwrap();
    println!("\n{}", certificate_report(&tilde));
    assert!(tilde.verdict);
    assert_eq!(tilde.exponents, vec![6, 6]);

    let cert = free_basis_dm(&g, &m, 11).unwrap();
    println!("{}", certificate_report(&cert));
    assert!(cert.verdict);
    assert_eq!(cert.exponents, vec![7, 10]);

    // degree bookkeeping: the exponent sums match the multiplicity weights
    let weight = g.mult_weight(&m);
    assert_eq!(tilde.exponents.iter().sum::<usize>(), weight);
    assert_eq!(
        cert.exponents.iter().sum::<usize>(),
        weight + g.hyperplanes.len()
    );
    println!(
        "exponent sums: {} and {} = {} + {} hyperplanes",
        weight,
        weight + g.hyperplanes.len(),
        weight,
        g.hyperplanes.len()
    );
}
