//! The non-reduced Catalan pipeline: shifted quasi-invariants with integer,
//! half-integer and pair conditions, the difference-operator chain, the
//! induced-multiplicity comparison of leading terms, and the coned
//! certificate.

use quasilog::cyclotomic::CycScalar;
use quasilog::group::{Family, MultFn, ReflectionGroup};
use quasilog::logder::{bc_catalan, coned_free_check, free_basis_affine_greedy};
use quasilog::parse::parse_poly;
use quasilog::quasi::{
    bc_delta_params, bc_trig_quasi_space, delta_chain_check, is_bc_trig_quasi_invariant,
    leading_term_space, quasi_space, ChainOutcome,
};
use quasilog::report::certificate_report;

fn main() {
    let b2 = ReflectionGroup::build(Family::B(2)).unwrap();
    let (m1, m2, m3) = (1u32, 1u32, 1u32);

    let member = parse_poly(
        "3*x1^7 - 7*x1^5*x2^2 + (-35*x1^5 + 35*x1^3*x2^2 + 28*x1^3 - 7*x1*x2^2 - 5*x1)/4",
        2,
        b2.conductor,
    )
    .unwrap();
    assert!(is_bc_trig_quasi_invariant(&b2, m1, m2, m3, &member));
    println!("membership of the degree-7 generator: ok");

    // the coordinate-direction conditions in difference-chain form
    let (l, r) = bc_delta_params(m1, m2);
    let half_e1 = vec![
        CycScalar::fraction(b2.conductor, 1, 2),
        CycScalar::zero(b2.conductor),
    ];
    let x1 = parse_poly("x1", 2, b2.conductor).unwrap();
    let outcome = delta_chain_check(&member, &half_e1, &x1, l, r);
    println!(
        "difference chain with (l, r) = ({}, {}): {:?}",
        l, r, outcome
    );
    assert_eq!(outcome, ChainOutcome::Holds);

    // leading terms match the induced multiplicity (m1 + m2, m3)
    let gs = bc_trig_quasi_space(&b2, m1, m2, m3, 9);
    let gr = leading_term_space(&gs);
    let induced = MultFn::by_form_values(&b2, m3, &[(&x1, m1 + m2)]);
    println!("degree | gr dim | induced dim");
    for d in 0..=9usize {
        let a = gr.by_degree[d].len();
        let b = quasi_space(&b2, &induced, d).len();
        println!("{:>6} | {:>6} | {:>11}", d, a, b);
        assert_eq!(a, b);
    }

    let arr = bc_catalan(&b2, m1, m2, m3);
    println!(
        "\nnon-reduced Catalan arrangement with {} affine hyperplanes",
        arr.forms.len()
    );
    let (fields, affine_cert) = free_basis_affine_greedy(&b2, &gs, &arr, 9).unwrap();
    assert!(affine_cert.verdict);
    let coned = coned_free_check(&arr, &fields);
    println!("coned certificate:\n{}", certificate_report(&coned));
    assert!(coned.verdict);
    assert_eq!(coned.exponents, vec![1, 7, 9]);
}
