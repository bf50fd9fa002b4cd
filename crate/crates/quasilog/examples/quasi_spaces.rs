//! Graded quasi-invariant spaces: dimension tables, membership witnesses,
//! and the isotypic component of the dual reflection representation.

use quasilog::group::{Family, MultFn, ReflectionGroup};
use quasilog::parse::parse_poly;
use quasilog::quasi::{c_v, is_quasi_invariant, quasi_isotypic, quasi_space};

fn main() {
    let g = ReflectionGroup::build(Family::G(3, 2)).unwrap();
    let m = MultFn::constant(&g, 1);
    let chi = g.char_dual_reflection();

    println!(
        "group {} with constant multiplicity 1; lowest isotypic degree {}",
        g.family,
        c_v(&g, &m).unwrap()
    );
    println!("degree | dim Q | dim isotypic");
    for d in 0..=10 {
        let q = quasi_space(&g, &m, d);
        let iso = quasi_isotypic(&g, &m, d, &chi);
        println!("{:>6} | {:>5} | {:>12}", d, q.len(), iso.len());
    }

    let member = parse_poly("x1^7 - 7*x1^4*x2^3", 2, g.conductor).unwrap();
    let w = is_quasi_invariant(&g, &m, &member);
    println!("\nx1^7 - 7*x1^4*x2^3 member: {}", w.ok);
    assert!(w.ok);

    let not_member = parse_poly("x1^7 + x1^6*x2", 2, g.conductor).unwrap();
    let w = is_quasi_invariant(&g, &m, &not_member);
    println!("x1^7 + x1^6*x2 member: {}", w.ok);
    for (h, attained, required) in &w.failures {
        println!(
            "  fails at hyperplane {} ({}): attained exponent {} of {}",
            h, g.hyperplanes[*h].alpha, attained, required
        );
    }
    assert!(!w.ok);

    // the isotypic slice at degree 7 is two-dimensional
    let basis = quasi_isotypic(&g, &m, 7, &chi);
    println!("\nisotypic basis at degree 7:");
    for b in &basis {
        println!("  {}", b);
    }
    assert_eq!(basis.len(), 2);
}
