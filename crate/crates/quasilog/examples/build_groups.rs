//! Build the supported reflection group families and inspect their
//! hyperplanes, orbits, and graded invariant theory.

use quasilog::group::{Family, ReflectionGroup};
use quasilog::parse::parse_poly;

fn main() {
    for family in [
        Family::A(2),
        Family::B(2),
        Family::D(3),
        Family::I2(6),
        Family::G(3, 2),
    ] {
        let g = ReflectionGroup::build(family).unwrap();
        println!(
            "{}: order {}, rank {}, conductor {}, {} hyperplanes in {} orbit(s)",
            g.family,
            g.order(),
            g.rank,
            g.conductor,
            g.hyperplanes.len(),
            g.orbits.len()
        );
        for h in &g.hyperplanes {
            println!("  {}  (stabilizer order {}, orbit {})", h.alpha, h.order, h.orbit);
        }
    }

    // invariant theory of the rank-2 monomial group: Reynolds averaging and
    // graded invariant dimensions
    let g = ReflectionGroup::build(Family::G(3, 2)).unwrap();
    let p = parse_poly("x1^3", 2, g.conductor).unwrap();
    println!("\naverage of x1^3 over {}: {}", g.family, g.reynolds(&p));
    for d in 0..=6 {
        let basis = g.invariant_space(d);
        println!(
            "invariants of degree {}: dimension {}{}",
            d,
            basis.len(),
            if basis.is_empty() {
                String::new()
            } else {
                format!(
                    " ({})",
                    basis
                        .iter()
                        .map(|b| b.to_text())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            }
        );
    }
    assert_eq!(g.invariant_space(3).len(), 1);
    assert_eq!(g.invariant_space(6).len(), 2);
}
