//! K. Saito's primitive derivation: basic invariants, the Jacobian
//! certificate, lowering of quasi-invariants, and the per-degree rank table
//! of the induced map between isotypic components.

use quasilog::group::{Family, MultFn, ReflectionGroup};
use quasilog::linalg::span_rank;
use quasilog::logder::{derivation_member, dm_arrangement, dm_invariant_slice};
use quasilog::poly::monomials;
use quasilog::primitive::{basic_invariants, nabla_d, nabla_d_inverse};
use quasilog::quasi::{is_quasi_invariant, quasi_isotypic, quasi_space};

fn main() {
    let g = ReflectionGroup::build(Family::B(2)).unwrap();
    let bi = basic_invariants(&g).unwrap();
    println!(
        "basic invariant degrees {:?}; Jacobian {}",
        bi.degrees, bi.jacobian
    );
    assert_eq!(bi.degrees, vec![2, 4]);

    let m = MultFn::constant(&g, 1);
    let m_down = m.minus_one();
    let chi = g.char_dual_reflection();
    let top = bi.top_degree();

    println!("\nlowering check and rank table up to degree 12:");
    println!("degree | dim source | dim target | image rank");
    for d in 0..=12usize {
        for p in quasi_space(&g, &m, d) {
            let image = bi.apply(&p).expect("polynomial image");
            assert!(is_quasi_invariant(&g, &m_down, &image).ok);
        }
        let source = quasi_isotypic(&g, &m, d, &chi);
        let target = if d >= top {
            quasi_isotypic(&g, &m_down, d - top, &chi)
        } else {
            Vec::new()
        };
        let rank = if source.is_empty() {
            0
        } else {
            let mons = monomials(g.rank, d - top);
            let rows: Vec<_> = source
                .iter()
                .map(|p| bi.apply(p).unwrap().coeff_vector(&mons))
                .collect();
            span_rank(&rows, g.conductor)
        };
        println!(
            "{:>6} | {:>10} | {:>10} | {:>10}",
            d,
            source.len(),
            target.len(),
            rank
        );
        assert_eq!(source.len(), target.len());
        assert_eq!(rank, source.len());
    }

    // the componentwise connection maps the invariant module slices one
    // multiplicity down, and the linear solve inverts it
    let slice = dm_invariant_slice(&g, &m, 5);
    let d0 = dm_arrangement(&g, &MultFn::constant(&g, 0));
    for theta in &slice {
        let image = nabla_d(&bi, theta).unwrap();
        assert!(derivation_member(&image, &d0).ok);
        let back = nabla_d_inverse(&bi, &image, &slice).unwrap();
        assert_eq!(&back, theta);
    }
    println!("\nconnection round trip on {} fields: ok", slice.len());
}
