//! The dihedral family in complex coordinates: the distinguished
//! quasi-invariants of fixed monomial support, the eigenvalue relation
//! under the primitive derivation, and the isotypic index selection.

use quasilog::cyclotomic::CycScalar;
use quasilog::primitive::{
    dihedral_admissible_indices, dihedral_isotypic_indices, dihedral_q, dihedral_session,
};

fn main() {
    for ell in [2u32, 3] {
        let s = dihedral_session(ell).unwrap();
        println!(
            "dihedral group of order {} in complex coordinates, conductor {}",
            2 * 2 * ell,
            s.group.conductor
        );
        println!(
            "  basic invariants: {} and {}",
            s.invariants.polys[0], s.invariants.polys[1]
        );
        for (m1, m2) in [(1u32, 1u32), (2, 1), (1, 0)] {
            let adm = dihedral_admissible_indices(&s, m1, m2);
            let iso = dihedral_isotypic_indices(&s, m1, m2);
            println!(
                "  multiplicity ({},{}): solvable indices {:?}, reflection-isotypic {:?}",
                m1, m2, adm, iso
            );
            // eigenvalue relation against the multiplicity lowered by one
            // on every orbit; the derivation image is only defined when the
            // starting multiplicity is positive everywhere
            if m1 >= 1 && m2 >= 1 {
                for &i in &adm {
                    let (q, p) = dihedral_q(&s, m1, m2, i).unwrap();
                    let (q_down, _) = dihedral_q(&s, m1 - 1, m2 - 1, i).unwrap();
                    let dq = s.invariants.apply(&q).unwrap();
                    let factor = CycScalar::from_int(
                        s.group.conductor,
                        ((m1 + m2) * ell) as i64 + i as i64,
                    );
                    assert_eq!(dq, q_down.scale(&factor));
                    assert_eq!(p, s.conj_poly(&q));
                }
                println!("    eigenvalue relation and conjugate symmetry: ok");
            }
        }
    }
}
