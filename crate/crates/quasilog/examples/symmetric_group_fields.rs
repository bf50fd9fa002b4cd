//! The symmetric-group basis fields from iterated integrals: construction
//! in ambient coordinates, restriction to the essential space, and the
//! determinant certificate.

use quasilog::group::{Family, MultFn, ReflectionGroup};
use quasilog::logder::{
    derivation_member, dm_arrangement, essentialize_symmetric, is_invariant_derivation,
    saito_check, symmetric_integral_basis, Derivation,
};
use quasilog::report::certificate_report;

fn main() {
    for rank in [2usize, 3] {
        println!("symmetric group on {} letters, multiplicity 1:", rank + 1);
        let ambient = symmetric_integral_basis(rank, 1);
        for (k, f) in ambient.iter().enumerate() {
            println!(
                "  field {}: component degrees {:?}",
                k,
                f.components
                    .iter()
                    .map(|c| c.degree().unwrap())
                    .collect::<Vec<_>>()
            );
        }
        // restriction to essential coordinates:
        // x_i = t_i for i <= rank, x_{rank+1} = -(t_1 + ... + t_rank)
        let g = ReflectionGroup::build(Family::A(rank)).unwrap();
        let m = MultFn::constant(&g, 1);
        let arr = dm_arrangement(&g, &m);
        let fields: Vec<Derivation> = ambient
            .iter()
            .map(|l| essentialize_symmetric(l, rank))
            .collect();
        for f in &fields {
            assert!(derivation_member(f, &arr).ok);
            assert!(is_invariant_derivation(&g, f));
        }
        let cert = saito_check(&arr, &fields);
        println!("{}", certificate_report(&cert));
        assert!(cert.verdict);
    }
}
