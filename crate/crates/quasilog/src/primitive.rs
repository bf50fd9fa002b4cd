//! Basic invariants, the Jacobian, the primitive derivation computed through
//! the determinant formula, its action on quasi-invariants, the connection
//! it induces on invariant derivation modules, and the dihedral family of
//! quasi-invariants in complex coordinates.

use crate::cyclotomic::CycScalar;
use crate::error::Error;
use crate::group::{Family, MultFn, ReflectionGroup};
use crate::linalg::ScalarMatrix;
use crate::logder::Derivation;
use crate::poly::{monomials, MPoly, Monomial, PolyMatrix};
use crate::quasi::divisibility_rows;

/// Homogeneous algebraically independent generators of the invariant ring,
/// with the derived data the primitive derivation needs.
#[derive(Clone, Debug)]
pub struct BasicInvariants {
    pub polys: Vec<MPoly>,
    pub degrees: Vec<usize>,
    pub jacobian: MPoly,
    /// True when the top degree is attained only once; the primitive
    /// derivation is canonical (up to scale) exactly then.
    pub top_degree_unique: bool,
    /// Signed last-row cofactors of the derivation matrix, so applying the
    /// primitive derivation is one dot product and one exact division.
    cofactors: Vec<MPoly>,
}

impl BasicInvariants {
    /// Validate a hand-picked generating set and precompute the Jacobian
    /// data. The Jacobian must be a nonzero constant multiple of
    /// `prod alpha_H^(n_H - 1)`.
    pub fn from_polys(group: &ReflectionGroup, polys: Vec<MPoly>) -> Result<Self, Error> {
        let n = group.rank;
        assert_eq!(polys.len(), n);
        for p in &polys {
            assert!(group.is_invariant_poly(p), "generators must be invariant");
            assert!(p.is_homogeneous());
        }
        let degrees: Vec<usize> = polys.iter().map(|p| p.degree().unwrap()).collect();
        let mut sorted = degrees.clone();
        sorted.sort_unstable();
        assert_eq!(degrees, sorted, "generators must come in nondecreasing degree");
        let grad = |p: &MPoly| -> Vec<MPoly> { (0..n).map(|j| p.partial_var(j)).collect() };
        let jac_rows: Vec<Vec<MPoly>> = polys.iter().map(grad).collect();
        let jacobian = PolyMatrix::from_rows(jac_rows.clone()).det();
        if jacobian.is_zero() {
            return Err(Error::Other(
                "candidate invariants are algebraically dependent".into(),
            ));
        }
        // Jacobian factorization certificate
        let mut rem = jacobian.clone();
        for h in &group.hyperplanes {
            rem = rem
                .div_linear_power(&h.alpha, h.order - 1)
                .map_err(|_| Error::Other("Jacobian misses a reflection factor".into()))?;
        }
        if rem.degree() != Some(0) {
            return Err(Error::Other(
                "Jacobian has degree above the reflection product".into(),
            ));
        }
        let top_degree_unique = n == 1 || degrees[n - 1] > degrees[n - 2];
        // signed cofactors along the formal last row of the derivation matrix
        let cofactors: Vec<MPoly> = (0..n)
            .map(|j| {
                if n == 1 {
                    return MPoly::one(n, group.conductor);
                }
                let minor_rows: Vec<Vec<MPoly>> = jac_rows[..n - 1]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let d = PolyMatrix::from_rows(minor_rows).det();
                if (n - 1 + j) % 2 == 0 {
                    d
                } else {
                    -&d
                }
            })
            .collect();
        let bi = BasicInvariants {
            polys,
            degrees,
            jacobian,
            top_degree_unique,
            cofactors,
        };
        // the derivation must send the top generator to 1 and the others to 0
        if bi.top_degree_unique {
            for (i, y) in bi.polys.iter().enumerate() {
                let image = bi.apply(y)?;
                let want = if i + 1 == n {
                    MPoly::one(n, group.conductor)
                } else {
                    MPoly::zero(n, group.conductor)
                };
                assert_eq!(image, want, "primitive derivation on generator {}", i);
            }
        }
        Ok(bi)
    }

    /// Apply the primitive derivation: expand the operator determinant along
    /// its last row and divide exactly by the Jacobian.
    pub fn apply(&self, p: &MPoly) -> Result<MPoly, Error> {
        if !self.top_degree_unique {
            return Err(Error::RepeatedTopDegree);
        }
        let n = self.polys.len();
        let cond = p.conductor();
        let mut acc = MPoly::zero(n, cond);
        for (j, cof) in self.cofactors.iter().enumerate() {
            if !cof.is_zero() {
                acc = &acc + &(cof * &p.partial_var(j));
            }
        }
        acc.div_exact(&self.jacobian).ok_or(Error::NotPolynomial)
    }

    pub fn top_degree(&self) -> usize {
        *self.degrees.last().unwrap()
    }
}

/// Greedy lowest-degree choice of basic invariants with exact
/// algebraic-independence tests; deterministic because the candidate basis
/// at each degree is canonical.
pub fn basic_invariants(group: &ReflectionGroup) -> Result<BasicInvariants, Error> {
    let n = group.rank;
    let cond = group.conductor;
    let mut chosen: Vec<MPoly> = Vec::new();
    let mut degrees: Vec<usize> = Vec::new();
    let cap = group.order().max(4);
    let mut d = 1usize;
    while chosen.len() < n {
        if d > cap {
            return Err(Error::Other(format!(
                "no generating set of {} invariants found up to degree {}",
                n, cap
            )));
        }
        let candidates = group.invariant_space(d);
        if candidates.is_empty() {
            d += 1;
            continue;
        }
        // span of products of the already-chosen generators in degree d
        let mons = monomials(n, d);
        let mut span_rows: Vec<Vec<CycScalar>> = Vec::new();
        for exps in weighted_exponents(&degrees, d) {
            let mut prod = MPoly::one(n, cond);
            for (y, &e) in chosen.iter().zip(&exps) {
                prod = &prod * &y.pow(e);
            }
            span_rows.push(prod.coeff_vector(&mons));
        }
        let mut rank = crate::linalg::span_rank(&span_rows, cond);
        for cand in candidates {
            if chosen.len() == n {
                break;
            }
            span_rows.push(cand.coeff_vector(&mons));
            let new_rank = crate::linalg::span_rank(&span_rows, cond);
            if new_rank == rank {
                span_rows.pop();
                continue;
            }
            // exact independence test on gradients
            let mut trial = chosen.clone();
            trial.push(cand.clone());
            if gradient_rank_full(&trial, n) {
                rank = new_rank;
                chosen.push(cand);
                degrees.push(d);
            } else {
                span_rows.pop();
            }
        }
        d += 1;
    }
    BasicInvariants::from_polys(group, chosen)
}

/// Exponent vectors with `sum exps[i] * weights[i] = target`.
fn weighted_exponents(weights: &[usize], target: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; weights.len()];
    fn rec(
        weights: &[usize],
        target: usize,
        pos: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == weights.len() {
            if target == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[pos];
        let mut e = 0;
        while e * w <= target {
            cur[pos] = e;
            rec(weights, target - e * w, pos + 1, cur, out);
            e += 1;
        }
        cur[pos] = 0;
    }
    if !weights.is_empty() {
        rec(weights, target, 0, &mut cur, &mut out);
    }
    out
}

/// Generic rank of the gradient matrix equals the number of polynomials:
/// search the square minors for a nonzero determinant.
fn gradient_rank_full(polys: &[MPoly], nvars: usize) -> bool {
    let k = polys.len();
    let rows: Vec<Vec<MPoly>> = polys
        .iter()
        .map(|p| (0..nvars).map(|j| p.partial_var(j)).collect())
        .collect();
    let mut cols: Vec<usize> = (0..k).collect();
    loop {
        let minor: Vec<Vec<MPoly>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        if !PolyMatrix::from_rows(minor).det().is_zero() {
            return true;
        }
        // next combination of k columns out of nvars
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if cols[i] + (k - i) < nvars {
                cols[i] += 1;
                for j in i + 1..k {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Componentwise primitive derivation on a vector field.
pub fn nabla_d(bi: &BasicInvariants, theta: &Derivation) -> Result<Derivation, Error> {
    let components = theta
        .components
        .iter()
        .map(|c| bi.apply(c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Derivation { components })
}

/// Solve `nabla_D(sum c_i candidates_i) = target` exactly over the scalars;
/// the candidates are a basis of the expected graded slice.
pub fn nabla_d_inverse(
    bi: &BasicInvariants,
    target: &Derivation,
    candidates: &[Derivation],
) -> Result<Derivation, Error> {
    let degree = target.degree().unwrap_or(0) + bi.top_degree();
    if candidates.is_empty() {
        return Err(Error::ConnectionSolve {
            degree,
            reason: "empty candidate slice".into(),
        });
    }
    let n = target.nvars();
    let cond = target.components[0].conductor();
    let images = candidates
        .iter()
        .map(|c| nabla_d(bi, c))
        .collect::<Result<Vec<_>, _>>()?;
    let mons = monomials(n, target.degree().unwrap_or(0));
    let vec_of = |l: &Derivation| -> Vec<CycScalar> {
        let mut v = Vec::new();
        for c in &l.components {
            v.extend(c.coeff_vector(&mons));
        }
        v
    };
    let cols: Vec<Vec<CycScalar>> = images.iter().map(vec_of).collect();
    let mat = ScalarMatrix::from_rows(cols, cond).transpose();
    let rhs = vec_of(target);
    let coeffs = mat.solve(&rhs).ok_or_else(|| Error::ConnectionSolve {
        degree,
        reason: "target not in the image of the connection".into(),
    })?;
    let mut out = Derivation::zero(n, cond);
    for (c, cand) in coeffs.iter().zip(candidates) {
        if !c.is_zero() {
            for i in 0..n {
                out.components[i] = &out.components[i] + &cand.components[i].scale(c);
            }
        }
    }
    Ok(out)
}

/// Dihedral group of order `4 ell` realized in complex coordinates
/// `(z, zbar)`, with the standard basic invariants and the linear bridge to
/// the real form.
pub struct DihedralSession {
    pub ell: u32,
    pub group: ReflectionGroup,
    pub invariants: BasicInvariants,
    /// Orbit carrying the first multiplicity value: the image of the real
    /// hyperplane `x1 = 0`, whose complex form is `z + zbar`.
    pub orbit_m1: usize,
    /// Rows of the substitution from complex to real coordinates:
    /// `z = x1 + i x2, zbar = x1 - i x2`.
    pub complex_to_real: Vec<Vec<CycScalar>>,
}

pub fn dihedral_session(ell: u32) -> Result<DihedralSession, Error> {
    assert!(ell >= 2);
    let k = 2 * ell;
    let cond = num::integer::lcm(2 * k, 4);
    let zeta = CycScalar::zeta_pow(cond, (cond / k) as i64);
    let zero = CycScalar::zero(cond);
    let one = CycScalar::one(cond);
    // rotation z -> zeta z, zbar -> zeta^{-1} zbar; reflection swapping them
    let rot = ScalarMatrix::from_rows(
        vec![
            vec![zeta.clone(), zero.clone()],
            vec![zero.clone(), zeta.inv()],
        ],
        cond,
    );
    let swap = ScalarMatrix::from_rows(
        vec![
            vec![zero.clone(), one.clone()],
            vec![one.clone(), zero.clone()],
        ],
        cond,
    );
    let group = ReflectionGroup::from_generators(
        Family::Custom(format!("I2_{}_complex", k)),
        cond,
        vec![rot, swap],
        None,
        crate::group::DEFAULT_ORDER_CAP,
    )?;
    assert_eq!(group.order(), 2 * k as usize);
    // y1 = z zbar, y2 = (z^{2 ell} + zbar^{2 ell}) / (2 ell)
    let z = MPoly::var(2, cond, 0);
    let zb = MPoly::var(2, cond, 1);
    let y1 = &z * &zb;
    let y2 = (&z.pow(k as usize) + &zb.pow(k as usize))
        .scale(&CycScalar::fraction(cond, 1, k as i64));
    let invariants = BasicInvariants::from_polys(&group, vec![y1, y2])?;
    let orbit_m1 = group
        .orbit_of_form(&(&z + &zb))
        .expect("z + zbar is a reflection hyperplane");
    let i_unit = CycScalar::zeta_pow(cond, (cond / 4) as i64);
    let complex_to_real = vec![
        vec![one.clone(), i_unit.clone()],
        vec![one.clone(), -&i_unit],
    ];
    Ok(DihedralSession {
        ell,
        group,
        invariants,
        orbit_m1,
        complex_to_real,
    })
}

impl DihedralSession {
    pub fn mult_fn(&self, m1: u32, m2: u32) -> MultFn {
        let mut vals = vec![m2; self.group.orbits.len()];
        vals[self.orbit_m1] = m1;
        MultFn::by_orbit(&self.group, vals)
    }

    /// Complex conjugation on polynomials in `(z, zbar)`: swap the
    /// variables and conjugate the coefficients.
    pub fn conj_poly(&self, p: &MPoly) -> MPoly {
        let mut out = MPoly::zero(2, self.group.conductor);
        for (mon, c) in p.terms() {
            let swapped = Monomial(vec![mon.0[1], mon.0[0]]);
            out = &out + &MPoly::from_term(2, swapped, c.conj());
        }
        out
    }
}

/// The distinguished quasi-invariant pair of monomial support
/// `z^((|m|-s) ell + i) zbar^(ell s)` with unit leading coefficient, solved
/// from the membership conditions; the admissible index set depends on the
/// parity of `|m| = m1 + m2` and is probed by solvability.
pub fn dihedral_q(
    session: &DihedralSession,
    m1: u32,
    m2: u32,
    i: usize,
) -> Result<(MPoly, MPoly), Error> {
    let ell = session.ell as usize;
    assert!(i >= 1 && i < 2 * ell && i != ell, "index must avoid ell");
    let group = &session.group;
    let cond = group.conductor;
    let mm = (m1 + m2) as usize;
    let support: Vec<Monomial> = (0..=mm)
        .map(|s| Monomial(vec![((mm - s) * ell + i) as u16, (ell * s) as u16]))
        .collect();
    let basis: Vec<MPoly> = support
        .iter()
        .map(|mon| MPoly::from_term(2, mon.clone(), CycScalar::one(cond)))
        .collect();
    let m = session.mult_fn(m1, m2);
    // conditions on sum_s a_s basis_s with a_0 = 1
    let mut rows: Vec<Vec<CycScalar>> = Vec::new();
    for h in &group.hyperplanes {
        let need = m.value(h) as usize * h.order;
        if need == 0 {
            continue;
        }
        let diffs: Vec<MPoly> = basis
            .iter()
            .map(|p| p - &group.act_on_poly(h.s_index, p))
            .collect();
        rows.extend(divisibility_rows(&diffs, &h.alpha, need, cond));
    }
    let err = || Error::InadmissibleDihedralIndex { index: i, m1, m2 };
    let q = if mm == 0 {
        basis[0].clone()
    } else {
        // move the a_0 column to the right-hand side
        let lhs: Vec<Vec<CycScalar>> = rows.iter().map(|r| r[1..].to_vec()).collect();
        let rhs: Vec<CycScalar> = rows.iter().map(|r| -&r[0]).collect();
        let mat = ScalarMatrix::from_rows(lhs, cond);
        if mat.rank() < mm {
            return Err(err()); // solution would not be unique
        }
        let sol = mat.solve(&rhs).ok_or_else(err)?;
        let mut q = basis[0].clone();
        for (a, b) in sol.iter().zip(&basis[1..]) {
            if !a.is_zero() {
                q = &q + &b.scale(a);
            }
        }
        q
    };
    debug_assert!(crate::quasi::is_quasi_invariant(group, &m, &q).ok);
    let p = session.conj_poly(&q);
    debug_assert!(crate::quasi::is_quasi_invariant(group, &m, &p).ok);
    Ok((q, p))
}

/// Indices `1 <= i < 2 ell, i != ell` for which the distinguished
/// quasi-invariant exists, probed by solving.
pub fn dihedral_admissible_indices(session: &DihedralSession, m1: u32, m2: u32) -> Vec<usize> {
    let ell = session.ell as usize;
    (1..2 * ell)
        .filter(|&i| i != ell && dihedral_q(session, m1, m2, i).is_ok())
        .collect()
}

/// The subset of solvable indices whose pair spans a copy of the
/// reflection representation, decided by the rotation eigenvalue of the
/// solved quasi-invariant. The set depends only on the parity of
/// `|m| = m1 + m2`.
pub fn dihedral_isotypic_indices(session: &DihedralSession, m1: u32, m2: u32) -> Vec<usize> {
    let ell = session.ell as usize;
    let cond = session.group.conductor;
    let rot = session.group.generators[0];
    let zeta = CycScalar::zeta_pow(cond, (cond / (2 * ell as u32)) as i64);
    dihedral_admissible_indices(session, m1, m2)
        .into_iter()
        .filter(|&i| {
            let (q, _) = dihedral_q(session, m1, m2, i).expect("index is solvable");
            let image = session.group.act_on_poly(rot, &q);
            // q is a rotation eigenvector; it spans V when the eigenvalue is
            // a primitive one of the rotation matrix
            [zeta.clone(), zeta.inv()]
                .iter()
                .any(|lambda| image == q.scale(lambda))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;
    use crate::logder::{derivation_member, dm_arrangement, dm_invariant_slice};
    use crate::parse::parse_poly;
    use crate::quasi::{is_quasi_invariant, quasi_space};

    #[test]
    fn basic_invariants_g312() {
        let g = ReflectionGroup::build(Family::G(3, 2)).unwrap();
        let bi = basic_invariants(&g).unwrap();
        assert_eq!(bi.degrees, vec![3, 6]);
        assert!(bi.top_degree_unique);
        // the stated generators are admissible: x1^3 + x2^3 and x1^3 x2^3
        let y1 = parse_poly("x1^3 + x2^3", 2, 6).unwrap();
        let y2 = parse_poly("x1^3*x2^3", 2, 6).unwrap();
        let explicit = BasicInvariants::from_polys(&g, vec![y1.clone(), y2.clone()]).unwrap();
        assert_eq!(explicit.degrees, vec![3, 6]);
        // D(y2) = 1, D(y1) = 0 for that choice
        assert_eq!(explicit.apply(&y2).unwrap(), MPoly::one(2, 6));
        assert!(explicit.apply(&y1).unwrap().is_zero());
    }

    #[test]
    fn basic_invariants_degrees_by_family() {
        let b2 = ReflectionGroup::build(Family::B(2)).unwrap();
        assert_eq!(basic_invariants(&b2).unwrap().degrees, vec![2, 4]);
        let i26 = ReflectionGroup::build(Family::I2(6)).unwrap();
        assert_eq!(basic_invariants(&i26).unwrap().degrees, vec![2, 6]);
        let a2 = ReflectionGroup::build(Family::A(2)).unwrap();
        assert_eq!(basic_invariants(&a2).unwrap().degrees, vec![2, 3]);
        let b3 = ReflectionGroup::build(Family::B(3)).unwrap();
        assert_eq!(basic_invariants(&b3).unwrap().degrees, vec![2, 4, 6]);
    }

    #[test]
    fn primitive_lowers_multiplicity_b2() {
        let g = ReflectionGroup::build(Family::B(2)).unwrap();
        let bi = basic_invariants(&g).unwrap();
        let m = MultFn::constant(&g, 1);
        let m0 = m.minus_one();
        for d in 0..=9usize {
            for p in quasi_space(&g, &m, d) {
                let image = bi.apply(&p).expect("image is polynomial");
                assert!(is_quasi_invariant(&g, &m0, &image).ok);
                if let Some(deg) = image.degree() {
                    assert_eq!(deg, d - bi.top_degree());
                }
            }
        }
    }

    #[test]
    fn divisibility_prerequisite() {
        // members with m >= 1 have normal derivative divisible by
        // alpha^(n_H - 1)
        let g = ReflectionGroup::build(Family::G(3, 2)).unwrap();
        let m = MultFn::constant(&g, 1);
        let p = parse_poly("x1^7 - 7*x1^4*x2^3", 2, 6).unwrap();
        assert!(is_quasi_invariant(&g, &m, &p).ok);
        for h in &g.hyperplanes {
            let d = p.partial(&h.alpha_check);
            assert!(d.div_linear_power(&h.alpha, h.order - 1).is_ok());
        }
    }

    #[test]
    fn t_linearity() {
        // the derivation image is only polynomial on quasi-invariants, and
        // multiplying by the lower invariant passes through it
        let g = ReflectionGroup::build(Family::B(2)).unwrap();
        let bi = basic_invariants(&g).unwrap();
        let y1 = bi.polys[0].clone();
        let m = MultFn::constant(&g, 1);
        for p in quasi_space(&g, &m, 6) {
            let lhs = bi.apply(&(&y1 * &p)).unwrap();
            let rhs = &y1 * &bi.apply(&p).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn proportional_under_invariant_change() {
        // admissible generator changes scale the derivation by one global
        // constant: y2 -> 3 y2 divides the output by 3; y1 -> 2 y1 and
        // y2 -> y2 + y1^2 leave it unchanged
        let g = ReflectionGroup::build(Family::B(2)).unwrap();
        let bi = basic_invariants(&g).unwrap();
        let y1 = bi.polys[0].clone();
        let y2 = bi.polys[1].clone();
        let scaled = BasicInvariants::from_polys(
            &g,
            vec![y1.clone(), y2.scale(&CycScalar::from_int(2, 3))],
        )
        .unwrap();
        let mixed = BasicInvariants::from_polys(
            &g,
            vec![y1.scale(&CycScalar::from_int(2, 2)), &y2 + &(&y1 * &y1)],
        )
        .unwrap();
        let m = MultFn::constant(&g, 1);
        let mut tests: Vec<MPoly> = Vec::new();
        for d in [4usize, 5, 6, 7] {
            tests.extend(quasi_space(&g, &m, d));
        }
        assert!(!tests.is_empty());
        let third = CycScalar::fraction(2, 1, 3);
        for p in &tests {
            let base = bi.apply(p).unwrap();
            assert_eq!(scaled.apply(p).unwrap(), base.scale(&third));
            assert_eq!(mixed.apply(p).unwrap(), base);
        }
    }

    #[test]
    fn nabla_connection_b2() {
        let g = ReflectionGroup::build(Family::B(2)).unwrap();
        let bi = basic_invariants(&g).unwrap();
        let m1 = MultFn::constant(&g, 1);
        let m0 = MultFn::constant(&g, 0);
        let d0 = dm_arrangement(&g, &m0);
        // degree-5 invariant slice of the m = 1 module maps into the m = 0
        // module, and the inverse solve recovers the source
        let slice = dm_invariant_slice(&g, &m1, 5);
        assert!(!slice.is_empty());
        for theta in &slice {
            let image = nabla_d(&bi, theta).unwrap();
            if image.is_zero() {
                continue;
            }
            assert!(derivation_member(&image, &d0).ok);
            let back = nabla_d_inverse(&bi, &image, &slice).unwrap();
            assert_eq!(&back, theta);
        }
    }

    #[test]
    fn dihedral_eigenrelation_i26() {
        let s = dihedral_session(3).unwrap();
        assert_eq!(s.group.conductor, 12);
        // the distinguished quasi-invariant exists for every index
        let adm = dihedral_admissible_indices(&s, 1, 1);
        assert_eq!(adm, vec![1, 2, 4, 5]);
        for &i in &adm {
            let (q, p) = dihedral_q(&s, 1, 1, i).unwrap();
            // D q = (|m| ell + i) q', with q' the (0,0) member z^i
            let dq = s.invariants.apply(&q).unwrap();
            let (q0, p0) = dihedral_q(&s, 0, 0, i).unwrap();
            let factor = CycScalar::from_int(12, (2 * 3 + i) as i64);
            assert_eq!(dq, q0.scale(&factor));
            let dp = s.invariants.apply(&p).unwrap();
            assert_eq!(dp, p0.scale(&factor));
            // conjugate symmetry
            assert_eq!(p, s.conj_poly(&q));
        }
        // |m| = 0 gives plain powers
        let (q0, _) = dihedral_q(&s, 0, 0, 2).unwrap();
        assert_eq!(q0, parse_poly("x1^2", 2, 12).unwrap());
    }

    #[test]
    fn dihedral_isotypic_selection_by_parity() {
        // the indices whose pair spans the reflection representation:
        // {1, 2 ell - 1} for even |m| and {ell - 1, ell + 1} for odd |m|
        let s = dihedral_session(3).unwrap();
        assert_eq!(dihedral_isotypic_indices(&s, 1, 1), vec![1, 5]);
        assert_eq!(dihedral_isotypic_indices(&s, 1, 0), vec![2, 4]);
        assert_eq!(dihedral_isotypic_indices(&s, 2, 1), vec![2, 4]);
        assert_eq!(dihedral_isotypic_indices(&s, 2, 0), vec![1, 5]);
        // at ell = 2 the two parity sets coincide
        let s4 = dihedral_session(2).unwrap();
        assert_eq!(dihedral_isotypic_indices(&s4, 1, 1), vec![1, 3]);
    }
}
