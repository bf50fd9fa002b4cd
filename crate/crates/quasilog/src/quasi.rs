//! Graded and filtered spaces of quasi-invariants: the scalar spaces cut out
//! by reflection divisibility conditions, their isotypic components,
//! vector-valued variants, trigonometric (shift) variants for Weyl root
//! systems, the non-reduced BC version, the finite-difference calculus on
//! shifted conditions, and leading-term (associated graded) spaces.

use crate::cyclotomic::CycScalar;
use crate::group::{rows_to_canonical_basis, MultFn, ReflectionGroup};
use crate::linalg::{span_rank, ScalarMatrix};
use crate::poly::{monomials, monomials_up_to, MPoly, Monomial, PivotChange};
use crate::roots::RootSystem;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Exact span membership over a common monomial frame.
pub fn poly_in_span(basis: &[MPoly], p: &MPoly) -> bool {
    if p.is_zero() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let n = p.nvars();
    let cond = p.conductor();
    let top = basis
        .iter()
        .chain(std::iter::once(p))
        .filter_map(MPoly::degree)
        .max()
        .unwrap();
    let mons = monomials_up_to(n, top);
    let rows: Vec<Vec<CycScalar>> = basis.iter().map(|b| b.coeff_vector(&mons)).collect();
    crate::linalg::in_span(&rows, &p.coeff_vector(&mons), cond).is_some()
}

/// Outcome of a membership test, with the offending hyperplane and the
/// divisibility exponent actually attained on failure.
#[derive(Clone, Debug)]
pub struct QuasiWitness {
    pub ok: bool,
    /// `(hyperplane index, attained exponent, required exponent)`
    pub failures: Vec<(usize, usize, usize)>,
}

/// Membership test: every hyperplane must divide `(1 - s_H) p` to order
/// `m_H n_H`.
pub fn is_quasi_invariant(group: &ReflectionGroup, m: &MultFn, p: &MPoly) -> QuasiWitness {
    let mut failures = Vec::new();
    for (hi, h) in group.hyperplanes.iter().enumerate() {
        let need = m.value(h) as usize * h.order;
        if need == 0 {
            continue;
        }
        let diff = p - &group.act_on_poly(h.s_index, p);
        if let Err(nd) = diff.div_linear_power(&h.alpha, need) {
            failures.push((hi, nd.attained, need));
        }
    }
    QuasiWitness {
        ok: failures.is_empty(),
        failures,
    }
}

/// `c_V(m) = (1/N) sum_H m_H n_H`, when integral.
pub fn c_v(group: &ReflectionGroup, m: &MultFn) -> Option<usize> {
    let total = group.mult_weight(m);
    if total % group.rank == 0 {
        Some(total / group.rank)
    } else {
        None
    }
}

/// Rows of linear conditions expressing `alpha^power | p` for polynomials
/// `p` in the span of `ambient`: coefficients of all monomials with pivot
/// exponent below `power` after the coordinate change sending `alpha` to
/// the pivot variable.
pub(crate) fn divisibility_rows(
    ambient: &[MPoly],
    alpha: &MPoly,
    power: usize,
    conductor: u32,
) -> Vec<Vec<CycScalar>> {
    if power == 0 || ambient.is_empty() {
        return Vec::new();
    }
    let change = PivotChange::new(alpha);
    let transformed: Vec<MPoly> = ambient.par_iter().map(|p| change.forward(p)).collect();
    low_order_rows(&transformed, change.pivot, power, conductor)
}

fn low_order_rows(
    transformed: &[MPoly],
    pivot: usize,
    power: usize,
    conductor: u32,
) -> Vec<Vec<CycScalar>> {
    let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for t in transformed {
        for (mon, _) in t.terms() {
            if (mon.0[pivot] as usize) < power && !row_index.contains_key(mon) {
                let next = row_index.len();
                row_index.insert(mon.clone(), next);
            }
        }
    }
    let mut rows = vec![vec![CycScalar::zero(conductor); transformed.len()]; row_index.len()];
    for (j, t) in transformed.iter().enumerate() {
        for (mon, c) in t.terms() {
            if (mon.0[pivot] as usize) < power {
                rows[row_index[mon]][j] = c.clone();
            }
        }
    }
    rows
}

fn combos_from_nullspace(ambient: &[MPoly], null: &[Vec<CycScalar>]) -> Vec<MPoly> {
    null.iter()
        .map(|v| {
            let mut p = MPoly::zero(ambient[0].nvars(), ambient[0].conductor());
            for (c, b) in v.iter().zip(ambient) {
                if !c.is_zero() {
                    p = &p + &b.scale(c);
                }
            }
            p
        })
        .collect()
}

/// Quasi-invariants inside the span of an arbitrary finite family.
pub fn quasi_space_in(group: &ReflectionGroup, m: &MultFn, ambient: &[MPoly]) -> Vec<MPoly> {
    if ambient.is_empty() {
        return Vec::new();
    }
    let cond = group.conductor;
    let rows: Vec<Vec<CycScalar>> = group
        .hyperplanes
        .par_iter()
        .map(|h| {
            let need = m.value(h) as usize * h.order;
            if need == 0 {
                return Vec::new();
            }
            let diffs: Vec<MPoly> = ambient
                .iter()
                .map(|p| p - &group.act_on_poly(h.s_index, p))
                .collect();
            divisibility_rows(&diffs, &h.alpha, need, cond)
        })
        .flatten()
        .collect();
    let rows = crate::linalg::dedup_proportional_rows(rows);
    let solutions = if rows.is_empty() {
        ambient.to_vec()
    } else {
        let mat = ScalarMatrix::from_rows(rows, cond);
        combos_from_nullspace(ambient, &mat.nullspace())
    };
    canonicalize(group, &solutions)
}

fn canonicalize(group: &ReflectionGroup, polys: &[MPoly]) -> Vec<MPoly> {
    let polys: Vec<MPoly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if polys.is_empty() {
        return Vec::new();
    }
    let top = polys.iter().filter_map(|p| p.degree()).max().unwrap();
    let mons = monomials_up_to(group.rank, top);
    rows_to_canonical_basis(&polys, &mons, group.rank, group.conductor)
}

/// Canonical basis of the degree-d homogeneous quasi-invariants.
pub fn quasi_space(group: &ReflectionGroup, m: &MultFn, d: usize) -> Vec<MPoly> {
    let ambient: Vec<MPoly> = monomials(group.rank, d)
        .into_iter()
        .map(|mon| MPoly::from_term(group.rank, mon, CycScalar::one(group.conductor)))
        .collect();
    quasi_space_in(group, m, &ambient)
}

/// Degree-d slice of the chi-isotypic component of the quasi-invariants,
/// computed inside the isotypic slice of the polynomial ring (the two
/// operations commute because the conditions are W-stable).
pub fn quasi_isotypic(
    group: &ReflectionGroup,
    m: &MultFn,
    d: usize,
    chi: &[CycScalar],
) -> Vec<MPoly> {
    let ambient = group.isotypic_space(d, chi);
    quasi_space_in(group, m, &ambient)
}

/// A vector-valued quasi-invariant `sum_i f_i (x) e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorQuasiElement {
    pub components: Vec<MPoly>,
}

impl VectorQuasiElement {
    pub fn degree(&self) -> Option<usize> {
        self.components.iter().filter_map(|c| c.degree()).max()
    }
}

/// Degree-d slice of the V-valued quasi-invariants, cut out by the
/// stabilizer idempotents acting on the vector factor. Results are checked
/// against the reduced single-divisibility form.
pub fn vector_quasi_space(
    group: &ReflectionGroup,
    m: &MultFn,
    d: usize,
) -> Vec<VectorQuasiElement> {
    let n = group.rank;
    let cond = group.conductor;
    let mons = monomials(n, d);
    let t = mons.len();
    // unknowns: component i coefficient on monomial j -> column i * t + j
    let mut rows: Vec<Vec<CycScalar>> = Vec::new();
    for h in &group.hyperplanes {
        let need = m.value(h) as usize * h.order;
        if need == 0 {
            continue;
        }
        let change = PivotChange::new(&h.alpha);
        let transformed: Vec<MPoly> = mons
            .par_iter()
            .map(|mon| {
                change.forward(&MPoly::from_term(n, mon.clone(), CycScalar::one(cond)))
            })
            .collect();
        let base_rows = low_order_rows(&transformed, change.pivot, need, cond);
        let det_s = group.elements[h.s_index].det();
        for i in 1..h.order {
            // action of e_{H,i} on V as a matrix
            let mut e_mat = ScalarMatrix::zero(n, n, cond);
            let mut power = 0usize;
            for u in 0..h.order {
                let factor = det_s.pow((u * i) as i64);
                for r in 0..n {
                    for c in 0..n {
                        let v = &*group.elements[power].at(r, c) * &factor;
                        let entry = e_mat.at_mut(r, c);
                        *entry = &*entry + &v;
                    }
                }
                power = group.mul_index(power, h.s_index);
            }
            if (0..n).all(|r| (0..n).all(|c| e_mat.at(r, c).is_zero())) {
                continue;
            }
            // condition per output component k: alpha^need | sum_l E_{kl} f_l
            for k in 0..n {
                for base in &base_rows {
                    let mut row = vec![CycScalar::zero(cond); n * t];
                    let mut nonzero = false;
                    for l in 0..n {
                        let ekl = e_mat.at(k, l);
                        if ekl.is_zero() {
                            continue;
                        }
                        for j in 0..t {
                            if !base[j].is_zero() {
                                row[l * t + j] = ekl * &base[j];
                                nonzero = true;
                            }
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let rows = crate::linalg::dedup_proportional_rows(rows);
    let null = if rows.is_empty() {
        ScalarMatrix::identity(n * t, cond).rows_vec()
    } else {
        ScalarMatrix::from_rows(rows, cond).nullspace()
    };
    let elements: Vec<VectorQuasiElement> = null
        .iter()
        .map(|v| {
            let components: Vec<MPoly> = (0..n)
                .map(|i| {
                    let mut p = MPoly::zero(n, cond);
                    for (j, mon) in mons.iter().enumerate() {
                        let c = &v[i * t + j];
                        if !c.is_zero() {
                            p = &p + &MPoly::from_term(n, mon.clone(), c.clone());
                        }
                    }
                    p
                })
                .collect();
            VectorQuasiElement { components }
        })
        .collect();
    for e in &elements {
        debug_assert!(
            vector_quasi_member_reduced(group, m, e),
            "idempotent-form solution must satisfy the reduced divisibility form"
        );
    }
    elements
}

/// Reduced membership form for V-valued quasi-invariants:
/// `alpha_H^{m n} | sum_i f_i d_i(alpha_H)` for every hyperplane.
pub fn vector_quasi_member_reduced(
    group: &ReflectionGroup,
    m: &MultFn,
    e: &VectorQuasiElement,
) -> bool {
    group.hyperplanes.iter().all(|h| {
        let need = m.value(h) as usize * h.order;
        if need == 0 {
            return true;
        }
        let mut s = MPoly::zero(group.rank, group.conductor);
        for (f, a) in e.components.iter().zip(&h.alpha_vec) {
            if !a.is_zero() {
                s = &s + &f.scale(a);
            }
        }
        s.div_linear_power(&h.alpha, need).is_ok()
    })
}

/// A graded or degree-filtered family of polynomial subspaces.
///
/// For a homogeneous space, `by_degree[d]` is a basis of the degree-d slice.
/// For a filtered space, `by_degree[d]` holds the adapted new basis elements
/// at filtration level d, so the level-d space is the concatenation of all
/// lists up to d.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    pub by_degree: Vec<Vec<MPoly>>,
    pub filtered: bool,
}

impl GradedSubspace {
    /// Basis of the filtration level d (filtered) or the degree-d slice.
    pub fn level_basis(&self, d: usize) -> Vec<MPoly> {
        if self.filtered {
            self.by_degree[..=d.min(self.by_degree.len() - 1)]
                .iter()
                .flatten()
                .cloned()
                .collect()
        } else {
            self.by_degree[d].clone()
        }
    }

    /// Dimension of level d.
    pub fn dim_at(&self, d: usize) -> usize {
        if self.filtered {
            self.by_degree[..=d.min(self.by_degree.len() - 1)]
                .iter()
                .map(Vec::len)
                .sum()
        } else {
            self.by_degree[d].len()
        }
    }

    pub fn cutoff(&self) -> usize {
        self.by_degree.len() - 1
    }
}

/// Shift a polynomial's argument by a constant vector.
pub fn shift_poly(p: &MPoly, v: &[CycScalar]) -> MPoly {
    let n = p.nvars();
    let rows: Vec<Vec<CycScalar>> = (0..n)
        .map(|i| {
            let mut r = vec![CycScalar::zero(p.conductor()); n];
            r[i] = CycScalar::one(p.conductor());
            r
        })
        .collect();
    p.subst_linear(&rows, Some(v))
}

/// `delta_a p = p(x + a) - p(x - a)`.
pub fn delta_shift(p: &MPoly, a: &[CycScalar]) -> MPoly {
    let neg: Vec<CycScalar> = a.iter().map(|c| -c).collect();
    &shift_poly(p, a) - &shift_poly(p, &neg)
}

fn scale_vec(a: &[CycScalar], c: &CycScalar) -> Vec<CycScalar> {
    a.iter().map(|x| x * c).collect()
}

/// Rows forcing `form | p(x + shift) - p(x - shift)` on the span of
/// `ambient`.
fn shift_condition_rows(
    ambient: &[MPoly],
    shift: &[CycScalar],
    form: &MPoly,
    conductor: u32,
) -> Vec<Vec<CycScalar>> {
    let diffs: Vec<MPoly> = ambient.par_iter().map(|p| delta_shift(p, shift)).collect();
    divisibility_rows(&diffs, form, 1, conductor)
}

/// Trigonometric quasi-invariants of a reduced root system, filtered by
/// total degree up to the cutoff: for every positive root and
/// `j = 1..m_alpha`, `(alpha, x)` divides
/// `p(x + j/2 coroot) - p(x - j/2 coroot)`.
pub fn trig_quasi_space(rs: &RootSystem, m: &MultFn, cutoff: usize) -> GradedSubspace {
    let cond = rs.conductor();
    let n = rs.rank();
    solve_filtered(n, cond, cutoff, |ambient| {
        let mut rows = Vec::new();
        for root in &rs.positive {
            let mult = rs.mult_of_root(m, root);
            for j in 1..=mult {
                let half_j = CycScalar::fraction(cond, j as i64, 2);
                let shift = scale_vec(&root.coroot, &half_j);
                rows.extend(shift_condition_rows(ambient, &shift, &root.form, cond));
            }
        }
        rows
    })
}

/// Trigonometric quasi-invariants of the non-reduced system BC_N with the
/// multiplicity triple `(m1, m2, m3)`, filtered by total degree. The three
/// condition families are, per coordinate direction and per pair:
/// integer shifts, half-integer shifts, and the pair shifts on the
/// difference hyperplanes.
pub fn bc_trig_quasi_space(
    group_bn: &ReflectionGroup,
    m1: u32,
    m2: u32,
    m3: u32,
    cutoff: usize,
) -> GradedSubspace {
    let n = group_bn.rank;
    let cond = group_bn.conductor;
    let e = |i: usize| {
        let mut v = vec![CycScalar::zero(cond); n];
        v[i] = CycScalar::one(cond);
        v
    };
    solve_filtered(n, cond, cutoff, |ambient| {
        let mut rows = Vec::new();
        for j in 0..n {
            let xj = MPoly::var(n, cond, j);
            for s in 1..=m1 {
                let shift = scale_vec(&e(j), &CycScalar::from_int(cond, s as i64));
                rows.extend(shift_condition_rows(ambient, &shift, &xj, cond));
            }
            for s in 1..=m2 {
                let half = CycScalar::fraction(cond, 2 * s as i64 - 1, 2);
                let shift = scale_vec(&e(j), &half);
                rows.extend(shift_condition_rows(ambient, &shift, &xj, cond));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let minus = &MPoly::var(n, cond, i) - &MPoly::var(n, cond, j);
                let plus = &MPoly::var(n, cond, i) + &MPoly::var(n, cond, j);
                for s in 1..=m3 {
                    let sc = CycScalar::from_int(cond, s as i64);
                    // (x_i - x_j) | p(x + s e_i) - p(x + s e_j)
                    let diffs: Vec<MPoly> = ambient
                        .iter()
                        .map(|p| {
                            &shift_poly(p, &scale_vec(&e(i), &sc))
                                - &shift_poly(p, &scale_vec(&e(j), &sc))
                        })
                        .collect();
                    rows.extend(divisibility_rows(&diffs, &minus, 1, cond));
                    // (x_i + x_j) | p(x - s e_i) - p(x + s e_j)
                    let diffs: Vec<MPoly> = ambient
                        .iter()
                        .map(|p| {
                            &shift_poly(p, &scale_vec(&e(i), &-&sc))
                                - &shift_poly(p, &scale_vec(&e(j), &sc))
                        })
                        .collect();
                    rows.extend(divisibility_rows(&diffs, &plus, 1, cond));
                }
            }
        }
        rows
    })
}

/// Solve a filtered linear condition system level by level and return a
/// filtration-adapted basis.
fn solve_filtered<F>(n: usize, cond: u32, cutoff: usize, conditions: F) -> GradedSubspace
where
    F: Fn(&[MPoly]) -> Vec<Vec<CycScalar>>,
{
    let all_mons = monomials_up_to(n, cutoff);
    let mut acc: Vec<Vec<CycScalar>> = Vec::new();
    let mut by_degree: Vec<Vec<MPoly>> = Vec::new();
    for d in 0..=cutoff {
        let ambient: Vec<MPoly> = monomials_up_to(n, d)
            .into_iter()
            .map(|mon| MPoly::from_term(n, mon, CycScalar::one(cond)))
            .collect();
        let rows = crate::linalg::dedup_proportional_rows(conditions(&ambient));
        let basis = if rows.is_empty() {
            ambient
        } else {
            let mat = ScalarMatrix::from_rows(rows, cond);
            combos_from_nullspace(&ambient, &mat.nullspace())
        };
        let mut new_elems = Vec::new();
        for p in basis {
            if p.is_zero() {
                continue;
            }
            let v = p.coeff_vector(&all_mons);
            let mut trial = acc.clone();
            trial.push(v.clone());
            if span_rank(&trial, cond) > acc.len() {
                acc.push(v);
                new_elems.push(p);
            }
        }
        by_degree.push(new_elems);
    }
    GradedSubspace {
        by_degree,
        filtered: true,
    }
}

/// Membership in the trigonometric space (single polynomial).
pub fn is_trig_quasi_invariant(rs: &RootSystem, m: &MultFn, p: &MPoly) -> bool {
    let cond = rs.conductor();
    rs.positive.iter().all(|root| {
        (1..=rs.mult_of_root(m, root)).all(|j| {
            let half_j = CycScalar::fraction(cond, j as i64, 2);
            let shift = scale_vec(&root.coroot, &half_j);
            delta_shift(p, &shift)
                .div_linear_power(&root.form, 1)
                .is_ok()
        })
    })
}

/// Membership in the BC trigonometric space (single polynomial).
pub fn is_bc_trig_quasi_invariant(
    group_bn: &ReflectionGroup,
    m1: u32,
    m2: u32,
    m3: u32,
    p: &MPoly,
) -> bool {
    let n = group_bn.rank;
    let cond = group_bn.conductor;
    let e = |i: usize| {
        let mut v = vec![CycScalar::zero(cond); n];
        v[i] = CycScalar::one(cond);
        v
    };
    for j in 0..n {
        let xj = MPoly::var(n, cond, j);
        for s in 1..=m1 {
            let shift = scale_vec(&e(j), &CycScalar::from_int(cond, s as i64));
            if delta_shift(p, &shift).div_linear_power(&xj, 1).is_err() {
                return false;
            }
        }
        for s in 1..=m2 {
            let shift = scale_vec(&e(j), &CycScalar::fraction(cond, 2 * s as i64 - 1, 2));
            if delta_shift(p, &shift).div_linear_power(&xj, 1).is_err() {
                return false;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let minus = &MPoly::var(n, cond, i) - &MPoly::var(n, cond, j);
            let plus = &MPoly::var(n, cond, i) + &MPoly::var(n, cond, j);
            for s in 1..=m3 {
                let sc = CycScalar::from_int(cond, s as i64);
                let d1 = &shift_poly(p, &scale_vec(&e(i), &sc))
                    - &shift_poly(p, &scale_vec(&e(j), &sc));
                if d1.div_linear_power(&minus, 1).is_err() {
                    return false;
                }
                let d2 = &shift_poly(p, &scale_vec(&e(i), &-&sc))
                    - &shift_poly(p, &scale_vec(&e(j), &sc));
                if d2.div_linear_power(&plus, 1).is_err() {
                    return false;
                }
            }
        }
    }
    true
}

/// Result of the finite-difference chain test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainOutcome {
    Holds,
    /// The chain condition (equivalently an intermediate exact division)
    /// fails at the named stage.
    FailsAt(String),
}

/// Test via the difference-operator chain whether `p` satisfies the shifted
/// reflection conditions with parameters `(l, r)` in direction `a`: shifts
/// `s a` for `s <= l` and `(l + 2s) a` for `s <= r`, all vanishing on
/// `form = 0`. Each stage divides the previous difference exactly by `form`
/// and applies `delta_a` (first `l` stages) or `delta_{2a}` (last `r`
/// stages).
pub fn delta_chain_check(
    p: &MPoly,
    a: &[CycScalar],
    form: &MPoly,
    l: usize,
    r: usize,
) -> ChainOutcome {
    let two_a = scale_vec(a, &CycScalar::from_int(p.conductor(), 2));
    let mut cur: Option<MPoly> = None;
    for s in 1..=l {
        let next = match cur {
            None => delta_shift(p, a),
            Some(prev) => delta_shift(&prev, a),
        };
        match next.div_linear_power(form, 1) {
            Ok(q) => cur = Some(q),
            Err(_) => return ChainOutcome::FailsAt(format!("s={}", s)),
        }
    }
    for t in 1..=r {
        let next = match cur {
            None => delta_shift(p, &two_a),
            Some(prev) => delta_shift(&prev, &two_a),
        };
        match next.div_linear_power(form, 1) {
            Ok(q) => cur = Some(q),
            Err(_) => return ChainOutcome::FailsAt(format!("t={}", t)),
        }
    }
    ChainOutcome::Holds
}

/// Direct shifted-evaluation form of the same conditions, the independent
/// cross-check for `delta_chain_check`.
pub fn shift_conditions_direct(
    p: &MPoly,
    a: &[CycScalar],
    form: &MPoly,
    l: usize,
    r: usize,
) -> bool {
    let cond = p.conductor();
    let mut factors: Vec<i64> = (1..=l as i64).collect();
    factors.extend((1..=r as i64).map(|s| l as i64 + 2 * s));
    factors.into_iter().all(|f| {
        let shift = scale_vec(a, &CycScalar::from_int(cond, f));
        delta_shift(p, &shift).div_linear_power(form, 1).is_ok()
    })
}

/// Chain parameters `(l, r)` (direction `e_j / 2`) equivalent to the
/// integer conditions up to `m1` and half-integer conditions up to `m2` of
/// the BC coordinate direction: combined they request the multiples
/// `{1..2 min + adj}` plus an arithmetic tail of step 2.
pub fn bc_delta_params(m1: u32, m2: u32) -> (usize, usize) {
    use std::cmp::Ordering;
    match m1.cmp(&m2) {
        Ordering::Equal => (2 * m1 as usize, 0),
        Ordering::Greater => (2 * m2 as usize, (m1 - m2) as usize),
        Ordering::Less => (2 * m1 as usize + 1, (m2 - m1 - 1) as usize),
    }
}

/// Vanishing of the odd directional derivatives of a leading term on the
/// hyperplane: `d_a^{2s-1} p0 = 0` on `form = 0` for `s = 1..=bound`.
pub fn odd_partial_vanishing(p0: &MPoly, a: &[CycScalar], form: &MPoly, bound: usize) -> bool {
    let mut cur = p0.clone();
    for s in 1..=bound {
        cur = cur.partial(a); // derivative number 2s-1 after the odd step
        if cur.div_linear_power(form, 1).is_err() {
            return false;
        }
        if s < bound {
            cur = cur.partial(a); // even-numbered derivative, unconstrained
        }
    }
    true
}

/// Associated graded space of a filtered family: per-degree spans of the
/// leading terms of a filtration-adapted basis.
pub fn leading_term_space(gs: &GradedSubspace) -> GradedSubspace {
    assert!(gs.filtered, "leading terms need a filtered space");
    let by_degree: Vec<Vec<MPoly>> = gs
        .by_degree
        .iter()
        .enumerate()
        .map(|(d, elems)| {
            let tops: Vec<MPoly> = elems
                .iter()
                .map(|p| {
                    let t = p.top_part();
                    assert_eq!(
                        t.degree(),
                        Some(d),
                        "adapted basis element has top degree below its level"
                    );
                    t
                })
                .collect();
            if tops.is_empty() {
                return tops;
            }
            let n = tops[0].nvars();
            let cond = tops[0].conductor();
            rows_to_canonical_basis(&tops, &monomials(n, d), n, cond)
        })
        .collect();
    GradedSubspace {
        by_degree,
        filtered: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;
    use crate::parse::parse_poly;

    fn g312() -> ReflectionGroup {
        ReflectionGroup::build(Family::G(3, 2)).unwrap()
    }

    fn b2() -> ReflectionGroup {
        ReflectionGroup::build(Family::B(2)).unwrap()
    }

    #[test]
    fn invariants_are_quasi_invariant() {
        let g = g312();
        let m = MultFn::constant(&g, 1);
        let p = parse_poly("x1^3 + x2^3", 2, 6).unwrap();
        assert!(is_quasi_invariant(&g, &m, &p).ok);
        let m2 = MultFn::constant(&g, 2);
        assert!(is_quasi_invariant(&g, &m2, &p).ok);
    }

    #[test]
    fn example_members_g312() {
        let g = g312();
        let m = MultFn::constant(&g, 1);
        let p = parse_poly("x1^7 - 7*x1^4*x2^3", 2, 6).unwrap();
        assert!(is_quasi_invariant(&g, &m, &p).ok);
        // a generic degree-7 polynomial is not quasi-invariant, and the
        // witness names an offending hyperplane with its attained exponent
        let q = parse_poly("x1^7 + x1^6*x2", 2, 6).unwrap();
        let w = is_quasi_invariant(&g, &m, &q);
        assert!(!w.ok);
        assert!(!w.failures.is_empty());
        let (_, attained, required) = w.failures[0];
        assert!(attained < required);
    }

    #[test]
    fn example_member_b2_21() {
        let g = b2();
        // m(e_i) = 2 on the coordinate orbit, 1 on the diagonal orbit
        let coord_orbit = g
            .orbit_of_form(&parse_poly("x1", 2, 2).unwrap())
            .unwrap();
        let mut vals = vec![1u32; g.orbits.len()];
        vals[coord_orbit] = 2;
        let m = MultFn::by_orbit(&g, vals);
        let p = parse_poly("3*x1^7 - 7*x1^5*x2^2", 2, 2).unwrap();
        assert!(is_quasi_invariant(&g, &m, &p).ok);
        assert_eq!(c_v(&g, &m), Some(6));
    }

    #[test]
    fn quasi_space_dimensions() {
        let g = g312();
        // m = 0: the whole polynomial slice
        let m0 = MultFn::constant(&g, 0);
        assert_eq!(quasi_space(&g, &m0, 5).len(), 6);
        // the invariant prod alpha^{m n} times anything lands in Q_m
        let m = MultFn::constant(&g, 1);
        let factor = {
            let mut f = MPoly::one(2, 6);
            for h in &g.hyperplanes {
                f = &f * &h.alpha.pow(m.value(h) as usize * h.order);
            }
            f
        };
        assert_eq!(factor, parse_poly("x1^3*x2^3*(x1^3 - x2^3)^2", 2, 6).unwrap());
        assert!(is_quasi_invariant(&g, &m, &factor).ok);
        let generic = parse_poly("x1^3 - 2*x1^2*x2 + 5*x2^3 + x1", 2, 6).unwrap();
        assert!(is_quasi_invariant(&g, &m, &(&factor * &generic)).ok);
    }

    #[test]
    fn isotypic_slice_g312() {
        let g = g312();
        let m = MultFn::constant(&g, 1);
        let chi = g.char_dual_reflection();
        assert_eq!(c_v(&g, &m), Some(6));
        // empty strictly below c_V
        for d in 0..6 {
            assert!(quasi_isotypic(&g, &m, d, &chi).is_empty(), "degree {}", d);
        }
        // dimension 2 at degree 7 with the table's span
        let basis7 = quasi_isotypic(&g, &m, 7, &chi);
        assert_eq!(basis7.len(), 2);
        let mons = monomials(2, 7);
        let rows: Vec<Vec<CycScalar>> = basis7.iter().map(|p| p.coeff_vector(&mons)).collect();
        for text in ["x1^7 - 7*x1^4*x2^3", "-7*x1^3*x2^4 + x2^7"] {
            let p = parse_poly(text, 2, 6).unwrap();
            assert!(
                crate::linalg::in_span(&rows, &p.coeff_vector(&mons), 6).is_some(),
                "{} not in computed span",
                text
            );
        }
        // degree 10 contains the second pair
        let basis10 = quasi_isotypic(&g, &m, 10, &chi);
        let mons = monomials(2, 10);
        let rows: Vec<Vec<CycScalar>> =
            basis10.iter().map(|p| p.coeff_vector(&mons)).collect();
        for text in ["x1^10 + 5*x1^4*x2^6", "5*x1^6*x2^4 + x2^10"] {
            let p = parse_poly(text, 2, 6).unwrap();
            assert!(
                crate::linalg::in_span(&rows, &p.coeff_vector(&mons), 6).is_some(),
                "{} not in computed span",
                text
            );
        }
    }

    #[test]
    fn isotypic_routes_agree() {
        let g = g312();
        let m = MultFn::constant(&g, 1);
        let chi = g.char_dual_reflection();
        for d in [6usize, 7, 8] {
            let fast = quasi_isotypic(&g, &m, d, &chi);
            let slow: Vec<MPoly> = quasi_space(&g, &m, d)
                .iter()
                .map(|p| g.isotypic_project(p, &chi))
                .collect();
            let slow = canonicalize(&g, &slow);
            assert_eq!(fast, slow, "degree {}", d);
        }
    }

    #[test]
    fn vector_quasi_g312() {
        let g = g312();
        let m = MultFn::constant(&g, 1);
        // empty below c_V, two-dimensional at c_V = 6
        assert!(vector_quasi_space(&g, &m, 5).is_empty());
        let basis = vector_quasi_space(&g, &m, 6);
        assert_eq!(basis.len(), 2);
        // the table pair lies in the span (componentwise coefficient vectors)
        let mons = monomials(2, 6);
        let to_vec = |e: &VectorQuasiElement| -> Vec<CycScalar> {
            let mut v = Vec::new();
            for c in &e.components {
                v.extend(c.coeff_vector(&mons));
            }
            v
        };
        let rows: Vec<Vec<CycScalar>> = basis.iter().map(to_vec).collect();
        let paper1 = VectorQuasiElement {
            components: vec![
                parse_poly("x1^6 - 4*x1^3*x2^3", 2, 6).unwrap(),
                parse_poly("-3*x1^2*x2^4", 2, 6).unwrap(),
            ],
        };
        let paper2 = VectorQuasiElement {
            components: vec![
                parse_poly("3*x1^4*x2^2", 2, 6).unwrap(),
                parse_poly("4*x1^3*x2^3 - x2^6", 2, 6).unwrap(),
            ],
        };
        for e in [&paper1, &paper2] {
            assert!(crate::linalg::in_span(&rows, &to_vec(e), 6).is_some());
            assert!(vector_quasi_member_reduced(&g, &m, e));
        }
        // m = 0 at degree 0: the constant fields
        let m0 = MultFn::constant(&g, 0);
        assert_eq!(vector_quasi_space(&g, &m0, 0).len(), 2);
    }

    #[test]
    fn trig_b2_contains_paper_member() {
        let rs = RootSystem::build(Family::B(2)).unwrap();
        let coord_orbit = rs
            .group
            .orbit_of_form(&parse_poly("x1", 2, 2).unwrap())
            .unwrap();
        let mut vals = vec![1u32; rs.group.orbits.len()];
        vals[coord_orbit] = 2;
        let m = MultFn::by_orbit(&rs.group, vals);
        let p1p = parse_poly(
            "3*x1^7 - 7*x1^5*x2^2 - 14*x1^5 + 35*x1^3*x2^2 + 7*x1^3 - 28*x1*x2^2 + 4*x1",
            2,
            2,
        )
        .unwrap();
        assert!(is_trig_quasi_invariant(&rs, &m, &p1p));
        // and it lies in the computed filtered space at level 7
        let gs = trig_quasi_space(&rs, &m, 7);
        let basis = gs.level_basis(7);
        let mons = monomials_up_to(2, 7);
        let rows: Vec<Vec<CycScalar>> = basis.iter().map(|p| p.coeff_vector(&mons)).collect();
        assert!(crate::linalg::in_span(&rows, &p1p.coeff_vector(&mons), 2).is_some());
        // m = 0: everything
        let m0 = MultFn::constant(&rs.group, 0);
        let gs0 = trig_quasi_space(&rs, &m0, 3);
        assert_eq!(gs0.dim_at(3), monomials_up_to(2, 3).len());
    }

    #[test]
    fn bc2_contains_paper_member() {
        let g = b2();
        let pt1 = parse_poly(
            "3*x1^7 - 7*x1^5*x2^2 + (-35*x1^5 + 35*x1^3*x2^2 + 28*x1^3 - 7*x1*x2^2 - 5*x1)/4",
            2,
            2,
        )
        .unwrap();
        assert!(is_bc_trig_quasi_invariant(&g, 1, 1, 1, &pt1));
        let gs = bc_trig_quasi_space(&g, 1, 1, 1, 7);
        let basis = gs.level_basis(7);
        let mons = monomials_up_to(2, 7);
        let rows: Vec<Vec<CycScalar>> = basis.iter().map(|p| p.coeff_vector(&mons)).collect();
        assert!(crate::linalg::in_span(&rows, &pt1.coeff_vector(&mons), 2).is_some());
        // Delta * q stays in the space
        let delta = parse_poly(
            "(x1^2 - 1)*(x2^2 - 1)*(x1^2 - 1/4)*(x2^2 - 1/4)*((x1 - x2)^2 - 1)*((x1 + x2)^2 - 1)",
            2,
            2,
        )
        .unwrap();
        for q in ["1", "x1", "x1*x2 - 3*x2^2"] {
            let q = parse_poly(q, 2, 2).unwrap();
            assert!(is_bc_trig_quasi_invariant(&g, 1, 1, 1, &(&delta * &q)));
        }
        // (0,0,0): no conditions
        let gs0 = bc_trig_quasi_space(&g, 0, 0, 0, 2);
        assert_eq!(gs0.dim_at(2), 6);
    }

    #[test]
    fn delta_chain_behaviour() {
        let g = b2();
        let cond = g.conductor;
        let pt1 = parse_poly(
            "3*x1^7 - 7*x1^5*x2^2 + (-35*x1^5 + 35*x1^3*x2^2 + 28*x1^3 - 7*x1*x2^2 - 5*x1)/4",
            2,
            2,
        )
        .unwrap();
        let half_e1 = vec![CycScalar::fraction(cond, 1, 2), CycScalar::zero(cond)];
        let x1 = parse_poly("x1", 2, 2).unwrap();
        // the (quasi1)+(quasi2) conditions at (m1, m2) = (1, 1) are the
        // chain with a = e1/2 and (l, r) = (2, 0)
        let (l, r) = bc_delta_params(1, 1);
        assert_eq!((l, r), (2, 0));
        assert_eq!(delta_chain_check(&pt1, &half_e1, &x1, l, r), ChainOutcome::Holds);
        assert!(shift_conditions_direct(&pt1, &half_e1, &x1, l, r));
        // the member satisfies no longer chain
        assert_ne!(
            delta_chain_check(&pt1, &half_e1, &x1, 3, 0),
            ChainOutcome::Holds
        );
        // even polynomials in (a, x) trivially pass l = 1
        let even = parse_poly("x1^2*x2 + 5*x2", 2, 2).unwrap();
        let e1 = vec![CycScalar::one(cond), CycScalar::zero(cond)];
        assert_eq!(delta_chain_check(&even, &e1, &x1, 1, 0), ChainOutcome::Holds);
        // leading-term consequence: odd normal derivatives of the top part
        // vanish on the hyperplane up to l + r
        assert!(odd_partial_vanishing(&pt1.top_part(), &e1, &x1, l + r));
    }

    #[test]
    fn bc_delta_params_match_direct_shift_sets() {
        // the (l, r) translation must reproduce exactly the integer and
        // half-integer shift multiples of e_j
        for (m1, m2) in [(1, 1), (2, 1), (1, 2), (2, 0), (0, 2), (3, 1)] {
            let (l, r) = bc_delta_params(m1, m2);
            let mut from_chain: Vec<i64> = (1..=l as i64).collect();
            from_chain.extend((1..=r as i64).map(|s| l as i64 + 2 * s));
            let mut from_bc: Vec<i64> = (1..=m1 as i64).map(|s| 2 * s).collect();
            from_bc.extend((1..=m2 as i64).map(|s| 2 * s - 1));
            from_bc.sort_unstable();
            from_chain.sort_unstable();
            assert_eq!(from_chain, from_bc, "(m1,m2)=({},{})", m1, m2);
        }
    }

    #[test]
    fn ring_closure_spot() {
        let g = g312();
        let m = MultFn::constant(&g, 1);
        let chi = g.char_dual_reflection();
        let b7 = quasi_isotypic(&g, &m, 7, &chi);
        let p = &b7[0] * &b7[1];
        assert!(is_quasi_invariant(&g, &m, &p).ok);
    }

    #[test]
    fn leading_terms_of_trig() {
        let rs = RootSystem::build(Family::B(2)).unwrap();
        let coord_orbit = rs
            .group
            .orbit_of_form(&parse_poly("x1", 2, 2).unwrap())
            .unwrap();
        let mut vals = vec![1u32; rs.group.orbits.len()];
        vals[coord_orbit] = 2;
        let m = MultFn::by_orbit(&rs.group, vals);
        let gs = trig_quasi_space(&rs, &m, 7);
        let gr = leading_term_space(&gs);
        // contains the homogeneous member 3x1^7 - 7x1^5 x2^2 at degree 7
        let p1 = parse_poly("3*x1^7 - 7*x1^5*x2^2", 2, 2).unwrap();
        let mons = monomials(2, 7);
        let rows: Vec<Vec<CycScalar>> = gr.by_degree[7]
            .iter()
            .map(|p| p.coeff_vector(&mons))
            .collect();
        assert!(crate::linalg::in_span(&rows, &p1.coeff_vector(&mons), 2).is_some());
        // graded dimensions sum to filtered dimensions
        for d in 0..=7 {
            let sum: usize = (0..=d).map(|k| gr.by_degree[k].len()).sum();
            assert_eq!(sum, gs.dim_at(d));
        }
    }
}
