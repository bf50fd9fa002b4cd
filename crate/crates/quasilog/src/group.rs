//! Finite complex reflection groups at small rank: enumeration from
//! generators, hyperplane data, orbits, Reynolds and isotypic projections
//! and graded invariant spaces.
//!
//! Supported families: A_N (in essential coordinates), B_N, D_N, dihedral
//! I2(k), and G(r,1,N). Type A is realized on the basis `u_i = e_i - e_{N+1}`
//! of the essential subspace, which keeps all matrix entries integral; the
//! Gram matrix of that basis is stored for root-system computations.

use crate::cyclotomic::{phi, CycScalar};
use crate::error::Error;
use crate::linalg::ScalarMatrix;
use crate::parse;
use crate::poly::{monomials, normalize_form, MPoly, Monomial};
use num::{BigRational, One, ToPrimitive};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

pub const DEFAULT_ORDER_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Symmetric group S_{N+1} acting on the essential N-dimensional space.
    A(usize),
    /// Signed permutations of rank N.
    B(usize),
    /// Even signed permutations of rank N.
    D(usize),
    /// Dihedral group of order 2k in real coordinates.
    I2(u32),
    /// Monomial group of r-th roots of unity and permutations, rank N.
    G(u32, usize),
    Custom(String),
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::A(n) => format!("A{}", n),
            Family::B(n) => format!("B{}", n),
            Family::D(n) => format!("D{}", n),
            Family::I2(k) => format!("I2_{}", k),
            Family::G(r, n) => format!("G{}_1_{}", r, n),
            Family::Custom(l) => l.clone(),
        }
    }

    /// Parse a label such as `A2`, `B3`, `I2_6` or `G3_1_2`.
    pub fn parse(label: &str) -> Result<Family, Error> {
        let bad = || Error::UnsupportedGroup(label.to_string());
        if let Some(rest) = label.strip_prefix("I2_") {
            return rest.parse().map(Family::I2).map_err(|_| bad());
        }
        if let Some(rest) = label.strip_prefix('G') {
            let parts: Vec<&str> = rest.split('_').collect();
            if parts.len() == 3 && parts[1] == "1" {
                let r = parts[0].parse().map_err(|_| bad())?;
                let n = parts[2].parse().map_err(|_| bad())?;
                return Ok(Family::G(r, n));
            }
            return Err(bad());
        }
        for (p, f) in [
            ("A", Family::A as fn(usize) -> Family),
            ("B", Family::B),
            ("D", Family::D),
        ] {
            if let Some(rest) = label.strip_prefix(p) {
                if let Ok(n) = rest.parse() {
                    return Ok(f(n));
                }
            }
        }
        Err(bad())
    }

    pub fn known_order(&self) -> Option<usize> {
        fn fact(n: usize) -> usize {
            (1..=n).product()
        }
        match *self {
            Family::A(n) => Some(fact(n + 1)),
            Family::B(n) => Some((1 << n) * fact(n)),
            Family::D(n) => Some((1 << (n - 1)) * fact(n)),
            Family::I2(k) => Some(2 * k as usize),
            Family::G(r, n) => Some((r as usize).pow(n as u32) * fact(n)),
            Family::Custom(_) => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// One reflection hyperplane with its pointwise stabilizer data.
#[derive(Clone, Debug)]
pub struct Hyperplane {
    /// Normalized linear form (first nonzero coefficient 1).
    pub alpha: MPoly,
    /// Coefficient vector of `alpha`.
    pub alpha_vec: Vec<CycScalar>,
    /// Eigenvector of `s` with `s(v) = v - alpha(v) alpha_check`.
    pub alpha_check: Vec<CycScalar>,
    /// Index of the distinguished generator of the pointwise stabilizer.
    pub s_index: usize,
    /// Order of the pointwise stabilizer.
    pub order: usize,
    pub orbit: usize,
}

#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    pub family: Family,
    pub rank: usize,
    pub conductor: u32,
    /// All elements as matrices acting on V, element 0 is the identity.
    pub elements: Vec<ScalarMatrix>,
    /// Index of each element's inverse.
    pub inverse: Vec<usize>,
    /// Indices of the generating set used for enumeration.
    pub generators: Vec<usize>,
    pub hyperplanes: Vec<Hyperplane>,
    /// Hyperplane indices grouped by orbit, in first-discovery order.
    pub orbits: Vec<Vec<usize>>,
    /// Gram matrix of the bilinear form for root-system families.
    pub gram: Option<ScalarMatrix>,
    index: BTreeMap<Vec<CycScalar>, usize>,
}

fn matrix_key(m: &ScalarMatrix) -> Vec<CycScalar> {
    m.rows_vec().into_iter().flatten().collect()
}

impl ReflectionGroup {
    pub fn build(family: Family) -> Result<Self, Error> {
        Self::build_with_cap(family, DEFAULT_ORDER_CAP)
    }

    pub fn build_with_cap(family: Family, cap: usize) -> Result<Self, Error> {
        let (conductor, gens, gram) = family_generators(&family)?;
        let g = Self::from_generators(family.clone(), conductor, gens, gram, cap)?;
        if let Some(expected) = family.known_order() {
            assert_eq!(
                g.order(),
                expected,
                "enumerated order disagrees with the family formula"
            );
        }
        Ok(g)
    }

    pub fn from_generators(
        family: Family,
        conductor: u32,
        gens: Vec<ScalarMatrix>,
        gram: Option<ScalarMatrix>,
        cap: usize,
    ) -> Result<Self, Error> {
        assert!(!gens.is_empty());
        let rank = gens[0].rows;
        for g in &gens {
            assert_eq!(g.rows, rank);
            assert_eq!(g.cols, rank);
        }
        // BFS closure from the identity; insertion order is the canonical
        // element order.
        let mut elements = vec![ScalarMatrix::identity(rank, conductor)];
        let mut index = BTreeMap::new();
        index.insert(matrix_key(&elements[0]), 0usize);
        let mut queue = std::collections::VecDeque::from([0usize]);
        let mut generator_indices = Vec::new();
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let prod = elements[i].mul(g);
                let key = matrix_key(&prod);
                if !index.contains_key(&key) {
                    let id = elements.len();
                    if id >= cap {
                        return Err(Error::OrderCapExceeded {
                            cap,
                            reached: id + 1,
                        });
                    }
                    index.insert(key, id);
                    elements.push(prod);
                    queue.push_back(id);
                }
            }
        }
        for g in &gens {
            generator_indices.push(index[&matrix_key(g)]);
        }
        let inverse: Vec<usize> = elements
            .iter()
            .map(|m| {
                let inv = m.inverse().expect("group element is invertible");
                index[&matrix_key(&inv)]
            })
            .collect();
        let mut group = ReflectionGroup {
            family,
            rank,
            conductor,
            elements,
            inverse,
            generators: generator_indices,
            hyperplanes: Vec::new(),
            orbits: Vec::new(),
            gram,
            index,
        };
        group.compute_hyperplanes();
        group.compute_orbits();
        group.validate();
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element_index(&self, m: &ScalarMatrix) -> Option<usize> {
        self.index.get(&matrix_key(m)).copied()
    }

    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let prod = self.elements[a].mul(&self.elements[b]);
        self.element_index(&prod).expect("product stays in the group")
    }

    fn compute_hyperplanes(&mut self) {
        let n = self.rank;
        let cond = self.conductor;
        // reflections: elements with rank(w - 1) == 1, grouped by fixed
        // hyperplane in first-discovery order
        let mut forms: Vec<Vec<CycScalar>> = Vec::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (idx, w) in self.elements.iter().enumerate() {
            if idx == 0 {
                continue;
            }
            let mut m = w.clone();
            for i in 0..n {
                let d = m.at_mut(i, i);
                *d = &*d - &CycScalar::one(cond);
            }
            if m.rank() != 1 {
                continue;
            }
            // any nonzero row of (w - 1) is proportional to the form
            let row = (0..n)
                .find(|&i| m.row(i).iter().any(|c| !c.is_zero()))
                .unwrap();
            let raw: Vec<CycScalar> = m.row(row).to_vec();
            let lead = raw.iter().find(|c| !c.is_zero()).unwrap().inv();
            let alpha: Vec<CycScalar> = raw.iter().map(|c| c * &lead).collect();
            match forms.iter().position(|f| f == &alpha) {
                Some(p) => members[p].push(idx),
                None => {
                    forms.push(alpha);
                    members.push(vec![idx]);
                }
            }
        }
        for (alpha, refl) in forms.iter().zip(&members) {
            let order = refl.len() + 1;
            assert!(
                (self.conductor as usize) % order == 0,
                "stabilizer order must divide the session conductor"
            );
            // distinguished generator: determinant exactly e^{2 pi i / order}
            let target = CycScalar::zeta_pow(cond, (self.conductor as i64) / order as i64);
            let s_index = *refl
                .iter()
                .find(|&&i| self.elements[i].det() == target)
                .expect("stabilizer contains an element with primitive determinant");
            // alpha_check from (s - 1) = -alpha_check alpha^T
            let s = &self.elements[s_index];
            let j0 = (0..n).find(|&j| !alpha[j].is_zero()).unwrap();
            let inv_a = alpha[j0].inv();
            let alpha_check: Vec<CycScalar> = (0..n)
                .map(|i| {
                    let mut v = s.at(i, j0).clone();
                    if i == j0 {
                        v = &v - &CycScalar::one(cond);
                    }
                    -&(&v * &inv_a)
                })
                .collect();
            let alpha_poly = MPoly::affine_form(alpha, CycScalar::zero(cond));
            self.hyperplanes.push(Hyperplane {
                alpha: alpha_poly,
                alpha_vec: alpha.clone(),
                alpha_check,
                s_index,
                order,
                orbit: usize::MAX,
            });
        }
    }

    fn compute_orbits(&mut self) {
        let mut orbit_of: Vec<Option<usize>> = vec![None; self.hyperplanes.len()];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.hyperplanes.len() {
            if orbit_of[start].is_some() {
                continue;
            }
            let id = orbits.len();
            let mut stack = vec![start];
            let mut orbit = Vec::new();
            orbit_of[start] = Some(id);
            while let Some(h) = stack.pop() {
                orbit.push(h);
                for &g in &self.generators {
                    let img = self.act_on_covector(g, &self.hyperplanes[h].alpha_vec);
                    let img = normalize_vec(&img);
                    let other = self
                        .hyperplanes
                        .iter()
                        .position(|hp| hp.alpha_vec == img)
                        .expect("group permutes its hyperplanes");
                    if orbit_of[other].is_none() {
                        orbit_of[other] = Some(id);
                        stack.push(other);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        for (h, o) in orbit_of.into_iter().enumerate() {
            self.hyperplanes[h].orbit = o.unwrap();
        }
        self.orbits = orbits;
    }

    fn validate(&self) {
        let reflections = self
            .elements
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, w)| {
                let mut m = (*w).clone();
                for i in 0..self.rank {
                    let d = m.at_mut(i, i);
                    *d = &*d - &CycScalar::one(self.conductor);
                }
                m.rank() == 1
            })
            .count();
        let sum: usize = self.hyperplanes.iter().map(|h| h.order - 1).sum();
        assert_eq!(sum, reflections, "stabilizer orders vs reflection count");
        for h in &self.hyperplanes {
            // s fixes ker(alpha) pointwise and scales alpha by det(s|_V)^{-1}
            let s = &self.elements[h.s_index];
            let ker = ScalarMatrix::from_rows(vec![h.alpha_vec.clone()], self.conductor)
                .nullspace();
            for v in &ker {
                assert_eq!(&s.mul_vec(v), v, "s_H must fix its hyperplane pointwise");
            }
            let mut p = h.s_index;
            for _ in 1..h.order {
                assert_ne!(p, 0);
                p = self.mul_index(p, h.s_index);
            }
            assert_eq!(p, 0, "s_H has order n_H");
            let img = self.act_on_covector(h.s_index, &h.alpha_vec);
            let det_inv = self.elements[self.inverse[h.s_index]].det();
            let scaled: Vec<CycScalar> = h.alpha_vec.iter().map(|c| c * &det_inv).collect();
            assert_eq!(img, scaled, "s_H scales alpha_H by the inverse determinant");
        }
    }

    /// Contragredient action on polynomials: `(g . p)(x) = p(g^{-1} x)`.
    pub fn act_on_poly(&self, g: usize, p: &MPoly) -> MPoly {
        let ginv = &self.elements[self.inverse[g]];
        p.subst_linear(&ginv.rows_vec(), None)
    }

    /// Action on vectors in V.
    pub fn act_on_vec(&self, g: usize, v: &[CycScalar]) -> Vec<CycScalar> {
        self.elements[g].mul_vec(v)
    }

    /// Action on covectors: `alpha . g^{-1}`.
    pub fn act_on_covector(&self, g: usize, alpha: &[CycScalar]) -> Vec<CycScalar> {
        let ginv = &self.elements[self.inverse[g]];
        (0..self.rank)
            .map(|j| {
                let mut acc = CycScalar::zero(self.conductor);
                for i in 0..self.rank {
                    if !alpha[i].is_zero() {
                        acc = &acc + &(&alpha[i] * ginv.at(i, j));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_invariant_poly(&self, p: &MPoly) -> bool {
        self.generators.iter().all(|&g| &self.act_on_poly(g, p) == p)
    }

    /// `e_{H,i}(p) = sum_u det(s_H^u)^i (s_H^u . p)`, for `1 <= i <= n_H - 1`.
    pub fn idempotent_apply(&self, hyperplane: usize, i: usize, p: &MPoly) -> MPoly {
        let h = &self.hyperplanes[hyperplane];
        assert!(
            i >= 1 && i <= h.order - 1,
            "idempotent index out of range: i={} n_H={}",
            i,
            h.order
        );
        let det_s = self.elements[h.s_index].det();
        let mut acc = MPoly::zero(self.rank, self.conductor);
        let mut power = 0usize; // index of s^u
        for u in 0..h.order {
            let factor = det_s.pow((u * i) as i64);
            acc = &acc + &self.act_on_poly(power, p).scale(&factor);
            power = self.mul_index(power, h.s_index);
        }
        acc
    }

    /// Group average.
    pub fn reynolds(&self, p: &MPoly) -> MPoly {
        let scale = CycScalar::from_rat(
            self.conductor,
            BigRational::new(One::one(), num::BigInt::from(self.order())),
        );
        let sum = (0..self.order())
            .into_par_iter()
            .map(|g| self.act_on_poly(g, p))
            .reduce(
                || MPoly::zero(self.rank, self.conductor),
                |a, b| &a + &b,
            );
        sum.scale(&scale)
    }

    /// Character of the dual reflection representation, `w -> tr(w^{-1})`.
    pub fn char_dual_reflection(&self) -> Vec<CycScalar> {
        (0..self.order())
            .map(|g| {
                let m = &self.elements[self.inverse[g]];
                let mut t = CycScalar::zero(self.conductor);
                for i in 0..self.rank {
                    t = &t + m.at(i, i);
                }
                t
            })
            .collect()
    }

    /// Isotypic projection `(dim tau / |W|) sum_w chi(w^{-1}) w . p` for a
    /// class function given by its values on the element list.
    pub fn isotypic_project(&self, p: &MPoly, chi: &[CycScalar]) -> MPoly {
        assert_eq!(chi.len(), self.order());
        let dim = chi[0].clone();
        let scale = &dim
            * &CycScalar::from_rat(
                self.conductor,
                BigRational::new(One::one(), num::BigInt::from(self.order())),
            );
        let sum = (0..self.order())
            .into_par_iter()
            .map(|g| self.act_on_poly(g, p).scale(&chi[self.inverse[g]]))
            .reduce(
                || MPoly::zero(self.rank, self.conductor),
                |a, b| &a + &b,
            );
        sum.scale(&scale)
    }

    /// Canonical basis of the degree-d invariants, from Reynolds images of
    /// monomials in reduced echelon form.
    pub fn invariant_space(&self, d: usize) -> Vec<MPoly> {
        let space = self.projected_space(d, None);
        debug_assert_eq!(space.len(), self.molien_invariant_dim(d));
        space
    }

    /// Canonical basis of the chi-isotypic component of degree d.
    pub fn isotypic_space(&self, d: usize, chi: &[CycScalar]) -> Vec<MPoly> {
        self.projected_space(d, Some(chi))
    }

    fn projected_space(&self, d: usize, chi: Option<&[CycScalar]>) -> Vec<MPoly> {
        let mons = monomials(self.rank, d);
        let images: Vec<MPoly> = mons
            .par_iter()
            .map(|m| {
                let p = MPoly::from_term(self.rank, m.clone(), CycScalar::one(self.conductor));
                match chi {
                    None => self.reynolds(&p),
                    Some(chi) => self.isotypic_project(&p, chi),
                }
            })
            .collect();
        rows_to_canonical_basis(&images, &mons, self.rank, self.conductor)
    }

    /// Brute-force dimension of the degree-d invariants by character
    /// averaging of traces on the polynomial slice.
    pub fn molien_invariant_dim(&self, d: usize) -> usize {
        let mons = monomials(self.rank, d);
        let mut acc = CycScalar::zero(self.conductor);
        for g in 0..self.order() {
            acc = &acc + &self.trace_on_slice(g, &mons);
        }
        rational_to_usize(
            &(&acc
                * &CycScalar::from_rat(
                    self.conductor,
                    BigRational::new(One::one(), num::BigInt::from(self.order())),
                )),
        )
    }

    /// Same averaging for the chi-isotypic dimension.
    pub fn molien_isotypic_dim(&self, d: usize, chi: &[CycScalar]) -> usize {
        let mons = monomials(self.rank, d);
        let mut acc = CycScalar::zero(self.conductor);
        for g in 0..self.order() {
            acc = &acc + &(&chi[self.inverse[g]] * &self.trace_on_slice(g, &mons));
        }
        let dim = chi[0].clone();
        rational_to_usize(
            &(&(&acc * &dim)
                * &CycScalar::from_rat(
                    self.conductor,
                    BigRational::new(One::one(), num::BigInt::from(self.order())),
                )),
        )
    }

    fn trace_on_slice(&self, g: usize, mons: &[Monomial]) -> CycScalar {
        let mut acc = CycScalar::zero(self.conductor);
        for m in mons {
            let p = MPoly::from_term(self.rank, m.clone(), CycScalar::one(self.conductor));
            acc = &acc + &self.act_on_poly(g, &p).coeff(m);
        }
        acc
    }

    /// Orbit index of a hyperplane given by any scalar multiple of its form.
    pub fn orbit_of_form(&self, form: &MPoly) -> Option<usize> {
        let norm = normalize_form(form);
        self.hyperplanes
            .iter()
            .find(|h| h.alpha == norm)
            .map(|h| h.orbit)
    }

    /// `sum_H m_H n_H`.
    pub fn mult_weight(&self, m: &MultFn) -> usize {
        self.hyperplanes
            .iter()
            .map(|h| m.value(h) as usize * h.order)
            .sum()
    }
}

fn rational_to_usize(c: &CycScalar) -> usize {
    let r = c.as_rat().expect("value must be rational");
    assert!(r.is_integer());
    r.to_integer().to_usize().expect("value must be a small nonnegative integer")
}

fn normalize_vec(v: &[CycScalar]) -> Vec<CycScalar> {
    let lead = v
        .iter()
        .find(|c| !c.is_zero())
        .expect("zero covector")
        .inv();
    v.iter().map(|c| c * &lead).collect()
}

/// Reduced echelon basis (leading graded-lex monomial monic) of the span of
/// the given polynomials over the supplied monomial list.
pub fn rows_to_canonical_basis(
    polys: &[MPoly],
    mons: &[Monomial],
    nvars: usize,
    conductor: u32,
) -> Vec<MPoly> {
    let rows: Vec<Vec<CycScalar>> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.coeff_vector(mons))
        .collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let mut m = ScalarMatrix::from_rows(rows, conductor);
    let pivots = m.rref();
    (0..pivots.len())
        .map(|r| {
            let mut p = MPoly::zero(nvars, conductor);
            for (j, mon) in mons.iter().enumerate() {
                let c = m.at(r, j);
                if !c.is_zero() {
                    p = &p + &MPoly::from_term(nvars, mon.clone(), c.clone());
                }
            }
            p
        })
        .collect()
}

/// Multiplicity function, constant on hyperplane orbits (one value per orbit
/// in the group's canonical orbit order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultFn {
    values: Vec<u32>,
}

impl MultFn {
    pub fn constant(group: &ReflectionGroup, v: u32) -> Self {
        MultFn {
            values: vec![v; group.orbits.len()],
        }
    }

    pub fn by_orbit(group: &ReflectionGroup, values: Vec<u32>) -> Self {
        assert_eq!(values.len(), group.orbits.len(), "one value per orbit");
        MultFn { values }
    }

    /// Assign values by naming a form in each special orbit; remaining
    /// orbits get the default.
    pub fn by_form_values(
        group: &ReflectionGroup,
        default: u32,
        pairs: &[(&MPoly, u32)],
    ) -> Self {
        let mut values = vec![default; group.orbits.len()];
        for (form, v) in pairs {
            let orbit = group
                .orbit_of_form(form)
                .expect("form must define a reflection hyperplane");
            values[orbit] = *v;
        }
        MultFn { values }
    }

    pub fn value(&self, h: &Hyperplane) -> u32 {
        self.values[h.orbit]
    }

    pub fn orbit_values(&self) -> &[u32] {
        &self.values
    }

    /// Pointwise `max(m - 1, 0)`.
    pub fn minus_one(&self) -> Self {
        MultFn {
            values: self.values.iter().map(|&v| v.saturating_sub(1)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

impl fmt::Display for MultFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn family_generators(
    family: &Family,
) -> Result<(u32, Vec<ScalarMatrix>, Option<ScalarMatrix>), Error> {
    let c0 = |m: u32| CycScalar::zero(m);
    let c1 = |m: u32| CycScalar::one(m);
    match *family {
        Family::A(n) => {
            if n < 1 {
                return Err(Error::UnsupportedGroup("A requires rank >= 1".into()));
            }
            let m = 2;
            let mut gens = Vec::new();
            // adjacent transpositions (i, i+1) for i < n: swap coordinates
            for i in 0..n.saturating_sub(1) {
                let mut g = ScalarMatrix::identity(n, m);
                *g.at_mut(i, i) = c0(m);
                *g.at_mut(i + 1, i + 1) = c0(m);
                *g.at_mut(i, i + 1) = c1(m);
                *g.at_mut(i + 1, i) = c1(m);
                gens.push(g);
            }
            // transposition (n, n+1): u_j -> u_j - u_n (j < n), u_n -> -u_n
            let mut g = ScalarMatrix::identity(n, m);
            for j in 0..n {
                *g.at_mut(n - 1, j) = -&c1(m);
            }
            gens.push(g);
            // Gram of the basis u_i = e_i - e_{n+1}: I + ones
            let mut gram = ScalarMatrix::identity(n, m);
            for i in 0..n {
                for j in 0..n {
                    let e = gram.at_mut(i, j);
                    *e = &*e + &c1(m);
                }
            }
            Ok((m, gens, Some(gram)))
        }
        Family::B(n) => {
            if n < 2 {
                return Err(Error::UnsupportedGroup("B requires rank >= 2".into()));
            }
            let m = 2;
            let mut gens = Vec::new();
            for i in 0..n - 1 {
                let mut g = ScalarMatrix::identity(n, m);
                *g.at_mut(i, i) = c0(m);
                *g.at_mut(i + 1, i + 1) = c0(m);
                *g.at_mut(i, i + 1) = c1(m);
                *g.at_mut(i + 1, i) = c1(m);
                gens.push(g);
            }
            let mut g = ScalarMatrix::identity(n, m);
            *g.at_mut(0, 0) = -&c1(m);
            gens.push(g);
            Ok((m, gens, Some(ScalarMatrix::identity(n, m))))
        }
        Family::D(n) => {
            if n < 2 {
                return Err(Error::UnsupportedGroup("D requires rank >= 2".into()));
            }
            let m = 2;
            let mut gens = Vec::new();
            for i in 0..n - 1 {
                let mut g = ScalarMatrix::identity(n, m);
                *g.at_mut(i, i) = c0(m);
                *g.at_mut(i + 1, i + 1) = c0(m);
                *g.at_mut(i, i + 1) = c1(m);
                *g.at_mut(i + 1, i) = c1(m);
                gens.push(g);
            }
            // reflection in e1 + e2
            let mut g = ScalarMatrix::identity(n, m);
            *g.at_mut(0, 0) = c0(m);
            *g.at_mut(1, 1) = c0(m);
            *g.at_mut(0, 1) = -&c1(m);
            *g.at_mut(1, 0) = -&c1(m);
            gens.push(g);
            Ok((m, gens, Some(ScalarMatrix::identity(n, m))))
        }
        Family::I2(k) => {
            if k < 3 {
                return Err(Error::UnsupportedGroup("I2 requires k >= 3".into()));
            }
            let m = num::integer::lcm(2 * k, 4);
            // rotation by 2 pi / k and the reflection fixing x2 = 0
            let zk = CycScalar::zeta_pow(m, (m / k) as i64);
            let zki = CycScalar::zeta_pow(m, -((m / k) as i64));
            let i_unit = CycScalar::zeta_pow(m, (m / 4) as i64);
            let half = CycScalar::fraction(m, 1, 2);
            let cos = &(&zk + &zki) * &half;
            let sin = &(&(&zk - &zki) * &half) * &i_unit.inv();
            let rot = ScalarMatrix::from_rows(
                vec![vec![cos.clone(), -&sin], vec![sin.clone(), cos.clone()]],
                m,
            );
            let refl = ScalarMatrix::from_rows(
                vec![vec![c1(m), c0(m)], vec![c0(m), -&c1(m)]],
                m,
            );
            Ok((m, vec![rot, refl], Some(ScalarMatrix::identity(2, m))))
        }
        Family::G(r, n) => {
            if r < 2 || n < 1 {
                return Err(Error::UnsupportedGroup(
                    "G(r,1,N) requires r >= 2, N >= 1".into(),
                ));
            }
            let m = num::integer::lcm(r, 2);
            let mut gens = Vec::new();
            for i in 0..n.saturating_sub(1) {
                let mut g = ScalarMatrix::identity(n, m);
                *g.at_mut(i, i) = c0(m);
                *g.at_mut(i + 1, i + 1) = c0(m);
                *g.at_mut(i, i + 1) = c1(m);
                *g.at_mut(i + 1, i) = c1(m);
                gens.push(g);
            }
            let mut g = ScalarMatrix::identity(n, m);
            *g.at_mut(0, 0) = CycScalar::zeta_pow(m, (m / r) as i64);
            gens.push(g);
            Ok((m, gens, None))
        }
        Family::Custom(ref l) => Err(Error::UnsupportedGroup(format!(
            "custom group `{}` must be built from a description file",
            l
        ))),
    }
}

/// Parse a group description file: either a family header or explicit
/// generators with cyclotomic entries.
///
/// ```text
/// family B
/// rank 2
/// ```
/// or
/// ```text
/// family custom
/// label my_group
/// conductor 12
/// generator 0, 1; 1, 0
/// generator z, 0; 0, 1
/// gram 1, 0; 0, 1
/// ```
pub fn parse_group_file(text: &str) -> Result<GroupSpec, Error> {
    let mut family: Option<String> = None;
    let mut rank: Option<usize> = None;
    let mut k: Option<u32> = None;
    let mut r: Option<u32> = None;
    let mut label: Option<String> = None;
    let mut conductor: Option<u32> = None;
    let mut generators: Vec<String> = Vec::new();
    let mut gram: Option<String> = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("bad group file line `{}`", line)))?;
        let rest = rest.trim().to_string();
        match key {
            "family" => family = Some(rest),
            "rank" => rank = Some(rest.parse().map_err(|_| Error::Parse("bad rank".into()))?),
            "k" => k = Some(rest.parse().map_err(|_| Error::Parse("bad k".into()))?),
            "r" => r = Some(rest.parse().map_err(|_| Error::Parse("bad r".into()))?),
            "label" => label = Some(rest),
            "conductor" => {
                conductor = Some(rest.parse().map_err(|_| Error::Parse("bad conductor".into()))?)
            }
            "generator" => generators.push(rest),
            "gram" => gram = Some(rest),
            _ => return Err(Error::Parse(format!("unknown group file key `{}`", key))),
        }
    }
    let family = family.ok_or_else(|| Error::Parse("missing `family`".into()))?;
    match family.as_str() {
        "A" | "B" | "D" => {
            let n = rank.ok_or_else(|| Error::Parse("missing `rank`".into()))?;
            Ok(GroupSpec::Family(match family.as_str() {
                "A" => Family::A(n),
                "B" => Family::B(n),
                _ => Family::D(n),
            }))
        }
        "I2" => Ok(GroupSpec::Family(Family::I2(
            k.ok_or_else(|| Error::Parse("missing `k`".into()))?,
        ))),
        "G" => Ok(GroupSpec::Family(Family::G(
            r.ok_or_else(|| Error::Parse("missing `r`".into()))?,
            rank.ok_or_else(|| Error::Parse("missing `rank`".into()))?,
        ))),
        "custom" => {
            let conductor =
                conductor.ok_or_else(|| Error::Parse("missing `conductor`".into()))?;
            if phi(conductor) == 0 {
                return Err(Error::Parse("bad conductor".into()));
            }
            if generators.is_empty() {
                return Err(Error::Parse("custom group needs `generator` lines".into()));
            }
            let mats = generators
                .iter()
                .map(|g| parse_matrix(g, conductor))
                .collect::<Result<Vec<_>, _>>()?;
            let gram = gram.map(|g| parse_matrix(&g, conductor)).transpose()?;
            Ok(GroupSpec::Custom {
                label: label.unwrap_or_else(|| "custom".into()),
                conductor,
                generators: mats,
                gram,
            })
        }
        other => Err(Error::Parse(format!("unknown family `{}`", other))),
    }
}

fn parse_matrix(text: &str, conductor: u32) -> Result<ScalarMatrix, Error> {
    let rows: Vec<Vec<CycScalar>> = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| parse::parse_scalar(e.trim(), conductor))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = rows.len();
    for rr in &rows {
        if rr.len() != n {
            return Err(Error::Parse("matrix must be square".into()));
        }
    }
    Ok(ScalarMatrix::from_rows(rows, conductor))
}

#[derive(Clone, Debug)]
pub enum GroupSpec {
    Family(Family),
    Custom {
        label: String,
        conductor: u32,
        generators: Vec<ScalarMatrix>,
        gram: Option<ScalarMatrix>,
    },
}

impl GroupSpec {
    pub fn build(self, cap: usize) -> Result<ReflectionGroup, Error> {
        match self {
            GroupSpec::Family(f) => ReflectionGroup::build_with_cap(f, cap),
            GroupSpec::Custom {
                label,
                conductor,
                generators,
                gram,
            } => ReflectionGroup::from_generators(
                Family::Custom(label),
                conductor,
                generators,
                gram,
                cap,
            ),
        }
    }
}

/// Group-table cache keyed by the environment variable `QUASILOG_CACHE_DIR`:
/// element matrices are stored as text and reloaded instead of re-running
/// the closure; derived hyperplane data is always recomputed.
pub fn build_cached(family: Family) -> Result<ReflectionGroup, Error> {
    let dir = match std::env::var_os("QUASILOG_CACHE_DIR") {
        Some(d) => std::path::PathBuf::from(d),
        None => return ReflectionGroup::build(family),
    };
    std::fs::create_dir_all(&dir)?;
    let path = dir.join(format!("{}.table", family.label()));
    if path.exists() {
        let text = std::fs::read_to_string(&path)?;
        return load_table(&family, &text);
    }
    let g = ReflectionGroup::build(family)?;
    std::fs::write(&path, save_table(&g))?;
    Ok(g)
}

fn save_table(g: &ReflectionGroup) -> String {
    let mut out = String::new();
    out.push_str(&format!("conductor {}\n", g.conductor));
    out.push_str(&format!("rank {}\n", g.rank));
    if let Some(gram) = &g.gram {
        out.push_str(&format!("gram {}\n", matrix_text(gram)));
    }
    for &gi in &g.generators {
        out.push_str(&format!("generator {}\n", matrix_text(&g.elements[gi])));
    }
    for e in &g.elements {
        out.push_str(&format!("element {}\n", matrix_text(e)));
    }
    out
}

fn matrix_text(m: &ScalarMatrix) -> String {
    (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| m.at(i, j).to_text())
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn load_table(family: &Family, text: &str) -> Result<ReflectionGroup, Error> {
    let mut conductor = None;
    let mut gens = Vec::new();
    let mut gram = None;
    let mut count = 0usize;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse("bad cache line".into()))?;
        match key {
            "conductor" => {
                conductor = Some(rest.trim().parse().map_err(|_| Error::Parse("bad conductor".into()))?)
            }
            "rank" => {}
            "gram" => gram = Some(rest.to_string()),
            "generator" => gens.push(rest.to_string()),
            "element" => count += 1,
            _ => return Err(Error::Parse("bad cache key".into())),
        }
    }
    let conductor = conductor.ok_or_else(|| Error::Parse("cache missing conductor".into()))?;
    let gens = gens
        .iter()
        .map(|g| parse_matrix(g, conductor))
        .collect::<Result<Vec<_>, _>>()?;
    let gram = gram.map(|g| parse_matrix(&g, conductor)).transpose()?;
    let g = ReflectionGroup::from_generators(
        family.clone(),
        conductor,
        gens,
        gram,
        DEFAULT_ORDER_CAP,
    )?;
    if count != g.order() {
        return Err(Error::Parse("cache table is stale".into()));
    }
    Ok(g)
}
