//! Sparse multivariate polynomials over a cyclotomic field, with the linear
//! substitutions, exact divisions and determinants the arrangement machinery
//! needs.

use crate::cyclotomic::CycScalar;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector with graded-lexicographic order (total degree first,
/// then lex with `x1` largest).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of exact total degree `d`, in descending graded-lex order.
pub fn monomials(nvars: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fill(&mut out, &mut cur, 0, d);
    fn fill(out: &mut Vec<Monomial>, cur: &mut Vec<u16>, pos: usize, rem: usize) {
        if pos + 1 == cur.len() {
            cur[pos] = rem as u16;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=rem).rev() {
            cur[pos] = e as u16;
            fill(out, cur, pos + 1, rem - e);
        }
    }
    out
}

/// All monomials of total degree at most `d`, descending graded-lex.
pub fn monomials_up_to(nvars: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for k in (0..=d).rev() {
        out.extend(monomials(nvars, k));
    }
    out
}

/// Failure report for division by a power of a linear form: the largest
/// exponent that does divide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotDivisible {
    pub attained: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    nvars: usize,
    conductor: u32,
    terms: BTreeMap<Monomial, CycScalar>,
}

impl MPoly {
    pub fn zero(nvars: usize, conductor: u32) -> Self {
        MPoly {
            nvars,
            conductor,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CycScalar) -> Self {
        let mut p = Self::zero(nvars, c.conductor());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize, conductor: u32) -> Self {
        Self::constant(nvars, CycScalar::one(conductor))
    }

    pub fn var(nvars: usize, conductor: u32, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u16; nvars];
        e[i] = 1;
        Self::from_term(nvars, Monomial(e), CycScalar::one(conductor))
    }

    pub fn from_term(nvars: usize, m: Monomial, c: CycScalar) -> Self {
        assert_eq!(m.0.len(), nvars);
        let mut p = Self::zero(nvars, c.conductor());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `sum coeffs[i] x_i + constant`.
    pub fn affine_form(coeffs: &[CycScalar], constant: CycScalar) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::constant(nvars, constant);
        for (i, c) in coeffs.iter().enumerate() {
            p = &p + &Self::from_term(nvars, var_monomial(nvars, i), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.terms.keys().all(|m| m.degree() == d),
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> CycScalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| CycScalar::zero(self.conductor))
    }

    /// Leading (graded-lex largest) term.
    pub fn leading(&self) -> Option<(&Monomial, &CycScalar)> {
        self.terms.iter().next_back()
    }

    fn insert_add(&mut self, m: Monomial, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.conductor);
        }
        let mut out = Self::zero(self.nvars, self.conductor);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.nvars, self.conductor);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.conductor);
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Highest-order (top total degree) part.
    pub fn top_part(&self) -> Self {
        match self.degree() {
            None => self.clone(),
            Some(d) => self.homogeneous_part(d),
        }
    }

    pub fn partial_var(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars, self.conductor);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut em = m.clone();
            em.0[i] = e - 1;
            out.insert_add(em, c * &CycScalar::from_int(self.conductor, e as i64));
        }
        out
    }

    /// Directional derivative `sum d_i dp/dx_i`.
    pub fn partial(&self, direction: &[CycScalar]) -> Self {
        assert_eq!(direction.len(), self.nvars);
        let mut out = Self::zero(self.nvars, self.conductor);
        for (i, d) in direction.iter().enumerate() {
            if !d.is_zero() {
                out = &out + &self.partial_var(i).scale(d);
            }
        }
        out
    }

    /// Substitute `x_i := sum_j rows[i][j] x_j + shift_i` (affine image).
    pub fn subst_linear(&self, rows: &[Vec<CycScalar>], shift: Option<&[CycScalar]>) -> Self {
        assert_eq!(rows.len(), self.nvars, "dimension mismatch");
        for r in rows {
            assert_eq!(r.len(), self.nvars, "dimension mismatch");
        }
        if let Some(s) = shift {
            assert_eq!(s.len(), self.nvars, "dimension mismatch");
        }
        // fast path: monomial substitution (each variable maps to a scalar
        // multiple of a single variable, no shift)
        if shift.is_none() {
            let mut single: Vec<Option<(usize, &CycScalar)>> = Vec::with_capacity(self.nvars);
            let mut monomial_map = true;
            for r in rows {
                let nz: Vec<usize> = (0..r.len()).filter(|&j| !r[j].is_zero()).collect();
                if nz.len() == 1 {
                    single.push(Some((nz[0], &r[nz[0]])));
                } else if nz.is_empty() {
                    single.push(None);
                } else {
                    monomial_map = false;
                    break;
                }
            }
            if monomial_map {
                let mut out = Self::zero(self.nvars, self.conductor);
                'term: for (m, c) in &self.terms {
                    let mut em = vec![0u16; self.nvars];
                    let mut coeff = c.clone();
                    for (i, &e) in m.0.iter().enumerate() {
                        if e == 0 {
                            continue;
                        }
                        match single[i] {
                            None => continue 'term,
                            Some((j, s)) => {
                                em[j] += e;
                                coeff = &coeff * &s.pow(e as i64);
                            }
                        }
                    }
                    out.insert_add(Monomial(em), coeff);
                }
                return out;
            }
        }
        // general path: powers of each image form, cached
        let images: Vec<MPoly> = (0..self.nvars)
            .map(|i| {
                let cst = match shift {
                    Some(s) => s[i].clone(),
                    None => CycScalar::zero(self.conductor),
                };
                MPoly::affine_form(&rows[i], cst)
            })
            .collect();
        let mut powers: Vec<Vec<MPoly>> = images
            .iter()
            .map(|f| vec![Self::one(self.nvars, self.conductor), f.clone()])
            .collect();
        let mut out = Self::zero(self.nvars, self.conductor);
        for (m, c) in &self.terms {
            let mut t = Self::constant(self.nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    pub fn eval(&self, point: &[CycScalar]) -> CycScalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = CycScalar::zero(self.conductor);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e as i64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Reinterpret in `new_nvars >= nvars` variables (extra variables unused).
    pub fn extend_vars(&self, new_nvars: usize) -> Self {
        assert!(new_nvars >= self.nvars);
        let mut out = Self::zero(new_nvars, self.conductor);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.resize(new_nvars, 0);
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Homogenize to degree `target` with a fresh last variable:
    /// `x^mu -> x^mu z^(target - |mu|)` in `nvars + 1` variables.
    pub fn homogenize(&self, target: usize) -> Self {
        let mut out = Self::zero(self.nvars + 1, self.conductor);
        for (m, c) in &self.terms {
            let d = m.degree();
            assert!(d <= target, "degree above homogenization target");
            let mut e = m.0.clone();
            e.push((target - d) as u16);
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Set the last variable to 1 and drop it.
    pub fn dehomogenize(&self) -> Self {
        assert!(self.nvars >= 1);
        let mut out = Self::zero(self.nvars - 1, self.conductor);
        for (m, c) in &self.terms {
            let e = m.0[..self.nvars - 1].to_vec();
            out.insert_add(Monomial(e), c.clone());
        }
        out
    }

    /// Exact division by an arbitrary nonzero polynomial; `None` when the
    /// division leaves a remainder.
    pub fn div_exact(&self, g: &MPoly) -> Option<MPoly> {
        assert!(!g.is_zero(), "division by zero polynomial");
        assert_eq!(self.nvars, g.nvars);
        let (gm, gc) = g.leading().unwrap();
        let gcinv = gc.inv();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars, self.conductor);
        while let Some((rm, rc)) = rem.leading() {
            let mut e = vec![0u16; self.nvars];
            for i in 0..self.nvars {
                if rm.0[i] < gm.0[i] {
                    return None;
                }
                e[i] = rm.0[i] - gm.0[i];
            }
            let c = rc * &gcinv;
            let t = Self::from_term(self.nvars, Monomial(e), c);
            quot = &quot + &t;
            rem = &rem - &(&t * g);
        }
        Some(quot)
    }

    /// Divide by `alpha^k` for an affine-linear form `alpha` (nonzero linear
    /// part), via an invertible coordinate change sending `alpha` to the
    /// pivot variable. On failure reports the largest exponent that divides.
    pub fn div_linear_power(&self, alpha: &MPoly, k: usize) -> Result<MPoly, NotDivisible> {
        assert_eq!(self.nvars, alpha.nvars);
        if k == 0 || self.is_zero() {
            return Ok(self.clone());
        }
        let change = PivotChange::new(alpha);
        let pivot = change.pivot;
        let transformed = change.forward(self);
        let attained = transformed
            .terms
            .keys()
            .map(|m| m.0[pivot] as usize)
            .min()
            .unwrap();
        if attained < k {
            return Err(NotDivisible { attained });
        }
        // strip alpha^k and substitute back y_pivot := alpha(x)
        let mut stripped = Self::zero(self.nvars, self.conductor);
        for (m, c) in &transformed.terms {
            let mut e = m.0.clone();
            e[pivot] -= k as u16;
            stripped.terms.insert(Monomial(e), c.clone());
        }
        Ok(change.backward(&stripped))
    }

    /// Coefficient vector over an explicit monomial list (entries for
    /// monomials outside the list must be absent).
    pub fn coeff_vector(&self, basis: &[Monomial]) -> Vec<CycScalar> {
        let idx: std::collections::HashMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![CycScalar::zero(self.conductor); basis.len()];
        for (m, c) in &self.terms {
            let i = *idx.get(m).unwrap_or_else(|| {
                panic!("monomial {:?} outside the supplied basis", m);
            });
            v[i] = c.clone();
        }
        v
    }

    /// Canonical text form, terms in descending graded-lex order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (pos, (m, c)) in self.terms.iter().rev().enumerate() {
            // split a leading rational sign so `3*x - 7*y` prints naturally
            let (sign_neg, coeff) = match c.as_rat() {
                Some(r) if r < num::BigRational::from_integer(0.into()) => (true, -c),
                _ => (false, c.clone()),
            };
            if pos == 0 {
                if sign_neg {
                    s.push('-');
                }
            } else if sign_neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let mono = monomial_text(m);
            if mono.is_empty() {
                s.push_str(&coeff.to_text());
            } else if coeff.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&coeff.to_text());
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

fn var_monomial(nvars: usize, i: usize) -> Monomial {
    let mut e = vec![0u16; nvars];
    e[i] = 1;
    Monomial(e)
}

fn monomial_text(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 1 {
            parts.push(format!("x{}", i + 1));
        } else if e > 1 {
            parts.push(format!("x{}^{}", i + 1, e));
        }
    }
    parts.join("*")
}

/// Invertible affine coordinate change carrying a linear form to a single
/// variable: `forward` rewrites a polynomial in coordinates where the form
/// is the pivot variable, `backward` undoes it.
#[derive(Clone, Debug)]
pub struct PivotChange {
    pub pivot: usize,
    fwd_rows: Vec<Vec<CycScalar>>,
    fwd_shift: Vec<CycScalar>,
    back_rows: Vec<Vec<CycScalar>>,
    back_shift: Vec<CycScalar>,
}

impl PivotChange {
    pub fn new(alpha: &MPoly) -> Self {
        let n = alpha.nvars();
        let conductor = alpha.conductor();
        let (lin, cst) = linear_parts(alpha);
        let pivot = (0..n)
            .find(|&i| !lin[i].is_zero())
            .expect("form has zero linear part");
        let inv = lin[pivot].inv();
        let identity_row = |i: usize| {
            let mut r = vec![CycScalar::zero(conductor); n];
            r[i] = CycScalar::one(conductor);
            r
        };
        // x_pivot = (y_pivot - cst - sum_{j != pivot} lin_j y_j) / lin_pivot
        let mut fwd_rows: Vec<Vec<CycScalar>> = (0..n).map(identity_row).collect();
        let mut fwd_shift = vec![CycScalar::zero(conductor); n];
        for j in 0..n {
            fwd_rows[pivot][j] = if j == pivot {
                inv.clone()
            } else {
                -&(&lin[j] * &inv)
            };
        }
        fwd_shift[pivot] = -&(&cst * &inv);
        // y_pivot = alpha(x)
        let mut back_rows: Vec<Vec<CycScalar>> = (0..n).map(identity_row).collect();
        let mut back_shift = vec![CycScalar::zero(conductor); n];
        back_rows[pivot] = lin;
        back_shift[pivot] = cst;
        PivotChange {
            pivot,
            fwd_rows,
            fwd_shift,
            back_rows,
            back_shift,
        }
    }

    pub fn forward(&self, p: &MPoly) -> MPoly {
        p.subst_linear(&self.fwd_rows, Some(&self.fwd_shift))
    }

    pub fn backward(&self, p: &MPoly) -> MPoly {
        p.subst_linear(&self.back_rows, Some(&self.back_shift))
    }
}

/// Linear-part coefficients and constant term of an affine form of degree at
/// most 1.
pub fn linear_parts(alpha: &MPoly) -> (Vec<CycScalar>, CycScalar) {
    assert!(alpha.degree().unwrap_or(0) <= 1, "form must be affine-linear");
    let n = alpha.nvars();
    let mut lin = vec![CycScalar::zero(alpha.conductor()); n];
    let mut cst = CycScalar::zero(alpha.conductor());
    for (m, c) in alpha.terms() {
        match m.degree() {
            0 => cst = c.clone(),
            1 => {
                let i = (0..n).find(|&i| m.0[i] == 1).unwrap();
                lin[i] = c.clone();
            }
            _ => unreachable!(),
        }
    }
    (lin, cst)
}

/// Normalize a nonzero affine form so its first nonzero linear coefficient
/// is 1.
pub fn normalize_form(alpha: &MPoly) -> MPoly {
    let (lin, _) = linear_parts(alpha);
    let lead = lin
        .iter()
        .find(|c| !c.is_zero())
        .expect("form has zero linear part");
    alpha.scale(&lead.inv())
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<'a, 'b> std::ops::Add<&'b MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'b MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, 'b> std::ops::Sub<&'b MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'b MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), -c);
        }
        out
    }
}

impl<'a, 'b> std::ops::Mul<&'b MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'b MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MPoly::zero(self.nvars, self.conductor);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e: Vec<u16> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.insert_add(Monomial(e), ca * cb);
            }
        }
        out
    }
}

impl<'a> std::ops::Neg for &'a MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let mut out = MPoly::zero(self.nvars, self.conductor);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c);
        }
        out
    }
}

/// Row-major matrix of polynomials sharing one variable set.
#[derive(Clone, Debug)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<MPoly>>) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let nvars = rows[0][0].nvars();
        for row in &rows {
            assert_eq!(row.len(), c);
            for e in row {
                assert_eq!(e.nvars(), nvars, "entries must share nvars");
            }
        }
        PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.cols + j]
    }

    /// Exact determinant: cofactor expansion up to 4x4, Bareiss
    /// fraction-free elimination above.
    pub fn det(&self) -> MPoly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows <= 4 {
            return self.det_cofactor();
        }
        self.det_bareiss()
    }

    pub fn det_cofactor(&self) -> MPoly {
        let n = self.rows;
        let nvars = self.entries[0].nvars();
        let conductor = self.entries[0].conductor();
        if n == 1 {
            return self.entries[0].clone();
        }
        let mut acc = MPoly::zero(nvars, conductor);
        // expand along the first row, skipping zero entries
        for j in 0..n {
            let e = self.at(0, j);
            if e.is_zero() {
                continue;
            }
            let minor = self.minor(0, j);
            let term = e * &minor.det_cofactor();
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    pub fn minor(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        let mut rows = Vec::new();
        for i in 0..self.rows {
            if i == skip_row {
                continue;
            }
            let mut row = Vec::new();
            for j in 0..self.cols {
                if j == skip_col {
                    continue;
                }
                row.push(self.at(i, j).clone());
            }
            rows.push(row);
        }
        PolyMatrix::from_rows(rows)
    }

    fn det_bareiss(&self) -> MPoly {
        let n = self.rows;
        let nvars = self.entries[0].nvars();
        let conductor = self.entries[0].conductor();
        let mut a: Vec<Vec<MPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut sign_neg = false;
        let mut prev = MPoly::one(nvars, conductor);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign_neg = !sign_neg;
                    }
                    None => return MPoly::zero(nvars, conductor),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = t
                        .div_exact(&prev)
                        .expect("fraction-free elimination: inexact division");
                }
            }
            for i in k + 1..n {
                a[i][k] = MPoly::zero(nvars, conductor);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign_neg {
            -&d
        } else {
            d
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycScalar;

    fn c(n: i64) -> CycScalar {
        CycScalar::from_int(6, n)
    }

    fn x(i: usize) -> MPoly {
        MPoly::var(2, 6, i)
    }

    fn parse2(s: &str) -> MPoly {
        crate::parse::parse_poly(s, 2, 6).unwrap()
    }

    #[test]
    fn grlex_order() {
        // x1^7 > x1^5 x2^2 > x2^7 > x1^2 within degree; degree dominates
        let m1 = Monomial(vec![7, 0]);
        let m2 = Monomial(vec![5, 2]);
        let m3 = Monomial(vec![0, 7]);
        let m4 = Monomial(vec![2, 0]);
        assert!(m1 > m2 && m2 > m3 && m3 > m4);
        let all = monomials(2, 2);
        let degs: Vec<Vec<u16>> = all.iter().map(|m| m.0.clone()).collect();
        assert_eq!(degs, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn arithmetic_and_text() {
        let p = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(p.to_text(), "x1^2 - x2^2");
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_homogeneous());
        let q = &p + &MPoly::constant(2, c(5));
        assert!(!q.is_homogeneous());
        assert!(MPoly::zero(2, 6).degree().is_none());
    }

    #[test]
    fn subst_swap_fixes_symmetric() {
        let p = &x(0) * &x(1);
        let swap = vec![vec![c(0), c(1)], vec![c(1), c(0)]];
        assert_eq!(p.subst_linear(&swap, None), p);
    }

    #[test]
    fn subst_translation_binomial() {
        // x1^2 at x1 -> x1 + 1 gives x1^2 + 2x1 + 1
        let p = &x(0) * &x(0);
        let id = vec![vec![c(1), c(0)], vec![c(0), c(1)]];
        let t = vec![c(1), c(0)];
        let q = p.subst_linear(&id, Some(&t));
        assert_eq!(q, parse2("x1^2 + 2*x1 + 1"));
    }

    #[test]
    fn subst_cube_root_action_fixes_cube() {
        // x1 -> zeta_3 x1 fixes x1^3; direct expansion oracle
        let zeta3 = CycScalar::zeta_pow(6, 2); // zeta_6^2 = zeta_3
        let rows = vec![vec![zeta3.clone(), c(0)], vec![c(0), c(1)]];
        let p = x(0).pow(3);
        assert_eq!(p.subst_linear(&rows, None), p);
        // oracle: (zeta_3 x1)^3 = zeta_3^3 x1^3 with zeta_3^3 = 1
        assert!(zeta3.pow(3).is_one());
    }

    #[test]
    fn division_by_linear_powers() {
        let p = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let alpha = &x(0) - &x(1);
        assert_eq!(p.div_linear_power(&alpha, 1).unwrap(), parse2("x1 + x2"));
        assert_eq!(
            p.div_linear_power(&alpha, 2),
            Err(NotDivisible { attained: 1 })
        );
        // divide by an affine form
        let q = &(&x(0) + &MPoly::constant(2, c(3))) * &x(1);
        let aff = &x(0) + &MPoly::constant(2, c(3));
        assert_eq!(q.div_linear_power(&aff, 1).unwrap(), x(1));
        // zero dividend divides by anything
        assert!(MPoly::zero(2, 6).div_linear_power(&alpha, 5).is_ok());
    }

    #[test]
    fn division_example_g312_row() {
        // (1 - s)(x1^7 - 7 x1^4 x2^3) for s: x1 -> zeta_3 x1 is divisible by x1^3
        let zeta3 = CycScalar::zeta_pow(6, 2);
        let p = &x(0).pow(7) - &(&x(0).pow(4) * &x(1).pow(3)).scale(&c(7));
        // group action: (s.p)(x) = p(s^{-1} x), s^{-1}: x1 -> zeta_3^{-1} x1
        let rows = vec![vec![zeta3.pow(-1), c(0)], vec![c(0), c(1)]];
        let sp = p.subst_linear(&rows, None);
        let diff = &p - &sp;
        assert!(diff.div_linear_power(&x(0), 3).is_ok());
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(x(0).pow(3).partial(&[c(1), c(0)]), parse2("3*x1^2"));
        let p = &x(0) * &x(1);
        assert_eq!(p.partial(&[c(1), c(-1)]), parse2("-x1 + x2"));
        // d/dx2 of -7 x1^4 x2^3 is divisible by x2^2 (termwise oracle)
        let q = &x(0).pow(7) - &(&x(0).pow(4) * &x(1).pow(3)).scale(&c(7));
        let d = q.partial(&[c(0), c(1)]);
        assert_eq!(d, parse2("-21*x1^4*x2^2"));
        assert!(d.div_linear_power(&x(1), 2).is_ok());
    }

    #[test]
    fn partials_commute() {
        let p = parse2("x1^3*x2 + 5*x1*x2^4 - 2*x1^2");
        let u = [c(1), c(3)];
        let v = [c(-2), c(5)];
        assert_eq!(p.partial(&u).partial(&v), p.partial(&v).partial(&u));
    }

    #[test]
    fn dets_small() {
        let one = MPoly::one(2, 6);
        let zero = MPoly::zero(2, 6);
        let id3 = PolyMatrix::from_rows(vec![
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
        ]);
        assert_eq!(id3.det(), one);
        let m = PolyMatrix::from_rows(vec![vec![x(0), x(1)], vec![x(1), x(0)]]);
        assert_eq!(m.det(), parse2("x1^2 - x2^2"));
    }

    #[test]
    fn det_example1_tilde_basis() {
        // matrix of the two degree-6 fields from the rank-2 complex group:
        // determinant is 4 x1^3 x2^3 (x1^3 - x2^3)^2, total degree 12
        let a11 = parse2("x1^6 - 4*x1^3*x2^3");
        let a12 = parse2("-3*x1^2*x2^4");
        let a21 = parse2("3*x1^4*x2^2");
        let a22 = parse2("4*x1^3*x2^3 - x2^6");
        let d = PolyMatrix::from_rows(vec![vec![a11, a12], vec![a21, a22]]).det();
        let prod = {
            let f = parse2("x1^3 - x2^3");
            let t = &(&x(0).pow(3) * &x(1).pow(3)) * &(&f * &f);
            t.scale(&c(4))
        };
        assert_eq!(d, prod);
        assert_eq!(d.degree(), Some(12));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        // deterministic pseudo-random 5x5 degree-<=1 entries
        let mut seed = 9u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        let entries: Vec<Vec<MPoly>> = (0..5)
            .map(|_| {
                (0..5)
                    .map(|_| {
                        let a = MPoly::constant(2, c(next()));
                        let b = x(0).scale(&c(next()));
                        let d = x(1).scale(&c(next()));
                        &(&a + &b) + &d
                    })
                    .collect()
            })
            .collect();
        let m = PolyMatrix::from_rows(entries);
        assert_eq!(m.det(), m.det_cofactor());
    }

    #[test]
    fn homogenize_dehomogenize() {
        let p = parse2("x1^2 + 3*x1 - 1");
        let h = p.homogenize(2);
        assert_eq!(h.nvars(), 3);
        assert!(h.is_homogeneous());
        assert_eq!(h.dehomogenize(), p);
    }
}
