//! Dense exact linear algebra over a cyclotomic field: reduced row echelon
//! form, rank, nullspace, solving, inversion. RREF is unique, so every
//! derived basis is canonical and independent of evaluation order.

use crate::cyclotomic::CycScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMatrix {
    pub rows: usize,
    pub cols: usize,
    conductor: u32,
    data: Vec<CycScalar>,
}

impl ScalarMatrix {
    pub fn zero(rows: usize, cols: usize, conductor: u32) -> Self {
        ScalarMatrix {
            rows,
            cols,
            conductor,
            data: vec![CycScalar::zero(conductor); rows * cols],
        }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        let mut m = Self::zero(n, n, conductor);
        for i in 0..n {
            *m.at_mut(i, i) = CycScalar::one(conductor);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycScalar>>, conductor: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        for row in &rows {
            assert_eq!(row.len(), c);
        }
        ScalarMatrix {
            rows: r,
            cols: c,
            conductor,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn at(&self, i: usize, j: usize) -> &CycScalar {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut CycScalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[CycScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<CycScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ScalarMatrix::zero(self.rows, other.cols, self.conductor);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    let e = out.at_mut(i, j);
                    *e = &*e + &t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycScalar]) -> Vec<CycScalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = CycScalar::zero(self.conductor);
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() && !v[j].is_zero() {
                        acc = &acc + &(self.at(i, j) * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut out = ScalarMatrix::zero(self.cols, self.rows, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot_row = match (r..self.rows).find(|&i| !self.at(i, c).is_zero()) {
                Some(i) => i,
                None => continue,
            };
            if pivot_row != r {
                for j in 0..self.cols {
                    self.data.swap(pivot_row * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.at(r, c).inv();
            for j in c..self.cols {
                let v = &*self.at(r, j) * &inv;
                *self.at_mut(r, j) = v;
            }
            for i in 0..self.rows {
                if i == r || self.at(i, c).is_zero() {
                    continue;
                }
                let f = self.at(i, c).clone();
                for j in c..self.cols {
                    let t = &f * self.at(r, j);
                    let e = self.at_mut(i, j);
                    *e = &*e - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Canonical nullspace basis from the unique RREF.
    pub fn nullspace(&self) -> Vec<Vec<CycScalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![CycScalar::zero(self.conductor); self.cols];
            v[f] = CycScalar::one(self.conductor);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.at(r, f);
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> CycScalar {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = CycScalar::one(self.conductor);
        for c in 0..n {
            let pivot_row = match (c..n).find(|&i| !m.at(i, c).is_zero()) {
                Some(i) => i,
                None => return CycScalar::zero(self.conductor),
            };
            if pivot_row != c {
                for j in 0..n {
                    m.data.swap(pivot_row * n + j, c * n + j);
                }
                det = -&det;
            }
            det = &det * m.at(c, c);
            let inv = m.at(c, c).inv();
            for i in c + 1..n {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let f = &*m.at(i, c) * &inv;
                for j in c..n {
                    let t = &f * m.at(c, j);
                    let e = m.at_mut(i, j);
                    *e = &*e - &t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<ScalarMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = ScalarMatrix::zero(n, 2 * n, self.conductor);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = CycScalar::one(self.conductor);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = ScalarMatrix::zero(n, n, self.conductor);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Some(out)
    }

    /// One solution of `self * x = rhs`, if consistent.
    pub fn solve(&self, rhs: &[CycScalar]) -> Option<Vec<CycScalar>> {
        assert_eq!(self.rows, rhs.len());
        let mut aug = ScalarMatrix::zero(self.rows, self.cols + 1, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = rhs[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![CycScalar::zero(self.conductor); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }
}

/// Drop rows that are scalar multiples of an earlier row (the solution set
/// of a homogeneous system is unchanged). Rows are compared after scaling
/// the first nonzero entry to 1.
pub fn dedup_proportional_rows(rows: Vec<Vec<CycScalar>>) -> Vec<Vec<CycScalar>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for row in rows {
        match row.iter().find(|c| !c.is_zero()) {
            None => continue, // zero row
            Some(lead) => {
                let inv = lead.inv();
                let normalized: Vec<CycScalar> = row.iter().map(|c| c * &inv).collect();
                if seen.insert(normalized) {
                    out.push(row);
                }
            }
        }
    }
    out
}

/// Rank of a list of vectors.
pub fn span_rank(vectors: &[Vec<CycScalar>], conductor: u32) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    ScalarMatrix::from_rows(vectors.to_vec(), conductor).rank()
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn in_span(basis: &[Vec<CycScalar>], v: &[CycScalar], conductor: u32) -> Option<Vec<CycScalar>> {
    if basis.is_empty() {
        return if v.iter().all(CycScalar::is_zero) {
            Some(vec![])
        } else {
            None
        };
    }
    let cols = ScalarMatrix::from_rows(basis.to_vec(), conductor).transpose();
    cols.solve(v)
}

/// Indices of input vectors forming a maximal independent subfamily,
/// scanning in order.
pub fn independent_subset(vectors: &[Vec<CycScalar>], conductor: u32) -> Vec<usize> {
    let mut chosen: Vec<Vec<CycScalar>> = Vec::new();
    let mut idx = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut trial = chosen.clone();
        trial.push(v.clone());
        if span_rank(&trial, conductor) > chosen.len() {
            chosen = trial;
            idx.push(i);
        }
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CycScalar {
        CycScalar::from_int(4, n)
    }

    #[test]
    fn rref_rank_nullspace() {
        let m = ScalarMatrix::from_rows(
            vec![
                vec![c(1), c(2), c(3)],
                vec![c(2), c(4), c(6)],
                vec![c(1), c(0), c(1)],
            ],
            4,
        );
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(CycScalar::is_zero));
        }
    }

    #[test]
    fn det_inverse_solve() {
        let z = CycScalar::zeta(4);
        let m = ScalarMatrix::from_rows(
            vec![vec![c(1), z.clone()], vec![z.clone(), c(1)]],
            4,
        );
        // det = 1 - zeta^2 = 1 - (-1) = 2
        assert_eq!(m.det(), c(2));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ScalarMatrix::identity(2, 4));
        let x = m.solve(&[c(3), c(1)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![c(3), c(1)]);
    }

    #[test]
    fn span_helpers() {
        let b = vec![vec![c(1), c(0), c(1)], vec![c(0), c(1), c(1)]];
        assert_eq!(span_rank(&b, 4), 2);
        let coords = in_span(&b, &[c(2), c(3), c(5)], 4).unwrap();
        assert_eq!(coords, vec![c(2), c(3)]);
        assert!(in_span(&b, &[c(0), c(0), c(1)], 4).is_none());
        let picked = independent_subset(
            &[
                vec![c(1), c(1)],
                vec![c(2), c(2)],
                vec![c(0), c(1)],
                vec![c(5), c(0)],
            ],
            4,
        );
        assert_eq!(picked, vec![0, 2]);
    }
}
