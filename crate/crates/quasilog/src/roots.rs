//! Reduced crystallographic root systems (types A, B, D at small rank) in
//! the coordinates of the matching reflection group, for the trigonometric
//! quasi-invariant conditions and Catalan arrangements.

use crate::cyclotomic::CycScalar;
use crate::error::Error;
use crate::group::{Family, MultFn, ReflectionGroup};
use crate::linalg::ScalarMatrix;
use crate::poly::{normalize_form, MPoly};

#[derive(Clone, Debug)]
pub struct Root {
    /// Coordinates of the root as a vector in V.
    pub vector: Vec<CycScalar>,
    /// Coordinates of the coroot `2 alpha / (alpha, alpha)`.
    pub coroot: Vec<CycScalar>,
    /// Linear form `(alpha, x)` in the session variables.
    pub form: MPoly,
    /// Orbit of the root's hyperplane in the group.
    pub orbit: usize,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub group: ReflectionGroup,
    pub positive: Vec<Root>,
}

impl RootSystem {
    /// Positive roots of the Weyl family backing `family`.
    pub fn build(family: Family) -> Result<Self, Error> {
        let group = ReflectionGroup::build(family.clone())?;
        let gram = group
            .gram
            .clone()
            .ok_or_else(|| Error::UnsupportedGroup("family has no bilinear form".into()))?;
        let cond = group.conductor;
        let n = group.rank;
        let e = |i: usize| {
            let mut v = vec![CycScalar::zero(cond); n];
            v[i] = CycScalar::one(cond);
            v
        };
        let sub = |a: &[CycScalar], b: &[CycScalar]| -> Vec<CycScalar> {
            a.iter().zip(b).map(|(x, y)| x - y).collect()
        };
        let add = |a: &[CycScalar], b: &[CycScalar]| -> Vec<CycScalar> {
            a.iter().zip(b).map(|(x, y)| x + y).collect()
        };
        let vectors: Vec<Vec<CycScalar>> = match family {
            // roots u_i - u_j (i < j) and u_i, in the essential basis
            Family::A(_) => {
                let mut v: Vec<Vec<CycScalar>> = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        v.push(sub(&e(i), &e(j)));
                    }
                }
                for i in 0..n {
                    v.push(e(i));
                }
                v
            }
            Family::B(_) => {
                let mut v: Vec<Vec<CycScalar>> = (0..n).map(e).collect();
                for i in 0..n {
                    for j in i + 1..n {
                        v.push(sub(&e(i), &e(j)));
                        v.push(add(&e(i), &e(j)));
                    }
                }
                v
            }
            Family::D(_) => {
                let mut v = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        v.push(sub(&e(i), &e(j)));
                        v.push(add(&e(i), &e(j)));
                    }
                }
                v
            }
            other => {
                return Err(Error::UnsupportedGroup(format!(
                    "no reduced crystallographic root system for {}",
                    other
                )))
            }
        };
        let positive = vectors
            .into_iter()
            .map(|vector| Root::from_vector(&group, &gram, vector))
            .collect();
        Ok(RootSystem { group, positive })
    }

    pub fn rank(&self) -> usize {
        self.group.rank
    }

    pub fn conductor(&self) -> u32 {
        self.group.conductor
    }

    /// Multiplicity of a root, read off its hyperplane orbit.
    pub fn mult_of_root(&self, m: &MultFn, root: &Root) -> u32 {
        m.orbit_values()[root.orbit]
    }
}

impl Root {
    fn from_vector(group: &ReflectionGroup, gram: &ScalarMatrix, vector: Vec<CycScalar>) -> Root {
        let cond = group.conductor;
        let covector = gram.mul_vec(&vector);
        let form = MPoly::affine_form(&covector, CycScalar::zero(cond));
        let norm: CycScalar = vector
            .iter()
            .zip(&covector)
            .fold(CycScalar::zero(cond), |acc, (a, b)| &acc + &(a * b));
        let two_over = &CycScalar::from_int(cond, 2) / &norm;
        let coroot: Vec<CycScalar> = vector.iter().map(|c| c * &two_over).collect();
        let orbit = group
            .orbit_of_form(&normalize_form(&form))
            .expect("root hyperplane must belong to the arrangement");
        Root {
            vector,
            coroot,
            form,
            orbit,
        }
    }
}
