//! Exact arithmetic in cyclotomic fields `Q(zeta_M)`.
//!
//! A scalar is stored in the power basis `1, zeta, ..., zeta^{phi(M)-1}`
//! with arbitrary-precision rational coordinates, always reduced modulo the
//! M-th cyclotomic polynomial. One conductor is fixed per group session;
//! mixing conductors is a programming error and panics.

use num::{BigInt, BigRational, One, Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Mutex;

pub type Rat = BigRational;

/// Euler totient.
pub fn phi(m: u32) -> usize {
    assert!(m >= 1);
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

static CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u32, Vec<BigInt>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients (low to high, monic) of the M-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    if let Some(p) = CYCLOTOMIC_CACHE.lock().unwrap().get(&m) {
        return p.clone();
    }
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, by exact division.
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = int_poly_div_exact(&num, &phi_d);
        }
    }
    CYCLOTOMIC_CACHE.lock().unwrap().insert(m, num.clone());
    num
}

/// Exact division of integer polynomials (low-to-high coefficients); the
/// divisor must be monic and divide exactly.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    assert!(dn >= dd);
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for j in 0..=dd {
                rem[k + j] -= &c * &den[j];
            }
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// An element of `Q(zeta_M)` in the power basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CycScalar {
    conductor: u32,
    coeffs: Vec<Rat>,
}

impl CycScalar {
    pub fn zero(conductor: u32) -> Self {
        CycScalar {
            conductor,
            coeffs: vec![Rat::zero(); phi(conductor)],
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rat(conductor, Rat::one())
    }

    pub fn from_rat(conductor: u32, r: Rat) -> Self {
        let mut s = Self::zero(conductor);
        s.coeffs[0] = r;
        s
    }

    pub fn from_int(conductor: u32, n: i64) -> Self {
        Self::from_rat(conductor, Rat::from_integer(BigInt::from(n)))
    }

    pub fn fraction(conductor: u32, num: i64, den: i64) -> Self {
        assert!(den != 0);
        Self::from_rat(conductor, Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The canonical primitive M-th root of unity.
    pub fn zeta(conductor: u32) -> Self {
        Self::zeta_pow(conductor, 1)
    }

    /// `zeta_M^k` for any integer k.
    pub fn zeta_pow(conductor: u32, k: i64) -> Self {
        let m = conductor as i64;
        let k = k.rem_euclid(m) as usize;
        let d = phi(conductor);
        if k < d {
            let mut s = Self::zero(conductor);
            s.coeffs[k] = Rat::one();
            return s;
        }
        // reduce x^k mod Phi_M
        let mut raw = vec![Rat::zero(); k + 1];
        raw[k] = Rat::one();
        Self::reduce(conductor, raw)
    }

    fn reduce(conductor: u32, mut raw: Vec<Rat>) -> Self {
        let d = phi(conductor);
        let cp = cyclotomic_poly(conductor);
        for i in (d..raw.len()).rev() {
            if raw[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut raw[i], Rat::zero());
            for j in 0..d {
                let t = &c * Rat::from_integer(cp[j].clone());
                raw[i - d + j] -= t;
            }
        }
        raw.truncate(d);
        raw.resize(d, Rat::zero());
        CycScalar {
            conductor,
            coeffs: raw,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this scalar lies in `Q`.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.conductor, other.conductor,
            "conductor mismatch: {} vs {}",
            self.conductor, other.conductor
        );
    }

    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().pow(-k);
        }
        let mut acc = Self::one(self.conductor);
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        self.checked_inv().expect("division by zero in cyclotomic field")
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // Extended Euclid for (self, Phi_M) over Q[x]; Phi_M is irreducible
        // so the gcd is a nonzero constant.
        let modulus: Vec<Rat> = cyclotomic_poly(self.conductor)
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        let (g, s) = poly_half_ext_gcd(&trim(self.coeffs.clone()), &modulus);
        // g is a nonzero constant: inverse = s / g
        assert_eq!(g.len(), 1, "cyclotomic polynomial not coprime to element");
        let ginv = Rat::one() / g[0].clone();
        let coeffs: Vec<Rat> = s.iter().map(|c| c * &ginv).collect();
        Some(Self::reduce(self.conductor, coeffs))
    }

    /// Complex conjugation `zeta -> zeta^{-1}` (the Galois automorphism
    /// induced by -1 mod M).
    pub fn conj(&self) -> Self {
        let m = self.conductor;
        let mut acc = Self::zero(m);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut t = Self::zeta_pow(m, -(k as i64));
                for x in t.coeffs.iter_mut() {
                    *x *= c;
                }
                acc = &acc + &t;
            }
        }
        acc
    }

    /// Order as a root of unity, if this element is one (brute force; used
    /// on determinants of reflections).
    pub fn root_of_unity_order(&self) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=self.conductor.max(1) {
            if p.is_one() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }

    /// Canonical text form `(a0 + a1*z + ...)/d` with integer `a_i`;
    /// plain rationals print as `a0` or `a0/d`.
    pub fn to_text(&self) -> String {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = num::integer::lcm(den, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let nonzero: Vec<usize> = (0..ints.len()).filter(|&i| !ints[i].is_zero()).collect();
        if nonzero.is_empty() {
            return "0".to_string();
        }
        let body = if nonzero.len() == 1 && nonzero[0] == 0 {
            format!("{}", ints[0])
        } else {
            let mut s = String::new();
            for (pos, &i) in nonzero.iter().enumerate() {
                let a = &ints[i];
                if pos == 0 {
                    if a.is_negative() {
                        s.push('-');
                    }
                } else if a.is_negative() {
                    s.push_str(" - ");
                } else {
                    s.push_str(" + ");
                }
                let abs = a.abs();
                if i == 0 {
                    s.push_str(&abs.to_string());
                } else {
                    if !abs.is_one() {
                        s.push_str(&abs.to_string());
                        s.push('*');
                    }
                    if i == 1 {
                        s.push('z');
                    } else {
                        s.push_str(&format!("z^{}", i));
                    }
                }
            }
            format!("({})", s)
        };
        if den.is_one() {
            body
        } else {
            format!("{}/{}", body, den)
        }
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

/// Half extended gcd over Q[x]: returns (g, s) with s*a = g mod b.
fn poly_half_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![Rat::one()];
    let mut s1 = vec![Rat::zero()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_div_rem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    (r0, s0)
}

fn poly_div_rem(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(!lead.is_zero());
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (vec![Rat::zero()], trim(rem));
    }
    let mut quot = vec![Rat::zero(); rem.len() - dd];
    for k in (0..=rem.len() - 1 - dd).rev() {
        let c = &rem[k + dd] / &lead;
        if !c.is_zero() {
            quot[k] = c.clone();
            for j in 0..=dd {
                let t = &c * &den[j];
                rem[k + j] -= t;
            }
        }
    }
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = x * y;
            out[i + j] += t;
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = a.to_vec();
    out.resize(a.len().max(b.len()), Rat::zero());
    for (j, y) in b.iter().enumerate() {
        out[j] -= y;
    }
    trim(out)
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<'a, 'b> Add<&'b CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &'b CycScalar) -> CycScalar {
        self.check_same(rhs);
        CycScalar {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a, 'b> Sub<&'b CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &'b CycScalar) -> CycScalar {
        self.check_same(rhs);
        CycScalar {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a, 'b> Mul<&'b CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &'b CycScalar) -> CycScalar {
        self.check_same(rhs);
        let d = self.coeffs.len();
        let mut raw = vec![Rat::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a * b;
                raw[i + j] += t;
            }
        }
        CycScalar::reduce(self.conductor, raw)
    }
}

impl<'a, 'b> Div<&'b CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn div(self, rhs: &'b CycScalar) -> CycScalar {
        self * &rhs.inv()
    }
}

impl<'a> Neg for &'a CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: &'a CycScalar) -> CycScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_and_cyclotomic_polys() {
        assert_eq!(phi(1), 1);
        assert_eq!(phi(2), 1);
        assert_eq!(phi(6), 2);
        assert_eq!(phi(12), 4);
        // Phi_12 = x^4 - x^2 + 1
        let p = cyclotomic_poly(12);
        let want: Vec<i64> = vec![1, 0, -1, 0, 1];
        assert_eq!(p, want.into_iter().map(BigInt::from).collect::<Vec<_>>());
        // Phi_6 = x^2 - x + 1
        let p = cyclotomic_poly(6);
        let want: Vec<i64> = vec![1, -1, 1];
        assert_eq!(p, want.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }

    #[test]
    fn zeta4_squares_to_minus_one() {
        let z = CycScalar::zeta(4);
        assert_eq!(&z * &z, CycScalar::from_int(4, -1));
    }

    #[test]
    fn zeta3_sum_of_powers_vanishes() {
        // (1 + zeta) + zeta^2 = 0 in Q(zeta_3)
        let one = CycScalar::one(3);
        let z = CycScalar::zeta(3);
        let z2 = CycScalar::zeta_pow(3, 2);
        assert!((&(&one + &z) + &z2).is_zero());
    }

    #[test]
    fn zeta12_power_sum() {
        // zeta^4 + zeta^-4 = -1: reduce zeta^4 + zeta^8 mod Phi_12 by long
        // division (oracle below), then compare with the library value.
        let lib = &CycScalar::zeta_pow(12, 4) + &CycScalar::zeta_pow(12, -4);

        // oracle: divide x^4 + x^8 by Phi_12 = x^4 - x^2 + 1 over Q
        let mut raw = vec![Rat::zero(); 9];
        raw[4] = Rat::one();
        raw[8] = Rat::one();
        let modulus: Vec<Rat> = cyclotomic_poly(12)
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        let (_, rem) = poly_div_rem(&raw, &modulus);
        let mut oracle = CycScalar::zero(12);
        for (i, c) in rem.iter().enumerate() {
            oracle.coeffs[i] = c.clone();
        }
        assert_eq!(lib, oracle);
        assert_eq!(lib, CycScalar::from_int(12, -1));
    }

    #[test]
    fn inverse_and_division() {
        let a = &CycScalar::zeta(12) + &CycScalar::from_int(12, 3);
        let inv = a.inv();
        assert!((&a * &inv).is_one());
        let b = &CycScalar::zeta_pow(12, 5) - &CycScalar::fraction(12, 2, 7);
        assert_eq!(&(&a * &b) / &a, b);
        assert!(CycScalar::zero(12).checked_inv().is_none());
    }

    #[test]
    #[should_panic(expected = "conductor mismatch")]
    fn mixed_conductors_rejected() {
        let _ = &CycScalar::one(3) + &CycScalar::one(4);
    }

    #[test]
    fn conjugation() {
        let z = CycScalar::zeta(12);
        assert_eq!(z.conj(), CycScalar::zeta_pow(12, -1));
        // conj is an involution and fixes rationals
        let a = &CycScalar::zeta_pow(12, 5) + &CycScalar::fraction(12, 3, 2);
        assert_eq!(a.conj().conj(), a);
        let r = CycScalar::fraction(12, -7, 3);
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn root_of_unity_order() {
        assert_eq!(CycScalar::zeta(6).root_of_unity_order(), Some(6));
        assert_eq!(CycScalar::zeta_pow(6, 2).root_of_unity_order(), Some(3));
        assert_eq!(CycScalar::one(6).root_of_unity_order(), Some(1));
        assert_eq!(CycScalar::from_int(6, 2).root_of_unity_order(), None);
    }

    #[test]
    fn text_form() {
        assert_eq!(CycScalar::from_int(12, -7).to_text(), "-7");
        assert_eq!(CycScalar::fraction(12, 1, 4).to_text(), "1/4");
        let s = &CycScalar::one(12) + &(&CycScalar::zeta(12) * &CycScalar::from_int(12, 2));
        assert_eq!(s.to_text(), "(1 + 2*z)");
        let t = &s * &CycScalar::fraction(12, 1, 3);
        assert_eq!(t.to_text(), "(1 + 2*z)/3");
    }
}
