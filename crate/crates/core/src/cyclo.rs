//! Elements of the cyclotomic field `Q(ζ_N)`.
//!
//! An element is stored in the power basis `ζ^0, …, ζ^(φ(N)-1)` and kept
//! reduced modulo the `N`-th cyclotomic polynomial. Values of different
//! orders may be mixed; they are lifted into `Q(ζ_lcm)` first.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// Coefficients (low degree first) of the `n`-th cyclotomic polynomial.
///
/// Obtained from `X^n - 1` by exact division by `Φ_d` for every proper
/// divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let divisor = cyclotomic_polynomial(d);
        poly = divide_monic(&poly, &divisor);
    }
    let poly = Arc::new(poly);
    cyclotomic_cache().lock().unwrap().insert(n, poly.clone());
    poly
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quo = vec![0i64; num.len() - dd];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dd];
        quo[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quo
}

/// An element of `Q(ζ_order)`.
#[derive(Clone, Debug)]
pub struct Cyclo<Q> {
    order: u32,
    coeffs: Vec<Q>,
}

impl<Q: Scalar> Cyclo<Q> {
    /// Reduce an arbitrary coefficient vector in powers of `ζ_order`.
    pub fn from_powers(order: u32, powers: Vec<Q>) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let n = order as usize;
        let mut folded = vec![Q::zero(); n];
        for (i, c) in powers.into_iter().enumerate() {
            if !c.is_zero() {
                folded[i % n] = folded[i % n].clone() + c;
            }
        }
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        for top in (deg..n).rev() {
            let c = std::mem::replace(&mut folded[top], Q::zero());
            if c.is_zero() {
                continue;
            }
            for (j, &pj) in phi.iter().take(deg).enumerate() {
                if pj != 0 {
                    let idx = top - deg + j;
                    folded[idx] = folded[idx].clone() - c.clone() * Q::from_int(pj);
                }
            }
        }
        folded.truncate(deg);
        Cyclo { order, coeffs: folded }
    }

    pub fn from_rational(q: Q) -> Self {
        Cyclo { order: 1, coeffs: vec![q] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Q::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn zero_of_order(order: u32) -> Self {
        Cyclo { order, coeffs: vec![Q::zero(); euler_phi(order) as usize] }
    }

    /// `ζ_n^k` in reduced form.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let mut powers = vec![Q::zero(); n as usize];
        powers[k.rem_euclid(n as i64) as usize] = Q::one();
        Self::from_powers(n, powers)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Q> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Q::zero))
        } else {
            None
        }
    }

    /// Embed into `Q(ζ_target)`; `self.order` must divide `target`.
    pub fn lift(&self, target: u32) -> Result<Self> {
        if target == self.order {
            return Ok(self.clone());
        }
        if !target.is_multiple_of(self.order) {
            return Err(Error::RingMismatch(format!(
                "cannot embed Q(ζ_{}) into Q(ζ_{})",
                self.order, target
            )));
        }
        let step = (target / self.order) as usize;
        let mut powers = vec![Q::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            powers[i * step] = c.clone();
        }
        Ok(Self::from_powers(target, powers))
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let l = self.order.lcm(&other.order);
        (self.lift(l).unwrap(), other.lift(l).unwrap())
    }

    pub fn scale(&self, q: &Q) -> Self {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.clone() * q.clone()).collect(),
        }
    }

    /// Multiplicative inverse, by solving the multiplication-by-`self` system.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            let mut out = Self::zero_of_order(self.order);
            out.coeffs[0] = Q::one() / q;
            return Ok(out);
        }
        let m = self.coeffs.len();
        // column j holds self * ζ^j
        let mut mat: Vec<Vec<Q>> = vec![vec![Q::zero(); m + 1]; m];
        for j in 0..m {
            let mut powers = vec![Q::zero(); self.order as usize];
            powers[j] = Q::one();
            let prod = self.mul_ref(&Self::from_powers(self.order, powers));
            for i in 0..m {
                mat[i][j] = prod.coeffs[i].clone();
            }
        }
        mat[0][m] = Q::one();
        for col in 0..m {
            let pivot = (col..m)
                .find(|&r| !mat[r][col].is_zero())
                .expect("multiplication map of a nonzero field element is invertible");
            mat.swap(col, pivot);
            let pv = mat[col][col].clone();
            for c in col..=m {
                mat[col][c] = mat[col][c].clone() / pv.clone();
            }
            for r in 0..m {
                if r != col && !mat[r][col].is_zero() {
                    let f = mat[r][col].clone();
                    for c in col..=m {
                        let v = mat[col][c].clone() * f.clone();
                        mat[r][c] = mat[r][c].clone() - v;
                    }
                }
            }
        }
        Ok(Cyclo { order: self.order, coeffs: mat.into_iter().map(|row| row[m].clone()).collect() })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclo { order: self.order, coeffs: Self::one().lift(self.order)?.coeffs };
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&b);
            }
            b = b.mul_ref(&b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Complex conjugation, the automorphism `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut powers = vec![Q::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            powers[(n - i) % n] = c.clone();
        }
        Self::from_powers(self.order, powers)
    }

    fn add_ref(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        Cyclo {
            order: a.order,
            coeffs: a.coeffs.into_iter().zip(b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        Cyclo {
            order: a.order,
            coeffs: a.coeffs.into_iter().zip(b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.order == 1 && other.order == 1 {
            return Cyclo {
                order: 1,
                coeffs: vec![self.coeffs[0].clone() * other.coeffs[0].clone()],
            };
        }
        let (a, b) = self.common(other);
        if let Some(q) = a.as_rational() {
            return b.scale(&q);
        }
        if let Some(q) = b.as_rational() {
            return a.scale(&q);
        }
        let mut powers = vec![Q::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    powers[i + j] = powers[i + j].clone() + x.clone() * y.clone();
                }
            }
        }
        Self::from_powers(a.order, powers)
    }

    /// Parse the `Display` form: `-1 + 1/2*z^1`, `z^3`, `0`.
    pub fn parse(order: u32, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut powers = vec![Q::zero(); order as usize];
        if s == "0" {
            return Ok(Self::from_powers(order, powers));
        }
        for term in s.split(" + ") {
            let term = term.trim();
            let (coeff, power) = match term.find("z^") {
                Some(pos) => {
                    let power: i64 = term[pos + 2..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad power in `{term}`")))?;
                    let head = term[..pos].trim_end_matches('*');
                    let coeff = match head {
                        "" => Q::one(),
                        "-" => -Q::one(),
                        h => parse_rational::<Q>(h)?,
                    };
                    (coeff, power)
                }
                None => (parse_rational::<Q>(term)?, 0),
            };
            let idx = power.rem_euclid(order as i64) as usize;
            powers[idx] = powers[idx].clone() + coeff;
        }
        Ok(Self::from_powers(order, powers))
    }
}

pub(crate) fn parse_rational<Q: Scalar>(s: &str) -> Result<Q> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let body = if body.contains('/') { body.to_string() } else { format!("{body}/1") };
    let v = Q::from_str_radix(&body, 10).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    Ok(if neg { -v } else { v })
}

impl<Q: Scalar> PartialEq for Cyclo<Q> {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl<Q: Scalar> Eq for Cyclo<Q> {}

impl<Q: Scalar> PartialOrd for Cyclo<Q> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order, used only to key canonical polynomials of equal order.
impl<Q: Scalar> Ord for Cyclo<Q> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order.cmp(&other.order).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl<Q: Scalar> fmt::Display for Cyclo<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = if i == 0 {
                c.to_string()
            } else if c.is_one() {
                format!("z^{i}")
            } else if (-c.clone()).is_one() {
                format!("-z^{i}")
            } else {
                format!("{c}*z^{i}")
            };
            terms.push(t);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<Q: Scalar> Add for &Cyclo<Q> {
    type Output = Cyclo<Q>;
    fn add(self, rhs: Self) -> Cyclo<Q> {
        self.add_ref(rhs)
    }
}

impl<Q: Scalar> Sub for &Cyclo<Q> {
    type Output = Cyclo<Q>;
    fn sub(self, rhs: Self) -> Cyclo<Q> {
        self.sub_ref(rhs)
    }
}

impl<Q: Scalar> Mul for &Cyclo<Q> {
    type Output = Cyclo<Q>;
    fn mul(self, rhs: Self) -> Cyclo<Q> {
        self.mul_ref(rhs)
    }
}

impl<Q: Scalar> Neg for &Cyclo<Q> {
    type Output = Cyclo<Q>;
    fn neg(self) -> Cyclo<Q> {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<Q: Scalar> Add for Cyclo<Q> {
    type Output = Cyclo<Q>;
    fn add(self, rhs: Self) -> Cyclo<Q> {
        self.add_ref(&rhs)
    }
}

impl<Q: Scalar> Sub for Cyclo<Q> {
    type Output = Cyclo<Q>;
    fn sub(self, rhs: Self) -> Cyclo<Q> {
        self.sub_ref(&rhs)
    }
}

impl<Q: Scalar> Mul for Cyclo<Q> {
    type Output = Cyclo<Q>;
    fn mul(self, rhs: Self) -> Cyclo<Q> {
        self.mul_ref(&rhs)
    }
}

impl<Q: Scalar> Neg for Cyclo<Q> {
    type Output = Cyclo<Q>;
    fn neg(self) -> Cyclo<Q> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    type C = Cyclo<BigRational>;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..=30 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn root_of_unity_examples() {
        assert!(C::root_of_unity(1, 0).is_one());
        assert_eq!(C::root_of_unity(4, 2), C::from_int(-1));
        let s = &C::root_of_unity(3, 1) + &C::root_of_unity(3, 2);
        assert_eq!(s, C::from_int(-1));
    }

    #[test]
    fn roots_have_the_right_order() {
        for n in 1..=12u32 {
            for k in -13..=13i64 {
                let z = C::root_of_unity(n, k);
                assert!(z.pow(n as i64).unwrap().is_one());
                assert_eq!(z, C::root_of_unity(n, k.rem_euclid(n as i64)));
                let g = (k.rem_euclid(n as i64) as u32).gcd(&n);
                let ord = n / g;
                for e in 1..ord {
                    assert!(!z.pow(e as i64).unwrap().is_one(), "ζ_{n}^{k} has order {ord}");
                }
            }
        }
    }

    #[test]
    fn inverse_and_conjugate() {
        let z = C::root_of_unity(5, 1);
        let a = &(&z + &C::from_int(2)) * &z;
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(z.conj(), C::root_of_unity(5, 4));
        assert!(C::zero().inv().is_err());
    }

    #[test]
    fn mixed_orders_lift() {
        let i = C::root_of_unity(4, 1);
        let minus_one = C::root_of_unity(2, 1);
        assert_eq!(&i * &i, minus_one);
        assert_eq!((&i * &i).order(), 4);
    }

    #[test]
    fn display_parse() {
        let a = &C::root_of_unity(6, 1).scale(&BigRational::new(3.into(), 2.into())) - &C::from_int(7);
        let s = a.to_string();
        assert_eq!(C::parse(6, &s).unwrap(), a);
        assert_eq!(C::root_of_unity(4, 1).to_string(), "z^1");
    }

    #[test]
    fn works_over_machine_rationals() {
        let z = Cyclo::<Rational64>::root_of_unity(3, 1);
        let s = &(&z * &z) + &z;
        assert_eq!(s, Cyclo::<Rational64>::from_int(-1));
    }
}
