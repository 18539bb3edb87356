//! Rational functions over Laurent polynomials.
//!
//! The denominator is kept as a product of normalized factors (no monomial
//! content, leading coefficient 1). Factors are cancelled against the
//! numerator by exact division whenever possible, but no gcd is ever
//! computed, so the representation is not canonical. Equality is decided by
//! cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::laurent::{matching_paren, Bindings, Laurent, VarSet};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Frac<Q> {
    num: Laurent<Q>,
    den: BTreeMap<Laurent<Q>, u32>,
}

impl<Q: Scalar> Frac<Q> {
    pub fn from_poly(p: Laurent<Q>) -> Self {
        Frac { num: p, den: BTreeMap::new() }
    }

    pub fn zero(vars: &VarSet, order: u32) -> Self {
        Self::from_poly(Laurent::zero(vars, order))
    }

    pub fn one(vars: &VarSet, order: u32) -> Self {
        Self::from_poly(Laurent::one(vars, order))
    }

    pub fn from_int(vars: &VarSet, order: u32, n: i64) -> Self {
        Self::from_poly(Laurent::from_int(vars, order, n))
    }

    pub fn constant(vars: &VarSet, order: u32, c: Cyclo<Q>) -> Self {
        Self::from_poly(Laurent::constant(vars, order, c))
    }

    /// `num / den`; fails on a zero denominator.
    pub fn new(num: Laurent<Q>, den: Laurent<Q>) -> Result<Self> {
        if num.vars() != den.vars() || num.order() != den.order() {
            return Err(Error::RingMismatch("numerator and denominator".into()));
        }
        let (unit, factor) = den.normalize_factor().ok_or(Error::DivisionByZero)?;
        let mut out = Frac { num: &num * &unit.inv_unit().unwrap(), den: BTreeMap::new() };
        out.insert_factor(factor, 1);
        out.cancel();
        Ok(out)
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn order(&self) -> u32 {
        self.num.order()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// The numerator in the current (uncancelled) representation.
    pub fn num(&self) -> &Laurent<Q> {
        &self.num
    }

    /// The expanded denominator.
    pub fn den(&self) -> Laurent<Q> {
        let mut d = Laurent::one(self.vars(), self.order());
        for (f, &e) in &self.den {
            for _ in 0..e {
                d = &d * f;
            }
        }
        d
    }

    /// The value as a Laurent polynomial, when the denominator has cancelled.
    pub fn as_poly(&self) -> Option<&Laurent<Q>> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Laurent<Q>, u32)> {
        self.den.iter().map(|(f, &e)| (f, e))
    }

    fn insert_factor(&mut self, f: Laurent<Q>, e: u32) {
        if e == 0 || f.is_one() {
            return;
        }
        *self.den.entry(f).or_insert(0) += e;
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let keys: Vec<Laurent<Q>> = self.den.keys().cloned().collect();
        for f in keys {
            loop {
                let e = self.den[&f];
                if e == 0 {
                    self.den.remove(&f);
                    break;
                }
                match self.num.exact_div(&f) {
                    Some(q) => {
                        self.num = q;
                        *self.den.get_mut(&f).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
    }

    fn try_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Frac { num: self.num.try_mul(&other.num)?, den: self.den.clone() };
        if out.num.is_zero() {
            out.den.clear();
            return Ok(out);
        }
        for (f, &e) in &other.den {
            out.insert_factor(f.clone(), e);
        }
        out.cancel();
        Ok(out)
    }

    fn try_add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            self.num.try_add(&other.num)?;
            return Ok(self.clone());
        }
        if self.is_zero() {
            self.num.try_add(&other.num)?;
            return Ok(other.clone());
        }
        let mut lcm = self.den.clone();
        for (f, &e) in &other.den {
            let slot = lcm.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        let cofactor = |den: &BTreeMap<Laurent<Q>, u32>| {
            let mut c = Laurent::one(self.vars(), self.order());
            for (f, &e) in &lcm {
                for _ in den.get(f).copied().unwrap_or(0)..e {
                    c = &c * f;
                }
            }
            c
        };
        let a = self.num.try_mul(&cofactor(&self.den))?;
        let b = other.num.try_mul(&cofactor(&other.den))?;
        let mut out = Frac { num: a.try_add(&b)?, den: lcm };
        out.cancel();
        Ok(out)
    }

    /// Sum over a common denominator with a single cancellation at the end.
    /// Terms sharing a denominator are added first.
    pub fn sum<'a>(vars: &VarSet, order: u32, terms: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        Q: 'a,
    {
        let mut grouped: BTreeMap<&BTreeMap<Laurent<Q>, u32>, Laurent<Q>> = BTreeMap::new();
        for t in terms {
            match grouped.get_mut(&t.den) {
                Some(n) => *n = n.try_add(&t.num)?,
                None => {
                    grouped.insert(&t.den, t.num.clone());
                }
            }
        }
        let mut lcm: BTreeMap<Laurent<Q>, u32> = BTreeMap::new();
        for den in grouped.keys() {
            for (f, &e) in *den {
                let slot = lcm.entry(f.clone()).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        let mut num = Laurent::zero(vars, order);
        for (den, n) in &grouped {
            let mut c = n.clone();
            for (f, &e) in &lcm {
                for _ in den.get(f).copied().unwrap_or(0)..e {
                    c = c.try_mul(f)?;
                }
            }
            num = num.try_add(&c)?;
        }
        let mut out = Frac { num, den: lcm };
        out.cancel();
        Ok(out)
    }

    pub fn inv(&self) -> Result<Self> {
        let (unit, factor) = self.num.normalize_factor().ok_or(Error::DivisionByZero)?;
        let mut out = Frac { num: &self.den() * &unit.inv_unit().unwrap(), den: BTreeMap::new() };
        out.insert_factor(factor, 1);
        out.cancel();
        Ok(out)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.vars(), self.order());
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Cyclo<Q>) -> Self {
        let mut out = Frac { num: self.num.scale(c), den: self.den.clone() };
        if out.num.is_zero() {
            out.den.clear();
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = Self::from_poly(self.num.conj());
        for (f, &e) in &self.den {
            let (unit, factor) = f.conj().normalize_factor().unwrap();
            out.num = &out.num * &unit.inv_unit().unwrap().pow(e as i64).unwrap();
            out.insert_factor(factor, e);
        }
        out
    }

    /// Cross-multiplied equality.
    pub fn rf_equal(&self, other: &Self) -> bool {
        match self.try_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }

    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Ring homomorphism image; a vanishing denominator is a pole.
    pub fn substitute(&self, bindings: &Bindings<Q>) -> Result<Self> {
        let num = self.num.substitute(bindings)?;
        let mut out = Self::from_poly(num);
        for (f, &e) in &self.den {
            let img = f.substitute(bindings)?;
            let (unit, factor) =
                img.normalize_factor().ok_or_else(|| Error::SpecializationPole(f.to_string()))?;
            out.num = &out.num * &unit.inv_unit().unwrap().pow(e as i64)?;
            out.insert_factor(factor, e);
        }
        out.cancel();
        Ok(out)
    }

    pub fn parse(vars: &VarSet, order: u32, s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.starts_with('[') {
            return Ok(Self::from_poly(Laurent::parse(vars, order, s)?));
        }
        let close = matching_paren(s, 0).ok_or_else(|| Error::Parse(format!("unbalanced `{s}`")))?;
        let num = Laurent::parse(vars, order, &s[1..close])?;
        let rest = s[close + 1..]
            .strip_prefix('/')
            .and_then(|r| r.trim().strip_prefix('['))
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected `[num]/[den]`, got `{s}`")))?;
        let den = Laurent::parse(vars, order, rest)?;
        Self::new(num, den)
    }
}

impl<Q: Scalar> fmt::Display for Frac<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}]/[{}]", self.num, self.den())
        }
    }
}

impl<Q: Scalar> PartialEq for Frac<Q> {
    fn eq(&self, other: &Self) -> bool {
        self.rf_equal(other)
    }
}

impl<Q: Scalar> From<Laurent<Q>> for Frac<Q> {
    fn from(p: Laurent<Q>) -> Self {
        Self::from_poly(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<Q: Scalar> $tr for &Frac<Q> {
            type Output = Frac<Q>;
            fn $method(self, rhs: Self) -> Frac<Q> {
                let f: fn(&Frac<Q>, &Frac<Q>) -> Result<Frac<Q>> = $body;
                f(self, rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<Q: Scalar> $tr for Frac<Q> {
            type Output = Frac<Q>;
            fn $method(self, rhs: Self) -> Frac<Q> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.try_add(b));
forward_binop!(Sub, sub, |a, b| a.try_sub(b));
forward_binop!(Mul, mul, |a, b| a.try_mul(b));
forward_binop!(Div, div, |a, b| a.try_mul(&b.inv()?));

impl<Q: Scalar> Neg for &Frac<Q> {
    type Output = Frac<Q>;
    fn neg(self) -> Frac<Q> {
        Frac { num: -&self.num, den: self.den.clone() }
    }
}

impl<Q: Scalar> Neg for Frac<Q> {
    type Output = Frac<Q>;
    fn neg(self) -> Frac<Q> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Laurent<BigRational>;
    type F = Frac<BigRational>;

    fn ring() -> VarSet {
        VarSet::new(&["q", "x", "y"])
    }

    fn v(name: &str, e: i32) -> P {
        P::var_pow(&ring(), 1, name, e).unwrap()
    }

    fn one() -> P {
        P::one(&ring(), 1)
    }

    #[test]
    fn cross_multiplied_identities() {
        let a = F::new(&v("q", 2) - &one(), &v("q", 1) - &v("q", -1)).unwrap();
        assert_eq!(a, F::from_poly(v("q", 1)));
        assert!(a.as_poly().is_some(), "exact cancellation");
        let z1 = F::new(P::zero(&ring(), 1), v("x", 1) + one()).unwrap();
        let z2 = F::new(P::zero(&ring(), 1), v("y", 3) - one()).unwrap();
        assert_eq!(z1, z2);
        let b = F::new(&v("q", 1) - &v("q", -1), &one() - &v("q", -2)).unwrap();
        assert_eq!(b, F::from_poly(v("q", 1)));
    }

    #[test]
    fn field_operations() {
        let a = F::new(v("x", 1), &one() - &v("y", 1)).unwrap();
        let b = F::new(&v("q", 1) + &one(), &v("x", 1) - &v("y", 2)).unwrap();
        let s = &a + &b;
        assert_eq!(&s - &b, a);
        assert_eq!(&(&a * &b) / &b, a);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert!(F::zero(&ring(), 1).inv().is_err());
        assert!(F::new(one(), P::zero(&ring(), 1)).is_err());
    }

    #[test]
    fn pole_detection() {
        let a = F::new(one(), &v("q", 1) - &v("q", -1)).unwrap();
        let b = Bindings::new().bind("q", one());
        assert!(matches!(a.substitute(&b), Err(Error::SpecializationPole(_))));
        let gamma = F::new(&v("q", 2) - &v("q", -2), &v("q", 1) - &v("q", -1)).unwrap();
        assert_eq!(gamma, F::from_poly(&v("q", 1) + &v("q", -1)));
    }

    #[test]
    fn display_parse_round_trip() {
        let a = F::new(&v("x", 1) - &v("q", -1), &one() - &v("y", 1)).unwrap();
        let s = a.to_string();
        let back = F::parse(&ring(), 1, &s).unwrap();
        assert_eq!(back.to_string(), s);
        assert_eq!(back, a);
        assert_eq!(F::from_poly(v("q", 1)).to_string(), "(1)*q^1");
    }
}
