//! Multivariate Laurent polynomials with cyclotomic coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ordered list of variable names shared by all polynomials of one ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        VarSet(Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

/// Exponent vector; ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn new(exps: Vec<i32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn scale(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

/// A Laurent polynomial over `Q(ζ_order)` in the variables of `vars`.
///
/// No zero coefficients are stored, so structural equality is value equality.
#[derive(Clone, Debug)]
pub struct Laurent<Q> {
    vars: VarSet,
    order: u32,
    terms: BTreeMap<Monomial, Cyclo<Q>>,
}

impl<Q: Scalar> Laurent<Q> {
    pub fn zero(vars: &VarSet, order: u32) -> Self {
        Laurent { vars: vars.clone(), order, terms: BTreeMap::new() }
    }

    pub fn one(vars: &VarSet, order: u32) -> Self {
        Self::constant(vars, order, Cyclo::one())
    }

    pub fn constant(vars: &VarSet, order: u32, c: Cyclo<Q>) -> Self {
        Self::monomial(vars, order, Monomial::one(vars.len()), c)
    }

    pub fn from_int(vars: &VarSet, order: u32, n: i64) -> Self {
        Self::constant(vars, order, Cyclo::from_int(n))
    }

    pub fn monomial(vars: &VarSet, order: u32, m: Monomial, c: Cyclo<Q>) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars, order);
        let c = c.lift(order).expect("coefficient order divides ring order");
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable `name` raised to `power`.
    pub fn var_pow(vars: &VarSet, order: u32, name: &str, power: i32) -> Result<Self> {
        let idx = vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = power;
        Ok(Self::monomial(vars, order, Monomial(exps), Cyclo::one()))
    }

    pub fn var(vars: &VarSet, order: u32, name: &str) -> Result<Self> {
        Self::var_pow(vars, order, name, 1)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Cyclo<Q>)> {
        self.terms.iter()
    }

    /// The constant value, if the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<Cyclo<Q>> {
        match self.terms.len() {
            0 => Some(Cyclo::zero_of_order(self.order)),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term, if the polynomial is a unit (nonzero monomial).
    pub fn as_unit(&self) -> Option<(&Monomial, &Cyclo<Q>)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Cyclo<Q>)> {
        self.terms.iter().next_back()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::RingMismatch(format!(
                "variables {:?} vs {:?}",
                self.vars.names(),
                other.vars.names()
            )));
        }
        if self.order != other.order {
            return Err(Error::RingMismatch(format!(
                "cyclotomic orders {} vs {}",
                self.order, other.order
            )));
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: Cyclo<Q>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.vars, self.order);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyclo<Q>) -> Self {
        let c = c.lift(self.order.lcm(&c.order())).unwrap();
        let mut out = Self::zero(&self.vars, self.order);
        for (m, x) in &self.terms {
            let v = (x * &c).lift(self.order).expect("scalar lies in the coefficient field");
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Laurent {
            vars: self.vars.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Inverse of a unit; `None` unless the polynomial is a single term.
    pub fn inv_unit(&self) -> Option<Self> {
        let (m, c) = self.as_unit()?;
        let inv = c.inv().ok()?;
        Some(Self::monomial(&self.vars, self.order, Monomial::one(self.vars.len()).div(m), inv))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            let inv = self.inv_unit().ok_or_else(|| Error::NonUnitPower(self.to_string()))?;
            return inv.pow(-e);
        }
        if let Some((m, c)) = self.as_unit() {
            return Ok(Self::monomial(&self.vars, self.order, m.scale(e as i32), c.pow(e)?));
        }
        let mut acc = Self::one(&self.vars, self.order);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Apply `ζ ↦ ζ^{-1}` to every coefficient.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(&self.vars, self.order);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.conj());
        }
        out
    }

    /// Componentwise minimum exponent over all terms.
    fn min_exponents(&self) -> Monomial {
        let n = self.vars.len();
        let mut mins = vec![i32::MAX; n];
        for m in self.terms.keys() {
            for (lo, &e) in mins.iter_mut().zip(&m.0) {
                *lo = (*lo).min(e);
            }
        }
        if self.terms.is_empty() {
            mins = vec![0; n];
        }
        Monomial(mins)
    }

    /// Split a nonzero polynomial as `unit * factor`, where `factor` has no
    /// monomial content and leading coefficient 1.
    pub fn normalize_factor(&self) -> Option<(Self, Self)> {
        if self.is_zero() {
            return None;
        }
        let shift = self.min_exponents();
        let shifted = self.mul_monomial(&Monomial::one(self.vars.len()).div(&shift));
        let (_, lc) = shifted.leading().unwrap();
        let lc = lc.clone();
        let factor = shifted.scale(&lc.inv().unwrap());
        let unit = Self::monomial(&self.vars, self.order, shift, lc);
        Some((unit, factor))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. `divisor` must be a normalized factor.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if divisor.is_one() || self.is_zero() {
            return Some(self.clone());
        }
        if divisor.len() > self.len() && self.len() == 1 {
            return None;
        }
        let shift = self.min_exponents();
        let mut rem = self.mul_monomial(&Monomial::one(self.vars.len()).div(&shift));
        let (lt_d, lc_d) = divisor.leading()?;
        let lt_d = lt_d.clone();
        let lc_inv = lc_d.inv().ok()?;
        let mut quo = Self::zero(&self.vars, self.order);
        while let Some((lt_r, lc_r)) = rem.leading() {
            let d = lt_r.div(&lt_d);
            if d.0.iter().any(|&e| e < 0) {
                return None;
            }
            let c = lc_r * &lc_inv;
            for (m, x) in &divisor.terms {
                rem.add_term(m.mul(&d), -(x * &c));
            }
            quo.add_term(d, c);
        }
        Some(quo.mul_monomial(&shift))
    }

    /// Ring homomorphism sending each bound variable to its value.
    pub fn substitute(&self, bindings: &Bindings<Q>) -> Result<Self> {
        for name in bindings.values.keys() {
            if self.vars.index_of(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        if bindings.values.is_empty() {
            return Ok(self.clone());
        }
        let mut order = self.order;
        for v in bindings.values.values() {
            if v.vars != self.vars {
                return Err(Error::RingMismatch("binding value in a different ring".into()));
            }
            order = order.lcm(&v.order);
        }
        let lift = |p: &Laurent<Q>| -> Laurent<Q> {
            let mut out = Laurent::zero(&p.vars, order);
            for (m, c) in &p.terms {
                out.terms.insert(m.clone(), c.lift(order).unwrap());
            }
            out
        };
        let bound: Vec<(usize, Laurent<Q>)> = bindings
            .values
            .iter()
            .map(|(k, v)| (self.vars.index_of(k).unwrap(), lift(v)))
            .collect();
        let mut cache: HashMap<(usize, i32), Laurent<Q>> = HashMap::new();
        let mut out = Laurent::zero(&self.vars, order);
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            let mut term =
                Laurent::monomial(&self.vars, order, Monomial::one(self.vars.len()), c.clone());
            for (idx, value) in &bound {
                let e = m.0[*idx];
                rest[*idx] = 0;
                if e == 0 {
                    continue;
                }
                let pw = match cache.get(&(*idx, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = value.pow(e as i64)?;
                        cache.insert((*idx, e), p.clone());
                        p
                    }
                };
                term = &term * &pw;
            }
            let term = term.mul_monomial(&Monomial(rest));
            for (k, v) in term.terms {
                out.add_term(k, v);
            }
        }
        Ok(out)
    }

    /// Parse the canonical text form in the ring `(vars, order)`.
    pub fn parse(vars: &VarSet, order: u32, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut out = Self::zero(vars, order);
        if s == "0" {
            return Ok(out);
        }
        for term in split_top_level(s, " + ") {
            let term = term.trim();
            if !term.starts_with('(') {
                return Err(Error::Parse(format!("term `{term}` lacks a coefficient")));
            }
            let close = matching_paren(term, 0)
                .ok_or_else(|| Error::Parse(format!("unbalanced `{term}`")))?;
            let coeff = Cyclo::parse(order, &term[1..close])?;
            let mut exps = vec![0i32; vars.len()];
            for factor in term[close + 1..].split('*').filter(|f| !f.is_empty()) {
                let (name, e) = factor
                    .split_once('^')
                    .ok_or_else(|| Error::Parse(format!("bad factor `{factor}`")))?;
                let idx =
                    vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                exps[idx] += e.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent `{e}`")))?;
            }
            out.add_term(Monomial(exps), coeff);
        }
        Ok(out)
    }
}

pub(crate) fn matching_paren(s: &str, open: usize) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices().skip(open) {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

pub(crate) fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < s.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            parts.push(&s[start..i]);
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    parts.push(&s[start..]);
    parts
}

/// Variable bindings for [`Laurent::substitute`].
#[derive(Clone, Debug)]
pub struct Bindings<Q> {
    values: BTreeMap<String, Laurent<Q>>,
}

impl<Q: Scalar> Default for Bindings<Q> {
    fn default() -> Self {
        Bindings { values: BTreeMap::new() }
    }
}

impl<Q: Scalar> Bindings<Q> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, name: &str, value: Laurent<Q>) -> Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Laurent<Q>)> {
        self.values.iter()
    }
}

impl<Q: Scalar> PartialEq for Laurent<Q> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.order == other.order && self.terms == other.terms
    }
}

impl<Q: Scalar> Eq for Laurent<Q> {}

impl<Q: Scalar> PartialOrd for Laurent<Q> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<Q: Scalar> Ord for Laurent<Q> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.vars.cmp(&other.vars))
            .then_with(|| self.terms.iter().cmp(other.terms.iter()))
    }
}

impl<Q: Scalar> fmt::Display for Laurent<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (name, &e) in self.vars.names().iter().zip(&m.0) {
                if e != 0 {
                    write!(f, "*{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<Q: Scalar> $tr for &Laurent<Q> {
            type Output = Laurent<Q>;
            fn $method(self, rhs: Self) -> Laurent<Q> {
                self.$inner(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<Q: Scalar> $tr for Laurent<Q> {
            type Output = Laurent<Q>;
            fn $method(self, rhs: Self) -> Laurent<Q> {
                (&self).$inner(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<Q: Scalar> Neg for &Laurent<Q> {
    type Output = Laurent<Q>;
    fn neg(self) -> Laurent<Q> {
        Laurent {
            vars: self.vars.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<Q: Scalar> Neg for Laurent<Q> {
    type Output = Laurent<Q>;
    fn neg(self) -> Laurent<Q> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Laurent<BigRational>;

    fn ring() -> VarSet {
        VarSet::new(&["q", "u1", "u2"])
    }

    fn q(e: i32) -> P {
        P::var_pow(&ring(), 2, "q", e).unwrap()
    }

    #[test]
    fn expand_and_identities() {
        let one = P::one(&ring(), 2);
        let lhs = &(&q(1) - &q(-1)) * &q(1);
        assert_eq!(lhs, &q(2) - &one);
        let p = &q(3) + &q(-2);
        assert_eq!(&p + &P::zero(&ring(), 2), p);
        assert_eq!(&one - &q(-2), &q(-1) * &(&q(1) - &q(-1)));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = P::one(&ring(), 2);
        let b = P::one(&VarSet::new(&["q"]), 2);
        let c = P::one(&ring(), 3);
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch(_))));
        assert!(matches!(a.try_mul(&c), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn serialization_examples() {
        let p = &q(2) - &q(-2);
        assert_eq!(p.to_string(), "(1)*q^2 + (-1)*q^-2");
        assert_eq!(P::parse(&ring(), 2, &p.to_string()).unwrap(), p);
        let vars = VarSet::new(&["q", "y0"]);
        let z = Cyclo::root_of_unity(4, 1);
        let y = P::var(&vars, 4, "y0").unwrap().scale(&z);
        assert_eq!(y.to_string(), "(z^1)*y0^1");
        assert_eq!(P::from_int(&ring(), 2, -1).to_string(), "(-1)");
    }

    #[test]
    fn exact_division() {
        let one = P::one(&ring(), 2);
        let f = (&q(2) - &one).normalize_factor().unwrap().1;
        let num = &q(4) - &one;
        let quo = num.exact_div(&f).unwrap();
        assert_eq!(quo, &q(2) + &one);
        assert!((&q(4) + &one).exact_div(&f).is_none());
        let shifted = &num * &q(-7);
        assert_eq!(shifted.exact_div(&f).unwrap(), &(&q(2) + &one) * &q(-7));
    }

    #[test]
    fn substitute_examples() {
        let one = P::one(&ring(), 2);
        let p = &q(1) - &q(-1);
        let b = Bindings::new().bind("q", one.clone());
        assert!(p.substitute(&b).unwrap().is_zero());
        assert_eq!(p.substitute(&Bindings::new()).unwrap(), p);
        let b = Bindings::new().bind("q", q(2));
        assert_eq!(p.substitute(&b).unwrap(), &q(2) - &q(-2));
        let u1 = P::var(&ring(), 2, "u1").unwrap();
        let u2 = P::var(&ring(), 2, "u2").unwrap();
        let b = Bindings::new()
            .bind("u1", one.clone())
            .bind("u2", P::constant(&ring(), 2, Cyclo::root_of_unity(2, 1)));
        assert_eq!(u1.substitute(&b).unwrap(), one);
        assert_eq!(u2.substitute(&b).unwrap(), -&one);
        assert!(p.substitute(&Bindings::new().bind("w", one)).is_err());
    }
}
