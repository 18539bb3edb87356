//! Box contents for the three parameter conventions in use.
//!
//! Every content has the form `params[comp] · Q^{2(col − row)}`, where `Q`
//! is the quadratic-relation parameter (`q`, or `q^γ` in a bar algebra).

use std::fmt;

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::laurent::{Bindings, Laurent, VarSet};
use crate::ratfn::Frac;
use crate::scalar::Scalar;
use crate::shapes::Cell;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `H(r,n)` with parameters `u_1..u_r`.
    Hrn { r: usize },
    /// `H(r,p,n)` with parameters `ε^ℓ y_k`, `y_k = x_k^{1/p}`.
    Hrpn { r: usize, p: usize },
    /// The `H(r/γ, n/γ)` algebra of a twisted bitrace, inside the `H(r,p,n)` ring.
    Bar { r: usize, p: usize, gamma: usize },
}

#[derive(Clone, Debug)]
pub struct ContentModel<Q> {
    mode: Mode,
    vars: VarSet,
    order: u32,
    qq: Laurent<Q>,
    params: Vec<Laurent<Q>>,
}

impl<Q: Scalar> ContentModel<Q> {
    pub fn hrn(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be positive".into()));
        }
        let mut names = vec!["q".to_string()];
        names.extend((1..=r).map(|k| format!("u{k}")));
        let vars = VarSet::new(&names);
        let order = r as u32;
        let params = (1..=r).map(|k| Laurent::var(&vars, order, &format!("u{k}")).unwrap()).collect();
        let qq = Laurent::var(&vars, order, "q").unwrap();
        Ok(ContentModel { mode: Mode::Hrn { r }, vars, order, qq, params })
    }

    pub fn hrpn(r: usize, p: usize) -> Result<Self> {
        Self::bar(r, p, 1).map(|m| ContentModel { mode: Mode::Hrpn { r, p }, ..m })
    }

    /// Parameters `(ε^τ y_k)^γ` for `τ < p/γ` and `Q = q^γ`.
    pub fn bar(r: usize, p: usize, gamma: usize) -> Result<Self> {
        if r == 0 || p == 0 || !r.is_multiple_of(p) {
            return Err(Error::InvalidArgument(format!("p = {p} must divide r = {r}")));
        }
        if gamma == 0 || !p.is_multiple_of(gamma) {
            return Err(Error::InvalidArgument(format!("γ = {gamma} must divide p = {p}")));
        }
        let d = r / p;
        let vars = Self::hrpn_vars(r, p);
        let order = r as u32;
        let pbar = p / gamma;
        let mut params = Vec::with_capacity(d * pbar);
        for k in 0..d {
            let y = Laurent::var(&vars, order, &format!("y{k}")).unwrap();
            for tau in 0..pbar {
                let eps = Cyclo::root_of_unity(order, (d * tau) as i64);
                params.push(y.scale(&eps).pow(gamma as i64).unwrap());
            }
        }
        let qq = Laurent::var_pow(&vars, order, "q", gamma as i32).unwrap();
        Ok(ContentModel { mode: Mode::Bar { r, p, gamma }, vars, order, qq, params })
    }

    pub fn hrpn_vars(r: usize, p: usize) -> VarSet {
        let mut names = vec!["q".to_string()];
        names.extend((0..r / p).map(|k| format!("y{k}")));
        VarSet::new(&names)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Number of shape components this model expects.
    pub fn components(&self) -> usize {
        self.params.len()
    }

    /// The necklace length `p` (1 for `H(r,n)`).
    pub fn necklace(&self) -> usize {
        match self.mode {
            Mode::Hrn { .. } => 1,
            Mode::Hrpn { p, .. } => p,
            Mode::Bar { p, gamma, .. } => p / gamma,
        }
    }

    /// The quadratic parameter `Q`.
    pub fn q(&self) -> &Laurent<Q> {
        &self.qq
    }

    pub fn params(&self) -> &[Laurent<Q>] {
        &self.params
    }

    pub fn content(&self, b: &Cell) -> Laurent<Q> {
        let shift = self.qq.pow(2 * b.diagonal() as i64).unwrap();
        &self.params[b.comp] * &shift
    }

    pub fn poly(&self, c: Cyclo<Q>) -> Laurent<Q> {
        Laurent::constant(&self.vars, self.order, c)
    }

    pub fn zero(&self) -> Frac<Q> {
        Frac::zero(&self.vars, self.order)
    }

    pub fn one(&self) -> Frac<Q> {
        Frac::one(&self.vars, self.order)
    }

    pub fn int(&self, n: i64) -> Frac<Q> {
        Frac::from_int(&self.vars, self.order, n)
    }

    /// `Q − Q⁻¹`.
    pub fn q_minus_inv(&self) -> Laurent<Q> {
        &self.qq - &self.qq.inv_unit().unwrap()
    }

    /// `(Q − Q⁻¹) / (1 − a/b)`, the diagonal entry of a transposition.
    pub fn t_diag(&self, a: &Laurent<Q>, b: &Laurent<Q>) -> Frac<Q> {
        let one = Laurent::one(&self.vars, self.order);
        let ratio = a * &b.inv_unit().expect("contents are monomials");
        Frac::new(self.q_minus_inv(), &one - &ratio).expect("distinct consecutive contents")
    }

    /// `q → 1` and `u_k → ζ_r^{k−1}` (or `y_k → ζ_r^k`), the group-algebra point.
    pub fn group_bindings(&self) -> Bindings<Q> {
        let one = Laurent::one(&self.vars, self.order);
        let mut b = Bindings::new().bind("q", one.clone());
        for name in self.vars.names().iter().skip(1) {
            let value = match (self.mode, name.strip_prefix('u')) {
                (Mode::Hrn { r }, Some(k)) => {
                    let k: i64 = k.parse().unwrap();
                    Laurent::constant(&self.vars, self.order, Cyclo::root_of_unity(r as u32, k - 1))
                }
                (Mode::Hrn { .. }, None) => unreachable!("H(r,n) parameters are u_k"),
                (_, _) => {
                    let k: i64 = name[1..].parse().unwrap();
                    Laurent::constant(&self.vars, self.order, Cyclo::root_of_unity(self.order, k))
                }
            };
            b = b.bind(name, value);
        }
        b
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Hrn { r } => write!(f, "H({r},n)"),
            Mode::Hrpn { r, p } => write!(f, "H({r},{p},n)"),
            Mode::Bar { r, p, gamma } => write!(f, "H({r},{p},n) bar γ={gamma}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type M = ContentModel<BigRational>;

    #[test]
    fn hrn_contents() {
        let m = M::hrn(3).unwrap();
        assert_eq!(m.content(&Cell::new(0, 1, 1)).to_string(), "(1)*u1^1");
        assert_eq!(m.content(&Cell::new(2, 2, 3)).to_string(), "(1)*q^2*u3^1");
    }

    #[test]
    fn hrpn_contents() {
        let m = M::hrpn(2, 2).unwrap();
        let a = m.content(&Cell::new(0, 1, 1));
        let b = m.content(&Cell::new(1, 1, 1));
        assert_eq!(b.to_string(), "(-1)*y0^1");
        assert_eq!(b, -a);
        let m = M::hrpn(6, 3).unwrap();
        let eps = Cyclo::root_of_unity(6, 2);
        for (k, l) in [(0, 0), (1, 2)] {
            let b = Cell::new(k * 3 + l, 2, 1);
            let moved = Cell::new(crate::shapes::sigma_index(b.comp, 3, 1), 2, 1);
            assert_eq!(m.content(&moved), m.content(&b).scale(&eps));
        }
    }

    #[test]
    fn bar_parameters_are_gamma_powers() {
        let m = M::bar(4, 2, 2).unwrap();
        assert_eq!(m.components(), 2);
        assert_eq!(m.q().to_string(), "(1)*q^2");
        assert_eq!(m.params()[0].to_string(), "(1)*y0^2");
        let full = M::hrpn(4, 2).unwrap();
        let c = full.content(&Cell::new(2, 1, 2));
        let bar = m.content(&Cell::new(1, 1, 2));
        assert_eq!(c.pow(2).unwrap(), bar);
    }

    #[test]
    fn group_specialization_of_parameters() {
        let m = M::hrn(2).unwrap();
        let b = m.group_bindings();
        let u2 = m.content(&Cell::new(1, 1, 1)).substitute(&b).unwrap();
        assert_eq!(u2, m.poly(Cyclo::from_int(-1)));
        assert!(m.q_minus_inv().substitute(&b).unwrap().is_zero());
    }
}
