//! Seminormal matrices: the explicit model of every `V^λ`, used as the oracle.
//!
//! Column `L` of a matrix holds the coefficients of `g·v_L`, and a word
//! `x_1 x_2 ⋯ x_k` maps to the product `M(x_1) M(x_2) ⋯ M(x_k)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::content::{ContentModel, Mode};
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::matrix::SparseMatrix;
use crate::ratfn::Frac;
use crate::scalar::Scalar;
use crate::shapes::{enumerate_tableaux, MultiPartition, Tableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// `T_i`, `1 ≤ i ≤ n`.
    T(usize),
    /// Hoefsmit element `t_i`.
    Hoefsmit(usize),
    /// `a_i`, `0 ≤ i ≤ n`.
    A(usize),
    /// `S_i`.
    S(usize),
}

impl Letter {
    fn index(&self) -> usize {
        match *self {
            Letter::T(i) | Letter::Hoefsmit(i) | Letter::A(i) | Letter::S(i) => i,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::T(i) => write!(f, "T{i}"),
            Letter::Hoefsmit(i) => write!(f, "t{i}"),
            Letter::A(i) => write!(f, "a{i}"),
            Letter::S(i) => write!(f, "S{i}"),
        }
    }
}

/// A product of generator powers, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraWord(Vec<(Letter, i64)>);

impl AlgebraWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[(Letter, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter, exp: i64) -> &mut Self {
        if exp != 0 {
            self.0.push((letter, exp));
        }
        self
    }

    pub fn then(mut self, letter: Letter, exp: i64) -> Self {
        self.push(letter, exp);
        self
    }

    pub fn concat(&self, other: &AlgebraWord) -> AlgebraWord {
        AlgebraWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn inverse(&self) -> AlgebraWord {
        AlgebraWord(self.0.iter().rev().map(|&(l, e)| (l, -e)).collect())
    }

    /// Net exponent of `T_1`.
    pub fn t1_balance(&self) -> i64 {
        self.0.iter().filter(|(l, _)| *l == Letter::T(1)).map(|(_, e)| e).sum()
    }
}

impl fmt::Display for AlgebraWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(l, e)| if *e == 1 { l.to_string() } else { format!("{l}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for AlgebraWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut w = AlgebraWord::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (head, exp) = match tok.split_once('^') {
                Some((h, e)) => {
                    (h, e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?)
                }
                None => (tok, 1),
            };
            let mut chars = head.chars();
            let kind = chars.next().ok_or_else(|| Error::Parse("empty token".into()))?;
            let idx: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator index in `{tok}`")))?;
            let letter = match kind {
                'T' => Letter::T(idx),
                't' => Letter::Hoefsmit(idx),
                'a' => Letter::A(idx),
                'S' => Letter::S(idx),
                _ => return Err(Error::Parse(format!("unknown generator `{tok}`"))),
            };
            w.push(letter, exp);
        }
        Ok(w)
    }
}

/// Matrices of `T_1..T_n` (and `a_1` in the `H(r,p,n)` case).
#[derive(Clone, Debug)]
pub struct GeneratorMatrices<Q> {
    pub t: Vec<SparseMatrix<Q>>,
    pub a1: Option<SparseMatrix<Q>>,
}

#[derive(Clone, Debug)]
pub struct SeminormalRep<Q> {
    model: ContentModel<Q>,
    shape: MultiPartition,
    basis: Vec<Tableau>,
    index: HashMap<Tableau, usize>,
    contents: Vec<Vec<Laurent<Q>>>,
    gens: GeneratorMatrices<Q>,
}

impl<Q: Scalar> SeminormalRep<Q> {
    pub fn build(shape: &MultiPartition, model: &ContentModel<Q>) -> Result<Self> {
        if shape.r() != model.components() {
            return Err(Error::InvalidShape(format!(
                "{shape} has {} components, expected {}",
                shape.r(),
                model.components()
            )));
        }
        let basis = enumerate_tableaux(shape);
        let index: HashMap<Tableau, usize> =
            basis.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let contents: Vec<Vec<Laurent<Q>>> = basis
            .iter()
            .map(|t| t.cells().iter().map(|b| model.content(b)).collect())
            .collect();
        let mut rep = SeminormalRep {
            model: model.clone(),
            shape: shape.clone(),
            basis,
            index,
            contents,
            gens: GeneratorMatrices { t: Vec::new(), a1: None },
        };
        let n = rep.n();
        let mut t = Vec::with_capacity(n);
        if n >= 1 {
            t.push(rep.diag(|c| Frac::from_poly(c[0].clone())));
        }
        for i in 2..=n {
            t.push(rep.transposition(i, false));
        }
        let a1 = (!matches!(model.mode(), Mode::Hrn { .. }) && n >= 2).then(|| rep.transposition(2, true));
        rep.gens = GeneratorMatrices { t, a1 };
        Ok(rep)
    }

    pub fn model(&self) -> &ContentModel<Q> {
        &self.model
    }

    pub fn shape(&self) -> &MultiPartition {
        &self.shape
    }

    pub fn basis(&self) -> &[Tableau] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n(&self) -> usize {
        self.shape.size() as usize
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn generators(&self) -> &GeneratorMatrices<Q> {
        &self.gens
    }

    /// `ct(L(i))` for basis vector `l`.
    pub fn content(&self, l: usize, i: usize) -> &Laurent<Q> {
        &self.contents[l][i - 1]
    }

    fn diag(&self, f: impl Fn(&[Laurent<Q>]) -> Frac<Q>) -> SparseMatrix<Q> {
        SparseMatrix::diagonal(self.contents.iter().map(|c| f(c)).collect())
    }

    /// `(T_i)_{LL}`.
    pub fn t_entry(&self, l: usize, i: usize) -> Frac<Q> {
        self.model.t_diag(self.content(l, i - 1), self.content(l, i))
    }

    fn transposition(&self, i: usize, twisted: bool) -> SparseMatrix<Q> {
        let mut m = SparseMatrix::zero(self.dim());
        let qinv = Frac::from_poly(self.model.q().inv_unit().unwrap());
        for (l, tab) in self.basis.iter().enumerate() {
            let d = self.t_entry(l, i);
            let off = &qinv + &d;
            m.set(l, l, d);
            if let Some(k) = self.index_of(&tab.swap(i)) {
                let off = if twisted {
                    let ratio = self.content(l, 1) * &self.content(k, 1).inv_unit().unwrap();
                    &off * &Frac::from_poly(ratio)
                } else {
                    off
                };
                m.set(k, l, off);
            }
        }
        m
    }

    fn check_index(&self, letter: Letter) -> Result<()> {
        let i = letter.index();
        let n = self.n();
        let ok = match letter {
            Letter::A(_) => i <= n,
            _ => (1..=n).contains(&i),
        };
        if !ok {
            return Err(Error::InvalidElement(format!("{letter} is outside n = {n}")));
        }
        if matches!(letter, Letter::A(_) | Letter::S(_)) && matches!(self.model.mode(), Mode::Hrn { .. }) {
            return Err(Error::InvalidElement(format!("{letter} needs an H(r,p,n) representation")));
        }
        Ok(())
    }

    fn pow_diag(&self, f: impl Fn(&[Laurent<Q>]) -> Laurent<Q>, e: i64) -> SparseMatrix<Q> {
        self.diag(|c| Frac::from_poly(f(c).pow(e).expect("contents are units")))
    }

    fn pow_matrix(&self, m: &SparseMatrix<Q>, inv: impl Fn() -> SparseMatrix<Q>, e: i64) -> SparseMatrix<Q> {
        let base = if e < 0 { inv() } else { m.clone() };
        let mut acc = base.clone();
        for _ in 1..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Matrix of `letter^e`.
    pub fn letter_matrix(&self, letter: Letter, e: i64) -> Result<SparseMatrix<Q>> {
        self.check_index(letter)?;
        if e == 0 {
            return Ok(SparseMatrix::identity(self.dim(), &self.model.one()));
        }
        let p = self.model.necklace() as i64;
        let qq = Frac::from_poly(self.model.q_minus_inv());
        let shifted = |m: &SparseMatrix<Q>| m.add_scalar(&-&qq);
        Ok(match letter {
            Letter::T(1) => self.pow_diag(|c| c[0].clone(), e),
            Letter::T(i) | Letter::A(i) if i >= 2 => {
                let m = &self.gens.t[i - 1];
                self.pow_matrix(m, || shifted(m), e)
            }
            Letter::A(1) => {
                let m = self.gens.a1.as_ref().expect("a_1 built for H(r,p,n)");
                self.pow_matrix(m, || shifted(m), e)
            }
            Letter::A(0) | Letter::S(1) => self.pow_diag(|c| c[0].pow(p).unwrap(), e),
            Letter::Hoefsmit(i) => self.pow_diag(|c| c[i - 1].clone(), e),
            Letter::S(i) => self.pow_diag(|c| &c[i - 1] * &c[0].inv_unit().unwrap(), e),
            _ => unreachable!(),
        })
    }

    pub fn word_matrix(&self, w: &AlgebraWord) -> Result<SparseMatrix<Q>> {
        let mut acc: Option<SparseMatrix<Q>> = None;
        for &(letter, e) in w.letters() {
            let m = self.letter_matrix(letter, e)?;
            acc = Some(match acc {
                None => m,
                Some(a) => a.mul(&m),
            });
        }
        Ok(acc.unwrap_or_else(|| SparseMatrix::identity(self.dim(), &self.model.one())))
    }

    pub fn trace_of(&self, w: &AlgebraWord) -> Result<Frac<Q>> {
        Ok(self.word_matrix(w)?.trace(&self.model.zero()))
    }

    /// `Σ_L (w·v_L)|_{v_{σ^{-κ}L}}` with `κ = α f_λ`.
    pub fn twisted_bitrace(&self, w: &AlgebraWord, alpha: usize) -> Result<Frac<Q>> {
        let p = match self.model.mode() {
            Mode::Hrpn { p, .. } => p,
            _ => return Err(Error::InvalidArgument("twisted bitrace needs H(r,p,n) contents".into())),
        };
        let (f, k) = self.shape.stabilizer(p);
        if alpha >= k {
            return Err(Error::InvalidArgument(format!("α = {alpha} must be below |K_λ| = {k}")));
        }
        let kappa = (alpha * f) as i64;
        let m = self.word_matrix(w)?;
        let mut acc = self.model.zero();
        for (l, tab) in self.basis.iter().enumerate() {
            let target = self.index_of(&tab.sigma_shift(p, -kappa)).expect("σ^κ fixes λ");
            if let Some(v) = m.get(target, l) {
                acc = &acc + v;
            }
        }
        Ok(acc)
    }

    /// Computes `T_i ⋯ T_2 T_1 T_2 ⋯ T_i` and checks it is `diag ct(L(i))`.
    pub fn hoefsmit_matrix(&self, i: usize) -> Result<SparseMatrix<Q>> {
        let mut w = AlgebraWord::new();
        for j in (2..=i).rev() {
            w.push(Letter::T(j), 1);
        }
        w.push(Letter::T(1), 1);
        for j in 2..=i {
            w.push(Letter::T(j), 1);
        }
        let m = self.word_matrix(&w)?;
        let expected = self.diag(|c| Frac::from_poly(c[i - 1].clone()));
        if !m.equals(&expected) {
            return Err(Error::InvalidElement(format!("t_{i} is not diagonal by contents")));
        }
        Ok(expected)
    }

    /// Checks the defining relations, naming the first failure.
    pub fn verify_relations(&self) -> std::result::Result<(), String> {
        verify_generator_relations(&self.model, &self.gens, self.dim())?;
        if let Mode::Hrpn { p, .. } = self.model.mode() {
            self.verify_sigma_commutes(p)?;
        }
        Ok(())
    }

    fn verify_sigma_commutes(&self, p: usize) -> std::result::Result<(), String> {
        let moved = self.shape.sigma_shift(p, 1);
        let other = SeminormalRep::build(&moved, &self.model).map_err(|e| e.to_string())?;
        let perm: Vec<usize> = self
            .basis
            .iter()
            .map(|t| other.index_of(&t.sigma_shift(p, 1)).expect("σ maps tableaux to tableaux"))
            .collect();
        for i in 0..=self.n() {
            let a = self.letter_matrix(Letter::A(i), 1).map_err(|e| e.to_string())?;
            let b = other.letter_matrix(Letter::A(i), 1).map_err(|e| e.to_string())?;
            for l in 0..self.dim() {
                let moved_col = b.column(perm[l]);
                let col = a.column(l);
                let same = col.len() == moved_col.len()
                    && col.iter().all(|(k, v)| moved_col.get(&perm[*k]).is_some_and(|w| w == v));
                if !same {
                    return Err(format!("σ does not commute with a{i} (column {l})"));
                }
            }
        }
        Ok(())
    }
}

/// Relations (1)–(5) on explicit generator matrices.
pub fn verify_generator_relations<Q: Scalar>(
    model: &ContentModel<Q>,
    gens: &GeneratorMatrices<Q>,
    dim: usize,
) -> std::result::Result<(), String> {
    let t = &gens.t;
    let n = t.len();
    for i in 0..n {
        for j in i + 2..n {
            if !t[i].mul(&t[j]).equals(&t[j].mul(&t[i])) {
                return Err(format!("T{} T{} = T{} T{}", i + 1, j + 1, j + 1, i + 1));
            }
        }
    }
    for i in 1..n.saturating_sub(1) {
        let lhs = t[i].mul(&t[i + 1]).mul(&t[i]);
        let rhs = t[i + 1].mul(&t[i]).mul(&t[i + 1]);
        if !lhs.equals(&rhs) {
            return Err(format!("braid relation at T{} T{}", i + 1, i + 2));
        }
    }
    if n >= 2 {
        let lhs = t[0].mul(&t[1]).mul(&t[0]).mul(&t[1]);
        let rhs = t[1].mul(&t[0]).mul(&t[1]).mul(&t[0]);
        if !lhs.equals(&rhs) {
            return Err("T1 T2 T1 T2 = T2 T1 T2 T1".into());
        }
    }
    if n >= 1 {
        let mut prod = SparseMatrix::identity(dim, &model.one());
        for u in all_parameters(model) {
            prod = prod.mul(&t[0].add_scalar(&-Frac::from_poly(u)));
        }
        if !prod.is_zero() {
            return Err("cyclotomic relation for T1".into());
        }
    }
    let qq = Frac::from_poly(model.q().clone());
    let qinv = Frac::from_poly(model.q().inv_unit().unwrap());
    for (i, ti) in t.iter().enumerate().skip(1) {
        let prod = ti.add_scalar(&-&qq).mul(&ti.add_scalar(&qinv));
        if !prod.is_zero() {
            return Err(format!("quadratic relation for T{}", i + 1));
        }
    }
    Ok(())
}

/// The `r` eigenvalue parameters of `T_1` (all `ε^ℓ y_k` in the `H(r,p,n)` case).
fn all_parameters<Q: Scalar>(model: &ContentModel<Q>) -> Vec<Laurent<Q>> {
    model.params().to_vec()
}
