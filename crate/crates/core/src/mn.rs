//! Murnaghan–Nakayama rule for `H(r,n)`: `Δ^{(k)}` of shapes and characters
//! of standard elements by summing over chains of shapes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::content::ContentModel;
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::ratfn::Frac;
use crate::scalar::Scalar;
use crate::seminormal::{AlgebraWord, Letter};
use crate::shapes::{strip_analysis, Cell, MultiPartition, Tableau};

/// `T_ℓ^i = R_{1,ℓ_1}^{(i_1)} R_{ℓ_1+1,ℓ_2}^{(i_2)} ⋯`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardElementSpec {
    ell: Vec<usize>,
    exps: Vec<i64>,
}

impl StandardElementSpec {
    pub fn new(ell: Vec<usize>, exps: Vec<i64>) -> Result<Self> {
        if ell.is_empty() || ell.len() != exps.len() {
            return Err(Error::InvalidElement("ell and i must be nonempty and of equal length".into()));
        }
        if ell[0] < 1 || ell.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidElement(format!("ell = {ell:?} must be strictly increasing from 1")));
        }
        Ok(StandardElementSpec { ell, exps })
    }

    /// `ℓ = (1, 2, …, n)` with zero exponents.
    pub fn identity(n: usize) -> Self {
        StandardElementSpec { ell: (1..=n).collect(), exps: vec![0; n] }
    }

    pub fn ell(&self) -> &[usize] {
        &self.ell
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn n(&self) -> usize {
        *self.ell.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.ell.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ell.is_empty()
    }

    /// `(first, last, exponent)` for each block.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        let starts = std::iter::once(1).chain(self.ell.iter().map(|l| l + 1));
        starts.zip(&self.ell).zip(&self.exps).map(|((s, &e), &i)| (s, e, i))
    }

    pub fn block_sizes(&self) -> Vec<u32> {
        self.blocks().map(|(s, e, _)| (e + 1 - s) as u32).collect()
    }

    pub fn word(&self) -> AlgebraWord {
        let mut w = AlgebraWord::new();
        for (s, e, i) in self.blocks() {
            w.push(Letter::Hoefsmit(s), i);
            for j in s + 1..=e {
                w.push(Letter::T(j), 1);
            }
        }
        w
    }

    pub(crate) fn parse_fields(fields: &HashMap<String, String>) -> Result<Self> {
        let list = |key: &str| -> Result<Vec<i64>> {
            let raw = fields.get(key).ok_or_else(|| Error::Parse(format!("missing `{key}=`")))?;
            raw.split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer `{t}`"))))
                .collect()
        };
        let ell = list("ell")?;
        if ell.iter().any(|&l| l < 1) {
            return Err(Error::Parse("ell entries must be positive".into()));
        }
        Self::new(ell.into_iter().map(|l| l as usize).collect(), list("i")?)
    }
}

pub(crate) fn split_fields(s: &str) -> Result<HashMap<String, String>> {
    let mut out = HashMap::new();
    for tok in s.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got `{tok}`")))?;
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::Parse(format!("duplicate key `{k}`")));
        }
    }
    Ok(out)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for StandardElementSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ell={} i={}", join(&self.ell), join(&self.exps))
    }
}

impl FromStr for StandardElementSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields = split_fields(s)?;
        if let Some(k) = fields.keys().find(|k| *k != "ell" && *k != "i") {
            return Err(Error::Parse(format!("unknown key `{k}`")));
        }
        Self::parse_fields(&fields)
    }
}

/// Conjugacy data of `Z_r ≀ S_n`: an r-tuple of partitions, one per color.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassLabel(MultiPartition);

impl ClassLabel {
    pub fn new(parts: MultiPartition) -> Result<Self> {
        if parts.is_skew() {
            return Err(Error::InvalidArgument("class labels are not skew".into()));
        }
        Ok(ClassLabel(parts))
    }

    pub fn parts(&self) -> &MultiPartition {
        &self.0
    }

    pub fn all(r: usize, n: u32) -> Vec<ClassLabel> {
        MultiPartition::all(r, n).into_iter().map(ClassLabel).collect()
    }

    /// Blocks by color ascending, then part size descending.
    pub fn standard_element(&self) -> StandardElementSpec {
        let mut ell = Vec::new();
        let mut exps = Vec::new();
        let mut end = 0;
        for (color, part) in self.0.outer().iter().enumerate() {
            for &s in part.parts() {
                end += s as usize;
                ell.push(end);
                exps.push(color as i64);
            }
        }
        StandardElementSpec::new(ell, exps).expect("nonempty class")
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn class_to_standard_element(c: &ClassLabel) -> StandardElementSpec {
    c.standard_element()
}

fn check_components<Q: Scalar>(model: &ContentModel<Q>, shape: &MultiPartition) -> Result<()> {
    if shape.r() != model.components() {
        return Err(Error::InvalidShape(format!(
            "{shape} has {} components, expected {}",
            shape.r(),
            model.components()
        )));
    }
    Ok(())
}

/// `ct(L(1))^k · Π_j (T_j)_{LL}` over the successive entries of `L`.
pub fn delta_tableau<Q: Scalar>(model: &ContentModel<Q>, l: &Tableau, k: i64) -> Frac<Q> {
    let cts: Vec<Laurent<Q>> = l.cells().iter().map(|b| model.content(b)).collect();
    let Some(first) = cts.first() else {
        return model.one();
    };
    let mut acc = Frac::from_poly(first.pow(k).expect("contents are units"));
    for w in cts.windows(2) {
        acc = &acc * &model.t_diag(&w[0], &w[1]);
    }
    acc
}

/// `Σ_L Δ^{(k)}(L)` over all standard tableaux of the (skew) shape.
///
/// `Δ(L)` only couples consecutive boxes, so the sum is accumulated over
/// partial tableaux keyed by (filled boxes, last box) rather than one
/// tableau at a time.
pub fn delta_shape_bruteforce<Q: Scalar>(model: &ContentModel<Q>, shape: &MultiPartition, k: i64) -> Result<Frac<Q>> {
    check_components(model, shape)?;
    let cells = shape.cells();
    if cells.is_empty() {
        return Ok(model.one());
    }
    if cells.len() > 20 {
        return Err(Error::InvalidArgument(format!("{} boxes is too many for the tableau sum", cells.len())));
    }
    // Boxes that must be filled before each box.
    let before: Vec<u32> = cells
        .iter()
        .map(|b| {
            let up = Cell::new(b.comp, b.row.wrapping_sub(1), b.col);
            let left = Cell::new(b.comp, b.row, b.col.wrapping_sub(1));
            cells.iter().enumerate().filter(|(_, c)| **c == up || **c == left).fold(0, |m, (j, _)| m | 1 << j)
        })
        .collect();
    let cts: Vec<Laurent<Q>> = cells.iter().map(|b| model.content(b)).collect();
    let full = (1u32 << cells.len()) - 1;
    let mut layer: BTreeMap<(u32, usize), Frac<Q>> = BTreeMap::new();
    for (j, ct) in cts.iter().enumerate() {
        if before[j] == 0 {
            let first = ct.pow(k).map_err(|_| Error::DivisionByZero)?;
            layer.insert((1 << j, j), Frac::from_poly(first));
        }
    }
    for _ in 1..cells.len() {
        let mut next: BTreeMap<(u32, usize), Vec<Frac<Q>>> = BTreeMap::new();
        for ((mask, last), f) in &layer {
            for j in (0..cells.len()).filter(|&j| mask & 1 << j == 0 && before[j] & !mask == 0) {
                let step = f * &model.t_diag(&cts[*last], &cts[j]);
                next.entry((mask | 1 << j, j)).or_default().push(step);
            }
        }
        layer = next
            .into_iter()
            .map(|(key, terms)| Ok((key, Frac::sum(model.vars(), model.order(), &terms)?)))
            .collect::<Result<_>>()?;
    }
    let ends: Vec<Frac<Q>> = layer.into_iter().filter(|((m, _), _)| *m == full).map(|(_, f)| f).collect();
    Frac::sum(model.vars(), model.order(), &ends)
}

fn elementary<Q: Scalar>(xs: &[Laurent<Q>], one: &Laurent<Q>) -> Vec<Laurent<Q>> {
    let mut e = vec![one.clone()];
    for x in xs {
        e.push(Laurent::zero(one.vars(), one.order()));
        for t in (1..e.len()).rev() {
            e[t] = &e[t] + &(x * &e[t - 1]);
        }
    }
    e
}

fn homogeneous<Q: Scalar>(xs: &[Laurent<Q>], m: i64, one: &Laurent<Q>) -> Laurent<Q> {
    if m < 0 {
        return Laurent::zero(one.vars(), one.order());
    }
    let m = m as usize;
    let mut h = vec![Laurent::zero(one.vars(), one.order()); m + 1];
    h[0] = one.clone();
    for x in xs {
        for d in 1..=m {
            h[d] = &h[d] + &(x * &h[d - 1]);
        }
    }
    h.swap_remove(m)
}

/// `Δ^{(k)}(λ)` for any (skew) shape, in closed form.
///
/// Nonnegative `k` uses the corner formula; negative `k` sums over the
/// sharp corner that receives the first entry.
pub fn delta_shape_closed<Q: Scalar>(model: &ContentModel<Q>, shape: &MultiPartition, k: i64) -> Result<Frac<Q>> {
    check_components(model, shape)?;
    if shape.size() == 0 {
        return Ok(model.one());
    }
    let a = strip_analysis(shape);
    if !a.is_broken_border_strip {
        return Ok(model.zero());
    }
    let one = Laurent::one(model.vars(), model.order());
    let qq = model.q();
    let qinv = qq.inv_unit().unwrap();
    let qm = model.q_minus_inv();
    let mut strip = one.clone();
    for c in &a.components {
        strip = &strip * &qq.pow(c.cols as i64 - 1).unwrap();
        strip = &strip * &(-&qinv).pow(c.rows as i64 - 1).unwrap();
    }
    let cc = a.cc() as i64;
    let pow = |x: &Laurent<Q>, e: i64| x.pow(e).map_err(|_| Error::DivisionByZero);
    let sc: Vec<Laurent<Q>> = a.sharp.iter().map(|b| model.content(b)).collect();
    let dc: Vec<Laurent<Q>> = a.dull.iter().map(|b| model.content(b)).collect();
    if k == 0 {
        return Ok(Frac::from_poly(&pow(&qm, cc - 1)? * &strip));
    }
    if k > 0 {
        let mut corners = pow(&-&qm, cc - 1)?;
        for s in &sc {
            corners = &corners * s;
        }
        for d in &dc {
            corners = &corners * &d.inv_unit().unwrap();
        }
        let e = elementary(&dc, &one);
        let mut sum = Laurent::zero(model.vars(), model.order());
        for (t, et) in e.iter().enumerate() {
            let term = et * &homogeneous(&sc, k - t as i64 - cc, &one);
            sum = if t % 2 == 0 { &sum + &term } else { &sum - &term };
        }
        return Ok(Frac::from_poly(&(&corners * &sum) * &strip));
    }
    let qmf = Frac::from_poly(qm.clone());
    let mut total = model.zero();
    for (i, s) in sc.iter().enumerate() {
        let mut term = Frac::from_poly(pow(s, k)?);
        for (j, t) in sc.iter().enumerate() {
            if i != j {
                term = &term * &model.t_diag(s, t);
            }
        }
        for d in &dc {
            let num = &one - &(s * &d.inv_unit().unwrap());
            term = &term * &(&Frac::from_poly(num) / &qmf);
        }
        total = &total + &term;
    }
    Ok(&total * &Frac::from_poly(strip))
}

/// `Δ` evaluator plugged into the chain recursion.
pub type DeltaFn<Q> = dyn Fn(&ContentModel<Q>, &MultiPartition, i64) -> Result<Frac<Q>> + Sync;

/// `χ^λ(T_ℓ^i)` by the chain sum, with the closed `Δ`.
pub fn mn_character<Q: Scalar>(
    model: &ContentModel<Q>,
    shape: &MultiPartition,
    spec: &StandardElementSpec,
) -> Result<Frac<Q>> {
    mn_character_with(model, shape, spec, &delta_shape_closed)
}

pub fn mn_character_with<Q: Scalar>(
    model: &ContentModel<Q>,
    shape: &MultiPartition,
    spec: &StandardElementSpec,
    delta: &DeltaFn<Q>,
) -> Result<Frac<Q>> {
    check_components(model, shape)?;
    if shape.is_skew() {
        return Err(Error::InvalidShape("characters are defined on straight shapes".into()));
    }
    if shape.size() as usize != spec.n() {
        return Err(Error::InvalidElement(format!("{spec} acts on n = {}, shape has {} boxes", spec.n(), shape.size())));
    }
    let sizes = spec.block_sizes();
    let mut memo = HashMap::new();
    chain_sum(model, shape, &sizes, spec.exps(), delta, &mut memo)
}

type Memo<Q> = HashMap<(usize, MultiPartition), Frac<Q>>;

fn chain_sum<Q: Scalar>(
    model: &ContentModel<Q>,
    top: &MultiPartition,
    sizes: &[u32],
    exps: &[i64],
    delta: &DeltaFn<Q>,
    memo: &mut Memo<Q>,
) -> Result<Frac<Q>> {
    let Some((&last, rest)) = sizes.split_last() else {
        return Ok(if top.size() == 0 { model.one() } else { model.zero() });
    };
    let key = (sizes.len(), top.clone());
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let k = exps[sizes.len() - 1];
    let mut acc = model.zero();
    for nu in top.intermediate(top.size() - last) {
        let d = delta(model, &top.over(&nu)?, k)?;
        if d.is_zero() {
            continue;
        }
        let below = chain_sum(model, &nu, rest, exps, delta, memo)?;
        acc = &acc + &(&d * &below);
    }
    memo.insert(key, acc.clone());
    Ok(acc)
}
