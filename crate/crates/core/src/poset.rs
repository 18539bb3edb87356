//! Shape posets, Möbius functions and the weight products `Δ^{(k)}`.

use std::collections::{HashMap, HashSet};

use crate::content::ContentModel;
use crate::error::{Error, Result};
use crate::laurent::{Laurent, VarSet};
use crate::ratfn::Frac;
use crate::scalar::Scalar;
use crate::shapes::{strip_analysis, Cell, MultiPartition};

/// Boxes of a (skew) shape ordered from the upper left, optionally below an adjoined `û`.
#[derive(Clone, Debug)]
pub struct ShapePoset {
    cells: Vec<Cell>,
    hat: bool,
}

/// `μ(a, b)` over element indices (`0` is `û` when present).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    mu: Vec<Vec<i64>>,
}

impl MobiusTable {
    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.mu[a][b]
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }
}

impl ShapePoset {
    pub fn new(shape: &MultiPartition) -> Self {
        ShapePoset { cells: shape.cells(), hat: false }
    }

    pub fn with_hat(shape: &MultiPartition) -> Self {
        ShapePoset { cells: shape.cells(), hat: true }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn has_hat(&self) -> bool {
        self.hat
    }

    /// Number of elements, `û` included.
    pub fn len(&self) -> usize {
        self.cells.len() + usize::from(self.hat)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The box at element index `i`, or `None` for `û`.
    pub fn cell(&self, i: usize) -> Option<Cell> {
        match (self.hat, i) {
            (true, 0) => None,
            (true, i) => Some(self.cells[i - 1]),
            (false, i) => Some(self.cells[i]),
        }
    }

    /// Componentwise order; skew shapes are convex, so this is the order
    /// generated by row and column adjacency.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        match (self.cell(a), self.cell(b)) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(x), Some(y)) => x.comp == y.comp && x.row <= y.row && x.col <= y.col,
        }
    }

    /// Minimal boxes (the sharp corners).
    pub fn sharp_corners(&self) -> Vec<Cell> {
        let set: HashSet<Cell> = self.cells.iter().copied().collect();
        self.cells
            .iter()
            .filter(|b| {
                let up = b.row > 1 && set.contains(&Cell::new(b.comp, b.row - 1, b.col));
                let left = b.col > 1 && set.contains(&Cell::new(b.comp, b.row, b.col - 1));
                !up && !left
            })
            .copied()
            .collect()
    }

    /// Joins of sharp corners adjacent along the boundary, when the join exists.
    pub fn dull_corners(&self) -> Vec<Cell> {
        let set: HashSet<Cell> = self.cells.iter().copied().collect();
        let mut sharp = self.sharp_corners();
        sharp.sort_by_key(|b| (b.comp, b.row));
        let mut out: Vec<Cell> = sharp
            .windows(2)
            .filter(|w| w[0].comp == w[1].comp)
            .map(|w| Cell::new(w[0].comp, w[0].row.max(w[1].row), w[0].col.max(w[1].col)))
            .filter(|j| set.contains(j))
            .collect();
        out.sort();
        out
    }

    /// Connected components of the Hasse diagram of the boxes.
    pub fn components(&self) -> usize {
        let set: HashSet<Cell> = self.cells.iter().copied().collect();
        let mut seen = HashSet::new();
        let mut count = 0;
        for &b in &self.cells {
            if !seen.insert(b) {
                continue;
            }
            count += 1;
            let mut stack = vec![b];
            while let Some(x) = stack.pop() {
                let nbrs = [
                    (x.row + 1, x.col),
                    (x.row.wrapping_sub(1), x.col),
                    (x.row, x.col + 1),
                    (x.row, x.col.wrapping_sub(1)),
                ];
                for (r, c) in nbrs {
                    let y = Cell::new(x.comp, r, c);
                    if set.contains(&y) && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        count
    }
}

/// `μ` by the defining recursion; element indices are already a linear extension.
pub fn mobius(p: &ShapePoset) -> MobiusTable {
    let n = p.len();
    let mut mu = vec![vec![0i64; n]; n];
    for a in 0..n {
        mu[a][a] = 1;
        for b in a + 1..n {
            if !p.leq(a, b) {
                continue;
            }
            let s: i64 = (a..b).filter(|&x| p.leq(a, x) && p.leq(x, b)).map(|x| mu[a][x]).sum();
            mu[a][b] = -s;
        }
    }
    MobiusTable { mu }
}

/// Box variables and `q` at which weights are evaluated.
#[derive(Clone, Debug)]
pub struct PosetPoint<Q> {
    q: Laurent<Q>,
    x: HashMap<Cell, Laurent<Q>>,
}

impl<Q: Scalar> PosetPoint<Q> {
    /// Fresh variables `q, x1, …, xn`, one per box in cell order.
    pub fn generic(shape: &MultiPartition) -> Self {
        let cells = shape.cells();
        let mut names = vec!["q".to_string()];
        names.extend((1..=cells.len()).map(|i| format!("x{i}")));
        let vars = VarSet::new(&names);
        let q = Laurent::var(&vars, 1, "q").unwrap();
        let x = cells
            .iter()
            .enumerate()
            .map(|(i, b)| (*b, Laurent::var(&vars, 1, &format!("x{}", i + 1)).unwrap()))
            .collect();
        PosetPoint { q, x }
    }

    /// `x_b = ct(b)`.
    pub fn contents(model: &ContentModel<Q>, shape: &MultiPartition) -> Self {
        let x = shape.cells().iter().map(|b| (*b, model.content(b))).collect();
        PosetPoint { q: model.q().clone(), x }
    }

    pub fn x(&self, b: &Cell) -> &Laurent<Q> {
        &self.x[b]
    }

    pub fn q(&self) -> &Laurent<Q> {
        &self.q
    }

    fn one(&self) -> Laurent<Q> {
        Laurent::one(self.q.vars(), self.q.order())
    }

    fn q_minus_inv(&self) -> Laurent<Q> {
        &self.q - &self.q.inv_unit().unwrap()
    }

    /// `1 − x_a x_b⁻¹`.
    fn gap(&self, a: &Cell, b: &Cell) -> Laurent<Q> {
        &self.one() - &(self.x(a) * &self.x(b).inv_unit().expect("box variables are units"))
    }

    /// `(q − q⁻¹) / (1 − x_a x_b⁻¹)`, the weight of a covering step.
    fn step(&self, a: &Cell, b: &Cell) -> Result<Frac<Q>> {
        Frac::new(self.q_minus_inv(), self.gap(a, b))
    }
}

/// `Π wt^{(k)}(a, b)^{μ(a, b)}`; pairs with `û` weigh `x_a^{−k}`.
pub fn delta_poset<Q: Scalar>(p: &ShapePoset, k: i64, point: &PosetPoint<Q>) -> Result<Frac<Q>> {
    let mu = mobius(p);
    let qm = Frac::from_poly(point.q_minus_inv());
    let mut acc = Frac::one(point.q.vars(), point.q.order());
    for a in 0..p.len() {
        for b in 0..p.len() {
            let m = mu.get(a, b);
            if a == b || m == 0 {
                continue;
            }
            let wt = match (p.cell(a), p.cell(b)) {
                (None, Some(y)) => Frac::from_poly(point.x(&y).pow(-k).unwrap()),
                (Some(x), Some(y)) => &Frac::from_poly(point.gap(&x, &y)) / &qm,
                _ => unreachable!("û is minimal"),
            };
            if wt.is_zero() {
                if m < 0 {
                    return Err(Error::DivisionByZero);
                }
                return Ok(Frac::zero(point.q.vars(), point.q.order()));
            }
            acc = &acc * &wt.pow(m)?;
        }
    }
    Ok(acc)
}

/// Diagonal, row and column pair products; `a` is the NW, W or N member of each pair.
pub fn delta_poset_product<Q: Scalar>(shape: &MultiPartition, point: &PosetPoint<Q>) -> Result<Frac<Q>> {
    let cells = shape.cells();
    let set: HashSet<Cell> = cells.iter().copied().collect();
    let qm = Frac::from_poly(point.q_minus_inv());
    let mut acc = Frac::one(point.q.vars(), point.q.order());
    for a in &cells {
        let east = Cell::new(a.comp, a.row, a.col + 1);
        let south = Cell::new(a.comp, a.row + 1, a.col);
        let diag = Cell::new(a.comp, a.row + 1, a.col + 1);
        if set.contains(&diag) {
            acc = &acc * &(&Frac::from_poly(point.gap(a, &diag)) / &qm);
        }
        for b in [east, south] {
            if set.contains(&b) {
                acc = &acc * &point.step(a, &b)?;
            }
        }
    }
    Ok(acc)
}

/// All total orders of the elements extending the partial order.
pub fn linear_extensions(p: &ShapePoset) -> Vec<Vec<usize>> {
    let n = p.len();
    let preds: Vec<u64> =
        (0..n).map(|b| (0..n).filter(|&a| a != b && p.leq(a, b)).fold(0u64, |m, a| m | (1 << a))).collect();
    let mut out = Vec::new();
    let mut chain = Vec::with_capacity(n);
    extend(&preds, 0, &mut chain, &mut out);
    out
}

fn extend(preds: &[u64], placed: u64, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if chain.len() == preds.len() {
        out.push(chain.clone());
        return;
    }
    for (b, &need) in preds.iter().enumerate() {
        if placed & (1 << b) == 0 && need & !placed == 0 {
            chain.push(b);
            extend(preds, placed | (1 << b), chain, out);
            chain.pop();
        }
    }
}

/// `Σ_T x_{T(1)}^k Π (q − q⁻¹)/(1 − x_{T(i−1)} x_{T(i)}⁻¹)` over standard fillings,
/// by dynamic programming over (placed boxes, last box). The common factor
/// `(q − q⁻¹)^{n−1}` is applied once at the end.
pub fn linear_extension_sum<Q: Scalar>(shape: &MultiPartition, k: i64, point: &PosetPoint<Q>) -> Result<Frac<Q>> {
    let p = ShapePoset::new(shape);
    let cells = p.cells().to_vec();
    let n = cells.len();
    if n == 0 {
        return Ok(Frac::one(point.q.vars(), point.q.order()));
    }
    let preds: Vec<u64> =
        (0..n).map(|b| (0..n).filter(|&a| a != b && p.leq(a, b)).fold(0u64, |m, a| m | (1 << a))).collect();
    let mut layer: HashMap<(u64, usize), Frac<Q>> = HashMap::new();
    for b in (0..n).filter(|&b| preds[b] == 0) {
        layer.insert((1 << b, b), Frac::from_poly(point.x(&cells[b]).pow(k)?));
    }
    for _ in 1..n {
        let mut next: HashMap<(u64, usize), Vec<Frac<Q>>> = HashMap::new();
        for ((mask, last), v) in &layer {
            for b in 0..n {
                if mask & (1 << b) != 0 || preds[b] & !mask != 0 {
                    continue;
                }
                let term = v / &Frac::from_poly(point.gap(&cells[*last], &cells[b]));
                next.entry((mask | (1 << b), b)).or_default().push(term);
            }
        }
        layer = next
            .into_iter()
            .map(|(key, terms)| Ok((key, Frac::sum(point.q.vars(), point.q.order(), &terms)?)))
            .collect::<Result<_>>()?;
    }
    let total = Frac::sum(point.q.vars(), point.q.order(), layer.values())?;
    Ok(&total * &Frac::from_poly(point.q_minus_inv().pow(n as i64 - 1)?))
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
    let mut h = vec![Laurent::zero(one.vars(), one.order()); m as usize + 1];
    h[0] = one.clone();
    for x in xs {
        for d in 1..h.len() {
            h[d] = &h[d] + &(x * &h[d - 1]);
        }
    }
    h.pop().unwrap()
}

/// Right side of the poset theorem: `Δ(P)` times the corner factor.
pub fn poset_theorem_rhs<Q: Scalar>(shape: &MultiPartition, k: i64, point: &PosetPoint<Q>) -> Result<Frac<Q>> {
    if k < 0 {
        return Err(Error::InvalidArgument("the corner formula needs k ≥ 0".into()));
    }
    let p = ShapePoset::new(shape);
    let delta = delta_poset(&p, k, point)?;
    let one = point.one();
    let qm = point.q_minus_inv();
    let cc = p.components() as i64;
    if k == 0 {
        return Ok(&delta * &Frac::from_poly(qm.pow(cc - 1)?));
    }
    let sc: Vec<Laurent<Q>> = p.sharp_corners().iter().map(|b| point.x(b).clone()).collect();
    let dc: Vec<Laurent<Q>> = p.dull_corners().iter().map(|b| point.x(b).clone()).collect();
    let mut corner = (-&qm).pow(cc - 1)?;
    for s in &sc {
        corner = &corner * s;
    }
    for d in &dc {
        corner = &corner * &d.inv_unit().unwrap();
    }
    let mut sum = Laurent::zero(one.vars(), one.order());
    for (t, et) in elementary(&dc, &one).iter().enumerate() {
        let term = et * &homogeneous(&sc, k - t as i64 - cc, &one);
        sum = if t % 2 == 0 { &sum + &term } else { &sum - &term };
    }
    Ok(&delta * &Frac::from_poly(&corner * &sum))
}

/// Checks the linear-extension sum against the corner formula.
pub fn verify_poset_theorem<Q: Scalar>(shape: &MultiPartition, k: i64, point: &PosetPoint<Q>) -> Result<bool> {
    Ok(linear_extension_sum(shape, k, point)? == poset_theorem_rhs(shape, k, point)?)
}

/// The geometric dull corners (left and upper neighbours, no NW neighbour) agree with the joins.
pub fn corners_agree(shape: &MultiPartition) -> bool {
    let mut geometric = strip_analysis(shape).dull;
    geometric.sort();
    geometric == ShapePoset::new(shape).dull_corners()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mn::delta_shape_closed;
    use crate::shapes::{compressed_skew_shapes, enumerate_tableaux};
    use num_rational::BigRational;

    use proptest::prelude::*;

    type P = PosetPoint<BigRational>;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    #[test]
    fn mobius_values() {
        let chain = ShapePoset::with_hat(&mp("3"));
        let mu = mobius(&chain);
        assert_eq!(mu.get(1, 1), 1);
        assert_eq!(mu.get(1, 2), -1);
        assert_eq!(mu.get(1, 3), 0);
        let diamond = ShapePoset::new(&mp("2,2"));
        let mu = mobius(&diamond);
        assert_eq!(mu.get(0, 3), 1);
        assert_eq!(mu.get(1, 2), 0);
    }

    #[test]
    fn extensions_are_tableaux() {
        assert_eq!(linear_extensions(&ShapePoset::new(&mp("3"))).len(), 1);
        assert_eq!(linear_extensions(&ShapePoset::new(&mp("2,1/1"))).len(), 2);
        assert_eq!(linear_extensions(&ShapePoset::new(&mp("2,1"))).len(), 2);
        for shape in compressed_skew_shapes(6) {
            let ext = linear_extensions(&ShapePoset::with_hat(&shape));
            assert_eq!(ext.len(), enumerate_tableaux(&shape).len(), "{shape}");
            assert!(ext.iter().all(|c| c[0] == 0));
        }
    }

    #[test]
    fn weight_products() {
        let one = mp("1");
        let pt = P::generic(&one);
        assert!(delta_poset(&ShapePoset::new(&one), 0, &pt).unwrap().is_one());
        assert!(delta_poset_product(&one, &pt).unwrap().is_one());
        let two = mp("2");
        let pt = P::generic(&two);
        let expected = Frac::parse(pt.q().vars(), 1, "[(1)*q^2*x2^1 + (-1)*x2^1]/[(1)*q^1*x2^1 + (-1)*q^1*x1^1]").unwrap();
        assert_eq!(delta_poset(&ShapePoset::new(&two), 0, &pt).unwrap(), expected);
        let square = mp("2,2");
        let model = ContentModel::<BigRational>::hrn(1).unwrap();
        let at_contents = P::contents(&model, &square);
        assert!(delta_poset_product(&square, &at_contents).unwrap().is_zero());
        assert!(delta_poset(&ShapePoset::new(&square), 0, &at_contents).unwrap().is_zero());
    }

    #[test]
    fn products_agree_on_small_shapes() {
        for shape in compressed_skew_shapes(5) {
            let pt = P::generic(&shape);
            let by_mobius = delta_poset(&ShapePoset::new(&shape), 0, &pt).unwrap();
            assert_eq!(by_mobius, delta_poset_product(&shape, &pt).unwrap(), "{shape}");
            assert!(corners_agree(&shape), "{shape}");
        }
    }

    #[test]
    fn theorem_small_cases() {
        for shape in compressed_skew_shapes(4) {
            let pt = P::generic(&shape);
            for k in 0..=3 {
                assert!(verify_poset_theorem(&shape, k, &pt).unwrap(), "{shape} k={k}");
            }
        }
        let shape = mp("2,1");
        let pt = P::generic(&shape);
        assert!(verify_poset_theorem(&shape, 0, &pt).unwrap());
        // Two components and k = 1: both sides vanish.
        let split = mp("2,1/1");
        let pt = P::generic(&split);
        assert!(linear_extension_sum(&split, 1, &pt).unwrap().is_zero());
    }

    #[test]
    fn specializes_to_closed_delta() {
        let model = ContentModel::<BigRational>::hrn(1).unwrap();
        for shape in compressed_skew_shapes(5) {
            let pt = P::contents(&model, &shape);
            for k in 0..=2 {
                assert!(verify_poset_theorem(&shape, k, &pt).unwrap());
                let lhs = linear_extension_sum(&shape, k, &pt).unwrap();
                assert_eq!(lhs, delta_shape_closed(&model, &shape, k).unwrap(), "{shape} k={k}");
            }
        }
    }

    fn shape_up_to_six() -> impl Strategy<Value = MultiPartition> {
        prop::sample::select(compressed_skew_shapes(6))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mobius_inverts_zeta(shape in shape_up_to_six()) {
            let p = ShapePoset::with_hat(&shape);
            let mu = mobius(&p);
            for a in 0..p.len() {
                for b in (0..p.len()).filter(|&b| p.leq(a, b)) {
                    let s: i64 = (0..p.len()).filter(|&x| p.leq(a, x) && p.leq(x, b)).map(|x| mu.get(a, x)).sum();
                    prop_assert_eq!(s, i64::from(a == b));
                }
            }
        }

        #[test]
        fn mobius_sum_is_the_weight_product(shape in shape_up_to_six()) {
            let pt = P::generic(&shape);
            let by_mobius = delta_poset(&ShapePoset::new(&shape), 0, &pt).unwrap();
            prop_assert_eq!(by_mobius, delta_poset_product(&shape, &pt).unwrap());
            prop_assert!(corners_agree(&shape));
        }
    }
}
