//! r-partitions, skew shapes, standard tableaux and border-strip geometry.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of row `i` (0-based), zero past the end.
    pub fn row(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.0.len() <= self.0.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions `ν` with `lower ⊆ ν ⊆ self` and `|ν| = size`.
    pub fn between(&self, lower: &Partition, size: u32) -> Vec<Partition> {
        fn rec(
            upper: &Partition,
            lower: &Partition,
            i: usize,
            cap: u32,
            left: u32,
            cur: &mut Vec<u32>,
            out: &mut Vec<Partition>,
        ) {
            if i == upper.0.len() {
                if left == 0 {
                    out.push(Partition(cur.iter().copied().filter(|&x| x > 0).collect()));
                }
                return;
            }
            let lo = lower.row(i);
            let hi = upper.row(i).min(cap);
            let rest_max: u32 = (i + 1..upper.0.len()).map(|j| upper.row(j).min(hi)).sum();
            for v in (lo..=hi).rev() {
                if v > left || left - v > rest_max {
                    continue;
                }
                cur.push(v);
                rec(upper, lower, i + 1, v, left - v, cur, out);
                cur.pop();
            }
        }
        if !self.contains(lower) {
            return Vec::new();
        }
        let mut out = Vec::new();
        rec(self, lower, 0, u32::MAX, size, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad part `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A box: component index (0-based), row and column (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub comp: usize,
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(comp: usize, row: u32, col: u32) -> Self {
        Cell { comp, row, col }
    }

    /// `col - row`, the exponent of `q²` in the content.
    pub fn diagonal(&self) -> i32 {
        self.col as i32 - self.row as i32
    }
}

/// An r-tuple of (skew) partitions `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiPartition {
    outer: Vec<Partition>,
    inner: Vec<Partition>,
}

impl MultiPartition {
    pub fn new(outer: Vec<Partition>) -> Self {
        let inner = vec![Partition::empty(); outer.len()];
        MultiPartition { outer, inner }
    }

    pub fn skew(outer: Vec<Partition>, inner: Vec<Partition>) -> Result<Self> {
        if outer.len() != inner.len() {
            return Err(Error::InvalidShape("outer and inner differ in length".into()));
        }
        if let Some(i) = (0..outer.len()).find(|&i| !outer[i].contains(&inner[i])) {
            return Err(Error::InvalidShape(format!(
                "component {i}: {} does not contain {}",
                outer[i], inner[i]
            )));
        }
        Ok(MultiPartition { outer, inner })
    }

    /// Single-component shape from a list of parts.
    pub fn single(parts: &[u32]) -> Self {
        Self::new(vec![Partition::new(parts.to_vec()).expect("partition")])
    }

    pub fn empty(r: usize) -> Self {
        Self::new(vec![Partition::empty(); r])
    }

    pub fn r(&self) -> usize {
        self.outer.len()
    }

    pub fn outer(&self) -> &[Partition] {
        &self.outer
    }

    pub fn inner(&self) -> &[Partition] {
        &self.inner
    }

    pub fn is_skew(&self) -> bool {
        self.inner.iter().any(|p| !p.is_empty())
    }

    pub fn size(&self) -> u32 {
        self.outer.iter().map(Partition::size).sum::<u32>()
            - self.inner.iter().map(Partition::size).sum::<u32>()
    }

    pub fn outer_shape(&self) -> MultiPartition {
        MultiPartition::new(self.outer.clone())
    }

    pub fn inner_shape(&self) -> MultiPartition {
        MultiPartition::new(self.inner.clone())
    }

    /// `self / inner` for a straight shape `self`.
    pub fn over(&self, inner: &MultiPartition) -> Result<MultiPartition> {
        MultiPartition::skew(self.outer.clone(), inner.outer.clone())
    }

    /// Boxes ordered by component, row, column.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (c, (o, i)) in self.outer.iter().zip(&self.inner).enumerate() {
            for (row, &len) in o.parts().iter().enumerate() {
                for col in i.row(row) + 1..=len {
                    out.push(Cell::new(c, row as u32 + 1, col));
                }
            }
        }
        out
    }

    pub fn contains_cell(&self, b: &Cell) -> bool {
        b.comp < self.r()
            && b.row >= 1
            && b.col >= 1
            && b.col <= self.outer[b.comp].row(b.row as usize - 1)
            && b.col > self.inner[b.comp].row(b.row as usize - 1)
    }

    /// All r-partitions of `n`, deterministically ordered.
    pub fn all(r: usize, n: u32) -> Vec<MultiPartition> {
        fn rec(r: usize, n: u32, cur: &mut Vec<Partition>, out: &mut Vec<MultiPartition>) {
            if cur.len() + 1 == r {
                for p in Partition::all(n) {
                    cur.push(p);
                    out.push(MultiPartition::new(cur.clone()));
                    cur.pop();
                }
                return;
            }
            for m in (0..=n).rev() {
                for p in Partition::all(m) {
                    cur.push(p);
                    rec(r, n - m, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        if r > 0 {
            rec(r, n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Straight shapes `ν` with `self.inner ⊆ ν ⊆ self.outer` and `|ν / inner| = size`.
    pub fn intermediate(&self, size: u32) -> Vec<MultiPartition> {
        let mut out = Vec::new();
        self.intermediate_rec(0, size, &mut Vec::new(), &mut out);
        out
    }

    fn intermediate_rec(
        &self,
        c: usize,
        left: u32,
        cur: &mut Vec<Partition>,
        out: &mut Vec<MultiPartition>,
    ) {
        if c == self.r() {
            if left == 0 {
                out.push(MultiPartition::new(cur.clone()));
            }
            return;
        }
        let lo = self.inner[c].size();
        let room = self.outer[c].size() - lo;
        for take in (0..=room.min(left)).rev() {
            for p in self.outer[c].between(&self.inner[c], lo + take) {
                cur.push(p);
                self.intermediate_rec(c + 1, left - take, cur, out);
                cur.pop();
            }
        }
    }

    /// Component `(k, ℓ)` of a (d,p)-organized shape moves to `(k, ℓ + power mod p)`.
    pub fn sigma_shift(&self, p: usize, power: i64) -> MultiPartition {
        let mv = |v: &Vec<Partition>| {
            let mut out = vec![Partition::empty(); v.len()];
            for (c, part) in v.iter().enumerate() {
                out[sigma_index(c, p, power)] = part.clone();
            }
            out
        };
        MultiPartition { outer: mv(&self.outer), inner: mv(&self.inner) }
    }

    /// `(f_λ, |K_λ|)`: the least `f ≥ 1` with `σ^f λ = λ`, and `p / f`.
    pub fn stabilizer(&self, p: usize) -> (usize, usize) {
        let f = (1..=p).find(|&f| &self.sigma_shift(p, f as i64) == self).unwrap_or(p);
        (f, p / f)
    }

    /// Least shape in the σ-orbit.
    pub fn orbit_representative(&self, p: usize) -> MultiPartition {
        (0..p as i64).map(|a| self.sigma_shift(p, a)).min().unwrap()
    }
}

/// Index of component `c = k·p + ℓ` after shifting by `power`.
pub fn sigma_index(c: usize, p: usize, power: i64) -> usize {
    let (k, l) = (c / p, c % p);
    k * p + (l as i64 + power).rem_euclid(p as i64) as usize
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Partition]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("|");
        write!(f, "{}", join(&self.outer))?;
        if self.is_skew() {
            write!(f, "/{}", join(&self.inner))?;
        }
        Ok(())
    }
}

impl FromStr for MultiPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_tuple =
            |t: &str| t.split('|').map(Partition::from_str).collect::<Result<Vec<_>>>();
        match s.split_once('/') {
            None => Ok(MultiPartition::new(parse_tuple(s)?)),
            Some((o, i)) => MultiPartition::skew(parse_tuple(o)?, parse_tuple(i)?),
        }
    }
}

/// A standard filling; `cells[m]` is the box holding `m + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    cells: Vec<Cell>,
}

impl Tableau {
    pub fn from_cells(cells: Vec<Cell>) -> Self {
        Tableau { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `L(i)`, 1-based.
    pub fn cell(&self, i: usize) -> Cell {
        self.cells[i - 1]
    }

    /// `s_i L`: swap the entries `i - 1` and `i`.
    pub fn swap(&self, i: usize) -> Tableau {
        let mut cells = self.cells.clone();
        cells.swap(i - 2, i - 1);
        Tableau { cells }
    }

    pub fn sigma_shift(&self, p: usize, power: i64) -> Tableau {
        Tableau {
            cells: self
                .cells
                .iter()
                .map(|b| Cell { comp: sigma_index(b.comp, p, power), ..*b })
                .collect(),
        }
    }

    /// Rows and columns increase within every component of `shape`.
    pub fn is_standard(&self, shape: &MultiPartition) -> bool {
        let mut seen = HashSet::new();
        for b in &self.cells {
            if !shape.contains_cell(b) || !seen.insert(*b) {
                return false;
            }
            let up = Cell::new(b.comp, b.row.wrapping_sub(1), b.col);
            let left = Cell::new(b.comp, b.row, b.col.wrapping_sub(1));
            for nb in [up, left] {
                if shape.contains_cell(&nb) && !seen.contains(&nb) {
                    return false;
                }
            }
        }
        seen.len() == shape.size() as usize
    }
}

/// All standard tableaux of `shape`, lexicographic in the box sequence.
pub fn enumerate_tableaux(shape: &MultiPartition) -> Vec<Tableau> {
    let n = shape.size() as usize;
    let mut rows: Vec<Vec<u32>> = shape
        .inner()
        .iter()
        .zip(shape.outer())
        .map(|(i, o)| (0..o.parts().len()).map(|k| i.row(k)).collect())
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fill(shape, &mut rows, &mut cur, n, &mut out);
    out
}

fn fill(
    shape: &MultiPartition,
    rows: &mut [Vec<u32>],
    cur: &mut Vec<Cell>,
    n: usize,
    out: &mut Vec<Tableau>,
) {
    if cur.len() == n {
        out.push(Tableau { cells: cur.clone() });
        return;
    }
    for c in 0..rows.len() {
        for i in 0..rows[c].len() {
            let len = rows[c][i];
            if len < shape.outer()[c].row(i) && (i == 0 || rows[c][i - 1] > len) {
                rows[c][i] += 1;
                cur.push(Cell::new(c, i as u32 + 1, len + 1));
                fill(shape, rows, cur, n, out);
                cur.pop();
                rows[c][i] -= 1;
            }
        }
    }
}

/// One connected component of a skew shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripComponent {
    pub cells: Vec<Cell>,
    pub rows: u32,
    pub cols: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripAnalysis {
    pub is_broken_border_strip: bool,
    pub components: Vec<StripComponent>,
    pub sharp: Vec<Cell>,
    pub dull: Vec<Cell>,
}

impl StripAnalysis {
    pub fn cc(&self) -> usize {
        self.components.len()
    }
}

/// Components, sharp and dull corners, and the 2×2-block test.
pub fn strip_analysis(shape: &MultiPartition) -> StripAnalysis {
    let cells = shape.cells();
    let set: HashSet<Cell> = cells.iter().copied().collect();
    let has = |c: usize, r: u32, k: u32| r >= 1 && k >= 1 && set.contains(&Cell::new(c, r, k));
    let mut bbs = true;
    let mut sharp = Vec::new();
    let mut dull = Vec::new();
    for b in &cells {
        let (c, r, k) = (b.comp, b.row, b.col);
        if has(c, r + 1, k + 1) {
            bbs = false;
        }
        let up = has(c, r - 1, k);
        let left = has(c, r, k - 1);
        if !up && !left {
            sharp.push(*b);
        }
        if up && left && !has(c, r - 1, k - 1) {
            dull.push(*b);
        }
    }
    let mut seen: HashSet<Cell> = HashSet::new();
    let mut components = Vec::new();
    for b in &cells {
        if seen.contains(b) {
            continue;
        }
        let mut stack = vec![*b];
        seen.insert(*b);
        let mut comp = Vec::new();
        while let Some(x) = stack.pop() {
            comp.push(x);
            let nbrs = [
                (x.row + 1, x.col),
                (x.row.wrapping_sub(1), x.col),
                (x.row, x.col + 1),
                (x.row, x.col.wrapping_sub(1)),
            ];
            for (r, k) in nbrs {
                let y = Cell::new(x.comp, r, k);
                if set.contains(&y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        comp.sort();
        let rows = comp.iter().map(|c| c.row).collect::<BTreeSet<_>>().len() as u32;
        let cols = comp.iter().map(|c| c.col).collect::<BTreeSet<_>>().len() as u32;
        components.push(StripComponent { cells: comp, rows, cols });
    }
    StripAnalysis { is_broken_border_strip: bbs, components, sharp, dull }
}

/// One-component skew shapes with `1..=max_cells` boxes and no empty rows or columns.
///
/// Every skew shape is this after deleting empty rows and columns, which
/// changes neither its poset nor its tableaux.
pub fn compressed_skew_shapes(max_cells: u32) -> Vec<MultiPartition> {
    let mut out = Vec::new();
    let mut rows = Vec::new();
    skew_rows(max_cells, &mut rows, &mut out);
    out.sort();
    out
}

fn skew_rows(left: u32, rows: &mut Vec<(u32, u32)>, out: &mut Vec<MultiPartition>) {
    if let Some(&(mu, _)) = rows.last() {
        if mu == 0 {
            let outer = Partition::new(rows.iter().map(|r| r.1).collect()).unwrap();
            let inner = Partition::new(rows.iter().map(|r| r.0).filter(|&m| m > 0).collect()).unwrap();
            out.push(MultiPartition::skew(vec![outer], vec![inner]).unwrap());
        }
    }
    let (hi_mu, hi_lam) = match rows.last() {
        None => (left.saturating_sub(1), left),
        Some(&(mu, lam)) => (mu, lam),
    };
    for mu in 0..=hi_mu {
        let min_lam = match rows.last() {
            None => mu + 1,
            Some(&(prev_mu, _)) => (mu + 1).max(prev_mu),
        };
        for lam in min_lam..=hi_lam.min(mu + left) {
            rows.push((mu, lam));
            skew_rows(left - (lam - mu), rows, out);
            rows.pop();
        }
    }
}

/// r-tuples of compressed skew shapes (or empty components) with `1..=max_cells` boxes in total.
pub fn multi_skew_shapes(r: usize, max_cells: u32) -> Vec<MultiPartition> {
    let singles = compressed_skew_shapes(max_cells);
    let mut acc: Vec<(Vec<Partition>, Vec<Partition>, u32)> = vec![(vec![], vec![], 0)];
    for _ in 0..r {
        let mut next = Vec::new();
        for (o, i, n) in &acc {
            let mut empty = (o.clone(), i.clone(), *n);
            empty.0.push(Partition::empty());
            empty.1.push(Partition::empty());
            next.push(empty);
            for s in singles.iter().filter(|s| n + s.size() <= max_cells) {
                let mut o2 = o.clone();
                let mut i2 = i.clone();
                o2.push(s.outer()[0].clone());
                i2.push(s.inner()[0].clone());
                next.push((o2, i2, n + s.size()));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .filter(|(_, _, n)| *n > 0)
        .map(|(o, i, _)| MultiPartition::skew(o, i).unwrap())
        .collect()
}

/// All chains `inner = μ⁰ ⊆ μ¹ ⊆ … ⊆ μᵐ = outer` whose j-th step has `block_sizes[j]` boxes.
pub fn shape_chains(shape: &MultiPartition, block_sizes: &[u32]) -> Result<Vec<Vec<MultiPartition>>> {
    if block_sizes.iter().sum::<u32>() != shape.size() {
        return Err(Error::InvalidArgument(format!(
            "block sizes {block_sizes:?} do not sum to {}",
            shape.size()
        )));
    }
    let mut out = Vec::new();
    let top = shape.outer_shape();
    let mut chain = vec![top.clone()];
    chains_rec(shape, &top, block_sizes, &mut chain, &mut out);
    Ok(out)
}

fn chains_rec(
    shape: &MultiPartition,
    current: &MultiPartition,
    sizes: &[u32],
    chain: &mut Vec<MultiPartition>,
    out: &mut Vec<Vec<MultiPartition>>,
) {
    let Some((&last, rest)) = sizes.split_last() else {
        let mut c = chain.clone();
        c.reverse();
        out.push(c);
        return;
    };
    let bounds = MultiPartition::skew(current.outer().to_vec(), shape.inner().to_vec())
        .expect("chain stays above the inner shape");
    let below = bounds.size() - last;
    for nu in bounds.intermediate(below) {
        chain.push(nu.clone());
        chains_rec(shape, &nu, rest, chain, out);
        chain.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    /// Count by removing a maximal box in every possible way.
    fn count_by_removal(shape: &MultiPartition) -> usize {
        if shape.size() == 0 {
            return 1;
        }
        let mut total = 0;
        for (c, part) in shape.outer().iter().enumerate() {
            for (i, &len) in part.parts().iter().enumerate() {
                let below = part.row(i + 1);
                if len > below && len > shape.inner()[c].row(i) {
                    let mut outer = shape.outer().to_vec();
                    let mut parts = part.parts().to_vec();
                    parts[i] -= 1;
                    outer[c] = Partition::new(parts).unwrap();
                    let smaller = MultiPartition::skew(outer, shape.inner().to_vec()).unwrap();
                    total += count_by_removal(&smaller);
                }
            }
        }
        total
    }

    #[test]
    fn tableau_counts() {
        assert_eq!(enumerate_tableaux(&mp("1|1")).len(), 2);
        assert_eq!(enumerate_tableaux(&mp("2,1")).len(), 2);
        assert_eq!(enumerate_tableaux(&mp("-")).len(), 1);
        assert_eq!(enumerate_tableaux(&mp("3,2,1")).len(), 16);
        assert_eq!(enumerate_tableaux(&mp("2,2/1")).len(), 2);
    }

    #[test]
    fn tableaux_are_standard_and_sorted() {
        let shape = mp("2,1|1/1|-");
        let ts = enumerate_tableaux(&shape);
        assert!(ts.iter().all(|t| t.is_standard(&shape)));
        assert!(ts.windows(2).all(|w| w[0].cells() < w[1].cells()));
    }

    #[test]
    fn tableau_count_matches_removal_recursion() {
        for r in 1..=3 {
            for n in 0..=6 {
                for shape in MultiPartition::all(r, n) {
                    assert_eq!(enumerate_tableaux(&shape).len(), count_by_removal(&shape), "{shape}");
                }
            }
        }
        for s in ["3,2,1/1", "3,3/2,1", "4,2,2/3,1", "2,2|3,1/1|1"] {
            let shape = mp(s);
            assert_eq!(enumerate_tableaux(&shape).len(), count_by_removal(&shape), "{s}");
        }
    }

    #[test]
    fn grammar_round_trip() {
        let shape = mp("2,1|-|1");
        assert_eq!(shape.r(), 3);
        assert_eq!(shape.outer()[1], Partition::empty());
        assert_eq!(shape.to_string(), "2,1|-|1");
        assert_eq!(mp("2,2/1").to_string(), "2,2/1");
        assert!("2,3".parse::<MultiPartition>().is_err());
        assert!("1/2".parse::<MultiPartition>().is_err());
    }

    #[test]
    fn strip_examples() {
        assert!(!strip_analysis(&mp("2,2")).is_broken_border_strip);
        let a = strip_analysis(&mp("2"));
        assert!(a.is_broken_border_strip);
        assert_eq!((a.components[0].rows, a.components[0].cols), (1, 2));
        assert_eq!(a.sharp, vec![Cell::new(0, 1, 1)]);
        assert!(a.dull.is_empty());
        let b = strip_analysis(&mp("2,2/1"));
        assert!(b.is_broken_border_strip);
        assert_eq!(b.sharp, vec![Cell::new(0, 1, 2), Cell::new(0, 2, 1)]);
        assert_eq!(b.dull, vec![Cell::new(0, 2, 2)]);
        assert_eq!((b.cc(), b.components[0].rows, b.components[0].cols), (1, 2, 2));
        let c = strip_analysis(&mp("3,1|2/1|-"));
        assert_eq!(c.cc(), 3);
    }

    #[test]
    fn chain_examples() {
        assert_eq!(shape_chains(&mp("1"), &[1]).unwrap().len(), 1);
        assert_eq!(shape_chains(&mp("2,1"), &[3]).unwrap().len(), 1);
        let c = shape_chains(&mp("2,1"), &[1, 2]).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0][1], mp("1"));
        let all_ones = shape_chains(&mp("2,1"), &[1, 1, 1]).unwrap();
        assert_eq!(all_ones.len(), 2);
        assert!(shape_chains(&mp("2"), &[1]).is_err());
    }

    #[test]
    fn sigma_and_stabilizer() {
        let l = mp("1|-");
        assert_eq!(l.sigma_shift(2, 1), mp("-|1"));
        assert_eq!(l.sigma_shift(2, 2), l);
        assert_eq!(l.stabilizer(2), (2, 1));
        assert_eq!(mp("1|1").stabilizer(2), (1, 2));
        let fig = mp("2|1|2|1|2|1|1|-|1|-|1|-|-|-|-|-|-|-");
        assert_eq!(fig.stabilizer(6), (2, 3));
    }

    fn small_shape() -> impl Strategy<Value = (MultiPartition, usize)> {
        (1usize..=3, 1usize..=3, 0u32..=5).prop_flat_map(|(d, p, n)| {
            let all = MultiPartition::all(d * p, n);
            (0..all.len()).prop_map(move |i| (all[i].clone(), p))
        })
    }

    proptest! {
        #[test]
        fn sigma_is_a_bijection_on_tableaux((shape, p) in small_shape(), power in 0i64..3) {
            let shifted = shape.sigma_shift(p, power);
            let mut moved: Vec<Tableau> = enumerate_tableaux(&shape)
                .iter()
                .map(|t| t.sigma_shift(p, power))
                .collect();
            prop_assert!(moved.iter().all(|t| t.is_standard(&shifted)));
            moved.sort();
            prop_assert_eq!(moved, enumerate_tableaux(&shifted));
        }

        #[test]
        fn stabilizer_is_minimal((shape, p) in small_shape()) {
            let (f, k) = shape.stabilizer(p);
            prop_assert_eq!(f * k, p);
            prop_assert_eq!(shape.sigma_shift(p, f as i64), shape.clone());
            for g in 1..f {
                prop_assert_ne!(shape.sigma_shift(p, g as i64), shape.clone());
            }
        }

        #[test]
        fn strip_invariants(s in prop::sample::select(vec![
            "3,2,1/2,1", "4,3/2", "3,3,1/2,1", "2,1|2,2/-|1", "5,2,1/4,1", "3,1|1|2,1/1|-|1"
        ])) {
            let a = strip_analysis(&mp(s));
            if a.is_broken_border_strip {
                prop_assert_eq!(a.cc() as i64, a.sharp.len() as i64 - a.dull.len() as i64);
                for c in &a.components {
                    prop_assert_eq!((c.rows + c.cols - 1) as usize, c.cells.len());
                }
            }
        }
    }

    #[test]
    fn compressed_family() {
        let fam = compressed_skew_shapes(3);
        let names: Vec<String> = fam.iter().map(|s| s.to_string()).collect();
        for expected in ["1", "2", "1,1", "3", "2,1", "1,1,1", "2,2/1", "2,1/1", "3,2/2", "2,2,1/1,1"] {
            assert!(names.contains(&expected.to_string()), "{expected} missing from {names:?}");
        }
        for s in &fam {
            let cells = s.cells();
            let rows: BTreeSet<u32> = cells.iter().map(|c| c.row).collect();
            let cols: BTreeSet<u32> = cells.iter().map(|c| c.col).collect();
            assert_eq!(rows, (1..=rows.len() as u32).collect());
            assert_eq!(cols, (1..=cols.len() as u32).collect());
        }
        let mut dedup = fam.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), fam.len());
        // Ribbons with 4 boxes: 2^3 compositions, all present.
        let ribbons = compressed_skew_shapes(4)
            .into_iter()
            .filter(|s| s.size() == 4 && strip_analysis(s).is_broken_border_strip && strip_analysis(s).cc() == 1)
            .count();
        assert_eq!(ribbons, 8);
        assert!(multi_skew_shapes(2, 2).iter().any(|s| s.to_string() == "1|1"));
    }
}
