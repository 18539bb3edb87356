//! Brute-force `G(r,p,n)` as monomial matrices, for checking specialized tables.

use std::collections::{HashMap, VecDeque};

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::ratfn::Frac;
use crate::scalar::Scalar;
use crate::seminormal::{AlgebraWord, Letter};
use crate::table::{CharacterTable, ColumnLabel};

/// Row `i` holds `ζ_r^{colors[i]}` in column `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    perm: Vec<usize>,
    colors: Vec<u32>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement { perm: (0..n).collect(), colors: vec![0; n] }
    }

    pub fn new(perm: Vec<usize>, colors: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        if perm.len() != colors.len() || perm.iter().any(|&j| j >= seen.len() || std::mem::replace(&mut seen[j], true)) {
            return Err(Error::InvalidElement(format!("{perm:?} is not a permutation")));
        }
        Ok(GroupElement { perm, colors })
    }

    /// `diag(1, …, ζ^c, …, 1)` with `ζ^c` in position `i`.
    pub fn diagonal(n: usize, i: usize, c: u32) -> Self {
        let mut g = Self::identity(n);
        g.colors[i] = c;
        g
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut g = Self::identity(n);
        g.perm.swap(i, j);
        g
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, other: &Self, r: u32) -> Self {
        let perm = self.perm.iter().map(|&j| other.perm[j]).collect();
        let colors = self.perm.iter().zip(&self.colors).map(|(&j, &c)| (c + other.colors[j]) % r).collect();
        GroupElement { perm, colors }
    }

    pub fn inverse(&self, r: u32) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut colors = vec![0; n];
        for (i, (&j, &c)) in self.perm.iter().zip(&self.colors).enumerate() {
            perm[j] = i;
            colors[j] = (r - c) % r;
        }
        GroupElement { perm, colors }
    }

    pub fn pow(&self, e: i64, r: u32) -> Self {
        let base = if e < 0 { self.inverse(r) } else { self.clone() };
        (0..e.unsigned_abs()).fold(Self::identity(self.n()), |acc, _| acc.mul(&base, r))
    }

    /// Membership in `G(r,p,n)`: the entry product is an `(r/p)`-th root of unity.
    pub fn in_subgroup(&self, r: u32, p: u32) -> bool {
        self.colors.iter().sum::<u32>() % p == 0 && r.is_multiple_of(p)
    }

    /// Trace as an element of `Q(ζ_r)`.
    pub fn trace<Q: Scalar>(&self, r: u32) -> Cyclo<Q> {
        let mut acc = Cyclo::zero();
        for (i, (&j, &c)) in self.perm.iter().zip(&self.colors).enumerate() {
            if i == j {
                acc = &acc + &Cyclo::root_of_unity(r, c as i64);
            }
        }
        acc
    }
}

/// Image of a Hecke word at `q = 1`: `T_1 ↦ diag(ζ, 1, …)`, `T_i ↦ (i−1, i)`.
pub fn word_image(w: &AlgebraWord, r: u32, p: u32, n: usize) -> GroupElement {
    let t = |i: usize| -> GroupElement {
        if i == 1 {
            GroupElement::diagonal(n, 0, 1 % r)
        } else {
            GroupElement::transposition(n, i - 2, i - 1)
        }
    };
    let mut acc = GroupElement::identity(n);
    for &(letter, e) in w.letters() {
        let g = match letter {
            Letter::T(i) => t(i),
            Letter::Hoefsmit(i) => GroupElement::diagonal(n, i - 1, 1 % r),
            Letter::A(0) | Letter::S(1) => GroupElement::diagonal(n, 0, p % r),
            Letter::A(1) => {
                let t1 = t(1);
                t1.inverse(r).mul(&t(2), r).mul(&t1, r)
            }
            Letter::A(i) => t(i),
            Letter::S(i) => GroupElement::diagonal(n, i - 1, 1 % r).mul(&GroupElement::diagonal(n, 0, r - 1), r),
        };
        acc = acc.mul(&g.pow(e, r), r);
    }
    acc
}

#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    r: u32,
    p: u32,
    n: usize,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ReflectionGroup {
    /// Closure of `s_0 = diag(ζ^p)`, `s_1' = ζE_{12} + ζ⁻¹E_{21}` and the
    /// adjacent transpositions; refuses orders above `limit`.
    pub fn generate(r: u32, p: u32, n: usize, limit: usize) -> Result<Self> {
        if r == 0 || p == 0 || !r.is_multiple_of(p) || n == 0 {
            return Err(Error::InvalidArgument(format!("G({r},{p},{n}) needs p | r and n ≥ 1")));
        }
        let expected = Self::order_formula(r, p, n);
        if expected > limit {
            return Err(Error::InvalidArgument(format!("|G({r},{p},{n})| = {expected} exceeds {limit}")));
        }
        let mut gens = vec![GroupElement::diagonal(n, 0, p % r)];
        if n >= 2 {
            let mut s1 = GroupElement::transposition(n, 0, 1);
            s1.colors[0] = 1 % r;
            s1.colors[1] = (r - 1) % r;
            gens.push(s1);
        }
        gens.extend((1..n).map(|i| GroupElement::transposition(n, i - 1, i)));
        let id = GroupElement::identity(n);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(k) = queue.pop_front() {
            for g in &gens {
                let h = elements[k].mul(g, r);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        let inverses: Vec<GroupElement> = elements.iter().map(|g| g.inverse(r)).collect();
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        for x in 0..elements.len() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members = Vec::new();
            for (g, g_inv) in elements.iter().zip(&inverses) {
                let y = index[&g.mul(&elements[x], r).mul(g_inv, r)];
                if class_of[y] == usize::MAX {
                    class_of[y] = classes.len();
                    members.push(y);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok(ReflectionGroup { r, p, n, elements, index, classes, class_of })
    }

    /// `d · r^{n−1} · n!` with `d = r/p`.
    pub fn order_formula(r: u32, p: u32, n: usize) -> usize {
        let d = (r / p) as usize;
        d * (r as usize).pow(n as u32 - 1) * (1..=n).product::<usize>()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).map(|&k| self.class_of[k])
    }

    /// Class of the image of a table column.
    pub fn column_class(&self, col: &ColumnLabel) -> Option<usize> {
        let word = match col {
            ColumnLabel::Hrn(s) => s.word(),
            ColumnLabel::Hrpn(s) => s.word(),
        };
        self.class_of(&word_image(&word, self.r, self.p, self.n))
    }
}

/// Outcome of the orthogonality check of one specialized table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityReport {
    pub group_order: usize,
    pub classes: usize,
    pub failures: Vec<String>,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn constant_of<Q: Scalar>(v: &Frac<Q>) -> Option<Cyclo<Q>> {
    v.as_poly().and_then(|p| p.as_constant())
}

/// Row and column orthogonality of a table specialized to the group point,
/// with class sizes from `group` and conjugation `ζ ↦ ζ⁻¹`.
pub fn check_orthogonality<Q: Scalar>(table: &CharacterTable<Q>, group: &ReflectionGroup) -> OrthogonalityReport {
    let mut failures = Vec::new();
    let nclass = group.classes().len();
    let mut values: Vec<Vec<Option<Cyclo<Q>>>> = vec![vec![None; nclass]; table.rows().len()];
    for (c, col) in table.cols().iter().enumerate() {
        let Some(k) = group.column_class(col) else {
            failures.push(format!("column {col} maps outside G({},{},{})", group.r, group.p, group.n));
            continue;
        };
        for (r, (row, vals)) in table.rows().iter().zip(values.iter_mut()).enumerate() {
            let Some(v) = constant_of(table.entry(r, c)) else {
                failures.push(format!("entry ({row}; {col}) is not a constant"));
                continue;
            };
            match &vals[k] {
                Some(prev) if *prev != v => failures.push(format!("({row}; {col}) disagrees within its class")),
                _ => vals[k] = Some(v),
            }
        }
    }
    if let Some(k) = (0..nclass).find(|&k| values.iter().any(|v| v[k].is_none())) {
        failures.push(format!("class {k} of size {} has no column", group.classes()[k].len()));
    }
    if !failures.is_empty() {
        return OrthogonalityReport { group_order: group.order(), classes: nclass, failures };
    }
    let values: Vec<Vec<Cyclo<Q>>> = values.into_iter().map(|v| v.into_iter().map(Option::unwrap).collect()).collect();
    let size = |k: usize| Cyclo::<Q>::from_int(group.classes()[k].len() as i64);
    let order = Cyclo::<Q>::from_int(group.order() as i64);
    for (a, row_a) in values.iter().enumerate() {
        for (b, row_b) in values.iter().enumerate() {
            let mut sum = Cyclo::zero();
            for k in 0..nclass {
                sum = &sum + &(&size(k) * &(&row_a[k] * &row_b[k].conj()));
            }
            let expected = if a == b { order.clone() } else { Cyclo::zero() };
            if sum != expected {
                failures.push(format!("rows {} and {}: Σ|C|χχ̄ = {sum}", table.rows()[a], table.rows()[b]));
            }
        }
    }
    if values.len() != nclass {
        failures.push(format!("{} rows for {nclass} classes", values.len()));
    } else {
        for k in 0..nclass {
            for l in 0..nclass {
                let mut sum = Cyclo::zero();
                for row in &values {
                    sum = &sum + &(&row[k] * &row[l].conj());
                }
                let expected = if k == l { Cyclo::from_int((group.order() / group.classes()[k].len()) as i64) } else { Cyclo::zero() };
                if sum != expected {
                    failures.push(format!("classes {k} and {l}: Σχχ̄ = {sum}"));
                }
            }
        }
    }
    OrthogonalityReport { group_order: group.order(), classes: nclass, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{character_table_hrn, character_table_hrpn};
    use num_rational::BigRational;

    #[test]
    fn orders_match_formula() {
        for (r, p, n, size) in [(2, 1, 2, 8), (1, 1, 3, 6), (2, 2, 2, 4), (3, 1, 2, 18), (4, 2, 2, 16), (3, 3, 3, 54)] {
            let g = ReflectionGroup::generate(r, p, n, 10_000).unwrap();
            assert_eq!(g.order(), size, "G({r},{p},{n})");
            assert_eq!(ReflectionGroup::order_formula(r, p, n), size);
            assert!(g.elements().iter().all(|x| x.in_subgroup(r, p)));
        }
        assert!(ReflectionGroup::generate(4, 1, 6, 10_000).is_err());
    }

    #[test]
    fn symmetric_group_classes() {
        let g = ReflectionGroup::generate(1, 1, 3, 100).unwrap();
        let mut sizes: Vec<usize> = g.classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 2, 3]);
    }

    #[test]
    fn group_inverse_and_trace() {
        let g = GroupElement::new(vec![1, 2, 0], vec![1, 0, 2]).unwrap();
        assert_eq!(g.mul(&g.inverse(3), 3), GroupElement::identity(3));
        assert_eq!(g.pow(-2, 3), g.inverse(3).mul(&g.inverse(3), 3));
        let d = GroupElement::diagonal(2, 0, 1);
        assert_eq!(d.trace::<BigRational>(2), Cyclo::zero());
        assert!(GroupElement::new(vec![0, 0], vec![0, 0]).is_err());
    }

    #[test]
    fn specialized_tables_are_orthogonal() {
        for (r, p, n) in [(1, 1, 3), (2, 1, 2), (3, 1, 2), (2, 2, 2)] {
            let t = character_table_hrpn::<BigRational>(r, p, n).unwrap();
            let s = t.specialize(&t.model().group_bindings()).unwrap();
            let g = ReflectionGroup::generate(r as u32, p as u32, n as usize, 10_000).unwrap();
            let report = check_orthogonality(&s, &g);
            assert!(report.passed(), "G({r},{p},{n}): {:?}", report.failures);
        }
    }

    #[test]
    fn linear_character_matches_word_images() {
        let t = character_table_hrn::<BigRational>(2, 2).unwrap();
        let s = t.specialize(&t.model().group_bindings()).unwrap();
        let row = s.rows().iter().position(|r| r.shape.to_string() == "-|1,1").unwrap();
        for (c, col) in s.cols().iter().enumerate() {
            let ColumnLabel::Hrn(spec) = col else { unreachable!() };
            let g = word_image(&spec.word(), 2, 1, 2);
            let colors: u32 = g.colors().iter().sum();
            let p = g.perm();
            let inversions = (0..2).flat_map(|i| (i + 1..2).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let expected = Cyclo::<BigRational>::root_of_unity(2, (colors as usize + inversions) as i64);
            assert_eq!(constant_of(s.entry(row, c)).unwrap(), expected, "{col}");
        }
    }

    #[test]
    fn a_tampered_table_fails() {
        let t = character_table_hrn::<BigRational>(1, 3).unwrap();
        let s = t.specialize(&t.model().group_bindings()).unwrap();
        let json = s.to_json().replacen("\"(-1)\"", "\"(1)\"", 1);
        let bad = CharacterTable::<BigRational>::from_json(&json).unwrap();
        let g = ReflectionGroup::generate(1, 1, 3, 100).unwrap();
        assert!(!check_orthogonality(&bad, &g).passed());
    }
}
