//! Sparse square matrices over rational functions, stored by column.

use std::collections::BTreeMap;

use crate::ratfn::Frac;
use crate::scalar::Scalar;

/// Column `j` lists the nonzero entries `(i, M[i][j])`.
#[derive(Clone, Debug)]
pub struct SparseMatrix<Q> {
    cols: Vec<BTreeMap<usize, Frac<Q>>>,
}

impl<Q: Scalar> SparseMatrix<Q> {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix { cols: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize, one: &Frac<Q>) -> Self {
        Self::diagonal((0..dim).map(|_| one.clone()).collect())
    }

    pub fn diagonal(entries: Vec<Frac<Q>>) -> Self {
        let mut m = Self::zero(entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Frac<Q>> {
        self.cols[col].get(&row)
    }

    pub fn column(&self, col: usize) -> &BTreeMap<usize, Frac<Q>> {
        &self.cols[col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Frac<Q>) {
        if v.is_zero() {
            self.cols[col].remove(&row);
        } else {
            self.cols[col].insert(row, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn is_diagonal(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| c.keys().all(|&i| i == j))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim());
        let mut out = Self::zero(self.dim());
        for (j, col) in rhs.cols.iter().enumerate() {
            let mut acc: BTreeMap<usize, Frac<Q>> = BTreeMap::new();
            for (k, b) in col {
                for (i, a) in &self.cols[*k] {
                    let prod = a * b;
                    match acc.remove(i) {
                        Some(prev) => {
                            let s = &prev + &prod;
                            if !s.is_zero() {
                                acc.insert(*i, s);
                            }
                        }
                        None => {
                            acc.insert(*i, prod);
                        }
                    }
                }
            }
            out.cols[j] = acc;
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (j, col) in rhs.cols.iter().enumerate() {
            for (i, b) in col {
                let v = match out.cols[j].get(i) {
                    Some(a) => a + b,
                    None => b.clone(),
                };
                out.set(*i, j, v);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        SparseMatrix {
            cols: self.cols.iter().map(|c| c.iter().map(|(i, v)| (*i, -v)).collect()).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// `self + c·I`.
    pub fn add_scalar(&self, c: &Frac<Q>) -> Self {
        let mut out = self.clone();
        for j in 0..self.dim() {
            let v = match out.cols[j].get(&j) {
                Some(a) => a + c,
                None => c.clone(),
            };
            out.set(j, j, v);
        }
        out
    }

    pub fn trace(&self, zero: &Frac<Q>) -> Frac<Q> {
        let mut acc = zero.clone();
        for (j, col) in self.cols.iter().enumerate() {
            if let Some(v) = col.get(&j) {
                acc = &acc + v;
            }
        }
        acc
    }

    /// Exact entrywise equality.
    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// First entry where the matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let d = self.sub(other);
        d.cols.iter().enumerate().find_map(|(j, c)| c.keys().next().map(|&i| (i, j)))
    }
}
