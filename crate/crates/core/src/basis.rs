//! Subspaces of `span(P(k, l))` in reduced row echelon form.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::lincomb::{Accum, LinComb};
use crate::scalar::Scalar;

/// Each row has its smallest rank as pivot with coefficient one, and no
/// other row has a nonzero entry in that column.
#[derive(Clone, Debug)]
pub struct ModuleBasis<S> {
    upper: usize,
    lower: usize,
    rows: BTreeMap<u32, LinComb<S>>,
}

/// Result of inserting a vector.
#[derive(Clone, Debug, PartialEq)]
pub enum Insertion<S> {
    /// Already in the span.
    Dependent,
    /// Grew the span; carries the pivot rank and the pivot value before scaling.
    Added { pivot: u32, scale: S },
}

impl<S: Scalar> ModuleBasis<S> {
    pub fn new(upper: usize, lower: usize) -> Self {
        ModuleBasis { upper, lower, rows: BTreeMap::new() }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.upper, self.lower)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &LinComb<S>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.keys().copied()
    }

    fn check(&self, v: &LinComb<S>) -> Result<()> {
        if v.shape() != (self.upper, self.lower) {
            return Err(Error::shape(format!("vector of shape {:?} against basis of shape {:?}", v.shape(), self.shape())));
        }
        Ok(())
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &LinComb<S>) -> Result<LinComb<S>> {
        self.check(v)?;
        let hits: Vec<(&LinComb<S>, &S)> =
            v.raw_terms().iter().filter_map(|(r, c)| self.rows.get(r).map(|row| (row, c))).collect();
        if hits.is_empty() {
            return Ok(v.clone());
        }
        if hits.len() == 1 {
            let (row, c) = hits[0];
            return v.add_scaled(row, &c.neg());
        }
        let mut acc = Accum::new();
        for (r, c) in v.raw_terms() {
            if !self.rows.contains_key(r) {
                acc.add(*r, c.clone());
            }
        }
        for (row, c) in hits {
            let k = c.neg();
            for (r, x) in row.raw_terms().iter().skip(1) {
                acc.add(*r, x.mul(&k));
            }
        }
        Ok(acc.finish(self.upper, self.lower))
    }

    pub fn contains(&self, v: &LinComb<S>) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn insert(&mut self, v: &LinComb<S>) -> Result<Insertion<S>> {
        let r = self.reduce(v)?;
        Ok(self.insert_reduced(r))
    }

    /// Inserts a vector already reduced against this basis.
    pub(crate) fn insert_reduced(&mut self, r: LinComb<S>) -> Insertion<S> {
        let Some(pivot) = r.leading_rank() else {
            return Insertion::Dependent;
        };
        let scale = r.raw_terms()[0].1.clone();
        let row = if scale.is_one() { r } else { r.scale(&scale.inv().expect("pivot is nonzero")) };
        let mut updates = Vec::new();
        for (p, other) in &self.rows {
            let c = other.coefficient_at(pivot);
            if !c.is_zero() {
                updates.push((*p, other.add_scaled(&row, &c.neg()).expect("same shape")));
            }
        }
        for (p, u) in updates {
            self.rows.insert(p, u);
        }
        self.rows.insert(pivot, row);
        Insertion::Added { pivot, scale }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a LinComb<S>>>(upper: usize, lower: usize, vs: I) -> Result<Self> {
        let mut b = Self::new(upper, lower);
        for v in vs {
            b.insert(v)?;
        }
        Ok(b)
    }

    /// Whether both bases span the same subspace.
    pub fn same_span(&self, other: &Self) -> bool {
        self.shape() == other.shape()
            && self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a == b)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        for r in self.rows.values() {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<ModuleBasis<T>> {
        let mut out = ModuleBasis::new(self.upper, self.lower);
        for r in self.rows.values() {
            out.insert(&r.try_map_coeffs(&f)?)?;
        }
        Ok(out)
    }

    /// Pivot rank to row index, useful for diagnostics.
    pub fn pivot_positions(&self) -> HashMap<u32, usize> {
        self.rows.keys().enumerate().map(|(i, p)| (*p, i)).collect()
    }
}
