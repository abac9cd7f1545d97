//! Finite linear combinations of partitions of a fixed shape.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{Coeff, Specialization};
use crate::error::{Error, Result};
use crate::partition::{rank_of, unrank, Partition};
use crate::poly::Q;
use crate::scalar::Scalar;

/// Sparse vector indexed by partition rank; no stored coefficient is zero.
#[derive(Clone, PartialEq, Debug)]
pub struct LinComb<S> {
    upper: usize,
    lower: usize,
    terms: Vec<(u32, S)>,
}

/// Accumulates coefficients by rank before building a [`LinComb`].
pub(crate) struct Accum<S> {
    map: BTreeMap<u32, S>,
}

impl<S: Scalar> Accum<S> {
    pub(crate) fn new() -> Self {
        Accum { map: BTreeMap::new() }
    }

    pub(crate) fn add(&mut self, idx: u32, c: S) {
        if c.is_zero() {
            return;
        }
        match self.map.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                *e.get_mut() = v;
            }
        }
    }

    pub(crate) fn finish(self, upper: usize, lower: usize) -> LinComb<S> {
        LinComb { upper, lower, terms: self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl<S: Scalar> LinComb<S> {
    pub fn zero(upper: usize, lower: usize) -> Self {
        LinComb { upper, lower, terms: Vec::new() }
    }

    pub fn from_partition(p: &Partition) -> Self {
        Self::term(p, S::one())
    }

    pub fn term(p: &Partition, c: S) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(p.index().rank as u32, c)] };
        LinComb { upper: p.upper(), lower: p.lower(), terms }
    }

    /// Sums terms, which must all share the given shape.
    pub fn from_terms<I: IntoIterator<Item = (Partition, S)>>(upper: usize, lower: usize, items: I) -> Result<Self> {
        let mut acc = Accum::new();
        for (p, c) in items {
            if p.upper() != upper || p.lower() != lower {
                return Err(Error::shape(format!(
                    "term {p} has shape ({}, {}), expected ({upper}, {lower})",
                    p.upper(),
                    p.lower()
                )));
            }
            acc.add(p.index().rank as u32, c);
        }
        Ok(acc.finish(upper, lower))
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.upper, self.lower)
    }

    pub fn len(&self) -> usize {
        self.upper + self.lower
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn raw_terms(&self) -> &[(u32, S)] {
        &self.terms
    }

    pub fn partition_at(&self, rank: u32) -> Partition {
        let labels = unrank(self.len(), rank as u64).expect("stored ranks are valid");
        Partition::from_rgs(self.upper, self.lower, labels).expect("stored ranks are valid")
    }

    pub fn terms(&self) -> impl Iterator<Item = (Partition, &S)> + '_ {
        self.terms.iter().map(move |(r, c)| (self.partition_at(*r), c))
    }

    pub fn coefficient_of(&self, p: &Partition) -> S {
        if p.upper() != self.upper || p.lower() != self.lower {
            return S::zero();
        }
        let r = rank_of(p.labels()) as u32;
        self.coefficient_at(r)
    }

    pub fn coefficient_at(&self, rank: u32) -> S {
        match self.terms.binary_search_by_key(&rank, |(r, _)| *r) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn leading_rank(&self) -> Option<u32> {
        self.terms.first().map(|(r, _)| *r)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::shape(format!("cannot add shapes {:?} and {:?}", self.shape(), other.shape())));
        }
        Ok(())
    }

    fn combine(&self, other: &Self, k: Option<&S>) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let scaled = |c: &S| match k {
            Some(k) => c.mul(k),
            None => c.clone(),
        };
        while i < self.terms.len() || j < other.terms.len() {
            let a = self.terms.get(i);
            let b = other.terms.get(j);
            match (a, b) {
                (Some((ra, ca)), Some((rb, cb))) if ra == rb => {
                    let c = ca.add(&scaled(cb));
                    if !c.is_zero() {
                        out.push((*ra, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((ra, ca)), Some((rb, _))) if ra < rb => {
                    out.push((*ra, ca.clone()));
                    i += 1;
                }
                (Some((ra, ca)), None) => {
                    out.push((*ra, ca.clone()));
                    i += 1;
                }
                (_, Some((rb, cb))) => {
                    let c = scaled(cb);
                    if !c.is_zero() {
                        out.push((*rb, c));
                    }
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        LinComb { upper: self.upper, lower: self.lower, terms: out }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.combine(other, None))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.combine(other, Some(&S::one().neg())))
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &Self, k: &S) -> Result<Self> {
        self.check_shape(other)?;
        if k.is_zero() {
            return Ok(self.clone());
        }
        Ok(self.combine(other, Some(k)))
    }

    pub fn scale(&self, k: &S) -> Self {
        if k.is_zero() {
            return Self::zero(self.upper, self.lower);
        }
        LinComb { upper: self.upper, lower: self.lower, terms: self.terms.iter().map(|(r, c)| (*r, c.mul(k))).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::one().neg())
    }

    pub fn map_coeffs<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> LinComb<T> {
        LinComb {
            upper: self.upper,
            lower: self.lower,
            terms: self.terms.iter().map(|(r, c)| (*r, f(c))).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn try_map_coeffs<T: Scalar>(&self, mut f: impl FnMut(&S) -> Result<T>) -> Result<LinComb<T>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (r, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.push((*r, v));
            }
        }
        Ok(LinComb { upper: self.upper, lower: self.lower, terms })
    }

    /// Applies a linear map given on basis partitions.
    pub fn map_linear(&self, upper: usize, lower: usize, mut f: impl FnMut(&Partition) -> Result<LinComb<S>>) -> Result<Self> {
        let mut acc = Accum::new();
        for (r, c) in &self.terms {
            let img = f(&self.partition_at(*r))?;
            if img.shape() != (upper, lower) {
                return Err(Error::shape("image has an unexpected shape"));
            }
            for (ri, ci) in img.terms {
                acc.add(ri, ci.mul(c));
            }
        }
        Ok(acc.finish(upper, lower))
    }
}

impl LinComb<Coeff> {
    /// Substitutes `spec`; fails unless every coefficient becomes a rational number.
    pub fn to_rational(&self, spec: &Specialization) -> Result<LinComb<Q>> {
        self.try_map_coeffs(|c| {
            let c = c.specialize(spec)?;
            c.as_rational().ok_or_else(|| Error::domain(format!("coefficient {c} is not a number after substitution")))
        })
    }
}

impl LinComb<Q> {
    pub fn to_coeff(&self) -> LinComb<Coeff> {
        self.map_coeffs(|c| Coeff::from_q(c.clone()))
    }
}

impl<S: Scalar> fmt::Display for LinComb<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (r, c)) in self.terms.iter().rev().enumerate() {
            let p = self.partition_at(*r);
            let word = if p.is_empty() { "|".to_string() } else { p.to_string() };
            let neg = c.is_negative();
            let body = if neg { c.neg().factor_string() } else { c.factor_string() };
            match (i, neg) {
                (0, false) => write!(f, "{body}*{word}")?,
                (0, true) => write!(f, "-{body}*{word}")?,
                (_, false) => write!(f, " + {body}*{word}")?,
                (_, true) => write!(f, " - {body}*{word}")?,
            }
        }
        Ok(())
    }
}
