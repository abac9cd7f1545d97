//! Category and word operations on partitions and linear combinations.
//!
//! Partition-level functions return the resulting partition together with
//! the number of closed loops; the LinComb versions turn loops into powers
//! of the loop parameter passed in.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::lincomb::{Accum, LinComb};
use crate::partition::{enumerate_labels, rank_of, Partition};
use crate::poly::Poly;
use crate::scalar::Scalar;

pub fn tensor_partitions(p: &Partition, q: &Partition) -> Partition {
    let off = p.block_count() as u8;
    let (pl, ql) = (p.labels(), q.labels());
    let mut raw: Vec<u8> = Vec::with_capacity(p.len() + q.len());
    raw.extend_from_slice(&pl[..p.upper()]);
    raw.extend(ql[..q.upper()].iter().map(|&a| a + off));
    raw.extend_from_slice(&pl[p.upper()..]);
    raw.extend(ql[q.upper()..].iter().map(|&a| a + off));
    Partition::from_labels_unchecked(p.upper() + q.upper(), p.lower() + q.lower(), &raw)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// `q ∘ p`: the lower row of `p` is glued to the upper row of `q`.
pub fn compose_partitions(q: &Partition, p: &Partition) -> Result<(Partition, usize)> {
    if p.lower() != q.upper() {
        return Err(Error::shape(format!(
            "cannot compose: lower row of {} has {} points, upper row of {} has {}",
            p,
            p.lower(),
            q,
            q.upper()
        )));
    }
    let (k, l, m) = (p.upper(), p.lower(), q.lower());
    let nb = p.block_count();
    let mut parent: Vec<usize> = (0..nb + q.block_count()).collect();
    let (pl, ql) = (p.labels(), q.labels());
    for j in 0..l {
        let a = find(&mut parent, pl[k + j] as usize);
        let b = find(&mut parent, nb + ql[j] as usize);
        if a != b {
            parent[a] = b;
        }
    }
    let mut outer = vec![false; parent.len()];
    let mut raw = Vec::with_capacity(k + m);
    for &a in &pl[..k] {
        let r = find(&mut parent, a as usize);
        outer[r] = true;
        raw.push(r);
    }
    for &a in &ql[l..] {
        let r = find(&mut parent, nb + a as usize);
        outer[r] = true;
        raw.push(r);
    }
    let mut loops = 0;
    for x in 0..parent.len() {
        if find(&mut parent, x) == x && !outer[x] {
            loops += 1;
        }
    }
    Ok((Partition::from_labels_unchecked(k, m, &raw), loops))
}

pub fn involution_partition(p: &Partition) -> Partition {
    let l = p.labels();
    let mut raw = l[p.upper()..].to_vec();
    raw.extend_from_slice(&l[..p.upper()]);
    Partition::from_labels_unchecked(p.lower(), p.upper(), &raw)
}

/// Moves the leftmost upper point to the front of the lower row.
pub fn left_rotate_partition(p: &Partition) -> Result<Partition> {
    if p.upper() == 0 {
        return Err(Error::shape("left rotation needs an upper point"));
    }
    let l = p.labels();
    let mut raw = l[1..p.upper()].to_vec();
    raw.push(l[0]);
    raw.extend_from_slice(&l[p.upper()..]);
    Ok(Partition::from_labels_unchecked(p.upper() - 1, p.lower() + 1, &raw))
}

/// Moves the rightmost lower point to the end of the upper row.
pub fn right_rotate_partition(p: &Partition) -> Result<Partition> {
    if p.lower() == 0 {
        return Err(Error::shape("right rotation needs a lower point"));
    }
    let l = p.labels();
    let n = l.len();
    let mut raw = l[..p.upper()].to_vec();
    raw.push(l[n - 1]);
    raw.extend_from_slice(&l[p.upper()..n - 1]);
    Ok(Partition::from_labels_unchecked(p.upper() + 1, p.lower() - 1, &raw))
}

/// Inverse of [`left_rotate_partition`].
pub fn left_rotate_inv_partition(p: &Partition) -> Result<Partition> {
    if p.lower() == 0 {
        return Err(Error::shape("inverse left rotation needs a lower point"));
    }
    let l = p.labels();
    let mut raw = vec![l[p.upper()]];
    raw.extend_from_slice(&l[..p.upper()]);
    raw.extend_from_slice(&l[p.upper() + 1..]);
    Ok(Partition::from_labels_unchecked(p.upper() + 1, p.lower() - 1, &raw))
}

/// Inverse of [`right_rotate_partition`].
pub fn right_rotate_inv_partition(p: &Partition) -> Result<Partition> {
    if p.upper() == 0 {
        return Err(Error::shape("inverse right rotation needs an upper point"));
    }
    let l = p.labels();
    let k = p.upper();
    let mut raw = l[..k - 1].to_vec();
    raw.extend_from_slice(&l[k..]);
    raw.push(l[k - 1]);
    Ok(Partition::from_labels_unchecked(k - 1, p.lower() + 1, &raw))
}

fn one_line(p: &Partition) -> Result<()> {
    if p.upper() != 0 {
        return Err(Error::shape(format!("{p} is not a one-line partition")));
    }
    Ok(())
}

/// Word rotation: the last letter moves to the front.
pub fn rotate_partition(p: &Partition) -> Result<Partition> {
    one_line(p)?;
    if p.is_empty() {
        return Err(Error::shape("cannot rotate the empty word"));
    }
    let l = p.labels();
    let mut raw = vec![l[l.len() - 1]];
    raw.extend_from_slice(&l[..l.len() - 1]);
    Ok(Partition::from_labels_unchecked(0, l.len(), &raw))
}

pub fn rotate_inv_partition(p: &Partition) -> Result<Partition> {
    one_line(p)?;
    if p.is_empty() {
        return Err(Error::shape("cannot rotate the empty word"));
    }
    let l = p.labels();
    let mut raw = l[1..].to_vec();
    raw.push(l[0]);
    Ok(Partition::from_labels_unchecked(0, l.len(), &raw))
}

pub fn reflect_partition(p: &Partition) -> Result<Partition> {
    one_line(p)?;
    let raw: Vec<u8> = p.labels().iter().rev().copied().collect();
    Ok(Partition::from_labels_unchecked(0, raw.len(), &raw))
}

/// Identifies the letters at positions `i` and `i + 1` and removes them.
/// The flag reports a closed loop, i.e. the merged block had no other point.
pub fn contract_at_partition(p: &Partition, i: usize) -> Result<(Partition, bool)> {
    one_line(p)?;
    let n = p.len();
    if n < 2 || i + 1 >= n {
        return Err(Error::shape(format!("cannot contract positions {i}, {} of a word of length {n}", i + 1)));
    }
    let l = p.labels();
    let (a, b) = (l[i], l[i + 1]);
    let mut loop_closed = true;
    let raw: Vec<u8> = l
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i && *j != i + 1)
        .map(|(_, &x)| {
            let x = if x == b { a } else { x };
            if x == a {
                loop_closed = false;
            }
            x
        })
        .collect();
    Ok((Partition::from_labels_unchecked(0, n - 2, &raw), loop_closed))
}

pub fn contract_partition(p: &Partition) -> Result<(Partition, bool)> {
    contract_at_partition(p, 0)
}

/// Per-length lookup tables for the one-line rotation and contraction.
pub struct WordTables {
    pub length: usize,
    pub rotate: Vec<u32>,
    pub contract: Vec<(u32, bool)>,
}

type TableCache = RwLock<HashMap<usize, Arc<WordTables>>>;

fn table_cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Largest length for which word tables are materialised.
pub const TABLE_LIMIT: usize = 10;

pub fn word_tables(length: usize) -> Result<Arc<WordTables>> {
    if length > TABLE_LIMIT {
        return Err(Error::Capacity { length, max: TABLE_LIMIT });
    }
    if let Some(t) = table_cache().read().expect("table lock").get(&length) {
        return Ok(t.clone());
    }
    let t = Arc::new(match crate::cache::load_tables(length) {
        Some(t) => t,
        None => {
            let t = build_tables(length)?;
            crate::cache::store_tables(&t);
            t
        }
    });
    // concurrent builders produce identical tables, so either write may win
    table_cache().write().expect("table lock").entry(length).or_insert(t.clone());
    Ok(t)
}

fn build_tables(length: usize) -> Result<WordTables> {
    let all = enumerate_labels(length)?;
    let mut rotate = Vec::with_capacity(all.len());
    let mut contract = Vec::new();
    for labels in all.iter() {
        let p = Partition::from_rgs(0, length, labels.clone())?;
        if length >= 1 {
            rotate.push(rank_of(rotate_partition(&p)?.labels()) as u32);
        }
        if length >= 2 {
            let (c, closed) = contract_partition(&p)?;
            contract.push((rank_of(c.labels()) as u32, closed));
        }
    }
    Ok(WordTables { length, rotate, contract })
}

fn basis_map<S: Scalar>(
    v: &LinComb<S>,
    upper: usize,
    lower: usize,
    mut f: impl FnMut(&Partition) -> Result<(Partition, S)>,
) -> Result<LinComb<S>> {
    let mut acc = Accum::new();
    for (p, c) in v.terms() {
        let (img, k) = f(&p)?;
        acc.add(img.index().rank as u32, if k.is_one() { c.clone() } else { c.mul(&k) });
    }
    Ok(acc.finish(upper, lower))
}

pub fn tensor<S: Scalar>(p: &LinComb<S>, q: &LinComb<S>) -> LinComb<S> {
    let mut acc = Accum::new();
    for (a, ca) in p.terms() {
        for (b, cb) in q.terms() {
            acc.add(tensor_partitions(&a, &b).index().rank as u32, ca.mul(cb));
        }
    }
    acc.finish(p.upper() + q.upper(), p.lower() + q.lower())
}

pub fn compose<S: Scalar>(q: &LinComb<S>, p: &LinComb<S>, delta: &S) -> Result<LinComb<S>> {
    if p.lower() != q.upper() {
        return Err(Error::shape(format!("cannot compose shapes {:?} after {:?}", q.shape(), p.shape())));
    }
    let mut acc = Accum::new();
    let mut powers: Vec<S> = vec![S::one()];
    for (a, ca) in p.terms() {
        for (b, cb) in q.terms() {
            let (r, loops) = compose_partitions(&b, &a)?;
            while powers.len() <= loops {
                let next = powers.last().expect("nonempty").mul(delta);
                powers.push(next);
            }
            acc.add(r.index().rank as u32, ca.mul(cb).mul(&powers[loops]));
        }
    }
    Ok(acc.finish(p.upper(), q.lower()))
}

pub fn involution<S: Scalar>(p: &LinComb<S>) -> LinComb<S> {
    basis_map(p, p.lower(), p.upper(), |x| Ok((involution_partition(x), S::one()))).expect("involution is total")
}

pub fn left_rotate<S: Scalar>(p: &LinComb<S>) -> Result<LinComb<S>> {
    if p.upper() == 0 {
        return Err(Error::shape("left rotation needs an upper point"));
    }
    basis_map(p, p.upper() - 1, p.lower() + 1, |x| Ok((left_rotate_partition(x)?, S::one())))
}

pub fn right_rotate<S: Scalar>(p: &LinComb<S>) -> Result<LinComb<S>> {
    if p.lower() == 0 {
        return Err(Error::shape("right rotation needs a lower point"));
    }
    basis_map(p, p.upper() + 1, p.lower() - 1, |x| Ok((right_rotate_partition(x)?, S::one())))
}

pub fn left_rotate_inv<S: Scalar>(p: &LinComb<S>) -> Result<LinComb<S>> {
    if p.lower() == 0 {
        return Err(Error::shape("inverse left rotation needs a lower point"));
    }
    basis_map(p, p.upper() + 1, p.lower() - 1, |x| Ok((left_rotate_inv_partition(x)?, S::one())))
}

pub fn right_rotate_inv<S: Scalar>(p: &LinComb<S>) -> Result<LinComb<S>> {
    if p.upper() == 0 {
        return Err(Error::shape("inverse right rotation needs an upper point"));
    }
    basis_map(p, p.upper() - 1, p.lower() + 1, |x| Ok((right_rotate_inv_partition(x)?, S::one())))
}

pub fn right_rotate_n<S: Scalar>(p: &LinComb<S>, n: usize) -> Result<LinComb<S>> {
    (0..n).try_fold(p.clone(), |acc, _| right_rotate(&acc))
}

pub fn left_rotate_n<S: Scalar>(p: &LinComb<S>, n: usize) -> Result<LinComb<S>> {
    (0..n).try_fold(p.clone(), |acc, _| left_rotate(&acc))
}

/// Brings a two-row element down to one line.
pub fn to_one_line<S: Scalar>(p: &LinComb<S>) -> LinComb<S> {
    left_rotate_n(p, p.upper()).expect("upper points available")
}

/// Inverse of [`to_one_line`] for the target shape `(upper, lower)`.
pub fn from_one_line<S: Scalar>(p: &LinComb<S>, upper: usize) -> Result<LinComb<S>> {
    (0..upper).try_fold(p.clone(), |acc, _| left_rotate_inv(&acc))
}

fn require_one_line<S: Scalar>(p: &LinComb<S>) -> Result<()> {
    if p.upper() != 0 {
        return Err(Error::shape("expected a one-line element"));
    }
    Ok(())
}

fn table_map<S: Scalar>(p: &LinComb<S>, lower: usize, f: impl Fn(u32) -> (u32, bool), delta: &S) -> LinComb<S> {
    let mut acc = Accum::new();
    for (r, c) in p.raw_terms() {
        let (img, closed) = f(*r);
        acc.add(img, if closed { c.mul(delta) } else { c.clone() });
    }
    acc.finish(0, lower)
}

pub fn rotate<S: Scalar>(p: &LinComb<S>) -> Result<LinComb<S>> {
    require_one_line(p)?;
    if p.len() == 0 {
        return Err(Error::shape("cannot rotate the empty word"));
    }
    if p.len() <= TABLE_LIMIT {
        let t = word_tables(p.len())?;
        return Ok(table_map(p, p.len(), |r| (t.rotate[r as usize], false), &S::one()));
    }
    basis_map(p, 0, p.len(), |x| Ok((rotate_partition(x)?, S::one())))
}

pub fn rotate_n<S: Scalar>(p: &LinComb<S>, n: usize) -> Result<LinComb<S>> {
    if p.len() == 0 {
        return Ok(p.clone());
    }
    (0..n % p.len()).try_fold(p.clone(), |acc, _| rotate(&acc))
}

pub fn rotate_inv<S: Scalar>(p: &LinComb<S>) -> Result<LinComb<S>> {
    require_one_line(p)?;
    if p.len() == 0 {
        return Err(Error::shape("cannot rotate the empty word"));
    }
    rotate_n(p, p.len() - 1)
}

pub fn reflect<S: Scalar>(p: &LinComb<S>) -> Result<LinComb<S>> {
    require_one_line(p)?;
    basis_map(p, 0, p.len(), |x| Ok((reflect_partition(x)?, S::one())))
}

pub fn contract<S: Scalar>(p: &LinComb<S>, delta: &S) -> Result<LinComb<S>> {
    require_one_line(p)?;
    if p.len() < 2 {
        return Err(Error::shape("contraction needs at least two points"));
    }
    if p.len() <= TABLE_LIMIT {
        let t = word_tables(p.len())?;
        return Ok(table_map(p, p.len() - 2, |r| t.contract[r as usize], delta));
    }
    contract_at(p, 0, delta)
}

/// Contraction of positions `i` and `i + 1` (0-based), i.e. `R^i ∘ Π ∘ R^-i`.
pub fn contract_at<S: Scalar>(p: &LinComb<S>, i: usize, delta: &S) -> Result<LinComb<S>> {
    require_one_line(p)?;
    basis_map(p, 0, p.len().saturating_sub(2), |x| {
        let (r, closed) = contract_at_partition(x, i)?;
        Ok((r, if closed { delta.clone() } else { S::one() }))
    })
}

/// Composition computed through words: `q ⊗ p` with the last `l` letters of
/// `q` glued, nested, to the first `l` letters of `p`. The result is the
/// one-line form of `(Rrot^l q)(Rrot^k p)`.
pub fn compose_via_words<S: Scalar>(
    q: &LinComb<S>,
    p: &LinComb<S>,
    k: usize,
    l: usize,
    m: usize,
    delta: &S,
) -> Result<LinComb<S>> {
    require_one_line(q)?;
    require_one_line(p)?;
    if q.len() != l + m || p.len() != k + l {
        return Err(Error::shape(format!(
            "compose_via_words expects lengths {} and {}, got {} and {}",
            l + m,
            k + l,
            q.len(),
            p.len()
        )));
    }
    let mut acc = tensor(q, p);
    for j in (m..m + l).rev() {
        acc = contract_at(&acc, j, delta)?;
    }
    Ok(acc)
}

/// `f(R) p` for a univariate polynomial `f`, lowest coefficient first.
pub fn rotation_polynomial<S: Scalar>(f: &Poly, p: &LinComb<S>) -> Result<LinComb<S>> {
    require_one_line(p)?;
    let syms = f.symbols();
    if syms.len() > 1 {
        return Err(Error::domain("rotation polynomial must be univariate"));
    }
    let Some(&s) = syms.iter().next() else {
        let c = f.as_constant().expect("constant polynomial");
        return Ok(p.scale(&S::from_q(c)));
    };
    let mut acc = LinComb::zero(0, p.len());
    let mut cur = p.clone();
    for (i, c) in f.coeffs_in(s).iter().enumerate() {
        if i > 0 {
            cur = if p.len() == 0 { cur } else { rotate(&cur)? };
        }
        let c = c.as_constant().expect("univariate");
        acc = acc.add_scaled(&cur, &S::from_q(c))?;
    }
    Ok(acc)
}
