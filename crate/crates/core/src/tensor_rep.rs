//! The matrix functor `p ↦ T_p` at loop value `N` and its sign twists.
//!
//! Multi-indices are enumerated with the first index varying fastest, so a
//! multi-index `(i_1, …, i_k)` over `0..N` sits at `Σ i_m N^(m−1)`. Matrices
//! of shape `(k, l)` have `N^l` rows (lower points) and `N^k` columns.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::coeff::{Coeff, Specialization};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::partition::Partition;
use crate::poly::Q;

pub const MAX_MATRIX_ENTRIES: usize = 6561;

#[derive(Clone, Debug, PartialEq)]
pub struct IntertwinerMatrix {
    pub upper: usize,
    pub lower: usize,
    pub n: usize,
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub entries: Vec<Q>,
}

impl IntertwinerMatrix {
    pub fn zeros(upper: usize, lower: usize, n: usize) -> Result<Self> {
        check_capacity(upper + lower, n)?;
        let rows = n.pow(lower as u32);
        let cols = n.pow(upper as u32);
        Ok(IntertwinerMatrix { upper, lower, n, rows, cols, entries: vec![Q::zero(); rows * cols] })
    }

    pub fn get(&self, row: usize, col: usize) -> &Q {
        &self.entries[row * self.cols + col]
    }

    fn get_mut(&mut self, row: usize, col: usize) -> &mut Q {
        &mut self.entries[row * self.cols + col]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn add_scaled(&mut self, other: &Self, k: &Q) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::shape("matrix sizes differ"));
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b * k;
        }
        Ok(())
    }

    pub fn scale(&self, k: &Q) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e *= k;
        }
        out
    }

    /// Product `self · other` (apply `other` first).
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.n != other.n {
            return Err(Error::shape(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = IntertwinerMatrix::zeros(other.upper, self.lower, self.n)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = vec![Q::zero(); self.entries.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        IntertwinerMatrix { upper: self.lower, lower: self.upper, n: self.n, rows: self.cols, cols: self.rows, entries }
    }

    /// Tensor product in the index order of this module: the indices of
    /// `self` come first and vary fastest.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::shape("matrices over different index ranges"));
        }
        let mut out = IntertwinerMatrix::zeros(self.upper + other.upper, self.lower + other.lower, self.n)?;
        for (ra, rb) in iproduct(self.rows, other.rows) {
            for (ca, cb) in iproduct(self.cols, other.cols) {
                let a = self.get(ra, ca);
                let b = other.get(rb, cb);
                if !a.is_zero() && !b.is_zero() {
                    *out.get_mut(ra + self.rows * rb, ca + self.cols * cb) = a * b;
                }
            }
        }
        Ok(out)
    }

    /// Shape header, then one row per line.
    pub fn dump(&self) -> String {
        let mut s = format!("# shape ({}, {}) N={} rows={} cols={}\n", self.upper, self.lower, self.n, self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

fn iproduct(a: usize, b: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..b).flat_map(move |y| (0..a).map(move |x| (x, y)))
}

fn check_capacity(points: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    let size = (n as u128).checked_pow(points as u32).unwrap_or(u128::MAX);
    if size > MAX_MATRIX_ENTRIES as u128 {
        return Err(Error::Capacity { length: points, max: MAX_MATRIX_ENTRIES });
    }
    Ok(())
}

/// Digits of `x` in base `n`, first digit least significant.
fn digits(mut x: usize, n: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(x % n);
        x /= n;
    }
    out
}

pub fn matrix_of_partition(p: &Partition, n: usize) -> Result<IntertwinerMatrix> {
    let mut m = IntertwinerMatrix::zeros(p.upper(), p.lower(), n)?;
    let nb = p.block_count();
    let total = n.pow(nb as u32);
    let labels = p.labels();
    let k = p.upper();
    for code in 0..total {
        let values = digits(code, n, nb);
        let mut col = 0;
        let mut w = 1;
        for &a in &labels[..k] {
            col += values[a as usize] * w;
            w *= n;
        }
        let mut row = 0;
        let mut w = 1;
        for &a in &labels[k..] {
            row += values[a as usize] * w;
            w *= n;
        }
        *m.get_mut(row, col) = Q::one();
    }
    Ok(m)
}

pub fn matrix_of(v: &LinComb<Q>, n: usize) -> Result<IntertwinerMatrix> {
    let mut m = IntertwinerMatrix::zeros(v.upper(), v.lower(), n)?;
    for (p, c) in v.terms() {
        m.add_scaled(&matrix_of_partition(&p, n)?, c)?;
    }
    Ok(m)
}

/// Specializes the loop parameter to `n`; remaining symbols are an error.
pub fn specialize_to_n(v: &LinComb<Coeff>, n: usize) -> Result<LinComb<Q>> {
    let spec = Specialization::delta(Q::from_integer((n as i64).into()));
    v.try_map_coeffs(|c| {
        c.specialize(&spec)?.as_rational().ok_or_else(|| Error::domain("free parameters must be bound before building matrices"))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignMatrix {
    pub n: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i8) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                if v != 1 && v != -1 {
                    return Err(Error::domain("sign matrix entries must be +1 or -1"));
                }
                entries.push(v);
            }
        }
        Ok(SignMatrix { n, entries })
    }

    /// `σ_ij = −1` for `i < j`, else `+1`.
    pub fn qdef(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i < j { -1 } else { 1 }).expect("signs")
    }

    /// `σ_ij = σ_i σ_j` for `i < j`, else `+1`, where `σ_i = +1` exactly for
    /// the first `split` indices.
    pub fn grad(n: usize, split: usize) -> Result<Self> {
        if split >= n {
            return Err(Error::domain(format!("grading split {split} must be below N = {n}")));
        }
        let s = |i: usize| if i < split { 1i8 } else { -1 };
        Self::from_fn(n, |i, j| if i < j { s(i) * s(j) } else { 1 })
    }

    /// Entry for 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }
}

/// `σ_𝐢 = ∏_{m<n} σ_{i_m i_n}` for a multi-index of 1-based values.
pub fn sigma_product(sigma: &SignMatrix, index: &[usize]) -> Result<i8> {
    if let Some(&bad) = index.iter().find(|&&i| i == 0 || i > sigma.n) {
        return Err(Error::domain(format!("index {bad} outside 1..={}", sigma.n)));
    }
    Ok(sign_of(sigma, &index.iter().map(|i| i - 1).collect::<Vec<_>>()))
}

fn sign_of(sigma: &SignMatrix, idx: &[usize]) -> i8 {
    let mut s = 1i8;
    for m in 0..idx.len() {
        for n in m + 1..idx.len() {
            s *= sigma.get(idx[m], idx[n]);
        }
    }
    s
}

/// `[T^σ]_𝐢𝐣 = [T]_𝐢𝐣 σ_𝐢 σ_𝐣`.
pub fn twist(m: &IntertwinerMatrix, sigma: &SignMatrix) -> Result<IntertwinerMatrix> {
    if sigma.n != m.n {
        return Err(Error::shape("sign matrix size differs from N"));
    }
    let row_signs: Vec<i8> = (0..m.rows).map(|r| sign_of(sigma, &digits(r, m.n, m.lower))).collect();
    let col_signs: Vec<i8> = (0..m.cols).map(|c| sign_of(sigma, &digits(c, m.n, m.upper))).collect();
    let mut out = m.clone();
    for i in 0..m.rows {
        for j in 0..m.cols {
            if row_signs[i] * col_signs[j] < 0 {
                let e = out.get_mut(i, j);
                *e = -e.clone();
            }
        }
    }
    Ok(out)
}

pub fn twisted_matrix_of(v: &LinComb<Q>, n: usize, sigma: &SignMatrix) -> Result<IntertwinerMatrix> {
    twist(&matrix_of(v, n)?, sigma)
}

/// Rank of the vectorized matrices `T_p`.
pub fn rank_of_span(partitions: &[Partition], n: usize) -> Result<usize> {
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for p in partitions {
        rows.push(matrix_of_partition(p, n)?.entries);
    }
    Ok(rank(rows))
}

fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..width {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, piv);
        let inv = rows[r][col].recip();
        let pivot_row: Vec<Q> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

impl fmt::Display for IntertwinerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

/// One compatibility check of `T` (or `T^σ`) with a category operation;
/// `holds` is `None` when the matrices would exceed [`MAX_MATRIX_ENTRIES`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorCheck {
    pub name: &'static str,
    pub holds: Option<bool>,
}

/// Involution, tensor with the pair and composition `v* ∘ v` for `v` at loop value `n`.
pub fn functor_checks(v: &LinComb<Q>, n: usize, sigma: Option<&SignMatrix>) -> Result<Vec<FunctorCheck>> {
    use crate::ops::{compose, involution, tensor};
    let t = |x: &LinComb<Q>| -> Result<IntertwinerMatrix> {
        match sigma {
            Some(s) => twisted_matrix_of(x, n, s),
            None => matrix_of(x, n),
        }
    };
    let fits = |r: Result<bool>| match r {
        Ok(b) => Ok(Some(b)),
        Err(Error::Capacity { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    let delta = Q::from_integer((n as i64).into());
    let star = involution(v);
    let pair = LinComb::from_partition(&Partition::from_word("aa")?);
    Ok(vec![
        FunctorCheck { name: "involution", holds: fits(t(&star).and_then(|a| Ok(a == t(v)?.transpose())))? },
        FunctorCheck { name: "tensor", holds: fits(t(&tensor(v, &pair)).and_then(|a| Ok(a == t(v)?.kron(&t(&pair)?)?)))? },
        FunctorCheck {
            name: "composition",
            holds: fits(t(&compose(&star, v, &delta)?).and_then(|a| Ok(a == t(&star)?.matmul(&t(v)?)?)))?,
        },
    ])
}

/// Whether all entries are integers in {−1, 0, 1}.
pub fn is_sign_valued(m: &IntertwinerMatrix) -> bool {
    m.entries.iter().all(|e| e.is_integer() && e.abs() <= Q::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> LinComb<Q> {
        LinComb::from_partition(&Partition::from_two_row(s).unwrap())
    }

    #[test]
    fn pair_vector() {
        let m = matrix_of(&w("aa"), 2).unwrap();
        assert_eq!((m.rows, m.cols), (4, 1));
        let col: Vec<i64> = m.entries.iter().map(|e| e.to_integer().try_into().unwrap()).collect();
        assert_eq!(col, vec![1, 0, 0, 1]);
    }

    #[test]
    fn sigma_values() {
        let s = SignMatrix::qdef(2);
        assert_eq!(sigma_product(&s, &[]).unwrap(), 1);
        assert_eq!(sigma_product(&s, &[2]).unwrap(), 1);
        assert_eq!(sigma_product(&s, &[1, 2]).unwrap(), -1);
        assert_eq!(sigma_product(&s, &[2, 1]).unwrap(), 1);
        assert!(sigma_product(&s, &[3]).is_err());
    }

    #[test]
    fn ranks() {
        let all3 = crate::partition::enumerate(3).unwrap();
        assert_eq!(rank_of_span(&all3, 3).unwrap(), 5);
        assert!(rank_of_span(&all3, 2).unwrap() < 5);
    }
}
