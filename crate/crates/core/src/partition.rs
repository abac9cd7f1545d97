//! Set partitions of `upper + lower` points stored as restricted-growth strings.
//!
//! Points are numbered upper row first (left to right), then lower row
//! (left to right). A partition with no upper points is written as a word
//! such as `abab`; a general one as `upper|lower`, e.g. `ab|ba`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Largest total number of points accepted anywhere in the crate; ranks fit in `u32`.
pub const MAX_LENGTH: usize = 15;

/// Largest length for which all partitions are enumerated eagerly.
pub const MAX_ENUMERATION: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition {
    upper: usize,
    lower: usize,
    labels: Vec<u8>,
}

/// Position of a partition in the lexicographic order of restricted-growth strings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PartitionIndex {
    pub length: usize,
    pub rank: u64,
}

fn completion_table() -> &'static [[u64; MAX_LENGTH + 2]; MAX_LENGTH + 1] {
    static TABLE: OnceLock<[[u64; MAX_LENGTH + 2]; MAX_LENGTH + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        // completions[n][m]: ways to finish a string with n letters left and m blocks open
        let mut t = [[0u64; MAX_LENGTH + 2]; MAX_LENGTH + 1];
        for m in 0..MAX_LENGTH + 2 {
            t[0][m] = 1;
        }
        for n in 1..=MAX_LENGTH {
            for m in 0..MAX_LENGTH + 1 {
                t[n][m] = m as u64 * t[n - 1][m] + t[n - 1][m + 1];
            }
        }
        t
    })
}

pub fn bell(n: usize) -> Result<u64> {
    check_length(n)?;
    Ok(completion_table()[n][0])
}

fn check_length(n: usize) -> Result<()> {
    if n > MAX_LENGTH {
        Err(Error::Capacity { length: n, max: MAX_LENGTH })
    } else {
        Ok(())
    }
}

/// Relabels arbitrary labels into restricted-growth form.
pub(crate) fn relabel<T: Copy + Eq + std::hash::Hash>(raw: &[T]) -> Vec<u8> {
    let mut seen: Vec<T> = Vec::new();
    raw.iter()
        .map(|x| match seen.iter().position(|y| y == x) {
            Some(i) => i as u8,
            None => {
                seen.push(*x);
                (seen.len() - 1) as u8
            }
        })
        .collect()
}

impl Partition {
    pub fn empty() -> Self {
        Partition { upper: 0, lower: 0, labels: Vec::new() }
    }

    /// Builds from labels that are already a restricted-growth string.
    pub fn from_rgs(upper: usize, lower: usize, labels: Vec<u8>) -> Result<Self> {
        if labels.len() != upper + lower {
            return Err(Error::malformed(format!("{} labels for {} upper and {} lower points", labels.len(), upper, lower)));
        }
        check_length(labels.len())?;
        let mut open = 0u8;
        for &a in &labels {
            if a > open {
                return Err(Error::malformed(format!("labels {labels:?} are not a restricted-growth string")));
            }
            if a == open {
                open += 1;
            }
        }
        Ok(Partition { upper, lower, labels })
    }

    /// Builds from any labelling; equal labels mean the same block.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(upper: usize, lower: usize, raw: &[T]) -> Result<Self> {
        if raw.len() != upper + lower {
            return Err(Error::malformed("label count does not match the shape"));
        }
        check_length(raw.len())?;
        Ok(Partition { upper, lower, labels: relabel(raw) })
    }

    pub(crate) fn from_labels_unchecked<T: Copy + Eq + std::hash::Hash>(upper: usize, lower: usize, raw: &[T]) -> Self {
        Partition { upper, lower, labels: relabel(raw) }
    }

    /// Builds from explicit blocks of 1-based point numbers.
    pub fn canonicalize(blocks: &[Vec<usize>], upper: usize, lower: usize) -> Result<Self> {
        let n = upper + lower;
        check_length(n)?;
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::malformed(format!("block {} is empty", b + 1)));
            }
            for &pt in block {
                if pt == 0 || pt > n {
                    return Err(Error::malformed(format!("point {pt} outside 1..={n}")));
                }
                if owner[pt - 1] != usize::MAX {
                    return Err(Error::malformed(format!("point {pt} lies in two blocks")));
                }
                owner[pt - 1] = b;
            }
        }
        if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::malformed(format!("point {} is not covered", i + 1)));
        }
        Ok(Partition { upper, lower, labels: relabel(&owner) })
    }

    pub fn from_word(word: &str) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::malformed("empty word"));
        }
        let chars: Vec<char> = word.chars().collect();
        if let Some(c) = chars.iter().find(|c| !c.is_ascii_lowercase()) {
            return Err(Error::malformed(format!("'{c}' is not a lowercase letter")));
        }
        Self::from_labels(0, chars.len(), &chars)
    }

    /// Parses `upper|lower`; either side may be empty. A plain word is read as one-line.
    pub fn from_two_row(text: &str) -> Result<Self> {
        let Some((up, low)) = text.split_once('|') else {
            return Self::from_word(text);
        };
        let chars: Vec<char> = up.chars().chain(low.chars()).collect();
        if let Some(c) = chars.iter().find(|c| !c.is_ascii_lowercase()) {
            return Err(Error::malformed(format!("'{c}' is not a lowercase letter")));
        }
        Self::from_labels(up.chars().count(), low.chars().count(), &chars)
    }

    pub fn to_word(&self) -> String {
        self.labels.iter().map(|&a| (b'a' + a) as char).collect()
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_one_line(&self) -> bool {
        self.upper == 0
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().map(|&a| a as usize + 1).max().unwrap_or(0)
    }

    /// Blocks as lists of 0-based points, ordered by smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (i, &a) in self.labels.iter().enumerate() {
            out[a as usize].push(i);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes
    }

    pub fn has_singleton(&self) -> bool {
        self.blocks().iter().any(|b| b.len() == 1)
    }

    pub fn is_pairing(&self) -> bool {
        self.blocks().iter().all(|b| b.len() == 2)
    }

    /// Labels in cyclic order around the diagram: upper row right to left, then lower row.
    pub fn cyclic_labels(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.labels[..self.upper].iter().rev().copied().collect();
        out.extend_from_slice(&self.labels[self.upper..]);
        out
    }

    /// Pairs of blocks that cross, as pairs of labels of the cyclic word.
    pub fn crossing_pairs(&self) -> BTreeSet<(u8, u8)> {
        let word = relabel(&self.cyclic_labels());
        let nblocks = self.block_count();
        let mut positions = vec![Vec::new(); nblocks];
        for (i, &a) in word.iter().enumerate() {
            positions[a as usize].push(i);
        }
        let mut out = BTreeSet::new();
        for v in 0..nblocks {
            for w in v + 1..nblocks {
                if blocks_cross(&positions[v], &positions[w]) {
                    out.insert((v as u8, w as u8));
                }
            }
        }
        out
    }

    pub fn is_non_crossing(&self) -> bool {
        self.crossing_pairs().is_empty()
    }

    pub fn index(&self) -> PartitionIndex {
        PartitionIndex { length: self.len(), rank: rank_of(&self.labels) }
    }

    pub fn from_index(upper: usize, lower: usize, rank: u64) -> Result<Self> {
        let labels = unrank(upper + lower, rank)?;
        Ok(Partition { upper, lower, labels })
    }
}

fn blocks_cross(v: &[usize], w: &[usize]) -> bool {
    // v and w interleave iff some pair of v separates two points of w
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let (lo, hi) = (v[i], v[j]);
            let inside = w.iter().any(|&x| lo < x && x < hi);
            let outside = w.iter().any(|&x| x < lo || x > hi);
            if inside && outside {
                return true;
            }
        }
    }
    false
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.to_word();
        if self.upper == 0 {
            if word.is_empty() {
                f.write_str("|")
            } else {
                f.write_str(&word)
            }
        } else {
            write!(f, "{}|{}", &word[..self.upper], &word[self.upper..])
        }
    }
}

pub fn rank_of(labels: &[u8]) -> u64 {
    let t = completion_table();
    let n = labels.len();
    let mut open = 0usize;
    let mut r = 0u64;
    for (i, &a) in labels.iter().enumerate() {
        let rest = n - i - 1;
        r += a as u64 * t[rest][open];
        open = open.max(a as usize + 1);
    }
    r
}

pub fn unrank(length: usize, rank: u64) -> Result<Vec<u8>> {
    let b = bell(length)?;
    if rank >= b {
        return Err(Error::RankOutOfRange { length, rank, bell: b });
    }
    let t = completion_table();
    let mut r = rank;
    let mut open = 0usize;
    let mut out = Vec::with_capacity(length);
    for i in 0..length {
        let rest = length - i - 1;
        let mut chosen = open;
        for v in 0..=open {
            let count = if v < open { t[rest][open] } else { t[rest][open + 1] };
            if r < count {
                chosen = v;
                break;
            }
            r -= count;
        }
        out.push(chosen as u8);
        open = open.max(chosen + 1);
    }
    Ok(out)
}

type Cache = RwLock<HashMap<usize, Arc<Vec<Vec<u8>>>>>;

fn enumeration_cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All restricted-growth strings of the given length in rank order.
pub fn enumerate_labels(length: usize) -> Result<Arc<Vec<Vec<u8>>>> {
    if length > MAX_ENUMERATION {
        return Err(Error::Capacity { length, max: MAX_ENUMERATION });
    }
    if let Some(v) = enumeration_cache().read().expect("cache lock").get(&length) {
        return Ok(v.clone());
    }
    let mut all = Vec::with_capacity(bell(length)? as usize);
    let mut cur = vec![0u8; length];
    let mut max_prefix = vec![0u8; length];
    fill(&mut all, &mut cur, &mut max_prefix, 0);
    let arc = Arc::new(all);
    enumeration_cache().write().expect("cache lock").insert(length, arc.clone());
    Ok(arc)
}

fn fill(all: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, open: &mut Vec<u8>, i: usize) {
    if i == cur.len() {
        all.push(cur.clone());
        return;
    }
    let limit = if i == 0 { 0 } else { open[i - 1] };
    for v in 0..=limit {
        cur[i] = v;
        open[i] = limit.max(v + 1);
        fill(all, cur, open, i + 1);
    }
}

/// All one-line partitions of `length` points in rank order.
pub fn enumerate(length: usize) -> Result<Vec<Partition>> {
    enumerate_shape(0, length)
}

pub fn enumerate_shape(upper: usize, lower: usize) -> Result<Vec<Partition>> {
    Ok(enumerate_labels(upper + lower)?.iter().map(|l| Partition { upper, lower, labels: l.clone() }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let expected = [1u64, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597, 27644437, 190899322, 1382958545];
        for (n, &b) in expected.iter().enumerate() {
            assert_eq!(bell(n).unwrap(), b);
        }
        assert!(matches!(bell(16), Err(Error::Capacity { .. })));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Partition::from_word("aa").unwrap().index().rank, 0);
        assert_eq!(Partition::from_word("ab").unwrap().index().rank, 1);
        assert_eq!(Partition::from_word("abc").unwrap().index().rank, 4);
        assert_eq!(Partition::from_word("abcd").unwrap().index().rank, 14);
    }

    #[test]
    fn enumeration_is_rank_order() {
        for n in 0..=7 {
            let all = enumerate(n).unwrap();
            assert_eq!(all.len() as u64, bell(n).unwrap());
            for (r, p) in all.iter().enumerate() {
                assert_eq!(p.index().rank, r as u64);
                assert_eq!(Partition::from_index(0, n, r as u64).unwrap(), *p);
            }
        }
    }

    #[test]
    fn words_and_two_row() {
        let p = Partition::from_word("xyxz").unwrap();
        assert_eq!(p.to_word(), "abac");
        let q = Partition::from_two_row("ab|ba").unwrap();
        assert_eq!((q.upper(), q.lower()), (2, 2));
        assert_eq!(q.to_string(), "ab|ba");
        assert!(!q.is_non_crossing());
        assert!(Partition::from_two_row("ab|ab").unwrap().is_non_crossing());
        assert!(Partition::from_word("").is_err());
        assert!(Partition::from_word("aB").is_err());
    }

    #[test]
    fn canonicalize_blocks() {
        let p = Partition::canonicalize(&[vec![2, 4], vec![1, 3]], 0, 4).unwrap();
        assert_eq!(p.to_word(), "abab");
        assert!(Partition::canonicalize(&[vec![1, 2], vec![2, 3]], 0, 3).is_err());
        assert!(Partition::canonicalize(&[vec![1, 2]], 0, 3).is_err());
        assert!(Partition::canonicalize(&[vec![1, 5]], 0, 3).is_err());
        assert!(Partition::canonicalize(&[vec![1, 2, 3], vec![]], 0, 3).is_err());
    }

    #[test]
    fn crossings() {
        let p = Partition::from_word("abcacb").unwrap();
        let x = p.crossing_pairs();
        assert_eq!(x.len(), 2);
        assert!(Partition::from_word("abba").unwrap().is_non_crossing());
        assert!(!Partition::from_word("abab").unwrap().is_non_crossing());
        assert!(!Partition::from_word("abcabc").unwrap().is_non_crossing());
    }
}
