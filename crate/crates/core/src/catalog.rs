//! Combinatorial descriptions of the easy categories used as references.

use std::fmt;
use std::str::FromStr;

use crate::basis::ModuleBasis;
use crate::closure::{closure, ClosureConfig};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::ops::TABLE_LIMIT;
use crate::partition::{enumerate_labels, Partition};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EasyClass {
    All,
    NonCrossing,
    NonCrossingEven,
    Pairings,
    NonCrossingPairings,
    EvenBlocks,
    HalfLibPairings,
}

impl EasyClass {
    pub const ALL: [EasyClass; 7] = [
        EasyClass::All,
        EasyClass::NonCrossing,
        EasyClass::NonCrossingEven,
        EasyClass::Pairings,
        EasyClass::NonCrossingPairings,
        EasyClass::EvenBlocks,
        EasyClass::HalfLibPairings,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EasyClass::All => "all",
            EasyClass::NonCrossing => "nonCrossing",
            EasyClass::NonCrossingEven => "nonCrossingEven",
            EasyClass::Pairings => "pairings",
            EasyClass::NonCrossingPairings => "nonCrossingPairings",
            EasyClass::EvenBlocks => "evenBlocks",
            EasyClass::HalfLibPairings => "halfLibPairings",
        }
    }

    pub fn contains(self, p: &Partition) -> bool {
        match self {
            EasyClass::All => true,
            EasyClass::NonCrossing => p.is_non_crossing(),
            EasyClass::NonCrossingEven => p.len().is_multiple_of(2) && p.is_non_crossing(),
            EasyClass::Pairings => p.is_pairing(),
            EasyClass::NonCrossingPairings => p.is_pairing() && p.is_non_crossing(),
            EasyClass::EvenBlocks => p.block_sizes().iter().all(|s| s % 2 == 0),
            EasyClass::HalfLibPairings => is_half_lib(p),
        }
    }
}

/// Pairing in which every block joins an odd and an even position of the
/// cyclic order.
fn is_half_lib(p: &Partition) -> bool {
    if !p.is_pairing() {
        return false;
    }
    let labels = p.cyclic_labels();
    let mut first: Vec<Option<usize>> = vec![None; labels.len()];
    for (i, &b) in labels.iter().enumerate() {
        match first[b as usize] {
            None => first[b as usize] = Some(i),
            Some(j) if (i - j) % 2 == 0 => return false,
            Some(_) => {}
        }
    }
    true
}

impl fmt::Display for EasyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EasyClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EasyClass::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::domain(format!("unknown class {s:?}")))
    }
}

fn check_length(l: usize) -> Result<()> {
    if l > TABLE_LIMIT {
        return Err(Error::Capacity { length: l, max: TABLE_LIMIT });
    }
    Ok(())
}

/// Partitions of length `l` in the class, in rank order.
pub fn members(class: EasyClass, l: usize) -> Result<Vec<Partition>> {
    check_length(l)?;
    let labels = enumerate_labels(l)?;
    Ok(labels
        .iter()
        .map(|x| Partition::from_rgs(0, l, x.clone()).expect("enumerated labels are canonical"))
        .filter(|p| class.contains(p))
        .collect())
}

pub fn count_at(class: EasyClass, l: usize) -> Result<usize> {
    check_length(l)?;
    let labels = enumerate_labels(l)?;
    Ok(labels
        .iter()
        .filter(|x| class.contains(&Partition::from_rgs(0, l, x.to_vec()).expect("enumerated labels are canonical")))
        .count())
}

pub fn span_at<S: Scalar>(class: EasyClass, l: usize) -> Result<ModuleBasis<S>> {
    let ms = members(class, l)?;
    let vs: Vec<LinComb<S>> = ms.iter().map(LinComb::from_partition).collect();
    ModuleBasis::from_vectors(0, l, &vs)
}

/// Dimensions for lengths `0..=upto`.
pub fn dims(class: EasyClass, upto: usize) -> Result<Vec<usize>> {
    (0..=upto).map(|l| count_at(class, l)).collect()
}

pub const HALF_LIB_WORD: &str = "abcabc";

/// Closure dimensions of the half-liberated generator against the counts
/// of [`EasyClass::HalfLibPairings`]. Below length six only the pair is seeded.
pub fn validate_half_lib(l0: usize) -> Result<(bool, Vec<usize>, Vec<usize>)> {
    if l0 > 8 {
        return Err(Error::Capacity { length: l0, max: 8 });
    }
    let gens: Vec<LinComb<Coeff>> =
        if l0 >= HALF_LIB_WORD.len() { vec![LinComb::from_partition(&Partition::from_word(HALF_LIB_WORD)?)] } else { Vec::new() };
    let approx = closure(&gens, Coeff::delta(), &ClosureConfig::with_l0(l0))?;
    let got = approx.dims();
    let want = dims(EasyClass::HalfLibPairings, l0)?;
    Ok((got == want, got, want))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_counts() {
        assert_eq!(dims(EasyClass::All, 8).unwrap(), vec![1, 1, 2, 5, 15, 52, 203, 877, 4140]);
        assert_eq!(count_at(EasyClass::Pairings, 6).unwrap(), 15);
        assert_eq!(count_at(EasyClass::NonCrossing, 4).unwrap(), 14);
        assert_eq!(count_at(EasyClass::HalfLibPairings, 6).unwrap(), 6);
        assert_eq!(dims(EasyClass::NonCrossingEven, 4).unwrap(), vec![1, 0, 2, 0, 14]);
    }

    #[test]
    fn names_round_trip() {
        for c in EasyClass::ALL {
            assert_eq!(c.name().parse::<EasyClass>().unwrap(), c);
        }
        assert!("bogus".parse::<EasyClass>().is_err());
    }
}
