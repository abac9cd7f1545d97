//! Rational roots of univariate polynomials with rational coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Q;

/// Largest constant or leading coefficient whose divisors are enumerated.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn horner(coeffs: &[BigInt], x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + Q::from_integer(c.clone());
    }
    acc
}

/// Distinct rational roots in increasing order, or `None` when the
/// coefficients are too large to search. Coefficients are lowest degree first.
pub fn rational_roots(coeffs: &[Q]) -> Option<Vec<Q>> {
    let mut coeffs: Vec<Q> = coeffs.to_vec();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return Some(Vec::new());
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(Q::zero());
        let skip = ints.iter().take_while(|c| c.is_zero()).count();
        ints.drain(..skip);
    }
    if ints.len() > 1 {
        let ps = divisors(&ints[0])?;
        let qs = divisors(ints.last().expect("nonempty"))?;
        for p in &ps {
            for q in &qs {
                for sign in [1i64, -1] {
                    let x = Q::new(BigInt::from(*p) * sign, BigInt::from(*q));
                    if horner(&ints, &x).is_zero() && !roots.contains(&x) {
                        roots.push(x);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}
