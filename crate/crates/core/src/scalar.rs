//! Field operations shared by exact rationals and rational functions.

use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::poly::Q;

pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_q(q: Q) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// Leading sign used when printing.
    fn is_negative(&self) -> bool;
    /// Text usable as the left factor of `*word`.
    fn factor_string(&self) -> String;
    /// Rational values of the loop parameter at which this scalar vanishes or has a pole.
    fn vanishing_points(&self) -> Vec<Q> {
        Vec::new()
    }

    fn from_int(n: i64) -> Self {
        Self::from_q(Q::from_integer(n.into()))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Scalar for Q {
    fn zero() -> Self {
        <Q as Zero>::zero()
    }
    fn one() -> Self {
        <Q as One>::one()
    }
    fn from_q(q: Q) -> Self {
        q
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn factor_string(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Coeff {
    fn zero() -> Self {
        Coeff::zero()
    }
    fn one() -> Self {
        Coeff::one()
    }
    fn from_q(q: Q) -> Self {
        Coeff::from_q(q)
    }
    fn is_zero(&self) -> bool {
        Coeff::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Coeff::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Coeff::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Coeff::mul(self, o)
    }
    fn neg(&self) -> Self {
        Coeff::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        Coeff::inv(self)
    }
    fn is_one(&self) -> bool {
        Coeff::is_one(self)
    }
    fn is_negative(&self) -> bool {
        Coeff::is_negative(self)
    }
    fn factor_string(&self) -> String {
        Coeff::factor_string(self)
    }
    fn vanishing_points(&self) -> Vec<Q> {
        let mut out = Vec::new();
        for p in [self.numer(), self.denom()] {
            if let Some(r) = p.rational_roots(crate::poly::Symbol::DELTA) {
                out.extend(r);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}
