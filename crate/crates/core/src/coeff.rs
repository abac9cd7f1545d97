//! Rational functions in the loop parameter and free parameters.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::poly::{Poly, Symbol, Q};

/// Reduced fraction `num / den` with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Coeff {
    num: Poly,
    den: Poly,
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::zero()
    }
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Coeff { num: Poly::one(), den: Poly::one() }
    }

    pub fn delta() -> Self {
        Self::from_poly(Poly::delta())
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::from_poly(Poly::var(s))
    }

    pub fn from_poly(p: Poly) -> Self {
        Coeff { num: p, den: Poly::one() }
    }

    pub fn from_q(q: Q) -> Self {
        Self::from_poly(Poly::constant(q))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Poly::from_int(n))
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Coeff::zero();
        }
        if let Some(c) = den.as_constant() {
            return Coeff { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            Coeff { num, den }
        } else {
            let k = lc.recip();
            Coeff { num: num.scale(&k), den: den.scale(&k) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn neg(&self) -> Self {
        Coeff { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Coeff { num: self.num.add(&o.num), den: Poly::one() };
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        let bd = self.den.div_exact(&g).expect("gcd divides");
        let dd = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&dd).add(&o.num.mul(&bd));
        Self::reduce(num, bd.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Coeff::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Coeff { num: self.num.mul(&o.num), den: Poly::one() };
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = o.den.div_exact(&g1).expect("gcd divides");
        let c = o.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        let num = a.mul(&c);
        let den = b.mul(&d);
        let lc = den.leading_coeff();
        if lc.is_one() {
            Coeff { num, den }
        } else {
            let k = lc.recip();
            Coeff { num: num.scale(&k), den: den.scale(&k) }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        Coeff { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn specialize(&self, spec: &Specialization) -> Result<Self> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for (s, v) in &spec.bindings {
            num = num.substitute(*s, v);
            den = den.substitute(*s, v);
            if den.is_zero() {
                return Err(Error::Pole { symbol: s.name(), value: v.to_string() });
            }
        }
        Ok(Self::reduce(num, den))
    }

    /// Whether printing should lead with a minus sign.
    pub fn is_negative(&self) -> bool {
        self.num.leading_coeff().is_negative()
    }

    /// Text usable as the left factor of `*word`.
    pub fn factor_string(&self) -> String {
        let num = self.num.to_string();
        let num_ok = self.num.terms().len() == 1;
        if self.den.is_one() {
            return if num_ok { num } else { format!("({num})") };
        }
        let num = if num_ok { num } else { format!("({num})") };
        let bare = matches!(self.den.terms(), [(m, _)] if m.symbol_count() == 1);
        let den = if bare { self.den.to_string() } else { format!("({})", self.den) };
        format!("{num}/{den}")
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            f.write_str(&self.factor_string())
        }
    }
}

/// Values substituted for some symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Specialization {
    pub bindings: BTreeMap<Symbol, Q>,
}

impl Specialization {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn delta(value: Q) -> Self {
        let mut s = Self::new();
        s.bindings.insert(Symbol::DELTA, value);
        s
    }

    pub fn bind(mut self, s: Symbol, value: Q) -> Self {
        self.bindings.insert(s, value);
        self
    }

    pub fn delta_value(&self) -> Option<&Q> {
        self.bindings.get(&Symbol::DELTA)
    }
}
