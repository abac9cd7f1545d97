//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are interned globally; index 0 is always the loop parameter,
//! printed as `d`. Terms are kept in descending graded-lexicographic order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub type Q = BigRational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Symbol(pub u16);

fn registry() -> &'static RwLock<Vec<String>> {
    static REG: OnceLock<RwLock<Vec<String>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(vec!["d".to_string()]))
}

impl Symbol {
    pub const DELTA: Symbol = Symbol(0);

    pub fn intern(name: &str) -> Symbol {
        let name = if name == "δ" { "d" } else { name };
        if let Some(i) = registry().read().expect("symbol lock").iter().position(|s| s == name) {
            return Symbol(i as u16);
        }
        let mut reg = registry().write().expect("symbol lock");
        if let Some(i) = reg.iter().position(|s| s == name) {
            return Symbol(i as u16);
        }
        reg.push(name.to_string());
        Symbol((reg.len() - 1) as u16)
    }

    pub fn name(self) -> String {
        registry().read().expect("symbol lock")[self.0 as usize].clone()
    }
}

/// Exponent vector indexed by symbol, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(SmallVec<[u16; 4]>);

impl Mono {
    pub fn one() -> Self {
        Mono(SmallVec::new())
    }

    pub fn var(s: Symbol, e: u16) -> Self {
        let mut v = SmallVec::from_elem(0, s.0 as usize + 1);
        v[s.0 as usize] = e;
        let mut m = Mono(v);
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn exp(&self, s: Symbol) -> u16 {
        self.0.get(s.0 as usize).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbol_count(&self) -> usize {
        self.0.iter().filter(|&&e| e > 0).count()
    }

    fn mul(&self, o: &Mono) -> Mono {
        let n = self.0.len().max(o.0.len());
        let mut v = SmallVec::with_capacity(n);
        for i in 0..n {
            v.push(self.0.get(i).copied().unwrap_or(0) + o.0.get(i).copied().unwrap_or(0));
        }
        Mono(v)
    }

    fn div(&self, o: &Mono) -> Option<Mono> {
        if o.0.len() > self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        for (i, &e) in o.0.iter().enumerate() {
            if v[i] < e {
                return None;
            }
            v[i] -= e;
        }
        let mut m = Mono(v);
        m.trim();
        Some(m)
    }

    fn without(&self, s: Symbol) -> Mono {
        let mut m = self.clone();
        if let Some(e) = m.0.get_mut(s.0 as usize) {
            *e = 0;
        }
        m.trim();
        m
    }

    fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| Symbol(i as u16))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                let a = self.0.get(i).copied().unwrap_or(0);
                let b = other.0.get(i).copied().unwrap_or(0);
                if a != b {
                    return a.cmp(&b);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Mono, Q)>,
}

fn from_map(map: BTreeMap<Mono, Q>) -> Poly {
    Poly { terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Q::from_integer(BigInt::from(n)))
    }

    pub fn var(s: Symbol) -> Self {
        Poly { terms: vec![(Mono::var(s, 1), Q::one())] }
    }

    pub fn delta() -> Self {
        Self::var(Symbol::DELTA)
    }

    pub fn monomial(m: Mono, c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn leading_coeff(&self) -> Q {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.iter().flat_map(|(m, _)| m.symbols()).collect()
    }

    pub fn degree_in(&self, s: Symbol) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(s)).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => b.0.cmp(&a.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &self.terms[i].1 - &other.terms[j].1 } else { &self.terms[i].1 + &other.terms[j].1 };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut map: BTreeMap<Mono, Q> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = map.entry(ma.mul(mb)).or_insert_with(Q::zero);
                *e += ca * cb;
            }
        }
        from_map(map)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading_coeff();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    pub fn substitute(&self, s: Symbol, value: &Q) -> Poly {
        if self.degree_in(s) == 0 {
            return self.clone();
        }
        let mut map: BTreeMap<Mono, Q> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(s);
            let k = c * num_traits::pow::pow(value.clone(), e as usize);
            *map.entry(m.without(s)).or_insert_with(Q::zero) += k;
        }
        from_map(map)
    }

    /// Coefficients with respect to `s`, lowest degree first.
    pub fn coeffs_in(&self, s: Symbol) -> Vec<Poly> {
        let d = self.degree_in(s) as usize;
        let mut maps: Vec<BTreeMap<Mono, Q>> = vec![BTreeMap::new(); d + 1];
        for (m, c) in &self.terms {
            maps[m.exp(s) as usize].insert(m.without(s), c.clone());
        }
        maps.into_iter().map(from_map).collect()
    }

    pub fn from_coeffs_in(s: Symbol, coeffs: &[Poly]) -> Poly {
        let mut acc = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&Poly::monomial(Mono::var(s, e as u16), Q::one())));
            }
        }
        acc
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = &d.terms[0];
        let mut rem = self.clone();
        let mut quot: BTreeMap<Mono, Q> = BTreeMap::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let qm = m.div(lm)?;
            let qc = &c / lc;
            rem = rem.sub(&d.mul(&Poly::monomial(qm.clone(), qc.clone())));
            quot.insert(qm, qc);
        }
        Some(from_map(quot))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        if self == other {
            return self.monic();
        }
        let syms: BTreeSet<Symbol> = self.symbols().union(&other.symbols()).copied().collect();
        if syms.len() == 1 {
            let s = *syms.iter().next().expect("one symbol");
            return univariate_gcd(self, other, s);
        }
        let s = *syms.iter().next().expect("symbols");
        let (da, db) = (self.degree_in(s), other.degree_in(s));
        if da == 0 {
            return self.gcd(&other.content_in(s));
        }
        if db == 0 {
            return self.content_in(s).gcd(other);
        }
        let ca = self.content_in(s);
        let cb = other.content_in(s);
        let pa = self.div_exact(&ca).expect("content divides");
        let pb = other.div_exact(&cb).expect("content divides");
        if images_coprime(&pa, &pb, s) {
            return ca.gcd(&cb).monic();
        }
        let g = primitive_prs(pa, pb, s);
        ca.gcd(&cb).mul(&g).monic()
    }

    /// Monic gcd of two polynomials in at most one common variable.
    pub fn gcd_univariate(&self, other: &Poly) -> crate::error::Result<Poly> {
        let syms: BTreeSet<Symbol> = self.symbols().union(&other.symbols()).copied().collect();
        if syms.len() > 1 {
            return Err(crate::error::Error::Domain("gcd_univariate needs univariate input".into()));
        }
        if self.is_zero() && other.is_zero() {
            return Err(crate::error::Error::Domain("gcd of two zero polynomials".into()));
        }
        Ok(self.gcd(other))
    }

    /// Gcd of the coefficients with respect to `s`.
    pub fn content_in(&self, s: Symbol) -> Poly {
        let mut g = Poly::zero();
        for c in self.coeffs_in(s) {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(&c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn evaluate(&self, values: &BTreeMap<Symbol, Q>) -> Option<Q> {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for s in m.symbols() {
                let v = values.get(&s)?;
                t *= num_traits::pow::pow(v.clone(), m.exp(s) as usize);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Rational roots of a polynomial in the single symbol `s`.
    pub fn rational_roots(&self, s: Symbol) -> Option<Vec<Q>> {
        if self.symbols().iter().any(|&t| t != s) {
            return None;
        }
        let coeffs: Vec<Q> = self.coeffs_in(s).iter().map(|c| c.as_constant().expect("univariate")).collect();
        crate::roots::rational_roots(&coeffs)
    }
}

fn univariate_gcd(a: &Poly, b: &Poly, s: Symbol) -> Poly {
    let to_dense = |p: &Poly| -> Vec<Q> { p.coeffs_in(s).iter().map(|c| c.as_constant().expect("univariate")).collect() };
    let mut f = to_dense(a);
    let mut g = to_dense(b);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while g.iter().any(|c| !c.is_zero()) {
        let r = dense_rem(&f, &g);
        f = g;
        g = r;
    }
    let coeffs: Vec<Poly> = f.into_iter().map(Poly::constant).collect();
    Poly::from_coeffs_in(s, &coeffs).monic()
}

/// True when some evaluation of every symbol but `s` keeps both leading
/// coefficients in `s` and yields coprime univariate images, which rules
/// out a common factor of positive degree in `s`.
fn images_coprime(a: &Poly, b: &Poly, s: Symbol) -> bool {
    let others: Vec<Symbol> = a.symbols().union(&b.symbols()).copied().filter(|&t| t != s).collect();
    let (la, lb) = (a.coeffs_in(s).pop().expect("nonzero"), b.coeffs_in(s).pop().expect("nonzero"));
    for attempt in 0..4i64 {
        let mut vals = BTreeMap::new();
        for (i, &t) in others.iter().enumerate() {
            vals.insert(t, Q::from_integer((3 + 7 * attempt + 11 * i as i64).into()));
        }
        let nonvanishing = |lc: &Poly| lc.evaluate(&vals).is_some_and(|v| !v.is_zero());
        if !nonvanishing(&la) || !nonvanishing(&lb) {
            continue;
        }
        let image = |p: &Poly| vals.iter().fold(p.clone(), |acc, (t, v)| acc.substitute(*t, v));
        return univariate_gcd(&image(a), &image(b), s).is_one();
    }
    false
}

fn trim_dense(v: &mut Vec<Q>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_rem(f: &[Q], g: &[Q]) -> Vec<Q> {
    let mut r = f.to_vec();
    let mut g = g.to_vec();
    trim_dense(&mut r);
    trim_dense(&mut g);
    let lg = g.last().expect("nonzero divisor").clone();
    while r.len() >= g.len() && !r.is_empty() {
        let k = r.last().expect("nonempty") / &lg;
        let shift = r.len() - g.len();
        for (i, c) in g.iter().enumerate() {
            r[shift + i] -= &k * c;
        }
        r.pop();
        trim_dense(&mut r);
    }
    r
}

fn prem(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let mut r = f.to_vec();
    let lg = g.last().expect("nonzero divisor").clone();
    while r.len() >= g.len() && !r.is_empty() {
        let lr = r.last().expect("nonempty").clone();
        let shift = r.len() - g.len();
        for c in r.iter_mut() {
            *c = c.mul(&lg);
        }
        for (i, c) in g.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&lr.mul(c));
        }
        r.pop();
        while r.last().is_some_and(Poly::is_zero) {
            r.pop();
        }
    }
    r
}

fn primitive_part(coeffs: Vec<Poly>) -> Vec<Poly> {
    let mut g = Poly::zero();
    for c in &coeffs {
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    if g.is_zero() {
        return coeffs;
    }
    let mut out: Vec<Poly> = coeffs.iter().map(|c| c.div_exact(&g).expect("content divides")).collect();
    if let Some(lc) = out.last().map(Poly::leading_coeff) {
        if !lc.is_zero() {
            let k = lc.recip();
            out = out.iter().map(|c| c.scale(&k)).collect();
        }
    }
    out
}

fn primitive_prs(a: Poly, b: Poly, s: Symbol) -> Poly {
    let mut f = primitive_part(a.coeffs_in(s));
    let mut g = primitive_part(b.coeffs_in(s));
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = prem(&f, &g);
        f = g;
        g = if r.is_empty() { r } else { primitive_part(r) };
    }
    Poly::from_coeffs_in(s, &f).monic()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = format_mono(m);
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn format_mono(m: &Mono) -> String {
    let parts: Vec<String> = m
        .symbols()
        .map(|s| {
            let e = m.exp(s);
            if e == 1 {
                s.name()
            } else {
                format!("{}^{}", s.name(), e)
            }
        })
        .collect();
    parts.join("*")
}
