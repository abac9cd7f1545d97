//! Linear maps between partition categories: the projection `P`, the
//! conjugation `T`, disjoining `D`, joining `J`, the block map `B` and the
//! coisometry `V`, with randomized checks of their compatibility with the
//! category operations.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::{count_at, EasyClass};
use crate::closure::{closure, ClosureConfig};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::ops::{compose, contract, contract_at, reflect, rotate, tensor};
use crate::partition::Partition;
use crate::poly::Q;
use crate::scalar::Scalar;

/// The identity partition on `n` points.
pub fn identity<S: Scalar>(n: usize) -> LinComb<S> {
    let raw: Vec<usize> = (0..n).chain(0..n).collect();
    LinComb::from_partition(&Partition::from_labels(n, n, &raw).expect("identity fits"))
}

/// `↑ ∘ ↑*`, the (1,1) partition with two singletons.
pub fn disconnecter<S: Scalar>() -> LinComb<S> {
    LinComb::from_partition(&Partition::from_two_row("a|b").expect("valid"))
}

/// `id − c · disconnecter`.
pub fn leg_operator<S: Scalar>(c: &S) -> LinComb<S> {
    identity::<S>(1).add_scaled(&disconnecter(), &c.neg()).expect("same shape")
}

/// Composes a (1,1) element onto every leg of `p`.
pub fn apply_on_legs<S: Scalar>(p: &LinComb<S>, f: &LinComb<S>, delta: &S) -> Result<LinComb<S>> {
    if f.shape() != (1, 1) {
        return Err(Error::shape("leg operator must have shape (1, 1)"));
    }
    let keep = f.coefficient_of(&Partition::from_two_row("a|a")?);
    let cut = f.coefficient_of(&Partition::from_two_row("a|b")?);
    let (k, l) = p.shape();
    let mut out = p.clone();
    for j in 0..k + l {
        out = out.map_linear(k, l, |q| {
            let (detached, factor) = detach_point(q, j, delta)?;
            LinComb::term(q, keep.clone()).add_scaled(&LinComb::term(&detached, factor), &cut)
        })?;
    }
    Ok(out)
}

/// `↑↑*` glued onto point `j`: the point becomes a singleton, closing a
/// loop when it already was one.
fn detach_point<S: Scalar>(p: &Partition, j: usize, delta: &S) -> Result<(Partition, S)> {
    let labels = p.labels();
    if labels.iter().filter(|&&x| x == labels[j]).count() == 1 {
        return Ok((p.clone(), delta.clone()));
    }
    let mut raw: Vec<usize> = labels.iter().map(|&x| x as usize).collect();
    raw[j] = usize::MAX;
    Ok((Partition::from_labels(p.upper(), p.lower(), &raw)?, S::one()))
}

/// [`apply_on_legs`] computed by composing with `id ⊗ f ⊗ id` leg by leg.
pub fn apply_on_legs_by_composition<S: Scalar>(p: &LinComb<S>, f: &LinComb<S>, delta: &S) -> Result<LinComb<S>> {
    if f.shape() != (1, 1) {
        return Err(Error::shape("leg operator must have shape (1, 1)"));
    }
    let (k, l) = p.shape();
    let mut out = p.clone();
    for i in 0..l {
        let op = tensor(&tensor(&identity(i), f), &identity(l - 1 - i));
        out = compose(&op, &out, delta)?;
    }
    for i in 0..k {
        let op = tensor(&tensor(&identity(i), f), &identity(k - 1 - i));
        out = compose(&out, &op, delta)?;
    }
    Ok(out)
}

fn inverse_delta<S: Scalar>(delta: &S) -> Result<S> {
    delta.inv().map_err(|_| Error::domain("the loop parameter must be nonzero"))
}

/// `π = id − (1/δ)·↑↑*`.
pub fn pi<S: Scalar>(delta: &S) -> Result<LinComb<S>> {
    Ok(leg_operator(&inverse_delta(delta)?))
}

/// `τ = id − (2/δ)·↑↑*`.
pub fn tau<S: Scalar>(delta: &S) -> Result<LinComb<S>> {
    Ok(leg_operator(&S::from_int(2).mul(&inverse_delta(delta)?)))
}

pub fn project_p<S: Scalar>(p: &LinComb<S>, delta: &S) -> Result<LinComb<S>> {
    apply_on_legs(p, &pi(delta)?, delta)
}

pub fn conjugate_t<S: Scalar>(p: &LinComb<S>, delta: &S) -> Result<LinComb<S>> {
    apply_on_legs(p, &tau(delta)?, delta)
}

/// Positions of the points of `p` in cyclic order: upper row right to left, then lower row.
fn cyclic_positions(p: &Partition) -> Vec<usize> {
    let k = p.upper();
    (0..p.len()).map(|i| if i < k { k - 1 - i } else { i }).collect()
}

fn require_pairing(p: &Partition) -> Result<()> {
    if !p.is_pairing() {
        return Err(Error::domain(format!("{p} is not a pairing")));
    }
    Ok(())
}

/// Replaces the blocks selected by `mask` by singletons.
fn split_blocks(p: &Partition, split: &[bool]) -> Partition {
    let nb = p.block_count();
    let mut next = nb;
    let raw: Vec<usize> = p
        .labels()
        .iter()
        .map(|&a| {
            if split[a as usize] {
                next += 1;
                next
            } else {
                a as usize
            }
        })
        .collect();
    Partition::from_labels(p.upper(), p.lower(), &raw).expect("same length")
}

/// Multilinear expansion: each selected block `b` becomes `b + weight · singletons`.
fn expand_blocks<S: Scalar>(p: &Partition, selected: &[usize], weight: &S) -> Result<LinComb<S>> {
    if selected.len() > 20 {
        return Err(Error::Capacity { length: selected.len(), max: 20 });
    }
    let nb = p.block_count();
    let mut terms = Vec::with_capacity(1 << selected.len());
    for mask in 0u32..(1 << selected.len()) {
        let mut split = vec![false; nb];
        let mut c = S::one();
        for (bit, &b) in selected.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                split[b] = true;
                c = c.mul(weight);
            }
        }
        terms.push((split_blocks(p, &split), c));
    }
    LinComb::from_terms(p.upper(), p.lower(), terms)
}

/// Blocks of a pairing with an odd number of points between their legs.
fn odd_blocks(p: &Partition) -> Vec<usize> {
    let pos = cyclic_positions(p);
    p.blocks()
        .iter()
        .enumerate()
        .filter(|(_, b)| {
            let (x, y) = (pos[b[0]], pos[b[1]]);
            (x.max(y) - x.min(y) - 1) % 2 == 1
        })
        .map(|(i, _)| i)
        .collect()
}

pub fn disjoin_d<S: Scalar>(v: &LinComb<S>, delta: &S) -> Result<LinComb<S>> {
    let w = S::from_int(-2).mul(&inverse_delta(delta)?);
    v.map_linear(v.upper(), v.lower(), |p| {
        require_pairing(p)?;
        expand_blocks(p, &odd_blocks(p), &w)
    })
}

/// Pairs of blocks of a pairing that cross in cyclic order.
fn crossing_blocks(p: &Partition) -> Vec<(usize, usize)> {
    let pos = cyclic_positions(p);
    let spans: Vec<(usize, usize)> = p
        .blocks()
        .iter()
        .map(|b| {
            let (x, y) = (pos[b[0]], pos[b[1]]);
            (x.min(y), x.max(y))
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..spans.len() {
        for j in i + 1..spans.len() {
            let (a, b) = spans[i];
            let (c, d) = spans[j];
            let inside = |x: usize| a < x && x < b;
            if inside(c) != inside(d) {
                out.push((i, j));
            }
        }
    }
    out
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// `J` with a general weight per joined crossing; `weight = −2` is [`join_j`].
pub fn join_j_weighted<S: Scalar>(v: &LinComb<S>, weight: &S) -> Result<LinComb<S>> {
    v.map_linear(v.upper(), v.lower(), |p| {
        require_pairing(p)?;
        let crossings = crossing_blocks(p);
        if crossings.len() > 20 {
            return Err(Error::Capacity { length: crossings.len(), max: 20 });
        }
        let sign = if crossings.len().is_multiple_of(2) { S::one() } else { S::one().neg() };
        let nb = p.block_count();
        let mut terms = Vec::with_capacity(1 << crossings.len());
        for mask in 0u32..(1 << crossings.len()) {
            let mut parent: Vec<usize> = (0..nb).collect();
            let mut c = sign.clone();
            for (bit, &(a, b)) in crossings.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    c = c.mul(weight);
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
            }
            let raw: Vec<usize> = p.labels().iter().map(|&a| find(&mut parent, a as usize)).collect();
            terms.push((Partition::from_labels(p.upper(), p.lower(), &raw)?, c));
        }
        LinComb::from_terms(p.upper(), p.lower(), terms)
    })
}

pub fn join_j<S: Scalar>(v: &LinComb<S>) -> Result<LinComb<S>> {
    join_j_weighted(v, &S::from_int(-2))
}

/// Every block of size `m` becomes `block + (−1)^m · singletons`.
pub fn block_map_b<S: Scalar>(v: &LinComb<S>) -> Result<LinComb<S>> {
    v.map_linear(v.upper(), v.lower(), |p| {
        let nb = p.block_count();
        if nb > 16 {
            return Err(Error::Capacity { length: nb, max: 16 });
        }
        let sizes: Vec<usize> = p.blocks().iter().map(Vec::len).collect();
        let mut terms = Vec::with_capacity(1 << nb);
        for mask in 0u32..(1 << nb) {
            let mut split = vec![false; nb];
            let mut c = S::one();
            for b in 0..nb {
                if mask & (1 << b) != 0 {
                    split[b] = true;
                    if sizes[b] % 2 == 1 {
                        c = c.neg();
                    }
                }
            }
            terms.push((split_blocks(p, &split), c));
        }
        LinComb::from_terms(p.upper(), p.lower(), terms)
    })
}

/// Exact square root of a nonnegative rational, if it exists.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if Signed::is_negative(x) {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Q::new(rn, rd))
}

/// `υ = id − (1/(δ−1))(1 ± 1/√δ)·↑↑*`, an element of the category with loop value `δ − 1`.
pub fn upsilon(delta: &Q, plus: bool) -> Result<LinComb<Q>> {
    if Zero::is_zero(delta) || One::is_one(delta) {
        return Err(Error::domain("the coisometry needs a loop parameter other than 0 and 1"));
    }
    let root = rational_sqrt(delta).ok_or_else(|| Error::domain(format!("{delta} has no rational square root")))?;
    let inv_root = root.recip();
    let bracket = if plus { <Q as One>::one() + inv_root } else { <Q as One>::one() - inv_root };
    let c = bracket / (delta - <Q as One>::one());
    Ok(leg_operator(&c))
}

/// `V p = υ^⊗l (B p) υ^⊗k`, composed with loop value `δ − 1`.
pub fn coisometry_v(v: &LinComb<Q>, delta: &Q, plus: bool) -> Result<LinComb<Q>> {
    let u = upsilon(delta, plus)?;
    apply_on_legs(&block_map_b(v)?, &u, &(delta - <Q as One>::one()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    P,
    T,
    D,
    J,
    B,
    VPlus,
    VMinus,
}

impl MapKind {
    pub const ALL: [MapKind; 7] = [MapKind::P, MapKind::T, MapKind::D, MapKind::J, MapKind::B, MapKind::VPlus, MapKind::VMinus];

    pub fn name(self) -> &'static str {
        match self {
            MapKind::P => "P",
            MapKind::T => "T",
            MapKind::D => "D",
            MapKind::J => "J",
            MapKind::B => "B",
            MapKind::VPlus => "V+",
            MapKind::VMinus => "V-",
        }
    }

    pub fn needs_rational_delta(self) -> bool {
        matches!(self, MapKind::VPlus | MapKind::VMinus)
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MapKind::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| Error::domain(format!("unknown map {s:?}")))
    }
}

/// Applies a map to a symbolic element; `delta` specializes the loop parameter first.
pub fn apply_map(kind: MapKind, v: &LinComb<Coeff>, delta: Option<&Q>) -> Result<LinComb<Coeff>> {
    let d = match delta {
        Some(q) => Coeff::from_q(q.clone()),
        None => Coeff::delta(),
    };
    let v = match delta {
        Some(q) => v.try_map_coeffs(|c| c.specialize(&crate::coeff::Specialization::delta(q.clone())))?,
        None => v.clone(),
    };
    match kind {
        MapKind::P => project_p(&v, &d),
        MapKind::T => conjugate_t(&v, &d),
        MapKind::D => disjoin_d(&v, &d),
        MapKind::J => join_j(&v),
        MapKind::B => block_map_b(&v),
        MapKind::VPlus | MapKind::VMinus => {
            let q = delta.ok_or_else(|| Error::domain("V needs a rational loop parameter"))?;
            let rational = v.try_map_coeffs(|c| c.as_rational().ok_or_else(|| Error::domain("V needs rational coefficients")))?;
            let img = coisometry_v(&rational, q, kind == MapKind::VPlus)?;
            Ok(img.map_coeffs(|c| Coeff::from_q(c.clone())))
        }
    }
}

/// Outcome of a randomized compatibility check.
#[derive(Clone, Debug, Default)]
pub struct HarnessReport {
    pub name: String,
    pub trials: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, checks: usize, failures: Vec<String>) {
        self.checks += checks;
        self.failures.extend(failures);
    }
}

impl fmt::Display for HarnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "harness {}: {} trials, {} checks, {} failures", self.name, self.trials, self.checks, self.failures.len())?;
        for x in &self.failures {
            writeln!(f, "  {x}")?;
        }
        writeln!(f, "[harness]")?;
        writeln!(f, "name={}", self.name)?;
        writeln!(f, "trials={}", self.trials)?;
        writeln!(f, "checks={}", self.checks)?;
        writeln!(f, "failures={}", self.failures.len())?;
        write!(f, "verdict={}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// A uniformly random pairing of `len` points on one line; `len` must be even.
pub fn random_pairing<R: Rng>(rng: &mut R, len: usize) -> Partition {
    let mut pts: Vec<usize> = (0..len).collect();
    pts.shuffle(rng);
    let mut raw = vec![0usize; len];
    for (b, pair) in pts.chunks(2).enumerate() {
        for &x in pair {
            raw[x] = b;
        }
    }
    if len == 0 {
        return Partition::empty();
    }
    Partition::from_labels(0, len, &raw).expect("valid pairing")
}

/// A random one-line partition of `len` points with at most `blocks` blocks.
pub fn random_partition<R: Rng>(rng: &mut R, len: usize, blocks: usize) -> Partition {
    if len == 0 {
        return Partition::empty();
    }
    let raw: Vec<usize> = (0..len).map(|_| rng.gen_range(0..blocks.max(1))).collect();
    Partition::from_labels(0, len, &raw).expect("valid labels")
}

pub type QMap<'a> = dyn Fn(&LinComb<Q>) -> Result<LinComb<Q>> + Sync + 'a;

/// Tensor, rotation, reflection and contraction checks of `map` on `p`,
/// with `q` as the second tensor factor. Returns (checks run, failures).
pub fn check_map_on(map: &QMap<'_>, p: &Partition, q: &Partition, delta: &Q) -> (usize, Vec<String>) {
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut run = |what: &str, f: &dyn Fn() -> Result<(LinComb<Q>, LinComb<Q>)>| {
        checks += 1;
        match f() {
            Ok((lhs, rhs)) if lhs == rhs => {}
            Ok((lhs, rhs)) => failures.push(format!("{what} on {p} (second factor {q}): {lhs}  !=  {rhs}")),
            Err(e) => failures.push(format!("{what} on {p}: error {e}")),
        }
    };
    let vp = LinComb::from_partition(p);
    let vq = LinComb::from_partition(q);
    run("tensor", &|| Ok((map(&tensor(&vp, &vq))?, tensor(&map(&vp)?, &map(&vq)?))));
    if !p.is_empty() {
        run("rotation", &|| Ok((map(&rotate(&vp)?)?, rotate(&map(&vp)?)?)));
    }
    run("reflection", &|| Ok((map(&reflect(&vp)?)?, reflect(&map(&vp)?)?)));
    if p.len() >= 2 {
        run("contraction", &|| Ok((map(&contract(&vp, delta)?)?, contract(&map(&vp)?, delta)?)));
    }
    (checks, failures)
}

/// Randomized checks on pairings of total length at most `max_len`.
/// Trial `i` draws from its own generator seeded with `seed + i`.
pub fn pairing_harness(name: &str, map: &QMap<'_>, trials: usize, max_len: usize, delta: &Q, seed: u64) -> HarnessReport {
    let results: Vec<(usize, Vec<String>)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let half = max_len / 2;
            let a = rng.gen_range(1..=half.max(1));
            let b = rng.gen_range(0..=half - a.min(half));
            let p = random_pairing(&mut rng, 2 * a);
            let q = random_pairing(&mut rng, 2 * b);
            check_map_on(map, &p, &q, delta)
        })
        .collect();
    let mut report = HarnessReport { name: name.to_string(), trials, ..Default::default() };
    for (c, f) in results {
        report.absorb(c, f);
    }
    report
}

pub fn block_word(k: usize) -> Partition {
    Partition::from_labels(0, k, &vec![0u8; k]).expect("k fits")
}

/// Contraction identities of `V` on projected blocks and pairs of blocks,
/// plus tensor, rotation and reflection checks on random partitions.
pub fn coisometry_harness(delta: &Q, plus: bool, max_block: usize, trials: usize, seed: u64) -> HarnessReport {
    let name = format!("V{} at {delta}", if plus { "+" } else { "-" });
    let mut report = HarnessReport { name, trials, ..Default::default() };
    let target = delta - <Q as One>::one();
    let v = |x: &LinComb<Q>| coisometry_v(x, delta, plus);
    let check = |report: &mut HarnessReport, what: String, f: &dyn Fn() -> Result<(LinComb<Q>, LinComb<Q>)>| {
        report.checks += 1;
        match f() {
            Ok((lhs, rhs)) if lhs == rhs => {}
            Ok((lhs, rhs)) => report.failures.push(format!("{what}: {lhs}  !=  {rhs}")),
            Err(e) => report.failures.push(format!("{what}: error {e}")),
        }
    };
    for k in 2..=max_block {
        let pb = match project_p(&LinComb::from_partition(&block_word(k)), delta) {
            Ok(x) => x,
            Err(e) => {
                report.failures.push(format!("projection of block {k}: {e}"));
                continue;
            }
        };
        check(&mut report, format!("first contraction on block {k}"), &|| {
            Ok((contract_at(&v(&pb)?, 0, &target)?, v(&contract_at(&pb, 0, delta)?)?))
        });
    }
    for k in 1..=max_block {
        for l in 1..=max_block {
            let pb = match project_p(
                &LinComb::from_partition(&crate::ops::tensor_partitions(&block_word(k), &block_word(l))),
                delta,
            ) {
                Ok(x) => x,
                Err(e) => {
                    report.failures.push(format!("projection of blocks {k},{l}: {e}"));
                    continue;
                }
            };
            check(&mut report, format!("joining contraction on blocks {k},{l}"), &|| {
                Ok((contract_at(&v(&pb)?, k - 1, &target)?, v(&contract_at(&pb, k - 1, delta)?)?))
            });
        }
    }
    let results: Vec<(usize, Vec<String>)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let a = rng.gen_range(1..=4);
            let b = rng.gen_range(0..=6 - a);
            let p = random_partition(&mut rng, a, 3);
            let q = random_partition(&mut rng, b, 3);
            let (vp, vq) = (LinComb::<Q>::from_partition(&p), LinComb::<Q>::from_partition(&q));
            let mut fails = Vec::new();
            let pairs: [(&str, Result<(LinComb<Q>, LinComb<Q>)>); 3] = [
                ("tensor", (|| Ok((v(&tensor(&vp, &vq))?, tensor(&v(&vp)?, &v(&vq)?))))()),
                ("rotation", (|| Ok((v(&rotate(&vp)?)?, rotate(&v(&vp)?)?)))()),
                ("reflection", (|| Ok((v(&reflect(&vp)?)?, reflect(&v(&vp)?)?)))()),
            ];
            for (what, r) in pairs {
                match r {
                    Ok((x, y)) if x == y => {}
                    Ok((x, y)) => fails.push(format!("{what} on {p} (second factor {q}): {x}  !=  {y}")),
                    Err(e) => fails.push(format!("{what} on {p}: error {e}")),
                }
            }
            (3, fails)
        })
        .collect();
    for (c, f) in results {
        report.absorb(c, f);
    }
    report
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub label: String,
    pub value: usize,
    pub reference: usize,
    pub holds: bool,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.holds { "<" } else { "NOT <" };
        write!(f, "{}: {} {rel} {}", self.label, self.value, self.reference)
    }
}

/// Dimension separations between generated categories and the non-crossing references.
pub fn dimension_witnesses(delta_p: &Q, delta_v: &Q, l0: usize) -> Result<Vec<Witness>> {
    let config = ClosureConfig::with_l0(l0);
    let p3 = project_p(&LinComb::from_partition(&block_word(3)), delta_p)?;
    let p4 = project_p(&LinComb::from_partition(&block_word(4)), delta_p)?;
    let c3 = closure(std::slice::from_ref(&p3), delta_p.clone(), &config)?;
    let c4 = closure(std::slice::from_ref(&p4), delta_p.clone(), &config)?;
    let nc3 = count_at(EasyClass::NonCrossing, 3)?;
    let nc4 = count_at(EasyClass::NonCrossingEven, 4)?;
    let mut out = vec![
        Witness {
            label: format!("dim <P(aaa)>(0,3) vs nonCrossing(0,3), d = {delta_p}"),
            value: c3.dims()[3],
            reference: nc3,
            holds: c3.dims()[3] < nc3,
        },
        Witness {
            label: format!("dim <P(aaaa)>(0,4) vs nonCrossingEven(0,4), d = {delta_p}"),
            value: c4.dims()[4],
            reference: nc4,
            holds: c4.dims()[4] < nc4,
        },
    ];
    let odd3: usize = c3.dims().iter().skip(1).step_by(2).sum();
    let odd4: usize = c4.dims().iter().skip(1).step_by(2).sum();
    out.push(Witness {
        label: "odd-length dimensions of <P(aaaa)> vs <P(aaa)>".into(),
        value: odd4,
        reference: odd3,
        holds: odd4 < odd3,
    });
    let target = delta_v - <Q as One>::one();
    for plus in [true, false] {
        let img = coisometry_v(&LinComb::from_partition(&block_word(3)), delta_v, plus)?;
        let c = closure(std::slice::from_ref(&img), target.clone(), &config)?;
        out.push(Witness {
            label: format!("dim <V{}(aaa)>(0,3) vs nonCrossing(0,3), d = {target}", if plus { "+" } else { "-" }),
            value: c.dims()[3],
            reference: nc3,
            holds: c.dims()[3] < nc3,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn w(s: &str) -> LinComb<Q> {
        LinComb::from_partition(&Partition::from_word(s).unwrap())
    }

    #[test]
    fn join_of_crossing() {
        let j = join_j(&w("abab")).unwrap();
        assert_eq!(j.to_string(), "-1*abab + 2*aaaa");
    }

    #[test]
    fn projection_of_pair() {
        let p = project_p(&w("aa"), &q(7)).unwrap();
        assert_eq!(p.coefficient_of(&Partition::from_word("ab").unwrap()), Q::new((-1).into(), 7.into()));
        assert!(project_p(&w("a"), &q(7)).unwrap().is_zero());
    }

    #[test]
    fn leg_rule_matches_composition() {
        let f = leg_operator(&Q::new(3.into(), 5.into()));
        for t in ["abcb", "aabca", "ab|ba", "a|bb", "abc|"] {
            let v = LinComb::from_partition(&Partition::from_two_row(t).unwrap());
            assert_eq!(apply_on_legs(&v, &f, &q(7)).unwrap(), apply_on_legs_by_composition(&v, &f, &q(7)).unwrap(), "{t}");
        }
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&Q::new(9.into(), 4.into())), Some(Q::new(3.into(), 2.into())));
        assert_eq!(rational_sqrt(&q(8)), None);
    }
}
