//! Approximation of the category generated by given elements, up to a
//! length bound.
//!
//! Every length `l ≤ l0` carries a subspace `K_l` of one-line combinations.
//! [`CategoryApprox::add_parts`] inserts a vector with all its rotations and
//! pushes the contractions down to shorter lengths;
//! [`CategoryApprox::add_tensors`] adds tensor products of the current
//! spaces. Iterating the latter to a fixed point gives [`closure`].

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::basis::{Insertion, ModuleBasis};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::ops::{contract, reflect, rotate, tensor, to_one_line, TABLE_LIMIT};
use crate::partition::Partition;
use crate::poly::Q;
use crate::scalar::Scalar;

pub const DEFAULT_L0: usize = 8;
pub const DEFAULT_MAX_PASSES: usize = 20;
const BATCH: usize = 256;

#[derive(Clone, Debug)]
pub struct ClosureConfig {
    pub l0: usize,
    pub max_passes: usize,
    /// Worker threads for the tensor pre-filter; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Keep every vector offered to a space, including dependent ones.
    pub record_arrivals: bool,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig { l0: DEFAULT_L0, max_passes: DEFAULT_MAX_PASSES, jobs: None, record_arrivals: false }
    }
}

impl ClosureConfig {
    pub fn with_l0(l0: usize) -> Self {
        ClosureConfig { l0, ..Self::default() }
    }
}

/// How a stored vector was obtained from the seeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    Seed(usize),
    Reflect(usize),
    Rotate(usize),
    Contract(usize),
    Tensor(usize, usize),
}

#[derive(Clone, Debug)]
struct Stored<S> {
    vector: LinComb<S>,
    node: usize,
}

pub struct CategoryApprox<S> {
    l0: usize,
    delta: S,
    spaces: Vec<ModuleBasis<S>>,
    raw: Vec<Vec<Stored<S>>>,
    seeds: Vec<LinComb<S>>,
    nodes: Vec<Derivation>,
    watermarks: HashMap<(usize, usize), (usize, usize)>,
    history: Vec<Vec<usize>>,
    passes: usize,
    pivot_scales: Vec<S>,
    arrivals: Option<Vec<LinComb<S>>>,
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl<S: Scalar> CategoryApprox<S> {
    pub fn new(delta: S, config: &ClosureConfig) -> Result<Self> {
        if config.l0 > TABLE_LIMIT {
            return Err(Error::Capacity { length: config.l0, max: TABLE_LIMIT });
        }
        let pool = match config.jobs {
            Some(n) => Some(Arc::new(
                rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().map_err(|e| Error::domain(e.to_string()))?,
            )),
            None => None,
        };
        let l0 = config.l0;
        Ok(CategoryApprox {
            l0,
            delta,
            spaces: (0..=l0).map(|l| ModuleBasis::new(0, l)).collect(),
            raw: vec![Vec::new(); l0 + 1],
            seeds: Vec::new(),
            nodes: Vec::new(),
            watermarks: HashMap::new(),
            history: Vec::new(),
            passes: 0,
            pivot_scales: Vec::new(),
            arrivals: config.record_arrivals.then(Vec::new),
            pool,
        })
    }

    pub fn l0(&self) -> usize {
        self.l0
    }

    pub fn delta(&self) -> &S {
        &self.delta
    }

    pub fn space(&self, l: usize) -> &ModuleBasis<S> {
        &self.spaces[l]
    }

    pub fn spaces(&self) -> &[ModuleBasis<S>] {
        &self.spaces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(ModuleBasis::dim).collect()
    }

    pub fn passes(&self) -> usize {
        self.passes
    }

    /// Dimension vectors after each tensor pass.
    pub fn history(&self) -> &[Vec<usize>] {
        &self.history
    }

    /// Vectors offered to any space so far, when recording was requested.
    pub fn arrivals(&self) -> &[LinComb<S>] {
        self.arrivals.as_deref().unwrap_or(&[])
    }

    pub fn clear_arrivals(&mut self) {
        if let Some(a) = &mut self.arrivals {
            a.clear();
        }
    }

    pub fn contains(&self, v: &LinComb<S>) -> Result<bool> {
        let v = to_one_line(v);
        match self.spaces.get(v.len()) {
            Some(space) => space.contains(&v),
            None => Err(Error::Capacity { length: v.len(), max: self.l0 }),
        }
    }

    /// Rational loop parameters at which some pivot vanished or had a pole.
    pub fn degeneration_points(&self) -> Vec<Q> {
        let mut set = BTreeSet::new();
        for s in &self.pivot_scales {
            set.extend(s.vanishing_points());
        }
        set.into_iter().collect()
    }

    fn push_node(&mut self, d: Derivation) -> usize {
        self.nodes.push(d);
        self.nodes.len() - 1
    }

    /// Registers a seed vector and returns its derivation node.
    pub fn seed(&mut self, v: &LinComb<S>) -> usize {
        self.seeds.push(v.clone());
        self.push_node(Derivation::Seed(self.seeds.len() - 1))
    }

    /// Adds `v`, its rotations and, recursively, their contractions.
    pub fn add_parts(&mut self, v: LinComb<S>, node: usize) -> Result<()> {
        let l = v.len();
        if v.upper() != 0 {
            return Err(Error::shape("closure spaces hold one-line elements"));
        }
        if l > self.l0 {
            return Err(Error::Capacity { length: l, max: self.l0 });
        }
        if let Some(a) = &mut self.arrivals {
            a.push(v.clone());
        }
        let mut cur = v;
        let mut cur_node = node;
        let mut reduced = self.spaces[l].reduce(&cur)?;
        for j in 0..l.max(1) {
            if j > 0 {
                cur = rotate(&cur)?;
                cur_node = self.push_node(Derivation::Rotate(cur_node));
                reduced = self.spaces[l].reduce(&cur)?;
            }
            // once a rotation is already spanned so are all later ones, and their contractions
            if reduced.is_zero() {
                break;
            }
            if l >= 2 {
                let c = contract(&cur, &self.delta)?;
                if !c.is_zero() {
                    let n = self.push_node(Derivation::Contract(cur_node));
                    self.add_parts(c, n)?;
                } else if let Some(a) = &mut self.arrivals {
                    a.push(c);
                }
            }
            match self.spaces[l].insert_reduced(reduced.clone()) {
                Insertion::Added { scale, .. } => {
                    self.pivot_scales.push(scale);
                    self.raw[l].push(Stored { vector: cur.clone(), node: cur_node });
                }
                Insertion::Dependent => unreachable!("reduced vector was nonzero"),
            }
        }
        Ok(())
    }

    /// One pass of tensor products `K_k ⊗ K_l` for `k ≤ l`, `k + l ≤ l0`.
    /// Returns whether any space grew.
    pub fn add_tensors(&mut self) -> Result<bool> {
        let before = self.dims();
        for k in 1..=self.l0 / 2 {
            for l in k..=self.l0 - k {
                self.tensor_block(k, l)?;
            }
        }
        self.passes += 1;
        let after = self.dims();
        self.history.push(after.clone());
        Ok(after != before)
    }

    fn tensor_block(&mut self, k: usize, l: usize) -> Result<()> {
        let (nk, nl) = (self.raw[k].len(), self.raw[l].len());
        let (wk, wl) = self.watermarks.get(&(k, l)).copied().unwrap_or((0, 0));
        self.watermarks.insert((k, l), (nk, nl));
        let mut pairs = Vec::new();
        for i in 0..nk {
            let start = if k == l { i } else { 0 };
            for j in start..nl {
                if i >= wk || j >= wl {
                    pairs.push((i, j));
                }
            }
        }
        for chunk in pairs.chunks(BATCH) {
            let keep = self.prefilter(k, l, chunk)?;
            for (i, j) in keep {
                let (a, na) = (&self.raw[k][i].vector, self.raw[k][i].node);
                let (b, nb) = (&self.raw[l][j].vector, self.raw[l][j].node);
                let v = tensor(a, b);
                let node = self.push_node(Derivation::Tensor(na, nb));
                self.add_parts(v, node)?;
            }
        }
        Ok(())
    }

    /// Pairs whose product is not yet spanned; the answer depends only on
    /// the current spaces, so it is the same for any number of workers.
    fn prefilter(&self, k: usize, l: usize, chunk: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
        let target = &self.spaces[k + l];
        let test = |&(i, j): &(usize, usize)| -> Result<Option<(usize, usize)>> {
            let v = tensor(&self.raw[k][i].vector, &self.raw[l][j].vector);
            Ok((!target.contains(&v)?).then_some((i, j)))
        };
        let results: Vec<Result<Option<(usize, usize)>>> = match &self.pool {
            Some(pool) if pool.current_num_threads() == 1 => chunk.iter().map(test).collect(),
            Some(pool) => pool.install(|| chunk.par_iter().map(test).collect()),
            None => chunk.par_iter().map(test).collect(),
        };
        let mut keep = Vec::new();
        for r in results {
            if let Some(p) = r? {
                keep.push(p);
            }
        }
        Ok(keep)
    }

    /// Repeats [`Self::add_tensors`] until nothing changes.
    pub fn run_to_fixed_point(&mut self, max_passes: usize) -> Result<()> {
        loop {
            if self.passes >= max_passes {
                return Err(Error::PassLimit { passes: self.passes, dims: self.dims() });
            }
            if !self.add_tensors()? {
                return Ok(());
            }
        }
    }

    /// Number of stored spanning vectors, all with derivations.
    pub fn stored_count(&self) -> usize {
        self.raw.iter().map(Vec::len).sum()
    }

    /// Recomputes every `stride`-th stored vector from its derivation and
    /// checks it against the stored copy and the space it belongs to.
    /// Returns the number of vectors checked.
    pub fn audit(&self, stride: usize) -> Result<usize> {
        let mut memo: HashMap<usize, LinComb<S>> = HashMap::new();
        let mut checked = 0;
        let mut counter = 0usize;
        for (l, stored) in self.raw.iter().enumerate() {
            for s in stored {
                counter += 1;
                if stride > 1 && counter % stride != 1 {
                    continue;
                }
                let v = self.replay(s.node, &mut memo)?;
                if v != s.vector {
                    return Err(Error::domain(format!("derivation of a stored vector of length {l} does not replay")));
                }
                if !self.spaces[l].contains(&v)? {
                    return Err(Error::domain(format!("replayed vector of length {l} is not in its space")));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    fn replay(&self, node: usize, memo: &mut HashMap<usize, LinComb<S>>) -> Result<LinComb<S>> {
        if let Some(v) = memo.get(&node) {
            return Ok(v.clone());
        }
        // iterative along rotation chains, which can be long
        let mut chain = vec![node];
        let mut cur = node;
        while let Derivation::Rotate(prev) = self.nodes[cur] {
            if memo.contains_key(&prev) {
                chain.push(prev);
                break;
            }
            chain.push(prev);
            cur = prev;
        }
        let last = *chain.last().expect("nonempty");
        let mut v = match memo.get(&last) {
            Some(v) => v.clone(),
            None => match self.nodes[last] {
                Derivation::Seed(i) => self.seeds[i].clone(),
                Derivation::Reflect(n) => reflect(&self.replay(n, memo)?)?,
                Derivation::Contract(n) => contract(&self.replay(n, memo)?, &self.delta)?,
                Derivation::Tensor(a, b) => tensor(&self.replay(a, memo)?, &self.replay(b, memo)?),
                Derivation::Rotate(n) => rotate(&self.replay(n, memo)?)?,
            },
        };
        memo.insert(last, v.clone());
        for &n in chain.iter().rev().skip(1) {
            v = rotate(&v)?;
            memo.insert(n, v.clone());
        }
        Ok(v)
    }

    /// Seeds with the pair, then each generator and its reflection.
    pub fn seed_generators(&mut self, generators: &[LinComb<S>]) -> Result<()> {
        let pair = LinComb::from_partition(&Partition::from_word("aa")?);
        let n = self.seed(&pair);
        self.add_parts(pair, n)?;
        for g in generators {
            let g = to_one_line(g);
            if g.len() > self.l0 {
                return Err(Error::Capacity { length: g.len(), max: self.l0 });
            }
            let n = self.seed(&g);
            let r = reflect(&g)?;
            let nr = self.push_node(Derivation::Reflect(n));
            self.add_parts(g, n)?;
            self.add_parts(r, nr)?;
        }
        Ok(())
    }
}

/// The approximation of `⟨generators⟩` up to length `config.l0`.
pub fn closure<S: Scalar>(generators: &[LinComb<S>], delta: S, config: &ClosureConfig) -> Result<CategoryApprox<S>> {
    let mut approx = CategoryApprox::new(delta, config)?;
    approx.seed_generators(generators)?;
    approx.run_to_fixed_point(config.max_passes)?;
    Ok(approx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Easy,
    NonEasyCandidate,
}

#[derive(Clone, Debug)]
pub struct GeneratorVerdict {
    pub generator: String,
    /// Each partition in the support and whether it lies in the approximation.
    pub summands: Vec<(Partition, bool)>,
    pub verdict: Verdict,
}

impl GeneratorVerdict {
    pub fn contained(&self) -> usize {
        self.summands.iter().filter(|(_, c)| *c).count()
    }
}

#[derive(Clone, Debug)]
pub struct EasinessReport {
    pub l0: usize,
    pub dims: Vec<usize>,
    pub passes: usize,
    pub history: Vec<Vec<usize>>,
    pub generators: Vec<GeneratorVerdict>,
    pub degeneration: Vec<Q>,
}

impl EasinessReport {
    pub fn all_non_easy(&self) -> bool {
        self.generators.iter().all(|g| g.verdict == Verdict::NonEasyCandidate)
    }
}

/// A generated category is easy exactly when it contains every partition
/// in the support of each generator.
pub fn easiness_report<S: Scalar>(approx: &CategoryApprox<S>, generators: &[LinComb<S>]) -> Result<EasinessReport> {
    let mut verdicts = Vec::new();
    for g in generators {
        let g = to_one_line(g);
        let mut summands = Vec::new();
        for (p, _) in g.terms() {
            let inside = approx.contains(&LinComb::from_partition(&p))?;
            summands.push((p, inside));
        }
        let verdict = if summands.iter().all(|(_, c)| *c) { Verdict::Easy } else { Verdict::NonEasyCandidate };
        verdicts.push(GeneratorVerdict { generator: g.to_string(), summands, verdict });
    }
    Ok(EasinessReport {
        l0: approx.l0(),
        dims: approx.dims(),
        passes: approx.passes(),
        history: approx.history().to_vec(),
        generators: verdicts,
        degeneration: approx.degeneration_points(),
    })
}

/// For a rotation- and reflection-symmetric element of odd length 3, checks
/// that capping its last two legs with the pair or with two singletons
/// gives zero. When both vanish no partition with a singleton can be
/// reached from it.
pub fn singleton_free_check<S: Scalar>(gen: &LinComb<S>, delta: &S) -> Result<bool> {
    use crate::ops::compose;
    let gen = to_one_line(gen);
    if gen.is_zero() {
        return Ok(true);
    }
    if gen.len() != 3 {
        return Err(Error::domain("the singleton-free check is implemented for length 3"));
    }
    if rotate(&gen)? != gen || reflect(&gen)? != gen {
        return Err(Error::domain("the singleton-free check needs a rotation- and reflection-symmetric element"));
    }
    let id = LinComb::from_partition(&Partition::from_two_row("a|a")?);
    let cap = LinComb::from_partition(&Partition::from_two_row("aa|")?);
    let point = LinComb::from_partition(&Partition::from_two_row("a|")?);
    let by_pair = compose(&tensor(&id, &cap), &gen, delta)?;
    let by_points = compose(&tensor(&tensor(&id, &point), &point), &gen, delta)?;
    Ok(by_pair.is_zero() && by_points.is_zero())
}
