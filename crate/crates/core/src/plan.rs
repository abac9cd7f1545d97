//! Planar contraction of copies of a one-line generator.
//!
//! A [`ContractionPlan`] describes a graph whose vertices are copies of the
//! generator (legs in the generator's cyclic order) and whose edges glue
//! legs together. The planner looks for an order in which copies are added
//! to a cyclic boundary and adjacent legs are glued, so that every step is a
//! tensor product, a rotation or a contraction of neighbouring points.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::ops::{contract, contract_at, rotate, rotate_n, tensor, to_one_line};
use crate::partition::{Partition, MAX_LENGTH};
use crate::scalar::Scalar;

/// A leg of a vertex, both 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leg {
    pub vertex: usize,
    pub leg: usize,
}

impl Leg {
    pub fn new(vertex: usize, leg: usize) -> Self {
        Leg { vertex, leg }
    }
}

impl fmt::Display for Leg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.vertex + 1, self.leg + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionPlan {
    pub vertex_count: usize,
    pub leg_arity: usize,
    pub edges: Vec<(Leg, Leg)>,
    pub free_legs: Vec<Leg>,
}

impl ContractionPlan {
    pub fn new(vertex_count: usize, leg_arity: usize, edges: Vec<(Leg, Leg)>, free_legs: Vec<Leg>) -> Result<Self> {
        let plan = ContractionPlan { vertex_count, leg_arity, edges, free_legs };
        plan.validate()?;
        Ok(plan)
    }

    /// Every leg must appear exactly once among edges and free legs.
    pub fn validate(&self) -> Result<()> {
        if self.vertex_count == 0 {
            return Err(Error::Planner("a plan needs at least one vertex".into()));
        }
        let mut seen = HashSet::new();
        let legs = self.edges.iter().flat_map(|(a, b)| [*a, *b]).chain(self.free_legs.iter().copied());
        for l in legs {
            if l.vertex >= self.vertex_count || l.leg >= self.leg_arity {
                return Err(Error::Planner(format!("leg {l} is outside the plan")));
            }
            if !seen.insert(l) {
                return Err(Error::Planner(format!("leg {l} is used twice")));
            }
        }
        if seen.len() != self.vertex_count * self.leg_arity {
            let missing = (0..self.vertex_count)
                .flat_map(|v| (0..self.leg_arity).map(move |l| Leg::new(v, l)))
                .find(|l| !seen.contains(l))
                .expect("some leg is missing");
            return Err(Error::Planner(format!("leg {missing} is neither glued nor free")));
        }
        Ok(())
    }

    fn partners(&self) -> HashMap<Leg, Leg> {
        let mut m = HashMap::new();
        for &(a, b) in &self.edges {
            m.insert(a, b);
            m.insert(b, a);
        }
        m
    }
}

impl fmt::Display for ContractionPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices {}", self.vertex_count)?;
        if self.leg_arity != 4 {
            write!(f, "; arity {}", self.leg_arity)?;
        }
        for (a, b) in &self.edges {
            write!(f, "; edge {a}-{b}")?;
        }
        if !self.free_legs.is_empty() {
            let fl: Vec<String> = self.free_legs.iter().map(Leg::to_string).collect();
            write!(f, "; free {}", fl.join(","))?;
        }
        Ok(())
    }
}

fn parse_leg(text: &str, pos: usize) -> Result<Leg> {
    let t = text.trim();
    let (v, l) = t.split_once('.').ok_or_else(|| Error::parse(pos, format!("expected vertex.leg, found {t:?}")))?;
    let num = |s: &str| -> Result<usize> {
        let n: usize = s.trim().parse().map_err(|_| Error::parse(pos, format!("bad number {s:?}")))?;
        n.checked_sub(1).ok_or_else(|| Error::parse(pos, "vertices and legs are numbered from 1"))
    };
    Ok(Leg::new(num(v)?, num(l)?))
}

/// Parses `vertices K; [arity A;] edge v.l-v.l; …; free v.l,v.l,…`.
/// Items may also be separated by newlines; `#` starts a comment.
pub fn parse_plan(text: &str) -> Result<ContractionPlan> {
    let mut vertices = None;
    let mut arity = 4;
    let mut edges = Vec::new();
    let mut free = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let body = line.split('#').next().unwrap_or("");
        let mut item_start = offset;
        for item in body.split(';') {
            let lead = item.len() - item.trim_start().len();
            let pos = item_start + lead;
            item_start += item.len() + 1;
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (key, rest) = item.split_once(char::is_whitespace).unwrap_or((item, ""));
            match key {
                "vertices" => {
                    let n: usize = rest.trim().parse().map_err(|_| Error::parse(pos, "vertices needs a count"))?;
                    vertices = Some(n);
                }
                "arity" => {
                    arity = rest.trim().parse().map_err(|_| Error::parse(pos, "arity needs a count"))?;
                }
                "edge" => {
                    let (a, b) = rest.split_once('-').ok_or_else(|| Error::parse(pos, "edge needs two legs joined by '-'"))?;
                    edges.push((parse_leg(a, pos)?, parse_leg(b, pos)?));
                }
                "free" => {
                    for part in rest.split(',') {
                        if !part.trim().is_empty() {
                            free.push(parse_leg(part, pos)?);
                        }
                    }
                }
                other => return Err(Error::parse(pos, format!("unknown plan item {other:?}"))),
            }
        }
        offset += line.len();
    }
    let vertex_count = vertices.ok_or_else(|| Error::parse(0, "missing 'vertices'"))?;
    ContractionPlan::new(vertex_count, arity, edges, free)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Heuristic {
    /// Prefer the placement that glues the most legs at once.
    Greedy,
    /// Take placements in vertex, gap, rotation order.
    FirstFit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Insert vertex `vertex` before boundary position `gap`, legs starting at `rotation`.
    Place {
        vertex: usize,
        gap: usize,
        rotation: usize,
    },
    Glue(Leg, Leg),
}

#[derive(Clone, Debug)]
pub struct Schedule {
    pub steps: Vec<Step>,
    /// Largest boundary length reached.
    pub width: usize,
}

const SEARCH_BUDGET: usize = 200_000;

struct Search<'a> {
    plan: &'a ContractionPlan,
    partners: HashMap<Leg, Leg>,
    heuristic: Heuristic,
    visited: HashSet<(Vec<Leg>, Vec<bool>)>,
    budget: usize,
    stuck: Vec<Leg>,
}

fn glue_adjacent(boundary: &mut Vec<Leg>, partners: &HashMap<Leg, Leg>, steps: &mut Vec<Step>) -> usize {
    let mut glued = 0;
    'outer: loop {
        let n = boundary.len();
        if n < 2 {
            break;
        }
        for i in 0..n {
            let j = (i + 1) % n;
            let (a, b) = (boundary[i], boundary[j]);
            if partners.get(&a) == Some(&b) {
                steps.push(Step::Glue(a, b));
                let (hi, lo) = (i.max(j), i.min(j));
                boundary.remove(hi);
                boundary.remove(lo);
                glued += 1;
                continue 'outer;
            }
        }
        break;
    }
    glued
}

fn canonical_rotation(b: &[Leg]) -> Vec<Leg> {
    (0..b.len().max(1)).map(|r| b.iter().cycle().skip(r).take(b.len()).copied().collect::<Vec<_>>()).min().unwrap_or_default()
}

fn is_rotation_of(a: &[Leg], b: &[Leg]) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(0);
    }
    (0..a.len()).find(|&r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i]))
}

impl<'a> Search<'a> {
    fn candidates(&self, boundary: &[Leg], placed: &[bool]) -> Vec<(usize, usize, usize, Vec<Leg>, Vec<Step>)> {
        let arity = self.plan.leg_arity;
        let any_placed = placed.iter().any(|&p| p);
        let mut out = Vec::new();
        for v in 0..self.plan.vertex_count {
            if placed[v] {
                continue;
            }
            let touches = (0..arity).any(|l| self.partners.get(&Leg::new(v, l)).is_some_and(|o| placed[o.vertex]));
            let gaps = boundary.len().max(1);
            for gap in 0..gaps {
                for rot in 0..arity {
                    if boundary.len() + arity > MAX_LENGTH {
                        continue;
                    }
                    let mut b: Vec<Leg> = boundary[..gap].to_vec();
                    b.extend((0..arity).map(|i| Leg::new(v, (rot + i) % arity)));
                    b.extend_from_slice(&boundary[gap..]);
                    let mut steps = vec![Step::Place { vertex: v, gap, rotation: rot }];
                    let glued = glue_adjacent(&mut b, &self.partners, &mut steps);
                    if any_placed && touches && glued == 0 {
                        continue;
                    }
                    out.push((v, glued, b.len(), b, steps));
                }
            }
        }
        match self.heuristic {
            Heuristic::Greedy => out.sort_by_key(|(v, glued, len, _, _)| (usize::MAX - glued, *len, *v)),
            Heuristic::FirstFit => {}
        }
        out.into_iter().map(|(v, g, _, b, s)| (v, g, 0, b, s)).collect()
    }

    fn dfs(&mut self, boundary: Vec<Leg>, placed: Vec<bool>, steps: &mut Vec<Step>) -> bool {
        if placed.iter().all(|&p| p) {
            if is_rotation_of(&boundary, &self.plan.free_legs).is_some() {
                return true;
            }
            if boundary.len() <= self.stuck.len() || self.stuck.is_empty() {
                self.stuck = boundary;
            }
            return false;
        }
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        if !self.visited.insert((canonical_rotation(&boundary), placed.clone())) {
            return false;
        }
        for (v, _, _, b, s) in self.candidates(&boundary, &placed) {
            let mut p = placed.clone();
            p[v] = true;
            let mark = steps.len();
            steps.extend(s);
            if self.dfs(b, p, steps) {
                return true;
            }
            steps.truncate(mark);
        }
        if self.stuck.is_empty() {
            self.stuck = boundary;
        }
        false
    }
}

/// Finds a planar order of placements and gluings for `plan`.
pub fn schedule(plan: &ContractionPlan, heuristic: Heuristic) -> Result<Schedule> {
    plan.validate()?;
    let mut search =
        Search { plan, partners: plan.partners(), heuristic, visited: HashSet::new(), budget: SEARCH_BUDGET, stuck: Vec::new() };
    let mut steps = Vec::new();
    if !search.dfs(Vec::new(), vec![false; plan.vertex_count], &mut steps) {
        let state: Vec<String> = search.stuck.iter().map(Leg::to_string).collect();
        return Err(Error::Planner(format!("stuck with boundary [{}]", state.join(" "))));
    }
    let mut width = 0;
    let mut len = 0usize;
    for s in &steps {
        match s {
            Step::Place { .. } => {
                len += plan.leg_arity;
                width = width.max(len);
            }
            Step::Glue(..) => len -= 2,
        }
    }
    Ok(Schedule { steps, width })
}

/// Evaluates the diagram of `plan` with every vertex a copy of `gen`.
/// The result lists the free legs in the order given by the plan.
pub fn execute_plan<S: Scalar>(plan: &ContractionPlan, gen: &LinComb<S>, delta: &S, heuristic: Heuristic) -> Result<LinComb<S>> {
    let gen = to_one_line(gen);
    if gen.len() != plan.leg_arity {
        return Err(Error::shape(format!("generator has {} legs, plan expects {}", gen.len(), plan.leg_arity)));
    }
    let sched = schedule(plan, heuristic)?;
    let arity = plan.leg_arity;
    let mut cur: LinComb<S> = LinComb::from_partition(&Partition::empty());
    let mut actual: Vec<Leg> = Vec::new();
    // the planner's boundary, which `actual` always equals up to rotation
    let mut planned: Vec<Leg> = Vec::new();
    for step in &sched.steps {
        match *step {
            Step::Place { vertex, gap, rotation } => {
                if !planned.is_empty() {
                    let anchor = planned[gap % planned.len()];
                    let t = actual.iter().position(|&x| x == anchor).expect("boundaries agree");
                    let m = (actual.len() - t) % actual.len();
                    cur = rotate_n(&cur, m)?;
                    actual.rotate_left(t);
                }
                let piece = rotate_n(&gen, (arity - rotation) % arity)?;
                cur = tensor(&cur, &piece);
                let legs: Vec<Leg> = (0..arity).map(|i| Leg::new(vertex, (rotation + i) % arity)).collect();
                actual.extend(&legs);
                let rest = planned.split_off(gap.min(planned.len()));
                planned.extend(legs);
                planned.extend(rest);
            }
            Step::Glue(a, b) => {
                let n = actual.len();
                let i = actual.iter().position(|&x| x == a).expect("leg on boundary");
                let j = actual.iter().position(|&x| x == b).expect("leg on boundary");
                let (lo, hi) = (i.min(j), i.max(j));
                if hi == lo + 1 {
                    cur = contract_at(&cur, lo, delta)?;
                    actual.drain(lo..=hi);
                } else if lo == 0 && hi == n - 1 {
                    cur = rotate(&cur)?;
                    actual.rotate_right(1);
                    cur = contract_at(&cur, 0, delta)?;
                    actual.drain(0..2);
                } else {
                    return Err(Error::Planner(format!("legs {a} and {b} are not adjacent")));
                }
                planned.retain(|&x| x != a && x != b);
            }
        }
    }
    let r = is_rotation_of(&actual, &plan.free_legs).ok_or_else(|| Error::Planner("free legs end in another order".into()))?;
    // actual[(i + r) % n] == free[i]: bring position r to the front
    if !actual.is_empty() && r != 0 {
        cur = rotate_n(&cur, actual.len() - r)?;
    }
    Ok(cur)
}

/// A cycle of `copies` generators: neighbours are glued by two nested legs,
/// the first and last copy by a single edge, leaving one free leg on each.
pub fn cycle_plan(arity: usize, copies: usize) -> Result<ContractionPlan> {
    let k = copies;
    match (arity, k) {
        (4, 2..=5) => {
            let mut edges = Vec::new();
            for i in 0..k - 1 {
                edges.push((Leg::new(i, 3), Leg::new(i + 1, 0)));
                edges.push((Leg::new(i, 2), Leg::new(i + 1, 1)));
            }
            edges.push((Leg::new(0, 1), Leg::new(k - 1, 2)));
            ContractionPlan::new(k, 4, edges, vec![Leg::new(0, 0), Leg::new(k - 1, 3)])
        }
        (3, 2) => ContractionPlan::new(
            2,
            3,
            vec![(Leg::new(0, 2), Leg::new(1, 0)), (Leg::new(0, 1), Leg::new(1, 1))],
            vec![Leg::new(0, 0), Leg::new(1, 2)],
        ),
        _ => Err(Error::domain(format!("no cycle pattern with {copies} copies of arity {arity}"))),
    }
}

/// `Π gen` for one copy, otherwise the cycle of [`cycle_plan`].
pub fn cyclic_contract<S: Scalar>(gen: &LinComb<S>, copies: usize, delta: &S) -> Result<LinComb<S>> {
    let gen = to_one_line(gen);
    if copies == 1 {
        return contract(&gen, delta);
    }
    let plan = cycle_plan(gen.len(), copies)?;
    execute_plan(&plan, &gen, delta, Heuristic::Greedy)
}

/// A centre joined to four outer vertices that form a square; each outer
/// vertex carries one free leg. Legs are listed counter-clockwise.
pub const PENTAGRAM_PLAN: &str = "\
vertices 5
edge 1.1-2.3; edge 1.2-3.3; edge 1.3-4.3; edge 1.4-5.3
edge 2.2-3.4; edge 3.2-4.4; edge 4.2-5.4; edge 5.2-2.4
free 2.1,3.1,4.1,5.1
";

pub fn pentagram_plan() -> ContractionPlan {
    parse_plan(PENTAGRAM_PLAN).expect("built-in plan is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn parses_and_prints() {
        let p = parse_plan("vertices 2; edge 1.3-2.2; edge 1.4-2.1; free 1.1,1.2,2.3,2.4").unwrap();
        assert_eq!(p.edges.len(), 2);
        assert_eq!(parse_plan(&p.to_string()).unwrap(), p);
        assert!(matches!(parse_plan("vertices 1; edge 1.1-1.1"), Err(Error::Planner(_))));
        assert!(matches!(parse_plan("vertices 1; bogus"), Err(Error::Parse { pos: 12, .. })));
    }

    #[test]
    fn single_vertex_is_identity() {
        let gen = LinComb::<Q>::from_partition(&Partition::from_word("abcb").unwrap());
        let p = parse_plan("vertices 1; free 1.1,1.2,1.3,1.4").unwrap();
        assert_eq!(execute_plan(&p, &gen, &q(3), Heuristic::Greedy).unwrap(), gen);
    }

    #[test]
    fn pentagram_is_planar() {
        let s = schedule(&pentagram_plan(), Heuristic::Greedy).unwrap();
        assert!(s.width <= MAX_LENGTH);
    }
}
