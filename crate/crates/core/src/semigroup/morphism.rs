use serde::{Deserialize, Serialize};

use super::closure::closure_members;
use super::{ElementId, FiniteUnarySemigroup, UnarySemigroup};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MorphismMode {
    /// Surjective homomorphism of unary semigroups.
    Onto,
    Isomorphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub mode: MorphismMode,
    /// Image of every source id.
    pub map: Vec<ElementId>,
}

impl Morphism {
    /// Re-checks the map against both structures.
    pub fn verify(&self, s: &FiniteUnarySemigroup, t: &FiniteUnarySemigroup) -> Result<()> {
        verify_morphism(s, t, &self.map, self.mode)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismSearch {
    Found(Morphism),
    None,
    /// Node budget exhausted before the search space was covered.
    Inconclusive {
        nodes: u64,
    },
}

impl MorphismSearch {
    pub fn found(self) -> Option<Morphism> {
        match self {
            MorphismSearch::Found(m) => Some(m),
            _ => None,
        }
    }
}

/// Checks `f(xy) = f(x)f(y)`, `f(x*) = f(x)*` for every table, and
/// surjectivity or bijectivity as requested.
pub fn verify_morphism(
    s: &FiniteUnarySemigroup,
    t: &FiniteUnarySemigroup,
    map: &[ElementId],
    mode: MorphismMode,
) -> Result<()> {
    let fail = |msg: String| Err(Error::InvalidArgument(msg));
    if map.len() != s.size() {
        return fail(format!("map has {} entries for {} elements", map.len(), s.size()));
    }
    if s.arity() != t.arity() {
        return fail("unary arities differ".into());
    }
    if let Some(&bad) = map.iter().find(|&&y| y as usize >= t.size()) {
        return Err(Error::InvalidElement {
            id: bad,
            size: t.size(),
        });
    }
    let f = |x: ElementId| map[x as usize];
    for a in s.elements() {
        for b in s.elements() {
            if f(s.mul(a, b)) != t.mul(f(a), f(b)) {
                return fail(format!("f({a}·{b}) != f({a})·f({b})"));
            }
        }
        for k in 0..s.arity() {
            if f(s.star(k, a)) != t.star(k, f(a)) {
                return fail(format!("f(star{}({a})) != star{}(f({a}))", k + 1, k + 1));
            }
        }
    }
    let mut hit = vec![false; t.size()];
    for &y in map {
        if hit[y as usize] && mode == MorphismMode::Isomorphism {
            return fail(format!("{y} has two preimages"));
        }
        hit[y as usize] = true;
    }
    if let Some(missed) = hit.iter().position(|&h| !h) {
        return fail(format!("{missed} has no preimage"));
    }
    Ok(())
}

struct Search<'a> {
    s: &'a FiniteUnarySemigroup,
    t: &'a FiniteUnarySemigroup,
    mode: MorphismMode,
    gens: Vec<ElementId>,
    budget: u64,
    nodes: u64,
}

#[derive(Clone)]
struct State {
    map: Vec<Option<ElementId>>,
    defined: Vec<ElementId>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// Extends `f(x) = y` to everything forced by products and stars.
    fn assign(&self, state: &mut State, x: ElementId, y: ElementId) -> bool {
        let mut pending = vec![(x, y)];
        while let Some((x, y)) = pending.pop() {
            match state.map[x as usize] {
                Some(existing) => {
                    if existing != y {
                        return false;
                    }
                    continue;
                }
                None => {
                    if self.mode == MorphismMode::Isomorphism && state.used[y as usize] {
                        return false;
                    }
                    if self.s.is_idempotent(x) && !self.t.is_idempotent(y) {
                        return false;
                    }
                    state.map[x as usize] = Some(y);
                    state.used[y as usize] = true;
                    state.defined.push(x);
                }
            }
            for k in 0..self.s.arity() {
                pending.push((self.s.star(k, x), self.t.star(k, y)));
            }
            for &z in &state.defined {
                let fz = state.map[z as usize].expect("defined");
                pending.push((self.s.mul(x, z), self.t.mul(y, fz)));
                pending.push((self.s.mul(z, x), self.t.mul(fz, y)));
            }
        }
        true
    }

    fn complete(&self, state: &State) -> bool {
        match self.mode {
            MorphismMode::Isomorphism => true,
            MorphismMode::Onto => state.used.iter().all(|&u| u),
        }
    }

    fn dfs(&mut self, state: State, depth: usize) -> Option<std::result::Result<Vec<ElementId>, ()>> {
        if depth == self.gens.len() {
            if self.complete(&state) {
                return Some(Ok(state
                    .map
                    .iter()
                    .map(|y| y.expect("generators cover the source"))
                    .collect()));
            }
            return None;
        }
        let g = self.gens[depth];
        if state.map[g as usize].is_some() {
            return self.dfs(state, depth + 1);
        }
        for y in self.t.elements() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Some(Err(()));
            }
            let mut next = state.clone();
            if self.assign(&mut next, g, y) {
                if let Some(result) = self.dfs(next, depth + 1) {
                    return Some(result);
                }
            }
        }
        None
    }
}

/// Backtracking search for a morphism `S → T`.
///
/// `seed` pairs are imposed first. Remaining generators are chosen greedily
/// in id order and their images tried in increasing id order, so the first
/// map found is the lexicographically least one.
pub fn find_morphism(
    s: &FiniteUnarySemigroup,
    t: &FiniteUnarySemigroup,
    mode: MorphismMode,
    seed: &[(ElementId, ElementId)],
    budget: u64,
) -> Result<MorphismSearch> {
    if s.arity() != t.arity() {
        return Err(Error::ArityMismatch(format!(
            "source has {} unary operations, target {}",
            s.arity(),
            t.arity()
        )));
    }
    for &(x, y) in seed {
        s.check_id(x)?;
        t.check_id(y)?;
    }
    match mode {
        MorphismMode::Isomorphism => {
            let star_fixed = |u: &FiniteUnarySemigroup| {
                (0..u.arity())
                    .map(|k| u.elements().filter(|&a| u.star(k, a) == a).count())
                    .collect::<Vec<_>>()
            };
            if s.size() != t.size() || s.idempotent_count() != t.idempotent_count() || star_fixed(s) != star_fixed(t) {
                return Ok(MorphismSearch::None);
            }
        }
        MorphismMode::Onto => {
            if t.size() > s.size() {
                return Ok(MorphismSearch::None);
            }
        }
    }

    let seed_keys: Vec<ElementId> = seed.iter().map(|&(x, _)| x).collect();
    let mut covered = vec![false; s.size()];
    if !seed_keys.is_empty() {
        for x in closure_members(s, &seed_keys)? {
            covered[x as usize] = true;
        }
    }
    let mut gens = Vec::new();
    for a in s.elements() {
        if !covered[a as usize] {
            gens.push(a);
            let mut current: Vec<ElementId> = seed_keys.clone();
            current.extend(&gens);
            for x in closure_members(s, &current)? {
                covered[x as usize] = true;
            }
        }
    }

    let mut search = Search {
        s,
        t,
        mode,
        gens,
        budget,
        nodes: 0,
    };
    let mut state = State {
        map: vec![None; s.size()],
        defined: Vec::new(),
        used: vec![false; t.size()],
    };
    for &(x, y) in seed {
        if !search.assign(&mut state, x, y) {
            return Ok(MorphismSearch::None);
        }
    }
    Ok(match search.dfs(state, 0) {
        Some(Ok(map)) => {
            verify_morphism(s, t, &map, mode)?;
            MorphismSearch::Found(Morphism { mode, map })
        }
        Some(Err(())) => MorphismSearch::Inconclusive { nodes: search.nodes },
        None => MorphismSearch::None,
    })
}
