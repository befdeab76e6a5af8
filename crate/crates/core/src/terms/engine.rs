use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::term::sort_vars;
use super::UnaryTerm;
use crate::semigroup::{ElementId, UnarySemigroup};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    Var(usize),
    Mul(usize, usize),
    Star(usize, usize),
}

/// Hash-consed DAG of one or more terms over a shared variable list.
///
/// Nodes are stored in topological order and tagged with the highest
/// variable position they depend on. When an odometer changes position `p`
/// only nodes tagged `>= p` are recomputed.
#[derive(Clone, Debug)]
pub struct CompiledTerms {
    vars: Vec<String>,
    nodes: Vec<Node>,
    roots: Vec<usize>,
    dirty_from: Vec<Vec<usize>>,
    max_star: usize,
}

impl CompiledTerms {
    pub fn new(terms: &[&UnaryTerm]) -> Self {
        let mut vars: Vec<String> = Vec::new();
        for t in terms {
            for v in t.vars() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        sort_vars(&mut vars);
        let position: HashMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();

        let mut builder = Builder {
            position,
            nodes: Vec::new(),
            level: Vec::new(),
            interned: HashMap::new(),
        };
        let roots = terms.iter().map(|t| builder.compile(t)).collect();
        let Builder { nodes, level, .. } = builder;
        let dirty_from = (0..vars.len().max(1))
            .map(|p| (0..nodes.len()).filter(|&i| level[i] >= p).collect())
            .collect();
        let max_star = terms.iter().map(|t| t.max_star_index() as usize).max().unwrap_or(0);
        CompiledTerms {
            vars,
            nodes,
            roots,
            dirty_from,
            max_star,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Distinct subterms after interning.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn check_arity<S: UnarySemigroup + ?Sized>(&self, s: &S) -> Result<()> {
        if self.max_star > s.arity() {
            return Err(Error::ArityMismatch(format!(
                "term uses star {} but the structure has {} unary operation(s)",
                self.max_star,
                s.arity()
            )));
        }
        Ok(())
    }

    #[inline]
    fn eval_node<S: UnarySemigroup + ?Sized>(
        &self,
        s: &S,
        i: usize,
        values: &mut [ElementId],
        assignment: &[ElementId],
    ) {
        values[i] = match self.nodes[i] {
            Node::Var(p) => assignment[p],
            Node::Mul(a, b) => s.mul(values[a], values[b]),
            Node::Star(a, k) => s.star(k, values[a]),
        };
    }

    fn update<S: UnarySemigroup + ?Sized>(
        &self,
        s: &S,
        from: usize,
        values: &mut [ElementId],
        assignment: &[ElementId],
    ) {
        for &i in &self.dirty_from[from] {
            self.eval_node(s, i, values, assignment);
        }
    }

    /// Values of every root under one assignment (ordered as [`Self::vars`]).
    pub fn evaluate<S: UnarySemigroup + ?Sized>(&self, s: &S, assignment: &[ElementId]) -> Result<Vec<ElementId>> {
        self.check_arity(s)?;
        if assignment.len() != self.vars.len() {
            return Err(Error::InvalidArgument(format!(
                "{} values for {} variables",
                assignment.len(),
                self.vars.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&a| a as usize >= s.size()) {
            return Err(Error::InvalidElement {
                id: bad,
                size: s.size(),
            });
        }
        let mut values = vec![0; self.nodes.len()];
        self.update(s, 0, &mut values, assignment);
        Ok(self.roots.iter().map(|&r| values[r]).collect())
    }

    /// Visits assignments in lexicographic order and returns the first
    /// `visit` result that is `Some`.
    ///
    /// Work is split by the value of the first variable; the result is the one
    /// with the least first value, so it does not depend on scheduling.
    pub fn find_first<S, T, F>(&self, s: &S, visit: F) -> Option<T>
    where
        S: UnarySemigroup + ?Sized,
        T: Send,
        F: Fn(&[ElementId], &[ElementId]) -> Option<T> + Sync,
    {
        let n = s.size() as ElementId;
        let v = self.vars.len();
        let block = |first: ElementId| -> Option<T> {
            let mut assignment = vec![0; v];
            if v > 0 {
                assignment[0] = first;
            }
            let mut values = vec![0; self.nodes.len()];
            let mut roots = vec![0; self.roots.len()];
            self.update(s, 0, &mut values, &assignment);
            loop {
                for (slot, &r) in roots.iter_mut().zip(&self.roots) {
                    *slot = values[r];
                }
                if let Some(found) = visit(&assignment, &roots) {
                    return Some(found);
                }
                let p = (1..v).rev().find(|&p| assignment[p] + 1 < n)?;
                assignment[p] += 1;
                for slot in &mut assignment[p + 1..] {
                    *slot = 0;
                }
                self.update(s, p, &mut values, &assignment);
            }
        };
        if v == 0 {
            return block(0);
        }
        (0..n).into_par_iter().find_map_first(block)
    }
}

struct Builder<'a> {
    position: HashMap<&'a str, usize>,
    nodes: Vec<Node>,
    level: Vec<usize>,
    interned: HashMap<Node, usize>,
}

impl Builder<'_> {
    fn intern(&mut self, node: Node, level: usize) -> usize {
        if let Some(&id) = self.interned.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node);
        self.level.push(level);
        self.interned.insert(node, id);
        id
    }

    fn compile(&mut self, t: &UnaryTerm) -> usize {
        match t {
            UnaryTerm::Var(name) => {
                let p = self.position[name.as_str()];
                self.intern(Node::Var(p), p)
            }
            UnaryTerm::Concat(a, b) => {
                let (a, b) = (self.compile(a), self.compile(b));
                let level = self.level[a].max(self.level[b]);
                self.intern(Node::Mul(a, b), level)
            }
            UnaryTerm::Star(a, k) => {
                let a = self.compile(a);
                let level = self.level[a];
                self.intern(Node::Star(a, *k as usize - 1), level)
            }
        }
    }
}

/// Value of `t` under a named assignment.
pub fn evaluate<S: UnarySemigroup + ?Sized>(
    t: &UnaryTerm,
    s: &S,
    assignment: &HashMap<String, ElementId>,
) -> Result<ElementId> {
    let compiled = CompiledTerms::new(&[t]);
    let values = compiled
        .vars()
        .iter()
        .map(|v| {
            assignment
                .get(v)
                .copied()
                .ok_or_else(|| Error::MissingVariable(v.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(compiled.evaluate(s, &values)?[0])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Variable bindings in natural variable order.
    pub assignment: Vec<(String, ElementId)>,
    /// Index of the failing identity when several are checked together.
    pub identity: usize,
    pub lhs: ElementId,
    pub rhs: ElementId,
}

impl Witness {
    pub fn describe<S: UnarySemigroup + ?Sized>(&self, s: &S) -> String {
        let binds: Vec<String> = self
            .assignment
            .iter()
            .map(|(v, a)| format!("{v}={}", s.label(*a)))
            .collect();
        format!(
            "{}: lhs={}, rhs={}",
            binds.join(", "),
            s.label(self.lhs),
            s.label(self.rhs)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdentityVerdict {
    Holds {
        assignments: u128,
    },
    /// The lexicographically least failing assignment.
    Fails(Witness),
    Inconclusive {
        space: u128,
        budget: u64,
    },
}

impl IdentityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityVerdict::Holds { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            IdentityVerdict::Fails(w) => Some(w),
            _ => None,
        }
    }
}

/// Number of assignments of `vars` variables in a structure of `size` elements.
pub fn assignment_space(size: usize, vars: usize) -> u128 {
    (size as u128).checked_pow(vars as u32).unwrap_or(u128::MAX)
}

/// Exhaustive check of `u = v`.
pub fn check_identity<S: UnarySemigroup + ?Sized>(
    s: &S,
    u: &UnaryTerm,
    v: &UnaryTerm,
    budget: u64,
) -> Result<IdentityVerdict> {
    check_identities(s, &[(u.clone(), v.clone())], budget)
}

/// Exhaustive check of a conjunction of identities over their joint variables.
pub fn check_identities<S: UnarySemigroup + ?Sized>(
    s: &S,
    identities: &[(UnaryTerm, UnaryTerm)],
    budget: u64,
) -> Result<IdentityVerdict> {
    let sides: Vec<&UnaryTerm> = identities.iter().flat_map(|(u, v)| [u, v]).collect();
    let compiled = CompiledTerms::new(&sides);
    compiled.check_arity(s)?;
    let space = assignment_space(s.size(), compiled.vars().len());
    if space > budget as u128 {
        return Ok(IdentityVerdict::Inconclusive { space, budget });
    }
    let found = compiled.find_first(s, |assignment, roots| {
        roots
            .chunks(2)
            .position(|pair| pair[0] != pair[1])
            .map(|i| (assignment.to_vec(), i, roots[2 * i], roots[2 * i + 1]))
    });
    Ok(match found {
        None => IdentityVerdict::Holds { assignments: space },
        Some((assignment, identity, lhs, rhs)) => IdentityVerdict::Fails(Witness {
            assignment: compiled.vars().iter().cloned().zip(assignment).collect(),
            identity,
            lhs,
            rhs,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::FiniteUnarySemigroup;
    use crate::DEFAULT_ASSIGNMENT_BUDGET;

    fn t(text: &str) -> UnaryTerm {
        UnaryTerm::parse(text, 2).unwrap()
    }

    /// Z_3 under addition, negation as star 1, identity map as star 2.
    fn z3() -> FiniteUnarySemigroup {
        let mul = (0..9).map(|i| ((i / 3 + i % 3) % 3) as ElementId).collect();
        FiniteUnarySemigroup::new(3, mul, vec![vec![0, 2, 1], vec![0, 1, 2]], None).unwrap()
    }

    #[test]
    fn interning_shares_powers() {
        let c = CompiledTerms::new(&[&t("x^8")]);
        // x, x^2, x^4, x^8
        assert_eq!(c.node_count(), 4);
    }

    #[test]
    fn evaluates_named_assignment() {
        let s = z3();
        let a = HashMap::from([("x".to_string(), 1), ("y".to_string(), 2)]);
        assert_eq!(evaluate(&t("x x y'"), &s, &a).unwrap(), 0);
        assert_eq!(evaluate(&t("x\" x"), &s, &a).unwrap(), 2);
        assert!(matches!(evaluate(&t("z"), &s, &a), Err(Error::MissingVariable(_))));
    }

    #[test]
    fn commutative_group_checks() {
        let s = z3();
        assert!(check_identity(&s, &t("x y"), &t("y x"), DEFAULT_ASSIGNMENT_BUDGET)
            .unwrap()
            .holds());
        let verdict = check_identity(&s, &t("x x'"), &t("x"), DEFAULT_ASSIGNMENT_BUDGET).unwrap();
        let w = verdict.witness().unwrap();
        assert_eq!(w.assignment, vec![("x".to_string(), 1)]);
        assert_eq!((w.lhs, w.rhs), (0, 1));
    }

    #[test]
    fn witness_is_least_in_natural_order() {
        let s = z3();
        // fails iff x10 != 0 ; x2 is the leading variable
        let verdict = check_identity(&s, &t("x2 x10"), &t("x2"), DEFAULT_ASSIGNMENT_BUDGET).unwrap();
        let w = verdict.witness().unwrap();
        assert_eq!(w.assignment, vec![("x2".to_string(), 0), ("x10".to_string(), 1)]);
    }

    #[test]
    fn budget_makes_inconclusive() {
        let verdict = check_identity(&z3(), &t("x y z"), &t("z y x"), 26).unwrap();
        assert_eq!(verdict, IdentityVerdict::Inconclusive { space: 27, budget: 26 });
    }

    #[test]
    fn second_star_needs_second_table() {
        let plain = FiniteUnarySemigroup::new(1, vec![0], vec![vec![0]], None).unwrap();
        assert!(matches!(
            check_identity(&plain, &t("x\""), &t("x"), 10),
            Err(Error::ArityMismatch(_))
        ));
    }
}
