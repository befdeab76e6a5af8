use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{ElementId, ElementPartition, FiniteUnarySemigroup, UnarySemigroup};

/// Right Green structure: classes, strict right division between classes and
/// the longest chain.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RHeightReport {
    pub classes: ElementPartition,
    /// Pairs `(lower, upper)` of class ids with `lower <_R upper`.
    pub order: Vec<(u32, u32)>,
    /// Number of elements in the longest strict chain.
    pub h: usize,
    /// Elements realizing `h`, from the bottom of the chain to the top.
    pub chain: Vec<ElementId>,
}

type Bits = Vec<u64>;

fn contains(bits: &Bits, x: usize) -> bool {
    bits[x / 64] >> (x % 64) & 1 == 1
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// `a R b` iff `a = b` or `a = bs`, `b = at`; `a <_R b` iff `a = bs` while
/// `b` is neither `a` nor any `at`.
pub fn green_r_height(s: &FiniteUnarySemigroup) -> RHeightReport {
    let n = s.size();
    let words = n.div_ceil(64);
    // Principal right ideal {a} ∪ aS of every element.
    let ideals: Vec<Bits> = s
        .elements()
        .map(|a| {
            let mut bits = vec![0u64; words];
            bits[a as usize / 64] |= 1 << (a % 64);
            for c in s.elements() {
                let x = s.mul(a, c) as usize;
                bits[x / 64] |= 1 << (x % 64);
            }
            bits
        })
        .collect();
    let classes = ElementPartition::from_fn(n, |a| ideals[a as usize].clone());
    let reps: Vec<ElementId> = classes.blocks().iter().map(|b| b[0]).collect();
    let k = reps.len();

    let mut order = Vec::new();
    for (lo, &a) in reps.iter().enumerate() {
        for (hi, &b) in reps.iter().enumerate() {
            let (ra, rb) = (&ideals[a as usize], &ideals[b as usize]);
            if lo != hi && subset(ra, rb) && !contains(ra, b as usize) {
                order.push((lo as u32, hi as u32));
            }
        }
    }

    // Longest chain ending at each class; classes with smaller ideals first.
    let mut by_size: Vec<usize> = (0..k).collect();
    let weight = |c: usize| ideals[reps[c] as usize].iter().map(|w| w.count_ones()).sum::<u32>();
    by_size.sort_by_key(|&c| (weight(c), c));
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &(lo, hi) in &order {
        below[hi as usize].push(lo as usize);
    }
    let mut best = vec![1usize; k];
    let mut prev: Vec<Option<usize>> = vec![None; k];
    for &c in &by_size {
        for &d in &below[c] {
            if best[d] + 1 > best[c] || (best[d] + 1 == best[c] && prev[c].is_some_and(|p| d < p)) {
                best[c] = best[d] + 1;
                prev[c] = Some(d);
            }
        }
    }
    let top = (0..k).max_by_key(|&c| (best[c], std::cmp::Reverse(c))).unwrap_or(0);
    let mut chain = vec![reps[top]];
    let mut cur = top;
    while let Some(p) = prev[cur] {
        chain.push(reps[p]);
        cur = p;
    }
    chain.reverse();
    RHeightReport {
        classes,
        order,
        h: best[top],
        chain,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexPeriod {
    pub index: u64,
    pub period: u64,
}

/// Least `(k, ℓ)` with `x^k = x^{k+ℓ}` for every `x`.
///
/// Each element's monogenic sequence is followed until its first repeat;
/// `k` is the largest index and `ℓ` the lcm of the periods.
pub fn index_period<S: UnarySemigroup + ?Sized>(s: &S) -> IndexPeriod {
    let mut index = 1u64;
    let mut period = 1u64;
    let mut first_seen = vec![0u64; s.size()];
    for x in 0..s.size() as ElementId {
        let mut touched = Vec::new();
        let mut power = x;
        let mut exp = 1u64;
        loop {
            let slot = &mut first_seen[power as usize];
            if *slot != 0 {
                index = index.max(*slot);
                period = period.lcm(&(exp - *slot));
                break;
            }
            *slot = exp;
            touched.push(power);
            power = s.mul(power, x);
            exp += 1;
        }
        for t in touched {
            first_seen[t as usize] = 0;
        }
    }
    IndexPeriod { index, period }
}

/// Exhaustive check of `x^k = x^{k+ℓ}`.
pub fn satisfies_periodic<S: UnarySemigroup + ?Sized>(s: &S, k: u64, l: u64) -> bool {
    (0..s.size() as ElementId).all(|x| s.pow(x, k) == s.pow(x, k + l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteUnarySemigroup {
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as ElementId).collect();
        let inv = (0..n).map(|a| ((n - a) % n) as ElementId).collect();
        FiniteUnarySemigroup::new(n, mul, vec![inv], None).unwrap()
    }

    /// Monogenic semigroup of index 4 and period 1; id i is x^(i+1).
    fn monogenic_index4() -> FiniteUnarySemigroup {
        let n = 4;
        let mul = (0..n * n).map(|i| ((i / n + i % n + 1).min(3)) as ElementId).collect();
        FiniteUnarySemigroup::new(n, mul, vec![], None).unwrap()
    }

    #[test]
    fn group_has_height_one_and_index_one() {
        let g = cyclic(6);
        let r = green_r_height(&g);
        assert_eq!(r.h, 1);
        assert_eq!(r.classes.class_count(), 1);
        assert_eq!(index_period(&g), IndexPeriod { index: 1, period: 6 });
    }

    #[test]
    fn monogenic_chain() {
        let s = monogenic_index4();
        assert_eq!(index_period(&s), IndexPeriod { index: 4, period: 1 });
        assert!(satisfies_periodic(&s, 4, 1));
        assert!(!satisfies_periodic(&s, 3, 1));
        let r = green_r_height(&s);
        assert_eq!(r.h, 4);
        assert_eq!(r.chain, vec![3, 2, 1, 0]);
    }
}
