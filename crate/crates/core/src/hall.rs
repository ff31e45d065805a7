//! Hall sets of basic commutators.
//!
//! Trees are totally ordered by weight, then recursively lexicographically
//! (leaves by generator index, brackets by left then right subtree). A
//! bracket `[u, v]` is a Hall tree when `u`, `v` are Hall trees, `u > v`, and
//! either `u` is a leaf or `u = [a, b]` with `b <= v`.
//!
//! Generators are 0-based in the API and printed 1-based (`x1, x2, ...`).

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};

/// A binary bracketing of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HallTree {
    Leaf(usize),
    Bracket(Box<HallTree>, Box<HallTree>),
}

impl HallTree {
    pub fn bracket(a: HallTree, b: HallTree) -> HallTree {
        HallTree::Bracket(Box::new(a), Box::new(b))
    }

    pub fn weight(&self) -> usize {
        match self {
            HallTree::Leaf(_) => 1,
            HallTree::Bracket(a, b) => a.weight() + b.weight(),
        }
    }

    /// Checks the Hall condition recursively.
    pub fn is_hall(&self) -> bool {
        match self {
            HallTree::Leaf(_) => true,
            HallTree::Bracket(u, v) => {
                u.is_hall()
                    && v.is_hall()
                    && **u > **v
                    && match &**u {
                        HallTree::Leaf(_) => true,
                        HallTree::Bracket(_, b) => **b <= **v,
                    }
            }
        }
    }
}

impl Ord for HallTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| match (self, other) {
            (HallTree::Leaf(i), HallTree::Leaf(j)) => i.cmp(j),
            (HallTree::Leaf(_), HallTree::Bracket(..)) => Ordering::Less,
            (HallTree::Bracket(..), HallTree::Leaf(_)) => Ordering::Greater,
            (HallTree::Bracket(a, b), HallTree::Bracket(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
        })
    }
}

impl PartialOrd for HallTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HallTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HallTree::Leaf(i) => write!(f, "x{}", i + 1),
            HallTree::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HallNode {
    Leaf(usize),
    Bracket(usize, usize),
}

/// All Hall trees over `k` generators up to a maximum weight, numbered in
/// the total order. Numbering of weights `<= w` does not depend on the
/// maximum weight.
#[derive(Clone, Debug)]
pub struct HallSet {
    generators: usize,
    max_weight: usize,
    nodes: Vec<HallNode>,
    weights: Vec<usize>,
    /// `starts[w]..starts[w+1]` are the ids of weight `w` (index 0 unused).
    starts: Vec<usize>,
    lookup: BTreeMap<(usize, usize), usize>,
}

impl HallSet {
    pub fn new(generators: usize, max_weight: usize) -> Self {
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut starts = alloc::vec![0usize; 2];
        let mut lookup = BTreeMap::new();
        for g in 0..generators {
            nodes.push(HallNode::Leaf(g));
            weights.push(1);
        }
        starts.push(nodes.len());
        for w in 2..=max_weight {
            let lower = starts[w];
            for u in 0..lower {
                let wu = weights[u];
                if wu >= w {
                    break;
                }
                let wv = w - wu;
                for v in starts[wv]..starts[wv + 1] {
                    if v >= u {
                        break;
                    }
                    let ok = match nodes[u] {
                        HallNode::Leaf(_) => true,
                        HallNode::Bracket(_, b) => b <= v,
                    };
                    if ok {
                        lookup.insert((u, v), nodes.len());
                        nodes.push(HallNode::Bracket(u, v));
                        weights.push(w);
                    }
                }
            }
            starts.push(nodes.len());
        }
        HallSet { generators, max_weight, nodes, weights, starts, lookup }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: usize) -> HallNode {
        self.nodes[id]
    }

    pub fn weight(&self, id: usize) -> usize {
        self.weights[id]
    }

    /// Ids of weight `w`.
    pub fn weight_range(&self, w: usize) -> core::ops::Range<usize> {
        if w == 0 || w > self.max_weight {
            return 0..0;
        }
        self.starts[w]..self.starts[w + 1]
    }

    /// Number of ids of weight `<= w`.
    pub fn count_upto(&self, w: usize) -> usize {
        self.starts[w.min(self.max_weight) + 1]
    }

    /// Id of the Hall bracket `[u, v]`, if it is one.
    pub fn bracket_id(&self, u: usize, v: usize) -> Option<usize> {
        self.lookup.get(&(u, v)).copied()
    }

    pub fn tree(&self, id: usize) -> HallTree {
        match self.nodes[id] {
            HallNode::Leaf(g) => HallTree::Leaf(g),
            HallNode::Bracket(u, v) => HallTree::bracket(self.tree(u), self.tree(v)),
        }
    }

    /// Id of a tree, if it is a Hall tree within this set.
    pub fn find(&self, t: &HallTree) -> Option<usize> {
        match t {
            HallTree::Leaf(g) => (*g < self.generators).then_some(*g),
            HallTree::Bracket(a, b) => self.bracket_id(self.find(a)?, self.find(b)?),
        }
    }

    /// Leaves of a tree, left to right.
    pub fn leaves(&self, id: usize) -> Vec<usize> {
        match self.nodes[id] {
            HallNode::Leaf(g) => alloc::vec![g],
            HallNode::Bracket(u, v) => {
                let mut l = self.leaves(u);
                l.extend(self.leaves(v));
                l
            }
        }
    }
}

/// Weight-`n` Hall trees over `k` generators, in order.
pub fn hall_basis(k: usize, n: usize) -> Vec<HallTree> {
    if n == 0 {
        return Vec::new();
    }
    let set = HallSet::new(k, n);
    set.weight_range(n).map(|id| set.tree(id)).collect()
}

fn mobius(n: usize) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        -sign
    } else {
        sign
    }
}

/// Rank of the weight-`n` part of the free Lie ring on `k` generators.
pub fn witt_rank(k: usize, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    let base = BigInt::from(k);
    let mut sum = BigInt::zero();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let mu = mobius(d);
        if mu != 0 {
            let term: BigInt = Pow::pow(&base, (n / d) as u32);
            sum += term * mu;
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(n));
    debug_assert!(r.is_zero());
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn two_generator_bases() {
        let s = |k, n| hall_basis(k, n).iter().map(|t| t.to_string()).collect::<Vec<_>>();
        assert_eq!(s(2, 1), vec!["x1", "x2"]);
        assert_eq!(s(2, 2), vec!["[x2,x1]"]);
        assert_eq!(s(2, 3), vec!["[[x2,x1],x1]", "[[x2,x1],x2]"]);
    }

    #[test]
    fn witt_values() {
        assert_eq!(witt_rank(2, 2), BigInt::from(1));
        assert_eq!(witt_rank(2, 3), BigInt::from(2));
        assert_eq!(witt_rank(3, 2), BigInt::from(3));
        assert_eq!(witt_rank(0, 1), BigInt::from(0));
        assert_eq!(witt_rank(1, 1), BigInt::from(1));
        assert_eq!(witt_rank(1, 4), BigInt::from(0));
    }

    #[test]
    fn ids_are_stable_across_max_weight() {
        let a = HallSet::new(3, 3);
        let b = HallSet::new(3, 5);
        for id in 0..a.len() {
            assert_eq!(a.tree(id), b.tree(id));
            assert_eq!(b.find(&a.tree(id)), Some(id));
        }
    }

    #[test]
    fn every_member_is_hall_and_sorted() {
        let s = HallSet::new(3, 5);
        for id in 0..s.len() {
            assert!(s.tree(id).is_hall());
            if id > 0 {
                assert!(s.tree(id - 1) < s.tree(id));
            }
        }
    }
}
