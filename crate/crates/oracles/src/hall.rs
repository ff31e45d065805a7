//! Exhaustive enumeration of Hall trees.
//!
//! Every bracketing of every leaf sequence is generated and filtered by the
//! Hall condition; nothing is built incrementally from smaller Hall sets.

use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    Leaf(usize),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn weight(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(a, b) => a.weight() + b.weight(),
        }
    }

    /// `x1`-based string, e.g. `[[x2,x1],x1]`.
    pub fn render(&self) -> String {
        match self {
            Tree::Leaf(i) => format!("x{}", i + 1),
            Tree::Node(a, b) => format!("[{},{}]", a.render(), b.render()),
        }
    }
}

/// Weight first, then leaves by index, then left subtree, then right subtree.
pub fn compare(a: &Tree, b: &Tree) -> Ordering {
    let w = a.weight().cmp(&b.weight());
    if w != Ordering::Equal {
        return w;
    }
    match (a, b) {
        (Tree::Leaf(i), Tree::Leaf(j)) => i.cmp(j),
        (Tree::Leaf(_), Tree::Node(..)) => Ordering::Less,
        (Tree::Node(..), Tree::Leaf(_)) => Ordering::Greater,
        (Tree::Node(a1, a2), Tree::Node(b1, b2)) => compare(a1, b1).then_with(|| compare(a2, b2)),
    }
}

pub fn is_hall(t: &Tree) -> bool {
    match t {
        Tree::Leaf(_) => true,
        Tree::Node(u, v) => {
            if !is_hall(u) || !is_hall(v) || compare(u, v) != Ordering::Greater {
                return false;
            }
            match &**u {
                Tree::Leaf(_) => true,
                Tree::Node(_, b) => compare(b, v) != Ordering::Greater,
            }
        }
    }
}

fn all_trees(k: usize, n: usize) -> Vec<Tree> {
    if n == 1 {
        return (0..k).map(Tree::Leaf).collect();
    }
    let mut out = Vec::new();
    for left in 1..n {
        let ls = all_trees(k, left);
        let rs = all_trees(k, n - left);
        for l in &ls {
            for r in &rs {
                out.push(Tree::Node(Box::new(l.clone()), Box::new(r.clone())));
            }
        }
    }
    out
}

/// All weight-`n` Hall trees over `k` generators, sorted.
pub fn enumerate(k: usize, n: usize) -> Vec<Tree> {
    let mut v: Vec<Tree> = all_trees(k, n).into_iter().filter(is_hall).collect();
    v.sort_by(compare);
    v.dedup();
    v
}

/// Hall trees of every weight `1..=n`, in the global order.
pub fn enumerate_upto(k: usize, n: usize) -> Vec<Tree> {
    (1..=n).flat_map(|w| enumerate(k, w)).collect()
}
