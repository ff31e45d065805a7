//! Truncated free associative algebra `Z<X_1..X_k> / (degree > n)`.
//!
//! `x_i -> 1 + X_i` embeds `F_k / Gamma_{n+1}` faithfully into its units, so
//! two group words agree in the free nilpotent group exactly when their
//! images here agree. Equivalently this is the regular representation by
//! unitriangular integer matrices on the truncated algebra.

use std::collections::BTreeMap;

use crate::hall::Tree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub class: usize,
    pub terms: BTreeMap<Vec<usize>, i128>,
}

impl Series {
    pub fn scalar(class: usize, c: i128) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![], c);
        }
        Series { class, terms }
    }

    pub fn one(class: usize) -> Self {
        Self::scalar(class, 1)
    }

    pub fn var(class: usize, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![i], 1);
        Series { class, terms }
    }

    pub fn add(&self, o: &Series) -> Series {
        let mut t = self.terms.clone();
        for (w, c) in &o.terms {
            let e = t.entry(w.clone()).or_insert(0);
            *e += c;
            if *e == 0 {
                t.remove(w);
            }
        }
        Series { class: self.class, terms: t }
    }

    pub fn scale(&self, c: i128) -> Series {
        let terms = if c == 0 {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect()
        };
        Series { class: self.class, terms }
    }

    pub fn mul(&self, o: &Series) -> Series {
        let mut t: BTreeMap<Vec<usize>, i128> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if a.len() + b.len() > self.class {
                    continue;
                }
                let mut w = a.clone();
                w.extend_from_slice(b);
                *t.entry(w).or_insert(0) += x * y;
            }
        }
        t.retain(|_, c| *c != 0);
        Series { class: self.class, terms: t }
    }

    /// Inverse of a unit with constant term 1.
    pub fn inverse(&self) -> Series {
        assert_eq!(self.terms.get(&vec![]).copied(), Some(1));
        let z = self.add(&Series::scalar(self.class, -1));
        let mut acc = Series::one(self.class);
        let mut p = Series::one(self.class);
        for j in 1..=self.class {
            p = p.mul(&z);
            acc = acc.add(&p.scale(if j % 2 == 1 { -1 } else { 1 }));
        }
        acc
    }

    pub fn pow(&self, e: i64) -> Series {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Series::one(self.class);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn homogeneous(&self, d: usize) -> Series {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| w.len() == d)
            .map(|(w, c)| (w.clone(), *c))
            .collect();
        Series { class: self.class, terms }
    }
}

pub fn group_commutator(x: &Series, y: &Series) -> Series {
    x.inverse().mul(&y.inverse()).mul(x).mul(y)
}

/// Image of a syllable word.
pub fn word_image(class: usize, word: &[(usize, i64)]) -> Series {
    let mut acc = Series::one(class);
    for &(g, e) in word {
        let x = Series::one(class).add(&Series::var(class, g));
        acc = acc.mul(&x.pow(e));
    }
    acc
}

/// Group element of a Hall tree: leaves are generators, nodes `x^-1 y^-1 x y`.
pub fn tree_image(class: usize, t: &Tree) -> Series {
    match t {
        Tree::Leaf(i) => Series::one(class).add(&Series::var(class, *i)),
        Tree::Node(a, b) => group_commutator(&tree_image(class, a), &tree_image(class, b)),
    }
}

/// Image of the ordered product `prod t_i^{e_i}`.
pub fn normal_form_image(class: usize, trees: &[Tree], exps: &[i64]) -> Series {
    let mut acc = Series::one(class);
    for (t, &e) in trees.iter().zip(exps) {
        if e != 0 {
            acc = acc.mul(&tree_image(class, t).pow(e));
        }
    }
    acc
}

/// Lie polynomial `[u,v] = uv - vu` of a tree, in degree `weight(t)`.
pub fn lie_polynomial(class: usize, t: &Tree) -> Series {
    match t {
        Tree::Leaf(i) => Series::var(class, *i),
        Tree::Node(a, b) => {
            let pa = lie_polynomial(class, a);
            let pb = lie_polynomial(class, b);
            pa.mul(&pb).add(&pb.mul(&pa).scale(-1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group;

    #[test]
    fn ba_equals_ab_commutator() {
        let trees = crate::hall::enumerate_upto(2, 2);
        let lhs = word_image(2, &[(1, 1), (0, 1)]);
        let rhs = normal_form_image(2, &trees, &[1, 1, 1]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_roundtrip() {
        let w = [(0usize, 2i64), (1, -1), (0, -3)];
        let x = word_image(4, &w);
        let y = word_image(4, &free_group::inverse(&w));
        assert_eq!(x.mul(&y), Series::one(4));
    }
}
