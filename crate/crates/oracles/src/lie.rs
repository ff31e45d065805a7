//! Lie functors through the tensor algebra.
//!
//! `Lie_n(Z^k)` is realized as the span of Hall-tree commutator polynomials
//! inside degree-`n` tensors. A map acts on tensors letter by letter, and
//! coordinates are recovered by exact rational elimination.

use std::collections::BTreeMap;

use crate::hall::{enumerate, Tree};
use crate::magnus::lie_polynomial;
use crate::smith::Mat;

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Q(i128, i128);

impl Q {
    fn new(n: i128, d: i128) -> Q {
        let g = gcd(n, d).max(1);
        let s = if d < 0 { -1 } else { 1 };
        Q(s * n / g, s * d / g)
    }
    fn sub(self, o: Q) -> Q {
        Q::new(self.0 * o.1 - o.0 * self.1, self.1 * o.1)
    }
    fn mul(self, o: Q) -> Q {
        Q::new(self.0 * o.0, self.1 * o.1)
    }
    fn div(self, o: Q) -> Q {
        Q::new(self.0 * o.1, self.1 * o.0)
    }
}

/// Polynomials of the weight-`n` Hall trees on `k` letters.
pub fn hall_polynomials(k: usize, n: usize) -> Vec<BTreeMap<Vec<usize>, i128>> {
    enumerate(k, n).iter().map(|t| lie_polynomial(n, t).terms).collect()
}

/// Integer coordinates of `v` in the Hall polynomials; `None` when `v` is
/// not an integral combination.
pub fn coordinates(basis: &[BTreeMap<Vec<usize>, i128>], v: &BTreeMap<Vec<usize>, i128>) -> Option<Vec<i128>> {
    let mut words: Vec<Vec<usize>> = basis.iter().flat_map(|p| p.keys().cloned()).collect();
    words.extend(v.keys().cloned());
    words.sort();
    words.dedup();
    let m = basis.len();
    // rows: words; columns: basis then v
    let mut a: Vec<Vec<Q>> = words
        .iter()
        .map(|w| {
            let mut row: Vec<Q> = basis.iter().map(|p| Q::new(*p.get(w).unwrap_or(&0), 1)).collect();
            row.push(Q::new(*v.get(w).unwrap_or(&0), 1));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..a.len()).find(|&i| a[i][c].0 != 0) else {
            return None;
        };
        a.swap(r, p);
        let lead = a[r][c];
        for x in a[r].iter_mut() {
            *x = x.div(lead);
        }
        for i in 0..a.len() {
            if i != r && a[i][c].0 != 0 {
                let f = a[i][c];
                for j in 0..=m {
                    let t = a[r][j].mul(f);
                    a[i][j] = a[i][j].sub(t);
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    if a[r..].iter().any(|row| row[m].0 != 0) {
        return None;
    }
    let mut out = Vec::with_capacity(m);
    for &p in &pivots {
        let q = a[p][m];
        if q.1 != 1 {
            return None;
        }
        out.push(q.0);
    }
    Some(out)
}

/// `f^{⊗n}` on a tensor, `f` an `l x k` matrix.
pub fn apply_tensor(f: &Mat, v: &BTreeMap<Vec<usize>, i128>) -> BTreeMap<Vec<usize>, i128> {
    let mut out: BTreeMap<Vec<usize>, i128> = BTreeMap::new();
    for (w, c) in v {
        let mut partial: Vec<(Vec<usize>, i128)> = vec![(Vec::new(), *c)];
        for &g in w {
            let mut next = Vec::new();
            for (p, x) in &partial {
                for (r, row) in f.iter().enumerate() {
                    if row[g] != 0 {
                        let mut q = p.clone();
                        q.push(r);
                        next.push((q, x * row[g]));
                    }
                }
            }
            partial = next;
        }
        for (p, x) in partial {
            *out.entry(p).or_insert(0) += x;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Matrix of `Lie_n(f)` in Hall bases, `f` an `l x k` matrix.
pub fn lie_of_map(f: &Mat, k: usize, n: usize) -> Mat {
    let l = f.len();
    let src = hall_polynomials(k, n);
    let dst = hall_polynomials(l, n);
    let mut m = vec![vec![0i128; src.len()]; dst.len()];
    for (c, p) in src.iter().enumerate() {
        let img = apply_tensor(f, p);
        let coords = coordinates(&dst, &img).expect("image of a Lie polynomial is Lie");
        for (r, x) in coords.into_iter().enumerate() {
            m[r][c] = x;
        }
    }
    m
}

/// Coordinates of a bracket polynomial in the weight-`n` Hall basis.
pub fn normalize(k: usize, n: usize, t: &Tree) -> Option<Vec<i128>> {
    coordinates(&hall_polynomials(k, n), &lie_polynomial(n, t).terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_negates_bracket() {
        let swap = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(lie_of_map(&swap, 2, 2), vec![vec![-1]]);
    }

    #[test]
    fn non_hall_bracket() {
        let t = Tree::Node(
            Box::new(Tree::Node(Box::new(Tree::Leaf(0)), Box::new(Tree::Leaf(1)))),
            Box::new(Tree::Leaf(0)),
        );
        assert_eq!(normalize(2, 3, &t), Some(vec![-1, 0]));
    }
}
