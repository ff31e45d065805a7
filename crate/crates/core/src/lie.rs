//! Free Lie rings over the integers in Hall coordinates.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hall::{HallNode, HallSet, HallTree};
use crate::matrix::{AbelianInvariants, IntMatrix};

/// Sparse combination of Hall ids.
pub type Comb = BTreeMap<usize, BigInt>;

pub(crate) fn comb_add(acc: &mut Comb, c: &Comb, s: &BigInt) {
    for (id, x) in c {
        let e = acc.entry(*id).or_insert_with(BigInt::zero);
        *e += x * s;
        if e.is_zero() {
            acc.remove(id);
        }
    }
}

/// Free Lie ring on `k` generators truncated above a maximum weight, with a
/// memoized bracket on Hall ids.
#[derive(Clone, Debug)]
pub struct LieRing {
    set: HallSet,
    memo: BTreeMap<(usize, usize), Comb>,
}

impl LieRing {
    pub fn new(generators: usize, max_weight: usize) -> Self {
        LieRing { set: HallSet::new(generators, max_weight), memo: BTreeMap::new() }
    }

    pub fn set(&self) -> &HallSet {
        &self.set
    }

    pub fn leaf(g: usize) -> Comb {
        let mut c = Comb::new();
        c.insert(g, BigInt::one());
        c
    }

    /// `[u, v]` for Hall ids, rewritten into the Hall basis. Terms above the
    /// maximum weight are dropped.
    pub fn bracket_ids(&mut self, u: usize, v: usize) -> Comb {
        if u == v || self.set.weight(u) + self.set.weight(v) > self.set.max_weight() {
            return Comb::new();
        }
        if u < v {
            let mut r = self.bracket_ids(v, u);
            r.values_mut().for_each(|x| *x = -&*x);
            return r;
        }
        if let Some(id) = self.set.bracket_id(u, v) {
            let mut c = Comb::new();
            c.insert(id, BigInt::one());
            return c;
        }
        if let Some(r) = self.memo.get(&(u, v)) {
            return r.clone();
        }
        // u > v is not Hall, so u = [a, b] with b > v:
        // [[a,b],v] = [[a,v],b] - [[b,v],a].
        let (a, b) = match self.set.node(u) {
            HallNode::Bracket(a, b) => (a, b),
            HallNode::Leaf(_) => unreachable!("leaf above a lighter tree is always Hall"),
        };
        let av = self.bracket_ids(a, v);
        let bv = self.bracket_ids(b, v);
        let mut r = self.bracket_comb_id(&av, b);
        let t = self.bracket_comb_id(&bv, a);
        comb_add(&mut r, &t, &-BigInt::one());
        self.memo.insert((u, v), r.clone());
        r
    }

    fn bracket_comb_id(&mut self, x: &Comb, v: usize) -> Comb {
        let mut r = Comb::new();
        for (u, c) in x {
            let t = self.bracket_ids(*u, v);
            comb_add(&mut r, &t, c);
        }
        r
    }

    pub fn bracket(&mut self, x: &Comb, y: &Comb) -> Comb {
        let mut r = Comb::new();
        for (u, a) in x {
            for (v, b) in y {
                let t = self.bracket_ids(*u, *v);
                comb_add(&mut r, &t, &(a * b));
            }
        }
        r
    }

    /// Left-normed bracket `[[..[g1,g2],..],gm]` of generator indices.
    pub fn left_normed(&mut self, word: &[usize]) -> Comb {
        let Some((&first, rest)) = word.split_first() else {
            return Comb::new();
        };
        let mut acc = Self::leaf(first);
        for &g in rest {
            acc = self.bracket(&acc, &Self::leaf(g));
        }
        acc
    }
}

/// Formal bracket expression with integer coefficients. Generators are
/// 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketExpr {
    Gen(usize),
    Bracket(Box<BracketExpr>, Box<BracketExpr>),
    Sum(Vec<(BigInt, BracketExpr)>),
}

impl BracketExpr {
    pub fn bracket(a: BracketExpr, b: BracketExpr) -> BracketExpr {
        BracketExpr::Bracket(Box::new(a), Box::new(b))
    }

    /// Weight of a homogeneous expression; `None` for an empty sum.
    pub fn weight(&self) -> Result<Option<usize>> {
        match self {
            BracketExpr::Gen(_) => Ok(Some(1)),
            BracketExpr::Bracket(a, b) => Ok(match (a.weight()?, b.weight()?) {
                (Some(x), Some(y)) => Some(x + y),
                _ => None,
            }),
            BracketExpr::Sum(terms) => {
                let mut w = None;
                for (_, t) in terms {
                    match (w, t.weight()?) {
                        (_, None) => {}
                        (None, x) => w = x,
                        (Some(a), Some(b)) if a != b => {
                            return Err(Error::NonHomogeneous { expected: a, found: b })
                        }
                        _ => {}
                    }
                }
                Ok(w)
            }
        }
    }

    fn eval(&self, ring: &mut LieRing) -> Result<Comb> {
        match self {
            BracketExpr::Gen(g) => {
                let k = ring.set().generators();
                if *g >= k {
                    return Err(Error::GeneratorOutOfRange { generator: g + 1, generators: k });
                }
                Ok(LieRing::leaf(*g))
            }
            BracketExpr::Bracket(a, b) => {
                let x = a.eval(ring)?;
                let y = b.eval(ring)?;
                Ok(ring.bracket(&x, &y))
            }
            BracketExpr::Sum(terms) => {
                let mut r = Comb::new();
                for (c, t) in terms {
                    let x = t.eval(ring)?;
                    comb_add(&mut r, &x, c);
                }
                Ok(r)
            }
        }
    }
}

impl From<&HallTree> for BracketExpr {
    fn from(t: &HallTree) -> Self {
        match t {
            HallTree::Leaf(g) => BracketExpr::Gen(*g),
            HallTree::Bracket(a, b) => BracketExpr::bracket((&**a).into(), (&**b).into()),
        }
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketExpr::Gen(g) => write!(f, "x{}", g + 1),
            BracketExpr::Bracket(a, b) => write!(f, "[{a},{b}]"),
            BracketExpr::Sum(terms) if terms.is_empty() => write!(f, "0"),
            BracketExpr::Sum(terms) => {
                for (i, (c, t)) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "({c})*{t}")?;
                }
                Ok(())
            }
        }
    }
}

/// Homogeneous element of `Lie_n(Z^k)` in the weight-`n` Hall basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    generators: usize,
    weight: usize,
    coeffs: Vec<BigInt>,
}

impl LieElement {
    pub fn zero(generators: usize, weight: usize) -> Self {
        let n = HallSet::new(generators, weight).weight_range(weight).len();
        LieElement { generators, weight, coeffs: vec![BigInt::zero(); n] }
    }

    fn from_comb(set: &HallSet, weight: usize, c: &Comb) -> Self {
        let range = set.weight_range(weight);
        let mut coeffs = vec![BigInt::zero(); range.len()];
        for (id, x) in c {
            if range.contains(id) {
                coeffs[id - range.start] = x.clone();
            }
        }
        LieElement { generators: set.generators(), weight, coeffs }
    }

    pub fn from_coeffs(generators: usize, weight: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        let n = HallSet::new(generators, weight).weight_range(weight).len();
        if coeffs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: coeffs.len() });
        }
        Ok(LieElement { generators, weight, coeffs })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms with their Hall trees.
    pub fn terms(&self) -> Vec<(HallTree, BigInt)> {
        let set = HallSet::new(self.generators, self.weight);
        let start = set.weight_range(self.weight).start;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (set.tree(start + i), c.clone()))
            .collect()
    }

    /// The element as a formal expression.
    pub fn to_expr(&self) -> BracketExpr {
        BracketExpr::Sum(self.terms().iter().map(|(t, c)| (c.clone(), t.into())).collect())
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, c)) in terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{t}")?;
            } else {
                write!(f, "{mag}*{t}")?;
            }
        }
        Ok(())
    }
}

/// Rewrites a homogeneous weight-`n` bracket expression over `k` generators
/// into the Hall basis using antisymmetry and Jacobi.
pub fn lie_normalize(expr: &BracketExpr, k: usize, n: usize) -> Result<LieElement> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "weight", value: 0, max: usize::MAX });
    }
    if let Some(w) = expr.weight()? {
        if w != n {
            return Err(Error::NonHomogeneous { expected: n, found: w });
        }
    }
    let mut ring = LieRing::new(k, n);
    let c = expr.eval(&mut ring)?;
    Ok(LieElement::from_comb(ring.set(), n, &c))
}

/// Matrix of `Lie_n(f): Lie_n(Z^k) -> Lie_n(Z^l)` in Hall bases, for an
/// `l x k` matrix `f`.
pub fn lie_of_map(f: &IntMatrix, n: usize) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "weight", value: 0, max: usize::MAX });
    }
    let (l, k) = (f.rows(), f.cols());
    let source = HallSet::new(k, n);
    let mut target = LieRing::new(l, n);
    let mut images: Vec<Comb> = Vec::with_capacity(source.len());
    for id in 0..source.len() {
        let img = match source.node(id) {
            HallNode::Leaf(g) => (0..l)
                .filter(|&r| !f[(r, g)].is_zero())
                .map(|r| (r, f[(r, g)].clone()))
                .collect(),
            HallNode::Bracket(u, v) => {
                let (x, y) = (images[u].clone(), images[v].clone());
                target.bracket(&x, &y)
            }
        };
        images.push(img);
    }
    let src = source.weight_range(n);
    let dst = target.set().weight_range(n);
    Ok(IntMatrix::from_fn(dst.len(), src.len(), |r, c| {
        images[src.start + c].get(&(dst.start + r)).cloned().unwrap_or_default()
    }))
}

/// Subsets of `0..m` of size `s` in lexicographic order.
fn subsets(m: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, s, &mut Vec::new(), &mut out);
    out
}

/// The first `len` differentials of the cross-effect complex
/// `L_s = (+)_{|S|=s} Lie_n((+)_{i not in S} A_i)` with `A_i = Z^{ranks[i]}`.
/// The component `S -> S + {j}` is `Lie_n` of the projection killing `A_j`
/// with sign `(-1)^{#{s in S : s < j}}`. Summands are ordered by subset in
/// lexicographic order.
pub fn cross_effect_complex(n: usize, ranks: &[usize], len: usize) -> Result<Vec<IntMatrix>> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "weight", value: 0, max: usize::MAX });
    }
    let m = ranks.len();
    let dim = |s: &[usize]| -> usize {
        let r: usize = (0..m).filter(|i| !s.contains(i)).map(|i| ranks[i]).sum();
        HallSet::new(r, n).weight_range(n).len()
    };
    let mut out = Vec::new();
    for level in 0..len.min(m) {
        let from = subsets(m, level);
        let to = subsets(m, level + 1);
        let from_dims: Vec<usize> = from.iter().map(|s| dim(s)).collect();
        let to_dims: Vec<usize> = to.iter().map(|s| dim(s)).collect();
        let mut d = IntMatrix::zeros(to_dims.iter().sum(), from_dims.iter().sum());
        let mut col0 = 0;
        for (si, s) in from.iter().enumerate() {
            let kept: Vec<usize> = (0..m).filter(|i| !s.contains(i)).collect();
            for &j in &kept {
                let mut t = s.clone();
                t.push(j);
                t.sort_unstable();
                let ti = to.iter().position(|x| *x == t).expect("superset is listed");
                let row0: usize = to_dims[..ti].iter().sum();
                // projection from (+)_{kept} A_i onto (+)_{kept - j} A_i
                let src_rank: usize = kept.iter().map(|&i| ranks[i]).sum();
                let mut proj = IntMatrix::zeros(src_rank - ranks[j], src_rank);
                let (mut r, mut c) = (0, 0);
                for &i in &kept {
                    for _ in 0..ranks[i] {
                        if i != j {
                            proj[(r, c)] = BigInt::one();
                            r += 1;
                        }
                        c += 1;
                    }
                }
                let block = lie_of_map(&proj, n)?;
                let negative = s.iter().filter(|&&x| x < j).count() % 2 == 1;
                for rr in 0..block.rows() {
                    for cc in 0..block.cols() {
                        let x = &block[(rr, cc)];
                        d[(row0 + rr, col0 + cc)] = if negative { -x } else { x.clone() };
                    }
                }
            }
            col0 += from_dims[si];
        }
        out.push(d);
    }
    Ok(out)
}

/// Kernel of `L_0 -> L_1` in the cross-effect complex of `n + 1` free
/// summands of the given ranks.
pub fn cross_effect_kernel(n: usize, ranks: &[usize]) -> Result<AbelianInvariants> {
    if ranks.len() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, found: ranks.len() });
    }
    let d = cross_effect_complex(n, ranks, 1)?;
    Ok(AbelianInvariants::free(d[0].kernel().dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use BracketExpr::Gen;

    fn br(a: BracketExpr, b: BracketExpr) -> BracketExpr {
        BracketExpr::bracket(a, b)
    }

    #[test]
    fn antisymmetry_examples() {
        assert!(lie_normalize(&br(Gen(0), Gen(0)), 2, 2).unwrap().is_zero());
        let e = lie_normalize(&br(Gen(0), Gen(1)), 2, 2).unwrap();
        assert_eq!(e.coeffs(), &[BigInt::from(-1)]);
        assert_eq!(e.to_string(), "-[x2,x1]");
    }

    #[test]
    fn triple_bracket() {
        let e = lie_normalize(&br(br(Gen(0), Gen(1)), Gen(0)), 2, 3).unwrap();
        assert_eq!(e.to_string(), "-[[x2,x1],x1]");
    }

    #[test]
    fn non_homogeneous_rejected() {
        let e = BracketExpr::Sum(vec![(BigInt::one(), Gen(0)), (BigInt::one(), br(Gen(1), Gen(0)))]);
        assert!(matches!(lie_normalize(&e, 2, 1), Err(Error::NonHomogeneous { .. })));
        assert!(matches!(lie_normalize(&Gen(0), 2, 2), Err(Error::NonHomogeneous { .. })));
    }

    #[test]
    fn map_examples() {
        let id = IntMatrix::identity(2);
        assert_eq!(lie_of_map(&id, 3).unwrap(), IntMatrix::identity(2));
        let swap = IntMatrix::from_rows(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(lie_of_map(&swap, 2).unwrap(), IntMatrix::from_rows(1, &[vec![-1]]).unwrap());
        let proj = IntMatrix::from_rows(2, &[vec![1, 0]]).unwrap();
        let m = lie_of_map(&proj, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 1));
    }

    #[test]
    fn cross_effect_small() {
        assert!(cross_effect_kernel(1, &[1, 1]).unwrap().is_trivial());
        assert!(cross_effect_kernel(2, &[1, 1, 1]).unwrap().is_trivial());
        let d = cross_effect_complex(2, &[1, 1, 1], 2).unwrap();
        assert!(d[1].mul(&d[0]).unwrap().is_zero());
    }
}
