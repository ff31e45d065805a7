//! Dense integer matrices with arbitrary-precision entries.
//!
//! Matrices act on column vectors: a map `Z^k -> Z^l` is stored `l x k`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds from small integer rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            for (a, x) in self.row(r).iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    *o += a * x;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[IntMatrix], cols: usize) -> Result<IntMatrix> {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: p.cols });
            }
            rows += p.rows;
            data.extend(p.data.iter().cloned());
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Keeps the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        Self::from_fn(self.rows, cols.len(), |r, c| self[(r, cols[c])].clone())
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Nonzero Smith invariant factors `d_1 | d_2 | ...`, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        smith_diagonal(self.to_rows(), self.cols)
    }

    pub fn rank(&self) -> usize {
        // row echelon via the kernel routine is cheaper than a full Smith form
        self.cols - self.kernel().dim()
    }

    /// Invariants of `Z^rows / (column span)`.
    pub fn cokernel(&self) -> AbelianInvariants {
        let f = self.invariant_factors();
        let rank = self.rows - f.len();
        AbelianInvariants::from_parts(rank, f)
    }

    /// Saturated kernel lattice with a coordinate map onto it.
    pub fn kernel(&self) -> Kernel {
        kernel_of(self)
    }
}

/// Kernel of `M : Z^r -> Z^m` as a basis plus coordinates.
///
/// `coords * basis = I`, and for every `v` with `M v = 0` we have
/// `v = basis * (coords * v)`.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub basis: IntMatrix,
    pub coords: IntMatrix,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

fn sub_row_multiple(target: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Column-style echelon form through row operations on the transpose.
fn kernel_of(m: &IntMatrix) -> Kernel {
    let r = m.cols;
    // a[i] = column i of m; e accumulates the row operations (E), e_inv their inverse
    let mut a: Vec<Vec<BigInt>> = (0..r).map(|c| m.column(c)).collect();
    let mut e: Vec<Vec<BigInt>> = IntMatrix::identity(r).to_rows();
    let mut e_inv = IntMatrix::identity(r).to_rows();
    let mut p = 0;
    for c in 0..m.rows {
        if p == r {
            break;
        }
        loop {
            // smallest nonzero entry in column c among rows p..
            let mut best: Option<usize> = None;
            for i in p..r {
                if !a[i][c].is_zero() && best.is_none_or(|b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            if b != p {
                a.swap(b, p);
                e.swap(b, p);
                for row in e_inv.iter_mut() {
                    row.swap(b, p);
                }
            }
            let mut done = true;
            for i in p + 1..r {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[p][c]);
                let (head, tail) = a.split_at_mut(i);
                sub_row_multiple(&mut tail[0], &head[p], &q);
                let (head, tail) = e.split_at_mut(i);
                sub_row_multiple(&mut tail[0], &head[p], &q);
                // E' = R E with R: row_i -= q row_p, so E'^{-1} = E^{-1} R^{-1}: col_p += q col_i
                for row in e_inv.iter_mut() {
                    if !row[i].is_zero() {
                        let add = &q * &row[i];
                        row[p] += add;
                    }
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                p += 1;
                break;
            }
        }
    }
    let k = r - p;
    let basis = IntMatrix::from_fn(r, k, |row, col| e[p + col][row].clone());
    let coords = IntMatrix::from_fn(k, r, |row, col| e_inv[col][p + row].clone());
    Kernel { basis, coords }
}

fn smith_diagonal(mut a: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = a.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t, t..rows, t..cols) else { break };
        move_to(&mut a, t, pi, pj);
        loop {
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (head, tail) = a.split_at_mut(i);
                    sub_row_multiple(&mut tail[0][t..], &head[t][t..], &q);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        if !row[t].is_zero() {
                            let d = &q * &row[t];
                            row[j] -= d;
                        }
                    }
                }
            }
            // remainders left in the pivot row/column become the next pivot
            let mut cand: Option<(usize, usize)> = None;
            for i in t + 1..rows {
                if !a[i][t].is_zero() && cand.is_none_or(|(x, y)| a[i][t].abs() < a[x][y].abs()) {
                    cand = Some((i, t));
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && cand.is_none_or(|(x, y)| a[t][j].abs() < a[x][y].abs()) {
                    cand = Some((t, j));
                }
            }
            if let Some((i, j)) = cand {
                move_to(&mut a, t, i, j);
                continue;
            }
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t].iter_mut().zip(&tail[0]).skip(t) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn min_abs_entry(
    a: &[Vec<BigInt>],
    _t: usize,
    rows: core::ops::Range<usize>,
    cols: core::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if !a[i][j].is_zero() && best.is_none_or(|(x, y)| a[i][j].abs() < a[x][y].abs()) {
                best = Some((i, j));
                if a[i][j].abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn move_to(a: &mut [Vec<BigInt>], t: usize, i: usize, j: usize) {
    a.swap(t, i);
    if j != t {
        for row in a.iter_mut() {
            row.swap(t, j);
        }
    }
}

/// A finitely generated abelian group `Z^rank + Z/t_1 + ... + Z/t_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianInvariants {
    pub rank: usize,
    /// Each entry at least 2, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants { rank, torsion: Vec::new() }
    }

    /// Normalizes arbitrary positive cyclic orders into the divisibility chain;
    /// entries equal to 1 are dropped.
    pub fn from_parts(rank: usize, cyclic: Vec<BigInt>) -> Self {
        let mut t: Vec<BigInt> = cyclic.into_iter().map(|x| x.abs()).filter(|x| !x.is_one()).collect();
        // zero orders are free summands
        let zeros = t.iter().filter(|x| x.is_zero()).count();
        t.retain(|x| !x.is_zero());
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let g = t[i].gcd(&t[j]);
                let l = &t[i] / &g * &t[j];
                t[i] = g;
                t[j] = l;
            }
        }
        t.retain(|x| !x.is_one());
        AbelianInvariants { rank: rank + zeros, torsion: t }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        AbelianInvariants::from_parts(self.rank + other.rank, t)
    }

    /// Checks the divisibility chain.
    pub fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|t| *t >= BigInt::from(2))
            && self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        if self.rank > 0 {
            parts.push(alloc::format!("Z^{}", self.rank));
        }
        for t in &self.torsion {
            parts.push(alloc::format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn smith_small() {
        let a = m(3, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let f: Vec<i64> = a.invariant_factors().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(f, vec![2, 6, 12]);
    }

    #[test]
    fn cokernel_of_two() {
        let c = m(1, &[&[2]]).cokernel();
        assert_eq!(c, AbelianInvariants { rank: 0, torsion: vec![BigInt::from(2)] });
        let z = IntMatrix::zeros(3, 0).cokernel();
        assert_eq!(z, AbelianInvariants::free(3));
    }

    #[test]
    fn kernel_coordinates_invert_basis() {
        let a = m(4, &[&[1, 2, 3, 4], &[2, 4, 6, 9]]);
        let k = a.kernel();
        assert_eq!(k.dim(), 2);
        assert!(a.mul(&k.basis).unwrap().is_zero());
        assert_eq!(k.coords.mul(&k.basis).unwrap(), IntMatrix::identity(2));
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(IntMatrix::zeros(0, 3).kernel().dim(), 3);
        assert_eq!(IntMatrix::zeros(2, 0).kernel().dim(), 0);
        assert!(IntMatrix::zeros(0, 0).invariant_factors().is_empty());
    }

    #[test]
    fn invariants_normalize() {
        let a = AbelianInvariants::from_parts(1, vec![BigInt::from(4), BigInt::from(6), BigInt::from(1)]);
        assert_eq!(a.torsion, vec![BigInt::from(2), BigInt::from(12)]);
        assert!(a.is_canonical());
        assert_eq!(alloc::format!("{a}"), "Z^1 + Z/2 + Z/12");
    }
}
