//! Simplicial abelian groups truncated at a top degree, the reduced
//! linearization of a simplicial set, and homotopy through the Moore complex.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{AbelianInvariants, IntMatrix};
use crate::simplicial::{Simplex, SimplicialSet};

/// One degree of a [`SimplicialAbelianGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianDegree {
    pub rank: usize,
    /// Cyclic orders of extra torsion generators (empty for free degrees).
    pub torsion: Vec<BigInt>,
    /// `d_0 .. d_q` into degree `q - 1`; empty in degree 0.
    pub faces: Vec<IntMatrix>,
    /// `s_0 .. s_q` into degree `q + 1`; empty in the top degree.
    pub degeneracies: Vec<IntMatrix>,
}

/// Degrees `0..=top` of a simplicial abelian group, maps as integer matrices
/// on the chosen generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialAbelianGroup {
    degrees: Vec<AbelianDegree>,
}

impl SimplicialAbelianGroup {
    pub fn new(degrees: Vec<AbelianDegree>) -> Result<Self> {
        for (q, d) in degrees.iter().enumerate() {
            let faces_expected = if q == 0 { 0 } else { q + 1 };
            if d.faces.len() != faces_expected {
                return Err(Error::DimensionMismatch { expected: faces_expected, found: d.faces.len() });
            }
            for f in &d.faces {
                let below = degrees[q - 1].rank;
                if f.rows() != below || f.cols() != d.rank {
                    return Err(Error::DimensionMismatch { expected: below * d.rank, found: f.rows() * f.cols() });
                }
            }
            let degs_expected = if q + 1 == degrees.len() { 0 } else { q + 1 };
            if d.degeneracies.len() != degs_expected {
                return Err(Error::DimensionMismatch { expected: degs_expected, found: d.degeneracies.len() });
            }
            for s in &d.degeneracies {
                let above = degrees[q + 1].rank;
                if s.rows() != above || s.cols() != d.rank {
                    return Err(Error::DimensionMismatch { expected: above * d.rank, found: s.rows() * s.cols() });
                }
            }
        }
        Ok(SimplicialAbelianGroup { degrees })
    }

    pub fn top(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, q: usize) -> &AbelianDegree {
        &self.degrees[q]
    }

    pub fn rank(&self, q: usize) -> usize {
        self.degrees[q].rank
    }

    pub fn face(&self, q: usize, i: usize) -> &IntMatrix {
        &self.degrees[q].faces[i]
    }

    pub fn degeneracy(&self, q: usize, i: usize) -> &IntMatrix {
        &self.degrees[q].degeneracies[i]
    }

    /// Restricts to degrees `0..=top`.
    pub fn truncate(&self, top: usize) -> SimplicialAbelianGroup {
        let mut degrees: Vec<AbelianDegree> = self.degrees[..=top.min(self.top())].to_vec();
        if let Some(last) = degrees.last_mut() {
            last.degeneracies.clear();
        }
        SimplicialAbelianGroup { degrees }
    }

    /// Applies `f` to every structure matrix, keeping ranks from `rank_of`.
    pub fn map_matrices(
        &self,
        mut rank_of: impl FnMut(usize, &AbelianDegree) -> usize,
        mut f: impl FnMut(&IntMatrix) -> Result<IntMatrix>,
    ) -> Result<SimplicialAbelianGroup> {
        let mut degrees = Vec::with_capacity(self.degrees.len());
        for (q, d) in self.degrees.iter().enumerate() {
            degrees.push(AbelianDegree {
                rank: rank_of(q, d),
                torsion: Vec::new(),
                faces: d.faces.iter().map(&mut f).collect::<Result<_>>()?,
                degeneracies: d.degeneracies.iter().map(&mut f).collect::<Result<_>>()?,
            });
        }
        SimplicialAbelianGroup::new(degrees)
    }

    /// Checks every simplicial identity among the stored matrices.
    pub fn check_identities(&self) -> core::result::Result<(), alloc::string::String> {
        let top = self.top();
        for q in 0..=top {
            // d_i d_j = d_{j-1} d_i
            if q >= 2 {
                for j in 1..=q {
                    for i in 0..j {
                        let l = self.face(q - 1, i).mul(self.face(q, j)).map_err(|e| format!("{e}"))?;
                        let r = self.face(q - 1, j - 1).mul(self.face(q, i)).map_err(|e| format!("{e}"))?;
                        if l != r {
                            return Err(format!("degree {q}: d_{i} d_{j} != d_{} d_{i}", j - 1));
                        }
                    }
                }
            }
            if q < top {
                let id = IntMatrix::identity(self.rank(q));
                for j in 0..=q {
                    let s = self.degeneracy(q, j);
                    for i in 0..=q + 1 {
                        let l = self.face(q + 1, i).mul(s).map_err(|e| format!("{e}"))?;
                        let r = if i < j {
                            self.degeneracy(q - 1, j - 1).mul(self.face(q, i))
                        } else if i == j || i == j + 1 {
                            Ok(id.clone())
                        } else {
                            self.degeneracy(q - 1, j).mul(self.face(q, i - 1))
                        }
                        .map_err(|e| format!("{e}"))?;
                        if l != r {
                            return Err(format!("degree {q}: d_{i} s_{j} identity fails"));
                        }
                    }
                    if q + 1 < top {
                        for i in 0..=j {
                            let l = self.degeneracy(q + 1, i).mul(s).map_err(|e| format!("{e}"))?;
                            let r = self
                                .degeneracy(q + 1, j + 1)
                                .mul(self.degeneracy(q, i))
                                .map_err(|e| format!("{e}"))?;
                            if l != r {
                                return Err(format!("degree {q}: s_{i} s_{j} != s_{} s_{i}", j + 1));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Loop-group shift: degree `q` becomes `A_{q+1} / s_0 A_q` with
    /// `d_0 -> d_1 - d_0`, `d_i -> d_{i+1}`, `s_i -> s_{i+1}`.
    ///
    /// Requires every `s_0` to send generators to distinct generators, which
    /// holds for linearizations of simplicial sets. The result has degrees
    /// `0..top`.
    pub fn loop_shift(&self) -> Result<SimplicialAbelianGroup> {
        let top = self.top();
        if top == 0 {
            return Err(Error::OutOfRange { what: "top degree", value: 0, max: 0 });
        }
        // kept[q] = generators of A_{q+1} outside the image of s_0 : A_q -> A_{q+1}
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for q in 0..top {
            let s0 = self.degeneracy(q, 0);
            let mut hit = vec![false; s0.rows()];
            for c in 0..s0.cols() {
                let nz: Vec<usize> = (0..s0.rows()).filter(|&r| !s0[(r, c)].is_zero()).collect();
                if nz.len() != 1 || !s0[(nz[0], c)].is_one() || hit[nz[0]] {
                    return Err(Error::InvariantBreach("s_0 is not a generator injection".into()));
                }
                hit[nz[0]] = true;
            }
            kept.push((0..s0.rows()).filter(|&r| !hit[r]).collect());
        }
        let restrict = |m: &IntMatrix, rows: &[usize], cols: &[usize]| {
            IntMatrix::from_fn(rows.len(), cols.len(), |r, c| m[(rows[r], cols[c])].clone())
        };
        let mut degrees = Vec::new();
        for q in 0..top {
            let src = &kept[q];
            let mut faces = Vec::new();
            if q >= 1 {
                let dst = &kept[q - 1];
                let d0 = self.face(q + 1, 1).add(&self.face(q + 1, 0).scale(&BigInt::from(-1)))?;
                faces.push(restrict(&d0, dst, src));
                for i in 1..=q {
                    faces.push(restrict(self.face(q + 1, i + 1), dst, src));
                }
            }
            let mut degeneracies = Vec::new();
            if q + 1 < top {
                for i in 0..=q {
                    degeneracies.push(restrict(self.degeneracy(q + 1, i + 1), &kept[q + 1], src));
                }
            }
            degrees.push(AbelianDegree { rank: src.len(), torsion: Vec::new(), faces, degeneracies });
        }
        SimplicialAbelianGroup::new(degrees)
    }
}

/// `Z X / Z *` in degrees `0..=top`: generators are all simplices except
/// degeneracies of the basepoint, in [`SimplicialSet::simplices`] order.
pub fn reduced_linearization(x: &SimplicialSet, top: usize) -> Result<SimplicialAbelianGroup> {
    let report = x.validate();
    if let Some(v) = report.violations.first() {
        return Err(match v.kind {
            crate::simplicial::ViolationKind::Reducedness => Error::NotReduced,
            _ => Error::InvalidSpace(v.to_string()),
        });
    }
    let bases: Vec<Vec<Simplex>> = (0..=top + 1)
        .map(|q| x.simplices(q).into_iter().filter(|s| s.cell.dim > 0).collect())
        .collect();
    let position = |q: usize, s: &Simplex| bases[q].iter().position(|t| t == s);
    let mut degrees = Vec::new();
    for q in 0..=top {
        let rank = bases[q].len();
        let mut faces = Vec::new();
        if q >= 1 {
            for i in 0..=q {
                let mut m = IntMatrix::zeros(bases[q - 1].len(), rank);
                for (c, s) in bases[q].iter().enumerate() {
                    if let Some(r) = position(q - 1, &x.face(s, i)) {
                        m[(r, c)] = BigInt::one();
                    }
                }
                faces.push(m);
            }
        }
        let mut degeneracies = Vec::new();
        if q < top {
            for i in 0..=q {
                let mut m = IntMatrix::zeros(bases[q + 1].len(), rank);
                for (c, s) in bases[q].iter().enumerate() {
                    if let Some(r) = position(q + 1, &x.degeneracy(s, i)) {
                        m[(r, c)] = BigInt::one();
                    }
                }
                degeneracies.push(m);
            }
        }
        degrees.push(AbelianDegree { rank, torsion: Vec::new(), faces, degeneracies });
    }
    SimplicialAbelianGroup::new(degrees)
}

/// The Moore complex `N_q = ker d_1 ∩ ... ∩ ker d_q` with differential `d_0`,
/// in degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct MooreComplex {
    /// Basis of `N_q` inside `A_q`, as columns.
    pub bases: Vec<IntMatrix>,
    /// `differentials[q] : N_q -> N_{q-1}` in the chosen bases (`q >= 1`;
    /// index 0 holds the empty map out of `N_0`).
    pub differentials: Vec<IntMatrix>,
}

impl MooreComplex {
    pub fn new(a: &SimplicialAbelianGroup, top: usize) -> Result<Self> {
        if top > a.top() {
            return Err(Error::OutOfRange { what: "Moore complex degree", value: top, max: a.top() });
        }
        for q in 0..=top {
            if !a.degree(q).torsion.is_empty() {
                return Err(Error::TorsionUnsupported { degree: q });
            }
        }
        let mut bases = Vec::new();
        let mut coords = Vec::new();
        for q in 0..=top {
            if q == 0 {
                bases.push(IntMatrix::identity(a.rank(0)));
                coords.push(IntMatrix::identity(a.rank(0)));
                continue;
            }
            let faces: Vec<IntMatrix> = (1..=q).map(|i| a.face(q, i).clone()).collect();
            let k = IntMatrix::vstack(&faces, a.rank(q))?.kernel();
            bases.push(k.basis);
            coords.push(k.coords);
        }
        let mut differentials = vec![IntMatrix::zeros(0, bases[0].cols())];
        for q in 1..=top {
            let image = a.face(q, 0).mul(&bases[q])?;
            let d = coords[q - 1].mul(&image)?;
            // d_0 must land in N_{q-1}
            if bases[q - 1].mul(&d)? != image {
                return Err(Error::InvariantBreach(format!("d_0 leaves the Moore complex in degree {q}")));
            }
            differentials.push(d);
        }
        Ok(MooreComplex { bases, differentials })
    }

    pub fn dim(&self, q: usize) -> usize {
        self.bases[q].cols()
    }

    /// `H_s` for `s + 1` within the complex.
    pub fn homology(&self, s: usize) -> AbelianInvariants {
        let outgoing = if s == 0 { 0 } else { self.differentials[s].rank() };
        let incoming = &self.differentials[s + 1];
        let factors = incoming.invariant_factors();
        let rank = self.dim(s) - outgoing - factors.len();
        AbelianInvariants::from_parts(rank, factors)
    }
}

/// `pi_s A` as the homology of the Moore complex. Needs degrees up to `s + 1`.
pub fn moore_homology(a: &SimplicialAbelianGroup, s: usize) -> Result<AbelianInvariants> {
    if s + 1 > a.top() {
        return Err(Error::OutOfRange { what: "homotopy degree", value: s, max: a.top().saturating_sub(1) });
    }
    Ok(MooreComplex::new(a, s + 1)?.homology(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{point, sphere, wedge_of_circles};

    #[test]
    fn point_is_zero() {
        let a = reduced_linearization(&point(), 3).unwrap();
        for q in 0..=3 {
            assert_eq!(a.rank(q), 0);
        }
        for s in 0..3 {
            assert!(moore_homology(&a, s).unwrap().is_trivial());
        }
    }

    #[test]
    fn circle_ranks() {
        let a = reduced_linearization(&sphere(1).unwrap(), 2).unwrap();
        assert_eq!((a.rank(0), a.rank(1), a.rank(2)), (0, 1, 2));
        assert!(moore_homology(&a, 0).unwrap().is_trivial());
        assert_eq!(moore_homology(&a, 1).unwrap(), AbelianInvariants::free(1));
    }

    #[test]
    fn wedge_degree_two_rank() {
        let a = reduced_linearization(&wedge_of_circles(2), 2).unwrap();
        assert_eq!(a.rank(2), 4);
    }

    #[test]
    fn identities_hold() {
        for x in [sphere(1).unwrap(), sphere(2).unwrap(), wedge_of_circles(2)] {
            reduced_linearization(&x, 4).unwrap().check_identities().unwrap();
        }
    }

    #[test]
    fn loop_shift_ranks() {
        // generators of the loop group of S^2 in degree q number q
        let a = reduced_linearization(&sphere(2).unwrap(), 5).unwrap().loop_shift().unwrap();
        assert_eq!((0..=4).map(|q| a.rank(q)).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        a.check_identities().unwrap();
    }

    #[test]
    fn homotopy_needs_degree() {
        let a = reduced_linearization(&sphere(2).unwrap(), 2).unwrap();
        assert!(moore_homology(&a, 2).is_err());
    }
}
