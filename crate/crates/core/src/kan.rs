//! Kan's loop group of a reduced simplicial set, its lower central series
//! tower and layers.
//!
//! Degree `q` of `GX` is free on `τx` for the `(q+1)`-simplices `x` outside
//! the image of `s_0`, with
//!
//! ```text
//! d_0 τx = τ(d_1 x) τ(d_0 x)^-1,   d_i τx = τ(d_{i+1} x)  (i >= 1),
//! s_i τx = τ(s_{i+1} x),           τ(s_0 y) = 1.
//! ```
//!
//! Homotopy degrees are reported at the level of `GX`: `π_s` of a layer is
//! `π_s` of the simplicial group, with no delooping shift.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hall::HallSet;
use crate::lie::lie_of_map;
use crate::linear::{moore_homology, reduced_linearization, AbelianDegree, SimplicialAbelianGroup};
use crate::matrix::{AbelianInvariants, IntMatrix};
use crate::nilpotent::{FreeNilpotentGroup, FreeWord, NilpotentElement, NilpotentHom};
use crate::quotient::{quotient_by_elements, PolycyclicQuotient};
use crate::simplicial::{Simplex, SimplexRef, SimplicialSet, ViolationKind};

/// One degree of a loop group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopDegree {
    /// The `(q+1)`-simplices `x` with `τx` a free generator, in order.
    pub generators: Vec<Simplex>,
    /// `faces[i][g]`: `d_i` of generator `g` as a word in degree `q - 1`.
    pub faces: Vec<Vec<FreeWord>>,
    /// `degeneracies[i][g]`: `s_i` of generator `g` in degree `q + 1`.
    pub degeneracies: Vec<Vec<FreeWord>>,
}

/// Degrees `0..=top` of Kan's loop group.
#[derive(Clone, Debug)]
pub struct LoopGroup {
    space: SimplicialSet,
    degrees: Vec<LoopDegree>,
}

fn check_space(x: &SimplicialSet) -> Result<()> {
    match x.validate().violations.first() {
        None => Ok(()),
        Some(v) if v.kind == ViolationKind::Reducedness => Err(Error::NotReduced),
        Some(v) => Err(Error::InvalidSpace(v.to_string())),
    }
}

/// `GX` in degrees `0..=top`.
pub fn loop_group(x: &SimplicialSet, top: usize, caps: &Caps) -> Result<LoopGroup> {
    caps.check_degree(top)?;
    check_space(x)?;
    let gens: Vec<Vec<Simplex>> =
        (0..=top + 1).map(|q| x.simplices(q + 1).into_iter().filter(|s| !s.in_image_of_s0()).collect()).collect();
    let index: Vec<BTreeMap<&Simplex, usize>> =
        gens.iter().map(|g| g.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let tau = |q: usize, y: &Simplex| -> FreeWord {
        if y.in_image_of_s0() {
            FreeWord::identity()
        } else {
            FreeWord::generator(index[q][y])
        }
    };
    let mut degrees = Vec::with_capacity(top + 1);
    for q in 0..=top {
        let mut faces = Vec::new();
        if q >= 1 {
            for i in 0..=q {
                faces.push(
                    gens[q]
                        .iter()
                        .map(|s| {
                            if i == 0 {
                                tau(q - 1, &x.face(s, 1)).concat(&tau(q - 1, &x.face(s, 0)).inverse())
                            } else {
                                tau(q - 1, &x.face(s, i + 1))
                            }
                        })
                        .collect(),
                );
            }
        }
        let mut degeneracies = Vec::new();
        if q < top {
            for i in 0..=q {
                degeneracies.push(gens[q].iter().map(|s| tau(q + 1, &x.degeneracy(s, i + 1))).collect());
            }
        }
        degrees.push(LoopDegree { generators: gens[q].clone(), faces, degeneracies });
    }
    Ok(LoopGroup { space: x.clone(), degrees })
}

impl LoopGroup {
    pub fn space(&self) -> &SimplicialSet {
        &self.space
    }

    pub fn top(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, q: usize) -> &LoopDegree {
        &self.degrees[q]
    }

    pub fn generator_count(&self, q: usize) -> usize {
        self.degrees[q].generators.len()
    }

    pub fn generator_refs(&self, q: usize) -> Vec<SimplexRef> {
        self.degrees[q].generators.iter().map(|s| self.space.to_ref(s)).collect()
    }

    fn face(&self, q: usize, i: usize, w: &FreeWord) -> FreeWord {
        w.substitute(&self.degrees[q].faces[i])
    }

    fn degeneracy(&self, q: usize, i: usize, w: &FreeWord) -> FreeWord {
        w.substitute(&self.degrees[q].degeneracies[i])
    }

    /// Checks all simplicial identities on every generator, after free
    /// reduction.
    pub fn check_identities(&self) -> core::result::Result<(), String> {
        let top = self.top();
        for q in 0..=top {
            for g in 0..self.generator_count(q) {
                let x = FreeWord::generator(g);
                let fail = |rule: String| format!("degree {q}, generator {g}: {rule}");
                if q >= 2 {
                    for j in 1..=q {
                        for i in 0..j {
                            let l = self.face(q - 1, i, &self.face(q, j, &x));
                            let r = self.face(q - 1, j - 1, &self.face(q, i, &x));
                            if l != r {
                                return Err(fail(format!("d_{i} d_{j} = d_{} d_{i}", j - 1)));
                            }
                        }
                    }
                }
                if q < top {
                    for j in 0..=q {
                        let sx = self.degeneracy(q, j, &x);
                        for i in 0..=q + 1 {
                            let l = self.face(q + 1, i, &sx);
                            let r = if i == j || i == j + 1 {
                                x.clone()
                            } else if i < j {
                                self.degeneracy(q - 1, j - 1, &self.face(q, i, &x))
                            } else {
                                self.degeneracy(q - 1, j, &self.face(q, i - 1, &x))
                            };
                            if l != r {
                                return Err(fail(format!("d_{i} s_{j}")));
                            }
                        }
                    }
                }
                if q + 1 < top {
                    for j in 0..=q {
                        for i in 0..=j {
                            let l = self.degeneracy(q + 1, i, &self.degeneracy(q, j, &x));
                            let r = self.degeneracy(q + 1, j + 1, &self.degeneracy(q, i, &x));
                            if l != r {
                                return Err(fail(format!("s_{i} s_{j} = s_{} s_{i}", j + 1)));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Degreewise `GX / Γ_{n+1} GX` with induced structure maps.
#[derive(Clone, Debug)]
pub struct SimplicialGroupTower {
    class: usize,
    groups: Vec<Arc<FreeNilpotentGroup>>,
    faces: Vec<Vec<NilpotentHom>>,
    degeneracies: Vec<Vec<NilpotentHom>>,
}

/// Class-`n` stage of the lower central series tower of `G`.
pub fn tower_stage(g: &LoopGroup, n: usize, caps: &Caps) -> Result<SimplicialGroupTower> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "class", value: 0, max: caps.max_class });
    }
    caps.check_class(n)?;
    caps.check_degree(g.top())?;
    let mut cache: BTreeMap<usize, Arc<FreeNilpotentGroup>> = BTreeMap::new();
    let mut groups = Vec::new();
    for q in 0..=g.top() {
        let k = g.generator_count(q);
        let grp = match cache.get(&k) {
            Some(x) => x.clone(),
            None => {
                let x = FreeNilpotentGroup::with_caps(k, n, caps)?;
                cache.insert(k, x.clone());
                x
            }
        };
        groups.push(grp);
    }
    let mut faces = Vec::new();
    let mut degeneracies = Vec::new();
    for q in 0..=g.top() {
        let d = g.degree(q);
        let f = if q == 0 {
            Vec::new()
        } else {
            d.faces
                .iter()
                .map(|w| NilpotentHom::from_words(groups[q].clone(), groups[q - 1].clone(), w))
                .collect::<Result<_>>()?
        };
        let s = d
            .degeneracies
            .iter()
            .map(|w| NilpotentHom::from_words(groups[q].clone(), groups[q + 1].clone(), w))
            .collect::<Result<_>>()?;
        faces.push(f);
        degeneracies.push(s);
    }
    Ok(SimplicialGroupTower { class: n, groups, faces, degeneracies })
}

impl SimplicialGroupTower {
    pub fn class(&self) -> usize {
        self.class
    }

    pub fn top(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn group(&self, q: usize) -> &Arc<FreeNilpotentGroup> {
        &self.groups[q]
    }

    pub fn face(&self, q: usize, i: usize) -> &NilpotentHom {
        &self.faces[q][i]
    }

    pub fn degeneracy(&self, q: usize, i: usize) -> &NilpotentHom {
        &self.degeneracies[q][i]
    }

    /// Checks the simplicial identities on generators in normal form.
    pub fn check_identities(&self) -> core::result::Result<(), String> {
        let top = self.top();
        let err = |e: Error| e.to_string();
        for q in 0..=top {
            for g in 0..self.groups[q].generators() {
                let x = self.groups[q].letter(g);
                let fail = |rule: String| format!("class {}, degree {q}, generator {g}: {rule}", self.class);
                if q >= 2 {
                    for j in 1..=q {
                        for i in 0..j {
                            let l = self.faces[q - 1][i].apply(&self.faces[q][j].apply(&x).map_err(err)?).map_err(err)?;
                            let r = self.faces[q - 1][j - 1].apply(&self.faces[q][i].apply(&x).map_err(err)?).map_err(err)?;
                            if l != r {
                                return Err(fail(format!("d_{i} d_{j}")));
                            }
                        }
                    }
                }
                if q < top {
                    for j in 0..=q {
                        let sx = self.degeneracies[q][j].apply(&x).map_err(err)?;
                        for i in 0..=q + 1 {
                            let l = self.faces[q + 1][i].apply(&sx).map_err(err)?;
                            let r = if i == j || i == j + 1 {
                                x.clone()
                            } else if i < j {
                                let y = self.faces[q][i].apply(&x).map_err(err)?;
                                self.degeneracies[q - 1][j - 1].apply(&y).map_err(err)?
                            } else {
                                let y = self.faces[q][i - 1].apply(&x).map_err(err)?;
                                self.degeneracies[q - 1][j].apply(&y).map_err(err)?
                            };
                            if l != r {
                                return Err(fail(format!("d_{i} s_{j}")));
                            }
                        }
                    }
                }
                if q + 1 < top {
                    for j in 0..=q {
                        for i in 0..=j {
                            let a = self.degeneracies[q][j].apply(&x).map_err(err)?;
                            let l = self.degeneracies[q + 1][i].apply(&a).map_err(err)?;
                            let b = self.degeneracies[q][i].apply(&x).map_err(err)?;
                            let r = self.degeneracies[q + 1][j + 1].apply(&b).map_err(err)?;
                            if l != r {
                                return Err(fail(format!("s_{i} s_{j}")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that truncation onto a lower-class stage of the same loop
    /// group commutes with all structure maps.
    pub fn check_projection(&self, lower: &SimplicialGroupTower) -> core::result::Result<(), String> {
        let err = |e: Error| e.to_string();
        if lower.class > self.class || lower.top() != self.top() {
            return Err("stages do not match".into());
        }
        for q in 0..=self.top() {
            let maps = self.faces[q].iter().zip(&lower.faces[q]).map(|(a, b)| ("d", a, b));
            let degs = self.degeneracies[q].iter().zip(&lower.degeneracies[q]).map(|(a, b)| ("s", a, b));
            for (i, (kind, up, down)) in maps.chain(degs).enumerate() {
                for g in 0..self.groups[q].generators() {
                    let x = self.groups[q].letter(g);
                    let via_up = up.apply(&x).map_err(err)?.truncate(down.target()).map_err(err)?;
                    let via_down = down.apply(&lower.groups[q].letter(g)).map_err(err)?;
                    if via_up != via_down {
                        return Err(format!("degree {q}: {kind} map {i} does not commute with truncation"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Degreewise `Γ_w / Γ_{w+1}` in Hall coordinates, `w <= n`, with the
    /// matrices induced by the structure maps.
    pub fn layer_group(&self, w: usize) -> Result<SimplicialAbelianGroup> {
        if w == 0 || w > self.class {
            return Err(Error::OutOfRange { what: "weight", value: w, max: self.class });
        }
        let matrix = |h: &NilpotentHom| -> Result<IntMatrix> {
            let src = h.source().hall_set().weight_range(w);
            let dst = h.target().hall_set().weight_range(w);
            let cols = src
                .map(|id| {
                    h.letter_image(id)
                        .layer(w)
                        .ok_or_else(|| Error::InvariantBreach("layer not preserved".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(IntMatrix::from_fn(dst.len(), cols.len(), |r, c| cols[c].coeffs()[r].clone()))
        };
        let mut degrees = Vec::new();
        for q in 0..=self.top() {
            degrees.push(AbelianDegree {
                rank: self.groups[q].hall_set().weight_range(w).len(),
                torsion: Vec::new(),
                faces: self.faces[q].iter().map(matrix).collect::<Result<_>>()?,
                degeneracies: self.degeneracies[q].iter().map(matrix).collect::<Result<_>>()?,
            });
        }
        SimplicialAbelianGroup::new(degrees)
    }

    /// Relators `d_0(y) d_1(y)^-1` for the degree-1 generators `y`.
    pub fn pi0_relators(&self) -> Result<Vec<NilpotentElement>> {
        if self.top() < 1 {
            return Err(Error::OutOfRange { what: "top degree", value: self.top(), max: 1 });
        }
        (0..self.groups[1].generators())
            .map(|g| {
                let y = self.groups[1].letter(g);
                self.faces[1][0].apply(&y)?.multiply(&self.faces[1][1].apply(&y)?.inverse()?)
            })
            .collect()
    }
}

/// `π_0` of a tower stage: the degree-0 group modulo `d_0 = d_1`.
pub fn pi0(t: &SimplicialGroupTower) -> Result<PolycyclicQuotient> {
    quotient_by_elements(t.group(0), &t.pi0_relators()?)
}

/// `Lie_n(Z̃X)` as a simplicial abelian group in degrees `0..=top`, in the
/// degree convention of `GX`.
pub fn lie_layer(x: &SimplicialSet, n: usize, top: usize, caps: &Caps) -> Result<SimplicialAbelianGroup> {
    caps.check_class(n)?;
    caps.check_degree(top)?;
    let a = reduced_linearization(x, top + 1)?.loop_shift()?;
    let mut ranks = Vec::new();
    for q in 0..=top {
        let r = HallSet::new(a.rank(q), n).weight_range(n).len();
        caps.check_hall_rank(r)?;
        ranks.push(r);
    }
    a.map_matrices(|q, _| ranks[q], |m| lie_of_map(m, n))
}

/// Both presentations of `Γ_n GX / Γ_{n+1} GX` and the comparison between
/// them.
#[derive(Clone, Debug)]
pub struct LayerObject {
    pub class: usize,
    /// From the class-`n` tower stage.
    pub group_side: SimplicialAbelianGroup,
    /// `Lie_n` applied degreewise to the linearization.
    pub lie_side: SimplicialAbelianGroup,
    /// Degreewise maps from the group side to the Lie side.
    pub comparison: Vec<IntMatrix>,
}

impl LayerObject {
    /// Checks equal ranks, invertibility of the comparison and its
    /// commutation with every face and degeneracy.
    pub fn check(&self) -> core::result::Result<(), String> {
        let a = &self.group_side;
        let b = &self.lie_side;
        if a.top() != b.top() || self.comparison.len() != a.top() + 1 {
            return Err("degree ranges differ".into());
        }
        for q in 0..=a.top() {
            let c = &self.comparison[q];
            if a.rank(q) != b.rank(q) || c.rows() != b.rank(q) || c.cols() != a.rank(q) {
                return Err(format!("degree {q}: ranks differ"));
            }
            if !c.invariant_factors().iter().all(One::is_one) || c.invariant_factors().len() != c.rows() {
                return Err(format!("degree {q}: comparison is not invertible"));
            }
            let commutes = |fa: &IntMatrix, fb: &IntMatrix, c2: &IntMatrix| -> bool {
                matches!((c2.mul(fa), fb.mul(c)), (Ok(x), Ok(y)) if x == y)
            };
            if q >= 1 {
                for i in 0..=q {
                    if !commutes(a.face(q, i), b.face(q, i), &self.comparison[q - 1]) {
                        return Err(format!("degree {q}: d_{i} does not commute"));
                    }
                }
            }
            if q < a.top() {
                for i in 0..=q {
                    if !commutes(a.degeneracy(q, i), b.degeneracy(q, i), &self.comparison[q + 1]) {
                        return Err(format!("degree {q}: s_{i} does not commute"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The layer `Γ_n/Γ_{n+1}` of `G` in degrees `0..=top(G)`.
pub fn layer(g: &LoopGroup, n: usize, caps: &Caps) -> Result<LayerObject> {
    let tower = tower_stage(g, n, caps)?;
    let group_side = tower.layer_group(n)?;
    let x = g.space();
    let lie_side = lie_layer(x, n, g.top(), caps)?;
    let mut comparison = Vec::new();
    for q in 0..=g.top() {
        // Basis of the loop shift in degree q, against the generators of G_q.
        let basis: Vec<Simplex> =
            x.simplices(q + 1).into_iter().filter(|s| s.cell.dim > 0 && !s.in_image_of_s0()).collect();
        let gens = &g.degree(q).generators;
        let p = IntMatrix::from_fn(basis.len(), gens.len(), |r, c| {
            if basis[r] == gens[c] {
                BigInt::one()
            } else {
                BigInt::from(0)
            }
        });
        comparison.push(lie_of_map(&p, n)?);
    }
    Ok(LayerObject { class: n, group_side, lie_side, comparison })
}

/// `π_s` of the layer `Γ_n GX / Γ_{n+1} GX`, computed on `Lie_n(Z̃X)`.
pub fn layer_homotopy(x: &SimplicialSet, n: usize, s: usize, caps: &Caps) -> Result<AbelianInvariants> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "class", value: 0, max: caps.max_class });
    }
    let a = lie_layer(x, n, s + 1, caps)?;
    moore_homology(&a, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{point, sphere, wedge_of_circles};

    #[test]
    fn generator_counts() {
        let caps = Caps::default();
        let g = loop_group(&sphere(2).unwrap(), 4, &caps).unwrap();
        assert_eq!((0..=4).map(|q| g.generator_count(q)).collect::<Vec<_>>(), [0, 1, 2, 3, 4]);
        let w = loop_group(&wedge_of_circles(3), 2, &caps).unwrap();
        assert_eq!(w.generator_count(0), 3);
        let p = loop_group(&point(), 3, &caps).unwrap();
        assert!((0..=3).all(|q| p.generator_count(q) == 0));
    }

    #[test]
    fn identities_hold() {
        let caps = Caps::default();
        for x in [sphere(1).unwrap(), sphere(2).unwrap(), sphere(3).unwrap(), wedge_of_circles(2)] {
            let g = loop_group(&x, 4, &caps).unwrap();
            g.check_identities().unwrap();
        }
    }

    #[test]
    fn tower_identities_and_layers() {
        let caps = Caps::default();
        let g = loop_group(&sphere(2).unwrap(), 3, &caps).unwrap();
        let t2 = tower_stage(&g, 2, &caps).unwrap();
        t2.check_identities().unwrap();
        let t1 = tower_stage(&g, 1, &caps).unwrap();
        t2.check_projection(&t1).unwrap();
        layer(&g, 2, &caps).unwrap().check().unwrap();
    }

    #[test]
    fn wedge_pi0_is_free_nilpotent() {
        let caps = Caps::default();
        let g = loop_group(&wedge_of_circles(2), 1, &caps).unwrap();
        let q = pi0(&tower_stage(&g, 2, &caps).unwrap()).unwrap();
        assert_eq!(q.layers(), &[AbelianInvariants::free(2), AbelianInvariants::free(1)]);
    }

    #[test]
    fn sphere_layer_homotopy_at_class_one() {
        let caps = Caps::default();
        let s2 = sphere(2).unwrap();
        assert_eq!(layer_homotopy(&s2, 1, 1, &caps).unwrap(), AbelianInvariants::free(1));
        assert!(layer_homotopy(&s2, 1, 0, &caps).unwrap().is_trivial());
        assert!(layer_homotopy(&s2, 1, 2, &caps).unwrap().is_trivial());
    }
}
