//! Free nilpotent groups `F_k / Γ_{n+1} F_k` in Hall-letter normal form.
//!
//! Letters are the Hall trees of weight `<= n`, with `c_{[u,v]} = [c_u, c_v]`
//! and `[x, y] = x^-1 y^-1 x y`. Every element has a unique normal form
//! `c_1^{e_1} c_2^{e_2} ...` in increasing letter order. Multiplication is
//! collection from the left using conjugation rules `c_i^-s c_j c_i^s`
//! (`i < j`, `s = ±1`), derived once per group from the Magnus
//! representation.
//!
//! Generator indices are 0-based throughout this module.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hall::{witt_rank, HallNode, HallSet, HallTree};
use crate::lie::{comb_add, Comb, LieElement, LieRing};
use crate::magnus::{word_of, Series};

fn checked(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

/// A freely reduced word: syllables `(generator, exponent)` with nonzero
/// exponents and distinct adjacent generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    syllables: Vec<(usize, i64)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(g: usize) -> Self {
        FreeWord { syllables: vec![(g, 1)] }
    }

    /// Freely reduces arbitrary syllables.
    pub fn new(syllables: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in syllables {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        FreeWord { syllables: out }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// One more than the largest generator mentioned.
    pub fn generator_bound(&self) -> usize {
        self.syllables.iter().map(|(g, _)| g + 1).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        FreeWord { syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        FreeWord::new(self.syllables.iter().chain(&other.syllables).copied())
    }

    /// Image under the free-group hom `x_g -> images[g]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = Vec::new();
        for &(g, e) in &self.syllables {
            let w = if e > 0 { images[g].clone() } else { images[g].inverse() };
            for _ in 0..e.unsigned_abs() {
                out.extend_from_slice(&w.syllables);
            }
        }
        FreeWord::new(out)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> Self {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }
}

/// Hall-letter data and conjugation rules for `F_k / Γ_{n+1} F_k`.
pub struct FreeNilpotentGroup {
    generators: usize,
    class: usize,
    set: HallSet,
    /// `(j, i) -> [c_i^-1 c_j c_i, c_i c_j c_i^-1]` for non-commuting `i < j`.
    rules: BTreeMap<(usize, usize), [Vec<i64>; 2]>,
}

impl fmt::Debug for FreeNilpotentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeNilpotentGroup(k={}, n={})", self.generators, self.class)
    }
}

impl FreeNilpotentGroup {
    /// Builds the group under the default caps.
    pub fn new(generators: usize, class: usize) -> Result<Arc<Self>> {
        Self::with_caps(generators, class, &Caps::default())
    }

    pub fn with_caps(generators: usize, class: usize, caps: &Caps) -> Result<Arc<Self>> {
        if class == 0 {
            return Err(Error::OutOfRange { what: "class", value: 0, max: usize::MAX });
        }
        let mut total = BigInt::zero();
        for w in 1..=class {
            total += witt_rank(generators, w);
        }
        let needed = usize::try_from(&total).unwrap_or(usize::MAX);
        caps.check_hall_rank(needed)?;
        let mut ring = LieRing::new(generators, class);
        let set = ring.set().clone();
        let mut group = FreeNilpotentGroup { generators, class, set, rules: BTreeMap::new() };
        group.derive_rules(&mut ring)?;
        Ok(Arc::new(group))
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn hall_set(&self) -> &HallSet {
        &self.set
    }

    /// Total number of Hall letters.
    pub fn rank(&self) -> usize {
        self.set.len()
    }

    fn key(&self) -> (usize, usize) {
        (self.generators, self.class)
    }

    fn commute(&self, i: usize, j: usize) -> bool {
        self.set.weight(i) + self.set.weight(j) > self.class
    }

    fn derive_rules(&mut self, ring: &mut LieRing) -> Result<()> {
        let (k, n) = (self.generators, self.class);
        let mut images: Vec<Series> = Vec::with_capacity(self.set.len());
        let mut inverses: Vec<Series> = Vec::with_capacity(self.set.len());
        for id in 0..self.set.len() {
            let (img, inv) = match self.set.node(id) {
                HallNode::Leaf(g) => {
                    let s = Series::generator(k, n, g);
                    let i = s.inverse()?;
                    (s, i)
                }
                HallNode::Bracket(u, v) => {
                    let (a, ai, b, bi) = (&images[u], &inverses[u], &images[v], &inverses[v]);
                    (ai.mul(bi)?.mul(a)?.mul(b)?, bi.mul(ai)?.mul(b)?.mul(a)?)
                }
            };
            images.push(img);
            inverses.push(inv);
        }
        let mut memo: BTreeMap<Vec<usize>, Comb> = BTreeMap::new();
        for j in 0..self.set.len() {
            for i in 0..j {
                if self.commute(i, j) {
                    continue;
                }
                let plus = inverses[i].mul(&images[j])?.mul(&images[i])?;
                let minus = images[i].mul(&images[j])?.mul(&inverses[i])?;
                let rule = [
                    self.peel(plus, &images, ring, &mut memo)?,
                    self.peel(minus, &images, ring, &mut memo)?,
                ];
                self.rules.insert((j, i), rule);
            }
        }
        Ok(())
    }

    /// Normal form exponents of a group element given by its Magnus image,
    /// found weight by weight: the lowest nonvanishing homogeneous part of
    /// the remaining factor is a Lie polynomial whose Hall coordinates are
    /// read off with the Dynkin map `x_{i1}..x_{iw} -> [..[x_{i1},x_{i2}],..,x_{iw}]`,
    /// which multiplies Lie polynomials of degree `w` by `w`.
    fn peel(
        &self,
        mut rest: Series,
        images: &[Series],
        ring: &mut LieRing,
        memo: &mut BTreeMap<Vec<usize>, Comb>,
    ) -> Result<Vec<i64>> {
        let k = self.generators;
        let mut exps = vec![0i64; self.set.len()];
        for w in 1..=self.class {
            let mut acc = Comb::new();
            for (index, &c) in rest.part(w).iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let word = word_of(k, w, index);
                let lie = match memo.get(&word) {
                    Some(l) => l.clone(),
                    None => {
                        let l = ring.left_normed(&word);
                        memo.insert(word, l.clone());
                        l
                    }
                };
                comb_add(&mut acc, &lie, &BigInt::from(c));
            }
            let range = self.set.weight_range(w);
            for (id, c) in acc {
                let (q, r) = (&c / w as i64, &c % w as i64);
                if !range.contains(&id) || !r.is_zero() {
                    return Err(Error::InvariantBreach(format!("Magnus peel at weight {w}")));
                }
                exps[id] = i64::try_from(q).map_err(|_| Error::Overflow)?;
            }
            for id in range {
                if exps[id] != 0 {
                    rest = images[id].pow(-exps[id])?.mul(&rest)?;
                }
            }
        }
        if !rest.is_one() {
            return Err(Error::InvariantBreach("Magnus peel left a remainder".into()));
        }
        Ok(exps)
    }

    pub fn identity(self: &Arc<Self>) -> NilpotentElement {
        NilpotentElement { group: self.clone(), exps: vec![0; self.set.len()] }
    }

    /// The Hall letter with the given id.
    pub fn letter(self: &Arc<Self>, id: usize) -> NilpotentElement {
        let mut e = self.identity();
        e.exps[id] = 1;
        e
    }

    pub fn generator(self: &Arc<Self>, g: usize) -> Result<NilpotentElement> {
        if g >= self.generators {
            return Err(Error::GeneratorOutOfRange { generator: g + 1, generators: self.generators });
        }
        Ok(self.letter(g))
    }

    pub fn element(self: &Arc<Self>, exps: Vec<i64>) -> Result<NilpotentElement> {
        if exps.len() != self.set.len() {
            return Err(Error::DimensionMismatch { expected: self.set.len(), found: exps.len() });
        }
        Ok(NilpotentElement { group: self.clone(), exps })
    }

    pub fn collect(self: &Arc<Self>, w: &FreeWord) -> Result<NilpotentElement> {
        if w.generator_bound() > self.generators {
            return Err(Error::GeneratorOutOfRange {
                generator: w.generator_bound(),
                generators: self.generators,
            });
        }
        let mut x = vec![0; self.set.len()];
        for &(g, e) in w.syllables() {
            self.push(&mut x, g, e)?;
        }
        Ok(NilpotentElement { group: self.clone(), exps: x })
    }

    /// `x <- x * c_i^s`.
    fn push(&self, x: &mut [i64], i: usize, s: i64) -> Result<()> {
        if s == 0 {
            return Ok(());
        }
        if (i + 1..x.len()).all(|l| x[l] == 0 || self.commute(i, l)) {
            x[i] = checked(x[i], s)?;
            return Ok(());
        }
        let mut tail = vec![0; x.len()];
        for l in i + 1..x.len() {
            tail[l] = core::mem::take(&mut x[l]);
        }
        x[i] = checked(x[i], s)?;
        let moved = self.conjugate(&tail, i, s)?;
        x[i + 1..].copy_from_slice(&moved[i + 1..]);
        Ok(())
    }

    /// `c_i^-s y c_i^s` for `y` supported on letters above `i`.
    fn conjugate(&self, y: &[i64], i: usize, s: i64) -> Result<Vec<i64>> {
        if s == 0 || (i + 1..y.len()).all(|l| y[l] == 0 || self.commute(i, l)) {
            return Ok(y.to_vec());
        }
        if s.abs() > 1 {
            let half = s / 2;
            let y = self.conjugate(y, i, half)?;
            return self.conjugate(&y, i, s - half);
        }
        let side = if s > 0 { 0 } else { 1 };
        let mut r = vec![0; y.len()];
        for l in i + 1..y.len() {
            if y[l] == 0 {
                continue;
            }
            if self.commute(i, l) {
                self.push(&mut r, l, y[l])?;
            } else {
                let p = self.pow(&self.rules[&(l, i)][side], y[l])?;
                self.mul_into(&mut r, &p)?;
            }
        }
        Ok(r)
    }

    fn mul_into(&self, x: &mut [i64], y: &[i64]) -> Result<()> {
        for (l, &e) in y.iter().enumerate() {
            if e != 0 {
                self.push(x, l, e)?;
            }
        }
        Ok(())
    }

    fn inv(&self, y: &[i64]) -> Result<Vec<i64>> {
        let mut z = vec![0; y.len()];
        for l in (0..y.len()).rev() {
            if y[l] != 0 {
                self.push(&mut z, l, y[l].checked_neg().ok_or(Error::Overflow)?)?;
            }
        }
        Ok(z)
    }

    fn pow(&self, y: &[i64], e: i64) -> Result<Vec<i64>> {
        let mut base = if e < 0 { self.inv(y)? } else { y.to_vec() };
        let mut e = e.unsigned_abs();
        let mut acc = vec![0; y.len()];
        while e > 0 {
            if e & 1 == 1 {
                self.mul_into(&mut acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                let b = base.clone();
                self.mul_into(&mut base, &b)?;
            }
        }
        Ok(acc)
    }
}

/// An element of a free nilpotent group in normal form.
#[derive(Clone)]
pub struct NilpotentElement {
    group: Arc<FreeNilpotentGroup>,
    exps: Vec<i64>,
}

impl PartialEq for NilpotentElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.key() == other.group.key() && self.exps == other.exps
    }
}

impl Eq for NilpotentElement {}

impl fmt::Debug for NilpotentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NilpotentElement(k={}, n={}, {:?})", self.group.generators, self.group.class, self.exps)
    }
}

impl NilpotentElement {
    pub fn group(&self) -> &Arc<FreeNilpotentGroup> {
        &self.group
    }

    pub fn generators(&self) -> usize {
        self.group.generators
    }

    pub fn class(&self) -> usize {
        self.group.class
    }

    /// Exponents indexed by Hall letter id (weights `1..=n` concatenated).
    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Nonzero `(letter, exponent)` pairs.
    pub fn terms(&self) -> Vec<(HallTree, i64)> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(id, &e)| (self.group.set.tree(id), e))
            .collect()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group.key() != other.group.key() {
            return Err(Error::GroupMismatch { left: self.group.key(), right: other.group.key() });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut x = self.exps.clone();
        self.group.mul_into(&mut x, &other.exps)?;
        Ok(NilpotentElement { group: self.group.clone(), exps: x })
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(NilpotentElement { group: self.group.clone(), exps: self.group.inv(&self.exps)? })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        Ok(NilpotentElement { group: self.group.clone(), exps: self.group.pow(&self.exps, e)? })
    }

    /// `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let g = &self.group;
        let mut x = g.inv(&self.exps)?;
        g.mul_into(&mut x, &g.inv(&other.exps)?)?;
        g.mul_into(&mut x, &self.exps)?;
        g.mul_into(&mut x, &other.exps)?;
        Ok(NilpotentElement { group: g.clone(), exps: x })
    }

    /// Image in the class-`m` quotient, `m <= n`: the normal form keeps the
    /// letters of weight `<= m`.
    pub fn truncate(&self, target: &Arc<FreeNilpotentGroup>) -> Result<Self> {
        if target.generators != self.group.generators || target.class > self.group.class {
            return Err(Error::GroupMismatch { left: self.group.key(), right: target.key() });
        }
        Ok(NilpotentElement { group: target.clone(), exps: self.exps[..target.rank()].to_vec() })
    }

    /// Coordinates in `Γ_w / Γ_{w+1} = Lie_w(Z^k)`, or `None` when the
    /// element is not in `Γ_w`.
    pub fn layer(&self, w: usize) -> Option<LieElement> {
        let range = self.group.set.weight_range(w);
        if w == 0 || w > self.group.class || self.exps[..range.start].iter().any(|&e| e != 0) {
            return None;
        }
        let coeffs = self.exps[range].iter().map(|&e| BigInt::from(e)).collect();
        Some(LieElement::from_coeffs(self.group.generators, w, coeffs).expect("layer length"))
    }
}

/// Normal form of `w` in `F_k / Γ_{n+1} F_k`.
pub fn collect(w: &FreeWord, k: usize, n: usize) -> Result<NilpotentElement> {
    FreeNilpotentGroup::new(k, n)?.collect(w)
}

pub fn nil_multiply(u: &NilpotentElement, v: &NilpotentElement) -> Result<NilpotentElement> {
    u.multiply(v)
}

pub fn nil_inverse(u: &NilpotentElement) -> Result<NilpotentElement> {
    u.inverse()
}

/// The identification `Γ_w F / Γ_{w+1} F = Lie_w(Z^k)`: the weight-`w`
/// Hall letter `c_t` corresponds to the Hall tree `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLayer {
    pub generators: usize,
    pub class: usize,
    pub weight: usize,
    /// Hall letter ids of the group side, in order.
    pub letters: Vec<usize>,
    /// Hall trees of the Lie side, in the same order.
    pub trees: Vec<HallTree>,
}

impl GradedLayer {
    pub fn rank(&self) -> usize {
        self.trees.len()
    }
}

pub fn graded_layer(k: usize, n: usize, w: usize) -> Result<GradedLayer> {
    if w == 0 || w > n {
        return Err(Error::OutOfRange { what: "weight", value: w, max: n });
    }
    let set = HallSet::new(k, n);
    let range = set.weight_range(w);
    Ok(GradedLayer {
        generators: k,
        class: n,
        weight: w,
        letters: range.clone().collect(),
        trees: range.map(|id| set.tree(id)).collect(),
    })
}

/// A homomorphism `F_k / Γ_{n+1} -> F_l / Γ_{n+1}` given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentHom {
    source: Arc<FreeNilpotentGroup>,
    target: Arc<FreeNilpotentGroup>,
    /// Image of every Hall letter of the source.
    letters: Vec<NilpotentElement>,
}

impl PartialEq for FreeNilpotentGroup {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for FreeNilpotentGroup {}

impl NilpotentHom {
    pub fn new(
        source: Arc<FreeNilpotentGroup>,
        target: Arc<FreeNilpotentGroup>,
        images: Vec<NilpotentElement>,
    ) -> Result<Self> {
        if source.class != target.class {
            return Err(Error::GroupMismatch { left: source.key(), right: target.key() });
        }
        if images.len() != source.generators {
            return Err(Error::DimensionMismatch { expected: source.generators, found: images.len() });
        }
        if let Some(bad) = images.iter().find(|x| x.group.key() != target.key()) {
            return Err(Error::GroupMismatch { left: bad.group.key(), right: target.key() });
        }
        let mut letters: Vec<NilpotentElement> = Vec::with_capacity(source.rank());
        for id in 0..source.rank() {
            let img = match source.set.node(id) {
                HallNode::Leaf(g) => images[g].clone(),
                HallNode::Bracket(u, v) => letters[u].commutator(&letters[v])?,
            };
            letters.push(img);
        }
        Ok(NilpotentHom { source, target, letters })
    }

    pub fn identity(group: &Arc<FreeNilpotentGroup>) -> Self {
        let images = (0..group.generators).map(|g| group.letter(g)).collect();
        Self::new(group.clone(), group.clone(), images).expect("identity hom")
    }

    /// The hom sending `x_g` to the word `words[g]`.
    pub fn from_words(
        source: Arc<FreeNilpotentGroup>,
        target: Arc<FreeNilpotentGroup>,
        words: &[FreeWord],
    ) -> Result<Self> {
        let images = words.iter().map(|w| target.collect(w)).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<FreeNilpotentGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FreeNilpotentGroup> {
        &self.target
    }

    /// Images of the generators.
    pub fn images(&self) -> &[NilpotentElement] {
        &self.letters[..self.source.generators]
    }

    /// Image of a Hall letter of the source.
    pub fn letter_image(&self, id: usize) -> &NilpotentElement {
        &self.letters[id]
    }

    pub fn apply(&self, u: &NilpotentElement) -> Result<NilpotentElement> {
        if u.group.key() != self.source.key() {
            return Err(Error::GroupMismatch { left: u.group.key(), right: self.source.key() });
        }
        let t = &self.target;
        let mut x = vec![0; t.rank()];
        for (id, &e) in u.exps.iter().enumerate() {
            if e != 0 {
                let p = t.pow(&self.letters[id].exps, e)?;
                t.mul_into(&mut x, &p)?;
            }
        }
        Ok(NilpotentElement { group: t.clone(), exps: x })
    }
}

pub fn apply_hom(f: &NilpotentHom, u: &NilpotentElement) -> Result<NilpotentElement> {
    f.apply(u)
}

// The algebraic theory Nil_n: a morphism k+ -> l+ is an l-tuple of k-ary
// operations, i.e. the hom F_l -> F_k sending x_t to the t-th operation.
// Composition of theory morphisms is composition of these homs in the
// opposite order; the functions below work with the homs directly.

/// `g ∘ f`, substituting the images of `f` into those of `g`.
pub fn theory_compose(g: &NilpotentHom, f: &NilpotentHom) -> Result<NilpotentHom> {
    if f.target.key() != g.source.key() {
        return Err(Error::GroupMismatch { left: f.target.key(), right: g.source.key() });
    }
    let images = f.images().iter().map(|x| g.apply(x)).collect::<Result<Vec<_>>>()?;
    NilpotentHom::new(f.source.clone(), g.target.clone(), images)
}

/// The projection `i_s^k`, as the hom `F_1 -> F_k` with `x -> x_s`.
pub fn theory_projection(s: usize, k: usize, n: usize) -> Result<NilpotentHom> {
    let target = FreeNilpotentGroup::new(k, n)?;
    let source = FreeNilpotentGroup::new(1, n)?;
    let image = target.generator(s)?;
    NilpotentHom::new(source, target, vec![image])
}

/// Tuple of operations `F_1 -> F_k`, as the hom `F_m -> F_k`.
pub fn theory_tuple(components: &[NilpotentHom]) -> Result<NilpotentHom> {
    let first = components.first().ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
    let target = first.target.clone();
    let mut images = Vec::with_capacity(components.len());
    for c in components {
        if c.source.generators != 1 || c.target.key() != target.key() {
            return Err(Error::GroupMismatch { left: c.target.key(), right: target.key() });
        }
        images.push(c.images()[0].clone());
    }
    let source = FreeNilpotentGroup::new(components.len(), target.class)?;
    NilpotentHom::new(source, target, images)
}

/// The diagonal, as the hom `F_k -> F_1` sending every generator to `x`.
pub fn theory_diagonal(k: usize, n: usize) -> Result<NilpotentHom> {
    let source = FreeNilpotentGroup::new(k, n)?;
    let target = FreeNilpotentGroup::new(1, n)?;
    let images = (0..k).map(|_| target.letter(0)).collect();
    NilpotentHom::new(source, target, images)
}
