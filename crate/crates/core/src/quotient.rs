//! Class-`n` quotients of finitely presented groups.
//!
//! The quotient of `⟨x_1..x_k | R⟩` by `Γ_{n+1}` is `F̄ / N` with
//! `F̄ = F_k / Γ_{n+1} F_k` and `N` the normal closure of `R` in `F̄`. `N`
//! is kept as an echelon table: `T[j]` is an element of `N` whose normal
//! form starts at letter `j` with a positive exponent `a_j`, and the entries
//! with leading letter `>= j` generate `N ∩ ⟨c_m : m >= j⟩`. Since the
//! letter order refines weight, layer `w` of the quotient is the cokernel of
//! the weight-`w` parts of the entries with leading weight `w`.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hall::HallTree;
use crate::matrix::{AbelianInvariants, IntMatrix};
use crate::nilpotent::{FreeNilpotentGroup, FreeWord, NilpotentElement};

/// A finite group presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<FreeWord>,
}

/// A generator of the polycyclic presentation: a Hall letter of `F̄`
/// surviving in the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcGenerator {
    pub letter: usize,
    pub tree: HallTree,
    pub weight: usize,
    /// `None` for infinite relative order.
    pub relative_order: Option<i64>,
}

/// Word in the polycyclic generators: `(generator index, exponent)`.
pub type PcWord = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct PolycyclicQuotient {
    class: usize,
    layers: Vec<AbelianInvariants>,
    generators: Vec<PcGenerator>,
    /// `g_i^{r_i} = w` for each generator of finite relative order.
    powers: Vec<(usize, PcWord)>,
    /// `g_i^-1 g_j g_i = w` for `i < j`.
    conjugates: Vec<(usize, usize, PcWord)>,
    group: Arc<FreeNilpotentGroup>,
    table: Vec<Option<Vec<i64>>>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i64, 0i64, 0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

fn leading(x: &NilpotentElement) -> Option<usize> {
    x.exponents().iter().position(|&e| e != 0)
}

struct Table {
    group: Arc<FreeNilpotentGroup>,
    rows: Vec<Option<NilpotentElement>>,
}

impl Table {
    /// Adds `g` to the subgroup; reports whether the table changed.
    fn insert(&mut self, mut g: NilpotentElement) -> Result<bool> {
        let mut changed = false;
        while let Some(j) = leading(&g) {
            let Some(t) = self.rows[j].clone() else {
                if g.exponents()[j] < 0 {
                    g = g.inverse()?;
                }
                self.rows[j] = Some(g);
                return Ok(true);
            };
            let (a, b) = (t.exponents()[j], g.exponents()[j]);
            if b % a == 0 {
                g = g.multiply(&t.pow(-(b / a))?)?;
                continue;
            }
            let (_, x, y) = ext_gcd(a, b);
            let merged = t.pow(x)?.multiply(&g.pow(y)?)?;
            self.rows[j] = Some(merged);
            changed = true;
            self.insert(t)?;
        }
        Ok(changed)
    }

    /// Closes the table under conjugation by generators and under
    /// commutators of its entries.
    fn close(&mut self) -> Result<()> {
        let gens: Vec<NilpotentElement> = (0..self.group.generators())
            .flat_map(|g| {
                let x = self.group.letter(g);
                let xi = x.inverse().expect("inverse of a letter");
                [x, xi]
            })
            .collect();
        loop {
            let mut changed = false;
            let entries: Vec<NilpotentElement> = self.rows.iter().flatten().cloned().collect();
            for t in &entries {
                for x in &gens {
                    changed |= self.insert(t.commutator(x)?)?;
                }
            }
            for (i, t) in entries.iter().enumerate() {
                for u in &entries[i + 1..] {
                    changed |= self.insert(t.commutator(u)?)?;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }
}

/// Canonical coset representative: `0 <= e_j < a_j` wherever `T[j]` exists.
fn reduce_exps(group: &Arc<FreeNilpotentGroup>, table: &[Option<Vec<i64>>], x: Vec<i64>) -> Result<Vec<i64>> {
    let mut g = group.element(x)?;
    for (j, row) in table.iter().enumerate() {
        if let Some(t) = row {
            let q = g.exponents()[j].div_euclid(t[j]);
            if q != 0 {
                let t = group.element(t.clone())?;
                g = g.multiply(&t.pow(-q)?)?;
            }
        }
    }
    Ok(g.exponents().to_vec())
}

/// The largest class-`n` quotient of the presented group.
pub fn nilpotent_quotient(p: &Presentation, n: usize, caps: &Caps) -> Result<PolycyclicQuotient> {
    let group = FreeNilpotentGroup::with_caps(p.generators.len(), n, caps)?;
    let relators = p.relators.iter().map(|r| group.collect(r)).collect::<Result<Vec<_>>>()?;
    quotient_by_elements(&group, &relators)
}

/// The quotient of a free nilpotent group by the normal closure of the
/// given elements.
pub fn quotient_by_elements(
    group: &Arc<FreeNilpotentGroup>,
    relators: &[NilpotentElement],
) -> Result<PolycyclicQuotient> {
    let mut table = Table { group: group.clone(), rows: vec![None; group.rank()] };
    for r in relators {
        if r.group().as_ref() != group.as_ref() {
            return Err(Error::GroupMismatch {
                left: (r.generators(), r.class()),
                right: (group.generators(), group.class()),
            });
        }
        table.insert(r.clone())?;
    }
    table.close()?;
    let rows: Vec<Option<Vec<i64>>> =
        table.rows.iter().map(|r| r.as_ref().map(|x| x.exponents().to_vec())).collect();
    PolycyclicQuotient::build(group.clone(), rows)
}

impl PolycyclicQuotient {
    fn build(group: Arc<FreeNilpotentGroup>, table: Vec<Option<Vec<i64>>>) -> Result<Self> {
        let set = group.hall_set();
        let class = group.class();
        let mut layers = Vec::with_capacity(class);
        for w in 1..=class {
            let range = set.weight_range(w);
            let cols: Vec<&Vec<i64>> = range.clone().filter_map(|j| table[j].as_ref()).collect();
            let m = IntMatrix::from_fn(range.len(), cols.len(), |r, c| BigInt::from(cols[c][range.start + r]));
            layers.push(m.cokernel());
        }
        let mut generators = Vec::new();
        for j in 0..group.rank() {
            let order = table[j].as_ref().map(|t| t[j]);
            if order != Some(1) {
                generators.push(PcGenerator {
                    letter: j,
                    tree: set.tree(j),
                    weight: set.weight(j),
                    relative_order: order,
                });
            }
        }
        let mut q = PolycyclicQuotient {
            class,
            layers,
            generators,
            powers: Vec::new(),
            conjugates: Vec::new(),
            group,
            table,
        };
        for (i, g) in q.generators.iter().enumerate() {
            if let Some(r) = g.relative_order {
                let x = q.group.letter(g.letter).pow(r)?;
                q.powers.push((i, q.reduce_element(&x)?));
            }
        }
        for j in 0..q.generators.len() {
            for i in 0..j {
                let (gi, gj) = (q.group.letter(q.generators[i].letter), q.group.letter(q.generators[j].letter));
                let x = gi.inverse()?.multiply(&gj)?.multiply(&gi)?;
                let w = q.reduce_element(&x)?;
                if w != vec![(j, 1)] {
                    q.conjugates.push((i, j, w));
                }
            }
        }
        if !q.is_consistent() {
            return Err(Error::InvariantBreach("polycyclic data disagrees with layer invariants".into()));
        }
        Ok(q)
    }

    pub fn class(&self) -> usize {
        self.class
    }

    /// Invariants of `Γ_w / Γ_{w+1}` of the quotient, `w = 1..=n`.
    pub fn layers(&self) -> &[AbelianInvariants] {
        &self.layers
    }

    pub fn generators(&self) -> &[PcGenerator] {
        &self.generators
    }

    pub fn power_relations(&self) -> &[(usize, PcWord)] {
        &self.powers
    }

    /// Conjugation relations that differ from commuting.
    pub fn conjugate_relations(&self) -> &[(usize, usize, PcWord)] {
        &self.conjugates
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    fn reduce_element(&self, x: &NilpotentElement) -> Result<PcWord> {
        let e = reduce_exps(&self.group, &self.table, x.exponents().to_vec())?;
        let mut out = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            if e[g.letter] != 0 {
                out.push((i, e[g.letter]));
            }
        }
        Ok(out)
    }

    /// Normal form of the image of a word in the generators.
    pub fn reduce(&self, w: &FreeWord) -> Result<PcWord> {
        let x = self.group.collect(w)?;
        self.reduce_element(&x)
    }

    /// Per weight: the number of infinite relative orders equals the layer
    /// rank, and for finite layers the product of relative orders is the
    /// layer order.
    pub fn is_consistent(&self) -> bool {
        (1..=self.class).all(|w| {
            let gens: Vec<&PcGenerator> = self.generators.iter().filter(|g| g.weight == w).collect();
            let infinite = gens.iter().filter(|g| g.relative_order.is_none()).count();
            let layer = &self.layers[w - 1];
            if infinite != layer.rank {
                return false;
            }
            if layer.rank > 0 {
                return true;
            }
            let order: BigInt = gens.iter().map(|g| BigInt::from(g.relative_order.unwrap_or(0))).product();
            let expected: BigInt = layer.torsion.iter().product();
            order == expected
        })
    }
}
