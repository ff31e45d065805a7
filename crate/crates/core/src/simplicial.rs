//! Finite reduced simplicial sets.
//!
//! A simplicial set is stored through its nondegenerate simplices ("cells").
//! Every simplex is `s_{j_1} ... s_{j_p} y` with `j_1 > ... > j_p` and `y` a
//! cell; faces and degeneracies of such words are computed by composing the
//! corresponding monotone maps of ordinals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Id of the unique vertex.
pub const BASEPOINT: &str = "*";

/// A face entry as written in a space description.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    /// Strictly decreasing degeneracy indices, outermost first.
    pub degeneracies: Vec<usize>,
    pub base: String,
}

impl SimplexRef {
    pub fn cell(base: &str) -> Self {
        SimplexRef { degeneracies: Vec::new(), base: base.to_string() }
    }

    pub fn degenerate(degeneracies: Vec<usize>, base: &str) -> Self {
        SimplexRef { degeneracies, base: base.to_string() }
    }

    /// The basepoint degenerated up to dimension `dim`.
    pub fn basepoint(dim: usize) -> Self {
        SimplexRef { degeneracies: (0..dim).rev().collect(), base: BASEPOINT.to_string() }
    }
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in &self.degeneracies {
            write!(f, "s{j} ")?;
        }
        write!(f, "{}", self.base)
    }
}

/// A nondegenerate simplex together with its faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub faces: Vec<SimplexRef>,
}

/// Position of a cell: `(dimension, index within dimension)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

/// A simplex of some dimension in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub cell: CellId,
    /// Strictly decreasing.
    pub word: Vec<usize>,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.cell.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// True when `s_0` occurs, i.e. the simplex lies in the image of `s_0`.
    pub fn in_image_of_s0(&self) -> bool {
        self.word.last() == Some(&0)
    }
}

/// Surjection `[q] -> [q - |word|]` collapsing `j, j+1` for each `j` in the word.
fn surjection(word: &[usize], q: usize) -> Vec<usize> {
    (0..=q).map(|j| j - word.iter().filter(|&&i| i < j).count()).collect()
}

fn word_of(surj: &[usize]) -> Vec<usize> {
    let mut w: Vec<usize> = (0..surj.len().saturating_sub(1)).filter(|&j| surj[j] == surj[j + 1]).collect();
    w.reverse();
    w
}

/// Why a description fails to be a valid reduced simplicial set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    /// Structural problems: ids, arities, dimensions, unresolvable references.
    Schema,
    /// A degeneracy word that is not strictly decreasing or has an index out of range.
    CanonicalForm,
    /// Not exactly one vertex, or the vertex is not `*`.
    Reducedness,
    /// A simplicial identity `d_i d_j = d_{j-1} d_i` fails.
    Identity,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::Schema => "schema",
            ViolationKind::CanonicalForm => "canonical_form",
            ViolationKind::Reducedness => "reducedness",
            ViolationKind::Identity => "simplicial_identity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Offending simplex id (empty for global problems).
    pub simplex: String,
    /// Identity or rule name, e.g. `d_0 d_2 = d_1 d_0`.
    pub rule: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] {}: {}", self.simplex, self.kind.as_str(), self.rule, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, simplex: &str, rule: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            kind,
            simplex: simplex.to_string(),
            rule: rule.into(),
            detail: detail.into(),
        });
    }
}

/// A finite simplicial set given by its nondegenerate simplices.
///
/// Construction does not validate; call [`SimplicialSet::validate`] or
/// [`SimplicialSet::checked`] before computing with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    name: String,
    cells: Vec<Vec<Cell>>,
    index: BTreeMap<String, CellId>,
}

impl SimplicialSet {
    pub fn new(name: impl Into<String>, cells: Vec<Vec<Cell>>) -> Self {
        let mut index = BTreeMap::new();
        for (dim, layer) in cells.iter().enumerate() {
            for (i, c) in layer.iter().enumerate() {
                index.entry(c.id.clone()).or_insert(CellId { dim, index: i });
            }
        }
        SimplicialSet { name: name.into(), cells, index }
    }

    /// Validates and returns the space, or the first violation as an error.
    pub fn checked(self) -> Result<Self> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(self),
            Some(v) if v.kind == ViolationKind::Reducedness => Err(Error::NotReduced),
            Some(v) => Err(Error::InvalidSpace(v.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cells(&self) -> &[Vec<Cell>] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id.dim][id.index]
    }

    pub fn lookup(&self, id: &str) -> Option<CellId> {
        self.index.get(id).copied()
    }

    /// Top dimension with a nondegenerate simplex.
    pub fn dimension(&self) -> usize {
        self.cells.iter().rposition(|l| !l.is_empty()).unwrap_or(0)
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn cells_in_dim(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map_or(&[], |v| v.as_slice())
    }

    pub fn basepoint(&self) -> CellId {
        CellId { dim: 0, index: 0 }
    }

    pub fn is_reduced(&self) -> bool {
        self.cells.first().is_some_and(|v| v.len() == 1 && v[0].id == BASEPOINT)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let vertices = self.cells.first().map_or(0, Vec::len);
        if vertices != 1 {
            report.push(ViolationKind::Reducedness, "", "reduced", format!("{vertices} vertices, expected exactly 1"));
        } else if self.cells[0][0].id != BASEPOINT {
            report.push(ViolationKind::Reducedness, &self.cells[0][0].id, "reduced", "the vertex must have id \"*\"");
        }
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        for layer in &self.cells {
            for c in layer {
                *seen.entry(c.id.as_str()).or_insert(0) += 1;
            }
        }
        for (id, n) in &seen {
            if *n > 1 {
                report.push(ViolationKind::Schema, id, "unique id", format!("id used {n} times"));
            }
        }
        let mut structural_ok = report.violations.iter().all(|v| v.kind != ViolationKind::Schema);
        for (dim, layer) in self.cells.iter().enumerate() {
            for c in layer {
                let arity = if dim == 0 { 0 } else { dim + 1 };
                if c.faces.len() != arity {
                    report.push(
                        ViolationKind::Schema,
                        &c.id,
                        "face count",
                        format!("{} faces on a {dim}-simplex, expected {arity}", c.faces.len()),
                    );
                    structural_ok = false;
                    continue;
                }
                for (i, f) in c.faces.iter().enumerate() {
                    if !self.check_ref(f, dim - 1, &c.id, i, &mut report) {
                        structural_ok = false;
                    }
                }
            }
        }
        if !structural_ok {
            return report;
        }
        for (dim, layer) in self.cells.iter().enumerate().skip(2) {
            for (index, c) in layer.iter().enumerate() {
                let x = Simplex { cell: CellId { dim, index }, word: vec![] };
                for j in 1..=dim {
                    for i in 0..j {
                        let lhs = self.face(&self.face(&x, j), i);
                        let rhs = self.face(&self.face(&x, i), j - 1);
                        if lhs != rhs {
                            report.push(
                                ViolationKind::Identity,
                                &c.id,
                                format!("d_{i} d_{j} = d_{} d_{i}", j - 1),
                                format!("{} != {}", self.to_ref(&lhs), self.to_ref(&rhs)),
                            );
                        }
                    }
                }
            }
        }
        report
    }

    fn check_ref(&self, f: &SimplexRef, dim: usize, owner: &str, i: usize, report: &mut ValidationReport) -> bool {
        let rule = format!("face {i}");
        let Some(base) = self.lookup(&f.base) else {
            report.push(ViolationKind::Schema, owner, rule, format!("unknown simplex id {:?}", f.base));
            return false;
        };
        if !f.degeneracies.windows(2).all(|w| w[0] > w[1]) {
            report.push(
                ViolationKind::CanonicalForm,
                owner,
                rule,
                format!("degeneracy word {:?} is not strictly decreasing", f.degeneracies),
            );
            return false;
        }
        if base.dim + f.degeneracies.len() != dim {
            report.push(
                ViolationKind::Schema,
                owner,
                rule,
                format!(
                    "{} has dimension {} but a {dim}-simplex is required",
                    f,
                    base.dim + f.degeneracies.len()
                ),
            );
            return false;
        }
        if let Some(&top) = f.degeneracies.first() {
            if top + 1 > dim {
                report.push(
                    ViolationKind::CanonicalForm,
                    owner,
                    rule,
                    format!("degeneracy index {top} out of range in dimension {dim}"),
                );
                return false;
            }
        }
        true
    }

    /// Resolves a reference; the space must be valid.
    pub fn resolve(&self, r: &SimplexRef) -> Result<Simplex> {
        let cell = self
            .lookup(&r.base)
            .ok_or_else(|| Error::InvalidSpace(format!("unknown simplex id {:?}", r.base)))?;
        Ok(Simplex { cell, word: r.degeneracies.clone() })
    }

    pub fn to_ref(&self, s: &Simplex) -> SimplexRef {
        SimplexRef { degeneracies: s.word.clone(), base: self.cell(s.cell).id.clone() }
    }

    /// `d_i` of a simplex. The space must be valid.
    pub fn face(&self, x: &Simplex, i: usize) -> Simplex {
        let q = x.dim();
        debug_assert!(q >= 1 && i <= q);
        let sigma = surjection(&x.word, q);
        // sigma composed with the coface skipping i
        let f: Vec<usize> = (0..q).map(|t| sigma[if t < i { t } else { t + 1 }]).collect();
        let p = x.cell.dim;
        let missing = (0..=p).find(|v| !f.contains(v));
        match missing {
            None => Simplex { cell: x.cell, word: word_of(&f) },
            Some(m) => {
                let g: Vec<usize> = f.iter().map(|&v| if v < m { v } else { v - 1 }).collect();
                let fr = &self.cell(x.cell).faces[m];
                let base = self.lookup(&fr.base).expect("validated reference");
                let kappa = surjection(&fr.degeneracies, p - 1);
                let comp: Vec<usize> = g.iter().map(|&v| kappa[v]).collect();
                Simplex { cell: base, word: word_of(&comp) }
            }
        }
    }

    /// `s_i` of a simplex.
    pub fn degeneracy(&self, x: &Simplex, i: usize) -> Simplex {
        let q = x.dim();
        debug_assert!(i <= q);
        let sigma = surjection(&x.word, q);
        let comp: Vec<usize> = (0..=q + 1).map(|t| sigma[if t <= i { t } else { t - 1 }]).collect();
        Simplex { cell: x.cell, word: word_of(&comp) }
    }

    /// All `q`-simplices in a fixed order: by cell, then by degeneracy word.
    pub fn simplices(&self, q: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (dim, layer) in self.cells.iter().enumerate() {
            if dim > q {
                break;
            }
            let words = decreasing_words(q, q - dim);
            for index in 0..layer.len() {
                for w in &words {
                    out.push(Simplex { cell: CellId { dim, index }, word: w.clone() });
                }
            }
        }
        out
    }
}

/// Strictly decreasing words of length `len` over `0..q`, in lexicographic order
/// of their ascending sort.
fn decreasing_words(q: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, q: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            let mut w = cur.clone();
            w.reverse();
            out.push(w);
            return;
        }
        for j in start..q {
            cur.push(j);
            rec(j + 1, q, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, q, len, &mut Vec::new(), &mut out);
    out
}

/// The named standard spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardSpace {
    /// `S^n = Delta^n / boundary`, `n >= 1`.
    Sphere(usize),
    /// One-point union of `k` circles, `k >= 0`.
    WedgeOfCircles(usize),
    /// `M(Z/m, n)`, `m >= 2`, `n >= 1`.
    Moore { m: usize, n: usize },
}

impl StandardSpace {
    /// Parses `sphere(2)`, `wedge_of_circles(3)`, `moore(2,2)`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadSpaceRequest(format!("cannot parse {s:?}"));
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let name = &s[..open];
        let args: Vec<usize> = s[open + 1..s.len() - 1]
            .split(',')
            .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (name, args.as_slice()) {
            ("sphere", [n]) => Ok(StandardSpace::Sphere(*n)),
            ("wedge_of_circles", [k]) => Ok(StandardSpace::WedgeOfCircles(*k)),
            ("moore", [m, n]) => Ok(StandardSpace::Moore { m: *m, n: *n }),
            _ => Err(Error::BadSpaceRequest(format!("unknown standard space {s:?}"))),
        }
    }

    pub fn build(self) -> Result<SimplicialSet> {
        match self {
            StandardSpace::Sphere(n) => sphere(n),
            StandardSpace::WedgeOfCircles(k) => Ok(wedge_of_circles(k)),
            StandardSpace::Moore { m, n } => moore(m, n),
        }
    }
}

fn vertex() -> Cell {
    Cell { id: BASEPOINT.to_string(), faces: vec![] }
}

fn spherical_cell(id: String, n: usize) -> Cell {
    let face = if n == 1 { SimplexRef::cell(BASEPOINT) } else { SimplexRef::basepoint(n - 1) };
    Cell { id, faces: vec![face; n + 1] }
}

pub fn point() -> SimplicialSet {
    SimplicialSet::new("point", vec![vec![vertex()]])
}

/// Minimal model: one vertex and one nondegenerate `n`-simplex.
pub fn sphere(n: usize) -> Result<SimplicialSet> {
    if n == 0 {
        return Err(Error::BadSpaceRequest("sphere(n) needs n >= 1".to_string()));
    }
    let mut cells = vec![Vec::new(); n + 1];
    cells[0].push(vertex());
    cells[n].push(spherical_cell(format!("e{n}"), n));
    Ok(SimplicialSet::new(format!("S{n}"), cells))
}

pub fn wedge_of_circles(k: usize) -> SimplicialSet {
    let mut cells = vec![vec![vertex()]];
    if k > 0 {
        cells.push((1..=k).map(|i| spherical_cell(format!("x{i}"), 1)).collect());
    }
    SimplicialSet::new(format!("wedge_of_circles({k})"), cells)
}

/// `M(Z/m, n)`: an `n`-sphere with an `(n+1)`-cell attached by a degree-`m` map.
///
/// When `m` does not exceed the number of even face positions of an
/// `(n+1)`-simplex, a single cell `f` with `m` faces equal to `e` suffices.
/// Otherwise the attaching map is spread over a chain of `n`-cells
/// `e = e1, ..., em` with `(n+1)`-cells `c_j` of boundary `e_j - e_{j+1} + e`
/// and a final cell `z` of boundary `e_m`.
pub fn moore(m: usize, n: usize) -> Result<SimplicialSet> {
    if m < 2 || n == 0 {
        return Err(Error::BadSpaceRequest(format!("moore(m, n) needs m >= 2 and n >= 1, got ({m}, {n})")));
    }
    let star = SimplexRef::basepoint(n);
    let mut cells = vec![Vec::new(); n + 2];
    cells[0].push(vertex());
    let even_slots = n.div_ceil(2) + 1;
    if m <= even_slots {
        cells[n].push(spherical_cell("e".to_string(), n));
        let faces = (0..n + 2)
            .map(|i| if i % 2 == 0 && i / 2 < m { SimplexRef::cell("e") } else { star.clone() })
            .collect();
        cells[n + 1].push(Cell { id: "f".to_string(), faces });
    } else {
        let e = |j: usize| format!("e{j}");
        for j in 1..=m {
            cells[n].push(spherical_cell(e(j), n));
        }
        for j in 1..m {
            let mut faces = vec![star.clone(); n + 2];
            faces[0] = SimplexRef::cell(&e(j));
            faces[1] = SimplexRef::cell(&e(j + 1));
            faces[2] = SimplexRef::cell(&e(1));
            cells[n + 1].push(Cell { id: format!("c{j}"), faces });
        }
        let mut faces = vec![star.clone(); n + 2];
        faces[0] = SimplexRef::cell(&e(m));
        cells[n + 1].push(Cell { id: "z".to_string(), faces });
    }
    Ok(SimplicialSet::new(format!("moore({m},{n})"), cells))
}

/// One-point union. Ids of `y` that clash with ids of `x` get primes appended.
pub fn wedge(x: &SimplicialSet, y: &SimplicialSet) -> Result<SimplicialSet> {
    for s in [x, y] {
        if !s.is_reduced() {
            return Err(Error::NotReduced);
        }
        let r = s.validate();
        if let Some(v) = r.violations.first() {
            return Err(Error::InvalidSpace(v.to_string()));
        }
    }
    let mut rename: BTreeMap<String, String> = BTreeMap::new();
    rename.insert(BASEPOINT.to_string(), BASEPOINT.to_string());
    for layer in y.cells.iter().skip(1) {
        for c in layer {
            let mut id = c.id.clone();
            while x.lookup(&id).is_some() || rename.values().any(|v| *v == id) {
                id.push('\'');
            }
            rename.insert(c.id.clone(), id);
        }
    }
    let dims = x.cells.len().max(y.cells.len());
    let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); dims];
    for (d, layer) in x.cells.iter().enumerate() {
        cells[d].extend(layer.iter().cloned());
    }
    for (d, layer) in y.cells.iter().enumerate().skip(1) {
        for c in layer {
            let faces = c
                .faces
                .iter()
                .map(|f| SimplexRef { degeneracies: f.degeneracies.clone(), base: rename[&f.base].clone() })
                .collect();
            cells[d].push(Cell { id: rename[&c.id].clone(), faces });
        }
    }
    Ok(SimplicialSet::new(format!("{} v {}", x.name, y.name), cells))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_one_faces() {
        let s = sphere(1).unwrap();
        assert!(s.validate().is_ok());
        assert_eq!(s.cell_count(), 2);
        for f in &s.cells_in_dim(1)[0].faces {
            assert_eq!(*f, SimplexRef::cell("*"));
        }
    }

    #[test]
    fn sphere_two_faces_are_s0_star() {
        let s = sphere(2).unwrap();
        assert!(s.validate().is_ok());
        let e = &s.cells_in_dim(2)[0];
        assert_eq!(e.faces, vec![SimplexRef::degenerate(vec![0], "*"); 3]);
    }

    #[test]
    fn empty_wedge_is_point() {
        let w = wedge_of_circles(0);
        assert_eq!(w.cells(), point().cells());
        assert!(w.validate().is_ok());
    }

    #[test]
    fn retargeted_face_is_reported() {
        let mut cells = sphere(1).unwrap().cells().to_vec();
        cells[1][0].faces[1] = SimplexRef::cell("nowhere");
        let bad = SimplicialSet::new("bad", cells);
        let r = bad.validate();
        assert!(!r.is_ok());
        assert_eq!(r.violations[0].simplex, "e1");
        assert_eq!(r.violations[0].kind, ViolationKind::Schema);
    }

    #[test]
    fn non_decreasing_word_is_canonical_form_violation() {
        let mut cells = sphere(3).unwrap().cells().to_vec();
        cells[3][0].faces[0] = SimplexRef::degenerate(vec![0, 1], "*");
        let r = SimplicialSet::new("bad", cells).validate();
        assert_eq!(r.violations[0].kind, ViolationKind::CanonicalForm);
    }

    #[test]
    fn identity_violation_detected() {
        let star2 = SimplexRef::basepoint(2);
        let cells = vec![
            vec![vertex()],
            vec![spherical_cell("a".into(), 1)],
            vec![Cell { id: "b".into(), faces: vec![SimplexRef::cell("a"); 3] }],
            vec![Cell { id: "t".into(), faces: vec![SimplexRef::cell("b"), star2.clone(), star2.clone(), star2] }],
        ];
        let r = SimplicialSet::new("bad", cells).validate();
        assert!(!r.is_ok());
        // d_0 d_1 t = s_0 * but d_0 d_0 t = a
        let v = r.violations.iter().find(|v| v.rule == "d_0 d_1 = d_0 d_0").unwrap();
        assert_eq!(v.simplex, "t");
        assert_eq!(v.kind, ViolationKind::Identity);
    }

    #[test]
    fn face_degeneracy_identities_on_words() {
        let x = sphere(2).unwrap();
        for q in 2..6 {
            for s in x.simplices(q) {
                for j in 0..=q {
                    let t = x.degeneracy(&s, j);
                    assert_eq!(x.face(&t, j), s);
                    assert_eq!(x.face(&t, j + 1), s);
                    for i in 0..j {
                        assert_eq!(x.face(&t, i), x.degeneracy(&x.face(&s, i), j - 1));
                    }
                    for i in j + 2..=q + 1 {
                        assert_eq!(x.face(&t, i), x.degeneracy(&x.face(&s, i - 1), j));
                    }
                    for i in 0..=j {
                        assert_eq!(x.degeneracy(&t, i), x.degeneracy(&x.degeneracy(&s, i), j + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn simplex_counts() {
        // S^1 in degree 2: s0 e1, s1 e1, s1 s0 *
        assert_eq!(sphere(1).unwrap().simplices(2).len(), 3);
        assert_eq!(wedge_of_circles(2).simplices(2).len(), 5);
    }

    #[test]
    fn wedge_counts_and_units() {
        let s1 = sphere(1).unwrap();
        let s2 = sphere(2).unwrap();
        let w = wedge(&s1, &s2).unwrap();
        assert_eq!(w.cell_count(), 3);
        assert!(w.validate().is_ok());
        let ww = wedge(&s1, &s1).unwrap();
        assert!(ww.validate().is_ok());
        assert_eq!(ww.cells_in_dim(1).len(), 2);
        assert_eq!(ww.cells_in_dim(1)[1].id, "e1'");
        assert_eq!(wedge(&point(), &s2).unwrap().cells(), s2.cells());
    }

    #[test]
    fn moore_spaces_validate() {
        for (m, n) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 3)] {
            let x = moore(m, n).unwrap();
            assert!(x.validate().is_ok(), "moore({m},{n})");
        }
        assert_eq!(moore(2, 2).unwrap().cell_count(), 3);
        assert!(moore(1, 2).is_err());
        assert!(sphere(0).is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!(StandardSpace::parse("moore(3, 2)").unwrap(), StandardSpace::Moore { m: 3, n: 2 });
        assert!(StandardSpace::parse("torus(1)").is_err());
        assert!(StandardSpace::parse("sphere").is_err());
    }
}
