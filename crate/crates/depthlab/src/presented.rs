//! Finitely presented bigraded Lie algebras, computed window by window.
//!
//! A presentation is a bigraded generator space `V` together with a
//! relation subspace `R` inside the degree-2 part of the free Lie algebra
//! on `V`. Within an inclusive (weight, depth) window every cell of the
//! quotient is computed exactly: the free cell via bracketed Lyndon words
//! on the generator alphabet, the ideal cell as the ad-closure of `R`,
//! and the quotient basis as the echelon complement of the ideal inside
//! the free cell. Positive bigrading makes the truncation exact: nothing
//! outside the window can leak into a cell inside it.
//!
//! The two presentations of interest place one depth-1 generator in each
//! odd weight and the cuspidal period polynomial space in depth 2 as
//! relations (and, for the larger model, another copy in depth 4 as
//! generators).

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::depthgraded::{ls1_weights, wedge_basis_ls1};
use crate::exactlin::{Matrix, Scalar, Subspace};
use crate::freelie::Bidegree;
use crate::periodpoly;
use crate::report::{sha256_hex, Window, ARTIFACT_VERSION};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub bidegree: Bidegree,
}

/// An ordered alphabet of bigraded generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedSpace {
    generators: Vec<Generator>,
    alphabet_id: String,
}

impl BigradedSpace {
    pub fn new(generators: Vec<Generator>) -> Self {
        let mut text = String::new();
        for g in &generators {
            text.push_str(&format!("{}:{}:{};", g.label, g.bidegree.weight, g.bidegree.depth));
        }
        let alphabet_id = sha256_hex(text.as_bytes())[..8].to_string();
        BigradedSpace { generators, alphabet_id }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn alphabet_id(&self) -> &str {
        &self.alphabet_id
    }

    /// Dimension table of the generator space itself.
    pub fn dims(&self) -> BigradedDimTable {
        let mut t = BigradedDimTable::default();
        for g in &self.generators {
            t.add(g.bidegree, 1);
        }
        t
    }
}

/// Association (weight, depth) -> dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BigradedDimTable {
    cells: BTreeMap<Bidegree, usize>,
}

impl BigradedDimTable {
    pub fn get(&self, b: Bidegree) -> usize {
        self.cells.get(&b).copied().unwrap_or(0)
    }

    pub fn set(&mut self, b: Bidegree, dim: usize) {
        if dim == 0 {
            self.cells.remove(&b);
        } else {
            self.cells.insert(b, dim);
        }
    }

    pub fn add(&mut self, b: Bidegree, dim: usize) {
        if dim > 0 {
            *self.cells.entry(b).or_insert(0) += dim;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bidegree, usize)> + '_ {
        self.cells.iter().map(|(&b, &d)| (b, d))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Word in generator indices; the empty word is excluded everywhere.
pub(crate) type GenWord = Vec<usize>;

/// All words over the alphabet with the given bidegree, in lexicographic
/// index order.
pub(crate) fn gen_words(space: &BigradedSpace, b: Bidegree) -> Vec<GenWord> {
    fn rec(space: &BigradedSpace, weight: u32, depth: u32, out: &mut Vec<GenWord>, prefix: &mut GenWord) {
        if weight == 0 && depth == 0 {
            if !prefix.is_empty() {
                out.push(prefix.clone());
            }
            return;
        }
        for (i, g) in space.generators().iter().enumerate() {
            if g.bidegree.weight <= weight && g.bidegree.depth <= depth {
                prefix.push(i);
                rec(space, weight - g.bidegree.weight, depth - g.bidegree.depth, out, prefix);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(space, b.weight, b.depth, &mut out, &mut Vec::new());
    out
}

fn is_lyndon_word(w: &[usize]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    (1..n).all(|r| {
        let rotation = w[r..].iter().chain(w[..r].iter());
        w.iter().lt(rotation)
    })
}

/// Sparse element of the free associative algebra on the generator
/// alphabet, restricted to one bidegree cell in practice.
type TensorElem = BTreeMap<GenWord, Scalar>;

fn tensor_add_term(t: &mut TensorElem, w: GenWord, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match t.entry(w) {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

fn tensor_commutator(a: &TensorElem, b: &TensorElem) -> TensorElem {
    let mut out = TensorElem::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut fwd = wa.clone();
            fwd.extend_from_slice(wb);
            tensor_add_term(&mut out, fwd, ca * cb);
            let mut bwd = wb.clone();
            bwd.extend_from_slice(wa);
            tensor_add_term(&mut out, bwd, -(ca * cb));
        }
    }
    out
}

fn bracket_gen_lyndon(w: &[usize]) -> TensorElem {
    if w.len() == 1 {
        let mut t = TensorElem::new();
        t.insert(w.to_vec(), crate::exactlin::scalar(1));
        return t;
    }
    let split = (1..w.len())
        .find(|&i| is_lyndon_word(&w[i..]))
        .expect("proper Lyndon suffix exists");
    let u = bracket_gen_lyndon(&w[..split]);
    let v = bracket_gen_lyndon(&w[split..]);
    tensor_commutator(&u, &v)
}

fn tensor_to_vector(t: &TensorElem, index: &BTreeMap<GenWord, usize>, dim: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    for (w, c) in t {
        let i = *index.get(w).expect("word belongs to the cell");
        v[i] = c.clone();
    }
    v
}

/// Ordered basis of the degree-2 cell of the free Lie algebra on the
/// alphabet at bidegree `b`: pairs of generator indices `(i, j)`, `i < j`,
/// with bidegrees summing to `b`, in lexicographic order.
pub fn lambda2_cell(space: &BigradedSpace, b: Bidegree) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..space.len() {
        for j in i + 1..space.len() {
            let sum = space.generator(i).bidegree.plus(space.generator(j).bidegree);
            if sum == b {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn lambda2_cell_label(space: &BigradedSpace, b: Bidegree) -> String {
    format!("lambda2[{}][{},{}]", space.alphabet_id(), b.weight, b.depth)
}

/// A finitely presented bigraded Lie algebra: free on `space`, modulo the
/// ideal generated by per-bidegree relation subspaces of the degree-2
/// part.
#[derive(Debug, Clone)]
pub struct Presentation {
    name: String,
    space: BigradedSpace,
    relations: BTreeMap<Bidegree, Subspace>,
}

impl Presentation {
    pub fn new(name: &str, space: BigradedSpace, relations: BTreeMap<Bidegree, Subspace>) -> Self {
        for (&b, r) in &relations {
            let cell = lambda2_cell(&space, b);
            assert_eq!(r.ambient_dim(), cell.len(), "relation ambient mismatch at {b}");
            assert_eq!(
                r.ambient_label(),
                lambda2_cell_label(&space, b),
                "relation ambient label mismatch at {b}"
            );
        }
        Presentation {
            name: name.to_string(),
            space,
            relations,
        }
    }

    pub fn free(name: &str, space: BigradedSpace) -> Self {
        Presentation::new(name, space, BTreeMap::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &BigradedSpace {
        &self.space
    }

    pub fn relations(&self) -> &BTreeMap<Bidegree, Subspace> {
        &self.relations
    }

    pub fn relation_dims(&self) -> BigradedDimTable {
        let mut t = BigradedDimTable::default();
        for (&b, r) in &self.relations {
            t.add(b, r.dim());
        }
        t
    }

    /// Content digest of the presentation: generators, relation bases and
    /// artifact version. Cache keys are derived from it.
    pub fn digest(&self) -> String {
        let mut text = format!("presentation:{};version:{};", self.name, ARTIFACT_VERSION);
        for g in self.space.generators() {
            text.push_str(&format!("gen:{}:{}:{};", g.label, g.bidegree.weight, g.bidegree.depth));
        }
        for (b, r) in &self.relations {
            text.push_str(&format!("rel[{},{}]:", b.weight, b.depth));
            for row in r.basis_rows() {
                for c in row {
                    text.push_str(&c.to_string());
                    text.push(',');
                }
                text.push('|');
            }
        }
        sha256_hex(text.as_bytes())
    }
}

/// One basis element of a computed window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowElement {
    pub name: String,
    pub bidegree: Bidegree,
    /// Set when the element is (the class of) a single generator.
    pub generator: Option<usize>,
}

/// Per-cell data retained for reduction into quotient coordinates.
#[derive(Debug, Clone)]
struct CellData {
    words: Vec<GenWord>,
    /// canonical echelon basis of the free Lie cell, rows over `words`
    lie_basis: Matrix,
    /// pivot word index of each `lie_basis` row
    lie_pivots: Vec<usize>,
    /// ideal cell in Lie-basis coordinates, echelon form
    ideal: Subspace,
    /// indices of `lie_basis` rows forming the quotient basis
    quotient_rows: Vec<usize>,
    /// global element ids of the quotient basis, in order
    element_ids: Vec<usize>,
}

/// A presented Lie algebra truncated to a window: per-cell ordered bases
/// and structure constants for every bracket whose target lies inside the
/// window. Antisymmetry and Jacobi hold cell-wise by construction and are
/// asserted in tests.
#[derive(Debug, Clone)]
pub struct LieWindow {
    name: String,
    window: Window,
    presentation_digest: String,
    elements: Vec<WindowElement>,
    cells: BTreeMap<Bidegree, CellData>,
    brackets: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
}

impl LieWindow {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn presentation_digest(&self) -> &str {
        &self.presentation_digest
    }

    pub fn elements(&self) -> &[WindowElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &WindowElement {
        &self.elements[id]
    }

    pub fn cell_elements(&self, b: Bidegree) -> &[usize] {
        self.cells.get(&b).map_or(&[], |c| &c.element_ids)
    }

    pub fn dims(&self) -> BigradedDimTable {
        let mut t = BigradedDimTable::default();
        for (b, c) in &self.cells {
            t.add(*b, c.element_ids.len());
        }
        t
    }

    pub fn dim(&self, b: Bidegree) -> usize {
        self.cells.get(&b).map_or(0, |c| c.element_ids.len())
    }

    /// Bracket of two basis elements in quotient coordinates, as pairs
    /// (global element id, coefficient). `None` when the target bidegree
    /// falls outside the window.
    pub fn bracket(&self, i: usize, j: usize) -> Option<Vec<(usize, Scalar)>> {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => {
                let b = self.elements[i].bidegree;
                let target = b.plus(b);
                if target.weight <= self.window.max_weight && target.depth <= self.window.max_depth
                {
                    Some(Vec::new())
                } else {
                    None
                }
            }
            Ordering::Less => self.brackets.get(&(i, j)).cloned(),
            Ordering::Greater => self.brackets.get(&(j, i)).map(|v| {
                v.iter().map(|(k, c)| (*k, -c.clone())).collect()
            }),
        }
    }

    /// Digest of the full window content (elements plus structure
    /// constants); used for cache integrity and determinism checks.
    pub fn content_digest(&self) -> String {
        sha256_hex(serde_json::to_string(&LieWindowRepr::from(self)).unwrap().as_bytes())
    }
}

fn scalar_pair(c: &Scalar) -> (String, String) {
    (c.numer().to_string(), c.denom().to_string())
}

fn scalar_from_pair(num: &str, den: &str) -> Option<Scalar> {
    Some(Scalar::new(num.parse().ok()?, den.parse().ok()?))
}

/// Serialized form of a window: element list and structure constants.
/// Cell reduction data is rebuilt on load from the presentation if
/// needed; reports and homology only consume what is stored here.
#[derive(Serialize, Deserialize)]
pub struct LieWindowRepr {
    pub name: String,
    pub max_weight: u32,
    pub max_depth: u32,
    pub presentation_digest: String,
    pub elements: Vec<(String, u32, u32, Option<usize>)>,
    pub brackets: Vec<(usize, usize, Vec<(usize, String, String)>)>,
}

impl From<&LieWindow> for LieWindowRepr {
    fn from(w: &LieWindow) -> Self {
        LieWindowRepr {
            name: w.name.clone(),
            max_weight: w.window.max_weight,
            max_depth: w.window.max_depth,
            presentation_digest: w.presentation_digest.clone(),
            elements: w
                .elements
                .iter()
                .map(|e| (e.name.clone(), e.bidegree.weight, e.bidegree.depth, e.generator))
                .collect(),
            brackets: w
                .brackets
                .iter()
                .map(|(&(i, j), v)| {
                    let terms = v
                        .iter()
                        .map(|(k, c)| {
                            let (n, d) = scalar_pair(c);
                            (*k, n, d)
                        })
                        .collect();
                    (i, j, terms)
                })
                .collect(),
        }
    }
}

impl LieWindowRepr {
    /// Rebuilds a window usable by homology (elements, cells, brackets);
    /// reduction internals are not reconstructed.
    pub fn into_window(self) -> Option<LieWindow> {
        let mut elements = Vec::new();
        let mut cells: BTreeMap<Bidegree, CellData> = BTreeMap::new();
        for (name, weight, depth, generator) in self.elements {
            let b = Bidegree::new(weight, depth);
            let id = elements.len();
            elements.push(WindowElement { name, bidegree: b, generator });
            cells
                .entry(b)
                .or_insert_with(|| CellData {
                    words: Vec::new(),
                    lie_basis: Matrix::new(0, 0),
                    lie_pivots: Vec::new(),
                    ideal: Subspace::zero("restored", 0),
                    quotient_rows: Vec::new(),
                    element_ids: Vec::new(),
                })
                .element_ids
                .push(id);
        }
        let mut brackets = BTreeMap::new();
        for (i, j, terms) in self.brackets {
            let mut v = Vec::new();
            for (k, n, d) in terms {
                v.push((k, scalar_from_pair(&n, &d)?));
            }
            brackets.insert((i, j), v);
        }
        Some(LieWindow {
            name: self.name,
            window: Window::new(self.max_weight, self.max_depth),
            presentation_digest: self.presentation_digest,
            elements,
            cells,
            brackets,
        })
    }
}

/// All bidegrees inside a window with `1 <= depth <= min(weight, max_depth)`,
/// in (weight, depth) order.
pub fn window_bidegrees(window: Window) -> Vec<Bidegree> {
    let mut out = Vec::new();
    for n in 1..=window.max_weight {
        for d in 1..=n.min(window.max_depth) {
            out.push(Bidegree::new(n, d));
        }
    }
    out
}

/// Dimensions of the free Lie algebra on `space` per cell in the window,
/// counted by Lyndon words on the weighted alphabet.
pub fn free_lie_dims(space: &BigradedSpace, window: Window) -> BigradedDimTable {
    let mut t = BigradedDimTable::default();
    for b in window_bidegrees(window) {
        let count = gen_words(space, b)
            .iter()
            .filter(|w| is_lyndon_word(w))
            .count();
        t.add(b, count);
    }
    t
}

/// Ideal cells in tensor coordinates, per bidegree, in increasing
/// (weight, depth) order. Seeded by the relations, closed under ad by
/// generator letters.
fn ideal_cells_tensor(p: &Presentation, window: Window) -> BTreeMap<Bidegree, Vec<TensorElem>> {
    let space = p.space();
    let mut ideal: BTreeMap<Bidegree, Vec<TensorElem>> = BTreeMap::new();
    let mut bidegrees = window_bidegrees(window);
    bidegrees.sort_by_key(|b| (b.weight, b.depth));
    for b in bidegrees {
        let mut rows: Vec<TensorElem> = Vec::new();
        // seed: relation cell, written as pair words i j - j i
        if let Some(r) = p.relations().get(&b) {
            let pairs = lambda2_cell(space, b);
            for v in r.basis_rows() {
                let mut t = TensorElem::new();
                for (k, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (i, j) = pairs[k];
                    tensor_add_term(&mut t, vec![i, j], c.clone());
                    tensor_add_term(&mut t, vec![j, i], -c.clone());
                }
                if !t.is_empty() {
                    rows.push(t);
                }
            }
        }
        // closure: [g, lower ideal cell]
        for (gi, g) in space.generators().iter().enumerate() {
            let gb = g.bidegree;
            if gb.weight >= b.weight || gb.depth > b.depth {
                continue;
            }
            if b.depth - gb.depth == 0 || b.depth - gb.depth > b.weight - gb.weight {
                continue;
            }
            let lower = Bidegree::new(b.weight - gb.weight, b.depth - gb.depth);
            let Some(lower_rows) = ideal.get(&lower) else {
                continue;
            };
            let mut g_elem = TensorElem::new();
            g_elem.insert(vec![gi], crate::exactlin::scalar(1));
            for x in lower_rows {
                let t = tensor_commutator(&g_elem, x);
                if !t.is_empty() {
                    rows.push(t);
                }
            }
        }
        if !rows.is_empty() {
            ideal.insert(b, rows);
        }
    }
    ideal
}

/// Per-cell dimensions of the ideal generated by the relations.
pub fn ideal_dims(p: &Presentation, window: Window) -> BigradedDimTable {
    let tensor_ideal = ideal_cells_tensor(p, window);
    let mut t = BigradedDimTable::default();
    for (b, rows) in tensor_ideal {
        let words = gen_words(p.space(), b);
        let index: BTreeMap<GenWord, usize> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let vecs: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| tensor_to_vector(r, &index, words.len()))
            .collect();
        let m = Matrix::from_rows(&vecs);
        t.add(b, m.rank());
    }
    t
}

/// Computes the quotient Lie algebra over the window: per-cell bases and
/// structure constants induced by the free bracket followed by reduction
/// along the echelon complement of the ideal.
pub fn quotient_window(p: &Presentation, window: Window) -> LieWindow {
    let space = p.space();
    let tensor_ideal = ideal_cells_tensor(p, window);
    let mut cells: BTreeMap<Bidegree, CellData> = BTreeMap::new();
    let mut elements: Vec<WindowElement> = Vec::new();

    let mut bidegrees = window_bidegrees(window);
    bidegrees.sort_by_key(|b| (b.weight, b.depth));
    for b in bidegrees {
        let words = gen_words(space, b);
        if words.is_empty() {
            continue;
        }
        let index: BTreeMap<GenWord, usize> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        // canonical echelon basis of the free Lie cell
        let lyndon_rows: Vec<Vec<Scalar>> = words
            .iter()
            .filter(|w| is_lyndon_word(w))
            .map(|w| tensor_to_vector(&bracket_gen_lyndon(w), &index, words.len()))
            .collect();
        if lyndon_rows.is_empty() {
            continue;
        }
        let (_, lie_basis) = Matrix::from_rows(&lyndon_rows).rref();
        let m = lie_basis.rows();
        let lie_pivots: Vec<usize> = (0..m)
            .map(|i| lie_basis.row(i).first().expect("nonzero row").0)
            .collect();

        // ideal in Lie-basis coordinates
        let lie_label = format!("liecell[{}][{},{}]", space.alphabet_id(), b.weight, b.depth);
        let ideal_rows: Vec<Vec<Scalar>> = tensor_ideal
            .get(&b)
            .map(|rows| {
                rows.iter()
                    .map(|t| {
                        let v = tensor_to_vector(t, &index, words.len());
                        let y: Vec<Scalar> = lie_pivots.iter().map(|&pc| v[pc].clone()).collect();
                        // the ideal must lie inside the free Lie cell
                        debug_assert_eq!(reconstruct(&lie_basis, &y), v, "ideal outside Lie cell");
                        y
                    })
                    .collect()
            })
            .unwrap_or_default();
        let ideal = Subspace::from_rows(&lie_label, m, &ideal_rows);
        let ideal_pivots: Vec<usize> = (0..ideal.dim())
            .map(|i| ideal.basis().row(i).first().expect("nonzero row").0)
            .collect();
        let quotient_rows: Vec<usize> =
            (0..m).filter(|r| !ideal_pivots.contains(r)).collect();

        let mut element_ids = Vec::new();
        for (k, &r) in quotient_rows.iter().enumerate() {
            let id = elements.len();
            // a representative that is a single generator letter keeps a
            // back-pointer to it
            let rep = lie_basis.row(r);
            let generator = if rep.len() == 1 && words[rep[0].0].len() == 1 {
                Some(words[rep[0].0][0])
            } else {
                None
            };
            elements.push(WindowElement {
                name: format!("{}[{},{}]#{}", p.name(), b.weight, b.depth, k),
                bidegree: b,
                generator,
            });
            element_ids.push(id);
        }
        cells.insert(
            b,
            CellData {
                words,
                lie_basis,
                lie_pivots,
                ideal,
                quotient_rows,
                element_ids,
            },
        );
    }

    // structure constants
    let mut brackets = BTreeMap::new();
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            let target = elements[i].bidegree.plus(elements[j].bidegree);
            if target.weight > window.max_weight || target.depth > window.max_depth {
                continue;
            }
            let ti = representative(&cells, &elements, i);
            let tj = representative(&cells, &elements, j);
            let commutator = tensor_commutator(&ti, &tj);
            let value = match cells.get(&target) {
                Some(cell) => reduce_into_cell(cell, &commutator),
                None => {
                    debug_assert!(commutator.is_empty(), "bracket escapes its cell");
                    Vec::new()
                }
            };
            brackets.insert((i, j), value);
        }
    }

    LieWindow {
        name: p.name().to_string(),
        window,
        presentation_digest: p.digest(),
        elements,
        cells,
        brackets,
    }
}

fn reconstruct(basis: &Matrix, coords: &[Scalar]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); basis.cols()];
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, bv) in basis.row(i) {
            v[j] += &bv * c;
        }
    }
    v
}

fn representative(
    cells: &BTreeMap<Bidegree, CellData>,
    elements: &[WindowElement],
    id: usize,
) -> TensorElem {
    let b = elements[id].bidegree;
    let cell = &cells[&b];
    let pos = cell.element_ids.iter().position(|&e| e == id).expect("element in cell");
    let row = cell.lie_basis.row(cell.quotient_rows[pos]);
    let mut t = TensorElem::new();
    for (j, c) in row {
        t.insert(cell.words[j].clone(), c);
    }
    t
}

/// Expands a tensor element of the cell in quotient coordinates: Lie
/// coordinates are read off the echelon pivots, then reduced modulo the
/// ideal; the surviving non-pivot coordinates index the quotient basis.
fn reduce_into_cell(cell: &CellData, t: &TensorElem) -> Vec<(usize, Scalar)> {
    if t.is_empty() {
        return Vec::new();
    }
    let index: BTreeMap<GenWord, usize> = cell
        .words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let v = tensor_to_vector(t, &index, cell.words.len());
    let y: Vec<Scalar> = cell.lie_pivots.iter().map(|&pc| v[pc].clone()).collect();
    debug_assert_eq!(reconstruct(&cell.lie_basis, &y), v, "element outside Lie cell");
    let reduced = cell.ideal.reduce(&y);
    cell.quotient_rows
        .iter()
        .enumerate()
        .filter_map(|(k, &r)| {
            let c = reduced[r].clone();
            if c.is_zero() {
                None
            } else {
                Some((cell.element_ids[k], c))
            }
        })
        .collect()
}

/// Relations of the two model presentations: the embedded cuspidal
/// period space per even weight, re-coordinated onto generator pairs.
fn period_relations(space: &BigradedSpace, max_weight: u32) -> BTreeMap<Bidegree, Subspace> {
    let weight_to_gen: BTreeMap<u32, usize> = space
        .generators()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.bidegree.depth == 1)
        .map(|(i, g)| (g.bidegree.weight, i))
        .collect();
    let mut relations = BTreeMap::new();
    for w in (12..=max_weight).step_by(2) {
        let embedded = periodpoly::embed_space(w).expect("even weight");
        if embedded.dim() == 0 {
            continue;
        }
        let b = Bidegree::new(w, 2);
        let pairs = lambda2_cell(space, b);
        let pair_index: BTreeMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let wedge_pairs = wedge_basis_ls1(w);
        let rows: Vec<Vec<Scalar>> = embedded
            .basis_rows()
            .into_iter()
            .map(|v| {
                let mut row = vec![Scalar::zero(); pairs.len()];
                for (k, &(a, bb)) in wedge_pairs.iter().enumerate() {
                    if v[k].is_zero() {
                        continue;
                    }
                    let pair = (weight_to_gen[&a], weight_to_gen[&bb]);
                    row[pair_index[&pair]] = v[k].clone();
                }
                row
            })
            .collect();
        relations.insert(
            b,
            Subspace::from_rows(&lambda2_cell_label(space, b), pairs.len(), &rows),
        );
    }
    relations
}

/// The smaller model: free Lie algebra on one depth-1 generator per odd
/// weight, modulo the period relations in depth 2.
pub fn make_m0(max_weight: u32) -> Presentation {
    let generators: Vec<Generator> = ls1_weights(max_weight)
        .into_iter()
        .map(|w| Generator {
            label: format!("s{w}"),
            bidegree: Bidegree::new(w, 1),
        })
        .collect();
    let space = BigradedSpace::new(generators);
    let relations = period_relations(&space, max_weight);
    Presentation::new("m0", space, relations)
}

/// The larger model: the same relations, with an extra copy of the
/// cuspidal space adjoined as depth-4 generators.
pub fn make_m(max_weight: u32) -> Presentation {
    let mut generators: Vec<Generator> = ls1_weights(max_weight)
        .into_iter()
        .map(|w| Generator {
            label: format!("s{w}"),
            bidegree: Bidegree::new(w, 1),
        })
        .collect();
    for w in (12..=max_weight).step_by(2) {
        let dim = periodpoly::cuspidal_period_space(w).expect("even weight").dim();
        for k in 0..dim {
            generators.push(Generator {
                label: format!("p{w}_{k}"),
                bidegree: Bidegree::new(w, 4),
            });
        }
    }
    let space = BigradedSpace::new(generators);
    let relations = period_relations(&space, max_weight);
    Presentation::new("m", space, relations)
}

/// The free Lie algebra on the depth-4 copy of the cuspidal space alone.
pub fn make_free_p4(max_weight: u32) -> Presentation {
    let mut generators = Vec::new();
    for w in (12..=max_weight).step_by(2) {
        let dim = periodpoly::cuspidal_period_space(w).expect("even weight").dim();
        for k in 0..dim {
            generators.push(Generator {
                label: format!("p{w}_{k}"),
                bidegree: Bidegree::new(w, 4),
            });
        }
    }
    Presentation::free("freep4", BigradedSpace::new(generators))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar;

    fn space_xy() -> BigradedSpace {
        BigradedSpace::new(vec![
            Generator { label: "x".into(), bidegree: Bidegree::new(3, 1) },
            Generator { label: "y".into(), bidegree: Bidegree::new(5, 1) },
        ])
    }

    fn xy_bracket_relation(space: &BigradedSpace) -> BTreeMap<Bidegree, Subspace> {
        let b = Bidegree::new(8, 2);
        let mut relations = BTreeMap::new();
        relations.insert(
            b,
            Subspace::from_rows(&lambda2_cell_label(space, b), 1, &[vec![scalar(1)]]),
        );
        relations
    }

    #[test]
    fn free_dims_single_generator() {
        let space = BigradedSpace::new(vec![Generator {
            label: "x".into(),
            bidegree: Bidegree::new(3, 1),
        }]);
        let dims = free_lie_dims(&space, Window::new(12, 4));
        assert_eq!(dims.get(Bidegree::new(3, 1)), 1);
        assert_eq!(dims.get(Bidegree::new(6, 2)), 0);
        assert_eq!(dims.get(Bidegree::new(9, 3)), 0);
    }

    #[test]
    fn free_dims_two_generators() {
        let dims = free_lie_dims(&space_xy(), Window::new(13, 3));
        assert_eq!(dims.get(Bidegree::new(8, 2)), 1); // [x,y]
        assert_eq!(dims.get(Bidegree::new(11, 3)), 1); // [x,[x,y]]
        assert_eq!(dims.get(Bidegree::new(13, 3)), 1); // [[x,y],y]
    }

    #[test]
    fn free_dims_ls1_alphabet_depth_2() {
        let space = make_m0(20).space().clone();
        let dims = free_lie_dims(&space, Window::new(20, 2));
        for w in [8u32, 10, 12, 14, 16, 18, 20] {
            assert_eq!(
                dims.get(Bidegree::new(w, 2)),
                wedge_basis_ls1(w).len(),
                "w={w}"
            );
        }
        assert_eq!(dims.get(Bidegree::new(16, 2)), 3);
    }

    /// Generating function oracle: over the window, the product of
    /// (1 - s^n t^d)^(dim L[n,d]) must equal 1 - (sum of generator
    /// monomials), coefficient by coefficient.
    #[test]
    fn free_dims_satisfy_necklace_product_identity() {
        let space = space_xy();
        let window = Window::new(16, 5);
        let dims = free_lie_dims(&space, window);
        let (mw, md) = (window.max_weight as usize, window.max_depth as usize);
        let mut product = vec![vec![0i64; md + 1]; mw + 1];
        product[0][0] = 1;
        let mut multiply_factor = |n: usize, d: usize, m: usize| {
            // multiply by (1 - s^n t^d)^m one factor at a time
            for _ in 0..m {
                let mut next = product.clone();
                for wi in n..=mw {
                    for di in d..=md {
                        next[wi][di] -= product[wi - n][di - d];
                    }
                }
                product = next;
            }
        };
        for (b, m) in dims.iter() {
            multiply_factor(b.weight as usize, b.depth as usize, m);
        }
        let mut expected = vec![vec![0i64; md + 1]; mw + 1];
        expected[0][0] = 1;
        for g in space.generators() {
            expected[g.bidegree.weight as usize][g.bidegree.depth as usize] -= 1;
        }
        // agreement on every cell the window controls: total generator
        // weight >= 3, so truncation cannot reach back below the window
        for wi in 0..=mw {
            for di in 0..=md {
                if di <= wi || (wi == 0 && di == 0) {
                    assert_eq!(product[wi][di], expected[wi][di], "cell ({wi},{di})");
                }
            }
        }
    }

    #[test]
    fn ideal_dims_empty_relations() {
        let p = Presentation::free("f", space_xy());
        assert!(ideal_dims(&p, Window::new(16, 4)).is_empty());
    }

    #[test]
    fn ideal_dims_bracket_relation() {
        let space = space_xy();
        let relations = xy_bracket_relation(&space);
        let p = Presentation::new("t", space, relations);
        let dims = ideal_dims(&p, Window::new(16, 4));
        assert_eq!(dims.get(Bidegree::new(8, 2)), 1);
        assert_eq!(dims.get(Bidegree::new(11, 3)), 1); // [x,[x,y]]
        assert_eq!(dims.get(Bidegree::new(13, 3)), 1); // [y,[x,y]]
    }

    #[test]
    fn abelianization_kills_everything_above_depth_one() {
        // R = all of the degree-2 part
        let space = space_xy();
        let b = Bidegree::new(8, 2);
        let mut relations = BTreeMap::new();
        relations.insert(
            b,
            Subspace::full(&lambda2_cell_label(&space, b), 1),
        );
        let p = Presentation::new("ab", space, relations);
        let lw = quotient_window(&p, Window::new(16, 4));
        assert_eq!(lw.dim(Bidegree::new(3, 1)), 1);
        assert_eq!(lw.dim(Bidegree::new(5, 1)), 1);
        for (b, d) in lw.dims().iter() {
            if b.depth >= 2 {
                assert_eq!(d, 0, "cell {b}");
            }
        }
    }

    #[test]
    fn m0_small_cells() {
        let p = make_m0(12);
        let lw = quotient_window(&p, Window::new(12, 2));
        assert_eq!(lw.dim(Bidegree::new(8, 2)), 1);
        assert_eq!(lw.dim(Bidegree::new(12, 2)), 1); // 2 pairs - dim P_12
        for w in [3u32, 5, 7, 9, 11] {
            assert_eq!(lw.dim(Bidegree::new(w, 1)), 1);
        }
    }

    #[test]
    fn m_contains_depth_four_generator_cell() {
        let p = make_m(12);
        let lw = quotient_window(&p, Window::new(12, 4));
        assert_eq!(lw.dim(Bidegree::new(12, 4)), 1);
        let id = lw.cell_elements(Bidegree::new(12, 4))[0];
        assert!(lw.element(id).generator.is_some());
    }

    #[test]
    fn m_relations_touch_only_depth_one_letters() {
        let p = make_m(16);
        for (b, _) in p.relations() {
            assert_eq!(b.depth, 2);
        }
    }

    #[test]
    fn m_matches_m0_below_depth_four() {
        let m = quotient_window(&make_m(14), Window::new(14, 3));
        let m0 = quotient_window(&make_m0(14), Window::new(14, 3));
        assert_eq!(m.dims(), m0.dims());
    }

    #[test]
    fn quotient_brackets_antisymmetric_and_jacobi() {
        let p = make_m0(14);
        let window = Window::new(14, 4);
        let lw = quotient_window(&p, window);
        let n = lw.elements().len();
        // antisymmetry is structural ([i,j] stored once); check Jacobi on
        // all triples whose target stays inside the window
        let combo_bracket = |combo: &[(usize, Scalar)], k: usize| -> Option<Vec<(usize, Scalar)>> {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (i, c) in combo {
                for (t, v) in lw.bracket(*i, k)? {
                    let e = acc.entry(t).or_insert_with(Scalar::zero);
                    *e += v * c;
                }
            }
            Some(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
        };
        let mut checked = 0;
        for i in 0..n {
            for j in i + 1..n {
                for k in j..n {
                    let (bi, bj, bk) = (
                        lw.element(i).bidegree,
                        lw.element(j).bidegree,
                        lw.element(k).bidegree,
                    );
                    let total = bi.plus(bj).plus(bk);
                    if total.weight > window.max_weight || total.depth > window.max_depth {
                        continue;
                    }
                    let ij = lw.bracket(i, j).unwrap();
                    let jk = lw.bracket(j, k).unwrap();
                    let ki = lw.bracket(k, i).unwrap();
                    let mut total_map: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (combo, other) in [(&ij, k), (&jk, i), (&ki, j)] {
                        for (t, v) in combo_bracket(combo, other).unwrap() {
                            let e = total_map.entry(t).or_insert_with(Scalar::zero);
                            *e += v;
                        }
                    }
                    assert!(
                        total_map.values().all(Scalar::is_zero),
                        "Jacobi fails on ({i},{j},{k})"
                    );
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn quotient_window_is_deterministic() {
        let a = quotient_window(&make_m0(14), Window::new(14, 3));
        let b = quotient_window(&make_m0(14), Window::new(14, 3));
        assert_eq!(a.content_digest(), b.content_digest());
    }

    #[test]
    fn window_repr_round_trip() {
        let lw = quotient_window(&make_m0(12), Window::new(12, 3));
        let repr = LieWindowRepr::from(&lw);
        let json = serde_json::to_string(&repr).unwrap();
        let back: LieWindowRepr = serde_json::from_str(&json).unwrap();
        let restored = back.into_window().unwrap();
        assert_eq!(restored.dims(), lw.dims());
        assert_eq!(restored.content_digest(), lw.content_digest());
    }
}
