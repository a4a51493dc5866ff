//! Koszulity diagnostics for the enveloping algebra of a quadratically
//! presented Lie algebra, graded so that the generators sit in degree 1.
//!
//! The enveloping algebra is the tensor algebra on the generator space
//! modulo the two-sided ideal generated by the antisymmetrized relations.
//! Its cells are computed as echelon complements of the ideal cells, the
//! reduced bar complex on the augmentation ideal gives the Tor table, and
//! the diagonal lattice intersections `C_n = ∩ V⊗..⊗R⊗..⊗V` give the
//! independent diagonal route. Koszulity over the window means every
//! computed off-diagonal Tor cell vanishes; by the homology cross-check
//! this is the same as the vanishing of the third Lie algebra homology.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::{scalar, Matrix, Scalar, Subspace};
use crate::freelie::Bidegree;
use crate::homology::HomologyTable;
use crate::presented::{gen_words, lambda2_cell, BigradedSpace, Presentation};
use crate::report::{CheckMode, Report, Window};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KoszulError {
    #[error("quadratic data needs depth-1 generators, found `{0}` in depth {1}")]
    GeneratorDepth(String, u32),
    #[error("quadratic data needs relations in depth 2, found a cell at ({0},{1})")]
    RelationDepth(u32, u32),
}

/// A quadratic presentation of the enveloping algebra: depth-1 generators
/// and the antisymmetrized relation cells inside the square tensor cells.
#[derive(Debug, Clone)]
pub struct QuadraticData {
    space: BigradedSpace,
    r_tensor: BTreeMap<u32, Subspace>,
}

/// Ordered basis of the `k`-fold tensor cell of weight `w`: words of `k`
/// generator indices, lexicographic.
pub fn tensor_cell(space: &BigradedSpace, w: u32, k: u32) -> Vec<Vec<usize>> {
    if k > w {
        return Vec::new();
    }
    gen_words(space, Bidegree::new(w, k))
}

pub fn tensor_cell_label(space: &BigradedSpace, w: u32, k: u32) -> String {
    format!("tensor[{}][{w},{k}]", space.alphabet_id())
}

/// Sends each relation `a ∧ b` to `a ⊗ b - b ⊗ a`; dimensions are
/// preserved and the image consists of antisymmetric tensors.
pub fn antisymmetrize(space: &BigradedSpace, weight: u32, r: &Subspace) -> Subspace {
    let pairs = lambda2_cell(space, Bidegree::new(weight, 2));
    assert_eq!(r.ambient_dim(), pairs.len(), "relation cell mismatch");
    let words = tensor_cell(space, weight, 2);
    let index: BTreeMap<&[usize], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let rows: Vec<Vec<Scalar>> = r
        .basis_rows()
        .into_iter()
        .map(|v| {
            let mut out = vec![Scalar::zero(); words.len()];
            for (k, c) in v.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = pairs[k];
                out[index[[i, j].as_slice()]] += &c;
                out[index[[j, i].as_slice()]] -= &c;
            }
            out
        })
        .collect();
    Subspace::from_rows(&tensor_cell_label(space, weight, 2), words.len(), &rows)
}

impl QuadraticData {
    /// Extracts quadratic data from a presentation whose generators all
    /// sit in depth 1 and whose relations all sit in depth 2.
    pub fn from_presentation(p: &Presentation) -> Result<Self, KoszulError> {
        for g in p.space().generators() {
            if g.bidegree.depth != 1 {
                return Err(KoszulError::GeneratorDepth(g.label.clone(), g.bidegree.depth));
            }
        }
        let mut r_tensor = BTreeMap::new();
        for (&b, r) in p.relations() {
            if b.depth != 2 {
                return Err(KoszulError::RelationDepth(b.weight, b.depth));
            }
            r_tensor.insert(b.weight, antisymmetrize(p.space(), b.weight, r));
        }
        Ok(QuadraticData {
            space: p.space().clone(),
            r_tensor,
        })
    }

    pub fn space(&self) -> &BigradedSpace {
        &self.space
    }

    pub fn relation_cell(&self, w: u32) -> Option<&Subspace> {
        self.r_tensor.get(&w)
    }

    pub fn relation_weights(&self) -> Vec<u32> {
        self.r_tensor.keys().copied().collect()
    }
}

/// The subspace `V^(⊗left) ⊗ R ⊗ V^(⊗right)` of the weight-`w` tensor
/// cell of length `left + 2 + right`.
fn lattice_piece(q: &QuadraticData, left: u32, right: u32, w: u32) -> Subspace {
    let space = &q.space;
    let n = left + 2 + right;
    let words = tensor_cell(space, w, n);
    let label = tensor_cell_label(space, w, n);
    let index: BTreeMap<&[usize], usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let mut rows = Vec::new();
    for (&rw, r) in &q.r_tensor {
        if rw + 3 * (left + right) > w {
            continue;
        }
        let pair_words = tensor_cell(space, rw, 2);
        let rest = w - rw;
        for u in tensor_words_of_length(space, left, rest) {
            let uw: u32 = u.iter().map(|&i| space.generator(i).bidegree.weight).sum();
            for v in tensor_words_of_length(space, right, rest - uw) {
                let vw: u32 = v.iter().map(|&i| space.generator(i).bidegree.weight).sum();
                if uw + vw != rest {
                    continue;
                }
                for rrow in r.basis_rows() {
                    let mut out = vec![Scalar::zero(); words.len()];
                    for (k, c) in rrow.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut word = u.clone();
                        word.extend_from_slice(&pair_words[k]);
                        word.extend_from_slice(&v);
                        out[index[word.as_slice()]] += c;
                    }
                    rows.push(out);
                }
            }
        }
    }
    Subspace::from_rows(&label, words.len(), &rows)
}

/// Words of exactly `len` letters with weight at most `max_weight`
/// (including the empty word for `len = 0`).
fn tensor_words_of_length(space: &BigradedSpace, len: u32, max_weight: u32) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for w in 3 * len..=max_weight {
        out.extend(tensor_cell(space, w, len));
    }
    out
}

/// Per-weight dims of the overlap `(V⊗R) ∩ (R⊗V)` inside the triple
/// tensor cell; all must vanish for the lattice to collapse.
pub fn overlap_check(q: &QuadraticData, window: Window) -> Report {
    let mut report = Report::new(
        "Overlap",
        "overlap vanishing: (depth1 ⊗ relations) meets (relations ⊗ depth1) trivially",
        window,
        CheckMode::ProvedCheck,
    );
    let min_rel = q.relation_weights().first().copied().unwrap_or(u32::MAX);
    for w in 1..=window.max_weight {
        if w < min_rel + 3 {
            continue; // one factor is empty
        }
        let left = lattice_piece(q, 1, 0, w);
        let right = lattice_piece(q, 0, 1, w);
        let inter = left.intersect(&right).expect("same ambient");
        report.push_cell(w, 3, 0, inter.dim() as i64);
        if inter.dim() > 0 {
            let words = tensor_cell(&q.space, w, 3);
            let basis = inter
                .basis_rows()
                .iter()
                .map(|v| render_tensor(&q.space, &words, v))
                .collect();
            report.set_witness(w, 3, "nonzero overlap cell", basis);
        }
    }
    report
}

fn render_tensor(space: &BigradedSpace, words: &[Vec<usize>], v: &[Scalar]) -> String {
    let parts: Vec<String> = words
        .iter()
        .zip(v.iter())
        .filter(|(_, c)| !c.is_zero())
        .map(|(word, c)| {
            let names: Vec<&str> = word.iter().map(|&i| space.generator(i).label.as_str()).collect();
            format!("{c}*{}", names.join("."))
        })
        .collect();
    parts.join(" + ")
}

/// Per-weight dims of the `n`-fold lattice intersection
/// `∩_i V^(⊗i) ⊗ R ⊗ V^(⊗ n-2-i)`; the table is keyed by (weight, n).
pub fn lattice_cn(q: &QuadraticData, n: u32, window: Window) -> crate::presented::BigradedDimTable {
    assert!(n >= 2, "the lattice starts at n = 2");
    let mut t = crate::presented::BigradedDimTable::default();
    for w in 3 * n..=window.max_weight {
        let mut current: Option<Subspace> = None;
        for i in 0..=(n - 2) {
            let piece = lattice_piece(q, i, n - 2 - i, w);
            current = Some(match current {
                None => piece,
                Some(acc) => acc.intersect(&piece).expect("same ambient"),
            });
            if current.as_ref().map_or(false, |s| s.dim() == 0) {
                break;
            }
        }
        if let Some(s) = current {
            t.add(Bidegree::new(w, n), s.dim());
        }
    }
    t
}

/// Report over the lattice: `C_2` must reproduce the relation dims and
/// every `C_n`, `n >= 3`, must vanish.
pub fn lattice_report(q: &QuadraticData, n_max: u32, window: Window) -> Report {
    let mut report = Report::new(
        "Lattice-Cn",
        "diagonal lattice cells: C_2 = relations, C_n = 0 for n >= 3",
        window,
        CheckMode::ProvedCheck,
    );
    for n in 2..=n_max {
        let t = lattice_cn(q, n, window);
        for w in 3 * n..=window.max_weight {
            let b = Bidegree::new(w, n);
            let expected = if n == 2 {
                q.relation_cell(w).map_or(0, Subspace::dim)
            } else {
                0
            };
            let computed = t.get(b);
            if expected == 0 && computed == 0 {
                continue;
            }
            report.push_cell(w, n, expected as i64, computed as i64);
        }
    }
    report
}

/// One cell of the graded quotient algebra: tensor words, the ideal cell
/// in echelon form, and the complement word indices serving as a basis.
#[derive(Debug, Clone)]
struct AlgCell {
    words: Vec<Vec<usize>>,
    ideal: Subspace,
    basis_words: Vec<usize>,
}

/// Basis element of the positive part of the quotient algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlgElem {
    pub weight: u32,
    pub degree: u32,
    pub index: usize,
}

/// The quotient algebra `T(V)/(R)` computed per cell over a window, with
/// multiplication by concatenate-then-reduce.
#[derive(Debug)]
pub struct AlgebraWindow {
    space: BigradedSpace,
    window: Window,
    cells: BTreeMap<(u32, u32), AlgCell>,
}

impl AlgebraWindow {
    pub fn window(&self) -> Window {
        self.window
    }

    pub fn dim(&self, w: u32, d: u32) -> usize {
        self.cells.get(&(w, d)).map_or(0, |c| c.basis_words.len())
    }

    pub fn elements(&self, w: u32, d: u32) -> Vec<AlgElem> {
        (0..self.dim(w, d))
            .map(|index| AlgElem { weight: w, degree: d, index })
            .collect()
    }

    pub fn element_name(&self, e: AlgElem) -> String {
        let cell = &self.cells[&(e.weight, e.degree)];
        let word = &cell.words[cell.basis_words[e.index]];
        let names: Vec<&str> = word
            .iter()
            .map(|&i| self.space.generator(i).label.as_str())
            .collect();
        format!("[{}]", names.join("."))
    }

    /// Product of two basis classes, expanded over the basis of the
    /// target cell. `None` when the target escapes the window.
    pub fn product(&self, a: AlgElem, b: AlgElem) -> Option<Vec<(AlgElem, Scalar)>> {
        let (tw, td) = (a.weight + b.weight, a.degree + b.degree);
        if tw > self.window.max_weight || td > self.window.max_depth {
            return None;
        }
        let target = self.cells.get(&(tw, td))?;
        let ca = &self.cells[&(a.weight, a.degree)];
        let cb = &self.cells[&(b.weight, b.degree)];
        let mut word = ca.words[ca.basis_words[a.index]].clone();
        word.extend_from_slice(&cb.words[cb.basis_words[b.index]]);
        let pos = target
            .words
            .binary_search(&word)
            .expect("concatenation stays in the cell");
        let mut v = vec![Scalar::zero(); target.words.len()];
        v[pos] = scalar(1);
        Some(reduce_in_cell(target, tw, td, &v))
    }
}

fn reduce_in_cell(cell: &AlgCell, w: u32, d: u32, v: &[Scalar]) -> Vec<(AlgElem, Scalar)> {
    let reduced = cell.ideal.reduce(v);
    cell.basis_words
        .iter()
        .enumerate()
        .filter_map(|(index, &word_idx)| {
            let c = reduced[word_idx].clone();
            if c.is_zero() {
                None
            } else {
                Some((AlgElem { weight: w, degree: d, index }, c))
            }
        })
        .collect()
}

/// Builds every cell of the quotient algebra inside the window: the
/// two-sided ideal cell is the sum of all lattice pieces at that cell.
pub fn build_algebra(q: &QuadraticData, window: Window) -> AlgebraWindow {
    let mut cells = BTreeMap::new();
    for d in 1..=window.max_depth {
        for w in 3 * d..=window.max_weight {
            let words = tensor_cell(&q.space, w, d);
            if words.is_empty() {
                continue;
            }
            let label = tensor_cell_label(&q.space, w, d);
            let mut ideal = Subspace::zero(&label, words.len());
            if d >= 2 {
                for i in 0..=(d - 2) {
                    let piece = lattice_piece(q, i, d - 2 - i, w);
                    ideal = ideal.sum(&piece).expect("same ambient");
                }
            }
            let pivots: Vec<usize> = (0..ideal.dim())
                .map(|r| ideal.basis().row(r).first().expect("nonzero row").0)
                .collect();
            let basis_words: Vec<usize> =
                (0..words.len()).filter(|i| !pivots.contains(i)).collect();
            cells.insert((w, d), AlgCell { words, ideal, basis_words });
        }
    }
    AlgebraWindow {
        space: q.space.clone(),
        window,
        cells,
    }
}

/// Association (syzygy degree, weight, algebra degree) -> dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TorTable {
    cells: BTreeMap<(u32, u32, u32), usize>,
}

impl TorTable {
    pub fn get(&self, i: u32, w: u32, d: u32) -> usize {
        self.cells.get(&(i, w, d)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: u32, w: u32, d: u32, dim: usize) {
        if dim == 0 {
            self.cells.remove(&(i, w, d));
        } else {
            self.cells.insert((i, w, d), dim);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32, u32), usize)> + '_ {
        self.cells.iter().map(|(&k, &d)| (k, d))
    }
}

/// Chains of the reduced bar complex at syzygy `s` and cell (w, d):
/// tuples of positive-part basis elements with the given totals.
fn bar_chains(alg: &AlgebraWindow, s: u32, w: u32, d: u32) -> Vec<Vec<AlgElem>> {
    fn rec(
        alg: &AlgebraWindow,
        slots: u32,
        weight: u32,
        degree: u32,
        prefix: &mut Vec<AlgElem>,
        out: &mut Vec<Vec<AlgElem>>,
    ) {
        if slots == 0 {
            if weight == 0 && degree == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if weight < 3 * slots || degree < slots {
            return;
        }
        for dd in 1..=(degree - (slots - 1)) {
            for ww in 3 * dd..=(weight - 3 * (slots - 1)) {
                for e in alg.elements(ww, dd) {
                    prefix.push(e);
                    rec(alg, slots - 1, weight - ww, degree - dd, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(alg, s, w, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Bar differential from syzygy `s` to `s - 1` at cell (w, d): merge each
/// adjacent pair with alternating signs.
fn bar_boundary(alg: &AlgebraWindow, s: u32, w: u32, d: u32) -> Matrix {
    let source = bar_chains(alg, s, w, d);
    if s <= 1 {
        return Matrix::new(0, source.len());
    }
    let target = bar_chains(alg, s - 1, w, d);
    let index: BTreeMap<&[AlgElem], usize> = target
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let mut m = Matrix::new(target.len(), source.len());
    for (col, tuple) in source.iter().enumerate() {
        for p in 0..tuple.len() - 1 {
            let sign = if p % 2 == 0 { scalar(1) } else { scalar(-1) };
            let Some(product) = alg.product(tuple[p], tuple[p + 1]) else {
                continue;
            };
            for (e, c) in product {
                let mut merged: Vec<AlgElem> = Vec::with_capacity(tuple.len() - 1);
                merged.extend_from_slice(&tuple[..p]);
                merged.push(e);
                merged.extend_from_slice(&tuple[p + 2..]);
                let row = index[merged.as_slice()];
                let cur = m.get(row, col) + &c * &sign;
                m.set(row, col, cur);
            }
        }
    }
    m
}

/// Tor dimensions from the reduced bar complex, for syzygy degrees up to
/// `i_max`, over all cells of the window.
pub fn bar_tor(alg: &AlgebraWindow, i_max: u32, window: Window) -> TorTable {
    let mut t = TorTable::default();
    for s in 1..=i_max {
        for d in s..=window.max_depth {
            for w in 3 * d..=window.max_weight {
                let chains = bar_chains(alg, s, w, d).len();
                if chains == 0 {
                    continue;
                }
                let rank_s = bar_boundary(alg, s, w, d).rank();
                let rank_s1 = bar_boundary(alg, s + 1, w, d).rank();
                t.set(s, w, d, chains - rank_s - rank_s1);
            }
        }
    }
    t
}

/// Representative bar cycles spanning the Tor cell, for witnesses.
pub fn bar_witness(alg: &AlgebraWindow, s: u32, w: u32, d: u32) -> Vec<String> {
    let chains = bar_chains(alg, s, w, d);
    let label = format!("bar[{s}][{w},{d}]");
    let cycles = bar_boundary(alg, s, w, d).kernel(&label);
    let image = Subspace::from_matrix(&label, &bar_boundary(alg, s + 1, w, d).transpose());
    let mut rows = Vec::new();
    for v in cycles.basis_rows() {
        let reduced = image.reduce(&v);
        if !reduced.iter().all(Scalar::is_zero) {
            rows.push(reduced);
        }
    }
    Subspace::from_rows(&label, chains.len(), &rows)
        .basis_rows()
        .iter()
        .map(|v| {
            let parts: Vec<String> = chains
                .iter()
                .zip(v.iter())
                .filter(|(_, c)| !c.is_zero())
                .map(|(tuple, c)| {
                    let names: Vec<String> =
                        tuple.iter().map(|&e| alg.element_name(e)).collect();
                    format!("{c}*{}", names.join("(x)"))
                })
                .collect();
            parts.join(" + ")
        })
        .collect()
}

/// Cross-oracle equality of the bar-complex Tor table against the
/// Chevalley-Eilenberg homology of the presented Lie algebra, cell by
/// cell for syzygy degrees up to `i_max`.
pub fn tor_cross_check(
    tor: &TorTable,
    ce: &HomologyTable,
    i_max: u32,
    window: Window,
) -> Report {
    let mut report = Report::new(
        "Tor-crosscheck",
        "bar-complex Tor agrees with Chevalley-Eilenberg homology",
        window,
        CheckMode::ProvedCheck,
    );
    for i in 1..=i_max {
        for d in 1..=window.max_depth {
            for w in d..=window.max_weight {
                let t = tor.get(i, w, d);
                let h = ce.get(i, Bidegree::new(w, d));
                if t == 0 && h == 0 {
                    continue;
                }
                report.push_cell(w, d, h as i64, t as i64);
            }
        }
    }
    report
}

/// Consolidated Koszulity verdict over the window: every computed
/// off-diagonal Tor cell must vanish, in step with the third homology.
/// Never asserts anything beyond the window.
pub fn koszul_report(
    alg: &AlgebraWindow,
    tor: &TorTable,
    h3: &HomologyTable,
    i_max: u32,
    window: Window,
) -> Report {
    let mut report = Report::new(
        "Koszul",
        "enveloping algebra Koszulity window: off-diagonal Tor vanishes",
        window,
        CheckMode::Conjecture,
    );
    for ((i, w, d), dim) in tor.iter() {
        if i > i_max || i == d {
            continue;
        }
        report.push_cell(w, d, 0, dim as i64);
        if dim > 0 {
            report.set_witness(w, d, "off-diagonal Tor cell", bar_witness(alg, i, w, d));
        }
    }
    for ((k, b), dim) in h3.iter() {
        if k != 3 {
            continue;
        }
        report.push_cell(b.weight, b.depth, 0, dim as i64);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presented::{make_m0, quotient_window, Generator};
    use crate::report::Window;

    fn m0_quadratic(max_weight: u32) -> QuadraticData {
        QuadraticData::from_presentation(&make_m0(max_weight)).unwrap()
    }

    fn toy_space(weights: &[u32]) -> BigradedSpace {
        BigradedSpace::new(
            weights
                .iter()
                .map(|&w| Generator {
                    label: format!("g{w}"),
                    bidegree: Bidegree::new(w, 1),
                })
                .collect(),
        )
    }

    /// Toy with R = all of the wedge square: the quotient is the
    /// symmetric algebra and the lattice reproduces exterior powers.
    fn symmetric_toy(weights: &[u32]) -> QuadraticData {
        let space = toy_space(weights);
        let mut r_tensor = BTreeMap::new();
        let mut by_weight: BTreeMap<u32, Vec<Vec<Scalar>>> = BTreeMap::new();
        for w in 2..=(weights.iter().sum::<u32>() * 2) {
            let pairs = lambda2_cell(&space, Bidegree::new(w, 2));
            if pairs.is_empty() {
                continue;
            }
            let full = Subspace::full(&crate::presented::lambda2_cell_label(&space, Bidegree::new(w, 2)), pairs.len());
            r_tensor.insert(w, antisymmetrize(&space, w, &full));
            by_weight.entry(w).or_default();
        }
        QuadraticData { space, r_tensor }
    }

    #[test]
    fn antisymmetrize_preserves_dimension_and_antisymmetry() {
        let p = make_m0(12);
        let b = Bidegree::new(12, 2);
        let r = &p.relations()[&b];
        let t = antisymmetrize(p.space(), 12, r);
        assert_eq!(t.dim(), r.dim());
        // swap eigenvalue -1 on every basis vector
        let words = tensor_cell(p.space(), 12, 2);
        for v in t.basis_rows() {
            for (k, word) in words.iter().enumerate() {
                let swapped = vec![word[1], word[0]];
                let pos = words.binary_search(&swapped).unwrap();
                assert_eq!(v[k], -v[pos].clone());
            }
        }
    }

    #[test]
    fn overlap_vanishes_in_small_window() {
        let q = m0_quadratic(18);
        let r = overlap_check(&q, Window::new(18, 4));
        assert!(!r.is_mismatch(), "{}", r.to_text());
    }

    #[test]
    fn lattice_c2_is_relation_table() {
        let q = m0_quadratic(16);
        let t = lattice_cn(&q, 2, Window::new(16, 4));
        assert_eq!(t.get(Bidegree::new(12, 2)), 1);
        assert_eq!(t.get(Bidegree::new(16, 2)), 1);
        assert_eq!(t.get(Bidegree::new(14, 2)), 0);
    }

    #[test]
    fn lattice_c3_vanishes_for_the_model() {
        let q = m0_quadratic(18);
        let t = lattice_cn(&q, 3, Window::new(18, 4));
        assert!(t.is_empty(), "C3 cells: {:?}", t.iter().collect::<Vec<_>>());
    }

    #[test]
    fn symmetric_toy_lattice_matches_exterior_powers() {
        // two generators: the third exterior power is zero
        let q2 = symmetric_toy(&[3, 5]);
        let t2 = lattice_cn(&q2, 3, Window::new(16, 4));
        assert!(t2.is_empty());
        // three generators of distinct weights: dim 1 at (15, 3)
        let q3 = symmetric_toy(&[3, 5, 7]);
        let t3 = lattice_cn(&q3, 3, Window::new(15, 4));
        assert_eq!(t3.get(Bidegree::new(15, 3)), 1);
    }

    #[test]
    fn algebra_cells_complement_relations() {
        let q = m0_quadratic(12);
        let alg = build_algebra(&q, Window::new(12, 3));
        assert_eq!(alg.dim(12, 2), 3); // 4 words - dim P_12
        assert_eq!(alg.dim(8, 2), 2); // no relation at weight 8
        assert_eq!(alg.dim(3, 1), 1);
    }

    #[test]
    fn bar_tor_low_syzygies() {
        let q = m0_quadratic(14);
        let window = Window::new(14, 3);
        let alg = build_algebra(&q, window);
        let tor = bar_tor(&alg, 3, window);
        // syzygy 1: generator cells
        for w in [3u32, 5, 7, 9, 11, 13] {
            assert_eq!(tor.get(1, w, 1), 1, "Tor_1 at weight {w}");
        }
        // syzygy 2: relation cells in degree 2
        assert_eq!(tor.get(2, 12, 2), 1);
        assert_eq!(tor.get(2, 14, 2), 0);
        // vanishing below the diagonal
        for ((i, w, d), dim) in tor.iter() {
            assert!(i <= d, "Tor below diagonal at ({i},{w},{d}) = {dim}");
        }
    }

    #[test]
    fn tor_agrees_with_ce_homology_small_window() {
        let max_w = 12;
        let window = Window::new(max_w, 4);
        let p = make_m0(max_w);
        let q = QuadraticData::from_presentation(&p).unwrap();
        let alg = build_algebra(&q, window);
        let tor = bar_tor(&alg, 3, window);
        let lw = quotient_window(&p, window);
        let mut ce = HomologyTable::default();
        for k in 1..=3u32 {
            ce.merge(&crate::homology::homology_dims(&lw, k, window).unwrap());
        }
        let r = tor_cross_check(&tor, &ce, 3, window);
        assert!(!r.is_mismatch(), "{}", r.to_text());
    }

    #[test]
    fn koszul_report_consistent_small_window() {
        let max_w = 12;
        let window = Window::new(max_w, 4);
        let p = make_m0(max_w);
        let q = QuadraticData::from_presentation(&p).unwrap();
        let alg = build_algebra(&q, window);
        let tor = bar_tor(&alg, 3, window);
        let lw = quotient_window(&p, window);
        let h3 = crate::homology::homology_dims(&lw, 3, window).unwrap();
        let r = koszul_report(&alg, &tor, &h3, 3, window);
        assert!(!r.is_mismatch(), "{}", r.to_text());
        assert_eq!(r.status, crate::report::Status::ConjectureConsistent);
    }
}
