//! Chevalley-Eilenberg homology with trivial coefficients over a computed
//! Lie algebra window.
//!
//! Chains in exterior degree `k` at a bidegree are strictly increasing
//! `k`-tuples of window basis elements whose bidegrees sum to it; the
//! boundary is the standard alternating sum over bracketed pairs. For the
//! quadratically presented models this yields the abelianization in
//! degree 1, the relation space in degree 2 (Hopf formula), and the
//! vanishing diagnostics in degree 3 that drive the Koszulity reports.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::{scalar, Matrix, Scalar, Subspace};
use crate::freelie::Bidegree;
use crate::presented::{lambda2_cell, lambda2_cell_label, window_bidegrees, LieWindow, Presentation};
use crate::report::{CheckMode, Report, Window};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error(
        "window (w<={max_weight}, d<={max_depth}) too small for degree-{degree} chains at \
         ({weight},{depth}); need at least (w<={need_weight}, d<={need_depth})"
    )]
    InsufficientWindow {
        max_weight: u32,
        max_depth: u32,
        degree: u32,
        weight: u32,
        depth: u32,
        need_weight: u32,
        need_depth: u32,
    },
}

/// Association (exterior degree, bidegree) -> dimension; absent cells are
/// zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HomologyTable {
    cells: BTreeMap<(u32, Bidegree), usize>,
}

impl HomologyTable {
    pub fn get(&self, k: u32, b: Bidegree) -> usize {
        self.cells.get(&(k, b)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, k: u32, b: Bidegree, dim: usize) {
        if dim == 0 {
            self.cells.remove(&(k, b));
        } else {
            self.cells.insert((k, b), dim);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, Bidegree), usize)> + '_ {
        self.cells.iter().map(|(&k, &d)| (k, d))
    }

    pub fn merge(&mut self, other: &HomologyTable) {
        for ((k, b), d) in other.iter() {
            self.set(k, b, d);
        }
    }
}

fn check_window(lw: &LieWindow, k: u32, b: Bidegree) -> Result<(), HomologyError> {
    let w = lw.window();
    if b.weight > w.max_weight || b.depth > w.max_depth {
        return Err(HomologyError::InsufficientWindow {
            max_weight: w.max_weight,
            max_depth: w.max_depth,
            degree: k,
            weight: b.weight,
            depth: b.depth,
            need_weight: b.weight.max(w.max_weight),
            need_depth: b.depth.max(w.max_depth),
        });
    }
    Ok(())
}

/// Ordered basis of the degree-`k` chain cell at `b`: strictly increasing
/// tuples of element ids with bidegrees summing to `b`.
pub fn chain_basis(lw: &LieWindow, k: u32, b: Bidegree) -> Vec<Vec<usize>> {
    let elements = lw.elements();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    fn rec(
        elements: &[crate::presented::WindowElement],
        start: usize,
        slots: u32,
        weight: u32,
        depth: u32,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slots == 0 {
            if weight == 0 && depth == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // every remaining element costs at least weight 3 and depth 1
        if weight < 3 * slots || depth < slots {
            return;
        }
        for i in start..elements.len() {
            let eb = elements[i].bidegree;
            if eb.weight > weight || eb.depth > depth {
                continue;
            }
            prefix.push(i);
            rec(elements, i + 1, slots - 1, weight - eb.weight, depth - eb.depth, prefix, out);
            prefix.pop();
        }
    }
    rec(elements, 0, k, b.weight, b.depth, &mut Vec::new(), &mut out);
    out
}

/// The Chevalley-Eilenberg boundary from degree-`k` chains at `b` to
/// degree-`k-1` chains: rows index the target basis, columns the source.
pub fn ce_boundary(lw: &LieWindow, k: u32, b: Bidegree) -> Result<Matrix, HomologyError> {
    check_window(lw, k, b)?;
    let source = chain_basis(lw, k, b);
    if k <= 1 {
        return Ok(Matrix::new(0, source.len()));
    }
    let target = chain_basis(lw, k - 1, b);
    let target_index: BTreeMap<&[usize], usize> = target
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let mut m = Matrix::new(target.len(), source.len());
    for (col, tuple) in source.iter().enumerate() {
        for p in 0..tuple.len() {
            for q in p + 1..tuple.len() {
                // 1-based sign (-1)^(i+j) for positions i=p+1, j=q+1
                let pair_sign = if (p + q) % 2 == 0 { 1i64 } else { -1 };
                let bracket = lw
                    .bracket(tuple[p], tuple[q])
                    .expect("bracket target inside window");
                if bracket.is_empty() {
                    continue;
                }
                let rest: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|&(pos, _)| pos != p && pos != q)
                    .map(|(_, &x)| x)
                    .collect();
                for (y, c) in bracket {
                    if rest.binary_search(&y).is_ok() {
                        continue;
                    }
                    let pos = rest.partition_point(|&x| x < y);
                    let mut merged = rest.clone();
                    merged.insert(pos, y);
                    let insert_sign = if pos % 2 == 0 { 1i64 } else { -1 };
                    let row = target_index[merged.as_slice()];
                    let cur =
                        m.get(row, col) + c * scalar(pair_sign * insert_sign);
                    m.set(row, col, cur);
                }
            }
        }
    }
    Ok(m)
}

/// Homology dimensions in exterior degree `k` over all bidegrees of the
/// window: `dim ker d_k - rank d_(k+1)` cell by cell.
pub fn homology_dims(
    lw: &LieWindow,
    k: u32,
    window: Window,
) -> Result<HomologyTable, HomologyError> {
    let mut t = HomologyTable::default();
    for b in window_bidegrees(window) {
        let chains = chain_basis(lw, k, b).len();
        if chains == 0 {
            continue;
        }
        let rank_k = ce_boundary(lw, k, b)?.rank();
        let rank_k1 = ce_boundary(lw, k + 1, b)?.rank();
        t.set(k, b, chains - rank_k - rank_k1);
    }
    Ok(t)
}

fn chain_label(lw: &LieWindow, k: u32, b: Bidegree) -> String {
    format!("chains[{}][k={k}][{},{}]", lw.name(), b.weight, b.depth)
}

fn render_chain(lw: &LieWindow, basis: &[Vec<usize>], v: &[Scalar]) -> String {
    let parts: Vec<String> = basis
        .iter()
        .zip(v.iter())
        .filter(|(_, c)| !c.is_zero())
        .map(|(tuple, c)| {
            let names: Vec<&str> = tuple.iter().map(|&i| lw.element(i).name.as_str()).collect();
            format!("{c}*{}", names.join("^"))
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Representative cycles spanning the degree-`k` homology at `b`,
/// rendered over the chain basis; used as mismatch witnesses.
pub fn homology_witness(lw: &LieWindow, k: u32, b: Bidegree) -> Vec<String> {
    let basis = chain_basis(lw, k, b);
    let label = chain_label(lw, k, b);
    let Ok(dk) = ce_boundary(lw, k, b) else {
        return Vec::new();
    };
    let Ok(dk1) = ce_boundary(lw, k + 1, b) else {
        return Vec::new();
    };
    let cycles = dk.kernel(&label);
    let image = Subspace::from_matrix(&label, &dk1.transpose());
    let mut rows = Vec::new();
    for v in cycles.basis_rows() {
        let reduced = image.reduce(&v);
        if !reduced.iter().all(Scalar::is_zero) {
            rows.push(reduced);
        }
    }
    let reps = Subspace::from_rows(&label, basis.len(), &rows);
    reps.basis_rows()
        .iter()
        .map(|v| render_chain(lw, &basis, v))
        .collect()
}

/// Degree-1 homology must reproduce the generator space cell by cell
/// (abelianization of the presented algebra).
pub fn h1_check(p: &Presentation, lw: &LieWindow) -> Result<Report, HomologyError> {
    let window = lw.window();
    let mut report = Report::new(
        "HC-i",
        "first homology equals the generator space (abelianization)",
        window,
        CheckMode::ProvedCheck,
    );
    let h1 = homology_dims(lw, 1, window)?;
    let gen_dims = p.space().dims();
    for b in window_bidegrees(window) {
        let expected = gen_dims.get(b);
        let computed = h1.get(1, b);
        if expected == 0 && computed == 0 {
            continue;
        }
        report.push_cell(b.weight, b.depth, expected as i64, computed as i64);
        if expected != computed {
            report.set_witness(
                b.weight,
                b.depth,
                "degree-1 homology differs from generator cell",
                homology_witness(lw, 1, b),
            );
        }
    }
    report.add_digest("window", lw.content_digest());
    Ok(report)
}

/// Hopf formula: the second homology of a quadratically presented algebra
/// is the relation space. Checks dimensions in every cell of the window
/// and, at relation bidegrees, the cycle space itself against the
/// relation subspace under the identification of degree-2 chains with
/// generator pairs.
pub fn hopf_check(p: &Presentation, lw: &LieWindow) -> Result<Report, HomologyError> {
    let window = lw.window();
    let mut report = Report::new(
        "HC-ii",
        "Hopf formula: second homology equals the relation space",
        window,
        CheckMode::ProvedCheck,
    );
    let h2 = homology_dims(lw, 2, window)?;
    let r_dims = p.relation_dims();
    for b in window_bidegrees(window) {
        let expected = r_dims.get(b);
        let computed = h2.get(2, b);
        if expected == 0 && computed == 0 {
            continue;
        }
        report.push_cell(b.weight, b.depth, expected as i64, computed as i64);
        if expected != computed {
            report.set_witness(
                b.weight,
                b.depth,
                "second homology differs from relation cell",
                homology_witness(lw, 2, b),
            );
        }
    }

    // cycle space equals the relation subspace at each relation bidegree
    for (&b, r) in p.relations() {
        if b.weight > window.max_weight || b.depth > window.max_depth {
            continue;
        }
        let chains = chain_basis(lw, 2, b);
        let pairs = lambda2_cell(p.space(), b);
        let pair_index: BTreeMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
        // identify each chain pair with its generator pair
        let mut permutation = Vec::with_capacity(chains.len());
        let mut identified = true;
        for tuple in &chains {
            let gi = lw.element(tuple[0]).generator;
            let gj = lw.element(tuple[1]).generator;
            match (gi, gj) {
                (Some(gi), Some(gj)) => {
                    let key = if gi < gj { (gi, gj) } else { (gj, gi) };
                    match pair_index.get(&key) {
                        Some(&k) => permutation.push(k),
                        None => identified = false,
                    }
                }
                _ => identified = false,
            }
            if !identified {
                break;
            }
        }
        if !identified || chains.len() != pairs.len() {
            report.push_cell_checked(b.weight, b.depth, r.dim() as i64, -1, false);
            report.set_witness(
                b.weight,
                b.depth,
                "degree-2 chains do not identify with generator pairs",
                Vec::new(),
            );
            continue;
        }
        let boundary = ce_boundary(lw, 2, b)?;
        let kernel_chain = boundary.kernel(&chain_label(lw, 2, b));
        let label = lambda2_cell_label(p.space(), b);
        let rows: Vec<Vec<Scalar>> = kernel_chain
            .basis_rows()
            .into_iter()
            .map(|v| {
                let mut out = vec![Scalar::zero(); pairs.len()];
                for (chain_idx, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        out[permutation[chain_idx]] = c;
                    }
                }
                out
            })
            .collect();
        let cycles = Subspace::from_rows(&label, pairs.len(), &rows);
        let ok = cycles == *r;
        report.push_cell_checked(b.weight, b.depth, r.dim() as i64, cycles.dim() as i64, ok);
        if !ok {
            report.set_witness(
                b.weight,
                b.depth,
                "cycle space differs from relation subspace",
                cycles
                    .basis_rows()
                    .iter()
                    .map(|v| {
                        let parts: Vec<String> = pairs
                            .iter()
                            .zip(v.iter())
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(&(i, j), c)| {
                                format!(
                                    "{c}*{}^{}",
                                    p.space().generator(i).label,
                                    p.space().generator(j).label
                                )
                            })
                            .collect();
                        parts.join(" + ")
                    })
                    .collect(),
            );
        }
    }
    report.add_digest("window", lw.content_digest());
    Ok(report)
}

/// Third homology table split into the proved regime (depths 1-3 must
/// vanish) and the conjectural regime (depth >= 4 cells are findings).
pub fn h3_report(lw: &LieWindow, window: Window) -> Result<(Report, Report), HomologyError> {
    let h3 = homology_dims(lw, 3, window)?;
    let mut proved = Report::new(
        "HC-iii-depth3",
        "third homology vanishes in depths 1-3 (overlap vanishing)",
        window,
        CheckMode::ProvedCheck,
    );
    let mut conjectural = Report::new(
        "HC-iii-depth4plus",
        "third homology vanishing beyond depth 3 (conjecture window)",
        window,
        CheckMode::Conjecture,
    );
    for b in window_bidegrees(window) {
        let dim = h3.get(3, b);
        let report = if b.depth <= 3 { &mut proved } else { &mut conjectural };
        // record every depth-3-capable cell with nonzero chains, plus any
        // nonzero homology cell
        let has_chains = !chain_basis(lw, 3, b).is_empty();
        if !has_chains && dim == 0 {
            continue;
        }
        report.push_cell(b.weight, b.depth, 0, dim as i64);
        if dim != 0 {
            report.set_witness(
                b.weight,
                b.depth,
                "nonvanishing third homology cell",
                homology_witness(lw, 3, b),
            );
        }
    }
    proved.add_digest("window", lw.content_digest());
    conjectural.add_digest("window", lw.content_digest());
    Ok((proved, conjectural))
}

/// Homology of a free product splits in degrees >= 2: the larger model
/// against the smaller one plus the free algebra on the depth-4 copy
/// (whose higher homology must itself vanish).
pub fn free_product_split_check(
    m: &LieWindow,
    m0: &LieWindow,
    free_p4: &LieWindow,
    window: Window,
) -> Result<Vec<Report>, HomologyError> {
    let mut out = Vec::new();
    for k in [2u32, 3] {
        let mut report = Report::new(
            &format!("FreeProduct-split-H{k}"),
            "free product homology splits as a direct sum in degrees >= 2",
            window,
            CheckMode::ProvedCheck,
        );
        let hm = homology_dims(m, k, window)?;
        let hm0 = homology_dims(m0, k, window)?;
        let hp4 = homology_dims(free_p4, k, window)?;
        for b in window_bidegrees(window) {
            let free_part = hp4.get(k, b);
            // the free summand is itself acyclic in degrees >= 2
            if free_part != 0 {
                report.push_cell_checked(b.weight, b.depth, 0, free_part as i64, false);
                report.set_witness(
                    b.weight,
                    b.depth,
                    "free Lie algebra has nonzero higher homology",
                    homology_witness(free_p4, k, b),
                );
            }
            let expected = hm0.get(k, b) + free_part;
            let computed = hm.get(k, b);
            if expected == 0 && computed == 0 {
                continue;
            }
            report.push_cell(b.weight, b.depth, expected as i64, computed as i64);
            if expected != computed {
                report.set_witness(
                    b.weight,
                    b.depth,
                    "split homology differs from direct computation",
                    homology_witness(m, k, b),
                );
            }
        }
        report.add_digest("window-m", m.content_digest());
        report.add_digest("window-m0", m0.content_digest());
        out.push(report);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presented::{make_m, make_m0, quotient_window, Presentation};

    fn m0_window(w: u32, d: u32) -> LieWindow {
        quotient_window(&make_m0(w), Window::new(w, d))
    }

    #[test]
    fn boundary_squares_to_zero() {
        let lw = m0_window(16, 4);
        for b in window_bidegrees(lw.window()) {
            for k in 2..=4u32 {
                let dk = ce_boundary(&lw, k, b).unwrap();
                let dk1 = ce_boundary(&lw, k + 1, b).unwrap();
                if dk.cols() == 0 || dk1.cols() == 0 {
                    continue;
                }
                let composite = dk.mul(&dk1);
                assert!(composite.is_empty(), "d∘d != 0 at k={k}, {b}");
            }
        }
    }

    #[test]
    fn degree_one_boundary_is_zero_map() {
        let lw = m0_window(12, 2);
        let m = ce_boundary(&lw, 1, Bidegree::new(5, 1)).unwrap();
        assert_eq!(m.rows(), 0);
        assert_eq!(m.cols(), 1);
    }

    #[test]
    fn boundary_at_12_2_matches_bracket_rank() {
        let lw = m0_window(12, 2);
        let m = ce_boundary(&lw, 2, Bidegree::new(12, 2)).unwrap();
        assert_eq!(m.cols(), 2); // s3^s9, s5^s7
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn window_too_small_is_rejected_with_diagnostic() {
        let lw = m0_window(12, 2);
        let err = ce_boundary(&lw, 2, Bidegree::new(14, 2)).unwrap_err();
        match err {
            HomologyError::InsufficientWindow { need_weight, .. } => {
                assert_eq!(need_weight, 14);
            }
        }
    }

    #[test]
    fn free_algebra_homology_concentrates_in_degree_one() {
        let space = make_m0(14).space().clone();
        let free = Presentation::free("freels1", space.clone());
        let lw = quotient_window(&free, Window::new(14, 4));
        let h1 = homology_dims(&lw, 1, lw.window()).unwrap();
        for b in window_bidegrees(lw.window()) {
            let expected = space.dims().get(b);
            assert_eq!(h1.get(1, b), expected, "H1 at {b}");
        }
        for k in [2u32, 3] {
            let hk = homology_dims(&lw, k, lw.window()).unwrap();
            assert!(hk.iter().all(|(_, d)| d == 0), "H{k} of a free algebra");
        }
    }

    #[test]
    fn m0_h1_and_h2() {
        let p = make_m0(14);
        let lw = quotient_window(&p, Window::new(14, 4));
        let r1 = h1_check(&p, &lw).unwrap();
        assert!(!r1.is_mismatch(), "{}", r1.to_text());
        let r2 = hopf_check(&p, &lw).unwrap();
        assert!(!r2.is_mismatch(), "{}", r2.to_text());
        let h2 = homology_dims(&lw, 2, lw.window()).unwrap();
        assert_eq!(h2.get(2, Bidegree::new(12, 2)), 1);
        assert_eq!(h2.get(2, Bidegree::new(8, 2)), 0);
    }

    #[test]
    fn m_h1_contains_depth_four_generators() {
        let p = make_m(12);
        let lw = quotient_window(&p, Window::new(12, 4));
        let h1 = homology_dims(&lw, 1, lw.window()).unwrap();
        assert_eq!(h1.get(1, Bidegree::new(12, 4)), 1);
        let r = h1_check(&p, &lw).unwrap();
        assert!(!r.is_mismatch());
    }

    #[test]
    fn h3_vanishes_in_low_depths_small_window() {
        let lw = m0_window(16, 4);
        let (proved, conjectural) = h3_report(&lw, lw.window()).unwrap();
        assert!(!proved.is_mismatch(), "{}", proved.to_text());
        assert!(!conjectural.is_mismatch(), "{}", conjectural.to_text());
    }

    #[test]
    fn euler_characteristic_per_cell() {
        let lw = m0_window(14, 4);
        let window = lw.window();
        for b in window_bidegrees(window) {
            let mut chain_sum = 0i64;
            let mut homology_sum = 0i64;
            for k in 1..=b.depth {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                chain_sum += sign * chain_basis(&lw, k, b).len() as i64;
                let h = homology_dims(&lw, k, window).unwrap();
                homology_sum += sign * h.get(k, b) as i64;
            }
            assert_eq!(chain_sum, homology_sum, "Euler characteristic at {b}");
        }
    }

    #[test]
    fn split_check_small_window() {
        let max_w = 16;
        let window = Window::new(max_w, 4);
        let m = quotient_window(&make_m(max_w), window);
        let m0 = quotient_window(&make_m0(max_w), window);
        let p4 = quotient_window(&crate::presented::make_free_p4(max_w), window);
        for r in free_product_split_check(&m, &m0, &p4, window).unwrap() {
            assert!(!r.is_mismatch(), "{}", r.to_text());
        }
    }
}
