//! Depth 1 and 2 of the linearized double shuffle Lie algebra, realized
//! inside the free Lie algebra with the Ihara bracket.
//!
//! Depth 1 is spanned by one generator `sigma_w = ad(e0)^(w-1)(e1)` per
//! odd weight `w >= 3`. The Ihara bracket restricts to a linear map from
//! the wedge square of depth 1 to the depth-2 word cell; its image is the
//! depth-2 space and its kernel is, cell by cell, the embedded cuspidal
//! period polynomial space. That exactness, together with injectivity of
//! the induced degree-3 map into (depth 2) tensor (depth 1), is what this
//! module verifies.

use std::collections::BTreeMap;

use crate::exactlin::{Matrix, Scalar, Subspace};
use crate::freelie::{cell_words, ihara_bracket, sigma, LieElement};
use crate::periodpoly;
use crate::report::{CheckMode, Report, Window};

/// Canonical ordered basis of the weight-`w` cell of the wedge square of
/// depth 1: pairs `(a, b)` with `a < b` both odd `>= 3` and `a + b = w`,
/// in lexicographic order.
pub fn wedge_basis_ls1(w: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut a = 3;
    while 2 * a < w {
        let b = w - a;
        if b % 2 == 1 {
            out.push((a, b));
        }
        a += 2;
    }
    out
}

pub fn wedge_cell_label(w: u32) -> String {
    format!("wedge-ls1[{w}]")
}

/// Odd generator weights `>= 3` up to `max` inclusive.
pub fn ls1_weights(max: u32) -> Vec<u32> {
    (3..=max).step_by(2).collect()
}

fn sigma_cached(cache: &mut BTreeMap<u32, LieElement>, k: u32) -> LieElement {
    cache
        .entry(k)
        .or_insert_with(|| sigma(k).expect("odd weight"))
        .clone()
}

/// Matrix of the Ihara bracket map from the weight-`w` wedge cell of
/// depth 1 to the depth-2 word cell: column `(a,b)` holds the word
/// expansion of `<sigma_a, sigma_b>`.
pub fn bracket_map(w: u32) -> Matrix {
    let pairs = wedge_basis_ls1(w);
    let words = cell_words(w, 2);
    let mut cache = BTreeMap::new();
    let mut m = Matrix::new(words.len(), pairs.len());
    for (col, &(a, b)) in pairs.iter().enumerate() {
        let sa = sigma_cached(&mut cache, a);
        let sb = sigma_cached(&mut cache, b);
        let br = ihara_bracket(&sa, &sb);
        let v = br
            .cell_vector(&words)
            .expect("bracket lands in the depth-2 cell");
        for (row, c) in v.into_iter().enumerate() {
            m.set(row, col, c);
        }
    }
    m
}

/// Kernel of the bracket map, as a subspace of the wedge cell.
pub fn bracket_kernel(w: u32) -> Subspace {
    bracket_map(w).kernel(&wedge_cell_label(w))
}

/// The depth-2 cell of the linearized double shuffle algebra at weight
/// `w`: the image of the Ihara bracket on the wedge cell, inside the
/// depth-2 word cell.
pub fn ls2_subspace(w: u32) -> Subspace {
    let m = bracket_map(w).transpose();
    Subspace::from_matrix(&word_cell_label(w, 2), &m)
}

pub fn word_cell_label(n: u32, d: u32) -> String {
    format!("words[{n},{d}]")
}

/// Dimension of the cuspidal period space, zero at odd weights.
fn dim_p(w: u32) -> usize {
    if w % 2 == 0 && w >= 4 {
        periodpoly::cuspidal_period_space(w).expect("even weight").dim()
    } else {
        0
    }
}

fn render_wedge_vector(pairs: &[(u32, u32)], v: &[Scalar]) -> String {
    use num_traits::Zero;
    let parts: Vec<String> = pairs
        .iter()
        .zip(v.iter())
        .filter(|(_, c)| !c.is_zero())
        .map(|(&(a, b), c)| format!("{c}*s{a}^s{b}"))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Checks the exact sequence at weight `w`: the kernel of the bracket map
/// must equal the embedded cuspidal space (as subspaces of the wedge
/// cell), and the depth-2 dimension must be the wedge dimension minus the
/// cuspidal dimension. A failed equality is reported, never an abort.
pub fn verify_gkz(w: u32) -> Report {
    let mut report = Report::new(
        "GKZ-exactness",
        "Gangl-Kaneko-Zagier / Schneps exact sequence in depth 2",
        Window::new(w, 2),
        CheckMode::ProvedCheck,
    );
    let pairs = wedge_basis_ls1(w);
    let kernel = bracket_kernel(w);
    let embedded = if w % 2 == 0 && w >= 4 {
        periodpoly::embed_space(w).expect("even weight")
    } else {
        Subspace::zero(&wedge_cell_label(w), pairs.len())
    };
    let p_dim = dim_p(w);

    // (i) kernel equals the embedded period space, as subspaces
    let kernels_equal = kernel == embedded;
    report.push_cell_checked(w, 2, p_dim as i64, kernel.dim() as i64, kernels_equal);
    if !kernels_equal {
        let mut basis: Vec<String> = kernel
            .basis_rows()
            .iter()
            .map(|v| format!("kernel: {}", render_wedge_vector(&pairs, v)))
            .collect();
        basis.extend(
            embedded
                .basis_rows()
                .iter()
                .map(|v| format!("embedded: {}", render_wedge_vector(&pairs, v))),
        );
        report.set_witness(w, 2, "bracket kernel != embedded period space", basis);
    }

    // (ii) dim ls2[w] = dim wedge cell - dim P_w
    let ls2_dim = ls2_subspace(w).dim();
    report.push_cell(w, 2, (pairs.len() - p_dim) as i64, ls2_dim as i64);
    report
}

/// Ordered basis of the weight-`w` cell of the third wedge power of
/// depth 1: triples `(a, b, c)`, `a < b < c` odd `>= 3`, summing to `w`.
pub fn wedge3_basis_ls1(w: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    let mut a = 3;
    while 3 * a < w {
        let mut b = a + 2;
        while a + 2 * b < w {
            let c = w - a - b;
            if c % 2 == 1 {
                out.push((a, b, c));
            }
            b += 2;
        }
        a += 2;
    }
    out
}

/// Matrix of the degree-3 boundary-type map from the third wedge power of
/// depth 1 into (depth-2 word cell) tensor (depth 1):
/// `f^g^h -> <f,g>(x)h - <f,h>(x)g + <g,h>(x)f`.
/// Rows are indexed by pairs (right tensor factor weight, depth-2 word).
pub fn goncharov_map(w: u32) -> Matrix {
    let triples = wedge3_basis_ls1(w);
    // ambient blocks: for each odd right factor g, the depth-2 cell of
    // weight w - g
    let factors: Vec<u32> = ls1_weights(w.saturating_sub(6)).to_vec();
    let mut offsets = BTreeMap::new();
    let mut total = 0usize;
    for &g in &factors {
        offsets.insert(g, total);
        total += cell_words(w - g, 2).len();
    }
    let mut cache = BTreeMap::new();
    let mut m = Matrix::new(total, triples.len());
    for (col, &(a, b, c)) in triples.iter().enumerate() {
        // (pair bracketed, right factor, sign)
        let parts = [((a, b), c, 1i64), ((a, c), b, -1), ((b, c), a, 1)];
        for ((x, y), g, sign) in parts {
            let sx = sigma_cached(&mut cache, x);
            let sy = sigma_cached(&mut cache, y);
            let br = ihara_bracket(&sx, &sy);
            let words = cell_words(w - g, 2);
            let v = br.cell_vector(&words).expect("depth-2 cell");
            let base = offsets[&g];
            for (row, coeff) in v.into_iter().enumerate() {
                let cur = m.get(base + row, col) + coeff * crate::exactlin::scalar(sign);
                m.set(base + row, col, cur);
            }
        }
    }
    m
}

/// Injectivity of the degree-3 map at weight `w`, plus the consequence
/// that the embedded period space tensored with depth 1 meets the third
/// wedge power trivially.
pub fn goncharov_injectivity(w: u32) -> Report {
    let mut report = Report::new(
        "Goncharov-injectivity",
        "Goncharov: wedge^3(depth 1) injects into (depth 2) tensor (depth 1)",
        Window::new(w, 3),
        CheckMode::ProvedCheck,
    );
    let triples = wedge3_basis_ls1(w);
    let rank = goncharov_map(w).rank();
    report.push_cell(w, 3, triples.len() as i64, rank as i64);

    // consequence: (P (x) ls1) meets wedge^3(ls1) trivially inside the
    // triple tensor cell
    let inter_dim = p_tensor_cap_wedge3(w).dim();
    report.push_cell(w, 3, 0, inter_dim as i64);
    report
}

/// Ordered triples `(a, b, c)` of odd weights `>= 3` summing to `w`: the
/// canonical basis of the triple tensor cell of depth 1.
pub fn tensor3_basis_ls1(w: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for a in ls1_weights(w) {
        for b in ls1_weights(w.saturating_sub(a)) {
            if a + b + 3 > w {
                continue;
            }
            let c = w - a - b;
            if c >= 3 && c % 2 == 1 {
                out.push((a, b, c));
            }
        }
    }
    out.sort_unstable();
    out
}

fn tensor3_cell_label(w: u32) -> String {
    format!("ls1-tensor3[{w}]")
}

/// The intersection `(P (x) ls1) ∩ wedge^3(ls1)` inside the triple tensor
/// cell of weight `w`.
pub fn p_tensor_cap_wedge3(w: u32) -> Subspace {
    let basis = tensor3_basis_ls1(w);
    let index: BTreeMap<(u32, u32, u32), usize> =
        basis.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let label = tensor3_cell_label(w);
    let dim = basis.len();
    use crate::exactlin::scalar;
    use num_traits::Zero;

    // span of (embedded period vector) (x) sigma_c
    let mut p_rows = Vec::new();
    for c in ls1_weights(w.saturating_sub(6)) {
        let wp = w - c;
        if wp % 2 != 0 || wp < 12 {
            continue;
        }
        let pairs = wedge_basis_ls1(wp);
        let embedded = periodpoly::embed_space(wp).expect("even weight");
        for pv in embedded.basis_rows() {
            let mut row = vec![Scalar::zero(); dim];
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if pv[k].is_zero() {
                    continue;
                }
                // a^b as a (x) b - b (x) a, then tensor with sigma_c
                row[index[&(a, b, c)]] += &pv[k];
                row[index[&(b, a, c)]] -= &pv[k];
            }
            p_rows.push(row);
        }
    }
    let p_tensor = Subspace::from_rows(&label, dim, &p_rows);

    // span of full antisymmetrizations of a < b < c
    let mut w_rows = Vec::new();
    for (a, b, c) in wedge3_basis_ls1(w) {
        let mut row = vec![Scalar::zero(); dim];
        let perms: [((u32, u32, u32), i64); 6] = [
            ((a, b, c), 1),
            ((a, c, b), -1),
            ((b, a, c), -1),
            ((b, c, a), 1),
            ((c, a, b), 1),
            ((c, b, a), -1),
        ];
        for (t, s) in perms {
            row[index[&t]] += scalar(s);
        }
        w_rows.push(row);
    }
    let wedge3 = Subspace::from_rows(&label, dim, &w_rows);

    p_tensor.intersect(&wedge3).expect("same ambient")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_basis_enumeration() {
        assert_eq!(wedge_basis_ls1(8), vec![(3, 5)]);
        assert_eq!(wedge_basis_ls1(12), vec![(3, 9), (5, 7)]);
        assert_eq!(wedge_basis_ls1(16), vec![(3, 13), (5, 11), (7, 9)]);
        assert!(wedge_basis_ls1(9).is_empty());
        assert!(wedge_basis_ls1(6).is_empty());
    }

    #[test]
    fn bracket_map_ranks_from_series() {
        // rank = wedge dim - dim P, with dim P from the cusp series
        assert_eq!(bracket_map(8).rank(), 1);
        assert_eq!(bracket_map(12).rank(), 1);
        assert_eq!(bracket_map(16).rank(), 2);
    }

    #[test]
    fn gkz_holds_at_small_weights() {
        for w in [8u32, 10, 12, 14, 16, 18] {
            let r = verify_gkz(w);
            assert!(!r.is_mismatch(), "GKZ fails at w={w}: {}", r.to_text());
        }
    }

    #[test]
    fn gkz_weight_18_dimension() {
        assert_eq!(ls2_subspace(18).dim(), 2); // 3 pairs - dim P_18 = 1
    }

    #[test]
    fn wedge3_enumeration() {
        assert!(wedge3_basis_ls1(9).is_empty()); // needs distinct odd parts
        assert_eq!(wedge3_basis_ls1(15), vec![(3, 5, 7)]);
        assert_eq!(wedge3_basis_ls1(21).len(), 3); // (3,5,13),(3,7,11),(5,7,9)
    }

    #[test]
    fn goncharov_injective_at_small_weights() {
        for w in [9u32, 15, 17, 21] {
            let r = goncharov_injectivity(w);
            assert!(!r.is_mismatch(), "injectivity fails at w={w}");
        }
    }

    #[test]
    fn p_tensor_meets_wedge3_trivially_at_15() {
        assert_eq!(p_tensor_cap_wedge3(15).dim(), 0);
    }
}
