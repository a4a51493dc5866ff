//! Even period polynomial spaces and their embedding into the wedge
//! square of the depth-1 generators.
//!
//! For even weight `w`, the space of even period polynomials of degree
//! `w-2` is cut out inside the even-even coefficient cell by antisymmetry
//! under exchange of the variables and the two period relations
//! `p(X,Y) + p(-Y,X) = 0` and `p(X,Y) + p(X-Y,X) + p(-Y,X-Y) = 0`.
//! Divisibility by `X^2 Y^2` carves out the cuspidal hyperplane, whose
//! dimensions reproduce the cusp form dimension series
//! `s^12 / ((1-s^4)(1-s^6))`. Multiplication by `XY` followed by reading
//! off antisymmetric coefficient pairs embeds the cuspidal space into the
//! weight-`w` cell of the wedge square of the depth-1 generators.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::depthgraded::{wedge_basis_ls1, wedge_cell_label};
use crate::exactlin::{scalar, Matrix, Scalar, Subspace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PeriodPolyError {
    #[error("period polynomial spaces need an even weight >= 4, got {0}")]
    InvalidWeight(u32),
    #[error("polynomial is not in the cuspidal space of weight {0}")]
    NotCuspidal(u32),
}

/// Homogeneous even period polynomial of weight `w` (degree `w-2`),
/// stored as coefficients on monomials `X^a Y^b` with `a + b = w - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodPolynomial {
    weight: u32,
    coeffs: BTreeMap<(u32, u32), Scalar>,
}

impl PeriodPolynomial {
    pub fn new(weight: u32, coeffs: BTreeMap<(u32, u32), Scalar>) -> Self {
        let degree = weight - 2;
        for (&(a, b), c) in &coeffs {
            assert_eq!(a + b, degree, "monomial degree mismatch");
            assert!(!c.is_zero(), "zero coefficient stored");
        }
        PeriodPolynomial { weight, coeffs }
    }

    /// Reconstructs a polynomial from its even-even cell vector.
    pub fn from_cell_vector(weight: u32, v: &[Scalar]) -> Self {
        let cell = even_cell(weight);
        assert_eq!(v.len(), cell.len());
        let coeffs = cell
            .into_iter()
            .zip(v.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c.clone()))
            .collect();
        PeriodPolynomial::new(weight, coeffs)
    }

    pub fn zero(weight: u32) -> Self {
        PeriodPolynomial {
            weight,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn coefficient(&self, a: u32, b: u32) -> Scalar {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        let mut total = Scalar::zero();
        for (&(a, b), c) in &self.coeffs {
            let mut term = c.clone();
            for _ in 0..a {
                term *= x;
            }
            for _ in 0..b {
                term *= y;
            }
            total += term;
        }
        total
    }

    /// Coefficient vector over the even-even cell, or `None` if the
    /// polynomial has a monomial outside it.
    pub fn cell_vector(&self) -> Option<Vec<Scalar>> {
        let cell = even_cell(self.weight);
        let index: BTreeMap<(u32, u32), usize> =
            cell.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut v = vec![Scalar::zero(); cell.len()];
        for (&m, c) in &self.coeffs {
            let &i = index.get(&m)?;
            v[i] = c.clone();
        }
        Some(v)
    }
}

/// An element of the weight-`w` cell of the wedge square of the depth-1
/// generators: a combination of `sigma_a ^ sigma_b` with `a < b` odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeElement {
    weight: u32,
    coeffs: BTreeMap<(u32, u32), Scalar>,
}

impl WedgeElement {
    pub fn new(weight: u32, coeffs: BTreeMap<(u32, u32), Scalar>) -> Self {
        for (&(a, b), c) in &coeffs {
            assert!(a < b && a % 2 == 1 && b % 2 == 1 && a >= 3, "bad wedge pair");
            assert_eq!(a + b, weight, "wedge pair weight mismatch");
            assert!(!c.is_zero(), "zero coefficient stored");
        }
        WedgeElement { weight, coeffs }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, a: u32, b: u32) -> Scalar {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coordinates over the canonical ordered pair basis of the cell.
    pub fn cell_vector(&self) -> Vec<Scalar> {
        let pairs = wedge_basis_ls1(self.weight);
        let mut v = vec![Scalar::zero(); pairs.len()];
        for (i, p) in pairs.iter().enumerate() {
            v[i] = self.coefficient(p.0, p.1);
        }
        v
    }
}

/// Ordered basis of the even-even coefficient cell of weight `w`:
/// monomials `X^a Y^b`, `a + b = w - 2`, both exponents even, in
/// lexicographic `(a, b)` order.
pub fn even_cell(w: u32) -> Vec<(u32, u32)> {
    let degree = w - 2;
    (0..=degree)
        .step_by(2)
        .map(|a| (a, degree - a))
        .collect()
}

pub fn even_cell_label(w: u32) -> String {
    format!("even-even-coeffs[{w}]")
}

fn check_weight(w: u32) -> Result<(), PeriodPolyError> {
    if w % 2 != 0 || w < 4 {
        return Err(PeriodPolyError::InvalidWeight(w));
    }
    Ok(())
}

fn binom(n: u32, k: u32) -> Scalar {
    let mut out: num_bigint::BigInt = 1.into();
    let k = k.min(n - k);
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    Scalar::from_integer(out)
}

// Transforms of a single monomial X^a Y^b, expanded over the full
// degree-(w-2) monomial cell as (exponent of X, coefficient) pairs.

fn expand_swap(a: u32, b: u32) -> Vec<(u32, Scalar)> {
    // p(Y, X)
    let _ = a;
    vec![(b, scalar(1))]
}

fn expand_s(a: u32, b: u32) -> Vec<(u32, Scalar)> {
    // p(-Y, X): X^a Y^b -> (-1)^a X^b Y^a
    let sign = if a % 2 == 0 { scalar(1) } else { scalar(-1) };
    vec![(b, sign)]
}

fn expand_u1(a: u32, b: u32) -> Vec<(u32, Scalar)> {
    // p(X-Y, X): X^a Y^b -> sum_i C(a,i) (-1)^(a-i) X^(i+b) Y^(a-i)
    (0..=a)
        .map(|i| {
            let sign = if (a - i) % 2 == 0 { scalar(1) } else { scalar(-1) };
            (i + b, binom(a, i) * sign)
        })
        .collect()
}

fn expand_u2(a: u32, b: u32) -> Vec<(u32, Scalar)> {
    // p(-Y, X-Y): X^a Y^b -> sum_j (-1)^(a+b-j) C(b,j) X^j Y^(a+b-j)
    (0..=b)
        .map(|j| {
            let sign = if (a + b - j) % 2 == 0 { scalar(1) } else { scalar(-1) };
            (j, binom(b, j) * sign)
        })
        .collect()
}

/// The space of even period polynomials of even weight `w >= 4`, as a
/// subspace of the even-even coefficient cell.
pub fn period_space(w: u32) -> Result<Subspace, PeriodPolyError> {
    check_weight(w)?;
    let cell = even_cell(w);
    let degree = w - 2;
    let n_full = degree as usize + 1;
    // three stacked relations, each valued in the full monomial cell:
    //   p + p(Y,X);  p + p(-Y,X);  p + p(X-Y,X) + p(-Y,X-Y)
    let mut sys = Matrix::new(3 * n_full, cell.len());
    for (col, &(a, b)) in cell.iter().enumerate() {
        let mut add = |block: usize, terms: Vec<(u32, Scalar)>| {
            for (xa, c) in terms {
                let row = block * n_full + xa as usize;
                let cur = sys.get(row, col) + c;
                sys.set(row, col, cur);
            }
        };
        let own = vec![(a, scalar(1))];
        add(0, own.clone());
        add(0, expand_swap(a, b));
        add(1, own.clone());
        add(1, expand_s(a, b));
        add(2, own);
        add(2, expand_u1(a, b));
        add(2, expand_u2(a, b));
    }
    Ok(sys.kernel(&even_cell_label(w)))
}

/// The cuspidal hyperplane: even period polynomials divisible by
/// `X^2 Y^2`, i.e. with no `X^(w-2)` or `Y^(w-2)` monomial.
pub fn cuspidal_period_space(w: u32) -> Result<Subspace, PeriodPolyError> {
    let full = period_space(w)?;
    let cell = even_cell(w);
    let divisible_rows: Vec<Vec<Scalar>> = cell
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| a >= 2 && b >= 2)
        .map(|(i, _)| {
            let mut v = vec![Scalar::zero(); cell.len()];
            v[i] = scalar(1);
            v
        })
        .collect();
    let divisible = Subspace::from_rows(&even_cell_label(w), cell.len(), &divisible_rows);
    Ok(full.intersect(&divisible).expect("same ambient"))
}

/// Multiplication by `XY` followed by reading coefficients of
/// `X^a Y^b - X^b Y^a` (`a < b` odd) as `sigma_a ^ sigma_b` coordinates.
/// Rejects inputs outside the cuspidal space.
pub fn embed_wedge(p: &PeriodPolynomial) -> Result<WedgeElement, PeriodPolyError> {
    let w = p.weight;
    check_weight(w)?;
    if p.is_zero() {
        return Ok(WedgeElement::new(w, BTreeMap::new()));
    }
    let cuspidal = cuspidal_period_space(w)?;
    let v = p.cell_vector().ok_or(PeriodPolyError::NotCuspidal(w))?;
    if !cuspidal.contains(&v) {
        return Err(PeriodPolyError::NotCuspidal(w));
    }
    let mut coeffs = BTreeMap::new();
    for (&(a, b), c) in &p.coeffs {
        // q = XY * p has the monomial X^(a+1) Y^(b+1)
        let (qa, qb) = (a + 1, b + 1);
        if qa < qb {
            coeffs.insert((qa, qb), c.clone());
        }
    }
    Ok(WedgeElement::new(w, coeffs))
}

/// The image of the cuspidal space inside the weight-`w` wedge cell.
pub fn embed_space(w: u32) -> Result<Subspace, PeriodPolyError> {
    let cuspidal = cuspidal_period_space(w)?;
    let pairs = wedge_basis_ls1(w);
    let rows: Vec<Vec<Scalar>> = cuspidal
        .basis_rows()
        .into_iter()
        .map(|v| {
            let p = PeriodPolynomial::from_cell_vector(w, &v);
            let wedge = embed_wedge(&p).expect("basis vector is cuspidal");
            wedge.cell_vector()
        })
        .collect();
    Ok(Subspace::from_rows(&wedge_cell_label(w), pairs.len(), &rows))
}

/// Truncated expansion of the cusp form dimension series
/// `s^12 / ((1-s^4)(1-s^6))`; index `w` holds the `s^w` coefficient.
pub fn cusp_dim_series(max_w: u32) -> Vec<i64> {
    let mut out = vec![0i64; max_w as usize + 1];
    if max_w < 12 {
        return out;
    }
    let mut a = 12;
    while a <= max_w {
        let mut b = a;
        while b <= max_w {
            out[b as usize] += 1;
            b += 6;
        }
        a += 4;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent substitution oracle: a homogeneous polynomial of degree
    /// `w - 2` vanishes identically iff it vanishes at `(1, t)` for
    /// `w - 1` distinct `t` and at `(0, 1)`.
    fn satisfies_period_relations(p: &PeriodPolynomial) -> bool {
        let w = p.weight();
        let points: Vec<(Scalar, Scalar)> = (0..=(w as i64))
            .map(|t| (scalar(1), scalar(t)))
            .chain(std::iter::once((scalar(0), scalar(1))))
            .collect();
        for (x, y) in points {
            // antisymmetry, the involution relation, the three-term relation
            let anti = p.eval(&x, &y) + p.eval(&y, &x);
            let s = p.eval(&x, &y) + p.eval(&(-y.clone()), &x);
            let u = p.eval(&x, &y)
                + p.eval(&(x.clone() - y.clone()), &x)
                + p.eval(&(-y.clone()), &(x.clone() - y.clone()));
            if !anti.is_zero() || !s.is_zero() || !u.is_zero() {
                return false;
            }
        }
        true
    }

    fn boundary_polynomial(w: u32) -> PeriodPolynomial {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((w - 2, 0), scalar(1));
        coeffs.insert((0, w - 2), scalar(-1));
        PeriodPolynomial::new(w, coeffs)
    }

    #[test]
    fn series_coefficients_low_range() {
        let s = cusp_dim_series(36);
        let expect_12_to_22 = [1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1];
        for (i, &e) in expect_12_to_22.iter().enumerate() {
            assert_eq!(s[12 + i], e, "s^{}", 12 + i);
        }
        assert_eq!(s[24], 2);
        assert_eq!(s[36], 3);
        for w in (1..=35).step_by(2) {
            assert_eq!(s[w], 0, "odd exponent s^{w}");
        }
    }

    #[test]
    fn weight_4_space() {
        let full = period_space(4).unwrap();
        assert_eq!(full.dim(), 1);
        // X^2 - Y^2 spans it
        let p = boundary_polynomial(4);
        assert!(full.contains(&p.cell_vector().unwrap()));
        assert_eq!(cuspidal_period_space(4).unwrap().dim(), 0);
    }

    #[test]
    fn weight_12_dimensions() {
        assert_eq!(period_space(12).unwrap().dim(), 2);
        assert_eq!(cuspidal_period_space(12).unwrap().dim(), 1);
    }

    #[test]
    fn odd_weight_rejected() {
        assert_eq!(period_space(11), Err(PeriodPolyError::InvalidWeight(11)));
        assert_eq!(period_space(2), Err(PeriodPolyError::InvalidWeight(2)));
    }

    #[test]
    fn boundary_polynomial_is_member_every_even_weight() {
        for w in (4..=30).step_by(2) {
            let p = boundary_polynomial(w);
            assert!(satisfies_period_relations(&p), "substitution oracle at w={w}");
            let space = period_space(w).unwrap();
            assert!(space.contains(&p.cell_vector().unwrap()), "solver at w={w}");
        }
    }

    #[test]
    fn solver_basis_passes_substitution_oracle() {
        for w in (4..=24).step_by(2) {
            for row in period_space(w).unwrap().basis_rows() {
                let p = PeriodPolynomial::from_cell_vector(w, &row);
                assert!(satisfies_period_relations(&p), "w={w}");
            }
        }
    }

    #[test]
    fn dims_match_cusp_series_up_to_36() {
        let series = cusp_dim_series(36);
        for w in (4..=36).step_by(2) {
            let dim_p = cuspidal_period_space(w).unwrap().dim();
            assert_eq!(dim_p as i64, series[w as usize], "dim P at w={w}");
            let dim_full = period_space(w).unwrap().dim();
            assert_eq!(dim_full, dim_p + 1, "hyperplane split at w={w}");
        }
    }

    #[test]
    fn embed_zero_is_zero() {
        let z = PeriodPolynomial::zero(12);
        assert!(embed_wedge(&z).unwrap().is_zero());
    }

    #[test]
    fn embed_rejects_non_cuspidal() {
        let p = boundary_polynomial(12);
        assert_eq!(embed_wedge(&p), Err(PeriodPolyError::NotCuspidal(12)));
    }

    #[test]
    fn embed_weight_12_lands_in_two_pair_cell() {
        let img = embed_space(12).unwrap();
        assert_eq!(img.dim(), 1);
        assert_eq!(img.ambient_dim(), 2); // pairs (3,9), (5,7)
    }

    #[test]
    fn embed_is_injective_up_to_36() {
        for w in (4..=36).step_by(2) {
            let dim_p = cuspidal_period_space(w).unwrap().dim();
            assert_eq!(embed_space(w).unwrap().dim(), dim_p, "rank at w={w}");
        }
    }
}
