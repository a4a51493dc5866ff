//! Bivariate Hilbert series arithmetic over an inclusive window.
//!
//! Series live in `Z[[s, t]]` truncated to `s`-degree `max_weight` and
//! `t`-degree `max_depth`; all arithmetic saturates (terms escaping the
//! window are dropped), which keeps every coefficient inside the window
//! exact. The two series of interest are the generating series of a
//! bigraded dimension table under the symmetric-algebra transform, and
//! the conjectural closed form `1/(1 - O(s)t + S(s)t^2 - S(s)t^4)` built
//! from the depth-1 dimension series `O(s) = s^3/(1-s^2)` and the cusp
//! form series `S(s) = s^12/((1-s^4)(1-s^6))`.

use std::collections::BTreeMap;

use crate::periodpoly::cusp_dim_series;
use crate::presented::BigradedDimTable;
use crate::report::{CheckMode, Report, Window};

/// Integer power series in `s` (weight) and `t` (depth), truncated to a
/// window. Arithmetic requires identical windows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    window: Window,
    coeffs: BTreeMap<(u32, u32), i64>,
}

impl BivariateSeries {
    pub fn zero(window: Window) -> Self {
        BivariateSeries {
            window,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(window: Window) -> Self {
        let mut s = Self::zero(window);
        s.set(0, 0, 1);
        s
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn coefficient(&self, n: u32, d: u32) -> i64 {
        self.coeffs.get(&(n, d)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, n: u32, d: u32, c: i64) {
        if n > self.window.max_weight || d > self.window.max_depth {
            return;
        }
        if c == 0 {
            self.coeffs.remove(&(n, d));
        } else {
            self.coeffs.insert((n, d), c);
        }
    }

    pub fn add_coefficient(&mut self, n: u32, d: u32, c: i64) {
        self.set(n, d, self.coefficient(n, d) + c);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.window, other.window, "incompatible series windows");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for ((n, d), c) in other.iter() {
            out.add_coefficient(n, d, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for ((n, d), c) in other.iter() {
            out.add_coefficient(n, d, -c);
        }
        out
    }

    /// Truncating product.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Self::zero(self.window);
        for ((n1, d1), c1) in self.iter() {
            for ((n2, d2), c2) in other.iter() {
                if n1 + n2 > self.window.max_weight || d1 + d2 > self.window.max_depth {
                    continue;
                }
                out.add_coefficient(n1 + n2, d1 + d2, c1 * c2);
            }
        }
        out
    }

    /// Multiplicative inverse of a series with constant term 1, by the
    /// geometric expansion: powers of `1 - self` vanish past the window.
    pub fn inverse(&self) -> Self {
        assert_eq!(self.coefficient(0, 0), 1, "inverse needs constant term 1");
        let x = Self::one(self.window).sub(self); // no constant term
        let mut out = Self::one(self.window);
        let mut power = Self::one(self.window);
        let bound = self.window.max_weight + self.window.max_depth;
        for _ in 0..=bound {
            power = power.mul(&x);
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        out
    }
}

/// The depth-1 generator series `s^3/(1-s^2)` placed in `t`-degree
/// `t_power`.
fn odd_series_at(window: Window, t_power: u32) -> BivariateSeries {
    let mut s = BivariateSeries::zero(window);
    let mut n = 3;
    while n <= window.max_weight {
        s.set(n, t_power, 1);
        n += 2;
    }
    s
}

/// The cusp form series `s^12/((1-s^4)(1-s^6))` placed in `t`-degree
/// `t_power`.
fn cusp_series_at(window: Window, t_power: u32) -> BivariateSeries {
    let mut s = BivariateSeries::zero(window);
    for (n, c) in cusp_dim_series(window.max_weight).into_iter().enumerate() {
        if c != 0 {
            s.set(n as u32, t_power, c);
        }
    }
    s
}

/// Truncated expansion of `1/(1 - O(s)t + S(s)t^2 - S(s)t^4)`.
pub fn bk_rhs(window: Window) -> BivariateSeries {
    let denominator = BivariateSeries::one(window)
        .sub(&odd_series_at(window, 1))
        .add(&cusp_series_at(window, 2))
        .sub(&cusp_series_at(window, 4));
    denominator.inverse()
}

fn binomial_i64(n: u64, k: u64) -> i64 {
    let k = k.min(n - k);
    let mut out: i64 = 1;
    for i in 0..k {
        out = out * (n - i) as i64 / (i as i64 + 1);
    }
    out
}

/// Symmetric-algebra transform of a bigraded dimension table:
/// `prod over cells (1 - s^n t^d)^(-dim)`, truncated to the window.
pub fn pbw_transform(dims: &BigradedDimTable, window: Window) -> BivariateSeries {
    let mut out = BivariateSeries::one(window);
    for (b, m) in dims.iter() {
        assert!(b.depth >= 1, "dimension table must be positively bigraded");
        if b.weight > window.max_weight || b.depth > window.max_depth {
            continue;
        }
        let mut factor = BivariateSeries::zero(window);
        let mut k = 0u32;
        loop {
            let (n, d) = (b.weight * k, b.depth * k);
            if n > window.max_weight || d > window.max_depth {
                break;
            }
            factor.set(n, d, binomial_i64((m as u64) - 1 + k as u64, k as u64));
            if b.weight == 0 && b.depth == 0 {
                break;
            }
            k += 1;
        }
        out = out.mul(&factor);
    }
    out
}

/// Cellwise comparison of the symmetric-algebra series of a dimension
/// table against the conjectural closed form. Negative closed-form
/// coefficients inside the window are structural findings and are
/// reported as mismatches in their own right.
pub fn bk_compare(dims: &BigradedDimTable, window: Window) -> Report {
    let mut report = Report::new(
        "BK",
        "Broadhurst-Kreimer bivariate series against the symmetric algebra of the model",
        window,
        CheckMode::Conjecture,
    );
    let lhs = pbw_transform(dims, window);
    let rhs = bk_rhs(window);
    for d in 0..=window.max_depth {
        for n in 0..=window.max_weight {
            let expected = rhs.coefficient(n, d);
            let computed = lhs.coefficient(n, d);
            if expected < 0 {
                report.push_cell_checked(n, d, expected, computed, false);
                report.set_witness(
                    n,
                    d,
                    "negative coefficient in the closed-form series",
                    vec![format!("coefficient of s^{n} t^{d} is {expected}")],
                );
                continue;
            }
            if expected == 0 && computed == 0 {
                continue;
            }
            report.push_cell(n, d, expected, computed);
        }
    }
    report
}
