//! The free Lie algebra on two letters `e0`, `e1` inside its enveloping
//! (free associative) algebra, with the weight/depth bigrading, the
//! derivations `D_f` and the Poisson-Ihara bracket
//! `<f,g> = [f,g] + D_f(g) - D_g(f)`.
//!
//! Words are stored sparsely as (length, positions of `e1`), so a cell of
//! weight `n` and depth `d` carries at most `C(n,d)` words. All elements
//! are exact rational combinations of words.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactlin::{scalar, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FreeLieError {
    #[error("sigma generator needs an odd weight >= 3, got {0}")]
    InvalidSigmaWeight(u32),
    #[error("operation requires a homogeneous element ({0})")]
    Inhomogeneous(String),
}

/// A (weight, depth) bidegree: weight counts all letters, depth counts the
/// `e1` letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub weight: u32,
    pub depth: u32,
}

impl Bidegree {
    pub fn new(weight: u32, depth: u32) -> Self {
        assert!(weight >= 1, "weight must be >= 1");
        assert!(depth <= weight, "depth cannot exceed weight");
        Bidegree { weight, depth }
    }

    pub fn plus(self, other: Bidegree) -> Bidegree {
        Bidegree {
            weight: self.weight + other.weight,
            depth: self.depth + other.depth,
        }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.weight, self.depth)
    }
}

/// A word in `e0`, `e1`, stored as its length and the strictly increasing
/// positions of the `e1` letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    length: u32,
    ones: Vec<u32>,
}

impl Word {
    pub fn new(length: u32, ones: Vec<u32>) -> Self {
        debug_assert!(ones.windows(2).all(|w| w[0] < w[1]), "positions must increase");
        debug_assert!(ones.iter().all(|&p| p < length), "position out of range");
        Word { length, ones }
    }

    pub fn e0() -> Self {
        Word::new(1, vec![])
    }

    pub fn e1() -> Self {
        Word::new(1, vec![0])
    }

    pub fn empty() -> Self {
        Word { length: 0, ones: vec![] }
    }

    pub fn weight(&self) -> u32 {
        self.length
    }

    pub fn depth(&self) -> u32 {
        self.ones.len() as u32
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree::new(self.length, self.depth())
    }

    /// Letters as booleans, `true` meaning `e1`.
    pub fn letters(&self) -> Vec<bool> {
        let mut out = vec![false; self.length as usize];
        for &p in &self.ones {
            out[p as usize] = true;
        }
        out
    }

    pub fn from_letters(letters: &[bool]) -> Self {
        let ones = letters
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u32)
            .collect();
        Word::new(letters.len() as u32, ones)
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut ones = self.ones.clone();
        ones.extend(other.ones.iter().map(|&p| p + self.length));
        Word::new(self.length + other.length, ones)
    }

    /// Renders the word as a bitstring, e.g. `[e0,[e0,e1]]`'s leading word
    /// is `001`.
    pub fn bitstring(&self) -> String {
        self.letters().iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn from_bitstring(s: &str) -> Option<Self> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => letters.push(false),
                '1' => letters.push(true),
                _ => return None,
            }
        }
        Some(Word::from_letters(&letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bitstring())
    }
}

/// Canonical ordered basis of the weight-`n`, depth-`d` word cell: all
/// words of length `n` with `d` ones, in increasing `Word` order.
pub fn cell_words(n: u32, d: u32) -> Vec<Word> {
    let mut out = Vec::new();
    if d > n {
        return out;
    }
    let mut positions: Vec<u32> = (0..d).collect();
    loop {
        out.push(Word::new(n, positions.clone()));
        if d == 0 {
            break;
        }
        // next combination in lexicographic order
        let mut i = d as usize;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if positions[i] + (d - i as u32) < n {
                positions[i] += 1;
                for j in i + 1..d as usize {
                    positions[j] = positions[j - 1] + 1;
                }
                break;
            }
        }
    }
    out
}

/// Sparse rational combination of words. Homogeneous elements of the free
/// Lie algebra are the intended inhabitants; formal inhomogeneous sums are
/// permitted as intermediate values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<Word, Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn generator_e0() -> Self {
        LieElement::from_term(Word::e0(), scalar(1))
    }

    pub fn generator_e1() -> Self {
        LieElement::from_term(Word::e1(), scalar(1))
    }

    pub fn from_term(word: Word, coeff: Scalar) -> Self {
        let mut e = LieElement::zero();
        e.add_term(word, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        if c.is_zero() {
            return LieElement::zero();
        }
        let mut out = LieElement::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&scalar(-1))
    }

    /// The common bidegree of all terms, or an error for inhomogeneous or
    /// zero elements.
    pub fn bidegree(&self) -> Result<Bidegree, FreeLieError> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Err(FreeLieError::Inhomogeneous("zero element".into()));
        };
        let b = first.bidegree();
        for w in it {
            if w.bidegree() != b {
                return Err(FreeLieError::Inhomogeneous(format!(
                    "mixes bidegrees {} and {}",
                    b,
                    w.bidegree()
                )));
            }
        }
        Ok(b)
    }

    /// Concatenation product in the free associative algebra. Internal:
    /// products of Lie elements are generally not Lie elements, but
    /// commutators of them are.
    pub(crate) fn assoc_mul(&self, other: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// Coefficient vector over an ordered word cell. `None` if the element
    /// has support outside the cell.
    pub fn cell_vector(&self, cell: &[Word]) -> Option<Vec<Scalar>> {
        let index: BTreeMap<&Word, usize> =
            cell.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut v = vec![Scalar::zero(); cell.len()];
        for (w, c) in &self.terms {
            let &i = index.get(w)?;
            v[i] = c.clone();
        }
        Some(v)
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c, w)?;
        }
        Ok(())
    }
}

impl Serialize for LieElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let records: Vec<(String, String, String)> = self
            .terms
            .iter()
            .map(|(w, c)| (w.bitstring(), c.numer().to_string(), c.denom().to_string()))
            .collect();
        records.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LieElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let records = Vec::<(String, String, String)>::deserialize(deserializer)?;
        let mut out = LieElement::zero();
        for (bits, num, den) in records {
            let word = Word::from_bitstring(&bits)
                .ok_or_else(|| D::Error::custom(format!("bad word bitstring `{bits}`")))?;
            let num = num.parse().map_err(D::Error::custom)?;
            let den = den.parse().map_err(D::Error::custom)?;
            out.add_term(word, Scalar::new(num, den));
        }
        Ok(out)
    }
}

/// Associative commutator `fg - gf`.
pub fn lie_bracket(f: &LieElement, g: &LieElement) -> LieElement {
    f.assoc_mul(g).sub(&g.assoc_mul(f))
}

/// The derivation `D_f` applied to `g`: `e0 -> 0`, `e1 -> [e1, f]`,
/// extended by the Leibniz rule; on the word expansion this substitutes
/// each `e1` letter in turn.
pub fn d_derivation(f: &LieElement, g: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (word, c) in &g.terms {
        let letters = word.letters();
        for pos in word.ones.iter().map(|&p| p as usize) {
            let left = Word::from_letters(&letters[..pos]);
            let right = Word::from_letters(&letters[pos + 1..]);
            // left · (e1·f − f·e1) · right
            for (u, d) in &f.terms {
                let coeff = c * d;
                let with_e1_first = left.concat(&Word::e1()).concat(u).concat(&right);
                let with_e1_last = left.concat(u).concat(&Word::e1()).concat(&right);
                out.add_term(with_e1_first, coeff.clone());
                out.add_term(with_e1_last, -coeff);
            }
        }
    }
    out
}

/// Poisson-Ihara bracket `<f,g> = [f,g] + D_f(g) - D_g(f)`.
pub fn ihara_bracket(f: &LieElement, g: &LieElement) -> LieElement {
    lie_bracket(f, g)
        .add(&d_derivation(f, g))
        .sub(&d_derivation(g, f))
}

/// The depth-1 generator of odd weight `k`: `ad(e0)^(k-1)(e1)`.
pub fn sigma(k: u32) -> Result<LieElement, FreeLieError> {
    if k < 3 || k % 2 == 0 {
        return Err(FreeLieError::InvalidSigmaWeight(k));
    }
    let e0 = LieElement::generator_e0();
    let mut out = LieElement::generator_e1();
    for _ in 0..k - 1 {
        out = lie_bracket(&e0, &out);
    }
    Ok(out)
}

fn is_lyndon(letters: &[bool]) -> bool {
    let n = letters.len();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    for r in 1..n {
        let rotation = letters[r..].iter().chain(letters[..r].iter());
        if letters.iter().lt(rotation) {
            continue;
        }
        return false;
    }
    true
}

/// Standard factorization bracketing of a Lyndon word, expanded into the
/// associative algebra: `w = uv` with `v` the longest proper Lyndon
/// suffix, recursively `[brack(u), brack(v)]`.
fn bracket_lyndon(letters: &[bool]) -> LieElement {
    if letters.len() == 1 {
        return if letters[0] {
            LieElement::generator_e1()
        } else {
            LieElement::generator_e0()
        };
    }
    let split = (1..letters.len())
        .find(|&i| is_lyndon(&letters[i..]))
        .expect("proper Lyndon suffix exists");
    let u = bracket_lyndon(&letters[..split]);
    let v = bracket_lyndon(&letters[split..]);
    lie_bracket(&u, &v)
}

/// Bracketed Lyndon words of the given bidegree, expanded into word
/// combinations. The list length is the bigraded Witt number.
pub fn lyndon_basis(b: Bidegree) -> Vec<LieElement> {
    cell_words(b.weight, b.depth)
        .into_iter()
        .map(|w| w.letters())
        .filter(|letters| is_lyndon(letters))
        .map(|letters| bracket_lyndon(&letters))
        .collect()
}

/// Dynkin left-bracketing map: the word `a1 a2 ... an` goes to
/// `[...[[a1,a2],a3]...,an]`. A homogeneous weight-`n` element lies in the
/// free Lie algebra exactly when its image equals `n` times itself.
pub fn dynkin(f: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (word, c) in &f.terms {
        let letters = word.letters();
        let mut acc = if letters[0] {
            LieElement::generator_e1()
        } else {
            LieElement::generator_e0()
        };
        for &l in &letters[1..] {
            let next = if l {
                LieElement::generator_e1()
            } else {
                LieElement::generator_e0()
            };
            acc = lie_bracket(&acc, &next);
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// Dynkin criterion for membership in the free Lie algebra, applied to a
/// homogeneous element.
pub fn is_lie_element(f: &LieElement) -> bool {
    if f.is_zero() {
        return true;
    }
    let Ok(b) = f.bidegree() else {
        return false;
    };
    dynkin(f) == f.scale(&scalar(b.weight as i64))
}

fn moebius(mut n: u32) -> i64 {
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u64 = 1;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Bigraded Witt number: the dimension of the weight-`n`, depth-`d` cell
/// of the free Lie algebra on `e0`, `e1`, namely
/// `(1/n) * sum over e | gcd(n,d) of mu(e) * C(n/e, d/e)`.
pub fn bigraded_witt(n: u32, d: u32) -> usize {
    if n == 0 || d > n {
        return 0;
    }
    let g = if d == 0 { n } else { num_integer::gcd(n, d) };
    let mut total: i64 = 0;
    for e in 1..=g {
        if g % e != 0 {
            continue;
        }
        let mu = moebius(e);
        if mu == 0 {
            continue;
        }
        total += mu * binomial((n / e) as u64, (d / e) as u64) as i64;
    }
    assert!(total >= 0 && total % n as i64 == 0, "Witt count must divide");
    (total / n as i64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e0() -> LieElement {
        LieElement::generator_e0()
    }

    fn e1() -> LieElement {
        LieElement::generator_e1()
    }

    #[test]
    fn bracket_of_e0_with_itself_vanishes() {
        assert!(lie_bracket(&e0(), &e0()).is_zero());
    }

    #[test]
    fn bracket_e0_e1_is_01_minus_10() {
        let b = lie_bracket(&e0(), &e1());
        let w01 = Word::from_bitstring("01").unwrap();
        let w10 = Word::from_bitstring("10").unwrap();
        assert_eq!(b.coefficient(&w01), scalar(1));
        assert_eq!(b.coefficient(&w10), scalar(-1));
        assert_eq!(b.num_terms(), 2);
    }

    #[test]
    fn derivation_kills_e0_and_brackets_e1() {
        assert!(d_derivation(&e1(), &e0()).is_zero());
        // D_{e0}(e1) = [e1, e0] = word 10 - word 01
        let d = d_derivation(&e0(), &e1());
        assert_eq!(d, lie_bracket(&e1(), &e0()));
        assert_eq!(d.coefficient(&Word::from_bitstring("10").unwrap()), scalar(1));
        assert_eq!(d.coefficient(&Word::from_bitstring("01").unwrap()), scalar(-1));
    }

    #[test]
    fn derivation_satisfies_leibniz_over_brackets() {
        // D_f([g,h]) = [D_f(g), h] + [g, D_f(h)] on a spread of inputs
        let samples = [
            sigma(3).unwrap(),
            lie_bracket(&e0(), &e1()),
            lie_bracket(&e1(), &lie_bracket(&e0(), &e1())),
            e1(),
        ];
        for f in &samples {
            for g in &samples {
                for h in &samples {
                    let lhs = d_derivation(f, &lie_bracket(g, h));
                    let rhs = lie_bracket(&d_derivation(f, g), h)
                        .add(&lie_bracket(g, &d_derivation(f, h)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn ihara_bracket_is_antisymmetric() {
        let f = sigma(3).unwrap();
        let g = sigma(5).unwrap();
        assert!(ihara_bracket(&f, &f).is_zero());
        assert_eq!(ihara_bracket(&f, &g), ihara_bracket(&g, &f).neg());
    }

    #[test]
    fn ihara_bracket_of_e1_e0_vanishes() {
        assert!(ihara_bracket(&e1(), &e0()).is_zero());
    }

    #[test]
    fn ihara_bracket_adds_bidegrees() {
        let f = sigma(3).unwrap();
        let g = sigma(7).unwrap();
        let fg = ihara_bracket(&f, &g);
        assert_eq!(fg.bidegree().unwrap(), Bidegree::new(10, 2));
    }

    #[test]
    fn ihara_jacobi_identity() {
        // direct expansion on homogeneous triples
        let triples = [
            (sigma(3).unwrap(), sigma(5).unwrap(), sigma(7).unwrap()),
            (e1(), sigma(3).unwrap(), lie_bracket(&e0(), &e1())),
            (e0(), e1(), sigma(3).unwrap()),
        ];
        for (f, g, h) in &triples {
            let total = ihara_bracket(f, &ihara_bracket(g, h))
                .add(&ihara_bracket(g, &ihara_bracket(h, f)))
                .add(&ihara_bracket(h, &ihara_bracket(f, g)));
            assert!(total.is_zero(), "Jacobi fails on a triple");
        }
    }

    #[test]
    fn sigma_3_is_left_nested_bracket() {
        let s3 = sigma(3).unwrap();
        let expected = lie_bracket(&e0(), &lie_bracket(&e0(), &e1()));
        assert_eq!(s3, expected);
        assert_eq!(s3.num_terms(), 3);
    }

    #[test]
    fn sigma_bidegrees() {
        for k in [3u32, 5, 7] {
            let s = sigma(k).unwrap();
            assert_eq!(s.bidegree().unwrap(), Bidegree::new(k, 1));
            assert!(!s.is_zero());
        }
    }

    #[test]
    fn sigma_rejects_bad_weights() {
        assert_eq!(sigma(4), Err(FreeLieError::InvalidSigmaWeight(4)));
        assert_eq!(sigma(1), Err(FreeLieError::InvalidSigmaWeight(1)));
    }

    #[test]
    fn lyndon_basis_weight_3() {
        // words 001 and 011 across depths 1 and 2
        let d1 = lyndon_basis(Bidegree::new(3, 1));
        let d2 = lyndon_basis(Bidegree::new(3, 2));
        let d3 = lyndon_basis(Bidegree::new(3, 3));
        assert_eq!(d1.len() + d2.len(), 2);
        assert_eq!(d3.len(), 0);
    }

    #[test]
    fn lyndon_basis_counts_match_witt() {
        // frozen value first: (C(8,2) + mu(2) C(4,1)) / 8 = (28 - 4) / 8 = 3
        assert_eq!(bigraded_witt(8, 2), 3);
        assert_eq!(lyndon_basis(Bidegree::new(8, 2)).len(), 3);
        for n in 1..=12u32 {
            for d in 0..=n {
                assert_eq!(
                    lyndon_basis(Bidegree::new(n, d)).len(),
                    bigraded_witt(n, d),
                    "cell ({n},{d})"
                );
            }
        }
    }

    #[test]
    fn lyndon_basis_no_pure_e0_beyond_weight_one() {
        for n in 2..=6 {
            assert!(lyndon_basis(Bidegree::new(n, 0)).is_empty());
        }
        assert_eq!(lyndon_basis(Bidegree::new(1, 0)).len(), 1);
    }

    #[test]
    fn lyndon_basis_passes_dynkin_membership() {
        for n in 1..=8u32 {
            for d in 0..=n {
                for elem in lyndon_basis(Bidegree::new(n, d)) {
                    assert!(is_lie_element(&elem));
                }
            }
        }
    }

    #[test]
    fn dynkin_rejects_non_lie_elements() {
        // the word e0e1 alone is not a Lie element
        let w = LieElement::from_term(Word::from_bitstring("01").unwrap(), scalar(1));
        assert!(!is_lie_element(&w));
    }

    #[test]
    fn cell_words_sizes() {
        assert_eq!(cell_words(4, 2).len(), 6);
        assert_eq!(cell_words(3, 0).len(), 1);
        assert_eq!(cell_words(2, 3).len(), 0);
    }

    #[test]
    fn serde_round_trip() {
        let f = ihara_bracket(&sigma(3).unwrap(), &sigma(5).unwrap());
        let json = serde_json::to_string(&f).unwrap();
        let back: LieElement = serde_json::from_str(&json).unwrap();
        assert_eq!(f, back);
    }
}
