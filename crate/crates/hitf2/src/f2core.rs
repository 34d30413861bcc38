//! Monomials, polynomials over GF(2), weight/exponent vectors, the
//! weight-then-exponent monomial order, spikes, and arithmetic helpers.
//!
//! The ambient object is `P_k = F_2[x_1, …, x_k]`, graded by total degree.
//! Every structure here is immutable after construction and safe to share
//! across threads.
//!
//! # The weight vector
//!
//! For a monomial `w = x_1^{b_1} ⋯ x_k^{b_k}`, the *weight vector*
//! `ω(w) = (ω_1(w), ω_2(w), …)` has `ω_i(w) = #{j : bit_{i−1}(b_j) = 1}`:
//! entry `i` counts the variables whose exponent has binary bit `i − 1`
//! set. Its degree `Σ_i 2^{i−1} ω_i` recovers the degree of `w`. Weight
//! vectors grade the hit problem into strata.
//!
//! # The monomial order
//!
//! Monomials of equal variable count and degree are compared by their
//! weight vectors first (left-lexicographically, padding the shorter
//! vector with zeros), then by their exponent vectors
//! left-lexicographically. See [`Monomial::graded_cmp`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Maximum supported variable count; a monomial then packs into a small
/// fixed footprint for hashing and column indexing.
pub const MAX_K: usize = 16;

/// A monomial `x_1^{e_1} ⋯ x_k^{e_k}`: an exponent vector of `k`
/// nonnegative integers.
///
/// ```
/// use hitf2::f2core::Monomial;
/// let m = Monomial::new(vec![3, 15, 5, 23, 62]);
/// assert_eq!(m.k(), 5);
/// assert_eq!(m.degree(), 108);
/// assert_eq!(m.exponent(1), 3);
/// ```
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// Builds a monomial from its exponent vector.
    ///
    /// # Panics
    /// If the variable count is 0 or exceeds [`MAX_K`].
    pub fn new(exps: Vec<u32>) -> Self {
        assert!(
            !exps.is_empty() && exps.len() <= MAX_K,
            "variable count must be in 1..={MAX_K}, got {}",
            exps.len()
        );
        Monomial { exps }
    }

    /// The constant monomial `1` in `k` variables.
    pub fn one(k: usize) -> Self {
        Monomial::new(vec![0; k])
    }

    /// The variable `x_i` (1-based) in `k` variables.
    pub fn variable(i: usize, k: usize) -> Self {
        assert!((1..=k).contains(&i), "variable index {i} out of 1..={k}");
        let mut exps = vec![0; k];
        exps[i - 1] = 1;
        Monomial::new(exps)
    }

    /// Number of variables.
    pub fn k(&self) -> usize {
        self.exps.len()
    }

    /// Total degree `Σ e_i`.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// The exponent of `x_i` (1-based), i.e. `ν_i` of the exponent vector.
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    /// The exponent vector `σ = (ν_1, …, ν_k)` as a slice.
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// The weight vector `ω(w)`: entry `i` counts the variables whose
    /// exponent has binary bit `i − 1` set; trailing zeros trimmed.
    ///
    /// ```
    /// use hitf2::f2core::{Monomial, WeightVector};
    /// let m = Monomial::new(vec![3, 15, 5, 23, 62]);
    /// assert_eq!(m.weight_vector(), WeightVector::new(vec![4, 4, 4, 2, 2, 1]));
    /// assert_eq!(Monomial::new(vec![0, 0, 0]).weight_vector(), WeightVector::new(vec![]));
    /// assert_eq!(Monomial::new(vec![7]).weight_vector(), WeightVector::new(vec![1, 1, 1]));
    /// ```
    pub fn weight_vector(&self) -> WeightVector {
        let mut entries = Vec::new();
        let mut bit = 0u32;
        while self.exps.iter().any(|&e| (e >> bit) != 0) {
            entries.push(self.exps.iter().filter(|&&e| (e >> bit) & 1 == 1).count() as u32);
            bit += 1;
        }
        WeightVector::new(entries)
    }

    /// Compares two monomials of the same variable count and degree:
    /// weight vectors left-lexicographically first (zero-padded), then
    /// exponent vectors left-lexicographically.
    ///
    /// This is the order in which "smaller" means "later basis column";
    /// the admissibility machinery relies on it.
    ///
    /// ```
    /// use std::cmp::Ordering;
    /// use hitf2::f2core::Monomial;
    /// // Equal weights (1,1): decided by exponents, (2,1) > (1,2).
    /// let a = Monomial::new(vec![2, 1]);
    /// let b = Monomial::new(vec![1, 2]);
    /// assert_eq!(a.graded_cmp(&b), Ordering::Greater);
    /// // ω(x1^2 x2) = (1,1) < (1,1,1) = ω(x1^3) with zero padding.
    /// let c = Monomial::new(vec![3, 0]);
    /// assert_eq!(a.graded_cmp(&c), Ordering::Less);
    /// ```
    ///
    /// # Panics
    /// If the variable counts or degrees differ (contract violation).
    pub fn graded_cmp(&self, other: &Monomial) -> Ordering {
        assert_eq!(self.k(), other.k(), "graded_cmp: variable counts differ");
        assert_eq!(self.degree(), other.degree(), "graded_cmp: degrees differ");
        self.weight_vector()
            .cmp(&other.weight_vector())
            .then_with(|| self.exps.cmp(&other.exps))
    }

    /// True iff every exponent has the form `2^t − 1` (including 0).
    ///
    /// ```
    /// use hitf2::f2core::Monomial;
    /// assert!(Monomial::new(vec![63, 31, 7, 7, 0]).is_spike());
    /// assert!(!Monomial::new(vec![3, 15, 5, 23, 62]).is_spike());
    /// assert!(Monomial::new(vec![0, 0]).is_spike());
    /// ```
    pub fn is_spike(&self) -> bool {
        self.exps.iter().all(|&e| e & (e + 1) == 0)
    }

    /// The product of two monomials (exponent-wise sum).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.k(), other.k());
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    /// Exact division: `Some(self / other)` when every exponent of
    /// `other` is bounded by the matching exponent of `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        assert_eq!(self.k(), other.k());
        let mut exps = Vec::with_capacity(self.k());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial::new(exps))
    }

    /// Formats in `x`-notation, e.g. `x1^3x2^15` (`x3` for exponent 1,
    /// factors with exponent 0 omitted; the constant prints as `1`).
    pub fn to_x_notation(&self) -> String {
        let mut s = String::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => s.push_str(&format!("x{}", i + 1)),
                _ => s.push_str(&format!("x{}^{}", i + 1, e)),
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

impl fmt::Display for Monomial {
    /// Canonical bracket form, e.g. `[3,15,5,23,62]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A weight vector `ω = (ω_1, ω_2, …)` with trailing zeros trimmed.
///
/// Ordered left-lexicographically with zero padding, which is exactly the
/// comparison used inside [`Monomial::graded_cmp`].
///
/// ```
/// use hitf2::f2core::WeightVector;
/// let w = WeightVector::new(vec![4, 4, 4, 2, 2, 1]);
/// assert_eq!(w.degree(), 108);
/// assert_eq!(w.len(), 6);
/// assert!(WeightVector::new(vec![1, 1]) < WeightVector::new(vec![1, 1, 1]));
/// assert!(WeightVector::new(vec![2]) > WeightVector::new(vec![1, 9, 9]));
/// ```
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    entries: Vec<u32>,
}

impl WeightVector {
    /// Builds a weight vector, trimming trailing zeros.
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        WeightVector { entries }
    }

    /// The entries `(ω_1, …, ω_ℓ)` (no trailing zeros).
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// `ℓ(ω)`: the number of (nonzero-trimmed) entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True for the empty weight (the weight of a constant).
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `deg ω = Σ_i 2^{i−1} ω_i`.
    pub fn degree(&self) -> u32 {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &w)| w << i)
            .sum()
    }

    /// Entry `ω_i` (1-based); zero beyond the stored length.
    pub fn entry(&self, i: usize) -> u32 {
        self.entries.get(i - 1).copied().unwrap_or(0)
    }

    /// The concatenation `(a)|^s | rest`: `s` copies of `a` followed by
    /// the entries of `rest`.
    ///
    /// ```
    /// use hitf2::f2core::WeightVector;
    /// let w = WeightVector::repeat_then(4, 3, &[2, 2, 1]);
    /// assert_eq!(w, WeightVector::new(vec![4, 4, 4, 2, 2, 1]));
    /// ```
    pub fn repeat_then(a: u32, s: usize, rest: &[u32]) -> Self {
        let mut entries = vec![a; s];
        entries.extend_from_slice(rest);
        WeightVector::new(entries)
    }
}

impl PartialOrd for WeightVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeightVector {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.entries.len().max(other.entries.len());
        for i in 0..n {
            let a = self.entries.get(i).copied().unwrap_or(0);
            let b = other.entries.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for WeightVector {
    type Err = ParseError;

    /// Parses `4,4,4,2,2,1` or `(4,4,4,2,2,1)`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(WeightVector::new(vec![]));
        }
        let mut entries = Vec::new();
        for (i, part) in inner.split(',').enumerate() {
            entries.push(part.trim().parse::<u32>().map_err(|_| ParseError {
                pos: i,
                msg: format!("invalid weight entry {:?}", part.trim()),
            })?);
        }
        Ok(WeightVector::new(entries))
    }
}

/// A homogeneous polynomial over GF(2): a finite set of monomials
/// (addition is symmetric difference, so `f + f = 0`).
///
/// ```
/// use hitf2::f2core::{Monomial, Polynomial};
/// let m = Monomial::new(vec![1, 2]);
/// let mut f = Polynomial::zero(2);
/// f.add_monomial(m.clone());
/// f.add_monomial(m); // cancels over GF(2)
/// assert!(f.is_zero());
/// ```
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    k: usize,
    terms: std::collections::BTreeSet<Monomial>,
}

impl Polynomial {
    /// The zero polynomial in `k` variables.
    pub fn zero(k: usize) -> Self {
        Polynomial {
            k,
            terms: Default::default(),
        }
    }

    /// A single monomial as a polynomial.
    pub fn from_monomial(m: Monomial) -> Self {
        let mut p = Polynomial::zero(m.k());
        p.add_monomial(m);
        p
    }

    /// Builds from terms with GF(2) cancellation.
    ///
    /// # Panics
    /// If terms disagree in variable count or degree (inhomogeneous).
    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut p = Polynomial::zero(k);
        for t in terms {
            p.add_monomial(t);
        }
        p
    }

    /// Number of variables.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Degree of the (homogeneous) polynomial; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().next().map(|m| m.degree())
    }

    /// True iff this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True iff there are no terms (same as [`Polynomial::is_zero`]).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over the terms (in an internal storage order; use
    /// [`Polynomial::sorted_terms`] for the canonical descending order).
    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    /// Terms sorted descending under [`Monomial::graded_cmp`].
    pub fn sorted_terms(&self) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = self.terms.iter().cloned().collect();
        v.sort_by(|a, b| b.graded_cmp(a));
        v
    }

    /// True iff `m` is a term of this polynomial.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Adds one monomial over GF(2) (inserts or cancels).
    ///
    /// # Panics
    /// If `m` disagrees with existing terms in variable count or degree.
    pub fn add_monomial(&mut self, m: Monomial) {
        assert_eq!(m.k(), self.k, "term variable count mismatch");
        if let Some(d) = self.degree() {
            assert_eq!(m.degree(), d, "inhomogeneous term (degree {} vs {})", m.degree(), d);
        }
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// GF(2) sum (symmetric difference of term sets).
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.k, other.k, "polynomial variable count mismatch");
        let mut out = self.clone();
        for t in &other.terms {
            out.add_monomial(t.clone());
        }
        out
    }

    /// Product of polynomials.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.k, other.k);
        let mut out = Polynomial::zero(self.k);
        for a in &self.terms {
            for b in &other.terms {
                out.add_monomial(a.mul(b));
            }
        }
        out
    }

    /// The Frobenius square `f ↦ f²` over GF(2): exponent doubling,
    /// term-by-term (cross terms vanish in characteristic 2).
    pub fn frobenius_square(&self) -> Polynomial {
        Polynomial::from_terms(
            self.k,
            self.terms
                .iter()
                .map(|m| Monomial::new(m.exponents().iter().map(|&e| 2 * e).collect())),
        )
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: bracket monomials, sorted descending, joined by
    /// ` + `; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, m) in self.sorted_terms().iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A parse failure, with the byte position of the offending input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    /// Human-readable description.
    pub msg: String,
}

/// Parses a monomial in either grammar:
///
/// * `x`-notation: `x1^3x2^15x3^5` (whitespace between factors allowed,
///   exponent `1` omissible, repeated variables multiply);
/// * bracket form: `[3,15,5,23,62]`.
///
/// For `x`-notation, `k` is the declared variable count; bracket form
/// carries its own length, which must equal `k` if `k > 0` (pass 0 to
/// accept any length).
///
/// ```
/// use hitf2::f2core::{parse_monomial, Monomial};
/// assert_eq!(
///     parse_monomial("x1^3x2^15x3^5x4^23x5^62", 5).unwrap(),
///     Monomial::new(vec![3, 15, 5, 23, 62])
/// );
/// assert_eq!(
///     parse_monomial("[3,15,5,23,62]", 5).unwrap(),
///     Monomial::new(vec![3, 15, 5, 23, 62])
/// );
/// assert_eq!(parse_monomial("x3", 3).unwrap(), Monomial::variable(3, 3));
/// ```
pub fn parse_monomial(s: &str, k: usize) -> Result<Monomial, ParseError> {
    let t = s.trim();
    if t.starts_with('[') {
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| ParseError {
                pos: t.len(),
                msg: "unterminated bracket form".into(),
            })?;
        let mut exps = Vec::new();
        for part in inner.split(',') {
            exps.push(part.trim().parse::<u32>().map_err(|_| ParseError {
                pos: s.find(part).unwrap_or(0),
                msg: format!("invalid exponent {:?}", part.trim()),
            })?);
        }
        if k > 0 && exps.len() != k {
            return Err(ParseError {
                pos: 0,
                msg: format!("expected {k} exponents, got {}", exps.len()),
            });
        }
        return Ok(Monomial::new(exps));
    }
    if k == 0 {
        return Err(ParseError {
            pos: 0,
            msg: "x-notation needs a declared variable count".into(),
        });
    }
    if t == "1" {
        return Ok(Monomial::one(k));
    }
    let mut exps = vec![0u32; k];
    let bytes = t.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() || bytes[i] == b'*' {
            i += 1;
            continue;
        }
        if bytes[i] != b'x' {
            return Err(ParseError {
                pos: i,
                msg: format!("expected 'x', found {:?}", bytes[i] as char),
            });
        }
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let var: usize = t[start..i].parse().map_err(|_| ParseError {
            pos: start,
            msg: "missing variable index".into(),
        })?;
        if !(1..=k).contains(&var) {
            return Err(ParseError {
                pos: start,
                msg: format!("variable index {var} out of 1..={k}"),
            });
        }
        let mut exp = 1u32;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let estart = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            exp = t[estart..i].parse().map_err(|_| ParseError {
                pos: estart,
                msg: "missing exponent".into(),
            })?;
        }
        exps[var - 1] += exp;
    }
    Ok(Monomial::new(exps))
}

/// Parses a `+`-separated polynomial in either monomial grammar, with
/// GF(2) cancellation (`x1 + x1` parses to `0`).
///
/// ```
/// use hitf2::f2core::parse_polynomial;
/// let f = parse_polynomial("x1^2x2 + x1x2^2", 2).unwrap();
/// assert_eq!(f.len(), 2);
/// assert!(parse_polynomial("x1 + x1", 2).unwrap().is_zero());
/// assert!(parse_polynomial("0", 2).unwrap().is_zero());
/// ```
pub fn parse_polynomial(s: &str, k: usize) -> Result<Polynomial, ParseError> {
    let t = s.trim();
    if t == "0" || t.is_empty() {
        return Ok(Polynomial::zero(k));
    }
    let mut p = Polynomial::zero(k);
    let mut offset = 0;
    for part in t.split('+') {
        let m = parse_monomial(part, k).map_err(|e| ParseError {
            pos: offset + e.pos,
            msg: e.msg,
        })?;
        p.add_monomial(m);
        offset += part.len() + 1;
    }
    Ok(p)
}

/// `α(n)`: the number of 1 bits in the binary expansion of `n`.
///
/// ```
/// use hitf2::f2core::alpha;
/// assert_eq!(alpha(0), 0);
/// assert_eq!(alpha(108), 4); // 108 = 1101100₂
/// assert_eq!(alpha(7), 3);
/// ```
pub fn alpha(n: u32) -> u32 {
    n.count_ones()
}

/// `μ(n)`: the least `r` such that `n` is a sum of `r` integers of the
/// form `2^t − 1` (`t ≥ 1`), computed as `min { r ≥ 0 : α(n + r) ≤ r }`.
///
/// ```
/// use hitf2::f2core::mu;
/// assert_eq!(mu(0), 0);
/// assert_eq!(mu(108), 4); // 108 = 63 + 31 + 7 + 7
/// assert_eq!(mu(7), 1);
/// ```
pub fn mu(n: u32) -> u32 {
    (0..).find(|&r| alpha(n + r) <= r).unwrap()
}

/// An error from [`minimal_spike`]: no spike of the requested degree
/// exists in `k` variables.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no spike of degree {degree} exists in {k} variables (μ = {mu} > k)")]
pub struct NoSpike {
    /// Requested degree.
    pub degree: u32,
    /// Requested variable count.
    pub k: usize,
    /// `μ(degree)`, which exceeds `k`.
    pub mu: u32,
}

/// The *minimal spike* of degree `n` in `k` variables: the unique spike
/// `x_1^{2^{t_1}−1} ⋯ x_h^{2^{t_h}−1}` with
/// `t_1 > t_2 > … > t_{h−1} ≥ t_h > 0`. Its weight vector is minimal
/// among the weights of all degree-`n` spikes, which is what makes it
/// the yardstick of the hit criterion: any monomial of strictly smaller
/// weight is hit (Singer's criterion).
///
/// ```
/// use hitf2::f2core::{minimal_spike, Monomial};
/// assert_eq!(
///     minimal_spike(108, 5).unwrap(),
///     Monomial::new(vec![63, 31, 7, 7, 0])
/// );
/// assert_eq!(minimal_spike(3, 2).unwrap(), Monomial::new(vec![3, 0]));
/// assert_eq!(minimal_spike(7, 3).unwrap(), Monomial::new(vec![7, 0, 0]));
/// assert!(minimal_spike(108, 3).is_err());
/// ```
pub fn minimal_spike(n: u32, k: usize) -> Result<Monomial, NoSpike> {
    let m = mu(n);
    if m > k as u32 {
        return Err(NoSpike { degree: n, k, mu: m });
    }
    if n == 0 {
        return Ok(Monomial::one(k));
    }
    // Search for exponent patterns t_1 > … > t_{h-1} >= t_h > 0 summing
    // to n; the defining pattern is unique, which the search asserts.
    fn rec(remaining: u32, max_t: u32, slots: usize, acc: &mut Vec<u32>, found: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            found.push(acc.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        let prev = acc.last().copied();
        for t in (1..=max_t).rev() {
            let part = (1u32 << t) - 1;
            if part > remaining {
                continue;
            }
            // Strict descent, except the last used slot may repeat the
            // previous value once (the weak tail of the pattern).
            let last = remaining == part;
            match prev {
                Some(p) if t > p => continue,
                Some(p) if t == p && !last => continue,
                _ => {}
            }
            acc.push(t);
            rec(remaining - part, t, slots - 1, acc, found);
            acc.pop();
        }
    }
    let mut found = Vec::new();
    rec(n, 31, k, &mut Vec::new(), &mut found);
    assert_eq!(
        found.len(),
        1,
        "the minimal-spike pattern must be unique for degree {n}, k {k}; got {found:?}"
    );
    let mut exps = vec![0u32; k];
    for (i, &t) in found[0].iter().enumerate() {
        exps[i] = (1u32 << t) - 1;
    }
    Ok(Monomial::new(exps))
}
