//! The action of the mod-2 Steenrod squares `Sq^r` on `P_k` via the
//! Cartan formula, generator streams for the hit subspace, and
//! algebraic self-tests (Adem relations, instability).
//!
//! On a single variable, `Sq^i(x^a) = C(a, i) x^{a+i}` with the binomial
//! coefficient read mod 2; the Cartan formula extends this
//! multiplicatively:
//!
//! ```text
//! Sq^r(x_1^{a_1} ⋯ x_k^{a_k}) = Σ_{r_1+…+r_k = r} ∏_i C(a_i, r_i) x_i^{a_i + r_i}
//! ```
//!
//! By Lucas' theorem `C(a, b)` is odd exactly when every binary bit of
//! `b` is also a bit of `a`, which makes the expansion cheap to prune.

use crate::f2core::{Monomial, Polynomial};

/// Returns 1 iff the binomial coefficient `C(a, b)` is odd
/// (Lucas: `((a − b) & b) == 0` when `b ≤ a`, else 0).
///
/// ```
/// use hitf2::steenrod::binom_mod2;
/// assert_eq!(binom_mod2(3, 2), 1);
/// assert_eq!(binom_mod2(2, 1), 0);
/// assert_eq!(binom_mod2(62, 32), 1);
/// ```
pub fn binom_mod2(a: u32, b: u32) -> u32 {
    if b > a {
        0
    } else {
        ((a - b) & b == 0) as u32
    }
}

/// `Sq^r` applied to a single monomial: the Cartan expansion over all
/// compositions `r = r_1 + … + r_k`, pruned to odd binomials.
pub fn sq_monomial(r: u32, m: &Monomial) -> Polynomial {
    let k = m.k();
    let mut out = Polynomial::zero(k);
    // Recursive composition enumeration with Lucas pruning: at each
    // variable choose r_i with C(a_i, r_i) odd, i.e. bits(r_i) ⊆ bits(a_i).
    fn rec(
        exps: &[u32],
        idx: usize,
        remaining: u32,
        acc: &mut Vec<u32>,
        out: &mut Polynomial,
    ) {
        if idx == exps.len() {
            if remaining == 0 {
                out.add_monomial(Monomial::new(acc.clone()));
            }
            return;
        }
        if idx == exps.len() - 1 {
            // Last variable must absorb the rest.
            let a = exps[idx];
            if binom_mod2(a, remaining) == 1 {
                acc.push(a + remaining);
                out.add_monomial(Monomial::new(acc.clone()));
                acc.pop();
            }
            return;
        }
        let a = exps[idx];
        // Enumerate sub-masks of bits(a) that are ≤ remaining, plus r_i = 0.
        let mut r_i = 0u32;
        loop {
            if r_i <= remaining {
                acc.push(a + r_i);
                rec(exps, idx + 1, remaining - r_i, acc, out);
                acc.pop();
            }
            // Next sub-mask of a (standard sub-mask enumeration).
            if r_i == a {
                break;
            }
            r_i = (r_i.wrapping_sub(a)) & a;
            if r_i == 0 {
                break;
            }
        }
    }
    let mut acc = Vec::with_capacity(k);
    rec(m.exponents(), 0, r, &mut acc, &mut out);
    out
}

/// `Sq^r(f)`: linear extension of [`sq_monomial`]. `Sq^0` is the
/// identity; `Sq^r(f) = 0` for `r > deg f`; the top square of a
/// monomial is its Frobenius square.
///
/// ```
/// use hitf2::f2core::parse_polynomial;
/// use hitf2::steenrod::sq;
/// let f = parse_polynomial("x1x2", 2).unwrap();
/// assert_eq!(sq(1, &f).to_string(), "[2,1] + [1,2]");
/// let g = parse_polynomial("x1^2", 2).unwrap();
/// assert!(sq(1, &g).is_zero());
/// let h = parse_polynomial("x1^3x2", 2).unwrap();
/// assert_eq!(sq(2, &h).to_string(), "[5,1] + [4,2]");
/// ```
pub fn sq(r: u32, f: &Polynomial) -> Polynomial {
    if r == 0 {
        return f.clone();
    }
    let mut out = Polynomial::zero(f.k());
    for m in f.terms() {
        out = out.add(&sq_monomial(r, m));
    }
    out
}

/// Enumerates every monomial of degree `n` in `k` variables, in an
/// unspecified order. (Total `C(n + k − 1, k − 1)` monomials.)
pub fn monomials_of_degree(k: usize, n: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut acc = vec![0u32; k];
    fn rec(k: usize, idx: usize, remaining: u32, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if idx == k - 1 {
            acc[idx] = remaining;
            out.push(Monomial::new(acc.clone()));
            return;
        }
        for e in 0..=remaining {
            acc[idx] = e;
            rec(k, idx + 1, remaining - e, acc, out);
        }
    }
    if k == 0 {
        return out;
    }
    rec(k, 0, n, &mut acc, &mut out);
    out
}

/// Streams spanning generators of the degree-`n` hit subspace
/// `(𝒜^+ P_k)_n`: the nonzero images `Sq^{2^j}(m)` over every `j` with
/// `2^j ≤ n` and every monomial `m` of degree `n − 2^j`.
///
/// Only the squares `Sq^{2^j}` are used — they generate the Steenrod
/// algebra, so their images span the same subspace as all `Sq^r`
/// (cross-checked in tests at small parameters).
///
/// ```
/// use hitf2::steenrod::hit_generator_stream;
/// // Degree 3 in one variable: x^3 is a spike, nothing is hit.
/// assert!(hit_generator_stream(1, 3).next().is_none());
/// // Degree 2 in one variable: Sq^1(x) = x^2.
/// let rows: Vec<_> = hit_generator_stream(1, 2).collect();
/// assert_eq!(rows.len(), 1);
/// assert_eq!(rows[0].to_string(), "[2]");
/// ```
pub fn hit_generator_stream(k: usize, n: u32) -> impl Iterator<Item = Polynomial> {
    assert!(n >= 1, "hit generators exist only in positive degree");
    let mut js = Vec::new();
    let mut j = 0u32;
    while (1u32 << j) <= n {
        js.push(j);
        j += 1;
    }
    js.into_iter().flat_map(move |j| {
        let r = 1u32 << j;
        monomials_of_degree(k, n - r)
            .into_iter()
            .map(move |m| sq_monomial(r, &m))
            .filter(|p| !p.is_zero())
    })
}

/// Like [`hit_generator_stream`] but using *all* squares `Sq^r`,
/// `1 ≤ r ≤ n`; spans the same subspace (test oracle).
pub fn hit_generator_stream_all_r(k: usize, n: u32) -> impl Iterator<Item = Polynomial> {
    (1..=n).flat_map(move |r| {
        monomials_of_degree(k, n - r)
            .into_iter()
            .map(move |m| sq_monomial(r, &m))
            .filter(|p| !p.is_zero())
    })
}

/// Verifies the Adem relation
/// `Sq^a Sq^b = Σ_c C(b−c−1, a−2c) Sq^{a+b−c} Sq^c` (over GF(2))
/// applied to `f`, for `0 < a < 2b`. Test utility.
///
/// ```
/// use hitf2::f2core::parse_polynomial;
/// use hitf2::steenrod::adem_check;
/// let f = parse_polynomial("x1^3x2^2x3", 3).unwrap();
/// assert!(adem_check(1, 2, &f)); // Sq^1 Sq^2 = Sq^3
/// assert!(adem_check(2, 2, &f)); // Sq^2 Sq^2 = Sq^3 Sq^1
/// assert!(adem_check(1, 1, &f)); // Sq^1 Sq^1 = 0
/// ```
pub fn adem_check(a: u32, b: u32, f: &Polynomial) -> bool {
    assert!(0 < a && a < 2 * b, "Adem relation requires 0 < a < 2b");
    let lhs = sq(a, &sq(b, f));
    let mut rhs = Polynomial::zero(f.k());
    for c in 0..=(a / 2) {
        // C(b - c - 1, a - 2c) mod 2; b - c - 1 could underflow when c = b,
        // but c ≤ a/2 < b so b - c - 1 ≥ 0.
        if binom_mod2(b - c - 1, a - 2 * c) == 1 {
            rhs = rhs.add(&sq(a + b - c, &sq(c, f)));
        }
    }
    lhs == rhs
}
