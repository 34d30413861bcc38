//! Acceptance suite: one test (= one pass/fail line in the runner
//! output) per top-level acceptance criterion. Each test prints a
//! `CRITERION <n> …` summary visible with `--nocapture`.
//!
//! Criteria 5 and 7 exercise the published degree-108 five-variable
//! analysis. The computations contradict two published values — the
//! main-stratum dimension (1736, published 1737) and the status of the
//! 60-term polynomial `p` (hit, published as a nonzero invariant) —
//! and those contradictions are machine-certified: the shipped
//! certificate `fixtures/p_hit_certificate.txt` exhibits `p` as a sum
//! of `Sq^{2^j}` images modulo lower weight, checkable by direct
//! Cartan evaluation. The tests therefore assert the *certified*
//! values and report the published ones as findings.

use hitf2::f2core::{mu, parse_monomial, Monomial, Polynomial, WeightVector};
use hitf2::f2linalg::{intersect_with_suffix, EchelonBasis, Row};
use hitf2::hitproblem::{
    admissible_basis_full, admissible_basis_weight, check_hit_certificate,
    dimension_formula_check, phi_plus_set, phi_zero_set, qp_dimension_by_weights, BuildOptions,
    QuotientSpace, StratumSpace,
};
use hitf2::invariants::{
    invariant_space, parse_certificate, parse_monomial_lines, sf_tilde, verify_counterexample,
    verify_identity, verify_lemma_identities, Group, IdentityFile,
};
use hitf2::steenrod::{adem_check, sq};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::Instant;

fn opts() -> BuildOptions {
    BuildOptions {
        budget_bytes: Some(8 << 30),
        cache_dir: None,
        use_singer_filter: true,
    }
}

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {path}: {e}"))
}

fn random_poly(rng: &mut StdRng, k: usize, deg: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(k);
    for _ in 0..terms {
        loop {
            let mut exps: Vec<u32> = (0..k - 1)
                .map(|_| rng.random_range(0..=deg))
                .collect();
            let partial: u32 = exps.iter().sum();
            if partial <= deg {
                exps.push(deg - partial);
                p.add_monomial(Monomial::new(exps));
                break;
            }
        }
    }
    p
}

/// Criterion 1: the Steenrod suite — Cartan product rule, instability,
/// top square = Frobenius, Adem relations — on ≥ 1000 random inputs.
#[test]
fn criterion1_steenrod_suite() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut cartan_checked = 0usize;
    for _ in 0..1000 {
        let k = rng.random_range(1..=4);
        let (df, tf) = (rng.random_range(0..=10), rng.random_range(1..=3));
        let (dg, tg) = (rng.random_range(0..=10), rng.random_range(1..=3));
        let f = random_poly(&mut rng, k, df, tf);
        let g = random_poly(&mut rng, k, dg, tg);
        let r = rng.random_range(0..=21);
        let lhs = sq(r, &f.mul(&g));
        let mut rhs = Polynomial::zero(k);
        for i in 0..=r {
            rhs = rhs.add(&sq(i, &f).mul(&sq(r - i, &g)));
        }
        assert_eq!(lhs, rhs, "Cartan product rule failed for Sq^{r}");
        cartan_checked += 1;

        // Instability and the top square on f.
        if let Some(d) = f.degree() {
            assert!(sq(d + 1 + rng.random_range(0..=3), &f).is_zero(), "Sq above degree");
            assert_eq!(sq(d, &f), f.frobenius_square(), "top square");
        }
    }
    // Adem relations on random admissible ranges 0 < a < 2b ≤ 32.
    let mut adem_checked = 0usize;
    while adem_checked < 300 {
        let b = rng.random_range(1..=16u32);
        let a = rng.random_range(1..2 * b);
        let k = rng.random_range(1..=3);
        let deg = rng.random_range(0..=8);
        let f = random_poly(&mut rng, k, deg, 2);
        assert!(adem_check(a, b, &f), "Adem relation failed at (a,b)=({a},{b})");
        adem_checked += 1;
    }
    println!("CRITERION 1 PASS: {cartan_checked} Cartan + instability samples, {adem_checked} Adem samples");
}

/// Criterion 2: the full-degree elimination and the weight-stratified
/// union agree monomial-for-monomial; `intersect_with_suffix` matches
/// exhaustive combination enumeration.
#[test]
fn criterion2_oracle_equivalence() {
    let ranges: Vec<(usize, u32)> = (1..=3)
        .flat_map(|k| (0..=24).map(move |n| (k, n)))
        .chain((0..=12).map(|n| (4usize, n)))
        .collect();
    let mut compared = 0usize;
    for &(k, n) in &ranges {
        let full = admissible_basis_full(k, n, &opts()).unwrap();
        let full_set: BTreeSet<Monomial> = full.basis().monomials.iter().cloned().collect();
        for use_singer in [true, false] {
            let o = BuildOptions {
                use_singer_filter: use_singer,
                ..opts()
            };
            let strat = qp_dimension_by_weights(k, n, &o).unwrap();
            assert_eq!(
                strat.monomial_set(),
                full_set,
                "(k,n)=({k},{n}), singer={use_singer}"
            );
            compared += 1;
        }
    }

    // intersect_with_suffix vs exhaustive combinations.
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for trial in 0..200 {
        let ncols = rng.random_range(4..=12usize);
        let nrows = rng.random_range(1..=12usize);
        let cut = rng.random_range(0..=ncols);
        let rows: Vec<Row> = (0..nrows)
            .map(|_| {
                let support: Vec<usize> =
                    (0..ncols).filter(|_| rng.random_bool(0.4)).collect();
                Row::from_support(ncols, &support)
            })
            .collect();
        let inter = intersect_with_suffix(rows.clone(), cut);
        // Oracle: enumerate all 2^nrows combinations, keep those with
        // zero prefix, echelonize their suffixes.
        let mut oracle = EchelonBasis::new(ncols - cut);
        for mask in 0u32..(1 << nrows) {
            let mut acc = Row::zero(ncols);
            for (t, row) in rows.iter().enumerate() {
                if (mask >> t) & 1 == 1 {
                    acc.xor_in(row);
                }
            }
            if acc.leading().is_none_or(|l| l >= cut) {
                oracle.insert(acc.suffix(cut)).unwrap();
            }
        }
        assert_eq!(
            inter.pivot_indices(),
            oracle.pivot_indices(),
            "trial {trial}"
        );
        assert_eq!(inter.rank(), oracle.rank(), "trial {trial}");
    }
    println!("CRITERION 2 PASS: {compared} (k,n,filter) stratification comparisons, 200 suffix-intersection trials");
}

/// Criterion 3: Peterson/Wood vanishing — `(QP_k)_n = 0` exactly when
/// `μ(n) > k`, for `k ≤ 3`, `n ≤ 24`.
#[test]
fn criterion3_peterson_wood_vanishing() {
    let mut checked = 0usize;
    for k in 1..=3usize {
        for n in 1..=24u32 {
            let dim = admissible_basis_full(k, n, &opts()).unwrap().basis().dim();
            assert_eq!(
                dim == 0,
                mu(n) > k as u32,
                "(k,n)=({k},{n}): dim={dim}, mu={}",
                mu(n)
            );
            checked += 1;
        }
    }
    println!("CRITERION 3 PASS: {checked} (k,n) pairs match the mu criterion");
}

/// Criterion 4: the published four-variable and small five-variable
/// values at degree 108, exact: 56 (+ exact basis), 310, 124, 280, 1403.
#[test]
fn criterion4_published_dimension_counts() {
    let w: WeightVector = "4,4,4,2,2,1".parse().unwrap();
    let s4 = admissible_basis_weight(4, &w, &opts()).unwrap();
    assert_eq!(s4.basis().dim(), 56);
    let fixture_56: BTreeSet<Monomial> =
        parse_monomial_lines(&fixture("basis_k4_d108_w444221.txt"), 4)
            .unwrap()
            .into_iter()
            .collect();
    let computed: BTreeSet<Monomial> = s4.basis().monomials.iter().cloned().collect();
    assert_eq!(computed, fixture_56, "56-monomial basis must match the fixture");

    let s310 = admissible_basis_weight(5, &"4,4,4,4,1,1".parse().unwrap(), &opts()).unwrap();
    assert_eq!(s310.basis().dim(), 310);
    let s124 = admissible_basis_weight(5, &"4,4,4,4,3".parse().unwrap(), &opts()).unwrap();
    assert_eq!(s124.basis().dim(), 124);

    let b4: Vec<Monomial> = fixture_56.into_iter().collect();
    assert_eq!(phi_zero_set(&b4).len(), 280);
    assert_eq!(phi_plus_set(&b4).len(), 1403);
    println!("CRITERION 4 PASS: 56 (exact basis), 310, 124, 280, 1403");
}

static BIG_STRATUM: OnceLock<StratumSpace> = OnceLock::new();

fn big_stratum() -> &'static StratumSpace {
    BIG_STRATUM.get_or_init(|| {
        let w: WeightVector = "4,4,4,2,2,1".parse().unwrap();
        admissible_basis_weight(5, &w, &opts()).unwrap()
    })
}

/// Criterion 5 (stretch): the 62,500-column stratum within budget.
/// The published values are 1737 / 1457 / a fully admissible 54-table
/// / 2171; the computation certifies 1736 / 1456 / 53 of 54 / 2170,
/// with the one-dimensional discrepancy pinned to the polynomial `p`
/// by the forward-verified hit certificate (criterion 7). This test
/// asserts the certified values and reports the published ones as
/// findings.
#[test]
fn criterion5_stretch_main_stratum() {
    let t = Instant::now();
    let s5 = big_stratum();
    let elapsed = t.elapsed();
    assert!(
        elapsed.as_secs() < 7200,
        "budget exceeded: {elapsed:?} > 2h"
    );
    let dim = s5.basis().dim();
    let plus = s5
        .basis()
        .monomials
        .iter()
        .filter(|m| m.exponents().iter().all(|&e| e > 0))
        .count();
    let table54 = parse_monomial_lines(&fixture("extra_admissible_54.txt"), 5).unwrap();
    let basis_set: BTreeSet<&Monomial> = s5.basis().monomials.iter().collect();
    let admissible54 = table54.iter().filter(|m| basis_set.contains(m)).count();
    let total = dim + 310 + 124;

    assert_eq!(dim, 1736, "main stratum dimension");
    assert_eq!(plus, 1456, "all-positive admissible count");
    assert_eq!(admissible54, 53, "54-table admissible membership");
    assert_eq!(total, 2170, "degree-108 total");
    // The published claims, kept visible as findings:
    println!(
        "CRITERION 5 PASS (with findings): computed dim 1736 / plus 1456 / 54-table {admissible54}/54 / total 2170 \
         in {elapsed:?}; published values 1737 / 1457 / 54/54 / 2171 are each off by the class of p, \
         which the verified certificate proves hit (see criterion 7)"
    );
}

/// Criterion 6: every shipped Cartan-identity certificate verifies,
/// and mutated certificates (re-adding the rewritten monomial, or
/// dropping one Sq argument) fail.
#[test]
fn criterion6_identity_verification() {
    let text = fixture("identities.json");
    let results = verify_lemma_identities(&text).unwrap();
    assert_eq!(results.len(), 23);
    for r in &results {
        assert!(r.pass, "{}: {}", r.name, r.detail);
    }
    let file: IdentityFile = serde_json::from_str(&text).unwrap();
    let mut mutations = 0usize;
    for idy in &file.identities {
        let mut m1 = idy.clone();
        m1.plain.push(idy.lhs.clone());
        assert!(!verify_identity(&m1).pass, "{}: lhs mutation passed", idy.id);
        mutations += 1;
        let mut m2 = idy.clone();
        if let Some(key) = m2.sq.keys().next().cloned() {
            let args = m2.sq.get_mut(&key).unwrap();
            if !args.is_empty() {
                args.remove(0);
                assert!(!verify_identity(&m2).pass, "{}: Sq-drop mutation passed", idy.id);
                mutations += 1;
            }
        }
    }
    println!("CRITERION 6 PASS: 23 identities verified, {mutations} mutation controls failed as required");
}

/// Criterion 7: the degree-108 analysis of the 60-term polynomial `p`.
/// Certified outcome: `p` has weight-(4,4,4,2,2,1) terms, is invariant
/// under every `GL_5` generator modulo hit + lower weight, 59 of its
/// 60 terms are admissible — and `[p]` itself is *hit*, with a
/// forward-verified certificate, so `SF̃_5` on the stratum is zero.
/// The published claims (all 60 terms admissible, `[p] ≠ 0` spanning a
/// one-dimensional `SF̃_5`) are reported as findings.
#[test]
fn criterion7_counterexample_verification() {
    let w: WeightVector = "4,4,4,2,2,1".parse().unwrap();
    let p = Polynomial::from_terms(
        5,
        parse_monomial_lines(&fixture("polynomial_p.txt"), 5).unwrap(),
    );
    let cert = parse_certificate(&fixture("p_hit_certificate.txt"), 5).unwrap();
    assert!(
        check_hit_certificate(&p, &w, &cert),
        "shipped certificate must forward-verify"
    );
    let s5 = big_stratum();
    let s4 = admissible_basis_weight(4, &w, &opts()).unwrap();
    let report = verify_counterexample(&p, s5, &s4, Some(&cert)).unwrap();
    let get = |name: &str| {
        report
            .checks
            .iter()
            .find(|c| c.name == name)
            .unwrap_or_else(|| panic!("missing check {name}"))
    };
    assert!(get("p-shape").pass);
    for i in 1..=5 {
        assert!(get(&format!("rho{i}-invariance")).pass, "rho_{i}");
    }
    // Certified findings against the published claims:
    let adm = get("p-terms-admissible");
    assert!(!adm.pass && adm.detail.contains("[15,15,23,17,38]"), "{}", adm.detail);
    let cls = get("p-class-nonzero");
    assert!(!cls.pass && cls.detail.contains("certificate with 2110 Sq-generators: true"), "{}", cls.detail);
    let sf = get("sf-tilde-dim");
    assert!(!sf.pass && sf.detail.contains("= 0"), "{}", sf.detail);
    assert!(report.certificate.is_some());

    // SF̃ and the GL_5-invariants of the stratum are both zero.
    let sf_space = sf_tilde(s5, &s4).unwrap();
    assert_eq!(sf_space.dim, 0);
    let inv = invariant_space(s5, Group::GeneralLinear).unwrap();
    assert_eq!(inv.dim, 0);
    println!(
        "CRITERION 7 PASS (with findings): rho-invariance holds for all 5 generators; \
         [p] = 0 with a 2110-generator certificate verified by direct Cartan evaluation \
         (published: [p] nonzero spanning SF~ of dim 1; computed: SF~ = 0, GL_5-invariants = 0; \
         the term [15,15,23,17,38] is the unique non-admissible term of p)"
    );
}

/// Criterion 8: the stability dimension formula and the lifted-basis
/// set equality at two parameter choices, hypotheses machine-checked,
/// both sides computed independently.
#[test]
fn criterion8_dimension_formula() {
    let r1 = dimension_formula_check(3, 2, 1, &opts()).unwrap();
    assert_eq!((r1.n, r1.dim_k_n, r1.dim_km1_q), (10, 14, 2));
    assert!(r1.formula_holds && r1.phi_matches);
    let r2 = dimension_formula_check(4, 3, 1, &opts()).unwrap();
    assert_eq!((r2.n, r2.dim_k_n, r2.dim_km1_q), (29, 45, 3));
    assert!(r2.formula_holds && r2.phi_matches);
    // Hypothesis checking rejects out-of-range parameters.
    assert!(dimension_formula_check(2, 3, 2, &opts()).is_err());
    assert!(dimension_formula_check(3, 1, 1, &opts()).is_err());
    println!("CRITERION 8 PASS: (k=3,d=2,q=1) → n=10 dim 14; (k=4,d=3,q=1) → n=29 dim 45; hypotheses enforced");
}

/// Parse errors in the fixture set would silently weaken several
/// criteria; fail fast if any fixture is malformed.
#[test]
fn fixtures_are_well_formed() {
    assert_eq!(
        parse_monomial_lines(&fixture("polynomial_p.txt"), 5).unwrap().len(),
        60
    );
    assert_eq!(
        parse_monomial_lines(&fixture("basis_k4_d108_w444221.txt"), 4).unwrap().len(),
        56
    );
    assert_eq!(
        parse_monomial_lines(&fixture("plus_basis_a330.txt"), 5).unwrap().len(),
        330
    );
    assert_eq!(
        parse_monomial_lines(&fixture("plus_basis_b1127.txt"), 5).unwrap().len(),
        1127
    );
    assert_eq!(
        parse_monomial_lines(&fixture("extra_admissible_54.txt"), 5).unwrap().len(),
        54
    );
    assert_eq!(
        parse_certificate(&fixture("p_hit_certificate.txt"), 5).unwrap().len(),
        2110
    );
    assert!(parse_monomial("[3,15,5,23,62]", 5).is_ok());
    println!("fixtures well-formed");
}
