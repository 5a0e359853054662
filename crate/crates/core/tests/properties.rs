use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use coxline::coxmono::{self, CoxMonomial};
use coxline::oracle::{self, PointConfig};
use coxline::picard::{self, DivisorClass};

fn class(d: i64, a: &[i64]) -> DivisorClass {
    DivisorClass::from_i64(d, a).unwrap()
}

/// Row reduction over `Q`, one pivot at a time.
fn naive_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Subtracts one negative curve at a time, `E_1, ..., E_n` before the line.
fn greedy_strip(dc: &DivisorClass) -> DivisorClass {
    let n = dc.n();
    let line = DivisorClass::line_through_points(n).unwrap();
    let mut cur = dc.clone();
    loop {
        if let Some(i) = (0..n).find(|&i| cur.a()[i].is_negative()) {
            cur = cur.checked_sub(&DivisorClass::exceptional(n, i + 1).unwrap()).unwrap();
        } else if picard::intersect(&cur, &line).unwrap().is_negative() {
            cur = cur.checked_sub(&line).unwrap();
        } else {
            return cur;
        }
    }
}

fn small_class(
    n: std::ops::Range<usize>,
    d: std::ops::Range<i64>,
    a: std::ops::Range<i64>,
) -> impl Strategy<Value = DivisorClass> {
    (n, d).prop_flat_map(move |(n, d)| proptest::collection::vec(a.clone(), n).prop_map(move |a| class(d, &a)))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

/// A valid collinear configuration with `n` points.
fn config(n: usize) -> impl Strategy<Value = PointConfig> {
    (
        proptest::collection::btree_set(rational(), n),
        rational(),
        rational().prop_filter("q off the line", |y| !y.is_zero()),
        rational(),
    )
        .prop_map(|(t, qx, qy, qz)| PointConfig::new(t.into_iter().collect(), [qx, qy, qz]).unwrap())
}

fn monomial(n: usize) -> impl Strategy<Value = CoxMonomial> {
    (0u32..4, proptest::collection::vec(0u32..4, n), proptest::collection::vec(0u32..4, n))
        .prop_map(|(lambda, sigma, epsilon)| CoxMonomial { lambda, sigma, epsilon })
}

proptest! {
    #[test]
    fn exact_rank_matches_naive_elimination(
        rows in proptest::collection::vec(proptest::collection::vec(rational(), 5), 0..6),
        dup in any::<bool>(),
    ) {
        let mut rows = rows;
        if dup && rows.len() >= 2 {
            // force a dependency
            let combo: Vec<BigRational> = rows[0].iter().zip(&rows[1]).map(|(x, y)| x * BigRational::from_integer(3.into()) - y).collect();
            rows.push(combo);
        }
        prop_assert_eq!(oracle::exact_rank(&rows), naive_rank(&rows));
    }

    #[test]
    fn closed_form_stripping_matches_greedy(dc in small_class(2..6, 0..10, -3..8)) {
        prop_assume!(picard::is_effective(&dc));
        let s = picard::strip_base_components(&dc).unwrap();
        prop_assert_eq!(&s.nef_part, &greedy_strip(&dc));
        prop_assert!(picard::is_nef(&s.nef_part));
        let mut rebuilt = s.nef_part.clone();
        let n = dc.n();
        for (i, k) in s.removed_exceptional.iter().enumerate() {
            rebuilt = rebuilt + DivisorClass::exceptional(n, i + 1).unwrap().scale(k);
        }
        rebuilt = rebuilt + DivisorClass::line_through_points(n).unwrap().scale(&s.removed_line);
        prop_assert_eq!(rebuilt, dc);
    }

    #[test]
    fn chi_is_riemann_roch(dc in small_class(2..8, -20..40, -20..20)) {
        let k = picard::canonical_class(dc.n()).unwrap();
        let dd = picard::intersect(&dc, &dc).unwrap();
        let dk = picard::intersect(&dc, &k).unwrap();
        let twice = BigInt::from(2) * picard::chi(&dc);
        prop_assert_eq!(twice, BigInt::from(2) + dd - dk);
    }

    #[test]
    fn coordinates_round_trip(dc in small_class(2..7, -5..15, -5..15)) {
        if let Some(e) = picard::effective_coords(&dc) {
            prop_assert!(e.m >= BigInt::zero() && e.c.iter().all(|c| !c.is_negative()));
            prop_assert_eq!(e.to_class().unwrap(), dc.clone());
        } else {
            prop_assert!(!picard::is_effective(&dc));
            prop_assert_eq!(picard::h0(&dc), BigInt::zero());
        }
        if let Some(nc) = picard::nef_coords(&dc) {
            prop_assert_eq!(nc.to_class().unwrap(), dc.clone());
            prop_assert!(picard::is_effective(&dc));
            prop_assert_eq!(picard::h0(&dc), picard::chi(&dc));
        }
    }

    #[test]
    fn degree_is_additive(pair in (2usize..6).prop_flat_map(|n| (monomial(n), monomial(n)))) {
        let (x, y) = pair;
        let sum = coxmono::degree_of(&x).unwrap() + coxmono::degree_of(&y).unwrap();
        prop_assert_eq!(coxmono::degree_of(&x.mul(&y)).unwrap(), sum);
        prop_assert!(x.divides(&x.mul(&y)));
        prop_assert_eq!(x.quotient_of(&x.mul(&y)), Some(y.clone()));
    }

    #[test]
    fn enumeration_matches_filtered_monomials(dc in small_class(2..5, 0..5, -2..5)) {
        let all = coxmono::enumerate_monomials(&dc).unwrap();
        let expected: BTreeSet<CoxMonomial> = all.into_iter().filter(|m| !m.in_initial_ideal()).collect();
        let got = coxmono::enumerate_standard_monomials(&dc).unwrap();
        let got_set: BTreeSet<CoxMonomial> = got.monomials.iter().cloned().collect();
        prop_assert_eq!(got_set.len(), got.len());
        prop_assert_eq!(&got_set, &expected);
        for m in &got.monomials {
            prop_assert_eq!(coxmono::degree_of(m).unwrap(), dc.clone());
        }
        prop_assert_eq!(BigInt::from(got.len()), picard::h0(&dc));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn collinear_configurations_are_interchangeable(
        (cfg, dc) in (3usize..5).prop_flat_map(|n| (config(n), small_class(n..n + 1, 0..5, -1..4)))
    ) {
        let default = PointConfig::default_for(cfg.n()).unwrap();
        let rank = oracle::h0_rank(&cfg, &dc).unwrap();
        prop_assert_eq!(rank, oracle::h0_rank(&default, &dc).unwrap());
        prop_assert_eq!(BigInt::from(rank), picard::h0(&dc));
        if picard::is_effective(&dc) {
            prop_assert!(oracle::verify_basis_independence(&cfg, &dc).unwrap());
        }
    }

    #[test]
    fn relations_hold_for_any_collinear_configuration(cfg in (3usize..6).prop_flat_map(config)) {
        let n = cfg.n();
        let rels = coxline::relations::derive_relations(&cfg).unwrap();
        prop_assert_eq!(rels.len(), n - 2);
        prop_assert!(coxline::relations::leading_terms_coprime(&rels, n).unwrap());
        for r in &rels {
            prop_assert!(coxline::relations::verify_relation_geometrically(&cfg, r).unwrap());
        }
        for (_, _, zero) in coxline::relations::spoly_matrix(&rels, n).unwrap() {
            prop_assert!(zero);
        }
    }
}
