use std::collections::BTreeSet;
use std::sync::Arc;

use bitype_core::betti::{
    reduced_homology_ranks, reduced_homology_ranks_with, SimplicialComplexView,
};
use bitype_core::covers::{dim_oracle, is_unmixed, minimal_vertex_covers};
use bitype_core::linalg::{rank_fraction_free, rank_over_field, Matrix};
use bitype_core::primes::{ass_oracle, minimal_primes};
use bitype_core::sorting::{is_sortable, sort_pair};
use bitype_core::{
    betti, build_generalized, build_generalized_by_compositions, BigInteger, BigRational,
    BlockStructure, ExponentVector, IdealParameters, Limits, MonomialIdeal, Rational,
};
use num_bigint::BigInt;
use num_rational::Ratio;
use proptest::prelude::*;

fn structure() -> impl Strategy<Value = Arc<BlockStructure>> {
    prop::collection::vec(1usize..=2, 1..=3).prop_map(|b| BlockStructure::new(b).unwrap())
}

fn monomials(
    s: &Arc<BlockStructure>,
    max_exp: u32,
    count: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Vec<ExponentVector>> {
    let s = s.clone();
    let n = s.n_vars();
    prop::collection::vec(prop::collection::vec(0..=max_exp, n), count).prop_map(move |rows| {
        rows.into_iter()
            .map(|e| ExponentVector::new(s.clone(), e).unwrap())
            .collect()
    })
}

fn ideal_with_points() -> impl Strategy<
    Value = (
        Arc<BlockStructure>,
        Vec<ExponentVector>,
        Vec<ExponentVector>,
    ),
> {
    structure().prop_flat_map(|s| {
        (
            Just(s.clone()),
            monomials(&s, 3, 1..=5),
            monomials(&s, 3, 1..=4),
        )
    })
}

fn equal_degree_set() -> impl Strategy<Value = Vec<ExponentVector>> {
    structure().prop_flat_map(|s| {
        let n = s.n_vars();
        let s2 = s.clone();
        (
            1u32..=4,
            prop::collection::vec(prop::collection::vec(0u32..=3, n), 1..=8),
        )
            .prop_map(move |(d, rows)| {
                // scale rows onto degree d by greedy truncation/padding
                rows.into_iter()
                    .map(|mut e| {
                        let mut total: u32 = e.iter().sum();
                        for x in e.iter_mut().rev() {
                            while total > d && *x > 0 {
                                *x -= 1;
                                total -= 1;
                            }
                        }
                        e[0] += d - total;
                        ExponentVector::new(s2.clone(), e).unwrap()
                    })
                    .collect()
            })
    })
}

fn lstar_params() -> impl Strategy<Value = IdealParameters> {
    (prop::collection::vec(1usize..=2, 1..=3), 1u32..=3, 0u32..=8)
        .prop_filter_map("invalid parameters", |(b, s, t)| {
            IdealParameters::from_blocks(&b, t, s).ok()
        })
}

fn naive_sortable(gens: &[ExponentVector]) -> bool {
    let set: BTreeSet<&ExponentVector> = gens.iter().collect();
    gens.iter().all(|u| {
        gens.iter().all(|v| {
            let p = sort_pair(u, v).unwrap();
            set.contains(&p.first) && set.contains(&p.second)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimalize_is_idempotent_and_order_free((s, gens, _) in ideal_with_points()) {
        let i = MonomialIdeal::minimalize(s.clone(), gens.clone()).unwrap();
        let again = MonomialIdeal::minimalize(s.clone(), i.gens().to_vec()).unwrap();
        prop_assert_eq!(&i, &again);
        let mut reversed = gens.clone();
        reversed.reverse();
        prop_assert_eq!(&i, &MonomialIdeal::minimalize(s, reversed).unwrap());
        // minimal generators are pairwise incomparable
        for a in i.gens() {
            for b in i.gens() {
                prop_assert!(a == b || !a.divides(b).unwrap());
            }
        }
    }

    #[test]
    fn membership_matches_divisibility((s, gens, points) in ideal_with_points()) {
        let i = MonomialIdeal::minimalize(s, gens.clone()).unwrap();
        for f in &points {
            let brute = gens.iter().any(|g| g.divides(f).unwrap());
            prop_assert_eq!(i.contains(f).unwrap(), brute);
        }
    }

    #[test]
    fn colon_composes((s, gens, points) in ideal_with_points()) {
        let i = MonomialIdeal::minimalize(s, gens).unwrap();
        let f = &points[0];
        let g = points.last().unwrap();
        let lhs = i.colon(f).unwrap().colon(g).unwrap();
        prop_assert_eq!(lhs, i.colon(&f.mul(g).unwrap()).unwrap());
        // h is in I : f exactly when f h is in I
        for h in &points {
            prop_assert_eq!(i.colon(f).unwrap().contains(h).unwrap(), i.contains(&f.mul(h).unwrap()).unwrap());
        }
    }

    #[test]
    fn product_distributes_over_sum((s, a, b) in ideal_with_points(), extra in 0usize..3) {
        let i = MonomialIdeal::minimalize(s.clone(), a).unwrap();
        let j = MonomialIdeal::minimalize(s.clone(), b.clone()).unwrap();
        let k = MonomialIdeal::minimalize(s, b.into_iter().skip(extra)).unwrap();
        let lhs = i.sum(&j).unwrap().product(&k).unwrap();
        let rhs = i.product(&k).unwrap().sum(&j.product(&k).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sort_conserves_and_is_idempotent(set in equal_degree_set()) {
        let u = &set[0];
        let v = set.last().unwrap();
        let p = sort_pair(u, v).unwrap();
        prop_assert_eq!(p.first.mul(&p.second).unwrap(), u.mul(v).unwrap());
        prop_assert_eq!(p.first.total_degree(), u.total_degree());
        prop_assert_eq!(p.second.total_degree(), u.total_degree());
        let q = sort_pair(&p.first, &p.second).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(sort_pair(v, u).unwrap(), p.clone());
        // the occurrences of u' and v' interleave: u'_1 <= v'_1 <= u'_2 <= ...
        let occurrences = |m: &ExponentVector| -> Vec<usize> {
            m.exps().iter().enumerate().flat_map(|(k, &e)| std::iter::repeat_n(k, e as usize)).collect()
        };
        let (a, b) = (occurrences(&p.first), occurrences(&p.second));
        for idx in 0..a.len() {
            prop_assert!(a[idx] <= b[idx]);
            if idx + 1 < a.len() {
                prop_assert!(b[idx] <= a[idx + 1]);
            }
        }
    }

    #[test]
    fn fast_sortability_matches_pairwise_check(set in equal_degree_set()) {
        prop_assert_eq!(is_sortable(&set).unwrap(), naive_sortable(&set));
    }

    #[test]
    fn lstar_is_sortable_and_both_builders_agree(p in lstar_params()) {
        let i = build_generalized(&p);
        prop_assert_eq!(&i, &build_generalized_by_compositions(&p).unwrap());
        prop_assert!(naive_sortable(i.gens()));
    }

    #[test]
    fn bareiss_rank_matches_field_rank(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 0..=5), 1..=5)) {
        let width = rows.iter().map(Vec::len).max().unwrap_or(0);
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|mut r| { r.resize(width, 0); r }).collect();
        let m = Matrix::from_rows(rows).unwrap();
        let r = rank_fraction_free(&m).unwrap();
        prop_assert_eq!(r, rank_fraction_free(&m.map(|&x| BigInt::from(x))).unwrap());
        prop_assert_eq!(r, rank_over_field(&m.map(|&x| Ratio::from_integer(x))));
        prop_assert_eq!(r, rank_over_field(&m.map(|&x| Ratio::from_integer(BigInt::from(x)))));
    }

    #[test]
    fn homology_ranks_respect_euler_characteristic(facets in prop::collection::vec(1u64..64, 0..=5)) {
        let k = SimplicialComplexView::from_facets((0..6).collect(), &facets).unwrap();
        let ranks = reduced_homology_ranks(&k).unwrap();
        let chi: i64 = ranks.iter().enumerate().map(|(i, &r)| if i % 2 == 0 { -(r as i64) } else { r as i64 }).sum();
        prop_assert_eq!(chi, k.reduced_euler_characteristic());
        prop_assert_eq!(&ranks, &reduced_homology_ranks_with::<BigInteger>(&k).unwrap());
        prop_assert_eq!(&ranks, &reduced_homology_ranks_with::<Rational>(&k).unwrap());
        prop_assert_eq!(&ranks, &reduced_homology_ranks_with::<BigRational>(&k).unwrap());
    }

    #[test]
    fn minimal_primes_are_minimal_covers((s, gens, _) in ideal_with_points()) {
        let i = MonomialIdeal::minimalize(s, gens).unwrap();
        prop_assume!(!i.is_unit());
        let limits = Limits::default();
        let ass: Vec<_> = ass_oracle(&i, &limits).unwrap().into_iter().map(|w| w.support).collect();
        let from_ass: BTreeSet<Vec<usize>> = minimal_primes(&ass).iter().map(|p| p.indices().iter().copied().collect()).collect();
        let covers: BTreeSet<Vec<usize>> =
            minimal_vertex_covers(&i, &limits).unwrap().iter().map(|c| c.indices().iter().copied().collect()).collect();
        prop_assert_eq!(from_ass, covers);
    }

    #[test]
    fn invariants_ignore_block_order(p in lstar_params(), rot in 0usize..3) {
        let mut blocks = p.structure.sizes().to_vec();
        let len = blocks.len();
        blocks.rotate_left(rot % len);
        let q = IdealParameters::from_blocks(&blocks, p.t, p.s).unwrap();
        let (i, j) = (build_generalized(&p), build_generalized(&q));
        prop_assert_eq!(i.len(), j.len());
        let limits = Limits::default();
        prop_assert_eq!(dim_oracle(&i, &limits).unwrap(), dim_oracle(&j, &limits).unwrap());
        prop_assert_eq!(is_unmixed(&i, &limits).unwrap(), is_unmixed(&j, &limits).unwrap());
        let small = Limits { max_betti_box: 1024, ..limits };
        if let (Ok(a), Ok(b)) = (betti::betti_numbers(&i, &small), betti::betti_numbers(&j, &small)) {
            prop_assert_eq!(a.totals(), b.totals());
        }
    }
}
