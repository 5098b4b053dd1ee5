use paq_core::catalog::{one_pair, three_pairs, two_pairs};
use paq_core::enumerate::enumerate_posets;
use paq_core::iso::is_isomorphic;
use paq_core::morphism::exists_surjection_from_copies;
use paq_core::quasivar::{
    contains_pa_m, family_admits_pa_m, family_from_code, in_pa_m, is_cover_among_reduced, is_cover_exhaustive,
    make_reduced, member, proper_nonsingleton_subsets, quasivariety_leq, reduction, shrink_to_base,
    slot_families_related, slot_family, the_cover, Verdict,
};
use paq_core::{ElemSet, Poset};
use proptest::prelude::*;

fn s(xs: &[usize]) -> ElemSet {
    xs.iter().copied().collect()
}

#[test]
fn named_reduced_posets() {
    let p = make_reduced(3, &[s(&[0, 1])]).unwrap();
    let r = make_reduced(3, &[s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]).unwrap();
    assert!(is_isomorphic(p.realized(), one_pair().realized()).is_some());
    assert!(is_isomorphic(r.realized(), three_pairs().realized()).is_some());
    assert!(is_isomorphic(r.realized(), the_cover(2).unwrap().realized()).is_some());
    assert!(is_isomorphic(make_reduced(3, &[]).unwrap().realized(), &Poset::bm(3)).is_some());
}

#[test]
fn reduced_posets_are_their_own_reduction() {
    for r in [one_pair(), two_pairs(), three_pairs(), the_cover(3).unwrap()] {
        let red = reduction(r.realized());
        assert!(is_isomorphic(&red.poset, r.realized()).is_some());
    }
}

#[test]
fn reduction_of_b2_with_a_point_below_one_maximum() {
    // bottom 0 under maxima 1 and 2; extra point 3 under 1 only
    let p = Poset::from_le_pairs(4, &[(0, 1), (0, 2), (3, 1)]).unwrap();
    let red = reduction(&p);
    // max-sets: {1,2}, {1}, {2}, and {1} again for the extra point
    assert_eq!(red.poset.len(), 3);
    assert!(is_isomorphic(&red.poset, &Poset::bm(2)).is_some());
    assert_eq!(red.map.apply(3), red.map.apply(1));
    red.map.check(&p, &red.poset).unwrap();
    assert!(red.map.is_surjective_onto(&red.poset));
}

#[test]
fn membership_examples() {
    let (p, q, r) = (one_pair(), two_pairs(), three_pairs());
    let c = member(q.realized(), std::slice::from_ref(p.realized()));
    assert_eq!(c.verdict, Verdict::Member);
    assert_eq!(c.witnesses.len(), 2);
    assert!(c.recheck(q.realized(), std::slice::from_ref(p.realized())));

    let c = member(p.realized(), std::slice::from_ref(q.realized()));
    assert_eq!(c.verdict, Verdict::NonMember);
    assert_eq!(c.blocker, Some(0));
    assert!(c.recheck(p.realized(), std::slice::from_ref(q.realized())));

    assert!(quasivariety_leq(r.realized(), q.realized()));
    assert!(!quasivariety_leq(q.realized(), r.realized()));
    assert!(quasivariety_leq(q.realized(), p.realized()));
    assert!(!quasivariety_leq(p.realized(), q.realized()));
    assert_eq!(member(q.realized(), std::slice::from_ref(r.realized())).blocker, Some(0));
}

#[test]
fn several_generators_cover_jointly() {
    // Over a 4-base the pair family and a co-singleton family generate
    // incomparable quasivarieties, so each generator misses part of the union.
    let gens = [
        make_reduced(4, &slot_family(0b001, 3)).unwrap().into_realized(),
        make_reduced(4, &slot_family(0b010, 3)).unwrap().into_realized(),
    ];
    let target = paq_core::poset::disjoint_union(&gens).unwrap().poset;
    assert!(!quasivariety_leq(&target, &gens[0]));
    assert!(!quasivariety_leq(&target, &gens[1]));
    let c = member(&target, &gens);
    assert!(c.is_member());
    assert!(c.recheck(&target, &gens));
    assert!(c.witnesses.iter().any(|(g, _)| *g == 0) && c.witnesses.iter().any(|(g, _)| *g == 1));
}

#[test]
fn pa_m_examples() {
    let r = three_pairs();
    assert!(in_pa_m(&Poset::bm(2), 2));
    assert!(!in_pa_m(r.realized(), 2));
    assert!(in_pa_m(r.realized(), 3));
    assert!(contains_pa_m(one_pair().realized(), 2).is_some());
    assert_eq!(contains_pa_m(&Poset::bm(2), 2).unwrap().map, vec![0, 1, 2]);
    assert!(contains_pa_m(&Poset::antichain(2), 2).is_none());
    for m in 2..=4 {
        let c = the_cover(m).unwrap();
        assert!(contains_pa_m(c.realized(), m).is_some());
        assert!(!in_pa_m(c.realized(), m));
    }
    assert_eq!(the_cover(3).unwrap().realized().len(), 8);
}

#[test]
fn family_shape_matches_search() {
    for m in 2..=3 {
        let subsets = proper_nonsingleton_subsets(m + 1);
        for code in 0..1u64 << subsets.len() {
            let family = family_from_code(&subsets, code);
            let by_shape = family_admits_pa_m(m + 1, &family, m).unwrap().is_some();
            let reduced = make_reduced(m + 1, &family).unwrap();
            assert_eq!(by_shape, contains_pa_m(reduced.realized(), m).is_some(), "{family:?}");
        }
    }
    assert_eq!(family_admits_pa_m(3, &[s(&[0, 1])], 2).unwrap(), Some((0, 1)));
    assert_eq!(family_admits_pa_m(4, &[s(&[0, 1]), s(&[2, 3])], 3).unwrap(), None);
}

#[test]
fn cover_test_matches_brute_force() {
    for m in 2..=3 {
        let subsets = proper_nonsingleton_subsets(m + 1);
        for code in 0..1u64 << subsets.len() {
            let family = family_from_code(&subsets, code);
            if family_admits_pa_m(m + 1, &family, m).unwrap().is_none() {
                continue;
            }
            let p = make_reduced(m + 1, &family).unwrap();
            assert_eq!(is_cover_among_reduced(&p, m).unwrap(), is_cover_exhaustive(&p, m).unwrap(), "{family:?}");
        }
    }
    assert!(is_cover_among_reduced(&three_pairs(), 2).unwrap());
    assert!(!is_cover_among_reduced(&one_pair(), 2).unwrap());
    assert!(!is_cover_among_reduced(&make_reduced(4, &[]).unwrap(), 3).unwrap());
}

#[test]
fn slot_families_follow_the_exchange_rule() {
    for m in 2..=3 {
        for f in 0..8u8 {
            for g in 0..8u8 {
                let pf = make_reduced(m + 1, &slot_family(f, m)).unwrap();
                let pg = make_reduced(m + 1, &slot_family(g, m)).unwrap();
                let present = exists_surjection_from_copies(pf.realized(), pg.realized()).is_some();
                assert_eq!(present, slot_families_related(f, g, m), "m={m} F={f:03b} G={g:03b}");
            }
        }
    }
}

#[test]
fn shrink_examples() {
    let r = three_pairs();
    let same = shrink_to_base(&r, 2).unwrap();
    assert!(is_isomorphic(same.realized(), r.realized()).is_some());

    let b4 = make_reduced(4, &[]).unwrap();
    let b3 = shrink_to_base(&b4, 2).unwrap();
    assert_eq!(b3.base_size(), 3);
    assert!(b3.family().is_empty());

    let five = make_reduced(5, &[s(&[0, 1]), s(&[0, 1, 2, 3])]).unwrap();
    assert!(contains_pa_m(five.realized(), 2).is_some());
    let small = shrink_to_base(&five, 2).unwrap();
    assert_eq!(small.base_size(), 3);
    assert!(member(small.realized(), std::slice::from_ref(five.realized())).is_member());
    assert!(contains_pa_m(small.realized(), 2).is_some());

    assert!(shrink_to_base(&make_reduced(5, &[]).unwrap(), 5).is_err());
}

#[test]
fn reduction_keeps_the_quasivariety_above_pa_m() {
    for p in enumerate_posets(6).unwrap() {
        for m in 1..=2 {
            if contains_pa_m(&p, m).is_none() || in_pa_m(&p, m) {
                continue;
            }
            let red = reduction(&p);
            assert!(contains_pa_m(&red.poset, m).is_some());
            assert!(!in_pa_m(&red.poset, m));
            assert!(quasivariety_leq(&red.poset, &p));
        }
    }
}

#[test]
fn leq_is_a_preorder_on_small_posets() {
    let posets: Vec<Poset> = enumerate_posets(4).unwrap().into_iter().filter(|p| !p.is_empty()).collect();
    let n = posets.len();
    let leq: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| quasivariety_leq(&posets[i], &posets[j])).collect()).collect();
    for i in 0..n {
        assert!(leq[i][i]);
        for j in 0..n {
            for k in 0..n {
                if leq[i][j] && leq[j][k] {
                    assert!(leq[i][k]);
                }
            }
        }
    }
}

fn arb_family(base: usize) -> impl Strategy<Value = Vec<ElemSet>> {
    proptest::collection::vec(1u64..(1 << base), 0..6).prop_map(|v| v.into_iter().map(ElemSet).collect())
}

proptest! {
    #[test]
    fn reduced_posets_are_reduced(base in 1usize..6, family in arb_family(5)) {
        let family: Vec<ElemSet> = family.into_iter().map(|f| f.intersection(ElemSet::full(base))).filter(|f| !f.is_empty()).collect();
        let p = make_reduced(base, &family).unwrap();
        let x = p.realized();
        prop_assert!(paq_core::morphism::is_reduced(x));
        prop_assert_eq!(x.maxima().len(), base);
        // the base is the unique bottom
        prop_assert_eq!(x.up(0), x.all());
    }

    #[test]
    fn shrinking_keeps_both_inclusions(base in 3usize..6, family in arb_family(5)) {
        let family: Vec<ElemSet> = family.into_iter().map(|f| f.intersection(ElemSet::full(base))).filter(|f| !f.is_empty()).collect();
        let p = make_reduced(base, &family).unwrap();
        prop_assume!(contains_pa_m(p.realized(), 2).is_some());
        let q = shrink_to_base(&p, 2).unwrap();
        prop_assert_eq!(q.base_size(), 3);
        prop_assert!(contains_pa_m(q.realized(), 2).is_some());
        prop_assert!(quasivariety_leq(q.realized(), p.realized()));
    }
}

#[test]
fn reduction_can_shrink_the_quasivariety() {
    // The 2-chain reduces to a point, whose up-sets form a Boolean algebra.
    let chain = Poset::chain(2);
    let red = reduction(&chain);
    assert!(is_isomorphic(&red.poset, &Poset::point()).is_some());
    assert!(quasivariety_leq(&red.poset, &chain));
    assert!(!quasivariety_leq(&chain, &red.poset));
}
