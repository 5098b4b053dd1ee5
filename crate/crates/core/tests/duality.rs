use paq_core::duality::{
    algebras_isomorphic, delta, epsilon, evaluate_ibm, is_p_algebra, product, PAlgebra, DEFAULT_IB_BUDGET,
};
use paq_core::enumerate::enumerate_posets;
use paq_core::iso::is_isomorphic;
use paq_core::poset::disjoint_union;
use paq_core::quasivar::in_pa_m;
use paq_core::{ElemSet, Poset};
use proptest::prelude::*;

/// Random poset: `i <= j` may only hold for `i < j`, closed transitively.
fn arb_poset(max: usize) -> impl Strategy<Value = Poset> {
    (0..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| bits[i * n + j]).collect();
            Poset::from_le_pairs(n, &pairs).unwrap()
        })
    })
}

#[test]
fn epsilon_of_small_shapes() {
    for m in 0..=4 {
        assert_eq!(epsilon(&Poset::bm(m)).unwrap().len(), (1 << m) + 1);
    }
    assert_eq!(epsilon(&Poset::empty()).unwrap().len(), 1);
    let two = epsilon(&Poset::point()).unwrap();
    assert_eq!(two.len(), 2);
    assert_eq!(two.star(two.zero()), two.one());
}

#[test]
fn delta_of_two_element_boolean_algebra_is_a_point() {
    let b = PAlgebra::from_tables(2, vec![0, 0, 0, 1], vec![0, 1, 1, 1], vec![1, 0], 0, 1);
    assert!(is_isomorphic(&delta(&b).unwrap(), &Poset::point()).is_some());
}

#[test]
fn round_trips_up_to_six() {
    for p in enumerate_posets(6).unwrap() {
        let a = epsilon(&p).unwrap();
        assert_eq!(is_p_algebra(&a), Ok(()));
        let back = delta(&a).unwrap();
        assert!(is_isomorphic(&back, &p).is_some());
        if p.len() <= 5 {
            assert!(algebras_isomorphic(&epsilon(&back).unwrap(), &a).is_some());
        }
    }
}

#[test]
fn disjoint_union_is_dual_to_product() {
    let u = disjoint_union(&[Poset::chain(2), Poset::bm(2)]).unwrap();
    let lhs = epsilon(&u.poset).unwrap();
    let rhs = product(&epsilon(&Poset::chain(2)).unwrap(), &epsilon(&Poset::bm(2)).unwrap());
    assert_eq!(lhs.len(), 3 * 5);
    assert!(algebras_isomorphic(&lhs, &rhs).is_some());
    let t = product(&PAlgebra::trivial(), &rhs);
    assert!(algebras_isomorphic(&t, &rhs).is_some());
}

#[test]
fn identity_agrees_with_maxsets_for_m_up_to_three() {
    for p in enumerate_posets(5).unwrap() {
        let a = epsilon(&p).unwrap();
        for m in 1..=3 {
            let holds = evaluate_ibm(&a, m, DEFAULT_IB_BUDGET).unwrap().is_satisfied();
            assert_eq!(holds, in_pa_m(&p, m), "m = {m}");
        }
    }
}

proptest! {
    #[test]
    fn star_is_largest_disjoint_upset(p in arb_poset(7)) {
        let a = epsilon(&p).unwrap();
        let ups = a.upsets().unwrap().to_vec();
        for (i, &u) in ups.iter().enumerate() {
            let s = ups[a.star(i)];
            prop_assert_eq!(s, p.all().difference(p.down_closure(u)));
            for &v in &ups {
                if v.intersection(u).is_empty() {
                    prop_assert!(v.is_subset(s));
                }
            }
        }
        prop_assert_eq!(is_p_algebra(&a), Ok(()));
    }

    #[test]
    fn delta_inverts_epsilon(p in arb_poset(7)) {
        let back = delta(&epsilon(&p).unwrap()).unwrap();
        prop_assert!(is_isomorphic(&back, &p).is_some());
    }

    #[test]
    fn upsets_are_closed(p in arb_poset(6)) {
        for &u in epsilon(&p).unwrap().upsets().unwrap() {
            prop_assert!(p.is_upset(u));
            prop_assert_eq!(p.up_closure(u), u);
        }
        prop_assert!(p.is_upset(ElemSet::EMPTY));
    }
}
