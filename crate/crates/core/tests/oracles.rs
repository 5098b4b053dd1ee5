//! Brute-force oracles for enumeration and the morphism search.

use std::collections::BTreeSet;

use paq_core::enumerate::enumerate_posets;
use paq_core::morphism::{
    covered_points, enumerate_pp_morphisms, exists_surjection_from_copies, exists_surjective_pp, is_pp_morphism,
};
use paq_core::{ElemSet, Poset, Relation};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Minimum adjacency bit string over all relabellings.
fn brute_canonical(rel: &[bool], n: usize, perms: &[Vec<usize>]) -> Vec<bool> {
    perms
        .iter()
        .map(|p| {
            let mut bits = vec![false; n * n];
            for x in 0..n {
                for y in 0..n {
                    bits[p[x] * n + p[y]] = rel[x * n + y];
                }
            }
            bits
        })
        .min()
        .unwrap()
}

#[test]
fn poset_counts_match_brute_force_up_to_five() {
    let found = enumerate_posets(5).unwrap();
    for n in 0..=5usize {
        let perms = permutations(n);
        let off: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|(x, y)| x != y).collect();
        let mut classes = BTreeSet::new();
        for mask in 0u64..1 << off.len() {
            let mut rel = Relation::new(n);
            for x in 0..n {
                rel.set(x, x, true);
            }
            for (i, &(x, y)) in off.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    rel.set(x, y, true);
                }
            }
            if rel.validate().is_ok() {
                let flat: Vec<bool> = (0..n * n).map(|k| rel.get(k / n, k % n)).collect();
                classes.insert(brute_canonical(&flat, n, &perms));
            }
        }
        let ours = found.iter().filter(|p| p.len() == n).count();
        assert_eq!(ours, classes.len(), "posets of size {n}");
    }
}

#[test]
fn six_element_count() {
    // 318 unlabelled posets on six points (a standard value, beyond the reach
    // of the brute-force oracle above).
    let six = enumerate_posets(6).unwrap().iter().filter(|p| p.len() == 6).count();
    assert_eq!(six, 318);
}

/// All maps `p -> q` satisfying the definition, straight from it.
fn brute_pp(p: &Poset, q: &Poset) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = p.len();
    let total = (q.len() as u64).pow(n as u32);
    for code in 0..total {
        let mut map = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            map.push((c % q.len() as u64) as usize);
            c /= q.len() as u64;
        }
        map.reverse();
        let monotone = p.elements().all(|x| p.elements().all(|y| !p.leq(x, y) || q.leq(map[x], map[y])));
        let keeps_maxima = p.elements().all(|x| {
            let image: ElemSet = p.elements().filter(|&m| p.is_maximal(m) && p.leq(x, m)).map(|m| map[m]).collect();
            let above: ElemSet = q.elements().filter(|&m| q.is_maximal(m) && q.leq(map[x], m)).collect();
            image == above
        });
        if monotone && keeps_maxima {
            out.push(map);
        }
    }
    if n == 0 {
        out = vec![vec![]];
    }
    out
}

#[test]
fn search_matches_definition_on_small_posets() {
    let posets: Vec<Poset> = enumerate_posets(4).unwrap().into_iter().filter(|p| !p.is_empty()).collect();
    for p in &posets {
        for q in &posets {
            let oracle = brute_pp(p, q);
            let ours: Vec<Vec<usize>> = enumerate_pp_morphisms(p, q, None).into_iter().map(|h| h.map).collect();
            assert_eq!(ours, oracle);
            for h in &ours {
                assert_eq!(is_pp_morphism(h, p, q), Ok(()));
            }

            let surjective = oracle.iter().any(|h| h.iter().copied().collect::<ElemSet>() == q.all());
            assert_eq!(exists_surjective_pp(p, q).is_some(), surjective);

            let union: ElemSet = oracle.iter().flatten().copied().collect();
            assert_eq!(covered_points(p, q).covered, union);
            let copies = exists_surjection_from_copies(p, q);
            assert_eq!(copies.is_some(), union == q.all());
            if let Some(copies) = copies {
                let image = copies.iter().fold(ElemSet::EMPTY, |acc, h| acc.union(h.image()));
                assert_eq!(image, q.all());
                // minimal: no smaller set of images from the oracle covers q
                let images: Vec<ElemSet> = oracle.iter().map(|h| h.iter().copied().collect()).collect();
                let k = copies.len();
                if k > 1 {
                    assert!(!covers_with(&images, q.all(), k - 1, ElemSet::EMPTY, 0));
                }
            }
        }
    }
}

fn covers_with(images: &[ElemSet], target: ElemSet, k: usize, acc: ElemSet, from: usize) -> bool {
    if acc == target {
        return true;
    }
    if k == 0 {
        return false;
    }
    (from..images.len()).any(|i| covers_with(images, target, k - 1, acc.union(images[i]), i + 1))
}
