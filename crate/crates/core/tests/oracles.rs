mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use codegree::search::random::random_corpus;
use codegree::search::{exhaustive_max, hill_climb, threshold_scan, HillConfig, Objective, Winner};
use codegree::{
    co_norm, codegree_table, isomorphic, matching_number, sunflower_count, Count, EdgeSet, Family,
};
use common::{nu, subsets, unpruned_max, Obj};

#[test]
fn pruned_search_matches_unpruned_enumeration() {
    for (n, k, s) in [(4, 2, 1), (5, 2, 1), (5, 2, 2), (5, 3, 1)] {
        for (obj, o) in [
            (Objective::Size, Obj::Size),
            (Objective::CoNorm(3), Obj::Co(3)),
            (Objective::Sunflower(3), Obj::Sunflower(3)),
        ] {
            let fast = exhaustive_max(n, k, s, obj).unwrap();
            let slow = unpruned_max(n, k, s as usize, o);
            assert_eq!(fast.optimum, Count::from(slow.optimum), "({n},{k},{s},{obj})");
            assert_eq!(fast.optimal_families, slow.optimal_families, "({n},{k},{s},{obj})");
            assert_eq!(fast.witnesses.len(), slow.classes.len(), "({n},{k},{s},{obj})");
        }
    }
}

/// Depth-first search over intersecting families only.
fn best_intersecting(n: u32, p: u32) -> u128 {
    let all = subsets(n, 3);
    fn go(all: &[Vec<u32>], i: usize, chosen: &mut Vec<usize>, n: u32, p: u32, best: &mut u128) {
        if i == all.len() {
            let edges: Vec<Vec<u32>> = chosen.iter().map(|&j| all[j].clone()).collect();
            *best = (*best).max(common::evaluate(Obj::Co(p), n, 3, &edges));
            return;
        }
        if chosen.iter().all(|&j| all[j].iter().any(|v| all[i].contains(v))) {
            chosen.push(i);
            go(all, i + 1, chosen, n, p, best);
            chosen.pop();
        }
        go(all, i + 1, chosen, n, p, best);
    }
    let mut best = 0;
    go(&all, 0, &mut Vec::new(), n, p, &mut best);
    best
}

#[test]
fn intersecting_triples_square_norm() {
    for n in [5, 6] {
        let r = exhaustive_max(n, 3, 1, Objective::CoNorm(2)).unwrap();
        assert_eq!(r.optimum, Count::from(best_intersecting(n, 2)), "n={n}");
    }
}

#[test]
fn threshold_size_winners_agree_with_exhaustive() {
    for (k, s, from, to) in [(2, 1, 3, 7), (2, 2, 5, 7), (3, 1, 5, 6)] {
        let scan = threshold_scan(k, s, Objective::Size, from, to).unwrap();
        for row in &scan.rows {
            let r = exhaustive_max(row.n, k, s, Objective::Size).unwrap();
            let best = (&row.value_h).max(&row.value_ak);
            assert_eq!(&r.optimum, best, "k={k} s={s} n={}", row.n);
            if row.winner == Winner::H {
                assert!(row.value_h > row.value_ak);
            }
        }
    }
}

#[test]
fn hill_climb_never_beats_exhaustive() {
    for (n, k, s) in [(6, 2, 1), (6, 2, 2), (6, 3, 1)] {
        for obj in [Objective::Size, Objective::CoNorm(2), Objective::Sunflower(2)] {
            let exact = exhaustive_max(n, k, s, obj).unwrap();
            let hill = hill_climb(n, k, s, obj, HillConfig { seed: 2, restarts: 30, steps: 300, threads: 1 }).unwrap();
            assert!(hill.optimum <= exact.optimum);
        }
    }
}

fn relabel(h: &Family, perm: &[u32]) -> Family {
    let edges = h.iter().map(|e| EdgeSet::from_vertices(e.vertices().map(|v| perm[v as usize - 1])).unwrap());
    Family::new(h.n(), h.k(), edges).unwrap()
}

#[test]
fn isomorphism_invariants_on_random_sample() {
    let corpus = random_corpus(9, 300);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for e in &corpus {
        let h = &e.family;
        let mut perm: Vec<u32> = (1..=h.n()).collect();
        perm.shuffle(&mut rng);
        let g = relabel(h, &perm);
        assert!(isomorphic(h, &g));
        assert!(isomorphic(&g, h));
        assert_eq!(h.len(), g.len());
        for p in 0..=4 {
            assert_eq!(co_norm(h, p).unwrap(), co_norm(&g, p).unwrap());
        }
        for l in 2..=3 {
            assert_eq!(sunflower_count(h, l).unwrap(), sunflower_count(&g, l).unwrap());
        }
        assert_eq!(matching_number(h), matching_number(&g));
    }
    for pair in corpus.windows(2) {
        let (a, b) = (&pair[0].family, &pair[1].family);
        if isomorphic(a, b) {
            assert_eq!(co_norm(a, 2).unwrap(), co_norm(b, 2).unwrap());
            assert_eq!(a.len(), b.len());
        }
    }
}

#[test]
fn matching_number_agrees_with_plain_recursion() {
    for e in random_corpus(5, 400) {
        assert_eq!(matching_number(&e.family), nu(&e.family.to_lists()));
    }
}

fn arbitrary_family() -> impl Strategy<Value = Family> {
    (2u32..=3, 4u32..=9).prop_flat_map(|(k, n)| {
        let all = subsets(n, k);
        let m = all.len();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let lists: Vec<&[u32]> = all.iter().zip(&keep).filter(|(_, &b)| b).map(|(e, _)| e.as_slice()).collect();
            Family::from_lists(n, k, &lists).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn text_round_trip(h in arbitrary_family()) {
        prop_assert_eq!(Family::parse(&h.to_text()).unwrap(), h);
    }

    #[test]
    fn first_norm_counts_edges(h in arbitrary_family()) {
        prop_assert_eq!(co_norm(&h, 1).unwrap(), Count::from(h.k() as usize * h.len()));
        let table = codegree_table(&h).unwrap();
        prop_assert_eq!(table.total(), (h.k() as usize * h.len()) as u64);
    }

    #[test]
    fn square_norm_identity(h in arbitrary_family()) {
        let lhs = co_norm(&h, 2).unwrap();
        let rhs = Count::from(2u32) * sunflower_count(&h, 2).unwrap() + Count::from(h.k() as usize * h.len());
        prop_assert_eq!(lhs, rhs);
    }
}
