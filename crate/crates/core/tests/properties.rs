use std::collections::BTreeSet;

use kidem::digraph::{ComponentKind, Digraph};
use kidem::extremal::{construct_extremal, extremal_families, gamma};
use kidem::oracle::{enumerate_k_idempotent, random_decomposition, ScanLimits};
use kidem::{
    compose, decompose, idempotency_index, idempotent_decompose, is_k_idempotent, Matrix01,
    Permutation,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_matrix(max_n: usize) -> impl Strategy<Value = Matrix01> {
    (0..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n)
            .prop_map(move |bits| Matrix01::from_fn(n, |i, j| bits[i * n + j]))
    })
}

fn arb_matrix_and_perms(
    max_n: usize,
) -> impl Strategy<Value = (Matrix01, Permutation, Permutation)> {
    arb_matrix(max_n).prop_flat_map(|a| {
        let n = a.n();
        let perm = || {
            Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::new(v).unwrap())
        };
        (Just(a), perm(), perm())
    })
}

proptest! {
    #[test]
    fn sat_power_matches_exact_power(a in arb_matrix(5), m in 1u64..=6) {
        let exact = a.to_exact().checked_pow(m).unwrap();
        prop_assert_eq!(exact.saturate(), a.sat_power(m));
    }

    #[test]
    fn first_power_is_the_matrix(a in arb_matrix(7)) {
        prop_assert!(a.sat_power(1).equals_matrix(&a));
    }

    #[test]
    fn permutation_action((a, s, t) in arb_matrix_and_perms(6)) {
        let twice = a.permute(&s).unwrap().permute(&t).unwrap();
        prop_assert_eq!(&twice, &a.permute(&s.compose(&t)).unwrap());
        let b = a.permute(&s).unwrap();
        prop_assert_eq!(b.nnz(), a.nnz());
        let mut rs_a = a.row_sums();
        let mut rs_b = b.row_sums();
        rs_a.sort();
        rs_b.sort();
        prop_assert_eq!(rs_a, rs_b);
        prop_assert_eq!(b.permute(&s.inverse()).unwrap(), a);
    }

    #[test]
    fn strictly_upper_triangular_is_nilpotent(a in arb_matrix(7)) {
        let n = a.n();
        let upper = Matrix01::from_fn(n, |i, j| j > i && a.get(i, j));
        prop_assert!(upper.sat_power(n as u64).equals_matrix(&Matrix01::zeros(n)));
    }

    #[test]
    fn walk_counts_compose(a in arb_matrix(6), x in 1u64..=4, y in 1u64..=4) {
        let g = Digraph::from_matrix(&a);
        let sum = g.count_walks(x + y).unwrap();
        let product = g.count_walks(x).unwrap().checked_mul(&g.count_walks(y).unwrap()).unwrap();
        prop_assert_eq!(sum, product);
    }

    #[test]
    fn walk_counts_saturate_to_sat_power(a in arb_matrix(6), len in 1u64..=6) {
        let g = Digraph::from_matrix(&a);
        prop_assert_eq!(g.count_walks(len).unwrap().saturate(), a.sat_power(len));
    }

    #[test]
    fn scc_report_invariants(a in arb_matrix(7)) {
        let g = Digraph::from_matrix(&a);
        let rep = g.sccs();
        let mut all: Vec<usize> = rep.components.iter().flat_map(|c| c.vertices.clone()).collect();
        all.sort();
        prop_assert_eq!(all, (0..a.n()).collect::<Vec<_>>());
        // arcs never point to a later component
        for u in 0..a.n() {
            for v in a.row_ones(u) {
                prop_assert!(rep.component_of[v] <= rep.component_of[u]);
            }
        }
        for c in &rep.components {
            if let ComponentKind::Cycle(len) = c.kind {
                prop_assert_eq!(len, c.vertices.len());
                let sub = a.block(&c.vertices, &c.vertices);
                prop_assert!((0..len).all(|i| sub.row_count(i) == 1 && sub.col_count(i) == 1));
                // a single orbit: walking len steps from the first vertex visits all
                let mut seen = BTreeSet::new();
                let mut v = 0;
                for _ in 0..len {
                    seen.insert(v);
                    v = (0..len).find(|&w| sub.get(v, w)).unwrap();
                }
                prop_assert_eq!(seen.len(), len);
            }
        }
    }

    #[test]
    fn decompose_agrees_with_power_route(a in arb_matrix(5), k in 2u64..=7) {
        let member = is_k_idempotent(&a, k).unwrap();
        match decompose(&a, k) {
            Ok(d) => {
                prop_assert!(member);
                prop_assert!(d.cycle_lengths.iter().all(|&len| (k - 1).is_multiple_of(len as u64)));
                prop_assert_eq!(d.realize(k).unwrap(), a);
            }
            Err(_) => prop_assert!(!member),
        }
    }

    #[test]
    fn index_is_minimal(a in arb_matrix(4)) {
        let direct = (2..=13u64).find(|&k| is_k_idempotent(&a, k).unwrap());
        prop_assert_eq!(idempotency_index(&a), direct);
    }

    #[test]
    fn idempotent_decompositions_have_unit_cycles(a in arb_matrix(5)) {
        if let Ok(d) = idempotent_decompose(&a) {
            prop_assert!(d.cycle_lengths.iter().all(|&len| len == 1));
        }
    }

    #[test]
    fn round_trip_through_compose(seed in any::<u64>(), n in 0usize..=9, k in 2u64..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_decomposition(&mut rng, n, k);
        let a = d.realize(k).unwrap();
        prop_assert_eq!(a.permute(&d.sigma).unwrap(), compose(&d, k).unwrap());
        let back = decompose(&a, k).unwrap();
        prop_assert_eq!(&back, &d.normalized());
        // decompose(compose(d)) keeps the shape
        let again = decompose(&compose(&back, k).unwrap(), k).unwrap();
        prop_assert_eq!((again.r, again.s), (back.r, back.s));
        let mut c1 = again.cycle_lengths.clone();
        let mut c2 = back.cycle_lengths.clone();
        c1.sort();
        c2.sort();
        prop_assert_eq!(c1, c2);
        prop_assert_eq!(again.z().unwrap().nnz(), back.z().unwrap().nnz());
    }

    #[test]
    fn text_format_round_trip(a in arb_matrix(9)) {
        prop_assert_eq!(Matrix01::parse_text(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn decomposition_serialization_round_trip(seed in any::<u64>(), n in 0usize..=10, k in 2u64..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_decomposition(&mut rng, n, k);
        prop_assert_eq!(kidem::CanonicalDecomposition::parse(&d.to_text(k)).unwrap(), (k, d.clone()));
        prop_assert_eq!(kidem::CanonicalDecomposition::parse(&d.to_line(k)).unwrap(), (k, d));
    }

    #[test]
    fn sampled_structures_respect_the_bound(seed in any::<u64>(), n in 1usize..=8, k in 2u64..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_decomposition(&mut rng, n, k).realize(k).unwrap();
        prop_assert!(a.nnz() as u64 <= gamma(n).unwrap());
    }
}

#[test]
fn strictly_upper_triangular_lemma_exhaustive() {
    for n in 0..=4 {
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        for t in 0u32..1 << slots.len() {
            let a = Matrix01::from_fn(n, |i, j| {
                slots
                    .iter()
                    .position(|&p| p == (i, j))
                    .is_some_and(|b| t >> b & 1 == 1)
            });
            for k in 2..=7 {
                if is_k_idempotent(&a, k).unwrap() {
                    assert!(a.is_zero(), "{a:?} k={k}");
                }
            }
        }
    }
}

#[test]
fn gamma_parity_identity() {
    for n in 1..=10_000usize {
        let four = 4 * gamma(n).unwrap();
        let n = n as u64;
        let want = if n % 2 == 1 {
            (n + 1) * (n + 1)
        } else {
            n * n + 2 * n
        };
        assert_eq!(four, want, "n={n}");
    }
}

#[test]
fn bound_holds_exhaustively() {
    for n in 1..=4 {
        for k in 2..=7 {
            for a in enumerate_k_idempotent(n, k, ScanLimits::default()).unwrap() {
                assert!(a.nnz() as u64 <= gamma(n).unwrap());
            }
        }
    }
}

/// The maximizers found by brute force are exactly the relabellings of the
/// composed extremal families.
#[test]
fn equality_characterization() {
    for n in 1..=4 {
        let perms = Permutation::all(n);
        for k in 2..=5 {
            let g = gamma(n).unwrap() as usize;
            let found: BTreeSet<Matrix01> = enumerate_k_idempotent(n, k, ScanLimits::default())
                .unwrap()
                .into_iter()
                .filter(|a| a.nnz() == g)
                .collect();
            let built: BTreeSet<Matrix01> = extremal_families(n, k)
                .unwrap()
                .iter()
                .map(|p| construct_extremal(n, k, p).unwrap())
                .flat_map(|h| perms.iter().map(move |s| h.permute(s).unwrap()))
                .collect();
            assert_eq!(found, built, "n={n} k={k}");
        }
    }
}
