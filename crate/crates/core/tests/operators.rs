use std::sync::Arc;

use proptest::prelude::*;

use exit_path::gallery;
use exit_path::simplicial::{compose_operators, standard_simplex, Operator, Poset, nerve_of_poset};
use exit_path::verify::Budget;

fn monotone(src: usize, dst: usize) -> impl Strategy<Value = Operator> {
    proptest::collection::vec(0..=dst, src + 1).prop_map(move |mut v| {
        v.sort_unstable();
        Operator::new(dst, v).unwrap()
    })
}

/// Every monotone map `[m] → [n]` for small `m`, `n`.
fn all_monotone(m: usize, n: usize) -> Vec<Operator> {
    fn extend(prefix: &mut Vec<usize>, len: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let lo = prefix.last().copied().unwrap_or(0);
        for v in lo..=n {
            prefix.push(v);
            extend(prefix, len, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), m + 1, n, &mut out);
    out.into_iter().map(|v| Operator::new(n, v).unwrap()).collect()
}

#[test]
fn epi_mono_factorisation_round_trips() {
    for m in 0..=7 {
        for n in 0..=7 {
            for op in all_monotone(m, n) {
                let (epi, mono) = op.epi_mono_factor();
                assert!(mono.is_injective());
                assert!(epi.as_operator().is_surjective());
                assert_eq!(compose_operators(&mono, epi.as_operator()).unwrap(), op);
            }
        }
    }
}

proptest! {
    #[test]
    fn act_is_functorial(
        (a, beta, alpha) in (0usize..4).prop_flat_map(|a| (0usize..4).prop_flat_map(move |b| {
            (Just(a), monotone(b, a), (0usize..5).prop_flat_map(move |c| monotone(c, b)))
        })),
        seed in any::<usize>(),
    ) {
        let x = standard_simplex(3);
        let simplices = x.simplices_at(a);
        let s = &simplices[seed % simplices.len()];
        let once = x.act(s, &compose_operators(&beta, &alpha).unwrap()).unwrap();
        let twice = x.act(&x.act(s, &beta).unwrap(), &alpha).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn nerve_act_matches_precomposition(alpha in (0usize..4).prop_flat_map(|b| monotone(b, 3))) {
        let poset = Poset::chain(["a", "b", "c", "d"]);
        let nerve = nerve_of_poset("n", &poset);
        let top = nerve.simplices_at(3).into_iter().find(|s| !s.is_degenerate()).unwrap();
        let image = nerve.act(&top, &alpha).unwrap();
        let labels = nerve.vertex_labels(&image).unwrap();
        let expected: Vec<&str> = alpha.values().iter().map(|&v| poset.label(v)).collect();
        prop_assert_eq!(labels, expected);
    }
}

#[test]
fn gallery_maps_commute_with_operators() {
    for e in gallery::gallery() {
        let span = gallery::load(e.as_ref(), 5, Budget::default()).unwrap();
        for f in [span.pi(), span.iota()] {
            let x = f.domain();
            let y = f.codomain();
            for k in 0..=5 {
                for s in x.simplices_at(k) {
                    for m in 0..=k.min(3) {
                        for alpha in all_monotone(m, k) {
                            let left = f.apply_map(&x.act(&s, &alpha).unwrap()).unwrap();
                            let right = y.act(&f.apply_map(&s).unwrap(), &alpha).unwrap();
                            assert_eq!(left, right, "{} at {}", f.name(), x.describe(&s));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn standard_simplex_counts_are_binomial() {
    let x = Arc::new(standard_simplex(2));
    // Monotone maps [k] → [2].
    let counts: Vec<usize> = (0..=5).map(|k| x.count_at(k)).collect();
    assert_eq!(counts, [3, 6, 10, 15, 21, 28]);
}
