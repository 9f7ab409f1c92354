#![allow(dead_code)]

use apriori_influence_core::{Dataset, DependencyModel, FeatureSpace, Game, Partition, Sign};
use proptest::prelude::*;
use std::collections::BTreeSet;

/// Blocks from a label per feature, ordered by first appearance.
pub fn partition_from_labels(labels: &[usize]) -> Partition {
    let mut order: Vec<usize> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (l, &lab) in labels.iter().enumerate() {
        match order.iter().position(|&o| o == lab) {
            Some(t) => blocks[t].push(l),
            None => {
                order.push(lab);
                blocks.push(vec![l]);
            }
        }
    }
    Partition::new(labels.len(), blocks).unwrap()
}

pub fn arb_partition(k: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..k, k).prop_map(|labels| partition_from_labels(&labels))
}

/// Upward closure of a few random non-empty generators: monotone, 0/1,
/// `v(∅) = 0`.
pub fn monotone_table(k: usize, generators: &[u64]) -> Vec<f64> {
    (0..1u64 << k)
        .map(|m| generators.iter().any(|&g| g != 0 && m & g == g) as u8 as f64)
        .collect()
}

pub fn arb_monotone_game(k: usize) -> impl Strategy<Value = Game> {
    prop::collection::vec(1..(1u64 << k), 1..5).prop_map(move |gens| Game::table(monotone_table(k, &gens)).unwrap())
}

/// Integer-valued table game, not necessarily monotone.
pub fn arb_integer_game(k: usize) -> impl Strategy<Value = Game> {
    prop::collection::vec(-3i32..=3, 1usize << k).prop_map(|mut v| {
        v[0] = 0;
        Game::table(v.into_iter().map(f64::from).collect()).unwrap()
    })
}

/// Random sample over a small mixed alphabet with distinct profiles and a
/// binary response.
pub fn arb_dataset(max_k: usize, max_n: usize, binary: bool) -> impl Strategy<Value = Dataset> {
    (1..=max_k)
        .prop_flat_map(move |k| {
            let counts = if binary {
                Just(vec![2u32; k]).boxed()
            } else {
                prop::collection::vec(2u32..=3, k).boxed()
            };
            (Just(k), counts)
        })
        .prop_flat_map(move |(k, counts)| {
            let cell = counts.iter().map(|&c| 0..c).collect::<Vec<_>>();
            let row = (cell, 0u32..2);
            (
                Just(k),
                Just(counts),
                prop::collection::vec(row, 1..=max_n),
                any::<bool>(),
                prop::collection::vec(1u64..4, max_n),
            )
        })
        .prop_map(|(k, counts, rows, weighted, freqs)| {
            let mut seen = BTreeSet::new();
            let rows: Vec<(Vec<u32>, u32)> = rows.into_iter().filter(|(x, _)| seen.insert(x.clone())).collect();
            let freq = weighted.then(|| freqs[..rows.len()].to_vec());
            let names = (0..k).map(|l| format!("f{l}")).collect();
            Dataset::new(FeatureSpace::new(names, counts, 2).unwrap(), rows, freq).unwrap()
        })
}

/// A dataset paired with a partition of its features and a dependency model
/// whose negative signs sit only in binary blocks.
pub fn arb_instance(max_k: usize, max_n: usize) -> impl Strategy<Value = (Dataset, Partition, DependencyModel)> {
    arb_dataset(max_k, max_n, false)
        .prop_flat_map(|d| {
            let k = d.k();
            (Just(d), arb_partition(k), prop::collection::vec(any::<bool>(), k))
        })
        .prop_map(|(d, p, negs)| {
            let signs = (0..d.k())
                .map(|l| {
                    let block_binary = p.block(p.block_of(l)).iter().all(|&q| d.space().state_counts()[q] == 2);
                    if negs[l] && block_binary {
                        Sign::Negative
                    } else {
                        Sign::Positive
                    }
                })
                .collect();
            let dep = DependencyModel::new(&p, signs).unwrap();
            (d, p, dep)
        })
}

pub fn arb_permutation(k: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..k).collect::<Vec<_>>()).prop_shuffle()
}
