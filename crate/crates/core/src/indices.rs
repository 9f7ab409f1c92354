//! Banzhaf and Banzhaf-Owen values.
//!
//! Exact values enumerate coalitions in mask order. When every worth is an
//! integer the marginal contributions are summed exactly in an `i64` and
//! divided once by the (power of two) number of coalitions, so results are
//! reproducible bit for bit. Other games are summed with Neumaier
//! compensation in the same fixed order.

use alloc::vec::Vec;

use crate::coalition::{deposit, Coalition};
use crate::error::{Error, Result};
use crate::games::{Game, DEFAULT_ENUMERATION_BOUND};
use crate::partition::Partition;
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexMethod {
    Banzhaf,
    BanzhafOwen,
    BanzhafOwenMc,
}

impl IndexMethod {
    pub fn name(self) -> &'static str {
        match self {
            IndexMethod::Banzhaf => "banzhaf",
            IndexMethod::BanzhafOwen => "banzhaf-owen",
            IndexMethod::BanzhafOwenMc => "banzhaf-owen-mc",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexVector {
    pub method: IndexMethod,
    pub values: Vec<f64>,
    /// Standard error of each estimate (Monte-Carlo only).
    pub stderr: Option<Vec<f64>>,
    /// Exact sum of marginal contributions per player, for integer-valued
    /// games; `values[l] = swings[l] / terms[l]`.
    pub swings: Option<Vec<i64>>,
    /// Number of coalitions averaged over, per player (exact methods).
    pub terms: Option<Vec<u64>>,
}

const EXACT_LIMIT: f64 = (1u64 << 52) as f64;

fn is_integral(values: &[f64]) -> bool {
    values.iter().all(|&v| v == libm::trunc(v) && v.abs() <= EXACT_LIMIT)
}

enum Sum {
    Exact(i64),
    Compensated { sum: f64, carry: f64 },
}

impl Sum {
    fn new(exact: bool) -> Sum {
        if exact {
            Sum::Exact(0)
        } else {
            Sum::Compensated { sum: 0.0, carry: 0.0 }
        }
    }

    #[inline]
    fn add(&mut self, x: f64) {
        match self {
            Sum::Exact(s) => *s += x as i64,
            Sum::Compensated { sum, carry } => {
                let t = *sum + x;
                if sum.abs() >= x.abs() {
                    *carry += (*sum - t) + x;
                } else {
                    *carry += (x - t) + *sum;
                }
                *sum = t;
            }
        }
    }

    fn finish(self, terms: u64) -> (f64, Option<i64>) {
        match self {
            Sum::Exact(s) => (s as f64 / terms as f64, Some(s)),
            Sum::Compensated { sum, carry } => ((sum + carry) / terms as f64, None),
        }
    }
}

fn assemble(method: IndexMethod, parts: Vec<(f64, Option<i64>)>, terms: Vec<u64>) -> IndexVector {
    let swings = parts.iter().map(|p| p.1).collect::<Option<Vec<i64>>>();
    IndexVector {
        method,
        values: parts.into_iter().map(|p| p.0).collect(),
        stderr: None,
        swings,
        terms: Some(terms),
    }
}

/// `B_l = 2^{-(k-1)} Σ_{R ⊆ K∖{l}} [v(R ∪ {l}) − v(R)]`.
pub fn banzhaf(g: &Game) -> Result<IndexVector> {
    banzhaf_bounded(g, DEFAULT_ENUMERATION_BOUND)
}

pub fn banzhaf_bounded(g: &Game, bound: u32) -> Result<IndexVector> {
    let values = g.values(bound)?;
    let exact = is_integral(&values);
    let k = g.k();
    let full = Coalition::full(k);
    let terms = 1u64 << (k - 1);
    let parts = (0..k)
        .map(|l| {
            let mut sum = Sum::new(exact);
            for r in full.without(l).subsets() {
                sum.add(values[r.with(l).0 as usize] - values[r.0 as usize]);
            }
            sum.finish(terms)
        })
        .collect();
    Ok(assemble(IndexMethod::Banzhaf, parts, alloc::vec![terms; k]))
}

/// Unions of whole blocks `W = ∪_{u ∈ S} P_u` for every `S ⊆ M∖{t}`, in
/// mask order of `S`.
fn outside_unions(p: &Partition, t: usize) -> Vec<Coalition> {
    let others = Coalition::full(p.m()).without(t);
    let block_masks: Vec<Coalition> = (0..p.m()).map(|u| p.block_coalition(u)).collect();
    others
        .subsets()
        .map(|s| s.players().fold(Coalition::EMPTY, |w, u| w.union(block_masks[u])))
        .collect()
}

fn check_partition(g: &Game, p: &Partition) -> Result<()> {
    if p.k() != g.k() {
        return Err(Error::NotAPartition(alloc::format!(
            "partition of {} features for a game of {} players",
            p.k(),
            g.k()
        )));
    }
    Ok(())
}

/// `BO_l = Σ_{S ⊆ M∖{t}} Σ_{R ⊆ P_t∖{l}} 2^{-(m-1)} 2^{-(|P_t|-1)} [v(W ∪ R ∪ {l}) − v(W ∪ R)]`
/// with `W` the union of the blocks in `S` and `t` the block of `l`.
pub fn banzhaf_owen(g: &Game, p: &Partition) -> Result<IndexVector> {
    banzhaf_owen_bounded(g, p, DEFAULT_ENUMERATION_BOUND)
}

pub fn banzhaf_owen_bounded(g: &Game, p: &Partition, bound: u32) -> Result<IndexVector> {
    check_partition(g, p)?;
    let values = g.values(bound)?;
    let exact = is_integral(&values);
    let k = g.k();
    let mut parts = alloc::vec![(0.0, None); k];
    let mut terms = alloc::vec![0u64; k];
    for t in 0..p.m() {
        let unions = outside_unions(p, t);
        let own = p.block_coalition(t);
        for &l in p.block(t) {
            let mates = own.without(l);
            let count = (unions.len() as u64) << mates.len();
            let mut sum = Sum::new(exact);
            for &w in &unions {
                for r in mates.subsets() {
                    let base = w.union(r);
                    sum.add(values[base.with(l).0 as usize] - values[base.0 as usize]);
                }
            }
            parts[l] = sum.finish(count);
            terms[l] = count;
        }
    }
    Ok(assemble(IndexMethod::BanzhafOwen, parts, terms))
}

/// Monte-Carlo Banzhaf-Owen estimate.
///
/// For a player `l` in block `t`, each of the `n_samples` draws includes
/// every other block and every other member of `t` independently with
/// probability 1/2. Player `l` uses the ChaCha8 stream `l` of `seed`, so the
/// result depends only on `(game, partition, n_samples, seed)`. The game is
/// evaluated lazily and is not limited by the enumeration bound.
pub fn banzhaf_owen_mc(g: &Game, p: &Partition, n_samples: u64, seed: u64) -> Result<IndexVector> {
    check_partition(g, p)?;
    if n_samples == 0 {
        return Err(Error::PreconditionUnmet("n_samples must be at least 1".into()));
    }
    let k = g.k();
    let block_masks: Vec<Coalition> = (0..p.m()).map(|u| p.block_coalition(u)).collect();
    let mut values = alloc::vec![0.0; k];
    let mut stderr = alloc::vec![0.0; k];
    for l in 0..k {
        let t = p.block_of(l);
        let others: Vec<Coalition> = (0..p.m()).filter(|&u| u != t).map(|u| block_masks[u]).collect();
        let mates = block_masks[t].without(l);
        let mut rng = rng::generator_on_stream(seed, l as u64);
        // Welford
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for i in 1..=n_samples {
            let pick = rng::fair_bits(&mut rng, others.len() as u32);
            let w = Coalition(pick)
                .players()
                .fold(Coalition::EMPTY, |w, u| w.union(others[u]));
            let r = Coalition(deposit(rng::fair_bits(&mut rng, mates.len() as u32), mates.0));
            let base = w.union(r);
            let x = g.evaluate(base.with(l)) - g.evaluate(base);
            let delta = x - mean;
            mean += delta / i as f64;
            m2 += delta * (x - mean);
        }
        values[l] = mean;
        stderr[l] = if n_samples > 1 {
            libm::sqrt(m2 / (n_samples - 1) as f64) / libm::sqrt(n_samples as f64)
        } else {
            0.0
        };
    }
    Ok(IndexVector {
        method: IndexMethod::BanzhafOwenMc,
        values,
        stderr: Some(stderr),
        swings: None,
        terms: None,
    })
}
