//! Slow reference implementations.
//!
//! Nothing here shares a computational path with the production modules:
//! pair counts are plain double loops over rows, coalitions are enumerated
//! recursively as player lists, restricted spaces are enumerated profile by
//! profile. They exist to cross-check the fast code and are only meant for
//! small inputs.

use alloc::vec::Vec;

use crate::dataset::{Dataset, FeatureSpace, State};
use crate::error::{Error, Result};
use crate::games::Game;
use crate::indices::{IndexMethod, IndexVector};
use crate::influence::{InfluenceReport, Measure};
use crate::partition::{DependencyModel, Partition, Sign};

pub const ORACLE_BOUND: u32 = 16;

fn differs_only_at(a: &[State], b: &[State], l: usize) -> bool {
    let mut diff = 0;
    for q in 0..a.len() {
        if a[q] != b[q] {
            if q != l {
                return false;
            }
            diff += 1;
        }
    }
    diff <= 1
}

/// Σ_i Σ_j weight(i) |Y^i − Y^j| over the given rows, for partners equal to
/// row `i` off coordinate `l`.
fn pair_loop(d: &Dataset, rows: &[usize], l: usize, weighted: bool) -> u64 {
    let mut total = 0;
    for &i in rows {
        for &j in rows {
            if differs_only_at(d.profile(i), d.profile(j), l) && d.response(i) != d.response(j) {
                total += if weighted { d.freq(i) } else { 1 };
            }
        }
    }
    total
}

fn require_binary_response(d: &Dataset) -> Result<()> {
    if d.space().response_states() != 2 {
        return Err(Error::NonBinaryResponse {
            states: d.space().response_states(),
        });
    }
    Ok(())
}

/// Pair counts by a double loop over the rows adhering to each block.
pub fn chi_naive(d: &Dataset) -> Result<InfluenceReport> {
    require_binary_response(d)?;
    let rows: Vec<usize> = (0..d.n()).collect();
    let raw = (0..d.k()).map(|l| pair_loop(d, &rows, l, false)).collect();
    Ok(InfluenceReport::from_raw(
        Measure::Chi,
        raw,
        Partition::singletons(d.k()),
        DependencyModel::all_positive(d.k()),
    ))
}

/// Whether features `q` and `v` must agree, read straight off the signs.
fn must_agree(dep: &DependencyModel, q: usize, v: usize) -> bool {
    matches!(
        (dep.sign(q), dep.sign(v)),
        (Sign::Positive, Sign::Positive) | (Sign::Negative, Sign::Negative)
    )
}

/// Every pair of features in every block other than `t` is related as the
/// dependency model says.
fn adheres_naive(x: &[State], p: &Partition, dep: &DependencyModel, t: usize) -> bool {
    for (u, block) in p.blocks().iter().enumerate() {
        if u == t {
            continue;
        }
        for &q in block.iter() {
            for &v in block.iter() {
                let ok = if must_agree(dep, q, v) {
                    x[q] == x[v]
                } else {
                    x[q] + x[v] == 1
                };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

fn psi_loop(d: &Dataset, p: &Partition, dep: &DependencyModel, weighted: bool) -> Result<Vec<u64>> {
    require_binary_response(d)?;
    let mut raw = Vec::with_capacity(d.k());
    for l in 0..d.k() {
        let t = p.block_of(l);
        let rows: Vec<usize> = (0..d.n()).filter(|&i| adheres_naive(d.profile(i), p, dep, t)).collect();
        raw.push(pair_loop(d, &rows, l, weighted));
    }
    Ok(raw)
}

/// Ψ by filtering rows pairwise inside each block and double looping.
pub fn psi_naive(d: &Dataset, p: &Partition, dep: &DependencyModel) -> Result<Vec<u64>> {
    psi_loop(d, p, dep, false)
}

pub fn weighted_psi_naive(d: &Dataset, p: &Partition, dep: &DependencyModel) -> Result<Vec<u64>> {
    psi_loop(d, p, dep, true)
}

/// `|A^t|` by enumerating every profile of the space.
pub fn restricted_space_count_naive(space: &FeatureSpace, p: &Partition, dep: &DependencyModel, t: usize) -> u64 {
    let counts = space.state_counts();
    let mut x = alloc::vec![0 as State; space.k()];
    let mut total = 0;
    loop {
        if adheres_naive(&x, p, dep, t) {
            total += 1;
        }
        // odometer
        let mut l = 0;
        loop {
            if l == x.len() {
                return total;
            }
            x[l] += 1;
            if x[l] < counts[l] {
                break;
            }
            x[l] = 0;
            l += 1;
        }
    }
}

fn for_each_subset<F: FnMut(&[usize])>(items: &[usize], current: &mut Vec<usize>, f: &mut F) {
    match items.split_first() {
        None => f(current),
        Some((&first, rest)) => {
            for_each_subset(rest, current, f);
            current.push(first);
            for_each_subset(rest, current, f);
            current.pop();
        }
    }
}

struct Marginals {
    real: f64,
    integer: i64,
    integral: bool,
}

impl Marginals {
    fn new() -> Self {
        Marginals {
            real: 0.0,
            integer: 0,
            integral: true,
        }
    }

    fn add(&mut self, g: &Game, without: &[usize], l: usize) {
        let mut with: Vec<usize> = without.to_vec();
        with.push(l);
        let diff = g.evaluate_players(&with) - g.evaluate_players(without);
        self.real += diff;
        if diff == (diff as i64) as f64 {
            self.integer += diff as i64;
        } else {
            self.integral = false;
        }
    }

    fn value(&self, terms: u64) -> (f64, Option<i64>) {
        if self.integral {
            (self.integer as f64 / terms as f64, Some(self.integer))
        } else {
            (self.real / terms as f64, None)
        }
    }
}

fn check_bound(g: &Game) -> Result<()> {
    if g.k() > ORACLE_BOUND as usize {
        return Err(Error::EnumerationBoundExceeded {
            players: g.k(),
            bound: ORACLE_BOUND,
        });
    }
    Ok(())
}

fn pack(method: IndexMethod, parts: Vec<(f64, Option<i64>)>, terms: Vec<u64>) -> IndexVector {
    IndexVector {
        method,
        values: parts.iter().map(|p| p.0).collect(),
        stderr: None,
        swings: parts.iter().map(|p| p.1).collect(),
        terms: Some(terms),
    }
}

/// Banzhaf value from the textbook double loop.
pub fn banzhaf_naive(g: &Game) -> Result<IndexVector> {
    check_bound(g)?;
    let k = g.k();
    let mut parts = Vec::new();
    let mut terms = Vec::new();
    for l in 0..k {
        let others: Vec<usize> = (0..k).filter(|&q| q != l).collect();
        let mut acc = Marginals::new();
        let mut count = 0u64;
        for_each_subset(&others, &mut Vec::new(), &mut |r| {
            acc.add(g, r, l);
            count += 1;
        });
        parts.push(acc.value(count));
        terms.push(count);
    }
    Ok(pack(IndexMethod::Banzhaf, parts, terms))
}

/// Banzhaf-Owen value from the textbook triple loop.
pub fn bo_naive(g: &Game, p: &Partition) -> Result<IndexVector> {
    check_bound(g)?;
    if p.k() != g.k() {
        return Err(Error::NotAPartition("size mismatch".into()));
    }
    let k = g.k();
    let mut parts = Vec::new();
    let mut terms = Vec::new();
    for l in 0..k {
        let t = p.block_of(l);
        let other_blocks: Vec<usize> = (0..p.m()).filter(|&u| u != t).collect();
        let mates: Vec<usize> = p.block(t).iter().copied().filter(|&q| q != l).collect();
        let mut acc = Marginals::new();
        let mut count = 0u64;
        for_each_subset(&other_blocks, &mut Vec::new(), &mut |s| {
            let w: Vec<usize> = s.iter().flat_map(|&u| p.block(u).iter().copied()).collect();
            for_each_subset(&mates, &mut Vec::new(), &mut |r| {
                let mut coalition = w.clone();
                coalition.extend_from_slice(r);
                acc.add(g, &coalition, l);
                count += 1;
            });
        });
        parts.push(acc.value(count));
        terms.push(count);
    }
    Ok(pack(IndexMethod::BanzhafOwen, parts, terms))
}
