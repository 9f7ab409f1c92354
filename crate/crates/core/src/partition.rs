//! A-priori unions over features.
//!
//! A [`Partition`] groups features into disjoint blocks ("unions"). A
//! [`DependencyModel`] says, for every feature, whether it moves with or
//! against the representative (lowest index) of its block. Together they
//! define the restricted subsample `M^t` of a block `t`: the rows in which
//! every *other* block adheres to its dependency model.

use alloc::format;
use alloc::vec::Vec;

use crate::coalition::Coalition;
use crate::dataset::{Dataset, FeatureSpace, State};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    k: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Validates `blocks` as a partition of `0..k`. Block order is kept;
    /// members are sorted within each block.
    pub fn new(k: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::NotAPartition("no features".into()));
        }
        let mut block_of = alloc::vec![usize::MAX; k];
        let mut sorted = Vec::with_capacity(blocks.len());
        for (t, mut block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(Error::NotAPartition(format!("block {t} is empty")));
            }
            block.sort_unstable();
            for &l in &block {
                if l >= k {
                    return Err(Error::NotAPartition(format!("feature {l} out of range")));
                }
                if block_of[l] != usize::MAX {
                    return Err(Error::NotAPartition(format!("feature {l} in two blocks")));
                }
                block_of[l] = t;
            }
            sorted.push(block);
        }
        if let Some(l) = block_of.iter().position(|&t| t == usize::MAX) {
            return Err(Error::NotAPartition(format!("feature {l} not covered")));
        }
        Ok(Partition {
            k,
            blocks: sorted,
            block_of,
        })
    }

    /// `{{0}, {1}, …, {k-1}}`.
    pub fn singletons(k: usize) -> Self {
        Partition::new(k, (0..k).map(|l| alloc::vec![l]).collect()).expect("k >= 1")
    }

    /// The single block `{0..k-1}`.
    pub fn whole(k: usize) -> Self {
        Partition::new(k, alloc::vec![(0..k).collect()]).expect("k >= 1")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of blocks, `m`.
    pub fn m(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, t: usize) -> &[usize] {
        &self.blocks[t]
    }

    pub fn block_of(&self, l: usize) -> usize {
        self.block_of[l]
    }

    /// Lowest-indexed member of block `t`.
    pub fn representative(&self, t: usize) -> usize {
        self.blocks[t][0]
    }

    pub fn is_singletons(&self) -> bool {
        self.blocks.len() == self.k
    }

    /// Members of block `t` as a coalition (requires `k <= 64`).
    pub fn block_coalition(&self, t: usize) -> Coalition {
        Coalition::from_players(self.blocks[t].iter().copied())
    }

    /// Removes `q` from its block and appends it as a new singleton block.
    /// A singleton `q` is left where it is.
    pub fn detach(&self, q: usize) -> Partition {
        let t = self.block_of[q];
        if self.blocks[t].len() == 1 {
            return self.clone();
        }
        let mut blocks = self.blocks.clone();
        blocks[t].retain(|&l| l != q);
        blocks.push(alloc::vec![q]);
        Partition::new(self.k, blocks).expect("still a partition")
    }

    /// Equality of the block sets, ignoring block order.
    pub fn same_blocks(&self, other: &Partition) -> bool {
        let mut a = self.blocks.clone();
        let mut b = other.blocks.clone();
        a.sort();
        b.sort();
        self.k == other.k && a == b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

/// Per-feature association sign relative to the representative of the
/// feature's block. Representatives are always [`Sign::Positive`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyModel {
    signs: Vec<Sign>,
}

impl DependencyModel {
    pub fn all_positive(k: usize) -> Self {
        DependencyModel {
            signs: alloc::vec![Sign::Positive; k],
        }
    }

    /// Anchors `signs` to the representatives of `p`: a block whose
    /// representative was given a negative sign is flipped as a whole, which
    /// keeps every pairwise relation inside the block.
    pub fn new(p: &Partition, mut signs: Vec<Sign>) -> Result<Self> {
        if signs.len() != p.k() {
            return Err(Error::LengthMismatch {
                left: p.k(),
                right: signs.len(),
            });
        }
        for block in p.blocks() {
            if signs[block[0]] == Sign::Negative {
                for &l in block {
                    signs[l] = flip(signs[l]);
                }
            }
        }
        Ok(DependencyModel { signs })
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign(&self, l: usize) -> Sign {
        self.signs[l]
    }

    pub fn is_all_positive(&self) -> bool {
        self.signs.iter().all(|&s| s == Sign::Positive)
    }

    /// The same relations re-anchored to the representatives of `p`.
    pub fn anchored(&self, p: &Partition) -> DependencyModel {
        DependencyModel::new(p, self.signs.clone()).expect("same length")
    }

    /// Whether features `q` and `v` are expected to agree.
    fn agree(&self, q: usize, v: usize) -> bool {
        self.signs[q] == self.signs[v]
    }

    fn block_has_negative(&self, p: &Partition, t: usize) -> bool {
        let rep = p.representative(t);
        p.block(t).iter().any(|&q| !self.agree(q, rep))
    }
}

fn flip(s: Sign) -> Sign {
    match s {
        Sign::Positive => Sign::Negative,
        Sign::Negative => Sign::Positive,
    }
}

fn check_signs(space: &FeatureSpace, p: &Partition, dep: &DependencyModel, t: usize) -> Result<()> {
    if p.k() != space.k() || dep.signs.len() != space.k() {
        return Err(Error::LengthMismatch {
            left: space.k(),
            right: p.k().max(dep.signs.len()),
        });
    }
    if t >= p.m() {
        return Err(Error::PreconditionUnmet(format!("block {t} does not exist")));
    }
    for u in (0..p.m()).filter(|&u| u != t) {
        if dep.block_has_negative(p, u) && p.block(u).iter().any(|&q| space.state_counts()[q] != 2) {
            return Err(Error::NegativeSignOnNonBinary { block: u });
        }
    }
    Ok(())
}

/// Whether `profile` adheres to the dependency model in every block other
/// than `t`.
pub(crate) fn adheres(profile: &[State], p: &Partition, dep: &DependencyModel, t: usize) -> bool {
    p.blocks().iter().enumerate().all(|(u, block)| {
        if u == t || block.len() < 2 {
            return true;
        }
        let rep = block[0];
        let a = profile[rep];
        block[1..].iter().all(|&q| {
            if dep.agree(q, rep) {
                profile[q] == a
            } else {
                profile[q] == 1 - a
            }
        })
    })
}

/// Row indices of `M^t`.
pub fn restricted_rows(d: &Dataset, p: &Partition, dep: &DependencyModel, t: usize) -> Result<Vec<usize>> {
    let dep = dep.anchored(p);
    check_signs(d.space(), p, &dep, t)?;
    Ok((0..d.n()).filter(|&i| adheres(d.profile(i), p, &dep, t)).collect())
}

/// The subsample `M^t`: rows whose features in every block other than `t`
/// follow the dependency model (equal to the representative, or its
/// complement for a negative binary association). Frequencies are kept.
pub fn restrict_sample(d: &Dataset, p: &Partition, dep: &DependencyModel, t: usize) -> Result<Dataset> {
    Ok(d.select(&restricted_rows(d, p, dep, t)?))
}

/// `|A^t|`: the number of profiles of the full space that adhere to the
/// dependency model outside block `t`.
pub fn restricted_space_count(space: &FeatureSpace, p: &Partition, dep: &DependencyModel, t: usize) -> Result<u128> {
    let dep = dep.anchored(p);
    check_signs(space, p, &dep, t)?;
    let counts = space.state_counts();
    let mut total: u128 = 1;
    for (u, block) in p.blocks().iter().enumerate() {
        let factor: u128 = if u == t {
            block
                .iter()
                .try_fold(1u128, |acc, &q| acc.checked_mul(counts[q] as u128))
                .ok_or(Error::CountOverflow)?
        } else if dep.block_has_negative(p, u) {
            // binary by check_signs: the representative fixes the block
            2
        } else {
            // every member equals the representative: values common to all
            block.iter().map(|&q| counts[q]).min().unwrap_or(1) as u128
        };
        total = total.checked_mul(factor).ok_or(Error::CountOverflow)?;
    }
    Ok(total)
}

/// `1 - |a ∧ b| / |a ∨ b|` for 0/1 columns; 0 when both are all-zero.
pub fn jaccard_distance(a: &[u8], b: &[u8]) -> Result<f64> {
    weighted_jaccard(a, b, None)
}

fn weighted_jaccard(a: &[u8], b: &[u8], weights: Option<&[u64]>) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut inter = 0u64;
    let mut union = 0u64;
    for i in 0..a.len() {
        if a[i] > 1 || b[i] > 1 {
            return Err(Error::NonBinaryColumn);
        }
        let w = weights.map_or(1, |w| w[i]);
        inter += w * (a[i] & b[i]) as u64;
        union += w * (a[i] | b[i]) as u64;
    }
    if union == 0 {
        return Ok(0.0);
    }
    Ok(1.0 - inter as f64 / union as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Linkage {
    #[default]
    Complete,
    Average,
    Single,
}

/// Agglomerative clustering of the feature columns under the Jaccard
/// distance, stopping at `k_clusters` blocks.
///
/// Each row counts with its frequency. Among pairs of clusters at minimal
/// linkage distance the one with the lexicographically smallest pair of
/// (lowest member) indices merges first. Blocks are returned ordered by their
/// lowest member.
pub fn hierarchical_partition(d: &Dataset, k_clusters: usize, linkage: Linkage) -> Result<Partition> {
    let k = d.k();
    d.space().require_binary_features()?;
    if k_clusters == 0 || k_clusters > k {
        return Err(Error::BadClusterCount {
            requested: k_clusters,
            features: k,
        });
    }
    let columns: Vec<Vec<u8>> = (0..k)
        .map(|l| (0..d.n()).map(|i| d.profile(i)[l] as u8).collect())
        .collect();
    let weights = d.frequencies();
    let mut dist = alloc::vec![0.0f64; k * k];
    for a in 0..k {
        for b in a + 1..k {
            let v = weighted_jaccard(&columns[a], &columns[b], weights)?;
            dist[a * k + b] = v;
            dist[b * k + a] = v;
        }
    }

    let mut clusters: Vec<Vec<usize>> = (0..k).map(|l| alloc::vec![l]).collect();
    while clusters.len() > k_clusters {
        let mut best: Option<(f64, usize, usize)> = None;
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let v = cluster_distance(&dist, k, &clusters[i], &clusters[j], linkage);
                // clusters stay sorted by lowest member, so (i, j) order is
                // the lexicographic tie-break
                if best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, i, j));
                }
            }
        }
        let (_, i, j) = best.expect("at least two clusters");
        let merged = clusters.remove(j);
        clusters[i].extend(merged);
        clusters[i].sort_unstable();
    }
    Partition::new(k, clusters)
}

fn cluster_distance(dist: &[f64], k: usize, a: &[usize], b: &[usize], linkage: Linkage) -> f64 {
    let pairs = a.iter().flat_map(|&x| b.iter().map(move |&y| dist[x * k + y]));
    match linkage {
        Linkage::Complete => pairs.fold(f64::NEG_INFINITY, f64::max),
        Linkage::Single => pairs.fold(f64::INFINITY, f64::min),
        Linkage::Average => pairs.sum::<f64>() / (a.len() * b.len()) as f64,
    }
}
