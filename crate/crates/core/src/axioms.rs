//! Executable versions of the properties that characterize Ψ.
//!
//! Each check evaluates both sides of the property on concrete inputs with
//! the production measures and compares the integer counts exactly.

use alloc::string::String;
use alloc::vec::Vec;

use crate::dataset::{Dataset, State};
use crate::error::{Error, Result};
use crate::influence::{chi, psi, weighted_psi};
use crate::partition::{restrict_sample, DependencyModel, Partition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom {
    /// Non-influential features get 0 under Ψ and Ψ̂.
    Dummy,
    /// With singleton blocks, relabelling features by `sigma` permutes the
    /// measure by `sigma`.
    FeatureSymmetry { sigma: Vec<usize> },
    /// With singleton blocks, relabelling the states of `feature` by `tau`
    /// leaves the measure unchanged.
    StateSymmetry { feature: usize, tau: Vec<State> },
    /// Additivity over disjoint decompositions. Rows flagged in `split` form
    /// `R'`, the rest of the same class `R`; the opposite class is `Q`. Both
    /// the loser split and the winner split are checked.
    DisjointUnion { split: Vec<bool> },
    /// Detaching `q` from the block it shares with `l` leaves `Ψ_l` as is.
    IndifferenceToInteractions { l: usize, q: usize },
    /// For a singleton block `{l}`, `Ψ_l` is `χ_l` of the block's
    /// restricted subsample.
    RelevantProfiles { l: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub feature: usize,
    pub lhs: u64,
    pub rhs: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Witness),
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass)
    }
}

fn compare(feature: usize, lhs: u64, rhs: u64, detail: &str) -> Option<Witness> {
    (lhs != rhs).then(|| Witness {
        feature,
        lhs,
        rhs,
        detail: detail.into(),
    })
}

/// Feature `l` never changes the prediction between rows that agree off `l`.
pub fn is_non_influential(d: &Dataset, l: usize) -> bool {
    (0..d.n()).all(|i| {
        (0..d.n()).all(|j| {
            let (a, b) = (d.profile(i), d.profile(j));
            let same_off_l = (0..d.k()).all(|q| q == l || a[q] == b[q]);
            !same_off_l || d.response(i) == d.response(j)
        })
    })
}

pub fn axiom_check(d: &Dataset, p: &Partition, dep: &DependencyModel, axiom: &Axiom) -> Result<Outcome> {
    let k = d.k();
    let failure = match axiom {
        Axiom::Dummy => {
            let plain = psi(d, p, dep)?.raw;
            let weighted = weighted_psi(d, p, dep)?.raw;
            (0..k).filter(|&l| is_non_influential(d, l)).find_map(|l| {
                compare(l, plain[l], 0, "psi of a non-influential feature")
                    .or_else(|| compare(l, weighted[l], 0, "weighted psi of a non-influential feature"))
            })
        }
        Axiom::FeatureSymmetry { sigma } => {
            require(p.is_singletons(), "feature symmetry needs singleton blocks")?;
            let before = psi(d, p, dep)?.raw;
            let moved = d.permute_features(sigma)?;
            let after = psi(&moved, p, &DependencyModel::all_positive(k))?.raw;
            (0..k).find_map(|l| compare(l, before[l], after[sigma[l]], "psi_l vs psi_sigma(l) after permuting"))
        }
        Axiom::StateSymmetry { feature, tau } => {
            require(p.is_singletons(), "state symmetry needs singleton blocks")?;
            let before = psi(d, p, dep)?.raw;
            let after = psi(&d.relabel_states(*feature, tau)?, p, dep)?.raw;
            (0..k).find_map(|q| compare(q, before[q], after[q], "psi_q before and after relabelling"))
        }
        Axiom::DisjointUnion { split } => {
            require(split.len() == d.n(), "split must flag every row")?;
            let wl = d.wl_view()?;
            let side = |rows: &[usize], flag: bool| -> Vec<usize> {
                rows.iter().copied().filter(|&i| split[i] == flag).collect()
            };
            let measure = |parts: &[&[usize]]| -> Result<Vec<u64>> {
                let mut rows: Vec<usize> = parts.iter().flat_map(|r| r.iter().copied()).collect();
                rows.sort_unstable();
                Ok(psi(&d.select(&rows), p, dep)?.raw)
            };
            let mut found = None;
            for (fixed, varied, label) in [
                (&wl.winners, &wl.losers, "split of losers"),
                (&wl.losers, &wl.winners, "split of winners"),
            ] {
                let (r, r2) = (side(varied, false), side(varied, true));
                let left = measure(&[fixed, &r])?;
                let right = measure(&[fixed, &r2])?;
                let whole = measure(&[fixed, varied])?;
                found = (0..k).find_map(|l| compare(l, left[l] + right[l], whole[l], label));
                if found.is_some() {
                    break;
                }
            }
            found
        }
        Axiom::IndifferenceToInteractions { l, q } => {
            require(*l < k && *q < k && l != q, "l and q must be distinct features")?;
            require(p.block_of(*l) == p.block_of(*q), "l and q must share a block")?;
            let before = psi(d, p, dep)?.raw[*l];
            let after = psi(d, &p.detach(*q), dep)?.raw[*l];
            compare(*l, before, after, "psi_l before and after detaching q")
        }
        Axiom::RelevantProfiles { l } => {
            require(*l < k, "feature out of range")?;
            let t = p.block_of(*l);
            require(p.block(t).len() == 1, "l must form a singleton block")?;
            let lhs = psi(d, p, dep)?.raw[*l];
            let rhs = chi(&restrict_sample(d, p, dep, t)?)?.raw[*l];
            compare(*l, lhs, rhs, "psi_l vs chi_l of the restricted subsample")
        }
    };
    Ok(match failure {
        None => Outcome::Pass,
        Some(w) => Outcome::Fail(w),
    })
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::PreconditionUnmet(what.into()))
    }
}
