//! Coalitions of at most 64 players as bitmasks (player `l` is bit `l`).

use core::fmt;

/// A set of players encoded as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(pub u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    /// The grand coalition on `k` players.
    pub fn full(k: usize) -> Coalition {
        debug_assert!(k <= 64);
        if k == 64 {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << k) - 1)
        }
    }

    pub fn singleton(l: usize) -> Coalition {
        Coalition(1u64 << l)
    }

    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Coalition {
        Coalition(players.into_iter().fold(0, |m, l| m | (1u64 << l)))
    }

    #[inline]
    pub fn contains(self, l: usize) -> bool {
        self.0 >> l & 1 == 1
    }

    #[inline]
    pub fn with(self, l: usize) -> Coalition {
        Coalition(self.0 | (1u64 << l))
    }

    #[inline]
    pub fn without(self, l: usize) -> Coalition {
        Coalition(self.0 & !(1u64 << l))
    }

    #[inline]
    pub fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn players(self) -> Players {
        Players(self.0)
    }

    /// All subsets of `self`, in increasing mask order, starting with the
    /// empty set and ending with `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            set: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.players()).finish()
    }
}

/// Iterator over the members of a coalition, ascending.
#[derive(Clone, Debug)]
pub struct Players(u64);

impl Iterator for Players {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let l = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(l)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Players {}

/// Submask enumeration in increasing order (carry-rippler).
#[derive(Clone, Debug)]
pub struct Subsets {
    set: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        let cur = self.next?;
        let succ = cur.wrapping_sub(self.set) & self.set;
        self.next = if succ == 0 { None } else { Some(succ) };
        Some(Coalition(cur))
    }
}

/// Spreads the low bits of `bits` over the set positions of `mask`, lowest
/// first.
pub(crate) fn deposit(mut bits: u64, mask: u64) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if bits & 1 == 1 {
            out |= low;
        }
        bits >>= 1;
        m &= m - 1;
    }
    out
}
