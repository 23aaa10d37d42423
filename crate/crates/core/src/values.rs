//! Cofinite sets of naturals: an explicit table below a tail threshold,
//! every integer at or above the threshold a member.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Canonical form: `tail` is the least threshold, i.e. `tail == 0` or
/// `tail - 1` is not a member.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValueSet {
    members: Vec<bool>,
}

impl ValueSet {
    /// All of ℕ.
    pub fn naturals() -> Self {
        ValueSet {
            members: Vec::new(),
        }
    }

    /// Members below `tail` given by `below`, plus all `n >= tail`.
    pub fn from_members(below: impl IntoIterator<Item = u32>, tail: u32) -> Self {
        let mut members = vec![false; tail as usize];
        for n in below {
            if n < tail {
                members[n as usize] = true;
            }
        }
        let mut s = ValueSet { members };
        s.normalize();
        s
    }

    /// The set `∪_j (apery[j] + eℕ)`.
    pub fn from_apery(apery: &[u32]) -> Self {
        let e = apery.len() as u32;
        if e == 0 {
            return ValueSet::naturals();
        }
        let tail = apery.iter().map(|&w| w + 1).max().unwrap_or(0);
        let members = (0..tail)
            .map(|n| {
                let w = apery[(n % e) as usize];
                n >= w
            })
            .collect();
        let mut s = ValueSet { members };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        while self.members.last() == Some(&true) {
            self.members.pop();
        }
    }

    /// Least `T` with `[T, ∞)` contained in the set (the conductor).
    pub fn tail(&self) -> u32 {
        self.members.len() as u32
    }

    pub fn contains(&self, n: u32) -> bool {
        self.members.get(n as usize).copied().unwrap_or(true)
    }

    /// Members strictly below `bound`.
    pub fn members_below(&self, bound: u32) -> impl Iterator<Item = u32> + '_ {
        (0..bound).filter(move |&n| self.contains(n))
    }

    /// Number of non-members (finite).
    pub fn gap_count(&self) -> usize {
        self.members.iter().filter(|m| !**m).count()
    }

    pub fn min(&self) -> u32 {
        self.members
            .iter()
            .position(|m| *m)
            .map(|p| p as u32)
            .unwrap_or(self.tail())
    }

    /// Least member in each residue class mod `e`, indexed by class.
    pub fn apery(&self, e: u32) -> Vec<u32> {
        (0..e)
            .map(|j| {
                let mut n = j;
                while !self.contains(n) {
                    n += e;
                }
                n
            })
            .collect()
    }

    /// `{n + k : n ∈ self}`.
    pub fn shift_up(&self, k: u32) -> Self {
        let tail = self.tail() + k;
        ValueSet::from_members(self.members_below(self.tail()).map(|n| n + k), tail)
    }

    /// `{n - k : n ∈ self, n >= k}`.
    pub fn shift_down(&self, k: u32) -> Self {
        let tail = self.tail().saturating_sub(k);
        ValueSet::from_members(
            self.members_below(self.tail())
                .filter(|&n| n >= k)
                .map(|n| n - k),
            tail,
        )
    }

    pub fn union(&self, other: &Self) -> Self {
        let tail = self.tail().min(other.tail());
        ValueSet::from_members(
            (0..tail).filter(|&n| self.contains(n) || other.contains(n)),
            tail,
        )
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let tail = self.tail().max(other.tail());
        ValueSet::from_members(
            (0..tail).filter(|&n| self.contains(n) && other.contains(n)),
            tail,
        )
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        let bound = self.tail().max(other.tail());
        (0..bound).all(|n| !self.contains(n) || other.contains(n))
    }

    /// `self \ other`, which must be finite (other cofinite).
    pub fn difference(&self, other: &Self) -> Vec<u32> {
        (0..self.tail().max(other.tail()))
            .filter(|&n| self.contains(n) && !other.contains(n))
            .collect()
    }

    /// Least element of `self \ other`, if any.
    pub fn first_outside(&self, other: &Self) -> Option<u32> {
        self.difference(other).first().copied()
    }
}

impl fmt::Debug for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let listed: Vec<u32> = self.members_below(self.tail()).collect();
        write!(f, "{listed:?} ∪ [{}, ∞)", self.tail())
    }
}
