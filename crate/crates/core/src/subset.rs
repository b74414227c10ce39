//! Ground sets `[1:n]` and bitmask subsets.
//!
//! Elements are 1-based everywhere in the API, matching the usual index
//! convention for collections of random variables `X_1, ..., X_n`. A
//! [`GroundSet`] additionally carries the evaluation ordering used by the
//! strong-form bounds; the weak forms ignore it.

use serde::{Deserialize, Serialize};

use crate::Error;

/// Hard cap on ground-set size. Exhaustive structural checks enumerate all
/// subset pairs, which is only sound to promise up to this size.
pub const MAX_GROUND: usize = 20;

/// A subset of `[1:n]` stored as a bitmask (bit `i-1` set iff element `i`
/// is a member).
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u32) -> Subset {
        Subset(mask)
    }

    /// Builds a subset from 1-based element indices.
    pub fn from_elems(elems: &[usize], n: usize) -> Result<Subset, Error> {
        let mut mask = 0u32;
        for &e in elems {
            if e < 1 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            mask |= 1 << (e - 1);
        }
        Ok(Subset(mask))
    }

    pub fn singleton(elem: usize) -> Subset {
        debug_assert!(elem >= 1);
        Subset(1 << (elem - 1))
    }

    pub fn full(n: usize) -> Subset {
        if n == 0 {
            Subset(0)
        } else {
            Subset(u32::MAX >> (32 - n))
        }
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, elem: usize) -> bool {
        elem >= 1 && self.0 & (1 << (elem - 1)) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(Subset::full(n).0 & !self.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Iterates members in increasing element order (1-based).
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let e = mask.trailing_zeros() as usize + 1;
                mask &= mask - 1;
                Some(e)
            }
        })
    }

    pub fn elems(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `[1:n]` in mask order (`0..2^n`).
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        (0u32..(1u32 << n)).map(Subset)
    }

    /// All k-element subsets of `[1:n]` in increasing mask order (Gosper's
    /// hack), so enumeration order is deterministic.
    pub fn all_of_size(n: usize, k: usize) -> Vec<Subset> {
        if k > n {
            return Vec::new();
        }
        if k == 0 {
            return vec![Subset::EMPTY];
        }
        let limit = 1u64 << n;
        let mut out = Vec::new();
        let mut v: u64 = (1u64 << k) - 1;
        while v < limit {
            out.push(Subset(v as u32));
            let t = v | (v - 1);
            v = (t + 1) | (((!t & t.wrapping_add(1)) - 1) >> (v.trailing_zeros() + 1));
        }
        out
    }
}

impl std::fmt::Debug for Subset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.elems().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Subset, D::Error> {
        let elems = Vec::<usize>::deserialize(d)?;
        Subset::from_elems(&elems, MAX_GROUND).map_err(serde::de::Error::custom)
    }
}

/// The ground set `[1:n]` together with the evaluation ordering used by the
/// strong-form bounds.
///
/// `order` lists the elements in evaluation sequence: `order[0]` is evaluated
/// first. The default is the identity ordering `1, 2, ..., n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroundSet {
    n: usize,
    order: Vec<usize>,
}

impl GroundSet {
    /// Identity ordering on `[1:n]`.
    pub fn identity(n: usize) -> Result<GroundSet, Error> {
        GroundSet::with_order(n, (1..=n).collect())
    }

    /// Explicit ordering; `order` must be a permutation of `1..=n`.
    pub fn with_order(n: usize, order: Vec<usize>) -> Result<GroundSet, Error> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::GroundSize { n });
        }
        if order.len() != n {
            return Err(Error::BadOrder {
                reason: format!("order has {} entries, ground set has {}", order.len(), n),
            });
        }
        let mut seen = vec![false; n];
        for &e in &order {
            if e < 1 || e > n || seen[e - 1] {
                return Err(Error::BadOrder {
                    reason: format!("order is not a permutation of 1..={n}"),
                });
            }
            seen[e - 1] = true;
        }
        Ok(GroundSet { n, order })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    /// Position of each element in the evaluation order (0-based rank).
    fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0usize; self.n + 1];
        for (pos, &e) in self.order.iter().enumerate() {
            rank[e] = pos;
        }
        rank
    }

    /// `<S`: elements ranked strictly below every element of `S`.
    ///
    /// Equivalently, elements whose rank is below the minimum rank in `S`.
    /// For empty `S` this is the whole ground set's empty prefix convention:
    /// we return the empty set (nothing precedes "everything").
    pub fn below(&self, s: Subset) -> Subset {
        if s.is_empty() {
            return Subset::EMPTY;
        }
        let rank = self.ranks();
        let min_rank = s.iter().map(|e| rank[e]).min().unwrap();
        let mut mask = 0u32;
        for &e in &self.order[..min_rank] {
            mask |= 1 << (e - 1);
        }
        Subset::from_mask(mask)
    }

    /// `>S`: elements ranked strictly above every element of `S`.
    pub fn above(&self, s: Subset) -> Subset {
        if s.is_empty() {
            return Subset::EMPTY;
        }
        let rank = self.ranks();
        let max_rank = s.iter().map(|e| rank[e]).max().unwrap();
        let mut mask = 0u32;
        for &e in &self.order[max_rank + 1..] {
            mask |= 1 << (e - 1);
        }
        Subset::from_mask(mask)
    }

    /// Prefix of the first `j` elements in evaluation order.
    pub fn prefix(&self, j: usize) -> Subset {
        let mut mask = 0u32;
        for &e in &self.order[..j] {
            mask |= 1 << (e - 1);
        }
        Subset::from_mask(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_algebra() {
        let s = Subset::from_elems(&[1, 3], 4).unwrap();
        let t = Subset::from_elems(&[2, 3], 4).unwrap();
        assert_eq!(s.union(t).elems(), vec![1, 2, 3]);
        assert_eq!(s.intersection(t).elems(), vec![3]);
        assert_eq!(s.complement(4).elems(), vec![2, 4]);
        assert_eq!(s.minus(t).elems(), vec![1]);
        assert!(s.contains(3) && !s.contains(2));
        assert_eq!(Subset::full(4).len(), 4);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(Subset::from_elems(&[5], 4).is_err());
        assert!(Subset::from_elems(&[0], 4).is_err());
    }

    #[test]
    fn k_subsets_enumeration() {
        let all = Subset::all_of_size(4, 2);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0].mask() < w[1].mask()));
        assert!(all.iter().all(|s| s.len() == 2));
        assert_eq!(Subset::all_of_size(3, 3), vec![Subset::full(3)]);
    }

    #[test]
    fn below_above_identity_order() {
        let g = GroundSet::identity(5).unwrap();
        let s = Subset::from_elems(&[2, 4], 5).unwrap();
        assert_eq!(g.below(s).elems(), vec![1]);
        assert_eq!(g.above(s).elems(), vec![5]);
        // S^c \ >S
        assert_eq!(s.complement(5).minus(g.above(s)).elems(), vec![1, 3]);
    }

    #[test]
    fn below_above_custom_order() {
        // order 3,1,2: element 3 first
        let g = GroundSet::with_order(3, vec![3, 1, 2]).unwrap();
        let s = Subset::singleton(1);
        assert_eq!(g.below(s).elems(), vec![3]);
        assert_eq!(g.above(s).elems(), vec![2]);
        assert_eq!(g.prefix(2).elems(), vec![1, 3]);
    }

    #[test]
    fn bad_orders_rejected() {
        assert!(GroundSet::with_order(3, vec![1, 2, 2]).is_err());
        assert!(GroundSet::with_order(3, vec![1, 2]).is_err());
        assert!(GroundSet::with_order(3, vec![1, 2, 4]).is_err());
    }
}
