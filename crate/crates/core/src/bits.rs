//! Fixed-size bitsets over positive-root indices and simple-root indices.

use std::fmt;

/// A set of positive-root indices (at most 128), used as the inversion-set
/// fingerprint of a group element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct InvSet(pub u128);

impl InvSet {
    pub const EMPTY: InvSet = InvSet(0);

    #[inline]
    pub fn contains(self, k: usize) -> bool {
        self.0 >> k & 1 == 1
    }

    #[inline]
    pub fn with(self, k: usize) -> InvSet {
        InvSet(self.0 | 1 << k)
    }

    #[inline]
    pub fn without(self, k: usize) -> InvSet {
        InvSet(self.0 & !(1 << k))
    }

    #[inline]
    pub fn is_subset(self, other: InvSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let k = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(k)
            }
        })
    }
}

impl fmt::Debug for InvSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subset of the simple roots, as a bitmask over 0-based simple indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct SimpleSet(pub u32);

impl SimpleSet {
    pub const EMPTY: SimpleSet = SimpleSet(0);

    pub fn full(rank: usize) -> SimpleSet {
        SimpleSet(if rank >= 32 { u32::MAX } else { (1u32 << rank) - 1 })
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> SimpleSet {
        SimpleSet(indices.into_iter().fold(0, |m, i| m | 1 << i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> SimpleSet {
        SimpleSet(self.0 | 1 << i)
    }

    pub fn is_subset(self, other: SimpleSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let k = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(k)
            }
        })
    }

    /// All subsets of `self`, in increasing order of their bitmask.
    pub fn subsets(self) -> impl Iterator<Item = SimpleSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            // Standard "next submask in increasing order" step.
            next = if cur == full { None } else { Some(((cur | !full).wrapping_add(1)) & full) };
            Some(SimpleSet(cur))
        })
    }
}

impl fmt::Debug for SimpleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn subsets_enumerate_in_order() {
        let s = SimpleSet(0b1010);
        let got: Vec<u32> = s.subsets().map(SimpleSet::mask).collect();
        assert_eq!(got, vec![0b0000, 0b0010, 0b1000, 0b1010]);
        assert_eq!(SimpleSet::EMPTY.subsets().count(), 1);
        assert_eq!(SimpleSet::full(7).subsets().count(), 128);
    }

    proptest! {
        #[test]
        fn subset_count_is_power_of_two(mask in 0u32..(1 << 10)) {
            let s = SimpleSet(mask);
            let subs: Vec<SimpleSet> = s.subsets().collect();
            prop_assert_eq!(subs.len(), 1usize << s.len());
            prop_assert!(subs.iter().all(|t| t.is_subset(s)));
            prop_assert!(subs.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn inv_iter_matches_contains(bits in any::<u128>()) {
            let s = InvSet(bits);
            let listed: Vec<usize> = s.iter().collect();
            prop_assert_eq!(listed.len(), s.len());
            for k in 0..128 {
                prop_assert_eq!(s.contains(k), listed.contains(&k));
            }
        }
    }
}
