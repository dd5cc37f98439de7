//! Finite strict posets, set partitions and small enumeration helpers.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest carrier a [`StrictPoset`] or [`SetPartition`] can hold.
pub const MAX_CARRIER: usize = 64;

/// Iterates over the set bits of a mask, lowest first.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Mask with the lowest `n` bits set.
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Elements (1-based) of a ground-set subset mask.
pub fn elements(mask: u64) -> Vec<usize> {
    bits(mask).map(|i| i + 1).collect()
}

/// Mask of a list of 1-based elements.
pub fn mask_of(elements: &[usize]) -> u64 {
    elements.iter().fold(0, |m, &e| m | 1u64 << (e - 1))
}

/// A finite ground set `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundSet {
    size: usize,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyGround);
        }
        if size > MAX_CARRIER {
            return Err(Error::GroundTooLarge(size));
        }
        Ok(GroundSet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mask(&self) -> u64 {
        full_mask(self.size)
    }
}

/// A transitively closed strict order on `0..size`.
///
/// Row `a` holds the set of `b` with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrictPoset {
    size: usize,
    up: Vec<u64>,
}

impl StrictPoset {
    pub fn antichain(size: usize) -> Self {
        assert!(size <= MAX_CARRIER);
        StrictPoset { size, up: vec![0; size] }
    }

    /// Smallest strict order containing `pairs`.
    pub fn transitive_closure(pairs: &[(usize, usize)], size: usize) -> Result<Self> {
        if size > MAX_CARRIER {
            return Err(Error::GroundTooLarge(size));
        }
        let mut up = vec![0u64; size];
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= size {
                    return Err(Error::IndexOutOfRange { index: x, size });
                }
            }
            up[a] |= 1 << b;
        }
        Self::close_rows(up)
    }

    /// Closes a relation given row-wise and checks antisymmetry.
    pub fn close_rows(mut up: Vec<u64>) -> Result<Self> {
        let size = up.len();
        for k in 0..size {
            let row_k = up[k];
            let bit = 1u64 << k;
            for row in up.iter_mut() {
                if *row & bit != 0 {
                    *row |= row_k;
                }
            }
        }
        if let Some(i) = (0..size).find(|&i| up[i] >> i & 1 == 1) {
            return Err(Error::CycleDetected(i));
        }
        Ok(StrictPoset { size, up })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    /// Elements strictly above `a`.
    pub fn above(&self, a: usize) -> u64 {
        self.up[a]
    }

    /// Elements strictly below `a`.
    pub fn below(&self, a: usize) -> u64 {
        (0..self.size).filter(|&x| self.less(x, a)).fold(0, |m, x| m | 1 << x)
    }

    pub fn rows(&self) -> &[u64] {
        &self.up
    }

    /// All pairs `a < b`, lexicographic.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size).flat_map(|a| bits(self.up[a]).map(move |b| (a, b))).collect()
    }

    pub fn is_succ(&self, a: usize, b: usize) -> bool {
        self.less(a, b) && self.up[a] & self.below(b) == 0
    }

    /// Covering pairs, lexicographic.
    pub fn succ_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in bits(self.up[a]) {
                // b covers a iff nothing above a lies strictly below b
                if bits(self.up[a]).all(|t| !self.less(t, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Length of the longest chain ending at `k`; minimal elements have height 1.
    pub fn height(&self, k: usize) -> Result<usize> {
        if k >= self.size {
            return Err(Error::IndexOutOfRange { index: k, size: self.size });
        }
        Ok(self.heights()[k])
    }

    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.size];
        let mut done = 0u64;
        // peel minimal elements level by level
        let mut level = 1;
        while done != full_mask(self.size) {
            let fresh: u64 = (0..self.size).filter(|&x| done >> x & 1 == 0 && self.below(x) & !done == 0).fold(0, |m, x| m | 1 << x);
            for x in bits(fresh) {
                h[x] = level;
            }
            done |= fresh;
            level += 1;
        }
        h
    }

    /// Merges a covering pair `(k, l)`.
    ///
    /// The merged class takes index `min(k, l)`; the other index is removed
    /// and later indices shift down by one.
    pub fn quotient_by_successor_pair(&self, k: usize, l: usize) -> Result<StrictPoset> {
        for x in [k, l] {
            if x >= self.size {
                return Err(Error::IndexOutOfRange { index: x, size: self.size });
            }
        }
        if !self.is_succ(k, l) {
            return Err(Error::NotSuccessorPair(k, l));
        }
        let (keep, drop) = (k.min(l), k.max(l));
        let new_index = |x: usize| -> usize {
            if x == drop {
                keep
            } else if x > drop {
                x - 1
            } else {
                x
            }
        };
        let mut up = vec![0u64; self.size - 1];
        for (a, b) in self.pairs() {
            let (na, nb) = (new_index(a), new_index(b));
            if na != nb {
                up[na] |= 1 << nb;
            }
        }
        Self::close_rows(up)
    }

    /// Restriction to the elements of `mask`, re-indexed in increasing order.
    pub fn restrict(&self, mask: u64) -> StrictPoset {
        let idx: Vec<usize> = bits(mask).collect();
        let up =
            idx.iter().map(|&a| idx.iter().enumerate().filter(|&(_, &b)| self.less(a, b)).fold(0u64, |m, (j, _)| m | 1 << j)).collect();
        StrictPoset { size: idx.len(), up }
    }

    /// Reindexes: element `i` of the result is element `perm[i]` of `self`.
    pub fn reindex(&self, perm: &[usize]) -> StrictPoset {
        let mut inv = vec![0usize; self.size];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let up = perm.iter().map(|&p| bits(self.up[p]).fold(0u64, |m, b| m | 1 << inv[b])).collect();
        StrictPoset { size: self.size, up }
    }

    /// Whether `self` is transitively closed and irreflexive.
    pub fn is_closed(&self) -> bool {
        (0..self.size).all(|a| self.up[a] >> a & 1 == 0 && bits(self.up[a]).all(|b| self.up[b] & !self.up[a] == 0))
    }
}

/// A partition of `0..size` into nonempty blocks, stored sorted by least element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    size: usize,
    blocks: Vec<u64>,
}

impl SetPartition {
    pub fn new(size: usize, mut blocks: Vec<u64>) -> Result<Self> {
        if size > MAX_CARRIER {
            return Err(Error::GroundTooLarge(size));
        }
        let mut seen = 0u64;
        for (i, &b) in blocks.iter().enumerate() {
            if b == 0 {
                return Err(Error::EmptyBrick(i));
            }
            if b & seen != 0 || b & !full_mask(size) != 0 {
                return Err(Error::CoverageFailure);
            }
            seen |= b;
        }
        if seen != full_mask(size) {
            return Err(Error::CoverageFailure);
        }
        blocks.sort_by_key(|b| b.trailing_zeros());
        Ok(SetPartition { size, blocks })
    }

    pub(crate) fn from_sorted_unchecked(size: usize, blocks: Vec<u64>) -> Self {
        SetPartition { size, blocks }
    }

    pub fn discrete(size: usize) -> Self {
        SetPartition { size, blocks: (0..size).map(|i| 1u64 << i).collect() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.blocks.iter().position(|&b| b >> x & 1 == 1).expect("element outside partition")
    }

    /// Blocks as lists of 1-based elements.
    pub fn element_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|&b| elements(b)).collect()
    }
}

/// All set partitions of `0..n` in restricted-growth-string order.
pub fn enumerate_partitions(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut rgs = vec![0usize; n];
    loop {
        let nblocks = rgs.iter().max().unwrap() + 1;
        let mut blocks = vec![0u64; nblocks];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b] |= 1 << i;
        }
        out.push(SetPartition::from_sorted_unchecked(n, blocks));
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let prefix_max = rgs[..i].iter().copied().max().unwrap();
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for x in rgs[i + 1..].iter_mut() {
                    *x = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// All sequences of `r` nonempty disjoint blocks covering `0..n`, sorted.
pub fn enumerate_ordered_partitions(n: usize, r: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    if r == 0 || r > n {
        return out;
    }
    let perms = permutations(r);
    for p in enumerate_partitions(n).into_iter().filter(|p| p.len() == r) {
        for perm in &perms {
            out.push(perm.iter().map(|&i| p.blocks[i]).collect());
        }
    }
    out.sort();
    out
}

/// All permutations of `0..n` (one-line notation) in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Connected components of the graph on `0..n` given by an adjacency test.
pub fn components(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Vec<u64> {
    let mut seen = 0u64;
    let mut out = Vec::new();
    for start in 0..n {
        if seen >> start & 1 == 1 {
            continue;
        }
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            for y in 0..n {
                if comp >> y & 1 == 0 && adjacent(x, y) {
                    comp |= 1 << y;
                    frontier |= 1 << y;
                }
            }
        }
        seen |= comp;
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_closure(pairs: &[(usize, usize)], m: usize) -> Vec<(usize, usize)> {
        let mut rel = vec![vec![false; m]; m];
        for &(a, b) in pairs {
            rel[a][b] = true;
        }
        loop {
            let mut changed = false;
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        if rel[a][b] && rel[b][c] && !rel[a][c] {
                            rel[a][c] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if rel[a][b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn closure_examples() {
        let p = StrictPoset::transitive_closure(&[(0, 1), (1, 2)], 3).unwrap();
        assert_eq!(p.pairs(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(StrictPoset::transitive_closure(&[], 2).unwrap().pairs().is_empty());
        assert_eq!(StrictPoset::transitive_closure(&[(0, 1), (1, 0)], 2), Err(Error::CycleDetected(0)));
    }

    #[test]
    fn closure_matches_brute_force() {
        let pairs = [(0, 3), (3, 1), (2, 4), (1, 4), (5, 2)];
        let p = StrictPoset::transitive_closure(&pairs, 6).unwrap();
        assert_eq!(p.pairs(), brute_closure(&pairs, 6));
        assert!(p.is_closed());
    }

    #[test]
    fn succ_examples() {
        let chain = StrictPoset::transitive_closure(&[(0, 1), (1, 2)], 3).unwrap();
        assert_eq!(chain.succ_pairs(), vec![(0, 1), (1, 2)]);
        assert!(StrictPoset::antichain(3).succ_pairs().is_empty());
        let v = StrictPoset::transitive_closure(&[(0, 2), (1, 2)], 3).unwrap();
        // brute force: covering means no t strictly between
        let brute: Vec<_> = v.pairs().into_iter().filter(|&(a, b)| (0..3).all(|t| !(v.less(a, t) && v.less(t, b)))).collect();
        assert_eq!(v.succ_pairs(), brute);
        assert_eq!(brute, vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn height_examples() {
        let chain = StrictPoset::transitive_closure(&[(0, 1), (1, 2)], 3).unwrap();
        assert_eq!(chain.height(2), Ok(3));
        assert_eq!(StrictPoset::antichain(3).height(1), Ok(1));
        let p = StrictPoset::transitive_closure(&[(0, 2), (1, 2), (2, 3), (1, 3)], 4).unwrap();
        assert_eq!(p.height(3), Ok(3));
        assert!(matches!(p.height(4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn quotient_examples() {
        let chain = StrictPoset::transitive_closure(&[(0, 1), (1, 2)], 3).unwrap();
        let q = chain.quotient_by_successor_pair(0, 1).unwrap();
        assert_eq!(q.pairs(), vec![(0, 1)]);
        let v = StrictPoset::transitive_closure(&[(0, 2), (1, 2)], 3).unwrap();
        let q = v.quotient_by_successor_pair(0, 2).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(q.pairs(), vec![(1, 0)]);
        assert_eq!(StrictPoset::antichain(3).quotient_by_successor_pair(0, 1), Err(Error::NotSuccessorPair(0, 1)));
    }

    #[test]
    fn partition_counts() {
        assert_eq!(enumerate_partitions(1).len(), 1);
        assert_eq!(enumerate_partitions(3).len(), 5);
        let bell = [1, 1, 2, 5, 15, 52, 203, 877];
        for n in 1..=7 {
            let all = enumerate_partitions(n);
            // brute force: equivalence relations are functions to labels up to relabeling
            let mut seen = alloc::collections::BTreeSet::new();
            let mut labels = vec![0usize; n];
            loop {
                let mut blocks = vec![0u64; n];
                for (i, &l) in labels.iter().enumerate() {
                    blocks[l] |= 1 << i;
                }
                let mut bs: Vec<u64> = blocks.into_iter().filter(|&b| b != 0).collect();
                bs.sort();
                seen.insert(bs);
                let mut i = 0;
                while i < n && labels[i] == n - 1 {
                    labels[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                labels[i] += 1;
            }
            assert_eq!(all.len(), seen.len());
            assert_eq!(all.len(), bell[n]);
        }
    }

    #[test]
    fn ordered_partitions() {
        assert_eq!(enumerate_ordered_partitions(2, 2), vec![vec![0b01, 0b10], vec![0b10, 0b01]]);
        let stirling = |n: usize, r: usize| enumerate_partitions(n).into_iter().filter(|p| p.len() == r).count();
        for n in 1..=5 {
            for r in 1..=n {
                let fact: usize = (1..=r).product();
                assert_eq!(enumerate_ordered_partitions(n, r).len(), fact * stirling(n, r));
            }
        }
    }

    #[test]
    fn permutations_are_complete() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }
}
