//! Walls over `1..=n`: bricks covering the ground set, ordered through the
//! total orders on the bricks containing each element.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poset::{bits, components, enumerate_partitions, full_mask, SetPartition, StrictPoset, MAX_CARRIER};
use crate::{Budget, Error, Result};

/// First invariant a candidate wall breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyGround,
    EmptyBrick(usize),
    BrickOutsideGround(usize),
    CoverageFailure,
    OrderSizeMismatch,
    OrderNotClosed,
    /// Two bricks share `element` but are incomparable.
    FiberNotTotallyOrdered {
        element: usize,
        a: usize,
        b: usize,
    },
    /// `a < b` is not generated by comparabilities of intersecting bricks.
    NonCanonicalOrder {
        a: usize,
        b: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::EmptyGround => write!(f, "empty ground set"),
            Violation::EmptyBrick(i) => write!(f, "brick {} is empty", i + 1),
            Violation::BrickOutsideGround(i) => write!(f, "brick {} leaves the ground set", i + 1),
            Violation::CoverageFailure => write!(f, "bricks do not cover the ground set"),
            Violation::OrderSizeMismatch => write!(f, "order carrier differs from brick count"),
            Violation::OrderNotClosed => write!(f, "order is not a transitively closed strict order"),
            Violation::FiberNotTotallyOrdered { element, a, b } => {
                write!(f, "bricks {} and {} share element {} but are incomparable", a + 1, b + 1, element)
            }
            Violation::NonCanonicalOrder { a, b } => {
                write!(f, "relation {} < {} is not generated by intersecting bricks", a + 1, b + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wall {
    ground: usize,
    bricks: Vec<u64>,
    order: StrictPoset,
}

fn check_bricks(n: usize, bricks: &[u64]) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyGround);
    }
    if n > MAX_CARRIER || bricks.len() > MAX_CARRIER {
        return Err(Error::GroundTooLarge(n.max(bricks.len())));
    }
    let mut cover = 0;
    for (i, &b) in bricks.iter().enumerate() {
        if b == 0 {
            return Err(Error::EmptyBrick(i));
        }
        if b & !full_mask(n) != 0 {
            return Err(Error::CoverageFailure);
        }
        cover |= b;
    }
    if cover != full_mask(n) {
        return Err(Error::CoverageFailure);
    }
    Ok(())
}

impl Wall {
    /// The wall whose order is generated by position order on intersecting bricks.
    pub fn from_brick_sequence(n: usize, bricks: &[u64]) -> Result<Wall> {
        Ok(Self::from_sequence_raw(n, bricks)?.canonical_form())
    }

    fn from_sequence_raw(n: usize, bricks: &[u64]) -> Result<Wall> {
        check_bricks(n, bricks)?;
        let r = bricks.len();
        let up = (0..r).map(|i| (i + 1..r).filter(|&j| bricks[i] & bricks[j] != 0).fold(0u64, |m, j| m | 1 << j)).collect();
        let order = StrictPoset::close_rows(up)?;
        Ok(Wall { ground: n, bricks: bricks.to_vec(), order })
    }

    /// Closes generating pairs on brick indices, validates and canonicalizes.
    pub fn from_relations(n: usize, bricks: &[u64], pairs: &[(usize, usize)]) -> Result<Wall> {
        check_bricks(n, bricks)?;
        let order = StrictPoset::transitive_closure(pairs, bricks.len())?;
        let w = Wall { ground: n, bricks: bricks.to_vec(), order };
        w.validate().map_err(Error::InvalidWall)?;
        Ok(w.canonical_form())
    }

    /// Assembles a wall without any check; pair with [`Wall::validate`].
    pub fn from_parts_unchecked(n: usize, bricks: Vec<u64>, order: StrictPoset) -> Wall {
        Wall { ground: n, bricks, order }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn bricks(&self) -> &[u64] {
        &self.bricks
    }

    pub fn order(&self) -> &StrictPoset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.bricks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bricks.is_empty()
    }

    pub fn intersect(&self, a: usize, b: usize) -> bool {
        self.bricks[a] & self.bricks[b] != 0
    }

    pub fn validate(&self) -> core::result::Result<(), Violation> {
        let n = self.ground;
        if n == 0 {
            return Err(Violation::EmptyGround);
        }
        let mut cover = 0;
        for (i, &b) in self.bricks.iter().enumerate() {
            if b == 0 {
                return Err(Violation::EmptyBrick(i));
            }
            if b & !full_mask(n) != 0 {
                return Err(Violation::BrickOutsideGround(i));
            }
            cover |= b;
        }
        if cover != full_mask(n) {
            return Err(Violation::CoverageFailure);
        }
        let r = self.bricks.len();
        if self.order.size() != r {
            return Err(Violation::OrderSizeMismatch);
        }
        if !self.order.is_closed() {
            return Err(Violation::OrderNotClosed);
        }
        for a in 0..r {
            for b in a + 1..r {
                let common = self.bricks[a] & self.bricks[b];
                if common != 0 && !self.order.comparable(a, b) {
                    let element = common.trailing_zeros() as usize + 1;
                    return Err(Violation::FiberNotTotallyOrdered { element, a, b });
                }
            }
        }
        let generated = (0..r).map(|a| bits(self.order.above(a)).filter(|&b| self.intersect(a, b)).fold(0u64, |m, b| m | 1 << b)).collect();
        let generated = StrictPoset::close_rows(generated).map_err(|_| Violation::OrderNotClosed)?;
        if let Some((a, b)) = self.order.pairs().into_iter().find(|&(a, b)| !generated.less(a, b)) {
            return Err(Violation::NonCanonicalOrder { a, b });
        }
        Ok(())
    }

    /// Sort keys `(height, least element, mask)` of the bricks.
    pub fn brick_keys(&self) -> Vec<(usize, u32, u64)> {
        let h = self.order.heights();
        self.bricks.iter().enumerate().map(|(i, &b)| (h[i], b.trailing_zeros(), b)).collect()
    }

    /// Bricks sorted by key; the order is carried along.
    pub fn canonical_form(&self) -> Wall {
        let keys = self.brick_keys();
        let mut perm: Vec<usize> = (0..self.len()).collect();
        perm.sort_by_key(|&i| keys[i]);
        Wall { ground: self.ground, bricks: perm.iter().map(|&i| self.bricks[i]).collect(), order: self.order.reindex(&perm) }
    }

    pub fn is_canonical(&self) -> bool {
        let keys = self.brick_keys();
        keys.windows(2).all(|w| w[0] < w[1])
    }

    /// Succ pairs of the order whose bricks intersect.
    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.intersect(a, b) && (self.order.is_succ(a, b) || self.order.is_succ(b, a))
    }

    /// Components of the adjacency "intersect and successors", as a partition of brick indices.
    pub fn connected_components(&self) -> SetPartition {
        let comps = components(self.len(), |a, b| self.is_adjacent(a, b));
        SetPartition::new(self.len(), comps).expect("components partition the bricks")
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Partition of the ground set into unions of bricks over each component.
    pub fn kappa(&self) -> SetPartition {
        let blocks = self.connected_components().blocks().iter().map(|&c| bits(c).fold(0u64, |m, i| m | self.bricks[i])).collect();
        SetPartition::new(self.ground, blocks).expect("components of a wall cover disjoint parts")
    }

    /// The sub-wall spanned by the bricks in `mask`, over the same ground set.
    ///
    /// The result need not cover the ground set; it only feeds connectivity tests.
    pub fn restrict_bricks(&self, mask: u64) -> Wall {
        Wall { ground: self.ground, bricks: bits(mask).map(|i| self.bricks[i]).collect(), order: self.order.restrict(mask) }
    }

    /// Whether the order has at least one covering pair.
    pub fn has_succ(&self) -> bool {
        !self.order.pairs().is_empty()
    }
}

/// Two partitions of the same ground set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionPair {
    pub first: SetPartition,
    pub second: SetPartition,
}

impl PartitionPair {
    /// Whether the bipartite block-intersection graph is connected.
    pub fn is_connected(&self) -> bool {
        kappa_of_pair(&self.first, &self.second).len() == 1
    }
}

/// Every block of the first partition below every block of the second it meets.
pub fn wall_from_partition_pair(p: &PartitionPair) -> Wall {
    let n = p.first.size();
    let lower = wall_of_partition(&p.first);
    let upper = wall_of_partition(&p.second);
    debug_assert_eq!(n, p.second.size());
    vertical_product(&lower, &upper).expect("same ground")
}

/// The antichain wall whose bricks are the blocks.
pub fn wall_of_partition(p: &SetPartition) -> Wall {
    Wall { ground: p.size(), bricks: p.blocks().to_vec(), order: StrictPoset::antichain(p.len()) }.canonical_form()
}

/// Connected components of the block-intersection graph, as a partition.
pub fn kappa_of_pair(a: &SetPartition, b: &SetPartition) -> SetPartition {
    let blocks: Vec<u64> = a.blocks().iter().chain(b.blocks()).copied().collect();
    let comps = components(blocks.len(), |x, y| blocks[x] & blocks[y] != 0);
    let merged = comps.iter().map(|&c| bits(c).fold(0u64, |m, i| m | blocks[i])).collect();
    SetPartition::new(a.size(), merged).expect("unions of components partition the ground")
}

fn relabel(mask: u64, map: &[usize]) -> u64 {
    bits(mask).fold(0u64, |m, i| m | 1 << (map[i] - 1))
}

fn check_injection(map: &[usize], target: usize) -> Result<u64> {
    let mut image = 0u64;
    for &x in map {
        if x == 0 || x > target || image >> (x - 1) & 1 == 1 {
            return Err(Error::NotInjective(target));
        }
        image |= 1 << (x - 1);
    }
    Ok(image)
}

/// Grafts `wn` over `wm` along injections of their grounds into `1..=s`.
///
/// `iota[i]` is the image of element `i + 1` of the ground of `wm`, and likewise
/// `jota` for `wn`. Bricks of `wm` go below the bricks of `wn` they meet.
pub fn graft(s: usize, iota: &[usize], jota: &[usize], wm: &Wall, wn: &Wall) -> Result<Wall> {
    if iota.len() != wm.ground || jota.len() != wn.ground {
        return Err(Error::GroundMismatch(iota.len(), wm.ground));
    }
    let im = check_injection(iota, s)?;
    let jm = check_injection(jota, s)?;
    if im | jm != full_mask(s) {
        return Err(Error::CoverageFailure);
    }
    if im & jm == 0 {
        return Err(Error::EmptyOverlap);
    }
    let lower: Vec<u64> = wm.bricks.iter().map(|&b| relabel(b, iota)).collect();
    let upper: Vec<u64> = wn.bricks.iter().map(|&b| relabel(b, jota)).collect();
    Ok(stack(s, &lower, &wm.order, &upper, &wn.order))
}

fn stack(s: usize, lower: &[u64], lo: &StrictPoset, upper: &[u64], uo: &StrictPoset) -> Wall {
    let (p, q) = (lower.len(), upper.len());
    let mut up = vec![0u64; p + q];
    for a in 0..p {
        up[a] = lo.above(a);
        for (b, &ub) in upper.iter().enumerate() {
            if lower[a] & ub != 0 {
                up[a] |= 1 << (p + b);
            }
        }
    }
    for b in 0..q {
        up[p + b] = uo.above(b) << p;
    }
    let order = StrictPoset::close_rows(up).expect("stacking keeps the order acyclic");
    let bricks = lower.iter().chain(upper).copied().collect();
    Wall { ground: s, bricks, order }.canonical_form()
}

/// `w` below `l` over a common ground.
pub fn vertical_product(w: &Wall, l: &Wall) -> Result<Wall> {
    if w.ground != l.ground {
        return Err(Error::GroundMismatch(w.ground, l.ground));
    }
    Ok(stack(w.ground, &w.bricks, &w.order, &l.bricks, &l.order))
}

/// Disjoint union, with the ground of `l` shifted past that of `w`.
pub fn horizontal_product(w: &Wall, l: &Wall) -> Result<Wall> {
    let s = w.ground + l.ground;
    if s > MAX_CARRIER || w.len() + l.len() > MAX_CARRIER {
        return Err(Error::GroundTooLarge(s));
    }
    let p = w.len();
    let mut up: Vec<u64> = w.order.rows().to_vec();
    up.extend(l.order.rows().iter().map(|&r| r << p));
    let bricks = w.bricks.iter().copied().chain(l.bricks.iter().map(|&b| b << w.ground)).collect();
    let order = StrictPoset::close_rows(up).expect("disjoint union of orders");
    Ok(Wall { ground: s, bricks, order }.canonical_form())
}

/// Right action of a permutation of the ground: element `x` moves to `sigma^{-1}(x)`.
///
/// `sigma[i]` is the image of `i + 1`. With this convention
/// `(w·σ)·τ = w·(σ∘τ)`.
pub fn aut_action(w: &Wall, sigma: &[usize]) -> Result<Wall> {
    let n = w.ground;
    if sigma.len() != n || check_injection(sigma, n).is_err() {
        return Err(Error::NotAPermutation(n));
    }
    let mut inv = vec![0usize; n];
    for (i, &x) in sigma.iter().enumerate() {
        inv[x - 1] = i + 1;
    }
    let bricks = w.bricks.iter().map(|&b| relabel(b, &inv)).collect();
    Ok(Wall { ground: n, bricks, order: w.order.clone() }.canonical_form())
}

/// All canonical walls with `r` bricks over `1..=n`, optionally only connected ones.
pub fn enumerate_walls(n: usize, r: usize, connected: bool, budget: &Budget) -> Result<Vec<Wall>> {
    if n == 0 {
        return Err(Error::EmptyGround);
    }
    budget.walls(n, r)?;
    let mut out = Vec::new();
    if r == 0 {
        return Ok(out);
    }
    let full = full_mask(n);
    let mut seq = vec![1u64; r];
    loop {
        if seq.iter().fold(0, |m, &b| m | b) == full {
            let w = Wall::from_sequence_raw(n, &seq).expect("valid sequence");
            // each wall is produced once: by the sequence equal to its canonical brick list
            if w.is_canonical() && (!connected || w.is_connected()) {
                out.push(w);
            }
        }
        let mut i = r;
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            if seq[i] < full {
                seq[i] += 1;
                break;
            }
            seq[i] = 1;
        }
    }
}

/// Number of walls with `r` labelled bricks: `r!` times the number of walls.
pub fn count_ordered_walls(n: usize, r: usize, budget: &Budget) -> Result<u128> {
    let walls = enumerate_walls(n, r, false, budget)?.len() as u128;
    Ok((1..=r as u128).product::<u128>() * walls)
}

/// Pairs of partitions of `1..=n` with a connected block-intersection graph.
pub fn enumerate_xconn(n: usize, budget: &Budget) -> Result<Vec<PartitionPair>> {
    if n == 0 {
        return Err(Error::EmptyGround);
    }
    if n > budget.max_arity {
        return Err(Error::BudgetExceeded { what: "xconn", requested: n });
    }
    let parts = enumerate_partitions(n);
    let mut out = Vec::new();
    for a in &parts {
        for b in &parts {
            if kappa_of_pair(a, b).len() == 1 {
                out.push(PartitionPair { first: a.clone(), second: b.clone() });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{mask_of, permutations};

    fn m(e: &[usize]) -> u64 {
        mask_of(e)
    }

    pub(crate) fn four_brick() -> Wall {
        Wall::from_brick_sequence(4, &[m(&[1, 2]), m(&[3, 4]), m(&[2, 3]), m(&[1, 4])]).unwrap()
    }

    #[test]
    fn sequence_examples() {
        let w = Wall::from_brick_sequence(2, &[m(&[1, 2]), m(&[1])]).unwrap();
        assert_eq!(w.bricks(), &[m(&[1, 2]), m(&[1])]);
        assert_eq!(w.order().pairs(), vec![(0, 1)]);
        let w = four_brick();
        assert_eq!(w.bricks(), &[m(&[1, 2]), m(&[3, 4]), m(&[1, 4]), m(&[2, 3])]);
        assert_eq!(w.order().pairs(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        let w = Wall::from_brick_sequence(2, &[m(&[1]), m(&[2])]).unwrap();
        assert!(w.order().pairs().is_empty());
        assert_eq!(Wall::from_brick_sequence(2, &[m(&[1]), 0]), Err(Error::EmptyBrick(1)));
        assert_eq!(Wall::from_brick_sequence(3, &[m(&[1])]), Err(Error::CoverageFailure));
    }

    #[test]
    fn validation_reports() {
        assert_eq!(four_brick().validate(), Ok(()));
        let bad = Wall::from_parts_unchecked(2, vec![m(&[1, 2]), m(&[1])], StrictPoset::antichain(2));
        assert_eq!(bad.validate(), Err(Violation::FiberNotTotallyOrdered { element: 1, a: 0, b: 1 }));
        // spurious pair between disjoint bricks, re-closed
        let order = StrictPoset::transitive_closure(&[(0, 1)], 2).unwrap();
        let bad = Wall::from_parts_unchecked(2, vec![m(&[1]), m(&[2])], order);
        assert_eq!(bad.validate(), Err(Violation::NonCanonicalOrder { a: 0, b: 1 }));
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let a = Wall::from_relations(2, &[m(&[1, 2]), m(&[1])], &[(0, 1)]).unwrap();
        let b = Wall::from_relations(2, &[m(&[1]), m(&[1, 2])], &[(1, 0)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.canonical_form(), a);
        let w = four_brick();
        for perm in permutations(4) {
            let bricks: Vec<u64> = perm.iter().map(|&i| w.bricks()[i]).collect();
            let mut inv = [0usize; 4];
            for (i, &p) in perm.iter().enumerate() {
                inv[p] = i;
            }
            let pairs: Vec<_> = w.order().pairs().into_iter().map(|(x, y)| (inv[x], inv[y])).collect();
            assert_eq!(Wall::from_relations(4, &bricks, &pairs).unwrap(), w);
        }
    }

    fn brute_walls(n: usize, r: usize, connected: bool) -> usize {
        // every sequence, deduplicated through canonical forms
        let full = full_mask(n);
        let mut set = alloc::collections::BTreeSet::new();
        let total = (full as usize).pow(r as u32);
        for code in 0..total {
            let mut c = code;
            let seq: Vec<u64> = (0..r)
                .map(|_| {
                    let b = (c % full as usize) as u64 + 1;
                    c /= full as usize;
                    b
                })
                .collect();
            if let Ok(w) = Wall::from_brick_sequence(n, &seq) {
                if !connected || w.is_connected() {
                    set.insert(w);
                }
            }
        }
        set.len()
    }

    #[test]
    fn enumeration_examples() {
        let b = Budget::default();
        assert_eq!(enumerate_walls(1, 1, false, &b).unwrap().len(), 1);
        assert_eq!(enumerate_walls(2, 2, true, &b).unwrap().len(), 5);
        assert_eq!(brute_walls(2, 2, true), 5);
        assert_eq!(count_ordered_walls(2, 2, &b).unwrap(), 12);
        assert_eq!(count_ordered_walls(2, 1, &b).unwrap(), 1);
        for n in 1..=3 {
            for r in 1..=3 {
                for c in [false, true] {
                    assert_eq!(enumerate_walls(n, r, c, &b).unwrap().len(), brute_walls(n, r, c), "{n} {r} {c}");
                }
            }
        }
        assert!(matches!(enumerate_walls(9, 9, false, &b), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn three_brick_example_has_four_walls() {
        let mut target = vec![m(&[1, 2]), m(&[3, 4]), m(&[2, 3])];
        target.sort();
        let walls: Vec<_> = enumerate_walls(4, 3, false, &Budget::default())
            .unwrap()
            .into_iter()
            .filter(|w| {
                let mut b = w.bricks().to_vec();
                b.sort();
                b == target
            })
            .collect();
        assert_eq!(walls.len(), 4);
    }

    #[test]
    fn components_and_kappa() {
        let w = Wall::from_brick_sequence(4, &[m(&[1, 2]), m(&[1, 2]), m(&[3, 4])]).unwrap();
        assert_eq!(w.connected_components().len(), 2);
        assert_eq!(w.kappa().element_blocks(), vec![vec![1, 2], vec![3, 4]]);
        assert!(four_brick().is_connected());
        assert_eq!(four_brick().kappa().len(), 1);
        let anti = Wall::from_brick_sequence(2, &[m(&[1]), m(&[2])]).unwrap();
        assert_eq!(anti.connected_components().len(), 2);
    }

    #[test]
    fn partition_pair_walls() {
        let pp = |a: Vec<u64>, b: Vec<u64>, n| PartitionPair {
            first: SetPartition::new(n, a).unwrap(),
            second: SetPartition::new(n, b).unwrap(),
        };
        let w = wall_from_partition_pair(&pp(vec![0b11], vec![0b01, 0b10], 2));
        assert_eq!(w.len(), 3);
        assert_eq!(w.order().pairs().len(), 2);
        let w = wall_from_partition_pair(&pp(vec![1], vec![1], 1));
        assert_eq!(w.order().pairs(), vec![(0, 1)]);
        let p = pp(vec![0b011, 0b100], vec![0b001, 0b110], 3);
        assert!(p.is_connected());
        assert!(wall_from_partition_pair(&p).is_connected());
    }

    #[test]
    fn xconn_counts() {
        let b = Budget::default();
        assert_eq!(enumerate_xconn(1, &b).unwrap().len(), 1);
        assert_eq!(enumerate_xconn(2, &b).unwrap().len(), 3);
    }

    #[test]
    fn graft_examples() {
        let top = |n| Wall::from_brick_sequence(n, &[full_mask(n)]).unwrap();
        let g = graft(3, &[1, 2], &[2, 3], &top(2), &top(2)).unwrap();
        assert_eq!(g.bricks(), &[m(&[1, 2]), m(&[2, 3])]);
        assert!(g.is_connected());
        let v = graft(2, &[1, 2], &[1, 2], &top(2), &top(2)).unwrap();
        assert_eq!(v, vertical_product(&top(2), &top(2)).unwrap());
        assert_eq!(graft(3, &[1], &[3], &top(1), &top(1)), Err(Error::CoverageFailure));
        assert_eq!(graft(2, &[1], &[2], &top(1), &top(1)), Err(Error::EmptyOverlap));
    }

    #[test]
    fn action_is_right_action() {
        let w = four_brick();
        let perms: Vec<Vec<usize>> = permutations(4).into_iter().map(|p| p.into_iter().map(|x| x + 1).collect()).collect();
        assert_eq!(aut_action(&w, &[1, 2, 3, 4]).unwrap(), w);
        for s in &perms {
            let ws = aut_action(&w, s).unwrap();
            assert!(ws.is_connected());
            for t in &perms {
                let st: Vec<usize> = (0..4).map(|i| s[t[i] - 1]).collect();
                assert_eq!(aut_action(&ws, t).unwrap(), aut_action(&w, &st).unwrap());
            }
        }
        assert_eq!(aut_action(&w, &[1, 1, 2, 3]), Err(Error::NotAPermutation(4)));
    }
}
