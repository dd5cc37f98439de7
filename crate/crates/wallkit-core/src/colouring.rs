//! Colourings of a wall and the colouring chain complex over the integers.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{matmul, rank_exact, smith_normal_form, IntMatrix};
use crate::poset::{bits, enumerate_partitions, SetPartition, StrictPoset};
use crate::wall::Wall;
use crate::{Budget, Error, Result};

/// Largest brick count accepted by colouring enumeration by default.
pub const MAX_COLOURING_BRICKS: usize = 8;

/// A colouring, stored as its partition of brick indices into fibers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Colouring {
    fibers: SetPartition,
}

impl Colouring {
    pub fn fibers(&self) -> &SetPartition {
        &self.fibers
    }

    /// Number of colours.
    pub fn degree(&self) -> usize {
        self.fibers.len()
    }

    /// One colour per brick.
    pub fn top(w: &Wall) -> Colouring {
        Colouring { fibers: SetPartition::discrete(w.len()) }
    }

    /// Checks both colouring clauses for `fibers` on `w`.
    pub fn new(w: &Wall, fibers: SetPartition) -> Result<Colouring> {
        if fibers.size() != w.len() || !is_colouring(w, &fibers) {
            return Err(Error::InvalidMerge);
        }
        Ok(Colouring { fibers })
    }
}

fn fiber_connected(w: &Wall, mask: u64) -> bool {
    w.restrict_bricks(mask).is_connected()
}

/// Order induced on fibers, or `None` when it has a cycle.
fn quotient_order(w: &Wall, fibers: &SetPartition) -> Option<StrictPoset> {
    let blocks = fibers.blocks();
    let up = blocks
        .iter()
        .enumerate()
        .map(|(f, &fm)| {
            let above = bits(fm).fold(0u64, |m, a| m | w.order().above(a));
            blocks.iter().enumerate().filter(|&(g, &gm)| g != f && gm & above != 0).fold(0u64, |m, (g, _)| m | 1 << g)
        })
        .collect();
    StrictPoset::close_rows(up).ok()
}

fn is_colouring(w: &Wall, fibers: &SetPartition) -> bool {
    fibers.blocks().iter().all(|&f| fiber_connected(w, f)) && quotient_order(w, fibers).is_some()
}

/// Colourings graded by their number of colours; entry `k` holds degree `k`.
pub fn enumerate_colourings(w: &Wall, budget: &Budget) -> Result<Vec<Vec<Colouring>>> {
    if w.len() > budget.max_bricks.max(MAX_COLOURING_BRICKS) {
        return Err(Error::BudgetExceeded { what: "colourings", requested: w.len() });
    }
    let mut graded = vec![Vec::new(); w.len() + 1];
    for p in enumerate_partitions(w.len()) {
        if is_colouring(w, &p) {
            graded[p.len()].push(Colouring { fibers: p });
        }
    }
    for g in graded.iter_mut() {
        g.sort();
    }
    Ok(graded)
}

/// Brick indices in the order `≺_W`: by height, then least element.
pub fn brick_total_order(w: &Wall) -> Vec<usize> {
    let keys = w.brick_keys();
    let mut idx: Vec<usize> = (0..w.len()).collect();
    idx.sort_by_key(|&i| keys[i]);
    idx
}

fn brick_ranks(w: &Wall) -> Vec<usize> {
    let mut rank = vec![0; w.len()];
    for (r, i) in brick_total_order(w).into_iter().enumerate() {
        rank[i] = r;
    }
    rank
}

fn min_rank(ranks: &[usize], mask: u64) -> usize {
    bits(mask).map(|i| ranks[i]).min().expect("nonempty fiber")
}

/// Position of each fiber in the colour order `≺_φ` (by the `≺_W`-least brick).
pub fn colour_positions(w: &Wall, c: &Colouring) -> Vec<usize> {
    let ranks = brick_ranks(w);
    let keys: Vec<usize> = c.fibers.blocks().iter().map(|&f| min_rank(&ranks, f)).collect();
    keys.iter().map(|k| keys.iter().filter(|&x| x < k).count()).collect()
}

/// Covering pairs `(x, y)` of fibers, sorted by the `≺_W`-least brick of `x ∪ y`.
pub fn succ_colour_pairs(w: &Wall, c: &Colouring) -> Vec<(usize, usize)> {
    let q = quotient_order(w, &c.fibers).expect("valid colouring");
    let ranks = brick_ranks(w);
    let blocks = c.fibers.blocks();
    let mut pairs = q.succ_pairs();
    pairs.sort_by_key(|&(x, y)| (min_rank(&ranks, blocks[x] | blocks[y]), x, y));
    pairs
}

/// Identifies the two colours of a pair and revalidates.
pub fn merge_colour_pair(w: &Wall, c: &Colouring, pair: (usize, usize)) -> Result<Colouring> {
    let blocks = c.fibers.blocks();
    let (x, y) = pair;
    if x >= blocks.len() || y >= blocks.len() || x == y {
        return Err(Error::InvalidMerge);
    }
    let merged: Vec<u64> =
        blocks.iter().enumerate().filter(|&(i, _)| i != y).map(|(i, &b)| if i == x { b | blocks[y] } else { b }).collect();
    let fibers = SetPartition::new(w.len(), merged).map_err(|_| Error::InvalidMerge)?;
    Colouring::new(w, fibers)
}

/// Exponent of the sign of merging the successor pair `x < y`.
///
/// `#{z ≺ y, z ≠ x} + #{z : x ≺ z ≺ y, (z, y) covering}` in the colour order.
pub fn sign_lambda(w: &Wall, c: &Colouring, pair: (usize, usize)) -> usize {
    let pos = colour_positions(w, c);
    let succ = succ_colour_pairs(w, c);
    let (x, y) = pair;
    let n = pos.len();
    let first = (0..n).filter(|&z| pos[z] < pos[y] && z != x).count();
    let second = (0..n).filter(|&z| pos[x] < pos[z] && pos[z] < pos[y] && succ.contains(&(z, y))).count();
    first + second
}

/// Signs used when assembling boundaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignRule {
    /// `(-1)^Λ`, then corrected degree by degree so that every diamond of
    /// merges cancels. Equals `Lambda` on every wall where `Lambda` squares to zero.
    #[default]
    Incidence,
    /// `(-1)^Λ` taken literally.
    Lambda,
    /// Every sign positive. Only useful as a negative control.
    AllPositive,
}

#[derive(Clone, Debug)]
pub struct IntegerChainComplex {
    /// `basis[k]` lists the colourings with `k` colours; `basis[0]` is empty.
    pub basis: Vec<Vec<Colouring>>,
    /// `boundaries[k]` is `∂_k : C_k → C_{k-1}` with rows indexed by `basis[k-1]`.
    pub boundaries: Vec<IntMatrix>,
}

impl IntegerChainComplex {
    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    /// `|Col_k|` for `k = 1..=top`.
    pub fn graded_counts(&self) -> Vec<usize> {
        self.basis.iter().skip(1).map(|b| b.len()).collect()
    }

    pub fn euler(&self) -> i64 {
        self.basis.iter().enumerate().map(|(k, b)| if k % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) }).sum()
    }

    /// First degree `k` with `∂_{k-1} ∂_k ≠ 0`, if any.
    pub fn d_squared_failure(&self) -> Option<usize> {
        (2..self.boundaries.len()).find(|&k| !matmul(&self.boundaries[k - 1], &self.boundaries[k]).expect("composable").is_zero())
    }
}

/// The colouring complex, with `∂² = 0` checked.
pub fn build_complex(w: &Wall, budget: &Budget) -> Result<IntegerChainComplex> {
    let cx = build_complex_with(w, budget, SignRule::Incidence)?;
    if let Some(k) = cx.d_squared_failure() {
        return Err(Error::SignConventionBroken(k));
    }
    Ok(cx)
}

/// One boundary column: `(row, sign)` per merge.
type Column = Vec<(usize, i8)>;

/// The colouring complex under `rule`, without the `∂² = 0` check.
pub fn build_complex_with(w: &Wall, budget: &Budget, rule: SignRule) -> Result<IntegerChainComplex> {
    let basis = enumerate_colourings(w, budget)?;
    let mut columns: Vec<Vec<Column>> = vec![Vec::new()];
    for k in 1..basis.len() {
        let mut cols = Vec::with_capacity(basis[k].len());
        for c in &basis[k] {
            let mut col = Vec::new();
            for pair in succ_colour_pairs(w, c) {
                let merged = merge_colour_pair(w, c, pair)?;
                let row = basis[k - 1].binary_search(&merged).map_err(|_| Error::InvalidMerge)?;
                let sign = match rule {
                    SignRule::AllPositive => 1,
                    _ if sign_lambda(w, c, pair) % 2 == 1 => -1,
                    _ => 1,
                };
                col.push((row, sign));
            }
            if rule == SignRule::Incidence && k >= 3 {
                balance_column(&mut col, &columns[k - 1]).ok_or(Error::SignConventionBroken(k))?;
            }
            cols.push(col);
        }
        columns.push(cols);
    }
    let boundaries = columns
        .iter()
        .enumerate()
        .map(|(k, cols)| {
            let rows = if k == 0 { 0 } else { basis[k - 1].len() };
            let mut m = IntMatrix::zeros(rows, cols.len());
            for (j, col) in cols.iter().enumerate() {
                for &(i, s) in col {
                    m.set(i, j, BigInt::from(s));
                }
            }
            m
        })
        .collect();
    Ok(IntegerChainComplex { basis, boundaries })
}

/// Flips signs in `col` so that `∂∂` vanishes on it, given the boundaries
/// `lower` of its faces. Each group of faces linked by a shared face keeps
/// the sign of its first member; `None` if the constraints are inconsistent.
fn balance_column(col: &mut Column, lower: &[Column]) -> Option<()> {
    let n = col.len();
    // links[i] = (j, p): faces i and j share a face and need sign(i)·sign(j) = p
    let mut links: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            for &(x, si) in &lower[col[i].0] {
                if let Some(&(_, sj)) = lower[col[j].0].iter().find(|&&(y, _)| y == x) {
                    links[i].push((j, -si * sj));
                    links[j].push((i, -si * sj));
                }
            }
        }
    }
    let mut fixed = vec![false; n];
    for start in 0..n {
        if fixed[start] {
            continue;
        }
        fixed[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for &(j, p) in &links[i] {
                let want = col[i].1 * p;
                if !fixed[j] {
                    fixed[j] = true;
                    col[j].1 = want;
                    stack.push(j);
                } else if col[j].1 != want {
                    return None;
                }
            }
        }
    }
    Some(())
}

/// Homology in one degree: the rational Betti number and the torsion coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

/// Homology in degrees `1..=top`.
pub fn betti_numbers(cx: &IntegerChainComplex) -> Vec<Homology> {
    let top = cx.top_degree();
    let ranks: Vec<usize> = cx.boundaries.iter().map(rank_exact).collect();
    (1..=top)
        .map(|k| {
            let dim = cx.basis[k].len();
            let out_rank = if k >= 1 { ranks[k] } else { 0 };
            let in_rank = if k < top { ranks[k + 1] } else { 0 };
            let torsion = if k < top {
                smith_normal_form(&cx.boundaries[k + 1]).into_iter().filter(|d| !d.is_one() && !d.is_zero()).collect()
            } else {
                Vec::new()
            };
            Homology { degree: k, betti: dim - out_rank - in_rank, torsion }
        })
        .collect()
}

/// Convolution of graded counts and of Poincaré polynomials of factors.
fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Compares a disconnected wall's complex with the tensor product of its
/// components' complexes: graded counts and Betti numbers must agree.
///
/// Every complex here is torsion-free, so the Künneth formula reduces to a
/// convolution of Poincaré polynomials; torsion anywhere makes the check fail.
pub fn complex_tensor_check(w: &Wall, budget: &Budget) -> Result<bool> {
    let whole = build_complex(w, budget)?;
    let whole_h = betti_numbers(&whole);
    let mut counts = vec![1usize];
    let mut poincare = vec![1usize];
    for comp in w.connected_components().blocks() {
        let part = component_wall(w, *comp);
        let cx = build_complex(&part, budget)?;
        let h = betti_numbers(&cx);
        if h.iter().any(|x| !x.torsion.is_empty()) {
            return Ok(false);
        }
        let mut c = vec![0];
        c.extend(cx.graded_counts());
        counts = convolve(&counts, &c);
        let mut p = vec![0];
        p.extend(h.iter().map(|x| x.betti));
        poincare = convolve(&poincare, &p);
    }
    let mut c = vec![0];
    c.extend(whole.graded_counts());
    let mut p = vec![0];
    p.extend(whole_h.iter().map(|x| x.betti));
    let trim = |mut v: Vec<usize>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let torsion_free = whole_h.iter().all(|x| x.torsion.is_empty());
    Ok(torsion_free && trim(c) == trim(counts) && trim(p) == trim(poincare))
}

/// The wall formed by one component, over the elements it covers.
pub fn component_wall(w: &Wall, comp: u64) -> Wall {
    let cover = bits(comp).fold(0u64, |m, i| m | w.bricks()[i]);
    let elems: Vec<usize> = bits(cover).collect();
    let squeeze = |b: u64| elems.iter().enumerate().filter(|&(_, &e)| b >> e & 1 == 1).fold(0u64, |m, (j, _)| m | 1 << j);
    let bricks = bits(comp).map(|i| squeeze(w.bricks()[i])).collect();
    Wall::from_parts_unchecked(elems.len(), bricks, w.order().restrict(comp)).canonical_form()
}
