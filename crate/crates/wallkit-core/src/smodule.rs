//! Dimension-level calculus for reduced modules and bimodules over the
//! symmetric groups: the products, the free protoperad and induction.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poset::{bits, components, enumerate_partitions, full_mask, SetPartition};
use crate::wall::{enumerate_walls, enumerate_xconn, kappa_of_pair};
use crate::{Budget, Error, Result};

/// Largest arity at which [`boxtimes_dims`] cross-checks against enumeration.
pub const ORACLE_ARITY: usize = 6;

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Dimensions indexed by arity `1..=max_arity`; arity 0 is always 0.
#[derive(Clone, Debug, Default)]
pub struct DimSeq {
    dims: Vec<BigUint>,
}

impl PartialEq for DimSeq {
    fn eq(&self, other: &Self) -> bool {
        let n = self.dims.len().max(other.dims.len());
        (1..=n).all(|k| self.get(k) == other.get(k))
    }
}

impl Eq for DimSeq {}

impl DimSeq {
    /// `dims[0]` is the dimension at arity 1.
    pub fn new(dims: Vec<BigUint>) -> Self {
        DimSeq { dims }
    }

    pub fn from_u64s(dims: &[u64]) -> Self {
        DimSeq { dims: dims.iter().map(|&d| BigUint::from(d)).collect() }
    }

    pub fn zero(max_arity: usize) -> Self {
        DimSeq { dims: vec![BigUint::zero(); max_arity] }
    }

    /// Dimension 1 at arity 1 only: the unit of the connected composition product.
    pub fn unit(max_arity: usize) -> Self {
        Self::delta(1, max_arity)
    }

    /// Dimension 1 at arity `k` only.
    pub fn delta(k: usize, max_arity: usize) -> Self {
        let mut d = Self::zero(max_arity.max(k));
        d.dims[k - 1] = BigUint::one();
        d
    }

    pub fn max_arity(&self) -> usize {
        self.dims.len()
    }

    pub fn get(&self, n: usize) -> BigUint {
        if n == 0 {
            return BigUint::zero();
        }
        self.dims.get(n - 1).cloned().unwrap_or_default()
    }

    pub fn dims(&self) -> &[BigUint] {
        &self.dims
    }

    /// Same values, support cut or zero-padded to `max_arity`.
    pub fn resized(&self, max_arity: usize) -> Self {
        DimSeq { dims: (1..=max_arity).map(|k| self.get(k)).collect() }
    }

    pub fn sum(&self, other: &DimSeq) -> DimSeq {
        let n = self.max_arity().max(other.max_arity());
        DimSeq { dims: (1..=n).map(|k| self.get(k) + other.get(k)).collect() }
    }
}

impl fmt::Display for DimSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DimSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty dimension sequence".to_string()));
        }
        s.split(',')
            .map(|t| BigUint::from_str(t.trim()).map_err(|_| Error::Parse(alloc::format!("bad dimension {t:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(DimSeq::new)
    }
}

pub fn hadamard_dims(p: &DimSeq, q: &DimSeq) -> DimSeq {
    let n = p.max_arity().max(q.max_arity());
    DimSeq { dims: (1..=n).map(|k| p.get(k) * q.get(k)).collect() }
}

/// `d(n) = sum_{k=1}^{n-1} C(n,k) p(k) q(n-k)`.
pub fn conc_dims(p: &DimSeq, q: &DimSeq, max_arity: usize) -> DimSeq {
    let dims = (1..=max_arity).map(|n| (1..n).map(|k| binomial(n, k) * p.get(k) * q.get(n - k)).sum()).collect();
    DimSeq { dims }
}

/// Dimensions of the free commutative monoid: sums over set partitions of
/// products of block dimensions.
pub fn s_dims(p: &DimSeq, max_arity: usize) -> DimSeq {
    let mut s = vec![BigUint::one()];
    for n in 1..=max_arity {
        let v = (1..=n).map(|k| binomial(n - 1, k - 1) * p.get(k) * &s[n - k]).sum();
        s.push(v);
    }
    s.remove(0);
    DimSeq { dims: s }
}

/// Inverse of [`s_dims`].
pub fn s_log(s: &DimSeq) -> Result<DimSeq> {
    let n_max = s.max_arity();
    let s_at = |n: usize| -> BigInt {
        if n == 0 {
            BigInt::one()
        } else {
            BigInt::from(s.get(n))
        }
    };
    let mut g: Vec<BigInt> = vec![BigInt::zero()];
    for n in 1..=n_max {
        let mut v = s_at(n);
        for k in 1..n {
            v -= BigInt::from(binomial(n - 1, k - 1)) * &g[k] * s_at(n - k);
        }
        if v.sign() == Sign::Minus {
            return Err(Error::NegativeDimension(n));
        }
        g.push(v);
    }
    Ok(DimSeq { dims: g.into_iter().skip(1).map(|x| x.to_biguint().expect("checked sign")).collect() })
}

/// Connected composition product by the partition transform.
pub fn boxtimes_fast(p: &DimSeq, q: &DimSeq, max_arity: usize) -> Result<DimSeq> {
    s_log(&hadamard_dims(&s_dims(p, max_arity), &s_dims(q, max_arity)))
}

/// Connected composition product by summing over connected partition pairs.
pub fn boxtimes_oracle(p: &DimSeq, q: &DimSeq, max_arity: usize) -> Result<DimSeq> {
    let unlimited = Budget::UNLIMITED;
    let mut dims = Vec::with_capacity(max_arity);
    for n in 1..=max_arity {
        let mut d = BigUint::zero();
        for pair in enumerate_xconn(n, &unlimited)? {
            let a: BigUint = pair.first.blocks().iter().map(|b| p.get(b.count_ones() as usize)).product();
            if a.is_zero() {
                continue;
            }
            let b: BigUint = pair.second.blocks().iter().map(|b| q.get(b.count_ones() as usize)).product();
            d += a * b;
        }
        dims.push(d);
    }
    Ok(DimSeq { dims })
}

/// Connected composition product, checked against enumeration up to [`ORACLE_ARITY`].
pub fn boxtimes_dims(p: &DimSeq, q: &DimSeq, max_arity: usize) -> Result<DimSeq> {
    let fast = boxtimes_fast(p, q, max_arity)?;
    let checked = max_arity.min(ORACLE_ARITY);
    let slow = boxtimes_oracle(p, q, checked)?;
    if let Some(n) = (1..=checked).find(|&n| fast.get(n) != slow.get(n)) {
        return Err(Error::OracleMismatch(n));
    }
    Ok(fast)
}

fn brick_weight(gen: &DimSeq, masks: impl Iterator<Item = u64>) -> BigUint {
    masks.map(|b| gen.get(b.count_ones() as usize)).product()
}

/// Weight-`rho` part of the free protoperad at arity `n`, summed over connected walls.
pub fn free_proto_dims(gen: &DimSeq, rho: usize, n: usize, budget: &Budget) -> Result<BigUint> {
    if rho > budget.max_weight {
        return Err(Error::BudgetExceeded { what: "weight", requested: rho });
    }
    let walls = enumerate_walls(n, rho, true, &Budget { max_bricks: budget.max_weight, ..*budget })?;
    Ok(walls.iter().map(|w| brick_weight(gen, w.bricks().iter().copied())).sum())
}

/// Weight-2 part: ordered pairs `(K, L)` with `K ∪ L = S` and `K ∩ L ≠ ∅`.
pub fn free_weight2_closed(gen: &DimSeq, n: usize) -> BigUint {
    let full = full_mask(n);
    let mut total = BigUint::zero();
    for k in 1..=full {
        for l in 1..=full {
            if k | l == full && k & l != 0 {
                total += gen.get(k.count_ones() as usize) * gen.get(l.count_ones() as usize);
            }
        }
    }
    total
}

/// Weight-`rho` part of the free protoperad at arity `n` by levelled partitions.
///
/// Each level is a partition of `1..=n` with a nonempty set of marked blocks;
/// unmarked blocks are singletons, every marked block meets the marked blocks
/// of the level below, and the iterated projection of all levels is `{S}`.
pub fn free_proto_dims_level_oracle(gen: &DimSeq, rho: usize, n: usize, budget: &Budget) -> Result<BigUint> {
    if n > budget.max_ground.min(4) || rho > budget.max_weight.min(4) {
        return Err(Error::BudgetExceeded { what: "level oracle", requested: n.max(rho) });
    }
    let levels: Vec<(SetPartition, u64)> = enumerate_partitions(n)
        .into_iter()
        .flat_map(|p| {
            let forced = p.blocks().iter().enumerate().filter(|(_, b)| b.count_ones() > 1).fold(0u64, |m, (i, _)| m | 1 << i);
            let free = full_mask(p.len()) & !forced;
            // marked sets: all non-singletons plus any subset of the singletons
            let mut choices = Vec::new();
            let mut sub = free;
            loop {
                if forced | sub != 0 {
                    choices.push((p.clone(), forced | sub));
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            choices
        })
        .collect();
    let mut total = BigUint::zero();
    let mut stack: Vec<(usize, u64, SetPartition, BigUint)> = Vec::new();
    for (p, marked) in &levels {
        let w = marked.count_ones() as usize;
        if w <= rho {
            let union = bits(*marked).fold(0, |m, i| m | p.blocks()[i]);
            let weight = brick_weight(gen, bits(*marked).map(|i| p.blocks()[i]));
            stack.push((rho - w, union, p.clone(), weight));
        }
    }
    while let Some((left, below, proj, weight)) = stack.pop() {
        if weight.is_zero() {
            continue;
        }
        if left == 0 {
            if proj.len() == 1 {
                total += weight;
            }
            continue;
        }
        for (p, marked) in &levels {
            let w = marked.count_ones() as usize;
            if w > left || bits(*marked).any(|i| p.blocks()[i] & below == 0) {
                continue;
            }
            let union = bits(*marked).fold(0, |m, i| m | p.blocks()[i]);
            let next = kappa_of_pair(&proj, p);
            let wt = &weight * brick_weight(gen, bits(*marked).map(|i| p.blocks()[i]));
            stack.push((left - w, union, next, wt));
        }
    }
    Ok(total)
}

/// How the symmetric groups act on a grid's distinguished basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    /// Free on both sides, as for induced bimodules.
    Free,
    /// Both groups act trivially.
    Trivial,
    /// Nothing is asserted.
    Unspecified,
}

/// Dimensions indexed by (out-arity, in-arity), both positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimodDimGrid {
    dims: BTreeMap<(usize, usize), BigUint>,
    action: Action,
}

impl BimodDimGrid {
    pub fn new(action: Action) -> Self {
        BimodDimGrid { dims: BTreeMap::new(), action }
    }

    pub fn action(&self) -> Action {
        self.action
    }

    pub fn with_action(mut self, action: Action) -> Self {
        self.action = action;
        self
    }

    pub fn get(&self, m: usize, n: usize) -> BigUint {
        self.dims.get(&(m, n)).cloned().unwrap_or_default()
    }

    /// Ignores zero values and the reduced row and column `m = 0`, `n = 0`.
    pub fn set(&mut self, m: usize, n: usize, v: BigUint) {
        if m == 0 || n == 0 || v.is_zero() {
            self.dims.remove(&(m, n));
        } else {
            self.dims.insert((m, n), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigUint)> {
        self.dims.iter()
    }

    fn max_out(&self) -> usize {
        self.dims.keys().map(|k| k.0).max().unwrap_or(0)
    }

    fn max_in(&self) -> usize {
        self.dims.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Unit of the composition product: `n!` on the diagonal.
    pub fn identity(max_arity: usize) -> Self {
        let mut g = Self::new(Action::Free);
        for n in 1..=max_arity {
            g.set(n, n, factorial(n));
        }
        g
    }
}

/// `Ind V(n, n) = n! V(n)`, zero off the diagonal.
pub fn ind_dims(v: &DimSeq) -> BimodDimGrid {
    let mut g = BimodDimGrid::new(Action::Free);
    for n in 1..=v.max_arity() {
        g.set(n, n, factorial(n) * v.get(n));
    }
    g
}

/// Restriction to the diagonal.
pub fn res_dims(g: &BimodDimGrid) -> DimSeq {
    let n = g.max_out().max(g.max_in());
    DimSeq::new((1..=n).map(|k| g.get(k, k)).collect())
}

/// Composition product `(P □ Q)(m, n) = Σ_N dim P(m, N) ⊗_{𝔖_N} Q(N, n)`.
///
/// A free side gives `P(m,N)·Q(N,n)/N!`; two trivial sides give the plain
/// product. Any other combination has no dimension-level formula.
pub fn bimod_hadamard_dims(p: &BimodDimGrid, q: &BimodDimGrid) -> Result<BimodDimGrid> {
    let free = p.action == Action::Free || q.action == Action::Free;
    let trivial = p.action == Action::Trivial && q.action == Action::Trivial;
    if !free && !trivial {
        return Err(Error::FreenessNotAsserted);
    }
    let action = match (p.action, q.action) {
        (Action::Free, Action::Free) => Action::Free,
        (Action::Trivial, Action::Trivial) => Action::Trivial,
        _ => Action::Unspecified,
    };
    let mut out = BimodDimGrid::new(action);
    for (&(m, big_n), pv) in &p.dims {
        for (&(big_n2, n), qv) in &q.dims {
            if big_n != big_n2 {
                continue;
            }
            let prod = pv * qv;
            let v = if free {
                let (quot, rem) = prod.div_rem(&factorial(big_n));
                if !rem.is_zero() {
                    return Err(Error::NotFree { value_arity: big_n, divisor_arity: big_n });
                }
                quot
            } else {
                prod
            };
            let cur = out.get(m, n);
            out.set(m, n, cur + v);
        }
    }
    Ok(out)
}

/// Concatenation product `Σ C(m,a) C(n,b) p(a,b) q(m-a,n-b)`.
pub fn bimod_conc_dims(p: &BimodDimGrid, q: &BimodDimGrid) -> BimodDimGrid {
    let action = if p.action == Action::Free && q.action == Action::Free { Action::Free } else { Action::Unspecified };
    let mut out = BimodDimGrid::new(action);
    for (&(a, b), pv) in &p.dims {
        for (&(c, d), qv) in &q.dims {
            let (m, n) = (a + c, b + d);
            let v = binomial(m, a) * binomial(n, b) * pv * qv;
            let cur = out.get(m, n);
            out.set(m, n, cur + v);
        }
    }
    out
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    let mut out = Vec::with_capacity(sizes.len() + 1);
    out.push(0);
    for &s in sizes {
        acc += s;
        out.push(acc);
    }
    out
}

fn group_of(offs: &[usize], i: usize) -> usize {
    offs.windows(2).position(|w| w[0] <= i && i < w[1]).expect("index inside the grouping")
}

/// Whether the graph joining input group of `i` to output group of `sigma[i]` is connected.
///
/// Inputs are grouped consecutively by `alpha`, outputs by `beta`; permutations
/// are 0-based one-line vectors.
pub fn is_connected_permutation(sigma: &[usize], alpha: &[usize], beta: &[usize]) -> bool {
    let (ia, ob) = (offsets(alpha), offsets(beta));
    let a = alpha.len();
    let edges: Vec<(usize, usize)> = (0..sigma.len()).map(|i| (group_of(&ia, i), a + group_of(&ob, sigma[i]))).collect();
    let adjacent = |x: usize, y: usize| edges.iter().any(|&(s, t)| (s == x && t == y) || (s == y && t == x));
    components(a + beta.len(), adjacent).len() == 1
}

/// All `(alpha, beta)`-connected permutations in lexicographic order.
pub fn connected_permutations(alpha: &[usize], beta: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n: usize = alpha.iter().sum();
    if n != beta.iter().sum::<usize>() || alpha.contains(&0) || beta.contains(&0) {
        return Err(Error::SizeMismatch);
    }
    Ok(crate::poset::permutations(n).into_iter().filter(|s| is_connected_permutation(s, alpha, beta)).collect())
}

/// An ordered partition of `0..n` whose blocks carry a listing order.
pub type ListedPartition = Vec<Vec<usize>>;

/// Lists each block of an ordered partition in increasing order.
pub fn listed(blocks: &[u64]) -> ListedPartition {
    blocks.iter().map(|&b| bits(b).collect()).collect()
}

/// `φ(K, J)`: position in the reading of `J` to position in the reading of `K`.
///
/// The reading lists the blocks in order, each block in its own listing
/// order. The result is connected for the grouping (sizes of `J`, sizes of
/// `K`) whenever the pair is.
pub fn partition_pair_to_connected_permutation(k: &[Vec<usize>], j: &[Vec<usize>]) -> Result<Vec<usize>> {
    let rk: Vec<usize> = k.iter().flatten().copied().collect();
    let rj: Vec<usize> = j.iter().flatten().copied().collect();
    let n = rk.len();
    let covers = |r: &[usize]| r.iter().try_fold(0u64, |m, &x| (x < n && m >> x & 1 == 0).then_some(m | 1 << x)) == Some(full_mask(n));
    if rj.len() != n || n > 64 || !covers(&rk) || !covers(&rj) {
        return Err(Error::SizeMismatch);
    }
    let mut pos_k = vec![0usize; n];
    for (p, &x) in rk.iter().enumerate() {
        pos_k[x] = p;
    }
    Ok(rj.iter().map(|&x| pos_k[x]).collect())
}

/// `ψ(σ)`: output group `t` listed as `σ^{-1}` of its positions in order, and
/// consecutive input groups.
pub fn section(sigma: &[usize], kbar: &[usize], jbar: &[usize]) -> Result<(ListedPartition, ListedPartition)> {
    let n = sigma.len();
    if kbar.iter().sum::<usize>() != n || jbar.iter().sum::<usize>() != n {
        return Err(Error::SizeMismatch);
    }
    let mut inv = vec![0usize; n];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    let ko = offsets(kbar);
    let k = ko.windows(2).map(|w| (w[0]..w[1]).map(|t| inv[t]).collect()).collect();
    let jo = offsets(jbar);
    let j = jo.windows(2).map(|w| (w[0]..w[1]).collect()).collect();
    Ok((k, j))
}

/// Ordered partitions of `1..=n` (as masks) whose block sizes are `sizes`.
fn ordered_with_sizes(n: usize, sizes: &[usize]) -> Vec<Vec<u64>> {
    fn rec(free: u64, sizes: &[usize], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let Some((&s, rest)) = sizes.split_first() else {
            if free == 0 {
                out.push(cur.clone());
            }
            return;
        };
        let mut sub = free;
        loop {
            if sub.count_ones() as usize == s {
                cur.push(sub);
                rec(free & !sub, rest, cur, out);
                cur.pop();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
    let mut out = Vec::new();
    rec(full_mask(n), sizes, &mut Vec::new(), &mut out);
    out
}

/// `dim (Ind V ⊠ Ind W)(n, n)` by enumerating the index set before the
/// quotient by `𝔖_n`, then dividing by `n!` (the action is free).
pub fn val_boxtimes_induced_dims(v: &DimSeq, w: &DimSeq, n: usize, budget: &Budget) -> Result<BigUint> {
    if n == 0 || n > budget.max_ground.min(4) {
        return Err(Error::BudgetExceeded { what: "induced product", requested: n });
    }
    let parts = enumerate_partitions(n);
    let side = |k: &SetPartition, d: &DimSeq| -> BigUint {
        let sizes: Vec<usize> = k.blocks().iter().map(|b| b.count_ones() as usize).collect();
        ordered_with_sizes(n, &sizes)
            .iter()
            .map(|outer| outer.iter().map(|b| factorial(b.count_ones() as usize) * d.get(b.count_ones() as usize)).product::<BigUint>())
            .sum()
    };
    let left: Vec<BigUint> = parts.iter().map(|k| side(k, v)).collect();
    let right: Vec<BigUint> = parts.iter().map(|k| side(k, w)).collect();
    let mut total = BigUint::zero();
    for (a, ka) in parts.iter().enumerate() {
        for (b, kb) in parts.iter().enumerate() {
            if kappa_of_pair(ka, kb).len() == 1 {
                total += &left[a] * &right[b];
            }
        }
    }
    let (q, r) = total.div_rem(&factorial(n));
    if !r.is_zero() {
        return Err(Error::NotFree { value_arity: n, divisor_arity: n });
    }
    Ok(q)
}

/// Renders a grid value map with "m,n" keys.
pub fn grid_key(m: usize, n: usize) -> String {
    alloc::format!("{m},{n}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[u64]) -> DimSeq {
        DimSeq::from_u64s(v)
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn hadamard_and_conc() {
        assert_eq!(hadamard_dims(&d(&[1, 1, 1]), &d(&[1, 1, 1])), d(&[1, 1, 1]));
        assert_eq!(hadamard_dims(&d(&[0, 1]), &d(&[0, 3])), d(&[0, 3]));
        let delta1 = DimSeq::delta(1, 3);
        assert_eq!(conc_dims(&delta1, &delta1, 3), d(&[0, 2, 0]));
        assert_eq!(conc_dims(&d(&[3, 1]), &d(&[2, 5]), 1).get(1), big(0));
    }

    fn brute_s(p: &DimSeq, n: usize) -> BigUint {
        enumerate_partitions(n).iter().map(|q| q.blocks().iter().map(|b| p.get(b.count_ones() as usize)).product::<BigUint>()).sum()
    }

    #[test]
    fn s_dims_examples() {
        assert_eq!(s_dims(&DimSeq::delta(1, 1), 5), d(&[1, 1, 1, 1, 1]));
        assert_eq!(s_dims(&d(&[1, 1]), 2).get(2), big(2));
        let p = d(&[2, 0, 3, 1, 5]);
        for n in 1..=6 {
            assert_eq!(s_dims(&p, 6).get(n), brute_s(&p, n));
        }
        assert_eq!(s_log(&s_dims(&p, 8)).unwrap(), p);
        assert_eq!(s_log(&d(&[1, 0])), Err(Error::NegativeDimension(2)));
    }

    #[test]
    fn boxtimes_examples() {
        let p = d(&[1, 2, 0, 1]);
        assert_eq!(boxtimes_dims(&p, &DimSeq::unit(4), 4).unwrap(), p);
        let delta2 = DimSeq::delta(2, 4);
        let prod = boxtimes_dims(&delta2, &delta2, 4).unwrap();
        assert_eq!(prod.get(2), big(1));
        assert_eq!(prod.get(3), big(0));
        // weight-(1,1) pairs: one block of size 2 on each side
        let q = d(&[1, 1, 2]);
        assert_eq!(boxtimes_dims(&p, &q, 5).unwrap(), boxtimes_dims(&q, &p, 5).unwrap());
    }

    #[test]
    fn free_proto_examples() {
        let b = Budget::default();
        let delta2 = DimSeq::delta(2, 4);
        let got: Vec<BigUint> = (2..=4).map(|n| free_proto_dims(&delta2, 2, n, &b).unwrap()).collect();
        assert_eq!(got, vec![big(1), big(6), big(0)]);
        assert_eq!(free_weight2_closed(&delta2, 3), big(6));
        assert_eq!(free_proto_dims(&DimSeq::delta(1, 1), 2, 1, &b).unwrap(), big(1));
        assert_eq!(free_weight2_closed(&DimSeq::delta(1, 1), 1), big(1));
        assert_eq!(free_proto_dims_level_oracle(&DimSeq::delta(1, 1), 3, 1, &b).unwrap(), big(1));
        assert_eq!(free_proto_dims_level_oracle(&delta2, 2, 3, &b).unwrap(), big(6));
        let g = d(&[1, 1]);
        assert_eq!(free_weight2_closed(&g, 2), free_proto_dims(&g, 2, 2, &b).unwrap());
        for n in 1..=4 {
            assert_eq!(free_proto_dims(&g, 1, n, &b).unwrap(), g.get(n));
            assert_eq!(free_proto_dims_level_oracle(&g, 1, n, &b).unwrap(), g.get(n));
        }
    }

    #[test]
    fn ind_and_res() {
        let g = ind_dims(&DimSeq::delta(1, 1));
        assert_eq!(g.entries().count(), 1);
        assert_eq!(g.get(1, 1), big(1));
        assert_eq!(ind_dims(&DimSeq::delta(2, 2)).get(2, 2), big(2));
        let g = ind_dims(&d(&[1, 1]));
        assert_eq!((g.get(1, 1), g.get(2, 2)), (big(1), big(2)));
        assert_eq!(res_dims(&g), d(&[1, 2]));
    }

    #[test]
    fn composition_needs_freeness() {
        let p = BimodDimGrid::new(Action::Unspecified);
        assert_eq!(bimod_hadamard_dims(&p, &p), Err(Error::FreenessNotAsserted));
        let v = ind_dims(&d(&[1, 3, 2]));
        assert_eq!(bimod_hadamard_dims(&v, &BimodDimGrid::identity(3)).unwrap(), v);
        assert_eq!(bimod_hadamard_dims(&BimodDimGrid::identity(3), &v).unwrap(), v);
    }

    #[test]
    fn res_counterexamples() {
        let mut p = BimodDimGrid::new(Action::Trivial);
        p.set(1, 1, big(1));
        p.set(1, 2, big(1));
        let mut q = BimodDimGrid::new(Action::Trivial);
        q.set(1, 1, big(1));
        q.set(2, 1, big(1));
        let lhs = res_dims(&bimod_hadamard_dims(&p, &q).unwrap());
        let rhs = boxtimes_dims(&res_dims(&p), &res_dims(&q), 1).unwrap();
        assert_eq!((lhs.get(1), rhs.get(1)), (big(2), big(1)));

        let mut p = BimodDimGrid::new(Action::Trivial);
        p.set(1, 2, big(1));
        let mut q = BimodDimGrid::new(Action::Trivial);
        q.set(2, 1, big(1));
        let lhs = res_dims(&bimod_conc_dims(&p, &q));
        let rhs = conc_dims(&res_dims(&p), &res_dims(&q), 3);
        assert_eq!(lhs.get(3), big(9));
        assert_eq!(rhs.get(3), big(0));
    }

    #[test]
    fn connected_permutation_examples() {
        assert!(connected_permutations(&[1, 1], &[1, 1]).unwrap().is_empty());
        assert_eq!(connected_permutations(&[2], &[1, 1]).unwrap().len(), 2);
        assert_eq!(connected_permutations(&[3], &[1, 2]).unwrap().len(), 6);
        assert_eq!(connected_permutations(&[1, 2], &[3]).unwrap().len(), 6);
        assert_eq!(connected_permutations(&[1], &[2]), Err(Error::SizeMismatch));
        let (k, j) = section(&[0], &[1], &[1]).unwrap();
        assert_eq!(partition_pair_to_connected_permutation(&k, &j).unwrap(), vec![0]);
        for s in connected_permutations(&[2], &[1, 1]).unwrap() {
            let (k, j) = section(&s, &[1, 1], &[2]).unwrap();
            assert_eq!(partition_pair_to_connected_permutation(&k, &j).unwrap(), s);
        }
        // the swap needs the listing [1, 0]; increasing listings only give the identity
        let (k, j) = section(&[1, 0], &[2], &[2]).unwrap();
        assert_eq!(k, vec![vec![1, 0]]);
        assert_eq!(partition_pair_to_connected_permutation(&k, &j).unwrap(), vec![1, 0]);
        assert_eq!(partition_pair_to_connected_permutation(&listed(&[0b11]), &listed(&[0b11])).unwrap(), vec![0, 1]);
        assert_eq!(partition_pair_to_connected_permutation(&[vec![0, 0]], &[vec![0, 1]]), Err(Error::SizeMismatch));
    }

    #[test]
    fn val_boxtimes_examples() {
        let b = Budget::default();
        let (v, w) = (d(&[2, 0, 1]), d(&[3, 1]));
        assert_eq!(val_boxtimes_induced_dims(&v, &w, 1, &b).unwrap(), big(6));
        let delta2 = DimSeq::delta(2, 4);
        let prod = boxtimes_dims(&delta2, &delta2, 4).unwrap();
        for n in 1..=4 {
            assert_eq!(val_boxtimes_induced_dims(&delta2, &delta2, n, &b).unwrap(), factorial(n) * prod.get(n));
        }
        let (v, w) = (d(&[1, 1]), DimSeq::delta(1, 1));
        let prod = boxtimes_dims(&v, &w, 3).unwrap();
        for n in 1..=3 {
            assert_eq!(val_boxtimes_induced_dims(&v, &w, n, &b).unwrap(), factorial(n) * prod.get(n));
        }
    }

    #[test]
    fn dimseq_text_round_trip() {
        let p: DimSeq = "0,1,0".parse().unwrap();
        assert_eq!(p, DimSeq::delta(2, 3));
        assert_eq!(p.to_string(), "0,1,0");
        assert!("0,x".parse::<DimSeq>().is_err());
    }
}
