//! Invariant suite shared by `wallkit verify` and the acceptance target.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;
use wallkit_core::colouring::{betti_numbers, build_complex_with, IntegerChainComplex, SignRule};
use wallkit_core::poset::{bits, enumerate_ordered_partitions, enumerate_partitions, full_mask, mask_of, permutations, StrictPoset};
use wallkit_core::smodule::{
    bimod_conc_dims, bimod_hadamard_dims, boxtimes_dims, boxtimes_oracle, conc_dims, connected_permutations, factorial, free_proto_dims,
    free_proto_dims_level_oracle, free_weight2_closed, hadamard_dims, is_connected_permutation, listed,
    partition_pair_to_connected_permutation, res_dims, s_dims, s_log, section, val_boxtimes_induced_dims, Action, BimodDimGrid, DimSeq,
    ListedPartition,
};
use wallkit_core::wall::{
    aut_action, count_ordered_walls, enumerate_walls, graft, horizontal_product, kappa_of_pair, vertical_product, Wall,
};
use wallkit_core::Budget;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, failures: &[String], summary: String) -> Self {
        let passed = failures.is_empty();
        let detail = if passed { summary } else { format!("{summary}; {} failure(s), first: {}", failures.len(), failures[0]) };
        CheckResult { name, passed, detail }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_ground: usize,
    pub max_bricks: usize,
    pub sign_rule: SignRule,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_ground: 3, max_bricks: 4, sign_rule: SignRule::Incidence }
    }
}

/// Every check, in a fixed order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckResult> {
    vec![
        example_wall_count(),
        kappa_example(),
        example_complex(cfg.sign_rule),
        acyclicity_sweep(cfg.max_ground, cfg.max_bricks, cfg.sign_rule),
        free_protoperad(),
        product_calculus(),
        ind_monoidality(),
        res_counterexamples(),
        connected_permutation_section(4),
        wall_laws(cfg.max_ground, cfg.max_bricks),
        wall_invariants(cfg.max_ground, cfg.max_bricks),
    ]
}

fn m(e: &[usize]) -> u64 {
    mask_of(e)
}

fn walls_upto(n: usize, max_bricks: usize) -> Vec<Wall> {
    (1..=max_bricks).flat_map(|r| enumerate_walls(n, r, false, &Budget::UNLIMITED).expect("unlimited budget")).collect()
}

/// Walls over `[1,4]` with bricks `{1,2},{3,4},{2,3}`.
pub fn example_wall_count() -> CheckResult {
    let mut target = vec![m(&[1, 2]), m(&[3, 4]), m(&[2, 3])];
    target.sort();
    let count = enumerate_walls(4, 3, false, &Budget::UNLIMITED)
        .expect("unlimited budget")
        .into_iter()
        .filter(|w| {
            let mut b = w.bricks().to_vec();
            b.sort();
            b == target
        })
        .count();
    let failures = if count == 4 { vec![] } else { vec![format!("found {count} walls, expected 4")] };
    CheckResult::new("example_wall_count", &failures, format!("{count} walls on bricks {{1,2}},{{3,4}},{{2,3}}"))
}

/// The wall `{1,2} < {1,2}'` beside `{3,4}` projects to `{{1,2},{3,4}}`.
pub fn kappa_example() -> CheckResult {
    let w = Wall::from_brick_sequence(4, &[m(&[1, 2]), m(&[1, 2]), m(&[3, 4])]).expect("valid wall");
    let k = w.kappa();
    let mut failures = Vec::new();
    if k.blocks() != [m(&[1, 2]), m(&[3, 4])] {
        failures.push(format!("kappa blocks {:?}", k.element_blocks()));
    }
    if w.connected_components().len() != 2 {
        failures.push("expected two components".into());
    }
    CheckResult::new("kappa_example", &failures, format!("kappa = {:?}", k.element_blocks()))
}

/// Bricks `{1,2}`, `{3,4}` below `{2,3}`, and `{1}` above `{1,2}`.
pub fn example_colouring_wall() -> Wall {
    Wall::from_brick_sequence(4, &[m(&[1, 2]), m(&[3, 4]), m(&[2, 3]), m(&[1])]).expect("valid wall")
}

fn homology_failure(w: &Wall, cx: &IntegerChainComplex) -> Option<String> {
    if let Some(k) = cx.d_squared_failure() {
        return Some(format!("d^2 != 0 in degree {k}"));
    }
    let h = betti_numbers(cx);
    if let Some(t) = h.iter().find(|x| !x.torsion.is_empty()) {
        return Some(format!("torsion {:?} in degree {}", t.torsion, t.degree));
    }
    let betti: Vec<usize> = h.iter().map(|x| x.betti).collect();
    let ok = if w.has_succ() { betti.iter().all(|&b| b == 0) } else { betti.iter().sum::<usize>() == 1 && betti.last() == Some(&1) };
    (!ok).then(|| format!("betti {betti:?}"))
}

pub fn example_complex(rule: SignRule) -> CheckResult {
    let w = example_colouring_wall();
    let b = Budget::default();
    let cx = build_complex_with(&w, &b, rule).expect("within budget");
    let mut failures = Vec::new();
    if cx.graded_counts() != [1, 3, 3, 1] {
        failures.push(format!("graded counts {:?}", cx.graded_counts()));
    }
    if cx.euler() != 0 {
        failures.push(format!("euler {}", cx.euler()));
    }
    failures.extend(homology_failure(&w, &cx));
    if rule == SignRule::Incidence {
        let lambda = build_complex_with(&w, &b, SignRule::Lambda).expect("within budget");
        if lambda.boundaries != cx.boundaries {
            failures.push("incidence signs differ from the literal sign rule".into());
        }
    }
    CheckResult::new("example_complex", &failures, format!("counts {:?}, euler {}, acyclic over Z", cx.graded_counts(), cx.euler()))
}

/// Every wall with ground `<= max_ground` and `<= max_bricks` bricks.
pub fn acyclicity_sweep(max_ground: usize, max_bricks: usize, rule: SignRule) -> CheckResult {
    let b = Budget::UNLIMITED;
    let (mut total, mut with_succ) = (0usize, 0usize);
    let mut failures = Vec::new();
    for n in 1..=max_ground {
        for r in 1..=max_bricks {
            for w in enumerate_walls(n, r, false, &b).expect("unlimited budget") {
                total += 1;
                with_succ += usize::from(w.has_succ());
                let cx = build_complex_with(&w, &b, rule).expect("unlimited budget");
                if let Some(e) = homology_failure(&w, &cx) {
                    failures.push(format!("{e} on {}", crate::format::wall_to_json(&w)));
                }
            }
        }
    }
    CheckResult::new(
        "acyclicity_sweep",
        &failures,
        format!("{total} walls (ground <= {max_ground}, bricks <= {max_bricks}), {with_succ} with successor pairs"),
    )
}

fn dim_battery() -> Vec<DimSeq> {
    vec![
        DimSeq::delta(1, 1),
        DimSeq::delta(2, 2),
        DimSeq::from_u64s(&[1, 1]),
        DimSeq::from_u64s(&[0, 1, 1]),
        DimSeq::from_u64s(&[1, 2, 1]),
        DimSeq::from_u64s(&[2, 0, 3, 1]),
    ]
}

/// Wall formula, weight-2 closed form and levelled-partition oracle.
pub fn free_protoperad() -> CheckResult {
    let b = Budget::default();
    let mut failures = Vec::new();
    let delta2 = DimSeq::delta(2, 4);
    let got: Vec<BigUint> = (2..=4).map(|n| free_proto_dims(&delta2, 2, n, &b).expect("within budget")).collect();
    if got != [1u32, 6, 0].map(BigUint::from) {
        failures.push(format!("delta_2 weight 2 dims {got:?}"));
    }
    let mut compared = 0;
    for g in dim_battery() {
        for rho in 1..=3 {
            for n in 1..=4 {
                let walls = free_proto_dims(&g, rho, n, &b).expect("within budget");
                let levels = free_proto_dims_level_oracle(&g, rho, n, &b).expect("within budget");
                if walls != levels {
                    failures.push(format!("gen {g}, weight {rho}, arity {n}: walls {walls} vs levels {levels}"));
                }
                if rho == 2 && free_weight2_closed(&g, n) != walls {
                    failures.push(format!("gen {g}, arity {n}: closed form {}", free_weight2_closed(&g, n)));
                }
                compared += 1;
            }
        }
    }
    CheckResult::new("free_protoperad", &failures, format!("delta_2 weight 2 = {got:?}; {compared} oracle comparisons"))
}

/// Unit, symmetry and associativity of the connected product, the
/// multiplicativity and exponential properties of the partition transform,
/// and the logarithm round trip.
pub fn product_calculus() -> CheckResult {
    let mut failures = Vec::new();
    let battery = dim_battery();
    let box5 = |p: &DimSeq, q: &DimSeq| boxtimes_dims(p, q, 5).expect("oracle agrees");
    for p in &battery {
        if box5(p, &DimSeq::unit(5)) != p.resized(5) || box5(&DimSeq::unit(5), p) != p.resized(5) {
            failures.push(format!("unit law fails for {p}"));
        }
        for q in &battery {
            if box5(p, q) != box5(q, p) {
                failures.push(format!("symmetry fails for {p}, {q}"));
            }
            let oracle = boxtimes_oracle(p, q, 6).expect("within range");
            if s_dims(&oracle, 6) != hadamard_dims(&s_dims(p, 6), &s_dims(q, 6)) {
                failures.push(format!("S multiplicativity fails for {p}, {q}"));
            }
            let (sp, sq) = (s_dims(p, 6), s_dims(q, 6));
            let exp = conc_dims(&sp, &sq, 6).sum(&sp).sum(&sq);
            if s_dims(&p.resized(6).sum(&q.resized(6)), 6) != exp {
                failures.push(format!("exponential property fails for {p}, {q}"));
            }
            for r in battery.iter().take(4) {
                if box5(&box5(p, q), r) != box5(p, &box5(q, r)) {
                    failures.push(format!("associativity fails for {p}, {q}, {r}"));
                }
            }
        }
        match s_log(&s_dims(p, 8)) {
            Ok(back) if back == *p => {}
            other => failures.push(format!("s_log round trip for {p}: {other:?}")),
        }
    }
    CheckResult::new("product_calculus", &failures, format!("{} generating sequences", battery.len()))
}

pub fn ind_monoidality() -> CheckResult {
    let b = Budget::default();
    let gens = [DimSeq::delta(1, 1), DimSeq::delta(2, 2), DimSeq::from_u64s(&[1, 1])];
    let mut failures = Vec::new();
    for v in &gens {
        for w in &gens {
            let prod = boxtimes_dims(v, w, 4).expect("oracle agrees");
            for n in 1..=4 {
                let lhs = val_boxtimes_induced_dims(v, w, n, &b).expect("within budget");
                let rhs = factorial(n) * prod.get(n);
                if lhs != rhs {
                    failures.push(format!("v {v}, w {w}, n {n}: {lhs} vs {rhs}"));
                }
            }
        }
    }
    CheckResult::new("ind_monoidality", &failures, "9 generator pairs, arity <= 4".into())
}

pub fn res_counterexamples() -> CheckResult {
    let one = || BigUint::from(1u32);
    let mut failures = Vec::new();
    let mut p = BimodDimGrid::new(Action::Trivial);
    p.set(1, 1, one());
    p.set(1, 2, one());
    let mut q = BimodDimGrid::new(Action::Trivial);
    q.set(1, 1, one());
    q.set(2, 1, one());
    let lhs1 = res_dims(&bimod_hadamard_dims(&p, &q).expect("trivial actions")).get(1);
    let rhs1 = boxtimes_dims(&res_dims(&p), &res_dims(&q), 1).expect("oracle agrees").get(1);
    if (lhs1.clone(), rhs1.clone()) != (BigUint::from(2u32), one()) {
        failures.push(format!("composition: {lhs1} vs {rhs1}"));
    }
    let mut p = BimodDimGrid::new(Action::Trivial);
    p.set(1, 2, one());
    let mut q = BimodDimGrid::new(Action::Trivial);
    q.set(2, 1, one());
    let lhs3 = res_dims(&bimod_conc_dims(&p, &q)).get(3);
    let rhs3 = conc_dims(&res_dims(&p), &res_dims(&q), 3).get(3);
    if lhs3.is_zero() || !rhs3.is_zero() {
        failures.push(format!("concatenation: {lhs3} vs {rhs3}"));
    }
    CheckResult::new("res_counterexamples", &failures, format!("Res(P□Q)(1) = {lhs1} vs {rhs1}; Res(P⊗Q)(3) = {lhs3} vs {rhs3}"))
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// `φ(K,J)` over pairs with every listing inside blocks is onto the connected
/// permutations and stays inside them; `φ∘ψ` is the identity.
pub fn connected_permutation_section(max_n: usize) -> CheckResult {
    let mut failures = Vec::new();
    let (mut tuples, mut increasing_hits, mut total) = (0usize, 0usize, 0usize);
    for n in 1..=max_n {
        for kbar in compositions(n) {
            for jbar in compositions(n) {
                tuples += 1;
                let sc: BTreeSet<Vec<usize>> = connected_permutations(&jbar, &kbar).expect("sizes agree").into_iter().collect();
                total += sc.len();
                if n >= 2 && kbar.len() == n && jbar.len() == n && !sc.is_empty() {
                    failures.push(format!("trivial groupings {kbar:?}, {jbar:?} have connected permutations"));
                }
                let ks = with_sizes(n, &kbar);
                let js = with_sizes(n, &jbar);
                let mut image = BTreeSet::new();
                let mut increasing = BTreeSet::new();
                for k in &ks {
                    for j in &js {
                        if !pair_connected(k, j) {
                            continue;
                        }
                        increasing.insert(partition_pair_to_connected_permutation(&listed(k), &listed(j)).expect("sizes agree"));
                        for lk in listings(k) {
                            for lj in listings(j) {
                                let s = partition_pair_to_connected_permutation(&lk, &lj).expect("sizes agree");
                                if !is_connected_permutation(&s, &jbar, &kbar) {
                                    failures.push(format!("phi({lk:?},{lj:?}) = {s:?} is not connected"));
                                }
                                image.insert(s);
                            }
                        }
                    }
                }
                increasing_hits += increasing.len();
                for s in sc.difference(&image) {
                    failures.push(format!("{s:?} not in the image of phi for {kbar:?}, {jbar:?}"));
                }
                for s in &sc {
                    let (k, j) = section(s, &kbar, &jbar).expect("sizes agree");
                    let back = partition_pair_to_connected_permutation(&k, &j).expect("sizes agree");
                    if back != *s {
                        failures.push(format!("phi(psi({s:?})) = {back:?}"));
                    }
                }
            }
        }
    }
    CheckResult::new(
        "connected_permutations",
        &failures,
        format!(
            "{tuples} size tuples, N <= {max_n}, {total} connected permutations; increasing block listings alone reach {increasing_hits}"
        ),
    )
}

/// Ordered partitions of `0..n` with the given block sizes.
fn with_sizes(n: usize, sizes: &[usize]) -> Vec<Vec<u64>> {
    enumerate_ordered_partitions(n, sizes.len())
        .into_iter()
        .filter(|p| p.iter().map(|b| b.count_ones() as usize).eq(sizes.iter().copied()))
        .collect()
}

/// Every way of listing the elements inside each block.
fn listings(blocks: &[u64]) -> Vec<ListedPartition> {
    let mut out: Vec<ListedPartition> = vec![Vec::new()];
    for block in listed(blocks) {
        let orders: Vec<Vec<usize>> = permutations(block.len()).into_iter().map(|p| p.iter().map(|&i| block[i]).collect()).collect();
        out = out.into_iter().flat_map(|prefix| orders.iter().map(move |o| [prefix.clone(), vec![o.clone()]].concat())).collect();
    }
    out
}

fn pair_connected(k: &[u64], j: &[u64]) -> bool {
    let n = k.len() + j.len();
    let adjacent = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        a < k.len() && b >= k.len() && k[a] & j[b - k.len()] != 0
    };
    wallkit_core::poset::components(n, adjacent).len() == 1
}

/// Interchange law, grafting axioms, free action count and associativity of `𝒦`.
pub fn wall_laws(max_ground: usize, max_bricks: usize) -> CheckResult {
    let mut failures = Vec::new();
    let mut summary = String::new();
    let n = interchange_law(max_ground, max_bricks, &mut failures);
    let _ = write!(summary, "interchange {n} cases");
    let g = graft_axioms(max_ground, max_bricks, &mut failures);
    let _ = write!(
        summary,
        ", graft H/V/Λ {} cases ({} V/Λ cases with overlapping M and U, {} of them differ)",
        g.cases, g.overlap_cases, g.overlap_mismatches
    );
    let n = free_action_count(max_ground.min(3), max_bricks.min(3), &mut failures);
    let _ = write!(summary, ", free action {n} (n,r)");
    let n = kappa_associativity(max_ground, &mut failures);
    let _ = write!(summary, ", kappa associativity {n} triples");
    CheckResult::new("wall_laws", &failures, summary)
}

fn interchange_law(max_ground: usize, max_bricks: usize, failures: &mut Vec<String>) -> usize {
    let mut ranges = vec![];
    for s in 1..max_ground {
        for t in 1..=max_ground - s {
            ranges.push((s, t, max_bricks));
        }
    }
    for s in 1..=2 {
        for t in 1..=2 {
            if s + t > max_ground {
                ranges.push((s, t, 2));
            }
        }
    }
    let mut cases = 0;
    for (s, t, fb) in ranges {
        let (ws, wt) = (walls_upto(s, fb), walls_upto(t, fb));
        for a in &ws {
            for b in &ws {
                let vab = vertical_product(a, b).expect("same ground");
                for c in &wt {
                    let hac = horizontal_product(a, c).expect("valid walls");
                    for d in &wt {
                        cases += 1;
                        let lhs = horizontal_product(&vab, &vertical_product(c, d).expect("same ground")).expect("valid walls");
                        let rhs = vertical_product(&hac, &horizontal_product(b, d).expect("valid walls")).expect("same ground");
                        if lhs != rhs {
                            failures.push(format!("interchange fails on grounds {s},{t}"));
                        }
                    }
                }
            }
        }
    }
    cases
}

/// Injections of `[1,k]` into `t`-subsets, as 1-based image lists.
fn injections_into(image: u64) -> Vec<Vec<usize>> {
    let elems: Vec<usize> = bits(image).map(|i| i + 1).collect();
    permutations(elems.len()).into_iter().map(|p| p.iter().map(|&i| elems[i]).collect()).collect()
}

/// Positions (1-based) of `xs` inside the sorted elements of `within`.
fn positions(xs: &[usize], within: u64) -> Vec<usize> {
    let elems: Vec<usize> = bits(within).map(|i| i + 1).collect();
    xs.iter().map(|x| elems.iter().position(|e| e == x).expect("inside") + 1).collect()
}

fn sorted_elems(mask: u64) -> Vec<usize> {
    bits(mask).map(|i| i + 1).collect()
}

#[derive(Default)]
struct GraftStats {
    cases: usize,
    overlap_cases: usize,
    overlap_mismatches: usize,
}

/// Axioms H, V and Λ for every triple of factors whose bricks total at most
/// `max_bricks`, over targets of size at most `max_ground`, with all
/// injections satisfying the covering conditions. V and Λ graft `M` and `U`
/// side by side, so they are required only when the images of `M` and `U`
/// are disjoint; overlapping cases are counted separately.
fn graft_axioms(max_ground: usize, max_bricks: usize, failures: &mut Vec<String>) -> GraftStats {
    let mut stats = GraftStats::default();
    let walls: Vec<Vec<Wall>> =
        (0..=max_ground).map(|k| if k == 0 { vec![] } else { walls_upto(k, max_bricks.saturating_sub(2).max(1)) }).collect();
    for t in 1..=max_ground {
        let full = full_mask(t);
        for mi in 1..=full {
            for ni in 1..=full {
                for ui in 1..=full {
                    let (ri, si) = (mi | ni, ni | ui);
                    let ok = mi & ni != 0 && ni & ui != 0 && mi & si != 0 && mi | si == full && ri & ui != 0 && ri | ui == full;
                    if !ok {
                        continue;
                    }
                    let (rt, st) = (ri.count_ones() as usize, si.count_ones() as usize);
                    let (r_in_t, s_in_t) = (sorted_elems(ri), sorted_elems(si));
                    for im in injections_into(mi) {
                        for inn in injections_into(ni) {
                            for iu in injections_into(ui) {
                                let (phi_m, phi_n) = (positions(&im, ri), positions(&inn, ri));
                                let (psi_n, psi_u) = (positions(&inn, si), positions(&iu, si));
                                for wm in &walls[im.len()] {
                                    for wn in &walls[inn.len()] {
                                        if wm.len() + wn.len() >= max_bricks {
                                            continue;
                                        }
                                        for wu in &walls[iu.len()] {
                                            if wm.len() + wn.len() + wu.len() > max_bricks {
                                                continue;
                                            }
                                            stats.cases += 1;
                                            let g = |s: usize, a: &[usize], b: &[usize], x: &Wall, y: &Wall| {
                                                graft(s, a, b, x, y).expect("covering conditions hold")
                                            };
                                            let h_l = g(t, &im, &s_in_t, wm, &g(st, &psi_n, &psi_u, wn, wu));
                                            let h_r = g(t, &r_in_t, &iu, &g(rt, &phi_m, &phi_n, wm, wn), wu);
                                            let v_l = g(t, &s_in_t, &im, &g(st, &psi_n, &psi_u, wn, wu), wm);
                                            let v_r = g(t, &r_in_t, &iu, &g(rt, &phi_n, &phi_m, wn, wm), wu);
                                            let l_l = g(t, &im, &s_in_t, wm, &g(st, &psi_u, &psi_n, wu, wn));
                                            let l_r = g(t, &iu, &r_in_t, wu, &g(rt, &phi_m, &phi_n, wm, wn));
                                            if h_l != h_r {
                                                failures.push(format!("axiom H fails for M {im:?}, N {inn:?}, U {iu:?} in [1,{t}]"));
                                            }
                                            for (name, a, b) in [("V", v_l, v_r), ("Λ", l_l, l_r)] {
                                                if mi & ui != 0 {
                                                    stats.overlap_cases += 1;
                                                    stats.overlap_mismatches += usize::from(a != b);
                                                } else if a != b {
                                                    failures
                                                        .push(format!("axiom {name} fails for M {im:?}, N {inn:?}, U {iu:?} in [1,{t}]"));
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    stats
}

/// Ordered walls counted directly: every brick sequence and every
/// orientation of its intersecting pairs that closes to a valid wall.
fn ordered_walls_direct(n: usize, r: usize) -> u128 {
    let subsets: Vec<u64> = (1..=full_mask(n)).collect();
    let mut count = 0;
    let mut seq = vec![0usize; r];
    loop {
        let bricks: Vec<u64> = seq.iter().map(|&i| subsets[i]).collect();
        if bricks.iter().fold(0, |a, b| a | b) == full_mask(n) {
            let meet: Vec<(usize, usize)> =
                (0..r).flat_map(|a| (a + 1..r).map(move |b| (a, b))).filter(|&(a, b)| bricks[a] & bricks[b] != 0).collect();
            for orient in 0u64..1 << meet.len() {
                let pairs: Vec<(usize, usize)> =
                    meet.iter().enumerate().map(|(i, &(a, b))| if orient >> i & 1 == 1 { (b, a) } else { (a, b) }).collect();
                if let Ok(order) = StrictPoset::transitive_closure(&pairs, r) {
                    if Wall::from_parts_unchecked(n, bricks.clone(), order).validate().is_ok() {
                        count += 1;
                    }
                }
            }
        }
        let Some(i) = (0..r).find(|&i| seq[i] + 1 < subsets.len()) else { break };
        seq[i] += 1;
        seq[..i].fill(0);
    }
    count
}

fn free_action_count(max_ground: usize, max_bricks: usize, failures: &mut Vec<String>) -> usize {
    let mut cases = 0;
    for n in 1..=max_ground {
        for r in 1..=max_bricks {
            cases += 1;
            let via_orbits = count_ordered_walls(n, r, &Budget::UNLIMITED).expect("unlimited budget");
            let direct = ordered_walls_direct(n, r);
            if via_orbits != direct {
                failures.push(format!("n {n}, r {r}: r!|W| = {via_orbits}, ordered walls {direct}"));
            }
        }
    }
    cases
}

fn kappa_associativity(max_ground: usize, failures: &mut Vec<String>) -> usize {
    let mut cases = 0;
    for n in 1..=max_ground {
        let parts = enumerate_partitions(n);
        for a in &parts {
            for b in &parts {
                let ab = kappa_of_pair(a, b);
                for c in &parts {
                    cases += 1;
                    if kappa_of_pair(&ab, c) != kappa_of_pair(a, &kappa_of_pair(b, c)) {
                        failures.push(format!(
                            "kappa associativity fails on {:?}, {:?}, {:?}",
                            a.element_blocks(),
                            b.element_blocks(),
                            c.element_blocks()
                        ));
                    }
                }
            }
        }
    }
    cases
}

/// Per-wall invariants over the enumeration range: validity, canonical
/// idempotence, connectivity against `𝒦`, relabelling invariance, and the
/// count of connected two-brick walls.
pub fn wall_invariants(max_ground: usize, max_bricks: usize) -> CheckResult {
    let mut failures = Vec::new();
    let mut total = 0;
    for n in 1..=max_ground {
        let perms = permutations(n);
        for w in walls_upto(n, max_bricks) {
            total += 1;
            if let Err(v) = w.validate() {
                failures.push(format!("invalid wall: {v}"));
            }
            if w.canonical_form() != w || !w.is_canonical() {
                failures.push("canonical form not idempotent".into());
            }
            if w.is_connected() != (w.kappa().len() == 1) {
                failures.push("connectivity disagrees with kappa".into());
            }
            let sigma: Vec<usize> = perms.last().expect("nonempty").iter().map(|&i| i + 1).collect();
            match aut_action(&w, &sigma) {
                Ok(x) if x.is_connected() == w.is_connected() && x.len() == w.len() => {}
                other => failures.push(format!("relabelling changed the wall: {other:?}")),
            }
        }
        let conn2 = enumerate_walls(n, 2, true, &Budget::UNLIMITED).expect("unlimited budget").len();
        let full = full_mask(n);
        let pairs = (1..=full).flat_map(|k| (1..=full).map(move |l| (k, l))).filter(|&(k, l)| k | l == full && k & l != 0).count();
        if conn2 != pairs {
            failures.push(format!("ground {n}: {conn2} connected 2-brick walls, {pairs} covering pairs"));
        }
    }
    CheckResult::new("wall_invariants", &failures, format!("{total} walls"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4).len(), 8);
        assert_eq!(compositions(1), vec![vec![1]]);
    }

    #[test]
    fn direct_ordered_count_small() {
        assert_eq!(ordered_walls_direct(1, 1), 1);
        assert_eq!(ordered_walls_direct(2, 2), 12);
        assert_eq!(ordered_walls_direct(2, 1), 1);
    }

    #[test]
    fn default_suite_passes() {
        for c in run_all(&VerifyConfig::default()) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn corrupted_signs_are_reported() {
        let cfg = VerifyConfig { sign_rule: SignRule::AllPositive, ..VerifyConfig::default() };
        let sweep = acyclicity_sweep(cfg.max_ground, cfg.max_bricks, cfg.sign_rule);
        assert!(!sweep.passed);
        assert!(sweep.detail.contains("d^2"));
    }
}
