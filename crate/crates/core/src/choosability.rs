//! Complete search for bad λ-list assignments.
//!
//! The search never enumerates raw list assignments. It relies on three
//! reductions, each of which maps a bad assignment to another bad one:
//!
//! 1. **Trimming.** Deleting colours from lists cannot create a colouring,
//!    so every group can be cut down to exactly `k_i` colours per vertex.
//!    After this a group is fully described by its [`SupportMultiset`], the
//!    multiset of colour supports (the set of vertices whose list holds the colour).
//! 2. **Merging.** Two colours of the same group with disjoint supports can
//!    be replaced by one colour on the union of the supports. Every vertex
//!    keeps its per-group counts, and any colouring with the merged colour
//!    splits back into a colouring of the original lists. Repeating this
//!    leaves the supports of every group pairwise intersecting; in particular
//!    a `k = 1` group collapses to a single colour present in every list.
//! 3. **Low degree.** A vertex of degree below `k_λ` can always be coloured
//!    last, so it is removed (repeatedly) before searching and given
//!    arbitrary valid lists when a witness is lifted back.
//!
//! Symmetry: the first group is restricted to representatives of its orbit
//! under [`Graph::symmetry`], and the remaining groups of equal size are taken in
//! non-decreasing enumeration order. Applying an automorphism that makes one
//! group canonical, moving it to the front and sorting the rest maps any bad
//! assignment onto one the search visits.
//!
//! Pruning: if the colours fixed so far already colour the graph, every
//! completion is colourable, since adding colours never removes a colouring.
//! All groups but the last come from precomputed cover tables; the last is
//! built one support at a time and abandoned as soon as a greedy pass colours
//! the partial lists.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::lists::{color_from_masks, find_list_coloring, ColorGroup, GroupedListAssignment};
use crate::multiset::LambdaMultiset;

/// Above this many automorphisms the first group is not reduced by symmetry.
const MAX_SYMMETRY_PERMS: usize = 20_000;

/// Limits on a search. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        max_time: None,
    };

    pub fn nodes(n: u64) -> Self {
        Budget {
            max_nodes: Some(n),
            max_time: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChoosabilityOutcome {
    /// A bad λ-assignment, already checked by [`verify_bad_assignment`].
    Witness(GroupedListAssignment),
    /// The complete search space was exhausted: the graph is λ-choosable.
    NoneExists,
    /// Inconclusive.
    BudgetExhausted { nodes: u64 },
}

impl ChoosabilityOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, ChoosabilityOutcome::Witness(_))
    }
}

/// The colours of one group, described by how many colours have each support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportMultiset {
    pub k: u32,
    /// `(support, multiplicity)`, sorted by support.
    pub supports: Vec<(VertexSet, u32)>,
}

impl SupportMultiset {
    pub fn from_supports(k: u32, supports: &[VertexSet]) -> Self {
        let mut sorted = supports.to_vec();
        sorted.sort();
        let mut out: Vec<(VertexSet, u32)> = Vec::new();
        for s in sorted {
            match out.last_mut() {
                Some((last, m)) if *last == s => *m += 1,
                _ => out.push((s, 1)),
            }
        }
        SupportMultiset { k, supports: out }
    }

    /// The supports of group `group` of an assignment.
    pub fn of_group(lists: &GroupedListAssignment, group: usize) -> Self {
        let supports: Vec<VertexSet> = lists.groups[group]
            .colors
            .iter()
            .map(|c| {
                VertexSet::from_iter_vertices(
                    lists
                        .lists
                        .iter()
                        .enumerate()
                        .filter(|(_, l)| l.contains(c))
                        .map(|(v, _)| v),
                )
            })
            .collect();
        Self::from_supports(lists.groups[group].k, &supports)
    }

    pub fn color_count(&self) -> usize {
        self.supports.iter().map(|&(_, m)| m as usize).sum()
    }

    /// Every vertex of `0..n` lies in exactly `k` supports (with multiplicity).
    pub fn is_exact(&self, n: usize) -> bool {
        (0..n).all(|v| {
            self.supports
                .iter()
                .filter(|(s, _)| s.contains(v))
                .map(|&(_, m)| m)
                .sum::<u32>()
                == self.k
        })
    }

    pub fn is_intersecting(&self) -> bool {
        let flat: Vec<VertexSet> = self.expanded();
        flat.iter()
            .enumerate()
            .all(|(i, a)| flat[i + 1..].iter().all(|b| !a.intersection(*b).is_empty()))
    }

    fn expanded(&self) -> Vec<VertexSet> {
        self.supports
            .iter()
            .flat_map(|&(s, m)| std::iter::repeat_n(s, m as usize))
            .collect()
    }
}

/// Builds an assignment on `n` vertices from one support multiset per group.
/// Colours are named `c{group}_{index}` with both counters starting at 1.
pub fn assignment_from_supports(n: usize, groups: &[SupportMultiset]) -> GroupedListAssignment {
    let mut out_groups = Vec::with_capacity(groups.len());
    let mut lists = vec![Vec::new(); n];
    for (gi, sm) in groups.iter().enumerate() {
        let mut colors = Vec::new();
        for (ci, s) in sm.expanded().into_iter().enumerate() {
            let name = format!("c{}_{}", gi + 1, ci + 1);
            for v in s.iter() {
                lists[v].push(name.clone());
            }
            colors.push(name);
        }
        out_groups.push(ColorGroup { k: sm.k, colors });
    }
    GroupedListAssignment {
        groups: out_groups,
        lists,
    }
}

/// Keeps the first `k_i` colours of group `i` in every list (in list order)
/// and drops colours that end up unused.
pub fn trim_to_exact(lists: &GroupedListAssignment) -> GroupedListAssignment {
    let cg = lists.color_groups();
    let trimmed: Vec<Vec<String>> = lists
        .lists
        .iter()
        .map(|list| {
            let mut taken = vec![0u32; lists.groups.len()];
            list.iter()
                .filter(|c| {
                    let g = cg[c.as_str()];
                    taken[g] += 1;
                    taken[g] <= lists.groups[g].k
                })
                .cloned()
                .collect()
        })
        .collect();
    let groups = lists
        .groups
        .iter()
        .map(|g| ColorGroup {
            k: g.k,
            colors: g
                .colors
                .iter()
                .filter(|c| trimmed.iter().any(|l| l.contains(*c)))
                .cloned()
                .collect(),
        })
        .collect();
    GroupedListAssignment {
        groups,
        lists: trimmed,
    }
}

/// Repeatedly merges pairs of same-group colours with disjoint supports.
/// The merged colour keeps the name of the earlier one.
pub fn merge_disjoint_supports(lists: &GroupedListAssignment) -> GroupedListAssignment {
    let mut out = lists.clone();
    for g in 0..out.groups.len() {
        'restart: loop {
            let colors = out.groups[g].colors.clone();
            let support = |c: &String, l: &GroupedListAssignment| {
                VertexSet::from_iter_vertices(
                    l.lists
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| x.contains(c))
                        .map(|(v, _)| v),
                )
            };
            for i in 0..colors.len() {
                for j in i + 1..colors.len() {
                    if support(&colors[i], &out)
                        .intersection(support(&colors[j], &out))
                        .is_empty()
                    {
                        for list in out.lists.iter_mut() {
                            for c in list.iter_mut() {
                                if *c == colors[j] {
                                    *c = colors[i].clone();
                                }
                            }
                        }
                        out.groups[g].colors.retain(|c| *c != colors[j]);
                        continue 'restart;
                    }
                }
            }
            break;
        }
    }
    out
}

/// True iff `lists` is a λ-assignment of `g` that admits no proper colouring.
/// Uses only [`GroupedListAssignment::is_lambda_assignment`] and
/// [`find_list_coloring`]; malformed input is an error rather than `false`.
pub fn verify_bad_assignment(
    g: &Graph,
    lambda: &LambdaMultiset,
    lists: &GroupedListAssignment,
) -> Result<bool> {
    lists.validate()?;
    if lists.n() != g.n() {
        return Err(Error::Malformed(format!(
            "{} lists for {} vertices",
            lists.n(),
            g.n()
        )));
    }
    if !lists.is_lambda_assignment(lambda) {
        return Ok(false);
    }
    Ok(find_list_coloring(g, lists)?.is_none())
}

struct Limits {
    nodes: AtomicU64,
    exhausted: AtomicBool,
    budget: Budget,
    start: Instant,
}

impl Limits {
    fn new(budget: Budget) -> Self {
        Limits {
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
            budget,
            start: Instant::now(),
        }
    }

    /// Counts one node; false once the budget is spent.
    fn tick(&self) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over_nodes = self.budget.max_nodes.is_some_and(|m| n > m);
        let over_time = n.is_multiple_of(1024)
            && self
                .budget
                .max_time
                .is_some_and(|t| self.start.elapsed() > t);
        if over_nodes || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

/// Vertices left after repeatedly deleting vertices of degree below `k`.
pub fn high_degree_core(g: &Graph, k: usize) -> VertexSet {
    let mut keep = g.vertices();
    loop {
        let drop = keep
            .iter()
            .find(|&v| g.neighbors(v).intersection(keep).len() < k);
        match drop {
            Some(v) => keep.remove(v),
            None => return keep,
        }
    }
}

/// Every pairwise-intersecting multiset of non-empty supports over `n`
/// vertices covering each vertex exactly `k` times. Each multiset appears once,
/// as a sequence ordered by (least vertex ascending, bitmask descending).
fn intersecting_covers(n: usize, k: u32, limits: &Limits) -> Option<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    let mut deficit = vec![k; n];
    let mut chosen = Vec::new();
    if covers_rec(n, &mut deficit, &mut chosen, &mut out, limits) {
        Some(out)
    } else {
        None
    }
}

fn covers_rec(
    n: usize,
    deficit: &mut [u32],
    chosen: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
    limits: &Limits,
) -> bool {
    if !limits.tick() {
        return false;
    }
    let open: u64 = (0..n)
        .filter(|&v| deficit[v] > 0)
        .fold(0, |m, v| m | 1 << v);
    if open == 0 {
        out.push(chosen.clone());
        return true;
    }
    let low = open.trailing_zeros();
    let low_bit = 1u64 << low;
    let cap = match chosen.last() {
        Some(&prev) if prev.trailing_zeros() == low => prev,
        _ => u64::MAX,
    };
    let rest = open & !low_bit;
    let mut sub = rest;
    loop {
        let s = sub | low_bit;
        if s <= cap && chosen.iter().all(|&c| c & s != 0) {
            for v in (0..n).filter(|&v| s >> v & 1 == 1) {
                deficit[v] -= 1;
            }
            chosen.push(s);
            let ok = covers_rec(n, deficit, chosen, out, limits);
            chosen.pop();
            for v in (0..n).filter(|&v| s >> v & 1 == 1) {
                deficit[v] += 1;
            }
            if !ok {
                return false;
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    true
}

fn sorted_image(cover: &[u64], perm: &[usize]) -> Vec<u64> {
    let mut img: Vec<u64> = cover
        .iter()
        .map(|&s| VertexSet(s).permute(perm).0)
        .collect();
    img.sort_unstable();
    img
}

/// True when no automorphism maps `cover` to a lexicographically smaller sorted multiset.
fn is_orbit_representative(cover: &[u64], perms: &[Vec<usize>]) -> bool {
    let mine = {
        let mut m = cover.to_vec();
        m.sort_unstable();
        m
    };
    perms.iter().all(|p| sorted_image(cover, p) >= mine)
}

/// Smallest-list-first colouring without backtracking; true on success.
fn greedy_colors(h: &Graph, masks: &[u128]) -> bool {
    let n = h.n();
    let mut avail = masks.to_vec();
    let mut done = 0u64;
    for _ in 0..n {
        let Some(v) = (0..n)
            .filter(|&v| done >> v & 1 == 0)
            .min_by_key(|&v| avail[v].count_ones())
        else {
            break;
        };
        if avail[v] == 0 {
            return false;
        }
        let nbrs = h.neighbors(v).0 & !done;
        // Prefer the colour offered to the fewest uncoloured neighbours.
        let mut best = (u32::MAX, 0u32);
        let mut m = avail[v];
        while m != 0 {
            let c = m.trailing_zeros();
            m &= m - 1;
            let hits = VertexSet(nbrs)
                .iter()
                .filter(|&u| avail[u] >> c & 1 == 1)
                .count() as u32;
            if hits < best.0 {
                best = (hits, c);
            }
        }
        done |= 1 << v;
        for u in VertexSet(nbrs).iter() {
            avail[u] &= !(1u128 << best.1);
        }
    }
    true
}

/// Lazily enumerated covers for the last group, pruned as soon as the lists
/// built so far admit a colouring.
struct Tail<'a> {
    h: &'a Graph,
    limits: &'a Limits,
    /// The tail may not come before this cover of an equal-sized group.
    floor: Option<&'a [u64]>,
    perms: Option<&'a [Vec<usize>]>,
}

impl Tail<'_> {
    /// `None` once the budget is spent; `Some(true)` leaves a witness cover in `chosen`.
    fn run(
        &self,
        deficit: &mut [u32],
        chosen: &mut Vec<u64>,
        tied: bool,
        masks: &mut [u128],
        color: usize,
    ) -> Option<bool> {
        if !self.limits.tick() {
            return None;
        }
        let n = self.h.n();
        let open: u64 = (0..n)
            .filter(|&v| deficit[v] > 0)
            .fold(0, |m, v| m | 1 << v);
        if open == 0 {
            let bad = color_from_masks(self.h, masks).is_none()
                && self
                    .perms
                    .is_none_or(|p| is_orbit_representative(chosen, p));
            return Some(bad);
        }
        if greedy_colors(self.h, masks) {
            return Some(false);
        }
        let low = open.trailing_zeros();
        let low_bit = 1u64 << low;
        let mut cap = match chosen.last() {
            Some(&prev) if prev.trailing_zeros() == low => prev,
            _ => u64::MAX,
        };
        let bound = if tied {
            self.floor.map(|f| f[chosen.len()])
        } else {
            None
        };
        if let Some(b) = bound {
            cap = cap.min(b);
        }
        let rest = open & !low_bit;
        let mut sub = rest;
        loop {
            let s = sub | low_bit;
            if s <= cap && chosen.iter().all(|&c| c & s != 0) {
                for v in VertexSet(s).iter() {
                    deficit[v] -= 1;
                    masks[v] |= 1u128 << color;
                }
                chosen.push(s);
                let r = self.run(deficit, chosen, bound == Some(s), masks, color + 1)?;
                if r {
                    return Some(true);
                }
                chosen.pop();
                for v in VertexSet(s).iter() {
                    deficit[v] += 1;
                    masks[v] &= !(1u128 << color);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        Some(false)
    }
}

/// Searches the reduced graph `h`. `big` holds the group sizes >= 2 in
/// descending order; `ones` counts the k=1 groups.
fn search_core(
    h: &Graph,
    big: &[u32],
    ones: usize,
    limits: &Limits,
) -> Option<Option<Vec<Vec<u64>>>> {
    let n = h.n();
    let q = big.len();
    let mut distinct: Vec<u32> = big[..q - 1].to_vec();
    distinct.dedup();
    let mut covers: Vec<(u32, Vec<Vec<u64>>)> = Vec::new();
    for &k in &distinct {
        covers.push((k, intersecting_covers(n, k, limits)?));
    }
    let table = |k: u32| -> &Vec<Vec<u64>> { &covers.iter().find(|(kk, _)| *kk == k).unwrap().1 };
    let perms = h
        .symmetry()
        .permutations(n, MAX_SYMMETRY_PERMS)
        .unwrap_or_else(|| vec![(0..n).collect()]);
    let full = VertexSet::full(n).0;
    let mut base = vec![0u128; n];
    let mut base_color = 0usize;
    for _ in 0..ones {
        push_cover(&[full], &mut base, &mut base_color);
    }

    let found = if q == 1 {
        let k = big[0];
        let rest = full & !1;
        let mut firsts = Vec::new();
        let mut sub = rest;
        loop {
            firsts.push(sub | 1);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        firsts.par_iter().find_map_first(|&s| {
            let mut deficit = vec![k; n];
            let mut masks = base.clone();
            for v in VertexSet(s).iter() {
                deficit[v] -= 1;
                masks[v] |= 1u128 << base_color;
            }
            let mut chosen = vec![s];
            let tail = Tail {
                h,
                limits,
                floor: None,
                perms: Some(&perms),
            };
            match tail.run(&mut deficit, &mut chosen, false, &mut masks, base_color + 1) {
                Some(true) => Some(vec![chosen]),
                _ => None,
            }
        })
    } else {
        let first: Vec<usize> = (0..table(big[0]).len())
            .filter(|&i| is_orbit_representative(&table(big[0])[i], &perms))
            .collect();
        first.par_iter().find_map_first(|&i0| {
            let mut chosen = vec![i0];
            let mut masks = base.clone();
            let mut next_color = base_color;
            push_cover(&table(big[0])[i0], &mut masks, &mut next_color);
            let (idx, last) = extend(
                h,
                big,
                &table,
                &mut chosen,
                &mut masks,
                &mut next_color,
                limits,
            )?;
            let mut out: Vec<Vec<u64>> = idx
                .iter()
                .zip(big)
                .map(|(&i, &k)| table(k)[i].clone())
                .collect();
            out.push(last);
            Some(out)
        })
    };
    if found.is_none() && limits.exhausted.load(Ordering::Relaxed) {
        return None;
    }
    Some(found)
}

fn push_cover(cover: &[u64], masks: &mut [u128], next_color: &mut usize) {
    for &s in cover {
        for v in VertexSet(s).iter() {
            masks[v] |= 1u128 << *next_color;
        }
        *next_color += 1;
    }
}

fn pop_cover(cover: &[u64], masks: &mut [u128], next_color: &mut usize) {
    for _ in cover {
        *next_color -= 1;
        for m in masks.iter_mut() {
            *m &= !(1u128 << *next_color);
        }
    }
}

fn extend<'t>(
    h: &Graph,
    big: &[u32],
    table: &dyn Fn(u32) -> &'t Vec<Vec<u64>>,
    chosen: &mut Vec<usize>,
    masks: &mut Vec<u128>,
    next_color: &mut usize,
    limits: &Limits,
) -> Option<(Vec<usize>, Vec<u64>)> {
    if !limits.tick() {
        return None;
    }
    // Colourable from the groups fixed so far: so is every completion.
    if color_from_masks(h, masks).is_some() {
        return None;
    }
    let depth = chosen.len();
    let k = big[depth];
    let after_equal = depth >= 2 && big[depth - 1] == k;
    if depth == big.len() - 1 {
        let floor = after_equal.then(|| table(k)[chosen[depth - 1]].as_slice());
        let tail = Tail {
            h,
            limits,
            floor,
            perms: None,
        };
        let mut deficit = vec![k; h.n()];
        let mut cover = Vec::new();
        return match tail.run(
            &mut deficit,
            &mut cover,
            floor.is_some(),
            masks,
            *next_color,
        ) {
            Some(true) => Some((chosen.clone(), cover)),
            _ => None,
        };
    }
    let start = if after_equal { chosen[depth - 1] } else { 0 };
    let list = table(k);
    for (i, cover) in list.iter().enumerate().skip(start) {
        chosen.push(i);
        push_cover(cover, masks, next_color);
        let hit = extend(h, big, table, chosen, masks, next_color, limits);
        pop_cover(cover, masks, next_color);
        chosen.pop();
        if hit.is_some() {
            return hit;
        }
        if limits.exhausted.load(Ordering::Relaxed) {
            return None;
        }
    }
    None
}

/// Decides λ-choosability of `g` by complete search, or runs out of budget.
pub fn find_bad_assignment(
    g: &Graph,
    lambda: &LambdaMultiset,
    budget: Budget,
) -> Result<ChoosabilityOutcome> {
    let k = lambda.k() as usize;
    if g.n() == 0 {
        return Ok(ChoosabilityOutcome::NoneExists);
    }
    if g.chromatic_number() > k {
        // Every vertex gets the same k colours.
        let groups: Vec<ColorGroup> = lambda
            .elements()
            .iter()
            .enumerate()
            .map(|(i, &ki)| ColorGroup {
                k: ki,
                colors: (1..=ki).map(|j| format!("c{}_{j}", i + 1)).collect(),
            })
            .collect();
        let list: Vec<String> = groups
            .iter()
            .flat_map(|grp| grp.colors.iter().cloned())
            .collect();
        return Ok(ChoosabilityOutcome::Witness(GroupedListAssignment {
            groups,
            lists: vec![list; g.n()],
        }));
    }
    if lambda.is_trivial() {
        return Ok(ChoosabilityOutcome::NoneExists);
    }
    let core = high_degree_core(g, k);
    if core.is_empty() {
        return Ok(ChoosabilityOutcome::NoneExists);
    }
    let (h, map) = g.induced(core);
    if h.n() * k > crate::lists::MAX_PALETTE {
        return Err(Error::InvalidArgument(format!(
            "instance too large: {} core vertices with k={k}",
            h.n()
        )));
    }
    let mut big: Vec<u32> = lambda
        .elements()
        .iter()
        .copied()
        .filter(|&e| e > 1)
        .collect();
    big.sort_unstable_by(|a, b| b.cmp(a));
    let ones = lambda.ones();
    let limits = Limits::new(budget);
    let found = match search_core(&h, &big, ones, &limits) {
        None => {
            return Ok(ChoosabilityOutcome::BudgetExhausted {
                nodes: limits.nodes.load(Ordering::Relaxed),
            })
        }
        Some(f) => f,
    };
    let Some(covers) = found else {
        return Ok(ChoosabilityOutcome::NoneExists);
    };

    // Lift to g: ascending group sizes, k=1 groups as one full-support colour.
    let mut groups: Vec<SupportMultiset> =
        vec![SupportMultiset::from_supports(1, &[VertexSet::full(h.n())]); ones];
    let mut big_groups: Vec<SupportMultiset> = covers
        .iter()
        .zip(&big)
        .map(|(c, &k)| {
            SupportMultiset::from_supports(k, &c.iter().map(|&s| VertexSet(s)).collect::<Vec<_>>())
        })
        .collect();
    big_groups.reverse();
    groups.extend(big_groups);
    let local = assignment_from_supports(h.n(), &groups);
    let mut lists = vec![Vec::new(); g.n()];
    for (i, &v) in map.iter().enumerate() {
        lists[v] = local.lists[i].clone();
    }
    let filler: Vec<String> = local
        .groups
        .iter()
        .flat_map(|grp| grp.colors.iter().take(grp.k as usize).cloned())
        .collect();
    for v in g.vertices().difference(core).iter() {
        lists[v] = filler.clone();
    }
    let witness = GroupedListAssignment {
        groups: local.groups,
        lists,
    };
    if !verify_bad_assignment(g, lambda, &witness)? {
        return Err(Error::InvalidArgument(
            "internal error: search produced an invalid witness".into(),
        ));
    }
    Ok(ChoosabilityOutcome::Witness(witness))
}

/// Result of a common choice number computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChT {
    Value(u32),
    /// Not determined for any `k <= k_max` (budget hit or every k had a witness).
    Unknown {
        k_max: u32,
    },
}

/// Least `k > t` such that `g` is λ_{k,t}-choosable, scanning up to `k_max`.
pub fn ch_t(g: &Graph, t: u32, k_max: u32, budget: Budget) -> Result<ChT> {
    for k in t + 1..=k_max {
        let lambda = LambdaMultiset::lambda_kt(k as i64, t as i64)?;
        match find_bad_assignment(g, &lambda, budget)? {
            ChoosabilityOutcome::NoneExists => return Ok(ChT::Value(k)),
            ChoosabilityOutcome::Witness(_) => continue,
            ChoosabilityOutcome::BudgetExhausted { .. } => return Ok(ChT::Unknown { k_max }),
        }
    }
    Ok(ChT::Unknown { k_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{construct_lemma_a, construct_thm_b};

    fn lam(s: &str) -> LambdaMultiset {
        s.parse().unwrap()
    }

    fn g(s: &str) -> Graph {
        s.parse().unwrap()
    }

    #[test]
    fn search_examples() {
        let out = find_bad_assignment(&g("K3,3"), &lam("2"), Budget::UNLIMITED).unwrap();
        let ChoosabilityOutcome::Witness(w) = out else {
            panic!("expected witness")
        };
        // Up to symmetry the only bad {2}-assignment: three colours, each pair on one vertex per side.
        let sm = SupportMultiset::of_group(&w, 0);
        assert_eq!(sm.color_count(), 3);
        assert!(sm.supports.iter().all(|(s, _)| s.len() == 4));
        assert_eq!(
            find_bad_assignment(&g("K4"), &lam("2,2"), Budget::UNLIMITED).unwrap(),
            ChoosabilityOutcome::NoneExists
        );
        assert!(
            find_bad_assignment(&g("K3,3,3"), &lam("1,2"), Budget::UNLIMITED)
                .unwrap()
                .is_witness()
        );
    }

    #[test]
    fn verify_examples() {
        let (gr, l) = construct_lemma_a(1, 1).unwrap();
        assert!(verify_bad_assignment(&gr, &lam("1,2"), &l).unwrap());
        let (gr, l, _) = construct_thm_b(&lam("3")).unwrap();
        assert!(verify_bad_assignment(&gr, &lam("3"), &l).unwrap());
        let k2 = g("K2");
        let l2 = GroupedListAssignment {
            groups: vec![ColorGroup {
                k: 2,
                colors: vec!["c1".into(), "c2".into()],
            }],
            lists: vec![vec!["c1".into(), "c2".into()]; 2],
        };
        assert!(!verify_bad_assignment(&k2, &lam("2"), &l2).unwrap());
        let mut broken = l2.clone();
        broken.lists[0].push("nope".into());
        assert!(verify_bad_assignment(&k2, &lam("2"), &broken).is_err());
    }

    #[test]
    fn ch_t_examples() {
        assert_eq!(
            ch_t(&g("K3,3"), 1, 6, Budget::UNLIMITED).unwrap(),
            ChT::Value(2)
        );
        assert_eq!(
            ch_t(&g("K3,3"), 0, 6, Budget::UNLIMITED).unwrap(),
            ChT::Value(3)
        );
        assert_eq!(
            ch_t(&g("K2"), 0, 4, Budget::UNLIMITED).unwrap(),
            ChT::Value(2)
        );
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let out = find_bad_assignment(&g("K3,3,3"), &lam("3"), Budget::nodes(50)).unwrap();
        assert!(matches!(out, ChoosabilityOutcome::BudgetExhausted { .. }));
    }

    #[test]
    fn cover_enumeration_is_exact_and_unique() {
        let limits = Limits::new(Budget::UNLIMITED);
        for n in 1..=5 {
            for k in 1..=3 {
                let covers = intersecting_covers(n, k, &limits).unwrap();
                let mut seen = std::collections::HashSet::new();
                for c in &covers {
                    let sm = SupportMultiset::from_supports(
                        k,
                        &c.iter().map(|&s| VertexSet(s)).collect::<Vec<_>>(),
                    );
                    assert!(sm.is_exact(n) && sm.is_intersecting());
                    assert!(seen.insert(sm));
                }
            }
        }
        // k=1: only the single full support survives merging.
        assert_eq!(
            intersecting_covers(4, 1, &limits).unwrap(),
            vec![vec![0b1111]]
        );
    }

    #[test]
    fn trivial_lambda_short_circuits() {
        assert_eq!(
            find_bad_assignment(&g("K3,3"), &lam("1,1"), Budget::UNLIMITED).unwrap(),
            ChoosabilityOutcome::NoneExists
        );
        let out = find_bad_assignment(&g("K3"), &lam("1,1"), Budget::UNLIMITED).unwrap();
        let ChoosabilityOutcome::Witness(w) = out else {
            panic!()
        };
        assert!(verify_bad_assignment(&g("K3"), &lam("1,1"), &w).unwrap());
    }
}
