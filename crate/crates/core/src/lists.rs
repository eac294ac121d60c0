//! Grouped list assignments and exact list colouring.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::multiset::LambdaMultiset;

/// Colours are opaque strings.
pub type ColorId = String;

/// Largest palette the colouring search handles.
pub const MAX_PALETTE: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorGroup {
    /// Minimum number of this group's colours in every list.
    pub k: u32,
    pub colors: Vec<ColorId>,
}

/// A list assignment whose palette is explicitly split into groups `C_i`,
/// each carrying its required per-vertex count `k_i`. Lists keep their
/// insertion order so text certificates round-trip exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupedListAssignment {
    pub groups: Vec<ColorGroup>,
    pub lists: Vec<Vec<ColorId>>,
}

/// A colour per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperColoring {
    pub colors: Vec<ColorId>,
}

impl ProperColoring {
    /// Checks both colouring invariants: list membership and edge properness.
    pub fn is_valid_for(&self, g: &Graph, lists: &GroupedListAssignment) -> bool {
        self.colors.len() == g.n()
            && self.colors.len() == lists.lists.len()
            && self
                .colors
                .iter()
                .zip(&lists.lists)
                .all(|(c, l)| l.contains(c))
            && g.edges()
                .iter()
                .all(|&(u, v)| self.colors[u] != self.colors[v])
    }
}

impl GroupedListAssignment {
    pub fn n(&self) -> usize {
        self.lists.len()
    }

    /// Map from colour to group index.
    pub fn color_groups(&self) -> HashMap<&str, usize> {
        let mut out = HashMap::new();
        for (i, g) in self.groups.iter().enumerate() {
            for c in &g.colors {
                out.insert(c.as_str(), i);
            }
        }
        out
    }

    /// The group sizes as a multiset.
    pub fn lambda(&self) -> Result<LambdaMultiset> {
        LambdaMultiset::new(self.groups.iter().map(|g| g.k).collect())
    }

    /// Structural checks: groups are disjoint and non-empty, lists are
    /// duplicate-free and only use grouped colours, every colour is used.
    pub fn validate(&self) -> Result<()> {
        if self.groups.is_empty() {
            return Err(Error::Malformed("no colour groups".into()));
        }
        let mut seen = HashSet::new();
        for (i, g) in self.groups.iter().enumerate() {
            if g.k == 0 {
                return Err(Error::Malformed(format!("group {i} has k=0")));
            }
            if g.colors.is_empty() {
                return Err(Error::Malformed(format!("group {i} has no colours")));
            }
            for c in &g.colors {
                if !seen.insert(c.as_str()) {
                    return Err(Error::Malformed(format!(
                        "colour {c:?} appears in two groups or twice"
                    )));
                }
            }
        }
        let mut used = HashSet::new();
        for (v, list) in self.lists.iter().enumerate() {
            let mut in_list = HashSet::new();
            for c in list {
                if !seen.contains(c.as_str()) {
                    return Err(Error::Malformed(format!(
                        "vertex {v}: colour {c:?} is in no group"
                    )));
                }
                if !in_list.insert(c.as_str()) {
                    return Err(Error::Malformed(format!(
                        "vertex {v}: colour {c:?} repeated"
                    )));
                }
                used.insert(c.as_str());
            }
        }
        if let Some(c) = seen.iter().find(|c| !used.contains(*c)) {
            return Err(Error::Malformed(format!("colour {c:?} appears in no list")));
        }
        if seen.len() > MAX_PALETTE {
            return Err(Error::Malformed(format!(
                "palette of {} colours exceeds {MAX_PALETTE}",
                seen.len()
            )));
        }
        Ok(())
    }

    /// `|L(v) ∩ C_i|` for every vertex and group.
    pub fn group_counts(&self) -> Vec<Vec<usize>> {
        let cg = self.color_groups();
        self.lists
            .iter()
            .map(|list| {
                let mut counts = vec![0usize; self.groups.len()];
                for c in list {
                    if let Some(&g) = cg.get(c.as_str()) {
                        counts[g] += 1;
                    }
                }
                counts
            })
            .collect()
    }

    /// True iff the group sizes equal `lambda` and every vertex sees at least
    /// `k_i` colours of group `i`. Structurally malformed input is never valid.
    pub fn is_lambda_assignment(&self, lambda: &LambdaMultiset) -> bool {
        if self.validate().is_err() {
            return false;
        }
        match self.lambda() {
            Ok(l) if &l == lambda => {}
            _ => return false,
        }
        self.group_counts().iter().all(|counts| {
            counts
                .iter()
                .zip(&self.groups)
                .all(|(&c, g)| c >= g.k as usize)
        })
    }

    /// Palette indices in group order, and each list as a bitmask over them.
    pub(crate) fn indexed(&self) -> Result<(Vec<&str>, Vec<u128>)> {
        self.validate()?;
        let palette: Vec<&str> = self
            .groups
            .iter()
            .flat_map(|g| g.colors.iter().map(String::as_str))
            .collect();
        let index: HashMap<&str, usize> =
            palette.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let masks = self
            .lists
            .iter()
            .map(|l| l.iter().fold(0u128, |m, c| m | 1u128 << index[c.as_str()]))
            .collect();
        Ok((palette, masks))
    }
}

/// Finds a proper colouring from bitmask lists. Vertices are chosen by fewest
/// available colours (ties: smaller list, then lower index) and colours are
/// tried in increasing palette index, so the result is deterministic.
pub fn color_from_masks(g: &Graph, lists: &[u128]) -> Option<Vec<usize>> {
    let n = g.n();
    let mut assigned = vec![usize::MAX; n];
    if color_masks_rec(g, lists, &mut assigned, n) {
        Some(assigned)
    } else {
        None
    }
}

fn color_masks_rec(g: &Graph, lists: &[u128], assigned: &mut Vec<usize>, left: usize) -> bool {
    if left == 0 {
        return true;
    }
    let mut pick = usize::MAX;
    let mut pick_avail = 0u128;
    let mut pick_key = (u32::MAX, u32::MAX);
    for v in 0..g.n() {
        if assigned[v] != usize::MAX {
            continue;
        }
        let mut forbidden = 0u128;
        for u in g.neighbors(v).iter() {
            if assigned[u] != usize::MAX {
                forbidden |= 1u128 << assigned[u];
            }
        }
        let avail = lists[v] & !forbidden;
        if avail == 0 {
            return false;
        }
        let key = (avail.count_ones(), lists[v].count_ones());
        if key < pick_key {
            pick = v;
            pick_avail = avail;
            pick_key = key;
        }
    }
    let mut avail = pick_avail;
    while avail != 0 {
        let c = avail.trailing_zeros() as usize;
        avail &= avail - 1;
        assigned[pick] = c;
        if color_masks_rec(g, lists, assigned, left - 1) {
            return true;
        }
    }
    assigned[pick] = usize::MAX;
    false
}

/// A proper `L`-colouring of `g` if one exists.
pub fn find_list_coloring(
    g: &Graph,
    lists: &GroupedListAssignment,
) -> Result<Option<ProperColoring>> {
    if lists.n() != g.n() {
        return invalid(format!(
            "{} lists for a graph on {} vertices",
            lists.n(),
            g.n()
        ));
    }
    let (palette, masks) = lists.indexed()?;
    Ok(color_from_masks(g, &masks).map(|assigned| ProperColoring {
        colors: assigned
            .into_iter()
            .map(|c| palette[c].to_string())
            .collect(),
    }))
}

/// Coarsens the grouping of `lists`: every block of `plan` (group indices)
/// becomes one group. Blocks are matched to the elements of `lambda` by
/// pairing both in increasing order, and each block's total `k` must cover
/// its matched element. Lists are untouched.
pub fn merge_groups(
    lists: &GroupedListAssignment,
    plan: &[Vec<usize>],
    lambda: &LambdaMultiset,
) -> Result<GroupedListAssignment> {
    if plan.len() != lambda.len() {
        return invalid(format!(
            "plan has {} blocks but lambda has {} elements",
            plan.len(),
            lambda.len()
        ));
    }
    let mut seen = vec![false; lists.groups.len()];
    for &g in plan.iter().flatten() {
        if g >= seen.len() || seen[g] {
            return invalid(format!("group {g} is missing or repeated in the plan"));
        }
        seen[g] = true;
    }
    if seen.iter().any(|s| !s) {
        return invalid("plan does not cover every group");
    }
    let sums: Vec<u32> = plan
        .iter()
        .map(|b| b.iter().map(|&g| lists.groups[g].k).sum())
        .collect();
    let mut by_sum: Vec<usize> = (0..plan.len()).collect();
    by_sum.sort_by_key(|&b| (sums[b], b));
    let mut target = vec![0u32; plan.len()];
    for (&b, &k) in by_sum.iter().zip(lambda.elements()) {
        if sums[b] < k {
            return invalid(format!(
                "plan block {b} sums to {} but must cover {k}",
                sums[b]
            ));
        }
        target[b] = k;
    }
    let groups = plan
        .iter()
        .zip(&target)
        .map(|(block, &k)| ColorGroup {
            k,
            colors: block
                .iter()
                .flat_map(|&g| lists.groups[g].colors.iter().cloned())
                .collect(),
        })
        .collect();
    Ok(GroupedListAssignment {
        groups,
        lists: lists.lists.clone(),
    })
}

/// Merge plan realising `lambda <= finer` for an assignment grouped by `finer`.
/// Group `i` of `lists` must carry `k` equal to the matching element of `finer`;
/// returns `None` when `lambda` is not below the assignment's grouping.
pub fn plan_for_leq(
    lists: &GroupedListAssignment,
    lambda: &LambdaMultiset,
) -> Option<Vec<Vec<usize>>> {
    let ks: Vec<u32> = lists.groups.iter().map(|g| g.k).collect();
    let finer = LambdaMultiset::new(ks.clone()).ok()?;
    let slots = crate::multiset::leq_plan(lambda, &finer)?;
    // `slots` indexes the sorted elements of `finer`; map them back to groups.
    let mut by_value: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (g, &k) in ks.iter().enumerate().rev() {
        by_value.entry(k).or_default().push(g);
    }
    let sorted = finer.elements();
    Some(
        slots
            .into_iter()
            .map(|slot| {
                slot.into_iter()
                    .map(|idx| {
                        by_value
                            .get_mut(&sorted[idx])
                            .and_then(Vec::pop)
                            .expect("value present")
                    })
                    .collect()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::construct_lemma_a;
    use rand::{Rng, SeedableRng};

    fn lam(s: &str) -> LambdaMultiset {
        s.parse().unwrap()
    }

    fn uniform(n: usize, colors: &[&str]) -> GroupedListAssignment {
        GroupedListAssignment {
            groups: vec![ColorGroup {
                k: colors.len() as u32,
                colors: colors.iter().map(|c| c.to_string()).collect(),
            }],
            lists: vec![colors.iter().map(|c| c.to_string()).collect(); n],
        }
    }

    #[test]
    fn lambda_assignment_examples() {
        let (_, l) = construct_lemma_a(1, 1).unwrap();
        assert!(l.is_lambda_assignment(&lam("1,2")));
        let mut cut = l.clone();
        let victim = cut.lists[0]
            .iter()
            .position(|c| c.starts_with('a'))
            .unwrap();
        cut.lists[0].remove(victim);
        assert!(!cut.is_lambda_assignment(&lam("1,2")));
        assert!(!l.is_lambda_assignment(&lam("3")));
    }

    #[test]
    fn coloring_examples() {
        let (g, l) = construct_lemma_a(0, 1).unwrap();
        assert_eq!(find_list_coloring(&g, &l).unwrap(), None);
        let k2 = Graph::complete(2).unwrap();
        let l2 = uniform(2, &["c1", "c2"]);
        let col = find_list_coloring(&k2, &l2).unwrap().unwrap();
        assert!(col.is_valid_for(&k2, &l2));
        let k33: Graph = "K3,3".parse().unwrap();
        let l3 = uniform(6, &["c1", "c2", "c3"]);
        let col = find_list_coloring(&k33, &l3).unwrap().unwrap();
        assert!(col.is_valid_for(&k33, &l3));
        assert!(find_list_coloring(&k2, &uniform(3, &["c1"])).is_err());
    }

    #[test]
    fn merge_examples() {
        let (g, l) = construct_lemma_a(2, 1).unwrap();
        let identity: Vec<Vec<usize>> = (0..l.groups.len()).map(|i| vec![i]).collect();
        assert_eq!(merge_groups(&l, &identity, &lam("1,1,2")).unwrap(), l);
        let all = merge_groups(&l, &[vec![0, 1, 2]], &lam("4")).unwrap();
        assert!(all.is_lambda_assignment(&lam("4")));
        // groups are e1 (1), e2 (1), a1 (2): plan {{1},{1,2}}
        let merged = merge_groups(&l, &[vec![0], vec![1, 2]], &lam("1,3")).unwrap();
        assert!(merged.is_lambda_assignment(&lam("1,3")));
        assert_eq!(find_list_coloring(&g, &merged).unwrap(), None);
        assert!(merge_groups(&l, &[vec![0], vec![1]], &lam("1,3")).is_err());
        assert!(merge_groups(&l, &[vec![0, 1], vec![2]], &lam("1,3")).is_err());
    }

    #[test]
    fn plan_for_leq_matches_order() {
        let (_, l) = construct_lemma_a(2, 1).unwrap();
        for target in ["4", "1,3", "2,2", "1,1,2", "1", "2", "3"] {
            let lambda = lam(target);
            let plan = plan_for_leq(&l, &lambda);
            assert_eq!(
                plan.is_some(),
                crate::multiset::leq(&lambda, &lam("1,1,2")),
                "{target}"
            );
            if let Some(plan) = plan {
                assert!(merge_groups(&l, &plan, &lambda)
                    .unwrap()
                    .is_lambda_assignment(&lambda));
            }
        }
    }

    fn brute_colorable(g: &Graph, lists: &[Vec<usize>]) -> bool {
        let n = g.n();
        let mut idx = vec![0usize; n];
        loop {
            if g.edges()
                .iter()
                .all(|&(u, v)| lists[u][idx[u]] != lists[v][idx[v]])
            {
                return true;
            }
            let mut i = 0;
            while i < n {
                idx[i] += 1;
                if idx[i] < lists[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == n {
                return false;
            }
        }
    }

    fn random_instance(rng: &mut impl Rng) -> (Graph, GroupedListAssignment) {
        let n = rng.gen_range(1..=6);
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.6) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        let palette: usize = rng.gen_range(1..=8);
        let names: Vec<String> = (0..palette).map(|c| format!("c{c}")).collect();
        let lists: Vec<Vec<String>> = (0..n)
            .map(|_| {
                let mut l: Vec<String> = names
                    .iter()
                    .filter(|_| rng.gen_bool(0.4))
                    .cloned()
                    .collect();
                if l.is_empty() {
                    l.push(names[rng.gen_range(0..palette)].clone());
                }
                l
            })
            .collect();
        let used: Vec<String> = names
            .into_iter()
            .filter(|c| lists.iter().any(|l| l.contains(c)))
            .collect();
        (
            g,
            GroupedListAssignment {
                groups: vec![ColorGroup { k: 1, colors: used }],
                lists,
            },
        )
    }

    #[test]
    fn coloring_agrees_with_brute_force() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..600 {
            let (g, l) = random_instance(&mut rng);
            let (palette, _) = l.indexed().unwrap();
            let idx: Vec<Vec<usize>> = l
                .lists
                .iter()
                .map(|list| {
                    list.iter()
                        .map(|c| palette.iter().position(|p| p == c).unwrap())
                        .collect()
                })
                .collect();
            let found = find_list_coloring(&g, &l).unwrap();
            assert_eq!(found.is_some(), brute_colorable(&g, &idx));
            if let Some(col) = found {
                assert!(col.is_valid_for(&g, &l));
            }
        }
    }

    #[test]
    fn deleting_colors_never_creates_colorings() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..300 {
            let (g, l) = random_instance(&mut rng);
            let mut trimmed = l.clone();
            for list in trimmed.lists.iter_mut() {
                if list.len() > 1 && rng.gen_bool(0.5) {
                    list.remove(rng.gen_range(0..list.len()));
                }
            }
            trimmed.groups[0]
                .colors
                .retain(|c| trimmed.lists.iter().any(|list| list.contains(c)));
            if find_list_coloring(&g, &trimmed).unwrap().is_some() {
                assert!(find_list_coloring(&g, &l).unwrap().is_some());
            }
        }
    }

    #[test]
    fn malformed_assignments_are_rejected() {
        let mut l = uniform(2, &["c1", "c2"]);
        l.lists[0].push("zz".into());
        assert!(l.validate().is_err());
        let mut l = uniform(2, &["c1", "c2"]);
        l.lists[1].push("c1".into());
        assert!(l.validate().is_err());
        let mut l = uniform(2, &["c1", "c2"]);
        l.groups.push(ColorGroup {
            k: 1,
            colors: vec!["c1".into()],
        });
        assert!(l.validate().is_err());
    }
}
