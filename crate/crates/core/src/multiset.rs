//! Finite multisets of positive integers and the partial order between them.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A non-empty multiset of positive integers, stored as a non-decreasing
/// sequence. Equality and hashing are on this canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct LambdaMultiset {
    elems: Vec<u32>,
}

/// Derived statistics of a multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    /// Sum of the elements.
    pub k: u32,
    /// Number of elements.
    pub size: usize,
    /// Multiplicity of 1.
    pub ones: usize,
    /// Number of odd elements (counted with multiplicity).
    pub odd: usize,
}

impl LambdaMultiset {
    pub fn new(mut elems: Vec<u32>) -> Result<Self> {
        if elems.is_empty() {
            return invalid("multiset must have at least one element");
        }
        if elems.contains(&0) {
            return invalid("multiset elements must be positive");
        }
        elems.sort_unstable();
        Ok(Self { elems })
    }

    pub fn from_multiplicities(mult: &BTreeMap<u32, usize>) -> Result<Self> {
        let elems = mult
            .iter()
            .flat_map(|(&a, &m)| std::iter::repeat_n(a, m))
            .collect();
        Self::new(elems)
    }

    /// Elements in non-decreasing order.
    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn multiplicity(&self, a: u32) -> usize {
        self.elems.iter().filter(|&&e| e == a).count()
    }

    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for &e in &self.elems {
            *out.entry(e).or_insert(0) += 1;
        }
        out
    }

    pub fn k(&self) -> u32 {
        self.elems.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.multiplicity(1)
    }

    pub fn odd(&self) -> usize {
        self.elems.iter().filter(|&&e| e % 2 == 1).count()
    }

    pub fn stats(&self) -> Stats {
        Stats {
            k: self.k(),
            size: self.len(),
            ones: self.ones(),
            odd: self.odd(),
        }
    }

    /// All ones, i.e. `|λ| = k_λ`. Choosability for such λ is plain colourability.
    pub fn is_trivial(&self) -> bool {
        self.elems.iter().all(|&e| e == 1)
    }

    /// `t` copies of 1 and one copy of `k - t`.
    pub fn lambda_kt(k: i64, t: i64) -> Result<Self> {
        if t < 0 || t >= k {
            return invalid(format!("lambda_kt needs 0 <= t < k, got k={k}, t={t}"));
        }
        let mut elems = vec![1u32; t as usize];
        elems.push((k - t) as u32);
        Self::new(elems)
    }

    /// Multiplicity-wise sum.
    pub fn union(&self, other: &Self) -> Self {
        let mut elems = self.elems.clone();
        elems.extend_from_slice(&other.elems);
        elems.sort_unstable();
        Self { elems }
    }

    /// The multiset with one copy of `a` removed, if present and if something remains.
    pub fn without_one(&self, a: u32) -> Option<Self> {
        let pos = self.elems.iter().position(|&e| e == a)?;
        let mut elems = self.elems.clone();
        elems.remove(pos);
        if elems.is_empty() {
            None
        } else {
            Some(Self { elems })
        }
    }

    /// Every distinct ordering of the elements, in lexicographic order.
    pub fn distinct_orderings(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = self.elems.clone();
        loop {
            out.push(cur.clone());
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for LambdaMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for LambdaMultiset {
    type Err = Error;

    /// Comma-separated positive integers in any order; surrounding braces allowed.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let elems = body
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad multiset element {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(elems).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl TryFrom<Vec<u32>> for LambdaMultiset {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<LambdaMultiset> for Vec<u32> {
    fn from(l: LambdaMultiset) -> Self {
        l.elems
    }
}

/// Assigns each element of `source` (by index) to one of `targets.len()` slots.
/// With `exact`, slot `i` must sum to exactly `targets[i]`, otherwise to at least it.
/// Returns slot contents as lists of indices into `source`.
fn assign_to_slots(targets: &[u32], source: &[u32], exact: bool) -> Option<Vec<Vec<usize>>> {
    // Largest elements first: tighter pruning.
    let mut order: Vec<usize> = (0..source.len()).collect();
    order.sort_by(|&a, &b| source[b].cmp(&source[a]));
    let mut fill = vec![0u32; targets.len()];
    let mut slots = vec![Vec::new(); targets.len()];
    let mut failed = HashSet::new();
    let total: u32 = source.iter().sum();
    if exact && total != targets.iter().sum::<u32>() {
        return None;
    }
    if assign_rec(
        targets,
        source,
        &order,
        0,
        total,
        exact,
        &mut fill,
        &mut slots,
        &mut failed,
    ) {
        Some(slots)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn assign_rec(
    targets: &[u32],
    source: &[u32],
    order: &[usize],
    pos: usize,
    remaining: u32,
    exact: bool,
    fill: &mut Vec<u32>,
    slots: &mut Vec<Vec<usize>>,
    failed: &mut HashSet<(usize, Vec<(u32, u32)>)>,
) -> bool {
    let deficit: u32 = targets
        .iter()
        .zip(fill.iter())
        .map(|(&t, &f)| t.saturating_sub(f))
        .sum();
    if deficit > remaining {
        return false;
    }
    if pos == order.len() {
        return deficit == 0;
    }
    let mut key: Vec<(u32, u32)> = targets.iter().copied().zip(fill.iter().copied()).collect();
    key.sort_unstable();
    let key = (pos, key);
    if failed.contains(&key) {
        return false;
    }
    let idx = order[pos];
    let val = source[idx];
    let mut tried: Vec<(u32, u32)> = Vec::new();
    for slot in 0..targets.len() {
        if exact && fill[slot] + val > targets[slot] {
            continue;
        }
        // Slots in the same (target, fill) state are interchangeable.
        let sig = (targets[slot], fill[slot]);
        if tried.contains(&sig) {
            continue;
        }
        tried.push(sig);
        fill[slot] += val;
        slots[slot].push(idx);
        if assign_rec(
            targets,
            source,
            order,
            pos + 1,
            remaining - val,
            exact,
            fill,
            slots,
            failed,
        ) {
            return true;
        }
        slots[slot].pop();
        fill[slot] -= val;
    }
    failed.insert(key);
    false
}

/// `lambda <= other`: `other` splits into `|lambda|` parts whose sums dominate
/// the elements of `lambda`.
pub fn leq(lambda: &LambdaMultiset, other: &LambdaMultiset) -> bool {
    leq_plan(lambda, other).is_some()
}

/// Witness for [`leq`]: entry `i` lists the indices (into `other.elements()`)
/// of the part assigned to `lambda.elements()[i]`.
pub fn leq_plan(lambda: &LambdaMultiset, other: &LambdaMultiset) -> Option<Vec<Vec<usize>>> {
    assign_to_slots(lambda.elements(), other.elements(), false)
}

/// `fine` arises from `coarse` by replacing elements with integer partitions of themselves.
pub fn is_refinement(fine: &LambdaMultiset, coarse: &LambdaMultiset) -> bool {
    assign_to_slots(coarse.elements(), fine.elements(), true).is_some()
}

/// All integer partitions of `k`, ordered by number of parts and then
/// lexicographically on the non-decreasing element sequence.
pub fn enumerate_lambdas(k: i64) -> Result<Vec<LambdaMultiset>> {
    if k < 1 {
        return invalid(format!("k must be at least 1, got {k}"));
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    partitions_rec(k as u32, k as u32, &mut cur, &mut out);
    let mut out: Vec<LambdaMultiset> = out
        .into_iter()
        .map(|elems| LambdaMultiset::new(elems).expect("partition parts are positive"))
        .collect();
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.elements().cmp(b.elements()))
    });
    Ok(out)
}

fn partitions_rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for part in (1..=max.min(rest)).rev() {
        cur.push(part);
        partitions_rec(rest - part, part, cur, out);
        cur.pop();
    }
}
