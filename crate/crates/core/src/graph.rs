//! Small simple graphs on at most 64 vertices, stored as adjacency bitsets.
//!
//! Complete multipartite graphs number their vertices part-major: part 0 holds
//! vertices `0..s0`, part 1 holds `s0..s0+s1`, and so on.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A set of vertices as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_iter_vertices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VertexSet(it.into_iter().fold(0u64, |acc, v| acc | (1u64 << v)))
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        VertexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        VertexSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        VertexSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// Applies a vertex permutation (`perm[v]` is the image of `v`).
    pub fn permute(self, perm: &[usize]) -> Self {
        let mut out = 0u64;
        for v in self.iter() {
            out |= 1u64 << perm[v];
        }
        VertexSet(out)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl FromStr for VertexSet {
    type Err = Error;

    /// Accepts `{0,1,2}`, `0,1,2` or `0 1 2`; `{}` is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut set = VertexSet::EMPTY;
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex {tok:?}")))?;
            if v >= MAX_VERTICES {
                return Err(Error::Parse(format!("vertex {v} out of range")));
            }
            set.insert(v);
        }
        Ok(set)
    }
}

/// Part sizes of a complete multipartite graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultipartiteSpec {
    pub part_sizes: Vec<usize>,
}

impl MultipartiteSpec {
    pub fn new(part_sizes: Vec<usize>) -> Result<Self> {
        if part_sizes.is_empty() {
            return invalid("multipartite spec needs at least one part");
        }
        if part_sizes.contains(&0) {
            return invalid("part sizes must be positive");
        }
        let n: usize = part_sizes.iter().sum();
        if n > MAX_VERTICES {
            return invalid(format!("{n} vertices exceeds the limit of {MAX_VERTICES}"));
        }
        Ok(Self { part_sizes })
    }

    pub fn n(&self) -> usize {
        self.part_sizes.iter().sum()
    }
}

impl fmt::Display for MultipartiteSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.part_sizes.iter().map(|p| p.to_string()).collect();
        write!(f, "K{}", s.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    parts: Option<Vec<VertexSet>>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return invalid(format!("{n} vertices exceeds the limit of {MAX_VERTICES}"));
        }
        Ok(Self {
            n,
            adj: vec![0; n],
            parts: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return invalid(format!("edge {u}-{v} out of range for {} vertices", self.n));
        }
        if u == v {
            return invalid(format!("loop at vertex {u}"));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        if let Some(parts) = &self.parts {
            if parts.iter().any(|p| p.contains(u) && p.contains(v)) {
                self.parts = None;
            }
        }
        Ok(())
    }

    pub fn complete_multipartite(spec: &MultipartiteSpec) -> Result<Self> {
        let spec = MultipartiteSpec::new(spec.part_sizes.clone())?;
        let n = spec.n();
        let mut parts = Vec::with_capacity(spec.part_sizes.len());
        let mut start = 0;
        for &s in &spec.part_sizes {
            parts.push(VertexSet::from_iter_vertices(start..start + s));
            start += s;
        }
        let all = VertexSet::full(n);
        let mut adj = vec![0u64; n];
        for p in &parts {
            for v in p.iter() {
                adj[v] = all.difference(*p).0;
            }
        }
        Ok(Self {
            n,
            adj,
            parts: Some(parts),
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::complete_multipartite(&MultipartiteSpec::new(vec![1; n])?)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return invalid("cycle needs at least 3 vertices");
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u).iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Recorded part structure, present for graphs built as complete multipartite.
    pub fn parts(&self) -> Option<&[VertexSet]> {
        self.parts.as_deref()
    }

    pub fn part_sizes(&self) -> Option<Vec<usize>> {
        self.parts
            .as_ref()
            .map(|p| p.iter().map(|s| s.len()).collect())
    }

    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.as_ref()?.iter().position(|p| p.contains(v))
    }

    /// True when the recorded parts exist and every cross-part pair is an edge.
    pub fn is_complete_multipartite(&self) -> bool {
        match &self.parts {
            None => false,
            Some(parts) => parts.iter().all(|p| {
                let outside = self.vertices().difference(*p);
                p.iter().all(|v| self.adj[v] == outside.0)
            }),
        }
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.adj[v] & set.0 == 0)
    }

    /// Induced subgraph on `keep`, vertices renumbered in increasing order.
    /// Returns the subgraph and the map from new index to old index.
    pub fn induced(&self, keep: VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.iter().collect();
        let mut inv = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            inv[v] = i;
        }
        let relabel = |s: VertexSet| {
            VertexSet::from_iter_vertices(s.intersection(keep).iter().map(|v| inv[v]))
        };
        let adj = map.iter().map(|&v| relabel(self.neighbors(v)).0).collect();
        let parts = self.parts.as_ref().map(|parts| {
            parts
                .iter()
                .map(|&p| relabel(p))
                .filter(|p| !p.is_empty())
                .collect()
        });
        (
            Graph {
                n: map.len(),
                adj,
                parts,
            },
            map,
        )
    }

    /// Parses an edge-list file: one `u v` pair per line, 0-indexed. Blank lines
    /// and `#` comments are ignored; an optional `n N` line fixes the vertex count.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("line {}: expected `u v`, got {line:?}", lineno + 1));
            match toks.as_slice() {
                ["n", count] => n = Some(count.parse::<usize>().map_err(|_| bad())?),
                [u, v] => {
                    edges.push((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?))
                }
                _ => return Err(bad()),
            }
        }
        let max = edges
            .iter()
            .map(|&(u, v): &(usize, usize)| u.max(v) + 1)
            .max()
            .unwrap_or(0);
        let n = n.unwrap_or(max);
        if n < max {
            return Err(Error::Parse(format!(
                "edge endpoint {} exceeds declared n={n}",
                max - 1
            )));
        }
        Self::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Exact chromatic number by DSATUR-style branch and bound with a greedy
    /// clique lower bound.
    pub fn chromatic_number(&self) -> usize {
        self.optimal_coloring()
            .into_iter()
            .map(|c| c + 1)
            .max()
            .unwrap_or(0)
    }

    /// A proper colouring with the fewest colours, as colour indices `0..χ`.
    pub fn optimal_coloring(&self) -> Vec<usize> {
        if self.n == 0 {
            return Vec::new();
        }
        let lower = self.greedy_clique().len();
        let mut best = (0..self.n).collect::<Vec<_>>();
        let mut colors = vec![usize::MAX; self.n];
        self.color_bb(&mut colors, 0, 0, lower, &mut best);
        best
    }

    fn greedy_clique(&self) -> VertexSet {
        let mut best = VertexSet::EMPTY;
        for start in 0..self.n {
            let mut clique = VertexSet::singleton(start);
            let mut cand = self.neighbors(start);
            while let Some(v) = cand
                .iter()
                .max_by_key(|&v| self.neighbors(v).intersection(cand).len())
            {
                clique.insert(v);
                cand = cand.intersection(self.neighbors(v));
            }
            if clique.len() > best.len() {
                best = clique;
            }
        }
        best
    }

    fn color_bb(
        &self,
        colors: &mut Vec<usize>,
        colored: usize,
        used: usize,
        lower: usize,
        best: &mut Vec<usize>,
    ) {
        let best_used = best.iter().max().map_or(0, |&c| c + 1);
        if used >= best_used || best_used == lower {
            return;
        }
        if colored == self.n {
            best.clone_from(colors);
            return;
        }
        // Uncoloured vertex of maximum saturation, ties by degree.
        let mut pick = usize::MAX;
        let mut pick_key = (0usize, 0usize);
        for v in 0..self.n {
            if colors[v] != usize::MAX {
                continue;
            }
            let mut seen = 0u64;
            for u in self.neighbors(v).iter() {
                if colors[u] != usize::MAX {
                    seen |= 1 << colors[u];
                }
            }
            let key = (seen.count_ones() as usize, self.degree(v));
            if pick == usize::MAX || key > pick_key {
                pick = v;
                pick_key = key;
            }
        }
        let v = pick;
        for c in 0..=used.min(self.n - 1) {
            if self.neighbors(v).iter().any(|u| colors[u] == c) {
                continue;
            }
            colors[v] = c;
            let next_used = if c == used { used + 1 } else { used };
            self.color_bb(colors, colored + 1, next_used, lower, best);
            colors[v] = usize::MAX;
            if best.iter().max().map_or(0, |&c| c + 1) == lower {
                return;
            }
        }
    }

    /// All non-empty independent subsets of `within`, in increasing bitmask order.
    pub fn independent_subsets(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.indep_rec(within, VertexSet::EMPTY, &mut out);
        out.sort();
        out
    }

    fn indep_rec(&self, cand: VertexSet, cur: VertexSet, out: &mut Vec<VertexSet>) {
        for v in cand.iter() {
            let next = cur.union(VertexSet::singleton(v));
            out.push(next);
            // Only larger vertices, not adjacent to v.
            let higher = VertexSet(cand.0 & !((2u64 << v) - 1));
            self.indep_rec(higher.difference(self.neighbors(v)), next, out);
        }
    }

    /// Inclusion-maximal independent subsets of `within`, in increasing bitmask order.
    pub fn maximal_independent_subsets(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        if within.is_empty() {
            return out;
        }
        self.bron_kerbosch(VertexSet::EMPTY, within, VertexSet::EMPTY, within, &mut out);
        out.sort();
        out
    }

    // Maximal cliques of the complement of G[within].
    fn bron_kerbosch(
        &self,
        r: VertexSet,
        p: VertexSet,
        x: VertexSet,
        within: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        let mut p = p;
        let mut x = x;
        let non_nbrs = |v: usize| {
            within
                .difference(self.neighbors(v))
                .difference(VertexSet::singleton(v))
        };
        let pivot = p
            .union(x)
            .iter()
            .max_by_key(|&u| non_nbrs(u).intersection(p).len())
            .unwrap();
        for v in p.difference(non_nbrs(pivot)).iter() {
            let nv = non_nbrs(v);
            self.bron_kerbosch(
                r.union(VertexSet::singleton(v)),
                p.intersection(nv),
                x.intersection(nv),
                within,
                out,
            );
            p.remove(v);
            x.insert(v);
        }
    }

    /// Classes of vertices with identical open neighbourhoods. Each class is an
    /// independent set and any permutation inside a class is an automorphism.
    pub fn twin_classes(&self) -> Vec<VertexSet> {
        let mut classes: Vec<VertexSet> = Vec::new();
        for v in 0..self.n {
            match classes
                .iter_mut()
                .find(|c| self.adj[c.first().unwrap()] == self.adj[v])
            {
                Some(c) => c.insert(v),
                None => classes.push(VertexSet::singleton(v)),
            }
        }
        classes
    }

    /// Symmetry data used by the searches; see [`Symmetry`].
    pub fn symmetry(&self) -> Symmetry {
        let classes = self.twin_classes();
        // Whole classes can be exchanged when the graph is complete multipartite
        // over its twin classes and the classes have equal size.
        let complete_over_classes = classes.iter().all(|c| {
            let v = c.first().unwrap();
            self.adj[v] == self.vertices().difference(*c).0
        });
        let mut swap_groups: Vec<Vec<usize>> = Vec::new();
        for (i, c) in classes.iter().enumerate() {
            let slot = if complete_over_classes {
                swap_groups
                    .iter_mut()
                    .find(|g| classes[g[0]].len() == c.len())
            } else {
                None
            };
            match slot {
                Some(g) => g.push(i),
                None => swap_groups.push(vec![i]),
            }
        }
        Symmetry {
            classes,
            swap_groups,
        }
    }

    /// Vertex orbits under the symmetries the searches exploit. These may be
    /// finer than the true automorphism orbits, never coarser.
    pub fn vertex_orbits(&self) -> Vec<VertexSet> {
        let sym = self.symmetry();
        sym.swap_groups
            .iter()
            .map(|g| {
                g.iter()
                    .fold(VertexSet::EMPTY, |acc, &i| acc.union(sym.classes[i]))
            })
            .collect()
    }
}

/// A subgroup of the automorphism group: arbitrary permutations inside each
/// twin class, plus exchanges of whole classes within a swap group.
#[derive(Debug, Clone)]
pub struct Symmetry {
    pub classes: Vec<VertexSet>,
    /// Indices into `classes`; classes in one group have equal size and are interchangeable.
    pub swap_groups: Vec<Vec<usize>>,
}

impl Symmetry {
    /// Order of the group, saturating.
    pub fn order(&self) -> u128 {
        let fact = |m: usize| (1..=m as u128).fold(1u128, |a, b| a.saturating_mul(b));
        let mut total = 1u128;
        for c in &self.classes {
            total = total.saturating_mul(fact(c.len()));
        }
        for g in &self.swap_groups {
            total = total.saturating_mul(fact(g.len()));
        }
        total
    }

    /// Every element as a permutation array, or `None` when there are more than `limit`.
    pub fn permutations(&self, n: usize, limit: usize) -> Option<Vec<Vec<usize>>> {
        if self.order() > limit as u128 {
            return None;
        }
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        // Within-class permutations.
        for c in &self.classes {
            let verts: Vec<usize> = c.iter().collect();
            let images = permutations_of(&verts);
            let mut next = Vec::with_capacity(perms.len() * images.len());
            for p in &perms {
                for img in &images {
                    let mut q = p.clone();
                    for (src, &dst) in verts.iter().zip(img) {
                        q[*src] = p[dst];
                    }
                    next.push(q);
                }
            }
            perms = next;
        }
        // Class exchanges.
        for g in &self.swap_groups {
            if g.len() < 2 {
                continue;
            }
            let arrangements = permutations_of(g);
            let mut next = Vec::with_capacity(perms.len() * arrangements.len());
            for p in &perms {
                for arr in &arrangements {
                    let mut q = p.clone();
                    for (from, to) in g.iter().zip(arr) {
                        let src: Vec<usize> = self.classes[*from].iter().collect();
                        let dst: Vec<usize> = self.classes[*to].iter().collect();
                        for (s, d) in src.iter().zip(&dst) {
                            q[*s] = p[*d];
                        }
                    }
                    next.push(q);
                }
            }
            perms = next;
        }
        Some(perms)
    }
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

impl FromStr for Graph {
    type Err = Error;

    /// Graph literals: `K3,3,3` (complete multipartite), `K4` (complete graph),
    /// `C5` (cycle), `P4` (path), `E3` (edgeless).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unrecognised graph literal {s:?}"));
        let (head, body) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?);
        let nums: Vec<usize> = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (head, nums.as_slice()) {
            ("K", [n]) => Graph::complete(*n),
            ("K", sizes) => Graph::complete_multipartite(&MultipartiteSpec::new(sizes.to_vec())?),
            ("C", [n]) => Graph::cycle(*n),
            ("P", [n]) => Graph::path(*n),
            ("E", [n]) => Graph::complete_multipartite(&MultipartiteSpec::new(vec![*n])?),
            _ => Err(bad()),
        }
    }
}
