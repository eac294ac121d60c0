//! Explicit non-λ-choosable graphs together with their bad list assignments.
//!
//! Colour names follow the families they come from: `e*` for the shared
//! singleton colours, `a{i}_{1..3}` for the triples, `s{i}_{j}_{l}` and
//! `t{i}_{j}_{l}` for the odd and even blocks, `f*` for the extra common colours.

use crate::error::{invalid, Result};
use crate::graph::{Graph, MultipartiteSpec};
use crate::lists::{ColorGroup, GroupedListAssignment};
use crate::multiset::LambdaMultiset;

/// Which generator produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recipe {
    /// `K_{3*(a+b+1),1*(b-1)}` with the three 2-subsets of each triple.
    LemmaA,
    /// `K_{1*5,(k-1)*2}` for multisets without ones.
    ThmB1,
    /// Case 1 plus `1_λ` parts of size 7 and `1_λ` fresh common colours.
    ThmB2,
}

/// Witness for λ = `a` ones and `b` twos, `k = a + 2b`.
///
/// Parts are `a+b+1` triples `{u_{i,1}, u_{i,2}, u_{i,3}}` (vertices
/// `3(i-1)..3i`) followed by `b-1` singletons `v_j`. `u_{i,j}` gets list `B_j`,
/// every `v_j` gets `B_1`, where `B_j` is the union of the `j`-th 2-subset of
/// every triple `A_i` and the colours `E`. Groups are the `a` colours of `E`
/// (k=1 each) followed by the `b` triples (k=2 each).
pub fn construct_lemma_a(a: i64, b: i64) -> Result<(Graph, GroupedListAssignment)> {
    if a < 0 || b < 1 {
        return invalid(format!("need a >= 0 and b >= 1, got a={a}, b={b}"));
    }
    let (a, b) = (a as usize, b as usize);
    let mut sizes = vec![3; a + b + 1];
    sizes.extend(std::iter::repeat_n(1, b - 1));
    let graph = Graph::complete_multipartite(&MultipartiteSpec::new(sizes)?)?;

    let e: Vec<String> = (1..=a).map(|i| format!("e{i}")).collect();
    let triple = |i: usize| -> Vec<String> { (1..=3).map(|l| format!("a{i}_{l}")).collect() };
    // A_{i,1} = {1,2}, A_{i,2} = {1,3}, A_{i,3} = {2,3}
    const PAIRS: [[usize; 2]; 3] = [[0, 1], [0, 2], [1, 2]];
    let block = |j: usize| -> Vec<String> {
        let mut out: Vec<String> = (1..=b)
            .flat_map(|i| {
                let t = triple(i);
                PAIRS[j]
                    .iter()
                    .map(move |&p| t[p].clone())
                    .collect::<Vec<_>>()
            })
            .collect();
        out.extend(e.iter().cloned());
        out
    };
    let mut lists = Vec::with_capacity(graph.n());
    for _ in 0..a + b + 1 {
        for j in 0..3 {
            lists.push(block(j));
        }
    }
    for _ in 1..b {
        lists.push(block(0));
    }
    let mut groups: Vec<ColorGroup> = e
        .iter()
        .map(|c| ColorGroup {
            k: 1,
            colors: vec![c.clone()],
        })
        .collect();
    groups.extend((1..=b).map(|i| ColorGroup {
        k: 2,
        colors: triple(i),
    }));
    Ok((graph, GroupedListAssignment { groups, lists }))
}

/// Witness on `2k_λ + 5·1_λ + 3` vertices for any non-trivial λ.
///
/// Without ones the graph has parts `V_i = {u_{i,1}, u_{i,2}}` for
/// `i < k` followed by `V_k = {v_1..v_5}`. With `t` ones the construction is
/// built for λ minus its ones and extended by `t` parts
/// `{x_{i,1}..x_{i,7}}` copying the lists of `v_1..v_5, u_{1,1}, u_{1,2}`;
/// then `t` new colours `f*` are added to every list.
pub fn construct_thm_b(lambda: &LambdaMultiset) -> Result<(Graph, GroupedListAssignment, Recipe)> {
    if lambda.is_trivial() {
        return invalid(format!(
            "lambda {{{lambda}}} is all ones; no witness exists"
        ));
    }
    let t = lambda.ones();
    let core: Vec<u32> = lambda
        .elements()
        .iter()
        .copied()
        .filter(|&e| e > 1)
        .collect();
    let (graph_sizes, mut groups, mut lists) = case_one(&core);
    if t == 0 {
        let graph = Graph::complete_multipartite(&MultipartiteSpec::new(graph_sizes)?)?;
        return Ok((
            graph,
            GroupedListAssignment { groups, lists },
            Recipe::ThmB1,
        ));
    }
    let k: usize = core.iter().sum::<u32>() as usize;
    let mut sizes = graph_sizes;
    let v_base = 2 * (k - 1);
    let copy_from: Vec<usize> = (0..5).map(|j| v_base + j).chain([0, 1]).collect();
    sizes.extend(std::iter::repeat_n(7, t));
    for _ in 0..t {
        for &src in &copy_from {
            lists.push(lists[src].clone());
        }
    }
    let f: Vec<String> = (1..=t).map(|i| format!("f{i}")).collect();
    for list in lists.iter_mut() {
        list.extend(f.iter().cloned());
    }
    groups.extend(f.iter().map(|c| ColorGroup {
        k: 1,
        colors: vec![c.clone()],
    }));
    let graph = Graph::complete_multipartite(&MultipartiteSpec::new(sizes)?)?;
    Ok((
        graph,
        GroupedListAssignment { groups, lists },
        Recipe::ThmB2,
    ))
}

type CaseOne = (Vec<usize>, Vec<ColorGroup>, Vec<Vec<String>>);

/// The construction for a multiset with every element at least 2.
fn case_one(core: &[u32]) -> CaseOne {
    let odd: Vec<u32> = core.iter().copied().filter(|e| e % 2 == 1).collect();
    let even: Vec<u32> = core.iter().copied().filter(|e| e % 2 == 0).collect();
    let k: usize = core.iter().sum::<u32>() as usize;
    let a = odd.len();

    // s[i][j] = S_{i+1,j+1}, t[i][j] = T_{a+i+1,j+1}
    let s: Vec<Vec<Vec<String>>> = odd
        .iter()
        .enumerate()
        .map(|(i, &ki)| {
            (1..=4)
                .map(|j| {
                    (1..=(ki as usize - 1) / 2)
                        .map(|l| format!("s{}_{j}_{l}", i + 1))
                        .collect()
                })
                .collect()
        })
        .collect();
    let t: Vec<Vec<Vec<String>>> = even
        .iter()
        .enumerate()
        .map(|(i, &ki)| {
            (1..=4)
                .map(|j| {
                    (1..=ki as usize / 2)
                        .map(|l| format!("t{}_{j}_{l}", a + i + 1))
                        .collect()
                })
                .collect()
        })
        .collect();
    let e: Vec<String> = (1..=a).map(|i| format!("e{i}")).collect();
    // X_i: all of S_{i,1} and S_{i,2}, then the first colour of S_{i,3}.
    let x: Vec<String> = s
        .iter()
        .flat_map(|si| {
            let mut xi: Vec<String> = si[0].iter().chain(&si[1]).cloned().collect();
            xi.push(si[2][0].clone());
            xi
        })
        .collect();

    let s_j =
        |j: usize| -> Vec<String> { s.iter().flat_map(|si| si[j - 1].iter().cloned()).collect() };
    let t_j =
        |j: usize| -> Vec<String> { t.iter().flat_map(|ti| ti[j - 1].iter().cloned()).collect() };
    let mixed = |sj: [usize; 2], with_e: bool| -> Vec<String> {
        let mut out = if with_e { e.clone() } else { Vec::new() };
        out.extend(s_j(sj[0]));
        out.extend(s_j(sj[1]));
        out.extend(t_j(sj[0]));
        out.extend(t_j(sj[1]));
        out
    };

    let mut lists = Vec::with_capacity(2 * k + 3);
    for _ in 1..k {
        lists.push(mixed([1, 2], true));
        lists.push(mixed([3, 4], true));
    }
    lists.push(mixed([1, 3], true));
    lists.push(mixed([1, 4], true));
    lists.push(mixed([2, 3], true));
    lists.push(mixed([2, 4], true));
    let mut v5 = x;
    v5.extend(t_j(2));
    v5.extend(t_j(4));
    lists.push(v5);

    let mut groups = Vec::with_capacity(core.len());
    for (i, &ki) in odd.iter().enumerate() {
        let mut colors = vec![e[i].clone()];
        colors.extend(s[i].iter().flatten().cloned());
        groups.push(ColorGroup { k: ki, colors });
    }
    for (i, &ki) in even.iter().enumerate() {
        groups.push(ColorGroup {
            k: ki,
            colors: t[i].iter().flatten().cloned().collect(),
        });
    }
    let mut sizes = vec![2; k - 1];
    sizes.push(5);
    (sizes, groups, lists)
}
