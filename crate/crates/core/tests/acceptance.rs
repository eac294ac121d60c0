//! Acceptance suite: one PASS/FAIL line per criterion, each checked against its time budget.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lambdacol::constructions::{construct_lemma_a, construct_thm_b, Recipe};
use lambdacol::lists::plan_for_leq;
use lambdacol::multiset::{enumerate_lambdas, leq};
use lambdacol::painting::{check_painter_strategy, PainterStrategy};
use lambdacol::scan::{catalog, Verdict};
use lambdacol::{
    compose_painter, decide_f_paintable, decide_paintable_all_orders, find_bad_assignment,
    find_list_coloring, merge_groups, phi_scan, psi_scan, verify_bad_assignment, Budget,
    ChoosabilityOutcome, Graph, LambdaMultiset, MultipartiteSpec, PaintGame, PaintSolver, Player,
    ScanReport, VertexSet,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn lam(s: &str) -> LambdaMultiset {
    s.parse().unwrap()
}

fn graph(s: &str) -> Graph {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lemma_a_witnesses() -> Outcome {
    for (a, b) in [(0, 1), (1, 1), (0, 2)] {
        let (g, lists) = construct_lemma_a(a, b).map_err(|e| e.to_string())?;
        let k = (a + 2 * b) as usize;
        let mut elems = vec![1u32; a as usize];
        elems.extend(vec![2u32; b as usize]);
        let lambda = LambdaMultiset::new(elems).unwrap();
        ensure(g.n() == 2 * k + a as usize + 2, || {
            format!("(a,b)=({a},{b}): {} vertices", g.n())
        })?;
        ensure(g.chromatic_number() == k, || {
            format!("(a,b)=({a},{b}): χ = {}", g.chromatic_number())
        })?;
        ensure(
            lists.validate().is_ok() && lists.is_lambda_assignment(&lambda),
            || format!("(a,b)=({a},{b}): not a valid λ-assignment"),
        )?;
        ensure(find_list_coloring(&g, &lists).unwrap().is_none(), || {
            format!("(a,b)=({a},{b}): colourable")
        })?;
    }
    Ok("3 witnesses verified".into())
}

fn thm_b_witnesses() -> Outcome {
    let cases = [
        ("3", Recipe::ThmB1),
        ("5", Recipe::ThmB1),
        ("2,3", Recipe::ThmB1),
        ("1,2", Recipe::ThmB2),
        ("1,1,2", Recipe::ThmB2),
    ];
    let mut sizes = Vec::new();
    for (l, recipe) in cases {
        let lambda = lam(l);
        let (g, lists, got) = construct_thm_b(&lambda).map_err(|e| e.to_string())?;
        let expected = 2 * lambda.k() as usize + 5 * lambda.ones() + 3;
        ensure(got == recipe, || format!("{{{l}}}: recipe {got:?}"))?;
        ensure(g.n() == expected, || {
            format!("{{{l}}}: {} vertices, expected {expected}", g.n())
        })?;
        ensure(
            lists.validate().is_ok() && lists.is_lambda_assignment(&lambda),
            || format!("{{{l}}}: not a valid λ-assignment"),
        )?;
        ensure(find_list_coloring(&g, &lists).unwrap().is_none(), || {
            format!("{{{l}}}: colourable")
        })?;
        sizes.push(format!("{{{l}}}:{}", g.n()));
    }
    Ok(format!("vertices {}", sizes.join(" ")))
}

fn check_scan(r: &ScanReport, value: usize, witness: &[usize]) -> Result<(), String> {
    ensure(r.holes().next().is_none(), || {
        format!("{} holes", r.holes().count())
    })?;
    ensure(r.resolved == Some(value), || {
        format!("resolved {:?}", r.resolved)
    })?;
    ensure(
        r.records
            .iter()
            .filter(|x| x.n < value)
            .all(|x| x.verdict == Verdict::Good),
        || "a smaller graph is not good".into(),
    )?;
    ensure(r.witnesses().any(|w| w.parts == witness), || {
        format!("no witness K{witness:?}")
    })?;
    Ok(())
}

fn phi_k2() -> Outcome {
    let r = phi_scan(&lam("2"), 6, Budget::UNLIMITED).map_err(|e| e.to_string())?;
    check_scan(&r, 6, &[3, 3])?;
    Ok(format!("φ̂ = 6, {} graphs checked", r.records.len()))
}

fn phi_12() -> Outcome {
    let r = phi_scan(&lam("1,2"), 9, Budget::UNLIMITED).map_err(|e| e.to_string())?;
    check_scan(&r, 9, &[3, 3, 3])?;
    Ok(format!("φ̂ = 9, {} graphs checked", r.records.len()))
}

fn f_paintable_blocks() -> Outcome {
    for m in 1..=4 {
        let g = graph(&format!("K1,{m}"));
        let w = decide_f_paintable(&g, &vec![2; g.n()])
            .map_err(|e| e.to_string())?
            .winner;
        ensure(w == Player::Painter, || format!("K1,{m}: {w} wins"))?;
    }
    let w = decide_f_paintable(&graph("K2,3"), &[2; 5])
        .map_err(|e| e.to_string())?
        .winner;
    ensure(w == Player::Painter, || format!("K2,3: {w} wins"))?;
    let w = decide_f_paintable(&graph("K3,3"), &[2; 6])
        .map_err(|e| e.to_string())?
        .winner;
    ensure(w == Player::Lister, || format!("K3,3: {w} wins"))?;
    Ok("K1,1..K1,4 and K2,3 Painter, K3,3 Lister".into())
}

fn psi_scans() -> Outcome {
    let r = psi_scan(&lam("2"), 6, Budget::UNLIMITED).map_err(|e| e.to_string())?;
    check_scan(&r, 6, &[3, 3])?;
    let r = psi_scan(&lam("1,2"), 9, Budget::UNLIMITED).map_err(|e| e.to_string())?;
    check_scan(&r, 9, &[3, 3, 3])?;
    let good = r.records.iter().filter(|x| x.n <= 8).count();
    Ok(format!(
        "ψ̂({{2}}) = 6, ψ̂({{1,2}}) = 9, {good} graphs on ≤ 8 vertices Painter wins in both orders"
    ))
}

fn full_catalog(n_max: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for parts in 1..=n {
            for sizes in catalog(n, parts) {
                out.push(
                    Graph::complete_multipartite(&MultipartiteSpec::new(sizes).unwrap()).unwrap(),
                );
            }
        }
    }
    out
}

fn all_lambdas(k_max: i64) -> Vec<LambdaMultiset> {
    (1..=k_max)
        .flat_map(|k| enumerate_lambdas(k).unwrap())
        .collect()
}

fn paintable_implies_choosable() -> Outcome {
    let (mut instances, mut paintable) = (0, 0);
    for g in full_catalog(6) {
        for lambda in all_lambdas(4) {
            instances += 1;
            if !decide_paintable_all_orders(&g, &lambda)
                .map_err(|e| e.to_string())?
                .paintable()
            {
                continue;
            }
            paintable += 1;
            let out =
                find_bad_assignment(&g, &lambda, Budget::UNLIMITED).map_err(|e| e.to_string())?;
            ensure(out == ChoosabilityOutcome::NoneExists, || {
                format!("K{:?} λ={{{lambda}}} paintable but {out:?}", g.part_sizes())
            })?;
        }
    }
    Ok(format!(
        "{instances} instances, {paintable} paintable, all choosable"
    ))
}

fn order_monotonicity() -> Outcome {
    let lambdas = all_lambdas(4);
    let (mut witnesses, mut merged) = (0, 0);
    for g in full_catalog(6) {
        for fine in &lambdas {
            let ChoosabilityOutcome::Witness(w) =
                find_bad_assignment(&g, fine, Budget::UNLIMITED).map_err(|e| e.to_string())?
            else {
                continue;
            };
            witnesses += 1;
            for coarse in lambdas.iter().filter(|c| c.k() == fine.k() && leq(c, fine)) {
                let plan = plan_for_leq(&w, coarse)
                    .ok_or_else(|| format!("no plan for {{{coarse}}} ≤ {{{fine}}}"))?;
                let m = merge_groups(&w, &plan, coarse).map_err(|e| e.to_string())?;
                ensure(verify_bad_assignment(&g, coarse, &m).unwrap(), || {
                    format!(
                        "K{:?}: merged {{{fine}}} witness is not bad for {{{coarse}}}",
                        g.part_sizes()
                    )
                })?;
                merged += 1;
            }
        }
    }
    Ok(format!(
        "{witnesses} witnesses, {merged} merged witnesses verified"
    ))
}

fn edgeless_painter(n: usize, order: &[u32]) -> Box<dyn PainterStrategy> {
    let g = Graph::complete_multipartite(&MultipartiteSpec::new(vec![n]).unwrap()).unwrap();
    Box::new(PaintSolver::new(PaintGame::lambda_game(&g, order).unwrap()))
}

fn composition() -> Outcome {
    let k222 = graph("K2,2,2");
    let c4 = graph("K2,2");
    let c4_painter =
        PaintSolver::new(PaintGame::lambda_game(&c4, &[2]).map_err(|e| e.to_string())?);
    let (mut strategy, game) = compose_painter(
        &k222,
        VertexSet(0b000011),
        VertexSet(0b111100),
        edgeless_painter(2, &[1]),
        &[1],
        Box::new(c4_painter),
        &[2],
    )
    .map_err(|e| e.to_string())?;
    ensure(game.phase_count() == 2, || {
        "game is not the two-phase (1,2) game".into()
    })?;
    ensure(
        check_painter_strategy(&game, &mut strategy).map_err(|e| e.to_string())?,
        || "Lister beats the composed strategy".into(),
    )?;
    Ok("composed Painter survives every Lister line".into())
}

fn partial_order() -> Outcome {
    let chains = [["4", "1,3", "1,1,2"], ["4", "2,2", "1,1,2"]];
    for [a, b, c] in chains {
        let (a, b, c) = (lam(a), lam(b), lam(c));
        ensure(leq(&a, &b) && leq(&b, &c) && leq(&a, &c), || {
            format!("{{{a}}} ≤ {{{b}}} ≤ {{{c}}} fails")
        })?;
        ensure(!leq(&c, &a), || format!("{{{c}}} ≤ {{{a}}} holds"))?;
    }
    ensure(
        !leq(&lam("1,3"), &lam("2,2")) && !leq(&lam("2,2"), &lam("1,3")),
        || "{1,3} and {2,2} are comparable".into(),
    )?;
    Ok("both chains hold, {1,3} and {2,2} incomparable".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "1 two-colour-block witnesses",
            Duration::from_secs(10),
            lemma_a_witnesses,
        ),
        (
            "2 general witnesses",
            Duration::from_secs(300),
            thm_b_witnesses,
        ),
        ("3 phi_scan({2}, 6)", Duration::from_secs(120), phi_k2),
        ("4 phi_scan({1,2}, 9)", Duration::from_secs(1800), phi_12),
        (
            "5 f-paintability of small bipartite graphs",
            Duration::from_secs(60),
            f_paintable_blocks,
        ),
        (
            "6 psi_scan({2}, 6) and psi_scan({1,2}, 9)",
            Duration::from_secs(3600),
            psi_scans,
        ),
        (
            "7 paintable implies choosable",
            Duration::from_secs(900),
            paintable_implies_choosable,
        ),
        (
            "8 order monotonicity",
            Duration::from_secs(600),
            order_monotonicity,
        ),
        (
            "9 composed Painter on K2,2,2",
            Duration::from_secs(60),
            composition,
        ),
        (
            "10 partial-order examples",
            Duration::from_secs(1),
            partial_order,
        ),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let line = match result {
            Ok(detail) if elapsed <= budget => format!("PASS criterion {name}: {detail}"),
            Ok(detail) => format!("FAIL criterion {name}: over budget ({detail})"),
            Err(why) => format!("FAIL criterion {name}: {why}"),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line} [{:.2?} of {:?}]", elapsed, budget);
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
