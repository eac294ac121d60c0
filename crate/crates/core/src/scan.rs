//! Layered searches for the smallest non-λ-choosable (φ̂) and non-λ-paintable
//! (ψ̂) graphs with chromatic number `k_λ`.
//!
//! Only complete multipartite graphs with exactly `k_λ` non-empty parts are
//! scanned. This loses nothing:
//!
//! * If `G` is `k`-chromatic and not λ-choosable, fix an optimal colouring and
//!   join every pair of vertices in different colour classes. The result `G'`
//!   is complete `k`-partite, still `k`-chromatic, and any bad assignment for
//!   `G` is bad for `G'` because `G'` has more edges and so fewer colourings.
//! * If Lister wins the λ-game on `G`, the same Lister strategy wins on `G'`,
//!   since every independent set of `G'` is independent in `G` and Painter's
//!   options only shrink.
//!
//! Layers run from `n = k_λ` upward; each layer is checked in parallel and the
//! scan stops after the first layer holding a witness.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::choosability::{
    find_bad_assignment, verify_bad_assignment, Budget, ChoosabilityOutcome,
};
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, MultipartiteSpec};
use crate::multiset::LambdaMultiset;
use crate::painting::{
    decide_paintable_all_orders_limited, play_out, PaintGame, PaintSolver, Player,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanKind {
    Phi,
    Psi,
}

impl fmt::Display for ScanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanKind::Phi => "phi",
            ScanKind::Psi => "psi",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "verdict")]
pub enum Verdict {
    /// λ-choosable (φ scan) or λ-paintable under every order (ψ scan).
    Good,
    /// A verified bad assignment (φ) or a Lister win under `order` (ψ).
    Witness {
        order: Option<Vec<u32>>,
    },
    Inconclusive {
        note: String,
    },
}

/// One machine-readable line per catalog graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub scan: ScanKind,
    pub lambda: LambdaMultiset,
    pub n: usize,
    pub parts: Vec<usize>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownBounds {
    pub lower: Option<usize>,
    pub upper: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueStatus {
    /// The known bounds coincide and agree with the scan.
    MatchesKnownValue,
    /// Within the known bounds, which do not determine the value.
    Observation,
    /// Outside the known bounds.
    ConflictsWithBounds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub kind: ScanKind,
    pub lambda: LambdaMultiset,
    pub n_max: usize,
    /// Catalog order within each layer.
    pub records: Vec<ScanRecord>,
    /// Every catalog graph with fewer vertices was verified good.
    pub proven_lower: usize,
    /// Smallest layer with a witness.
    pub witness_layer: Option<usize>,
    /// Set when a witness layer exists and no earlier layer has holes.
    pub resolved: Option<usize>,
    pub known: KnownBounds,
    pub status: Option<ValueStatus>,
}

impl ScanReport {
    pub fn holes(&self) -> impl Iterator<Item = &ScanRecord> {
        self.records
            .iter()
            .filter(|r| matches!(r.verdict, Verdict::Inconclusive { .. }))
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &ScanRecord> {
        self.records
            .iter()
            .filter(|r| matches!(r.verdict, Verdict::Witness { .. }))
    }

    pub fn json_lines(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialise") + "\n")
            .collect()
    }

    pub fn symbol(&self) -> &'static str {
        match self.kind {
            ScanKind::Phi => "φ̂",
            ScanKind::Psi => "ψ̂",
        }
    }
}

fn parts_label(parts: &[usize]) -> String {
    format!(
        "K{}",
        parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}-scan λ={{{}}} n_max={}",
            self.kind, self.lambda, self.n_max
        )?;
        writeln!(
            f,
            "{:>3} {:>7} {:>6} {:>8} {:>12}",
            "n", "graphs", "good", "witness", "inconclusive"
        )?;
        let mut n = 0;
        while let Some(first) = self.records.iter().find(|r| r.n > n) {
            n = first.n;
            let layer: Vec<_> = self.records.iter().filter(|r| r.n == n).collect();
            let count = |p: fn(&Verdict) -> bool| layer.iter().filter(|r| p(&r.verdict)).count();
            writeln!(
                f,
                "{:>3} {:>7} {:>6} {:>8} {:>12}",
                n,
                layer.len(),
                count(|v| matches!(v, Verdict::Good)),
                count(|v| matches!(v, Verdict::Witness { .. })),
                count(|v| matches!(v, Verdict::Inconclusive { .. })),
            )?;
        }
        for r in self.witnesses() {
            match &r.verdict {
                Verdict::Witness { order: Some(o) } => writeln!(
                    f,
                    "witness {} (Lister wins with phase order {:?})",
                    parts_label(&r.parts),
                    o
                )?,
                _ => writeln!(f, "witness {}", parts_label(&r.parts))?,
            }
        }
        for r in self.holes() {
            if let Verdict::Inconclusive { note } = &r.verdict {
                writeln!(f, "hole {} ({note})", parts_label(&r.parts))?;
            }
        }
        let sym = self.symbol();
        match (self.resolved, self.witness_layer) {
            (Some(v), _) => write!(f, "result: {sym} = {v}")?,
            (None, Some(w)) => write!(
                f,
                "result: {} ≤ {sym} ≤ {w} (holes below the witness layer)",
                self.proven_lower
            )?,
            (None, None) => write!(f, "result: {sym} ≥ {}", self.proven_lower)?,
        }
        let bound = |b: Option<usize>| b.map_or("?".to_string(), |x| x.to_string());
        write!(
            f,
            "; known bounds {}..{}",
            bound(self.known.lower),
            bound(self.known.upper)
        )?;
        match self.status {
            Some(ValueStatus::MatchesKnownValue) => writeln!(f, "; matches the known value"),
            Some(ValueStatus::Observation) => {
                writeln!(f, "; computational observation, not a known result")
            }
            Some(ValueStatus::ConflictsWithBounds) => {
                writeln!(f, "; CONFLICTS with the known bounds")
            }
            None => writeln!(f),
        }
    }
}

/// Partitions of `n` into exactly `parts` positive sizes, each sorted
/// non-increasingly, in colexicographic order (compared from the smallest part).
pub fn catalog(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, slots: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = left.div_ceil(slots);
        for s in lo..=max.min(left + 1 - slots) {
            cur.push(s);
            rec(left - s, slots - 1, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 && n >= parts {
        rec(n, parts, n, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// Known bounds for φ(λ) and ψ(λ) of a non-trivial λ.
pub fn known_bounds(kind: ScanKind, lambda: &LambdaMultiset) -> KnownBounds {
    let s = lambda.stats();
    let (k, ones, odd) = (s.k as usize, s.ones, s.odd);
    let phi_upper = (2 * k + odd + 2).min(2 * k + 5 * ones + 3);
    match kind {
        ScanKind::Phi => KnownBounds {
            lower: Some(2 * k + ones + 2),
            upper: Some(phi_upper),
        },
        ScanKind::Psi if lambda.elements().iter().all(|&x| x <= 2) => {
            let v = 2 * k + ones + 2;
            KnownBounds {
                lower: Some(v),
                upper: Some(v),
            }
        }
        // Paintable graphs are choosable, so ψ ≤ φ.
        ScanKind::Psi => KnownBounds {
            lower: None,
            upper: Some(phi_upper),
        },
    }
}

fn check_nontrivial(lambda: &LambdaMultiset) -> Result<()> {
    if lambda.is_trivial() {
        return invalid(format!("λ={{{lambda}}} is all ones; the value is infinite"));
    }
    Ok(())
}

fn phi_verdict(g: &Graph, lambda: &LambdaMultiset, budget: Budget) -> Result<Verdict> {
    Ok(match find_bad_assignment(g, lambda, budget)? {
        ChoosabilityOutcome::NoneExists => Verdict::Good,
        ChoosabilityOutcome::Witness(l) => {
            if !verify_bad_assignment(g, lambda, &l)? {
                return Err(Error::InvalidArgument(
                    "search returned an unverifiable witness".into(),
                ));
            }
            Verdict::Witness { order: None }
        }
        ChoosabilityOutcome::BudgetExhausted { nodes } => Verdict::Inconclusive {
            note: format!("budget exhausted after {nodes} nodes"),
        },
    })
}

fn psi_verdict(g: &Graph, lambda: &LambdaMultiset, budget: Budget) -> Result<Verdict> {
    let deadline = budget.max_time.map(|t| Instant::now() + t);
    let cap = budget.max_nodes.map(|n| n as usize);
    let verdicts = match decide_paintable_all_orders_limited(g, lambda, cap, deadline) {
        Ok(v) => v,
        Err(Error::Budget(note)) => return Ok(Verdict::Inconclusive { note }),
        Err(e) => return Err(e),
    };
    let Some(order) = verdicts.losing_order() else {
        return Ok(Verdict::Good);
    };
    // Replay the Lister win against the solver's best Painter.
    let game = PaintGame::lambda_game(g, order)?;
    let mut lister = PaintSolver::new(game.clone());
    let mut painter = PaintSolver::new(game.clone());
    let (_, winner) = play_out(&game, &mut lister, &mut painter)?;
    if winner != Player::Lister {
        return Err(Error::InvalidArgument("Lister win did not replay".into()));
    }
    Ok(Verdict::Witness {
        order: Some(order.to_vec()),
    })
}

/// Scans for the smallest non-λ-choosable `k_λ`-chromatic graph up to `n_max` vertices.
/// `budget` applies to each catalog graph separately.
pub fn phi_scan(lambda: &LambdaMultiset, n_max: usize, budget: Budget) -> Result<ScanReport> {
    check_nontrivial(lambda)?;
    scan(ScanKind::Phi, lambda, n_max, |g| {
        phi_verdict(g, lambda, budget)
    })
}

/// Scans for the smallest non-λ-paintable `k_λ`-chromatic graph up to `n_max`
/// vertices. The node budget caps the number of game states per game.
pub fn psi_scan(lambda: &LambdaMultiset, n_max: usize, budget: Budget) -> Result<ScanReport> {
    check_nontrivial(lambda)?;
    scan(ScanKind::Psi, lambda, n_max, |g| {
        psi_verdict(g, lambda, budget)
    })
}

fn scan<F>(kind: ScanKind, lambda: &LambdaMultiset, n_max: usize, check: F) -> Result<ScanReport>
where
    F: Fn(&Graph) -> Result<Verdict> + Sync,
{
    let k = lambda.k() as usize;
    let mut records = Vec::new();
    let mut proven_lower = k;
    let mut clean = true;
    let mut witness_layer = None;
    for n in k..=n_max {
        let layer = catalog(n, k);
        let verdicts: Vec<Verdict> = layer
            .par_iter()
            .map(|parts| {
                check(&Graph::complete_multipartite(&MultipartiteSpec::new(
                    parts.clone(),
                )?)?)
            })
            .collect::<Result<_>>()?;
        let all_good = verdicts.iter().all(|v| *v == Verdict::Good);
        let has_witness = verdicts
            .iter()
            .any(|v| matches!(v, Verdict::Witness { .. }));
        records.extend(
            layer
                .into_iter()
                .zip(verdicts)
                .map(|(parts, verdict)| ScanRecord {
                    scan: kind,
                    lambda: lambda.clone(),
                    n,
                    parts,
                    verdict,
                }),
        );
        if clean && all_good {
            proven_lower = n + 1;
        } else {
            clean = false;
        }
        if has_witness {
            witness_layer = Some(n);
            break;
        }
    }
    let resolved = witness_layer.filter(|&w| proven_lower == w);
    let known = known_bounds(kind, lambda);
    let status = resolved.map(|v| {
        let within = known.lower.is_none_or(|l| v >= l) && known.upper.is_none_or(|u| v <= u);
        if !within {
            ValueStatus::ConflictsWithBounds
        } else if known.lower == Some(v) && known.upper == Some(v) {
            ValueStatus::MatchesKnownValue
        } else {
            ValueStatus::Observation
        }
    });
    Ok(ScanReport {
        kind,
        lambda: lambda.clone(),
        n_max,
        records,
        proven_lower,
        witness_layer,
        resolved,
        known,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(s: &str) -> LambdaMultiset {
        s.parse().unwrap()
    }

    #[test]
    fn catalog_order() {
        assert_eq!(
            catalog(9, 3),
            vec![
                vec![7, 1, 1],
                vec![6, 2, 1],
                vec![5, 3, 1],
                vec![4, 4, 1],
                vec![5, 2, 2],
                vec![4, 3, 2],
                vec![3, 3, 3]
            ]
        );
        assert_eq!(catalog(2, 3), Vec::<Vec<usize>>::new());
        assert_eq!(catalog(4, 2), vec![vec![3, 1], vec![2, 2]]);
    }

    #[test]
    fn catalog_counts_match_partition_numbers() {
        // p(n, k) by the standard recurrence.
        fn p(n: usize, k: usize) -> usize {
            match (n, k) {
                (0, 0) => 1,
                (_, 0) => 0,
                _ if n < k => 0,
                _ => p(n - 1, k - 1) + p(n - k, k),
            }
        }
        for n in 1..=14 {
            for k in 1..=n {
                assert_eq!(catalog(n, k).len(), p(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn known_bounds_examples() {
        assert_eq!(
            known_bounds(ScanKind::Phi, &lam("2")),
            KnownBounds {
                lower: Some(6),
                upper: Some(6)
            }
        );
        assert_eq!(
            known_bounds(ScanKind::Phi, &lam("1,2")),
            KnownBounds {
                lower: Some(9),
                upper: Some(9)
            }
        );
        assert_eq!(
            known_bounds(ScanKind::Phi, &lam("3")),
            KnownBounds {
                lower: Some(8),
                upper: Some(9)
            }
        );
        assert_eq!(
            known_bounds(ScanKind::Psi, &lam("1,1,2")),
            KnownBounds {
                lower: Some(12),
                upper: Some(12)
            }
        );
        assert_eq!(
            known_bounds(ScanKind::Psi, &lam("3")),
            KnownBounds {
                lower: None,
                upper: Some(9)
            }
        );
    }

    #[test]
    fn phi_scan_k2() {
        let r = phi_scan(&lam("2"), 6, Budget::UNLIMITED).unwrap();
        assert_eq!(r.resolved, Some(6));
        assert_eq!(r.status, Some(ValueStatus::MatchesKnownValue));
        let w: Vec<_> = r.witnesses().map(|r| r.parts.clone()).collect();
        assert_eq!(w, vec![vec![4, 2], vec![3, 3]]);
        assert!(r
            .records
            .iter()
            .filter(|r| r.n <= 5)
            .all(|r| r.verdict == Verdict::Good));
        assert_eq!(r.holes().count(), 0);
        let text = r.to_string();
        assert!(text.contains("φ̂ = 6"), "{text}");
        assert_eq!(r.json_lines().lines().count(), r.records.len());
    }

    #[test]
    fn psi_scan_k2() {
        let r = psi_scan(&lam("2"), 6, Budget::UNLIMITED).unwrap();
        assert_eq!(r.resolved, Some(6));
        assert!(r.witnesses().any(|w| w.parts == vec![3, 3]));
    }

    #[test]
    fn trivial_lambda_is_rejected() {
        assert!(matches!(
            phi_scan(&lam("1,1"), 5, Budget::UNLIMITED),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            psi_scan(&lam("1"), 5, Budget::UNLIMITED),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn budget_holes_block_resolution() {
        let r = phi_scan(&lam("2"), 6, Budget::nodes(1)).unwrap();
        if r.holes().next().is_some() {
            assert!(r.resolved.is_none());
            assert!(r.to_string().contains("hole"));
        }
        let r = psi_scan(&lam("2"), 6, Budget::nodes(2)).unwrap();
        assert!(r.holes().next().is_some());
        assert_eq!(r.resolved, None);
    }

    #[test]
    fn records_serialise() {
        let rec = ScanRecord {
            scan: ScanKind::Psi,
            lambda: lam("1,2"),
            n: 9,
            parts: vec![3, 3, 3],
            verdict: Verdict::Witness {
                order: Some(vec![1, 2]),
            },
        };
        let line = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            line,
            r#"{"scan":"psi","lambda":[1,2],"n":9,"parts":[3,3,3],"verdict":"witness","order":[1,2]}"#
        );
        assert_eq!(serde_json::from_str::<ScanRecord>(&line).unwrap(), rec);
    }
}
