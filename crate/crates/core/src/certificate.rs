//! Line-oriented text certificates for bad list assignments and solved games.
//!
//! ```text
//! lambdacol-certificate v1
//! kind bad-assignment
//! graph parts 3,3
//! lambda 2
//! group 2 a1_1 a1_2 a1_3
//! list 0 a1_2 a1_3
//! ...
//! end
//! ```
//!
//! Graphs without a multipartite structure are written as `graph edges N`
//! followed by one `edge u v` line per edge. Game certificates carry `game`,
//! `winner` and either `table none` or `table R` followed by `R` rows of the
//! winner's decision table:
//!
//! ```text
//! row phase=1 uncolored={0,1} remaining=[1,1] U={0,1} I={0}
//! ```
//!
//! Phases are written 1-based. Lister rows omit `I=`. Colour ids must not
//! contain whitespace.

use std::fmt::Write as _;

use crate::choosability::verify_bad_assignment;
use crate::error::{Error, Result};
use crate::graph::{Graph, MultipartiteSpec, VertexSet};
use crate::lists::{ColorGroup, GroupedListAssignment};
use crate::multiset::LambdaMultiset;
use crate::painting::{
    check_lister_strategy, check_painter_strategy, solve, PaintGame, PaintGameState, Player,
    StrategyRow, TableStrategy,
};

pub const HEADER: &str = "lambdacol-certificate v1";

/// Games whose decision table would exceed this many rows are certified by verdict only.
pub const MAX_TABLE_ROWS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameKind {
    /// λ-game with phases in this order.
    Lambda(Vec<u32>),
    /// f-game with these token counts.
    F(Vec<u32>),
}

impl GameKind {
    pub fn build(&self, g: &Graph) -> Result<PaintGame> {
        match self {
            GameKind::Lambda(order) => PaintGame::lambda_game(g, order),
            GameKind::F(f) => PaintGame::f_game(g, f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    BadAssignment {
        graph: Graph,
        lambda: LambdaMultiset,
        assignment: GroupedListAssignment,
    },
    PaintGame {
        graph: Graph,
        game: GameKind,
        winner: Player,
        table: Option<Vec<StrategyRow>>,
    },
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn write_graph(out: &mut String, g: &Graph) {
    match g.part_sizes() {
        Some(sizes) => writeln!(out, "graph parts {}", join(&sizes)).unwrap(),
        None => {
            writeln!(out, "graph edges {}", g.n()).unwrap();
            for (u, v) in g.edges() {
                writeln!(out, "edge {u} {v}").unwrap();
            }
        }
    }
}

fn check_color_id(c: &str) -> Result<()> {
    if c.is_empty() || c.chars().any(char::is_whitespace) {
        return Err(Error::InvalidArgument(format!(
            "colour id {c:?} cannot be written to a certificate"
        )));
    }
    Ok(())
}

fn format_state(s: &PaintGameState) -> String {
    format!(
        "phase={} uncolored={} remaining=[{}]",
        s.phase + 1,
        s.uncolored,
        join(&s.remaining)
    )
}

impl Certificate {
    pub fn to_text(&self) -> Result<String> {
        let mut out = format!("{HEADER}\n");
        match self {
            Certificate::BadAssignment {
                graph,
                lambda,
                assignment,
            } => {
                out.push_str("kind bad-assignment\n");
                write_graph(&mut out, graph);
                writeln!(out, "lambda {lambda}").unwrap();
                for g in &assignment.groups {
                    g.colors.iter().try_for_each(|c| check_color_id(c))?;
                    writeln!(out, "group {} {}", g.k, g.colors.join(" ")).unwrap();
                }
                for (v, list) in assignment.lists.iter().enumerate() {
                    let mut line = format!("list {v}");
                    for c in list {
                        check_color_id(c)?;
                        line.push(' ');
                        line.push_str(c);
                    }
                    writeln!(out, "{line}").unwrap();
                }
            }
            Certificate::PaintGame {
                graph,
                game,
                winner,
                table,
            } => {
                out.push_str("kind paint-game\n");
                write_graph(&mut out, graph);
                match game {
                    GameKind::Lambda(order) => {
                        writeln!(out, "game lambda {}", join(order)).unwrap()
                    }
                    GameKind::F(f) => writeln!(out, "game f {}", join(f)).unwrap(),
                }
                writeln!(out, "winner {winner}").unwrap();
                match table {
                    None => out.push_str("table none\n"),
                    Some(rows) => {
                        writeln!(out, "table {}", rows.len()).unwrap();
                        for r in rows {
                            write!(out, "row {} U={}", format_state(&r.state), r.selected).unwrap();
                            if let Some(p) = r.painted {
                                write!(out, " I={p}").unwrap();
                            }
                            out.push('\n');
                        }
                    }
                }
            }
        }
        out.push_str("end\n");
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Lines {
            inner: text.lines().enumerate().collect(),
            pos: 0,
        };
        let header = lines.next_line()?;
        if header.1 != HEADER {
            return Err(lines.err(header.0, "expected certificate header"));
        }
        let kind = lines.keyword("kind")?;
        let cert = match kind.as_str() {
            "bad-assignment" => {
                let graph = lines.graph()?;
                let lambda: LambdaMultiset = lines.keyword("lambda")?.parse()?;
                let mut groups = Vec::new();
                let mut lists = Vec::new();
                loop {
                    let (no, line) = lines.peek()?;
                    let mut toks = line.split_whitespace();
                    match toks.next() {
                        Some("group") => {
                            let k = parse_num(toks.next(), no)?;
                            groups.push(ColorGroup {
                                k,
                                colors: toks.map(str::to_string).collect(),
                            });
                        }
                        Some("list") => {
                            let v: usize = parse_num(toks.next(), no)?;
                            if v != lists.len() {
                                return Err(lines.err(no, "lists must appear in vertex order"));
                            }
                            lists.push(toks.map(str::to_string).collect());
                        }
                        _ => break,
                    }
                    lines.pos += 1;
                }
                if lists.len() != graph.n() {
                    return Err(Error::Parse(format!(
                        "{} lists for {} vertices",
                        lists.len(),
                        graph.n()
                    )));
                }
                Certificate::BadAssignment {
                    graph,
                    lambda,
                    assignment: GroupedListAssignment { groups, lists },
                }
            }
            "paint-game" => {
                let graph = lines.graph()?;
                let game_line = lines.keyword("game")?;
                let game = match game_line.split_once(' ') {
                    Some(("lambda", v)) => GameKind::Lambda(parse_list(v)?),
                    Some(("f", v)) => GameKind::F(parse_list(v)?),
                    _ => return Err(Error::Parse(format!("bad game line {game_line:?}"))),
                };
                let winner = match lines.keyword("winner")?.as_str() {
                    "Lister" => Player::Lister,
                    "Painter" => Player::Painter,
                    other => return Err(Error::Parse(format!("unknown winner {other:?}"))),
                };
                let table = match lines.keyword("table")?.as_str() {
                    "none" => None,
                    count => {
                        let count: usize = count
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad table size {count:?}")))?;
                        let mut rows = Vec::with_capacity(count);
                        for _ in 0..count {
                            let (no, line) = lines.next_line()?;
                            rows.push(
                                parse_row(line)
                                    .map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?,
                            );
                        }
                        Some(rows)
                    }
                };
                Certificate::PaintGame {
                    graph,
                    game,
                    winner,
                    table,
                }
            }
            other => return Err(Error::Parse(format!("unknown certificate kind {other:?}"))),
        };
        let (no, last) = lines.next_line()?;
        if last != "end" {
            return Err(lines.err(no, "expected `end`"));
        }
        Ok(cert)
    }
}

struct Lines<'a> {
    inner: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn peek(&self) -> Result<(usize, &'a str)> {
        self.inner
            .get(self.pos)
            .map(|&(no, l)| (no, l.trim()))
            .ok_or_else(|| Error::Parse("certificate ends early".into()))
    }

    fn next_line(&mut self) -> Result<(usize, &'a str)> {
        let out = self.peek()?;
        self.pos += 1;
        Ok(out)
    }

    fn err(&self, no: usize, msg: &str) -> Error {
        Error::Parse(format!("line {}: {msg}", no + 1))
    }

    /// Reads `<word> <rest>` and returns the rest.
    fn keyword(&mut self, word: &str) -> Result<String> {
        let (no, line) = self.next_line()?;
        match line.split_once(' ') {
            Some((w, rest)) if w == word => Ok(rest.trim().to_string()),
            _ => Err(self.err(no, &format!("expected `{word} ...`"))),
        }
    }

    fn graph(&mut self) -> Result<Graph> {
        let spec = self.keyword("graph")?;
        match spec.split_once(' ') {
            Some(("parts", sizes)) => {
                Graph::complete_multipartite(&MultipartiteSpec::new(parse_list(sizes)?)?)
            }
            Some(("edges", n)) => {
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad vertex count {n:?}")))?;
                let mut edges = Vec::new();
                while let Ok((no, line)) = self.peek() {
                    let Some(rest) = line.strip_prefix("edge ") else {
                        break;
                    };
                    let mut toks = rest.split_whitespace();
                    edges.push((parse_num(toks.next(), no)?, parse_num(toks.next(), no)?));
                    self.pos += 1;
                }
                Graph::from_edges(n, &edges)
            }
            _ => Err(Error::Parse(format!("bad graph line {spec:?}"))),
        }
    }
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, no: usize) -> Result<T> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse(format!("line {}: expected a number", no + 1)))
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {t:?}")))
        })
        .collect()
}

fn parse_row(line: &str) -> Result<StrategyRow> {
    let rest = line
        .strip_prefix("row ")
        .ok_or_else(|| Error::Parse("expected `row`".into()))?;
    let mut phase = None;
    let mut uncolored = None;
    let mut remaining = None;
    let mut selected = None;
    let mut painted = None;
    for tok in rest.split_whitespace() {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad field {tok:?}")))?;
        match key {
            "phase" => {
                let p: usize = val
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad phase {val:?}")))?;
                phase = Some(
                    p.checked_sub(1)
                        .ok_or_else(|| Error::Parse("phases start at 1".into()))?,
                );
            }
            "uncolored" => uncolored = Some(val.parse::<VertexSet>()?),
            "remaining" => {
                let inner = val
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse(format!("bad remaining {val:?}")))?;
                remaining = Some(parse_list::<u8>(inner)?);
            }
            "U" => selected = Some(val.parse::<VertexSet>()?),
            "I" => painted = Some(val.parse::<VertexSet>()?),
            _ => return Err(Error::Parse(format!("unknown field {key:?}"))),
        }
    }
    let missing = |f: &str| Error::Parse(format!("row is missing {f}"));
    Ok(StrategyRow {
        state: PaintGameState {
            uncolored: uncolored.ok_or_else(|| missing("uncolored"))?,
            phase: phase.ok_or_else(|| missing("phase"))?,
            remaining: remaining.ok_or_else(|| missing("remaining"))?,
        },
        selected: selected.ok_or_else(|| missing("U"))?,
        painted,
    })
}

/// Builds a game certificate, with a decision table when it fits.
pub fn game_certificate(graph: &Graph, game: GameKind) -> Result<Certificate> {
    let mut solution = solve(game.build(graph)?)?;
    let table =
        crate::painting::strategy_table(&mut solution.solver, solution.winner, MAX_TABLE_ROWS)?;
    Ok(Certificate::PaintGame {
        graph: graph.clone(),
        game,
        winner: solution.winner,
        table,
    })
}

/// Outcome of checking a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub valid: bool,
    pub message: String,
}

/// Independently re-checks a certificate. Bad assignments are re-validated and
/// searched for a colouring; decision tables are played against every
/// opponent move; verdict-only game certificates are re-solved.
pub fn verify_certificate(cert: &Certificate) -> Result<Verification> {
    let (valid, message) = match cert {
        Certificate::BadAssignment {
            graph,
            lambda,
            assignment,
        } => {
            let ok = verify_bad_assignment(graph, lambda, assignment)?;
            let msg = if ok {
                format!("valid: not colourable from this {{{lambda}}}-assignment")
            } else {
                "invalid: the assignment is not a λ-assignment or admits a colouring".to_string()
            };
            (ok, msg)
        }
        Certificate::PaintGame {
            graph,
            game,
            winner,
            table,
        } => {
            let built = game.build(graph)?;
            match table {
                Some(rows) => {
                    let mut strategy = TableStrategy::from_rows(rows);
                    let ok = match winner {
                        Player::Painter => check_painter_strategy(&built, &mut strategy),
                        Player::Lister => check_lister_strategy(&built, &mut strategy),
                    }
                    .unwrap_or(false);
                    let msg = if ok {
                        format!("valid: the {winner} table wins against every opponent move")
                    } else {
                        format!("invalid: the {winner} table does not win")
                    };
                    (ok, msg)
                }
                None => {
                    let actual = solve(built)?.winner;
                    (actual == *winner, format!("re-solved: {actual} wins"))
                }
            }
        }
    };
    Ok(Verification { valid, message })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::construct_lemma_a;

    #[test]
    fn bad_assignment_round_trip() {
        let (graph, assignment) = construct_lemma_a(1, 1).unwrap();
        let lambda = assignment.lambda().unwrap();
        let cert = Certificate::BadAssignment {
            graph,
            lambda,
            assignment,
        };
        let text = cert.to_text().unwrap();
        assert!(text.starts_with(HEADER));
        let back = Certificate::parse(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_text().unwrap(), text);
        assert!(verify_certificate(&back).unwrap().valid);
    }

    #[test]
    fn edge_graph_round_trip() {
        let graph: Graph = "C5".parse().unwrap();
        let cert = game_certificate(&graph, GameKind::F(vec![2; 5])).unwrap();
        let text = cert.to_text().unwrap();
        assert!(text.contains("graph edges 5"));
        let back = Certificate::parse(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_text().unwrap(), text);
    }

    #[test]
    fn game_certificates_verify() {
        for (g, order) in [("K2,3", vec![2]), ("K3,3", vec![2]), ("K2,2,1", vec![1, 2])] {
            let graph: Graph = g.parse().unwrap();
            let cert = game_certificate(&graph, GameKind::Lambda(order)).unwrap();
            let text = cert.to_text().unwrap();
            let back = Certificate::parse(&text).unwrap();
            assert_eq!(back.to_text().unwrap(), text);
            assert!(verify_certificate(&back).unwrap().valid, "{g}");
        }
    }

    #[test]
    fn tampering_is_detected() {
        let graph: Graph = "K3,3".parse().unwrap();
        let Certificate::PaintGame {
            graph, game, table, ..
        } = game_certificate(&graph, GameKind::Lambda(vec![2])).unwrap()
        else {
            panic!()
        };
        let forged = Certificate::PaintGame {
            graph: graph.clone(),
            game: game.clone(),
            winner: Player::Painter,
            table: None,
        };
        assert!(!verify_certificate(&forged).unwrap().valid);
        let forged = Certificate::PaintGame {
            graph,
            game,
            winner: Player::Painter,
            table,
        };
        assert!(!verify_certificate(&forged).unwrap().valid);

        let graph: Graph = "K2".parse().unwrap();
        let colors = vec!["c1".to_string(), "c2".to_string()];
        let assignment = GroupedListAssignment {
            groups: vec![ColorGroup {
                k: 2,
                colors: colors.clone(),
            }],
            lists: vec![colors.clone(), colors],
        };
        let cert = Certificate::BadAssignment {
            graph,
            lambda: "2".parse().unwrap(),
            assignment,
        };
        assert!(!verify_certificate(&cert).unwrap().valid);
    }

    #[test]
    fn malformed_text_is_rejected() {
        assert!(Certificate::parse("").is_err());
        assert!(Certificate::parse("lambdacol-certificate v2\n").is_err());
        let (graph, assignment) = construct_lemma_a(0, 1).unwrap();
        let lambda = assignment.lambda().unwrap();
        let text = Certificate::BadAssignment {
            graph,
            lambda,
            assignment,
        }
        .to_text()
        .unwrap();
        assert!(Certificate::parse(text.trim_end_matches("end\n")).is_err());
        assert!(Certificate::parse(&text.replace("list 1", "list 2")).is_err());
    }

    #[test]
    fn whitespace_in_colour_ids_is_refused() {
        let graph: Graph = "K2".parse().unwrap();
        let assignment = GroupedListAssignment {
            groups: vec![ColorGroup {
                k: 1,
                colors: vec!["a b".into()],
            }],
            lists: vec![vec!["a b".into()], vec!["a b".into()]],
        };
        let lambda: LambdaMultiset = "1".parse().unwrap();
        assert!(Certificate::BadAssignment {
            graph,
            lambda,
            assignment
        }
        .to_text()
        .is_err());
    }
}
