//! Text-mode play against the solver.

use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::painting::{PaintGame, PaintGameState, PaintSolver, Player, Round, RoundResult};

/// Rounds played and the winner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub rounds: Vec<Round>,
    pub winner: Player,
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rounds {
            writeln!(f, "{r}")?;
        }
        writeln!(f, "{} wins", self.winner)
    }
}

/// Reads `{0,2}`, `U={0,2}`, `0,2` or `0 2`.
pub fn parse_vertex_set(line: &str) -> Result<VertexSet> {
    let s = line.trim();
    let s = s
        .strip_prefix("U=")
        .or_else(|| s.strip_prefix("I="))
        .unwrap_or(s)
        .trim();
    if s.starts_with('{') {
        return s.parse();
    }
    let mut set = VertexSet::EMPTY;
    for tok in s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        let v: usize = tok
            .parse()
            .map_err(|_| Error::Parse(format!("not a vertex: {tok:?}")))?;
        if v >= 64 {
            return Err(Error::Parse(format!("vertex {v} out of range")));
        }
        set.insert(v);
    }
    Ok(set)
}

fn describe(state: &PaintGameState) -> String {
    let owed: Vec<String> = state
        .uncolored
        .iter()
        .map(|v| format!("{v}:{}", state.remaining[v]))
        .collect();
    format!(
        "phase {} | uncoloured {} | selections owed {}",
        state.phase + 1,
        state.uncolored,
        owed.join(" ")
    )
}

/// Runs one game with the human in `human`'s seat, reading moves from `input`
/// and writing prompts to `output`. The machine plays the solver's optimal
/// strategy. Refuses to start when the game needs more than `max_states`
/// solver states. Illegal moves are rejected with the broken rule and asked for again.
pub fn play_session<R: BufRead, W: Write>(
    game: PaintGame,
    human: Player,
    mut input: R,
    mut output: W,
    max_states: Option<usize>,
) -> Result<Transcript> {
    let mut solver = PaintSolver::new(game.clone());
    if let Some(m) = max_states {
        solver = solver.with_state_limit(m);
    }
    let value = solver.winner().map_err(|e| match e {
        Error::Budget(msg) => Error::Budget(format!("game too large to play: {msg}")),
        other => other,
    })?;
    let io = |e: std::io::Error| Error::InvalidArgument(format!("i/o error: {e}"));
    writeln!(
        output,
        "You play {human}. Vertices are 0..{}.",
        game.graph().n().saturating_sub(1)
    )
    .map_err(io)?;
    if value != human {
        writeln!(output, "The machine can force a win from here.").map_err(io)?;
    }

    let mut rounds = Vec::new();
    let mut state = match game.initial() {
        RoundResult::Winner(p) => {
            writeln!(output, "{p} wins").map_err(io)?;
            return Ok(Transcript { rounds, winner: p });
        }
        RoundResult::Continue(s) => s,
    };
    let mut read_move = |output: &mut W,
                         prompt: &str,
                         check: &dyn Fn(VertexSet) -> Result<()>|
     -> Result<VertexSet> {
        loop {
            write!(output, "{prompt}> ").map_err(io)?;
            output.flush().map_err(io)?;
            let mut line = String::new();
            if input.read_line(&mut line).map_err(io)? == 0 {
                return Err(Error::InvalidArgument(
                    "input ended before the game finished".into(),
                ));
            }
            match parse_vertex_set(&line).and_then(|set| check(set).map(|_| set)) {
                Ok(set) => return Ok(set),
                Err(Error::InvalidMove(rule)) | Err(Error::Parse(rule)) => {
                    writeln!(output, "rejected: {rule}").map_err(io)?
                }
                Err(e) => return Err(e),
            }
        }
    };
    loop {
        writeln!(output, "{}", describe(&state)).map_err(io)?;
        let (selected, painted) = match human {
            Player::Lister => {
                let selected = read_move(&mut output, "U", &|u| game.check_selection(&state, u))?;
                let painted = solver.best_reply(&state, selected)?;
                writeln!(output, "Painter colours I={painted}").map_err(io)?;
                (selected, painted)
            }
            Player::Painter => {
                let selected = solver.best_selection(&state)?;
                writeln!(output, "Lister selects U={selected}").map_err(io)?;
                let painted = read_move(&mut output, "I", &|i| game.check_response(selected, i))?;
                (selected, painted)
            }
        };
        let round = Round {
            phase: state.phase,
            selected,
            painted,
        };
        writeln!(output, "{round}").map_err(io)?;
        rounds.push(round);
        match game.apply_round(&state, selected, painted)? {
            RoundResult::Continue(next) => state = next,
            RoundResult::Winner(p) => {
                writeln!(output, "{p} wins").map_err(io)?;
                return Ok(Transcript { rounds, winner: p });
            }
        }
    }
}
