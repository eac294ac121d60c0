//! The painting game (online list colouring) and its phase-structured λ variant.
//!
//! A game is a sequence of phases, each giving every vertex a quota of
//! selections. In each round Lister selects a non-empty set `U` of uncoloured
//! vertices that still owe selections in the current phase, and Painter colours
//! an independent `I ⊆ U`. Once no uncoloured vertex owes anything, the next
//! phase starts and refills the quotas of the uncoloured vertices. Painter wins
//! when everything is coloured; Lister wins when the phases run out first.
//!
//! The f-painting game is the one-phase game with quotas `f`; the λ-painting
//! game for an ordering `(k_1, …, k_q)` has `q` phases with uniform quotas `k_i`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Symmetry, VertexSet};
use crate::multiset::LambdaMultiset;

/// The solver packs states into 4-bit codes.
pub const MAX_GAME_VERTICES: usize = 32;
pub const MAX_QUOTA: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    Lister,
    Painter,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Lister => write!(f, "Lister"),
            Player::Painter => write!(f, "Painter"),
        }
    }
}

/// Whose turn it is; Painter's turn carries Lister's pending selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    Lister,
    Painter(VertexSet),
}

/// A non-terminal position at the start of a round.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PaintGameState {
    pub uncolored: VertexSet,
    /// Index into the phase order, starting at 0.
    pub phase: usize,
    /// Selections still owed in the current phase; 0 for coloured vertices.
    pub remaining: Vec<u8>,
}

impl PaintGameState {
    /// Vertices Lister may select.
    pub fn selectable(&self) -> VertexSet {
        VertexSet::from_iter_vertices(self.uncolored.iter().filter(|&v| self.remaining[v] > 0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoundResult {
    Continue(PaintGameState),
    Winner(Player),
}

#[derive(Debug, Clone)]
pub struct PaintGame {
    graph: Graph,
    /// `quotas[p][v]`: selections of `v` in phase `p`.
    quotas: Vec<Vec<u8>>,
    sym: Symmetry,
}

impl PaintGame {
    fn new(graph: &Graph, quotas: Vec<Vec<u8>>) -> Result<Self> {
        if graph.n() > MAX_GAME_VERTICES {
            return invalid(format!("games are limited to {MAX_GAME_VERTICES} vertices"));
        }
        if quotas.is_empty() {
            return invalid("a game needs at least one phase");
        }
        Ok(PaintGame {
            graph: graph.clone(),
            quotas,
            sym: graph.symmetry(),
        })
    }

    /// One phase with per-vertex token counts `f`.
    pub fn f_game(graph: &Graph, f: &[u32]) -> Result<Self> {
        if f.len() != graph.n() {
            return invalid(format!(
                "{} token counts for {} vertices",
                f.len(),
                graph.n()
            ));
        }
        if let Some(&big) = f.iter().find(|&&x| x > MAX_QUOTA) {
            return invalid(format!("token count {big} exceeds {MAX_QUOTA}"));
        }
        Self::new(graph, vec![f.iter().map(|&x| x as u8).collect()])
    }

    /// Phases with uniform quotas, in the given order.
    pub fn lambda_game(graph: &Graph, order: &[u32]) -> Result<Self> {
        if order.is_empty() || order.iter().any(|&k| k == 0 || k > MAX_QUOTA) {
            return invalid(format!("phase order must hold values in 1..={MAX_QUOTA}"));
        }
        Self::new(
            graph,
            order.iter().map(|&k| vec![k as u8; graph.n()]).collect(),
        )
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn phase_count(&self) -> usize {
        self.quotas.len()
    }

    pub fn initial(&self) -> RoundResult {
        self.settle(self.graph.vertices(), 0, self.quotas[0].clone())
    }

    /// Normalises a position after a round: drops coloured vertices, advances
    /// phases that are used up, and detects terminal positions.
    fn settle(
        &self,
        uncolored: VertexSet,
        mut phase: usize,
        mut remaining: Vec<u8>,
    ) -> RoundResult {
        if uncolored.is_empty() {
            return RoundResult::Winner(Player::Painter);
        }
        for (v, r) in remaining.iter_mut().enumerate() {
            if !uncolored.contains(v) {
                *r = 0;
            }
        }
        loop {
            // A vertex with nothing left in this phase or any later one is lost.
            let stranded = uncolored
                .iter()
                .any(|v| remaining[v] == 0 && self.quotas[phase + 1..].iter().all(|q| q[v] == 0));
            if stranded {
                return RoundResult::Winner(Player::Lister);
            }
            if uncolored.iter().any(|v| remaining[v] > 0) {
                return RoundResult::Continue(PaintGameState {
                    uncolored,
                    phase,
                    remaining,
                });
            }
            phase += 1;
            for v in uncolored.iter() {
                remaining[v] = self.quotas[phase][v];
            }
        }
    }

    pub fn check_selection(&self, state: &PaintGameState, selected: VertexSet) -> Result<()> {
        if selected.is_empty() {
            return Err(Error::InvalidMove("selection must be non-empty".into()));
        }
        if !selected.is_subset(self.graph.vertices()) {
            return Err(Error::InvalidMove(
                "selection contains a vertex not in the graph".into(),
            ));
        }
        if let Some(v) = selected.difference(state.uncolored).first() {
            return Err(Error::InvalidMove(format!(
                "vertex {v} is already coloured"
            )));
        }
        if let Some(v) = selected.iter().find(|&v| state.remaining[v] == 0) {
            return Err(Error::InvalidMove(format!(
                "vertex {v} has no selections left in this phase"
            )));
        }
        Ok(())
    }

    pub fn check_response(&self, selected: VertexSet, painted: VertexSet) -> Result<()> {
        if !painted.is_subset(selected) {
            return Err(Error::InvalidMove(
                "coloured set must be a subset of the selection".into(),
            ));
        }
        if !self.graph.is_independent(painted) {
            return Err(Error::InvalidMove(
                "coloured set must be independent".into(),
            ));
        }
        Ok(())
    }

    /// Plays one round: Lister selects `selected`, Painter colours `painted`.
    pub fn apply_round(
        &self,
        state: &PaintGameState,
        selected: VertexSet,
        painted: VertexSet,
    ) -> Result<RoundResult> {
        self.check_selection(state, selected)?;
        self.check_response(selected, painted)?;
        Ok(self.apply_unchecked(state, selected, painted))
    }

    fn apply_unchecked(
        &self,
        state: &PaintGameState,
        selected: VertexSet,
        painted: VertexSet,
    ) -> RoundResult {
        let mut remaining = state.remaining.clone();
        for v in selected.iter() {
            remaining[v] -= 1;
        }
        self.settle(state.uncolored.difference(painted), state.phase, remaining)
    }

    /// Packs a state under the symmetry group into a memo key.
    fn canonical_key(&self, state: &PaintGameState) -> (u8, u128) {
        let code = |v: usize| -> u8 {
            if state.uncolored.contains(v) {
                state.remaining[v] + 1
            } else {
                0
            }
        };
        let mut class_codes: Vec<Vec<u8>> = self
            .sym
            .classes
            .iter()
            .map(|c| {
                let mut codes: Vec<u8> = c.iter().map(code).collect();
                codes.sort_unstable_by(|a, b| b.cmp(a));
                codes
            })
            .collect();
        let mut key = 0u128;
        for group in &self.sym.swap_groups {
            let mut members: Vec<Vec<u8>> = group
                .iter()
                .map(|&i| std::mem::take(&mut class_codes[i]))
                .collect();
            members.sort_unstable_by(|a, b| b.cmp(a));
            for c in members.into_iter().flatten() {
                key = key << 4 | c as u128;
            }
        }
        (state.phase as u8, key)
    }

    /// Lister selections up to symmetry: vertices of one twin class with the
    /// same state are interchangeable, so only how many of them are taken matters.
    fn lister_options(&self, state: &PaintGameState) -> Vec<VertexSet> {
        let avail = state.selectable();
        let mut buckets: Vec<Vec<usize>> = Vec::new();
        for class in &self.sym.classes {
            let mut by_code: Vec<(u8, Vec<usize>)> = Vec::new();
            for v in class.intersection(avail).iter() {
                match by_code.iter_mut().find(|(c, _)| *c == state.remaining[v]) {
                    Some((_, vs)) => vs.push(v),
                    None => by_code.push((state.remaining[v], vec![v])),
                }
            }
            buckets.extend(by_code.into_iter().map(|(_, vs)| vs));
        }
        let mut out = vec![VertexSet::EMPTY];
        for bucket in &buckets {
            let mut next = Vec::with_capacity(out.len() * (bucket.len() + 1));
            for &base in &out {
                let mut set = base;
                next.push(set);
                for &v in bucket {
                    set.insert(v);
                    next.push(set);
                }
            }
            out = next;
        }
        out.retain(|s| !s.is_empty());
        out.sort();
        out
    }
}

/// Which Painter replies the solver considers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PainterMoves {
    /// Inclusion-maximal independent subsets of the selection. Colouring a
    /// superset never hurts Painter, so this gives the same game value.
    Maximal,
    /// Every independent subset, including the empty set.
    All,
}

/// Memoised minimax solver; also acts as an optimal strategy for either side.
#[derive(Debug, Clone)]
pub struct PaintSolver {
    game: PaintGame,
    moves: PainterMoves,
    memo: HashMap<(u8, u128), bool>,
    replies: HashMap<u64, Vec<VertexSet>>,
    max_states: Option<usize>,
    deadline: Option<Instant>,
}

impl PaintSolver {
    pub fn new(game: PaintGame) -> Self {
        Self::with_moves(game, PainterMoves::Maximal)
    }

    pub fn with_moves(game: PaintGame, moves: PainterMoves) -> Self {
        PaintSolver {
            game,
            moves,
            memo: HashMap::new(),
            replies: HashMap::new(),
            max_states: None,
            deadline: None,
        }
    }

    /// Caps the memo table; solving past it fails with [`Error::Budget`].
    pub fn with_state_limit(mut self, limit: usize) -> Self {
        self.max_states = Some(limit);
        self
    }

    /// Solving past `deadline` fails with [`Error::Budget`].
    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    pub fn game(&self) -> &PaintGame {
        &self.game
    }

    pub fn states_explored(&self) -> usize {
        self.memo.len()
    }

    fn painter_options(&mut self, selected: VertexSet) -> Vec<VertexSet> {
        let g = &self.game.graph;
        let moves = self.moves;
        self.replies
            .entry(selected.0)
            .or_insert_with(|| match moves {
                PainterMoves::Maximal => g.maximal_independent_subsets(selected),
                PainterMoves::All => {
                    let mut all = vec![VertexSet::EMPTY];
                    all.extend(g.independent_subsets(selected));
                    all
                }
            })
            .clone()
    }

    /// Game value of the initial position.
    pub fn winner(&mut self) -> Result<Player> {
        match self.game.initial() {
            RoundResult::Winner(p) => Ok(p),
            RoundResult::Continue(s) => Ok(if self.lister_wins(&s)? {
                Player::Lister
            } else {
                Player::Painter
            }),
        }
    }

    pub fn lister_wins(&mut self, state: &PaintGameState) -> Result<bool> {
        let key = self.game.canonical_key(state);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        if self.max_states.is_some_and(|m| self.memo.len() >= m) {
            return Err(Error::Budget(format!(
                "more than {} game states",
                self.memo.len()
            )));
        }
        if self.memo.len().is_multiple_of(4096)
            && self.deadline.is_some_and(|d| Instant::now() >= d)
        {
            return Err(Error::Budget("time limit reached".into()));
        }
        let mut win = false;
        for selected in self.game.lister_options(state) {
            if self.selection_wins(state, selected)? {
                win = true;
                break;
            }
        }
        self.memo.insert(key, win);
        Ok(win)
    }

    /// Lister wins after selecting `selected`, whatever Painter replies.
    fn selection_wins(&mut self, state: &PaintGameState, selected: VertexSet) -> Result<bool> {
        for painted in self.painter_options(selected) {
            if !self.reply_loses(state, selected, painted)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn reply_loses(
        &mut self,
        state: &PaintGameState,
        selected: VertexSet,
        painted: VertexSet,
    ) -> Result<bool> {
        match self.game.apply_unchecked(state, selected, painted) {
            RoundResult::Winner(p) => Ok(p == Player::Lister),
            RoundResult::Continue(next) => self.lister_wins(&next),
        }
    }

    /// Painter's optimal reply: the smallest winning independent set, or the
    /// smallest option when every reply loses.
    pub fn best_reply(&mut self, state: &PaintGameState, selected: VertexSet) -> Result<VertexSet> {
        let options = self.painter_options(selected);
        for &painted in &options {
            if !self.reply_loses(state, selected, painted)? {
                return Ok(painted);
            }
        }
        Ok(options.first().copied().unwrap_or(VertexSet::EMPTY))
    }

    /// Lister's optimal selection: the smallest winning one among the
    /// symmetry-reduced options, else the smallest legal selection.
    pub fn best_selection(&mut self, state: &PaintGameState) -> Result<VertexSet> {
        let options = self.game.lister_options(state);
        for &selected in &options {
            if self.selection_wins(state, selected)? {
                return Ok(selected);
            }
        }
        Ok(options[0])
    }
}

pub trait PainterStrategy {
    fn respond(&mut self, state: &PaintGameState, selected: VertexSet) -> Result<VertexSet>;
}

pub trait ListerStrategy {
    fn select(&mut self, state: &PaintGameState) -> Result<VertexSet>;
}

impl PainterStrategy for PaintSolver {
    fn respond(&mut self, state: &PaintGameState, selected: VertexSet) -> Result<VertexSet> {
        self.best_reply(state, selected)
    }
}

impl ListerStrategy for PaintSolver {
    fn select(&mut self, state: &PaintGameState) -> Result<VertexSet> {
        self.best_selection(state)
    }
}

/// A solved game: the winner and a solver that plays optimally for both sides.
#[derive(Debug, Clone)]
pub struct GameSolution {
    pub winner: Player,
    pub solver: PaintSolver,
}

pub fn solve(game: PaintGame) -> Result<GameSolution> {
    let mut solver = PaintSolver::new(game);
    let winner = solver.winner()?;
    Ok(GameSolution { winner, solver })
}

/// Exact value of the f-painting game.
pub fn decide_f_paintable(g: &Graph, f: &[u32]) -> Result<GameSolution> {
    solve(PaintGame::f_game(g, f)?)
}

/// Exact value of the λ-painting game with the given phase order, which must
/// be an ordering of `lambda`.
pub fn decide_paintable(g: &Graph, lambda: &LambdaMultiset, order: &[u32]) -> Result<GameSolution> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != lambda.elements() {
        return invalid(format!(
            "order {order:?} is not an ordering of {{{lambda}}}"
        ));
    }
    solve(PaintGame::lambda_game(g, order)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderVerdicts {
    pub per_order: Vec<(Vec<u32>, Player)>,
}

impl OrderVerdicts {
    /// Painter wins under every ordering.
    pub fn paintable(&self) -> bool {
        self.per_order.iter().all(|(_, p)| *p == Player::Painter)
    }

    /// First ordering Lister wins, if any.
    pub fn losing_order(&self) -> Option<&[u32]> {
        self.per_order
            .iter()
            .find(|(_, p)| *p == Player::Lister)
            .map(|(o, _)| o.as_slice())
    }
}

/// Solves the game for every distinct ordering of `lambda`.
pub fn decide_paintable_all_orders(g: &Graph, lambda: &LambdaMultiset) -> Result<OrderVerdicts> {
    decide_paintable_all_orders_limited(g, lambda, None, None)
}

pub fn decide_paintable_all_orders_limited(
    g: &Graph,
    lambda: &LambdaMultiset,
    max_states: Option<usize>,
    deadline: Option<Instant>,
) -> Result<OrderVerdicts> {
    let mut per_order = Vec::new();
    for order in lambda.distinct_orderings() {
        let mut solver = PaintSolver::new(PaintGame::lambda_game(g, &order)?);
        if let Some(m) = max_states {
            solver = solver.with_state_limit(m);
        }
        if let Some(d) = deadline {
            solver = solver.with_deadline(d);
        }
        per_order.push((order, solver.winner()?));
    }
    Ok(OrderVerdicts { per_order })
}

/// Plays a strategy for a subgraph inside the full game.
struct SubgamePlayer {
    /// Subgraph index to vertex of the full graph.
    map: Vec<usize>,
    strategy: Box<dyn PainterStrategy>,
}

impl SubgamePlayer {
    fn respond(
        &mut self,
        state: &PaintGameState,
        phase: usize,
        selected: VertexSet,
    ) -> Result<VertexSet> {
        let local = |set: VertexSet| {
            VertexSet::from_iter_vertices(
                self.map
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| set.contains(v))
                    .map(|(i, _)| i),
            )
        };
        let sub_selected = local(selected);
        if sub_selected.is_empty() {
            return Ok(VertexSet::EMPTY);
        }
        let sub_state = PaintGameState {
            uncolored: local(state.uncolored),
            phase,
            remaining: self.map.iter().map(|&v| state.remaining[v]).collect(),
        };
        let painted = self.strategy.respond(&sub_state, sub_selected)?;
        Ok(VertexSet::from_iter_vertices(
            painted.iter().map(|i| self.map[i]),
        ))
    }
}

/// Painter strategy for the `order1 ++ order2` game on `G` built from
/// strategies for `G[V1]` (phases of `order1`) and `G[V2]` (phases of `order2`).
/// During the first block of phases only the part of the selection inside
/// `V1` is answered; afterwards the selection is handed to the second strategy.
pub struct ComposedPainter {
    first: SubgamePlayer,
    second: SubgamePlayer,
    first_phases: usize,
}

impl ComposedPainter {
    pub fn new(
        g: &Graph,
        v1: VertexSet,
        v2: VertexSet,
        s1: Box<dyn PainterStrategy>,
        order1_len: usize,
        s2: Box<dyn PainterStrategy>,
    ) -> Result<Self> {
        if !v1.intersection(v2).is_empty() || v1.union(v2) != g.vertices() {
            return invalid("V1 and V2 must partition the vertex set");
        }
        Ok(ComposedPainter {
            first: SubgamePlayer {
                map: v1.iter().collect(),
                strategy: s1,
            },
            second: SubgamePlayer {
                map: v2.iter().collect(),
                strategy: s2,
            },
            first_phases: order1_len,
        })
    }
}

impl PainterStrategy for ComposedPainter {
    fn respond(&mut self, state: &PaintGameState, selected: VertexSet) -> Result<VertexSet> {
        if state.phase < self.first_phases {
            self.first.respond(state, state.phase, selected)
        } else {
            self.second
                .respond(state, state.phase - self.first_phases, selected)
        }
    }
}

/// Composes winning Painter strategies for `G[V1]` under `lambda1` (order
/// `order1`) and `G[V2]` under `order2` into one for `G` under their union.
/// Returns the composed strategy and the game it is meant for.
pub fn compose_painter(
    g: &Graph,
    v1: VertexSet,
    v2: VertexSet,
    s1: Box<dyn PainterStrategy>,
    order1: &[u32],
    s2: Box<dyn PainterStrategy>,
    order2: &[u32],
) -> Result<(ComposedPainter, PaintGame)> {
    let composed = ComposedPainter::new(g, v1, v2, s1, order1.len(), s2)?;
    let order: Vec<u32> = order1.iter().chain(order2).copied().collect();
    Ok((composed, PaintGame::lambda_game(g, &order)?))
}

/// Exhaustively checks that `strategy` wins for Painter against every Lister
/// play (every non-empty legal selection, no symmetry reduction). Illegal
/// replies count as losses.
pub fn check_painter_strategy(
    game: &PaintGame,
    strategy: &mut dyn PainterStrategy,
) -> Result<bool> {
    let start = match game.initial() {
        RoundResult::Winner(p) => return Ok(p == Player::Painter),
        RoundResult::Continue(s) => s,
    };
    let mut seen = HashSet::new();
    let mut stack = vec![start];
    while let Some(state) = stack.pop() {
        if !seen.insert(state.clone()) {
            continue;
        }
        for selected in all_selections(&state) {
            let painted = strategy.respond(&state, selected)?;
            if game.check_response(selected, painted).is_err() {
                return Ok(false);
            }
            match game.apply_unchecked(&state, selected, painted) {
                RoundResult::Winner(Player::Lister) => return Ok(false),
                RoundResult::Winner(Player::Painter) => {}
                RoundResult::Continue(next) => stack.push(next),
            }
        }
    }
    Ok(true)
}

/// Exhaustively checks that `strategy` wins for Lister against every
/// independent reply, including the empty one.
pub fn check_lister_strategy(game: &PaintGame, strategy: &mut dyn ListerStrategy) -> Result<bool> {
    let start = match game.initial() {
        RoundResult::Winner(p) => return Ok(p == Player::Lister),
        RoundResult::Continue(s) => s,
    };
    let mut seen = HashSet::new();
    let mut stack = vec![start];
    while let Some(state) = stack.pop() {
        if !seen.insert(state.clone()) {
            continue;
        }
        let selected = strategy.select(&state)?;
        if game.check_selection(&state, selected).is_err() {
            return Ok(false);
        }
        let mut replies = vec![VertexSet::EMPTY];
        replies.extend(game.graph.independent_subsets(selected));
        for painted in replies {
            match game.apply_unchecked(&state, selected, painted) {
                RoundResult::Winner(Player::Painter) => return Ok(false),
                RoundResult::Winner(Player::Lister) => {}
                RoundResult::Continue(next) => stack.push(next),
            }
        }
    }
    Ok(true)
}

fn all_selections(state: &PaintGameState) -> Vec<VertexSet> {
    let avail = state.selectable().0;
    let mut out = Vec::new();
    let mut sub = avail;
    while sub != 0 {
        out.push(VertexSet(sub));
        sub = (sub - 1) & avail;
    }
    out.reverse();
    out
}

/// One row of an explicit strategy: at `state`, Lister selects `selected`
/// and (for Painter tables) Painter colours `painted`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyRow {
    pub state: PaintGameState,
    pub selected: VertexSet,
    pub painted: Option<VertexSet>,
}

/// Decision table of `solver`'s strategy for the winning side over every
/// position reachable against arbitrary play, or `None` past `limit` rows.
pub fn strategy_table(
    solver: &mut PaintSolver,
    winner: Player,
    limit: usize,
) -> Result<Option<Vec<StrategyRow>>> {
    let game = solver.game.clone();
    let start = match game.initial() {
        RoundResult::Winner(_) => return Ok(Some(Vec::new())),
        RoundResult::Continue(s) => s,
    };
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    let mut stack = vec![start];
    while let Some(state) = stack.pop() {
        if !seen.insert(state.clone()) {
            continue;
        }
        match winner {
            Player::Painter => {
                for selected in all_selections(&state) {
                    let painted = solver.best_reply(&state, selected)?;
                    rows.push(StrategyRow {
                        state: state.clone(),
                        selected,
                        painted: Some(painted),
                    });
                    if let RoundResult::Continue(next) =
                        game.apply_unchecked(&state, selected, painted)
                    {
                        stack.push(next);
                    }
                }
            }
            Player::Lister => {
                let selected = solver.best_selection(&state)?;
                rows.push(StrategyRow {
                    state: state.clone(),
                    selected,
                    painted: None,
                });
                let mut replies = vec![VertexSet::EMPTY];
                replies.extend(game.graph.independent_subsets(selected));
                for painted in replies {
                    if let RoundResult::Continue(next) =
                        game.apply_unchecked(&state, selected, painted)
                    {
                        stack.push(next);
                    }
                }
            }
        }
        if rows.len() > limit {
            return Ok(None);
        }
    }
    Ok(Some(rows))
}

/// A strategy read from a decision table. Positions missing from the table
/// are errors.
#[derive(Debug, Clone, Default)]
pub struct TableStrategy {
    painter: HashMap<(PaintGameState, VertexSet), VertexSet>,
    lister: HashMap<PaintGameState, VertexSet>,
}

impl TableStrategy {
    pub fn from_rows(rows: &[StrategyRow]) -> Self {
        let mut t = TableStrategy::default();
        for row in rows {
            match row.painted {
                Some(p) => {
                    t.painter.insert((row.state.clone(), row.selected), p);
                }
                None => {
                    t.lister.insert(row.state.clone(), row.selected);
                }
            }
        }
        t
    }
}

impl PainterStrategy for TableStrategy {
    fn respond(&mut self, state: &PaintGameState, selected: VertexSet) -> Result<VertexSet> {
        self.painter
            .get(&(state.clone(), selected))
            .copied()
            .ok_or_else(|| {
                Error::InvalidMove(format!(
                    "strategy table has no reply for U={selected} at {state:?}"
                ))
            })
    }
}

impl ListerStrategy for TableStrategy {
    fn select(&mut self, state: &PaintGameState) -> Result<VertexSet> {
        self.lister.get(state).copied().ok_or_else(|| {
            Error::InvalidMove(format!("strategy table has no selection at {state:?}"))
        })
    }
}

/// A round as played, with the 0-based phase it belonged to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub phase: usize,
    pub selected: VertexSet,
    pub painted: VertexSet,
}

impl fmt::Display for Round {
    /// `phase=i U={...} I={...}` with 1-based phase numbers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "phase={} U={} I={}",
            self.phase + 1,
            self.selected,
            self.painted
        )
    }
}

/// Plays both strategies against each other to the end.
pub fn play_out(
    game: &PaintGame,
    lister: &mut dyn ListerStrategy,
    painter: &mut dyn PainterStrategy,
) -> Result<(Vec<Round>, Player)> {
    let mut rounds = Vec::new();
    let mut state = match game.initial() {
        RoundResult::Winner(p) => return Ok((rounds, p)),
        RoundResult::Continue(s) => s,
    };
    loop {
        let selected = lister.select(&state)?;
        let painted = painter.respond(&state, selected)?;
        let result = game.apply_round(&state, selected, painted)?;
        rounds.push(Round {
            phase: state.phase,
            selected,
            painted,
        });
        match result {
            RoundResult::Winner(p) => return Ok((rounds, p)),
            RoundResult::Continue(next) => state = next,
        }
    }
}
