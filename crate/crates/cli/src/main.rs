use std::fs;
use std::io::{self, BufReader};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lambdacol::certificate::{game_certificate, verify_certificate, Certificate, GameKind};
use lambdacol::constructions::{construct_lemma_a, construct_thm_b};
use lambdacol::painting::{PaintGame, Player};
use lambdacol::{
    find_bad_assignment, find_list_coloring, phi_scan, play_session, psi_scan, Budget,
    ChoosabilityOutcome, Graph, LambdaMultiset, ScanReport,
};

/// Outcome codes shared by the deciding subcommands.
const EXIT_ERROR: u8 = 1;
const EXIT_INVALID_CERT: u8 = 3;
const EXIT_WITNESS: u8 = 10;
const EXIT_BUDGET: u8 = 20;

#[derive(Parser)]
#[command(
    name = "lambdacol",
    version,
    about = "Exact λ-choosability and λ-paintability for small graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a known bad λ-assignment and print it as a certificate.
    Construct {
        #[command(subcommand)]
        recipe: Recipe,
    },
    /// Colour a graph: from a certificate's lists if given, else with χ colours.
    Colorable {
        #[command(flatten)]
        graph: GraphArgs,
        /// Certificate holding a list assignment (its graph is used).
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Search for a bad λ-assignment. Exit 0: choosable, 10: witness, 20: budget exhausted.
    Choosable {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        lambda: LambdaMultiset,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the witness certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the painting game. Exit 0: Painter wins every game, 10: Lister wins one.
    Paintable {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        game: GameArgs,
        /// Write a certificate for the first game Lister wins (or the last game).
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Smallest non-λ-choosable complete k_λ-partite graph up to n_max vertices.
    PhiScan(ScanArgs),
    /// Smallest non-λ-paintable complete k_λ-partite graph up to n_max vertices.
    PsiScan(ScanArgs),
    /// Play the painting game against the solver on stdin/stdout.
    Play {
        #[command(flatten)]
        graph: GraphArgs,
        /// Phase order of the λ-game, e.g. 1,2.
        #[arg(long, value_delimiter = ',', conflicts_with = "f")]
        order: Option<Vec<u32>>,
        /// Token counts of the f-game, one per vertex.
        #[arg(long, value_delimiter = ',')]
        f: Option<Vec<u32>>,
        #[arg(long, value_enum)]
        role: Role,
        /// Refuse games needing more solver states than this.
        #[arg(long, default_value_t = 2_000_000)]
        max_states: usize,
        /// Save the transcript here.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Check a certificate. Exit 0: valid, 3: invalid or malformed.
    VerifyCert { path: PathBuf },
}

#[derive(Subcommand)]
enum Recipe {
    /// λ with `a` ones and `b` twos.
    LemmaA {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
    },
    /// Any λ that is not all ones.
    ThmB {
        #[arg(long)]
        lambda: LambdaMultiset,
    },
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct GraphArgs {
    /// Graph literal: K3,3 (complete multipartite), K4, C5, P4 or E3.
    #[arg(long)]
    graph: Option<Graph>,
    /// Edge-list file: `u v` per line, optional `n N` line, `#` comments.
    #[arg(long)]
    graph_file: Option<PathBuf>,
}

impl GraphArgs {
    fn load(&self) -> Result<Option<Graph>> {
        match (&self.graph, &self.graph_file) {
            (Some(g), _) => Ok(Some(g.clone())),
            (None, Some(p)) => {
                let text =
                    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                Ok(Some(Graph::parse_edge_list(&text)?))
            }
            (None, None) => Ok(None),
        }
    }

    fn require(&self) -> Result<Graph> {
        self.load()?
            .context("one of --graph or --graph-file is required")
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// Search node limit (per graph in scans; game states for paintability).
    #[arg(long, env = "LAMBDACOL_BUDGET_NODES")]
    budget_nodes: Option<u64>,
    /// Wall-clock limit in seconds (per graph in scans).
    #[arg(long, env = "LAMBDACOL_BUDGET_SECS")]
    budget_secs: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.budget_nodes,
            max_time: self.budget_secs.map(Duration::from_secs_f64),
        }
    }
}

#[derive(Args)]
struct GameArgs {
    /// λ for the λ-game; every distinct phase order is solved unless --order is given.
    #[arg(long, conflicts_with = "f")]
    lambda: Option<LambdaMultiset>,
    /// A single phase order.
    #[arg(long, value_delimiter = ',', requires = "lambda")]
    order: Option<Vec<u32>>,
    /// Token counts of the f-game; a single value applies to every vertex.
    #[arg(long, value_delimiter = ',')]
    f: Option<Vec<u32>>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    lambda: LambdaMultiset,
    #[arg(long)]
    n_max: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Print JSON-lines records instead of the table.
    #[arg(long)]
    json: bool,
    /// Also write JSON-lines records to this file.
    #[arg(long)]
    records: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Role {
    Lister,
    Painter,
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn bad_assignment_cert(
    graph: Graph,
    assignment: lambdacol::GroupedListAssignment,
) -> Result<String> {
    let lambda = assignment.lambda()?;
    Ok(Certificate::BadAssignment {
        graph,
        lambda,
        assignment,
    }
    .to_text()?)
}

fn expand_f(f: &[u32], n: usize) -> Result<Vec<u32>> {
    match f {
        [one] => Ok(vec![*one; n]),
        _ if f.len() == n => Ok(f.to_vec()),
        _ => bail!("--f needs 1 or {n} values, got {}", f.len()),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Construct { recipe } => {
            let (graph, assignment) = match recipe {
                Recipe::LemmaA { a, b } => construct_lemma_a(a, b)?,
                Recipe::ThmB { lambda } => {
                    let (g, l, _) = construct_thm_b(&lambda)?;
                    (g, l)
                }
            };
            print!("{}", bad_assignment_cert(graph, assignment)?);
            Ok(0)
        }
        Command::Colorable { graph, cert } => {
            if let Some(path) = cert {
                let text = fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let Certificate::BadAssignment {
                    graph: g,
                    assignment,
                    ..
                } = Certificate::parse(&text)?
                else {
                    bail!("{} does not hold a list assignment", path.display());
                };
                match find_list_coloring(&g, &assignment)? {
                    Some(c) => {
                        for (v, col) in c.colors.iter().enumerate() {
                            println!("{v} {col}");
                        }
                        Ok(0)
                    }
                    None => {
                        println!("no proper colouring from these lists");
                        Ok(EXIT_WITNESS)
                    }
                }
            } else {
                let g = graph.require()?;
                let colors = g.optimal_coloring();
                println!("chromatic number {}", g.chromatic_number());
                for (v, c) in colors.iter().enumerate() {
                    println!("{v} {c}");
                }
                Ok(0)
            }
        }
        Command::Choosable {
            graph,
            lambda,
            budget,
            out,
        } => {
            let g = graph.require()?;
            match find_bad_assignment(&g, &lambda, budget.budget())? {
                ChoosabilityOutcome::NoneExists => {
                    println!("λ-choosable: no bad {{{lambda}}}-assignment exists");
                    Ok(0)
                }
                ChoosabilityOutcome::Witness(l) => {
                    eprintln!("not λ-choosable: bad {{{lambda}}}-assignment found");
                    write_or_print(&out, &bad_assignment_cert(g, l)?)?;
                    Ok(EXIT_WITNESS)
                }
                ChoosabilityOutcome::BudgetExhausted { nodes } => {
                    println!("inconclusive: budget exhausted after {nodes} nodes");
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Command::Paintable {
            graph,
            game,
            cert_out,
        } => {
            let g = graph.require()?;
            let kinds: Vec<GameKind> = match (&game.lambda, &game.order, &game.f) {
                (_, _, Some(f)) => vec![GameKind::F(expand_f(f, g.n())?)],
                (Some(l), Some(order), None) => {
                    let mut sorted = order.clone();
                    sorted.sort_unstable();
                    if sorted != l.elements() {
                        bail!("order {order:?} is not an ordering of {{{l}}}");
                    }
                    vec![GameKind::Lambda(order.clone())]
                }
                (Some(l), None, None) => l
                    .distinct_orderings()
                    .into_iter()
                    .map(GameKind::Lambda)
                    .collect(),
                (None, _, None) => bail!("one of --lambda or --f is required"),
            };
            let mut lister_won = false;
            let mut keep = None;
            for kind in kinds {
                let cert = game_certificate(&g, kind.clone())?;
                let Certificate::PaintGame { winner, .. } = &cert else {
                    unreachable!()
                };
                match &kind {
                    GameKind::Lambda(o) => println!("order {o:?}: {winner} wins"),
                    GameKind::F(_) => println!("f-game: {winner} wins"),
                }
                if !lister_won {
                    lister_won = *winner == Player::Lister;
                    keep = Some(cert);
                }
            }
            println!(
                "{}",
                if lister_won {
                    "not paintable"
                } else {
                    "paintable"
                }
            );
            if let (Some(path), Some(cert)) = (&cert_out, keep) {
                fs::write(path, cert.to_text()?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(if lister_won { EXIT_WITNESS } else { 0 })
        }
        Command::PhiScan(args) => scan_command(args, phi_scan),
        Command::PsiScan(args) => scan_command(args, psi_scan),
        Command::Play {
            graph,
            order,
            f,
            role,
            max_states,
            transcript,
        } => {
            let g = graph.require()?;
            let game = match (order, f) {
                (Some(o), None) => PaintGame::lambda_game(&g, &o)?,
                (None, Some(f)) => PaintGame::f_game(&g, &expand_f(&f, g.n())?)?,
                _ => bail!("exactly one of --order or --f is required"),
            };
            let human = match role {
                Role::Lister => Player::Lister,
                Role::Painter => Player::Painter,
            };
            let stdin = io::stdin();
            let t = play_session(
                game,
                human,
                BufReader::new(stdin.lock()),
                io::stdout(),
                Some(max_states),
            )?;
            if let Some(p) = transcript {
                fs::write(&p, t.to_string()).with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(0)
        }
        Command::VerifyCert { path } => {
            let text =
                fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let cert = match Certificate::parse(&text) {
                Ok(c) => c,
                Err(e) => {
                    println!("malformed certificate: {e}");
                    return Ok(EXIT_INVALID_CERT);
                }
            };
            let v = verify_certificate(&cert)?;
            println!("{}", v.message);
            Ok(if v.valid { 0 } else { EXIT_INVALID_CERT })
        }
    }
}

fn scan_command(
    args: ScanArgs,
    scan: fn(&LambdaMultiset, usize, Budget) -> lambdacol::Result<ScanReport>,
) -> Result<u8> {
    let report = scan(&args.lambda, args.n_max, args.budget.budget())?;
    let records = report.json_lines();
    if args.json {
        print!("{records}");
    } else {
        print!("{report}");
    }
    if let Some(p) = &args.records {
        fs::write(p, &records).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(if report.holes().next().is_some() {
        EXIT_BUDGET
    } else {
        0
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
