//! `strata`: command-line front end for graph classes, decorated strata and
//! DR graph sums. Every command writes one JSON document to stdout.

mod cache;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use strata_core::dr::{self, DrInput, DrResult};
use strata_core::json::{element_from_value, element_to_value, graph_from_value, graph_to_value, taut_to_value};
use strata_core::{
    canonical_form, convert, convert_element, enumerate_graphs, gp_mul_strata, pushforward_psi_forget, AlgebraElement,
    Error, Graph, Mode,
};

use cache::Cache;

#[derive(Parser, Debug)]
#[command(name = "strata", version, about = "Graph algebras, decorated strata and DR cycle sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Directory for cached results.
    #[arg(long, global = true, env = "STRATA_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Indent the output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Read the input document from a file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graph enumeration and inspection.
    #[command(subcommand)]
    Graphs(GraphsCmd),
    /// Products and forgetful maps on graph classes.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Conversion to decorated strata.
    #[command(subcommand)]
    Taut(TautCmd),
    /// Double ramification graph sums.
    #[command(subcommand)]
    Dr(DrCmd),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Labeled,
    GenusFree,
}

#[derive(Subcommand, Debug)]
enum GraphsCmd {
    /// All isomorphism classes with the given numbers of legs and edges.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        g: Option<u32>,
        #[arg(long, value_enum, default_value = "labeled")]
        mode: ModeArg,
        #[arg(long)]
        h1_max: Option<u32>,
    },
    /// Automorphism count and canonical form of the input graph.
    Aut,
    /// Contracts the listed edges (0-based).
    Contract {
        #[arg(long, value_parser = parse_usizes, default_value = "")]
        edges: UsizeList,
    },
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    /// Product of two genus-labeled operands `[x, y]`.
    Mul,
    /// Product of two genus-free operands `[x, y]`.
    MulGf,
    /// `[G]_g` of a genus-free operand.
    Expand {
        #[arg(long)]
        g: u32,
    },
    /// Pullback along forgetting a new last leg.
    Pullback,
    /// Pushforward of `ψ_n [Γ]` along forgetting leg `n`.
    PushforwardPsi,
}

#[derive(Subcommand, Debug)]
enum TautCmd {
    /// Decorated-strata expression of an element or graph.
    Convert {
        /// Genus for genus-free input without a genus context.
        #[arg(long)]
        g: Option<u32>,
    },
    /// Excess-intersection product of two stable graphs `[x, y]`.
    GpMul,
}

#[derive(Args, Debug, Clone)]
struct DrArgs {
    #[arg(long)]
    g: u32,
    /// Leg weights, comma separated.
    #[arg(long, value_parser = parse_i64s, allow_hyphen_values = true)]
    a: IntList,
}

#[derive(Subcommand, Debug)]
enum DrCmd {
    /// The graph sum at one modulus.
    Eval {
        #[command(flatten)]
        base: DrArgs,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: u64,
    },
    /// The DR cycle (constant term at d = g).
    Cycle {
        #[command(flatten)]
        base: DrArgs,
    },
    /// The relation class in degree d > g.
    Relation {
        #[command(flatten)]
        base: DrArgs,
        #[arg(long)]
        d: usize,
    },
    /// The k-twisted sum: at one modulus with --r, else its constant term.
    Twisted {
        #[command(flatten)]
        base: DrArgs,
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        r: Option<u64>,
    },
}

#[derive(Clone, Debug)]
struct IntList(Vec<i64>);

#[derive(Clone, Debug)]
struct UsizeList(Vec<usize>);

fn split_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| format!("not an integer: {x:?}")))
        .collect()
}

fn parse_i64s(s: &str) -> Result<IntList, String> {
    split_list(s).map(IntList)
}

fn parse_usizes(s: &str) -> Result<UsizeList, String> {
    split_list(s).map(UsizeList)
}

impl Command {
    fn needs_input(&self) -> bool {
        match self {
            Command::Graphs(GraphsCmd::Enumerate { .. }) | Command::Dr(_) => false,
            Command::Graphs(_) | Command::Algebra(_) | Command::Taut(_) => true,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn read_input(path: &Option<PathBuf>) -> Result<Value, Error> {
    let mut text = String::new();
    match path {
        Some(p) => text = std::fs::read_to_string(p).map_err(|e| domain(format!("{}: {e}", p.display())))?,
        None => {
            std::io::stdin().read_to_string(&mut text).map_err(domain)?;
        }
    }
    serde_json::from_str(&text).map_err(domain)
}

/// An element document (`{"terms": ...}`) or a graph, read as its class.
fn operand(v: Value) -> Result<AlgebraElement, Error> {
    if v.get("terms").is_some() {
        element_from_value(v)
    } else {
        AlgebraElement::class(&graph_from_value(v)?)
    }
}

fn pair(v: Value) -> Result<(Value, Value), Error> {
    match v {
        Value::Array(mut xs) if xs.len() == 2 => {
            let y = xs.pop().expect("two");
            let x = xs.pop().expect("two");
            Ok((x, y))
        }
        _ => Err(Error::Parse("expected a JSON array with two operands".into())),
    }
}

fn dr_doc(input: &DrInput, r_samples: &[u64], element: &AlgebraElement) -> Value {
    json!({
        "meta": {"g": input.g, "n": input.n(), "a": input.a, "d": input.d, "k": input.k, "r_samples": r_samples},
        "element": element_to_value(element),
    })
}

fn dr_result(input: &DrInput, res: DrResult) -> Value {
    dr_doc(input, &res.r_samples, &res.element)
}

fn run(command: &Command, input: Option<Value>) -> Result<Value, Error> {
    let input = || input.clone().ok_or_else(|| Error::Parse("missing input".into()));
    Ok(match command {
        Command::Graphs(GraphsCmd::Enumerate { n, d, g, mode, h1_max }) => {
            let mode = match mode {
                ModeArg::Labeled => Mode::Labeled,
                ModeArg::GenusFree => Mode::GenusFree,
            };
            let list = enumerate_graphs(*n, *d, *g, mode, *h1_max)?;
            let graphs: Vec<Value> =
                list.iter().map(|cf| json!({"graph": graph_to_value(cf.graph()), "aut": cf.aut_order()})).collect();
            json!({"n": n, "d": d, "g": g, "mode": mode.as_str(), "count": graphs.len(), "graphs": graphs})
        }
        Command::Graphs(GraphsCmd::Aut) => {
            let graph = graph_from_value(input()?)?;
            let cf = canonical_form(&graph);
            json!({"aut": cf.aut_order(), "canonical": graph_to_value(cf.graph())})
        }
        Command::Graphs(GraphsCmd::Contract { edges }) => {
            let graph = graph_from_value(input()?)?;
            graph_to_value(&graph.contract_edges(&edges.0)?)
        }
        Command::Algebra(AlgebraCmd::Mul) => {
            let (x, y) = pair(input()?)?;
            element_to_value(&operand(x)?.mul(&operand(y)?)?)
        }
        Command::Algebra(AlgebraCmd::MulGf) => {
            let (x, y) = pair(input()?)?;
            element_to_value(&operand(x)?.mul_genus_free(&operand(y)?)?)
        }
        Command::Algebra(AlgebraCmd::Expand { g }) => element_to_value(&operand(input()?)?.expand_genus_free(*g)?),
        Command::Algebra(AlgebraCmd::Pullback) => element_to_value(&operand(input()?)?.pullback_forget()?),
        Command::Algebra(AlgebraCmd::PushforwardPsi) => {
            element_to_value(&pushforward_psi_forget(&graph_from_value(input()?)?)?)
        }
        Command::Taut(TautCmd::Convert { g }) => {
            let v = input()?;
            let expr = if v.get("terms").is_some() {
                let e = element_from_value(v)?;
                match (e.context().mode, g) {
                    (Mode::GenusFree, Some(g)) => convert_element(&e.expand_genus_free(*g)?)?,
                    _ => convert_element(&e)?,
                }
            } else {
                let graph: Graph = graph_from_value(v)?;
                match (graph.is_labeled(), g) {
                    (true, _) => convert(&graph)?,
                    (false, Some(g)) => convert_element(&strata_core::expand_genus_free(&graph, *g)?)?,
                    (false, None) => return Err(Error::NotGenusLabeled),
                }
            };
            taut_to_value(&expr)
        }
        Command::Taut(TautCmd::GpMul) => {
            let (x, y) = pair(input()?)?;
            taut_to_value(&gp_mul_strata(&graph_from_value(x)?, &graph_from_value(y)?)?)
        }
        Command::Dr(DrCmd::Eval { base, d, r }) => {
            let input = DrInput::new(base.g, base.a.0.clone(), *d, 0);
            dr_doc(&input, &[*r], &dr::dr_eval(&input, *r)?)
        }
        Command::Dr(DrCmd::Cycle { base }) => {
            let input = DrInput::new(base.g, base.a.0.clone(), base.g as usize, 0);
            dr_result(&input, dr::dr_cycle(base.g, &base.a.0)?)
        }
        Command::Dr(DrCmd::Relation { base, d }) => {
            let input = DrInput::new(base.g, base.a.0.clone(), *d, 0);
            dr_result(&input, dr::dr_relation(base.g, &base.a.0, *d)?)
        }
        Command::Dr(DrCmd::Twisted { base, d, k, r }) => {
            let input = DrInput::new(base.g, base.a.0.clone(), *d, *k);
            match r {
                Some(r) => dr_doc(&input, &[*r], &dr::twisted_dr_eval(&input, *r)?),
                None => dr_result(&input, dr::twisted_dr_constant_term(&input)?),
            }
        }
    })
}

fn execute(cli: &Cli) -> Result<Value, Error> {
    let input = if cli.command.needs_input() { Some(read_input(&cli.input)?) } else { None };
    let cache = match &cli.cache_dir {
        Some(dir) => Some(Cache::new(dir).map_err(|e| domain(format!("cache directory: {e}")))?),
        None => None,
    };
    let key = Cache::key(&format!("{:?}", cli.command), &input.as_ref().map(Value::to_string).unwrap_or_default());
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        return Ok(hit);
    }
    let value = run(&cli.command, input)?;
    if let Some(c) = &cache {
        c.put(&key, &value).map_err(|e| domain(format!("cache write: {e}")))?;
    }
    Ok(value)
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("json")
    } else {
        serde_json::to_string(v).expect("json")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(v) => {
            println!("{}", render(&v, cli.pretty));
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", render(&json!({"error": {"kind": e.kind(), "detail": e.to_string()}}), cli.pretty));
            ExitCode::from(1)
        }
    }
}
