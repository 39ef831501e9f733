use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use braidquot::braid::{BraidGraph, EdgeRing};
use braidquot::corpus::{self, SweepKind, SweepSummary};
use braidquot::groebner::{groebner_basis, intersect, quotient, Ideal};
use braidquot::poly::{Polynomial, VariableOrder};
use braidquot::verify::{self, VerificationReport};
use braidquot::{parse_polynomial, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "braidquot",
    version,
    about = "Groebner-basis checks for singular braid ideals over Q(t)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the edge labeling, variable order and aliases.
    Graph {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, visible_alias = "k")]
        level: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Print the generators of one of the diagram's ideals.
    Ideal {
        #[arg(value_enum)]
        kind: IdealKind,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, visible_alias = "k")]
        level: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Print the reduced Groebner basis of an ideal.
    Gb {
        #[command(flatten)]
        source: Source,
        /// Project one closure step and multiply by `nu` before adding `--extra`.
        #[arg(long)]
        nu: bool,
        /// Additional generators, in the ring of the final ideal.
        #[arg(long)]
        extra: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print a basis of `I : (f)`.
    Quotient {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        by: String,
        #[arg(long)]
        json: bool,
    },
    /// Print a basis of the intersection with the ideal of `--with`.
    Intersect {
        #[command(flatten)]
        source: Source,
        #[arg(long = "with", required = true)]
        with: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run one check and print its report. Exit 1 if it fails.
    Verify {
        #[arg(long, value_enum)]
        claim: Claim,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, visible_alias = "level")]
        k: Option<usize>,
        /// Ideal for `nzd` (defaults to N).
        #[arg(long, value_enum)]
        ideal: Option<IdealKind>,
        /// Candidate nonzerodivisor for `nzd`.
        #[arg(long)]
        by: Option<String>,
        /// Sweep the enumerated corpus instead of one spec.
        #[arg(long)]
        corpus: bool,
        #[arg(long, default_value_t = corpus::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Rerun the worked closing example on the three-strand ladder.
    Golden {
        /// Six integer framings for x0..x5, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        framing: Option<Vec<i64>>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Source {
    #[arg(long, conflicts_with_all = ["vars", "generators"], requires = "ideal")]
    spec: Option<PathBuf>,
    #[arg(long, value_enum)]
    ideal: Option<IdealKind>,
    #[arg(long, visible_alias = "k")]
    level: Option<usize>,
    /// Variable order for `--gen`, highest first, comma separated.
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,
    #[arg(long = "gen", id = "generators", requires = "vars")]
    generators: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealKind {
    #[value(name = "F", alias = "f")]
    F,
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "Q", alias = "q")]
    Q,
    #[value(name = "N", alias = "n")]
    N,
}

#[derive(Clone, Copy, ValueEnum)]
enum Claim {
    Theorem,
    Corollary,
    OpenQn,
    Nzd,
}

/// Exit code 2 for every usage, parse and engine error.
#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn load_graph(path: &Path) -> CliResult<BraidGraph> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    BraidGraph::from_json(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn ring_at(graph: &BraidGraph, level: Option<usize>) -> CliResult<EdgeRing> {
    Ok(graph.edge_ring(level.unwrap_or(graph.base_level()))?)
}

fn ideal_of(ring: &EdgeRing, kind: IdealKind) -> Ideal {
    match kind {
        IdealKind::F => ring.framing_ideal(),
        IdealKind::L => ring.linear_ideal(),
        IdealKind::Q => ring.quadratic_ideal(),
        IdealKind::N => ring.nonlocal_ideal(),
    }
}

/// Rewrites `zt<p>` / `zb<p>` aliases to the ring's own labels.
fn resolve_aliases(src: &str, aliases: &[(String, String)]) -> String {
    let mut out = String::with_capacity(src.len());
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        match aliases.iter().find(|(a, _)| a == word) {
            Some((_, label)) => out.push_str(label),
            None => out.push_str(word),
        }
        word.clear();
    };
    for c in src.chars() {
        if c.is_ascii_alphanumeric() || c == '_' {
            word.push(c);
        } else {
            flush(&mut word, &mut out);
            out.push(c);
        }
    }
    flush(&mut word, &mut out);
    out
}

/// A parsing context: the order plus any aliases that may appear in input.
struct Context {
    order: Arc<VariableOrder>,
    aliases: Vec<(String, String)>,
}

impl Context {
    fn parse(&self, src: &str) -> CliResult<Polynomial> {
        parse_polynomial(&resolve_aliases(src, &self.aliases), &self.order)
            .map_err(|e| Failure(format!("`{src}`: {e}")))
    }
}

/// The ideal named by `source` together with the ring it lives in.
fn load_source(source: &Source) -> CliResult<(Ideal, Context, Option<EdgeRing>)> {
    match (&source.spec, source.ideal) {
        (Some(path), Some(kind)) => {
            let graph = load_graph(path)?;
            let ring = ring_at(&graph, source.level)?;
            let ideal = ideal_of(&ring, kind);
            let ctx = Context {
                order: ideal.order().clone(),
                aliases: ring.aliases(),
            };
            Ok((ideal, ctx, Some(ring)))
        }
        (None, _) if !source.vars.is_empty() => {
            let order = VariableOrder::new(source.vars.iter().map(|v| v.trim().to_string()))?;
            let ctx = Context {
                order: order.clone(),
                aliases: Vec::new(),
            };
            let gens = source
                .generators
                .iter()
                .map(|g| ctx.parse(g))
                .collect::<CliResult<Vec<_>>>()?;
            Ok((Ideal::new(&order, gens)?, ctx, None))
        }
        _ => Err(Failure(
            "give either --spec with --ideal, or --vars with --gen".into(),
        )),
    }
}

fn print_ideal(order: &Arc<VariableOrder>, gens: &[String], key: &str, json: bool) {
    if json {
        println!("{}", json!({ "order": order.names(), key: gens }));
    } else {
        println!("order: {}", order.names().join(" > "));
        for g in gens {
            println!("{g}");
        }
    }
}

fn graph_json(ring: &EdgeRing) -> Value {
    let g = ring.graph();
    let edges: Vec<Value> = ring
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let end = |x: braidquot::braid::End| match x {
                braidquot::braid::End::Boundary => json!("boundary"),
                braidquot::braid::End::Event(j) => json!(j),
            };
            json!({
                "label": ring.order().name(i),
                "position": g.edges()[e.edge].position,
                "tail": end(e.tail),
                "head": end(e.head),
                "framing": e.framing,
            })
        })
        .collect();
    let aliases: serde_json::Map<String, Value> = ring
        .aliases()
        .into_iter()
        .map(|(a, l)| (a, Value::String(l)))
        .collect();
    json!({
        "strands": g.strands(),
        "events": g.events(),
        "level": ring.level(),
        "order": ring.order().names(),
        "edges": edges,
        "aliases": aliases,
    })
}

fn emit_report(r: &VerificationReport, json: bool) -> ExitCode {
    if json {
        println!("{}", r.to_json());
    } else {
        println!("{}", r.summary());
        for c in &r.checks {
            println!("  {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
        }
    }
    if r.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_corpus(claim: Claim, seed: u64, json: bool) -> CliResult<ExitCode> {
    let kind = match claim {
        Claim::Theorem => SweepKind::Theorem,
        Claim::Corollary => SweepKind::Corollary,
        Claim::OpenQn => SweepKind::OpenQn,
        Claim::Nzd => return Err(Failure("--corpus does not apply to nzd".into())),
    };
    let entries = corpus::corpus(seed);
    let start = Instant::now();
    let results = corpus::sweep(&entries, kind);
    let summary = SweepSummary::from_results(&results, start.elapsed().as_secs_f64() * 1e3);
    if json {
        let mut v = serde_json::to_value(&summary).expect("summary serializes");
        v["kind"] = serde_json::to_value(kind).expect("kind serializes");
        v["seed"] = json!(seed);
        v["passed_all"] = json!(summary.all_passed());
        println!("{v}");
    } else {
        println!(
            "{} {:?} sweep: {}/{} passed ({:.1} ms, seed {seed})",
            if summary.all_passed() { "PASS" } else { "FAIL" },
            kind,
            summary.passed,
            summary.total,
            summary.elapsed_ms
        );
        for f in &summary.failures {
            println!("  {f}");
        }
    }
    Ok(if summary.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Graph { spec, level, json } => {
            let ring = ring_at(&load_graph(&spec)?, level)?;
            if json {
                println!("{}", graph_json(&ring));
            } else {
                println!("{ring}");
            }
        }
        Command::Ideal {
            kind,
            spec,
            level,
            json,
        } => {
            let ring = ring_at(&load_graph(&spec)?, level)?;
            let ideal = ideal_of(&ring, kind);
            let gens: Vec<String> = ideal
                .generators()
                .iter()
                .map(|g| g.clear_denominators().to_string())
                .collect();
            print_ideal(ideal.order(), &gens, "generators", json);
        }
        Command::Gb {
            source,
            nu,
            extra,
            json,
        } => {
            let (mut ideal, mut ctx, ring) = load_source(&source)?;
            if nu {
                if let Some(ring) = &ring {
                    let (next, pi) = ring.close_strand()?;
                    ideal = pi.apply_ideal(&ideal)?;
                    ctx.aliases = next.aliases();
                }
                let order = ideal.order().with_nu()?;
                let nu_var = Polynomial::var_at(&order, 0);
                let gens = ideal
                    .generators()
                    .iter()
                    .map(|g| g.embed(&order)?.mul(&nu_var))
                    .collect::<Result<Vec<_>, _>>()?;
                ideal = Ideal::new(&order, gens)?;
                ctx.order = order;
            }
            let extra = extra
                .iter()
                .map(|e| ctx.parse(e))
                .collect::<CliResult<Vec<_>>>()?;
            let ideal = ideal.extend(&extra)?;
            print_ideal(
                ideal.order(),
                &groebner_basis(&ideal).to_strings(),
                "basis",
                json,
            );
        }
        Command::Quotient { source, by, json } => {
            let (ideal, ctx, _) = load_source(&source)?;
            let f = ctx.parse(&by)?;
            let q = quotient(&ideal, &f)?;
            print_ideal(q.order(), &groebner_basis(&q).to_strings(), "basis", json);
        }
        Command::Intersect { source, with, json } => {
            let (ideal, ctx, _) = load_source(&source)?;
            let other = with
                .iter()
                .map(|w| ctx.parse(w))
                .collect::<CliResult<Vec<_>>>()?;
            let meet = intersect(&ideal, &Ideal::new(&ctx.order, other)?)?;
            print_ideal(
                meet.order(),
                &groebner_basis(&meet).to_strings(),
                "basis",
                json,
            );
        }
        Command::Verify {
            claim,
            spec,
            k,
            ideal,
            by,
            corpus,
            seed,
            json,
        } => {
            if corpus {
                return run_corpus(claim, seed, json);
            }
            let spec =
                spec.ok_or_else(|| Failure("--spec is required unless --corpus is given".into()))?;
            let graph = load_graph(&spec)?;
            let report = match claim {
                Claim::Theorem => {
                    verify::verify_theorem_step(&graph, k.unwrap_or(graph.base_level()))?
                }
                Claim::Corollary => verify::verify_corollary(&graph)?,
                Claim::OpenQn => verify::verify_open_braid_qn(&graph)?,
                Claim::Nzd => {
                    let by = by.ok_or_else(|| Failure("nzd needs --by".into()))?;
                    let ring = ring_at(&graph, k)?;
                    let i = ideal_of(&ring, ideal.unwrap_or(IdealKind::N));
                    let ctx = Context {
                        order: i.order().clone(),
                        aliases: ring.aliases(),
                    };
                    let mut r = verify::nonzerodivisor_check(&i, &ctx.parse(&by)?)?;
                    r.inputs.spec = Some(graph.spec().clone());
                    r.inputs.level = Some(ring.level());
                    r
                }
            };
            return Ok(emit_report(&report, json));
        }
        Command::Golden { framing, json } => {
            let report = match framing {
                Some(l) => {
                    let l: [i64; 6] = l.try_into().map_err(|l: Vec<i64>| {
                        Failure(format!("--framing needs 6 values, got {}", l.len()))
                    })?;
                    verify::golden_framed(l)?
                }
                None => verify::golden_reproduction()?,
            };
            return Ok(emit_report(&report, json));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
