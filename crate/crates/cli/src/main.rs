use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use skewquad::clifford::{center_dim_oracle, presentation, CliffordStructure};
use skewquad::mf::{
    coker_dims_oracle, coker_hilbert, random_corpus, MatrixFactorization, MfJson, MfMorphism,
    MorphismJson,
};
use skewquad::pointscheme;
use skewquad::quadgraph::{reduce_to_base, ReductionTrace, TraceOp, DEFAULT_BUDGET};
use skewquad::rank::{self, HighRank};
use skewquad::report::{analyze, classification_report, conjecture_scan};
use skewquad::series::hilbert_checks;
use skewquad::QuadGraph;

#[derive(Parser)]
#[command(
    name = "skewquad",
    version,
    about = "Quadrics in (±1)-skew polynomial algebras"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit a plain-text table (the default).
    #[arg(long, global = true)]
    table: bool,
    /// Worker threads for parallel scans.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized corpora.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// State budget for the reduction search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Args)]
struct GraphArg {
    /// `n=6; edges=1-2,2-3`, or a graph JSON object.
    #[arg(long)]
    graph: String,
}

#[derive(Subcommand)]
enum Command {
    /// Mutation classes of graphs on `n` vertices.
    Classify {
        #[arg(long)]
        n: usize,
    },
    /// Every invariant of one graph.
    Analyze(GraphArg),
    /// Reduction trace down to a base case.
    Reduce(GraphArg),
    /// Mutation at a vertex (1-based).
    Mutate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        at: usize,
    },
    /// Relative mutation of `target` by `by` (1-based).
    Relmutate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        target: usize,
        #[arg(long)]
        by: usize,
        /// Skip the isolated-vertex requirement.
        #[arg(long)]
        force: bool,
    },
    /// Shape of the Clifford-type algebra.
    Clifford {
        #[command(flatten)]
        graph: GraphArg,
        /// Base vertex (1-based); defaults to the last vertex.
        #[arg(long)]
        base: Option<usize>,
        /// Also run the direct linear-algebra check.
        #[arg(long)]
        oracle: bool,
    },
    /// Irreducible components of the point scheme.
    Pointscheme(GraphArg),
    /// Bounds on the rank of the quadric.
    Rank(GraphArg),
    /// Matrix factorization tools.
    Mf {
        #[command(subcommand)]
        command: MfCommand,
    },
    /// Compares descriptors with the `ℓ`-band pattern on every class.
    ConjectureScan {
        #[arg(long)]
        n: usize,
    },
    /// Closed-form Hilbert series against direct monomial counts.
    HilbertCheck {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
    },
}

#[derive(Subcommand)]
enum MfCommand {
    /// Checks homogeneity and both products.
    Verify { file: PathBuf },
    /// Splits off trivial summands.
    Reduce { file: PathBuf },
    /// Knörrer doubling; writes the factorization of `f + u² + v²`.
    Knorrer {
        file: PathBuf,
        /// Commutation signs of the new variables with `x₁, …, xₙ`, e.g. `+,-,+`.
        #[arg(long)]
        signs: String,
        /// Keep the `f + uv` form.
        #[arg(long)]
        uv: bool,
    },
    /// Mapping cone of a morphism.
    Cone { file: PathBuf },
    /// Cokernel dimensions, by the closed form and by direct linear algebra.
    Hilbert {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Verifies a seeded random corpus of constructed factorizations.
    Selfcheck {
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

enum Failure {
    Math(String),
    Usage(String),
}

type Outcome = std::result::Result<(), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn math<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Math(e.to_string())
}

fn parse_graph(arg: &GraphArg) -> std::result::Result<QuadGraph, Failure> {
    let s = arg.graph.trim();
    if s.starts_with('{') {
        serde_json::from_str(s).map_err(usage)
    } else {
        s.parse().map_err(usage)
    }
}

fn vertex(v: usize, g: &QuadGraph) -> std::result::Result<usize, Failure> {
    if v == 0 || v > g.n() {
        return Err(Failure::Usage(format!(
            "vertex {v} is not in 1..={}",
            g.n()
        )));
    }
    Ok(v - 1)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_mf(path: &Path) -> std::result::Result<MatrixFactorization, Failure> {
    let j: MfJson = read_json(path)?;
    MatrixFactorization::try_from(&j).map_err(usage)
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn mf_json(mf: &MatrixFactorization) -> MfJson {
    MfJson::from(mf)
}

fn trace_lines(t: &ReductionTrace) -> Vec<String> {
    let mut out = vec![format!("start: {}", t.start)];
    for step in &t.steps {
        let op = match step.op {
            TraceOp::TwoPoints { removed } => {
                format!("two-points reduction, remove {}", removed + 1)
            }
            TraceOp::Knorrer { segment: (a, b) } => {
                format!("Knörrer reduction, remove {}-{}", a + 1, b + 1)
            }
            TraceOp::Mutate { at } => format!("mutate at {}", at + 1),
            TraceOp::RelativeMutate { target, by } => {
                format!("relative mutation of {} by {}", target + 1, by + 1)
            }
        };
        out.push(format!("  {op}: {}", step.result));
    }
    out.push(match t.descriptor() {
        Some(d) => format!(
            "descriptor N = {d} (two-points steps: {})",
            t.multiplicity_log2
        ),
        None => "stuck: search budget exhausted".to_string(),
    });
    out
}

fn shape_line(s: &CliffordStructure) -> String {
    format!(
        "C(A) ≅ {} × M_{}(k), dim {}, rank B = {}, descriptor N = {}",
        s.components,
        s.block,
        s.dimension(),
        s.rank_b,
        s.components
    )
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    if let Some(t) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(usage)?;
    }
    match cli.command {
        Command::Classify { n } => {
            if !(1..=7).contains(&n) {
                return Err(Failure::Usage(format!(
                    "classify supports n in 1..=7, got {n}"
                )));
            }
            let budget = if n == 7 {
                g.budget.min(10_000)
            } else {
                g.budget
            };
            let r = classification_report(n, budget).map_err(math)?;
            if g.json {
                print_json(&r);
            } else {
                print!("{}", r.to_table());
            }
            if r.classes.iter().any(|c| !c.consistent()) {
                return Err(Failure::Math(
                    "descriptor from the trace disagrees with the Clifford structure".into(),
                ));
            }
        }
        Command::Analyze(arg) => {
            let graph = parse_graph(&arg)?;
            let a = analyze(&graph, g.budget).map_err(usage)?;
            if g.json {
                print_json(&a);
            } else {
                println!("graph: {}", a.graph);
                println!("{}", shape_line(&a.clifford));
                println!("point scheme (ℓ = {}):", a.point_scheme.ell);
                for line in &a.point_scheme.components {
                    println!("  {line}");
                }
                let exact = a.rank.exact.map_or(String::new(), |r| format!(" = {r}"));
                println!("rank bounds: [{}, {}]{exact}", a.rank.lo, a.rank.hi);
                println!("high rank: {}", high_rank_word(a.high_rank));
                if let Some(s) = a.smooth {
                    println!("C(A) semisimple: {s}");
                }
                for line in trace_lines(&a.trace) {
                    println!("{line}");
                }
            }
        }
        Command::Reduce(arg) => {
            let graph = parse_graph(&arg)?;
            let t = reduce_to_base(&graph, g.budget);
            if g.json {
                print_json(&t);
            } else {
                for line in trace_lines(&t) {
                    println!("{line}");
                }
            }
            if t.is_stuck() {
                return Err(Failure::Math("reduction did not reach a base case".into()));
            }
        }
        Command::Mutate { graph, at } => {
            let graph = parse_graph(&graph)?;
            let h = graph.mutate(vertex(at, &graph)?).map_err(usage)?;
            emit_graph(&h, g.json);
        }
        Command::Relmutate {
            graph,
            target,
            by,
            force,
        } => {
            let graph = parse_graph(&graph)?;
            let (t, b) = (vertex(target, &graph)?, vertex(by, &graph)?);
            let h = if force {
                graph.relative_mutate_forced(t, b)
            } else {
                graph.relative_mutate(t, b)
            };
            emit_graph(&h.map_err(usage)?, g.json);
        }
        Command::Clifford {
            graph,
            base,
            oracle,
        } => {
            let graph = parse_graph(&graph)?;
            let eps = graph.to_sign_system();
            let base = match base {
                Some(v) => vertex(v, &graph)?,
                None => graph.n() - 1,
            };
            let pres = presentation(&eps, base).map_err(usage)?;
            let s = CliffordStructure::from_presentation(&pres);
            let report = if oracle {
                Some(center_dim_oracle(&pres).map_err(usage)?)
            } else {
                None
            };
            if g.json {
                print_json(&json!({
                    "components": s.components,
                    "block": s.block,
                    "descriptor": s.components,
                    "rank_b": s.rank_b,
                    "oracle": report,
                }));
            } else {
                println!("{}", shape_line(&s));
                if let Some(r) = &report {
                    println!(
                        "oracle: centre dimension {}, trace form rank {}/{}",
                        r.center_dim, r.trace_form_rank, r.dimension
                    );
                }
            }
            if let Some(r) = report {
                if r.center_dim as u64 != s.components || !r.semisimple() {
                    return Err(Failure::Math(
                        "oracle disagrees with the structure formula".into(),
                    ));
                }
            }
        }
        Command::Pointscheme(arg) => {
            let graph = parse_graph(&arg)?;
            let ps = pointscheme::components(&graph.to_sign_system()).map_err(usage)?;
            if g.json {
                print_json(&json!({
                    "components": ps.components.iter().map(|c| c.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "lines": ps.component_lines(),
                    "ell": ps.ell,
                }));
            } else {
                for line in ps.component_lines() {
                    println!("{line}");
                }
                println!("ℓ = {}", ps.ell);
            }
        }
        Command::Rank(arg) => {
            let graph = parse_graph(&arg)?;
            let eps = graph.to_sign_system();
            let b = rank::rank_bounds(&eps);
            let h = rank::high_rank(&eps);
            let smooth = rank::is_smooth(&eps).ok();
            let threshold = rank::high_rank_threshold(eps.n());
            if g.json {
                print_json(
                    &json!({ "bounds": b, "high_rank": h, "threshold": threshold, "smooth": smooth }),
                );
            } else {
                let exact = b.exact.map_or(String::new(), |r| format!(" = {r}"));
                println!("rank bounds: [{}, {}]{exact}", b.lo, b.hi);
                println!("high rank (threshold {threshold}): {}", high_rank_word(h));
                if let Some(s) = smooth {
                    println!("C(A) semisimple: {s}");
                }
            }
        }
        Command::Mf { command } => run_mf(command, g)?,
        Command::ConjectureScan { n } => {
            let r = conjecture_scan(n).map_err(usage)?;
            if g.json {
                print_json(&r);
            } else {
                print!("{}", r.to_table());
            }
        }
        Command::HilbertCheck { max_n, max_degree } => {
            let reports: Vec<_> = (1..=max_n)
                .map(|n| (n, hilbert_checks(n, max_degree)))
                .collect();
            let ok = reports.iter().all(|(_, r)| r.passed());
            if g.json {
                print_json(
                    &reports
                        .iter()
                        .map(|(n, r)| json!({ "n": n, "report": r }))
                        .collect::<Vec<_>>(),
                );
            } else {
                for (n, r) in &reports {
                    println!("n={n}: {}", if r.passed() { "ok" } else { "FAILED" });
                    for f in r.failures() {
                        println!("  {f:?}");
                    }
                }
            }
            if !ok {
                return Err(Failure::Math("Hilbert series mismatch".into()));
            }
        }
    }
    Ok(())
}

fn high_rank_word(h: HighRank) -> &'static str {
    match h {
        HighRank::Yes => "yes",
        HighRank::No => "no",
        HighRank::Unknown => "unknown",
    }
}

fn emit_graph(g: &QuadGraph, json: bool) {
    if json {
        print_json(g);
    } else {
        println!("{g}");
    }
}

fn parse_signs(s: &str) -> std::result::Result<Vec<i8>, Failure> {
    s.split(',')
        .map(|t| match t.trim() {
            "+" | "+1" | "1" => Ok(1),
            "-" | "-1" => Ok(-1),
            other => Err(Failure::Usage(format!("bad sign {other:?}"))),
        })
        .collect()
}

fn run_mf(command: MfCommand, g: &Global) -> Outcome {
    match command {
        MfCommand::Verify { file } => {
            let mf = read_mf(&file)?;
            let rep = mf.verify();
            if g.json {
                print_json(&json!({ "valid": rep.is_valid(), "report": rep }));
            } else if rep.is_valid() {
                println!("valid rank-{} factorization of {}", mf.rank(), mf.f());
            } else {
                println!("invalid factorization of {}", mf.f());
                for q in &rep.quadric {
                    println!("  {q}");
                }
                for h in &rep.homogeneity {
                    println!(
                        "  {}[{}][{}] = {} is not of degree {}",
                        h.matrix, h.row, h.col, h.entry, h.expected_degree
                    );
                }
                for r in &rep.residuals {
                    println!(
                        "  residual f - {} at [{}][{}]: {}",
                        r.product, r.row, r.col, r.value
                    );
                }
            }
            if !rep.is_valid() {
                return Err(Failure::Math("not a matrix factorization".into()));
            }
        }
        MfCommand::Reduce { file } => {
            let mf = read_mf(&file)?;
            if !mf.is_valid() {
                return Err(Failure::Math("input is not a matrix factorization".into()));
            }
            let red = mf.reduce();
            if g.json {
                print_json(&json!({ "mf": mf_json(&red.mf), "splits": red.splits }));
            } else {
                println!(
                    "split off {} trivial summands; reduced rank {}",
                    red.split_count(),
                    red.mf.rank()
                );
                print_json(&mf_json(&red.mf));
            }
        }
        MfCommand::Knorrer { file, signs, uv } => {
            let mf = read_mf(&file)?;
            let signs = parse_signs(&signs)?;
            let ext = if uv {
                mf.knorrer_extend(&signs)
            } else {
                mf.knorrer_extend_squares(&signs)
            };
            print_json(&mf_json(&ext.map_err(usage)?));
        }
        MfCommand::Cone { file } => {
            let j: MorphismJson = read_json(&file)?;
            let mor = MfMorphism::try_from(&j).map_err(usage)?;
            print_json(&mf_json(&mor.cone().map_err(math)?));
        }
        MfCommand::Hilbert { file, max_degree } => {
            let mf = read_mf(&file)?;
            let closed = coker_hilbert(&mf, max_degree).map_err(usage)?;
            let direct = coker_dims_oracle(&mf, max_degree).map_err(usage)?;
            if g.json {
                print_json(
                    &json!({ "closed_form": closed, "direct": direct, "agree": closed == direct }),
                );
            } else {
                println!("{:>3} {:>10} {:>10}", "d", "closed", "direct");
                for (d, (a, b)) in closed.iter().zip(&direct).enumerate() {
                    println!("{d:>3} {a:>10} {b:>10}");
                }
            }
            if closed != direct {
                return Err(Failure::Math("cokernel dimensions disagree".into()));
            }
        }
        MfCommand::Selfcheck { cases } => {
            let corpus = random_corpus(g.seed, cases);
            let bad: Vec<usize> = corpus
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.is_valid())
                .map(|(k, _)| k)
                .collect();
            if g.json {
                print_json(&json!({ "seed": g.seed, "cases": corpus.len(), "invalid": bad }));
            } else {
                println!(
                    "seed {}: {} cases, {} invalid",
                    g.seed,
                    corpus.len(),
                    bad.len()
                );
            }
            if !bad.is_empty() {
                return Err(Failure::Math(
                    "corpus contains invalid factorizations".into(),
                ));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
