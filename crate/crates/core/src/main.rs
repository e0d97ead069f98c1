use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use raagscope::classify::{classify_timed, ClassifyConfig, Verdict};
use raagscope::graph::{emit_graph, parse_graph, EmitFormat, ParseFormat};
use raagscope::obstruction::{builtin_graph, Catalog, EntryRole, ObstructionKind, DEFAULT_COCONTRACT_DEPTH};
use raagscope::ops::{clique_separators, co_contract, complement, join, simplicial_extension};
use raagscope::prover::{RuleKind, DEFAULT_BUDGET};
use raagscope::report::{parse_certificate, verify_certificate, Parameters, Report};
use raagscope::words::surface::SurfaceHom;
use raagscope::words::{Word, WordEngine, DEFAULT_MAX_LEN};
use raagscope::{CertError, Graph, VertexId};

const EXIT_USAGE: u8 = 64;
const EXIT_MALFORMED: u8 = 65;
const EXIT_IO: u8 = 66;
const EXIT_SOUNDNESS: u8 = 70;

/// Surface subgroups of right-angled Artin groups, with checkable certificates.
#[derive(Parser)]
#[command(name = "raagscope", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether A(G) contains a hyperbolic surface group.
    ///
    /// Exit status: 0 no surface subgroup, 1 has one, 2 unknown.
    Classify(ClassifyArgs),
    /// Re-check a certificate (a report or bare certificate) against a graph.
    Verify {
        graph: String,
        certificate: PathBuf,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        catalog: CatalogArgs,
    },
    /// Graph operations.
    #[command(subcommand)]
    Ops(OpsCommand),
    /// Word problem in A(G). Predicates exit 0 for true, 1 for false.
    #[command(subcommand)]
    Word(WordCommand),
    /// Surface-group homomorphisms into A(G).
    #[command(subcommand)]
    Surf(SurfCommand),
    /// Forbidden-graph catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum InFormat {
    Auto,
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Graph6,
    Edgelist,
    Dot,
}

impl From<OutFormat> for EmitFormat {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Graph6 => EmitFormat::Graph6,
            OutFormat::Edgelist => EmitFormat::Edgelist,
            OutFormat::Dot => EmitFormat::Dot,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Complete,
    Amalgam,
    Bisimplicial,
    Join,
}

#[derive(Args)]
struct InputArgs {
    /// Input format for graph files.
    #[arg(long, value_enum, default_value = "auto")]
    format: InFormat,
}

#[derive(Args)]
struct CatalogArgs {
    /// Extra catalog entries (JSON).
    #[arg(long, env = "RAAGSCOPE_CATALOG")]
    catalog: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Graph file, `-` for stdin, or `builtin:NAME`. Several graph6 lines are
    /// classified one per line.
    input: Option<String>,
    #[command(flatten)]
    format: InputArgs,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, default_value_t = DEFAULT_COCONTRACT_DEPTH)]
    cocontract_depth: usize,
    #[command(flatten)]
    catalog: CatalogArgs,
    /// Print a JSON report.
    #[arg(long)]
    json: bool,
    /// Prover threads; 1 keeps the search sequential.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Order in which the prover tries rules.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "complete,amalgam,bisimplicial,join")]
    rule_order: Vec<RuleArg>,
}

#[derive(Args)]
struct GraphOut {
    #[command(flatten)]
    input: InputArgs,
    /// Output format.
    #[arg(long, value_enum, default_value = "edgelist")]
    to: OutFormat,
}

#[derive(Subcommand)]
enum OpsCommand {
    Complement {
        graph: String,
        #[command(flatten)]
        out: GraphOut,
    },
    Join {
        left: String,
        right: String,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Merge a vertex set whose complement is connected.
    Cocontract {
        graph: String,
        /// Comma-separated vertex names.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Simplicial extension: a new simplicial vertex for each maximal clique and each of its members.
    Extend {
        graph: String,
        #[command(flatten)]
        out: GraphOut,
    },
    /// List clique separators.
    Separators {
        graph: String,
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Args)]
struct WordGraph {
    graph: String,
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
    max_len: usize,
}

#[derive(Subcommand)]
enum WordCommand {
    /// Normal form.
    Nf {
        #[command(flatten)]
        g: WordGraph,
        word: String,
    },
    Trivial {
        #[command(flatten)]
        g: WordGraph,
        word: String,
    },
    Equal {
        #[command(flatten)]
        g: WordGraph,
        left: String,
        right: String,
    },
    /// Clique subgroup the word is conjugate into, if any.
    CliqueConj {
        #[command(flatten)]
        g: WordGraph,
        word: String,
    },
}

#[derive(Subcommand)]
enum SurfCommand {
    /// Whether the images satisfy the surface relation.
    Check {
        graph: String,
        hom: PathBuf,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Whether every boundary image is conjugate into a clique subgroup.
    Relative {
        graph: String,
        hom: PathBuf,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Shortest nontrivial element with trivial image.
    Kernel {
        graph: String,
        hom: PathBuf,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    List {
        #[command(flatten)]
        catalog: CatalogArgs,
    },
    /// Print the fixed and user entries in catalog-file JSON.
    Export {
        #[command(flatten)]
        catalog: CatalogArgs,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Failure { code, msg: msg.into() }
    }
}

type Outcome = Result<u8, Failure>;

fn read_source(path: &str) -> Result<Vec<u8>, Failure> {
    if path == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).map_err(|e| Failure::new(EXIT_IO, format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| Failure::new(EXIT_IO, format!("{path}: {e}")))
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn parse_format(text: &[u8], f: InFormat) -> ParseFormat {
    match f {
        InFormat::Auto => ParseFormat::detect(text),
        InFormat::Graph6 => ParseFormat::Graph6,
        InFormat::Edgelist => ParseFormat::Edgelist,
    }
}

fn parse_text(text: &[u8], f: InFormat) -> Result<Graph, Failure> {
    parse_graph(text, parse_format(text, f)).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))
}

fn load_graph(spec: &str, input: &InputArgs) -> Result<Graph, Failure> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin_graph(name).ok_or_else(|| Failure::new(EXIT_USAGE, format!("no builtin graph named {name:?}")));
    }
    parse_text(&read_source(spec)?, input.format)
}

fn load_catalog(args: &CatalogArgs) -> Result<Catalog, Failure> {
    let mut cat = Catalog::builtin();
    if let Some(path) = &args.catalog {
        cat.load_json(&read_text(path)?).map_err(|e| Failure::new(EXIT_MALFORMED, e.to_string()))?;
    }
    Ok(cat)
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::NoSurfaceSubgroup(_) => 0,
        Verdict::HasSurfaceSubgroup(_) => 1,
        Verdict::Unknown(_) => 2,
    }
}

fn describe(v: &Verdict) -> String {
    match v {
        Verdict::NoSurfaceSubgroup(d) => {
            let rules: Vec<&str> = d.rules_used().into_iter().map(RuleKind::tag).collect();
            format!("derivation with {} nodes using {}", d.node_count(), rules.join(", "))
        }
        Verdict::HasSurfaceSubgroup(o) => {
            let emb: Vec<String> = o.embedding.iter().map(|(a, b)| format!("{a}->{b}")).collect();
            match o.kind {
                ObstructionKind::InducedForbidden => format!("induced {} [{}]", o.entry, emb.join(" ")),
                ObstructionKind::CoContractionTrail => {
                    let trail: Vec<String> = o.trail.iter().map(|(a, b)| format!("{{{a},{b}}}")).collect();
                    format!("co-contract {} then induced {} [{}]", trail.join(" "), o.entry, emb.join(" "))
                }
            }
        }
        Verdict::Unknown(u) => {
            let r = &u.prover;
            let mut s = format!("{} of {} nodes expanded", r.nodes_expanded, r.budget);
            if r.budget_exhausted {
                s.push_str(", budget exhausted");
            }
            s.push_str(&format!("; rules tried: {}", r.rules_attempted.join(", ")));
            if let Some(g) = &r.stuck_graph {
                s.push_str(&format!("; stuck at {}", g.trim().replace('\n', " | ")));
            }
            s
        }
    }
}

fn cmd_classify(args: ClassifyArgs) -> Outcome {
    let graphs: Vec<(String, Result<Graph, Failure>)> = match args.input.as_deref() {
        Some(s) if s.starts_with("builtin:") => vec![(s.to_string(), load_graph(s, &args.format))],
        other => {
            let text = read_source(other.unwrap_or("-"))?;
            let fmt = parse_format(&text, args.format.format);
            let lines: Vec<&str> = std::str::from_utf8(&text)
                .map(|t| t.lines().map(str::trim).filter(|l| !l.is_empty()).collect())
                .unwrap_or_default();
            if fmt == ParseFormat::Graph6 && lines.len() > 1 {
                lines.iter().map(|l| (l.to_string(), parse_text(l.as_bytes(), InFormat::Graph6))).collect()
            } else {
                vec![(String::new(), parse_text(&text, args.format.format))]
            }
        }
    };
    let mut config = ClassifyConfig { catalog: load_catalog(&args.catalog)?, cocontract_depth: args.cocontract_depth, ..Default::default() };
    config.prover.budget = args.budget.max(1);
    config.prover.parallel = args.threads > 1;
    config.prover.rule_order = args
        .rule_order
        .iter()
        .map(|r| match r {
            RuleArg::Complete => RuleKind::CompleteBase,
            RuleArg::Amalgam => RuleKind::Amalgam,
            RuleArg::Bisimplicial => RuleKind::Bisimplicial,
            RuleArg::Join => RuleKind::Join,
        })
        .collect();
    let params = Parameters {
        budget: config.prover.budget,
        cocontract_depth: config.cocontract_depth,
        threads: args.threads.max(1),
        rule_order: config.prover.rule_order.iter().map(|k| k.tag().to_string()).collect(),
        catalog: args.catalog.catalog.as_ref().map(|p| p.display().to_string()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.max(1))
        .build()
        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let batch = graphs.len() > 1;
    let mut worst = 0u8;
    for (label, g) in graphs {
        let g = match g {
            Ok(g) => g,
            Err(e) if batch => {
                println!("{label}\terror: {}", e.msg);
                worst = worst.max(EXIT_USAGE);
                continue;
            }
            Err(e) => return Err(e),
        };
        let (verdict, timings) = match pool.install(|| classify_timed(&g, &config)) {
            Ok(v) => v,
            Err(CertError::Soundness) => return Err(Failure::new(EXIT_SOUNDNESS, CertError::Soundness.to_string())),
            Err(e) => return Err(Failure::new(EXIT_MALFORMED, e.to_string())),
        };
        let code = verdict_code(&verdict);
        worst = worst.max(code);
        let line = if args.json {
            let report = Report::new(&g, params.clone(), verdict.clone(), timings);
            if batch {
                serde_json::to_string(&report)
            } else {
                serde_json::to_string_pretty(&report)
            }
            .expect("report serialises")
        } else {
            format!("{}: {}", verdict.name(), describe(&verdict))
        };
        if batch && !args.json {
            println!("{label}\t{line}");
        } else {
            println!("{line}");
        }
    }
    Ok(worst)
}

fn cmd_verify(graph: &str, cert: &Path, input: &InputArgs, catalog: &CatalogArgs) -> Outcome {
    let g = load_graph(graph, input)?;
    let text = read_text(cert)?;
    let cert = parse_certificate(&text).map_err(|e| Failure::new(EXIT_MALFORMED, format!("malformed certificate: {e}")))?;
    let cat = load_catalog(catalog)?;
    match verify_certificate(&g, &cert, &cat) {
        Ok(true) => {
            println!("valid");
            Ok(0)
        }
        Ok(false) => {
            println!("invalid");
            Ok(1)
        }
        Err(e) => {
            println!("invalid: {e}");
            Ok(1)
        }
    }
}

fn emit(g: &Graph, to: OutFormat) -> Outcome {
    print!("{}", emit_graph(g, to.into()));
    Ok(0)
}

fn op_failure(e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_USAGE, e.to_string())
}

fn cmd_ops(cmd: OpsCommand) -> Outcome {
    match cmd {
        OpsCommand::Complement { graph, out } => emit(&complement(&load_graph(&graph, &out.input)?), out.to),
        OpsCommand::Join { left, right, out } => {
            let g = join(&load_graph(&left, &out.input)?, &load_graph(&right, &out.input)?).map_err(op_failure)?;
            emit(&g, out.to)
        }
        OpsCommand::Cocontract { graph, set, out } => {
            let g = load_graph(&graph, &out.input)?;
            let set: Vec<VertexId> = set.iter().map(|s| VertexId::new(s.trim())).collect::<Result<_, _>>().map_err(op_failure)?;
            emit(&co_contract(&g, &set).map_err(op_failure)?, out.to)
        }
        OpsCommand::Extend { graph, out } => {
            let (g, _) = simplicial_extension(&load_graph(&graph, &out.input)?).map_err(op_failure)?;
            emit(&g, out.to)
        }
        OpsCommand::Separators { graph, input } => {
            let g = load_graph(&graph, &input)?;
            for s in clique_separators(&g) {
                let names = |vs: &[VertexId]| vs.iter().map(VertexId::to_string).collect::<Vec<_>>().join(",");
                println!("{{{}}}\t{}\t{}", names(&s.separator), names(s.left.vertices()), names(s.right.vertices()));
            }
            Ok(0)
        }
    }
}

fn word_arg(s: &str) -> Result<Word, Failure> {
    Word::parse(s).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))
}

fn show_word(w: &Word) -> String {
    if w.is_empty() {
        "(empty)".to_string()
    } else {
        w.to_string()
    }
}

fn predicate(b: bool) -> Outcome {
    println!("{b}");
    Ok(if b { 0 } else { 1 })
}

fn cmd_word(cmd: WordCommand) -> Outcome {
    let wg = match &cmd {
        WordCommand::Nf { g, .. } | WordCommand::Trivial { g, .. } | WordCommand::Equal { g, .. } | WordCommand::CliqueConj { g, .. } => g,
    };
    let graph = load_graph(&wg.graph, &wg.input)?;
    let engine = WordEngine::new(&graph).with_max_len(wg.max_len);
    let fail = |e: raagscope::WordError| Failure::new(EXIT_USAGE, e.to_string());
    match &cmd {
        WordCommand::Nf { word, .. } => {
            println!("{}", show_word(&engine.normal_form(&word_arg(word)?).map_err(fail)?));
            Ok(0)
        }
        WordCommand::Trivial { word, .. } => predicate(engine.is_trivial(&word_arg(word)?).map_err(fail)?),
        WordCommand::Equal { left, right, .. } => predicate(engine.are_equal(&word_arg(left)?, &word_arg(right)?).map_err(fail)?),
        WordCommand::CliqueConj { word, .. } => match engine.conjugate_into_clique(&word_arg(word)?).map_err(fail)? {
            Some(c) => {
                let names: Vec<String> = c.clique.iter().map(VertexId::to_string).collect();
                println!("{{{}}} conjugator: {} core: {}", names.join(","), show_word(&c.conjugator), show_word(&c.core));
                Ok(0)
            }
            None => {
                println!("none");
                Ok(1)
            }
        },
    }
}

fn load_hom(path: &Path) -> Result<SurfaceHom, Failure> {
    SurfaceHom::from_json(&read_text(path)?).map_err(|e| Failure::new(EXIT_MALFORMED, format!("malformed homomorphism file: {e}")))
}

fn cmd_surf(cmd: SurfCommand) -> Outcome {
    let fail = |e: raagscope::WordError| Failure::new(EXIT_MALFORMED, e.to_string());
    match cmd {
        SurfCommand::Check { graph, hom, input } => {
            let g = load_graph(&graph, &input)?;
            predicate(load_hom(&hom)?.check_hom(&g).map_err(fail)?)
        }
        SurfCommand::Relative { graph, hom, input } => {
            let g = load_graph(&graph, &input)?;
            let checks = load_hom(&hom)?.boundary_checks(&g).map_err(fail)?;
            match checks.iter().find(|(_, c)| c.is_none()) {
                Some((i, _)) => {
                    println!("false: boundary {i} is not conjugate into a clique subgroup");
                    Ok(1)
                }
                None => predicate(true),
            }
        }
        SurfCommand::Kernel { graph, hom, input, max_len } => {
            let g = load_graph(&graph, &input)?;
            match load_hom(&hom)?.kernel_search(&g, max_len).map_err(fail)? {
                Some(w) => println!("{w}"),
                None => println!("none up to {max_len}"),
            }
            Ok(0)
        }
    }
}

fn cmd_catalog(cmd: CatalogCommand) -> Outcome {
    match cmd {
        CatalogCommand::List { catalog } => {
            for e in load_catalog(&catalog)?.listing() {
                let role = match e.role {
                    EntryRole::Base => "base",
                    EntryRole::Derived => "derived",
                };
                println!("{}\t{}\t{}\t{}\t{}", e.name, e.graph.vertex_count(), e.graph.edge_count(), role, e.provenance);
            }
            Ok(0)
        }
        CatalogCommand::Export { catalog } => {
            let records: Vec<serde_json::Value> = load_catalog(&catalog)?
                .entries()
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "name": e.name,
                        "provenance": e.provenance,
                        "vertices": e.graph.vertices(),
                        "complement_edges": complement(&e.graph).edges(),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&records).expect("serialisable"));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`raagscope classify big.g6 | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Classify(args) => cmd_classify(args),
        Command::Verify { graph, certificate, input, catalog } => cmd_verify(&graph, &certificate, &input, &catalog),
        Command::Ops(c) => cmd_ops(c),
        Command::Word(c) => cmd_word(c),
        Command::Surf(c) => cmd_surf(c),
        Command::Catalog(c) => cmd_catalog(c),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("raagscope: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
