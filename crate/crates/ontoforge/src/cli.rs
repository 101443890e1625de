//! The `ontoforge` command line: `build`, `query`, `rank`, and `export`
//! subcommands over the library pipeline.
//!
//! Exit codes: 0 success, 1 runtime error, 2 usage error, 3 empty-result
//! conditions (an all-stop-word query). `ONTOFORGE_THREADS` caps shard
//! parallelism.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus::StopwordSet;
use crate::error::{Error, Result};
use crate::ontology::{LearnParams, OntologyGraph};
use crate::ranking::{self, MeasureVector, Weights};
use crate::retrieval::{self, SynonymLexicon};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EMPTY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ontoforge",
    version,
    about = "Learn terminology ontologies from text corpora, query them, and rank them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Learn an ontology from a directory of .txt files
    Build(BuildArgs),
    /// Answer a query against a saved ontology
    Query(QueryArgs),
    /// Rank ontologies with the weighted four-measure score
    Rank(RankArgs),
    /// Export a saved ontology as Turtle or JSON
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Lsi,
    Lda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Turtle,
    Json,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Learning backend
    #[arg(long, value_enum)]
    pub backend: BackendArg,
    /// Directory of .txt documents
    #[arg(long)]
    pub input: PathBuf,
    /// Stop-word file, one word per line ('#' comments); omit for none
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    /// Output model file (JSON)
    #[arg(short, long)]
    pub output: PathBuf,
    /// Also export Turtle to this path
    #[arg(long)]
    pub turtle: Option<PathBuf>,
    /// lsi: concept count (defaults to the document count)
    #[arg(short = 'k', long, value_parser = clap::value_parser!(u64).range(1..))]
    pub concepts: Option<u64>,
    /// lsi: membership threshold on |loading|
    #[arg(long, default_value_t = crate::lsi_concepts::DEFAULT_TAU)]
    pub tau: f64,
    /// lda: topic count
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub topics: u64,
    /// lda: symmetric Dirichlet prior (defaults to 50 / topics)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// lda: RNG seed
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// lda: shard count for the parallel E-step
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub shards: u64,
    /// lda: EM iteration cap
    #[arg(long, default_value_t = crate::lda::DEFAULT_MAX_ITERS as u64)]
    pub max_iters: u64,
    /// lda: relative ELBO change below which training stops
    #[arg(long, default_value_t = crate::lda::DEFAULT_TOL)]
    pub tol: f64,
    /// lda: words attached per topic
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub n_words: u64,
    /// lda: minimum topic-word probability for an edge
    #[arg(long, default_value_t = 0.001)]
    pub min_prob: f64,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    /// Saved model file
    #[arg(long)]
    pub model: PathBuf,
    /// Query text
    #[arg(long)]
    pub query: String,
    /// Synonym lexicon TSV (term<TAB>synonym<TAB>rank)
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Stop-word file applied to the query
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    /// Print the result as JSON
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    /// Measures fixture CSV (name,cmm,dem,ssm,bem); mutually exclusive
    /// with model files
    #[arg(long)]
    pub measures: Option<PathBuf>,
    /// Saved model files to measure against --query
    #[arg(value_name = "MODEL")]
    pub models: Vec<PathBuf>,
    /// Query used to match nodes when ranking model files
    #[arg(long)]
    pub query: Option<String>,
    /// Synonym lexicon TSV used during matching
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Stop-word file applied to the query
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    /// Measure weights as cmm,dem,ssm,bem
    #[arg(long)]
    pub weights: Option<String>,
    /// Divide each measure by its cross-ontology maximum before weighting
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Saved model file
    #[arg(long)]
    pub model: PathBuf,
    /// Output format
    #[arg(long, value_enum)]
    pub format: ExportFormat,
    /// Output path
    #[arg(short, long)]
    pub output: PathBuf,
}

/// Runs a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    init_thread_pool();
    let outcome = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Query(args) => cmd_query(args),
        Command::Rank(args) => cmd_rank(args),
        Command::Export(args) => cmd_export(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::QueryEmpty => EXIT_EMPTY,
        _ => EXIT_RUNTIME,
    }
}

fn init_thread_pool() {
    if let Ok(value) = std::env::var("ONTOFORGE_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                // Ignore the error if a global pool already exists.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn load_stopwords(path: &Option<PathBuf>) -> Result<StopwordSet> {
    match path {
        Some(p) => StopwordSet::load(p),
        None => Ok(StopwordSet::default()),
    }
}

fn load_lexicon(path: &Option<PathBuf>) -> Result<SynonymLexicon> {
    match path {
        Some(p) => SynonymLexicon::load(p),
        None => Ok(SynonymLexicon::empty()),
    }
}

fn cmd_build(args: BuildArgs) -> Result<i32> {
    let params = match args.backend {
        BackendArg::Lsi => LearnParams::Lsi {
            concepts: args.concepts.map(|k| k as usize),
            tau: args.tau,
        },
        BackendArg::Lda => LearnParams::Lda {
            topics: args.topics as usize,
            alpha: args.alpha,
            seed: args.seed,
            shards: args.shards as usize,
            max_iters: args.max_iters as usize,
            tol: args.tol,
            n_words: args.n_words as usize,
            min_prob: args.min_prob,
        },
    };
    let stops = load_stopwords(&args.stopwords)?;
    let started = Instant::now();
    let graph = crate::ontology::learn_with(&args.input, &stops, &params)?;
    let elapsed = started.elapsed();
    graph.save_json(&args.output)?;
    if let Some(turtle) = &args.turtle {
        graph.export_turtle(turtle)?;
    }

    let memberless = graph
        .concepts()
        .iter()
        .filter(|c| graph.concept_words(c.id).next().is_none())
        .count();
    if memberless > 0 {
        eprintln!("warning: {memberless} concept(s) have no members at the current threshold");
    }

    let provenance = graph.provenance();
    println!("backend       {}", graph.backend());
    println!("documents     {}", provenance.n_documents);
    println!("vocabulary    {}", provenance.n_vocabulary);
    match graph.backend() {
        crate::ontology::Backend::Lsi => println!("concepts      {}", graph.concepts().len()),
        crate::ontology::Backend::Lda => println!("topics        {}", graph.concepts().len()),
    }
    println!("wall time     {:.2}s", elapsed.as_secs_f64());
    println!("model         {}", args.output.display());
    if let Some(turtle) = &args.turtle {
        println!("turtle        {}", turtle.display());
    }
    Ok(EXIT_OK)
}

fn cmd_query(args: QueryArgs) -> Result<i32> {
    let graph = OntologyGraph::load_json(&args.model)?;
    let lexicon = load_lexicon(&args.lexicon)?;
    let stops = load_stopwords(&args.stopwords)?;
    let result = retrieval::detect_topics(&args.query, &graph, &lexicon, &stops)?;

    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&result).expect("query result serializes")
        );
        return Ok(EXIT_OK);
    }

    println!("query: {}", args.query);
    for term in &result.terms {
        match &term.hit {
            None => println!("  {:<16} no match", term.query_term),
            Some(hit) => {
                let how = if hit.mu == 1.0 {
                    "direct".to_owned()
                } else {
                    format!("via {}", hit.term)
                };
                println!("  {:<16} {} (mu = {:.2})", term.query_term, how, hit.mu);
                for concept in &hit.concepts {
                    println!(
                        "    {:<24} weight {:.6}",
                        concept.label, concept.weight
                    );
                }
            }
        }
    }
    println!("score: {:.4}", result.score);
    Ok(EXIT_OK)
}

fn parse_weights(text: &str) -> Option<Weights> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .ok()?;
    if parts.len() != 4 || parts.iter().any(|w| !w.is_finite()) {
        return None;
    }
    Some(Weights {
        cmm: parts[0],
        dem: parts[1],
        ssm: parts[2],
        bem: parts[3],
    })
}

fn cmd_rank(args: RankArgs) -> Result<i32> {
    let weights = match &args.weights {
        None => Weights::default(),
        Some(text) => match parse_weights(text) {
            Some(w) => w,
            None => {
                eprintln!("error: --weights expects four comma-separated numbers (cmm,dem,ssm,bem)");
                return Ok(EXIT_USAGE);
            }
        },
    };

    let rows: Vec<(String, MeasureVector)> = match (&args.measures, args.models.is_empty()) {
        (Some(path), true) => ranking::load_measures_csv(path)?,
        (None, false) => {
            let query = match &args.query {
                Some(q) => q,
                None => {
                    eprintln!("error: ranking model files requires --query");
                    return Ok(EXIT_USAGE);
                }
            };
            let lexicon = load_lexicon(&args.lexicon)?;
            let stops = load_stopwords(&args.stopwords)?;
            let mut rows = Vec::new();
            for path in &args.models {
                let graph = OntologyGraph::load_json(path)?;
                rows.push((
                    path.display().to_string(),
                    measure_against_query(&graph, query, &lexicon, &stops)?,
                ));
            }
            rows
        }
        _ => {
            eprintln!("error: pass either --measures CSV or model files with --query");
            return Ok(EXIT_USAGE);
        }
    };
    if rows.is_empty() {
        eprintln!("error: nothing to rank");
        return Ok(EXIT_RUNTIME);
    }

    let ranked = ranking::rank_ontologies(&rows, &weights, args.normalize)?;
    println!(
        "{:<28} {:>7} {:>7} {:>7} {:>7} {:>8} {:>5}",
        "name", "cmm", "dem", "ssm", "bem", "score", "rank"
    );
    for entry in &ranked {
        println!(
            "{:<28} {:>7.3} {:>7.3} {:>7.3} {:>7.3} {:>8.4} {:>5}",
            entry.name,
            entry.measures.cmm,
            entry.measures.dem,
            entry.measures.ssm,
            entry.measures.bem,
            entry.score,
            entry.rank
        );
    }
    Ok(EXIT_OK)
}

/// Measures one graph against a query: coverage over the retained tokens,
/// and the density/similarity/betweenness measures over the concept nodes
/// owning any matched term.
fn measure_against_query(
    graph: &OntologyGraph,
    query: &str,
    lexicon: &SynonymLexicon,
    stopwords: &StopwordSet,
) -> Result<MeasureVector> {
    let result = retrieval::detect_topics(query, graph, lexicon, stopwords)?;
    let query_terms: Vec<String> = result.terms.iter().map(|t| t.query_term.clone()).collect();
    let matched: Vec<_> = result
        .terms
        .iter()
        .filter_map(|t| t.hit.as_ref())
        .flat_map(|hit| hit.concepts.iter())
        .filter_map(|c| graph.concept_node(c.concept_id))
        .collect();
    Ok(ranking::measure(graph, &query_terms, &matched))
}

fn cmd_export(args: ExportArgs) -> Result<i32> {
    let graph = OntologyGraph::load_json(&args.model)?;
    match args.format {
        ExportFormat::Turtle => graph.export_turtle(&args.output)?,
        ExportFormat::Json => graph.save_json(&args.output)?,
    }
    println!("wrote {}", args.output.display());
    Ok(EXIT_OK)
}
