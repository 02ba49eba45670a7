use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use limpack::families;
use limpack::graph::Graph;
use limpack::harness::{
    emit_edge_list, graph6_string, parse_edge_list, parse_graph6, verify, Check, CorpusSpec,
    Filters, Source, VerifyOptions,
};
use limpack::partition::chi_times_k;
use limpack::products;
use limpack::solvers::{max_limited_packing, min_dominating};

#[derive(Parser)]
#[command(
    name = "limpack",
    version,
    about = "Exact limited packing invariants and bound verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InvariantArg {
    /// L_k, or L_{k,t} with --total
    Packing,
    /// γ, or γ_t with --total
    Domination,
    /// χ_×k
    Partition,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Cartesian,
    Direct,
    Rooted,
    Corona,
}

#[derive(clap::Args)]
struct GraphInput {
    /// Graph file, or `-` for standard input.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "graph6")]
    format: Format,
    /// Refuse graphs with more vertices than this.
    #[arg(long)]
    cap_nodes: Option<usize>,
}

#[derive(clap::Args)]
struct Output {
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one invariant of one graph.
    Compute {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_enum, default_value = "packing")]
        invariant: InvariantArg,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        total: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Run every single-graph checker on one graph.
    Bounds {
        #[command(flatten)]
        graph: GraphInput,
        /// Comma-separated k values.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        k: Vec<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Build a named graph family member.
    Construct {
        /// path, cycle, star, complete, complete-bipartite, empty, double-star,
        /// fig1, diameter2-gadget, realization-tree, sharpness-factor, corona-chi
        family: String,
        params: Vec<usize>,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Build a product of two graphs.
    Product {
        #[arg(value_enum)]
        kind: KindArg,
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        root: Option<usize>,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
        #[arg(long)]
        cap_nodes: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Run checkers over a corpus and write JSON lines.
    Verify {
        /// exhaustive:N, trees:N, random:N,P,COUNT, graph6:PATH or standard
        #[arg(long)]
        corpus: String,
        /// Comma-separated check names, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        checks: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        k: Vec<usize>,
        /// Seed of a random corpus.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "LIMPACK_JOBS", default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        trees_only: bool,
        #[arg(long)]
        min_degree: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::Graph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| anyhow!("no graph6 line in input"))?;
            Ok(parse_graph6(line.trim().as_bytes())?)
        }
        Format::Edgelist => Ok(parse_edge_list(text)?),
    }
}

fn load(path: &Path, format: Format, cap: Option<usize>) -> Result<Graph> {
    let g = parse_graph(&read_input(path)?, format)?;
    if let Some(cap) = cap {
        if g.order() > cap {
            bail!("graph has {} vertices, above --cap-nodes {cap}", g.order());
        }
    }
    Ok(g)
}

fn writer(output: &Output) -> Result<Box<dyn Write>> {
    Ok(match &output.out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn emit(g: &Graph, format: Format, output: &Output) -> Result<()> {
    let text = match format {
        Format::Graph6 => graph6_string(g)? + "\n",
        Format::Edgelist => emit_edge_list(g),
    };
    let mut w = writer(output)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn param(params: &[usize], i: usize, family: &str) -> Result<usize> {
    params
        .get(i)
        .copied()
        .ok_or_else(|| anyhow!("{family} needs {} parameter(s)", i + 1))
}

fn construct(family: &str, p: &[usize]) -> Result<Graph> {
    let g = match family {
        "path" => families::path(param(p, 0, family)?)?,
        "cycle" => families::cycle(param(p, 0, family)?)?,
        "star" => families::star(param(p, 0, family)?)?,
        "complete" => families::complete(param(p, 0, family)?)?,
        "complete-bipartite" => {
            families::complete_bipartite(param(p, 0, family)?, param(p, 1, family)?)?
        }
        "empty" => families::empty(param(p, 0, family)?),
        "double-star" => families::double_star(param(p, 0, family)?, param(p, 1, family)?)?,
        "fig1" => families::fig1_graph(),
        "diameter2-gadget" => families::diameter2_gadget(param(p, 0, family)?)?,
        "realization-tree" => {
            families::realization_tree(param(p, 0, family)?, param(p, 1, family)?)?
        }
        "sharpness-factor" => {
            families::cartesian_sharpness_factor(&families::complete(param(p, 0, family)?)?)?
        }
        "corona-chi" => {
            let (g, h) = families::corona_chi_family(param(p, 0, family)?, param(p, 1, family)?)?;
            products::corona(&g, &h)?.graph
        }
        other => bail!("unknown family `{other}`"),
    };
    Ok(g)
}

fn corpus_spec(corpus: &str, seed: u64, filters: Filters) -> Result<CorpusSpec> {
    let (name, args) = corpus.split_once(':').unwrap_or((corpus, ""));
    let nums = |count: usize| -> Result<Vec<&str>> {
        let parts: Vec<&str> = args.split(',').collect();
        if parts.len() != count || parts.iter().any(|s| s.is_empty()) {
            bail!("corpus `{name}` takes {count} argument(s)");
        }
        Ok(parts)
    };
    let source = match name {
        "exhaustive" => Source::ExhaustiveLabeled(nums(1)?[0].parse()?),
        "trees" => Source::AllTrees(nums(1)?[0].parse()?),
        "random" => {
            let a = nums(3)?;
            Source::Random {
                n: a[0].parse()?,
                edge_probability: a[1].parse()?,
                count: a[2].parse()?,
                seed,
            }
        }
        "graph6" if !args.is_empty() => Source::Graph6File(PathBuf::from(args)),
        "standard" => Source::StandardFactors,
        _ => bail!("unknown corpus `{corpus}`"),
    };
    Ok(CorpusSpec::new(source).with_filters(filters))
}

fn parse_checks(names: &[String]) -> Result<Vec<Check>> {
    if names.iter().any(|n| n == "all") {
        return Ok(Check::all());
    }
    names
        .iter()
        .map(|n| n.parse::<Check>().map_err(|e| anyhow!(e)))
        .collect()
}

/// Runs the command; `Ok(true)` means a solid-set violation was found.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Compute {
            graph,
            invariant,
            k,
            total,
            output,
        } => {
            let g = load(&graph.input, graph.format, graph.cap_nodes)?;
            let value = match invariant {
                InvariantArg::Packing => {
                    let r = max_limited_packing(&g, k, total)?;
                    json!({ "invariant": "packing", "k": k, "total": total, "value": r.value,
                            "witness": r.witness, "nodes_explored": r.nodes_explored, "method": r.method })
                }
                InvariantArg::Domination => {
                    let r = min_dominating(&g, total)?;
                    json!({ "invariant": "domination", "total": total, "value": r.value,
                            "witness": r.witness, "nodes_explored": r.nodes_explored, "method": r.method })
                }
                InvariantArg::Partition => {
                    let r = chi_times_k(&g, k)?;
                    json!({ "invariant": "partition", "k": k, "value": r.value,
                            "witness": r.witness, "nodes_explored": r.nodes_explored, "method": r.method })
                }
            };
            let mut w = writer(&output)?;
            writeln!(w, "{value}")?;
            w.flush()?;
            Ok(false)
        }
        Command::Bounds { graph, k, output } => {
            let g = load(&graph.input, graph.format, graph.cap_nodes)?;
            let spec = CorpusSpec::new(Source::Graphs(vec![g]));
            let opts = VerifyOptions::new(Check::SINGLE.to_vec(), k);
            let mut w = writer(&output)?;
            let summary = verify(&spec, &opts, &mut w)?;
            Ok(summary.solid_violations > 0)
        }
        Command::Construct {
            family,
            params,
            format,
            output,
        } => {
            emit(&construct(&family, &params)?, format, &output)?;
            Ok(false)
        }
        Command::Product {
            kind,
            first,
            second,
            root,
            format,
            cap_nodes,
            output,
        } => {
            let g = load(&first, format, None)?;
            let h = load(&second, format, None)?;
            let p = match kind {
                KindArg::Cartesian => products::cartesian(&g, &h)?,
                KindArg::Direct => products::direct(&g, &h)?,
                KindArg::Rooted => products::rooted(
                    &g,
                    &h,
                    root.ok_or_else(|| anyhow!("rooted product needs --root"))?,
                )?,
                KindArg::Corona => products::corona(&g, &h)?,
            };
            if let Some(cap) = cap_nodes {
                if p.graph.order() > cap {
                    bail!(
                        "product has {} vertices, above --cap-nodes {cap}",
                        p.graph.order()
                    );
                }
            }
            emit(&p.graph, format, &output)?;
            Ok(false)
        }
        Command::Verify {
            corpus,
            checks,
            k,
            seed,
            jobs,
            connected,
            trees_only,
            min_degree,
            output,
        } => {
            let filters = Filters {
                connected_only: connected,
                tree_only: trees_only,
                min_degree,
            };
            let spec = corpus_spec(&corpus, seed, filters)?;
            let mut opts = VerifyOptions::new(parse_checks(&checks)?, k).jobs(jobs);
            opts.seed = Some(seed);
            let mut w = writer(&output)?;
            let summary = verify(&spec, &opts, &mut w)?;
            Ok(summary.solid_violations > 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
