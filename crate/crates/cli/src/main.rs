use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use graphsel::active_learning::{al_loop, AlConfig, Oracle};
use graphsel::bench::{benchmark, Suite};
use graphsel::dataset::{load_dataset_files, load_graph, write_dataset};
use graphsel::gcn::{read_model, write_model};
use graphsel::operators::normalized_adjacency;
use graphsel::sbm::SbmSpec;
use graphsel::selection::{random_select, select_all_at_once, smart_select, DEFAULT_PER_ROUND};
use graphsel::{CentralityParams, GcnModel, Hyper, Measure, SelectionPlan};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "graphsel", version, about = "Centrality-based training-node selection for graph convolutional networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Smart,
    All,
    Random,
}

#[derive(clap::Args)]
struct GraphArgs {
    /// Edge list, one `u v` pair per line.
    #[arg(long)]
    graph: PathBuf,
    /// Node count; defaults to one past the largest id in the edge list.
    #[arg(long)]
    nodes: Option<usize>,
}

#[derive(clap::Args)]
struct DataArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Feature matrix, one CSV row per node.
    #[arg(long)]
    features: PathBuf,
    /// One integer label per line.
    #[arg(long)]
    labels: PathBuf,
    /// One 0/1 flag per line marking held-out test nodes.
    #[arg(long)]
    test_mask: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Score every node with a centrality measure.
    Centrality {
        #[arg(long)]
        measure: Measure,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 0.15)]
        alpha: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
        /// Only print the K best nodes.
        #[arg(long)]
        top: Option<usize>,
    },
    /// Choose a labeled training set.
    Select {
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        /// Required for `smart` and `all`.
        #[arg(long)]
        measure: Option<Measure>,
        #[arg(long, default_value_t = 140)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_PER_ROUND)]
        per_round: usize,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.15)]
        alpha: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train a GCN on the nodes of a selection plan.
    Train {
        #[command(flatten)]
        data: DataArgs,
        /// Selection plan JSON whose `selected` nodes are the training set.
        #[arg(long)]
        train_mask: PathBuf,
        /// Hyperparameter JSON; missing fields take their defaults.
        #[arg(long)]
        hyper: Option<PathBuf>,
        #[arg(long, default_value = "model.bin")]
        out_model: PathBuf,
        /// Training report path; stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Predict classes with a saved model.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run centrality-driven active learning.
    AlRun {
        #[arg(long)]
        measure: Measure,
        #[command(flatten)]
        data: DataArgs,
        /// Loop configuration JSON; missing fields take their defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out_plan: Option<PathBuf>,
        #[arg(long)]
        out_trace: Option<PathBuf>,
    },
    /// Run a benchmark suite and write results, ranks and a summary table.
    Benchmark {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a stochastic-block-model dataset directory.
    GenerateSbm {
        /// Block sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<usize>,
        #[arg(long)]
        p_in: f64,
        #[arg(long)]
        p_out: f64,
        #[arg(long, default_value_t = 16)]
        feature_dim: usize,
        #[arg(long, default_value_t = 1.0)]
        signal: f64,
        #[arg(long, default_value_t = 1.0)]
        noise_std: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    serde_json::from_reader(BufReader::new(file)).with_context(|| format!("parsing {}", path.display()))
}

/// Pretty JSON to `path`, or stdout.
fn emit<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let mut out: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    };
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn load_data(d: &DataArgs) -> Result<graphsel::Dataset64> {
    Ok(load_dataset_files::<f64>(&d.graph, &d.features, &d.labels, d.test_mask.as_deref())?)
}

#[derive(Serialize)]
struct NodeScore {
    node: usize,
    score: f64,
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Centrality {
            measure,
            graph,
            alpha,
            tol,
            max_iter,
            top,
        } => {
            let g = load_graph(&graph.graph, graph.nodes)?;
            let params = CentralityParams { alpha, tol, max_iter };
            let scores = measure.compute::<f64>(&g, &params)?;
            let k = top.unwrap_or(scores.len()).min(scores.len());
            let rows: Vec<NodeScore> = scores
                .top_k(k)
                .into_iter()
                .map(|node| NodeScore {
                    node,
                    score: scores.scores[node],
                })
                .collect();
            emit(&rows, None)
        }
        Command::Select {
            strategy,
            measure,
            budget,
            per_round,
            graph,
            seed,
            alpha,
            out,
        } => {
            let g = load_graph(&graph.graph, graph.nodes)?;
            let params = CentralityParams {
                alpha,
                ..CentralityParams::default()
            };
            let need_measure = || measure.context("--measure is required for this strategy");
            let plan: SelectionPlan = match strategy {
                StrategyArg::Smart => smart_select::<f64>(&g, need_measure()?, budget, per_round, &params)?,
                StrategyArg::All => select_all_at_once(&need_measure()?.compute::<f64>(&g, &params)?, budget)?,
                StrategyArg::Random => random_select(g.node_count(), budget, seed)?,
            };
            emit(&plan, out.as_deref())
        }
        Command::Train {
            data,
            train_mask,
            hyper,
            out_model,
            report,
        } => {
            let ds = load_data(&data)?;
            let plan: SelectionPlan = read_json(&train_mask)?;
            plan.validate(ds.node_count())?;
            let hyper: Hyper = match hyper {
                Some(p) => read_json(&p)?,
                None => Hyper::default(),
            };
            let a_hat = normalized_adjacency::<f64>(&ds.graph);
            let model = GcnModel::init(ds.features.cols(), ds.class_count(), hyper)?;
            let (model, mut rep) = model.train(&a_hat, &ds.features, &ds.labels, &plan.selected)?;
            if let Some(mask) = &ds.test_mask {
                rep.test_accuracy = Some(graphsel::bench::evaluate(
                    &model,
                    &a_hat,
                    &ds.features,
                    &ds.labels,
                    mask,
                    &plan.selected,
                )?);
            }
            write_model(
                BufWriter::new(File::create(&out_model).with_context(|| format!("creating {}", out_model.display()))?),
                &model,
            )?;
            emit(&rep, report.as_deref())
        }
        Command::Predict { model, data, out } => {
            let ds = load_data(&data)?;
            let model: GcnModel<f64> = read_model(BufReader::new(File::open(&model)?))?;
            let pred = model.predict(&normalized_adjacency(&ds.graph), &ds.features)?;
            emit(&pred, out.as_deref())
        }
        Command::AlRun {
            measure,
            data,
            config,
            out_plan,
            out_trace,
        } => {
            let ds = load_data(&data)?;
            let mut cfg: AlConfig = match config {
                Some(p) => read_json(&p)?,
                None => AlConfig::default(),
            };
            cfg.measure = measure;
            let mut oracle = Oracle::new(&ds.labels);
            let outcome = al_loop(&ds.graph, &ds.features, &mut oracle, &cfg, ds.test_mask.as_deref())?;
            if out_plan.is_none() && out_trace.is_none() {
                #[derive(Serialize)]
                struct Both<'a> {
                    plan: &'a SelectionPlan,
                    trace: &'a [graphsel::active_learning::AlIteration],
                }
                return emit(
                    &Both {
                        plan: &outcome.plan,
                        trace: &outcome.trace,
                    },
                    None,
                );
            }
            if let Some(p) = out_plan {
                emit(&outcome.plan, Some(&p))?;
            }
            if let Some(p) = out_trace {
                emit(&outcome.trace, Some(&p))?;
            }
            Ok(())
        }
        Command::Benchmark { suite, out } => {
            let suite = Suite::load(&suite).with_context(|| format!("loading suite {}", suite.display()))?;
            let result = benchmark(&suite, &out)?;
            for row in &result.ranks.rows {
                println!(
                    "#{:<3} {:<20} {:6.2} ± {:.2}",
                    row.rank,
                    row.method,
                    100.0 * row.mean,
                    100.0 * row.std
                );
            }
            Ok(())
        }
        Command::GenerateSbm {
            blocks,
            p_in,
            p_out,
            feature_dim,
            signal,
            noise_std,
            seed,
            out,
        } => {
            if blocks.is_empty() {
                bail!("--blocks needs at least one size");
            }
            let spec = SbmSpec {
                signal,
                noise_std,
                ..SbmSpec::new(blocks, p_in, p_out, feature_dim, seed)
            };
            let ds = spec.generate::<f64>()?;
            fs::create_dir_all(&out)?;
            write_dataset(&out, &ds)?;
            Ok(())
        }
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
