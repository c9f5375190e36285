mod input;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use netsimile::apps::{label_graph, node_overlap, timeline_from_signatures};
use netsimile::compare::{
    compare_signatures, hypothesis_compare, signature_entropy, svd_project, upgma, Metric, TestKind,
};
use netsimile::generators::{GenSpec, Model, ModelKind};
use netsimile::spectral::{top_eigenvalues, SpectralVector, DEFAULT_K};
use netsimile::{extract_features, graph_signature, SignatureVector};
use rayon::prelude::*;

use input::{graph_name, load_dir, load_graph, load_labels, DataError};

#[derive(Parser)]
#[command(name = "netsimile", version, about = "Size-independent graph signatures and comparison")]
struct Cli {
    /// Worker thread cap (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Per-node feature matrix as CSV.
    Features { graph: PathBuf },
    /// The 35-value signature vector.
    Signature {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Distance between two graph signatures.
    Compare {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long, default_value = "canberra")]
        metric: Metric,
    },
    /// Distance matrix over every *.edges file in a directory.
    CompareAll {
        dir: PathBuf,
        #[arg(long, default_value = "canberra")]
        metric: Metric,
    },
    /// UPGMA dendrogram as Newick, or flat clusters with --cut.
    Cluster {
        dir: PathBuf,
        #[arg(long)]
        cut: Option<usize>,
        #[arg(long, default_value = "canberra")]
        metric: Metric,
    },
    /// Largest adjacency eigenvalues.
    Eig {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_K)]
        k: usize,
    },
    /// Per-feature two-sample tests between two graphs (JSON).
    Hyptest {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long, default_value = "mw")]
        test: TestKind,
    },
    /// Projection of directory signatures onto leading singular directions.
    Svd {
        dir: PathBuf,
        #[arg(long, default_value_t = 2)]
        components: usize,
    },
    /// Histogram entropy of the signature and spectral vectors.
    Entropy {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_K)]
        k: usize,
    },
    /// Nearest-neighbor label for a test graph (JSON).
    Label {
        /// Directory of *.edges files plus labels.csv with header graph,label.
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        test: PathBuf,
    },
    /// Distance of each snapshot to a reference snapshot.
    Timeline {
        dir: PathBuf,
        #[arg(long = "ref", default_value_t = 0)]
        reference: usize,
    },
    /// Node-label overlap between two graphs.
    Overlap { g1: PathBuf, g2: PathBuf },
    /// Generate a synthetic graph as <model>-<n>-<seed>.edges.
    Gen(GenArgs),
    /// Signature wall time over a range of graph sizes.
    Bench {
        #[arg(long, default_value = "ba")]
        model: ModelKind,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    model: ModelKind,
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    seed: u64,
    /// ER edge count, or BA edges per arriving node.
    #[arg(long)]
    edges: Option<usize>,
    /// WS ring degree (even).
    #[arg(long)]
    ring_degree: Option<usize>,
    /// WS rewiring probability.
    #[arg(long)]
    rewire: Option<f64>,
    /// FF forward burning probability.
    #[arg(long)]
    fwd: Option<f64>,
    /// FF backward burning probability.
    #[arg(long)]
    bwd: Option<f64>,
    /// FF ambassador count.
    #[arg(long)]
    ambassadors: Option<usize>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

impl GenArgs {
    fn spec(&self) -> GenSpec {
        let mut spec = GenSpec::standard(self.model, self.nodes, self.seed);
        spec.model = match spec.model {
            Model::Er { edges } => Model::Er {
                edges: self.edges.unwrap_or(edges),
            },
            Model::Ba { edges_per_step } => Model::Ba {
                edges_per_step: self.edges.unwrap_or(edges_per_step),
            },
            Model::Ws { ring_degree, rewire_p } => Model::Ws {
                ring_degree: self.ring_degree.unwrap_or(ring_degree),
                rewire_p: self.rewire.unwrap_or(rewire_p),
            },
            Model::Ff { fwd_p, bwd_p, ambassadors } => Model::Ff {
                fwd_p: self.fwd.unwrap_or(fwd_p),
                bwd_p: self.bwd.unwrap_or(bwd_p),
                ambassadors: self.ambassadors.unwrap_or(ambassadors),
            },
        };
        spec
    }
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn signatures(dir: &Path) -> anyhow::Result<Vec<SignatureVector>> {
    let graphs = load_dir(dir)?;
    info!("computing {} signatures", graphs.len());
    Ok(graphs
        .par_iter()
        .map(|(name, g)| graph_signature(g, name.as_str()))
        .collect::<netsimile::Result<Vec<_>>>()?)
}

fn run(cli: Cli) -> anyhow::Result<String> {
    let out = match cli.command {
        Command::Features { graph } => {
            let g = load_graph(&graph)?;
            extract_features(&g, graph_name(&graph)).to_csv()
        }
        Command::Signature { graph, format } => {
            let sig = graph_signature(&load_graph(&graph)?, graph_name(&graph))?;
            match format {
                Format::Csv => format!("{}\n{}\n", SignatureVector::csv_header(), sig.csv_row()),
                Format::Json => serde_json::to_string_pretty(&sig)? + "\n",
            }
        }
        Command::Compare { g1, g2, metric } => {
            let a = graph_signature(&load_graph(&g1)?, graph_name(&g1))?;
            let b = graph_signature(&load_graph(&g2)?, graph_name(&g2))?;
            let d = metric.distance(&a.values, &b.values)?;
            csv_table(
                &["graph1", "graph2", "metric", "distance"],
                [vec![a.name, b.name, metric.tag().into(), d.to_string()]],
            )?
        }
        Command::CompareAll { dir, metric } => compare_signatures(&signatures(&dir)?, metric)?.to_csv(),
        Command::Cluster { dir, cut, metric } => {
            let sigs = signatures(&dir)?;
            let tree = upgma(&compare_signatures(&sigs, metric)?)?;
            match cut {
                None => tree.to_newick() + "\n",
                Some(k) => {
                    let labels = tree.cut(k)?;
                    csv_table(
                        &["graph", "cluster"],
                        sigs.iter().zip(labels).map(|(s, c)| vec![s.name.clone(), c.to_string()]),
                    )?
                }
            }
        }
        Command::Eig { graph, k } => {
            let spec = top_eigenvalues(&load_graph(&graph)?, k, graph_name(&graph))?;
            format!("{}\n{}\n", SpectralVector::csv_header(k), spec.csv_row())
        }
        Command::Hyptest { g1, g2, test } => {
            let fa = extract_features(&load_graph(&g1)?, graph_name(&g1));
            let fb = extract_features(&load_graph(&g2)?, graph_name(&g2));
            serde_json::to_string_pretty(&hypothesis_compare(&fa, &fb, test)?)? + "\n"
        }
        Command::Svd { dir, components } => svd_project(&signatures(&dir)?, components)?.to_csv(),
        Command::Entropy { graph, k } => {
            let g = load_graph(&graph)?;
            let name = graph_name(&graph);
            let sig = graph_signature(&g, name.as_str())?;
            let spec = top_eigenvalues(&g, k, name.as_str())?;
            csv_table(
                &["graph", "netsimile_entropy", "eig_entropy"],
                [vec![
                    name,
                    signature_entropy(&sig.values).to_string(),
                    signature_entropy(&spec.values).to_string(),
                ]],
            )?
        }
        Command::Label { train, test } => {
            let labels = load_labels(&train.join("labels.csv"))?;
            let mut corpus = Vec::new();
            for sig in signatures(&train)? {
                match labels.get(&sig.name) {
                    Some(l) => corpus.push((sig, l.clone())),
                    None => bail!(DataError(format!("no label for training graph {:?}", sig.name))),
                }
            }
            let query = graph_signature(&load_graph(&test)?, graph_name(&test))?;
            serde_json::to_string_pretty(&label_graph(&query, &corpus)?)? + "\n"
        }
        Command::Timeline { dir, reference } => timeline_from_signatures(&signatures(&dir)?, reference)?.to_csv(),
        Command::Overlap { g1, g2 } => {
            let o = node_overlap(&load_graph(&g1)?, &load_graph(&g2)?)?;
            csv_table(
                &["graph1", "graph2", "overlap"],
                [vec![graph_name(&g1), graph_name(&g2), o.to_string()]],
            )?
        }
        Command::Gen(args) => {
            let spec = args.spec();
            let g = spec.generate()?;
            fs::create_dir_all(&args.out_dir)
                .with_context(|| format!("creating {}", args.out_dir.display()))?;
            let path = args.out_dir.join(spec.file_name());
            fs::write(&path, g.to_canonical_edge_list()).with_context(|| format!("writing {}", path.display()))?;
            info!("{} nodes, {} edges", g.node_count(), g.edge_count());
            format!("{}\n", path.display())
        }
        Command::Bench { model, sizes, seed } => {
            let mut rows = Vec::new();
            for n in sizes {
                let g = GenSpec::standard(model, n, seed).generate()?;
                let start = Instant::now();
                graph_signature(&g, "bench")?;
                let secs = start.elapsed().as_secs_f64();
                info!("n={n} m={} {secs:.3}s", g.edge_count());
                rows.push(vec![n.to_string(), g.edge_count().to_string(), secs.to_string()]);
            }
            csv_table(&["n", "m", "seconds"], rows)?
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }

    let target = cli.out.clone();
    let result = run(cli).and_then(|text| match &target {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
