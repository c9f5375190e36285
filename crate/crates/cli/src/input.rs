use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::Context;
use log::debug;
use netsimile::{load_edge_list, Graph};

/// Problem with the input data rather than the command line.
#[derive(Debug)]
pub struct DataError(pub String);

impl fmt::Display for DataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for DataError {}

/// File stem, used as the graph name.
pub fn graph_name(path: &Path) -> String {
    path.file_stem()
        .unwrap_or(path.as_os_str())
        .to_string_lossy()
        .into_owned()
}

pub fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let g = load_edge_list(&bytes).with_context(|| format!("parsing {}", path.display()))?;
    debug!("{}: {} nodes, {} edges", path.display(), g.node_count(), g.edge_count());
    Ok(g)
}

/// Every `*.edges` file in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> anyhow::Result<Vec<(String, Graph)>> {
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("listing {}", dir.display()))? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "edges") {
            paths.push(path);
        }
    }
    paths.sort();
    if paths.is_empty() {
        return Err(DataError(format!("no .edges files in {}", dir.display())).into());
    }
    paths.iter().map(|p| Ok((graph_name(p), load_graph(p)?))).collect()
}

/// Reads a `graph,label` sidecar into a name → label map.
pub fn load_labels(path: &Path) -> anyhow::Result<HashMap<String, String>> {
    let mut reader = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let headers = reader.headers()?.clone();
    if headers.len() != 2 || &headers[0] != "graph" || &headers[1] != "label" {
        return Err(DataError(format!("{}: expected header graph,label", path.display())).into());
    }
    let mut labels = HashMap::new();
    for record in reader.records() {
        let record = record.with_context(|| format!("parsing {}", path.display()))?;
        if labels.insert(record[0].to_string(), record[1].to_string()).is_some() {
            return Err(DataError(format!("{}: graph {:?} listed twice", path.display(), &record[0])).into());
        }
    }
    Ok(labels)
}
