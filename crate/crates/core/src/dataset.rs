//! Datasets and their on-disk text formats.
//!
//! A dataset directory holds:
//!
//! * `edges.tsv`: one `u<TAB>v` pair per line, 0-based ids, `#` starts a comment
//! * `features.csv`: one comma-separated row of floats per node
//! * `labels.txt`: one integer class id per line, line `i` is node `i`
//! * `test_mask.txt` (optional): one `0`/`1` per line

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

pub const EDGES_FILE: &str = "edges.tsv";
pub const FEATURES_FILE: &str = "features.csv";
pub const LABELS_FILE: &str = "labels.txt";
pub const TEST_MASK_FILE: &str = "test_mask.txt";

/// A labeled node-classification dataset.
#[derive(Debug, Clone)]
pub struct Dataset<T> {
    pub graph: Graph,
    pub labels: Vec<usize>,
    pub features: DenseMatrix<T>,
    /// Fixed evaluation nodes, when the source defines a split.
    pub test_mask: Option<Vec<bool>>,
}

impl<T: Scalar> Dataset<T> {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn class_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m + 1)
    }
}

/// Yields `(line_number, content)` for non-blank lines with `#` comments
/// stripped.
fn content_lines(path: &Path) -> Result<Vec<(usize, String)>> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if !body.is_empty() {
            out.push((i + 1, body.to_string()));
        }
    }
    Ok(out)
}

fn malformed(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Malformed {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

/// Reads an edge list. Tabs are the canonical separator but any whitespace
/// is accepted.
pub fn read_edge_list(path: &Path) -> Result<Vec<(usize, usize)>> {
    content_lines(path)?
        .into_iter()
        .map(|(line, body)| {
            let ids: Vec<&str> = body.split_whitespace().collect();
            if ids.len() != 2 {
                return Err(malformed(path, line, format!("expected 2 node ids, found {}", ids.len())));
            }
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| malformed(path, line, format!("bad node id {s:?}")))
            };
            Ok((parse(ids[0])?, parse(ids[1])?))
        })
        .collect()
}

/// Loads a graph; `n` defaults to one past the largest id in the file.
pub fn load_graph(path: &Path, n: Option<usize>) -> Result<Graph> {
    let edges = read_edge_list(path)?;
    let inferred = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Graph::from_edges(n.unwrap_or(inferred), &edges)
}

pub fn load_features<T: Scalar>(path: &Path) -> Result<DenseMatrix<T>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)?;
    let mut data = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if *cols.get_or_insert(record.len()) != record.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}:{line}: {} feature columns, expected {}",
                path.display(),
                record.len(),
                cols.unwrap()
            )));
        }
        for field in record.iter() {
            let v: f64 = field
                .parse()
                .map_err(|_| malformed(path, line, format!("bad float {field:?}")))?;
            if !v.is_finite() {
                return Err(malformed(path, line, "non-finite feature"));
            }
            data.push(T::of(v));
        }
        rows += 1;
    }
    DenseMatrix::new(rows, cols.unwrap_or(0), data)
}

/// Loads labels and checks that the class ids are exactly `0..C`.
pub fn load_labels(path: &Path) -> Result<Vec<usize>> {
    let labels = content_lines(path)?
        .into_iter()
        .map(|(line, body)| {
            body.parse::<usize>()
                .map_err(|_| malformed(path, line, format!("bad class id {body:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    check_contiguous(&labels)?;
    Ok(labels)
}

pub fn check_contiguous(labels: &[usize]) -> Result<()> {
    let Some(&max) = labels.iter().max() else {
        return Ok(());
    };
    let mut present = vec![false; max + 1];
    for &c in labels {
        present[c] = true;
    }
    match present.iter().position(|&p| !p) {
        Some(missing) => Err(Error::NonContiguousClasses { missing, max }),
        None => Ok(()),
    }
}

pub fn load_mask(path: &Path) -> Result<Vec<bool>> {
    content_lines(path)?
        .into_iter()
        .map(|(line, body)| match body.as_str() {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(malformed(path, line, format!("mask value {other:?} is not 0 or 1"))),
        })
        .collect()
}

/// Loads a dataset from individual files and cross-checks node counts.
pub fn load_dataset_files<T: Scalar>(
    edges: &Path,
    features: &Path,
    labels: &Path,
    test_mask: Option<&Path>,
) -> Result<Dataset<T>> {
    let labels = load_labels(labels)?;
    let n = labels.len();
    let features = load_features::<T>(features)?;
    if features.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} feature rows for {n} labeled nodes",
            features.rows()
        )));
    }
    let graph = load_graph(edges, Some(n))?;
    let test_mask = test_mask.map(load_mask).transpose()?;
    if let Some(m) = &test_mask {
        if m.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "test mask has {} entries for {n} nodes",
                m.len()
            )));
        }
    }
    Ok(Dataset {
        graph,
        labels,
        features,
        test_mask,
    })
}

/// Loads `edges.tsv`, `features.csv`, `labels.txt` and, when present,
/// `test_mask.txt` from `dir`.
pub fn load_graph_dataset<T: Scalar>(dir: &Path) -> Result<Dataset<T>> {
    let mask = dir.join(TEST_MASK_FILE);
    load_dataset_files(
        &dir.join(EDGES_FILE),
        &dir.join(FEATURES_FILE),
        &dir.join(LABELS_FILE),
        mask.exists().then_some(mask.as_path()),
    )
}

/// Writes `ds` in the directory layout read by [`load_graph_dataset`].
pub fn write_dataset<T: Scalar>(dir: &Path, ds: &Dataset<T>) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut w = BufWriter::new(File::create(dir.join(EDGES_FILE))?);
    for (u, v) in ds.graph.edges() {
        writeln!(w, "{u}\t{v}")?;
    }
    w.flush()?;

    let mut w = BufWriter::new(File::create(dir.join(FEATURES_FILE))?);
    for i in 0..ds.features.rows() {
        let row: Vec<String> = ds.features.row(i).iter().map(|v| format!("{}", v.as_f64())).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()?;

    let mut w = BufWriter::new(File::create(dir.join(LABELS_FILE))?);
    for c in &ds.labels {
        writeln!(w, "{c}")?;
    }
    w.flush()?;

    if let Some(mask) = &ds.test_mask {
        let mut w = BufWriter::new(File::create(dir.join(TEST_MASK_FILE))?);
        for &m in mask {
            writeln!(w, "{}", u8::from(m))?;
        }
        w.flush()?;
    }
    Ok(())
}
