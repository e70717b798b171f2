//! Suite files and the on-disk results layout.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::rank::{ttest_rank, RankTable, DEFAULT_SIGNIFICANCE};
use super::{run_trials, MethodSpec, Protocol, TrialResult};
use crate::dataset::{load_dataset_files, load_graph_dataset, Dataset};
use crate::error::{Error, Result};
use crate::sbm::SbmSpec;

pub const RESULTS_DIR: &str = "results";
pub const RANKS_FILE: &str = "ranks.json";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const TIMINGS_FILE: &str = "timings.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetSource {
    Sbm(SbmSpec),
    /// Directory in the layout read by [`load_graph_dataset`].
    Dir(PathBuf),
    Files {
        edges: PathBuf,
        features: PathBuf,
        labels: PathBuf,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        test_mask: Option<PathBuf>,
    },
}

impl DatasetSource {
    pub fn load(&self) -> Result<Dataset<f64>> {
        match self {
            DatasetSource::Sbm(spec) => spec.generate(),
            DatasetSource::Dir(dir) => load_graph_dataset(dir),
            DatasetSource::Files {
                edges,
                features,
                labels,
                test_mask,
            } => load_dataset_files(edges, features, labels, test_mask.as_deref()),
        }
    }

    fn default_name(&self) -> String {
        let stem = |p: &Path| p.file_stem().map(|s| s.to_string_lossy().into_owned());
        match self {
            DatasetSource::Sbm(_) => Some("sbm".into()),
            DatasetSource::Dir(d) => stem(d),
            DatasetSource::Files { labels, .. } => labels.parent().and_then(stem),
        }
        .unwrap_or_else(|| "dataset".into())
    }

    fn resolve(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        match self {
            DatasetSource::Sbm(_) => {}
            DatasetSource::Dir(d) => fix(d),
            DatasetSource::Files {
                edges,
                features,
                labels,
                test_mask,
            } => {
                fix(edges);
                fix(features);
                fix(labels);
                if let Some(m) = test_mask {
                    fix(m);
                }
            }
        }
    }
}

fn default_runs() -> usize {
    10
}

fn default_significance() -> f64 {
    DEFAULT_SIGNIFICANCE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Suite {
    /// Label used in result metadata and the summary header.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dataset: DatasetSource,
    /// Defaults to the full method grid.
    #[serde(default = "MethodSpec::full_grid")]
    pub methods: Vec<MethodSpec>,
    #[serde(default = "default_runs")]
    pub n_runs: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default)]
    pub protocol: Protocol,
    #[serde(default = "default_significance")]
    pub significance: f64,
}

impl Suite {
    /// Reads a suite file; relative dataset paths are taken relative to it.
    pub fn load(path: &Path) -> Result<Self> {
        let mut suite: Suite = serde_json::from_slice(&fs::read(path)?)?;
        if let Some(base) = path.parent() {
            suite.dataset.resolve(base);
        }
        Ok(suite)
    }

    pub fn dataset_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.dataset.default_name())
    }

    /// SHA-256 over everything that determines a method's accuracies.
    pub fn config_hash(&self, method: MethodSpec) -> String {
        #[derive(Serialize)]
        struct Key<'a> {
            dataset: &'a DatasetSource,
            method: MethodSpec,
            n_runs: usize,
            base_seed: u64,
            protocol: &'a Protocol,
        }
        let key = Key {
            dataset: &self.dataset,
            method,
            n_runs: self.n_runs,
            base_seed: self.base_seed,
            protocol: &self.protocol,
        };
        let bytes = serde_json::to_vec(&key).expect("suite key serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

#[derive(Debug, Clone)]
pub struct BenchmarkOutput {
    pub results: Vec<TrialResult>,
    pub ranks: RankTable,
}

#[derive(Serialize)]
struct Timing<'a> {
    method: &'a str,
    seconds: f64,
}

/// Writes to a sibling temporary file and renames it into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut w = BufWriter::new(File::create(&tmp)?);
        w.write_all(bytes)?;
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn pretty<S: Serialize>(v: &S) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(v)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Percent cell in the `rank mean±std` style, e.g. `#1 84.23±0.05`.
pub fn format_cell(rank: usize, mean: f64, std: f64) -> String {
    format!("#{rank} {:.2}±{:.2}", 100.0 * mean, 100.0 * std)
}

fn summary_csv(dataset: &str, ranks: &RankTable) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["method", "rank", "mean", "std", dataset])?;
    for row in &ranks.rows {
        w.write_record([
            row.method.clone(),
            row.rank.to_string(),
            format!("{:.6}", row.mean),
            format!("{:.6}", row.std),
            format_cell(row.rank, row.mean, row.std),
        ])?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

/// Runs every method of `suite` and writes `results/<method>.json`,
/// `ranks.json`, `summary.csv` and `timings.json` under `out_dir`.
///
/// Everything except `timings.json` is a pure function of the suite.
pub fn benchmark(suite: &Suite, out_dir: &Path) -> Result<BenchmarkOutput> {
    if suite.methods.is_empty() {
        return Err(Error::InvalidArgument("suite lists no methods".into()));
    }
    let dataset = suite.dataset.load()?;
    let name = suite.dataset_name();
    let results_dir = out_dir.join(RESULTS_DIR);
    fs::create_dir_all(&results_dir)?;

    let mut results = Vec::with_capacity(suite.methods.len());
    let mut timings = Vec::with_capacity(suite.methods.len());
    for &method in &suite.methods {
        let start = Instant::now();
        let mut r = run_trials(method, &dataset, &suite.protocol, suite.n_runs, suite.base_seed)?;
        let seconds = start.elapsed().as_secs_f64();
        r.metadata.dataset = name.clone();
        r.metadata.config_hash = suite.config_hash(method);
        log::info!("{method}: {:.4} ± {:.4} in {seconds:.1}s", r.mean, r.std);
        write_atomic(&results_dir.join(format!("{}.json", method.file_stem())), &pretty(&r)?)?;
        timings.push((method.to_string(), seconds));
        results.push(r);
    }

    let ranks = ttest_rank(&results, suite.significance)?;
    write_atomic(&out_dir.join(RANKS_FILE), &pretty(&ranks)?)?;
    write_atomic(&out_dir.join(SUMMARY_FILE), &summary_csv(&name, &ranks)?)?;
    let timings: Vec<Timing> = timings
        .iter()
        .map(|(m, s)| Timing { method: m, seconds: *s })
        .collect();
    write_atomic(&out_dir.join(TIMINGS_FILE), &pretty(&timings)?)?;
    Ok(BenchmarkOutput { results, ranks })
}
