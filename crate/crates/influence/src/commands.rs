//! The `compute`, `compare`, `subsample` and `table4` commands.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use apriori_influence_core::games::game_from_sample;
use apriori_influence_core::indices::{banzhaf, banzhaf_owen, banzhaf_owen_mc};
use apriori_influence_core::influence::{self, normalize, pearson, rank, InfluenceReport, Measure};
use apriori_influence_core::partition::hierarchical_partition;
use apriori_influence_core::{example, Dataset, DependencyModel, Error as CoreError, Game, Linkage, Partition};
use rayon::prelude::*;

use crate::csvio::{load_dataset, save_dataset, Schema};
use crate::error::{CliError, Result};
use crate::formats::{parse_dependency, parse_game, parse_partition, partition_to_text, read_text};
use crate::report::{parse_report, render_index, render_influence, Format};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionSource {
    Singletons,
    Json(PathBuf),
    Cluster { k: usize, linkage: Linkage },
}

impl FromStr for PartitionSource {
    type Err = CliError;

    /// `singletons`, `cluster:k=K[,linkage=complete|average|single]`, or a
    /// path to a partition JSON file.
    fn from_str(s: &str) -> Result<Self> {
        if s == "singletons" {
            return Ok(PartitionSource::Singletons);
        }
        let Some(spec) = s.strip_prefix("cluster:") else {
            return Ok(PartitionSource::Json(PathBuf::from(s)));
        };
        let mut k = None;
        let mut linkage = Linkage::Complete;
        for part in spec.split(',').filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                Some(("k", v)) => {
                    k = Some(
                        v.parse()
                            .map_err(|_| CliError::Config(format!("bad cluster count `{v}`")))?,
                    )
                }
                Some(("linkage", "complete")) => linkage = Linkage::Complete,
                Some(("linkage", "average")) => linkage = Linkage::Average,
                Some(("linkage", "single")) => linkage = Linkage::Single,
                _ => return Err(CliError::Config(format!("bad cluster option `{part}`"))),
            }
        }
        let k = k.ok_or_else(|| CliError::Config("cluster partition needs k=K".into()))?;
        Ok(PartitionSource::Cluster { k, linkage })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MeasureKind {
    Chi,
    Psi,
    WeightedPsi,
    Banzhaf,
    BanzhafOwen,
    BanzhafOwenMc,
}

impl MeasureKind {
    fn is_index(self) -> bool {
        matches!(
            self,
            MeasureKind::Banzhaf | MeasureKind::BanzhafOwen | MeasureKind::BanzhafOwenMc
        )
    }

    fn name(self) -> &'static str {
        match self {
            MeasureKind::Chi => "chi",
            MeasureKind::Psi => "psi",
            MeasureKind::WeightedPsi => "weighted-psi",
            MeasureKind::Banzhaf => "banzhaf",
            MeasureKind::BanzhafOwen => "banzhaf-owen",
            MeasureKind::BanzhafOwenMc => "banzhaf-owen-mc",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub data: Option<PathBuf>,
    pub schema: Schema,
    pub game: Option<PathBuf>,
    pub partition: PartitionSource,
    pub dependency: Option<PathBuf>,
    pub measure: MeasureKind,
    pub normalize: bool,
    pub mc_samples: u64,
    pub mc_seed: u64,
    /// `(per_class, seed)` of a balanced subsample taken before computing.
    pub subsample: Option<(u64, u64)>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(measure: MeasureKind) -> Self {
        RunConfig {
            data: None,
            schema: Schema::default(),
            game: None,
            partition: PartitionSource::Singletons,
            dependency: None,
            measure,
            normalize: false,
            mc_samples: 100_000,
            mc_seed: 0,
            subsample: None,
            threads: None,
            out: None,
            format: Format::Tsv,
        }
    }

    fn validate(&self) -> Result<()> {
        let m = self.measure;
        match (&self.data, &self.game) {
            (Some(_), Some(_)) => return Err(CliError::Config("give either --data or --game, not both".into())),
            (None, None) => return Err(CliError::Config("--data is required".into())),
            (None, Some(_)) if !m.is_index() => return Err(CliError::Config(format!("{} needs --data", m.name()))),
            _ => {}
        }
        if m.is_index() && self.normalize {
            return Err(CliError::Config(
                "--normalize applies to chi and psi measures only".into(),
            ));
        }
        if self.game.is_some() && matches!(self.partition, PartitionSource::Cluster { .. }) {
            return Err(CliError::Config("a cluster partition needs --data".into()));
        }
        if matches!(m, MeasureKind::Chi | MeasureKind::Banzhaf) && self.partition != PartitionSource::Singletons {
            return Err(CliError::Config(format!("{} takes no partition", m.name())));
        }
        if m == MeasureKind::BanzhafOwenMc && self.mc_samples == 0 {
            return Err(CliError::Config("--samples must be at least 1".into()));
        }
        Ok(())
    }
}

/// Output of a command: the report text and a one-line summary.
#[derive(Debug, Clone)]
pub struct Outcome {
    /// The report, also written to the output file when there is one.
    pub text: String,
    /// Whether `text` still has to go to stdout.
    pub to_stdout: bool,
    pub summary: String,
}

fn resolve_partition(src: &PartitionSource, d: Option<&Dataset>, k: usize) -> Result<Partition> {
    Ok(match src {
        PartitionSource::Singletons => Partition::singletons(k),
        PartitionSource::Cluster { k: c, linkage } => {
            hierarchical_partition(d.expect("validated: cluster needs data"), *c, *linkage)?
        }
        PartitionSource::Json(path) => {
            let text = read_text(path)?;
            match d {
                Some(d) => parse_partition(&text, d.space())?,
                None => parse_partition(&text, &apriori_influence_core::FeatureSpace::binary(k))?,
            }
        }
    })
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Pair counts for every feature, computed in parallel. Each feature's count
/// is an exact integer, so the result does not depend on the thread count.
fn raw_counts(d: &Dataset, p: &Partition, dep: &DependencyModel, measure: Measure) -> Result<Vec<u64>> {
    (0..d.k())
        .into_par_iter()
        .map(|l| match measure {
            Measure::Chi => influence::chi_feature(d, l),
            Measure::Psi => influence::psi_feature(d, p, dep, l, false),
            Measure::WeightedPsi => influence::psi_feature(d, p, dep, l, true),
        })
        .collect::<std::result::Result<Vec<u64>, CoreError>>()
        .map_err(CliError::from)
}

/// Runs one measure and writes its report.
pub fn compute(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let start = Instant::now();

    let mut dictionary = None;
    let mut dataset = match &cfg.data {
        Some(path) => {
            let loaded = load_dataset(path, &cfg.schema)?;
            dictionary = Some(loaded.dictionary);
            Some(loaded.dataset)
        }
        None => None,
    };
    if let (Some(d), Some((per_class, seed))) = (&dataset, cfg.subsample) {
        dataset = Some(d.balanced_subsample(per_class, seed)?);
    }
    let game = match &cfg.game {
        Some(path) => Some(parse_game(&read_text(path)?)?),
        None => None,
    };
    let k = dataset
        .as_ref()
        .map_or_else(|| game.as_ref().map_or(0, Game::k), Dataset::k);
    let names: Vec<String> = match &dataset {
        Some(d) => d.space().names().to_vec(),
        None => (0..k).map(|l| format!("player_{l}")).collect(),
    };
    let p = resolve_partition(&cfg.partition, dataset.as_ref(), k)?;
    let dep = match &cfg.dependency {
        Some(path) => {
            let space = match &dataset {
                Some(d) => d.space().clone(),
                None => apriori_influence_core::FeatureSpace::binary(k),
            };
            parse_dependency(&read_text(path)?, &space, &p)?
        }
        None => DependencyModel::all_positive(k),
    };

    let text = if cfg.measure.is_index() {
        if !dep.is_all_positive() {
            return Err(CliError::Config("power indices take no dependency model".into()));
        }
        let game = match (game, &dataset) {
            (Some(g), _) => g,
            (None, Some(d)) => game_from_sample(d)?,
            (None, None) => unreachable!("validated"),
        };
        let v = with_threads(cfg.threads, || match cfg.measure {
            MeasureKind::Banzhaf => banzhaf(&game),
            MeasureKind::BanzhafOwen => banzhaf_owen(&game, &p),
            _ => banzhaf_owen_mc(&game, &p, cfg.mc_samples, cfg.mc_seed),
        })??;
        render_index(&v, &p, &names, cfg.format)?
    } else {
        let d = dataset.as_ref().expect("validated");
        let measure = match cfg.measure {
            MeasureKind::Chi => Measure::Chi,
            MeasureKind::Psi => Measure::Psi,
            _ => Measure::WeightedPsi,
        };
        let raw = with_threads(cfg.threads, || raw_counts(d, &p, &dep, measure))??;
        let mut report = InfluenceReport::from_raw(measure, raw, p.clone(), dep.anchored(&p));
        if cfg.normalize {
            report = normalize(&report, d.space(), &p, &dep)?;
        }
        render_influence(&report, &names, cfg.format)?
    };

    if let Some(out) = &cfg.out {
        std::fs::write(out, &text).map_err(|e| CliError::io(out, e))?;
        if let Some(dict) = dictionary {
            dict.write_beside(out)?;
        }
    }
    let n = dataset.as_ref().map_or(1usize << k.min(63), Dataset::n);
    let summary = format!(
        "measure={} k={} n={} m={} partition={} time={:.3}ms",
        cfg.measure.name(),
        k,
        n,
        p.m(),
        partition_to_text(&p),
        start.elapsed().as_secs_f64() * 1e3
    );
    Ok(Outcome {
        text,
        to_stdout: cfg.out.is_none(),
        summary,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    /// `None` when either value vector is constant.
    pub pearson: Option<f64>,
    pub top_k: usize,
    pub top_overlap: usize,
}

impl Comparison {
    pub fn render(&self) -> String {
        let r = self.pearson.map_or("-".to_string(), |r| r.to_string());
        format!(
            "pearson\t{r}\ntop{}_overlap\t{}/{}\n",
            self.top_k, self.top_overlap, self.top_k
        )
    }
}

/// Pearson correlation of two reports' value vectors and the overlap of
/// their top-k features.
pub fn compare_reports(a: &str, b: &str, top_k: usize) -> Result<Comparison> {
    let a = parse_report(a)?;
    let b = parse_report(b)?;
    let mut fa = a.features.clone();
    let mut fb = b.features.clone();
    fa.sort_unstable();
    fb.sort_unstable();
    if fa != fb || fa.windows(2).any(|w| w[0] == w[1]) {
        return Err(CliError::FeatureSetMismatch);
    }
    // align b to a's feature order
    let b_values: Vec<f64> = a
        .features
        .iter()
        .map(|f| b.values[b.features.iter().position(|g| g == f).expect("same set")])
        .collect();
    let pearson = match pearson(&a.values, &b_values) {
        Ok(r) => Some(r),
        Err(CoreError::ConstantVector) => None,
        Err(e) => return Err(e.into()),
    };
    let top_k = top_k.min(a.values.len());
    let top_a: Vec<usize> = rank(&a.values, Some(top_k)).into_iter().map(|(i, _)| i).collect();
    let top_b: Vec<usize> = rank(&b_values, Some(top_k)).into_iter().map(|(i, _)| i).collect();
    let top_overlap = top_a.iter().filter(|i| top_b.contains(i)).count();
    Ok(Comparison {
        pearson,
        top_k,
        top_overlap,
    })
}

pub fn compare(a: &Path, b: &Path, top_k: usize) -> Result<Outcome> {
    let c = compare_reports(&read_text(a)?, &read_text(b)?, top_k)?;
    Ok(Outcome {
        text: c.render(),
        to_stdout: true,
        summary: format!("compared {} and {}", a.display(), b.display()),
    })
}

pub fn subsample(data: &Path, schema: &Schema, per_class: u64, seed: u64, out: &Path) -> Result<Outcome> {
    let loaded = load_dataset(data, schema)?;
    let s = loaded.dataset.balanced_subsample(per_class, seed)?;
    save_dataset(&s, out)?;
    loaded.dictionary.write_beside(out)?;
    Ok(Outcome {
        text: String::new(),
        to_stdout: false,
        summary: format!(
            "subsample: {} of {} observations, {} distinct profiles",
            s.total_mass(),
            loaded.dataset.total_mass(),
            s.n()
        ),
    })
}

pub const TABLE4_TOLERANCE: f64 = 1e-9;

fn tuple(v: &[f64]) -> String {
    format!(
        "({})",
        v.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(", ")
    )
}

/// Recomputes the fifteen-partition example table both as Banzhaf-Owen
/// values and as normalized Ψ. Returns the printed table and the number of
/// scenarios where either disagrees with the expected row.
pub fn table4() -> Result<(String, usize)> {
    let game = example::game();
    let d = example::dataset();
    let dep = DependencyModel::all_positive(4);
    let mut out = String::from("scenario\tpartition\tbanzhaf_owen\tnormalized_psi\texpected\tstatus\n");
    let mut mismatches = 0;
    for s in &example::TABLE {
        let p = s.partition();
        let bo = banzhaf_owen(&game, &p)?.values;
        let psi = normalize(&influence::psi(&d, &p, &dep)?, d.space(), &p, &dep)?
            .normalized
            .expect("normalized");
        let ok = (0..4).all(|l| {
            (bo[l] - s.expected[l]).abs() <= TABLE4_TOLERANCE && (psi[l] - s.expected[l]).abs() <= TABLE4_TOLERANCE
        });
        if !ok {
            mismatches += 1;
        }
        out += &format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            s.number,
            partition_to_text(&p),
            tuple(&bo),
            tuple(&psi),
            tuple(&s.expected),
            if ok { "ok" } else { "MISMATCH" }
        );
    }
    Ok((out, mismatches))
}
