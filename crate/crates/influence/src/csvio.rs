//! CSV ingestion of profiles and predictions, and the canonical dump.
//!
//! Cells are either non-negative integer state codes or arbitrary labels.
//! A column with any non-integer cell is categorical: its distinct labels are
//! sorted and coded `0, 1, …` in that order, and the mapping is kept in a
//! [`Dictionary`] so it can be written next to the outputs.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use apriori_influence_core::{Dataset, FeatureSpace};

use crate::error::{CliError, Result};

/// Which columns play which role.
#[derive(Debug, Clone, Default)]
pub struct Schema {
    /// Feature columns in order; `None` means every column that has no other
    /// role.
    pub features: Option<Vec<String>>,
    /// Column holding the predicted response. Ignored when `predictions` is
    /// set. `None` picks `y_pred`, falling back to `y`.
    pub response: Option<String>,
    /// Single-column CSV with one prediction per data row.
    pub predictions: Option<PathBuf>,
    /// Column of positive observation counts. `None` uses a column named
    /// `freq` when there is one.
    pub freq: Option<String>,
    /// Alphabet sizes overriding the inferred `max code + 1`.
    pub state_counts: Option<Vec<u32>>,
}

/// Labels of the categorical columns, indexed by code.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Dictionary(pub BTreeMap<String, Vec<String>>);

impl Dictionary {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Writes the dictionary as JSON to `<output>.dictionary.json` unless it
    /// is empty.
    pub fn write_beside(&self, output: &Path) -> Result<()> {
        if self.is_empty() {
            return Ok(());
        }
        let mut name = output.as_os_str().to_owned();
        name.push(".dictionary.json");
        let path = PathBuf::from(name);
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(&path, text + "\n").map_err(|e| CliError::io(&path, e))
    }
}

#[derive(Debug, Clone)]
pub struct Loaded {
    pub dataset: Dataset,
    pub dictionary: Dictionary,
    /// Number of data rows read, before merging repeated profiles.
    pub observations: usize,
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| CliError::io(path, e))
}

pub fn load_dataset(path: &Path, schema: &Schema) -> Result<Loaded> {
    let predictions = match &schema.predictions {
        Some(p) => Some(read_predictions(open(p)?)?),
        None => None,
    };
    read_dataset(open(path)?, schema, predictions)
}

/// Reads a one-column CSV (with header) of predictions.
pub fn read_predictions<R: Read>(reader: R) -> Result<Vec<String>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        if rec.len() != 1 {
            return Err(CliError::Parse(format!(
                "predictions file must have exactly one column, found {}",
                rec.len()
            )));
        }
        out.push(rec[0].trim().to_string());
    }
    Ok(out)
}

struct Column {
    codes: Vec<u32>,
    labels: Option<Vec<String>>,
}

fn encode(name: &str, cells: &[String]) -> Result<Column> {
    if let Some(i) = cells.iter().position(|c| c.is_empty()) {
        return Err(CliError::Parse(format!("column `{name}`, row {}: empty cell", i + 1)));
    }
    let numeric: Option<Vec<u32>> = cells.iter().map(|c| c.parse::<u32>().ok()).collect();
    if let Some(codes) = numeric {
        return Ok(Column { codes, labels: None });
    }
    let mut labels: Vec<String> = cells.to_vec();
    labels.sort();
    labels.dedup();
    let index: BTreeMap<&str, u32> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i as u32)).collect();
    let codes = cells.iter().map(|c| index[c.as_str()]).collect();
    Ok(Column {
        codes,
        labels: Some(labels),
    })
}

pub fn read_dataset<R: Read>(reader: R, schema: &Schema, predictions: Option<Vec<String>>) -> Result<Loaded> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    let mut records: Vec<Vec<String>> = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Parse(format!("row {}: {e}", i + 1)))?;
        records.push(rec.iter().map(str::to_string).collect());
    }
    if records.is_empty() {
        return Err(apriori_influence_core::Error::EmptyDataset.into());
    }
    let find = |name: &str| -> Result<usize> {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Config(format!("no column named `{name}`")))
    };
    let column = |j: usize| -> Vec<String> { records.iter().map(|r| r[j].clone()).collect() };

    let response_idx = match (&predictions, &schema.response) {
        (Some(_), _) => None,
        (None, Some(name)) => Some(find(name)?),
        (None, None) => Some(
            find("y_pred")
                .or_else(|_| find("y"))
                .map_err(|_| CliError::Config("no prediction column: pass --pred-col or --pred-file".into()))?,
        ),
    };
    let freq_idx = match &schema.freq {
        Some(name) => Some(find(name)?),
        None => header.iter().position(|h| h == "freq"),
    };
    let feature_idx: Vec<usize> = match &schema.features {
        Some(names) => names.iter().map(|n| find(n)).collect::<Result<_>>()?,
        None => (0..header.len())
            .filter(|&j| Some(j) != response_idx && Some(j) != freq_idx)
            .collect(),
    };
    if feature_idx.is_empty() {
        return Err(CliError::Config("no feature columns".into()));
    }

    let mut dictionary = Dictionary::default();
    let mut features = Vec::with_capacity(feature_idx.len());
    for &j in &feature_idx {
        let col = encode(&header[j], &column(j))?;
        if let Some(labels) = col.labels.clone() {
            dictionary.0.insert(header[j].clone(), labels);
        }
        features.push(col.codes);
    }

    let response_cells = match (predictions, response_idx) {
        (Some(p), _) => {
            if p.len() != records.len() {
                return Err(CliError::Parse(format!(
                    "{} predictions for {} data rows",
                    p.len(),
                    records.len()
                )));
            }
            p
        }
        (None, Some(j)) => column(j),
        (None, None) => unreachable!(),
    };
    let response_name = response_idx.map_or("prediction".to_string(), |j| header[j].clone());
    let response = encode(&response_name, &response_cells)?;
    if let Some(labels) = response.labels.clone() {
        dictionary.0.insert(response_name, labels);
    }

    let freq: Vec<u64> = match freq_idx {
        Some(j) => column(j)
            .iter()
            .enumerate()
            .map(|(i, c)| match c.parse::<u64>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(CliError::Parse(format!(
                    "row {}: frequency `{c}` is not a positive integer",
                    i + 1
                ))),
            })
            .collect::<Result<_>>()?,
        None => vec![1; records.len()],
    };

    let state_counts = match &schema.state_counts {
        Some(c) if c.len() != features.len() => {
            return Err(CliError::Config(format!(
                "{} state counts for {} features",
                c.len(),
                features.len()
            )))
        }
        Some(c) => c.clone(),
        None => features
            .iter()
            .map(|col| (col.iter().copied().max().unwrap_or(0) + 1).max(2))
            .collect(),
    };
    let response_states = (response.codes.iter().copied().max().unwrap_or(0) + 1).max(2);
    let names = feature_idx.iter().map(|&j| header[j].clone()).collect();
    let space = FeatureSpace::new(names, state_counts, response_states)?;

    let n = records.len();
    let observations = (0..n).map(|i| {
        let x: Vec<u32> = features.iter().map(|col| col[i]).collect();
        (x, response.codes[i], freq[i])
    });
    let dataset = Dataset::from_weighted_observations(space, observations)?;
    Ok(Loaded {
        dataset,
        dictionary,
        observations: n,
    })
}

/// Canonical dump: one column per feature (header = feature name), then `y`
/// and `freq`.
pub fn write_dataset<W: Write>(d: &Dataset, writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    let mut header: Vec<String> = d.space().names().to_vec();
    header.push("y".into());
    header.push("freq".into());
    w.write_record(&header)?;
    for i in 0..d.n() {
        let mut rec: Vec<String> = d.profile(i).iter().map(u32::to_string).collect();
        rec.push(d.response(i).to_string());
        rec.push(d.freq(i).to_string());
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| CliError::io("<output>", e))?;
    Ok(())
}

pub fn save_dataset(d: &Dataset, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    write_dataset(d, std::io::BufWriter::new(file))
}
