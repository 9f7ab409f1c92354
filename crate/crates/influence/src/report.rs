//! Report files (TSV by default, JSON on request) and reading them back.
//!
//! Features are numbered from 1 in every report.

use apriori_influence_core::{IndexVector, InfluenceReport, Partition, Sign};
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, Result};
use crate::formats::{index_file, one_based, partition_to_text};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

fn signs_text(signs: &[Sign]) -> Vec<&'static str> {
    signs
        .iter()
        .map(|s| match s {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
        .collect()
}

/// One-based rank of every feature.
fn ranks(order: &[usize]) -> Vec<usize> {
    let mut r = vec![0; order.len()];
    for (pos, &l) in order.iter().enumerate() {
        r[l] = pos + 1;
    }
    r
}

#[derive(Serialize)]
struct FeatureRow<'a> {
    feature: usize,
    name: &'a str,
    raw: u64,
    normalized: Option<f64>,
    rank: usize,
}

#[derive(Serialize)]
struct InfluenceFile<'a> {
    measure: &'a str,
    #[serde(rename = "C")]
    c: f64,
    partition: Vec<Vec<usize>>,
    dependency: Vec<&'static str>,
    space_counts: Option<&'a [u128]>,
    features: Vec<FeatureRow<'a>>,
}

pub fn render_influence(r: &InfluenceReport, names: &[String], format: Format) -> Result<String> {
    let rank = ranks(&r.ranking);
    let normalized = |l: usize| r.normalized.as_ref().map(|v| v[l]);
    match format {
        Format::Json => {
            let file = InfluenceFile {
                measure: r.measure.name(),
                c: r.constant_c,
                partition: one_based(&r.partition),
                dependency: signs_text(r.dependency.signs()),
                space_counts: r.space_counts.as_deref(),
                features: (0..r.raw.len())
                    .map(|l| FeatureRow {
                        feature: l + 1,
                        name: &names[l],
                        raw: r.raw[l],
                        normalized: normalized(l),
                        rank: rank[l],
                    })
                    .collect(),
            };
            Ok(serde_json::to_string_pretty(&file)? + "\n")
        }
        Format::Tsv => {
            let mut out = String::new();
            out += &format!("# measure\t{}\n", r.measure.name());
            out += &format!("# C\t{}\n", r.constant_c);
            out += &format!("# partition\t{}\n", partition_to_text(&r.partition));
            out += &format!("# dependency\t{}\n", signs_text(r.dependency.signs()).join(","));
            let counts = r.space_counts.as_ref().map_or("-".to_string(), |c| {
                c.iter().map(u128::to_string).collect::<Vec<_>>().join(",")
            });
            out += &format!("# space_counts\t{counts}\n");
            out += &format!("# names\t{}\n", names.join(","));
            out += "feature\traw\tnormalized\trank\n";
            for (l, (raw, rank)) in r.raw.iter().zip(&rank).enumerate() {
                let norm = normalized(l).map_or(String::new(), |v| v.to_string());
                out += &format!("{}\t{raw}\t{norm}\t{rank}\n", l + 1);
            }
            Ok(out)
        }
    }
}

pub fn render_index(v: &IndexVector, p: &Partition, names: &[String], format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&index_file(v, p))? + "\n"),
        Format::Tsv => {
            let order: Vec<usize> = apriori_influence_core::influence::rank(&v.values, None)
                .into_iter()
                .map(|(l, _)| l)
                .collect();
            let rank = ranks(&order);
            let mut out = String::new();
            out += &format!("# method\t{}\n", v.method.name());
            out += &format!("# partition\t{}\n", partition_to_text(p));
            out += &format!("# names\t{}\n", names.join(","));
            out += "feature\tvalue\tstderr\trank\n";
            for l in 0..v.values.len() {
                let se = v.stderr.as_ref().map_or(String::new(), |s| s[l].to_string());
                out += &format!("{}\t{}\t{}\t{}\n", l + 1, v.values[l], se, rank[l]);
            }
            Ok(out)
        }
    }
}

/// The value vector of a report: normalized values when present, raw counts
/// otherwise, or the index values.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportValues {
    pub features: Vec<usize>,
    pub values: Vec<f64>,
}

pub fn parse_report(text: &str) -> Result<ReportValues> {
    if text.trim_start().starts_with('{') {
        parse_json_report(text)
    } else {
        parse_tsv_report(text)
    }
}

fn parse_json_report(text: &str) -> Result<ReportValues> {
    let v: Value = serde_json::from_str(text)?;
    if let Some(rows) = v.get("features").and_then(Value::as_array) {
        let mut out = ReportValues {
            features: vec![],
            values: vec![],
        };
        for row in rows {
            let feature = row.get("feature").and_then(Value::as_u64);
            let value = row
                .get("normalized")
                .and_then(Value::as_f64)
                .or_else(|| row.get("raw").and_then(Value::as_f64));
            match (feature, value) {
                (Some(f), Some(x)) => {
                    out.features.push(f as usize);
                    out.values.push(x);
                }
                _ => return Err(CliError::Parse("report row lacks feature or value".into())),
            }
        }
        return Ok(out);
    }
    if let Some(values) = v.get("values").and_then(Value::as_array) {
        let values = values
            .iter()
            .map(|x| x.as_f64().ok_or_else(|| CliError::Parse("non-numeric value".into())))
            .collect::<Result<Vec<_>>>()?;
        return Ok(ReportValues {
            features: (1..=values.len()).collect(),
            values,
        });
    }
    Err(CliError::Parse(
        "JSON report has neither `features` nor `values`".into(),
    ))
}

fn parse_tsv_report(text: &str) -> Result<ReportValues> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| CliError::Parse("empty report".into()))?
        .split('\t')
        .collect();
    let col = |name: &str| header.iter().position(|h| *h == name);
    let feature_col = col("feature").ok_or_else(|| CliError::Parse("report has no `feature` column".into()))?;
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
    let normalized_complete =
        col("normalized").filter(|&j| rows.iter().all(|r| r.get(j).is_some_and(|c| !c.is_empty())));
    let value_col = normalized_complete
        .or_else(|| col("raw"))
        .or_else(|| col("value"))
        .ok_or_else(|| CliError::Parse("report has no value column".into()))?;
    let mut out = ReportValues {
        features: vec![],
        values: vec![],
    };
    for r in rows {
        let cell = |j: usize| r.get(j).copied().unwrap_or("");
        out.features.push(
            cell(feature_col)
                .parse()
                .map_err(|_| CliError::Parse(format!("bad feature `{}`", cell(feature_col))))?,
        );
        out.values.push(
            cell(value_col)
                .parse()
                .map_err(|_| CliError::Parse(format!("bad value `{}`", cell(value_col))))?,
        );
    }
    Ok(out)
}
