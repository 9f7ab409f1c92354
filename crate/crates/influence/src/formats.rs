//! JSON files: partitions, dependency models, games and index vectors.

use std::collections::BTreeMap;
use std::path::Path;

use apriori_influence_core::{DependencyModel, FeatureSpace, Game, IndexVector, Partition, Sign};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn feature_ref(v: &Value, space: &FeatureSpace) -> Result<usize> {
    match v {
        Value::String(name) => space
            .feature_index(name)
            .ok_or_else(|| apriori_influence_core::Error::UnknownFeature(name.clone()).into()),
        Value::Number(n) => n
            .as_u64()
            .map(|i| i as usize)
            .filter(|&i| i < space.k())
            .ok_or_else(|| apriori_influence_core::Error::UnknownFeature(n.to_string()).into()),
        other => Err(CliError::Parse(format!(
            "`{other}` is neither a feature name nor an index"
        ))),
    }
}

/// A JSON array of arrays of feature names or zero-based indices.
pub fn parse_partition(json: &str, space: &FeatureSpace) -> Result<Partition> {
    let blocks: Vec<Vec<Value>> = serde_json::from_str(json)?;
    let blocks = blocks
        .iter()
        .map(|b| b.iter().map(|v| feature_ref(v, space)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::new(space.k(), blocks)?)
}

/// A JSON object mapping feature names (or index strings) to `"+"` or `"-"`;
/// features not mentioned are positive.
pub fn parse_dependency(json: &str, space: &FeatureSpace, p: &Partition) -> Result<DependencyModel> {
    let map: BTreeMap<String, String> = serde_json::from_str(json)?;
    let mut signs = vec![Sign::Positive; space.k()];
    for (key, sign) in &map {
        let l = match space.feature_index(key) {
            Some(l) => l,
            None => feature_ref(
                &Value::Number(
                    key.parse::<u64>()
                        .map_err(|_| apriori_influence_core::Error::UnknownFeature(key.clone()))?
                        .into(),
                ),
                space,
            )?,
        };
        signs[l] = match sign.as_str() {
            "+" => Sign::Positive,
            "-" | "\u{2212}" => Sign::Negative,
            other => return Err(CliError::Parse(format!("sign `{other}` for `{key}` is not + or -"))),
        };
    }
    Ok(DependencyModel::new(p, signs)?)
}

#[derive(Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum GameFile {
    Weighted { weights: Vec<f64>, quota: f64 },
    Table { table: Vec<f64> },
}

/// `{"weights": [...], "quota": a}` or `{"table": [v_0, …, v_{2^k-1}]}`.
pub fn parse_game(json: &str) -> Result<Game> {
    let file: GameFile = serde_json::from_str(json)
        .map_err(|e| CliError::Parse(format!("game must be {{weights, quota}} or {{table}}: {e}")))?;
    Ok(match file {
        GameFile::Weighted { weights, quota } => Game::weighted_majority(weights, quota)?,
        GameFile::Table { table } => Game::table(table)?,
    })
}

pub fn game_to_json(g: &Game) -> Value {
    match g {
        Game::WeightedMajority { weights, quota } => serde_json::json!({ "weights": weights, "quota": quota }),
        Game::Table { values, .. } => serde_json::json!({ "table": values }),
    }
}

/// Blocks with one-based feature numbers.
pub fn one_based(p: &Partition) -> Vec<Vec<usize>> {
    p.blocks().iter().map(|b| b.iter().map(|l| l + 1).collect()).collect()
}

pub fn partition_to_text(p: &Partition) -> String {
    one_based(p)
        .iter()
        .map(|b| format!("{{{}}}", b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct IndexFile {
    pub method: String,
    pub values: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stderr: Option<Vec<f64>>,
    pub partition: Vec<Vec<usize>>,
}

pub fn index_file(v: &IndexVector, p: &Partition) -> IndexFile {
    IndexFile {
        method: v.method.name().into(),
        values: v.values.clone(),
        stderr: v.stderr.clone(),
        partition: one_based(p),
    }
}
