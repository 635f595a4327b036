//! JSON instance files.
//!
//! ```json
//! {"kind": "contraction", "labels": ["a", "b", "t"],
//!  "matrix": [[0, 1, 2], [-1, 0, 3], [-2, -3, 0]], "contract_set": ["t"]}
//! ```
//!
//! Matrix entries are integers reduced mod p on load. Labels starting with
//! `__aux` are reserved for internal elements and rejected.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use deltakit::labels::AUX_PREFIX;
use deltakit::repr::{
    matching_dm, matroid_bases_dm, matroid_independent_dm, ContractionRep, Graph, ProjectedRep,
    TwistRep,
};
use deltakit::{DeltaMatroid, GeneralMatrix, Labels, Matrix, PrimeField, Representation, SkewMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Twist,
    Contraction,
    Projected,
    Graph,
    Matroid,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatroidMode {
    #[default]
    Bases,
    Independent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: Kind,
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist_set: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contract_set: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub project_set: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<MatroidMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(String, String)>>,
}

#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid `{key}`: {msg}")]
    Validation { key: &'static str, msg: String },
}

fn invalid(key: &'static str, msg: impl ToString) -> InstanceError {
    InstanceError::Validation {
        key,
        msg: msg.to_string(),
    }
}

/// A validated instance: the representation plus the optional extras.
#[derive(Clone, Debug)]
pub struct Instance {
    pub rep: Representation,
    pub weights: Option<BTreeMap<String, i64>>,
    pub pairs: Option<Vec<(String, String)>>,
}

pub fn load_instance<R: Rng + ?Sized>(
    path: &Path,
    field: PrimeField,
    rng: &mut R,
    eps: f64,
) -> Result<Instance, InstanceError> {
    let text = std::fs::read_to_string(path).map_err(|source| InstanceError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_instance(&text, field, rng, eps)
}

pub fn parse_instance<R: Rng + ?Sized>(
    text: &str,
    field: PrimeField,
    rng: &mut R,
    eps: f64,
) -> Result<Instance, InstanceError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    build(&file, field, rng, eps)
}

fn forbid<T>(kind: Kind, key: &'static str, v: &Option<T>) -> Result<(), InstanceError> {
    match v {
        Some(_) => Err(invalid(key, format!("not allowed for kind {kind:?}").to_lowercase())),
        None => Ok(()),
    }
}

fn require<'a, T>(kind: Kind, key: &'static str, v: &'a Option<T>) -> Result<&'a T, InstanceError> {
    v.as_ref()
        .ok_or_else(|| invalid(key, format!("required for kind {kind:?}").to_lowercase()))
}

fn user_labels(names: &[String]) -> Result<Labels, InstanceError> {
    if let Some(l) = names.iter().find(|l| l.starts_with(AUX_PREFIX)) {
        return Err(invalid("labels", format!("`{l}` uses the reserved prefix `{AUX_PREFIX}`")));
    }
    Labels::new(names.iter().cloned()).map_err(|e| invalid("labels", e))
}

fn subset(key: &'static str, set: &[String], labels: &Labels) -> Result<(), InstanceError> {
    let mut seen = HashSet::new();
    for l in set {
        if !labels.contains(l) {
            return Err(invalid(key, format!("`{l}` is not a label")));
        }
        if !seen.insert(l) {
            return Err(invalid(key, format!("`{l}` is listed twice")));
        }
    }
    Ok(())
}

fn rows(field: PrimeField, m: &[Vec<i64>], rows: usize, cols: usize) -> Result<Matrix, InstanceError> {
    if m.len() != rows {
        return Err(invalid("matrix", format!("expected {rows} rows, found {}", m.len())));
    }
    if let Some((i, r)) = m.iter().enumerate().find(|(_, r)| r.len() != cols) {
        return Err(invalid(
            "matrix",
            format!("row {i} has {} entries, expected {cols}", r.len()),
        ));
    }
    if rows == 0 {
        return Ok(Matrix::zeros(field, 0, cols));
    }
    Matrix::from_i64_rows(field, m).map_err(|e| invalid("matrix", e))
}

fn skew(field: PrimeField, file: &InstanceFile, labels: Labels) -> Result<SkewMatrix, InstanceError> {
    let n = labels.len();
    let m = rows(field, require(file.kind, "matrix", &file.matrix)?, n, n)?;
    if let Some((i, j)) = m.skew_violation() {
        return Err(invalid(
            "matrix",
            format!("A[{i}][{j}] must equal -A[{j}][{i}] with zero diagonal"),
        ));
    }
    SkewMatrix::new(labels, m).map_err(|e| invalid("matrix", e))
}

fn build<R: Rng + ?Sized>(
    file: &InstanceFile,
    field: PrimeField,
    rng: &mut R,
    eps: f64,
) -> Result<Instance, InstanceError> {
    let kind = file.kind;
    let labels = user_labels(&file.labels)?;
    let rep: Representation = match kind {
        Kind::Twist => {
            forbid(kind, "contract_set", &file.contract_set)?;
            forbid(kind, "project_set", &file.project_set)?;
            forbid(kind, "edges", &file.edges)?;
            forbid(kind, "mode", &file.mode)?;
            let twist = file.twist_set.clone().unwrap_or_default();
            subset("twist_set", &twist, &labels)?;
            let a = skew(field, file, labels)?;
            TwistRep::new(a, &twist).map_err(|e| invalid("twist_set", e))?.into()
        }
        Kind::Contraction | Kind::Projected => {
            forbid(kind, "twist_set", &file.twist_set)?;
            forbid(kind, "edges", &file.edges)?;
            forbid(kind, "mode", &file.mode)?;
            let t = file.contract_set.clone().unwrap_or_default();
            subset("contract_set", &t, &labels)?;
            let x = if kind == Kind::Projected {
                require(kind, "project_set", &file.project_set)?.clone()
            } else {
                forbid(kind, "project_set", &file.project_set)?;
                Vec::new()
            };
            subset("project_set", &x, &labels)?;
            if let Some(l) = x.iter().find(|l| t.contains(l)) {
                return Err(invalid("project_set", format!("`{l}` is also in contract_set")));
            }
            let a = skew(field, file, labels)?;
            let c = ContractionRep::new(a, &t).map_err(|e| invalid("contract_set", e))?;
            if kind == Kind::Projected {
                ProjectedRep::new(c, &x).map_err(|e| invalid("project_set", e))?.into()
            } else {
                c.into()
            }
        }
        Kind::Graph => {
            forbid(kind, "matrix", &file.matrix)?;
            forbid(kind, "twist_set", &file.twist_set)?;
            forbid(kind, "contract_set", &file.contract_set)?;
            forbid(kind, "project_set", &file.project_set)?;
            forbid(kind, "mode", &file.mode)?;
            let edges = require(kind, "edges", &file.edges)?;
            let g = Graph::new(labels, edges).map_err(|e| invalid("edges", e))?;
            matching_dm(field, &g, rng, eps)
                .map_err(|e| invalid("labels", e))?
                .into()
        }
        Kind::Matroid => {
            forbid(kind, "twist_set", &file.twist_set)?;
            forbid(kind, "contract_set", &file.contract_set)?;
            forbid(kind, "project_set", &file.project_set)?;
            forbid(kind, "edges", &file.edges)?;
            let m = require(kind, "matrix", &file.matrix)?;
            let a = rows(field, m, m.len(), labels.len())?;
            let g = GeneralMatrix::new(Labels::numbered("r", m.len()), labels, a)
                .map_err(|e| invalid("matrix", e))?;
            match file.mode.unwrap_or_default() {
                MatroidMode::Bases => matroid_bases_dm(&g).map_err(|e| invalid("matrix", e))?.into(),
                MatroidMode::Independent => matroid_independent_dm(&g).into(),
            }
        }
    };
    let ground = rep.ground();
    if let Some(w) = &file.weights {
        if let Some(l) = w.keys().find(|l| !ground.contains(l)) {
            return Err(invalid("weights", format!("`{l}` is not in the ground set")));
        }
    }
    if let Some(pairs) = &file.pairs {
        let flat: Vec<String> = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        subset("pairs", &flat, ground)?;
    }
    Ok(Instance {
        rep,
        weights: file.weights.clone(),
        pairs: file.pairs.clone(),
    })
}

/// Renames internal `__aux` labels to plain ones so that the output can be
/// read back as an instance file.
fn renamer(all: &[String]) -> impl Fn(&str) -> String {
    let taken: HashSet<&str> = all.iter().map(String::as_str).collect();
    let mut map = BTreeMap::new();
    let mut k = 0;
    for l in all.iter().filter(|l| l.starts_with(AUX_PREFIX)) {
        while taken.contains(format!("aux{k}").as_str()) {
            k += 1;
        }
        map.insert(l.clone(), format!("aux{k}"));
        k += 1;
    }
    move |l: &str| map.get(l).cloned().unwrap_or_else(|| l.to_string())
}

fn signed(a: &SkewMatrix) -> Vec<Vec<i64>> {
    let f = a.field();
    (0..a.len())
        .map(|i| (0..a.len()).map(|j| f.to_signed(a.get(i, j)) as i64).collect())
        .collect()
}

/// The instance file of a representation. Matrix entries are written as
/// the representatives closest to zero.
pub fn to_instance(rep: &Representation) -> InstanceFile {
    let (kind, a, twist, contract, project): (Kind, &SkewMatrix, _, _, _) = match rep {
        Representation::Twist(t) => (Kind::Twist, t.matrix(), Some(t.twist_set()), None, None),
        Representation::Contraction(c) => (
            Kind::Contraction,
            c.matrix(),
            None,
            Some(c.contracted().to_vec()),
            None,
        ),
        Representation::Projected(p) => (
            Kind::Projected,
            p.inner().matrix(),
            None,
            Some(p.inner().contracted().to_vec()),
            Some(p.projected().to_vec()),
        ),
    };
    let rename = renamer(a.labels().names());
    let map = |v: Option<Vec<String>>| v.map(|v| v.iter().map(|l| rename(l)).collect());
    InstanceFile {
        kind,
        labels: a.labels().iter().map(&rename).collect(),
        matrix: Some(signed(a)),
        twist_set: twist,
        contract_set: map(contract),
        project_set: map(project),
        edges: None,
        mode: None,
        weights: None,
        pairs: None,
    }
}
