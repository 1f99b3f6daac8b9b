//! JSON file formats. Rationals are written as `"p/q"` strings.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::double_extension::DoubleExtensionData;
use crate::lie::{LieAlgebra, LieError, MetricLieAlgebra};
use crate::linalg::RMatrix;
use crate::rational::Rational;

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: index {index} out of range for dimension {dim}")]
    IndexOutOfRange { field: &'static str, index: usize, dim: usize },
    #[error("{field}: conflicting entries for ({i}, {j}{})", .k.map(|k| format!(", {k}")).unwrap_or_default())]
    Conflict { field: &'static str, i: usize, j: usize, k: Option<usize> },
    #[error("brackets: [e{i}, e{i}] has a nonzero component e{k}")]
    DiagonalBracket { i: usize, k: usize },
    #[error("labels: {found} labels for dimension {dim}")]
    LabelCount { dim: usize, found: usize },
    #[error("{0}")]
    Lie(#[from] LieError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Rational,
}

/// `M[i][j] = coeff`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub i: usize,
    pub j: usize,
    pub coeff: Rational,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub description: String,
}

/// `[e_i, e_j] = Σ coeff e_k` and `⟨e_i, e_j⟩ = coeff`; unlisted entries are
/// zero and one-sided entries are mirrored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpecFile {
    pub dim: usize,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default)]
    pub gram: Vec<MatrixEntry>,
    #[serde(default)]
    pub metadata: Metadata,
}

fn check_index(field: &'static str, index: usize, dim: usize) -> Result<(), SpecError> {
    if index >= dim {
        Err(SpecError::IndexOutOfRange { field, index, dim })
    } else {
        Ok(())
    }
}

type Mirrored = BTreeMap<(usize, usize, Option<usize>), Rational>;

/// Collects `(i, j) → value` with `value(j, i) = sign · value(i, j)`,
/// rejecting inconsistent or repeated entries.
fn mirrored(
    field: &'static str,
    dim: usize,
    entries: impl Iterator<Item = (usize, usize, Option<usize>, Rational)>,
    sign: i64,
) -> Result<Mirrored, SpecError> {
    let mut given = Mirrored::new();
    for (i, j, k, v) in entries {
        check_index(field, i, dim)?;
        check_index(field, j, dim)?;
        if given.insert((i, j, k), v).is_some() {
            return Err(SpecError::Conflict { field, i, j, k });
        }
    }
    let mut out = given.clone();
    let s = Rational::from_integer(sign);
    for (&(i, j, k), v) in &given {
        let mirror = v * &s;
        match given.get(&(j, i, k)) {
            Some(w) if *w != mirror => return Err(SpecError::Conflict { field, i, j, k }),
            Some(_) => {}
            None => {
                out.insert((j, i, k), mirror);
            }
        }
    }
    Ok(out)
}

impl AlgebraSpecFile {
    /// One-sided brackets (`i < j`) and upper-triangle Gram entries.
    pub fn from_metric(m: &MetricLieAlgebra, name: &str, description: &str) -> Self {
        let n = m.dim();
        let a = m.algebra();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = a.constant(i, j, k);
                    if !c.is_zero() {
                        brackets.push(BracketEntry { i, j, k, coeff: c.clone() });
                    }
                }
            }
        }
        let mut gram = Vec::new();
        for i in 0..n {
            for j in i..n {
                let g = &m.gram()[(i, j)];
                if !g.is_zero() {
                    gram.push(MatrixEntry { i, j, coeff: g.clone() });
                }
            }
        }
        AlgebraSpecFile {
            dim: n,
            labels: a.labels().to_vec(),
            brackets,
            gram,
            metadata: Metadata { name: name.to_string(), description: description.to_string() },
        }
    }

    pub fn to_metric(&self) -> Result<MetricLieAlgebra, SpecError> {
        let n = self.dim;
        for b in &self.brackets {
            check_index("brackets", b.k, n)?;
            if b.i == b.j && !b.coeff.is_zero() {
                check_index("brackets", b.i, n)?;
                return Err(SpecError::DiagonalBracket { i: b.i, k: b.k });
            }
        }
        let brackets = mirrored(
            "brackets",
            n,
            self.brackets.iter().filter(|b| b.i != b.j).map(|b| (b.i, b.j, Some(b.k), b.coeff.clone())),
            -1,
        )?;
        let entries: Vec<(usize, usize, usize, Rational)> = brackets
            .into_iter()
            .filter(|((i, j, _), v)| i < j && !v.is_zero())
            .map(|((i, j, k), v)| (i, j, k.expect("bracket entries carry k"), v))
            .collect();
        let mut algebra = LieAlgebra::from_brackets(n, &entries)?;
        if !self.labels.is_empty() {
            if self.labels.len() != n {
                return Err(SpecError::LabelCount { dim: n, found: self.labels.len() });
            }
            algebra = algebra.with_labels(self.labels.clone());
        }
        let gram_entries = mirrored("gram", n, self.gram.iter().map(|g| (g.i, g.j, None, g.coeff.clone())), 1)?;
        let mut gram = RMatrix::zeros(n, n);
        for ((i, j, _), v) in gram_entries {
            gram[(i, j)] = v;
        }
        Ok(MetricLieAlgebra::from_gram(algebra, gram)?)
    }

    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files serialize")
    }

    pub fn load(path: &Path) -> Result<Self, SpecError> {
        Self::from_json(&read(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), SpecError> {
        write(path, &self.to_json())
    }

    /// The file as re-emitted from its validated algebra, so that equivalent
    /// spellings (one- or two-sided entries, ordering) coincide.
    pub fn canonical(&self) -> Result<Self, SpecError> {
        let m = self.to_metric()?;
        Ok(Self::from_metric(&m, &self.metadata.name, &self.metadata.description))
    }

    /// SHA-256 of the compact JSON of [`Self::canonical`].
    pub fn digest(&self) -> Result<String, SpecError> {
        let text = serde_json::to_string(&self.canonical()?)?;
        let hash = Sha256::digest(text.as_bytes());
        Ok(hash.iter().map(|b| format!("{b:02x}")).collect())
    }
}

/// JSON form of [`DoubleExtensionData`]. `cocycle` lists `ω(X_i, X_j)`
/// (mirrored with sign); `derivation` lists `D[i][j]` over `(e, m_0)`, index
/// 0 being `e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleExtensionFile {
    pub base: AlgebraSpecFile,
    #[serde(default)]
    pub cocycle: Vec<MatrixEntry>,
    #[serde(default)]
    pub derivation: Vec<MatrixEntry>,
}

impl DoubleExtensionFile {
    pub fn from_data(data: &DoubleExtensionData, name: &str) -> Self {
        let base = AlgebraSpecFile::from_metric(&data.base, name, "double-extension base");
        let mut cocycle = Vec::new();
        let c = &data.cocycle;
        for i in 0..c.rows() {
            for j in i + 1..c.cols() {
                if !c[(i, j)].is_zero() {
                    cocycle.push(MatrixEntry { i, j, coeff: c[(i, j)].clone() });
                }
            }
        }
        let mut derivation = Vec::new();
        let d = &data.derivation;
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if !d[(i, j)].is_zero() {
                    derivation.push(MatrixEntry { i, j, coeff: d[(i, j)].clone() });
                }
            }
        }
        DoubleExtensionFile { base, cocycle, derivation }
    }

    pub fn to_data(&self) -> Result<DoubleExtensionData, SpecError> {
        let base = self.base.to_metric()?;
        let m = base.dim();
        let omega = mirrored("cocycle", m, self.cocycle.iter().map(|e| (e.i, e.j, None, e.coeff.clone())), -1)?;
        let mut cocycle = RMatrix::zeros(m, m);
        for ((i, j, _), v) in omega {
            if i == j && !v.is_zero() {
                return Err(SpecError::Conflict { field: "cocycle", i, j, k: None });
            }
            cocycle[(i, j)] = v;
        }
        let mut derivation = RMatrix::zeros(m + 1, m + 1);
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.derivation {
            check_index("derivation", e.i, m + 1)?;
            check_index("derivation", e.j, m + 1)?;
            if !seen.insert((e.i, e.j)) {
                return Err(SpecError::Conflict { field: "derivation", i: e.i, j: e.j, k: None });
            }
            derivation[(e.i, e.j)] = e.coeff.clone();
        }
        Ok(DoubleExtensionData { base, cocycle, derivation })
    }

    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("double-extension files serialize")
    }

    pub fn load(path: &Path) -> Result<Self, SpecError> {
        Self::from_json(&read(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), SpecError> {
        write(path, &self.to_json())
    }
}

fn read(path: &Path) -> Result<String, SpecError> {
    std::fs::read_to_string(path).map_err(|source| SpecError::Read { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), SpecError> {
    let mut body = text.to_string();
    body.push('\n');
    std::fs::write(path, body).map_err(|source| SpecError::Write { path: path.display().to_string(), source })
}
