//! Exchange matrices, seeds and mutation, Cartan counterparts and
//! finite-type recognition.

mod cartan;
mod matrix;

pub use cartan::{cartan_counterpart, classify_cartan, CartanMatrix, DynkinType, FiniteType};
pub use matrix::{is_skew_symmetrizable, ExchangeMatrix};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{PolyError, RationalFunction, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("malformed exchange matrix: {0}")]
    Shape(String),
    #[error("top block of the exchange matrix is not skew-symmetrizable")]
    NotSkewSymmetrizable,
    #[error("mutable index {index} out of range (seed has {mutable} mutable positions)")]
    IndexOutOfRange { index: usize, mutable: usize },
    #[error("integer overflow during matrix mutation")]
    Overflow,
    #[error("extended cluster has {found} entries, expected {expected}")]
    ClusterLength { expected: usize, found: usize },
    #[error("cluster entry is over {found} variables, universe has {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid seed JSON: {0}")]
    Json(String),
}

/// Extended exchange matrix with an extended cluster. Positions `0..n` are
/// mutable, `n..m` frozen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    matrix: ExchangeMatrix,
    cluster: Vec<RationalFunction>,
    universe: Universe,
}

impl Seed {
    pub fn new(
        matrix: ExchangeMatrix,
        cluster: Vec<RationalFunction>,
        universe: Universe,
    ) -> Result<Self, SeedError> {
        if cluster.len() != matrix.rows() {
            return Err(SeedError::ClusterLength {
                expected: matrix.rows(),
                found: cluster.len(),
            });
        }
        if let Some(f) = cluster.iter().find(|f| f.nvars() != universe.len()) {
            return Err(SeedError::UniverseMismatch {
                expected: universe.len(),
                found: f.nvars(),
            });
        }
        Ok(Seed {
            matrix,
            cluster,
            universe,
        })
    }

    /// The seed whose extended cluster is `x1, ..., xm`.
    pub fn initial(matrix: ExchangeMatrix) -> Self {
        let universe = Universe::standard(matrix.rows());
        Self::initial_in(matrix, universe).expect("standard universe matches")
    }

    /// The seed whose extended cluster is the variables of `universe`, which
    /// must have exactly `m` names.
    pub fn initial_in(matrix: ExchangeMatrix, universe: Universe) -> Result<Self, SeedError> {
        let cluster = (0..universe.len()).map(|i| universe.var(i)).collect();
        Seed::new(matrix, cluster, universe)
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[RationalFunction] {
        &self.cluster
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn mutable_count(&self) -> usize {
        self.matrix.mutable_count()
    }

    pub fn rank_m(&self) -> usize {
        self.matrix.rows()
    }

    pub fn frozen(&self) -> &[RationalFunction] {
        &self.cluster[self.mutable_count()..]
    }

    /// Right-hand side of the exchange relation at `k`:
    /// `prod_{b_ik>0} x_i^{b_ik} + prod_{b_ik<0} x_i^{-b_ik}`.
    pub fn exchange_binomial(&self, k: usize) -> Result<RationalFunction, SeedError> {
        let n = self.mutable_count();
        if k >= n {
            return Err(SeedError::IndexOutOfRange { index: k, mutable: n });
        }
        let nv = self.universe.len();
        let mut pos = RationalFunction::one(nv);
        let mut neg = RationalFunction::one(nv);
        for (i, x) in self.cluster.iter().enumerate() {
            let b = self.matrix.get(i, k);
            let e = u32::try_from(b.unsigned_abs()).map_err(|_| SeedError::Overflow)?;
            if b > 0 {
                pos = &pos * &x.pow(e);
            } else if b < 0 {
                neg = &neg * &x.pow(e);
            }
        }
        Ok(&pos + &neg)
    }

    /// Seed mutation at mutable index `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<Seed, SeedError> {
        let binomial = self.exchange_binomial(k)?;
        let matrix = self.matrix.mutate(k)?;
        let mut cluster = self.cluster.clone();
        cluster[k] = binomial.checked_div(&self.cluster[k])?;
        Ok(Seed {
            matrix,
            cluster,
            universe: self.universe.clone(),
        })
    }

    /// Applies mutations in order.
    pub fn mutate_path(&self, path: &[usize]) -> Result<Seed, SeedError> {
        let mut s = self.clone();
        for &k in path {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Canonical texts of the extended cluster.
    pub fn cluster_texts(&self) -> Vec<String> {
        self.cluster.iter().map(|f| self.universe.format(f)).collect()
    }

    pub fn to_json(&self) -> SeedJson {
        SeedJson {
            n: self.mutable_count(),
            m: self.rank_m(),
            b: self.matrix.to_rows(),
            variables: Some(self.universe.names().to_vec()),
            cluster: Some(self.cluster_texts()),
            note: None,
        }
    }

    pub fn from_json(j: &SeedJson) -> Result<Seed, SeedError> {
        if j.b.len() != j.m {
            return Err(SeedError::Shape(format!(
                "field m is {} but B has {} rows",
                j.m,
                j.b.len()
            )));
        }
        let matrix = ExchangeMatrix::new(j.b.clone(), j.n)?;
        let universe = match &j.variables {
            Some(names) => Universe::new(names.clone())?,
            None => Universe::standard(j.m),
        };
        match &j.cluster {
            Some(texts) => {
                let cluster = texts
                    .iter()
                    .map(|t| universe.parse(t))
                    .collect::<Result<Vec<_>, _>>()?;
                Seed::new(matrix, cluster, universe)
            }
            None => Seed::initial_in(matrix, universe),
        }
    }

    pub fn parse_json(text: &str) -> Result<Seed, SeedError> {
        let j: SeedJson = serde_json::from_str(text).map_err(|e| SeedError::Json(e.to_string()))?;
        Seed::from_json(&j)
    }
}

/// Serialized seed. `variables` names the universe (default `x1..xm`);
/// `cluster` gives the extended cluster as texts over those names (default:
/// the variables themselves).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster: Option<Vec<String>>,
    /// Free-form description; ignored when building the seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}
