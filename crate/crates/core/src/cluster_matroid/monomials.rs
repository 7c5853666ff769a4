use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::independence::rational_rank;
use crate::poly::RationalFunction;
use crate::seed::Seed;

use super::laurent::generic_seeds;
use super::{closed_enumeration, ClusterMatroidError};

/// Cluster monomials expanded in the initial extended cluster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialReport {
    pub max_degree: u32,
    /// Distinct cluster monomials, one per row.
    pub monomials: Vec<String>,
    /// Laurent exponent vectors in the initial extended cluster, one per
    /// column.
    pub columns: Vec<Vec<i64>>,
    pub matrix: Vec<Vec<BigInt>>,
    pub rank: usize,
}

#[derive(Serialize)]
pub struct MonomialSummary {
    pub max_degree: u32,
    pub monomials: usize,
    pub columns: usize,
    pub rank: usize,
    pub full_rank: bool,
}

impl MonomialReport {
    pub fn full_rank(&self) -> bool {
        self.rank == self.monomials.len()
    }

    pub fn summary(&self) -> MonomialSummary {
        MonomialSummary {
            max_degree: self.max_degree,
            monomials: self.monomials.len(),
            columns: self.columns.len(),
            rank: self.rank,
            full_rank: self.full_rank(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for m in &self.monomials {
            out.push_str(m);
            out.push('\n');
        }
        out.push_str(&format!(
            "{} monomials, {} Laurent columns, rank {}{}\n",
            self.monomials.len(),
            self.columns.len(),
            self.rank,
            if self.full_rank() { ", linearly independent" } else { ", DEPENDENT" }
        ));
        out
    }
}

/// Exponent vectors of length `len` with total degree at most `d`.
fn exponent_vectors(len: usize, d: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for e in 0..=d {
        for mut rest in exponent_vectors(len - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn monomial_text(factors: &BTreeMap<String, u32>) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|(v, &e)| {
            let base = if is_identifier(v) { v.clone() } else { format!("({v})") };
            if e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Generates every cluster monomial of total degree at most `max_degree`
/// (frozen variables allowed in every seed), expands each as a Laurent
/// polynomial in the initial extended cluster and computes the exact rank of
/// the coefficient matrix.
pub fn monomial_independence(initial: &Seed, max_degree: u32, cap: usize) -> Result<MonomialReport, ClusterMatroidError> {
    let (_, result) = closed_enumeration(initial, cap)?;
    let generic = generic_seeds(&result)?;
    let m = initial.rank_m();
    let vectors = exponent_vectors(m, max_degree);

    let mut rows: BTreeMap<BTreeMap<String, u32>, BTreeMap<Vec<i64>, BigInt>> = BTreeMap::new();
    for (s, g) in result.seeds().iter().zip(&generic) {
        let texts = s.seed.cluster_texts();
        for exps in &vectors {
            let factors: BTreeMap<String, u32> = texts
                .iter()
                .zip(exps)
                .filter(|&(_, &e)| e > 0)
                .map(|(t, &e)| (t.clone(), e))
                .collect();
            if rows.contains_key(&factors) {
                continue;
            }
            let value = g
                .cluster()
                .iter()
                .zip(exps)
                .fold(RationalFunction::one(m), |acc, (x, &e)| &acc * &x.pow(e));
            rows.insert(factors, value.to_laurent()?.terms());
        }
    }

    let columns: Vec<Vec<i64>> = rows
        .values()
        .flat_map(|t| t.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let column_index: BTreeMap<&Vec<i64>, usize> = columns.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut monomials = Vec::with_capacity(rows.len());
    let mut matrix = Vec::with_capacity(rows.len());
    for (factors, terms) in &rows {
        let mut row = vec![BigInt::from(0); columns.len()];
        for (exp, c) in terms {
            row[column_index[exp]] = c.clone();
        }
        monomials.push(monomial_text(factors));
        matrix.push(row);
    }
    let rank = rational_rank(
        matrix
            .iter()
            .map(|r| r.iter().map(|c| BigRational::from_integer(c.clone())).collect())
            .collect(),
    );
    Ok(MonomialReport {
        max_degree,
        monomials,
        columns,
        matrix,
        rank,
    })
}
