use serde::Serialize;

use crate::enumeration::EnumerationResult;
use crate::poly::{PolyError, RationalFunction, Universe};
use crate::seed::{Seed, SeedError};

use super::ClusterMatroidError;

/// Labeled seeds of the generic mutation class: the initial extended
/// cluster is `x1, ..., xm`, and seed `i` is reached along the same path as
/// enumerated seed `i`.
pub(crate) fn generic_seeds(result: &EnumerationResult) -> Result<Vec<Seed>, SeedError> {
    let g0 = Seed::initial(result.initial().matrix().clone());
    result.seeds().iter().map(|s| g0.mutate_path(&s.path)).collect()
}

/// Generic expression of every cluster variable, in the order of
/// `result.cluster_variable_texts()`.
pub(crate) fn generic_variables(result: &EnumerationResult, generic: &[Seed]) -> Vec<RationalFunction> {
    let n = result.initial().mutable_count();
    result
        .cluster_variable_texts()
        .iter()
        .map(|text| {
            result
                .seeds()
                .iter()
                .zip(generic)
                .find_map(|(s, g)| {
                    let texts = s.seed.cluster_texts();
                    (0..n).find(|&k| texts[k] == *text).map(|k| g.cluster()[k].clone())
                })
                .expect("every variable occurs in some seed")
        })
        .collect()
}

/// Initial generic variables `x_i` written in the cluster `y` of a seed,
/// obtained by mutating the generic seed with that seed's matrix back along
/// the reversed path.
pub(crate) fn inverse_substitution(result: &EnumerationResult, seed_index: usize) -> Result<Vec<RationalFunction>, SeedError> {
    let s = &result.seeds()[seed_index];
    let m = s.seed.matrix().rows();
    let names = (1..=m).map(|i| format!("y{i}")).collect();
    let universe = Universe::new(names).expect("valid names");
    let h = Seed::initial_in(s.seed.matrix().clone(), universe)?;
    let reversed: Vec<usize> = s.path.iter().rev().copied().collect();
    let back = h.mutate_path(&reversed)?;
    debug_assert_eq!(back.matrix(), result.initial().matrix());
    Ok(back.cluster().to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LaurentViolation {
    NotLaurent { denominator: String },
    FrozenInDenominator { positions: Vec<usize> },
}

/// One (cluster variable, seed) pair. `expression` is the variable written
/// in `y1, ..., ym`, the extended cluster of the seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentEntry {
    pub variable: String,
    pub seed: usize,
    pub expression: String,
    pub denominator: Vec<u32>,
    pub violation: Option<LaurentViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentReport {
    pub mutable: usize,
    pub seeds: Vec<Vec<String>>,
    pub entries: Vec<LaurentEntry>,
}

impl LaurentReport {
    pub fn pairs_checked(&self) -> usize {
        self.entries.len()
    }

    pub fn violations(&self) -> impl Iterator<Item = &LaurentEntry> {
        self.entries.iter().filter(|e| e.violation.is_some())
    }

    pub fn passed(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let status = match &e.violation {
                None => "ok".to_string(),
                Some(v) => format!("VIOLATION {v:?}"),
            };
            out.push_str(&format!("{} in seed {}: {} [{}]\n", e.variable, e.seed, e.expression, status));
        }
        out.push_str(&format!(
            "{} pairs checked, {} violations\n",
            self.pairs_checked(),
            self.violations().count()
        ));
        out
    }
}

/// Re-expresses every cluster variable in every extended cluster and checks
/// that the result is a Laurent polynomial whose denominator avoids the
/// frozen variables. Works in generic coordinates, so it applies to any
/// realization of the initial seed.
pub fn laurent_check(result: &EnumerationResult) -> Result<LaurentReport, ClusterMatroidError> {
    if result.truncated() {
        return Err(ClusterMatroidError::Truncated {
            cap: result.seeds().len(),
        });
    }
    let n = result.initial().mutable_count();
    let m = result.initial().matrix().rows();
    let generic = generic_seeds(result)?;
    let vars = generic_variables(result, &generic);
    let y = Universe::new((1..=m).map(|i| format!("y{i}")).collect()).expect("valid names");
    let mut entries = Vec::new();
    for si in 0..result.seeds().len() {
        let x_in_y = inverse_substitution(result, si)?;
        for (text, v) in result.cluster_variable_texts().iter().zip(&vars) {
            let expr = v.compose(&x_in_y)?;
            let (denominator, violation) = match expr.to_laurent() {
                Ok(l) => {
                    let exps = l.denominator().exponents().to_vec();
                    let frozen: Vec<usize> = (n..m).filter(|&i| exps[i] > 0).collect();
                    let violation = (!frozen.is_empty()).then_some(LaurentViolation::FrozenInDenominator { positions: frozen });
                    (exps, violation)
                }
                Err(PolyError::NotLaurent { denominator }) => (
                    Vec::new(),
                    Some(LaurentViolation::NotLaurent {
                        denominator: y.format_polynomial(&denominator),
                    }),
                ),
                Err(e) => return Err(e.into()),
            };
            entries.push(LaurentEntry {
                variable: text.to_string(),
                seed: si,
                expression: y.format(&expr),
                denominator,
                violation,
            });
        }
    }
    Ok(LaurentReport {
        mutable: n,
        seeds: result.seeds().iter().map(|s| s.seed.cluster_texts()).collect(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate, DEFAULT_CAP};
    use crate::seed::ExchangeMatrix;

    #[test]
    fn a2_all_pairs_laurent() {
        let r = enumerate(&Seed::initial(ExchangeMatrix::linear_a(2)), DEFAULT_CAP).unwrap();
        let rep = laurent_check(&r).unwrap();
        assert_eq!(rep.pairs_checked(), 25);
        assert!(rep.passed());
        // in its own seed every variable is a coordinate
        for e in &rep.entries {
            if rep.seeds[e.seed][..2].contains(&e.variable) {
                assert!(e.expression == "y1" || e.expression == "y2", "{}", e.expression);
            }
        }
    }

    #[test]
    fn inverse_substitution_round_trips() {
        let init = Seed::initial(ExchangeMatrix::linear_a(3));
        let r = enumerate(&init, DEFAULT_CAP).unwrap();
        let generic = generic_seeds(&r).unwrap();
        for si in 0..r.seeds().len() {
            // x(y) composed with y(x) is the identity
            let x_in_y = inverse_substitution(&r, si).unwrap();
            for (i, xi) in x_in_y.iter().enumerate() {
                assert_eq!(xi.compose(generic[si].cluster()).unwrap(), RationalFunction::var(3, i));
            }
        }
    }

    #[test]
    fn rank_one_denominator_is_a() {
        let s = Seed::parse_json(r#"{"n":1,"m":3,"B":[[0],[1],[-1]],"variables":["a","b","c"],"cluster":["a","b","a*c-b"]}"#)
            .unwrap();
        let r = enumerate(&s, DEFAULT_CAP).unwrap();
        let rep = laurent_check(&r).unwrap();
        assert!(rep.passed());
        let initial = r.seed_index(&["a".to_string()]).unwrap();
        let c = rep.entries.iter().find(|e| e.variable == "c" && e.seed == initial).unwrap();
        assert_eq!(c.expression, "(y2+y3)/(y1)");
        assert_eq!(c.denominator, vec![1, 0, 0]);
    }

    #[test]
    fn trivial_seed_is_vacuous() {
        let s = Seed::initial(ExchangeMatrix::new(vec![], 0).unwrap());
        let r = enumerate(&s, DEFAULT_CAP).unwrap();
        let rep = laurent_check(&r).unwrap();
        assert_eq!(rep.pairs_checked(), 0);
        assert!(rep.passed());
    }
}
