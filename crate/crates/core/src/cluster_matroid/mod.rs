//! Cluster matroids of finite-type seeds: the algebraic construction (all
//! maximal algebraically independent sets containing the frozen variables)
//! and the construction whose bases are the extended clusters.

mod laurent;
mod minors;
mod monomials;

pub use laurent::{laurent_check, LaurentEntry, LaurentReport, LaurentViolation};
pub use minors::{contract_frozen, contract_mutable, FrozenContraction, MutableContraction};
pub use monomials::{monomial_independence, MonomialReport};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::enumeration::{enumerate, is_finite_type, EnumerationError, EnumerationResult};
use crate::independence::{decide, Decision, IndependenceError, Mode};
use crate::matroid::{
    check_basis_axioms, elements, set_of, Connectivity, ElementSet, GroundSet, Matroid, MatroidError, SetFamily,
    Witness,
};
use crate::poly::{PolyError, RationalFunction};
use crate::seed::{DynkinType, FiniteType, Seed, SeedError, SeedJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterMatroidError {
    #[error("seed is not of finite type")]
    InfiniteType,
    #[error("enumeration hit the cap of {cap} seeds")]
    Truncated { cap: usize },
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Independence(#[from] IndependenceError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("`{0}` is not a frozen variable")]
    NotFrozen(String),
    #[error("`{0}` is not a mutable cluster variable")]
    NotMutable(String),
    #[error("mutation paths do not induce a bijection between ground sets: {0}")]
    InconsistentRelabeling(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BuildMode {
    /// Bases are the maximal algebraically independent sets containing the
    /// frozen variables.
    Algebraic,
    /// Bases are the extended clusters.
    Cluster,
}

impl std::str::FromStr for BuildMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "algebraic" => Ok(BuildMode::Algebraic),
            "cluster" => Ok(BuildMode::Cluster),
            other => Err(format!("unknown mode `{other}`, expected algebraic or cluster")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub mode: BuildMode,
    pub independence: Mode,
    pub cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            mode: BuildMode::Algebraic,
            independence: Mode::default(),
            cap: crate::enumeration::DEFAULT_CAP,
        }
    }
}

/// Independence decision for one candidate basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CandidateDecision {
    pub set: ElementSet,
    pub decision: Decision,
}

#[derive(Clone, Debug)]
pub struct ClusterMatroid {
    matroid: Matroid,
    frozen: ElementSet,
    functions: Vec<RationalFunction>,
    options: BuildOptions,
    finite_type: FiniteType,
    enumeration: EnumerationResult,
    decisions: Vec<CandidateDecision>,
}

#[derive(Clone, Debug)]
pub enum BuildOutcome {
    Matroid(Box<ClusterMatroid>),
    /// Only in cluster mode: the extended clusters fail the basis axioms.
    NotMatroid { family: SetFamily, witness: Witness },
}

impl BuildOutcome {
    pub fn matroid(self) -> Option<ClusterMatroid> {
        match self {
            BuildOutcome::Matroid(cm) => Some(*cm),
            BuildOutcome::NotMatroid { .. } => None,
        }
    }
}

#[derive(Serialize)]
pub struct ClusterMatroidJson {
    pub elements: Vec<String>,
    pub bases: Vec<Vec<usize>>,
    pub frozen: Vec<usize>,
    pub mode: BuildMode,
    pub finite_type: String,
    pub seed: SeedJson,
}

impl ClusterMatroid {
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn ground(&self) -> &GroundSet {
        self.matroid.ground()
    }

    pub fn frozen(&self) -> ElementSet {
        self.frozen
    }

    pub fn mode(&self) -> BuildMode {
        self.options.mode
    }

    pub fn options(&self) -> BuildOptions {
        self.options
    }

    pub fn finite_type(&self) -> &FiniteType {
        &self.finite_type
    }

    pub fn enumeration(&self) -> &EnumerationResult {
        &self.enumeration
    }

    pub fn initial(&self) -> &Seed {
        self.enumeration.initial()
    }

    /// Ground elements as rational functions, in ground order.
    pub fn functions(&self) -> &[RationalFunction] {
        &self.functions
    }

    /// Independence decisions made while building in algebraic mode.
    pub fn decisions(&self) -> &[CandidateDecision] {
        &self.decisions
    }

    pub fn check_connectivity(&self) -> Connectivity {
        self.matroid.is_connected()
    }

    pub fn to_json(&self) -> ClusterMatroidJson {
        let m = self.matroid.to_json();
        ClusterMatroidJson {
            elements: m.elements,
            bases: m.bases,
            frozen: elements(self.frozen).collect(),
            mode: self.options.mode,
            finite_type: self.finite_type.to_string(),
            seed: self.initial().to_json(),
        }
    }
}

/// Ground labels: sorted cluster-variable texts, then frozen texts in seed
/// order; with the matching functions.
fn ground_of(result: &EnumerationResult) -> (Vec<String>, Vec<RationalFunction>) {
    let init = result.initial();
    let n = init.mutable_count();
    let mut labels: Vec<String> = result.cluster_variable_texts().iter().map(|s| s.to_string()).collect();
    let mut fns: Vec<RationalFunction> = result.cluster_variables().cloned().collect();
    labels.extend(init.cluster_texts().into_iter().skip(n));
    fns.extend(init.frozen().iter().cloned());
    (labels, fns)
}

pub(crate) fn closed_enumeration(initial: &Seed, cap: usize) -> Result<(FiniteType, EnumerationResult), ClusterMatroidError> {
    let ft = is_finite_type(initial.matrix(), cap)?.ok_or(ClusterMatroidError::InfiniteType)?;
    let result = enumerate(initial, cap)?;
    if result.truncated() {
        return Err(ClusterMatroidError::Truncated { cap });
    }
    Ok((ft, result))
}

pub fn build(initial: &Seed, options: BuildOptions) -> Result<BuildOutcome, ClusterMatroidError> {
    let (finite_type, result) = closed_enumeration(initial, options.cap)?;
    let (labels, functions) = ground_of(&result);
    let ground = GroundSet::new(labels)?;
    let n = initial.mutable_count();
    let v = result.variable_count();
    let frozen: ElementSet = set_of(v..ground.len());
    let index: BTreeMap<&str, usize> = ground.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();

    let mut decisions = Vec::new();
    let family_members: Vec<ElementSet> = match options.mode {
        BuildMode::Algebraic => {
            let vars: Vec<usize> = (0..initial.universe().len()).collect();
            let mut bases = Vec::new();
            for s in crate::matroid::subsets_of_size(v, n) {
                let set = s | frozen;
                let fns: Vec<RationalFunction> = elements(set).map(|i| functions[i].clone()).collect();
                let decision = decide(&fns, &vars, options.independence)?;
                decisions.push(CandidateDecision { set, decision });
                if decision.independent {
                    bases.push(set);
                }
            }
            bases
        }
        BuildMode::Cluster => result
            .seeds()
            .iter()
            .map(|s| set_of(s.key.iter().map(|t| index[t.as_str()])) | frozen)
            .collect(),
    };

    let family = SetFamily::new(ground, family_members)?;
    let matroid = match check_basis_axioms(&family) {
        Ok(m) => m,
        Err(witness) => {
            if options.mode == BuildMode::Algebraic {
                // algebraic independence always yields a matroid
                return Err(MatroidError::NotMatroid(witness).into());
            }
            return Ok(BuildOutcome::NotMatroid { family, witness });
        }
    };
    Ok(BuildOutcome::Matroid(Box::new(ClusterMatroid {
        matroid,
        frozen,
        functions,
        options,
        finite_type,
        enumeration: result,
        decisions,
    })))
}

/// Finite types, decomposable ones included, of rank `n` with exactly
/// `count` cluster variables. A frozen-free cluster matroid equal to
/// `U_{n,count}` needs one of these.
pub fn finite_types_with(n: usize, count: usize) -> Vec<FiniteType> {
    let blocks: Vec<DynkinType> = (1..=n).flat_map(DynkinType::all_of_rank).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn walk(
        blocks: &[DynkinType],
        start: usize,
        remaining: usize,
        count: usize,
        current: &mut Vec<DynkinType>,
        out: &mut Vec<FiniteType>,
    ) {
        if remaining == 0 {
            let t = FiniteType(current.clone());
            if t.cluster_variable_count() == count {
                out.push(t);
            }
            return;
        }
        for (i, &b) in blocks.iter().enumerate().skip(start) {
            if b.rank() <= remaining {
                current.push(b);
                walk(blocks, i, remaining - b.rank(), count, current, out);
                current.pop();
            }
        }
    }
    walk(&blocks, 0, n, count, &mut current, &mut out);
    for t in &mut out {
        t.0.sort();
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::ExchangeMatrix;

    fn a(n: usize) -> Seed {
        Seed::initial(ExchangeMatrix::linear_a(n))
    }

    fn sl3() -> Seed {
        Seed::parse_json(r#"{"n":1,"m":3,"B":[[0],[1],[-1]],"variables":["a","b","c"],"cluster":["a","b","a*c-b"]}"#)
            .unwrap()
    }

    #[test]
    fn a2_is_u25_in_both_independence_modes() {
        for independence in [Mode::Exact, Mode::default()] {
            let opts = BuildOptions {
                independence,
                ..BuildOptions::default()
            };
            let cm = build(&a(2), opts).unwrap().matroid().unwrap();
            assert_eq!(cm.matroid().is_uniform(), Some((2, 5)));
            assert_eq!(cm.frozen(), 0);
            assert!(cm.check_connectivity().is_connected());
        }
    }

    #[test]
    fn a2_clusters_fail_exchange() {
        let opts = BuildOptions {
            mode: BuildMode::Cluster,
            ..BuildOptions::default()
        };
        let BuildOutcome::NotMatroid { family, witness } = build(&a(2), opts).unwrap() else {
            panic!("the five clusters are not the bases of a matroid")
        };
        assert_eq!(family.members().len(), 5);
        // clusters sharing a variable always exchange
        for &b1 in family.members() {
            for &b2 in family.members() {
                if b1 & b2 != 0 {
                    for x in elements(b1 & !b2) {
                        assert!(!family.exchange_partners(b1, b2, x).is_empty());
                    }
                }
            }
        }
        let Witness::NoExchange { b1, b2, .. } = witness else { panic!() };
        assert_eq!(b1 & b2, 0);
    }

    #[test]
    fn rank_one_both_modes() {
        for mode in [BuildMode::Algebraic, BuildMode::Cluster] {
            let opts = BuildOptions {
                mode,
                ..BuildOptions::default()
            };
            let cm = build(&sl3(), opts).unwrap().matroid().unwrap();
            assert_eq!(cm.ground().labels(), ["a", "c", "b", "-b+a*c"]);
            let expected = [vec!["a", "b", "-b+a*c"], vec!["c", "b", "-b+a*c"]]
                .iter()
                .map(|b| b.iter().map(|s| s.to_string()).collect())
                .collect();
            assert_eq!(cm.matroid().labeled_bases(), expected);
            assert_eq!(cm.matroid().circuits().len(), 1);
            assert_eq!(cm.matroid().circuits().first(), Some(&0b0011));
            let Connectivity::Disconnected { part, rest } = cm.check_connectivity() else { panic!() };
            assert_eq!((part, rest), (0b0011, 0b1100));
        }
    }

    #[test]
    fn infinite_type_rejected() {
        let kron = Seed::initial(ExchangeMatrix::new(vec![vec![0, 2], vec![-2, 0]], 2).unwrap());
        assert!(matches!(
            build(&kron, BuildOptions::default()),
            Err(ClusterMatroidError::InfiniteType)
        ));
    }

    #[test]
    fn realizable_uniform_parameters() {
        assert_eq!(finite_types_with(3, 5), vec![]);
        assert_eq!(
            finite_types_with(2, 5).iter().map(ToString::to_string).collect::<Vec<_>>(),
            vec!["A2"]
        );
        assert_eq!(
            finite_types_with(2, 4).iter().map(ToString::to_string).collect::<Vec<_>>(),
            vec!["A1xA1"]
        );
        assert_eq!(
            finite_types_with(3, 12).iter().map(ToString::to_string).collect::<Vec<_>>(),
            vec!["B3", "C3"]
        );
    }
}
