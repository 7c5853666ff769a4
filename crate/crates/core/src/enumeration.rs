//! Breadth-first enumeration of mutation classes.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use crate::graph::{Edge, Graph};
use crate::poly::RationalFunction;
use crate::seed::{cartan_counterpart, classify_cartan, ExchangeMatrix, FiniteType, Seed, SeedError};

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error("cluster {{{}}} occurs with two different exchange matrices", cluster.join(", "))]
    InconsistentSeed { cluster: Vec<String> },
    #[error("finite type undecided after exploring {explored} matrices")]
    Undecided { explored: usize },
    #[error("cap must be positive")]
    ZeroCap,
}

/// One vertex of the exchange graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedSeed {
    /// Labeled seed as first reached.
    pub seed: Seed,
    /// Sorted canonical texts of the mutable variables.
    pub key: Vec<String>,
    /// Matrix with mutable positions permuted into `key` order.
    pub canonical_matrix: ExchangeMatrix,
    /// Mutation sequence from the initial seed reaching `seed`.
    pub path: Vec<usize>,
}

impl EnumeratedSeed {
    fn from_seed(seed: Seed, path: Vec<usize>) -> Self {
        let (key, canonical_matrix) = canonical_form(&seed);
        EnumeratedSeed {
            seed,
            key,
            canonical_matrix,
            path,
        }
    }

    /// Texts of the full extended cluster with mutable entries in key order.
    pub fn extended_key(&self) -> Vec<String> {
        let mut out = self.key.clone();
        out.extend(
            self.seed
                .frozen()
                .iter()
                .map(|f| self.seed.universe().format(f)),
        );
        out
    }
}

/// Sorted mutable texts and the matrix permuted to match.
pub fn canonical_form(seed: &Seed) -> (Vec<String>, ExchangeMatrix) {
    let n = seed.mutable_count();
    let texts = seed.cluster_texts();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&a, &b| texts[a].cmp(&texts[b]));
    let key = perm.iter().map(|&i| texts[i].clone()).collect();
    (key, seed.matrix().permute_mutable(&perm))
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    initial: Seed,
    seeds: Vec<EnumeratedSeed>,
    variables: Vec<(String, RationalFunction)>,
    graph: Graph,
    truncated: bool,
}

impl EnumerationResult {
    pub fn initial(&self) -> &Seed {
        &self.initial
    }

    /// Seeds sorted by key; index `i` is vertex `i` of the graph.
    pub fn seeds(&self) -> &[EnumeratedSeed] {
        &self.seeds
    }

    /// Distinct mutable cluster variables, sorted by canonical text.
    pub fn cluster_variables(&self) -> impl Iterator<Item = &RationalFunction> {
        self.variables.iter().map(|(_, f)| f)
    }

    pub fn cluster_variable_texts(&self) -> Vec<&str> {
        self.variables.iter().map(|(t, _)| t.as_str()).collect()
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Number of seeds whose cluster contains the variable with this text.
    pub fn seeds_containing(&self, text: &str) -> usize {
        self.seeds
            .iter()
            .filter(|s| s.key.iter().any(|k| k == text))
            .count()
    }

    pub fn seed_index(&self, key: &[String]) -> Option<usize> {
        self.seeds.binary_search_by(|s| s.key.as_slice().cmp(key)).ok()
    }
}

/// Closure of `initial` under mutation, deduplicating seeds by canonical
/// form. Stops adding seeds once `cap` are known and reports truncation.
pub fn enumerate(initial: &Seed, cap: usize) -> Result<EnumerationResult, EnumerationError> {
    if cap == 0 {
        return Err(EnumerationError::ZeroCap);
    }
    let n = initial.mutable_count();
    let mut found: Vec<EnumeratedSeed> = vec![EnumeratedSeed::from_seed(initial.clone(), Vec::new())];
    let mut index: BTreeMap<Vec<String>, usize> = BTreeMap::from([(found[0].key.clone(), 0)]);
    let mut raw_edges: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let mut frontier = vec![0usize];
    let mut truncated = false;

    while !frontier.is_empty() {
        frontier.sort_by(|&a, &b| found[a].key.cmp(&found[b].key));
        let mut next = Vec::new();
        for &v in &frontier {
            for k in 0..n {
                let s = found[v].seed.mutate(k)?;
                let mut path = found[v].path.clone();
                path.push(k);
                let cand = EnumeratedSeed::from_seed(s, path);
                let w = match index.get(&cand.key) {
                    Some(&w) => {
                        if found[w].canonical_matrix != cand.canonical_matrix {
                            return Err(EnumerationError::InconsistentSeed { cluster: cand.key });
                        }
                        w
                    }
                    None if found.len() >= cap => {
                        truncated = true;
                        continue;
                    }
                    None => {
                        let w = found.len();
                        index.insert(cand.key.clone(), w);
                        found.push(cand);
                        next.push(w);
                        w
                    }
                };
                raw_edges.insert((v, k, w));
            }
        }
        frontier = next;
    }

    // renumber vertices in key order
    let order: Vec<usize> = index.values().copied().collect();
    let mut new_id = vec![0; found.len()];
    for (new, &old) in order.iter().enumerate() {
        new_id[old] = new;
    }
    let mut slots: Vec<Option<EnumeratedSeed>> = found.into_iter().map(Some).collect();
    let seeds: Vec<EnumeratedSeed> = order.iter().map(|&o| slots[o].take().expect("unique")).collect();

    let edges = raw_edges
        .into_iter()
        .map(|(v, k, w)| {
            let (a, b) = (new_id[v], new_id[w]);
            let sa = &seeds[a];
            let removed = sa.seed.universe().format(&sa.seed.cluster()[k]);
            let added = seeds[b]
                .key
                .iter()
                .find(|t| !sa.key.contains(t))
                .cloned()
                .expect("mutation changes exactly one variable");
            Edge {
                source: a,
                target: b,
                removed,
                added,
            }
        })
        .collect();
    let labels = seeds.iter().map(|s| s.key.join(", ")).collect();
    let graph = Graph::new(labels, edges);

    let mut vars: BTreeMap<String, RationalFunction> = BTreeMap::new();
    for s in &seeds {
        for (i, f) in s.seed.cluster()[..n].iter().enumerate() {
            vars.entry(s.seed.cluster_texts()[i].clone()).or_insert_with(|| f.clone());
        }
    }

    Ok(EnumerationResult {
        initial: initial.clone(),
        seeds,
        variables: vars.into_iter().collect(),
        graph,
        truncated,
    })
}

/// Explores the mutation class of the top block of `b` and returns the
/// type of the first matrix whose Cartan counterpart is of finite type,
/// `None` if the class closes without one.
pub fn is_finite_type(b: &ExchangeMatrix, cap: usize) -> Result<Option<FiniteType>, EnumerationError> {
    if cap == 0 {
        return Err(EnumerationError::ZeroCap);
    }
    let n = b.mutable_count();
    let top = ExchangeMatrix::new(b.principal_part(), n)?;
    let mut seen: HashSet<ExchangeMatrix> = HashSet::from([top.clone()]);
    let mut frontier = vec![top];
    while !frontier.is_empty() {
        frontier.sort();
        let mut next = Vec::new();
        for m in &frontier {
            if let Some(t) = classify_cartan(&cartan_counterpart(m)) {
                return Ok(Some(t));
            }
            for k in 0..n {
                let mu = m.mutate(k)?;
                if seen.contains(&mu) {
                    continue;
                }
                if seen.len() >= cap {
                    return Err(EnumerationError::Undecided { explored: seen.len() });
                }
                seen.insert(mu.clone());
                next.push(mu);
            }
        }
        frontier = next;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear_a(n: usize) -> ExchangeMatrix {
        ExchangeMatrix::linear_a(n)
    }

    #[test]
    fn a1() {
        let r = enumerate(&Seed::initial(linear_a(1)), DEFAULT_CAP).unwrap();
        assert_eq!(r.cluster_variable_texts(), vec!["(2)/(x1)", "x1"]);
        assert_eq!(r.seeds().len(), 2);
        assert_eq!(r.graph().edge_count(), 1);
        assert!(!r.truncated());
    }

    #[test]
    fn a2_pentagon() {
        let r = enumerate(&Seed::initial(linear_a(2)), DEFAULT_CAP).unwrap();
        let mut expected = vec!["x1", "x2", "(1+x2)/(x1)", "(1+x1+x2)/(x1*x2)", "(1+x1)/(x2)"];
        expected.sort_unstable();
        assert_eq!(r.cluster_variable_texts(), expected);
        assert_eq!(r.seeds().len(), 5);
        assert_eq!(r.graph().edge_count(), 5);
        assert_eq!(r.graph().regular_degree(), Some(2));
        assert!(r.graph().is_connected());
    }

    #[test]
    fn paths_reproduce_seeds() {
        let init = Seed::initial(linear_a(3));
        let r = enumerate(&init, DEFAULT_CAP).unwrap();
        assert_eq!((r.variable_count(), r.seeds().len()), (9, 14));
        for s in r.seeds() {
            assert_eq!(init.mutate_path(&s.path).unwrap(), s.seed);
        }
    }

    #[test]
    fn edge_labels_name_the_exchanged_pair() {
        let r = enumerate(&Seed::initial(linear_a(2)), DEFAULT_CAP).unwrap();
        for e in r.graph().edges() {
            let a = &r.seeds()[e.source].key;
            let b = &r.seeds()[e.target].key;
            assert!(a.contains(&e.removed) && !b.contains(&e.removed));
            assert!(b.contains(&e.added) && !a.contains(&e.added));
        }
    }

    #[test]
    fn cap_truncates() {
        let r = enumerate(&Seed::initial(linear_a(3)), 5).unwrap();
        assert!(r.truncated());
        assert_eq!(r.seeds().len(), 5);
    }

    #[test]
    fn finite_type_detection() {
        assert_eq!(is_finite_type(&linear_a(2), 100).unwrap().unwrap().to_string(), "A2");
        assert_eq!(is_finite_type(&linear_a(1), 100).unwrap().unwrap().to_string(), "A1");
        // the Kronecker matrix only ever mutates to its negative
        let kron = ExchangeMatrix::new(vec![vec![0, 2], vec![-2, 0]], 2).unwrap();
        assert_eq!(is_finite_type(&kron, 1000).unwrap(), None);
        // oriented 3-cycle is mutation equivalent to linear A3
        let cyc = ExchangeMatrix::new(vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]], 3).unwrap();
        assert_eq!(is_finite_type(&cyc, 100).unwrap().unwrap().to_string(), "A3");
        // Markov quiver: mutation class {B, -B}, infinite type
        let markov = ExchangeMatrix::new(vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]], 3).unwrap();
        assert_eq!(is_finite_type(&markov, 1000).unwrap(), None);
    }

    #[test]
    fn undecided_at_cap() {
        // affine A2 orientation with a long chain: infinite type, class infinite
        let b = ExchangeMatrix::new(vec![vec![0, 3, 0], vec![-3, 0, 3], vec![0, -3, 0]], 3).unwrap();
        assert!(matches!(is_finite_type(&b, 50), Err(EnumerationError::Undecided { .. })));
    }
}
