use std::collections::BTreeMap;

use crate::matroid::{ElementSet, Matroid, MatroidError};
use crate::seed::Seed;

use super::{build, BuildOutcome, ClusterMatroid, ClusterMatroidError};

/// Result of removing a frozen variable `e` from the initial seed.
#[derive(Clone, Debug)]
pub struct FrozenContraction {
    /// Cluster matroid of the seed without `e` and its matrix row.
    pub rebuilt: ClusterMatroid,
    /// `M / e` computed in the matroid kernel.
    pub contracted: Matroid,
    /// `M \ e` computed in the matroid kernel.
    pub deleted: Matroid,
    /// Old ground label to rebuilt ground label, matched along mutation
    /// paths.
    pub label_map: BTreeMap<String, String>,
    /// `rebuilt` written in the labels of `contracted`.
    pub relabeled: Matroid,
    pub matches_contract: bool,
    pub matches_delete: bool,
}

#[derive(Clone, Debug)]
pub struct MutableContraction {
    pub element: usize,
    pub contracted: Matroid,
    /// `{B - e : e in B}` computed directly.
    pub direct: Option<Matroid>,
    /// Number of seeds whose cluster contains the element.
    pub cluster_count: usize,
}

pub fn contract_frozen(cm: &ClusterMatroid, label: &str) -> Result<FrozenContraction, ClusterMatroidError> {
    let ground = cm.ground();
    let e = ground.index_of(label)?;
    if cm.frozen() >> e & 1 == 0 {
        return Err(ClusterMatroidError::NotFrozen(label.to_string()));
    }
    let init = cm.initial();
    let n = init.mutable_count();
    let v = cm.enumeration().variable_count();
    let row = n + (e - v);
    let matrix = init.matrix().without_row(row);
    let mut cluster = init.cluster().to_vec();
    cluster.remove(row);
    let seed = Seed::new(matrix, cluster, init.universe().clone())?;
    let rebuilt = match build(&seed, cm.options())? {
        BuildOutcome::Matroid(r) => *r,
        BuildOutcome::NotMatroid { witness, .. } => return Err(MatroidError::NotMatroid(witness).into()),
    };

    let label_map = path_bijection(cm, &rebuilt, label)?;
    let bit: ElementSet = 1 << e;
    let contracted = cm.matroid().contract(bit)?;
    let deleted = cm.matroid().delete(bit)?;
    let back: BTreeMap<&str, &str> = label_map.iter().map(|(o, r)| (r.as_str(), o.as_str())).collect();
    let relabeled_bases = rebuilt
        .matroid()
        .bases()
        .iter()
        .map(|&b| {
            let old: Vec<&str> = rebuilt.ground().labels_of(b).iter().map(|l| back[l.as_str()]).collect();
            contracted.ground().set_of_labels(&old)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let relabeled = Matroid::from_bases(contracted.ground().clone(), relabeled_bases)?;
    Ok(FrozenContraction {
        matches_contract: relabeled == contracted,
        matches_delete: relabeled == deleted,
        rebuilt,
        contracted,
        deleted,
        label_map,
        relabeled,
    })
}

/// Pairs each ground label of `cm` other than `removed` with a ground label
/// of `rebuilt`: frozen variables by text, cluster variables by position
/// after replaying the same mutation path in both seeds.
fn path_bijection(cm: &ClusterMatroid, rebuilt: &ClusterMatroid, removed: &str) -> Result<BTreeMap<String, String>, ClusterMatroidError> {
    let n = cm.initial().mutable_count();
    let mut map = BTreeMap::new();
    for s in cm.enumeration().seeds() {
        let old = s.seed.cluster_texts();
        let new = rebuilt.initial().mutate_path(&s.path)?.cluster_texts();
        for k in 0..n {
            if let Some(prev) = map.insert(old[k].clone(), new[k].clone()) {
                if prev != new[k] {
                    return Err(ClusterMatroidError::InconsistentRelabeling(format!(
                        "`{}` maps to both `{prev}` and `{}`",
                        old[k], new[k]
                    )));
                }
            }
        }
    }
    for i in cm.enumeration().variable_count()..cm.ground().len() {
        let l = cm.ground().label(i);
        if l != removed {
            map.insert(l.to_string(), l.to_string());
        }
    }
    let mut targets: Vec<&String> = map.values().collect();
    targets.sort();
    targets.dedup();
    let mut expected: Vec<&String> = rebuilt.ground().labels().iter().collect();
    expected.sort();
    if targets != expected {
        return Err(ClusterMatroidError::InconsistentRelabeling(format!(
            "images {targets:?} differ from the rebuilt ground {expected:?}"
        )));
    }
    Ok(map)
}

pub fn contract_mutable(cm: &ClusterMatroid, label: &str) -> Result<MutableContraction, ClusterMatroidError> {
    let e = cm.ground().index_of(label)?;
    if cm.frozen() >> e & 1 == 1 {
        return Err(ClusterMatroidError::NotMutable(label.to_string()));
    }
    Ok(MutableContraction {
        element: e,
        contracted: cm.matroid().contract(1 << e)?,
        direct: cm.matroid().contract_element_direct(e),
        cluster_count: cm.enumeration().seeds_containing(label),
    })
}
