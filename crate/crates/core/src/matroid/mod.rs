//! Matroids on explicit ground sets with bases stored as bitsets.

mod connectivity;
mod ops;

pub use connectivity::{direct_sum_decomposition, is_direct_sum_split, CircuitKind, Connectivity, PairWitness};
pub use ops::{binomial, subsets_of_size};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Subset of a ground set of at most 64 elements.
pub type ElementSet = u64;

pub const MAX_GROUND: usize = 64;

/// Indices of the elements of `s`, ascending.
pub fn elements(s: ElementSet) -> impl Iterator<Item = usize> {
    (0..MAX_GROUND).filter(move |&i| s >> i & 1 == 1)
}

pub fn set_of(indices: impl IntoIterator<Item = usize>) -> ElementSet {
    indices.into_iter().fold(0, |acc, i| acc | 1 << i)
}

fn size(s: ElementSet) -> usize {
    s.count_ones() as usize
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("ground sets overlap in `{0}`")]
    Overlap(String),
    #[error("ground set has {0} elements, at most 64 are supported")]
    TooLarge(usize),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("family is not a matroid: {0}")]
    NotMatroid(Witness),
}

/// Ordered, uniquely labeled ground set. Element ids are positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self, MatroidError> {
        if labels.len() > MAX_GROUND {
            return Err(MatroidError::TooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(MatroidError::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Elements labeled `1..=m`.
    pub fn numbered(m: usize) -> Result<Self, MatroidError> {
        GroundSet::new((1..=m).map(|i| i.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn full(&self) -> ElementSet {
        if self.len() == MAX_GROUND {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn index_of(&self, label: &str) -> Result<usize, MatroidError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| MatroidError::UnknownElement(label.to_string()))
    }

    pub fn set_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet, MatroidError> {
        labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(set_of)
    }

    pub fn labels_of(&self, s: ElementSet) -> Vec<String> {
        elements(s).map(|i| self.labels[i].clone()).collect()
    }
}

/// A family of subsets that need not satisfy the basis axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground: GroundSet,
    members: BTreeSet<ElementSet>,
}

impl SetFamily {
    pub fn new(ground: GroundSet, members: impl IntoIterator<Item = ElementSet>) -> Result<Self, MatroidError> {
        let full = ground.full();
        let members: BTreeSet<ElementSet> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&s| s & !full != 0) {
            let idx = elements(bad & !full).next().expect("nonempty");
            return Err(MatroidError::UnknownElement(format!("#{idx}")));
        }
        Ok(SetFamily { ground, members })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn members(&self) -> &BTreeSet<ElementSet> {
        &self.members
    }

    pub fn contains(&self, s: ElementSet) -> bool {
        self.members.contains(&s)
    }

    /// Elements `y` of `b2 \ b1` with `(b1 - x) + y` in the family.
    pub fn exchange_partners(&self, b1: ElementSet, b2: ElementSet, x: usize) -> Vec<usize> {
        let base = b1 & !(1 << x);
        elements(b2 & !b1).filter(|&y| self.contains(base | 1 << y)).collect()
    }
}

/// Why a family fails the basis axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    EmptyFamily,
    UnequalCardinality { b1: ElementSet, b2: ElementSet },
    NoExchange { b1: ElementSet, b2: ElementSet, x: usize },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::EmptyFamily => write!(f, "the family is empty"),
            Witness::UnequalCardinality { b1, b2 } => {
                write!(f, "members {b1:#b} and {b2:#b} have different sizes")
            }
            Witness::NoExchange { b1, b2, x } => {
                write!(f, "no exchange for element {x} from {b1:#b} into {b2:#b}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessJson {
    EmptyFamily,
    UnequalCardinality { b1: Vec<String>, b2: Vec<String> },
    NoExchange { b1: Vec<String>, b2: Vec<String>, x: String },
}

impl Witness {
    pub fn to_json(&self, ground: &GroundSet) -> WitnessJson {
        match *self {
            Witness::EmptyFamily => WitnessJson::EmptyFamily,
            Witness::UnequalCardinality { b1, b2 } => WitnessJson::UnequalCardinality {
                b1: ground.labels_of(b1),
                b2: ground.labels_of(b2),
            },
            Witness::NoExchange { b1, b2, x } => WitnessJson::NoExchange {
                b1: ground.labels_of(b1),
                b2: ground.labels_of(b2),
                x: ground.label(x).to_string(),
            },
        }
    }
}

/// Validates the basis axioms. Pairs are scanned in ascending order so the
/// witness is deterministic.
pub fn check_basis_axioms(f: &SetFamily) -> Result<Matroid, Witness> {
    let members: Vec<ElementSet> = f.members.iter().copied().collect();
    let Some(&first) = members.first() else {
        return Err(Witness::EmptyFamily);
    };
    if let Some(&b) = members.iter().find(|&&b| size(b) != size(first)) {
        return Err(Witness::UnequalCardinality { b1: first, b2: b });
    }
    for &b1 in &members {
        for &b2 in &members {
            for x in elements(b1 & !b2) {
                if f.exchange_partners(b1, b2, x).is_empty() {
                    return Err(Witness::NoExchange { b1, b2, x });
                }
            }
        }
    }
    Ok(Matroid {
        ground: f.ground.clone(),
        rank: size(first),
        bases: f.members.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    ground: GroundSet,
    bases: BTreeSet<ElementSet>,
    rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub elements: Vec<String>,
    pub bases: Vec<Vec<usize>>,
}

impl Matroid {
    pub fn from_bases(ground: GroundSet, bases: impl IntoIterator<Item = ElementSet>) -> Result<Self, MatroidError> {
        let f = SetFamily::new(ground, bases)?;
        check_basis_axioms(&f).map_err(MatroidError::NotMatroid)
    }

    /// Trusted constructor for operations that preserve the axioms.
    pub(crate) fn from_bases_unchecked(ground: GroundSet, bases: BTreeSet<ElementSet>) -> Self {
        let rank = bases.first().map_or(0, |&b| size(b));
        debug_assert!(!bases.is_empty());
        Matroid { ground, bases, rank }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &BTreeSet<ElementSet> {
        &self.bases
    }

    pub fn is_basis(&self, s: ElementSet) -> bool {
        self.bases.contains(&s)
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.bases.iter().any(|&b| s & !b == 0)
    }

    pub fn rank_of(&self, s: ElementSet) -> usize {
        self.bases.iter().map(|&b| size(b & s)).max().unwrap_or(0)
    }

    /// Elements in every basis.
    pub fn coloops(&self) -> ElementSet {
        self.bases.iter().fold(self.ground.full(), |acc, &b| acc & b)
    }

    /// Elements in no basis.
    pub fn loops(&self) -> ElementSet {
        self.ground.full() & !self.bases.iter().fold(0, |acc, &b| acc | b)
    }

    /// Bases as sets of labels, for comparisons across ground orderings.
    pub fn labeled_bases(&self) -> BTreeSet<BTreeSet<String>> {
        self.bases
            .iter()
            .map(|&b| self.ground.labels_of(b).into_iter().collect())
            .collect()
    }

    pub fn to_json(&self) -> MatroidJson {
        MatroidJson {
            elements: self.ground.labels.clone(),
            bases: self.bases.iter().map(|&b| elements(b).collect()).collect(),
        }
    }

    pub fn from_json(j: &MatroidJson) -> Result<Matroid, MatroidError> {
        let ground = GroundSet::new(j.elements.clone())?;
        let mut sets = Vec::with_capacity(j.bases.len());
        for b in &j.bases {
            if let Some(&i) = b.iter().find(|&&i| i >= ground.len()) {
                return Err(MatroidError::UnknownElement(format!("#{i}")));
            }
            sets.push(set_of(b.iter().copied()));
        }
        Matroid::from_bases(ground, sets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(m: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(
            GroundSet::numbered(m).unwrap(),
            sets.iter().map(|s| set_of(s.iter().copied())),
        )
        .unwrap()
    }

    #[test]
    fn axioms() {
        let u23 = check_basis_axioms(&fam(3, &[&[0, 1], &[0, 2], &[1, 2]])).unwrap();
        assert_eq!(u23.rank(), 2);
        assert_eq!(check_basis_axioms(&fam(3, &[])), Err(Witness::EmptyFamily));
        assert!(matches!(
            check_basis_axioms(&fam(3, &[&[0], &[1, 2]])),
            Err(Witness::UnequalCardinality { .. })
        ));
        // {0,1},{2,3}: removing 0 from the first admits neither 2 nor 3
        let w = check_basis_axioms(&fam(4, &[&[0, 1], &[2, 3]])).unwrap_err();
        let Witness::NoExchange { b1, b2, x } = w else { panic!() };
        assert!(fam(4, &[&[0, 1], &[2, 3]]).exchange_partners(b1, b2, x).is_empty());
    }

    #[test]
    fn json_round_trip() {
        let m = check_basis_axioms(&fam(3, &[&[0, 1], &[0, 2], &[1, 2]])).unwrap();
        let text = serde_json::to_string(&m.to_json()).unwrap();
        let back: MatroidJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Matroid::from_json(&back).unwrap(), m);
        let bad = MatroidJson {
            elements: vec!["a".into()],
            bases: vec![vec![3]],
        };
        assert!(matches!(Matroid::from_json(&bad), Err(MatroidError::UnknownElement(_))));
    }

    #[test]
    fn ground_set_validation() {
        assert!(matches!(
            GroundSet::new(vec!["a".into(), "a".into()]),
            Err(MatroidError::DuplicateLabel(_))
        ));
        assert!(matches!(GroundSet::numbered(65), Err(MatroidError::TooLarge(65))));
        assert_eq!(GroundSet::numbered(64).unwrap().full(), u64::MAX);
    }

    #[test]
    fn witness_json_shape() {
        let g = GroundSet::numbered(4).unwrap();
        let w = Witness::NoExchange {
            b1: 0b11,
            b2: 0b1100,
            x: 0,
        };
        let v = serde_json::to_value(w.to_json(&g)).unwrap();
        assert_eq!(v["kind"], "no_exchange");
        assert_eq!(v["x"], "1");
        assert_eq!(v["b2"], serde_json::json!(["3", "4"]));
    }
}
