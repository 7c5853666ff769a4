use std::collections::BTreeSet;

use super::{ElementSet, Matroid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitKind {
    Circuit,
    Cocircuit,
}

/// A circuit or cocircuit containing both `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub a: usize,
    pub b: usize,
    pub set: ElementSet,
    pub kind: CircuitKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Connectivity {
    /// One witness per unordered pair of distinct elements.
    Connected(Vec<PairWitness>),
    /// The matroid is the direct sum of its restrictions to `part` and `rest`.
    Disconnected { part: ElementSet, rest: ElementSet },
}

impl Connectivity {
    pub fn is_connected(&self) -> bool {
        matches!(self, Connectivity::Connected(_))
    }
}

impl Matroid {
    /// Pairwise circuit/cocircuit test. On failure the split is the
    /// component, under the shared-circuit relation, of the first failing
    /// pair's smaller element.
    pub fn is_connected(&self) -> Connectivity {
        let circuits = self.circuits();
        let cocircuits = self.cocircuits();
        let n = self.len();
        let mut witnesses = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let both = 1u64 << a | 1u64 << b;
                let found = circuits
                    .iter()
                    .find(|&&c| c & both == both)
                    .map(|&set| (set, CircuitKind::Circuit))
                    .or_else(|| {
                        cocircuits
                            .iter()
                            .find(|&&c| c & both == both)
                            .map(|&set| (set, CircuitKind::Cocircuit))
                    });
                match found {
                    Some((set, kind)) => witnesses.push(PairWitness { a, b, set, kind }),
                    None => {
                        let part = component_of(a, &circuits);
                        let rest = self.ground().full() & !part;
                        debug_assert!(is_direct_sum_split(self, part));
                        return Connectivity::Disconnected { part, rest };
                    }
                }
            }
        }
        Connectivity::Connected(witnesses)
    }
}

fn component_of(a: usize, circuits: &BTreeSet<ElementSet>) -> ElementSet {
    let mut comp: ElementSet = 1 << a;
    loop {
        let grown = circuits
            .iter()
            .filter(|&&c| c & comp != 0)
            .fold(comp, |acc, &c| acc | c);
        if grown == comp {
            return comp;
        }
        comp = grown;
    }
}

/// Whether the bases are exactly the unions of a trace on `part` with a
/// trace on its complement, for a nonempty proper `part`.
pub fn is_direct_sum_split(m: &Matroid, part: ElementSet) -> bool {
    let full = m.ground().full();
    let rest = full & !part;
    if part == 0 || rest == 0 || part & !full != 0 {
        return false;
    }
    let on_part: BTreeSet<ElementSet> = m.bases().iter().map(|&b| b & part).collect();
    let on_rest: BTreeSet<ElementSet> = m.bases().iter().map(|&b| b & rest).collect();
    on_part
        .iter()
        .all(|&p| on_rest.iter().all(|&r| m.is_basis(p | r)))
}

/// Exhaustive search for a nontrivial direct-sum split; returns the part
/// containing element 0.
pub fn direct_sum_decomposition(m: &Matroid) -> Option<ElementSet> {
    let n = m.len();
    if n < 2 {
        return None;
    }
    // subsets of 1..n, with element 0 always in the part
    (0..(1u64 << (n - 1)) - 1)
        .map(|s| s << 1 | 1)
        .find(|&part| is_direct_sum_split(m, part))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::GroundSet;

    #[test]
    fn uniform_is_connected() {
        let u25 = Matroid::uniform(2, 5).unwrap();
        let Connectivity::Connected(w) = u25.is_connected() else { panic!() };
        assert_eq!(w.len(), 10);
        for p in &w {
            assert!(p.set >> p.a & 1 == 1 && p.set >> p.b & 1 == 1);
        }
        assert_eq!(direct_sum_decomposition(&u25), None);
    }

    #[test]
    fn single_element_is_connected() {
        assert!(Matroid::uniform(1, 1).unwrap().is_connected().is_connected());
    }

    #[test]
    fn coloop_splits_off() {
        // U_{1,2} plus a coloop on element 3
        let m = Matroid::from_bases(GroundSet::numbered(3).unwrap(), [0b101, 0b110]).unwrap();
        assert_eq!(m.coloops(), 0b100);
        let Connectivity::Disconnected { part, rest } = m.is_connected() else { panic!() };
        assert_eq!((part, rest), (0b011, 0b100));
        assert_eq!(direct_sum_decomposition(&m), Some(0b011));
    }

    #[test]
    fn free_matroid_on_two_elements_is_disconnected() {
        let m = Matroid::uniform(2, 2).unwrap();
        assert!(!m.is_connected().is_connected());
        assert!(is_direct_sum_split(&m, 0b01));
    }
}
