use std::collections::BTreeSet;

use super::{elements, size, ElementSet, GroundSet, Matroid, MatroidError, MAX_GROUND};

const MAX_BASES: u128 = 1 << 22;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `k`-subsets of `0..m` in increasing numeric order.
pub fn subsets_of_size(m: usize, k: usize) -> Vec<ElementSet> {
    if k > m {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let limit: u128 = 1u128 << m;
    let mut out = Vec::new();
    let mut s: u128 = (1u128 << k) - 1;
    while s < limit {
        out.push(s as ElementSet);
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

/// Re-indexes `s` onto the elements of `keep`, in order.
fn compress(s: ElementSet, keep: ElementSet) -> ElementSet {
    elements(keep)
        .enumerate()
        .filter(|&(_, old)| s >> old & 1 == 1)
        .fold(0, |acc, (new, _)| acc | 1 << new)
}

impl Matroid {
    /// `U_{n,m}` on elements labeled `1..=m`.
    pub fn uniform(n: usize, m: usize) -> Result<Matroid, MatroidError> {
        if n > m || m == 0 {
            return Err(MatroidError::InvalidParameters(format!("U_{{{n},{m}}} requires 0 <= n <= m, m >= 1")));
        }
        if m > MAX_GROUND {
            return Err(MatroidError::TooLarge(m));
        }
        if binomial(m, n) > MAX_BASES {
            return Err(MatroidError::InvalidParameters(format!("U_{{{n},{m}}} has too many bases")));
        }
        let ground = GroundSet::numbered(m)?;
        Ok(Matroid::from_bases_unchecked(ground, subsets_of_size(m, n).into_iter().collect()))
    }

    /// Cycle matroid of a multigraph on `vertex_count` vertices. Edge `i` is
    /// labeled `e{i+1}`.
    pub fn graphic(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Matroid, MatroidError> {
        if edges.len() > MAX_GROUND {
            return Err(MatroidError::TooLarge(edges.len()));
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertex_count || v >= vertex_count) {
            return Err(MatroidError::InvalidParameters(format!("edge ({u},{v}) leaves the vertex set")));
        }
        let acyclic = |s: ElementSet| {
            let mut parent: Vec<usize> = (0..vertex_count).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            elements(s).all(|e| {
                let (a, b) = (find(&mut parent, edges[e].0), find(&mut parent, edges[e].1));
                parent[a] = b;
                a != b
            })
        };
        let all = if edges.is_empty() { 0 } else { u64::MAX >> (64 - edges.len()) };
        let mut rank = 0;
        // greedy spanning forest gives the rank
        let mut forest: ElementSet = 0;
        for e in elements(all) {
            if acyclic(forest | 1 << e) {
                forest |= 1 << e;
                rank += 1;
            }
        }
        let bases = subsets_of_size(edges.len(), rank).into_iter().filter(|&s| acyclic(s)).collect();
        let ground = GroundSet::new((1..=edges.len()).map(|i| format!("e{i}")).collect())?;
        Ok(Matroid::from_bases_unchecked(ground, bases))
    }

    /// Bases are the complements of the bases of `self`.
    pub fn dual(&self) -> Matroid {
        let full = self.ground.full();
        Matroid::from_bases_unchecked(self.ground.clone(), self.bases.iter().map(|&b| full & !b).collect())
    }

    /// Restriction to the complement of `x`: bases are the maximal
    /// intersections of bases with `E \ x`.
    pub fn delete(&self, x: ElementSet) -> Result<Matroid, MatroidError> {
        let full = self.ground.full();
        if x & !full != 0 {
            let i = elements(x & !full).next().expect("nonempty");
            return Err(MatroidError::UnknownElement(format!("#{i}")));
        }
        let keep = full & !x;
        let r = self.rank_of(keep);
        let bases = self
            .bases
            .iter()
            .map(|&b| b & keep)
            .filter(|&s| size(s) == r)
            .map(|s| compress(s, keep))
            .collect();
        let ground = GroundSet::new(self.ground.labels_of(keep))?;
        Ok(Matroid::from_bases_unchecked(ground, bases))
    }

    /// Contraction computed as the dual of the deletion from the dual.
    pub fn contract(&self, x: ElementSet) -> Result<Matroid, MatroidError> {
        Ok(self.dual().delete(x)?.dual())
    }

    pub fn delete_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Matroid, MatroidError> {
        self.delete(self.ground.set_of_labels(labels)?)
    }

    pub fn contract_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Matroid, MatroidError> {
        self.contract(self.ground.set_of_labels(labels)?)
    }

    /// Direct formula `{B - e : e in B}` for contracting one element that
    /// lies in some basis. `None` if `e` is a loop.
    pub fn contract_element_direct(&self, e: usize) -> Option<Matroid> {
        let bit = 1u64 << e;
        let keep = self.ground.full() & !bit;
        let bases: BTreeSet<ElementSet> = self
            .bases
            .iter()
            .filter(|&&b| b & bit != 0)
            .map(|&b| compress(b & !bit, keep))
            .collect();
        if bases.is_empty() {
            return None;
        }
        let ground = GroundSet::new(self.ground.labels_of(keep)).expect("subset of valid ground");
        Some(Matroid::from_bases_unchecked(ground, bases))
    }

    /// Minimal dependent sets, obtained as fundamental circuits.
    pub fn circuits(&self) -> BTreeSet<ElementSet> {
        let full = self.ground.full();
        let mut out = BTreeSet::new();
        for &b in &self.bases {
            for e in elements(full & !b) {
                let c = elements(b)
                    .filter(|&f| self.bases.contains(&(b & !(1 << f) | 1 << e)))
                    .fold(1u64 << e, |acc, f| acc | 1 << f);
                out.insert(c);
            }
        }
        out
    }

    pub fn cocircuits(&self) -> BTreeSet<ElementSet> {
        self.dual().circuits()
    }

    /// Brute-force circuits: dependent sets all of whose proper subsets are
    /// independent. Exponential; for cross-checking on small ground sets.
    pub fn circuits_brute_force(&self) -> BTreeSet<ElementSet> {
        let m = self.len();
        let mut out = BTreeSet::new();
        for k in 1..=m {
            for s in subsets_of_size(m, k) {
                if !self.is_independent(s) && elements(s).all(|e| self.is_independent(s & !(1 << e))) {
                    out.insert(s);
                }
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        if let Some(l) = other.ground.labels().iter().find(|l| self.ground.labels().contains(l)) {
            return Err(MatroidError::Overlap(l.clone()));
        }
        let shift = self.len();
        if shift + other.len() > MAX_GROUND {
            return Err(MatroidError::TooLarge(shift + other.len()));
        }
        let labels = self.ground.labels().iter().chain(other.ground.labels()).cloned().collect();
        let bases = self
            .bases
            .iter()
            .flat_map(|&b1| other.bases.iter().map(move |&b2| b1 | b2 << shift))
            .collect();
        Ok(Matroid::from_bases_unchecked(GroundSet::new(labels)?, bases))
    }

    /// `(rank, size)` when every rank-subset is a basis.
    pub fn is_uniform(&self) -> Option<(usize, usize)> {
        (self.bases.len() as u128 == binomial(self.len(), self.rank)).then_some((self.rank, self.len()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::set_of;

    #[test]
    fn uniform_constructor() {
        assert_eq!(Matroid::uniform(2, 5).unwrap().bases().len(), 10);
        let u03 = Matroid::uniform(0, 3).unwrap();
        assert_eq!(u03.bases().iter().copied().collect::<Vec<_>>(), vec![0]);
        assert_eq!(Matroid::uniform(3, 3).unwrap().bases().iter().copied().collect::<Vec<_>>(), vec![0b111]);
        assert!(matches!(Matroid::uniform(4, 3), Err(MatroidError::InvalidParameters(_))));
        assert_eq!(Matroid::uniform(3, 4).unwrap().is_uniform(), Some((3, 4)));
    }

    #[test]
    fn dual_of_uniform() {
        assert_eq!(Matroid::uniform(2, 5).unwrap().dual(), Matroid::uniform(3, 5).unwrap());
        assert_eq!(Matroid::uniform(3, 3).unwrap().dual(), Matroid::uniform(0, 3).unwrap());
    }

    #[test]
    fn deletion_examples() {
        let u25 = Matroid::uniform(2, 5).unwrap();
        assert_eq!(u25.delete(set_of([4])).unwrap(), Matroid::uniform(2, 4).unwrap());
        assert_eq!(u25.delete(0).unwrap(), u25);
        let d = Matroid::uniform(2, 3).unwrap().delete(set_of([0, 1])).unwrap();
        assert_eq!(d.ground().labels(), ["3"]);
        assert_eq!(d.rank(), 1);
        assert!(matches!(u25.delete(1 << 7), Err(MatroidError::UnknownElement(_))));
    }

    #[test]
    fn contraction_examples() {
        let u25 = Matroid::uniform(2, 5).unwrap();
        let c = u25.contract(set_of([0])).unwrap();
        assert_eq!(c.is_uniform(), Some((1, 4)));
        assert_eq!(c.ground().labels(), ["2", "3", "4", "5"]);
        assert_eq!(Some(c), u25.contract_element_direct(0));
        assert_eq!(u25.contract(0).unwrap(), u25);
    }

    #[test]
    fn contraction_of_a_loop_keeps_rank() {
        // element 3 is a loop
        let m = Matroid::from_bases(GroundSet::numbered(3).unwrap(), [0b01, 0b10]).unwrap();
        assert_eq!(m.loops(), 0b100);
        let c = m.contract(0b100).unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(m.contract_element_direct(2), None);
    }

    #[test]
    fn circuit_examples() {
        let u25 = Matroid::uniform(2, 5).unwrap();
        let c = u25.circuits();
        assert_eq!(c.len(), 10);
        assert!(c.iter().all(|s| s.count_ones() == 3));
        assert!(Matroid::uniform(3, 3).unwrap().circuits().is_empty());
        assert_eq!(c, u25.circuits_brute_force());
    }

    #[test]
    fn direct_sums() {
        let u11 = Matroid::uniform(1, 1).unwrap();
        assert!(matches!(u11.direct_sum(&u11), Err(MatroidError::Overlap(_))));
        let renamed = Matroid::from_bases(GroundSet::new(vec!["b".into()]).unwrap(), [1]).unwrap();
        let free = u11.direct_sum(&renamed).unwrap();
        assert_eq!(free.bases().len(), 1);
        assert_eq!(free.rank(), 2);

        let u12 = Matroid::uniform(1, 2).unwrap();
        let other = Matroid::from_bases(GroundSet::new(vec!["c".into(), "d".into()]).unwrap(), [1, 2]).unwrap();
        let s = u12.direct_sum(&other).unwrap();
        assert_eq!(s.bases().len(), 4);
        assert!(s.bases().iter().all(|b| b.count_ones() == 2));
    }

    #[test]
    fn graphic_triangle_is_u23() {
        let g = Matroid::graphic(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.is_uniform(), Some((2, 3)));
        let with_loop = Matroid::graphic(2, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(with_loop.loops(), 0b10);
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(subsets_of_size(3, 0), vec![0]);
        assert!(subsets_of_size(2, 3).is_empty());
        assert_eq!(subsets_of_size(64, 64), vec![u64::MAX]);
        assert_eq!(binomial(6, 3), 20);
    }
}
