//! Diagonals, triangulations and flips of a convex polygon with vertices
//! `1..=p` in clockwise order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::enumeration::{enumerate, EnumerationError, EnumerationResult, DEFAULT_CAP};
use crate::graph::{Edge, Graph};
use crate::matroid::{GroundSet, SetFamily};
use crate::poly::Universe;
use crate::seed::{ExchangeMatrix, Seed};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("polygon needs at least {min} vertices, got {p}")]
    TooSmall { p: u32, min: u32 },
    #[error("({i},{j}) is not a diagonal of the {p}-gon")]
    NotADiagonal { p: u32, i: u32, j: u32 },
    #[error("diagonal {0} is not in the triangulation")]
    NotInTriangulation(Diagonal),
    #[error("not a triangulation: {0}")]
    NotATriangulation(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

/// Endpoints `i < j`, never a side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal {
    i: u32,
    j: u32,
}

impl Diagonal {
    pub fn new(p: u32, a: u32, b: u32) -> Result<Diagonal, PolygonError> {
        let (i, j) = (a.min(b), a.max(b));
        if i < 1 || j > p || j - i < 2 || (i == 1 && j == p) {
            return Err(PolygonError::NotADiagonal { p, i: a, j: b });
        }
        Ok(Diagonal { i, j })
    }

    pub fn endpoints(self) -> (u32, u32) {
        (self.i, self.j)
    }

    /// `P14` style label; endpoints are separated by `_` from 10 vertices on.
    pub fn label(self) -> String {
        if self.j < 10 {
            format!("P{}{}", self.i, self.j)
        } else {
            format!("P{}_{}", self.i, self.j)
        }
    }

    /// Whether the endpoints strictly interleave.
    pub fn crosses(self, other: Diagonal) -> bool {
        let inside = |v: u32| self.i < v && v < self.j;
        let outside = |v: u32| v < self.i || v > self.j;
        (inside(other.i) && outside(other.j)) || (outside(other.i) && inside(other.j))
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.i, self.j)
    }
}

pub fn all_diagonals(p: u32) -> Vec<Diagonal> {
    (1..=p)
        .flat_map(|i| (i + 2..=p).map(move |j| (i, j)))
        .filter_map(|(i, j)| Diagonal::new(p, i, j).ok())
        .collect()
}

/// `p - 3` pairwise non-crossing diagonals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangulation {
    p: u32,
    diagonals: BTreeSet<Diagonal>,
}

impl Triangulation {
    pub fn new(p: u32, diagonals: impl IntoIterator<Item = Diagonal>) -> Result<Self, PolygonError> {
        if p < 3 {
            return Err(PolygonError::TooSmall { p, min: 3 });
        }
        let diagonals: BTreeSet<Diagonal> = diagonals.into_iter().collect();
        if let Some(d) = diagonals.iter().find(|d| d.j > p) {
            return Err(PolygonError::NotADiagonal { p, i: d.i, j: d.j });
        }
        if diagonals.len() != p as usize - 3 {
            return Err(PolygonError::NotATriangulation(format!(
                "{} diagonals, a triangulation of the {p}-gon has {}",
                diagonals.len(),
                p - 3
            )));
        }
        for a in &diagonals {
            if let Some(b) = diagonals.iter().find(|b| a.crosses(**b)) {
                return Err(PolygonError::NotATriangulation(format!("{a} crosses {b}")));
            }
        }
        Ok(Triangulation { p, diagonals })
    }

    pub fn polygon_size(&self) -> u32 {
        self.p
    }

    pub fn diagonals(&self) -> &BTreeSet<Diagonal> {
        &self.diagonals
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.contains(&d)
    }

    /// Sorted `i-j` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.diagonals.iter().map(ToString::to_string).collect()
    }

    fn is_edge(&self, a: u32, b: u32) -> bool {
        let (i, j) = (a.min(b), a.max(b));
        j - i == 1 || (i == 1 && j == self.p) || self.diagonals.contains(&Diagonal { i, j })
    }

    /// Triangles as increasing vertex triples.
    pub fn triangles(&self) -> Vec<[u32; 3]> {
        let p = self.p;
        let mut out = Vec::new();
        for a in 1..=p {
            for b in a + 1..=p {
                if !self.is_edge(a, b) {
                    continue;
                }
                for c in b + 1..=p {
                    if self.is_edge(b, c) && self.is_edge(a, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Replaces `d` by the other diagonal of the quadrilateral formed by
    /// the two triangles containing it.
    pub fn flip(&self, d: Diagonal) -> Result<(Triangulation, Diagonal), PolygonError> {
        if !self.contains(d) {
            return Err(PolygonError::NotInTriangulation(d));
        }
        let apex = |range: &mut dyn Iterator<Item = u32>| {
            range
                .filter(|&k| self.is_edge(d.i, k) && self.is_edge(k, d.j))
                .collect::<Vec<_>>()
        };
        let inner = apex(&mut (d.i + 1..d.j));
        let outer = apex(&mut (1..d.i).chain(d.j + 1..=self.p));
        // a triangulation has exactly one triangle on each side of a diagonal
        let (&[a], &[b]) = (inner.as_slice(), outer.as_slice()) else {
            unreachable!("triangulation invariant violated at {d}");
        };
        let new = Diagonal::new(self.p, a, b).expect("apexes are non-adjacent");
        let mut diagonals = self.diagonals.clone();
        diagonals.remove(&d);
        diagonals.insert(new);
        Ok((Triangulation { p: self.p, diagonals }, new))
    }
}

/// All triangulations, by recursion on the triangle containing the side
/// `(1, p)`.
pub fn enumerate_triangulations(p: u32) -> Result<Vec<Triangulation>, PolygonError> {
    if p < 3 {
        return Err(PolygonError::TooSmall { p, min: 3 });
    }
    let mut memo = BTreeMap::new();
    let mut out: Vec<Triangulation> = sub_triangulations(1, p, &mut memo)
        .into_iter()
        .map(|diagonals| Triangulation { p, diagonals })
        .collect();
    out.sort();
    Ok(out)
}

/// Triangulations of the sub-polygon `a, a+1, ..., b` (with `(a,b)` as its
/// base, not included).
fn sub_triangulations(
    a: u32,
    b: u32,
    memo: &mut BTreeMap<(u32, u32), Vec<BTreeSet<Diagonal>>>,
) -> Vec<BTreeSet<Diagonal>> {
    if b - a < 2 {
        return vec![BTreeSet::new()];
    }
    if let Some(v) = memo.get(&(a, b)) {
        return v.clone();
    }
    let mut out = Vec::new();
    for k in a + 1..b {
        let left = sub_triangulations(a, k, memo);
        let right = sub_triangulations(k, b, memo);
        for l in &left {
            for r in &right {
                let mut t: BTreeSet<Diagonal> = l.union(r).copied().collect();
                if k - a >= 2 {
                    t.insert(Diagonal { i: a, j: k });
                }
                if b - k >= 2 {
                    t.insert(Diagonal { i: k, j: b });
                }
                out.push(t);
            }
        }
    }
    memo.insert((a, b), out.clone());
    out
}

/// Vertices are triangulations in sorted order, edges are flips.
pub fn flip_graph(p: u32) -> Result<Graph, PolygonError> {
    if p < 4 {
        return Err(PolygonError::TooSmall { p, min: 4 });
    }
    let ts = enumerate_triangulations(p)?;
    let index: BTreeMap<&Triangulation, usize> = ts.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges = Vec::new();
    for (a, t) in ts.iter().enumerate() {
        for &d in t.diagonals() {
            let (u, added) = t.flip(d)?;
            let b = index[&u];
            if a < b {
                edges.push(Edge {
                    source: a,
                    target: b,
                    removed: d.to_string(),
                    added: added.to_string(),
                });
            }
        }
    }
    let labels = ts.iter().map(|t| t.to_strings().join(", ")).collect();
    Ok(Graph::new(labels, edges))
}

/// Ground set of all diagonals (labeled `Pij`) with the triangulations as
/// members.
pub fn naive_basis_family(p: u32) -> Result<SetFamily, PolygonError> {
    if p < 4 {
        return Err(PolygonError::TooSmall { p, min: 4 });
    }
    let diags = all_diagonals(p);
    let ground = GroundSet::new(diags.iter().map(|d| d.label()).collect())
        .map_err(|e| PolygonError::NotATriangulation(e.to_string()))?;
    let pos: BTreeMap<Diagonal, usize> = diags.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let members = enumerate_triangulations(p)?
        .iter()
        .map(|t| t.diagonals().iter().fold(0u64, |acc, d| acc | 1 << pos[d]))
        .collect::<Vec<_>>();
    SetFamily::new(ground, members).map_err(|e| PolygonError::NotATriangulation(e.to_string()))
}

/// Whether the flip graph of the `(n+3)`-gon and the exchange graph of
/// linear `A_n` are isomorphic.
pub fn compare_with_exchange_graph(n: usize) -> Result<bool, PolygonError> {
    let flips = flip_graph(n as u32 + 3)?;
    let exchange = enumerate(&Seed::initial(ExchangeMatrix::linear_a(n)), DEFAULT_CAP)?;
    Ok(!exchange.truncated() && flips.is_isomorphic(exchange.graph()))
}

/// Seed attached to a triangulation: mutable variables are its diagonals,
/// optionally followed by the sides as frozen variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulationSeed {
    pub seed: Seed,
    pub triangulation: Triangulation,
    /// Diagonal at each mutable position.
    pub diagonals: Vec<Diagonal>,
    /// Sides at the frozen positions, as `(i, j)` with `i < j`.
    pub sides: Vec<(u32, u32)>,
}

fn side_label(i: u32, j: u32) -> String {
    if j < 10 {
        format!("P{i}{j}")
    } else {
        format!("P{i}_{j}")
    }
}

/// For each triangle `a < b < c`, traversed `a -> b -> c -> a`, the entry
/// `b_xy` gains `+1` when edge `y` follows edge `x` and `-1` when `x`
/// follows `y`. Rows of frozen sides are included when `frozen_sides`.
pub fn triangulation_seed(t: &Triangulation, frozen_sides: bool) -> TriangulationSeed {
    let p = t.polygon_size();
    let diagonals: Vec<Diagonal> = t.diagonals().iter().copied().collect();
    let sides: Vec<(u32, u32)> = if frozen_sides {
        (1..p).map(|i| (i, i + 1)).chain([(1, p)]).collect()
    } else {
        Vec::new()
    };
    let n = diagonals.len();
    let mut row_of: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for (r, d) in diagonals.iter().enumerate() {
        row_of.insert(d.endpoints(), r);
    }
    for (r, &s) in sides.iter().enumerate() {
        row_of.insert(s, n + r);
    }
    let m = n + sides.len();
    let mut b = vec![vec![0i64; n]; m];
    for [x, y, z] in t.triangles() {
        let cycle = [(x, y), (y, z), (x, z)];
        for e in 0..3 {
            let (cur, next) = (cycle[e], cycle[(e + 1) % 3]);
            let (Some(&rc), Some(&rn)) = (row_of.get(&cur), row_of.get(&next)) else {
                continue;
            };
            if rn < n {
                b[rc][rn] += 1;
            }
            if rc < n {
                b[rn][rc] -= 1;
            }
        }
    }
    let names: Vec<String> = diagonals
        .iter()
        .map(|d| d.label())
        .chain(sides.iter().map(|&(i, j)| side_label(i, j)))
        .collect();
    let universe = Universe::new(names).expect("labels are valid names");
    let matrix = ExchangeMatrix::new(b, n).expect("triangulation matrices are skew-symmetric");
    let seed = Seed::initial_in(matrix, universe).expect("one name per row");
    TriangulationSeed {
        seed,
        triangulation: t.clone(),
        diagonals,
        sides,
    }
}

/// Assigns a diagonal to every cluster variable by replaying each seed's
/// mutation path as flips. `None` if some variable would receive two
/// different diagonals.
pub fn diagonals_of_variables(ts: &TriangulationSeed, result: &EnumerationResult) -> Option<BTreeMap<String, Diagonal>> {
    let mut out: BTreeMap<String, Diagonal> = BTreeMap::new();
    for s in result.seeds() {
        let mut t = ts.triangulation.clone();
        let mut labeled = ts.diagonals.clone();
        for &k in &s.path {
            let (u, added) = t.flip(labeled[k]).ok()?;
            labeled[k] = added;
            t = u;
        }
        for (k, text) in s.seed.cluster_texts().into_iter().take(labeled.len()).enumerate() {
            match out.get(&text) {
                Some(&d) if d != labeled[k] => return None,
                _ => {
                    out.insert(text, labeled[k]);
                }
            }
        }
    }
    Some(out)
}

/// The hexagon with the fan triangulation at vertex 1 and frozen sides.
pub fn hexagon_model() -> TriangulationSeed {
    let fan = [(1, 3), (1, 4), (1, 5)].map(|(i, j)| Diagonal::new(6, i, j).expect("fan diagonal"));
    let t = Triangulation::new(6, fan).expect("fan triangulation");
    triangulation_seed(&t, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{check_basis_axioms, set_of, Witness};

    fn d(p: u32, i: u32, j: u32) -> Diagonal {
        Diagonal::new(p, i, j).unwrap()
    }

    fn figure_one() -> Triangulation {
        Triangulation::new(8, [(1, 5), (1, 3), (3, 5), (6, 8), (5, 8)].map(|(i, j)| d(8, i, j))).unwrap()
    }

    #[test]
    fn crossing() {
        assert!(d(8, 1, 3).crosses(d(8, 2, 4)));
        assert!(!d(8, 1, 3).crosses(d(8, 3, 5)));
        assert!(!d(8, 1, 5).crosses(d(8, 6, 8)));
        assert!(d(8, 2, 4).crosses(d(8, 1, 3)));
        assert!(Diagonal::new(8, 1, 8).is_err());
        assert!(Diagonal::new(8, 3, 4).is_err());
    }

    #[test]
    fn catalan_counts() {
        // oracle: Catalan numbers by the convolution recurrence
        let mut cat = vec![1u64];
        for n in 1..=8 {
            cat.push((0..n).map(|k| cat[k] * cat[n - 1 - k]).sum());
        }
        for p in 3..=10u32 {
            let ts = enumerate_triangulations(p).unwrap();
            assert_eq!(ts.len() as u64, cat[p as usize - 2], "p = {p}");
            assert!(ts.iter().all(|t| t.diagonals().len() == p as usize - 3));
        }
        assert_eq!(enumerate_triangulations(8).unwrap().len(), 132);
    }

    #[test]
    fn figure_flips() {
        let t = figure_one();
        assert_eq!(t.flip(d(8, 5, 8)).unwrap().1, d(8, 1, 6));
        assert_eq!(t.flip(d(8, 6, 8)).unwrap().1, d(8, 5, 7));
        for &x in t.diagonals() {
            let (u, y) = t.flip(x).unwrap();
            assert_eq!(u.flip(y).unwrap(), (t.clone(), x));
        }
        assert!(matches!(t.flip(d(8, 2, 4)), Err(PolygonError::NotInTriangulation(_))));
    }

    #[test]
    fn flip_graphs() {
        let g4 = flip_graph(4).unwrap();
        assert_eq!((g4.vertex_count(), g4.edge_count()), (2, 1));
        let g5 = flip_graph(5).unwrap();
        assert_eq!((g5.vertex_count(), g5.edge_count(), g5.regular_degree()), (5, 5, Some(2)));
        let g6 = flip_graph(6).unwrap();
        assert_eq!((g6.vertex_count(), g6.edge_count(), g6.regular_degree()), (14, 21, Some(3)));
        assert!(g6.is_connected());
    }

    #[test]
    fn octagon_family_fails_exchange() {
        let f = naive_basis_family(8).unwrap();
        assert_eq!((f.ground().len(), f.members().len()), (20, 132));
        let g = f.ground();
        let b1 = g.set_of_labels(&["P15", "P14", "P24", "P68", "P58"]).unwrap();
        let b2 = g.set_of_labels(&["P15", "P13", "P35", "P68", "P58"]).unwrap();
        assert!(f.contains(b1) && f.contains(b2));
        let x = g.index_of("P14").unwrap();
        assert!(f.exchange_partners(b1, b2, x).is_empty());
        assert!(matches!(check_basis_axioms(&f), Err(Witness::NoExchange { .. })));
        // the quadrilateral family is U_{1,2}
        let q = check_basis_axioms(&naive_basis_family(4).unwrap()).unwrap();
        assert_eq!(q.is_uniform(), Some((1, 2)));
        assert_eq!(q.bases().len(), 2);
        assert!(q.is_basis(set_of([0])));
    }

    #[test]
    fn hexagon_ptolemy() {
        let h = hexagon_model();
        let u = h.seed.universe().clone();
        let k = h.diagonals.iter().position(|&x| x == d(6, 1, 4)).unwrap();
        let flipped = h.seed.mutate(k).unwrap();
        let lhs = &h.seed.cluster()[k] * &flipped.cluster()[k];
        let rhs = u.parse("P34*P15 + P13*P45").unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn hexagon_diagonal_counts() {
        let h = hexagon_model();
        let r = enumerate(&h.seed, DEFAULT_CAP).unwrap();
        assert_eq!((r.variable_count(), r.seeds().len()), (9, 14));
        let map = diagonals_of_variables(&h, &r).unwrap();
        let distinct: BTreeSet<Diagonal> = map.values().copied().collect();
        assert_eq!(distinct.len(), 9);
        for (text, dg) in &map {
            let (i, j) = dg.endpoints();
            let short = j - i == 2 || (i == 1 && j == 5) || (i == 2 && j == 6);
            let count = r.seeds_containing(text);
            // brute-force oracle: triangulations containing the diagonal
            let oracle = enumerate_triangulations(6).unwrap().iter().filter(|t| t.contains(*dg)).count();
            assert_eq!(count, oracle);
            assert_eq!(count, if short { 5 } else { 4 });
        }
    }

    #[test]
    fn exchange_graph_comparison() {
        for n in 1..=3 {
            assert!(compare_with_exchange_graph(n).unwrap());
        }
    }
}
