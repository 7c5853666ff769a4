use std::fmt;

use super::ExchangeMatrix;

/// Square integer matrix with 2 on the diagonal and nonpositive entries off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl CartanMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        for (i, r) in rows.iter().enumerate() {
            for (j, &a) in r.iter().enumerate() {
                if (i == j && a != 2) || (i != j && a > 0) {
                    return None;
                }
            }
        }
        Some(CartanMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// Cartan counterpart of the principal part: 2 on the diagonal,
/// `-|b_ij|` elsewhere.
pub fn cartan_counterpart(b: &ExchangeMatrix) -> CartanMatrix {
    let n = b.mutable_count();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 2 } else { -b.get(i, j).abs() })
                .collect()
        })
        .collect();
    CartanMatrix::new(rows).expect("counterpart satisfies Cartan sign pattern")
}

/// Connected finite-type Dynkin diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DynkinType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl DynkinType {
    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::B(n) | DynkinType::C(n) | DynkinType::D(n) | DynkinType::E(n) => n,
            DynkinType::F4 => 4,
            DynkinType::G2 => 2,
        }
    }

    /// Every connected type of the given rank under the labeling conventions
    /// used here (rank-2 `B`/`C` is reported as `C2`).
    pub fn all_of_rank(n: usize) -> Vec<DynkinType> {
        let mut out = Vec::new();
        if n >= 1 {
            out.push(DynkinType::A(n));
        }
        if n >= 3 {
            out.push(DynkinType::B(n));
        }
        if n >= 2 {
            out.push(DynkinType::C(n));
        }
        if n >= 4 {
            out.push(DynkinType::D(n));
        }
        if (6..=8).contains(&n) {
            out.push(DynkinType::E(n));
        }
        if n == 4 {
            out.push(DynkinType::F4);
        }
        if n == 2 {
            out.push(DynkinType::G2);
        }
        out
    }

    /// Number of cluster variables of a coefficient-free cluster algebra of
    /// this type: positive roots plus rank.
    pub fn cluster_variable_count(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 3) / 2,
            DynkinType::B(n) | DynkinType::C(n) => n * (n + 1),
            DynkinType::D(n) => n * n,
            DynkinType::E(6) => 42,
            DynkinType::E(7) => 70,
            DynkinType::E(8) => 128,
            DynkinType::E(n) => unreachable!("E{n} is not of finite type"),
            DynkinType::F4 => 28,
            DynkinType::G2 => 8,
        }
    }

    /// Standard Cartan matrix. `C_n` carries the `-2` above the diagonal in
    /// its last bond, `B_n` is the transpose.
    pub fn cartan_matrix(self) -> CartanMatrix {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut bond = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self {
            DynkinType::A(_) => (1..n).for_each(|i| bond(i - 1, i, -1, -1)),
            DynkinType::B(_) => {
                (1..n - 1).for_each(|i| bond(i - 1, i, -1, -1));
                bond(n - 2, n - 1, -1, -2);
            }
            DynkinType::C(_) => {
                (1..n - 1).for_each(|i| bond(i - 1, i, -1, -1));
                bond(n - 2, n - 1, -2, -1);
            }
            DynkinType::D(_) => {
                (1..n - 1).for_each(|i| bond(i - 1, i, -1, -1));
                bond(n - 3, n - 1, -1, -1);
            }
            DynkinType::E(_) => {
                (1..n - 1).for_each(|i| bond(i - 1, i, -1, -1));
                bond(2, n - 1, -1, -1);
            }
            DynkinType::F4 => {
                bond(0, 1, -1, -1);
                bond(1, 2, -2, -1);
                bond(2, 3, -1, -1);
            }
            DynkinType::G2 => bond(0, 1, -1, -3),
        }
        CartanMatrix::new(a).expect("table entries are Cartan matrices")
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::B(n) => write!(f, "B{n}"),
            DynkinType::C(n) => write!(f, "C{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
            DynkinType::F4 => write!(f, "F4"),
            DynkinType::G2 => write!(f, "G2"),
        }
    }
}

/// A finite type: the sorted multiset of connected blocks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteType(pub Vec<DynkinType>);

impl FiniteType {
    pub fn rank(&self) -> usize {
        self.0.iter().map(|t| t.rank()).sum()
    }

    pub fn is_connected(&self) -> bool {
        self.0.len() == 1
    }

    pub fn cluster_variable_count(&self) -> usize {
        self.0.iter().map(|t| t.cluster_variable_count()).sum()
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Recognizes a finite-type Cartan matrix up to simultaneous permutation of
/// rows and columns, block by block.
pub fn classify_cartan(a: &CartanMatrix) -> Option<FiniteType> {
    let mut blocks = Vec::new();
    for comp in components(a) {
        let sub: Vec<Vec<i64>> = comp
            .iter()
            .map(|&i| comp.iter().map(|&j| a.get(i, j)).collect())
            .collect();
        let sub = CartanMatrix::new(sub).expect("principal submatrix");
        let t = DynkinType::all_of_rank(comp.len())
            .into_iter()
            .find(|t| permutation_equivalent(&sub, &t.cartan_matrix()))?;
        blocks.push(t);
    }
    blocks.sort();
    Some(FiniteType(blocks))
}

fn components(a: &CartanMatrix) -> Vec<Vec<usize>> {
    let n = a.size();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && (a.get(i, j) != 0 || a.get(j, i) != 0) {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Backtracking search for `perm` with `a[i][j] == t[perm i][perm j]`.
fn permutation_equivalent(a: &CartanMatrix, t: &CartanMatrix) -> bool {
    let n = a.size();
    if n != t.size() {
        return false;
    }
    let signature = |m: &CartanMatrix, i: usize| {
        let mut row: Vec<(i64, i64)> = (0..n).filter(|&j| j != i).map(|j| (m.get(i, j), m.get(j, i))).collect();
        row.sort_unstable();
        row
    };
    let sa: Vec<_> = (0..n).map(|i| signature(a, i)).collect();
    let st: Vec<_> = (0..n).map(|i| signature(t, i)).collect();
    let mut sorted_a = sa.clone();
    let mut sorted_t = st.clone();
    sorted_a.sort();
    sorted_t.sort();
    if sorted_a != sorted_t {
        return false;
    }

    fn extend(
        a: &CartanMatrix,
        t: &CartanMatrix,
        sa: &[Vec<(i64, i64)>],
        st: &[Vec<(i64, i64)>],
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = perm.len();
        if i == a.size() {
            return true;
        }
        for cand in 0..t.size() {
            if used[cand] || sa[i] != st[cand] {
                continue;
            }
            let consistent = perm
                .iter()
                .enumerate()
                .all(|(j, &pj)| a.get(i, j) == t.get(cand, pj) && a.get(j, i) == t.get(pj, cand));
            if !consistent {
                continue;
            }
            perm.push(cand);
            used[cand] = true;
            if extend(a, t, sa, st, perm, used) {
                return true;
            }
            perm.pop();
            used[cand] = false;
        }
        false
    }

    extend(a, t, &sa, &st, &mut Vec::new(), &mut vec![false; n])
}
