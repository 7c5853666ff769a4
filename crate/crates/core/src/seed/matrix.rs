use num_integer::Integer;

use super::SeedError;

/// Extended exchange matrix: `m` rows (all variables) by `n` columns
/// (mutable variables). The top `n x n` block is skew-symmetrizable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExchangeMatrix {
    m: usize,
    n: usize,
    entries: Vec<i64>,
}

impl ExchangeMatrix {
    /// Builds from row-major rows (`m` rows of `n` entries) and validates the
    /// top block.
    pub fn new(rows: Vec<Vec<i64>>, n: usize) -> Result<Self, SeedError> {
        let m = rows.len();
        if m < n {
            return Err(SeedError::Shape(format!("{m} rows but {n} mutable columns")));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(SeedError::Shape(format!(
                "row of length {} in a matrix with {n} columns",
                r.len()
            )));
        }
        let entries: Vec<i64> = rows.into_iter().flatten().collect();
        let b = ExchangeMatrix { m, n, entries };
        if is_skew_symmetrizable(&b.principal_part()).is_none() {
            return Err(SeedError::NotSkewSymmetrizable);
        }
        Ok(b)
    }

    /// Linearly oriented `A_n`: `b_{i,i+1} = 1`, `b_{i+1,i} = -1`.
    pub fn linear_a(n: usize) -> Self {
        let mut entries = vec![0i64; n * n];
        for i in 1..n {
            entries[(i - 1) * n + i] = 1;
            entries[i * n + i - 1] = -1;
        }
        ExchangeMatrix { m: n, n, entries }
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn mutable_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.m)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    /// Top `n x n` block.
    pub fn principal_part(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn column(&self, k: usize) -> Vec<i64> {
        (0..self.m).map(|i| self.get(i, k)).collect()
    }

    /// Matrix mutation at mutable index `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix, SeedError> {
        if k >= self.n {
            return Err(SeedError::IndexOutOfRange { index: k, mutable: self.n });
        }
        let mut out = self.entries.clone();
        for i in 0..self.m {
            for j in 0..self.n {
                let b = self.get(i, j);
                out[i * self.n + j] = if i == k || j == k {
                    -b
                } else {
                    let bik = self.get(i, k);
                    let bkj = self.get(k, j);
                    let corr = bik
                        .abs()
                        .checked_mul(bkj)
                        .and_then(|a| bik.checked_mul(bkj.abs()).and_then(|c| a.checked_add(c)))
                        .ok_or(SeedError::Overflow)?;
                    b.checked_add(corr / 2).ok_or(SeedError::Overflow)?
                };
            }
        }
        Ok(ExchangeMatrix {
            m: self.m,
            n: self.n,
            entries: out,
        })
    }

    /// Drops row `i`, which must be a frozen row.
    pub fn without_row(&self, i: usize) -> ExchangeMatrix {
        assert!(i >= self.n && i < self.m, "only frozen rows can be removed");
        let rows = self
            .to_rows()
            .into_iter()
            .enumerate()
            .filter(|&(r, _)| r != i)
            .map(|(_, row)| row)
            .collect();
        ExchangeMatrix::new(rows, self.n).expect("top block unchanged")
    }

    /// Simultaneously permutes the mutable rows and columns: new index `a`
    /// takes old index `perm[a]`. Frozen rows keep their positions.
    pub fn permute_mutable(&self, perm: &[usize]) -> ExchangeMatrix {
        assert_eq!(perm.len(), self.n);
        let row_of = |i: usize| if i < self.n { perm[i] } else { i };
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.m {
            for &pj in perm {
                entries.push(self.get(row_of(i), pj));
            }
        }
        ExchangeMatrix {
            m: self.m,
            n: self.n,
            entries,
        }
    }
}

/// Finds a positive integer symmetrizer `d` with `d_i b_ij = -d_j b_ji`,
/// normalized to be minimal on each connected component.
///
/// Ratios are propagated along nonzero entries component by component; any
/// sign violation or inconsistent ratio means no symmetrizer exists.
pub fn is_skew_symmetrizable(top: &[Vec<i64>]) -> Option<Vec<u64>> {
    let n = top.len();
    if top.iter().any(|r| r.len() != n) {
        return None;
    }
    for i in 0..n {
        if top[i][i] != 0 {
            return None;
        }
        for j in 0..n {
            let (a, b) = (top[i][j], top[j][i]);
            if (a == 0) != (b == 0) || a.signum() * b.signum() > 0 {
                return None;
            }
        }
    }
    // d as reduced fractions (num, den)
    let mut d: Vec<Option<(i128, i128)>> = vec![None; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some((1, 1));
        let mut component = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let (pn, pd) = d[i].expect("assigned");
            for j in 0..n {
                if top[i][j] == 0 {
                    continue;
                }
                // d_j = d_i * b_ij / (-b_ji)
                let num = pn * top[i][j] as i128;
                let den = pd * -(top[j][i] as i128);
                let g = num.gcd(&den) * den.signum();
                let cand = (num / g, den / g);
                match d[j] {
                    None => {
                        d[j] = Some(cand);
                        component.push(j);
                        stack.push(j);
                    }
                    Some(existing) if existing != cand => return None,
                    Some(_) => {}
                }
            }
        }
        let l = component
            .iter()
            .fold(1i128, |acc, &i| acc.lcm(&d[i].expect("assigned").1));
        let scaled: Vec<i128> = component
            .iter()
            .map(|&i| {
                let (a, b) = d[i].expect("assigned");
                a * (l / b)
            })
            .collect();
        let g = scaled.iter().fold(0i128, |acc, x| acc.gcd(x));
        for (&i, s) in component.iter().zip(scaled) {
            d[i] = Some((s / g, 1));
        }
    }
    Some(d.into_iter().map(|x| x.expect("assigned").0 as u64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizers() {
        assert_eq!(is_skew_symmetrizable(&[vec![0, 1], vec![-1, 0]]), Some(vec![1, 1]));
        assert_eq!(is_skew_symmetrizable(&[vec![0, 1], vec![1, 0]]), None);
        assert_eq!(is_skew_symmetrizable(&[vec![1]]), None);
        assert_eq!(is_skew_symmetrizable(&[vec![0, 1], vec![0, 0]]), None);
    }

    #[test]
    fn symmetrizer_matches_brute_force() {
        // Oracle: smallest (d1, d2) in 1..=6 with d1 * 2 = -d2 * (-1).
        let b = [vec![0, 2], vec![-1, 0]];
        let brute = (1..=6u64)
            .flat_map(|a| (1..=6u64).map(move |c| (a, c)))
            .find(|&(d1, d2)| d1 as i64 * b[0][1] == -(d2 as i64) * b[1][0])
            .unwrap();
        assert_eq!(brute, (1, 2));
        assert_eq!(is_skew_symmetrizable(&b), Some(vec![1, 2]));
    }

    #[test]
    fn inconsistent_cycle_rejected() {
        // Ratios around the triangle multiply to 2, not 1.
        let b = [vec![0, 1, -1], vec![-1, 0, 1], vec![2, -1, 0]];
        assert_eq!(is_skew_symmetrizable(&b), None);
    }

    #[test]
    fn mutation_rule() {
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]], 2).unwrap();
        let mu = b.mutate(0).unwrap();
        assert_eq!(mu.to_rows(), vec![vec![0, -1], vec![1, 0]]);
        assert_eq!(mu.mutate(0).unwrap(), b);
        assert!(matches!(b.mutate(2), Err(SeedError::IndexOutOfRange { .. })));

        let r1 = ExchangeMatrix::new(vec![vec![0], vec![1], vec![-1]], 1).unwrap();
        assert_eq!(r1.mutate(0).unwrap().to_rows(), vec![vec![0], vec![-1], vec![1]]);
    }

    #[test]
    fn mutation_updates_frozen_rows() {
        // b_31' = -b_31; b_32' = b_32 + (|b_31| b_12 + b_31 |b_12|)/2 = 0 + (1 + 1)/2
        let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0], vec![1, 0]], 2).unwrap();
        assert_eq!(b.mutate(0).unwrap().to_rows(), vec![vec![0, -1], vec![1, 0], vec![-1, 1]]);
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(ExchangeMatrix::new(vec![vec![0, 1]], 2), Err(SeedError::Shape(_))));
        assert!(matches!(
            ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]], 2),
            Err(SeedError::NotSkewSymmetrizable)
        ));
    }
}
