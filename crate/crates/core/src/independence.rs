//! Algebraic independence via the Jacobian rank criterion (characteristic
//! zero): functions are independent iff their Jacobian has full row rank over
//! the rational function field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::poly::{lcm, PolyError, Polynomial, RationalFunction};

pub const DEFAULT_TRIALS: usize = 3;
/// Random coordinates are drawn uniformly from `POINT_LOW..=POINT_HIGH`.
pub const POINT_LOW: u64 = 2;
pub const POINT_HIGH: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndependenceError {
    #[error("every one of the {trials} random points was a pole")]
    AllPointsSingular { trials: usize },
    #[error("trials must be positive")]
    ZeroTrials,
    #[error("function depends on variable {var}, which is not among the Jacobian columns")]
    StrayVariable { var: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Probabilistic { trials: usize, rng_seed: u64 },
    Exact,
}

impl Default for Mode {
    fn default() -> Self {
        Mode::Probabilistic {
            trials: DEFAULT_TRIALS,
            rng_seed: 0,
        }
    }
}

/// `entries[i][j]` is the derivative of function `i` by column variable `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianMatrix {
    nvars: usize,
    vars: Vec<usize>,
    entries: Vec<Vec<RationalFunction>>,
}

pub fn jacobian(fns: &[RationalFunction], vars: &[usize]) -> Result<JacobianMatrix, IndependenceError> {
    let nvars = fns.first().map_or(0, RationalFunction::nvars);
    for f in fns {
        if let Some(&var) = f.variables().iter().find(|v| !vars.contains(v)) {
            return Err(IndependenceError::StrayVariable { var });
        }
    }
    let entries = fns
        .iter()
        .map(|f| vars.iter().map(|&v| f.partial_derivative(v)).collect())
        .collect();
    Ok(JacobianMatrix {
        nvars,
        vars: vars.to_vec(),
        entries,
    })
}

impl JacobianMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.vars.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i][j]
    }

    pub fn select_rows(&self, rows: &[usize]) -> JacobianMatrix {
        JacobianMatrix {
            nvars: self.nvars,
            vars: self.vars.clone(),
            entries: rows.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<Vec<Vec<BigRational>>, PolyError> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|f| f.evaluate(point)).collect())
            .collect()
    }
}

/// Rank of a matrix over the rationals by Gaussian elimination.
pub fn rational_rank(mut a: Vec<Vec<BigRational>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let factor = &a[r][c] / &pivot;
            for k in c..cols {
                let delta = &factor * &a[rank][k];
                a[r][k] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Maximum rank over `trials` random points, skipping points that are
/// poles. A lower bound on the symbolic rank.
pub fn rank_at_random_points(j: &JacobianMatrix, trials: usize, rng_seed: u64) -> Result<usize, IndependenceError> {
    if trials == 0 {
        return Err(IndependenceError::ZeroTrials);
    }
    if j.rows() == 0 || j.cols() == 0 {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut best: Option<usize> = None;
    for _ in 0..trials {
        let point: Vec<BigRational> = (0..j.nvars)
            .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(POINT_LOW..=POINT_HIGH))))
            .collect();
        match j.evaluate(&point) {
            Ok(values) => {
                let r = rational_rank(values);
                best = Some(best.map_or(r, |b| b.max(r)));
                if r == j.rows().min(j.cols()) {
                    break;
                }
            }
            Err(PolyError::Pole) => continue,
            Err(e) => unreachable!("point has the right arity: {e}"),
        }
    }
    best.ok_or(IndependenceError::AllPointsSingular { trials })
}

/// Symbolic rank: rows are cleared of denominators, then fraction-free
/// (Bareiss) elimination with complete pivoting on the sparsest entry.
pub fn rank_exact(j: &JacobianMatrix) -> usize {
    let mut a: Vec<Vec<Polynomial>> = j
        .entries
        .iter()
        .map(|row| {
            let n = j.nvars;
            let l = row.iter().fold(Polynomial::one(n), |acc, f| lcm(&acc, f.denominator()));
            row.iter()
                .map(|f| {
                    let cof = l.exact_div(f.denominator()).expect("lcm is a multiple");
                    f.numerator() * &cof
                })
                .collect()
        })
        .collect();
    let rows = a.len();
    let cols = j.cols();
    let mut prev = Polynomial::one(j.nvars);
    let mut rank = 0;
    while rank < rows.min(cols) {
        let pivot = (rank..rows)
            .flat_map(|r| (rank..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !a[r][c].is_zero())
            .min_by_key(|&(r, c)| (a[r][c].num_terms(), r, c));
        let Some((pr, pc)) = pivot else {
            break;
        };
        a.swap(rank, pr);
        for row in a.iter_mut() {
            row.swap(rank, pc);
        }
        let k = rank;
        for i in k + 1..rows {
            for c in k + 1..cols {
                let num = &(&a[k][k] * &a[i][c]) - &(&a[i][k] * &a[k][c]);
                a[i][c] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Polynomial::zero(j.nvars);
        }
        prev = a[k][k].clone();
        rank += 1;
    }
    rank
}

/// Outcome of one independence test, with both ranks when computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    pub independent: bool,
    pub random_rank: Option<usize>,
    pub exact_rank: Option<usize>,
}

/// Full-row-rank test. In probabilistic mode independence is declared as
/// soon as a random point reaches full rank; a shortfall is confirmed by
/// exact elimination before dependence is declared.
pub fn decide(fns: &[RationalFunction], vars: &[usize], mode: Mode) -> Result<Decision, IndependenceError> {
    if fns.len() > vars.len() {
        return Ok(Decision {
            independent: false,
            random_rank: None,
            exact_rank: None,
        });
    }
    let j = jacobian(fns, vars)?;
    match mode {
        Mode::Exact => {
            let r = rank_exact(&j);
            Ok(Decision {
                independent: r == fns.len(),
                random_rank: None,
                exact_rank: Some(r),
            })
        }
        Mode::Probabilistic { trials, rng_seed } => {
            let rr = rank_at_random_points(&j, trials, rng_seed)?;
            if rr == fns.len() {
                return Ok(Decision {
                    independent: true,
                    random_rank: Some(rr),
                    exact_rank: None,
                });
            }
            let er = rank_exact(&j);
            Ok(Decision {
                independent: er == fns.len(),
                random_rank: Some(rr),
                exact_rank: Some(er),
            })
        }
    }
}

pub fn is_alg_independent(fns: &[RationalFunction], vars: &[usize], mode: Mode) -> Result<bool, IndependenceError> {
    decide(fns, vars, mode).map(|d| d.independent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Universe;

    fn parse(u: &Universe, s: &[&str]) -> Vec<RationalFunction> {
        s.iter().map(|t| u.parse(t).unwrap()).collect()
    }

    #[test]
    fn jacobian_examples() {
        let u = Universe::standard(2);
        let j = jacobian(&parse(&u, &["x1", "x2"]), &[0, 1]).unwrap();
        assert!(j.entry(0, 0).is_one() && j.entry(1, 1).is_one());
        assert!(j.entry(0, 1).is_zero() && j.entry(1, 0).is_zero());

        let u1 = Universe::standard(1);
        let j = jacobian(&parse(&u1, &["x1", "x1^2"]), &[0]).unwrap();
        assert_eq!((j.rows(), j.cols()), (2, 1));
        assert_eq!(u1.format(j.entry(1, 0)), "2*x1");

        let j = jacobian(&parse(&u, &["(1+x2)/x1", "(1+x1)/x2"]), &[0, 1]).unwrap();
        assert_eq!(u.format(j.entry(0, 0)), "(-1-x2)/(x1^2)");
        assert_eq!(u.format(j.entry(0, 1)), "(1)/(x1)");
        assert_eq!(u.format(j.entry(1, 0)), "(1)/(x2)");
        assert_eq!(u.format(j.entry(1, 1)), "(-1-x1)/(x2^2)");

        assert_eq!(
            jacobian(&parse(&u, &["x2"]), &[0]),
            Err(IndependenceError::StrayVariable { var: 1 })
        );
    }

    #[test]
    fn ranks() {
        let u = Universe::standard(2);
        let id = jacobian(&parse(&u, &["x1", "x2"]), &[0, 1]).unwrap();
        assert_eq!(rank_at_random_points(&id, 3, 0), Ok(2));
        assert_eq!(rank_exact(&id), 2);

        let u1 = Universe::standard(1);
        let col = jacobian(&parse(&u1, &["x1", "x1^2"]), &[0]).unwrap();
        assert_eq!(rank_at_random_points(&col, 3, 0), Ok(1));
        assert_eq!(rank_exact(&col), 1);

        // rows (x1, x2) and (2 x1, 2 x2): gradients of x1^2/2 + x2^2/2 and twice it
        let dep = jacobian(&parse(&u, &["x1^2+x2^2", "2*x1^2+2*x2^2"]), &[0, 1]).unwrap();
        assert_eq!(rank_exact(&dep), 1);
        assert_eq!(rank_at_random_points(&dep, 3, 7), Ok(1));
    }

    #[test]
    fn a2_variables() {
        let u = Universe::standard(2);
        let vars = parse(&u, &["x1", "x2", "(1+x2)/x1", "(1+x1+x2)/(x1*x2)", "(1+x1)/x2"]);
        for a in 0..5 {
            for b in a + 1..5 {
                let pair = [vars[a].clone(), vars[b].clone()];
                assert!(is_alg_independent(&pair, &[0, 1], Mode::Exact).unwrap());
                assert!(is_alg_independent(&pair, &[0, 1], Mode::default()).unwrap());
                for c in b + 1..5 {
                    let triple = [vars[a].clone(), vars[b].clone(), vars[c].clone()];
                    let j = jacobian(&triple, &[0, 1]).unwrap();
                    assert_eq!(rank_exact(&j), 2);
                    assert_eq!(rank_at_random_points(&j, 3, 1), Ok(2));
                    assert!(!is_alg_independent(&triple, &[0, 1], Mode::default()).unwrap());
                }
            }
        }
    }

    #[test]
    fn dependent_functions() {
        let u = Universe::standard(1);
        assert!(!is_alg_independent(&parse(&u, &["x1", "x1^2"]), &[0], Mode::Exact).unwrap());
        let u2 = Universe::standard(2);
        let f = parse(&u2, &["x1+x2", "x1*x2", "x1^2+x2^2"]);
        let d = decide(&f[..], &[0, 1], Mode::Exact).unwrap();
        assert!(!d.independent);
        // x1^2+x2^2 = (x1+x2)^2 - 2 x1 x2, so rank stays 2 even in 3 variables
        let g: Vec<_> = f.iter().map(|h| h.extend_universe(3)).collect();
        let d3 = decide(&g, &[0, 1, 2], Mode::default()).unwrap();
        assert_eq!((d3.independent, d3.random_rank, d3.exact_rank), (false, Some(2), Some(2)));
    }

    #[test]
    fn zero_trials_rejected() {
        let u = Universe::standard(1);
        let j = jacobian(&parse(&u, &["x1"]), &[0]).unwrap();
        assert_eq!(rank_at_random_points(&j, 0, 0), Err(IndependenceError::ZeroTrials));
    }

    #[test]
    fn rational_rank_small() {
        let rational = |n: i64| BigRational::from_integer(BigInt::from(n));
        let m = vec![
            vec![rational(1), rational(2), rational(3)],
            vec![rational(2), rational(4), rational(6)],
            vec![rational(0), rational(1), rational(1)],
        ];
        assert_eq!(rational_rank(m), 2);
    }
}
