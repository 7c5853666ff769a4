use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::{gcd, lcm};
use super::{LaurentForm, Monomial, PolyError, Polynomial};

/// Reduced quotient of integer polynomials.
///
/// Always stored in canonical form: `gcd(num, den)` is a constant with the
/// integer content divided out as well, the denominator's graded-lex leading
/// coefficient is positive, and zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        assert_eq!(num.nvars(), den.nvars(), "variable universes differ");
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Polynomial::one(n),
            };
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        if den.leading_coefficient().is_some_and(|c| c.is_negative()) {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: Polynomial::one(n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::from_polynomial(Polynomial::constant(nvars, c))
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        Self::from_polynomial(Polynomial::var(nvars, v))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Indices of variables occurring in numerator or denominator.
    pub fn variables(&self) -> Vec<usize> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<RationalFunction, PolyError> {
        if rhs.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(self * &rhs.reciprocal_unchecked())
    }

    pub fn reciprocal(&self) -> Result<RationalFunction, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(self.reciprocal_unchecked())
    }

    fn reciprocal_unchecked(&self) -> RationalFunction {
        Self::reduce(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> RationalFunction {
        // Powers of coprime polynomials stay coprime.
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Quotient-rule derivative with respect to variable `v`.
    pub fn partial_derivative(&self, v: usize) -> RationalFunction {
        assert!(v < self.nvars(), "variable {v} outside universe");
        if self.den.is_one() {
            return Self::from_polynomial(self.num.derivative(v));
        }
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::reduce(top, &self.den * &self.den)
    }

    /// Exact value at a rational point assigning every variable.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::PointArity {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        let d = self.den.evaluate(point);
        if d.is_zero() {
            return Err(PolyError::Pole);
        }
        Ok(self.num.evaluate(point) / d)
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one
    /// universe, which becomes the universe of the result.
    pub fn compose(&self, images: &[RationalFunction]) -> Result<RationalFunction, PolyError> {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target = images.first().map_or(0, RationalFunction::nvars);
        let n = compose_polynomial(&self.num, images, target);
        let d = compose_polynomial(&self.den, images, target);
        n.checked_div(&d)
    }

    /// Expresses the function as a Laurent polynomial if its reduced
    /// denominator is a unit-coefficient monomial.
    pub fn to_laurent(&self) -> Result<LaurentForm, PolyError> {
        let (m, c) = self.den.leading_term().expect("denominator nonzero");
        if !self.den.is_monomial() || !c.is_one() {
            return Err(PolyError::NotLaurent {
                denominator: self.den.clone(),
            });
        }
        Ok(LaurentForm::new(self.num.clone(), m.clone()))
    }

    /// Same function over a larger universe whose leading variables are the
    /// current ones.
    pub fn extend_universe(&self, nvars: usize) -> RationalFunction {
        assert!(nvars >= self.nvars());
        RationalFunction {
            num: pad(&self.num, nvars),
            den: pad(&self.den, nvars),
        }
    }
}

fn pad(p: &Polynomial, nvars: usize) -> Polynomial {
    Polynomial::from_terms(
        nvars,
        p.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.resize(nvars, 0);
            (e, c.clone())
        }),
    )
}

fn compose_polynomial(p: &Polynomial, images: &[RationalFunction], nvars: usize) -> RationalFunction {
    // Cache powers per variable.
    let mut powers: Vec<Vec<RationalFunction>> = images
        .iter()
        .map(|f| vec![RationalFunction::one(nvars), f.clone()])
        .collect();
    let mut total = RationalFunction::zero(nvars);
    for (m, c) in p.terms() {
        let mut t = RationalFunction::constant(nvars, c.clone());
        for (v, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let e = e as usize;
            while powers[v].len() <= e {
                let next = &powers[v][powers[v].len() - 1] * &images[v];
                powers[v].push(next);
            }
            t = &t * &powers[v][e];
        }
        total = &total + &t;
    }
    total
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let l = lcm(&self.den, &rhs.den);
        let a = l.exact_div(&self.den).expect("lcm multiple");
        let b = l.exact_div(&rhs.den).expect("lcm multiple");
        RationalFunction::reduce(&(&self.num * &a) + &(&rhs.num * &b), l)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.nvars());
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        // Cross-cancel first so the final reduction stays small.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        RationalFunction::reduce(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_polynomial(p)
    }
}

/// Product of variable powers as a rational function, `x^e`.
pub fn monomial_function(nvars: usize, exps: &[u32]) -> RationalFunction {
    RationalFunction::from_polynomial(Polynomial::monomial(
        nvars,
        Monomial::from_exponents(exps.to_vec()),
        1,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> RationalFunction {
        RationalFunction::var(2, i)
    }

    fn c(k: i64) -> RationalFunction {
        RationalFunction::constant(2, k)
    }

    fn q(k: i64) -> BigRational {
        BigRational::from_integer(k.into())
    }

    fn one_plus(f: &RationalFunction) -> RationalFunction {
        &c(1) + f
    }

    #[test]
    fn additive_identity() {
        assert_eq!(&x(0) + &RationalFunction::zero(2), x(0));
    }

    #[test]
    fn sum_over_common_denominator() {
        // 1/x1 + x2/x1 = (1+x2)/x1
        let a = c(1).checked_div(&x(0)).unwrap();
        let b = x(1).checked_div(&x(0)).unwrap();
        let expected = RationalFunction::new(
            Polynomial::one(2) + Polynomial::var(2, 1),
            Polynomial::var(2, 0),
        )
        .unwrap();
        assert_eq!(&a + &b, expected);
    }

    #[test]
    fn reduction_to_constant() {
        let f = x(0).checked_div(&x(0)).unwrap();
        assert_eq!(&f + &c(1), c(2));
    }

    #[test]
    fn multiplicative_inverse_and_cancellation() {
        let inv = c(1).checked_div(&x(0)).unwrap();
        assert!((&x(0) * &inv).is_one());
        let f = one_plus(&x(1)).checked_div(&x(0)).unwrap();
        assert_eq!(&f * &x(0), one_plus(&x(1)));
    }

    #[test]
    fn product_of_two_a2_variables() {
        // Expanded by hand: (1+x2)(1+x1) = 1 + x1 + x2 + x1x2 over x1x2; the
        // numerator is not divisible by x1 or x2, so no cancellation.
        let f = one_plus(&x(1)).checked_div(&x(0)).unwrap();
        let g = one_plus(&x(0)).checked_div(&x(1)).unwrap();
        let prod = &f * &g;
        let num = &(&(&c(1) + &x(0)) + &x(1)) + &(&x(0) * &x(1));
        let expected = num.checked_div(&(&x(0) * &x(1))).unwrap();
        assert_eq!(prod, expected);
        assert_eq!(prod.numerator().num_terms(), 4);
    }

    #[test]
    fn division_cases() {
        let f = one_plus(&x(1)).checked_div(&x(0)).unwrap();
        assert_eq!(f.denominator(), &Polynomial::var(2, 0));
        let g = (&one_plus(&x(0)) + &x(1)).checked_div(&(&x(0) * &x(1))).unwrap();
        assert!(g.checked_div(&g).unwrap().is_one());
        assert!(RationalFunction::zero(2).checked_div(&x(0)).unwrap().is_zero());
        assert_eq!(x(0).checked_div(&RationalFunction::zero(2)), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn denominator_sign_is_normalized() {
        let f = x(0).checked_div(&(-&x(1))).unwrap();
        assert!(f.denominator().leading_coefficient().unwrap().is_positive());
        assert_eq!(f, -x(0).checked_div(&x(1)).unwrap());
    }

    #[test]
    fn partial_derivatives_by_quotient_rule() {
        let f = one_plus(&x(1)).checked_div(&x(0)).unwrap();
        // d/dx1 (1+x2)/x1 = -(1+x2)/x1^2
        let expected = (-one_plus(&x(1))).checked_div(&x(0).pow(2)).unwrap();
        assert_eq!(f.partial_derivative(0), expected);
        // d/dx2 (1+x2)/x1 = 1/x1
        assert_eq!(f.partial_derivative(1), c(1).checked_div(&x(0)).unwrap());
        assert!(x(0).partial_derivative(0).is_one());
    }

    #[test]
    fn evaluation() {
        assert_eq!(x(0).evaluate(&[q(3), q(0)]).unwrap(), q(3));
        let f = one_plus(&x(1)).checked_div(&x(0)).unwrap();
        assert_eq!(f.evaluate(&[q(2), q(5)]).unwrap(), q(3));
        assert_eq!(f.evaluate(&[q(0), q(1)]), Err(PolyError::Pole));
    }

    #[test]
    fn laurent_forms() {
        let f = one_plus(&x(1)).checked_div(&x(0)).unwrap();
        let l = f.to_laurent().unwrap();
        assert_eq!(l.denominator().exponents(), &[1, 0]);
        assert_eq!(l.numerator(), &(Polynomial::one(2) + Polynomial::var(2, 1)));

        let g = (&one_plus(&x(0)) + &x(1)).checked_div(&(&x(0) * &x(1))).unwrap();
        assert_eq!(g.to_laurent().unwrap().denominator().exponents(), &[1, 1]);

        let h = one_plus(&x(1)).checked_div(&one_plus(&x(0))).unwrap();
        assert!(matches!(h.to_laurent(), Err(PolyError::NotLaurent { .. })));

        let half = c(1).checked_div(&c(2)).unwrap();
        assert!(matches!(half.to_laurent(), Err(PolyError::NotLaurent { .. })));
    }

    #[test]
    fn values_are_send_and_sync() {
        fn is<T: Send + Sync>() {}
        is::<RationalFunction>();
    }

    #[test]
    fn composition_substitutes_variables() {
        // f(x1, x2) = x1 + x2 at (x1 -> x2, x2 -> 1/x1)
        let f = &x(0) + &x(1);
        let images = [x(1), c(1).checked_div(&x(0)).unwrap()];
        let expected = (&(&x(0) * &x(1)) + &c(1)).checked_div(&x(0)).unwrap();
        assert_eq!(f.compose(&images).unwrap(), expected);
    }
}
