use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{Monomial, Polynomial, RationalFunction};

/// A rational function whose denominator is a single monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentForm {
    numerator: Polynomial,
    denominator: Monomial,
    content: BigInt,
}

impl LaurentForm {
    pub(crate) fn new(numerator: Polynomial, denominator: Monomial) -> Self {
        let content = numerator.content();
        LaurentForm {
            numerator,
            denominator,
            content,
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Monomial {
        &self.denominator
    }

    /// Gcd of the numerator's integer coefficients.
    pub fn content(&self) -> &BigInt {
        &self.content
    }

    pub fn to_rational(&self) -> RationalFunction {
        let n = self.numerator.nvars();
        RationalFunction::new(
            self.numerator.clone(),
            Polynomial::monomial(n, self.denominator.clone(), 1),
        )
        .expect("monomial denominator is nonzero")
    }

    /// Terms as signed exponent vectors.
    pub fn terms(&self) -> BTreeMap<Vec<i64>, BigInt> {
        self.numerator
            .terms()
            .map(|(m, c)| {
                let e = m
                    .exponents()
                    .iter()
                    .zip(self.denominator.exponents())
                    .map(|(&a, &b)| a as i64 - b as i64)
                    .collect();
                (e, c.clone())
            })
            .collect()
    }
}
