//! Multivariate gcd over the integers.
//!
//! Recursive content / primitive-part scheme. Variables that occur in only
//! one argument, or that a modular image shows cannot occur in the gcd, are
//! removed by taking contents. The remaining case runs a subresultant
//! pseudo-remainder sequence in the variable of smallest degree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{Monomial, Polynomial};

/// Greatest common divisor, normalized so the leading coefficient under the
/// graded-lex order is positive. `gcd(0, 0) = 0`.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    assert_eq!(p.nvars(), q.nvars(), "variable universes differ");
    gcd_inner(p, q).sign_normalized()
}

/// Least common multiple with positive leading coefficient.
pub fn lcm(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() || q.is_zero() {
        return Polynomial::zero(p.nvars());
    }
    let g = gcd(p, q);
    (p * &q.exact_div(&g).expect("gcd divides"))
        .sign_normalized()
}

fn gcd_inner(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let n = p.nvars();
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.is_monomial() || q.is_monomial() {
        return gcd_with_monomial(p, q);
    }
    if p.is_constant() || q.is_constant() {
        return Polynomial::constant(n, p.content().gcd(&q.content()));
    }
    if p == q {
        return p.clone();
    }

    let pv = p.variables();
    let qv = q.variables();
    // a factor of the gcd only involves variables common to both
    if let Some(&v) = pv.iter().find(|v| !qv.contains(v)) {
        return gcd_inner(&content_in(p, v), q);
    }
    if let Some(&v) = qv.iter().find(|v| !pv.contains(v)) {
        return gcd_inner(p, &content_in(q, v));
    }
    for &v in &pv {
        if degree_bound_is_zero(p, q, v) {
            let mut acc = Polynomial::zero(n);
            for c in p.coefficients_in(v).iter().chain(&q.coefficients_in(v)).filter(|c| !c.is_zero()) {
                acc = gcd_inner(&acc, c);
                if acc.is_constant() && acc.content().is_one() {
                    break;
                }
            }
            return acc;
        }
    }

    let v = *pv
        .iter()
        .min_by_key(|&&v| (p.degree_in(v).min(q.degree_in(v)), v))
        .expect("nonconstant");
    let cp = content_in(p, v);
    let cq = content_in(q, v);
    let c = gcd_inner(&cp, &cq);
    let mut a = p.exact_div(&cp).expect("content divides");
    let mut b = q.exact_div(&cq).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    &c * &primitive_part_in(&subresultant_last(a, b, v), v)
}

/// Last nonzero member of the subresultant remainder sequence of `a` and
/// `b` in `v`, where `deg_v a >= deg_v b > 0`. A constant in `v` means the
/// primitive parts are coprime.
fn subresultant_last(mut a: Polynomial, mut b: Polynomial, v: usize) -> Polynomial {
    let n = a.nvars();
    let mut g = Polynomial::one(n);
    let mut h = Polynomial::one(n);
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(v) == 0 {
            return Polynomial::one(n);
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.exact_div(&divisor).expect("subresultant division is exact");
        g = a.leading_coefficient_in(v);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).exact_div(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
}

/// Fast path when one side is a single term.
fn gcd_with_monomial(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let n = p.nvars();
    let mc = p.monomial_content().gcd(&q.monomial_content());
    let c = p.content().gcd(&q.content());
    Polynomial::monomial(n, mc, c)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    let coeffs = p.coefficients_in(v);
    let mut acc = Polynomial::zero(p.nvars());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = gcd_inner(&acc, c);
        if acc.is_constant() && acc.content().is_one() {
            break;
        }
    }
    acc
}

fn primitive_part_in(p: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides")
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` in the variable `v`.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let n = a.nvars();
    let db = b.degree_in(v);
    let lcb = b.leading_coefficient_in(v);
    let mut steps = a.degree_in(v) - db + 1;
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let shift = r.degree_in(v) - db;
        let lcr = r.leading_coefficient_in(v);
        let mut e = vec![0; n];
        e[v] = shift;
        let vpow = Monomial::from_exponents(e);
        r = &(&r * &lcb) - &(&lcr * b).mul_monomial(&vpow);
        steps -= 1;
    }
    &r * &lcb.pow(steps)
}

const PRIME: u64 = 4_294_967_291;

fn reduce_mod(c: &BigInt) -> u64 {
    c.mod_floor(&BigInt::from(PRIME)).to_u64().expect("reduced below the prime")
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    acc
}

/// Image of `p` in `F_PRIME[v]` with the other variables set to `point`,
/// as coefficients by ascending degree.
fn univariate_image(p: &Polynomial, v: usize, point: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = reduce_mod(c);
        for (w, &e) in m.exponents().iter().enumerate() {
            if w != v && e > 0 {
                t = t * pow_mod(point[w], e as u64) % PRIME;
            }
        }
        let d = m.exponent(v) as usize;
        out[d] = (out[d] + t) % PRIME;
    }
    out
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Degree of the monic gcd in `F_PRIME[v]`.
fn univariate_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let inv = pow_mod(*b.last().expect("nonempty"), PRIME - 2);
        while a.len() >= b.len() {
            let f = *a.last().expect("nonempty") * inv % PRIME;
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + PRIME - f * bc % PRIME) % PRIME;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True when a modular image proves that `v` does not occur in `gcd(p, q)`.
/// Images at points where a leading coefficient in `v` vanishes are skipped,
/// since only then can the gcd image lose degree.
fn degree_bound_is_zero(p: &Polynomial, q: &Polynomial, v: usize) -> bool {
    let n = p.nvars();
    let mut state: u64 = 0x9e37_79b9 ^ v as u64;
    for _ in 0..3 {
        let point: Vec<u64> = (0..n)
            .map(|_| {
                state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
                (state >> 33) % (PRIME - 2) + 2
            })
            .collect();
        let pi = univariate_image(p, v, &point);
        let qi = univariate_image(q, v, &point);
        if pi.last() == Some(&0) || qi.last() == Some(&0) {
            continue;
        }
        return univariate_gcd_degree(pi, qi) == 0;
    }
    false
}
