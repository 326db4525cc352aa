//! Sparse multivariate polynomials with rewrite rules, used to check the
//! rational parametrization of cubic cyclic covers symbolically.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Num;

/// Polynomial in a fixed number of variables; exponent vectors map to
/// nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly<T> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Clone + Num> SparsePoly<T> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(exps, T::one());
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: T) {
        let sum = match self.terms.remove(&exps) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(exps, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn scale(&self, c: T) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            p.add_term(e.clone(), x.clone() * c.clone());
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(self.nvars, T::one()), |acc, _| &acc * self)
    }

    /// Rewrites every occurrence of `var^power` with `replacement` until no
    /// monomial is divisible by any rule's left-hand side. Rules must not
    /// reintroduce their own left-hand sides.
    pub fn reduce(&self, rules: &[RewriteRule<T>]) -> Self {
        let mut current = self.clone();
        loop {
            let mut next = Self::zero(self.nvars);
            let mut changed = false;
            for (exps, c) in &current.terms {
                match rules.iter().find(|r| exps[r.var] >= r.power) {
                    Some(rule) => {
                        changed = true;
                        let mut rest = exps.clone();
                        rest[rule.var] -= rule.power;
                        for (e, x) in &rule.replacement.terms {
                            let combined = rest.iter().zip(e).map(|(a, b)| a + b).collect();
                            next.add_term(combined, c.clone() * x.clone());
                        }
                    }
                    None => next.add_term(exps.clone(), c.clone()),
                }
            }
            if !changed {
                return next;
            }
            current = next;
        }
    }
}

impl<T: Clone + Num> Add for &SparsePoly<T> {
    type Output = SparsePoly<T>;

    fn add(self, rhs: Self) -> SparsePoly<T> {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl<T: Clone + Num> Neg for &SparsePoly<T> {
    type Output = SparsePoly<T>;

    fn neg(self) -> SparsePoly<T> {
        self.scale(T::zero() - T::one())
    }
}

impl<T: Clone + Num> Sub for &SparsePoly<T> {
    type Output = SparsePoly<T>;

    fn sub(self, rhs: Self) -> SparsePoly<T> {
        self + &(-rhs)
    }
}

impl<T: Clone + Num> Mul for &SparsePoly<T> {
    type Output = SparsePoly<T>;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> SparsePoly<T> {
        let mut p = SparsePoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1.clone() * c2.clone());
            }
        }
        p
    }
}

/// `var^power -> replacement`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule<T> {
    pub var: usize,
    pub power: u32,
    pub replacement: SparsePoly<T>,
}

/// Quotient of two polynomials, combined without cancellation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction<T> {
    pub num: SparsePoly<T>,
    pub den: SparsePoly<T>,
}

impl<T: Clone + Num> Fraction<T> {
    pub fn new(num: SparsePoly<T>, den: SparsePoly<T>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self { num, den }
    }

    pub fn poly(p: SparsePoly<T>) -> Self {
        let nvars = p.nvars;
        Self::new(p, SparsePoly::constant(nvars, T::one()))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&(&self.num * &other.den) + &(&other.num * &self.den), &self.den * &other.den)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }
}

/// Variables of the cover identity, in index order.
pub const COVER_VARS: [&str; 6] = ["L", "Q", "R", "y", "u", "v"];
const L: usize = 0;
const Q: usize = 1;
const R: usize = 2;
const Y: usize = 3;
const U: usize = 4;
const V: usize = 5;

/// The map `(x, y, (u, v)) -> (x : x_k : x_{k+1})` from the sextic
/// `y^6 + L^2 (Q^2 - L R) = 0` times the curve `u^3 + v^2 + 1 = 0` onto the
/// cubic cover `x_{k+1}^3 + L x_k^2 + 2 Q x_k + R = 0`. `L`, `Q`, `R` are
/// treated as independent symbols.
#[derive(Debug, Clone)]
pub struct CoverParametrization {
    pub x_k: Fraction<BigInt>,
    pub x_k1: Fraction<BigInt>,
    pub rules: Vec<RewriteRule<BigInt>>,
}

impl CoverParametrization {
    pub fn standard() -> Self {
        let v = |i| SparsePoly::<BigInt>::var(6, i);
        let c = |n: i64| SparsePoly::constant(6, BigInt::from(n));
        let (l, q, r, y, u, w) = (v(L), v(Q), v(R), v(Y), v(U), v(V));
        // x_k = (v y^3 - L Q) / L^2,  x_{k+1} = u y^2 / L
        let x_k = Fraction::new(&(&w * &y.pow(3)) - &(&l * &q), l.pow(2));
        let x_k1 = Fraction::new(&u * &y.pow(2), l.clone());
        let rules = vec![
            RewriteRule { var: U, power: 3, replacement: &(-&w.pow(2)) - &c(1) },
            RewriteRule { var: Y, power: 6, replacement: &(&l.pow(3) * &r) - &(&l.pow(2) * &q.pow(2)) },
        ];
        Self { x_k, x_k1, rules }
    }

    /// Curve relation `u^3 = -v^2` instead of `u^3 = -v^2 - 1`.
    pub fn without_curve_constant() -> Self {
        let mut param = Self::standard();
        param.rules[0].replacement = -&SparsePoly::<BigInt>::var(6, V).pow(2);
        param
    }

    /// `x_{k+1} = u y / L` instead of `u y^2 / L`.
    pub fn with_linear_y() -> Self {
        let mut param = Self::standard();
        let var = |i| SparsePoly::<BigInt>::var(6, i);
        param.x_k1 = Fraction::new(&var(U) * &var(Y), var(L));
        param
    }

    /// Numerator of the cover equation after substitution, reduced by the
    /// rewrite rules.
    pub fn residual(&self) -> SparsePoly<BigInt> {
        let v = |i| Fraction::poly(SparsePoly::<BigInt>::var(6, i));
        let two_q = Fraction::poly(SparsePoly::var(6, Q).scale(BigInt::from(2)));
        let cube = self.x_k1.mul(&self.x_k1).mul(&self.x_k1);
        let quadratic = v(L).mul(&self.x_k).mul(&self.x_k);
        let linear = two_q.mul(&self.x_k);
        let total = cube.add(&quadratic).add(&linear).add(&v(R));
        total.num.reduce(&self.rules)
    }

    pub fn verify(&self) -> bool {
        self.residual().is_zero()
    }
}

/// Checks that the standard parametrization lands on the cubic cover.
pub fn verify_cover_parametrization() -> bool {
    CoverParametrization::standard().verify()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_holds() {
        assert!(verify_cover_parametrization());
    }

    #[test]
    fn dropping_the_constant_in_the_curve_breaks_it() {
        assert!(!CoverParametrization::without_curve_constant().verify());
    }

    #[test]
    fn wrong_power_of_y_breaks_it() {
        assert!(!CoverParametrization::with_linear_y().verify());
    }

    #[test]
    fn reduction_reaches_normal_form() {
        let param = CoverParametrization::standard();
        let u = SparsePoly::<BigInt>::var(6, U);
        let reduced = u.pow(7).reduce(&param.rules);
        assert!(!reduced.is_zero());
        let max_u = reduced.terms.keys().map(|e| e[U]).max().unwrap();
        assert!(max_u < 3);
    }
}
