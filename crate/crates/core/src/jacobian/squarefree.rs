//! Polynomials modulo `(x_0^2, ..., x_{n-1}^2)`: the Jacobian ring of the
//! Fermat cubic. Monomials are sets of variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::Num;

/// A square-free monomial as a bit set of variable indices (at most 64).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SquareFreeMonomial(u64);

impl SquareFreeMonomial {
    pub const ONE: Self = Self(0);

    pub fn var(i: u32) -> Self {
        assert!(i < 64, "variable index {i} out of range");
        Self(1 << i)
    }

    pub fn from_vars(vars: &[u32]) -> Option<Self> {
        let mut bits = 0u64;
        for &i in vars {
            let bit = Self::var(i).0;
            if bits & bit != 0 {
                return None;
            }
            bits |= bit;
        }
        Some(Self(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, i: u32) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn vars(self) -> impl Iterator<Item = u32> {
        (0..64).filter(move |&i| self.0 >> i & 1 == 1)
    }

    /// Product, or `None` when a variable would be squared.
    pub fn times(self, other: Self) -> Option<Self> {
        (self.0 & other.0 == 0).then_some(Self(self.0 | other.0))
    }

    /// Highest variable index plus one.
    pub fn span(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    /// All square-free monomials of degree `degree` in the variables
    /// `vars`, in increasing bit order.
    pub fn all_of_degree(vars: &[u32], degree: i64) -> Vec<Self> {
        if degree < 0 || degree as usize > vars.len() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(degree as usize);
        fn go(vars: &[u32], start: usize, left: usize, chosen: &mut Vec<u32>, out: &mut Vec<SquareFreeMonomial>) {
            if left == 0 {
                out.push(SquareFreeMonomial::from_vars(chosen).expect("distinct variables"));
                return;
            }
            for idx in start..=vars.len() - left {
                chosen.push(vars[idx]);
                go(vars, idx + 1, left - 1, chosen, out);
                chosen.pop();
            }
        }
        go(vars, 0, degree as usize, &mut chosen, &mut out);
        out.sort_unstable();
        out
    }
}

impl fmt::Display for SquareFreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for i in self.vars() {
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

/// Linear combination of square-free monomials over a fixed set of
/// `variable_count` variables. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeElement<T> {
    variable_count: u32,
    terms: BTreeMap<SquareFreeMonomial, T>,
}

impl<T: Clone + Num> SquareFreeElement<T> {
    pub fn zero(variable_count: u32) -> Self {
        assert!(variable_count <= 64, "at most 64 variables");
        Self { variable_count, terms: BTreeMap::new() }
    }

    pub fn monomial(variable_count: u32, monomial: SquareFreeMonomial, coefficient: T) -> Self {
        Self::from_terms(variable_count, [(monomial, coefficient)])
    }

    pub fn from_terms(
        variable_count: u32,
        terms: impl IntoIterator<Item = (SquareFreeMonomial, T)>,
    ) -> Self {
        let mut element = Self::zero(variable_count);
        for (m, c) in terms {
            element.add_term(m, c);
        }
        element
    }

    /// `x_i` as an element.
    pub fn var(variable_count: u32, i: u32) -> Self {
        assert!(i < variable_count, "x{i} is not among {variable_count} variables");
        Self::monomial(variable_count, SquareFreeMonomial::var(i), T::one())
    }

    pub fn add_term(&mut self, monomial: SquareFreeMonomial, coefficient: T) {
        assert!(
            monomial.span() <= self.variable_count,
            "monomial {monomial} uses variables outside x0..x{}",
            self.variable_count.saturating_sub(1)
        );
        let sum = match self.terms.remove(&monomial) {
            Some(c) => c + coefficient,
            None => coefficient,
        };
        if !sum.is_zero() {
            self.terms.insert(monomial, sum);
        }
    }

    pub fn variable_count(&self) -> u32 {
        self.variable_count
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (SquareFreeMonomial, &T)> + '_ {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coefficient(&self, monomial: SquareFreeMonomial) -> T {
        self.terms.get(&monomial).cloned().unwrap_or_else(T::zero)
    }

    /// The common degree of all terms, or `None` for zero and for
    /// inhomogeneous elements.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.variable_count, self.terms().map(|(m, x)| (m, x.clone() * c.clone())))
    }
}

/// Product in the square-free ring: any term containing a squared variable
/// is dropped.
pub fn sf_multiply<T: Clone + Num>(a: &SquareFreeElement<T>, b: &SquareFreeElement<T>) -> SquareFreeElement<T> {
    assert_eq!(a.variable_count, b.variable_count, "factors live in different variable sets");
    let mut product = SquareFreeElement::zero(a.variable_count);
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            if let Some(m) = ma.times(mb) {
                product.add_term(m, ca.clone() * cb.clone());
            }
        }
    }
    product
}

impl<T: Clone + Num> Mul for &SquareFreeElement<T> {
    type Output = SquareFreeElement<T>;

    fn mul(self, rhs: Self) -> SquareFreeElement<T> {
        sf_multiply(self, rhs)
    }
}

impl<T: Clone + Num> Add for &SquareFreeElement<T> {
    type Output = SquareFreeElement<T>;

    fn add(self, rhs: Self) -> SquareFreeElement<T> {
        assert_eq!(self.variable_count, rhs.variable_count, "summands live in different variable sets");
        let mut sum = self.clone();
        for (m, c) in rhs.terms() {
            sum.add_term(m, c.clone());
        }
        sum
    }
}

impl<T: Clone + Num + fmt::Display> fmt::Display for SquareFreeElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type E = SquareFreeElement<BigRational>;

    fn mono(vars: &[u32]) -> E {
        E::monomial(8, SquareFreeMonomial::from_vars(vars).unwrap(), BigRational::from_integer(1.into()))
    }

    #[test]
    fn products() {
        assert!((&mono(&[0]) * &mono(&[0])).is_zero());
        assert_eq!(&mono(&[0, 1, 2]) * &mono(&[5, 6, 3]), mono(&[0, 1, 2, 3, 5, 6]));
        let sum = &mono(&[0, 1, 2]) + &mono(&[1, 2, 3]);
        assert_eq!(&sum * &mono(&[0, 4]), mono(&[0, 1, 2, 3, 4]));
    }

    #[test]
    fn degrees() {
        assert_eq!(mono(&[1, 4]).degree(), Some(2));
        assert_eq!(E::zero(8).degree(), None);
        assert_eq!((&mono(&[1]) + &mono(&[2, 3])).degree(), None);
        assert!(SquareFreeMonomial::from_vars(&[2, 2]).is_none());
    }

    #[test]
    fn enumerates_combinations() {
        let all = SquareFreeMonomial::all_of_degree(&[0, 1, 2, 3, 4], 2);
        assert_eq!(all.len(), 10);
        assert!(SquareFreeMonomial::all_of_degree(&[0, 1], 3).is_empty());
        assert_eq!(SquareFreeMonomial::all_of_degree(&[0, 1], 0), vec![SquareFreeMonomial::ONE]);
        assert_eq!(mono(&[0, 3]).to_string(), "x0x3");
    }

    fn element() -> impl Strategy<Value = SquareFreeElement<i64>> {
        proptest::collection::vec((0u64..64, -3i64..4), 0..6).prop_map(|terms| {
            SquareFreeElement::from_terms(6, terms.into_iter().map(|(bits, c)| (SquareFreeMonomial(bits), c)))
        })
    }

    fn homogeneous(degree: i64) -> impl Strategy<Value = SquareFreeElement<i64>> {
        let monos = SquareFreeMonomial::all_of_degree(&[0, 1, 2, 3, 4, 5], degree);
        proptest::collection::vec((0..monos.len(), 1i64..4), 1..4).prop_map(move |terms| {
            SquareFreeElement::from_terms(6, terms.into_iter().map(|(i, c)| (monos[i], c)))
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in element(), b in element(), c in element()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn degree_adds(a in homogeneous(2), b in homogeneous(1)) {
            let product = &a * &b;
            if !product.is_zero() {
                prop_assert_eq!(product.degree(), Some(3));
            }
        }
    }
}
