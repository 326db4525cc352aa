//! Monomial counts in the Jacobian ring of the Fermat hypersurface.
//!
//! For `F = sum x_j^d` the Jacobian ideal is `(x_0^{d-1}, ..., x_{n-1}^{d-1})`,
//! so a graded piece of the Jacobian ring is spanned by the monomials whose
//! exponents are all at most `d - 2`.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cyclotomic::CyclotomicData;
use crate::error::CyclotomicError;
use crate::HodgeStructure;

/// Cross-check budget for [`count_bounded_monomials`]: queries with at most
/// this many candidate exponent vectors are also counted by enumeration.
pub const CROSS_CHECK_CANDIDATES: u64 = 10_000;

/// Number of monomials of degree `m` in `n_vars` variables with every
/// exponent in `[0, d - 2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialCountQuery {
    pub n_vars: u32,
    pub d: u32,
    pub m: i64,
}

impl MonomialCountQuery {
    pub fn new(n_vars: u32, d: u32, m: i64) -> Self {
        Self { n_vars, d, m }
    }

    fn max_degree(&self) -> i64 {
        self.n_vars as i64 * (self.d as i64 - 2)
    }

    fn trivially_zero(&self) -> bool {
        self.m < 0 || self.m > self.max_degree() || self.d < 2
    }

    /// `sum_j (-1)^j C(n, j) C(m - j(d-1) + n - 1, n - 1)`, dropping the
    /// terms whose remaining degree is negative.
    pub fn inclusion_exclusion(&self) -> BigUint {
        if self.n_vars == 0 {
            return BigUint::from(u32::from(self.m == 0));
        }
        if self.trivially_zero() {
            return BigUint::zero();
        }
        let n = self.n_vars as i64;
        let step = self.d as i64 - 1;
        let mut total = BigInt::zero();
        for j in 0..=n {
            let rest = self.m - j * step;
            if rest < 0 {
                break;
            }
            let term = binomial(BigInt::from(n), BigInt::from(j))
                * binomial(BigInt::from(rest + n - 1), BigInt::from(n - 1));
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        debug_assert!(!total.is_negative());
        total.to_biguint().expect("inclusion-exclusion count is non-negative")
    }

    /// Size of the brute-force search space, `(d - 1)^n`, if it fits in `u64`.
    pub fn candidate_count(&self) -> Option<u64> {
        (self.d as u64).saturating_sub(1).checked_pow(self.n_vars)
    }

    /// Counts by walking every exponent vector in `[0, d - 2]^n`.
    pub fn enumerate(&self) -> BigUint {
        if self.trivially_zero() {
            return BigUint::zero();
        }
        let mut hits = 0u64;
        for_each_tuple_sum(self.n_vars as usize, 0, self.d - 2, |sum| {
            if sum as i64 == self.m {
                hits += 1;
            }
        });
        BigUint::from(hits)
    }
}

/// Calls `visit` with the coordinate sum of every tuple in `[lo, hi]^len`.
pub(crate) fn for_each_tuple_sum(len: usize, lo: u32, hi: u32, mut visit: impl FnMut(u32)) {
    if hi < lo {
        return;
    }
    let mut digits = vec![lo; len];
    let mut sum = lo * len as u32;
    loop {
        visit(sum);
        let mut pos = 0;
        loop {
            if pos == len {
                return;
            }
            if digits[pos] < hi {
                digits[pos] += 1;
                sum += 1;
                break;
            }
            sum -= digits[pos] - lo;
            digits[pos] = lo;
            pos += 1;
        }
    }
}

/// Bounded-exponent monomial count. Small queries are counted both in
/// closed form and by enumeration, and the two must agree.
pub fn count_bounded_monomials(q: MonomialCountQuery) -> BigUint {
    let count = q.inclusion_exclusion();
    if q.candidate_count().is_some_and(|c| c <= CROSS_CHECK_CANDIDATES) {
        assert_eq!(count, q.enumerate(), "monomial count mismatch for {q:?}");
    }
    count
}

pub(crate) fn count(n_vars: u32, d: u32, m: i64) -> BigUint {
    count_bounded_monomials(MonomialCountQuery::new(n_vars, d, m))
}

/// Primitive Hodge numbers `(p, h^{p, k-p}_0)` of a smooth degree `d`
/// hypersurface of dimension `k`, listed from `p = k` down to `p = 0`.
pub fn hypersurface_hodge_numbers(d: u32, k: u32) -> Vec<(u32, BigUint)> {
    (0..=k)
        .map(|q| {
            let m = d as i64 * (q as i64 + 1) - k as i64 - 2;
            (k - q, count(k + 2, d, m))
        })
        .collect()
}

/// `dim H^k_0` of a smooth degree `d` hypersurface of dimension `k`.
pub fn primitive_rank(d: u32, k: u32) -> BigUint {
    hypersurface_hodge_numbers(d, k).into_iter().map(|(_, h)| h).sum()
}

/// Eigenspace dimensions `h^{k-q,q}_0(Y_k)(i)` of the cyclic cover
/// `Y_k: x_{k+1}^d + F(x_0..x_k) = 0`, for every residue `i` in `1..d`, as a
/// Hodge structure graded by `i`. The residue `0` never occurs in primitive
/// cohomology of `Y_k`.
pub fn eigenspace_dims(d: u32, k: u32) -> Result<HodgeStructure, CyclotomicError> {
    let field = CyclotomicData::new(d)?;
    let entries = (0..=k).flat_map(|q| {
        (1..d).map(move |i| {
            let m = d as i64 * (q as i64 + 1) - k as i64 - 1 - i as i64;
            ((k - q, i), count(k + 1, d, m))
        })
    });
    Ok(HodgeStructure::new(field, k, 1..d, entries).expect("eigenspace table is symmetric"))
}

/// Number of `(k+1)`-tuples `a_j` in `[1, d-1]` with `sum a_j + i = d(q+1)`,
/// counted by enumerating every tuple.
pub fn shioda_tuple_count(d: u32, k: u32, q: u32, i: u32) -> BigUint {
    let target = d as i64 * (q as i64 + 1) - i as i64;
    let mut hits = 0u64;
    for_each_tuple_sum(k as usize + 1, 1, d.saturating_sub(1), |sum| {
        if sum as i64 == target {
            hits += 1;
        }
    });
    BigUint::from(hits)
}

/// Histogram of tuple sums over `[1, d-1]^{k+1}`, filled by one pass of
/// enumeration; answers the same question as [`shioda_tuple_count`] for
/// every `(q, i)` at once.
#[derive(Debug, Clone)]
pub struct ShiodaTable {
    d: u32,
    by_sum: Vec<u64>,
}

impl ShiodaTable {
    pub fn enumerate(d: u32, k: u32) -> Self {
        let len = k as usize + 1;
        let mut by_sum = vec![0u64; len * d as usize + 1];
        for_each_tuple_sum(len, 1, d.saturating_sub(1), |sum| by_sum[sum as usize] += 1);
        Self { d, by_sum }
    }

    pub fn count(&self, q: u32, i: u32) -> BigUint {
        let target = self.d as i64 * (q as i64 + 1) - i as i64;
        let hits = usize::try_from(target)
            .ok()
            .and_then(|t| self.by_sum.get(t))
            .copied()
            .unwrap_or(0);
        BigUint::from(hits)
    }
}

pub fn to_u64(n: &BigUint) -> u64 {
    n.to_u64().expect("dimension fits in u64")
}
