//! Graded pieces of `W` for cubic covers as explicit quotients of the
//! square-free ring, and the rank of the differential of its period map.
//!
//! For `d = 3` the cubic `(k+1)`-fold `Z: x_{k+2}^3 + x_{k+1}^3 + F(x_0..x_k)`
//! has Jacobian ring spanned by square-free monomials in `x_0..x_{k+2}`. The
//! piece of `H^{k+1}_0(Z)` coming from `X_{k-1}` is spanned by the monomials
//! containing exactly one of `x_{k+1}, x_{k+2}`; quotienting it out leaves
//! `W`. A degree `m = 3p + 3 - k` quotient is the piece `W^{k-p, p+1}`.

use num_traits::{Num, One, Zero};

use super::linalg::{fraction_free_rank, Echelon};
use super::squarefree::{SquareFreeElement, SquareFreeMonomial};
use crate::error::JacobianError;
use crate::Rational;

/// Which relations cut `W` out of the ambient square-free piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationScheme {
    /// `x_{k+1} mu` and `x_{k+2} mu` separately: the whole `X_{k-1}` part.
    SplitBranches,
    /// Only `(x_{k+1} + x_{k+2}) mu`. This leaves one copy of the
    /// `X_{k-1}` part in the quotient.
    SummedBranches,
}

#[derive(Debug, Clone)]
pub struct GradedQuotient<T> {
    k: u32,
    degree: i64,
    ambient: Vec<SquareFreeMonomial>,
    relations: Vec<Vec<T>>,
    echelon: Echelon<T>,
    basis: Vec<usize>,
}

/// Ambient degree of the quotient indexed by `p`.
pub fn quotient_degree(k: u32, p: i64) -> i64 {
    3 * p + 3 - k as i64
}

impl<T: Clone + Num> GradedQuotient<T> {
    /// Builds the quotient of the degree `3p + 3 - k` square-free piece in
    /// `x_0..x_{k+2}`. Out-of-range degrees give the zero space.
    pub fn build(k: u32, p: i64, scheme: RelationScheme) -> Self {
        let degree = quotient_degree(k, p);
        let all_vars: Vec<u32> = (0..k + 3).collect();
        let base_vars: Vec<u32> = (0..=k).collect();
        let ambient = SquareFreeMonomial::all_of_degree(&all_vars, degree);
        let column = |m: SquareFreeMonomial| ambient.binary_search(&m).expect("monomial in ambient basis");
        let (a, b) = (SquareFreeMonomial::var(k + 1), SquareFreeMonomial::var(k + 2));

        let mut relations = Vec::new();
        for mu in SquareFreeMonomial::all_of_degree(&base_vars, degree - 1) {
            let left = column(mu.times(a).expect("mu avoids x_{k+1}"));
            let right = column(mu.times(b).expect("mu avoids x_{k+2}"));
            let unit = |cols: &[usize]| {
                let mut row = vec![T::zero(); ambient.len()];
                for &c in cols {
                    row[c] = T::one();
                }
                row
            };
            match scheme {
                RelationScheme::SplitBranches => {
                    relations.push(unit(&[left]));
                    relations.push(unit(&[right]));
                }
                RelationScheme::SummedBranches => relations.push(unit(&[left, right])),
            }
        }
        let echelon = Echelon::new(relations.clone(), ambient.len());
        let basis = echelon.free_columns();
        Self { k, degree, ambient, relations, echelon, basis }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn ambient(&self) -> &[SquareFreeMonomial] {
        &self.ambient
    }

    pub fn relations(&self) -> &[Vec<T>] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Ambient monomials whose classes form the chosen quotient basis.
    pub fn basis_monomials(&self) -> Vec<SquareFreeMonomial> {
        self.basis.iter().map(|&c| self.ambient[c]).collect()
    }

    /// Rank of the relations by fraction-free elimination; must agree with
    /// the echelon form used for reduction.
    pub fn relation_rank(&self) -> usize {
        fraction_free_rank(&self.relations)
    }

    /// Coordinates of the class of `element` in the quotient basis.
    /// Terms outside this degree are ignored.
    pub fn coordinates(&self, element: &SquareFreeElement<T>) -> Vec<T> {
        let mut v = vec![T::zero(); self.ambient.len()];
        for (m, c) in element.terms() {
            if let Ok(col) = self.ambient.binary_search(&m) {
                v[col] = v[col].clone() + c.clone();
            }
        }
        self.echelon.reduce(&mut v);
        self.basis.iter().map(|&c| v[c].clone()).collect()
    }

    pub fn is_zero_class(&self, element: &SquareFreeElement<T>) -> bool {
        self.coordinates(element).iter().all(Zero::is_zero)
    }

    /// Whether the classes of `monomials` are linearly independent.
    pub fn independent(&self, monomials: &[SquareFreeMonomial]) -> bool {
        self.classes_rank(monomials) == monomials.len()
    }

    /// Whether the classes of `monomials` span the quotient.
    pub fn spans(&self, monomials: &[SquareFreeMonomial]) -> bool {
        self.classes_rank(monomials) == self.dim()
    }

    fn classes_rank(&self, monomials: &[SquareFreeMonomial]) -> usize {
        let rows: Vec<Vec<T>> = monomials
            .iter()
            .map(|&m| self.coordinates(&SquareFreeElement::monomial(self.k + 3, m, T::one())))
            .collect();
        fraction_free_rank(&rows)
    }
}

/// `W` piece for the cubic cover at index `p`, over the rationals, with the
/// full `X_{k-1}` part quotiented out.
pub fn build_w_quotient(k: u32, p: i64) -> GradedQuotient<Rational> {
    GradedQuotient::build(k, p, RelationScheme::SplitBranches)
}

/// The basis written down alongside the relations: square-free monomials
/// of degree `m` in `x_0..x_{k-1}` plus `x_{k+1} x_{k+2} M` with `M` of
/// degree `m - 2` in `x_0..x_{k-1}`. Compared against the quotient, never
/// used to build it.
pub fn claimed_basis(k: u32, p: i64) -> Vec<SquareFreeMonomial> {
    let degree = quotient_degree(k, p);
    let vars: Vec<u32> = (0..k).collect();
    let pair = SquareFreeMonomial::from_vars(&[k + 1, k + 2]).expect("distinct");
    let mut basis = SquareFreeMonomial::all_of_degree(&vars, degree);
    basis.extend(
        SquareFreeMonomial::all_of_degree(&vars, degree - 2)
            .into_iter()
            .map(|m| m.times(pair).expect("disjoint")),
    );
    basis
}

/// Outcome of the infinitesimal Torelli computation at the Fermat cubic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorelliComputation {
    pub k: u32,
    /// Square-free cubics in `x_0..x_k`, i.e. `C(k+1, 3)`.
    pub deformation_dim: usize,
    /// `(p, dim W piece)` for every `p` with a nonzero piece.
    pub quotient_dims: Vec<(i64, usize)>,
    /// Rank of `G -> (multiplication by G between consecutive pieces)`.
    pub rank: usize,
    /// `G = x_0 x_1 x_2` sends every `x_{k+1} x_{k+2} M`, `M` square-free in
    /// `x_3..x_{k-1}`, to a nonzero class.
    pub witness_nonzero: bool,
}

impl TorelliComputation {
    pub fn injective(&self) -> bool {
        self.rank == self.deformation_dim
    }
}

fn check_torelli_case(k: u32) -> Result<(), JacobianError> {
    if k <= 3 || k % 3 != 1 {
        return Err(JacobianError::Unsupported(format!(
            "differential of the period map needs k = 3q + 1 > 3, got k = {k}"
        )));
    }
    if k + 3 > 64 {
        return Err(JacobianError::TooManyVariables(k + 3));
    }
    Ok(())
}

fn index_range(k: u32) -> std::ops::RangeInclusive<i64> {
    let k = k as i64;
    let lo = (k - 3).div_euclid(3) + i64::from((k - 3).rem_euclid(3) != 0);
    lo..=(2 * k).div_euclid(3)
}

/// Computes the rank of the differential of `X_{k-1} -> W` at the Fermat
/// cubic, plus the single-witness check.
pub fn torelli_differential(k: u32) -> Result<TorelliComputation, JacobianError> {
    check_torelli_case(k)?;
    let nvars = k + 3;
    let pieces: Vec<(i64, GradedQuotient<Rational>)> =
        index_range(k).map(|p| (p, build_w_quotient(k, p))).collect();
    let quotient_dims = pieces.iter().map(|(p, q)| (*p, q.dim())).filter(|&(_, d)| d > 0).collect();

    let base_vars: Vec<u32> = (0..=k).collect();
    let cubics = SquareFreeMonomial::all_of_degree(&base_vars, 3);
    let one = Rational::one();
    let mut rows = Vec::with_capacity(cubics.len());
    for &g in &cubics {
        let g = SquareFreeElement::monomial(nvars, g, one.clone());
        let mut row = Vec::new();
        for pair in pieces.windows(2) {
            let (source, target) = (&pair[0].1, &pair[1].1);
            for b in source.basis_monomials() {
                let image = &g * &SquareFreeElement::monomial(nvars, b, one.clone());
                row.extend(target.coordinates(&image));
            }
        }
        rows.push(row);
    }
    let rank = fraction_free_rank(&rows);

    let witness = SquareFreeElement::monomial(nvars, SquareFreeMonomial::from_vars(&[0, 1, 2]).expect("distinct"), one.clone());
    let pair = SquareFreeMonomial::from_vars(&[k + 1, k + 2]).expect("distinct");
    let tail: Vec<u32> = (3..k).collect();
    let mut tested = 0;
    let mut witness_nonzero = true;
    for window in pieces.windows(2) {
        let (source, target) = (&window[0].1, &window[1].1);
        for m in SquareFreeMonomial::all_of_degree(&tail, source.degree() - 2) {
            let element = SquareFreeElement::monomial(nvars, m.times(pair).expect("disjoint"), one.clone());
            if source.is_zero_class(&element) {
                continue;
            }
            tested += 1;
            witness_nonzero &= !target.is_zero_class(&(&witness * &element));
        }
    }

    Ok(TorelliComputation {
        k,
        deformation_dim: cubics.len(),
        quotient_dims,
        rank,
        witness_nonzero: witness_nonzero && tested > 0,
    })
}

pub fn torelli_differential_rank(k: u32) -> Result<usize, JacobianError> {
    torelli_differential(k).map(|t| t.rank)
}
