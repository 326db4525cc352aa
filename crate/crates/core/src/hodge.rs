//! Rational Hodge structures carrying an action of `Q(zeta_d)`, stored as
//! tables of eigenspace dimensions.
//!
//! An entry `h[(p, a)]` is the dimension of the piece of `V^{p, k-p}` on which
//! the generator acts as `zeta^a`. The half twists move the positive and the
//! negative eigenspaces (for the standard CM-type) in opposite directions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::AddAssign;

use num_traits::Unsigned;

use crate::cyclotomic::{CyclotomicData, Side};
use crate::error::HodgeError;

/// Scalar type used for eigenspace dimensions.
///
/// Anything unsigned from `num-traits` works; the crate root fixes
/// [`num_bigint::BigUint`] for the structures it builds itself.
pub trait Dimension:
    Unsigned + Clone + Ord + Hash + Debug + Display + for<'a> AddAssign<&'a Self> + Send + Sync
{
}

impl<T> Dimension for T where
    T: Unsigned + Clone + Ord + Hash + Debug + Display + for<'a> AddAssign<&'a T> + Send + Sync
{
}

#[derive(Debug, Clone)]
pub struct CmHodgeStructure<D> {
    field: CyclotomicData,
    weight: u32,
    support: BTreeSet<u32>,
    table: BTreeMap<(u32, u32), D>,
}

/// Equality compares the field degree, the weight and the full table; the
/// declared residue support is bookkeeping only.
impl<D: Dimension> PartialEq for CmHodgeStructure<D> {
    fn eq(&self, other: &Self) -> bool {
        self.field.degree() == other.field.degree()
            && self.weight == other.weight
            && self.table == other.table
    }
}

impl<D: Dimension> Eq for CmHodgeStructure<D> {}

fn insert_add<K: Ord, D: Dimension>(table: &mut BTreeMap<K, D>, key: K, value: D) {
    if value.is_zero() {
        return;
    }
    match table.get_mut(&key) {
        Some(slot) => *slot += &value,
        None => {
            table.insert(key, value);
        }
    }
}

impl<D: Dimension> CmHodgeStructure<D> {
    /// Builds a structure from `((p, a), dim)` entries, summing repeats and
    /// dropping zeros. Every entry must lie in `0 <= p <= weight` with `a` in
    /// `support`, and the table must be symmetric under
    /// `(p, a) -> (weight - p, -a)`.
    pub fn new(
        field: CyclotomicData,
        weight: u32,
        support: impl IntoIterator<Item = u32>,
        entries: impl IntoIterator<Item = ((u32, u32), D)>,
    ) -> Result<Self, HodgeError> {
        let d = field.degree();
        let support: BTreeSet<u32> = support.into_iter().map(|a| a % d).collect();
        let mut table = BTreeMap::new();
        for ((p, a), dim) in entries {
            if p > weight || !support.contains(&(a % d)) {
                if dim.is_zero() {
                    continue;
                }
                return Err(HodgeError::OutOfRange { p, a, weight });
            }
            insert_add(&mut table, (p, a % d), dim);
        }
        let structure = Self { field, weight, support, table };
        structure.check_symmetry()?;
        Ok(structure)
    }

    fn from_parts(
        field: CyclotomicData,
        weight: u32,
        support: BTreeSet<u32>,
        table: BTreeMap<(u32, u32), D>,
    ) -> Self {
        let structure = Self { field, weight, support, table };
        debug_assert!(structure.check_symmetry().is_ok());
        structure
    }

    fn check_symmetry(&self) -> Result<(), HodgeError> {
        for (&(p, a), dim) in &self.table {
            if self.get(self.weight - p, self.field.negate(a)) != *dim {
                return Err(HodgeError::Asymmetric { p, a });
            }
        }
        Ok(())
    }

    /// The field itself as a weight zero structure: `h[(0, a)] = 1` on units.
    pub fn trivial(field: &CyclotomicData) -> Self {
        let table = field.units().iter().map(|&a| ((0, a), D::one())).collect();
        let support = field.units().iter().copied().collect();
        Self::from_parts(field.clone(), 0, support, table)
    }

    /// Rank one, weight zero, residue zero: the unit for [`Self::tensor`].
    pub fn tensor_unit(field: &CyclotomicData) -> Self {
        Self::from_parts(
            field.clone(),
            0,
            BTreeSet::from([0]),
            BTreeMap::from([((0, 0), D::one())]),
        )
    }

    /// `K_{-1/2}`: weight one, `h[(1, a)] = 1` on the CM-type and
    /// `h[(0, a)] = 1` on its conjugate.
    pub fn k_minus_half(field: &CyclotomicData) -> Self {
        let table = field
            .units()
            .iter()
            .map(|&a| {
                let p = if field.side(a) == Side::Positive { 1 } else { 0 };
                ((p, a), D::one())
            })
            .collect();
        let support = field.units().iter().copied().collect();
        Self::from_parts(field.clone(), 1, support, table)
    }

    pub fn field(&self) -> &CyclotomicData {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.field.degree()
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn support(&self) -> &BTreeSet<u32> {
        &self.support
    }

    pub fn get(&self, p: u32, a: u32) -> D {
        self.table.get(&(p, a % self.degree())).cloned().unwrap_or_else(D::zero)
    }

    /// Nonzero entries in `(p, a)` order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &D)> + '_ {
        self.table.iter().map(|(&(p, a), dim)| (p, a, dim))
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn rank(&self) -> D {
        let mut total = D::zero();
        for dim in self.table.values() {
            total += dim;
        }
        total
    }

    /// `dim V^{p, k-p}` for `p = 0..=k`, eigenspaces summed.
    pub fn hodge_numbers(&self) -> Vec<D> {
        let mut numbers = vec![D::zero(); self.weight as usize + 1];
        for (&(p, _), dim) in &self.table {
            numbers[p as usize] += dim;
        }
        numbers
    }

    /// Rank of the eigenspace for residue `a`, summed over `p`.
    pub fn residue_rank(&self, a: u32) -> D {
        let a = a % self.degree();
        let mut total = D::zero();
        for (_, _, dim) in self.entries().filter(|&(_, b, _)| b == a) {
            total += dim;
        }
        total
    }

    /// Keeps the residues selected by `keep`. The selection must be closed
    /// under `a -> -a` for the result to stay symmetric.
    pub fn restrict(&self, keep: impl Fn(u32) -> bool) -> Result<Self, HodgeError> {
        Self::new(
            self.field.clone(),
            self.weight,
            self.support.iter().copied().filter(|&a| keep(a)),
            self.entries()
                .filter(|&(_, a, _)| keep(a))
                .map(|(p, a, dim)| ((p, a), dim.clone())),
        )
    }

    /// `max |2p - k|` over the nonzero entries.
    pub fn level(&self) -> Result<u32, HodgeError> {
        let k = self.weight as i64;
        self.table
            .keys()
            .map(|&(p, _)| (2 * p as i64 - k).unsigned_abs() as u32)
            .max()
            .ok_or(HodgeError::UndefinedLevel)
    }

    /// `V(m)`: weight `k - 2m`, every entry moves from `p` to `p - m`.
    pub fn tate_twist(&self, m: i32) -> Result<Self, HodgeError> {
        let out_of_range = HodgeError::TwistOutOfRange { weight: self.weight, twist: m };
        let weight = self.weight as i64 - 2 * m as i64;
        if weight < 0 {
            return Err(out_of_range);
        }
        let mut table = BTreeMap::new();
        for (&(p, a), dim) in &self.table {
            let shifted = p as i64 - m as i64;
            if shifted < 0 || shifted > weight {
                return Err(out_of_range);
            }
            table.insert((shifted as u32, a), dim.clone());
        }
        Ok(Self::from_parts(self.field.clone(), weight as u32, self.support.clone(), table))
    }

    fn require_cm(&self) -> Result<(), HodgeError> {
        match self.table.keys().find(|&&(_, a)| self.field.side(a) == Side::Real) {
            Some(&(_, a)) => Err(HodgeError::NonCmResidue(a)),
            None => Ok(()),
        }
    }

    /// `V_{-1/2}`: weight `k + 1`, positive eigenspaces move up one step in
    /// `p`, negative ones stay.
    pub fn neg_half_twist(&self) -> Result<Self, HodgeError> {
        self.require_cm()?;
        let table = self
            .table
            .iter()
            .map(|(&(p, a), dim)| {
                let shift = u32::from(self.field.side(a) == Side::Positive);
                ((p + shift, a), dim.clone())
            })
            .collect();
        Ok(Self::from_parts(self.field.clone(), self.weight + 1, self.support.clone(), table))
    }

    /// Top-piece entries `(k, a)` with `a` outside the CM-type; the positive
    /// half twist exists exactly when this is empty.
    pub fn half_twist_obstructions(&self) -> Vec<(u32, u32)> {
        self.table
            .keys()
            .filter(|&&(p, a)| p == self.weight && self.field.side(a) != Side::Positive)
            .copied()
            .collect()
    }

    /// `V_{1/2}`: weight `k - 1`, positive eigenspaces move down one step in
    /// `p`, negative ones stay. Requires the negative part of the top piece
    /// to vanish.
    pub fn pos_half_twist(&self) -> Result<Self, HodgeError> {
        self.require_cm()?;
        let offending = self.half_twist_obstructions();
        if !offending.is_empty() || self.weight == 0 {
            return Err(HodgeError::NoHalfTwist { offending });
        }
        let mut table = BTreeMap::new();
        for (&(p, a), dim) in &self.table {
            let target = if self.field.side(a) == Side::Positive { p.checked_sub(1) } else { Some(p) };
            // A positive entry at p = 0 would land at p = -1; symmetry makes
            // it the conjugate of an obstruction, so it cannot occur here.
            let Some(target) = target else {
                return Err(HodgeError::NoHalfTwist { offending: vec![(p, a)] });
            };
            table.insert((target, a), dim.clone());
        }
        Ok(Self::from_parts(self.field.clone(), self.weight - 1, self.support.clone(), table))
    }

    fn same_field(&self, other: &Self) -> Result<(), HodgeError> {
        if self.degree() != other.degree() {
            return Err(HodgeError::FieldMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }

    /// Tensor product keeping the residue of each factor separately.
    pub fn tensor_graded(&self, other: &Self) -> Result<PairedTensor<D>, HodgeError> {
        self.same_field(other)?;
        let mut entries = BTreeMap::new();
        for (&(p1, a1), h1) in &self.table {
            for (&(p2, a2), h2) in &other.table {
                insert_add(&mut entries, (p1 + p2, a1, a2), h1.clone() * h2.clone());
            }
        }
        Ok(PairedTensor {
            field: self.field.clone(),
            weight: self.weight + other.weight,
            left_support: self.support.clone(),
            entries,
        })
    }

    /// Tensor product graded by the total residue `a1 + a2 mod d`, which is
    /// the eigenvalue of the diagonal automorphism.
    pub fn tensor(&self, other: &Self) -> Result<Self, HodgeError> {
        Ok(self.tensor_graded(other)?.total())
    }

    /// The part on which the generator acts with eigenvalue `zeta^shift`,
    /// together with its complex conjugate `zeta^-shift` so that the result
    /// is again rational. `shift = 0` gives the invariants.
    pub fn invariant_part(&self, shift: u32) -> Self {
        let d = self.degree();
        let keep = [shift % d, self.field.negate(shift)];
        let table = self
            .table
            .iter()
            .filter(|(&(_, a), _)| keep.contains(&a))
            .map(|(&key, dim)| (key, dim.clone()))
            .collect();
        Self::from_parts(self.field.clone(), self.weight, keep.into_iter().collect(), table)
    }

    /// Entrywise sum of two structures of the same weight.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, HodgeError> {
        self.same_field(other)?;
        if self.weight != other.weight {
            return Err(HodgeError::OutOfRange { p: other.weight, a: 0, weight: self.weight });
        }
        let mut table = self.table.clone();
        for (&key, dim) in &other.table {
            insert_add(&mut table, key, dim.clone());
        }
        let support = self.support.union(&other.support).copied().collect();
        Ok(Self::from_parts(self.field.clone(), self.weight, support, table))
    }

    /// `V^{oplus n}`.
    pub fn scaled(&self, n: &D) -> Self {
        let mut table = BTreeMap::new();
        for (&key, dim) in &self.table {
            insert_add(&mut table, key, dim.clone() * n.clone());
        }
        Self::from_parts(self.field.clone(), self.weight, self.support.clone(), table)
    }

    /// Dimension and CM signature of the abelian variety whose `H^1` is this
    /// weight one structure.
    pub fn abelian_summary(&self) -> Result<AbelianSummary<D>, HodgeError> {
        if self.weight != 1 {
            return Err(HodgeError::NotWeightOne(self.weight));
        }
        let rank = self.rank();
        let two = D::one() + D::one();
        if !(rank.clone() % two.clone()).is_zero() {
            return Err(HodgeError::OddRank);
        }
        let signature = self
            .support
            .iter()
            .copied()
            .filter(|&a| self.field.side(a) == Side::Positive)
            .map(|a| (a, (self.get(1, a), self.get(1, self.field.negate(a)))))
            .collect();
        Ok(AbelianSummary { dim_abelian: rank / two, signature })
    }
}

/// `V (x) U` with both eigen-residues retained: entries `(p, a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedTensor<D> {
    field: CyclotomicData,
    weight: u32,
    left_support: BTreeSet<u32>,
    entries: BTreeMap<(u32, u32, u32), D>,
}

/// How the two field actions on a tensor product are matched up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Matching {
    /// `(x (x) 1) w = (1 (x) conj(x)) w`, i.e. residues `a + b = 0`.
    Conjugate,
    /// `(x (x) 1) w = (1 (x) x) w`, i.e. residues `a = b`.
    Equal,
}

impl<D: Dimension> PairedTensor<D> {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, u32, &D)> + '_ {
        self.entries.iter().map(|(&(p, a, b), dim)| (p, a, b, dim))
    }

    pub fn total(&self) -> CmHodgeStructure<D> {
        let mut table = BTreeMap::new();
        for (&(p, a, b), dim) in &self.entries {
            insert_add(&mut table, (p, self.field.add(a, b)), dim.clone());
        }
        let support = (0..self.field.degree()).collect();
        CmHodgeStructure::from_parts(self.field.clone(), self.weight, support, table)
    }

    /// Subspace where the two actions agree under `rule`, graded by the
    /// residue of the left factor.
    pub fn matched(&self, rule: Matching) -> CmHodgeStructure<D> {
        let keep = |a: u32, b: u32| match rule {
            Matching::Conjugate => self.field.add(a, b) == 0,
            Matching::Equal => a == b,
        };
        self.keyed_by_left(keep)
    }

    /// All entries satisfying `keep`, graded by the left residue.
    pub fn keyed_by_left(&self, keep: impl Fn(u32, u32) -> bool) -> CmHodgeStructure<D> {
        let mut table = BTreeMap::new();
        for (&(p, a, b), dim) in &self.entries {
            if keep(a, b) {
                insert_add(&mut table, (p, a), dim.clone());
            }
        }
        CmHodgeStructure::from_parts(
            self.field.clone(),
            self.weight,
            self.left_support.clone(),
            table,
        )
    }
}

/// `dim_abelian` plus, for each positive residue `a`, the multiplicities of
/// `sigma_a` and of its conjugate on `H^{1,0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianSummary<D> {
    pub dim_abelian: D,
    pub signature: BTreeMap<u32, (D, D)>,
}

impl<D: Dimension> AbelianSummary<D> {
    /// Sum of all signature multiplicities.
    pub fn signature_total(&self) -> D {
        let mut total = D::zero();
        for (m, n) in self.signature.values() {
            total += m;
            total += n;
        }
        total
    }
}
