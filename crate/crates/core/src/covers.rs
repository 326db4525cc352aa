//! Cyclic covers `Y_k: x_{k+1}^d + F(x_0..x_k) = 0` of `P^k` branched along
//! a degree `d` hypersurface `X_{k-1}`, and the Hodge structures attached to
//! them: the primitive part `V`, its half twists, `W` inside
//! `H^k_0(Y_k) (x) H^1(Y_1)`, and the decomposition of the cover `Z_{k+1}`.
//!
//! Every table is computed at the Fermat point; the dimensions are constant
//! in smooth families.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cyclotomic::{CyclotomicData, Side};
use crate::error::CoverError;
use crate::hodge::Matching;
use crate::jacobian::{eigenspace_dims, hypersurface_hodge_numbers, primitive_rank, to_u64};
use crate::{Abelian, Dim, HodgeStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverSpec {
    pub d: u32,
    pub k: u32,
}

impl CoverSpec {
    pub fn new(d: u32, k: u32) -> Result<Self, CoverError> {
        if d < 3 {
            return Err(CoverError::InvalidSpec(format!("degree must be at least 3, got {d}")));
        }
        if k < 1 {
            return Err(CoverError::InvalidSpec("dimension must be at least 1".into()));
        }
        Ok(Self { d, k })
    }

    pub fn field(&self) -> CyclotomicData {
        CyclotomicData::new(self.d).expect("validated degree")
    }
}

/// Full eigenspace table of `H^k_0(Y_k)` over all residues `1..d`.
pub fn full_primitive(spec: CoverSpec) -> HodgeStructure {
    eigenspace_dims(spec.d, spec.k).expect("validated degree")
}

/// `V`: the part of `H^k_0(Y_k)` where the generator has primitive
/// eigenvalues.
pub fn primitive_v(spec: CoverSpec) -> HodgeStructure {
    let field = spec.field();
    full_primitive(spec).restrict(|a| field.is_unit(a)).expect("units are closed under negation")
}

/// The part of `H^k_0(Y_k)` whose eigenvalues have exact order `e`.
pub fn order_part(spec: CoverSpec, e: u32) -> HodgeStructure {
    let field = spec.field();
    full_primitive(spec)
        .restrict(|a| field.order(a) == e)
        .expect("residues of a given order are closed under negation")
}

/// `(e, part of order e)` for every divisor `e > 1` of `d`, ascending; the
/// last one is `V`.
pub fn secondary_parts(spec: CoverSpec) -> Vec<(u32, HodgeStructure)> {
    (2..=spec.d).filter(|e| spec.d.is_multiple_of(*e)).map(|e| (e, order_part(spec, e))).collect()
}

/// `k = q d + t` with `t` in `[-1, d-2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QtDecomposition {
    pub q: u32,
    pub t: i32,
}

/// Splits `k` as `q d + t`, and checks against the Hodge numbers that
/// `H^{k-q,q}_0` is the highest nonzero piece.
pub fn qt_decompose(spec: CoverSpec) -> Result<QtDecomposition, CoverError> {
    let q = (spec.k + 2).div_ceil(spec.d) - 1;
    let t = spec.k as i32 - (q * spec.d) as i32;
    let hodge = hypersurface_hodge_numbers(spec.d, spec.k);
    let extremal = (spec.k - q) as usize;
    // hodge[i] is the piece with p = k - i
    let ok = !hodge[q as usize].1.is_zero()
        && hodge.iter().all(|(p, h)| *p as usize <= extremal || h.is_zero());
    if !ok {
        return Err(CoverError::Unsupported(format!("extremal piece check failed for {spec:?}")));
    }
    Ok(QtDecomposition { q, t })
}

/// Hodge index of the piece that decides the half twist: `k` for `V`,
/// `k - q` for `V(q)`.
fn top_index(spec: CoverSpec, tate: bool) -> u32 {
    if tate {
        spec.k - qt_decompose(spec).expect("extremal piece").q
    } else {
        spec.k
    }
}

/// `V` or, with `tate`, its Tate twist `V(q)` whose level equals its weight.
pub fn twisted_v(spec: CoverSpec, tate: bool) -> HodgeStructure {
    let v = primitive_v(spec);
    if !tate {
        return v;
    }
    let q = qt_decompose(spec).expect("extremal piece").q;
    v.tate_twist(q as i32).expect("V(q) is effective")
}

/// Half-twist existence read straight off the eigenspace table: no unit
/// `a > d/2` may occur in the deciding top piece.
pub fn half_twist_exists_direct(spec: CoverSpec, tate: bool) -> bool {
    let v = primitive_v(spec);
    let top = top_index(spec, tate);
    let field = v.field().clone();
    field.units().iter().all(|&a| field.side(a) == Side::Positive || v.get(top, a).is_zero())
}

/// The positive half twist of `V` (or `V(q)`).
pub fn half_twist(spec: CoverSpec, tate: bool) -> Result<HodgeStructure, CoverError> {
    Ok(twisted_v(spec, tate).pos_half_twist()?)
}

/// Closed-form criterion for `V(q)` as usually stated: `t > (d-4)/2`, or
/// `t > (d-6)/2` when `d = 2 mod 4`.
pub fn half_twist_exists_printed(spec: CoverSpec) -> bool {
    let t = qt_decompose(spec).expect("extremal piece").t as i64;
    let d = spec.d as i64;
    if d % 4 == 2 {
        2 * t > d - 6
    } else {
        2 * t > d - 4
    }
}

/// Closed form obtained from the vanishing of the first negative unit
/// eigenspace `e + 1` (or `e + 2`): for odd `d` this is `t > (d-3)/2`.
pub fn half_twist_exists_derived(spec: CoverSpec) -> bool {
    let t = qt_decompose(spec).expect("extremal piece").t as i64;
    let d = spec.d as i64;
    match d % 4 {
        0 => 2 * t > d - 4,
        2 => 2 * t > d - 6,
        _ => 2 * t > d - 3,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorollaryCheck {
    pub printed: bool,
    pub direct: bool,
}

impl CorollaryCheck {
    pub fn agrees(&self) -> bool {
        self.printed == self.direct
    }
}

/// Closed-form criterion for `V` itself (`d < 2k + 4` for even `k`,
/// `d <= 2k + 4` for odd `k`) next to the direct predicate.
pub fn corollary_check(spec: CoverSpec) -> CorollaryCheck {
    let (d, k) = (spec.d, spec.k);
    let printed = if k % 2 == 0 { d < 2 * k + 4 } else { d <= 2 * k + 4 };
    CorollaryCheck { printed, direct: half_twist_exists_direct(spec, false) }
}

/// Searches every CM-type for one containing all unit residues of the
/// deciding top piece.
pub fn half_twist_any_cmtype(spec: CoverSpec, tate: bool) -> bool {
    let v = primitive_v(spec);
    let top = top_index(spec, tate);
    let field = v.field().clone();
    let present: Vec<u32> =
        field.units().iter().copied().filter(|&a| !v.get(top, a).is_zero()).collect();
    let found = field.cm_types().any(|cm| present.iter().all(|a| cm.contains(a)));
    found
}

/// `h^k_0` from the Euler characteristic recursion
/// `(-1)^k h^k_0 = (d-1)(1 - (-1)^{k-1} h^{k-1}_0)`, `h^0_0 = d - 1`.
pub fn euler_recursion_rank(d: u32, k: u32) -> Dim {
    let base = BigInt::from(d) - BigInt::one();
    let mut h = base.clone();
    for j in 1..=k {
        let prev_sign = if (j - 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let rhs = &base * (BigInt::one() - prev_sign * &h);
        h = if j % 2 == 0 { rhs } else { -rhs };
    }
    h.to_biguint().expect("primitive rank is non-negative")
}

/// `h^{k+1}_0 = (d-1) h^{k-1}_0 + (d-2) h^k_0`, all three from Hodge
/// number counts.
pub fn dim_identity_check(spec: CoverSpec) -> Result<bool, CoverError> {
    if spec.k < 2 {
        return Err(CoverError::Unsupported("dimension identity needs k >= 2".into()));
    }
    let (d, k) = (spec.d, spec.k);
    let lhs = primitive_rank(d, k + 1);
    let rhs = Dim::from(d - 1) * primitive_rank(d, k - 1) + Dim::from(d - 2) * primitive_rank(d, k);
    Ok(lhs == rhs)
}

/// `H^1` of the degree `d` Fermat curve, graded by eigenvalue.
pub fn fermat_curve_h1(d: u32) -> Result<HodgeStructure, CoverError> {
    Ok(eigenspace_dims(d, 1)?)
}

/// `W = (H^k_0(Y_k) (x) H^1(Y_1))^beta`, graded by the residue of the
/// `H^k_0(Y_k)` factor.
pub fn build_w(spec: CoverSpec) -> HodgeStructure {
    let curve = fermat_curve_h1(spec.d).expect("validated degree");
    full_primitive(spec).tensor_graded(&curve).expect("same field").matched(Matching::Conjugate)
}

/// `H^{k-1}_0(X_{k-1})(-1)` with the trivial action (residue `0`).
pub fn branch_part(spec: CoverSpec) -> HodgeStructure {
    let k = spec.k - 1;
    let entries = hypersurface_hodge_numbers(spec.d, k).into_iter().map(|(p, h)| ((p, 0), h));
    HodgeStructure::new(spec.field(), k, [0], entries)
        .expect("hypersurface Hodge numbers are symmetric")
        .tate_twist(-1)
        .expect("negative twists stay effective")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    Hodge(HodgeStructure),
    Abelian(Abelian),
}

impl Component {
    /// Rank for Hodge structures, dimension for abelian varieties.
    pub fn size(&self) -> Dim {
        match self {
            Component::Hodge(h) => h.rank(),
            Component::Abelian(a) => a.dim_abelian.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionPart {
    pub label: String,
    pub component: Component,
    pub multiplicity: u32,
}

/// A direct sum (or isogeny) decomposition with a size checksum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub parts: Vec<DecompositionPart>,
    /// Size of the decomposed object, computed independently of the parts.
    pub total: Dim,
}

impl DecompositionReport {
    pub fn weighted_size(&self) -> Dim {
        self.parts.iter().map(|part| part.component.size() * Dim::from(part.multiplicity)).sum()
    }

    pub fn balanced(&self) -> bool {
        self.weighted_size() == self.total
    }
}

/// `H^{k+1}_0(Z_{k+1}) = H^{k-1}_0(X_{k-1})(-1)^{d-1} + W`, checked against
/// the Euler recursion rank of a degree `d` hypersurface of dimension `k+1`.
pub fn z_decomposition(spec: CoverSpec) -> DecompositionReport {
    DecompositionReport {
        parts: vec![
            DecompositionPart {
                label: "H^{k-1}_0(X)(-1)".into(),
                component: Component::Hodge(branch_part(spec)),
                multiplicity: spec.d - 1,
            },
            DecompositionPart { label: "W".into(), component: Component::Hodge(build_w(spec)), multiplicity: 1 },
        ],
        total: euler_recursion_rank(spec.d, spec.k + 1),
    }
}

/// Hodge numbers of `Z_{k+1}` agree piece by piece with the decomposition.
pub fn z_hodge_numbers_match(spec: CoverSpec) -> bool {
    let z: Vec<Dim> = {
        let mut numbers = vec![Dim::zero(); spec.k as usize + 2];
        for (p, h) in hypersurface_hodge_numbers(spec.d, spec.k + 1) {
            numbers[p as usize] = h;
        }
        numbers
    };
    let branch = branch_part(spec).hodge_numbers();
    let w = build_w(spec).hodge_numbers();
    let mult = Dim::from(spec.d - 1);
    z.iter()
        .enumerate()
        .all(|(p, h)| *h == &branch[p] * &mult + &w[p])
}

/// `J(Z_{k+1}) ~ J(X_{k-1})^{d-1} x J(V(q)_{1/2})` as dimension bookkeeping,
/// for even `k` where both sides are weight one after twisting.
pub fn jacobian_split(spec: CoverSpec) -> Result<DecompositionReport, CoverError> {
    if !spec.k.is_multiple_of(2) {
        return Err(CoverError::Unsupported(format!("odd k = {} has no intermediate Jacobian split", spec.k)));
    }
    let branch = branch_part(spec).tate_twist((spec.k / 2) as i32)?.abelian_summary()?;
    let half = half_twist(spec, true)?.abelian_summary()?;
    Ok(DecompositionReport {
        parts: vec![
            DecompositionPart { label: "J(X)".into(), component: Component::Abelian(branch), multiplicity: spec.d - 1 },
            DecompositionPart { label: "J(V_1/2)".into(), component: Component::Abelian(half), multiplicity: 1 },
        ],
        total: primitive_rank(spec.d, spec.k + 1) / Dim::from(2u32),
    })
}

/// A spec where a closed-form half-twist criterion disagrees with the direct
/// predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Disagreement {
    pub spec: CoverSpec,
    /// `true` for the criterion on `V` itself, `false` for the one on `V(q)`.
    pub untwisted: bool,
    pub printed: bool,
    pub direct: bool,
}

/// Every disagreement of the usual closed forms with the direct predicate on
/// the grid, sorted by `(d, k)`.
pub fn closed_form_disagreements(d_max: u32, k_max: u32) -> Vec<Disagreement> {
    let mut out = Vec::new();
    for d in 3..=d_max {
        for k in 1..=k_max {
            let spec = CoverSpec { d, k };
            let (printed, direct) = (half_twist_exists_printed(spec), half_twist_exists_direct(spec, true));
            if printed != direct {
                out.push(Disagreement { spec, untwisted: false, printed, direct });
            }
            let check = corollary_check(spec);
            if !check.agrees() {
                out.push(Disagreement { spec, untwisted: true, printed: check.printed, direct: check.direct });
            }
        }
    }
    out
}

/// `(d-1) h^{k-1}_0 + rank V_{1/2} <= h^{k+1}_0`, or `None` when `V` has no
/// half twist.
pub fn corollary_inclusion_holds(spec: CoverSpec) -> Option<bool> {
    let half = half_twist(spec, false).ok()?;
    let lhs = Dim::from(spec.d - 1) * primitive_rank(spec.d, spec.k - 1) + half.rank();
    Some(lhs <= primitive_rank(spec.d, spec.k + 1))
}

/// Both sides of `W = V_{1/2}(-1)^2 + V' (x) K_{-1/2}` for quartic covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticSplit {
    pub w: HodgeStructure,
    pub half_twist_part: HodgeStructure,
    pub mixed_part: HodgeStructure,
    /// `H^1(Y_1)` and three copies of `K_{-1/2}` have the same Hodge numbers.
    pub curve_is_three_copies: bool,
    /// For `k = 2`: `J(Z_3) ~ J(C)^3 x A_C^2 x A_K^7`.
    pub isogeny: Option<DecompositionReport>,
}

impl QuarticSplit {
    pub fn tables_equal(&self) -> bool {
        self.half_twist_part.direct_sum(&self.mixed_part).is_ok_and(|sum| sum == self.w)
    }
}

pub fn quartic_w_split(spec: CoverSpec) -> Result<QuarticSplit, CoverError> {
    if spec.d != 4 {
        return Err(CoverError::Unsupported(format!("quartic split needs d = 4, got d = {}", spec.d)));
    }
    let field = spec.field();
    let k_half = HodgeStructure::k_minus_half(&field);
    let w = build_w(spec);
    let half_twist_part = half_twist(spec, false)?.tate_twist(-1)?.scaled(&Dim::from(2u32));
    let v_prime = order_part(spec, 2);
    let mixed_part = v_prime.tensor_graded(&k_half)?.keyed_by_left(|_, _| true);

    let curve = fermat_curve_h1(4)?;
    let curve_is_three_copies = curve.hodge_numbers() == k_half.scaled(&Dim::from(3u32)).hodge_numbers();

    let isogeny = if spec.k == 2 {
        let quartic_curve = HodgeStructure::new(
            field.clone(),
            1,
            [0],
            hypersurface_hodge_numbers(4, 1).into_iter().map(|(p, h)| ((p, 0), h)),
        )?;
        let a_c = half_twist(spec, false)?.abelian_summary()?;
        let a_k = k_half.abelian_summary()?;
        let copies = to_u64(&v_prime.rank()) as u32;
        Some(DecompositionReport {
            parts: vec![
                DecompositionPart {
                    label: "J(C)".into(),
                    component: Component::Abelian(quartic_curve.abelian_summary()?),
                    multiplicity: 3,
                },
                DecompositionPart { label: "A_C".into(), component: Component::Abelian(a_c), multiplicity: 2 },
                DecompositionPart { label: "A_K".into(), component: Component::Abelian(a_k), multiplicity: copies },
            ],
            total: primitive_rank(4, 3) / Dim::from(2u32),
        })
    } else {
        None
    };

    Ok(QuarticSplit { w, half_twist_part, mixed_part, curve_is_three_copies, isogeny })
}

/// Eigenvalue exponents of `alpha_1` on the forms of the Fermat curve fixed
/// by `gamma: (x_0 : x_1 : x_2) -> (x_0 : zeta^-1 x_1 : zeta x_2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaInvariants {
    pub d: u32,
    pub exponents: Vec<u32>,
}

impl GammaInvariants {
    /// `dim H^1(Y_1)^gamma`: both `H^{1,0}` and its conjugate.
    pub fn invariant_rank(&self) -> usize {
        2 * self.exponents.len()
    }

    pub fn is_initial_segment(&self) -> bool {
        self.exponents == (1..=(self.d - 1) / 2).collect::<Vec<_>>()
    }

    /// The unit exponents are exactly the standard CM-type, so the
    /// submodule generated by the `zeta` eigenvector is `K_{-1/2}`.
    pub fn units_form_sigma0(&self) -> bool {
        let field = CyclotomicData::new(self.d).expect("validated degree");
        let units: Vec<u32> = self.exponents.iter().copied().filter(|&a| field.is_unit(a)).collect();
        units == field.sigma0()
    }
}

/// Forms `y_1^{a-(d-1)} y_2^b dy_2` with `a, b >= 0`, `a + b <= d - 3`; the
/// `gamma`-invariant ones have `a = b mod d` and `alpha_1` acts on them by
/// `zeta^{b+1}`.
pub fn fermat_gamma_invariants(d: u32) -> Result<GammaInvariants, CoverError> {
    CyclotomicData::new(d)?;
    let top = d as i64 - 3;
    let mut exponents = Vec::new();
    for a in 0..=top {
        for b in 0..=top - a {
            if (a - b).mod_floor(&(d as i64)) == 0 {
                exponents.push(b as u32 + 1);
            }
        }
    }
    exponents.sort_unstable();
    exponents.dedup();
    Ok(GammaInvariants { d, exponents })
}

/// `S = {w in V (x) K_{-1/2} (x) K_{-1/2} : residues a + b = 0, b + c = 0}`,
/// graded by the residue of `V`.
pub fn ks_invariant_space(spec: CoverSpec) -> HodgeStructure {
    let v = primitive_v(spec);
    let field = v.field().clone();
    let k_half = HodgeStructure::k_minus_half(&field);
    let mut table: BTreeMap<(u32, u32), Dim> = BTreeMap::new();
    for (p1, a, h) in v.entries() {
        for (p2, b, _) in k_half.entries() {
            if field.add(a, b) != 0 {
                continue;
            }
            for (p3, c, _) in k_half.entries() {
                if field.add(b, c) == 0 {
                    *table.entry((p1 + p2 + p3, a)).or_default() += h;
                }
            }
        }
    }
    HodgeStructure::new(field, v.weight() + 2, v.support().iter().copied(), table)
        .expect("matched triples stay symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(d: u32, k: u32) -> CoverSpec {
        CoverSpec::new(d, k).unwrap()
    }

    fn n(x: u64) -> Dim {
        Dim::from(x)
    }

    #[test]
    fn spec_validation() {
        assert!(CoverSpec::new(2, 1).is_err());
        assert!(CoverSpec::new(3, 0).is_err());
    }

    #[test]
    fn primitive_v_examples() {
        assert_eq!(primitive_v(spec(4, 2)).rank(), n(14));
        let sextic = primitive_v(spec(6, 2));
        assert_eq!(sextic.rank(), n(42));
        assert_eq!(sextic.hodge_numbers()[2], n(6));
        assert_eq!(primitive_v(spec(3, 4)).rank(), n(22));
        assert_eq!(primitive_v(spec(7, 3)), full_primitive(spec(7, 3)));
    }

    #[test]
    fn secondary_part_examples() {
        let parts = secondary_parts(spec(6, 2));
        let orders: Vec<u32> = parts.iter().map(|(e, _)| *e).collect();
        assert_eq!(orders, vec![2, 3, 6]);
        let cube_roots = &parts[1].1;
        assert_eq!(cube_roots.rank(), n(42));
        assert_eq!(cube_roots.hodge_numbers(), vec![n(3), n(36), n(3)]);
        assert_eq!(order_part(spec(4, 2), 2).rank(), n(7));
        let cubic = secondary_parts(spec(3, 5));
        assert_eq!(cubic.len(), 1);
        assert_eq!(cubic[0].1, primitive_v(spec(3, 5)));
    }

    #[test]
    fn qt_examples() {
        assert_eq!(qt_decompose(spec(3, 4)).unwrap(), QtDecomposition { q: 1, t: 1 });
        assert_eq!(qt_decompose(spec(5, 2)).unwrap(), QtDecomposition { q: 0, t: 2 });
        assert_eq!(qt_decompose(spec(4, 3)).unwrap(), QtDecomposition { q: 1, t: -1 });
    }

    #[test]
    fn direct_predicate_examples() {
        assert!(half_twist_exists_direct(spec(4, 2), false));
        assert!(!half_twist_exists_direct(spec(3, 3), true));
        assert!(half_twist_exists_direct(spec(3, 4), true));
        assert!(!half_twist_exists_direct(spec(7, 2), false));
    }

    #[test]
    fn closed_form_examples() {
        for k in 1..=9 {
            let s = spec(4, k);
            let t = qt_decompose(s).unwrap().t;
            assert_eq!(half_twist_exists_printed(s), t > 0);
            assert_eq!(half_twist_exists_derived(s), t > 0);
            let s = spec(3, k);
            let t = qt_decompose(s).unwrap().t;
            assert_eq!(half_twist_exists_printed(s), t == 0 || t == 1);
            assert_eq!(half_twist_exists_derived(s), t == 1);
            assert_eq!(half_twist_exists_direct(s, true), t == 1);
            let s = spec(6, k);
            let t = qt_decompose(s).unwrap().t;
            assert_eq!(half_twist_exists_printed(s), t > 0);
            assert_eq!(half_twist_exists_derived(s), t > 0);
        }
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(corollary_check(spec(4, 2)), CorollaryCheck { printed: true, direct: true });
        assert_eq!(corollary_check(spec(7, 2)), CorollaryCheck { printed: true, direct: false });
        assert_eq!(corollary_check(spec(3, 1)), CorollaryCheck { printed: true, direct: true });
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_recursion_rank(3, 4), n(22));
        assert_eq!(euler_recursion_rank(4, 2), n(21));
        for d in 3..10 {
            assert_eq!(euler_recursion_rank(d, 0), n(d as u64 - 1));
        }
    }

    #[test]
    fn dim_identity_examples() {
        assert!(dim_identity_check(spec(4, 2)).unwrap());
        assert_eq!(primitive_rank(4, 3), n(60));
        assert!(dim_identity_check(spec(3, 4)).unwrap());
        assert_eq!(primitive_rank(3, 5), n(42));
        assert!(dim_identity_check(spec(6, 3)).unwrap());
        assert!(dim_identity_check(spec(6, 1)).is_err());
    }

    #[test]
    fn w_examples() {
        assert_eq!(build_w(spec(4, 2)).rank(), n(42));
        let w = build_w(spec(3, 4));
        assert_eq!(w.rank(), n(22));
        assert_eq!(w, half_twist(spec(3, 4), false).unwrap().tate_twist(-1).unwrap());
        assert_eq!(build_w(spec(5, 2)).rank(), n(3) * primitive_rank(5, 2));
    }

    #[test]
    fn z_decomposition_examples() {
        for (d, k, total) in [(4, 2, 60), (3, 4, 42), (3, 2, 10)] {
            let report = z_decomposition(spec(d, k));
            assert_eq!(report.total, n(total));
            assert!(report.balanced(), "d={d} k={k}");
            assert!(z_hodge_numbers_match(spec(d, k)));
        }
        let report = z_decomposition(spec(4, 2));
        assert_eq!(report.parts[0].component.size(), n(6));
        assert_eq!(report.parts[0].multiplicity, 3);
    }

    #[test]
    fn quartic_split_examples() {
        let split = quartic_w_split(spec(4, 2)).unwrap();
        assert!(split.tables_equal());
        assert_eq!(split.half_twist_part.rank(), n(28));
        assert_eq!(split.mixed_part.rank(), n(14));
        let iso = split.isogeny.unwrap();
        assert_eq!(iso.total, n(30));
        assert!(iso.balanced());
        let sizes: Vec<(Dim, u32)> = iso.parts.iter().map(|p| (p.component.size(), p.multiplicity)).collect();
        assert_eq!(sizes, vec![(n(3), 3), (n(7), 2), (n(1), 7)]);

        let split = quartic_w_split(spec(4, 1)).unwrap();
        assert!(split.tables_equal());
        assert!(split.curve_is_three_copies);
        assert!(split.isogeny.is_none());
        assert!(quartic_w_split(spec(5, 2)).is_err());
    }

    #[test]
    fn gamma_invariant_examples() {
        let g = fermat_gamma_invariants(4).unwrap();
        assert_eq!(g.exponents, vec![1]);
        let g = fermat_gamma_invariants(7).unwrap();
        assert_eq!(g.exponents, vec![1, 2, 3]);
        assert!(g.units_form_sigma0());
        for d in 3..40 {
            let g = fermat_gamma_invariants(d).unwrap();
            assert!(g.is_initial_segment(), "d={d}");
            assert!(g.units_form_sigma0(), "d={d}");
            assert_eq!(g.invariant_rank() as u32, 2 * ((d - 1) / 2));
        }
    }

    #[test]
    fn ks_examples() {
        for (d, k, rank) in [(3, 4, 22), (4, 2, 14)] {
            let s = ks_invariant_space(spec(d, k));
            assert_eq!(s.rank(), n(rank));
            assert_eq!(s, primitive_v(spec(d, k)).tate_twist(-1).unwrap());
        }
    }

    #[test]
    fn jacobian_split_cubic_fourfold() {
        let split = jacobian_split(spec(3, 4)).unwrap();
        assert_eq!(split.total, n(21));
        let sizes: Vec<(Dim, u32)> = split.parts.iter().map(|p| (p.component.size(), p.multiplicity)).collect();
        assert_eq!(sizes, vec![(n(5), 2), (n(11), 1)]);
        assert!(split.balanced());
        assert!(jacobian_split(spec(3, 3)).is_err());
    }

    #[test]
    fn disagreements_only_at_odd_degree() {
        let found = closed_form_disagreements(9, 7);
        assert!(found.iter().all(|x| x.spec.d % 2 == 1));
        for d in [3, 5, 7, 9] {
            assert!(found.iter().any(|x| x.spec.d == d));
        }
        for x in &found {
            let t = qt_decompose(x.spec).unwrap().t;
            if x.untwisted {
                assert_eq!(x.spec.d, 2 * x.spec.k + 3);
            } else {
                assert_eq!(2 * t, x.spec.d as i32 - 3);
            }
        }
        assert!(found.contains(&Disagreement { spec: spec(7, 2), untwisted: true, printed: true, direct: false }));
    }

    #[test]
    fn derived_matches_direct() {
        for d in 3..=9 {
            for k in 1..=7 {
                assert_eq!(half_twist_exists_derived(spec(d, k)), half_twist_exists_direct(spec(d, k), true));
            }
        }
    }

    #[test]
    fn cmtype_search_examples() {
        assert!(half_twist_any_cmtype(spec(4, 2), false));
        assert!(!half_twist_any_cmtype(spec(7, 2), false));
        assert!(half_twist_any_cmtype(spec(3, 4), false));
    }
}
