//! Conductor exponents at a finite place.
//!
//! Representations are abstracted to the two numbers the twisting argument
//! actually uses: a dimension and a conductor exponent. An essentially
//! square-integrable representation of `GL(n)` corresponds to a
//! representation of the units of a degree-`n` division algebra with the
//! same conductor, and on that side the conductor is `level + n - 1`. The
//! twist rules below are all consequences of that formula together with the
//! level of a character pulled back through the reduced norm.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Conductor exponent of a local character; zero means unramified.
pub type Exponent = u32;

/// A conductor exponent that is either known exactly or only bracketed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConductorRange {
    lo: u32,
    hi: u32,
}

impl ConductorRange {
    pub fn exact(v: u32) -> Self {
        Self { lo: v, hi: v }
    }

    /// `None` when `lo > hi`.
    pub fn new(lo: u32, hi: u32) -> Option<Self> {
        (lo <= hi).then_some(Self { lo, hi })
    }

    pub fn lo(&self) -> u32 {
        self.lo
    }

    pub fn hi(&self) -> u32 {
        self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact_value(&self) -> Option<u32> {
        self.is_exact().then_some(self.lo)
    }

    pub fn contains(&self, v: u32) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn values(&self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl Add for ConductorRange {
    type Output = ConductorRange;

    fn add(self, rhs: Self) -> Self {
        Self {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl fmt::Display for ConductorRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// An essentially square-integrable representation of `GL(dim)`, seen
/// through its conductor exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EsiComponent {
    dim: u32,
    conductor: u32,
}

impl EsiComponent {
    /// Requires `conductor >= dim - 1`, i.e. a nonnegative level.
    pub fn new(dim: u32, conductor: u32) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDegree);
        }
        if conductor + 1 < dim {
            return Err(Error::ConductorBelowDegree {
                conductor,
                degree: dim,
                min: dim - 1,
            });
        }
        Ok(Self { dim, conductor })
    }

    /// A one-dimensional component is just a character.
    pub fn character(a: Exponent) -> Self {
        Self { dim: 1, conductor: a }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// The division-algebra partner with the same conductor.
    pub fn to_division_algebra(&self) -> DivisionAlgebraRep {
        DivisionAlgebraRep {
            degree: self.dim,
            level: self.conductor + 1 - self.dim,
        }
    }
}

/// A generic irreducible representation described by the essentially
/// square-integrable quotients of its segments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericLocalRep {
    rank: u32,
    components: Vec<EsiComponent>,
    central_char_trivial: bool,
}

impl GenericLocalRep {
    pub fn new(
        rank: u32,
        mut components: Vec<EsiComponent>,
        central_char_trivial: bool,
    ) -> Result<Self> {
        let sum: u32 = components.iter().map(|c| c.dim).sum();
        if sum != rank {
            return Err(Error::RankMismatch { sum, rank });
        }
        // multiset: keep a canonical order
        components.sort();
        Ok(Self {
            rank,
            components,
            central_char_trivial,
        })
    }

    /// Principal series `chi_1 ⊞ ... ⊞ chi_n` from character exponents.
    pub fn principal_series(exponents: &[Exponent], central_char_trivial: bool) -> Result<Self> {
        Self::new(
            exponents.len() as u32,
            exponents.iter().map(|&a| EsiComponent::character(a)).collect(),
            central_char_trivial,
        )
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn components(&self) -> &[EsiComponent] {
        &self.components
    }

    pub fn central_char_trivial(&self) -> bool {
        self.central_char_trivial
    }

    /// Conductor exponents add over components.
    pub fn conductor(&self) -> u32 {
        self.components.iter().map(|c| c.conductor).sum()
    }

    pub fn is_discrete_series(&self) -> bool {
        self.components.len() == 1
    }
}

/// Irreducible representation of the units of a division algebra of
/// dimension `degree^2`, recorded by its level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisionAlgebraRep {
    pub degree: u32,
    pub level: u32,
}

impl DivisionAlgebraRep {
    pub fn conductor(&self) -> Result<u32> {
        conductor_of_level(self.level, self.degree)
    }
}

/// Conductor from level: `l + d - 1`.
pub fn conductor_of_level(level: u32, degree: u32) -> Result<u32> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(level + degree - 1)
}

/// Level from conductor: `A - d + 1`, defined only when `A >= d - 1`.
pub fn level_of_conductor(conductor: u32, degree: u32) -> Result<u32> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    if conductor + 1 < degree {
        return Err(Error::ConductorBelowDegree {
            conductor,
            degree,
            min: degree - 1,
        });
    }
    Ok(conductor + 1 - degree)
}

/// Level of `chi ∘ Nrd` on a degree-`d` division algebra.
///
/// For ramified `chi` this is `d (a - 1) + 1`. An unramified character
/// pulls back to something trivial on all norm-one-valuation units, so its
/// level is zero.
pub fn norm_level(a: Exponent, degree: u32) -> u32 {
    if a == 0 {
        0
    } else {
        degree * (a - 1) + 1
    }
}

/// Conductor exponent of `chi_1 chi_2` from the two exponents.
///
/// Unequal exponents give the larger one. Equal positive exponents can
/// cancel down to anything from zero up.
pub fn twist_conductor_char(a1: Exponent, a2: Exponent) -> ConductorRange {
    if a1 != a2 {
        ConductorRange::exact(a1.max(a2))
    } else {
        ConductorRange { lo: 0, hi: a1 }
    }
}

/// Conductor exponent of `pi ⊗ chi` for an essentially square-integrable
/// `pi` of dimension `n` and conductor `A`, twisted by `chi` of exponent `a`.
///
/// * `n a > A`: the twist has conductor `n a`.
/// * `n a < A`: the twist keeps conductor `A`.
/// * `n a = A`: only `A` is known as an upper bound; the level stays
///   nonnegative so `n - 1` is the lower bound.
pub fn twist_conductor_esi(pi: EsiComponent, a: Exponent) -> ConductorRange {
    let (n, big_a) = (pi.dim, pi.conductor);
    let na = n * a;
    match na.cmp(&big_a) {
        std::cmp::Ordering::Greater => ConductorRange::exact(na),
        std::cmp::Ordering::Less => ConductorRange::exact(big_a),
        std::cmp::Ordering::Equal => ConductorRange { lo: n - 1, hi: big_a },
    }
}

/// Interval sum of the componentwise twist ranges.
pub fn twist_conductor_rep(pi: &GenericLocalRep, a: Exponent) -> ConductorRange {
    pi.components
        .iter()
        .map(|&c| twist_conductor_esi(c, a))
        .fold(ConductorRange::exact(0), Add::add)
}

/// The same twist computed on the division-algebra side: when the level of
/// `chi ∘ Nrd` strictly exceeds the level of `pi'`, the twist has the
/// character's level, converted back to a conductor. Returns `None` when
/// the levels do not separate.
pub fn twist_conductor_via_levels(pi: EsiComponent, a: Exponent) -> Option<u32> {
    let dual = pi.to_division_algebra();
    let char_level = norm_level(a, dual.degree);
    if char_level > dual.level {
        conductor_of_level(char_level, dual.degree).ok()
    } else {
        None
    }
}

/// Check the twisting inequality and its two equality clauses for a claimed
/// twisted conductor `twisted`.
///
/// Rejects claims outside the range [`twist_conductor_esi`] allows.
pub fn prop3_holds(pi: EsiComponent, a: Exponent, twisted: u32) -> Result<bool> {
    let range = twist_conductor_esi(pi, a);
    if !range.contains(twisted) {
        return Err(Error::OutsideRange {
            claimed: twisted,
            lo: range.lo,
            hi: range.hi,
        });
    }
    Ok(prop3_relation(pi.dim, pi.conductor, a, twisted))
}

/// The raw relation, without the range check.
pub fn prop3_relation(n: u32, conductor: u32, a: Exponent, twisted: u32) -> bool {
    let na = n * a;
    let m = twisted.max(conductor);
    na <= m && (twisted == conductor || na == m) && (conductor != na || m == na)
}

/// Guaranteed lower bound for `max(A(pi_1), A(pi_2))` when a `GL(2)`
/// principal series `pi_1 = chi_1 ⊞ chi_2` with trivial central character
/// is twisted by a character of exponent `a`.
///
/// Trivial central character forces `A(chi_1) = A(chi_2) = a1`. If
/// `a <= a1` then `A(pi_1) = 2 a1 >= 2a`. Otherwise each `chi chi_j` has
/// exponent exactly `a`, so `A(pi_2) = 2a`. Either way the result is at
/// least `2a`.
pub fn claim32_bound(ps: &GenericLocalRep, a: Exponent) -> Result<u32> {
    let comps = ps.components();
    if !ps.central_char_trivial()
        || ps.rank() != 2
        || comps.len() != 2
        || comps.iter().any(|c| c.dim != 1)
        || comps[0].conductor != comps[1].conductor
    {
        return Err(Error::NotBalancedPrincipalSeries);
    }
    let a1 = comps[0].conductor;
    let own = ps.conductor();
    let twisted = twist_conductor_rep(ps, a);
    let bound = own.max(twisted.lo());
    debug_assert!(2 * a <= bound, "a1={a1} a={a} bound={bound}");
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn esi(n: u32, a: u32) -> EsiComponent {
        EsiComponent::new(n, a).unwrap()
    }

    #[test]
    fn level_formula() {
        assert_eq!(conductor_of_level(0, 2).unwrap(), 1);
        assert_eq!(conductor_of_level(5, 3).unwrap(), 7);
        assert_eq!(conductor_of_level(0, 1).unwrap(), 0);
        assert_eq!(level_of_conductor(1, 2).unwrap(), 0);
        assert_eq!(level_of_conductor(6, 2).unwrap(), 5);
        assert!(level_of_conductor(1, 3).is_err());
        assert!(conductor_of_level(3, 0).is_err());
    }

    #[test]
    fn norm_levels() {
        assert_eq!(norm_level(3, 2), 5);
        assert_eq!(norm_level(1, 4), 1);
        for d in 1..6 {
            assert_eq!(norm_level(0, d), 0);
        }
    }

    #[test]
    fn character_products() {
        assert_eq!(twist_conductor_char(2, 3), ConductorRange::exact(3));
        assert_eq!(twist_conductor_char(0, 0), ConductorRange::exact(0));
        assert_eq!(twist_conductor_char(2, 2), ConductorRange::new(0, 2).unwrap());
    }

    #[test]
    fn esi_twists() {
        assert_eq!(twist_conductor_esi(esi(2, 1), 3), ConductorRange::exact(6));
        assert_eq!(twist_conductor_esi(esi(2, 6), 1), ConductorRange::exact(6));
        assert_eq!(twist_conductor_esi(esi(2, 4), 2), ConductorRange::new(1, 4).unwrap());
        assert!(EsiComponent::new(3, 1).is_err());
    }

    #[test]
    fn rep_twists() {
        let ps = GenericLocalRep::principal_series(&[1, 1], false).unwrap();
        assert_eq!(twist_conductor_rep(&ps, 3), ConductorRange::exact(6));
        let ds = GenericLocalRep::new(3, vec![esi(3, 2)], false).unwrap();
        assert_eq!(twist_conductor_rep(&ds, 0), ConductorRange::exact(2));
        let ps2 = GenericLocalRep::principal_series(&[2, 2], false).unwrap();
        assert_eq!(twist_conductor_rep(&ps2, 2), ConductorRange::new(0, 4).unwrap());
        assert!(GenericLocalRep::new(3, vec![esi(2, 1)], false).is_err());
    }

    #[test]
    fn prop3_examples() {
        assert!(prop3_holds(esi(2, 1), 3, 6).unwrap());
        assert!(prop3_holds(esi(2, 6), 1, 6).unwrap());
        assert!(matches!(
            prop3_holds(esi(2, 6), 1, 4),
            Err(Error::OutsideRange { claimed: 4, lo: 6, hi: 6 })
        ));
    }

    #[test]
    fn claim32_examples() {
        let ps = |a1| GenericLocalRep::principal_series(&[a1, a1], true).unwrap();
        assert_eq!(claim32_bound(&ps(2), 1).unwrap(), 4);
        assert_eq!(claim32_bound(&ps(1), 3).unwrap(), 6);
        assert_eq!(claim32_bound(&ps(0), 0).unwrap(), 0);
        let uneven = GenericLocalRep::principal_series(&[1, 2], true).unwrap();
        assert!(claim32_bound(&uneven, 1).is_err());
        let nontrivial = GenericLocalRep::principal_series(&[1, 1], false).unwrap();
        assert!(claim32_bound(&nontrivial, 1).is_err());
    }

    #[test]
    fn levels_route_agrees_with_exact_branch() {
        for n in 1..=4 {
            for big_a in (n - 1)..=12 {
                for a in 0..=6 {
                    let c = esi(n, big_a);
                    let via = twist_conductor_via_levels(c, a);
                    if n * a > big_a {
                        assert_eq!(via, Some(n * a));
                        assert_eq!(twist_conductor_esi(c, a).exact_value(), via);
                    } else {
                        assert_eq!(via, None, "n={n} A={big_a} a={a}");
                    }
                }
            }
        }
    }

    #[test]
    fn involution() {
        for n in 1..=4 {
            for big_a in (n - 1)..=12 {
                for a in 0..=6 {
                    let r = twist_conductor_esi(esi(n, big_a), a);
                    if let Some(e) = r.exact_value().filter(|&e| e != big_a) {
                        let back = twist_conductor_esi(esi(n, e), a);
                        assert!(back.contains(big_a), "n={n} A={big_a} a={a}");
                    }
                }
            }
        }
    }

    #[test]
    fn unramified_twist_is_exact() {
        let rep = GenericLocalRep::new(5, vec![esi(2, 3), esi(1, 4), esi(2, 1)], false).unwrap();
        assert_eq!(twist_conductor_rep(&rep, 0), ConductorRange::exact(8));
        assert_eq!(rep.conductor(), 8);
    }
}
