//! Admissible conductors of twisting characters over `Q`.
//!
//! Given levels `N1`, `N2` and rank `n`, a twisting character must have
//! conductor `Q` with `Q^n` dividing a mode-dependent target. The extremal
//! constructions are provided as certificate builders that recompute every
//! local conductor through [`crate::local`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, FactoredInteger};
use crate::dirichlet::{primitive_characters, DirichletChar, UnitGroup};
use crate::error::{Error, Result};
use crate::local::{
    prop3_holds, twist_conductor_char, twist_conductor_esi, twist_conductor_rep, ConductorRange,
    EsiComponent, GenericLocalRep,
};

/// Which divisibility constraint to enumerate against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    /// `Q^n | N1 N2`, unconditional.
    Product,
    /// `Q^n | lcm(N1, N2)`. The caller attests that every ramified local
    /// component is discrete series, or `n = 2` with trivial central
    /// character.
    Lcm,
    /// `n = 2` with trivial central character: `Q^2 | lcm(N1, N2)`.
    Gl2TrivialCentral,
}

impl BoundMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundMode::Product => "product",
            BoundMode::Lcm => "lcm",
            BoundMode::Gl2TrivialCentral => "gl2-trivial-central",
        }
    }

    /// Hypothesis the caller is trusted to have checked.
    pub fn hypothesis(&self) -> &'static str {
        match self {
            BoundMode::Product => "none (unconditional)",
            BoundMode::Lcm => {
                "every ramified local component is discrete series, or n = 2 with trivial central character"
            }
            BoundMode::Gl2TrivialCentral => "n = 2 and pi_1 has trivial central character",
        }
    }

    fn target(&self, n1: &FactoredInteger, n2: &FactoredInteger) -> FactoredInteger {
        match self {
            BoundMode::Product => n1.mul(n2),
            BoundMode::Lcm | BoundMode::Gl2TrivialCentral => n1.lcm(n2),
        }
    }

    fn check_rank(&self, n: u32) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if *self == BoundMode::Gl2TrivialCentral && n != 2 {
            return Err(Error::ModeRank(n));
        }
        Ok(())
    }
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "product" => Ok(BoundMode::Product),
            "lcm" => Ok(BoundMode::Lcm),
            "gl2-trivial-central" => Ok(BoundMode::Gl2TrivialCentral),
            other => Err(format!(
                "unknown mode {other:?} (expected product, lcm or gl2-trivial-central)"
            )),
        }
    }
}

/// Every `Q` with `Q^n` dividing the mode's target, ascending.
pub fn admissible_moduli(
    n1: &FactoredInteger,
    n2: &FactoredInteger,
    n: u32,
    mode: BoundMode,
) -> Result<Vec<FactoredInteger>> {
    Ok(max_admissible(n1, n2, n, mode)?.divisors())
}

/// The largest admissible `Q`; all others divide it.
pub fn max_admissible(
    n1: &FactoredInteger,
    n2: &FactoredInteger,
    n: u32,
    mode: BoundMode,
) -> Result<FactoredInteger> {
    mode.check_rank(n)?;
    Ok(mode.target(n1, n2).nth_root_floor(n))
}

/// Local data at one prime of an extremal certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceRecord {
    pub prime: u64,
    pub pi1: GenericLocalRep,
    pub chi_exponent: u32,
    /// Conductor exponents of the twisted components, in `pi1` order.
    pub twisted_components: Vec<u32>,
    pub pi2_exponent: u32,
    /// What the interval calculus alone allows for `pi2`.
    pub pi2_range: ConductorRange,
}

/// Concrete Dirichlet characters realising the principal-series extreme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConcreteWitness {
    pub chi1: String,
    pub chi2: String,
    pub chi: String,
    pub n1: u64,
    pub n2: u64,
    pub q: u64,
}

/// `pi_1 = Ind(chi_1, chi_2)` with `chi_i` of conductor `p_i`, twisted by
/// `chi = (chi_1 chi_2)^-1`, so that `Q^2 = N1 N2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCertificate {
    pub p1: u64,
    pub p2: u64,
    pub n1: FactoredInteger,
    pub n2: FactoredInteger,
    pub q: FactoredInteger,
    pub places: Vec<PlaceRecord>,
    /// Present when both primes are odd; a conductor-2 character does not
    /// exist over `Q`, so at `p = 2` only the local exponent data is built.
    pub witness: Option<ConcreteWitness>,
}

// chi_1^c1 chi_2^c2 with c in {-1, 0, 1}: ramified exactly where a nonzero
// coefficient meets its own prime
#[derive(Clone, Copy)]
struct FormalChar {
    c1: i32,
    c2: i32,
}

impl FormalChar {
    fn mul(self, o: Self) -> Self {
        Self { c1: self.c1 + o.c1, c2: self.c2 + o.c2 }
    }

    fn exponent(self, place: usize) -> u32 {
        let c = if place == 0 { self.c1 } else { self.c2 };
        debug_assert!(c.abs() <= 1);
        u32::from(c != 0)
    }
}

pub fn extreme_case_product(p1: u64, p2: u64) -> Result<ProductCertificate> {
    for p in [p1, p2] {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    if p1 == p2 {
        return Err(Error::RepeatedPrime(p1));
    }
    let chi1 = FormalChar { c1: 1, c2: 0 };
    let chi2 = FormalChar { c1: 0, c2: 1 };
    let chi = FormalChar { c1: -1, c2: -1 };

    let mut places = Vec::new();
    for (place, &p) in [p1, p2].iter().enumerate() {
        let a1 = chi1.exponent(place);
        let a2 = chi2.exponent(place);
        let pi1 = GenericLocalRep::principal_series(&[a1, a2], false)?;
        // chi = chi_1^-1 chi_2^-1 and A(chi^-1) = A(chi)
        let a = twist_conductor_char(a1, a2)
            .exact_value()
            .ok_or_else(|| Error::CertificateFailed(format!("exponent of chi at {p} not determined")))?;
        debug_assert_eq!(a, chi.exponent(place));
        let twisted = vec![chi1.mul(chi).exponent(place), chi2.mul(chi).exponent(place)];
        for (&orig, &tw) in [a1, a2].iter().zip(&twisted) {
            if !prop3_holds(EsiComponent::character(orig), a, tw)? {
                return Err(Error::CertificateFailed(format!("twist inequality fails at {p}")));
            }
        }
        let pi2_exponent: u32 = twisted.iter().sum();
        let pi2_range = twist_conductor_rep(&pi1, a);
        if !pi2_range.contains(pi2_exponent) {
            return Err(Error::CertificateFailed(format!(
                "pi_2 exponent {pi2_exponent} at {p} outside {pi2_range}"
            )));
        }
        places.push(PlaceRecord {
            prime: p,
            chi_exponent: a,
            twisted_components: twisted,
            pi2_exponent,
            pi2_range,
            pi1,
        });
    }
    let assemble = |f: &dyn Fn(&PlaceRecord) -> u32| {
        FactoredInteger::from_pairs(places.iter().map(|r| (r.prime, f(r))))
    };
    let n1 = assemble(&|r| r.pi1.conductor())?;
    let n2 = assemble(&|r| r.pi2_exponent)?;
    let q = assemble(&|r| r.chi_exponent)?;
    if q.pow(2) != n1.mul(&n2) {
        return Err(Error::CertificateFailed(format!("Q^2 = {} but N1 N2 = {}", q.pow(2), n1.mul(&n2))));
    }
    let witness = if p1 != 2 && p2 != 2 {
        Some(concrete_product_witness(p1, p2)?)
    } else {
        None
    };
    Ok(ProductCertificate { p1, p2, n1, n2, q, places, witness })
}

fn concrete_product_witness(p1: u64, p2: u64) -> Result<ConcreteWitness> {
    let first_primitive = |p: u64| -> Result<DirichletChar> {
        let g = Arc::new(UnitGroup::from_u64(p)?);
        primitive_characters(&g)
            .into_iter()
            .next()
            .ok_or_else(|| Error::CertificateFailed(format!("no primitive character mod {p}")))
    };
    let c1 = first_primitive(p1)?;
    let c2 = first_primitive(p2)?;
    let big = Arc::new(UnitGroup::from_u64(p1 * p2)?);
    let l1 = c1.induce(&big)?;
    let l2 = c2.induce(&big)?;
    let chi = l1.product(&l2)?.inverse();
    let cond = |c: &DirichletChar| c.conductor().value().expect("divides p1 p2");
    let n1 = cond(&l1) * cond(&l2);
    let n2 = cond(&l1.product(&chi)?) * cond(&l2.product(&chi)?);
    let q = cond(&chi);
    if q * q != n1 * n2 {
        return Err(Error::CertificateFailed(format!("concrete characters give Q={q}, N1={n1}, N2={n2}")));
    }
    Ok(ConcreteWitness {
        chi1: c1.label(),
        chi2: c2.label(),
        chi: chi.label(),
        n1,
        n2,
        q,
    })
}

/// One place of the discrete-series extreme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcmPlace {
    pub prime: u64,
    pub pi1_exponent: u32,
    pub chi_exponent: u32,
    pub twisted_range: ConductorRange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcmCertificate {
    pub n: u32,
    pub n1: FactoredInteger,
    pub n2_upper: FactoredInteger,
    pub q: FactoredInteger,
    pub places: Vec<LcmPlace>,
}

/// Discrete series `pi_1` with `n | A(pi_1,v)` everywhere, twisted by `chi`
/// with `A(chi_v) = A(pi_1,v) / n`: then `Q^n = lcm(N1, N2)`.
pub fn extreme_case_lcm(local: &BTreeMap<u64, u32>, n: u32) -> Result<LcmCertificate> {
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut places = Vec::new();
    for (&p, &big_a) in local {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if big_a % n != 0 {
            return Err(Error::NotDivisible { place: p, exponent: big_a, n });
        }
        let a = big_a / n;
        let twisted_range = if big_a == 0 {
            // unramified place: nothing to twist
            ConductorRange::exact(0)
        } else {
            let comp = EsiComponent::new(n, big_a)?;
            let r = twist_conductor_esi(comp, a);
            for v in r.values() {
                if !prop3_holds(comp, a, v)? {
                    return Err(Error::CertificateFailed(format!("twist inequality fails at {p}")));
                }
            }
            r
        };
        if n * a != big_a.max(twisted_range.hi()) {
            return Err(Error::CertificateFailed(format!(
                "n A(chi) = {} but max conductor is {} at {p}",
                n * a,
                big_a.max(twisted_range.hi())
            )));
        }
        places.push(LcmPlace { prime: p, pi1_exponent: big_a, chi_exponent: a, twisted_range });
    }
    let n1 = FactoredInteger::from_pairs(places.iter().map(|r| (r.prime, r.pi1_exponent)))?;
    let n2_upper = FactoredInteger::from_pairs(places.iter().map(|r| (r.prime, r.twisted_range.hi())))?;
    let q = FactoredInteger::from_pairs(places.iter().map(|r| (r.prime, r.chi_exponent)))?;
    if q.pow(n) != n1.lcm(&n2_upper) {
        return Err(Error::CertificateFailed(format!(
            "Q^n = {} but lcm = {}",
            q.pow(n),
            n1.lcm(&n2_upper)
        )));
    }
    Ok(LcmCertificate { n, n1, n2_upper, q, places })
}
