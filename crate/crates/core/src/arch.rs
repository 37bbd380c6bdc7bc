//! Archimedean parameters, conductors and the analytic-conductor bound.
//!
//! At a complex place every irreducible Weil-group representation is a
//! character `τ_{k,ν}(z) = (z/|z|)^k |z|^{2ν}`. At a real place it is either
//! one-dimensional, given by the sign `ε` it takes on `j` and a shift `ν`, or
//! two-dimensional, induced from `τ_{k,ν}` with `k >= 1`. Each summand has a
//! gamma factor `Γ_R(s + shift)` or `Γ_C(s + shift)` and conductor
//! `(1 + |shift|)` or `(1 + |shift|)^2` accordingly.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::FactoredInteger;
use crate::error::{Error, Result};

/// Relative slack used in every floating-point inequality.
pub const REL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Place {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Place::Real => "R",
            Place::Complex => "C",
        })
    }
}

/// Value at `j` of a one-dimensional real parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::Inconsistent(format!("sign must be +1 or -1, got {other}"))),
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `(1 - ε) / 2`, i.e. 0 or 1.
    pub fn shift(self) -> f64 {
        match self {
            Sign::Plus => 0.0,
            Sign::Minus => 1.0,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// `τ_{k,ν}` at a complex place.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexParam {
    pub k: i64,
    pub nu: Complex64,
}

impl ComplexParam {
    pub fn new(k: i64, nu: Complex64) -> Self {
        Self { k, nu }
    }
}

/// Irreducible summand at a real place.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RealSummand {
    OneDim { eps: Sign, nu: Complex64 },
    TwoDim { k: i64, nu: Complex64 },
}

impl RealSummand {
    pub fn one(eps: Sign, nu: Complex64) -> Self {
        RealSummand::OneDim { eps, nu }
    }

    pub fn two(k: i64, nu: Complex64) -> Result<Self> {
        if k < 1 {
            return Err(Error::BadWeight(k));
        }
        Ok(RealSummand::TwoDim { k, nu })
    }

    pub fn dim(&self) -> u32 {
        match self {
            RealSummand::OneDim { .. } => 1,
            RealSummand::TwoDim { .. } => 2,
        }
    }

    pub fn nu(&self) -> Complex64 {
        match *self {
            RealSummand::OneDim { nu, .. } | RealSummand::TwoDim { nu, .. } => nu,
        }
    }
}

/// A single irreducible summand at either kind of place.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Summand {
    Complex(ComplexParam),
    Real(RealSummand),
}

impl Summand {
    pub fn nu(&self) -> Complex64 {
        match self {
            Summand::Complex(c) => c.nu,
            Summand::Real(r) => r.nu(),
        }
    }
}

/// Archimedean component `σ_v = ⊕ σ_{v,j}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "json::ArchRepJson", into = "json::ArchRepJson")]
pub enum ArchRep {
    Real(Vec<RealSummand>),
    Complex(Vec<ComplexParam>),
}

impl ArchRep {
    pub fn place(&self) -> Place {
        match self {
            ArchRep::Real(_) => Place::Real,
            ArchRep::Complex(_) => Place::Complex,
        }
    }

    pub fn dim(&self) -> u32 {
        match self {
            ArchRep::Real(s) => s.iter().map(RealSummand::dim).sum(),
            ArchRep::Complex(s) => s.len() as u32,
        }
    }

    pub fn summands(&self) -> Vec<Summand> {
        match self {
            ArchRep::Real(s) => s.iter().copied().map(Summand::Real).collect(),
            ArchRep::Complex(s) => s.iter().copied().map(Summand::Complex).collect(),
        }
    }

    /// Whether every `ν` satisfies `|Re ν| <= 1/2`.
    pub fn in_unitary_strip(&self) -> bool {
        self.summands().iter().all(|s| in_strip(s.nu()))
    }
}

/// One-dimensional datum of a character at an archimedean place.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "json::ArchCharJson", into = "json::ArchCharJson")]
pub enum ArchChar {
    Real { eps: Sign, nu: Complex64 },
    Complex(ComplexParam),
}

impl ArchChar {
    pub fn trivial(place: Place) -> Self {
        match place {
            Place::Real => ArchChar::Real { eps: Sign::Plus, nu: Complex64::new(0.0, 0.0) },
            Place::Complex => ArchChar::Complex(ComplexParam::new(0, Complex64::new(0.0, 0.0))),
        }
    }

    pub fn place(&self) -> Place {
        match self {
            ArchChar::Real { .. } => Place::Real,
            ArchChar::Complex(_) => Place::Complex,
        }
    }

    /// Parameters of `χ^{-1}`.
    pub fn inverse(&self) -> Self {
        match *self {
            ArchChar::Real { eps, nu } => ArchChar::Real { eps, nu: -nu },
            ArchChar::Complex(c) => ArchChar::Complex(ComplexParam::new(-c.k, -c.nu)),
        }
    }

    fn as_summand(&self) -> Summand {
        match *self {
            ArchChar::Real { eps, nu } => Summand::Real(RealSummand::OneDim { eps, nu }),
            ArchChar::Complex(c) => Summand::Complex(c),
        }
    }
}

pub fn in_strip(nu: Complex64) -> bool {
    nu.re.abs() <= 0.5 + REL_TOL
}

/// `σ ⊗ χ`, summand by summand. A two-dimensional real summand keeps its
/// `k` and absorbs the sign of `χ`.
pub fn twist_arch(rep: &ArchRep, chi: &ArchChar) -> Result<ArchRep> {
    match (rep, chi) {
        (ArchRep::Complex(s), ArchChar::Complex(c)) => Ok(ArchRep::Complex(
            s.iter()
                .map(|p| ComplexParam::new(p.k + c.k, p.nu + c.nu))
                .collect(),
        )),
        (ArchRep::Real(s), &ArchChar::Real { eps: e2, nu: n2 }) => Ok(ArchRep::Real(
            s.iter()
                .map(|r| match *r {
                    RealSummand::OneDim { eps, nu } => RealSummand::OneDim { eps: eps * e2, nu: nu + n2 },
                    RealSummand::TwoDim { k, nu } => RealSummand::TwoDim { k, nu: nu + n2 },
                })
                .collect(),
        )),
        _ => Err(Error::PlaceMismatch(format!(
            "representation at {} twisted by character at {}",
            rep.place(),
            chi.place()
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GammaKind {
    R,
    C,
}

/// Gamma factor of a summand: `Γ_kind(s + shift)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaShift {
    pub kind: GammaKind,
    pub shift: Complex64,
}

impl GammaShift {
    /// `(1 + |shift|)` for `Γ_R`, squared for `Γ_C`.
    pub fn conductor(&self) -> f64 {
        let base = 1.0 + self.shift.norm();
        match self.kind {
            GammaKind::R => base,
            GammaKind::C => base * base,
        }
    }
}

pub fn gamma_shift(s: &Summand) -> GammaShift {
    match *s {
        Summand::Complex(c) => GammaShift {
            kind: GammaKind::C,
            shift: c.nu + c.k.unsigned_abs() as f64 / 2.0,
        },
        Summand::Real(RealSummand::OneDim { eps, nu }) => GammaShift {
            kind: GammaKind::R,
            shift: nu + eps.shift(),
        },
        // k >= 1 here, used without absolute value
        Summand::Real(RealSummand::TwoDim { k, nu }) => GammaShift {
            kind: GammaKind::C,
            shift: nu + k as f64 / 2.0,
        },
    }
}

pub fn cond_summand(s: &Summand) -> f64 {
    gamma_shift(s).conductor()
}

pub fn cond_rep(rep: &ArchRep) -> f64 {
    rep.summands().iter().map(cond_summand).product()
}

/// Archimedean conductor of the character itself.
pub fn char_cond(chi: &ArchChar) -> f64 {
    cond_summand(&chi.as_summand())
}

/// `C_v(χ)` recovered from a matched pair `σ_1 ⊗ χ = σ_2` of summands.
///
/// The complex and one-dimensional real cases read `χ` off the parameter
/// differences. For two-dimensional real summands the sign of `χ` is lost
/// in the induction, so it is supplied as `chi_sign`.
pub fn conductor_from_twist_pair(s1: &Summand, s2: &Summand, chi_sign: Sign) -> Result<f64> {
    let dnu = s2.nu() - s1.nu();
    match (s1, s2) {
        (Summand::Complex(a), Summand::Complex(b)) => {
            let base = 1.0 + (dnu + (b.k - a.k).unsigned_abs() as f64 / 2.0).norm();
            Ok(base * base)
        }
        (Summand::Real(RealSummand::OneDim { eps: e1, .. }), Summand::Real(RealSummand::OneDim { eps: e2, .. })) => {
            Ok(1.0 + (dnu + (*e2 * *e1).shift()).norm())
        }
        (Summand::Real(RealSummand::TwoDim { k: k1, .. }), Summand::Real(RealSummand::TwoDim { k: k2, .. })) => {
            if k1 != k2 {
                return Err(Error::Inconsistent(format!("twist cannot change k from {k1} to {k2}")));
            }
            Ok(1.0 + (dnu + chi_sign.shift()).norm())
        }
        _ => Err(Error::PlaceMismatch("summands of different type".into())),
    }
}

/// Evaluate `|ν| + |k|/2 <= 1 + 3|ν + |k|/2|`.
///
/// For `|k| >= 2` the inequality is only guaranteed in the unitary strip,
/// so a parameter outside it is rejected.
pub fn claim31_holds(k: i64, nu: Complex64) -> Result<bool> {
    if k.unsigned_abs() >= 2 && !in_strip(nu) {
        return Err(Error::OutsideStrip(format!("k={k}, nu={nu}")));
    }
    let half = k.unsigned_abs() as f64 / 2.0;
    let lhs = nu.norm() + half;
    let rhs = 1.0 + 3.0 * (nu + half).norm();
    Ok(lhs <= rhs * (1.0 + REL_TOL))
}

/// Outcome of comparing `C_v(χ)` with `c · [C_v(σ_1) C_v(σ_2)]^{1/n}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LemmaBound {
    pub constant: f64,
    pub char_conductor: f64,
    pub bound: f64,
    pub ratio: f64,
    pub holds: bool,
}

/// Constant in the local bound: 3 at a real place, 9 at a complex place.
pub fn lemma_constant(place: Place) -> f64 {
    match place {
        Place::Real => 3.0,
        Place::Complex => 9.0,
    }
}

/// Twist `sigma1` by `chi` and compare the character's conductor against
/// the local bound. Both `σ_1` and `σ_2` must lie in the unitary strip unless
/// `allow_outside_strip` is set.
pub fn lemma_bound_check(sigma1: &ArchRep, chi: &ArchChar, allow_outside_strip: bool) -> Result<LemmaBound> {
    let sigma2 = twist_arch(sigma1, chi)?;
    if !allow_outside_strip {
        for (name, s) in [("sigma_1", sigma1), ("sigma_2", &sigma2)] {
            if !s.in_unitary_strip() {
                return Err(Error::OutsideStrip(name.into()));
            }
        }
    }
    let n = sigma1.dim();
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let constant = lemma_constant(sigma1.place());
    let char_conductor = char_cond(chi);
    let bound = constant * (cond_rep(sigma1) * cond_rep(&sigma2)).powf(1.0 / n as f64);
    let ratio = char_conductor / bound;
    Ok(LemmaBound {
        constant,
        char_conductor,
        bound,
        ratio,
        holds: ratio <= 1.0 + REL_TOL,
    })
}

/// `N · Π_v C_v` over the given archimedean places.
pub fn analytic_conductor(finite: &FactoredInteger, arch: &[ArchRep]) -> f64 {
    finite.value_f64() * arch.iter().map(cond_rep).product::<f64>()
}

/// Global character data: finite conductor and one datum per infinite place.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalChar {
    pub conductor: FactoredInteger,
    pub arch: Vec<ArchChar>,
}

impl GlobalChar {
    pub fn analytic_conductor(&self) -> f64 {
        self.conductor.value_f64() * self.arch.iter().map(char_cond).product::<f64>()
    }
}

/// Global representation data: rank, arithmetic conductor, and the
/// archimedean components in place order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalRep {
    pub rank: u32,
    pub conductor: FactoredInteger,
    pub arch: Vec<ArchRep>,
}

impl GlobalRep {
    pub fn analytic_conductor(&self) -> f64 {
        analytic_conductor(&self.conductor, &self.arch)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TheoremBCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Compare the analytic conductor of `χ` with `3^degree · (C_1 C_2)^{1/n}`.
///
/// Checks that the places line up with `r1 + 2 r2 = degree`, that `π_2`'s
/// archimedean data is the twist of `π_1`'s, and that the finite conductors
/// satisfy `Q^n | N1 N2`.
pub fn theorem_b_check(chi: &GlobalChar, pi1: &GlobalRep, pi2: &GlobalRep, degree: u32) -> Result<TheoremBCheck> {
    let n = pi1.rank;
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    if pi2.rank != n {
        return Err(Error::Inconsistent(format!("ranks {} and {}", n, pi2.rank)));
    }
    let places = chi.arch.len();
    if pi1.arch.len() != places || pi2.arch.len() != places {
        return Err(Error::Inconsistent(format!(
            "place counts differ: chi {}, pi_1 {}, pi_2 {}",
            places,
            pi1.arch.len(),
            pi2.arch.len()
        )));
    }
    let weighted: u32 = chi
        .arch
        .iter()
        .map(|c| match c.place() {
            Place::Real => 1,
            Place::Complex => 2,
        })
        .sum();
    if weighted != degree {
        return Err(Error::Inconsistent(format!("r1 + 2 r2 = {weighted} but degree is {degree}")));
    }
    for ((c, s1), s2) in chi.arch.iter().zip(&pi1.arch).zip(&pi2.arch) {
        for s in [s1, s2] {
            if s.dim() != n {
                return Err(Error::DimensionMismatch { got: s.dim(), want: n });
            }
        }
        let expected = twist_arch(s1, c)?;
        if !arch_close(&expected, s2) {
            return Err(Error::Inconsistent("pi_2 is not the twist of pi_1 at an infinite place".into()));
        }
    }
    if !chi.conductor.divides_pow(n, &pi1.conductor.mul(&pi2.conductor)) {
        return Err(Error::Inconsistent(format!(
            "Q = {} does not satisfy Q^{n} | N1 N2 = {}",
            chi.conductor,
            pi1.conductor.mul(&pi2.conductor)
        )));
    }
    // log domain keeps large conductors finite
    let ln_lhs = chi.conductor.ln() + chi.arch.iter().map(|c| char_cond(c).ln()).sum::<f64>();
    let ln_c = |g: &GlobalRep| g.conductor.ln() + g.arch.iter().map(|a| cond_rep(a).ln()).sum::<f64>();
    let ln_rhs = degree as f64 * 3f64.ln() + (ln_c(pi1) + ln_c(pi2)) / n as f64;
    Ok(TheoremBCheck {
        lhs: ln_lhs.exp(),
        rhs: ln_rhs.exp(),
        holds: ln_lhs <= ln_rhs + REL_TOL.ln_1p(),
    })
}

fn arch_close(a: &ArchRep, b: &ArchRep) -> bool {
    let close = |x: Complex64, y: Complex64| (x - y).norm() <= 1e-9 * (1.0 + x.norm());
    match (a, b) {
        (ArchRep::Complex(x), ArchRep::Complex(y)) => {
            x.len() == y.len() && x.iter().zip(y).all(|(p, q)| p.k == q.k && close(p.nu, q.nu))
        }
        (ArchRep::Real(x), ArchRep::Real(y)) => {
            x.len() == y.len()
                && x.iter().zip(y).all(|(p, q)| match (p, q) {
                    (RealSummand::OneDim { eps: e1, nu: n1 }, RealSummand::OneDim { eps: e2, nu: n2 }) => {
                        e1 == e2 && close(*n1, *n2)
                    }
                    (RealSummand::TwoDim { k: k1, nu: n1 }, RealSummand::TwoDim { k: k2, nu: n2 }) => {
                        k1 == k2 && close(*n1, *n2)
                    }
                    _ => false,
                })
        }
        _ => false,
    }
}

mod json {
    use super::*;

    #[derive(Serialize, Deserialize)]
    pub struct ArchRepJson {
        place: Place,
        summands: Vec<SummandJson>,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum SummandJson {
        Real(RealJson),
        Complex { k: i64, nu: [f64; 2] },
    }

    #[derive(Serialize, Deserialize)]
    #[serde(tag = "type", rename_all = "lowercase")]
    enum RealJson {
        One { eps: i64, nu: [f64; 2] },
        Two { k: i64, nu: [f64; 2] },
    }

    fn c(v: [f64; 2]) -> Complex64 {
        Complex64::new(v[0], v[1])
    }

    fn arr(z: Complex64) -> [f64; 2] {
        [z.re, z.im]
    }

    fn finite(z: Complex64) -> Result<Complex64> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(z)
        } else {
            Err(Error::Inconsistent(format!("non-finite parameter {z}")))
        }
    }

    impl TryFrom<ArchRepJson> for ArchRep {
        type Error = Error;

        fn try_from(j: ArchRepJson) -> Result<Self> {
            match j.place {
                Place::Complex => j
                    .summands
                    .into_iter()
                    .map(|s| match s {
                        SummandJson::Complex { k, nu } => Ok(ComplexParam::new(k, finite(c(nu))?)),
                        SummandJson::Real(_) => {
                            Err(Error::PlaceMismatch("real summand at a complex place".into()))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(ArchRep::Complex),
                Place::Real => j
                    .summands
                    .into_iter()
                    .map(|s| match s {
                        SummandJson::Real(RealJson::One { eps, nu }) => {
                            Ok(RealSummand::one(Sign::from_i64(eps)?, finite(c(nu))?))
                        }
                        SummandJson::Real(RealJson::Two { k, nu }) => RealSummand::two(k, finite(c(nu))?),
                        SummandJson::Complex { .. } => {
                            Err(Error::PlaceMismatch("complex summand at a real place".into()))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(ArchRep::Real),
            }
        }
    }

    impl From<ArchRep> for ArchRepJson {
        fn from(r: ArchRep) -> Self {
            let place = r.place();
            let summands = match r {
                ArchRep::Complex(s) => s
                    .into_iter()
                    .map(|p| SummandJson::Complex { k: p.k, nu: arr(p.nu) })
                    .collect(),
                ArchRep::Real(s) => s
                    .into_iter()
                    .map(|p| match p {
                        RealSummand::OneDim { eps, nu } => SummandJson::Real(RealJson::One {
                            eps: eps.value() as i64,
                            nu: arr(nu),
                        }),
                        RealSummand::TwoDim { k, nu } => SummandJson::Real(RealJson::Two { k, nu: arr(nu) }),
                    })
                    .collect(),
            };
            ArchRepJson { place, summands }
        }
    }

    #[derive(Serialize, Deserialize)]
    pub struct ArchCharJson {
        place: Place,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eps: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<i64>,
        nu: [f64; 2],
    }

    impl TryFrom<ArchCharJson> for ArchChar {
        type Error = Error;

        fn try_from(j: ArchCharJson) -> Result<Self> {
            let nu = finite(c(j.nu))?;
            match (j.place, j.eps, j.k) {
                (Place::Real, eps, None) => Ok(ArchChar::Real {
                    eps: Sign::from_i64(eps.unwrap_or(1))?,
                    nu,
                }),
                (Place::Complex, None, k) => Ok(ArchChar::Complex(ComplexParam::new(k.unwrap_or(0), nu))),
                _ => Err(Error::PlaceMismatch("real characters take eps, complex ones take k".into())),
            }
        }
    }

    impl From<ArchChar> for ArchCharJson {
        fn from(c: ArchChar) -> Self {
            match c {
                ArchChar::Real { eps, nu } => ArchCharJson {
                    place: Place::Real,
                    eps: Some(eps.value() as i64),
                    k: None,
                    nu: arr(nu),
                },
                ArchChar::Complex(p) => ArchCharJson {
                    place: Place::Complex,
                    eps: None,
                    k: Some(p.k),
                    nu: arr(p.nu),
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn twist_examples() {
        let rep = ArchRep::Complex(vec![ComplexParam::new(2, z(0.0, 0.1))]);
        assert_eq!(twist_arch(&rep, &ArchChar::trivial(Place::Complex)).unwrap(), rep);
        let tw = twist_arch(&rep, &ArchChar::Complex(ComplexParam::new(-2, z(0.0, 0.0)))).unwrap();
        assert_eq!(tw, ArchRep::Complex(vec![ComplexParam::new(0, z(0.0, 0.1))]));

        let real = ArchRep::Real(vec![RealSummand::two(3, z(0.0, 0.0)).unwrap()]);
        let tw = twist_arch(&real, &ArchChar::Real { eps: Sign::Minus, nu: z(1.0, 0.0) }).unwrap();
        assert_eq!(tw, ArchRep::Real(vec![RealSummand::two(3, z(1.0, 0.0)).unwrap()]));
        assert!(twist_arch(&real, &ArchChar::trivial(Place::Complex)).is_err());
    }

    #[test]
    fn summand_conductors() {
        assert!(close(cond_summand(&Summand::Complex(ComplexParam::new(0, z(0.0, 0.0)))), 1.0));
        assert!(close(cond_summand(&Summand::Real(RealSummand::one(Sign::Minus, z(0.0, 0.0)))), 2.0));
        assert!(close(cond_summand(&Summand::Real(RealSummand::two(1, z(0.0, 0.0)).unwrap())), 2.25));
        assert!(RealSummand::two(0, z(0.0, 0.0)).is_err());
    }

    #[test]
    fn gamma_shifts() {
        let g = gamma_shift(&Summand::Complex(ComplexParam::new(3, z(0.0, 0.0))));
        assert_eq!((g.kind, g.shift), (GammaKind::C, z(1.5, 0.0)));
        let g = gamma_shift(&Summand::Real(RealSummand::one(Sign::Plus, z(0.2, 0.0))));
        assert_eq!((g.kind, g.shift), (GammaKind::R, z(0.2, 0.0)));
        let g = gamma_shift(&Summand::Real(RealSummand::two(2, z(0.0, 1.0)).unwrap()));
        assert_eq!((g.kind, g.shift), (GammaKind::C, z(1.0, 1.0)));
    }

    #[test]
    fn rep_and_char_conductors() {
        assert!(close(cond_rep(&ArchRep::Real(vec![])), 1.0));
        let two = ArchRep::Real(vec![
            RealSummand::one(Sign::Plus, z(0.0, 0.0)),
            RealSummand::one(Sign::Minus, z(0.0, 0.0)),
        ]);
        assert!(close(cond_rep(&two), 2.0));
        let cx = ArchRep::Complex(vec![ComplexParam::new(0, z(0.0, 0.0)), ComplexParam::new(2, z(0.0, 0.0))]);
        assert!(close(cond_rep(&cx), 4.0));

        assert!(close(char_cond(&ArchChar::trivial(Place::Real)), 1.0));
        assert!(close(char_cond(&ArchChar::Real { eps: Sign::Minus, nu: z(0.0, 0.0) }), 2.0));
        assert!(close(char_cond(&ArchChar::Complex(ComplexParam::new(1, z(0.0, 0.0)))), 2.25));
    }

    #[test]
    fn claim31_examples() {
        assert!(claim31_holds(0, z(0.3, 0.0)).unwrap());
        assert!(claim31_holds(1, z(-0.5, 0.0)).unwrap());
        assert!(claim31_holds(2, z(0.0, 1.0)).unwrap());
        let lhs = z(0.0, 1.0).norm() + 1.0;
        let rhs = 1.0 + 3.0 * z(1.0, 1.0).norm();
        assert!(close(lhs, 2.0) && close(rhs, 1.0 + 3.0 * 2f64.sqrt()));
        assert!(claim31_holds(3, z(0.9, 0.0)).is_err());
        // |k| <= 1 holds everywhere, so no strip requirement
        assert!(claim31_holds(1, z(-5.0, 2.0)).unwrap());
    }

    #[test]
    fn lemma_examples() {
        let sigma = ArchRep::Real(vec![RealSummand::two(4, z(0.1, 3.0)).unwrap()]);
        let r = lemma_bound_check(&sigma, &ArchChar::trivial(Place::Real), false).unwrap();
        assert!(r.holds && r.ratio <= 1.0 / 3.0 + 1e-15);

        let witness = ArchRep::Real(vec![RealSummand::one(Sign::Minus, z(-1.0, 0.0))]);
        let chi = ArchChar::Real { eps: Sign::Minus, nu: z(1.0, 0.0) };
        assert!(matches!(lemma_bound_check(&witness, &chi, false), Err(Error::OutsideStrip(_))));
        let r = lemma_bound_check(&witness, &chi, true).unwrap();
        assert!((r.ratio - 1.0).abs() <= 1e-12 && r.holds);

        let sigma = ArchRep::Complex(vec![ComplexParam::new(0, z(0.0, 0.0))]);
        let chi = ArchChar::Complex(ComplexParam::new(1, z(0.0, 0.0)));
        let r = lemma_bound_check(&sigma, &chi, false).unwrap();
        assert!(close(r.char_conductor, 2.25));
        assert!(close(r.bound, 9.0 * 2.25));
        assert!(r.holds);
    }

    #[test]
    fn analytic_examples() {
        let fi = |n| FactoredInteger::factor(n).unwrap();
        assert!(close(analytic_conductor(&fi(1), &[]), 1.0));
        let r = ArchRep::Real(vec![RealSummand::one(Sign::Minus, z(0.0, 0.0))]);
        assert!(close(analytic_conductor(&fi(15), &[r]), 30.0));
        let c = ArchRep::Complex(vec![ComplexParam::new(2, z(0.0, 0.0))]);
        assert!(close(analytic_conductor(&fi(4), &[c]), 16.0));
    }

    #[test]
    fn theorem_b_examples() {
        let fi = |n| FactoredInteger::factor(n).unwrap();
        let triv = |deg| {
            let chi = GlobalChar { conductor: fi(1), arch: vec![ArchChar::trivial(Place::Real); deg] };
            let rep = GlobalRep {
                rank: 1,
                conductor: fi(1),
                arch: vec![ArchRep::Real(vec![RealSummand::one(Sign::Plus, z(0.0, 0.0))]); deg],
            };
            (chi, rep)
        };
        let (chi, rep) = triv(3);
        let t = theorem_b_check(&chi, &rep, &rep, 3).unwrap();
        assert!(close(t.lhs, 1.0) && close(t.rhs, 27.0) && t.holds);
        assert!(theorem_b_check(&chi, &rep, &rep, 2).is_err());

        let arch = vec![ArchRep::Real(vec![
            RealSummand::one(Sign::Plus, z(0.0, 0.0)),
            RealSummand::one(Sign::Plus, z(0.0, 0.0)),
        ])];
        let chi = GlobalChar { conductor: fi(15), arch: vec![ArchChar::trivial(Place::Real)] };
        let pi = GlobalRep { rank: 2, conductor: fi(15), arch };
        let t = theorem_b_check(&chi, &pi, &pi, 1).unwrap();
        assert!(close(t.lhs, 15.0) && close(t.rhs, 45.0) && t.holds);

        let bad = GlobalChar { conductor: fi(16), arch: chi.arch.clone() };
        assert!(theorem_b_check(&bad, &pi, &pi, 1).is_err());
    }

    #[test]
    fn json_shapes() {
        let rep: ArchRep = serde_json::from_str(
            r#"{"place":"R","summands":[{"type":"one","eps":-1,"nu":[0.1,2]},{"type":"two","k":3,"nu":[0,0]}]}"#,
        )
        .unwrap();
        assert_eq!(rep.dim(), 3);
        let back: ArchRep = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
        assert_eq!(back, rep);
        let cx: ArchRep = serde_json::from_str(r#"{"place":"C","summands":[{"k":-2,"nu":[0,1]}]}"#).unwrap();
        assert_eq!(cx, ArchRep::Complex(vec![ComplexParam::new(-2, z(0.0, 1.0))]));
        assert!(serde_json::from_str::<ArchRep>(r#"{"place":"C","summands":[{"type":"one","eps":1,"nu":[0,0]}]}"#).is_err());
        assert!(serde_json::from_str::<ArchRep>(r#"{"place":"R","summands":[{"type":"two","k":0,"nu":[0,0]}]}"#).is_err());
        let chi: ArchChar = serde_json::from_str(r#"{"place":"R","eps":-1,"nu":[0.5,0]}"#).unwrap();
        assert_eq!(chi, ArchChar::Real { eps: Sign::Minus, nu: z(0.5, 0.0) });
    }
}
