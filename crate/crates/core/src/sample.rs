//! Seeded random data for the property sweeps.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::arch::{twist_arch, ArchChar, ArchRep, ComplexParam, GlobalChar, GlobalRep, Place, RealSummand, Sign};
use crate::arith::FactoredInteger;
use crate::local::{twist_conductor_esi, EsiComponent};

/// Largest `|Im ν|` drawn.
pub const IM_MAX: f64 = 50.0;
/// Largest `|k|` drawn.
pub const K_MAX: i64 = 10;

/// `ν` with `|Re ν| <= 1/2` and `|Im ν| <= IM_MAX`.
pub fn strip_nu<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-0.5..=0.5), rng.gen_range(-IM_MAX..=IM_MAX))
}

fn sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A strip-valid representation of dimension `n` at `place`.
pub fn strip_rep<R: Rng + ?Sized>(rng: &mut R, place: Place, n: u32) -> ArchRep {
    match place {
        Place::Complex => ArchRep::Complex(
            (0..n)
                .map(|_| ComplexParam::new(rng.gen_range(-K_MAX..=K_MAX), strip_nu(rng)))
                .collect(),
        ),
        Place::Real => {
            let mut left = n;
            let mut out = Vec::new();
            while left > 0 {
                if left >= 2 && rng.gen_bool(0.5) {
                    out.push(RealSummand::TwoDim { k: rng.gen_range(1..=K_MAX), nu: strip_nu(rng) });
                    left -= 2;
                } else {
                    out.push(RealSummand::one(sign(rng), strip_nu(rng)));
                    left -= 1;
                }
            }
            out.shuffle(rng);
            ArchRep::Real(out)
        }
    }
}

/// A character at the place of `rep` such that `rep ⊗ χ` stays in the strip.
pub fn strip_twist<R: Rng + ?Sized>(rng: &mut R, rep: &ArchRep) -> ArchChar {
    let res: Vec<f64> = rep.summands().iter().map(|s| s.nu().re).collect();
    let lo = res.iter().map(|r| -0.5 - r).fold(-0.5, f64::max);
    let hi = res.iter().map(|r| 0.5 - r).fold(0.5, f64::min);
    let re = if lo < hi { rng.gen_range(lo..=hi) } else { 0.0 };
    let nu = Complex64::new(re, rng.gen_range(-IM_MAX..=IM_MAX));
    match rep.place() {
        Place::Real => ArchChar::Real { eps: sign(rng), nu },
        Place::Complex => ArchChar::Complex(ComplexParam::new(rng.gen_range(-K_MAX..=K_MAX), nu)),
    }
}

/// Global twist data over a field with `r1 + 2 r2 = degree`.
#[derive(Clone, Debug)]
pub struct GlobalTwist {
    pub chi: GlobalChar,
    pub pi1: GlobalRep,
    pub pi2: GlobalRep,
    pub degree: u32,
}

const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Random composition of `n` into positive parts.
fn composition<R: Rng + ?Sized>(rng: &mut R, n: u32) -> Vec<u32> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let d = rng.gen_range(1..=left);
        parts.push(d);
        left -= d;
    }
    parts
}

/// Random global twist with `degree <= max_degree` and rank at most `max_rank`.
///
/// At each ramified prime `π_1` is a sum of essentially square-integrable
/// pieces and the twisted conductor is drawn from each piece's allowed range.
pub fn global_twist<R: Rng + ?Sized>(rng: &mut R, max_degree: u32, max_rank: u32) -> GlobalTwist {
    let n = rng.gen_range(1..=max_rank);
    let degree = rng.gen_range(1..=max_degree);
    let r2 = rng.gen_range(0..=degree / 2);
    let r1 = degree - 2 * r2;

    let count = rng.gen_range(0..=3);
    let primes: Vec<u64> = SMALL_PRIMES.choose_multiple(rng, count).copied().collect();
    let (mut e1, mut e2, mut eq) = (Vec::new(), Vec::new(), Vec::new());
    for &p in &primes {
        let a = rng.gen_range(0..=4);
        let (mut s1, mut s2) = (0, 0);
        for d in composition(rng, n) {
            let c = rng.gen_range(d - 1..=d + 5);
            let comp = EsiComponent::new(d, c).expect("conductor at least dim - 1");
            let range = twist_conductor_esi(comp, a);
            s1 += c;
            s2 += rng.gen_range(range.lo()..=range.hi());
        }
        e1.push((p, s1));
        e2.push((p, s2));
        eq.push((p, a));
    }
    let fi = |v: Vec<(u64, u32)>| FactoredInteger::from_pairs(v).expect("small primes");

    let places: Vec<Place> = std::iter::repeat_n(Place::Real, r1 as usize)
        .chain(std::iter::repeat_n(Place::Complex, r2 as usize))
        .collect();
    let mut chi_arch = Vec::new();
    let mut s1_arch = Vec::new();
    let mut s2_arch = Vec::new();
    for place in places {
        let s1 = strip_rep(rng, place, n);
        let c = strip_twist(rng, &s1);
        s2_arch.push(twist_arch(&s1, &c).expect("places match"));
        s1_arch.push(s1);
        chi_arch.push(c);
    }
    GlobalTwist {
        chi: GlobalChar { conductor: fi(eq), arch: chi_arch },
        pi1: GlobalRep { rank: n, conductor: fi(e1), arch: s1_arch },
        pi2: GlobalRep { rank: n, conductor: fi(e2), arch: s2_arch },
        degree,
    }
}

/// Random squarefree integer in `[1, max]`.
pub fn squarefree<R: Rng + ?Sized>(rng: &mut R, max: u64) -> u64 {
    loop {
        let v = rng.gen_range(1..=max);
        if FactoredInteger::factor(v).expect("positive").is_squarefree() {
            return v;
        }
    }
}
