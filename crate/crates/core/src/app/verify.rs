//! Self-verification sweeps, one per area of the library.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arch::{
    char_cond, claim31_holds, conductor_from_twist_pair, lemma_bound_check, theorem_b_check, twist_arch,
    ArchChar, ArchRep, Place, RealSummand, Sign, Summand, REL_TOL,
};
use crate::arith::gcd_u64;
use crate::dirichlet::{enumerate_characters, DirichletChar, RootOfUnity, UnitGroup};
use crate::local::{
    claim32_bound, prop3_relation, twist_conductor_esi, twist_conductor_via_levels, EsiComponent,
    GenericLocalRep,
};
use crate::sample;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    #[serde(rename = "prop3")]
    Prop3,
    #[serde(rename = "claim32")]
    Claim32,
    #[serde(rename = "dirichlet")]
    Dirichlet,
    #[serde(rename = "arch")]
    Arch,
    #[serde(rename = "theoremB")]
    TheoremB,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Prop3, Suite::Claim32, Suite::Dirichlet, Suite::Arch, Suite::TheoremB];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop3 => "prop3",
            Suite::Claim32 => "claim32",
            Suite::Dirichlet => "dirichlet",
            Suite::Arch => "arch",
            Suite::TheoremB => "theoremB",
        }
    }

    /// Parse a suite name; `all` expands to every suite.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>, String> {
        if s == "all" {
            Ok(Suite::ALL.to_vec())
        } else {
            s.parse().map(|x| vec![x])
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?} (expected prop3, claim32, dirichlet, arch, theoremB or all)"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sweep sizes. The defaults finish in a few seconds in release builds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sizes {
    pub max_modulus: u64,
    pub arch_samples: usize,
    pub difference_samples: usize,
    pub global_samples: usize,
}

impl Default for Sizes {
    fn default() -> Self {
        Self {
            max_modulus: 200,
            arch_samples: 100_000,
            difference_samples: 10_000,
            global_samples: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub violations: u64,
    /// First few counterexamples, with full inputs.
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
}

const KEEP: usize = 10;

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        Self {
            suite,
            checks: 0,
            violations: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
            if self.counterexamples.len() < KEEP {
                self.counterexamples.push(detail());
            }
        }
    }
}

pub fn run(suite: Suite, seed: u64, sizes: &Sizes) -> SuiteReport {
    match suite {
        Suite::Prop3 => prop3(),
        Suite::Claim32 => claim32(),
        Suite::Dirichlet => dirichlet(sizes.max_modulus),
        Suite::Arch => arch(seed, sizes),
        Suite::TheoremB => theorem_b(seed, sizes.global_samples),
    }
}

fn prop3() -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Prop3);
    for n in 1..=4u32 {
        for big_a in (n - 1)..=12 {
            let comp = EsiComponent::new(n, big_a).expect("valid component");
            for a in 0..=6u32 {
                let range = twist_conductor_esi(comp, a);
                for v in range.values() {
                    r.check(prop3_relation(n, big_a, a, v), || {
                        format!("n={n} A={big_a} a={a} twisted={v} range={range}")
                    });
                }
                if let Some(v) = twist_conductor_via_levels(comp, a) {
                    r.check(range.exact_value() == Some(v), || {
                        format!("n={n} A={big_a} a={a}: levels give {v}, range {range}")
                    });
                }
            }
        }
    }
    r
}

fn claim32() -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Claim32);
    for a1 in 0..=6u32 {
        let ps = GenericLocalRep::principal_series(&[a1, a1], true).expect("valid principal series");
        for a in 0..=8u32 {
            match claim32_bound(&ps, a) {
                Ok(m) => r.check(2 * a <= m, || format!("a1={a1} a={a}: bound {m} < 2a")),
                Err(e) => r.check(false, || format!("a1={a1} a={a}: {e}")),
            }
        }
    }
    r
}

/// Least divisor `d` of `q` such that `χ(x) = 1` for every unit `x ≡ 1 mod d`.
pub fn kernel_conductor(chi: &DirichletChar) -> u64 {
    let q = chi.modulus().value().expect("small modulus");
    (1..=q)
        .filter(|d| q.is_multiple_of(*d))
        .find(|&d| {
            (1..=q)
                .step_by(d as usize)
                .filter(|&x| gcd_u64(x, q) == 1)
                .all(|x| chi.evaluate(x as i64) == RootOfUnity::ONE)
        })
        .expect("d = q always works")
}

/// Whether the values are exactly equidistributed over the `d`-th roots of
/// unity for some `d`, which makes their sum exactly zero unless `d = 1`.
/// Returns that `d`.
fn equidistributed(values: &[RootOfUnity]) -> Option<u64> {
    let mut d = 1;
    let mut counts: HashMap<RootOfUnity, usize> = HashMap::new();
    for v in values {
        d = crate::arith::lcm_u64(d, v.order()?);
        *counts.entry(*v).or_default() += 1;
    }
    let each = values.len() as u64 / d;
    (counts.len() as u64 == d && counts.values().all(|&c| c as u64 == each)).then_some(d)
}

fn dirichlet(max_q: u64) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Dirichlet);
    for q in 1..=max_q {
        let group = Arc::new(UnitGroup::from_u64(q).expect("q >= 1"));
        let chars = enumerate_characters(&group);
        let phi = group.order();
        r.check(chars.len() as u64 == phi, || format!("q={q}: {} characters, phi={phi}", chars.len()));
        let units: Vec<u64> = (1..=q).filter(|&x| gcd_u64(x, q) == 1).collect();

        for chi in &chars {
            let values: Vec<RootOfUnity> = units.iter().map(|&x| chi.evaluate(x as i64)).collect();
            let d = equidistributed(&values);
            r.check(d == Some(chi.order()), || {
                format!("q={q} chi={}: values not equidistributed over order {}", chi.label(), chi.order())
            });
            for x in 0..q {
                if gcd_u64(x, q) != 1 {
                    r.check(chi.evaluate(x as i64).is_zero(), || format!("q={q} chi={} nonzero at {x}", chi.label()));
                }
            }
            let k = kernel_conductor(chi);
            let c = chi.conductor().value();
            r.check(c == Some(k), || format!("q={q} chi={}: conductor {c:?}, kernel scan {k}", chi.label()));
        }

        // the table is a group: the product of any two rows is a row, and
        // it evaluates as the pointwise product
        let index: HashMap<Vec<u64>, usize> = chars.iter().enumerate().map(|(i, c)| (c.exps().to_vec(), i)).collect();
        for a in &chars {
            for b in chars.iter().step_by(1 + chars.len() / 8) {
                let p = a.product(&b.inverse()).expect("same modulus");
                r.check(index.contains_key(p.exps()), || format!("q={q}: product {} * {}^-1 missing", a.label(), b.label()));
                r.check(
                    units.iter().all(|&x| p.evaluate(x as i64) == a.evaluate(x as i64) * b.evaluate(x as i64).inverse()),
                    || format!("q={q}: {} * {}^-1 not pointwise", a.label(), b.label()),
                );
            }
        }

        for &x in &units {
            let column: Vec<RootOfUnity> = chars.iter().map(|c| c.evaluate(x as i64)).collect();
            let d = equidistributed(&column);
            r.check(d.is_some() && ((d == Some(1)) == (x % q == 1 % q)), || {
                format!("q={q} x={x}: column sum not {}", if x % q == 1 % q { "phi(q)" } else { "zero" })
            });
        }
    }
    r.notes.push(format!("moduli 1..={max_q}"));
    r
}

fn arch(seed: u64, sizes: &Sizes) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Arch);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..sizes.arch_samples {
        let k = rng.gen_range(-sample::K_MAX..=sample::K_MAX);
        let nu = sample::strip_nu(&mut rng);
        r.check(claim31_holds(k, nu).unwrap_or(false), || format!("claim31 k={k} nu={nu}"));
    }

    for place in [Place::Real, Place::Complex] {
        let mut max_ratio: f64 = 0.0;
        for _ in 0..sizes.arch_samples {
            let n = rng.gen_range(1..=6);
            let s1 = sample::strip_rep(&mut rng, place, n);
            let chi = sample::strip_twist(&mut rng, &s1);
            match lemma_bound_check(&s1, &chi, false) {
                Ok(b) => {
                    max_ratio = max_ratio.max(b.ratio);
                    r.check(b.holds, || format!("lemma sigma1={s1:?} chi={chi:?} ratio={}", b.ratio));
                }
                Err(e) => r.check(false, || format!("lemma sigma1={s1:?} chi={chi:?}: {e}")),
            }
        }
        r.notes.push(format!("max lemma ratio at place {place}: {max_ratio:.6}"));
    }

    let witness = sharpness_witness_ratio();
    r.check((witness - 1.0).abs() <= REL_TOL, || format!("real equality witness ratio {witness}"));
    r.notes.push(format!("real equality witness ratio (strip override): {witness}"));

    for _ in 0..sizes.difference_samples {
        let place = if rng.gen_bool(0.5) { Place::Real } else { Place::Complex };
        let n = rng.gen_range(1..=4);
        let s1 = sample::strip_rep(&mut rng, place, n);
        let chi = sample::strip_twist(&mut rng, &s1);
        let (ok, detail) = difference_consistent(&s1, &chi);
        r.check(ok, || format!("difference formula sigma1={s1:?} chi={chi:?}: {detail}"));
    }
    r
}

/// Ratio at the real-place equality case `ν_1 = -1`, `χ = (ε = -1, ν = 1)`.
pub fn sharpness_witness_ratio() -> f64 {
    let s1 = ArchRep::Real(vec![RealSummand::one(Sign::Minus, Complex64::new(-1.0, 0.0))]);
    let chi = ArchChar::Real { eps: Sign::Minus, nu: Complex64::new(1.0, 0.0) };
    lemma_bound_check(&s1, &chi, true).expect("override set").ratio
}

/// Compare `char_cond(χ)` with the value read off every matched summand pair.
pub fn difference_consistent(s1: &ArchRep, chi: &ArchChar) -> (bool, String) {
    let s2 = match twist_arch(s1, chi) {
        Ok(s) => s,
        Err(e) => return (false, e.to_string()),
    };
    let want = char_cond(chi);
    let sign = match chi {
        ArchChar::Real { eps, .. } => *eps,
        ArchChar::Complex(_) => Sign::Plus,
    };
    for (a, b) in s1.summands().iter().zip(s2.summands()) {
        let got = match conductor_from_twist_pair(a, &b, sign) {
            Ok(v) => v,
            Err(e) => return (false, e.to_string()),
        };
        if (got - want).abs() > REL_TOL * want {
            let kind = match a {
                Summand::Complex(_) => "complex",
                Summand::Real(RealSummand::OneDim { .. }) => "real one-dim",
                Summand::Real(RealSummand::TwoDim { .. }) => "real two-dim",
            };
            return (false, format!("{kind} pair gives {got}, char_cond {want}"));
        }
    }
    (true, String::new())
}

fn theorem_b(seed: u64, samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::TheoremB);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_ratio: f64 = 0.0;
    for _ in 0..samples {
        let t = sample::global_twist(&mut rng, 4, 4);
        match theorem_b_check(&t.chi, &t.pi1, &t.pi2, t.degree) {
            Ok(c) => {
                max_ratio = max_ratio.max(c.lhs / c.rhs);
                r.check(c.holds, || format!("{t:?}: lhs={} rhs={}", c.lhs, c.rhs));
            }
            Err(e) => r.check(false, || format!("{t:?}: {e}")),
        }
    }
    r.notes.push(format!("max lhs/rhs: {max_ratio:.6}"));
    r
}
