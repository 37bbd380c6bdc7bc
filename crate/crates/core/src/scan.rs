//! Twist detection between two tables of Hecke eigenvalues.
//!
//! Given `λ_p(f)` and `λ_p(g)` on a common set of primes, look for Dirichlet
//! characters `χ` with `λ_p(f) χ(p) = λ_p(g)` at every shared prime not
//! dividing `Q N1 N2`. Only characters whose conductor passes the
//! divisibility bound are tried.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, FactoredInteger};
use crate::dirichlet::{primitive_characters, DirichletChar, UnitGroup};
use crate::error::{Error, Result};
use crate::global::{admissible_moduli, BoundMode};

/// Normalized Hecke eigenvalues of one form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct EigenvalueTable {
    pub label: String,
    pub level: FactoredInteger,
    pub rank: u32,
    pub weight_parity: Option<i8>,
    pub ap: BTreeMap<u64, Complex64>,
}

impl EigenvalueTable {
    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 {
            return Err(Error::InvalidTable("rank must be at least 1".into()));
        }
        if let Some(w) = self.weight_parity {
            if w != 1 && w != -1 {
                return Err(Error::InvalidTable(format!("weight_parity must be 1 or -1, got {w}")));
            }
        }
        for (&p, v) in &self.ap {
            if !is_prime(p) {
                return Err(Error::InvalidTable(format!("key {p} is not prime")));
            }
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::InvalidTable(format!("non-finite eigenvalue at {p}")));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidTable(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    label: String,
    level: u64,
    #[serde(default = "default_rank")]
    rank: u32,
    #[serde(default)]
    weight_parity: Option<i8>,
    /// Keys are decimal strings on the wire, kept in numeric order.
    ap: BTreeMap<u64, [f64; 2]>,
}

fn default_rank() -> u32 {
    2
}

impl TryFrom<TableJson> for EigenvalueTable {
    type Error = Error;

    fn try_from(j: TableJson) -> Result<Self> {
        let level = FactoredInteger::factor(j.level)
            .map_err(|_| Error::InvalidTable(format!("level must be >= 1, got {}", j.level)))?;
        let ap = j.ap.into_iter().map(|(p, [re, im])| (p, Complex64::new(re, im))).collect();
        let t = EigenvalueTable {
            label: j.label,
            level,
            rank: j.rank,
            weight_parity: j.weight_parity,
            ap,
        };
        t.validate()?;
        Ok(t)
    }
}

impl From<EigenvalueTable> for TableJson {
    fn from(t: EigenvalueTable) -> Self {
        TableJson {
            label: t.label,
            level: t.level.value().expect("level fits in u64"),
            rank: t.rank,
            weight_parity: t.weight_parity,
            ap: t.ap.into_iter().map(|(p, v)| (p, [v.re, v.im])).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub tolerance: f64,
    pub min_good_primes: usize,
    pub mode: BoundMode,
    pub parity_filter: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            min_good_primes: 20,
            mode: BoundMode::Product,
            parity_filter: false,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.min_good_primes == 0 {
            return Err(Error::InvalidConfig("min_good_primes must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Match,
    NoMatch,
    InsufficientData,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "MATCH",
            Verdict::NoMatch => "NO_MATCH",
            Verdict::InsufficientData => "INSUFFICIENT_DATA",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanMatch {
    pub label: String,
    pub conductor: u64,
    /// Largest `|λ_p(f) χ(p) − λ_p(g)| / max(1, |λ_p(f)|)` over tested primes.
    pub max_deviation: f64,
    pub primes_tested: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub candidates_tested: usize,
    pub matches: Vec<ScanMatch>,
    pub verdict: Verdict,
    /// Number of shared primes coprime to `N1 N2`.
    pub good_primes: usize,
}

fn rel_dev(f: Complex64, g: Complex64, chi: Complex64) -> f64 {
    (f * chi - g).norm() / f.norm().max(1.0)
}

fn shared_good_primes(f: &EigenvalueTable, g: &EigenvalueTable) -> Vec<(u64, Complex64, Complex64)> {
    let bad = f.level.mul(&g.level);
    f.ap
        .iter()
        .filter(|(p, _)| bad.exponent(**p) == 0)
        .filter_map(|(&p, &a)| g.ap.get(&p).map(|&b| (p, a, b)))
        .collect()
}

/// Cheap necessary condition for a unitary twist: `|λ_p(f)| = |λ_p(g)|`
/// at every shared prime coprime to `N1 N2`. `false` rules out every `χ`.
pub fn prefilter_abs(f: &EigenvalueTable, g: &EigenvalueTable, cfg: &ScanConfig) -> bool {
    shared_good_primes(f, g)
        .iter()
        .all(|&(_, a, b)| (a.norm() - b.norm()).abs() <= cfg.tolerance * a.norm().max(1.0))
}

/// Primitive characters of every admissible conductor, principal first.
pub fn candidate_characters(
    n1: &FactoredInteger,
    n2: &FactoredInteger,
    n: u32,
    mode: BoundMode,
) -> Result<Vec<DirichletChar>> {
    let mut out = Vec::new();
    for q in admissible_moduli(n1, n2, n, mode)? {
        let group = Arc::new(UnitGroup::new(&q)?);
        out.extend(primitive_characters(&group));
    }
    Ok(out)
}

enum Outcome {
    Refuted,
    Passed { primes: usize, max_dev: f64 },
}

fn test_candidate(
    chi: &DirichletChar,
    primes: &[(u64, Complex64, Complex64)],
    tol: f64,
) -> Outcome {
    let mut max_dev: f64 = 0.0;
    let mut count = 0;
    for &(p, a, b) in primes {
        let v = chi.evaluate(p as i64);
        if v.is_zero() {
            continue;
        }
        let d = rel_dev(a, b, v.to_complex());
        if d > tol {
            return Outcome::Refuted;
        }
        max_dev = max_dev.max(d);
        count += 1;
    }
    Outcome::Passed { primes: count, max_dev }
}

/// Test every candidate allowed by the conductor bound for `cfg.mode`.
pub fn scan(f: &EigenvalueTable, g: &EigenvalueTable, cfg: &ScanConfig) -> Result<ScanResult> {
    if f.rank != g.rank {
        return Err(Error::TableRank(f.rank, g.rank));
    }
    cfg.validate()?;
    let candidates = candidate_characters(&f.level, &g.level, f.rank, cfg.mode)?;
    scan_with_candidates(f, g, cfg, &candidates)
}

/// Test an explicit candidate list. Results come back in candidate order
/// regardless of how the work is split across threads.
pub fn scan_with_candidates(
    f: &EigenvalueTable,
    g: &EigenvalueTable,
    cfg: &ScanConfig,
    candidates: &[DirichletChar],
) -> Result<ScanResult> {
    if f.rank != g.rank {
        return Err(Error::TableRank(f.rank, g.rank));
    }
    cfg.validate()?;
    let primes = shared_good_primes(f, g);
    if !prefilter_abs(f, g, cfg) {
        return Ok(ScanResult {
            candidates_tested: 0,
            matches: Vec::new(),
            verdict: Verdict::NoMatch,
            good_primes: primes.len(),
        });
    }
    let parity = match (cfg.parity_filter, f.weight_parity, g.weight_parity) {
        (true, Some(a), Some(b)) => Some(a * b),
        _ => None,
    };
    let tested: Vec<&DirichletChar> = candidates
        .iter()
        .filter(|c| parity.is_none_or(|want| c.parity() == want))
        .collect();
    let outcomes: Vec<Outcome> = tested
        .par_iter()
        .map(|c| test_candidate(c, &primes, cfg.tolerance))
        .collect();

    let mut matches = Vec::new();
    let mut short = false;
    for (chi, outcome) in tested.iter().zip(outcomes) {
        if let Outcome::Passed { primes, max_dev } = outcome {
            if primes >= cfg.min_good_primes {
                matches.push(ScanMatch {
                    label: chi.label(),
                    conductor: chi.modulus().value().expect("candidate modulus fits"),
                    max_deviation: max_dev,
                    primes_tested: primes,
                });
            } else {
                short = true;
            }
        }
    }
    let verdict = if !matches.is_empty() {
        Verdict::Match
    } else if short {
        Verdict::InsufficientData
    } else {
        Verdict::NoMatch
    };
    Ok(ScanResult {
        candidates_tested: tested.len(),
        matches,
        verdict,
        good_primes: primes.len(),
    })
}

/// Default container level for a planted twist: `lcm(N1, Q^2)`.
pub fn default_twist_level(n1: &FactoredInteger, q: &FactoredInteger) -> FactoredInteger {
    n1.lcm(&q.pow(2))
}

/// The table of `f ⊗ χ` at level `n2`: `λ_p(f) χ(p)` for `p` coprime to the
/// modulus of `χ`; other primes are dropped.
pub fn plant_twist(f: &EigenvalueTable, chi: &DirichletChar, n2: &FactoredInteger) -> EigenvalueTable {
    let ap = f
        .ap
        .iter()
        .filter_map(|(&p, &a)| {
            let v = chi.evaluate(p as i64);
            (!v.is_zero()).then(|| (p, a * v.to_complex()))
        })
        .collect();
    EigenvalueTable {
        label: format!("{}x{}", f.label, chi.label()),
        level: n2.clone(),
        rank: f.rank,
        weight_parity: f.weight_parity.map(|w| w * chi.parity()),
        ap,
    }
}

/// Synthetic table with eigenvalues of random modulus in `[0.1, 2]` and
/// random argument at the given primes.
pub fn random_table<R: Rng + ?Sized>(label: &str, level: &FactoredInteger, primes: &[u64], rng: &mut R) -> EigenvalueTable {
    let ap = primes
        .iter()
        .map(|&p| {
            let r = rng.gen_range(0.1..2.0);
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            (p, Complex64::from_polar(r, theta))
        })
        .collect();
    EigenvalueTable {
        label: label.to_string(),
        level: level.clone(),
        rank: 2,
        weight_parity: None,
        ap,
    }
}
