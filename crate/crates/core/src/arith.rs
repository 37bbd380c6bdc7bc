//! Positive integers in fully factored form.
//!
//! Arithmetic conductors live here: levels `N1`, `N2`, the character
//! conductor `Q`, products and least common multiples of those. Everything
//! is kept as a prime -> exponent map so that divisibility questions such as
//! `Q^n | N1 N2` reduce to per-prime exponent comparisons.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A positive integer stored as its prime factorization.
///
/// The empty map is `1`. Keys are primes in increasing order, exponents are
/// at least one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u32>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    /// Factor `n` by trial division, falling back to Miller–Rabin and
    /// Pollard rho for large cofactors.
    pub fn factor(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::NonPositive(0));
        }
        let mut factors = BTreeMap::new();
        let mut rest = n;
        for p in [2u64, 3, 5] {
            while rest.is_multiple_of(p) {
                *factors.entry(p).or_insert(0) += 1;
                rest /= p;
            }
        }
        // wheel mod 30 up to a fixed bound, then hand off to rho
        const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
        let mut d = 7u64;
        let mut i = 0;
        while d <= TRIAL_LIMIT && d * d <= rest {
            while rest.is_multiple_of(d) {
                *factors.entry(d).or_insert(0) += 1;
                rest /= d;
            }
            d += WHEEL[i];
            i = (i + 1) % WHEEL.len();
        }
        if rest > 1 {
            let mut stack = vec![rest];
            while let Some(m) = stack.pop() {
                if m == 1 {
                    continue;
                }
                if is_prime(m) {
                    *factors.entry(m).or_insert(0) += 1;
                } else {
                    let f = pollard_rho(m);
                    stack.push(f);
                    stack.push(m / f);
                }
            }
        }
        Ok(Self { factors })
    }

    /// Factor a signed input, rejecting anything below one.
    pub fn factor_signed(n: i64) -> Result<Self> {
        if n <= 0 {
            return Err(Error::NonPositive(n));
        }
        Self::factor(n as u64)
    }

    /// Build from explicit `(prime, exponent)` pairs. Zero exponents are
    /// dropped, repeated primes accumulate.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u32)>>(pairs: I) -> Result<Self> {
        let mut factors = BTreeMap::new();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if e > 0 {
                *factors.entry(p).or_insert(0) += e;
            }
        }
        Ok(Self { factors })
    }

    pub fn prime_power(p: u64, e: u32) -> Result<Self> {
        Self::from_pairs([(p, e)])
    }

    /// Exponent of `p`, zero when `p` does not divide.
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.values().all(|&e| e == 1)
    }

    /// The integer value, or `None` on `u64` overflow.
    pub fn value(&self) -> Option<u64> {
        self.iter()
            .try_fold(1u64, |acc, (p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    /// Value as a float, for analytic quantities. Never overflows to an
    /// error; very large values saturate to infinity.
    pub fn value_f64(&self) -> f64 {
        self.ln().exp()
    }

    pub fn ln(&self) -> f64 {
        self.iter().map(|(p, e)| e as f64 * (p as f64).ln()).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (p, e) in other.iter() {
            *factors.entry(p).or_insert(0) += e;
        }
        Self { factors }
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return Self::one();
        }
        Self {
            factors: self.iter().map(|(p, e)| (p, e * n)).collect(),
        }
    }

    /// Per-prime maximum of exponents.
    pub fn lcm(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (p, e) in other.iter() {
            let slot = factors.entry(p).or_insert(0);
            *slot = (*slot).max(e);
        }
        Self { factors }
    }

    /// Per-prime minimum of exponents.
    pub fn gcd(&self, other: &Self) -> Self {
        Self {
            factors: self
                .iter()
                .filter_map(|(p, e)| {
                    let m = e.min(other.exponent(p));
                    (m > 0).then_some((p, m))
                })
                .collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.iter().all(|(p, e)| e <= other.exponent(p))
    }

    /// Whether `self^n` divides `m`.
    pub fn divides_pow(&self, n: u32, m: &Self) -> bool {
        self.iter()
            .all(|(p, e)| (e as u64) * (n as u64) <= m.exponent(p) as u64)
    }

    /// Largest `q` with `q^n | self`.
    pub fn nth_root_floor(&self, n: u32) -> Self {
        assert!(n >= 1, "root index must be positive");
        Self {
            factors: self
                .iter()
                .filter_map(|(p, e)| (e / n > 0).then_some((p, e / n)))
                .collect(),
        }
    }

    /// All divisors in ascending order of value.
    pub fn divisors(&self) -> Vec<FactoredInteger> {
        let mut out = vec![FactoredInteger::one()];
        for (p, e) in self.iter() {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for d in &out {
                for k in 0..=e {
                    let mut f = d.factors.clone();
                    if k > 0 {
                        f.insert(p, k);
                    }
                    next.push(FactoredInteger { factors: f });
                }
            }
            out = next;
        }
        out.sort_by(|a, b| match (a.value(), b.value()) {
            (Some(x), Some(y)) => x.cmp(&y),
            _ => a.ln().total_cmp(&b.ln()),
        });
        out
    }

    pub fn divisor_count(&self) -> u64 {
        self.factors.values().map(|&e| e as u64 + 1).product()
    }

    /// Euler's totient, `None` on overflow.
    pub fn totient(&self) -> Option<u64> {
        self.iter().try_fold(1u64, |acc, (p, e)| {
            acc.checked_mul((p - 1).checked_mul(p.checked_pow(e - 1)?)?)
        })
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => {
                let parts: Vec<String> = self
                    .iter()
                    .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
                    .collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

impl TryFrom<u64> for FactoredInteger {
    type Error = Error;

    fn try_from(n: u64) -> Result<Self> {
        Self::factor(n)
    }
}

impl From<FactoredInteger> for u64 {
    fn from(f: FactoredInteger) -> u64 {
        f.value().expect("factored integer exceeds u64")
    }
}

const TRIAL_LIMIT: u64 = 1 << 16;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant; n must be composite and odd-or-even but not a prime.
fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut limit = 64u64;
    loop {
        let ps = primes_up_to(limit);
        if ps.len() >= count {
            return ps[..count].to_vec();
        }
        limit *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fi(n: u64) -> FactoredInteger {
        FactoredInteger::factor(n).unwrap()
    }

    fn trial(n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if m > 1 {
            out.push((m, 1));
        }
        out
    }

    #[test]
    fn factor_examples() {
        assert!(fi(1).is_one());
        assert_eq!(fi(15).iter().collect::<Vec<_>>(), vec![(3, 1), (5, 1)]);
        assert_eq!(fi(360).iter().collect::<Vec<_>>(), trial(360));
        assert_eq!(trial(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert!(FactoredInteger::factor(0).is_err());
        assert!(FactoredInteger::factor_signed(-4).is_err());
    }

    #[test]
    fn factor_large() {
        let n = 18446744073709551557u64; // largest prime below 2^64
        assert_eq!(fi(n).iter().collect::<Vec<_>>(), vec![(n, 1)]);
        let semi = 4294967291u64 * 4294967279u64;
        assert_eq!(
            fi(semi).iter().collect::<Vec<_>>(),
            vec![(4294967279, 1), (4294967291, 1)]
        );
        assert_eq!(fi(semi).value(), Some(semi));
    }

    #[test]
    fn lcm_examples() {
        let a = FactoredInteger::from_pairs([(2, 3), (3, 1)]).unwrap();
        let b = FactoredInteger::from_pairs([(2, 1), (5, 2)]).unwrap();
        assert_eq!(a.lcm(&b), FactoredInteger::from_pairs([(2, 3), (3, 1), (5, 2)]).unwrap());
        assert_eq!(fi(2).lcm(&fi(3)), fi(6));
        assert_eq!(a.lcm(&a), a);
    }

    #[test]
    fn divides_pow_examples() {
        assert!(fi(15).divides_pow(2, &fi(225)));
        assert!(fi(1).divides_pow(7, &fi(13)));
        assert!(!fi(3).divides_pow(2, &fi(15)));
    }

    #[test]
    fn divisors_examples() {
        let vals = |n| fi(n).divisors().iter().map(|d| d.value().unwrap()).collect::<Vec<_>>();
        assert_eq!(vals(1), vec![1]);
        assert_eq!(vals(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(vals(49), vec![1, 7, 49]);
    }

    #[test]
    fn display_overflow() {
        let big = FactoredInteger::from_pairs([(2, 70), (3, 1)]).unwrap();
        assert_eq!(big.value(), None);
        assert_eq!(big.to_string(), "2^70*3");
    }

    #[test]
    fn primes_list() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(first_primes(200).len(), 200);
        assert_eq!(first_primes(200)[199], 1223);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn factor_round_trip(n in 1u64..=1_000_000) {
                let f = fi(n);
                prop_assert_eq!(f.value(), Some(n));
                prop_assert!(f.primes().all(is_prime));
                prop_assert_eq!(f.iter().collect::<Vec<_>>(), trial(n));
            }

            #[test]
            fn divisors_match_scan(n in 1u64..=20_000) {
                let got: Vec<u64> = fi(n).divisors().iter().map(|d| d.value().unwrap()).collect();
                let want: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
                prop_assert_eq!(fi(n).divisor_count(), want.len() as u64);
                prop_assert_eq!(got, want);
            }

            #[test]
            fn divides_pow_matches_integers(q in 1u64..=1000, n in 1u32..=3, m in 1u64..=1_000_000_000) {
                let direct = q.checked_pow(n).is_some_and(|qn| m % qn == 0);
                prop_assert_eq!(fi(q).divides_pow(n, &fi(m)), direct);
            }

            #[test]
            fn lcm_times_gcd(a in 1u64..=100_000, b in 1u64..=100_000) {
                let (fa, fb) = (fi(a), fi(b));
                prop_assert_eq!(fa.lcm(&fb).mul(&fa.gcd(&fb)), fa.mul(&fb));
                prop_assert_eq!(fa.lcm(&fb).value(), Some(lcm_u64(a, b)));
            }
        }
    }
}
