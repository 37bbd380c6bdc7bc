//! Dirichlet characters with exact values.
//!
//! `(Z/QZ)^×` is split by CRT into prime-power parts, each a product of at
//! most two cyclic blocks with fixed generators:
//!
//! * odd `p^e`: one block generated by the least primitive root `g` mod `p`,
//!   replaced by `g + p` when `g^(p-1) ≡ 1 mod p^2`;
//! * `2`: no blocks; `4`: the block `<-1>`;
//! * `2^e`, `e >= 3`: blocks `<-1>` of order 2 and `<5>` of order `2^(e-2)`.
//!
//! Generators are stored as residues mod `Q` that are `1` at every other
//! prime. A character is a vector of exponents, one per block, and takes the
//! value `exp(2πi · Σ exps[i] · log_i(m) / order_i)`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::arith::{gcd_u64, lcm_u64, pow_mod, FactoredInteger};
use crate::error::{Error, Result};

/// Exact value of a Dirichlet character: zero or `exp(2πi num/den)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootOfUnity {
    Zero,
    Root { num: u64, den: u64 },
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity::Root { num: 0, den: 1 };

    /// `exp(2πi num/den)` with the fraction reduced mod 1.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let num = num % den;
        let g = gcd_u64(num, den);
        if num == 0 {
            Self::ONE
        } else {
            RootOfUnity::Root { num: num / g, den: den / g }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RootOfUnity::Zero)
    }

    /// Multiplicative order; `None` for zero.
    pub fn order(&self) -> Option<u64> {
        match *self {
            RootOfUnity::Zero => None,
            RootOfUnity::Root { den, .. } => Some(den),
        }
    }

    pub fn inverse(&self) -> Self {
        match *self {
            RootOfUnity::Zero => RootOfUnity::Zero,
            RootOfUnity::Root { num, den } => RootOfUnity::new(den - num, den),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match *self {
            RootOfUnity::Zero => Complex64::new(0.0, 0.0),
            RootOfUnity::Root { num, den } => {
                // exact values at the quarter turns
                match (num * 4) % den {
                    0 => {
                        match num * 4 / den {
                            0 => Complex64::new(1.0, 0.0),
                            1 => Complex64::new(0.0, 1.0),
                            2 => Complex64::new(-1.0, 0.0),
                            _ => Complex64::new(0.0, -1.0),
                        }
                    }
                    _ => Complex64::from_polar(
                        1.0,
                        std::f64::consts::TAU * num as f64 / den as f64,
                    ),
                }
            }
        }
    }
}

impl std::ops::Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: Self) -> Self {
        match (self, rhs) {
            (RootOfUnity::Root { num: a, den: b }, RootOfUnity::Root { num: c, den: d }) => {
                let l = lcm_u64(b, d);
                let n = (a as u128 * (l / b) as u128 + c as u128 * (l / d) as u128) % l as u128;
                RootOfUnity::new(n as u64, l)
            }
            _ => RootOfUnity::Zero,
        }
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RootOfUnity::Zero => write!(f, "0"),
            RootOfUnity::Root { num: 0, .. } => write!(f, "1"),
            RootOfUnity::Root { num, den } => write!(f, "e({num}/{den})"),
        }
    }
}

/// A cyclic factor of the unit group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicBlock {
    pub prime: u64,
    /// Generator as a residue mod `Q`.
    pub generator: u64,
    pub order: u64,
}

#[derive(Clone, Debug)]
struct PrimePowerPart {
    prime: u64,
    exponent: u32,
    modulus: u64,
    first_block: usize,
    block_count: usize,
    // residue mod p^e -> packed discrete log, NO_LOG for non-units
    logs: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

/// CRT decomposition of `(Z/QZ)^×` with discrete-log tables.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    modulus: FactoredInteger,
    q: u64,
    parts: Vec<PrimePowerPart>,
    blocks: Vec<CyclicBlock>,
}

impl PartialEq for UnitGroup {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for UnitGroup {}

/// Least primitive root mod an odd prime.
pub fn least_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let phi = FactoredInteger::factor(p - 1).expect("p > 1");
    (2..p)
        .find(|&g| phi.primes().all(|r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("primes have primitive roots")
}

/// Generator used for the odd prime power `p^e`.
pub fn odd_prime_power_generator(p: u64, e: u32) -> u64 {
    let g = least_primitive_root(p);
    if e >= 2 && pow_mod(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    debug_assert_eq!(old_r, 1, "not invertible");
    old_s.rem_euclid(m as i128) as u64
}

// residue mod q that is `x` mod pe and 1 mod q/pe
fn crt_lift(x: u64, pe: u64, q: u64) -> u64 {
    let rest = q / pe;
    if rest == 1 {
        return x % q;
    }
    let a = (x as u128 * rest as u128 % q as u128) * mod_inverse(rest % pe, pe) as u128;
    let b = pe as u128 * mod_inverse(pe % rest, rest) as u128;
    ((a + b) % q as u128) as u64
}

impl UnitGroup {
    pub fn new(modulus: &FactoredInteger) -> Result<Self> {
        let q = modulus.value().ok_or_else(|| Error::Overflow(modulus.clone()))?;
        let mut parts = Vec::new();
        let mut blocks = Vec::new();
        for (p, e) in modulus.iter() {
            let pe = p.pow(e);
            let first_block = blocks.len();
            let mut logs = vec![NO_LOG; pe as usize];
            if p == 2 {
                match e {
                    1 => logs[1] = 0,
                    2 => {
                        logs[1] = 0;
                        logs[3] = 1;
                        blocks.push(CyclicBlock { prime: 2, generator: crt_lift(3, 4, q), order: 2 });
                    }
                    _ => {
                        let ord5 = pe / 4;
                        blocks.push(CyclicBlock { prime: 2, generator: crt_lift(pe - 1, pe, q), order: 2 });
                        blocks.push(CyclicBlock { prime: 2, generator: crt_lift(5, pe, q), order: ord5 });
                        let mut x = 1u64;
                        for t in 0..ord5 {
                            logs[x as usize] = t as u32;
                            logs[(pe - x) as usize] = (ord5 + t) as u32;
                            x = x * 5 % pe;
                        }
                    }
                }
            } else {
                let g = odd_prime_power_generator(p, e);
                let order = pe / p * (p - 1);
                blocks.push(CyclicBlock { prime: p, generator: crt_lift(g, pe, q), order });
                let mut x = 1u64;
                for k in 0..order {
                    logs[x as usize] = k as u32;
                    x = x * g % pe;
                }
            }
            parts.push(PrimePowerPart {
                prime: p,
                exponent: e,
                modulus: pe,
                first_block,
                block_count: blocks.len() - first_block,
                logs,
            });
        }
        Ok(Self {
            modulus: modulus.clone(),
            q,
            parts,
            blocks,
        })
    }

    pub fn from_u64(q: u64) -> Result<Self> {
        Self::new(&FactoredInteger::factor(q)?)
    }

    pub fn modulus(&self) -> &FactoredInteger {
        &self.modulus
    }

    pub fn modulus_value(&self) -> u64 {
        self.q
    }

    pub fn blocks(&self) -> &[CyclicBlock] {
        &self.blocks
    }

    /// Group order, the product of block orders.
    pub fn order(&self) -> u64 {
        self.blocks.iter().map(|b| b.order).product()
    }

    /// Discrete logs of `m` in every block, or `None` if `gcd(m, Q) > 1`.
    pub fn logs(&self, m: i64) -> Option<Vec<u64>> {
        let r = m.rem_euclid(self.q as i64) as u64;
        let mut out = Vec::with_capacity(self.blocks.len());
        for part in &self.parts {
            let packed = part.logs[(r % part.modulus) as usize];
            if packed == NO_LOG {
                return None;
            }
            match part.block_count {
                0 => {}
                1 => out.push(packed as u64),
                _ => {
                    let ord5 = self.blocks[part.first_block + 1].order;
                    out.push(packed as u64 / ord5);
                    out.push(packed as u64 % ord5);
                }
            }
        }
        Some(out)
    }
}

/// A Dirichlet character mod `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletChar {
    group: Arc<UnitGroup>,
    exps: Vec<u64>,
}

impl DirichletChar {
    /// Exponents are reduced mod the block orders.
    pub fn new(group: Arc<UnitGroup>, exps: Vec<u64>) -> Result<Self> {
        if exps.len() != group.blocks.len() {
            return Err(Error::BlockCount {
                got: exps.len(),
                want: group.blocks.len(),
            });
        }
        let exps = exps
            .into_iter()
            .zip(&group.blocks)
            .map(|(x, b)| x % b.order)
            .collect();
        Ok(Self { group, exps })
    }

    pub fn principal(group: Arc<UnitGroup>) -> Self {
        let exps = vec![0; group.blocks.len()];
        Self { group, exps }
    }

    /// Character with label `Q.i`, `i` being the mixed-radix index of the
    /// exponent vector (first block most significant).
    pub fn from_index(group: Arc<UnitGroup>, mut index: u64) -> Result<Self> {
        let mut exps = vec![0; group.blocks.len()];
        for (slot, b) in exps.iter_mut().zip(&group.blocks).rev() {
            *slot = index % b.order;
            index /= b.order;
        }
        if index != 0 {
            return Err(Error::BadLabel(format!("index out of range mod {}", group.q)));
        }
        Ok(Self { group, exps })
    }

    pub fn from_label(label: &str) -> Result<Self> {
        let bad = || Error::BadLabel(label.to_string());
        let (q, i) = label.split_once('.').ok_or_else(bad)?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        let i: u64 = i.parse().map_err(|_| bad())?;
        let group = Arc::new(UnitGroup::from_u64(q).map_err(|_| bad())?);
        Self::from_index(group, i).map_err(|_| bad())
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn modulus(&self) -> &FactoredInteger {
        &self.group.modulus
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn index(&self) -> u64 {
        self.exps
            .iter()
            .zip(&self.group.blocks)
            .fold(0, |acc, (&x, b)| acc * b.order + x)
    }

    pub fn label(&self) -> String {
        format!("{}.{}", self.group.q, self.index())
    }

    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|&x| x == 0)
    }

    pub fn evaluate(&self, m: i64) -> RootOfUnity {
        let Some(logs) = self.group.logs(m) else {
            return RootOfUnity::Zero;
        };
        let den = self.group.blocks.iter().fold(1, |l, b| lcm_u64(l, b.order));
        let num = self
            .exps
            .iter()
            .zip(&logs)
            .zip(&self.group.blocks)
            .fold(0u128, |acc, ((&x, &lg), b)| {
                (acc + x as u128 * lg as u128 % b.order as u128 * (den / b.order) as u128)
                    % den as u128
            });
        RootOfUnity::new(num as u64, den)
    }

    pub fn order(&self) -> u64 {
        self.exps
            .iter()
            .zip(&self.group.blocks)
            .fold(1, |l, (&x, b)| lcm_u64(l, b.order / gcd_u64(x, b.order)))
    }

    /// `chi(-1)` as `+1` or `-1`.
    pub fn parity(&self) -> i8 {
        match self.evaluate(-1) {
            RootOfUnity::Root { num: 0, .. } => 1,
            _ => -1,
        }
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::ModulusMismatch(self.modulus().clone(), other.modulus().clone()));
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .zip(&self.group.blocks)
            .map(|((&a, &b), blk)| (a + b) % blk.order)
            .collect();
        Ok(Self { group: self.group.clone(), exps })
    }

    pub fn inverse(&self) -> Self {
        let exps = self
            .exps
            .iter()
            .zip(&self.group.blocks)
            .map(|(&a, blk)| (blk.order - a) % blk.order)
            .collect();
        Self { group: self.group.clone(), exps }
    }

    /// Conductor exponent at each prime of the modulus.
    pub fn local_exponents(&self) -> Vec<(u64, u32)> {
        self.group
            .parts
            .iter()
            .map(|part| {
                let xs = &self.exps[part.first_block..part.first_block + part.block_count];
                (part.prime, local_exponent(part.prime, part.exponent, xs))
            })
            .collect()
    }

    pub fn conductor(&self) -> FactoredInteger {
        FactoredInteger::from_pairs(self.local_exponents()).expect("primes of the modulus")
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == *self.modulus()
    }

    /// The character mod a multiple `M` of the modulus that agrees with
    /// this one on integers coprime to `M`.
    pub fn induce(&self, target: &Arc<UnitGroup>) -> Result<Self> {
        if !self.modulus().divides(target.modulus()) {
            return Err(Error::NotAMultiple {
                from: self.modulus().clone(),
                to: target.modulus().clone(),
            });
        }
        let exps = target
            .blocks
            .iter()
            .map(|b| match self.evaluate(b.generator as i64) {
                RootOfUnity::Root { num, den } => num * (b.order / den),
                RootOfUnity::Zero => unreachable!("generators are units mod the target"),
            })
            .collect();
        Ok(Self { group: target.clone(), exps })
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> Self {
        let cond = self.conductor();
        let group = Arc::new(UnitGroup::new(&cond).expect("conductor divides modulus"));
        let mut exps = Vec::with_capacity(group.blocks.len());
        for part in &self.group.parts {
            let c = cond.exponent(part.prime);
            if c == 0 {
                continue;
            }
            let shift = part.prime.pow(part.exponent - c);
            let xs = &self.exps[part.first_block..part.first_block + part.block_count];
            if part.prime == 2 {
                exps.push(xs[0]);
                if c >= 3 {
                    exps.push(xs[1] / shift);
                }
            } else {
                exps.push(xs[0] / shift);
            }
        }
        Self { group, exps }
    }
}

impl fmt::Display for DirichletChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn valuation(mut x: u64, p: u64) -> u32 {
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

// Conductor exponent of the p-part with exponent vector `xs` mod p^e.
fn local_exponent(p: u64, e: u32, xs: &[u64]) -> u32 {
    if xs.iter().all(|&x| x == 0) {
        return 0;
    }
    if p == 2 {
        // e >= 2 here, blocks are <-1> and, for e >= 3, <5>
        match xs.get(1) {
            Some(&x5) if x5 != 0 => e - valuation(x5, 2),
            _ => 2,
        }
    } else {
        // trivial on 1 + p^k iff p^(e-k) divides the exponent
        (e - valuation(xs[0], p)).max(1)
    }
}

/// All `φ(Q)` characters mod `Q`, principal first, in label order.
pub fn enumerate_characters(group: &Arc<UnitGroup>) -> Vec<DirichletChar> {
    let total = group.order();
    (0..total)
        .map(|i| DirichletChar::from_index(group.clone(), i).expect("index in range"))
        .collect()
}

/// Characters mod `Q` whose conductor is exactly `Q`, in label order.
pub fn primitive_characters(group: &Arc<UnitGroup>) -> Vec<DirichletChar> {
    // per prime-power part, the exponent sub-vectors of full conductor
    let mut choices: Vec<Vec<Vec<u64>>> = Vec::with_capacity(group.parts.len());
    for part in &group.parts {
        let orders: Vec<u64> = group.blocks[part.first_block..part.first_block + part.block_count]
            .iter()
            .map(|b| b.order)
            .collect();
        let subs: Vec<Vec<u64>> = match orders.as_slice() {
            [] => vec![vec![]],
            [o] => (0..*o).map(|x| vec![x]).collect(),
            [o1, o2] => (0..*o1).flat_map(|x| (0..*o2).map(move |y| vec![x, y])).collect(),
            _ => unreachable!("at most two blocks per prime"),
        };
        let full: Vec<Vec<u64>> = subs
            .into_iter()
            .filter(|xs| local_exponent(part.prime, part.exponent, xs) == part.exponent)
            .collect();
        if full.is_empty() {
            return Vec::new();
        }
        choices.push(full);
    }
    let mut out = vec![Vec::with_capacity(group.blocks.len())];
    for opts in &choices {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u64>| {
                opts.iter().map(move |tail| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(tail);
                    v
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|exps| DirichletChar { group: group.clone(), exps })
        .collect()
}

/// Number of primitive characters mod `Q`, by the multiplicative formula.
pub fn primitive_count(q: &FactoredInteger) -> u64 {
    q.iter()
        .map(|(p, e)| match (p, e) {
            (2, 1) => 0,
            (2, 2) => 1,
            (_, 1) => p - 2,
            _ => p.pow(e - 2) * (p - 1) * (p - 1),
        })
        .product()
}
