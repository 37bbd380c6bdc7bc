//! Properties of the twist scan: pruning never loses a match, results do not
//! depend on threading or candidate order, and a failed prefilter is final.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistbound::arith::first_primes;
use twistbound::dirichlet::{primitive_characters, DirichletChar, UnitGroup};
use twistbound::scan::{
    candidate_characters, default_twist_level, plant_twist, prefilter_abs, random_table, scan, scan_with_candidates,
    EigenvalueTable, ScanConfig, Verdict,
};
use twistbound::FactoredInteger;

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Every primitive character whose conductor is at most `sqrt(N1 N2)`.
fn unpruned(f: &EigenvalueTable, g: &EigenvalueTable) -> Vec<DirichletChar> {
    let top = isqrt(f.level.value().unwrap() * g.level.value().unwrap());
    (1..=top)
        .flat_map(|q| primitive_characters(&Arc::new(UnitGroup::from_u64(q).unwrap())))
        .collect()
}

fn random_primitive<R: Rng>(rng: &mut R, max_q: u64) -> DirichletChar {
    loop {
        let q = rng.gen_range(1..=max_q);
        let chars = primitive_characters(&Arc::new(UnitGroup::from_u64(q).unwrap()));
        if let Some(c) = chars.choose(rng) {
            return c.clone();
        }
    }
}

fn planted_pair(seed: u64) -> (EigenvalueTable, EigenvalueTable, DirichletChar) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n1 = rng.gen_range(1..=30u64);
    let f = random_table("f", &FactoredInteger::factor(n1).unwrap(), &first_primes(120), &mut rng);
    let chi = random_primitive(&mut rng, 12);
    let g = plant_twist(&f, &chi, &default_twist_level(&f.level, chi.modulus()));
    (f, g, chi)
}

fn labels(r: &twistbound::scan::ScanResult) -> Vec<String> {
    r.matches.iter().map(|m| m.label.clone()).collect()
}

#[test]
fn pruning_keeps_every_match() {
    let cfg = ScanConfig::default();
    for seed in 0..20 {
        let (f, g, chi) = planted_pair(seed);
        let pruned = scan(&f, &g, &cfg).unwrap();
        let full = scan_with_candidates(&f, &g, &cfg, &unpruned(&f, &g)).unwrap();
        assert!(full.candidates_tested >= pruned.candidates_tested);
        let kept = labels(&pruned);
        for label in labels(&full) {
            assert!(kept.contains(&label), "seed {seed}: {label} found only without pruning");
        }
        assert!(kept.contains(&chi.label()), "seed {seed}: planted {} missing", chi.label());
        assert_eq!(pruned.verdict, Verdict::Match);
    }
}

#[test]
fn independent_of_thread_count() {
    let cfg = ScanConfig::default();
    for seed in 100..105 {
        let (f, g, _) = planted_pair(seed);
        let candidates = unpruned(&f, &g);
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| scan_with_candidates(&f, &g, &cfg, &candidates).unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(4));
        assert_eq!(one, run(7));
    }
}

#[test]
fn independent_of_candidate_order() {
    let cfg = ScanConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 200..205 {
        let (f, g, _) = planted_pair(seed);
        let candidates = candidate_characters(&f.level, &g.level, 2, cfg.mode).unwrap();
        let base = scan_with_candidates(&f, &g, &cfg, &candidates).unwrap();
        let mut shuffled = candidates.clone();
        shuffled.shuffle(&mut rng);
        let other = scan_with_candidates(&f, &g, &cfg, &shuffled).unwrap();
        assert_eq!(base.verdict, other.verdict);
        assert_eq!(base.candidates_tested, other.candidates_tested);
        let (mut a, mut b) = (labels(&base), labels(&other));
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}

#[test]
fn failed_prefilter_means_no_match() {
    let cfg = ScanConfig::default();
    for seed in 300..320 {
        let (f, mut g, _) = planted_pair(seed);
        let p = *g.ap.keys().find(|&&p| f.level.mul(&g.level).exponent(p) == 0).unwrap();
        *g.ap.get_mut(&p).unwrap() *= 1.01;
        assert!(!prefilter_abs(&f, &g, &cfg));
        let r = scan_with_candidates(&f, &g, &cfg, &unpruned(&f, &g)).unwrap();
        assert_eq!(r.verdict, Verdict::NoMatch);
        assert!(r.matches.is_empty());
    }
}
