//! Plant a twist into a synthetic eigenvalue table and find it again.
//!
//! With a directory argument the pair is also written there as JSON.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistbound::arith::first_primes;
use twistbound::dirichlet::DirichletChar;
use twistbound::scan::{default_twist_level, plant_twist, random_table, scan, ScanConfig};
use twistbound::FactoredInteger;

pub fn run_example() -> twistbound::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = random_table("synthetic.11", &FactoredInteger::factor(11)?, &first_primes(200), &mut rng);
    let chi = DirichletChar::from_label("3.1")?;
    let g = plant_twist(&f, &chi, &default_twist_level(&f.level, chi.modulus()));
    println!("f at level {}, g = f x {} at level {}", f.level, chi.label(), g.level);

    let result = scan(&f, &g, &ScanConfig::default())?;
    println!("{} candidates, verdict {}", result.candidates_tested, result.verdict);
    for m in &result.matches {
        println!("  {} (conductor {}) max deviation {:.2e} over {} primes", m.label, m.conductor, m.max_deviation, m.primes_tested);
    }

    if let Some(dir) = std::env::args().nth(1) {
        let dir = std::path::Path::new(&dir);
        for t in [&f, &g] {
            let path = dir.join(format!("{}.json", t.label));
            std::fs::write(&path, t.to_json()).expect("writable directory");
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> twistbound::Result<()> {
    run_example()
}
