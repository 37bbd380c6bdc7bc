//! The analytic conductor of a twisting character against those of the pair.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistbound::arch::{theorem_b_check, ArchChar, ArchRep, GlobalChar, GlobalRep, Place, RealSummand, Sign};
use twistbound::sample::global_twist;
use twistbound::FactoredInteger;

pub fn run_example() -> twistbound::Result<()> {
    // the product construction at 3 and 5, with trivial data at infinity
    let trivial = ArchRep::Real(vec![RealSummand::one(Sign::Plus, Complex64::new(0.0, 0.0)); 2]);
    let level = FactoredInteger::factor(15)?;
    let chi = GlobalChar { conductor: level.clone(), arch: vec![ArchChar::trivial(Place::Real)] };
    let pi = GlobalRep { rank: 2, conductor: level, arch: vec![trivial] };
    let c = theorem_b_check(&chi, &pi, &pi.clone(), 1)?;
    println!("Q = 15 over Q: C(chi) = {} <= 3 (C1 C2)^(1/2) = {}", c.lhs, c.rhs);

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let t = global_twist(&mut rng, 4, 4);
        let c = theorem_b_check(&t.chi, &t.pi1, &t.pi2, t.degree)?;
        assert!(c.holds);
        worst = worst.max(c.lhs / c.rhs);
    }
    println!("1000 random twists over fields of degree <= 4: largest C(chi) / bound = {worst:.4}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> twistbound::Result<()> {
    run_example()
}
