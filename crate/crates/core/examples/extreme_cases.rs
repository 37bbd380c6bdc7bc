//! The two constructions where the conductor bound is attained.

use std::collections::BTreeMap;

use twistbound::global::{extreme_case_lcm, extreme_case_product};

pub fn run_example() -> twistbound::Result<()> {
    let cert = extreme_case_product(3, 5)?;
    println!("principal series from characters at 3 and 5:");
    for place in &cert.places {
        println!(
            "  p={}: A(pi1)={} A(chi)={} twisted pieces {:?} (allowed {})",
            place.prime,
            place.pi1.conductor(),
            place.chi_exponent,
            place.twisted_components,
            place.pi2_range
        );
    }
    println!("  N1={} N2={} Q={}: Q^2 = N1 N2", cert.n1, cert.n2, cert.q);
    if let Some(w) = &cert.witness {
        println!("  realized by chi1={} chi2={} chi={}", w.chi1, w.chi2, w.chi);
    }

    let local = BTreeMap::from([(2, 6), (3, 3), (7, 0)]);
    let cert = extreme_case_lcm(&local, 3)?;
    println!("discrete series of rank 3:");
    for place in &cert.places {
        println!(
            "  p={}: A(pi1)={} A(chi)={} A(pi2) in {}",
            place.prime, place.pi1_exponent, place.chi_exponent, place.twisted_range
        );
    }
    println!("  Q={}: Q^3 = lcm(N1, N2) = {}", cert.q, cert.n1.lcm(&cert.n2_upper));
    Ok(())
}

#[allow(dead_code)]
fn main() -> twistbound::Result<()> {
    run_example()
}
