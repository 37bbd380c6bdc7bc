//! Conductor exponents of twists at a single prime.

use twistbound::local::{
    claim32_bound, twist_conductor_char, twist_conductor_esi, twist_conductor_rep,
    twist_conductor_via_levels, EsiComponent, GenericLocalRep,
};

pub fn run_example() -> twistbound::Result<()> {
    println!("characters: A(chi1 chi2) from A(chi1), A(chi2)");
    for (a1, a2) in [(2, 3), (3, 3), (0, 0)] {
        println!("  {a1}, {a2} -> {}", twist_conductor_char(a1, a2));
    }

    println!("dimension-n piece of conductor A twisted by exponent a");
    for (n, big_a, a) in [(2, 3, 2), (2, 5, 2), (2, 4, 2), (3, 2, 1)] {
        let comp = EsiComponent::new(n, big_a)?;
        let via = twist_conductor_via_levels(comp, a)
            .map(|v| v.to_string())
            .unwrap_or_else(|| "-".into());
        println!(
            "  n={n} A={big_a} a={a}: {}   (division algebra side: {via})",
            twist_conductor_esi(comp, a)
        );
    }

    let pi = GenericLocalRep::new(
        3,
        vec![EsiComponent::new(2, 4)?, EsiComponent::character(1)],
        false,
    )?;
    println!("sum of pieces, A(pi) = {}: twist by a=2 -> {}", pi.conductor(), twist_conductor_rep(&pi, 2));

    println!("GL(2) principal series with trivial central character");
    for a1 in 0..=3 {
        let ps = GenericLocalRep::principal_series(&[a1, a1], true)?;
        let row: Vec<String> = (0..=4)
            .map(|a| claim32_bound(&ps, a).map(|m| m.to_string()))
            .collect::<twistbound::Result<_>>()?;
        println!("  a1={a1}: max(A(pi1), A(pi2)) >= {} for a = 0..4", row.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> twistbound::Result<()> {
    run_example()
}
