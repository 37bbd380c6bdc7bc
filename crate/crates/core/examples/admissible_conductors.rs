//! Which conductors can a twisting character have, given two levels?

use twistbound::global::{admissible_moduli, max_admissible, BoundMode};
use twistbound::FactoredInteger;

pub fn run_example() -> twistbound::Result<()> {
    let cases = [
        (15, 15, 2, BoundMode::Product),
        (15, 15, 2, BoundMode::Lcm),
        (6, 10, 2, BoundMode::Lcm),
        (72, 8, 3, BoundMode::Product),
        (11 * 11 * 7, 11 * 11, 2, BoundMode::Gl2TrivialCentral),
    ];
    for (a, b, n, mode) in cases {
        let n1 = FactoredInteger::factor(a)?;
        let n2 = FactoredInteger::factor(b)?;
        let all: Vec<String> = admissible_moduli(&n1, &n2, n, mode)?
            .iter()
            .map(|q| q.to_string())
            .collect();
        println!(
            "N1={n1} N2={n2} n={n} mode={mode}: max Q = {}, all: {}",
            max_admissible(&n1, &n2, n, mode)?,
            all.join(" ")
        );
    }

    // squarefree levels leave no room for a ramified twist
    let n1 = FactoredInteger::factor(2 * 3 * 5 * 7 * 11 * 13)?;
    let n2 = FactoredInteger::factor(3 * 7 * 17 * 19)?;
    let only = admissible_moduli(&n1, &n2, 2, BoundMode::Lcm)?;
    assert_eq!(only, vec![FactoredInteger::one()]);
    println!("squarefree N1={n1}, N2={n2}: only Q = 1");
    Ok(())
}

#[allow(dead_code)]
fn main() -> twistbound::Result<()> {
    run_example()
}
