//! Gamma shifts and conductors at real and complex places.

use num_complex::Complex64;
use twistbound::arch::{
    char_cond, cond_rep, gamma_shift, lemma_bound_check, twist_arch, ArchChar, ArchRep, ComplexParam,
    RealSummand, Sign,
};

pub fn run_example() -> twistbound::Result<()> {
    let c = |re, im| Complex64::new(re, im);

    let sigma = ArchRep::Real(vec![
        RealSummand::two(11, c(0.0, 3.5))?,
        RealSummand::one(Sign::Minus, c(0.1, -2.0)),
    ]);
    for (j, s) in sigma.summands().iter().enumerate() {
        let g = gamma_shift(s);
        println!("summand {j}: Gamma_{:?}(s + {}) conductor {:.4}", g.kind, g.shift, g.conductor());
    }
    println!("C(sigma) = {:.4}", cond_rep(&sigma));

    let chi = ArchChar::Real { eps: Sign::Minus, nu: c(0.0, 7.0) };
    let twisted = twist_arch(&sigma, &chi)?;
    let check = lemma_bound_check(&sigma, &chi, false)?;
    println!(
        "twist by {}: C(sigma x chi) = {:.4}, C(chi) = {:.4} <= {} * (..)^(1/3) = {:.4}, ratio {:.4}",
        serde_json::to_string(&chi).expect("serializable"),
        cond_rep(&twisted),
        char_cond(&chi),
        check.constant,
        check.bound,
        check.ratio
    );

    let sigma = ArchRep::Complex(vec![ComplexParam::new(0, c(0.0, 0.0))]);
    let chi = ArchChar::Complex(ComplexParam::new(1, c(0.0, 0.0)));
    let check = lemma_bound_check(&sigma, &chi, false)?;
    println!("complex place: C(chi) = {} against {} (ratio {:.4})", check.char_conductor, check.bound, check.ratio);

    // equality case; the parameter nu = -1 is outside the unitary strip
    let sigma = ArchRep::Real(vec![RealSummand::one(Sign::Minus, c(-1.0, 0.0))]);
    let chi = ArchChar::Real { eps: Sign::Minus, nu: c(1.0, 0.0) };
    assert!(lemma_bound_check(&sigma, &chi, false).is_err());
    let check = lemma_bound_check(&sigma, &chi, true)?;
    println!("equality witness: ratio {}", check.ratio);
    Ok(())
}

#[allow(dead_code)]
fn main() -> twistbound::Result<()> {
    run_example()
}
