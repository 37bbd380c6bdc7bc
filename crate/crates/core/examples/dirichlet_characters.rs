//! Unit groups, character tables and conductors.

use std::sync::Arc;

use twistbound::dirichlet::{enumerate_characters, primitive_characters, DirichletChar, UnitGroup};

pub fn run_example() -> twistbound::Result<()> {
    let group = Arc::new(UnitGroup::from_u64(40)?);
    let gens: Vec<String> = group
        .blocks()
        .iter()
        .map(|b| format!("{} of order {}", b.generator, b.order))
        .collect();
    println!("(Z/40)^x has order {} with generators {}", group.order(), gens.join(", "));

    for chi in enumerate_characters(&group).iter().take(6) {
        let values: Vec<String> = [3, 7, 9, 11, 13].iter().map(|&m| chi.evaluate(m).to_string()).collect();
        println!(
            "  {:<5} order {} parity {:+} conductor {:>2}  values at 3,7,9,11,13: {}",
            chi.label(),
            chi.order(),
            chi.parity(),
            chi.conductor().to_string(),
            values.join(" ")
        );
    }
    println!("{} of the {} characters mod 40 are primitive", primitive_characters(&group).len(), group.order());

    let chi = DirichletChar::from_label("5.2")?;
    let lifted = chi.induce(&group)?;
    println!("5.2 induced to 40 is {}; its primitive form is {}", lifted.label(), lifted.primitive().label());
    let product = lifted.product(&DirichletChar::from_label("8.3")?.induce(&group)?)?;
    println!("times 8.3 gives {} of conductor {}", product.label(), product.conductor());
    Ok(())
}

#[allow(dead_code)]
fn main() -> twistbound::Result<()> {
    run_example()
}
