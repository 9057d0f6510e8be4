//! The F-signature is not m-adically continuous: on the same family, a_1/q^d
//! drops from 1/9 at δ = 0 to 0 at δ = -w^N.

use fsing::cli::input::parse_input;
use fsing::perturb::{continuity_table, Invariant, Outcome, PerturbationFamily, Perturbations};
use fsing::Budget;

fn main() -> fsing::Result<()> {
    let input =
        parse_input("[ring]\np = 3\nvars = x, y, z, u, v, w\n[ideal.R]\nminors2 = x^2 + v^5, y, u; z, x^2, y^2 - u\n")?;
    let r = input.ideal("R")?;
    let ring = r.ring().clone();
    let family = PerturbationFamily::new(ring.constant(-1), ring.var(5), vec![1, 2])?;
    let table = continuity_table(
        &r,
        &ring.var(4),
        &Perturbations::Family(family),
        1,
        &Invariant::Fsig,
        &Budget::default(),
    )?;

    println!("{:<6}  {:<8}  {:<8}  |Δ|", "row", "δ", "a_1/q^d");
    for row in &table.rows {
        if let Outcome::Done(c) = &row.outcome {
            let label = row.n.map_or("base".into(), |n| format!("N = {n}"));
            println!(
                "{label:<6}  {:<8}  {:<8}  {}",
                row.delta.render(),
                c.value.to_string(),
                c.delta_from_base
            );
        }
    }
    Ok(())
}
