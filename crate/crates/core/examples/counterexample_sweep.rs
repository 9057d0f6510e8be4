//! F-purity along the family R/(v - w^N): the quotient by v is strongly
//! F-regular, yet every perturbation by a power of w fails to be F-pure.

use fsing::cli::input::parse_input;
use fsing::perturb::{perturb_sweep, Outcome, PerturbationFamily, Perturbations, Property};
use fsing::Budget;

const RING: &str = "
[ring]
p = 3
vars = x, y, z, u, v, w
[ideal.R]
minors2 = x^2 + v^5, y, u; z, x^2, y^2 - u
";

fn main() -> fsing::Result<()> {
    let input = parse_input(RING)?;
    let r = input.ideal("R")?;
    let ring = r.ring().clone();
    let v = fsing::parse_poly("v", &ring)?;
    let family = PerturbationFamily::new(ring.constant(-1), fsing::parse_poly("w", &ring)?, (1..=3).collect())?;

    let report = perturb_sweep(
        &r,
        &v,
        &Perturbations::Family(family),
        &Property::FPure,
        &Budget::default(),
    )?;
    for row in &report.rows {
        let label = row.n.map_or("δ = 0".to_string(), |n| format!("N = {n}"));
        let verdict = match &row.outcome {
            Outcome::Done(v) => v.status.as_str().to_string(),
            Outcome::BudgetExceeded { used, .. } => format!("budget exceeded after {used} steps"),
        };
        println!("{label:<6}  δ = {:<6}  {verdict}", row.delta.render());
    }
    println!("{}", report.stability_summary());
    Ok(())
}
