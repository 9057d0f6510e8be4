//! Compatible F-purity of T along a = (t - u^2, v), a 7-variable ring over F_3.

use std::time::Instant;

use fsing::cli::input::parse_input;
use fsing::frobenius::compatibly_fpure_along;
use fsing::{Budget, Certificate};

fn main() -> fsing::Result<()> {
    let input = parse_input(
        "[ring]
         p = 3
         vars = x, y, z, u, v, w, t
         [ideal.T]
         minors2 = x^2 + v^5, y, u; z, x^2, t - u
         [ideal.a]
         gens = t - u^2, v",
    )?;
    let budget = Budget::default();
    let started = Instant::now();
    let v = compatibly_fpure_along(&input.ideal("T")?, &input.ideal("a")?, &budget)?;
    println!(
        "compatibly F-pure: {} ({:?}, {} reduction steps)",
        v.status.as_str(),
        started.elapsed(),
        budget.used()
    );
    if let Some(Certificate::Witness { element, .. }) = v.certificate {
        let text = element.render();
        let head: String = text.chars().take(120).collect();
        println!(
            "witness ({} terms): {head}{}",
            element.len(),
            if text.len() > 120 { " ..." } else { "" }
        );
    }
    Ok(())
}
