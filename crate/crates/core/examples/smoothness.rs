//! The Jacobian criterion on the affine charts of a projective family over F_3.

use fsing::groebner::is_smooth;
use fsing::{parse_poly, Budget, Certificate, Ideal, MonomialOrder, RingSpec};

fn chart(vars: &[&str], gens: &[&str]) -> fsing::Result<Ideal> {
    let r = RingSpec::new(3, vars, MonomialOrder::GrevLex)?;
    let gens = gens
        .iter()
        .map(|g| parse_poly(g, &r))
        .collect::<fsing::Result<Vec<_>>>()?;
    Ideal::new(&r, gens)
}

fn main() -> fsing::Result<()> {
    let charts = [
        ("x", chart(&["S", "Z", "U", "W"], &["U*Z^2 + U*Z^3 - 1"])?),
        ("y", chart(&["S", "X", "Z", "U", "W"], &["Z - X^4", "1 - U - X^2*U"])?),
        (
            "z",
            chart(&["S", "X", "Y", "U", "W"], &["Y - X^4", "U + X^2*U - X^10"])?,
        ),
        (
            "u",
            chart(&["S", "X", "Y", "Z", "W"], &["Z + X^2 - X^2*Y^2", "Y + X^2 - Y^3"])?,
        ),
        ("node", chart(&["x", "y"], &["x*y"])?),
    ];
    for (name, i) in &charts {
        let v = is_smooth(i, None, 100_000, &Budget::default())?;
        let detail = match &v.certificate {
            Some(Certificate::Smooth { codim, minors }) => {
                format!("codim {codim}, {minors} minors generate the unit ideal")
            }
            Some(Certificate::Singular {
                at_origin,
                singular_locus,
                ..
            }) => {
                let locus: Vec<String> = singular_locus.iter().map(|g| g.render()).collect();
                format!("singular locus ({}), origin singular: {at_origin}", locus.join(", "))
            }
            _ => String::new(),
        };
        println!("{name:<5} {:<6} {detail}", v.status.as_str());
    }
    Ok(())
}
