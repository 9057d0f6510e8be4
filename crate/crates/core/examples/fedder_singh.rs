//! Fedder's criterion on Singh's ring A over F_3 and its hyperplane section A/(t).
//!
//! A is not F-pure, while A/(t) is strongly F-regular: F-purity does not
//! deform. Run with `cargo run --release --example fedder_singh`.

use fsing::frobenius::{fedder_fpure, splitting_ideal};
use fsing::polyring::minors2;
use fsing::{parse_poly, Budget, Certificate, Ideal, MonomialOrder, RingSpec};

fn main() -> fsing::Result<()> {
    let budget = Budget::default();
    let r = RingSpec::new(3, &["a", "b", "c", "d", "t"], MonomialOrder::GrevLex)?;
    let m = [["a^2 + t^5", "b", "d"], ["c", "a^2", "b^2 - d"]].map(|row| row.map(|s| parse_poly(s, &r).unwrap()));
    let a = Ideal::new(&r, minors2(&m)?)?;

    let v = fedder_fpure(&a, &budget)?;
    println!("A     : {}", v.status.as_str());
    let unit = splitting_ideal(&a, 1, &budget)?.is_unit(&budget)?;
    println!("        splitting ideal at q = 3 is the unit ideal (so a_1 = 0): {unit}");

    let section = a.with_generators([parse_poly("t", &r)?])?;
    let v = fedder_fpure(&section, &budget)?;
    println!("A/(t) : {}", v.status.as_str());
    if let Some(Certificate::Witness { element, q, .. }) = &v.certificate {
        println!("        witness outside n^[{q}]: {}", element.render());
    }
    Ok(())
}
