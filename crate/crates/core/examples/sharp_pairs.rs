//! Sharp F-purity of pairs (S, x^t) on the regular plane over F_3. For t ≤ 1
//! the search succeeds at e = 1; for t = 2 every level is contained and the
//! bounded search stays undetermined.

use fsing::frobenius::sharply_fpure_pair;
use fsing::{Budget, Ideal, MonomialOrder, RingSpec};
use num_rational::Rational64;

fn main() -> fsing::Result<()> {
    let r = RingSpec::new(3, &["x", "y"], MonomialOrder::GrevLex)?;
    let s = Ideal::zero(&r);
    let x = r.var(0);
    for t in [
        Rational64::from_integer(0),
        Rational64::new(1, 2),
        Rational64::from_integer(1),
        Rational64::from_integer(2),
    ] {
        let v = sharply_fpure_pair(&s, &x, t, 3, &Budget::default())?;
        let levels: Vec<String> = v
            .log
            .iter()
            .map(|r| format!("q={} {}", r.q, if r.contained { "contained" } else { "escapes" }))
            .collect();
        println!("t = {t:<3}  {:<12}  {}", v.status.as_str(), levels.join(", "));
    }
    Ok(())
}
