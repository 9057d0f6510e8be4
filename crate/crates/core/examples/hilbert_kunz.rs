//! Hilbert-Kunz lengths ℓ(R/J^[q]) and their normalizations, with the node
//! xy = 0 against its closed form 2q - 1.

use fsing::numerics::{hk_estimate, sdim_rf_estimate};
use fsing::{parse_poly, Budget, Ideal, MonomialOrder, RingSpec};

fn main() -> fsing::Result<()> {
    let budget = Budget::default();
    for p in [2, 3] {
        let r = RingSpec::new(p, &["x", "y"], MonomialOrder::GrevLex)?;
        let node = Ideal::new(&r, [parse_poly("x*y", &r)?])?;
        for e in 1..=3 {
            let est = hk_estimate(&node, &Ideal::maximal(&r), e, None, &budget)?;
            println!(
                "node p={p} q={:<2}  ℓ = {:<3} (2q-1 = {:<3})  ℓ/q = {}",
                est.q,
                est.length,
                2 * est.q - 1,
                est.value
            );
        }
    }

    let r = RingSpec::new(3, &["x", "y", "u", "v"], MonomialOrder::GrevLex)?;
    let quadric = Ideal::new(&r, [parse_poly("x*v - y*u", &r)?])?;
    for e in 1..=2 {
        let est = hk_estimate(&quadric, &Ideal::maximal(&r), e, None, &budget)?;
        let diff = est.difference.as_ref().map_or("-".into(), |d| d.to_string());
        println!(
            "quadric q={:<2}  ℓ = {:<5} ℓ/q^3 = {:<8} step difference {diff}",
            est.q, est.length, est.value
        );
    }
    let s = sdim_rf_estimate(&quadric, 1, 2, &budget)?;
    println!(
        "quadric a_1 = {}, a_2 = {}, splitting dimension {}, ratio {}",
        s.a1, s.a2, s.sdim, s.rf
    );
    Ok(())
}
