//! F-rational signature estimates: minima of ℓ differences over socle
//! elements (rsig) and socle subspaces (csig) of R/(x)^[q].

use fsing::numerics::{csig_estimate, rsig_estimate};
use fsing::{parse_poly, Budget, Ideal, MonomialOrder, RingSpec};

fn main() -> fsing::Result<()> {
    let budget = Budget::default();
    let cases = [
        (2, vec!["x", "y"], vec!["x*y"], vec!["x - y"]),
        (3, vec!["x", "y"], vec!["x*y"], vec!["x + y"]),
        (2, vec!["x", "y", "z"], vec!["x*y", "x*z", "y*z"], vec!["x + y + z"]),
        (3, vec!["x", "y"], vec![], vec!["x", "y"]),
    ];
    for (p, vars, gens, sop) in cases {
        let r = RingSpec::new(p, &vars, MonomialOrder::GrevLex)?;
        let i = Ideal::new(
            &r,
            gens.iter()
                .map(|g| parse_poly(g, &r))
                .collect::<fsing::Result<Vec<_>>>()?,
        )?;
        let sop = sop
            .iter()
            .map(|s| parse_poly(s, &r))
            .collect::<fsing::Result<Vec<_>>>()?;
        for e in 1..=2 {
            let rs = rsig_estimate(&i, &sop, e, 10_000, 7, None, &budget)?;
            let cs = csig_estimate(&i, &sop, e, 10_000, 7, None, &budget)?;
            println!(
                "p={p} ({}) e={e}: socle dim {}, rsig {} via {}, csig {}",
                gens.join(", "),
                rs.socle_dim,
                rs.value,
                rs.minimizer.iter().map(|m| m.render()).collect::<Vec<_>>().join(", "),
                cs.value
            );
        }
    }
    Ok(())
}
