//! Cross-checks between independent routes to the same answer, over the
//! fixture corpus and a seeded batch of random hypersurfaces.

mod common;

use common::{checks, fixture};
use fsing::frobenius::{fedder_fpure, sfr_certificate, verify_witness};
use fsing::groebner::{ideal_equal, is_smooth};
use fsing::{Budget, Certificate};

fn assert_clean(bad: &[String]) {
    assert!(bad.is_empty(), "{} violations:\n{}", bad.len(), bad.join("\n"));
}

#[test]
fn fedder_agrees_with_the_first_free_rank() {
    let (bad, seen) = checks::fedder_vs_free_rank();
    assert_clean(&bad);
    assert!(seen[0] >= 5 && seen[1] >= 5, "{seen:?}");
}

#[test]
fn sharp_purity_at_t_zero_is_fedder() {
    assert_clean(&checks::sharp_zero_vs_fedder());
}

#[test]
fn relative_signature_never_exceeds_the_signature() {
    assert_clean(&checks::csig_below_rsig());
}

#[test]
fn baseline_sweep_rows_equal_direct_runs() {
    assert_clean(&checks::baseline_rows_vs_direct());
}

#[test]
fn true_certificates_reverify() {
    let (bad, count) = checks::certificates_reverify();
    assert_clean(&bad);
    assert!(count >= 20, "{count}");
}

#[test]
fn strong_regularity_of_the_singh_section_needs_three_levels() {
    let b = Budget::default();
    let f = fixture("singh_section.fsg");
    let i = f.ideal("At").unwrap();
    let c = f.elem("a").unwrap();
    let v = sfr_certificate(&i, &c, 4, true, &b).unwrap();
    assert!(v.is_true());
    assert_eq!(v.witness_level(), Some(3));
    assert_eq!(
        v.log.iter().map(|r| r.contained).collect::<Vec<_>>(),
        [true, true, false]
    );
    assert!(verify_witness(&[&i], v.certificate.as_ref().unwrap(), &b).unwrap());
}

#[test]
fn affine_charts_of_the_family() {
    let b = Budget::default();
    for (file, name) in [
        ("chart_x_hypersurface.fsg", "H"),
        ("chart_x.fsg", "Reduced"),
        ("chart_x.fsg", "Minors"),
        ("chart_y.fsg", "Sy"),
        ("chart_z.fsg", "Sz"),
        ("chart_u.fsg", "Su"),
    ] {
        let i = fixture(file).ideal(name).unwrap();
        let v = is_smooth(&i, None, 100_000, &b).unwrap();
        assert!(v.is_true(), "{file}:{name} {:?}", v.certificate);
    }
    let f = fixture("chart_x.fsg");
    assert!(ideal_equal(&f.ideal("Minors").unwrap(), &f.ideal("Reduced").unwrap(), &b).unwrap());

    // The last chart is a cone: singular at the origin, yet F-pure.
    let sw = fixture("chart_w.fsg").ideal("Sw").unwrap();
    let v = is_smooth(&sw, None, 100_000, &b).unwrap();
    assert!(v.is_false());
    assert!(matches!(
        v.certificate,
        Some(Certificate::Singular { at_origin: true, .. })
    ));
    assert!(fedder_fpure(&sw, &b).unwrap().is_true());
}
