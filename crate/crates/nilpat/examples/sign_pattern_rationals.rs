//! A sign pattern refuted over every field of characteristic zero.
//!
//! Over the rationals the analysis is refutation-only: a unit saturation
//! rules potential nilpotence out over the rationals, the reals, and
//! every other extension, while the absence of a certificate proves
//! nothing — patterns that *are* potentially nilpotent over the reals
//! come back "unknown", never "potentially nilpotent".
//!
//! Run with: `cargo run --example sign_pattern_rationals -p nilpat`

use nilpat::analysis::{analyze_rationals, decide_pn, Certificate, Status};
use nilpat::pattern::Pattern;

fn main() -> Result<(), nilpat::Error> {
    let signed = Pattern::parse("---00\n+++00\n000--\n0-00-\n-0000")?;
    assert!(signed.is_signed());
    println!("signed pattern:\n{}", signed.render());

    let verdict = analyze_rationals(&signed)?;
    assert_eq!(verdict.status, Status::NotPotentiallyNilpotent);
    let cert = verdict.certificate.as_ref().unwrap();
    assert!(matches!(
        cert,
        Certificate::SaturationUnit { over_any_extension: true, .. }
    ));
    println!("over the rationals: {cert:?}");

    // This particular refutation never uses the signs: erasing them
    // leaves the saturation unit, so the underlying digraph supports no
    // nilpotent matrix over any field of characteristic zero either.
    let unsigned = Pattern::new(signed.order(), signed.stars());
    let verdict = analyze_rationals(&unsigned)?;
    assert_eq!(verdict.status, Status::NotPotentiallyNilpotent);
    println!("\nsigns erased: still refuted");

    // Contrast: a corner-loop tridiagonal pattern admits real nilpotent
    // realizations, so no refutation can exist; the refutation-only
    // rational analysis reports "unknown" rather than guessing.
    let tri = Pattern::parse("**0\n*0*\n0**")?;
    let verdict = analyze_rationals(&tri)?;
    assert_eq!(verdict.status, Status::Unknown);
    assert!(verdict.certificate.is_none());
    println!("tridiagonal pattern over the rationals: unknown (no certificate)");

    // The same pattern over prime fields gets definite answers both
    // ways: a witness at p = 5, a refutation at p = 2.
    assert_eq!(decide_pn(&tri, 5)?.status, Status::PotentiallyNilpotent);
    assert_eq!(decide_pn(&tri, 2)?.status, Status::NotPotentiallyNilpotent);
    println!("the same pattern over Z_5 / Z_2: potentially nilpotent / refuted");
    Ok(())
}
