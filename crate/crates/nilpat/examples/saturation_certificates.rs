//! Colon ideals versus saturation: proving a pattern is never nilpotent.
//!
//! A realization must keep every starred entry nonzero, so refuting
//! potential nilpotence means showing the coefficient ideal `I` has no
//! zero with all coordinates nonzero — equivalently, that the saturation
//! `I : (m)^∞` by the product `m` of all variables is the unit ideal.
//! The one-step colon `I : (m)` can be proper even when the saturation
//! is everything, which is exactly what happens here.
//!
//! Run with: `cargo run --example saturation_certificates -p nilpat`

use nilpat::analysis::{decide_pn, saturation_certificate, Certificate, Status};
use nilpat::charpoly::pattern_ideal;
use nilpat::field::Field;
use nilpat::groebner::{buchberger, colon_principal, contains_one, saturate};
use nilpat::pattern::Pattern;
use nilpat::poly::MonomialOrder;

fn main() -> Result<(), nilpat::Error> {
    // A tridiagonal digraph with loops at the two corners, over Z_2.
    let pattern = Pattern::parse("**0\n*0*\n0**")?;
    let field = Field::prime(2)?;
    let pi = pattern_ideal(&pattern, field)?;
    let m = pi.matrix.all_vars_product();

    // One colon step is still a proper ideal...
    let colon = colon_principal(&pi.ideal, &m)?;
    assert!(!contains_one(&colon)?);
    println!("reduced basis of I : (m) over Z_2:");
    for g in &buchberger(&colon, MonomialOrder::Lex)?.basis {
        println!("  {g}");
    }

    // ...but the saturation collapses to the unit ideal: every zero of I
    // has some starred coordinate equal to zero, over Z_2 and over every
    // extension of it.
    let saturation = saturate(&pi.ideal, &m)?;
    assert!(contains_one(&saturation)?);
    println!("\nI : (m)^∞ = (1): no nilpotent realization exists");

    // The analysis layer packages the same fact as a certificate...
    let cert = saturation_certificate(&pattern, field)?.expect("unit saturation found");
    match &cert {
        Certificate::SaturationUnit { over_any_extension, unit_in_colon, .. } => {
            assert!(over_any_extension);
            println!(
                "certificate: saturation_unit (variable product already in I: {})",
                match unit_in_colon {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "not probed",
                }
            );
        }
        other => panic!("unexpected certificate {other:?}"),
    }

    // ...but the full pipeline never gets that far on this pattern: a
    // cheaper graph filter (two loops and two 2-cycles force a nonzero
    // coefficient over Z_2) refutes it first. Certificates come at
    // different prices; the pipeline buys the cheapest sufficient one.
    let verdict = decide_pn(&pattern, 2)?;
    assert_eq!(verdict.status, Status::NotPotentiallyNilpotent);
    assert!(matches!(
        verdict.certificate,
        Some(Certificate::Z2TwoLoopsTwo2Cycles { .. })
    ));
    println!("pipeline certificate: {:?}", verdict.certificate.unwrap());
    Ok(())
}
