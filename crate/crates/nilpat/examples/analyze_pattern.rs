//! End-to-end analysis of one pattern over a prime field.
//!
//! The same digraph — three loops sitting on a directed 3-cycle — is
//! potentially nilpotent over `Z_7` but not over `Z_5`, and the decision
//! pipeline hands back a checkable certificate either way.
//!
//! Run with: `cargo run --example analyze_pattern -p nilpat`

use nilpat::analysis::{decide_pn, Status};
use nilpat::charpoly::check_nilpotent_matrix;
use nilpat::cli::{analyze_report, render_report_text};
use nilpat::analysis::Budget;
use nilpat::field::Field;
use nilpat::pattern::Pattern;

fn main() -> Result<(), nilpat::Error> {
    let pattern = Pattern::parse("**0\n0**\n*0*")?;

    // Over Z_7 the pattern has a nilpotent realization; the verdict
    // carries one, and we can re-check it independently.
    let verdict = decide_pn(&pattern, 7)?;
    assert_eq!(verdict.status, Status::PotentiallyNilpotent);
    let matrix = verdict.realization().expect("positive verdicts carry a witness");
    assert!(check_nilpotent_matrix(&pattern, matrix, Field::prime(7)?)?);
    println!("over Z_7: potentially nilpotent, witness rows {matrix:?}");

    // Over Z_5 no realization exists: x^3 - 1 does not split into linear
    // factors, and the certificate names that obstruction.
    let verdict = decide_pn(&pattern, 5)?;
    assert_eq!(verdict.status, Status::NotPotentiallyNilpotent);
    println!("over Z_5: {:?}", verdict.certificate.as_ref().unwrap());

    // The report layer renders the same analysis the way the `nilpat`
    // binary prints it.
    let report = analyze_report(&pattern, Field::prime(5)?, &Budget::default())?;
    println!("\n--- rendered report (Z_5) ---");
    print!("{}", render_report_text(&report));
    Ok(())
}
