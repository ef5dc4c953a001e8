//! The coefficient ideal of a pattern and its reduced Gröbner bases.
//!
//! A matrix respecting the pattern is nilpotent exactly when all the
//! coefficients `F_1, ..., F_n` of its characteristic polynomial vanish,
//! so the ideal those coefficients generate is the whole story; Gröbner
//! bases make membership in that ideal decidable.
//!
//! Run with: `cargo run --example groebner_basics -p nilpat`

use nilpat::charpoly::pattern_ideal;
use nilpat::field::Field;
use nilpat::groebner::{buchberger, member, normal_form};
use nilpat::pattern::Pattern;
use nilpat::poly::{parse_polynomial, MonomialOrder};

fn main() -> Result<(), nilpat::Error> {
    let pattern = Pattern::parse("**0\n0**\n*0*")?;
    let pi = pattern_ideal(&pattern, Field::rationals())?;

    println!("coefficients of det(xI - M) for the pattern:");
    for (i, f) in pi.coefficients.iter().enumerate() {
        println!("  F_{} = {f}", i + 1);
    }

    // The reduced basis is a canonical generating set; under the
    // lexicographic order it is also an elimination-ready one.
    let gb = buchberger(&pi.ideal, MonomialOrder::Lex)?;
    assert!(gb.reduced);
    println!("\nreduced lex basis ({} elements):", gb.basis.len());
    for g in &gb.basis {
        println!("  {g}");
    }

    // Membership via normal forms: F_1^2 reduces to zero (it is in the
    // ideal), while the product of all variables does not.
    let f1_sq = pi.coefficients[0].mul(&pi.coefficients[0])?;
    assert!(normal_form(&f1_sq, &gb.basis, gb.order).is_zero());
    assert!(member(&f1_sq, &pi.ideal)?);

    let m = pi.matrix.all_vars_product();
    let rem = normal_form(&m, &gb.basis, gb.order);
    assert!(!rem.is_zero());
    println!("\nnormal form of the variable product: {rem}");

    // The grammar round-trips: the same basis can be re-entered as text.
    let reparsed = parse_polynomial(&gb.basis[0].to_string(), pi.matrix.ring(), pi.matrix.field())?;
    assert_eq!(reparsed, gb.basis[0]);
    Ok(())
}
