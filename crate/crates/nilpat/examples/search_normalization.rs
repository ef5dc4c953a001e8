//! Diagonal-similarity normalization of the brute-force search.
//!
//! Conjugating by an invertible diagonal matrix preserves the pattern,
//! nilpotence, and which entries are nonzero, so the search may fix one
//! off-diagonal variable per spanning-forest edge of the star graph to 1
//! and lose nothing.  That shrinks the search space by a factor of
//! `(p-1)^(fixed vars)` while staying exhaustive up to similarity: the
//! normalized search returns `None` only when the full one would.
//!
//! Run with: `cargo run --example search_normalization -p nilpat`

use nilpat::analysis::{brute_force_search, brute_force_search_full};
use nilpat::charpoly::check_nilpotent;
use nilpat::field::Field;
use nilpat::pattern::Pattern;
use nilpat::Error;

fn main() -> Result<(), nilpat::Error> {
    let pattern = Pattern::parse("***\n***\n***")?;
    let p = 5u64;
    let field = Field::prime(p)?;

    // The full pattern has 9 variables; the normalization fixes 2 of
    // them (one per spanning-tree edge on 3 vertices), so the spaces are
    // 4^7 = 16384 vs 4^9 = 262144 assignments here.
    let normalized = brute_force_search(&pattern, p, u128::MAX)?.expect("realizable over Z_5");
    let full = brute_force_search_full(&pattern, p, u128::MAX)?.expect("realizable over Z_5");
    assert!(check_nilpotent(&pattern, &normalized, field)?);
    assert!(check_nilpotent(&pattern, &full, field)?);

    println!("normalized search found: {normalized:?}");
    println!("full search found:       {full:?}");
    let ones = normalized.values().filter(|v| **v == nilpat::Scalar::Mod(1)).count();
    println!("normalized witness has {ones} entries equal to 1");

    // The budget is enforced against the whole space up front, so an
    // impossible cap fails fast instead of scanning forever.
    match brute_force_search_full(&pattern, 11, 1_000) {
        Err(Error::SearchBudgetExceeded { space, budget }) => {
            println!("full search under a cap of {budget}: refused (space = {space})");
        }
        other => panic!("expected a budget refusal, got {other:?}"),
    }

    // The normalized search still proves *non*-existence: over Z_2 the
    // all-ones matrix is the only candidate and it is not nilpotent.
    assert_eq!(brute_force_search(&pattern, 2, u128::MAX)?, None);
    println!("over Z_2: exhausted the (trivial) search space, no realization");
    Ok(())
}
