//! The n-cycle-with-loops family: a verdict governed by roots of unity.
//!
//! Put a loop at every vertex of a directed n-cycle.  Its characteristic
//! coefficients force the loop values to be the n distinct n-th roots of
//! unity (up to the cycle product), so the pattern is potentially
//! nilpotent over `Z_p` exactly when `x^n - 1` splits into linear factors
//! there — and in that case a closed-form realization exists.
//!
//! Run with: `cargo run --example cycle_family -p nilpat`

use nilpat::analysis::{cycle_family_realization, decide_pn, roots_of_unity_split, Status};
use nilpat::charpoly::check_nilpotent_matrix;
use nilpat::field::Field;
use nilpat::pattern::cycle_with_loops;

fn main() -> Result<(), nilpat::Error> {
    println!("n \\ p |  2    3    5    7   11   13");
    println!("------+-----------------------------");
    for n in 3..=6usize {
        let pattern = cycle_with_loops(n)?;
        let mut cells = Vec::new();
        for p in [2u64, 3, 5, 7, 11, 13] {
            let split = roots_of_unity_split(n as u64, p)?;
            let verdict = decide_pn(&pattern, p)?;
            // The verdict tracks the splitting criterion exactly.
            assert_eq!(verdict.status == Status::PotentiallyNilpotent, split, "n={n} p={p}");

            // The closed-form witness exists exactly in the split case and
            // really is nilpotent.
            let witness = cycle_family_realization(n, p)?;
            assert_eq!(witness.is_some(), split, "witness at n={n} p={p}");
            if let Some(rows) = &witness {
                assert!(check_nilpotent_matrix(&pattern, rows, Field::prime(p)?)?);
            }
            cells.push(if split { " PN " } else { " no " });
        }
        println!("  n={n} | {}", cells.join(" "));
    }

    // One witness in full: n = 3 over Z_7, where x^3 - 1 has the roots
    // 1, 2, 4.
    let rows = cycle_family_realization(3, 7)?.expect("splits at p = 7");
    println!("\nclosed-form realization for n = 3 over Z_7:");
    for row in &rows {
        println!("  {row:?}");
    }
    Ok(())
}
