//! Classify every irreducible pattern of orders 2 and 3 over a set of
//! primes, grouped by how the verdict depends on the prime.
//!
//! Order 2 has 3 irreducible classes up to relabeling and order 3 has 30;
//! each class lands in one of four prime-dependence groups (or in none,
//! when it is never potentially nilpotent).
//!
//! Run with: `cargo run --release --example classify_small_orders -p nilpat`

use std::collections::BTreeMap;

use nilpat::analysis::Budget;
use nilpat::cli::{classification_table, render_table_text};

fn main() -> Result<(), nilpat::Error> {
    let budget = Budget::default();

    let order2 = classification_table(2, &[2, 3, 5, 7, 13], &budget)?;
    assert_eq!(order2.classes.len(), 3);
    print!("{}", render_table_text(&order2));

    let order3 = classification_table(3, &[2, 3, 5, 7, 13], &budget)?;
    assert_eq!(order3.classes.len(), 30);
    print!("\n{}", render_table_text(&order3));

    // Group sizes: 1 = PN at every probe prime, 2 = at all but 2,
    // 3 = at all but 2 and 3, 4 = exactly where x^3 - 1 splits,
    // none = never.
    let mut sizes: BTreeMap<Option<u8>, usize> = BTreeMap::new();
    for row in &order3.classes {
        *sizes.entry(row.group).or_default() += 1;
    }
    println!("\norder-3 group sizes:");
    for (group, count) in &sizes {
        match group {
            Some(g) => println!("  group {g}: {count}"),
            None => println!("  never potentially nilpotent: {count}"),
        }
    }
    assert_eq!(sizes.get(&Some(1)), Some(&4));
    assert_eq!(sizes.get(&Some(2)), Some(&6));
    assert_eq!(sizes.get(&Some(3)), Some(&3));
    assert_eq!(sizes.get(&Some(4)), Some(&1));
    assert_eq!(sizes.get(&None), Some(&16));
    Ok(())
}
