//! Prints hive, tableau and fiber counts for every dominant triple at n = 3 with entries in [-1, 2].

use hive_forge::counting::{count_all, dominant_grid};

fn main() -> hive_forge::Result<()> {
    for w in dominant_grid(3, -1, 2) {
        let r = count_all(&w)?;
        if r.lr_oracle > 0 {
            println!(
                "{w}  hives {} tableaux {} fiber {}",
                r.hive_count, r.lr_oracle, r.fiber_count
            );
        }
    }
    Ok(())
}
