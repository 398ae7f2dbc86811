//! Conic bundle classes and their singular fibres.

use cox_delpezzo::{rulings, Result};

fn main() -> Result<()> {
    for r in 3..=7 {
        let rl = rulings(r)?;
        let first = &rl[0];
        println!("X_{r}: {} rulings, each with {} singular fibres", rl.len(), first.fibers.len());
        for (a, b) in &first.fibers {
            println!("    {} = {a} + {b}", first.class);
        }
    }
    Ok(())
}
