//! Exceptional curves of X_r grouped by family.
//!
//! cargo run --example exceptional_curves -- 6

use std::collections::BTreeMap;

use cox_delpezzo::enumeration::classify_family;
use cox_delpezzo::{exceptional_curves, Result};

fn main() -> Result<()> {
    let r: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let curves = exceptional_curves(r)?;
    let mut by_family: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for e in &curves {
        by_family.entry(classify_family(e)?.tag()).or_default().push(e.to_string());
    }
    println!("X_{r}: {} exceptional curves", curves.len());
    for (tag, members) in by_family {
        println!("  {tag:>8} ({:>3}): {}", members.len(), members.iter().take(4).cloned().collect::<Vec<_>>().join("  "));
    }
    Ok(())
}
