//! Quadratic relations among products of fibre sections, one ruling at a
//! time.

use cox_delpezzo::cox::{build_generators, ruling_relations};
use cox_delpezzo::{random_config, rulings, Result};

fn main() -> Result<()> {
    let r: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let g = build_generators(&random_config(r, 2, 10)?)?;
    for ru in rulings(r)?.iter().take(3) {
        let rels = ruling_relations(ru, &g)?;
        println!("ruling {}: {} relations", ru.class, rels.len());
        for rel in &rels {
            println!("  {}", rel.to_json(&g));
            assert!(rel.holds_identically(&g));
        }
    }
    Ok(())
}
