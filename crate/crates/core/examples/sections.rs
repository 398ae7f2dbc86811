//! Plane curves through a random configuration representing each
//! exceptional curve.

use cox_delpezzo::plane_geometry::{section_of, validate_general_position};
use cox_delpezzo::{exceptional_curves, random_config, Result};

fn main() -> Result<()> {
    let cfg = random_config(5, 11, 10)?;
    assert!(validate_general_position(&cfg).is_empty());
    println!("configuration: {}", cfg.to_json_string());
    for e in exceptional_curves(5)? {
        let s = section_of(&e, &cfg)?;
        println!("{:>10}  {:<22} {}", s.family.tag(), e.to_string(), s.poly);
    }
    Ok(())
}
