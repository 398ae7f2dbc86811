//! Points of the universal torsor and the rank of the relation Jacobian.

use cox_delpezzo::cox::{build_generators, jacobian_codim_check};
use cox_delpezzo::{random_config, Result};

fn main() -> Result<()> {
    for r in 4..=6 {
        let g = build_generators(&random_config(r, 6, 10)?)?;
        let rep = jacobian_codim_check(&g, 1, 3)?;
        println!(
            "X_{r}: {} generators, {} relations, expected rank {}",
            rep.generators, rep.relations, rep.expected_rank
        );
        for s in &rep.samples {
            println!("  q = ({}) rank {} vanish {}", s.q.join(" : "), s.rank, s.relations_vanish);
        }
    }
    Ok(())
}
