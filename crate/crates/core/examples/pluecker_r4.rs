//! X_4 as a linear section of G(3,5): maximal minors against generators.

use cox_delpezzo::cox::pluecker_model_r4;
use cox_delpezzo::{random_config, Result};

fn main() -> Result<()> {
    let rep = pluecker_model_r4(&random_config(4, 5, 10)?)?;
    for m in &rep.minors {
        println!("minor {:?} = {} * x_[{}]", m.columns, m.scalar, m.class);
    }
    for id in &rep.identities {
        println!("identity fixing column {}: vanishes {}", id.fixed, id.vanishes);
    }
    for (ruling, ok) in &rep.relation_matches {
        println!("ruling {ruling}: relation proportional {ok}");
    }
    println!("{}", rep.note);
    Ok(())
}
