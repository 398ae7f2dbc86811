//! Contracting l_r: exceptional curves of X_{r-1} inside X_r and relations
//! pulled back along the blowup.

use cox_delpezzo::cox::{blowdown_relation_check, build_generators};
use cox_delpezzo::lattice::PicClass;
use cox_delpezzo::weyl::blowdown_correspondence;
use cox_delpezzo::{random_config, Result};

fn main() -> Result<()> {
    for r in 5..=7 {
        let image = blowdown_correspondence(&PicClass::l(r, r))?;
        let upper = build_generators(&random_config(r, 9, 10)?)?;
        let lower = build_generators(&upper.config().drop_last()?)?;
        let rep = blowdown_relation_check(&upper, &lower)?;
        println!(
            "X_{r} -> X_{}: {} curves disjoint from l_{r}; {} rulings, {} relations and {} generators pulled back",
            r - 1,
            image.len(),
            rep.rulings_checked,
            rep.relations_pulled_back,
            rep.generators_pulled_back
        );
    }
    Ok(())
}
