//! Sections of nef classes spanned by products of generators.

use cox_delpezzo::cox::{build_generators, nef_classes, verify_degree_one_generation};
use cox_delpezzo::lattice::PicClass;
use cox_delpezzo::{random_config, Result};

fn main() -> Result<()> {
    let g = build_generators(&random_config(5, 4, 10)?)?;
    for d in nef_classes(5, 2)? {
        let rep = verify_degree_one_generation(&d, &g)?;
        println!(
            "{:<26} h0 {:>3}  products {:>4}  rank {:>3}  {}",
            d.to_string(),
            rep.h0,
            rep.products,
            rep.rank,
            if rep.pass() { "ok" } else { "short" }
        );
    }

    let g8 = build_generators(&random_config(8, 4, 20)?)?;
    let rep = verify_degree_one_generation(&(PicClass::anticanonical(8) * 2), &g8)?;
    println!("-2K on X_8: rank {} (exceptional pairs alone: {})", rep.rank, rep.exceptional_rank);
    Ok(())
}
