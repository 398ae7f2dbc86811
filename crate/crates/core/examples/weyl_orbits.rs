//! Weyl group orbits of l_r, of a root and of a ruling class, with a word
//! reaching one orbit element.

use cox_delpezzo::lattice::{simple_roots, PicClass};
use cox_delpezzo::weyl::{apply_word, orbit, weight_summary};
use cox_delpezzo::Result;

fn main() -> Result<()> {
    for r in 3..=8 {
        let curves = orbit(&PicClass::l(r, r))?;
        let root_orbit = orbit(&simple_roots(r)?[0])?;
        let ruling_orbit = orbit(&(PicClass::l(r, 0) - PicClass::l(r, 1)))?;
        println!(
            "X_{r}: |W.l_{r}| = {:>3}  |W.alpha_1| = {:>3}  |W.(l0 - l1)| = {:>4}",
            curves.len(),
            root_orbit.len(),
            ruling_orbit.len()
        );
    }

    let r = 6;
    let o = orbit(&PicClass::l(r, r))?;
    let target = o.sorted_elements().pop().expect("nonempty orbit");
    let word = o.word(&target).expect("stored word");
    println!("\non X_6, {target} = s_{word:?} . l_6");
    assert_eq!(apply_word(&PicClass::l(r, r), word)?, target);

    let w = weight_summary(r)?;
    println!(
        "weights: {} nonzero on exceptional curves, single orbit: {}",
        w.nonzero_weights, w.single_orbit
    );
    Ok(())
}
