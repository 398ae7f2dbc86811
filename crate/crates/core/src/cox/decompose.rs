use std::collections::HashMap;

use super::generators::generator_classes;
use crate::lattice::PicClass;

/// Every multiset of generator classes summing to `d`.
///
/// Generators all have degree one, so each multiset has exactly
/// `degree(d)` members; the result is empty iff `d` is not effective.
/// Multisets are returned sorted, each in canonical order.
pub fn decompose_effective(d: &PicClass) -> Vec<Vec<PicClass>> {
    let r = d.r();
    let deg = d.degree();
    if deg < 0 {
        return Vec::new();
    }
    let classes = generator_classes(r);
    let position: HashMap<PicClass, usize> = classes.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    // Per-coordinate extremes over the generators, for pruning.
    let hi: Vec<i64> = (0..=r).map(|i| classes.iter().map(|c| c.coeff(i)).max().unwrap()).collect();
    let lo: Vec<i64> = (0..=r).map(|i| classes.iter().map(|c| c.coeff(i)).min().unwrap()).collect();

    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(deg as usize);
    search(&classes, &position, &hi, &lo, *d, deg, 0, &mut stack, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    classes: &[PicClass],
    position: &HashMap<PicClass, usize>,
    hi: &[i64],
    lo: &[i64],
    rest: PicClass,
    left: i64,
    start: usize,
    stack: &mut Vec<PicClass>,
    out: &mut Vec<Vec<PicClass>>,
) {
    if left == 0 {
        if rest.is_zero() {
            out.push(stack.clone());
        }
        return;
    }
    let feasible = rest
        .coeffs()
        .iter()
        .enumerate()
        .all(|(i, &c)| c <= hi[i] * left && c >= lo[i] * left);
    if !feasible {
        return;
    }
    if left == 1 {
        if let Some(&i) = position.get(&rest) {
            if i >= start {
                stack.push(rest);
                out.push(stack.clone());
                stack.pop();
            }
        }
        return;
    }
    for i in start..classes.len() {
        stack.push(classes[i]);
        search(classes, position, hi, lo, rest - classes[i], left - 1, i, stack, out);
        stack.pop();
    }
}

/// Whether `d` is a nonnegative integer combination of generator classes.
pub fn is_effective(d: &PicClass) -> bool {
    !decompose_effective(d).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::anticanonical_decompositions;

    #[test]
    fn anticanonical_r4_contains_displayed() {
        let all = decompose_effective(&PicClass::anticanonical(4));
        for mut parts in anticanonical_decompositions(4).unwrap() {
            parts.sort();
            assert!(all.contains(&parts), "{parts:?}");
        }
        assert!(all.iter().all(|m| m.len() == 5));
    }

    #[test]
    fn trivial_cases() {
        let l1 = PicClass::l(5, 1);
        assert_eq!(decompose_effective(&l1), vec![vec![l1]]);
        assert!(decompose_effective(&-l1).is_empty());
        assert_eq!(decompose_effective(&PicClass::zero(5)), vec![Vec::<PicClass>::new()]);
        // Degree zero but nonzero: a root is never effective.
        assert!(decompose_effective(&(PicClass::l(5, 1) - PicClass::l(5, 2))).is_empty());
    }

    #[test]
    fn minus_two_k_on_x8() {
        let d = PicClass::anticanonical(8) * 2;
        let all = decompose_effective(&d);
        // 120 pairs meeting three times, plus {-K, -K}.
        assert_eq!(all.len(), 121);
    }
}
