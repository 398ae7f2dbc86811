use num_traits::{One, Zero};
use serde::Serialize;

use super::{PlanePoint, PointConfig};
use crate::enumeration::{classify_family, CurveFamily};
use crate::error::{Error, Result};
use crate::exactalg::{monomial_basis, nullspace, rank, PlanePoly, QMatrix, Rat};
use crate::lattice::{is_nef, PicClass};

fn falling(n: u32, k: u32) -> u64 {
    (0..k).map(|t| (n - t) as u64).product()
}

/// Rows expressing "all partials of order `order` vanish at `p`" on the
/// coefficient vector of a degree-`degree` form.
fn derivative_rows(degree: u32, order: u32, p: &PlanePoint) -> Vec<Vec<Rat>> {
    let basis = monomial_basis(degree);
    let powers: Vec<Vec<Rat>> = p
        .iter()
        .map(|c| {
            let mut v = vec![Rat::one()];
            for k in 1..=degree as usize {
                let next = &v[k - 1] * c;
                v.push(next);
            }
            v
        })
        .collect();
    monomial_basis(order)
        .iter()
        .map(|d| {
            basis
                .iter()
                .map(|m| {
                    if (0..3).any(|v| m.0[v] < d.0[v]) {
                        return Rat::zero();
                    }
                    let mut coeff = Rat::from_integer(
                        (0..3).map(|v| falling(m.0[v], d.0[v])).product::<u64>().into(),
                    );
                    for v in 0..3 {
                        coeff *= &powers[v][(m.0[v] - d.0[v]) as usize];
                    }
                    coeff
                })
                .collect()
        })
        .collect()
}

fn condition_matrix(degree: u32, mults: &[i64], cfg: &PointConfig) -> QMatrix {
    let cols = monomial_basis(degree).len();
    let mut rows = Vec::new();
    for (p, &b) in cfg.points().iter().zip(mults) {
        if b >= 1 {
            // By Euler's identity, vanishing of the order b-1 partials of a
            // form implies vanishing of all lower ones.
            rows.extend(derivative_rows(degree, (b - 1) as u32, p));
        }
    }
    QMatrix::from_rows(cols, rows)
}

/// Basis of the degree-`degree` forms with multiplicity at least `mults[i]`
/// at `p_{i+1}`, in reduced echelon form (leading graded-lex coefficient 1).
pub fn interpolate(degree: u32, mults: &[i64], cfg: &PointConfig) -> Vec<PlanePoly> {
    assert_eq!(mults.len(), cfg.r(), "one multiplicity per point");
    // A nonzero form has multiplicity at most its degree everywhere.
    if mults.iter().any(|&b| b > degree as i64) {
        return Vec::new();
    }
    nullspace(&condition_matrix(degree, mults, cfg))
        .into_iter()
        .map(|v| PlanePoly::from_coefficients(degree, &v))
        .collect()
}

/// Dimension of the interpolation space of a class with `m_0 >= 0` and
/// nonnegative multiplicities.
pub fn interpolation_dimension(d: &PicClass, cfg: &PointConfig) -> Result<usize> {
    let m0 = d.coeff(0);
    let mults = d.multiplicities();
    if m0 < 0 || mults.iter().any(|&m| m < 0) {
        return Err(Error::InvalidInput(format!(
            "{d} is not a plane-curve class (negative degree or multiplicity)"
        )));
    }
    if mults.iter().any(|&b| b > m0) {
        return Ok(0);
    }
    let m = condition_matrix(m0 as u32, &mults, cfg);
    Ok(m.cols() - rank(&m))
}

/// The normalized section of an exceptional class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub curve_class: PicClass,
    #[serde(serialize_with = "crate::cli::report::serialize_display")]
    pub poly: PlanePoly,
    pub family: CurveFamily,
}

/// The unique (up to scalar) section of an exceptional class, normalized to
/// leading coefficient 1. The fibres `l_i` get the constant 1.
pub fn section_of(e: &PicClass, cfg: &PointConfig) -> Result<Section> {
    if e.r() != cfg.r() {
        return Err(Error::DimensionMismatch {
            left: e.r(),
            right: cfg.r(),
        });
    }
    let family = classify_family(e)?;
    if let CurveFamily::Point { .. } = family {
        return Ok(Section {
            curve_class: *e,
            poly: PlanePoly::one(),
            family,
        });
    }
    let basis = interpolate(e.coeff(0) as u32, &e.multiplicities(), cfg);
    if basis.len() != 1 {
        return Err(Error::Degeneracy(format!(
            "interpolation space of {e} has dimension {}",
            basis.len()
        )));
    }
    let poly = basis.into_iter().next().expect("one basis element");
    Ok(Section {
        curve_class: *e,
        poly,
        family,
    })
}

/// Riemann-Roch dimension `((D, D) + (D, -K)) / 2 + 1` of a nef class.
pub fn h0_dim(d: &PicClass) -> Result<i64> {
    if !is_nef(d) || d.degree() < 0 {
        return Err(Error::NotNef(d.to_string()));
    }
    Ok((d.self_intersection() + d.degree()) / 2 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{exceptional_curves, rulings};
    use crate::exactalg::rat;
    use crate::plane_geometry::random_config;

    #[test]
    fn line_through_two_points() {
        let cfg = PointConfig::from_i64(3, &[[0, 0, 1], [1, 0, 1], [0, 1, 0]]).unwrap();
        let basis = interpolate(1, &[1, 1, 0], &cfg);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], PlanePoly::var(1));

        let e = PicClass::from_multiplicities(3, 1, &[1, 1, 0]).unwrap();
        let s = section_of(&e, &cfg).unwrap();
        assert_eq!(s.poly.to_string(), "y");
        assert_eq!(s.family, CurveFamily::Line { points: vec![1, 2] });
    }

    #[test]
    fn point_sections_are_constant() {
        let cfg = random_config(4, 3, 10).unwrap();
        let s = section_of(&PicClass::l(4, 1), &cfg).unwrap();
        assert_eq!(s.poly, PlanePoly::one());
        assert_eq!(s.family, CurveFamily::Point { index: 1 });
    }

    #[test]
    fn conic_through_five_points() {
        let cfg = random_config(5, 11, 10).unwrap();
        let e = PicClass::from_multiplicities(5, 2, &[1; 5]).unwrap();
        let s = section_of(&e, &cfg).unwrap();
        assert_eq!(s.poly.degree(), 2);
        assert_eq!(s.poly.leading_coefficient(), Some(&rat(1)));
        for p in cfg.points() {
            assert!(s.poly.evaluate(p).is_zero());
        }
    }

    #[test]
    fn interpolation_dimensions() {
        let cfg = random_config(8, 1, 20).unwrap();
        let sextic = interpolate(6, &[3, 2, 2, 2, 2, 2, 2, 2], &cfg);
        assert_eq!(sextic.len(), 1);
        let cubics = interpolate(3, &[1; 8], &cfg);
        assert_eq!(cubics.len(), 2);
        // Triple point of the sextic: all second partials vanish at p_1.
        let p1 = cfg.point(1);
        for a in 0..3 {
            for b in 0..3 {
                assert!(sextic[0].partial(a).partial(b).evaluate(p1).is_zero());
            }
        }
        assert!(interpolate(1, &[2, 0, 0, 0, 0, 0, 0, 0], &cfg).is_empty());
    }

    #[test]
    fn riemann_roch_examples() {
        assert_eq!(h0_dim(&PicClass::anticanonical(8)).unwrap(), 2);
        assert_eq!(h0_dim(&PicClass::anticanonical(4)).unwrap(), 6);
        assert_eq!(h0_dim(&PicClass::l(5, 0)).unwrap(), 3);
        assert!(matches!(h0_dim(&PicClass::l(5, 1)), Err(Error::NotNef(_))));

        let cfg = random_config(4, 5, 10).unwrap();
        assert_eq!(interpolate(3, &[1, 1, 1, 1], &cfg).len(), 6);
    }

    #[test]
    fn exceptional_and_ruling_dimensions() {
        for r in 4..=7 {
            let cfg = random_config(r, 100 + r as u64, 12).unwrap();
            for e in exceptional_curves(r).unwrap().iter().filter(|e| e.coeff(0) > 0) {
                assert_eq!(interpolation_dimension(e, &cfg).unwrap(), 1, "{e}");
            }
            for ruling in rulings(r).unwrap() {
                assert_eq!(interpolation_dimension(&ruling.class, &cfg).unwrap(), 2);
            }
        }
    }
}
