use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;

use rayon::prelude::*;
use serde::Serialize;

use crate::cli::report::serialize_display;
use crate::enumeration::{exceptional_slice, CurveFamily};
use crate::error::{Error, Result};
use crate::exactalg::{unisolvent_grid, PlanePoly, Rat};
use crate::lattice::PicClass;
use crate::plane_geometry::{interpolate, section_of, validate_general_position, PointConfig};

/// A degree-one generator of the Cox ring: a class and its section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub class: PicClass,
    #[serde(serialize_with = "serialize_display")]
    pub poly: PlanePoly,
    /// `None` for the two anticanonical generators on `X_8`.
    pub family: Option<CurveFamily>,
    pub label: String,
}

/// Degree of the cached evaluation grid. It covers every ruling class
/// (degree at most 11 in `l_0`) and the classes of the generation checks.
pub const GRID_DEGREE: u32 = 12;

/// Generator sections cleared of denominators and evaluated on
/// [`unisolvent_grid`].
#[derive(Clone, Debug)]
pub struct GridTable {
    pub degree: u32,
    /// `scales[g] * poly(g)` has integer coefficients.
    pub scales: Vec<BigInt>,
    /// `values[g][k]` is that integer form at grid point `k`.
    pub values: Vec<Vec<BigInt>>,
}

impl GridTable {
    fn build(gens: &[Generator], degree: u32) -> Self {
        let grid = unisolvent_grid(degree);
        let (scales, values) = gens.par_iter().map(|g| g.poly.integer_grid_values(&grid)).unzip();
        GridTable { degree, scales, values }
    }
}

/// All degree-one generators over a fixed point configuration.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    cfg: PointConfig,
    gens: Vec<Generator>,
    by_class: HashMap<PicClass, Vec<usize>>,
    grid: OnceLock<Arc<GridTable>>,
}

impl GeneratorSet {
    fn from_generators(cfg: PointConfig, gens: Vec<Generator>) -> Self {
        let mut by_class: HashMap<PicClass, Vec<usize>> = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            by_class.entry(g.class).or_default().push(i);
        }
        GeneratorSet {
            cfg,
            gens,
            by_class,
            grid: OnceLock::new(),
        }
    }

    /// Grid values good for products of total degree up to `degree`.
    pub fn grid_table(&self, degree: u32) -> Arc<GridTable> {
        if degree <= GRID_DEGREE {
            self.grid
                .get_or_init(|| Arc::new(GridTable::build(&self.gens, GRID_DEGREE)))
                .clone()
        } else {
            Arc::new(GridTable::build(&self.gens, degree))
        }
    }

    pub fn r(&self) -> usize {
        self.cfg.r()
    }

    pub fn config(&self) -> &PointConfig {
        &self.cfg
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    /// Indices of the generators of a class (two for `-K` on `X_8`).
    pub fn indices_of(&self, class: &PicClass) -> &[usize] {
        self.by_class.get(class).map_or(&[], Vec::as_slice)
    }

    /// The unique generator of an exceptional class.
    pub fn index_of_exceptional(&self, class: &PicClass) -> Result<usize> {
        match self.indices_of(class) {
            [i] => Ok(*i),
            _ => Err(Error::NotExceptional(class.to_string())),
        }
    }

    /// Copy with generator `i` multiplied by `factor`.
    pub fn rescaled(&self, i: usize, factor: &Rat) -> Self {
        let mut gens = self.gens.clone();
        gens[i].poly = gens[i].poly.scale(factor);
        Self::from_generators(self.cfg.clone(), gens)
    }
}

fn label(e: &PicClass) -> String {
    format!("x[{e}]")
}

/// Sections of every exceptional class over `cfg`; on `X_8` also the
/// echelon basis `k1, k2` of the cubics through all eight points.
pub fn build_generators(cfg: &PointConfig) -> Result<GeneratorSet> {
    let violations = validate_general_position(cfg);
    if let Some(v) = violations.first() {
        return Err(Error::Degeneracy(v.to_string()));
    }
    let r = cfg.r();
    let mut gens: Vec<Generator> = exceptional_slice(r)
        .par_iter()
        .map(|e| {
            let s = section_of(e, cfg)?;
            Ok(Generator {
                class: *e,
                poly: s.poly,
                family: Some(s.family),
                label: label(e),
            })
        })
        .collect::<Result<_>>()?;
    if r == 8 {
        let cubics = interpolate(3, &[1; 8], cfg);
        if cubics.len() != 2 {
            return Err(Error::Degeneracy(format!(
                "anticanonical system has dimension {}",
                cubics.len()
            )));
        }
        let minus_k = PicClass::anticanonical(8);
        for (n, poly) in cubics.into_iter().enumerate() {
            gens.push(Generator {
                class: minus_k,
                poly,
                family: None,
                label: format!("k{}", n + 1),
            });
        }
    }
    Ok(GeneratorSet::from_generators(cfg.clone(), gens))
}

/// Classes of the degree-one generators: the exceptional classes, plus
/// `-K` on `X_8`. Sorted canonically.
pub fn generator_classes(r: usize) -> Vec<PicClass> {
    let mut v = exceptional_slice(r).to_vec();
    if r == 8 {
        v.push(PicClass::anticanonical(8));
        v.sort();
    }
    v
}
