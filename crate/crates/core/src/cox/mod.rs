//! The Cox ring as a `Pic`-graded ring of plane-curve sections.

pub mod decompose;
pub mod generation;
pub mod generators;
pub mod pluecker;
pub mod relations;
pub mod torsor;

pub use decompose::{decompose_effective, is_effective};
pub use generation::{nef_classes, peel_fixed_components, verify_degree_one_generation, GenerationReport};
pub use generators::{build_generators, generator_classes, Generator, GeneratorSet};
pub use pluecker::{pluecker_model_r4, PlueckerReport};
pub use relations::{
    all_ruling_relations, blowdown_relation_check, ruling_relations, BlowdownRelationReport, QuadraticRelation,
    RelationTerm,
};
pub use torsor::{jacobian_codim_check, sample_torsor_point, JacobianReport};
