//! Dichotomy constructions for clopen box graphs: agreement of block trees,
//! independent trees by fusion, clique ladders, four-cycles and images.

mod agreement;
mod dichotomy;
mod four_cycle;
mod image;

pub use agreement::{
    agrees_with, product_disjoint, selector_refinements, validate_refutation, AgreementReport, Refutation, Relation,
};
pub use dichotomy::{
    default_refuter, density_dichotomy, independent_tree, perfect_clique, verify_independent, DichotomyOutcome,
    VERIFY_DEPTH,
};
pub use four_cycle::{four_cycle, CyclePhase, FourCycleReport, DEFAULT_CYCLE_BOUND, SAMPLES};
pub use image::{box_graph, independent_image, ImageCertificate};
