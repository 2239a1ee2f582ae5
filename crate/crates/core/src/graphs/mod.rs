//! Edge oracles for G₀, G₁, E₀, box graphs and pull-backs, their finite
//! restrictions, exact coloring, and Ramsey and homomorphism searches.

mod coloring;
mod finite;
mod maps;
mod ramsey;
mod spec;
mod witness;

pub use coloring::{chromatic_number, chromatic_number_of, is_proper, Coloring, DEFAULT_COLORING_BUDGET};
pub use finite::{restrict, FiniteGraph, MAX_RESTRICT_DEPTH};
pub use maps::WordMap;
pub use ramsey::{ramsey_find, RamseyOutcome};
pub use spec::{pullback, ClopenGraph, EdgeCertificate, GraphSpec};
pub use witness::{check_homomorphism, clopen_independence_witness, EdgeWitness};
