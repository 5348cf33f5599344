//! Link diagrams, their Kauffman resolutions and the classical, annular and
//! quantum annular Khovanov cubes.

mod corpus;
mod cubes;
mod diagram;
mod resolve;

pub use cubes::{
    annular_burnside_cube, annular_module_cube, kauffman_bracket_oracle, khovanov_burnside_cube, khovanov_module_cube,
    quantum_annular_burnside_cube, quantum_annular_module_cube, theory_module_cube, Theory,
};
pub use corpus::{parse_corpus, CorpusEntry};
pub use diagram::{parse_braid, parse_pd, BraidWord, Crossing, Diagram, PdCode};
pub use resolve::{resolve, ResolvedState};
