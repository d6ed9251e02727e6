//! Real alcoves, their faces, `p`-alcoves, integral and quantum chambers,
//! admissibility of `p` and translation paths.

mod alcove;
mod chamber;
mod face;
mod palcove;
mod validate;

pub use alcove::{alcoves_in_box, from_strips, real_alcove_of, Inequality, RealAlcove, Sense};
pub use chamber::{
    integral_chambers, integral_walls, integral_walls_and_positive_chamber, quantum_chamber,
    translation_path, Chamber, QuantumChamber,
};
pub use face::{faces_of, Face};
pub use palcove::{dilate, find_lattice_point, p_alcove_of, p_membership, PAlcove, PInequality};

pub use validate::{h_block_ordering, is_prime, residue, validate_p, Check, ValidationInput, ValidationReport};
