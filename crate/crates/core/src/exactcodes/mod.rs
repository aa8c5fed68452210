//! Concrete codes and exhaustive ground truth.
//!
//! Where the rest of the crate manipulates closed-form counts, this
//! module builds actual matrices over GF(q): extension-field arithmetic
//! with compiled-in irreducible polynomials ([`field`]), matrix ranks
//! and space indexing ([`matrix`]), Gabidulin codes with their weight
//! spectra ([`gabidulin`]), and brute-force covering computations that
//! the formula-based bounds are tested against ([`covering`]).
//!
//! Only prime q up to 251 is supported here (rank computations reduce
//! mod q), and extension degrees are limited by the polynomial table in
//! [`field`]. The closed-form side of the crate has no such limits.

pub mod covering;
pub mod field;
pub mod gabidulin;
pub mod matrix;

pub use covering::{
    check_intersections_by_enumeration, construction_code, construction_cover_word,
    covering_radius, covering_radius_seq, enumerate_sphere_intersections,
    enumerate_sphere_intersections_seq, exact_min_covering, is_construction_word,
    union_ball_volume, union_ball_volume_seq,
};
pub use field::{ExtElem, ExtField, MAX_EXT_DEGREE};
pub use gabidulin::{gabidulin_code, Code};
pub use matrix::{contract, expand, FqMatrix};
