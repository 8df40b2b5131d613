//! Extremal quantities of uniform families with bounded matching number:
//! codegrees, codegree norms, sunflower counts, matching and cover numbers,
//! the extremal constructions, star decompositions and exact or randomised
//! extremal search.
//!
//! Vertices are labelled `1..=n` with `n <= 64`; an edge is a bitmask.

pub mod constructions;
pub mod count;
pub mod error;
pub mod family;
pub mod iso;
pub mod matching;
pub mod quantities;
pub mod search;
pub mod stability;

pub use constructions::{
    build_a, build_h, co_norm_a_closed, co_norm_h_closed, reference_bounds, size_a,
    sunflower_count_a_closed, sunflower_count_h_closed, ExtremalSpec, ReferenceBounds,
};
pub use count::{binomial, Count};
pub use error::{Error, Result};
pub use family::{EdgeSet, Family, Vertex, MAX_N};
pub use iso::{isomorphic, isomorphism, ClassCollector};
pub use matching::{
    cover_number, cover_within, lift_matching, matching_number, maximum_matching, Cover, Matching,
};
pub use quantities::{
    co_norm, codegree, codegree_table, high_codegree_family, restrict_avoid, sunflower_count,
    trivial_center, CodegreeTable,
};
pub use search::{exhaustive_max, hill_climb, HillConfig, Method, Objective, SearchReport};
pub use stability::{
    stability_decompose, stars_cover, shadow_counting_bound, Diagnostic, ShadowBound,
    StarDecomposition,
};
