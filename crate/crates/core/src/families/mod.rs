//! Multisets, families of multisets, the extremal constructions that attain
//! the intersecting-family bounds, and the bound formulas themselves.

mod bounds;
mod constructions;
mod family;
mod multiset;

pub use bounds::{above_half_bound, star_bound, t_star_bound, BoundReport};
pub use constructions::{
    above_half_family, above_half_selection_split, frankl_family, half_selection_family,
    half_selection_family_with, level_family, star_family, t_star_family, PairChoice,
};
pub use family::Family;
pub use multiset::{all_multisets, Multiset, Support};
