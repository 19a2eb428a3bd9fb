//! Words, noncommutative polynomials and solvable-type presentations.

mod checks;
mod map;
mod poly;
mod presentation;
mod rewrite;
mod spec_text;
mod word;

pub use checks::{
    defining_relations, du_formula_rhs, verify_du_formulas, verify_normal_element,
    verify_presentation_consistency,
};
pub use map::{apply_map_power, GeneratorMap};
pub use poly::NcPoly;
pub use presentation::{DownUpConstants, Family, Presentation, Rule};
pub use rewrite::{multiply, normal_form, Multiplier, Rewriter, Strategy};
pub use spec_text::{compact_scalar, parse_algebra_spec, parse_poly, render_poly, AlgebraSpec};
pub use word::{GeneratorId, Word};
