//! Symbolic finite-difference expressions: the AST, its order function and
//! normal form, the generated expansions, and text/LaTeX/JSON output.

mod expand;
mod expr;
mod parse;
mod render;

pub use expand::{
    expand_chain, expand_chain_with, expand_tangent, expand_tangent_with, extend_by_telescoping,
    infinitesimal_terms, main_part, main_part_with, render_infinitesimal, tangent_main_part,
    tangent_remainder_terms, tangent_terms_raw, telescope, Symbols,
};
pub use expr::{canonicalize, natural_cmp, Expr};
pub use parse::{parse_text, ParseContext};
pub use render::{
    latex_document, parse_json, render, render_json, render_latex, render_named, render_text,
    Format, JSON_SCHEMA_VERSION,
};
