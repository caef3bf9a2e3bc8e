//! Text, LaTeX and JSON output.
//!
//! Text grammar (whitespace-insensitive):
//!
//! ```text
//! expr      := "0" | term ("+" term)*
//! term      := delta | NAME "(" expr ")" | component | NAME
//! delta     := ("Δ" | "Delta") ["^" INT | "^{" INT "}"] "_{" expr ("," expr)* "}" NAME "(" expr ")"
//! component := CUBOID "_" (INT | "{" INT ("," INT)* "}")
//! NAME      := [A-Za-z][A-Za-z0-9]* ["_" (INT | "{" ... "}")]
//! ```
//!
//! Component positions are 1-based (`u_{1,3}` is `u_{101}` on three digits,
//! `u_0` is the base component). The exponent after `Δ` is the number of
//! listed directions; it is omitted when there is exactly one. A direction
//! with exponent `m` is listed `m` times.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinatorics::MultiIndex;
use crate::error::{Error, Result};

use super::expr::Expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

pub const JSON_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope {
    version: u32,
    expr: Expr,
}

pub fn render(e: &Expr, format: Format) -> String {
    match format {
        Format::Text => render_text(e),
        Format::Latex => render_latex(e),
        Format::Json => render_json(e),
    }
}

/// Renders in the named format; unknown names are an error.
pub fn render_named(e: &Expr, format: &str) -> Result<String> {
    Ok(render(e, format.parse()?))
}

fn subscript_positions(index: &MultiIndex) -> String {
    let pos: Vec<String> = index
        .support()
        .iter()
        .map(|p| (p + 1).to_string())
        .collect();
    pos.join(",")
}

fn expanded_directions<'e>(alpha: &[u32], directions: &'e [Expr]) -> Vec<(u32, &'e Expr)> {
    alpha.iter().copied().zip(directions).collect()
}

pub fn render_text(e: &Expr) -> String {
    let mut out = String::new();
    write_text(&mut out, e);
    out
}

fn write_text(out: &mut String, e: &Expr) {
    match e {
        Expr::Point { name } | Expr::Vector { name } => out.push_str(name),
        Expr::Component { cuboid, index } => {
            out.push_str(cuboid);
            match index.order() {
                0 => out.push_str("_0"),
                1 if index.least().unwrap() < 9 => {
                    let _ = write!(out, "_{}", index.least().unwrap() + 1);
                }
                _ => {
                    let _ = write!(out, "_{{{}}}", subscript_positions(index));
                }
            }
        }
        Expr::Sum { terms } if terms.is_empty() => out.push('0'),
        Expr::Sum { terms } => {
            for (i, t) in terms.iter().enumerate() {
                if i > 0 {
                    out.push_str(" + ");
                }
                write_text(out, t);
            }
        }
        Expr::App { func, arg } => {
            out.push_str(func);
            out.push('(');
            write_text(out, arg);
            out.push(')');
        }
        Expr::Delta {
            alpha,
            directions,
            func,
            base,
        } => {
            let total: u64 = alpha.iter().map(|&a| a as u64).sum();
            out.push('Δ');
            match total {
                1 => {}
                t if t < 10 => {
                    let _ = write!(out, "^{t}");
                }
                t => {
                    let _ = write!(out, "^{{{t}}}");
                }
            }
            out.push_str("_{");
            let mut first = true;
            for (a, d) in expanded_directions(alpha, directions) {
                for _ in 0..a {
                    if !first {
                        out.push_str(", ");
                    }
                    first = false;
                    write_text(out, d);
                }
            }
            out.push_str("} ");
            out.push_str(func);
            out.push('(');
            write_text(out, base);
            out.push(')');
        }
    }
}

fn latex_name(name: &str) -> String {
    match name.split_once('_') {
        Some((head, tail)) => {
            let tail = tail
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .unwrap_or(tail);
            format!("{head}_{{{tail}}}")
        }
        None => name.to_string(),
    }
}

pub fn render_latex(e: &Expr) -> String {
    let mut out = String::new();
    write_latex(&mut out, e);
    out
}

fn write_latex(out: &mut String, e: &Expr) {
    match e {
        Expr::Point { name } | Expr::Vector { name } => out.push_str(&latex_name(name)),
        Expr::Component { cuboid, index } => {
            let sub = if index.is_zero() {
                "0".to_string()
            } else {
                subscript_positions(index)
            };
            let _ = write!(out, "{cuboid}_{{{sub}}}");
        }
        Expr::Sum { terms } if terms.is_empty() => out.push('0'),
        Expr::Sum { terms } => {
            for (i, t) in terms.iter().enumerate() {
                if i > 0 {
                    out.push_str(" + ");
                }
                write_latex(out, t);
            }
        }
        Expr::App { func, arg } => {
            let _ = write!(out, "{}\\left(", latex_name(func));
            write_latex(out, arg);
            out.push_str("\\right)");
        }
        Expr::Delta {
            alpha,
            directions,
            func,
            base,
        } => {
            let total: u64 = alpha.iter().map(|&a| a as u64).sum();
            out.push_str("\\Delta");
            if total != 1 {
                let _ = write!(out, "^{{{total}}}");
            }
            out.push_str("_{");
            let mut first = true;
            for (a, d) in expanded_directions(alpha, directions) {
                for _ in 0..a {
                    if !first {
                        out.push_str(", ");
                    }
                    first = false;
                    write_latex(out, d);
                }
            }
            let _ = write!(out, "}} {}\\left(", latex_name(func));
            write_latex(out, base);
            out.push_str("\\right)");
        }
    }
}

/// A complete LaTeX document showing `lhs = e`, one summand per line.
pub fn latex_document(lhs: &str, e: &Expr) -> String {
    let mut out = String::new();
    out.push_str("\\documentclass{article}\n");
    out.push_str("\\usepackage{amsmath}\n");
    out.push_str("\\usepackage[landscape,margin=1cm]{geometry}\n");
    out.push_str("\\begin{document}\n");
    out.push_str("\\begin{align*}\n");
    let terms = e.summands();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            let _ = write!(out, "{lhs} &= ");
        } else {
            out.push_str("&\\quad + ");
        }
        write_latex(&mut out, t);
        if i + 1 < terms.len() {
            out.push_str(" \\\\");
        }
        out.push('\n');
    }
    out.push_str("\\end{align*}\n");
    out.push_str("\\end{document}\n");
    out
}

pub fn render_json(e: &Expr) -> String {
    serde_json::to_string(&Envelope {
        version: JSON_SCHEMA_VERSION,
        expr: e.clone(),
    })
    .expect("expressions always serialize")
}

pub fn parse_json(s: &str) -> Result<Expr> {
    let env: Envelope = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
    if env.version != JSON_SCHEMA_VERSION {
        return Err(Error::Json(format!(
            "unsupported schema version {}",
            env.version
        )));
    }
    Ok(env.expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::expand::{expand_chain, expand_tangent};

    #[test]
    fn empty_sum_is_zero() {
        assert_eq!(render_text(&Expr::zero()), "0");
        assert_eq!(render_latex(&Expr::zero()), "0");
    }

    #[test]
    fn unknown_format_is_rejected() {
        assert_eq!(
            render_named(&Expr::zero(), "html"),
            Err(Error::UnknownFormat("html".into()))
        );
        assert_eq!(render_named(&Expr::zero(), "text").unwrap(), "0");
    }

    #[test]
    fn latex_of_second_order_tangent() {
        let e = expand_tangent("11".parse().unwrap());
        assert_eq!(
            render_latex(&e),
            "\\Delta_{u_{1,2}} f\\left(u_{0} + u_{1} + u_{2}\\right) + \\Delta^{2}_{u_{1}, u_{2}} f\\left(u_{0}\\right)"
        );
        let doc = latex_document("T_{(1,1)} f(\\bar{u})", &e);
        assert!(doc.starts_with("\\documentclass{article}"));
        assert_eq!(doc.matches("\\\\\n").count(), 1);
    }

    #[test]
    fn json_carries_a_version() {
        let e = expand_chain("1".parse().unwrap());
        let s = render_json(&e);
        assert!(s.starts_with("{\"version\":1,"));
        assert_eq!(parse_json(&s).unwrap(), e);
        assert!(parse_json(&s.replace("\"version\":1", "\"version\":9")).is_err());
    }

    #[test]
    fn repeated_direction_is_listed_twice() {
        let e = Expr::delta_alpha(vec![2], vec![Expr::vector("a")], "f", Expr::point("x"));
        assert_eq!(render_text(&e), "Δ^2_{a, a} f(x)");
    }
}
