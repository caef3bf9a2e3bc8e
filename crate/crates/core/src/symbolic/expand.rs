//! Generation of the exact expansions from the A-set families.

use crate::asets::{build_asets, ASetFamily};
use crate::combinatorics::MultiIndex;

use super::expr::{canonicalize, Expr};
use super::render::render_text;

/// Symbol names used by the generated expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbols {
    /// Cuboid whose components appear in the tangent expansion.
    pub cuboid: String,
    /// The outer map `f`.
    pub outer: String,
    /// The inner map `g` of the chain expansion.
    pub inner: String,
    /// The base point `x` of the chain expansion.
    pub point: String,
    /// Direction vectors are named `{prefix}_1, …, {prefix}_k`.
    pub vector_prefix: String,
}

impl Default for Symbols {
    fn default() -> Self {
        Symbols {
            cuboid: "u".into(),
            outer: "f".into(),
            inner: "g".into(),
            point: "x".into(),
            vector_prefix: "v".into(),
        }
    }
}

impl Symbols {
    pub fn vector_name(&self, i: usize) -> String {
        format!("{}_{}", self.vector_prefix, i + 1)
    }

    /// `Δ_v^γ g(x)` for a binary `γ` (left unsimplified: zero exponents stay).
    pub fn inner_difference(&self, gamma: MultiIndex) -> Expr {
        Expr::delta_alpha(
            gamma.digits().into_iter().map(u32::from).collect(),
            (0..gamma.len())
                .map(|i| Expr::vector(self.vector_name(i)))
                .collect(),
            self.inner.clone(),
            Expr::point(self.point.clone()),
        )
    }
}

fn component_sum(sym: &Symbols, set: &[MultiIndex]) -> Expr {
    Expr::sum(
        set.iter()
            .map(|g| Expr::component(sym.cuboid.clone(), *g))
            .collect(),
    )
}

/// One term per family, directions in block order, nothing canonicalized.
pub fn tangent_terms_raw(families: &[ASetFamily], sym: &Symbols) -> Vec<Expr> {
    families
        .iter()
        .map(|fam| {
            Expr::delta(
                fam.blocks.iter().map(|s| component_sum(sym, s)).collect(),
                sym.outer.clone(),
                component_sum(sym, &fam.base),
            )
        })
        .collect()
}

/// `T_α f ū` as a sum over partitions of `α`.
pub fn expand_tangent(alpha: MultiIndex) -> Expr {
    expand_tangent_with(alpha, &Symbols::default())
}

pub fn expand_tangent_with(alpha: MultiIndex, sym: &Symbols) -> Expr {
    let raw = tangent_terms_raw(&build_asets(alpha), sym);
    canonicalize(&Expr::sum(raw))
}

/// `Δ_v^α (f ∘ g)(x)`: the tangent expansion with each `u_γ` replaced by
/// `Δ_v^γ g(x)`.
pub fn expand_chain(alpha: MultiIndex) -> Expr {
    expand_chain_with(alpha, &Symbols::default())
}

pub fn expand_chain_with(alpha: MultiIndex, sym: &Symbols) -> Expr {
    let raw = Expr::sum(tangent_terms_raw(&build_asets(alpha), sym));
    canonicalize(&raw.map_components(&|_, gamma| sym.inner_difference(gamma)))
}

/// The leading part of [`expand_chain`]: each direction is truncated to
/// `Δ_v^{α^i} g(x)` and each base to `g(x)`.
pub fn main_part(alpha: MultiIndex) -> Expr {
    main_part_with(alpha, &Symbols::default())
}

pub fn main_part_with(alpha: MultiIndex, sym: &Symbols) -> Expr {
    let terms = build_asets(alpha)
        .iter()
        .map(|fam| {
            Expr::delta(
                fam.partition
                    .blocks()
                    .iter()
                    .map(|b| sym.inner_difference(*b))
                    .collect(),
                sym.outer.clone(),
                sym.inner_difference(MultiIndex::zero(alpha.len())),
            )
        })
        .collect();
    canonicalize(&Expr::sum(terms))
}

/// The leading part of [`expand_tangent`]: `Σ_ξ Δ^r_{u_{α^1}, …, u_{α^r}} f(u_0)`.
pub fn tangent_main_part(alpha: MultiIndex, sym: &Symbols) -> Expr {
    let terms = build_asets(alpha)
        .iter()
        .map(|fam| {
            Expr::delta(
                fam.partition
                    .blocks()
                    .iter()
                    .map(|b| Expr::component(sym.cuboid.clone(), *b))
                    .collect(),
                sym.outer.clone(),
                Expr::component(sym.cuboid.clone(), MultiIndex::zero(alpha.len())),
            )
        })
        .collect();
    canonicalize(&Expr::sum(terms))
}

/// The difference of two finite-difference terms sharing `f`, expanded by
/// repeated additivity of `Δ`:
///
/// `Δ^n_{u_1+v_1, …, u_n+v_n} f(x + w) − Δ^n_{u_1, …, u_n} f(x)
///   = Δ^{n+1}_{w, u_1, …, u_n} f(x)
///   + Σ_i Δ^n_{u_1, …, u_{i-1}, v_i, u_{i+1}+v_{i+1}, …, u_n+v_n} f(x + w + u_i)`.
pub fn telescope(func: &str, x: &Expr, w: &Expr, u: &[Expr], v: &[Expr]) -> Vec<Expr> {
    assert_eq!(u.len(), v.len());
    let n = u.len();
    let mut out = Vec::with_capacity(n + 1);
    let mut first = vec![w.clone()];
    first.extend(u.iter().cloned());
    out.push(Expr::delta(first, func, x.clone()));
    for i in 0..n {
        let mut dirs = Vec::with_capacity(n);
        dirs.extend(u[..i].iter().cloned());
        dirs.push(v[i].clone());
        dirs.extend((i + 1..n).map(|j| Expr::sum(vec![u[j].clone(), v[j].clone()])));
        let base = Expr::sum(vec![x.clone(), w.clone(), u[i].clone()]);
        out.push(Expr::delta(dirs, func, base));
    }
    out
}

fn is_zero_sum(e: &Expr) -> bool {
    matches!(e, Expr::Sum { terms } if terms.is_empty())
}

/// Extends raw tangent terms for `α` (on `k` digits) to terms for `α ⋄ 1`,
/// by writing the new cuboid as `[ū, v̄]` and telescoping
/// `T_α(ū + v̄) − T_α(ū)` term by term.
pub fn extend_by_telescoping(raw_terms: &[Expr], sym: &Symbols) -> Vec<Expr> {
    let lift = |e: &Expr, digit: u8| {
        e.map_components(&|c, g| Expr::component(c.to_string(), g.diamond(digit)))
    };
    let mut out = Vec::new();
    for term in raw_terms {
        let Expr::Delta {
            directions, base, ..
        } = term
        else {
            panic!("raw tangent terms are differences");
        };
        let x = lift(base, 0);
        let w = lift(base, 1);
        let u: Vec<Expr> = directions.iter().map(|d| lift(d, 0)).collect();
        let v: Vec<Expr> = directions.iter().map(|d| lift(d, 1)).collect();
        out.extend(telescope(&sym.outer, &x, &w, &u, &v));
    }
    out
}

/// Higher-order terms of the tangent expansion: for each partition, the exact
/// difference between its full term and its leading term, expanded by
/// [`telescope`]. Terms with a zero direction vanish and are dropped.
pub fn tangent_remainder_terms(alpha: MultiIndex, sym: &Symbols) -> Vec<Expr> {
    let mut out = Vec::new();
    for fam in build_asets(alpha) {
        let zero = MultiIndex::zero(alpha.len());
        let rest = |key: MultiIndex, set: &[MultiIndex]| {
            Expr::sum(
                set.iter()
                    .filter(|g| **g != key)
                    .map(|g| Expr::component(sym.cuboid.clone(), *g))
                    .collect(),
            )
        };
        let x = Expr::component(sym.cuboid.clone(), zero);
        let w = rest(zero, &fam.base);
        let u: Vec<Expr> = fam
            .partition
            .blocks()
            .iter()
            .map(|b| Expr::component(sym.cuboid.clone(), *b))
            .collect();
        let v: Vec<Expr> = fam
            .partition
            .blocks()
            .iter()
            .zip(&fam.blocks)
            .map(|(b, s)| rest(*b, s))
            .collect();
        let terms = telescope(&sym.outer, &x, &w, &u, &v);
        if !is_zero_sum(&w) {
            out.push(terms[0].clone());
        }
        for (i, t) in terms.into_iter().enumerate().skip(1) {
            if !is_zero_sum(&v[i - 1]) {
                out.push(t);
            }
        }
    }
    out.into_iter().map(|t| canonicalize(&t)).collect()
}

/// Infinitesimal counterpart: each summand of `T^α f ū` is the list of blocks
/// of one partition, `D^n_{u_{α^1}, …, u_{α^n}} f(x)`. Blocks are listed in
/// multi-index order and summands are ordered by size, then by block list.
pub fn infinitesimal_terms(alpha: MultiIndex) -> Vec<Vec<MultiIndex>> {
    let mut terms: Vec<Vec<MultiIndex>> = crate::combinatorics::enumerate_partitions(alpha)
        .partitions
        .into_iter()
        .map(|p| {
            let mut blocks = p.blocks().to_vec();
            blocks.sort();
            blocks
        })
        .collect();
    terms.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    terms
}

/// Text of `Σ D^n_{u_{α^1}, …, u_{α^n}} f(x)` in the order of
/// [`infinitesimal_terms`].
pub fn render_infinitesimal(alpha: MultiIndex, sym: &Symbols) -> String {
    let terms: Vec<String> = infinitesimal_terms(alpha)
        .iter()
        .map(|blocks| {
            let dirs: Vec<String> = blocks
                .iter()
                .map(|b| render_text(&Expr::component(sym.cuboid.clone(), *b)))
                .collect();
            let head = match blocks.len() {
                0 => String::new(),
                1 => format!("D_{{{}}} ", dirs[0]),
                n => format!("D^{n}_{{{}}} ", dirs.join(", ")),
            };
            format!("{head}{}({})", sym.outer, sym.point)
        })
        .collect();
    terms.join(" + ")
}
