use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::combinatorics::MultiIndex;

/// A symbolic finite-difference expression.
///
/// `Delta { alpha, directions, func, base }` stands for
/// `Δ^α_{(t_1, …, t_k)} func(base)`, i.e. `(Δ_{t_1})^{α_1} ∘ ⋯ ∘ (Δ_{t_k})^{α_k}`
/// applied to `func` at `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expr {
    Point {
        name: String,
    },
    Vector {
        name: String,
    },
    Component {
        cuboid: String,
        index: MultiIndex,
    },
    Sum {
        terms: Vec<Expr>,
    },
    App {
        func: String,
        arg: Box<Expr>,
    },
    Delta {
        alpha: Vec<u32>,
        directions: Vec<Expr>,
        func: String,
        base: Box<Expr>,
    },
}

impl Expr {
    pub fn point(name: impl Into<String>) -> Expr {
        Expr::Point { name: name.into() }
    }

    pub fn vector(name: impl Into<String>) -> Expr {
        Expr::Vector { name: name.into() }
    }

    pub fn component(cuboid: impl Into<String>, index: MultiIndex) -> Expr {
        Expr::Component {
            cuboid: cuboid.into(),
            index,
        }
    }

    pub fn sum(terms: Vec<Expr>) -> Expr {
        Expr::Sum { terms }
    }

    pub fn zero() -> Expr {
        Expr::Sum { terms: Vec::new() }
    }

    pub fn app(func: impl Into<String>, arg: Expr) -> Expr {
        Expr::App {
            func: func.into(),
            arg: Box::new(arg),
        }
    }

    /// `Δ^r_{d_1, …, d_r} func(base)` with every exponent equal to one.
    pub fn delta(directions: Vec<Expr>, func: impl Into<String>, base: Expr) -> Expr {
        Expr::Delta {
            alpha: vec![1; directions.len()],
            directions,
            func: func.into(),
            base: Box::new(base),
        }
    }

    pub fn delta_alpha(
        alpha: Vec<u32>,
        directions: Vec<Expr>,
        func: impl Into<String>,
        base: Expr,
    ) -> Expr {
        assert_eq!(alpha.len(), directions.len(), "one exponent per direction");
        Expr::Delta {
            alpha,
            directions,
            func: func.into(),
            base: Box::new(base),
        }
    }

    /// Top-level summands (a non-sum is its own single summand).
    pub fn summands(&self) -> &[Expr] {
        match self {
            Expr::Sum { terms } => terms,
            other => std::slice::from_ref(other),
        }
    }

    /// Order of smallness: points and applications are 0, vectors 1, cuboid
    /// components `|γ|`, sums the minimum, differences `Σ α_i ord(t_i)`.
    ///
    /// The empty sum is the zero vector, which is small of every order; it is
    /// given `usize::MAX` and arithmetic saturates.
    pub fn ord(&self) -> usize {
        match self {
            Expr::Point { .. } | Expr::App { .. } => 0,
            Expr::Vector { .. } => 1,
            Expr::Component { index, .. } => index.order(),
            Expr::Sum { terms } => terms.iter().map(Expr::ord).min().unwrap_or(usize::MAX),
            Expr::Delta {
                alpha, directions, ..
            } => alpha.iter().zip(directions).fold(0usize, |acc, (&a, d)| {
                acc.saturating_add((a as usize).saturating_mul(d.ord()))
            }),
        }
    }

    /// Replaces every cuboid component using `f`.
    pub fn map_components(&self, f: &impl Fn(&str, MultiIndex) -> Expr) -> Expr {
        match self {
            Expr::Component { cuboid, index } => f(cuboid, *index),
            Expr::Point { .. } | Expr::Vector { .. } => self.clone(),
            Expr::Sum { terms } => Expr::sum(terms.iter().map(|t| t.map_components(f)).collect()),
            Expr::App { func, arg } => Expr::app(func.clone(), arg.map_components(f)),
            Expr::Delta {
                alpha,
                directions,
                func,
                base,
            } => Expr::delta_alpha(
                alpha.clone(),
                directions.iter().map(|d| d.map_components(f)).collect(),
                func.clone(),
                base.map_components(f),
            ),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Expr::Point { .. } => 0,
            Expr::Vector { .. } => 1,
            Expr::Component { .. } => 2,
            Expr::App { .. } => 3,
            Expr::Delta { .. } => 4,
            Expr::Sum { .. } => 5,
        }
    }

    /// The fixed total order used for sorting sum operands and directions:
    /// `ord` first, then node kind, then structure. Cuboid components of equal
    /// order compare by their support position lists.
    pub fn canonical_cmp(&self, other: &Expr) -> Ordering {
        self.ord()
            .cmp(&other.ord())
            .then(self.rank().cmp(&other.rank()))
            .then_with(|| self.structural_cmp(other))
    }

    fn structural_cmp(&self, other: &Expr) -> Ordering {
        match (self, other) {
            (Expr::Point { name: a }, Expr::Point { name: b })
            | (Expr::Vector { name: a }, Expr::Vector { name: b }) => natural_cmp(a, b),
            (
                Expr::Component {
                    cuboid: ca,
                    index: ia,
                },
                Expr::Component {
                    cuboid: cb,
                    index: ib,
                },
            ) => natural_cmp(ca, cb).then(ia.cmp(ib)),
            (Expr::App { func: fa, arg: aa }, Expr::App { func: fb, arg: ab }) => {
                natural_cmp(fa, fb).then_with(|| aa.canonical_cmp(ab))
            }
            (
                Expr::Delta {
                    alpha: xa,
                    directions: da,
                    func: fa,
                    base: ba,
                },
                Expr::Delta {
                    alpha: xb,
                    directions: db,
                    func: fb,
                    base: bb,
                },
            ) => {
                let total = |x: &[u32]| x.iter().map(|&a| a as u64).sum::<u64>();
                total(xa)
                    .cmp(&total(xb))
                    .then(da.len().cmp(&db.len()))
                    .then_with(|| {
                        for ((ea, a), (eb, b)) in xa.iter().zip(da).zip(xb.iter().zip(db)) {
                            let c = a.canonical_cmp(b).then(ea.cmp(eb));
                            if c != Ordering::Equal {
                                return c;
                            }
                        }
                        Ordering::Equal
                    })
                    .then_with(|| natural_cmp(fa, fb))
                    .then_with(|| ba.canonical_cmp(bb))
            }
            (Expr::Sum { terms: ta }, Expr::Sum { terms: tb }) => {
                ta.len().cmp(&tb.len()).then_with(|| {
                    ta.iter()
                        .zip(tb)
                        .map(|(a, b)| a.canonical_cmp(b))
                        .find(|c| *c != Ordering::Equal)
                        .unwrap_or(Ordering::Equal)
                })
            }
            _ => Ordering::Equal,
        }
    }
}

/// Compares names so that embedded digit runs sort numerically (`v_2 < v_10`).
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    if a.is_empty() || b.is_empty() {
        return a.cmp(b);
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, xa), (db, xb)) in ca.iter().zip(&cb) {
        let c = match (da, db) {
            (true, true) => {
                let ta = xa.trim_start_matches('0');
                let tb = xb.trim_start_matches('0');
                ta.len()
                    .cmp(&tb.len())
                    .then(ta.cmp(tb))
                    .then(xa.len().cmp(&xb.len()))
            }
            _ => xa.cmp(xb),
        };
        if c != Ordering::Equal {
            return c;
        }
    }
    ca.len().cmp(&cb.len())
}

/// Normal form: nested sums are flattened and sorted, singleton sums are
/// unwrapped, directions of a difference are sorted (difference operators
/// commute) with equal directions merged into one exponent, zero exponents
/// are dropped, and a difference with no directions left becomes an
/// application.
pub fn canonicalize(e: &Expr) -> Expr {
    match e {
        Expr::Point { .. } | Expr::Vector { .. } | Expr::Component { .. } => e.clone(),
        Expr::Sum { terms } => {
            let mut flat = Vec::with_capacity(terms.len());
            for t in terms {
                match canonicalize(t) {
                    Expr::Sum { terms } => flat.extend(terms),
                    other => flat.push(other),
                }
            }
            flat.sort_by(Expr::canonical_cmp);
            if flat.len() == 1 {
                flat.pop().unwrap()
            } else {
                Expr::Sum { terms: flat }
            }
        }
        Expr::App { func, arg } => Expr::app(func.clone(), canonicalize(arg)),
        Expr::Delta {
            alpha,
            directions,
            func,
            base,
        } => {
            let mut pairs: Vec<(u32, Expr)> = alpha
                .iter()
                .zip(directions)
                .filter(|(a, _)| **a > 0)
                .map(|(a, d)| (*a, canonicalize(d)))
                .collect();
            pairs.sort_by(|a, b| a.1.canonical_cmp(&b.1));
            let mut merged: Vec<(u32, Expr)> = Vec::with_capacity(pairs.len());
            for (a, d) in pairs {
                match merged.last_mut() {
                    Some((ea, last)) if *last == d => *ea += a,
                    _ => merged.push((a, d)),
                }
            }
            let base = canonicalize(base);
            if merged.is_empty() {
                return Expr::app(func.clone(), base);
            }
            let (alpha, directions) = merged.into_iter().unzip();
            Expr::delta_alpha(alpha, directions, func.clone(), base)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(s: &str) -> MultiIndex {
        s.parse().unwrap()
    }

    fn dg(vs: &[&str]) -> Expr {
        Expr::delta(
            vs.iter().map(|v| Expr::vector(*v)).collect(),
            "g",
            Expr::point("x"),
        )
    }

    #[test]
    fn ord_rules() {
        assert_eq!(Expr::vector("u_1").ord(), 1);
        assert_eq!(Expr::point("x").ord(), 0);
        assert_eq!(Expr::app("f", Expr::point("x")).ord(), 0);
        assert_eq!(
            Expr::sum(vec![Expr::point("x"), Expr::vector("u_1")]).ord(),
            0
        );
        let e = Expr::delta(
            vec![dg(&["v_1"]), dg(&["v_2", "v_3"])],
            "f",
            Expr::point("s"),
        );
        assert_eq!(e.ord(), 3);
        assert_eq!(Expr::component("u", mi("101")).ord(), 2);
        assert_eq!(
            Expr::delta_alpha(
                vec![2, 0],
                vec![Expr::vector("a"), Expr::vector("b")],
                "f",
                Expr::point("x")
            )
            .ord(),
            2
        );
        assert_eq!(Expr::zero().ord(), usize::MAX);
    }

    #[test]
    fn natural_order_of_names() {
        assert_eq!(natural_cmp("v_2", "v_10"), Ordering::Less);
        assert_eq!(natural_cmp("v_1", "v_1"), Ordering::Equal);
        assert_eq!(natural_cmp("a", "b"), Ordering::Less);
        assert_eq!(natural_cmp("x", "x1"), Ordering::Less);
    }

    #[test]
    fn sum_operands_are_sorted() {
        let e = Expr::sum(vec![Expr::vector("u_2"), Expr::vector("u_1")]);
        assert_eq!(
            canonicalize(&e),
            Expr::sum(vec![Expr::vector("u_1"), Expr::vector("u_2")])
        );
    }

    #[test]
    fn directions_are_sorted_and_merged() {
        let (a, b) = (Expr::vector("a"), Expr::vector("b"));
        let s = Expr::point("s");
        let e = Expr::delta(vec![b.clone(), a.clone()], "f", s.clone());
        assert_eq!(
            canonicalize(&e),
            Expr::delta(vec![a.clone(), b.clone()], "f", s.clone())
        );
        let e = Expr::delta(vec![a.clone(), b.clone(), a.clone()], "f", s.clone());
        assert_eq!(
            canonicalize(&e),
            Expr::delta_alpha(vec![2, 1], vec![a.clone(), b], "f", s.clone())
        );
    }

    #[test]
    fn zero_exponents_collapse_to_application() {
        let e = Expr::delta_alpha(
            vec![0, 0],
            vec![Expr::vector("a"), Expr::vector("b")],
            "g",
            Expr::point("x"),
        );
        assert_eq!(canonicalize(&e), Expr::app("g", Expr::point("x")));
    }

    #[test]
    fn nested_sums_flatten() {
        let e = Expr::sum(vec![
            Expr::sum(vec![Expr::vector("c"), Expr::sum(vec![Expr::vector("a")])]),
            Expr::vector("b"),
        ]);
        assert_eq!(
            canonicalize(&e),
            Expr::sum(vec![
                Expr::vector("a"),
                Expr::vector("b"),
                Expr::vector("c")
            ])
        );
        assert_eq!(canonicalize(&Expr::zero()), Expr::zero());
    }

    #[test]
    fn component_order_by_grade_then_positions() {
        let mut v: Vec<Expr> = ["011", "110", "000", "001", "101", "100", "010"]
            .iter()
            .map(|s| Expr::component("u", mi(s)))
            .collect();
        v.sort_by(Expr::canonical_cmp);
        let shown: Vec<String> = v
            .iter()
            .map(|e| match e {
                Expr::Component { index, .. } => index.to_string(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(shown, ["000", "100", "010", "001", "110", "101", "011"]);
    }
}
