//! Brute-force finite differences and an interpreter for [`Expr`].

use std::collections::HashMap;

use crate::combinatorics::MultiIndex;
use crate::cuboid::Cuboid;
use crate::error::{Error, Result};
use crate::map::VectorMap;
use crate::symbolic::Expr;
use crate::value::Value;

/// `Δ_{d_1} ∘ ⋯ ∘ Δ_{d_n} f(x) = Σ_{S ⊆ {1..n}} (-1)^{n-|S|} f(x + Σ_{i∈S} d_i)`.
pub fn eval_delta_dirs<F: VectorMap + ?Sized>(f: &F, x: &Value, dirs: &[Value]) -> Value {
    let n = dirs.len();
    assert!(n < 63, "too many directions");
    let mut acc = Value::zeros(f.dim_out());
    for mask in 0u64..1 << n {
        let mut point = x.clone();
        for (i, d) in dirs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                point.add_assign(d);
            }
        }
        let y = f.apply(&point);
        if (n - mask.count_ones() as usize).is_multiple_of(2) {
            acc.add_assign(&y);
        } else {
            acc.sub_assign(&y);
        }
    }
    acc
}

/// `Δ_u^α f(x) = Σ_{β≤α} (-1)^{|α|-|β|} f(x + β·u)` for a binary `α`.
pub fn eval_delta<F: VectorMap + ?Sized>(
    f: &F,
    x: &Value,
    u: &[Value],
    alpha: MultiIndex,
) -> Result<Value> {
    if u.len() != alpha.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: alpha.len(),
        });
    }
    for v in u {
        if v.dim() != x.dim() {
            return Err(Error::DimensionMismatch {
                expected: x.dim(),
                found: v.dim(),
            });
        }
    }
    let selected: Vec<Value> = alpha.support().into_iter().map(|i| u[i].clone()).collect();
    Ok(eval_delta_dirs(f, x, &selected))
}

/// Symbol table for [`eval_expr`].
#[derive(Default)]
pub struct Bindings<'a> {
    pub points: HashMap<String, Value>,
    pub vectors: HashMap<String, Value>,
    pub cuboids: HashMap<String, Cuboid>,
    pub maps: HashMap<String, &'a dyn VectorMap>,
    /// Dimension assigned to a bare empty sum.
    pub zero_dim: Option<usize>,
}

impl<'a> Bindings<'a> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn point(mut self, name: &str, v: Value) -> Self {
        self.points.insert(name.to_string(), v);
        self
    }

    pub fn vector(mut self, name: &str, v: Value) -> Self {
        self.vectors.insert(name.to_string(), v);
        self
    }

    pub fn cuboid(mut self, name: &str, c: Cuboid) -> Self {
        self.cuboids.insert(name.to_string(), c);
        self
    }

    pub fn map(mut self, name: &str, f: &'a dyn VectorMap) -> Self {
        self.maps.insert(name.to_string(), f);
        self
    }

    fn lookup_map(&self, name: &str) -> Result<&'a dyn VectorMap> {
        self.maps
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnboundSymbol(name.to_string()))
    }
}

fn check_domain(f: &dyn VectorMap, x: &Value) -> Result<()> {
    if f.dim_in() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim_in(),
            found: x.dim(),
        });
    }
    Ok(())
}

/// Evaluates `e` exactly. Differences are expanded by brute force over all
/// subsets of their (repeated) directions.
pub fn eval_expr(e: &Expr, b: &Bindings<'_>) -> Result<Value> {
    eval_in(e, b, b.zero_dim)
}

fn eval_in(e: &Expr, b: &Bindings<'_>, zero_dim: Option<usize>) -> Result<Value> {
    match e {
        Expr::Point { name } => b
            .points
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnboundSymbol(name.clone())),
        Expr::Vector { name } => b
            .vectors
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnboundSymbol(name.clone())),
        Expr::Component { cuboid, index } => {
            let c = b
                .cuboids
                .get(cuboid)
                .ok_or_else(|| Error::UnboundSymbol(cuboid.clone()))?;
            if c.dim() != index.len() {
                return Err(Error::LengthMismatch {
                    left: index.len(),
                    right: c.dim(),
                });
            }
            Ok(c.get(*index).clone())
        }
        Expr::Sum { terms } => {
            let mut it = terms.iter();
            let Some(first) = it.next() else {
                return zero_dim.map(Value::zeros).ok_or(Error::EmptySum);
            };
            let mut acc = eval_in(first, b, zero_dim)?;
            let dim = Some(acc.dim());
            for t in it {
                acc = acc.checked_add(&eval_in(t, b, dim)?)?;
            }
            Ok(acc)
        }
        Expr::App { func, arg } => {
            let f = b.lookup_map(func)?;
            let x = eval_in(arg, b, Some(f.dim_in()))?;
            check_domain(f, &x)?;
            Ok(f.apply(&x))
        }
        Expr::Delta {
            alpha,
            directions,
            func,
            base,
        } => {
            let f = b.lookup_map(func)?;
            let dim = Some(f.dim_in());
            let x = eval_in(base, b, dim)?;
            check_domain(f, &x)?;
            let mut dirs = Vec::new();
            for (&a, d) in alpha.iter().zip(directions) {
                let v = eval_in(d, b, dim)?;
                if v.dim() != x.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: x.dim(),
                        found: v.dim(),
                    });
                }
                dirs.extend(std::iter::repeat_n(v, a as usize));
            }
            Ok(eval_delta_dirs(f, &x, &dirs))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::FnMap;
    use crate::numeric::oracle::RandomRationalMap;

    fn square() -> FnMap<impl Fn(&Value) -> Value> {
        FnMap::new(1, 1, |x: &Value| Value::new(vec![&x[0] * &x[0]]))
    }

    #[test]
    fn first_difference() {
        let f = RandomRationalMap::new(3, 2, 2);
        let x = Value::from_ints(&[1, 2]);
        let u = Value::from_ints(&[0, 3]);
        let expect = &f.apply(&(&x + &u)) - &f.apply(&x);
        assert_eq!(
            eval_delta(&f, &x, &[u], "1".parse().unwrap()).unwrap(),
            expect
        );
    }

    #[test]
    fn second_difference_by_hand() {
        let f = RandomRationalMap::new(4, 2, 1);
        let x = Value::from_ints(&[1, 2]);
        let u1 = Value::from_ints(&[-1, 3]);
        let u2 = Value::from_ints(&[2, 2]);
        let mut expect = f.apply(&(&(&x + &u1) + &u2));
        expect.sub_assign(&f.apply(&(&x + &u1)));
        expect.sub_assign(&f.apply(&(&x + &u2)));
        expect.add_assign(&f.apply(&x));
        assert_eq!(
            eval_delta(&f, &x, &[u1, u2], "11".parse().unwrap()).unwrap(),
            expect
        );
    }

    #[test]
    fn zero_alpha_is_plain_evaluation() {
        let f = square();
        let x = Value::from_ints(&[3]);
        assert_eq!(
            eval_delta(&f, &x, &[Value::from_ints(&[1])], "0".parse().unwrap()).unwrap(),
            Value::from_ints(&[9])
        );
    }

    #[test]
    fn interpreter_errors() {
        let f = square();
        let b = Bindings::new()
            .map("f", &f)
            .point("x", Value::from_ints(&[1]));
        assert_eq!(
            eval_expr(&Expr::app("g", Expr::point("x")), &b),
            Err(Error::UnboundSymbol("g".into()))
        );
        assert_eq!(
            eval_expr(&Expr::app("f", Expr::point("y")), &b),
            Err(Error::UnboundSymbol("y".into()))
        );
        assert_eq!(eval_expr(&Expr::zero(), &b), Err(Error::EmptySum));
        let b = b.point("z", Value::from_ints(&[1, 1]));
        assert!(matches!(
            eval_expr(&Expr::app("f", Expr::point("z")), &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn empty_sum_inside_an_application_takes_the_domain_dimension() {
        let f = square();
        let b = Bindings::new().map("f", &f);
        assert_eq!(
            eval_expr(&Expr::app("f", Expr::zero()), &b).unwrap(),
            Value::from_ints(&[0])
        );
    }

    #[test]
    fn repeated_direction_exponent() {
        // Δ_h^2 x² = 2h²
        let f = square();
        let b = Bindings::new()
            .map("f", &f)
            .point("x", Value::from_ints(&[5]))
            .vector("h", Value::from_ints(&[3]));
        let e = Expr::delta_alpha(vec![2], vec![Expr::vector("h")], "f", Expr::point("x"));
        assert_eq!(eval_expr(&e, &b).unwrap(), Value::from_ints(&[18]));
    }
}
