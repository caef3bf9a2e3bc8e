//! Multivariate polynomials with exact rational coefficients, and polynomial
//! maps `Q^p -> Q^q` with exact directional derivatives and tangent lifts.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;

use crate::combinatorics::MultiIndex;
use crate::map::VectorMap;
use crate::value::{format_rational, Rational, Value};

/// A polynomial in `nvars` variables, stored as exponent vector -> coefficient.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Polynomial::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        assert_eq!(exponents.len(), self.nvars, "exponent arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, x: &Value) -> Rational {
        assert_eq!(x.dim(), self.nvars, "evaluation point arity");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.coords().iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }

    /// `∂/∂x_i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * Rational::from_integer(e[i].into()));
        }
        out
    }

    /// Substitutes `inner[j]` for `x_j`. All of `inner` share one arity, which
    /// becomes the arity of the result.
    pub fn compose(&self, inner: &[Polynomial]) -> Polynomial {
        assert_eq!(inner.len(), self.nvars, "one substitute per variable");
        let m = inner.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<Polynomial>> = inner
            .iter()
            .map(|p| vec![Polynomial::constant(m, Rational::one()), p.clone()])
            .collect();
        let mut out = Polynomial::zero(m);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(m, c.clone());
            for (j, &k) in e.iter().enumerate() {
                while powers[j].len() <= k as usize {
                    let next = powers[j].last().unwrap().mul(&inner[j]);
                    powers[j].push(next);
                }
                if k > 0 {
                    t = t.mul(&powers[j][k as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// The same polynomial read in `nvars` variables, the new ones unused.
    pub fn widen(&self, nvars: usize) -> Polynomial {
        assert!(nvars >= self.nvars);
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(nvars, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Every monomial of total degree `≤ degree` gets a coefficient `p/q`
    /// with `p ∈ [-5, 5]` and `q ∈ [1, 3]`.
    pub fn random(rng: &mut impl Rng, nvars: usize, degree: u32) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for e in monomials(nvars, degree) {
            let c = Rational::new(
                rng.random_range(-5i64..=5).into(),
                rng.random_range(1i64..=3).into(),
            );
            out.add_term(e, c);
        }
        out
    }
}

/// All exponent vectors of total degree `≤ degree`, in lexicographic order.
fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=budget {
            prefix.push(k);
            go(prefix, left - 1, budget - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), nvars, degree, &mut out);
    out
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", format_rational(c))?;
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "·x{j}")?,
                    _ => write!(f, "·x{j}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// A polynomial map `Q^p -> Q^q`, one polynomial per output coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolynomialMap {
    dim_in: usize,
    components: Vec<Polynomial>,
}

impl PolynomialMap {
    pub fn new(dim_in: usize, components: Vec<Polynomial>) -> Self {
        for c in &components {
            assert_eq!(c.nvars(), dim_in, "component arity");
        }
        PolynomialMap { dim_in, components }
    }

    pub fn random(rng: &mut impl Rng, dim_in: usize, dim_out: usize, degree: u32) -> Self {
        PolynomialMap::new(
            dim_in,
            (0..dim_out)
                .map(|_| Polynomial::random(rng, dim_in, degree))
                .collect(),
        )
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Polynomial::degree).max()
    }

    /// `D_u F = Σ_j u_j ∂F/∂x_j`.
    pub fn directional_derivative(&self, u: &Value) -> PolynomialMap {
        assert_eq!(u.dim(), self.dim_in, "direction arity");
        let components = self
            .components
            .iter()
            .map(|p| {
                let mut acc = Polynomial::zero(self.dim_in);
                for (j, uj) in u.coords().iter().enumerate() {
                    if !uj.is_zero() {
                        acc = acc.add(&p.partial(j).scale(uj));
                    }
                }
                acc
            })
            .collect();
        PolynomialMap::new(self.dim_in, components)
    }

    /// `D_{d_1} ∘ ⋯ ∘ D_{d_n} F`.
    pub fn d_dirs(&self, dirs: &[Value]) -> PolynomialMap {
        dirs.iter()
            .fold(self.clone(), |acc, d| acc.directional_derivative(d))
    }

    /// `D_u^α F` for a binary `α`.
    pub fn d_alpha(&self, u: &[Value], alpha: MultiIndex) -> PolynomialMap {
        assert_eq!(u.len(), alpha.len(), "one direction per digit");
        let dirs: Vec<Value> = alpha.support().into_iter().map(|i| u[i].clone()).collect();
        self.d_dirs(&dirs)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PolynomialMap) -> PolynomialMap {
        assert_eq!(self.dim_in, inner.dim_out(), "composition arity");
        PolynomialMap::new(
            inner.dim_in,
            self.components
                .iter()
                .map(|p| p.compose(&inner.components))
                .collect(),
        )
    }

    /// `T F (y, z) = (F(y), D_z F(y))` as a map `Q^{2p} -> Q^{2q}`; `y` is the
    /// first half of the input, matching [`crate::Cuboid::pair`].
    pub fn tangent_lift(&self) -> PolynomialMap {
        let p = self.dim_in;
        let mut components: Vec<Polynomial> =
            self.components.iter().map(|c| c.widen(2 * p)).collect();
        for c in &self.components {
            let mut acc = Polynomial::zero(2 * p);
            for j in 0..p {
                acc = acc.add(
                    &c.partial(j)
                        .widen(2 * p)
                        .mul(&Polynomial::var(2 * p, p + j)),
                );
            }
            components.push(acc);
        }
        PolynomialMap::new(2 * p, components)
    }

    /// `T^k F`, acting on cuboids flattened component by component.
    pub fn tangent_power(&self, k: usize) -> PolynomialMap {
        (0..k).fold(self.clone(), |acc, _| acc.tangent_lift())
    }
}

impl VectorMap for PolynomialMap {
    fn dim_in(&self) -> usize {
        self.dim_in
    }

    fn dim_out(&self) -> usize {
        self.components.len()
    }

    fn apply(&self, x: &Value) -> Value {
        self.components.iter().map(|p| p.eval(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::oracle::{random_int_value, rng_from};
    use crate::value::int;

    #[test]
    fn derivative_of_a_square() {
        // p(x) = x², D_h p = 2hx
        let x = Polynomial::var(1, 0);
        let p = PolynomialMap::new(1, vec![x.mul(&x)]);
        let d = p.directional_derivative(&Value::from_ints(&[3]));
        assert_eq!(d.components()[0], x.scale(&int(6)));
    }

    #[test]
    fn zero_alpha_leaves_the_map_unchanged() {
        let p = PolynomialMap::random(&mut rng_from(1), 2, 2, 3);
        let u = vec![Value::from_ints(&[1, 2]), Value::from_ints(&[0, 1])];
        assert_eq!(p.d_alpha(&u, "00".parse().unwrap()), p);
    }

    #[test]
    fn mixed_derivatives_commute() {
        let mut rng = rng_from(2);
        for _ in 0..20 {
            let p = PolynomialMap::random(&mut rng, 2, 2, 3);
            let a = random_int_value(&mut rng, 2);
            let b = random_int_value(&mut rng, 2);
            assert_eq!(
                p.directional_derivative(&a).directional_derivative(&b),
                p.directional_derivative(&b).directional_derivative(&a)
            );
        }
    }

    #[test]
    fn composition_evaluates_pointwise() {
        let mut rng = rng_from(3);
        let f = PolynomialMap::random(&mut rng, 2, 2, 2);
        let g = PolynomialMap::random(&mut rng, 3, 2, 2);
        let x = random_int_value(&mut rng, 3);
        assert_eq!(f.compose(&g).apply(&x), f.apply(&g.apply(&x)));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let s = x.add(&y).mul(&x.sub(&y));
        let expect = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(s, expect);
        assert_eq!(s.terms().count(), 2);
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn tangent_lift_is_value_and_derivative() {
        let mut rng = rng_from(4);
        let f = PolynomialMap::random(&mut rng, 2, 2, 3);
        let y = random_int_value(&mut rng, 2);
        let z = random_int_value(&mut rng, 2);
        let mut input = y.clone().into_coords();
        input.extend(z.clone().into_coords());
        let out = f.tangent_lift().apply(&Value::new(input));
        let mut expect = f.apply(&y).into_coords();
        expect.extend(f.directional_derivative(&z).apply(&y).into_coords());
        assert_eq!(out, Value::new(expect));
    }

    #[test]
    fn monomial_count() {
        // C(n + d, d)
        assert_eq!(monomials(2, 3).len(), 10);
        assert_eq!(monomials(3, 2).len(), 10);
        assert_eq!(monomials(1, 4).len(), 5);
    }
}
