//! Empirical order of the remainder `Δ_{εw}^α (f∘g)(x) − main part`.
//!
//! Both sides are evaluated exactly; only the final norm and the regression
//! use floating point.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::MultiIndex;
use crate::map::{Compose, VectorMap};
use crate::symbolic::{main_part_with, Symbols};
use crate::value::{Rational, Value};

use super::eval::{eval_delta, eval_expr, Bindings};
use super::oracle::{derive_seed, random_int_value, rng_from};
use super::polynomial::PolynomialMap;
use super::report::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalingOutcome {
    Slope(f64),
    /// The remainder vanished at the largest `ε` (or at all but one `ε`).
    Degenerate,
}

/// `ε = 2^{-j}` for `j = from..=to`, largest first.
pub fn dyadic_grid(from: u32, to: u32) -> Vec<Rational> {
    (from..=to)
        .map(|j| Rational::new(BigInt::one(), BigInt::one() << j))
        .collect()
}

/// Least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// The remainder at one `ε`, computed exactly.
pub fn remainder<F, G>(
    f: &F,
    g: &G,
    x: &Value,
    w: &[Value],
    alpha: MultiIndex,
    eps: &Rational,
) -> Value
where
    F: VectorMap,
    G: VectorMap,
{
    let sym = Symbols::default();
    let u: Vec<Value> = w.iter().map(|wi| wi.scale(eps)).collect();
    let lhs = eval_delta(&Compose::new(f, g), x, &u, alpha).expect("one vector per digit");
    let mut b = Bindings::new()
        .map(&sym.outer, f)
        .map(&sym.inner, g)
        .point(&sym.point, x.clone());
    for (i, ui) in u.iter().enumerate() {
        b = b.vector(&sym.vector_name(i), ui.clone());
    }
    let main = eval_expr(&main_part_with(alpha, &sym), &b).expect("all symbols bound");
    &lhs - &main
}

/// Log-log slope of `‖r(ε)‖` over `eps`. Points where the remainder is
/// exactly zero are skipped.
pub fn scaling_slope<F, G>(
    f: &F,
    g: &G,
    x: &Value,
    w: &[Value],
    alpha: MultiIndex,
    eps: &[Rational],
) -> ScalingOutcome
where
    F: VectorMap,
    G: VectorMap,
{
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, e) in eps.iter().enumerate() {
        let r = remainder(f, g, x, w, alpha, e);
        if r.is_zero() {
            if i == 0 {
                return ScalingOutcome::Degenerate;
            }
            continue;
        }
        xs.push(rational_to_f64(e).ln());
        ys.push(r.norm_f64().ln());
    }
    if xs.len() < 2 {
        return ScalingOutcome::Degenerate;
    }
    ScalingOutcome::Slope(least_squares_slope(&xs, &ys))
}

fn rational_to_f64(r: &Rational) -> f64 {
    Value::new(vec![r.clone()]).norm_f64()
}

/// A nonzero integer vector from `[-5, 5]^dim`, divided by its largest
/// coordinate magnitude so that `ε` alone sets the step size.
pub fn random_direction(rng: &mut impl rand::Rng, dim: usize) -> Value {
    loop {
        let v = random_int_value(rng, dim);
        let max = v.coords().iter().map(|c| c.abs()).max().expect("dim >= 1");
        if !max.is_zero() {
            return v.scale(&max.recip());
        }
    }
}

/// Scaling parameters for [`scaling_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingConfig {
    pub seed: u64,
    pub trials: usize,
    pub alphas: Vec<MultiIndex>,
    pub dim: usize,
    /// Exponents `j` of the grid `ε = 2^{-j}`.
    pub eps_from: u32,
    pub eps_to: u32,
    pub tolerance: f64,
}

impl Default for ScalingConfig {
    fn default() -> Self {
        ScalingConfig {
            seed: 0,
            trials: 5,
            alphas: vec![MultiIndex::ones(2), MultiIndex::ones(3)],
            dim: 2,
            eps_from: 3,
            eps_to: 10,
            tolerance: 0.2,
        }
    }
}

/// Random polynomial `f, g` of degree `|α| + 1` and unit-scale directions; a
/// trial fails when its slope
/// is below `|α| + 1 − tolerance`. The report carries the smallest slope.
pub fn scaling_suite(cfg: &ScalingConfig) -> VerificationReport {
    let mut report = VerificationReport::new("remainder-order", false);
    let eps = dyadic_grid(cfg.eps_from, cfg.eps_to);
    for &alpha in &cfg.alphas {
        let n = alpha.order();
        let degree = n as u32 + 1;
        let label = format!("scaling/{alpha}");
        let outcomes: Vec<(u64, ScalingOutcome)> = (0..cfg.trials as u64)
            .map(|t| {
                let s = derive_seed(cfg.seed, &label, t);
                let mut rng = rng_from(s);
                let f = PolynomialMap::random(&mut rng, cfg.dim, cfg.dim, degree);
                let g = PolynomialMap::random(&mut rng, cfg.dim, cfg.dim, degree);
                let x = random_int_value(&mut rng, cfg.dim);
                let w: Vec<Value> = (0..alpha.len())
                    .map(|_| random_direction(&mut rng, cfg.dim))
                    .collect();
                (s, scaling_slope(&f, &g, &x, &w, alpha, &eps))
            })
            .collect();
        let threshold = (n + 1) as f64 - cfg.tolerance;
        for (s, outcome) in outcomes {
            match outcome {
                ScalingOutcome::Degenerate => {
                    report.degenerate += 1;
                    report.record(s, alpha, Ok(()));
                }
                ScalingOutcome::Slope(slope) => {
                    report.slope = Some(report.slope.map_or(slope, |m| m.min(slope)));
                    let res = if slope >= threshold {
                        Ok(())
                    } else {
                        Err(format!("slope {slope:.4} < {threshold:.4}"))
                    };
                    report.record(s, alpha, res);
                }
            }
        }
    }
    report
}
