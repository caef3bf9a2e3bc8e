//! Randomized exact verification of the discrete identities.
//!
//! Every trial draws its inputs from its own derived seed,
//! `derive_seed(root, label, trial)`, and owns its random maps. Trials run in
//! parallel; results are collected in trial order, so reports do not depend
//! on scheduling.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use rayon::prelude::*;

use crate::combinatorics::{enumerate_partitions, MultiIndex};
use crate::cuboid::{Cuboid, PointedDirections};
use crate::map::Compose;
use crate::symbolic::{
    expand_chain, expand_tangent, tangent_main_part, tangent_remainder_terms, telescope, Expr,
    Symbols,
};
use crate::value::Value;

use super::eval::{eval_delta, eval_delta_dirs, eval_expr, Bindings};
use super::oracle::{derive_seed, random_cuboid, random_int_value, rng_from, RandomRationalMap};
use super::report::VerificationReport;

/// Shared knobs of the randomized suites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    /// Largest number of digits tested by the expansion suites.
    pub kmax: usize,
    /// Space dimensions swept by the expansion suites; all spaces share one.
    pub dims: Vec<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            trials: 50,
            kmax: 5,
            dims: vec![2],
        }
    }
}

/// Runs `trial` for indices `0..n` in parallel and records the outcomes in
/// index order. `trial` returns the α label and the outcome.
pub(crate) fn run_trials<F>(
    report: &mut VerificationReport,
    root: u64,
    label: &str,
    n: usize,
    trial: F,
) where
    F: Fn(u64) -> (String, Result<(), String>) + Sync,
{
    let outcomes: Vec<(u64, String, Result<(), String>)> = (0..n as u64)
        .into_par_iter()
        .map(|t| {
            let seed = derive_seed(root, label, t);
            let (alpha, res) = trial(seed);
            (seed, alpha, res)
        })
        .collect();
    for (seed, alpha, res) in outcomes {
        report.record(seed, alpha, res);
    }
}

pub(crate) fn compare(lhs: &Value, rhs: &Value) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("lhs=[{}] rhs=[{}]", lhs.encode(), rhs.encode()))
    }
}

fn encode_all(vs: &[Value]) -> String {
    vs.iter()
        .map(|v| format!("[{}]", v.encode()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn random_vectors(rng: &mut impl Rng, k: usize, dim: usize) -> Vec<Value> {
    (0..k).map(|_| random_int_value(rng, dim)).collect()
}

/// Evaluated chain expansion against the brute-force difference of `f ∘ g`,
/// for one `α` over `trials` random instances on `dim`-dimensional spaces.
pub fn chain_oracle(alpha: MultiIndex, seed: u64, trials: usize, dim: usize) -> VerificationReport {
    let mut report = VerificationReport::new("chain-expansion", true);
    let sym = Symbols::default();
    let expr = expand_chain(alpha);
    let label = format!("chain/{alpha}/{dim}");
    run_trials(&mut report, seed, &label, trials, |s| {
        let f = RandomRationalMap::new(derive_seed(s, "f", 0), dim, dim);
        let g = RandomRationalMap::new(derive_seed(s, "g", 0), dim, dim);
        let mut rng = rng_from(s);
        let x = random_int_value(&mut rng, dim);
        let v = random_vectors(&mut rng, alpha.len(), dim);
        let mut b = Bindings::new()
            .map(&sym.outer, &f)
            .map(&sym.inner, &g)
            .point(&sym.point, x.clone());
        for (i, vi) in v.iter().enumerate() {
            b = b.vector(&sym.vector_name(i), vi.clone());
        }
        let res = match eval_expr(&expr, &b) {
            Ok(lhs) => {
                let rhs = eval_delta(&Compose::new(&f, &g), &x, &v, alpha)
                    .expect("lengths agree by construction");
                compare(&lhs, &rhs)
                    .map_err(|e| format!("{e} x=[{}] v={}", x.encode(), encode_all(&v)))
            }
            Err(e) => Err(e.to_string()),
        };
        (alpha.to_string(), res)
    });
    report
}

/// Chain expansion oracle for the all-ones index of every length `1..=kmax`.
pub fn chain_suite(cfg: &SuiteConfig) -> VerificationReport {
    let mut report = VerificationReport::new("chain-expansion", true);
    for &dim in &cfg.dims {
        for k in 1..=cfg.kmax {
            report.merge(chain_oracle(MultiIndex::ones(k), cfg.seed, cfg.trials, dim));
        }
    }
    report
}

/// Evaluated tangent expansion against component `α` of `Δ ∘ f_* ∘ Δ⁻¹`.
pub fn tangent_oracle(
    alpha: MultiIndex,
    seed: u64,
    trials: usize,
    dim: usize,
) -> VerificationReport {
    let mut report = VerificationReport::new("tangent-expansion", true);
    let sym = Symbols::default();
    let expr = expand_tangent(alpha);
    let label = format!("tangent/{alpha}/{dim}");
    run_trials(&mut report, seed, &label, trials, |s| {
        let f = RandomRationalMap::new(derive_seed(s, "f", 0), dim, dim);
        let mut rng = rng_from(s);
        let u = random_cuboid(&mut rng, alpha.len(), dim);
        let b = Bindings::new()
            .map(&sym.outer, &f)
            .cuboid(&sym.cuboid, u.clone());
        let res = match eval_expr(&expr, &b) {
            Ok(lhs) => {
                let t = u.discrete_tangent(&f).expect("dimensions agree");
                compare(&lhs, t.get(alpha))
            }
            Err(e) => Err(e.to_string()),
        };
        (alpha.to_string(), res)
    });
    report
}

/// Tangent expansion oracle for the all-ones index of every length `1..=kmax`.
pub fn tangent_suite(cfg: &SuiteConfig) -> VerificationReport {
    let mut report = VerificationReport::new("tangent-expansion", true);
    for &dim in &cfg.dims {
        for k in 1..=cfg.kmax {
            report.merge(tangent_oracle(
                MultiIndex::ones(k),
                cfg.seed,
                cfg.trials,
                dim,
            ));
        }
    }
    report
}

/// The chain expansion evaluates like the tangent expansion on the cuboid
/// `T_k(g)⟨⟨x; v⟩⟩`.
pub fn substitution(cfg: &SuiteConfig) -> VerificationReport {
    let mut report = VerificationReport::new("substitution", true);
    let sym = Symbols::default();
    for &dim in &cfg.dims {
        for k in 1..=cfg.kmax {
            let alpha = MultiIndex::ones(k);
            let chain = expand_chain(alpha);
            let tangent = expand_tangent(alpha);
            let label = format!("substitution/{alpha}/{dim}");
            run_trials(&mut report, cfg.seed, &label, cfg.trials, |s| {
                let f = RandomRationalMap::new(derive_seed(s, "f", 0), dim, dim);
                let g = RandomRationalMap::new(derive_seed(s, "g", 0), dim, dim);
                let mut rng = rng_from(s);
                let x = random_int_value(&mut rng, dim);
                let v = random_vectors(&mut rng, k, dim);
                let injected =
                    Cuboid::inject(&PointedDirections::new(x.clone(), v.clone()).unwrap());
                let u = injected.discrete_tangent(&g).expect("dimensions agree");
                let mut b = Bindings::new()
                    .map(&sym.outer, &f)
                    .map(&sym.inner, &g)
                    .point(&sym.point, x)
                    .cuboid(&sym.cuboid, u);
                for (i, vi) in v.iter().enumerate() {
                    b = b.vector(&sym.vector_name(i), vi.clone());
                }
                let res = match (eval_expr(&chain, &b), eval_expr(&tangent, &b)) {
                    (Ok(l), Ok(r)) => compare(&l, &r),
                    (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
                };
                (alpha.to_string(), res)
            });
        }
    }
    report
}

const IDENTITY_DIM: usize = 2;

/// `Δ_{u+v} f(x) = Δ_u f(x) + Δ_v f(x+u)`.
pub fn additivity(seed: u64, trials: usize) -> VerificationReport {
    let mut report = VerificationReport::new("additivity", true);
    let d = IDENTITY_DIM;
    run_trials(&mut report, seed, "additivity", trials, |s| {
        let f = RandomRationalMap::new(derive_seed(s, "f", 0), d, d);
        let mut rng = rng_from(s);
        let x = random_int_value(&mut rng, d);
        let u = random_int_value(&mut rng, d);
        let v = random_int_value(&mut rng, d);
        let lhs = eval_delta_dirs(&f, &x, &[&u + &v]);
        let rhs = &eval_delta_dirs(&f, &x, std::slice::from_ref(&u))
            + &eval_delta_dirs(&f, &(&x + &u), std::slice::from_ref(&v));
        ("1".into(), compare(&lhs, &rhs))
    });
    report
}

/// The n-fold telescoping identity for `n ≤ 4`, through its symbolic form:
/// `Δ^n_{u_i + v_i} f(x + w) − Δ^n_{u_i} f(x)` against the generated sum.
pub fn telescoping(seed: u64, trials: usize) -> VerificationReport {
    let mut report = VerificationReport::new("telescoping", true);
    let d = IDENTITY_DIM;
    let cases: Vec<(usize, Expr, Expr, Expr)> = (1..=4)
        .map(|n| {
            let x = Expr::point("x");
            let w = Expr::vector("w");
            let u: Vec<Expr> = (1..=n).map(|i| Expr::vector(format!("a_{i}"))).collect();
            let v: Vec<Expr> = (1..=n).map(|i| Expr::vector(format!("b_{i}"))).collect();
            let shifted = Expr::delta(
                u.iter()
                    .zip(&v)
                    .map(|(a, b)| Expr::sum(vec![a.clone(), b.clone()]))
                    .collect(),
                "f",
                Expr::sum(vec![x.clone(), w.clone()]),
            );
            let plain = Expr::delta(u.clone(), "f", x.clone());
            let rhs = Expr::sum(telescope("f", &x, &w, &u, &v));
            (n, shifted, plain, rhs)
        })
        .collect();
    run_trials(&mut report, seed, "telescoping", trials, |s| {
        let mut rng = rng_from(s);
        let (n, shifted, plain, rhs) = &cases[rng.random_range(0..cases.len())];
        let f = RandomRationalMap::new(derive_seed(s, "f", 0), d, d);
        let mut b = Bindings::new()
            .map("f", &f)
            .point("x", random_int_value(&mut rng, d))
            .vector("w", random_int_value(&mut rng, d));
        for i in 1..=*n {
            b = b
                .vector(&format!("a_{i}"), random_int_value(&mut rng, d))
                .vector(&format!("b_{i}"), random_int_value(&mut rng, d));
        }
        let res = (|| {
            let lhs = eval_expr(shifted, &b)?.checked_sub(&eval_expr(plain, &b)?)?;
            Ok::<_, crate::Error>((lhs, eval_expr(rhs, &b)?))
        })();
        let res = match res {
            Ok((l, r)) => compare(&l, &r),
            Err(e) => Err(e.to_string()),
        };
        (MultiIndex::ones(*n).to_string(), res)
    });
    report
}

/// Pairing rules: `Δ⁻¹[ū,v̄] = [Δ⁻¹ū, Δ⁻¹(ū+v̄)]`, `Δ[ū,v̄] = [Δū, Δv̄ − Δū]`
/// and `T_{k+1}f[ū,v̄] = [T_k f ū, T_k f(ū+v̄) − T_k f ū]`.
pub fn pairing(seed: u64, trials: usize) -> Vec<VerificationReport> {
    let d = IDENTITY_DIM;
    let names = [
        "sum-operator-pairing",
        "difference-operator-pairing",
        "tangent-pairing",
    ];
    let mut reports: Vec<VerificationReport> = names
        .iter()
        .map(|n| VerificationReport::new(*n, true))
        .collect();
    for (item, report) in reports.iter_mut().enumerate() {
        run_trials(report, seed, names[item], trials, |s| {
            let mut rng = rng_from(s);
            let k = rng.random_range(0..=4usize);
            let u = random_cuboid(&mut rng, k, d);
            let v = random_cuboid(&mut rng, k, d);
            let uv = u.checked_add(&v).unwrap();
            let paired = u.pair(&v).unwrap();
            let (lhs, rhs) = match item {
                0 => (
                    paired.delta_inv(),
                    u.delta_inv().pair(&uv.delta_inv()).unwrap(),
                ),
                1 => (
                    paired.delta(),
                    u.delta()
                        .pair(&v.delta().checked_sub(&u.delta()).unwrap())
                        .unwrap(),
                ),
                _ => {
                    let f = RandomRationalMap::new(derive_seed(s, "f", 0), d, d);
                    let tu = u.discrete_tangent(&f).unwrap();
                    let tuv = uv.discrete_tangent(&f).unwrap();
                    (
                        paired.discrete_tangent(&f).unwrap(),
                        tu.pair(&tuv.checked_sub(&tu).unwrap()).unwrap(),
                    )
                }
            };
            let res = if lhs == rhs {
                Ok(())
            } else {
                Err("cuboids differ".to_string())
            };
            (MultiIndex::ones(k + 1).to_string(), res)
        });
    }
    reports
}

/// Refining the partitions of a random `α` gives each partition of `α ⋄ 1`
/// exactly once.
pub fn refinement_bijection(seed: u64, trials: usize) -> VerificationReport {
    let mut report = VerificationReport::new("refinement-bijection", true);
    run_trials(&mut report, seed, "refinement-bijection", trials, |s| {
        let mut rng = rng_from(s);
        let k = rng.random_range(1..=6usize);
        let alpha = MultiIndex::from_bits(k, rng.random_range(0..1u64 << k));
        let image: Vec<_> = enumerate_partitions(alpha)
            .iter()
            .flat_map(|p| p.refine())
            .collect();
        let distinct: BTreeSet<_> = image.iter().cloned().collect();
        let target: BTreeSet<_> = enumerate_partitions(alpha.diamond(1))
            .partitions
            .into_iter()
            .collect();
        let res = if distinct.len() != image.len() {
            Err(format!(
                "{} refinements, {} distinct",
                image.len(),
                distinct.len()
            ))
        } else if distinct != target {
            Err("image differs from the partitions of α⋄1".to_string())
        } else {
            Ok(())
        };
        (alpha.to_string(), res)
    });
    report
}

/// Main terms plus higher-order remainder terms reproduce `T_α f ū` exactly,
/// and every remainder term has order above `|α|`.
pub fn main_part_decomposition(seed: u64, trials: usize) -> VerificationReport {
    let mut report = VerificationReport::new("main-part-decomposition", true);
    let d = IDENTITY_DIM;
    let sym = Symbols::default();
    let mut cache: HashMap<MultiIndex, (Expr, Result<(), String>)> = HashMap::new();
    for k in 1..=4 {
        for alpha in MultiIndex::cube(k) {
            let rest = tangent_remainder_terms(alpha, &sym);
            let ord_check = match rest.iter().find(|t| t.ord() <= alpha.order()) {
                Some(t) => Err(format!("remainder term of order {}", t.ord())),
                None => Ok(()),
            };
            let mut terms = tangent_main_part(alpha, &sym).summands().to_vec();
            terms.extend(rest);
            cache.insert(alpha, (Expr::sum(terms), ord_check));
        }
    }
    run_trials(&mut report, seed, "main-part-decomposition", trials, |s| {
        let mut rng = rng_from(s);
        let k = rng.random_range(1..=4usize);
        let alpha = MultiIndex::from_bits(k, rng.random_range(0..1u64 << k));
        let (expr, ord_check) = &cache[&alpha];
        let f = RandomRationalMap::new(derive_seed(s, "f", 0), d, d);
        let u = random_cuboid(&mut rng, k, d);
        let b = Bindings::new().map("f", &f).cuboid("u", u.clone());
        let res = ord_check.clone().and_then(|()| match eval_expr(expr, &b) {
            Ok(lhs) => compare(&lhs, u.discrete_tangent(&f).unwrap().get(alpha)),
            Err(e) => Err(e.to_string()),
        });
        (alpha.to_string(), res)
    });
    report
}

/// Every exact identity of the discrete calculus, `trials` instances each.
pub fn identity_suite(seed: u64, trials: usize) -> Vec<VerificationReport> {
    let mut out = vec![additivity(seed, trials), telescoping(seed, trials)];
    out.extend(pairing(seed, trials));
    out.push(refinement_bijection(seed, trials));
    out.push(main_part_decomposition(seed, trials));
    out
}
