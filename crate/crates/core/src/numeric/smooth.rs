//! The infinitesimal side, checked exactly on polynomial maps: the higher
//! chain rule over partitions, the component formula for `T^k f`, its value
//! on injected cuboids, functoriality, and homogeneity of the expansion.

use rand::Rng;

use crate::combinatorics::{enumerate_partitions, MultiIndex};
use crate::cuboid::{Cuboid, PointedDirections};
use crate::map::VectorMap;
use crate::symbolic::infinitesimal_terms;
use crate::value::Value;

use super::oracle::{derive_seed, random_cuboid, random_int_value, rng_from};
use super::polynomial::PolynomialMap;
use super::report::VerificationReport;
use super::suites::{compare, run_trials};

const SMOOTH_DIM: usize = 2;

/// Concatenates the components in dense index order.
pub fn flatten(c: &Cuboid) -> Value {
    c.components()
        .iter()
        .flat_map(|v| v.coords().iter().cloned())
        .collect()
}

pub fn unflatten(dim: usize, space: usize, v: &Value) -> Cuboid {
    let comps = v
        .coords()
        .chunks(space)
        .map(|c| Value::new(c.to_vec()))
        .collect();
    Cuboid::new(dim, comps).expect("length is space · 2^dim")
}

/// `Σ_ξ D^n_{d_{α^1}, …, d_{α^n}} f(y)`, the blocks' directions given by `dir`.
fn partition_sum(
    f: &PolynomialMap,
    alpha: MultiIndex,
    y: &Value,
    dir: impl Fn(MultiIndex) -> Value,
) -> Value {
    let mut acc = Value::zeros(f.dim_out());
    for p in enumerate_partitions(alpha).iter() {
        let dirs: Vec<Value> = p.blocks().iter().map(|b| dir(*b)).collect();
        acc.add_assign(&f.d_dirs(&dirs).apply(y));
    }
    acc
}

/// `D_u^α (f∘g)(x) = Σ_ξ D^n_{D_u^{α^1} g(x), …} f(g(x))`.
pub fn smooth_chain_rule(alpha: MultiIndex, seed: u64, trials: usize) -> VerificationReport {
    let mut report = VerificationReport::new("smooth-chain-rule", true);
    let d = SMOOTH_DIM;
    let degree = alpha.order() as u32 + 1;
    run_trials(
        &mut report,
        seed,
        &format!("smooth-chain/{alpha}"),
        trials,
        |s| {
            let mut rng = rng_from(s);
            let f = PolynomialMap::random(&mut rng, d, d, degree);
            let g = PolynomialMap::random(&mut rng, d, d, degree);
            let x = random_int_value(&mut rng, d);
            let u: Vec<Value> = (0..alpha.len())
                .map(|_| random_int_value(&mut rng, d))
                .collect();
            let lhs = f.compose(&g).d_alpha(&u, alpha).apply(&x);
            let rhs = partition_sum(&f, alpha, &g.apply(&x), |b| g.d_alpha(&u, b).apply(&x));
            (alpha.to_string(), compare(&lhs, &rhs))
        },
    );
    report
}

/// Every component `β` of `T^k f ū` equals `Σ_ξ D^n_{u_{β^1}, …} f(u_0)`.
pub fn tangent_components(k: usize, seed: u64, trials: usize) -> VerificationReport {
    let mut report = VerificationReport::new("tangent-components", true);
    let d = SMOOTH_DIM;
    run_trials(
        &mut report,
        seed,
        &format!("tangent-components/{k}"),
        trials,
        |s| {
            let mut rng = rng_from(s);
            let degree = rng.random_range(1..=k as u32 + 1);
            let f = PolynomialMap::random(&mut rng, d, d, degree);
            let u = random_cuboid(&mut rng, k, d);
            let t = unflatten(k, d, &f.tangent_power(k).apply(&flatten(&u)));
            let res = MultiIndex::cube(k).try_for_each(|beta| {
                let rhs = partition_sum(&f, beta, u.base(), |b| u.get(b).clone());
                compare(t.get(beta), &rhs).map_err(|e| format!("component {beta}: {e}"))
            });
            (MultiIndex::ones(k).to_string(), res)
        },
    );
    report
}

/// `T^k f ⟨⟨x; u⟩⟩ = (D_u^β f(x))_β`.
pub fn injected_tangent(k: usize, seed: u64, trials: usize) -> VerificationReport {
    let mut report = VerificationReport::new("injected-tangent", true);
    let d = SMOOTH_DIM;
    run_trials(
        &mut report,
        seed,
        &format!("injected-tangent/{k}"),
        trials,
        |s| {
            let mut rng = rng_from(s);
            let f = PolynomialMap::random(&mut rng, d, d, k as u32 + 1);
            let x = random_int_value(&mut rng, d);
            let u: Vec<Value> = (0..k).map(|_| random_int_value(&mut rng, d)).collect();
            let injected = Cuboid::inject(&PointedDirections::new(x.clone(), u.clone()).unwrap());
            let t = unflatten(k, d, &f.tangent_power(k).apply(&flatten(&injected)));
            let res = MultiIndex::cube(k).try_for_each(|beta| {
                compare(t.get(beta), &f.d_alpha(&u, beta).apply(&x))
                    .map_err(|e| format!("component {beta}: {e}"))
            });
            (MultiIndex::ones(k).to_string(), res)
        },
    );
    report
}

/// `T^k(f∘g) = T^k f ∘ T^k g` on random cuboids.
pub fn tangent_functor(k: usize, seed: u64, trials: usize) -> VerificationReport {
    let mut report = VerificationReport::new("tangent-functor", true);
    let d = SMOOTH_DIM;
    run_trials(
        &mut report,
        seed,
        &format!("tangent-functor/{k}"),
        trials,
        |s| {
            let mut rng = rng_from(s);
            let f = PolynomialMap::random(&mut rng, d, d, 2);
            let g = PolynomialMap::random(&mut rng, d, d, 2);
            let u = flatten(&random_cuboid(&mut rng, k, d));
            let lhs = f.compose(&g).tangent_power(k).apply(&u);
            let rhs = f.tangent_power(k).apply(&g.tangent_power(k).apply(&u));
            (MultiIndex::ones(k).to_string(), compare(&lhs, &rhs))
        },
    );
    report
}

/// Static check: every summand of the infinitesimal expansion of `α` has
/// order `|α|`. One trial per α of length `1..=kmax`.
pub fn homogeneity(kmax: usize) -> VerificationReport {
    let mut report = VerificationReport::new("homogeneity", true);
    for k in 1..=kmax {
        for alpha in MultiIndex::cube(k) {
            let bad = infinitesimal_terms(alpha)
                .into_iter()
                .find(|t| t.iter().map(MultiIndex::order).sum::<usize>() != alpha.order());
            let res = match bad {
                Some(t) => Err(format!("summand with blocks {t:?}")),
                None => Ok(()),
            };
            report.record(0, alpha, res);
        }
    }
    report
}

/// All infinitesimal checks for `α`; cuboid-level checks use `k = len(α)`.
pub fn verify_smooth_chain(alpha: MultiIndex, seed: u64, trials: usize) -> Vec<VerificationReport> {
    let k = alpha.len();
    let seed = derive_seed(seed, "smooth", k as u64);
    vec![
        smooth_chain_rule(alpha, seed, trials),
        tangent_components(k, seed, trials),
        injected_tangent(k, seed, trials),
        tangent_functor(k, seed, trials),
        homogeneity(k),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_round_trips() {
        let mut rng = rng_from(1);
        let c = random_cuboid(&mut rng, 3, 2);
        assert_eq!(flatten(&c).dim(), 16);
        assert_eq!(unflatten(3, 2, &flatten(&c)), c);
    }

    #[test]
    fn second_order_quadratic_chain_rule() {
        let r = smooth_chain_rule("11".parse().unwrap(), 4, 10);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn all_checks_pass_up_to_three_digits() {
        for bits in ["1", "11", "111", "101"] {
            for r in verify_smooth_chain(bits.parse().unwrap(), 9, 4) {
                assert!(r.passed(), "{bits} {}: {:?}", r.identity, r.failures);
            }
        }
    }

    #[test]
    fn a_wrong_component_formula_is_caught() {
        // Dropping the single-block term breaks the second-order component.
        let mut rng = rng_from(2);
        let f = PolynomialMap::random(&mut rng, 2, 2, 3);
        let u = random_cuboid(&mut rng, 2, 2);
        let t = unflatten(2, 2, &f.tangent_power(2).apply(&flatten(&u)));
        let alpha: MultiIndex = "11".parse().unwrap();
        let only_pairs = f
            .d_dirs(&[
                u.get("10".parse().unwrap()).clone(),
                u.get("01".parse().unwrap()).clone(),
            ])
            .apply(u.base());
        assert_ne!(t.get(alpha), &only_pairs);
    }
}
