use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{Map, Value as Json};

use fdb_core::asets::validate;
use fdb_core::numeric::{
    chain_suite, identity_suite, scaling_suite, substitution, tangent_suite, verify_smooth_chain,
    ScalingConfig, SuiteConfig, VerificationReport,
};
use fdb_core::symbolic::{latex_document, render_json, render_text};
use fdb_core::{build_asets, expand_chain, expand_tangent, Expr, Format, MultiIndex};

use crate::{AsetsArgs, Command, ExpandArgs, Suite, VerifyArgs};

/// Runs one command; `Ok(false)` means a verification failed.
pub fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Expand(args) => {
            let alpha = args.alpha.resolve().expect("clap requires an index");
            let lhs = format!("T_{{{}}} f(\\bar{{u}})", tuple(alpha));
            emit_expr(&expand_tangent(alpha), &lhs, &args)
        }
        Command::Chain(args) => {
            let alpha = args.alpha.resolve().expect("clap requires an index");
            let lhs = format!("\\Delta_v^{{{}}} (f \\circ g)(x)", tuple(alpha));
            emit_expr(&expand_chain(alpha), &lhs, &args)
        }
        Command::Asets(args) => asets(&args),
        Command::Verify(args) => verify(&args),
    }
}

/// `(1,0,1)`.
fn tuple(alpha: MultiIndex) -> String {
    let digits: Vec<String> = alpha.digits().iter().map(u8::to_string).collect();
    format!("({})", digits.join(","))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn emit_expr(e: &Expr, lhs: &str, args: &ExpandArgs) -> Result<bool> {
    let text = match args.format {
        Format::Text => render_text(e) + "\n",
        Format::Latex => latex_document(lhs, e),
        Format::Json => render_json(e) + "\n",
    };
    write_out(args.output.as_deref(), &text)?;
    Ok(true)
}

fn asets(args: &AsetsArgs) -> Result<bool> {
    let alpha = args.alpha.resolve().expect("clap requires an index");
    let families = build_asets(alpha);
    let mut all_passed = true;
    let mut dump = Vec::with_capacity(families.len());
    for fam in &families {
        let report = validate(fam);
        all_passed &= report.passed();
        let mut sets = Map::new();
        for (beta, set) in fam.entries() {
            sets.insert(
                beta.to_string(),
                set.iter().map(|g| Json::String(g.to_string())).collect(),
            );
        }
        let mut entry = Map::new();
        entry.insert(
            "partition".into(),
            fam.partition
                .blocks()
                .iter()
                .map(|b| Json::String(b.to_string()))
                .collect(),
        );
        entry.insert("sets".into(), Json::Object(sets));
        entry.insert("valid".into(), Json::Bool(report.passed()));
        if args.validate {
            entry.insert(
                "conditions".into(),
                serde_json::to_value(&report.conditions)?,
            );
        }
        dump.push(Json::Object(entry));
    }
    let text = serde_json::to_string_pretty(&dump)? + "\n";
    write_out(args.output.as_deref(), &text)?;
    if args.validate {
        let failing = dump
            .iter()
            .filter(|e| e["valid"] == Json::Bool(false))
            .count();
        eprintln!(
            "{} families for {alpha}, {} failing validation",
            families.len(),
            failing
        );
        return Ok(all_passed);
    }
    Ok(true)
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    seed: u64,
    passed: bool,
    reports: &'a [VerificationReport],
}

fn default_trials(suite: Suite) -> usize {
    match suite {
        Suite::Identities => 1000,
        Suite::Scaling => 5,
        Suite::SmoothChain => 20,
        _ => 50,
    }
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    if args.eps_from >= args.eps_to {
        bail!("--eps-from must be smaller than --eps-to");
    }
    if args.eps_to > 60 {
        bail!("--eps-to is limited to 60");
    }
    let trials = |s: Suite| args.trials.map_or(default_trials(s), |t| t as usize);
    let dims: Vec<usize> = args.dims.iter().map(|&d| d as usize).collect();
    let suites: Vec<Suite> = match args.suite {
        Suite::All => vec![
            Suite::ChainExpansion,
            Suite::TangentExpansion,
            Suite::Substitution,
            Suite::Identities,
            Suite::Scaling,
            Suite::SmoothChain,
        ],
        s => vec![s],
    };
    let mut reports = Vec::new();
    for suite in suites {
        let cfg = SuiteConfig {
            seed: args.seed,
            trials: trials(suite),
            kmax: args.kmax as usize,
            dims: dims.clone(),
        };
        match suite {
            Suite::ChainExpansion => reports.push(chain_suite(&cfg)),
            Suite::TangentExpansion => reports.push(tangent_suite(&cfg)),
            Suite::Substitution => reports.push(substitution(&cfg)),
            Suite::Identities => reports.extend(identity_suite(args.seed, cfg.trials)),
            Suite::Scaling => {
                let alphas = match args.alpha.resolve() {
                    Some(a) => vec![a],
                    None => vec![MultiIndex::ones(2), MultiIndex::ones(3)],
                };
                let mut merged: Option<VerificationReport> = None;
                for &dim in &dims {
                    let r = scaling_suite(&ScalingConfig {
                        seed: args.seed,
                        trials: cfg.trials,
                        alphas: alphas.clone(),
                        dim,
                        eps_from: args.eps_from,
                        eps_to: args.eps_to,
                        tolerance: args.tolerance,
                    });
                    match merged.as_mut() {
                        Some(m) => m.merge(r),
                        None => merged = Some(r),
                    }
                }
                reports.extend(merged);
            }
            Suite::SmoothChain => {
                let alphas = match args.alpha.resolve() {
                    Some(a) => vec![a],
                    None => (1..=3).map(MultiIndex::ones).collect(),
                };
                for alpha in alphas {
                    if alpha.len() > 4 {
                        bail!("smooth-chain supports indices of length at most 4");
                    }
                    reports.extend(verify_smooth_chain(alpha, args.seed, cfg.trials));
                }
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    for r in &reports {
        eprintln!("{}", r.summary());
    }
    let passed = reports.iter().all(VerificationReport::passed);
    let out = VerifyOutput {
        seed: args.seed,
        passed,
        reports: &reports,
    };
    let text = serde_json::to_string_pretty(&out)? + "\n";
    write_out(args.output.as_deref(), &text)?;
    Ok(passed)
}
