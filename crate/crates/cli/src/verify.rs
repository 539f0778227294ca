//! Verification suites: orbit dimensions, polarization properties, the
//! orbit-method character identity, the little-group decomposition and the
//! length recursions.
//!
//! Every suite prints a human summary on stderr and a JSON report on stdout;
//! the process exits 0 only when every check passes. Suites fan cases out to
//! `--jobs` workers; results are aggregated in case order, so the output is
//! identical for any worker count.

use crate::CliError;
use clap::ValueEnum;
use orthorook::characters::{
    chi_from_orbit, induce, inner_product, phi_f, Cyclotomic, FiniteGroup, DEFAULT_GROUP_CAP,
};
use orthorook::coadjoint::{orbit_dimension_check, CoadjointSpace, DEFAULT_ORBIT_CAP};
use orthorook::mackey::{self, VerifyMode};
use orthorook::placement::{enumerate_placements, xi_assignments, Mark, RookPlacement};
use orthorook::roots::{Family, Root, RootSystem};
use orthorook::weyl;
use orthorook::PrimeField;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Orbit,
    Polarization,
    Character,
    Mackey,
    Lengths,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Orbit => "orbit",
            Suite::Polarization => "polarization",
            Suite::Character => "character",
            Suite::Mackey => "mackey",
            Suite::Lengths => "lengths",
        }
    }

    fn needs_prime(self) -> bool {
        matches!(self, Suite::Orbit | Suite::Character | Suite::Mackey)
    }
}

#[derive(Serialize)]
struct SuiteReport {
    suite: String,
    family: String,
    rank: usize,
    prime: Option<u64>,
    sample: Option<usize>,
    seed: Option<u64>,
    cases: usize,
    failures: usize,
    ok: bool,
    first_failure: Option<Value>,
    details: Vec<Value>,
}

/// One suite case: a JSON detail plus its verdict.
struct CaseResult {
    detail: Value,
    ok: bool,
}

/// Sweep every ξ-assignment when the count is small, otherwise the all-ones
/// representative. The bound keeps rank-2 systems exhaustive while larger
/// placements, whose orbits are recomputed per ξ, stay affordable.
fn xi_choices(placement_len: usize, p: u64) -> Vec<Vec<u64>> {
    let count = (p - 1).checked_pow(placement_len as u32).unwrap_or(u64::MAX);
    if count <= 16 {
        xi_assignments(placement_len, p)
    } else {
        vec![vec![1; placement_len]]
    }
}

fn run_cases<T, F>(items: Vec<T>, jobs: usize, f: F) -> Result<Vec<CaseResult>, CliError>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<CaseResult, CliError> + Send + Sync,
{
    if jobs <= 1 {
        items.iter().map(&f).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::invalid(format!("thread pool: {e}")))?;
        pool.install(|| items.par_iter().map(&f).collect())
    }
}

pub fn run(
    suite: Suite,
    family: &str,
    rank: usize,
    prime: u64,
    sample: Option<usize>,
    seed: u64,
    jobs: usize,
) -> Result<(), CliError> {
    let family: Family = family.parse().map_err(|e| CliError::parse(format!("{e}")))?;
    let system = RootSystem::new(family, rank).map_err(|e| CliError::invalid(format!("{e}")))?;
    let field = if suite.needs_prime() {
        let f = PrimeField::new(prime).map_err(|e| CliError::invalid(format!("{e}")))?;
        f.check_matrix_size(system.matrix_size())
            .map_err(|e| CliError::invalid(format!("{e}")))?;
        Some(f)
    } else {
        None
    };

    let results = match suite {
        Suite::Orbit => orbit_suite(field.unwrap(), &system, jobs)?,
        Suite::Polarization => polarization_suite(&system, jobs)?,
        Suite::Character => character_suite(field.unwrap(), &system, jobs)?,
        Suite::Mackey => mackey_suite(field.unwrap(), &system, sample, seed, jobs)?,
        Suite::Lengths => lengths_suite(&system, jobs)?,
    };

    let failures = results.iter().filter(|r| !r.ok).count();
    let report = SuiteReport {
        suite: suite.name().to_string(),
        family: family.to_string(),
        rank,
        prime: field.map(|f| f.p()),
        sample: if matches!(suite, Suite::Mackey) { sample } else { None },
        seed: if matches!(suite, Suite::Mackey) { Some(seed) } else { None },
        cases: results.len(),
        failures,
        ok: failures == 0,
        first_failure: results.iter().find(|r| !r.ok).map(|r| r.detail.clone()),
        details: results.into_iter().map(|r| r.detail).collect(),
    };

    eprintln!(
        "suite {} on {}{}: {} cases, {} failures -> {}",
        report.suite,
        report.family,
        report.rank,
        report.cases,
        report.failures,
        if report.ok { "PASS" } else { "FAIL" }
    );
    println!(
        "{}",
        serde_json::to_string_pretty(&report).map_err(|e| CliError::invalid(format!("{e}")))?
    );
    if report.ok {
        Ok(())
    } else {
        Err(CliError::counterexample(format!(
            "{} of {} checks failed; see first_failure in the report",
            report.failures, report.cases
        )))
    }
}

fn orbit_suite(
    field: PrimeField,
    system: &RootSystem,
    jobs: usize,
) -> Result<Vec<CaseResult>, CliError> {
    let mut cases: Vec<(RookPlacement, Vec<u64>)> = Vec::new();
    for placement in enumerate_placements(system) {
        for xi in xi_choices(placement.len(), field.p()) {
            cases.push((placement.clone(), xi));
        }
    }
    run_cases(cases, jobs, |(placement, xi)| {
        let report = orbit_dimension_check(field, placement, xi, DEFAULT_ORBIT_CAP)
            .map_err(|e| CliError::invalid(format!("{e}")))?;
        Ok(CaseResult {
            ok: report.ok,
            detail: serde_json::to_value(&report).expect("report serializes"),
        })
    })
}

fn polarization_suite(system: &RootSystem, jobs: usize) -> Result<Vec<CaseResult>, CliError> {
    let rank = system.rank();
    let sum_root = move |sys: &RootSystem, a: Root, b: Root| -> Option<Root> {
        let pairs: Vec<(usize, i64)> = (1..=rank).map(|k| (k, a.coeff(k) + b.coeff(k))).collect();
        Root::from_coeffs(&pairs, sys.family(), rank).filter(|r| sys.contains(*r))
    };
    run_cases(enumerate_placements(system), jobs, |placement| {
        let sys = placement.system();
        let pol = placement
            .polarization_roots()
            .map_err(|e| CliError::invalid(format!("{e}")))?;
        let diagram = placement
            .battleship()
            .map_err(|e| CliError::invalid(format!("{e}")))?;
        let in_d = |r: Root| placement.roots().contains(&r);
        let mut failed: Option<String> = None;
        'check: {
            for &a in &pol {
                for &b in &pol {
                    if let Some(s) = sum_root(sys, a, b) {
                        if !pol.contains(&s) {
                            failed = Some(format!("closure: {a}+{b}"));
                            break 'check;
                        }
                        if in_d(s) {
                            failed = Some(format!("isotropy: {a}+{b} lands in D"));
                            break 'check;
                        }
                    }
                }
            }
            for &delta in sys.positive_roots() {
                if !pol.contains(&delta)
                    && !pol
                        .iter()
                        .any(|&g| sum_root(sys, g, delta).map(in_d).unwrap_or(false))
                {
                    failed = Some(format!("maximality: {delta} has no partner into D"));
                    break 'check;
                }
            }
            for &gamma in sys.positive_roots() {
                if diagram.mark(gamma) == Mark::Plus && placement.plus_partner(gamma).is_err() {
                    failed = Some(format!("plus partner missing for {gamma}"));
                    break 'check;
                }
            }
        }
        Ok(CaseResult {
            ok: failed.is_none(),
            detail: json!({
                "placement": placement.tokens(),
                "polarization_size": pol.len(),
                "failed": failed,
            }),
        })
    })
}

fn character_suite(
    field: PrimeField,
    system: &RootSystem,
    jobs: usize,
) -> Result<Vec<CaseResult>, CliError> {
    let space = CoadjointSpace::full(field, system);
    let group = FiniteGroup::full(field, system, DEFAULT_GROUP_CAP)
        .map_err(|e| CliError::invalid(format!("{e}")))?;
    let mut cases: Vec<(RookPlacement, Vec<u64>)> = Vec::new();
    for placement in enumerate_placements(system) {
        for xi in xi_choices(placement.len(), field.p()) {
            cases.push((placement.clone(), xi));
        }
    }
    let per_case = run_cases(cases, jobs, |(placement, xi)| {
        let pol = placement
            .polarization_roots()
            .map_err(|e| CliError::invalid(format!("{e}")))?;
        let h = FiniteGroup::from_root_subset(field, system, &pol, DEFAULT_GROUP_CAP)
            .map_err(|e| CliError::invalid(format!("{e}")))?;
        let f = space
            .canonical_form(placement.roots(), xi)
            .map_err(|e| CliError::invalid(format!("{e}")))?;
        let orbit = space
            .orbit_of_form(&f, DEFAULT_ORBIT_CAP)
            .map_err(|e| CliError::invalid(format!("{e}")))?;
        let chi = chi_from_orbit(group.clone(), &space, &orbit);
        let phi = phi_f(h, &space, &f).map_err(|e| CliError::invalid(format!("{e}")))?;
        let ind = induce(&phi, &group).map_err(|e| CliError::invalid(format!("{e}")))?;
        let matches_induced = ind.values() == chi.values();
        let norm = inner_product(&chi, &chi).map_err(|e| CliError::invalid(format!("{e}")))?;
        let degree_expected = field.p().pow(orbit.dimension() / 2);
        let degree_ok = chi.degree() == &Cyclotomic::from_integer(field.p(), degree_expected as i64);
        let ok = matches_induced && norm.is_one() && degree_ok;
        Ok(CaseResult {
            ok,
            detail: json!({
                "placement": placement.tokens(),
                "xi": xi,
                "degree": degree_expected,
                "inner_product": norm.to_string(),
                "matches_induced": matches_induced,
                "sampled": false,
                "sample_size": 0,
            }),
        })
    })?;

    // orthogonality across distinct orbits, sequential over the case list
    let mut signatures: Vec<(Vec<Vec<u64>>, orthorook::characters::ClassFunction)> = Vec::new();
    for placement in enumerate_placements(system) {
        for xi in xi_choices(placement.len(), field.p()) {
            let f = space
                .canonical_form(placement.roots(), &xi)
                .map_err(|e| CliError::invalid(format!("{e}")))?;
            let orbit = space
                .orbit_of_form(&f, DEFAULT_ORBIT_CAP)
                .map_err(|e| CliError::invalid(format!("{e}")))?;
            let mut sig: Vec<Vec<u64>> =
                orbit.elements().iter().map(|e| e.coeffs().to_vec()).collect();
            sig.sort();
            signatures.push((sig, chi_from_orbit(group.clone(), &space, &orbit)));
        }
    }
    let mut ortho_ok = true;
    for i in 0..signatures.len() {
        for j in i + 1..signatures.len() {
            let ip = inner_product(&signatures[i].1, &signatures[j].1)
                .map_err(|e| CliError::invalid(format!("{e}")))?;
            let expected_one = signatures[i].0 == signatures[j].0;
            if (expected_one && !ip.is_one()) || (!expected_one && !ip.is_zero()) {
                ortho_ok = false;
            }
        }
    }
    let mut out = per_case;
    out.push(CaseResult {
        ok: ortho_ok,
        detail: json!({
            "check": "pairwise orthogonality of distinct orbit characters",
            "orbits": signatures.len(),
            "ok": ortho_ok,
        }),
    });
    Ok(out)
}

fn mackey_suite(
    field: PrimeField,
    system: &RootSystem,
    sample: Option<usize>,
    seed: u64,
    jobs: usize,
) -> Result<Vec<CaseResult>, CliError> {
    let mode = match sample {
        None => VerifyMode::Full,
        Some(count) => VerifyMode::Sampled { count, seed },
    };
    // the brute-force centralizer scan walks |V|·|U₁| pairs and ψ does not
    // depend on the choice of nonzero ξ, so it runs once per placement and
    // only when the scan is desk-sized
    let v_size = (field.p() as u128)
        .checked_pow((system.positive_roots().len() - system.column(1).len()) as u32);
    let u1_size = (field.p() as u128).checked_pow(system.column(1).len() as u32);
    let scan_fits = matches!(
        (v_size, u1_size),
        (Some(v), Some(u)) if v.saturating_mul(u) <= DEFAULT_GROUP_CAP as u128
    );
    let mut cases: Vec<(RookPlacement, Vec<u64>, bool)> = Vec::new();
    for placement in enumerate_placements(system) {
        for (k, xi) in xi_choices(placement.len(), field.p()).into_iter().enumerate() {
            cases.push((placement.clone(), xi, scan_fits && k == 0));
        }
    }
    run_cases(cases, jobs, |(placement, xi, check_centralizer)| {
        let report = mackey::mackey_verify(field, placement, xi, mode, DEFAULT_ORBIT_CAP)
            .map_err(|e| CliError::invalid(format!("{e}")))?;
        let centralizer_ok = if *check_centralizer {
            Some(
                mackey::centralizer_matches_formula(field, placement, xi, DEFAULT_GROUP_CAP)
                    .map_err(|e| CliError::invalid(format!("{e}")))?,
            )
        } else {
            None
        };
        let ok = report.ok && centralizer_ok != Some(false);
        let mut detail = serde_json::to_value(&report).expect("report serializes");
        detail["centralizer_matches"] = json!(centralizer_ok);
        Ok(CaseResult { ok, detail })
    })
}

fn lengths_suite(system: &RootSystem, jobs: usize) -> Result<Vec<CaseResult>, CliError> {
    let m = system.matrix_size() as i64;
    let n = system.rank() as i64;
    run_cases(enumerate_placements(system), jobs, |placement| {
        let sys = placement.system();
        let stats = placement.involution_stats();
        let lg = mackey::little_group_formula(sys, placement);
        let reduced = lg.reduced_system();
        let reduced_stats = weyl::involution_stats(&reduced, &lg.reduced_placement(placement));
        let (case, expected_jump): (&str, i64) = match placement.roots().first() {
            None => ("empty", 0),
            Some(b) if b.col() > 1 => ("col>1", 0),
            Some(Root::Diff(_, i)) => ("e1-ei", 2 * *i as i64 - 3),
            Some(Root::Sum(_, i)) => ("e1+ei", 2 * (m - *i as i64) - 3),
            Some(Root::Short(_)) => ("e1", 2 * (n + stats.d_stat as i64) - 1),
        };
        let jump = stats.length as i64 - reduced_stats.length as i64;
        let even_ok = stats.dim() >= 0 && stats.dim() % 2 == 0;
        let ok = jump == expected_jump && even_ok;
        Ok(CaseResult {
            ok,
            detail: json!({
                "placement": placement.tokens(),
                "case": case,
                "l": stats.length,
                "l_reduced": reduced_stats.length,
                "jump": jump,
                "expected_jump": expected_jump,
                "dim": stats.dim(),
            }),
        })
    })
}
