use std::io::Write;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use zipcone_core::bruhat::{bruhat_leq, lower_neighbors, lower_neighbors_oracle};
use zipcone_core::certificate::envelope_certificate;
use zipcone_core::cones::{last_prefix_redundancy, lmin_member, FarkasCertificate};
use zipcone_core::hasse::verify_path_lemmas;
use zipcone_core::oracle::{
    bruhat_closure, lmin_member_enumerated, random_character, random_element, random_near_lmin, rng,
};
use zipcone_core::scalar::ratio_string;
use zipcone_core::weylroot::{all_elements, positive_roots, WeylElem};
use zipcone_core::{RatCharacter, Q};

use crate::{emit_json, warn_primes, CmdResult, Usage, EXIT_CHECK_FAILED, EXIT_PASS};

/// Largest rank enumerated exhaustively by the element suites.
const EXHAUSTIVE_MAX_RANK: usize = 5;
const CLOSURE_MAX_RANK: usize = 4;
const ENUMERATION_MAX_RANK: usize = 5;
const MAX_REPORTED_FAILURES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Gamma,
    Bruhat,
    Length,
    LminOracle,
    Redundancy,
    Path,
    Theorem,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long)]
    n: usize,
    #[arg(long, value_delimiter = ',', default_value = "3")]
    p: Vec<i64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Serialize)]
struct Report {
    suite: Suite,
    n: usize,
    p: Vec<i64>,
    seed: u64,
    samples: usize,
    exhaustive: bool,
    unit: &'static str,
    checked: usize,
    passed: usize,
    failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    details: Vec<Value>,
    pass: bool,
}

/// Outcome of one item: `None` on success, a description otherwise.
type Item = (Option<String>, Option<Value>);

fn elements(n: usize, samples: usize, seed: u64) -> (Vec<WeylElem>, bool) {
    if n <= EXHAUSTIVE_MAX_RANK {
        (all_elements(n), true)
    } else {
        let mut r = rng(seed);
        (
            (0..samples).map(|_| random_element(n, &mut r)).collect(),
            false,
        )
    }
}

pub(crate) fn run(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if a.n == 0 {
        return Err(Usage("--n must be at least 1".into()));
    }
    if a.p.iter().any(|&p| p < 2) {
        return Err(Usage("every p must be at least 2".into()));
    }
    warn_primes(&a.p, err);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| Usage(format!("worker pool: {e}")))?;
    let (unit, exhaustive, items) = pool.install(|| collect(&a))?;

    let checked = items.len();
    let failures: Vec<String> = items.iter().filter_map(|(f, _)| f.clone()).collect();
    let details: Vec<Value> = items.into_iter().filter_map(|(_, d)| d).collect();
    let report = Report {
        suite: a.suite,
        n: a.n,
        p: a.p.clone(),
        seed: a.seed,
        samples: a.samples,
        exhaustive,
        unit,
        checked,
        passed: checked - failures.len(),
        pass: failures.is_empty(),
        failures: failures.into_iter().take(MAX_REPORTED_FAILURES).collect(),
        details,
    };
    if a.json {
        emit_json(out, &report);
    } else {
        let suite = serde_json::to_value(report.suite).expect("serializable");
        let _ = writeln!(
            out,
            "{} n={}: {}/{} {} pass{}",
            suite.as_str().unwrap_or_default(),
            report.n,
            report.passed,
            report.checked,
            report.unit,
            if report.exhaustive { "" } else { " (sampled)" },
        );
        for d in &report.details {
            let _ = writeln!(out, "  {d}");
        }
        for f in &report.failures {
            let _ = writeln!(out, "  failed: {f}");
        }
    }
    Ok(if report.pass {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    })
}

fn collect(a: &SweepArgs) -> Result<(&'static str, bool, Vec<Item>), Usage> {
    let n = a.n;
    Ok(match a.suite {
        Suite::Gamma => {
            let (elems, exhaustive) = elements(n, a.samples, a.seed);
            let items = elems
                .par_iter()
                .map(|w| {
                    let ok = lower_neighbors(w) == lower_neighbors_oracle(w);
                    ((!ok).then(|| w.to_string()), None)
                })
                .collect();
            ("elements", exhaustive, items)
        }
        Suite::Length => {
            let (elems, exhaustive) = elements(n, a.samples, a.seed);
            let roots = positive_roots(n)?;
            let items = elems
                .par_iter()
                .map(|w| {
                    let inversions = roots.iter().filter(|&&r| !w.act_root(r).0).count();
                    let ok = w.length() == w.m_count() + w.n_count() && w.length() == inversions;
                    (
                        (!ok).then(|| format!("{w}: {} vs {inversions}", w.length())),
                        None,
                    )
                })
                .collect();
            ("elements", exhaustive, items)
        }
        Suite::Bruhat => {
            if n > CLOSURE_MAX_RANK {
                return Err(Usage(format!(
                    "bruhat suite builds the full closure and is limited to n ≤ {CLOSURE_MAX_RANK}"
                )));
            }
            let below = bruhat_closure(n);
            let elems: Vec<WeylElem> = below.keys().cloned().collect();
            let exhaustive = elems.len() * elems.len() <= a.samples.max(1) || n <= 3;
            let pairs: Vec<(usize, usize)> = if exhaustive {
                (0..elems.len())
                    .flat_map(|i| (0..elems.len()).map(move |j| (i, j)))
                    .collect()
            } else {
                use rand::Rng;
                let mut r = rng(a.seed);
                (0..a.samples)
                    .map(|_| (r.gen_range(0..elems.len()), r.gen_range(0..elems.len())))
                    .collect()
            };
            let items = pairs
                .par_iter()
                .map(|&(i, j)| {
                    let (v, w) = (&elems[i], &elems[j]);
                    let ok = bruhat_leq(v, w).expect("same rank") == below[w].contains(v);
                    ((!ok).then(|| format!("{v} ≤ {w}")), None)
                })
                .collect();
            ("pairs", exhaustive, items)
        }
        Suite::LminOracle => {
            if n > ENUMERATION_MAX_RANK {
                return Err(Usage(format!(
                    "subset enumeration is limited to n ≤ {ENUMERATION_MAX_RANK}"
                )));
            }
            let mut r = rng(a.seed);
            let mut cases: Vec<(i64, RatCharacter)> = Vec::new();
            for &p in &a.p {
                for k in 0..a.samples {
                    let lam = if k % 2 == 0 {
                        random_character(n, 10, &mut r)
                    } else {
                        random_near_lmin(n, 6, &mut r)
                    };
                    cases.push((p, lam));
                }
            }
            let items = cases
                .par_iter()
                .map(|(p, lam)| {
                    let fast = lmin_member(lam, *p).expect("p checked");
                    let slow = lmin_member_enumerated(lam, *p).expect("p checked");
                    ((fast != slow).then(|| format!("p={p} {lam:?}")), None)
                })
                .collect();
            ("characters", false, items)
        }
        Suite::Redundancy => {
            if n < 2 {
                return Err(Usage("redundancy needs n ≥ 2".into()));
            }
            let items =
                a.p.par_iter()
                    .map(|&p| match last_prefix_redundancy::<Q>(n, p) {
                        Ok(FarkasCertificate::Implied { multipliers, .. }) => {
                            let m: Vec<String> = multipliers.iter().map(ratio_string).collect();
                            (
                                None,
                                Some(json!({"p": p, "implied": true, "multipliers": m})),
                            )
                        }
                        Ok(FarkasCertificate::NotImplied { witness, .. }) => {
                            let w: Vec<String> = witness.iter().map(ratio_string).collect();
                            (
                                Some(format!("p={p}")),
                                Some(json!({"p": p, "implied": false, "witness": w})),
                            )
                        }
                        Err(e) => (Some(format!("p={p}: {e}")), None),
                    })
                    .collect();
            ("primes", true, items)
        }
        Suite::Path => {
            let items =
                a.p.par_iter()
                    .map(|&p| match verify_path_lemmas(n, p) {
                        Ok(r) => (
                            (!r.pass).then(|| format!("p={p}")),
                            Some(json!({"p": p, "steps": r.steps.len(), "pass": r.pass})),
                        ),
                        Err(e) => (Some(format!("p={p}: {e}")), None),
                    })
                    .collect();
            ("primes", true, items)
        }
        Suite::Theorem => {
            let items =
                a.p.par_iter()
                    .map(|&p| match envelope_certificate(n, p) {
                        Ok(c) => (
                            (!c.passed()).then(|| format!("p={p}")),
                            Some(json!({"p": p, "checks": c.checks.len(), "verdict": c.verdict})),
                        ),
                        Err(e) => (Some(format!("p={p}: {e}")), None),
                    })
                    .collect();
            ("primes", true, items)
        }
    })
}
