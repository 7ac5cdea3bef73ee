//! Envelope certificate: the cone spanned by the w_max base cone and the
//! weights of the descent path lies inside the L-minimal cone.
//!
//! Each L-minimal functional f is certified once, on the lifted system in
//! (x, t) with t ≥ 0 and x = Σ t_g g. A Farkas implication there is exactly
//! f(g) ≤ 0 for every generator g, and the multiplier on t_g ≥ 0 is -f(g).

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::cones::{
    farkas_implies_rows, pha_wmax_cone, prefix_functionals, worst_subset_functional,
    FarkasCertificate,
};
use crate::error::Result;
use crate::hasse::{check_p, descent_path, PathStep};
use crate::linalg::dot;
use crate::scalar::{ratio_string, Ring, Scalar};
use crate::weylroot::{Character, Orbit};
use crate::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One (generator, functional) entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub generator: usize,
    pub functional: usize,
    /// f(g), "num/den".
    pub value: String,
    /// Multiplier of t_g ≥ 0 in the functional's implication certificate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multipliers: Option<String>,
    /// Lifted witness point (x then t), when the functional is not implied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalEntry {
    pub label: String,
    pub coefficients: Vec<String>,
    pub implied: bool,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub p: i64,
    pub path: Vec<PathStep>,
    pub base_generators: Vec<Vec<String>>,
    pub ha_weights: Vec<Vec<String>>,
    pub functionals: Vec<FunctionalEntry>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn strings<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(ratio_string).collect()
}

/// Rows of the lifted system over (x, t_1..t_G): -t_g ≤ 0 and the two
/// inequalities for each coordinate of x - Σ t_g g = 0.
fn lifted_system(gens: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let dim = gens.first().map_or(0, Vec::len);
    let g = gens.len();
    let width = dim + g;
    let mut rows = Vec::with_capacity(g + 2 * dim);
    for k in 0..g {
        let mut r = vec![Q::from_i64(0); width];
        r[dim + k] = Q::from_i64(-1);
        rows.push(r);
    }
    for c in 0..dim {
        let mut r = vec![Q::from_i64(0); width];
        r[c] = Q::from_i64(1);
        for (k, gen) in gens.iter().enumerate() {
            r[dim + k] = -gen[c].clone();
        }
        rows.push(r.iter().map(|v| -v.clone()).collect());
        rows.push(r);
    }
    rows
}

pub fn envelope_certificate(n: usize, p: i64) -> Result<Certificate> {
    check_p(p)?;
    let path = descent_path(n, p)?;
    let base: Vec<Vec<Q>> = pha_wmax_cone::<Q>(n)?.vform.expect("generators attached");
    let ha: Vec<Vec<Q>> = path
        .iter()
        .map(|s| s.ha.to_scalar::<Q>().coords())
        .collect();
    let gens: Vec<Vec<Q>> = base.iter().chain(&ha).cloned().collect();
    let dim = n + 1;

    let mut functionals: Vec<(String, Vec<Q>)> = Vec::new();
    let mut push = |label: String, f: Vec<Q>| {
        if !functionals.iter().any(|(_, g)| *g == f) {
            functionals.push((label, f));
        }
    };
    for (k, g) in gens.iter().enumerate() {
        let lam = Character::from_coords(g.clone());
        for o in Orbit::ALL {
            push(
                format!("{o} worst subset at generator {k}"),
                worst_subset_functional(&lam, p, o),
            );
        }
    }
    for (j, f) in prefix_functionals::<Q>(n, p).into_iter().enumerate() {
        push(format!("prefix j={}", j + 1), f);
    }

    let rows = lifted_system(&gens);
    let mut entries = Vec::with_capacity(functionals.len());
    let mut checks = Vec::with_capacity(functionals.len() * gens.len());
    let mut all_ok = true;
    for (fi, (label, f)) in functionals.iter().enumerate() {
        let mut target = f.clone();
        target.resize(dim + gens.len(), Q::from_i64(0));
        let cert = farkas_implies_rows(&target, &rows)?;
        let verified = cert.verify(&rows);
        for (gi, g) in gens.iter().enumerate() {
            let value = dot(f, g);
            let ok = !value.is_positive();
            all_ok &= ok;
            let (multipliers, witness) = match &cert {
                FarkasCertificate::Implied { multipliers, .. } => {
                    (Some(ratio_string(&multipliers[gi])), None)
                }
                FarkasCertificate::NotImplied { witness, .. } => (None, Some(strings(witness))),
            };
            checks.push(Check {
                generator: gi,
                functional: fi,
                value: ratio_string(&value),
                multipliers,
                witness,
                ok,
            });
        }
        all_ok &= verified && cert.is_implied();
        entries.push(FunctionalEntry {
            label: label.clone(),
            coefficients: strings(f),
            implied: cert.is_implied(),
            verified,
        });
    }

    Ok(Certificate {
        n,
        p,
        path,
        base_generators: base.iter().map(|g| strings(g)).collect(),
        ha_weights: ha.iter().map(|g| strings(g)).collect(),
        functionals: entries,
        checks,
        verdict: if all_ok { Verdict::Pass } else { Verdict::Fail },
    })
}
