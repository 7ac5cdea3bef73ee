//! `zipcone` command line. [`run`] is the whole program; `main` only wires it
//! to the process streams.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use zipcone_core::bruhat::{
    admissible_pairs, bruhat_leq, enum_iw, gamma, is_minimal_representative, is_separating,
    lower_neighbors, preceq, stratum_dim, PairClass,
};
use zipcone_core::certificate::envelope_certificate;
use zipcone_core::cones::{
    cone_gs, farkas_implies, lmin_member, lmin_prefix_cone, pha_w_check, pha_wmax_cone,
    FarkasCertificate,
};
use zipcone_core::hasse::verify_path_lemmas;
use zipcone_core::scalar::ratio_string;
use zipcone_core::weylroot::{format_character, parse_character, WeylElem};
use zipcone_core::{Cone, Error, RatCharacter, Q};

mod sweep;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "zipcone",
    version,
    about = "Exact Weyl group and character cone computations for GSp(2n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect a Weyl group element.
    Weyl(WeylArgs),
    /// Lower neighbors E_w and admissible pairs.
    Neighbors(ElemArgs),
    /// Descent path from w_0 to w_max with its weights.
    Path(PathArgs),
    /// Test a character against one of the cones.
    ConeCheck(ConeCheckArgs),
    /// Decide whether a functional is nonpositive on a cone.
    Farkas(FarkasArgs),
    /// Emit the envelope certificate.
    VerifyTheorem(PathArgs),
    /// List the minimal coset representatives.
    EnumIw(RankArgs),
    /// Compare two elements in the Bruhat order (or ≼).
    Bruhat(BruhatArgs),
    /// Run an oracle cross-check suite.
    Sweep(sweep::SweepArgs),
}

#[derive(Debug, Args)]
struct RankArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ElemArgs {
    #[arg(long)]
    n: usize,
    /// Window notation, e.g. "4 3 2 1".
    #[arg(long)]
    elem: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct WeylArgs {
    #[command(flatten)]
    elem: ElemArgs,
    /// Print only the length.
    #[arg(long)]
    length: bool,
    /// Apply the element to a character "a_1,..,a_n|b".
    #[arg(long)]
    act: Option<String>,
}

#[derive(Debug, Args)]
struct PathArgs {
    #[arg(long)]
    n: usize,
    /// One value or a comma separated list.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<i64>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConeKind {
    Gs,
    Lmin,
    LminI,
    PhaWmax,
    Pha,
}

impl ConeKind {
    fn name(self) -> &'static str {
        match self {
            ConeKind::Gs => "gs",
            ConeKind::Lmin => "lmin",
            ConeKind::LminI => "lmin-i",
            ConeKind::PhaWmax => "pha-wmax",
            ConeKind::Pha => "pha",
        }
    }
}

#[derive(Debug, Args)]
struct ConeCheckArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    p: i64,
    #[arg(long, value_enum)]
    cone: ConeKind,
    /// Character "a_1,..,a_n|b"; entries may be num/den.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Element w, required for --cone pha.
    #[arg(long)]
    elem: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct FarkasArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    p: i64,
    /// System cone; pha and lmin have no finite h-form here.
    #[arg(long, value_enum)]
    cone: ConeKind,
    /// Functional coefficients "f_1,..,f_n|f_b".
    #[arg(long, allow_hyphen_values = true)]
    target: String,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Order {
    Bruhat,
    Preceq,
}

#[derive(Debug, Args)]
struct BruhatArgs {
    #[arg(long)]
    n: usize,
    /// Left element.
    #[arg(long)]
    elem: String,
    /// Right element.
    #[arg(long)]
    other: String,
    #[arg(long, value_enum, default_value_t = Order::Bruhat)]
    order: Order,
    #[arg(long)]
    json: bool,
}

/// Failure of a command before any check ran.
#[derive(Debug)]
pub(crate) struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

pub(crate) type CmdResult = Result<i32, Usage>;

pub(crate) fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub(crate) fn warn_primes(ps: &[i64], err: &mut dyn Write) {
    for &p in ps {
        if p >= 2 && !is_prime(p) {
            let _ = writeln!(
                err,
                "warning: p = {p} is not prime; cone computations still apply"
            );
        }
    }
}

fn parse_elem(n: usize, text: &str) -> Result<WeylElem, Usage> {
    let w: WeylElem = text.parse()?;
    if w.rank() != n {
        return Err(Usage(format!(
            "element {w} has rank {}, expected {n}",
            w.rank()
        )));
    }
    Ok(w)
}

fn parse_lambda(n: usize, text: &str) -> Result<RatCharacter, Usage> {
    let c: RatCharacter = parse_character(text)?;
    if c.rank() != n {
        return Err(Usage(format!(
            "character {text:?} has rank {}, expected {n}",
            c.rank()
        )));
    }
    Ok(c)
}

pub(crate) fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) {
    let s = serde_json::to_string_pretty(value).expect("serializable");
    let _ = writeln!(out, "{s}");
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(ratio_string).collect()
}

fn exit_for(ok: bool) -> i32 {
    if ok {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Weyl(a) => weyl(a, out),
        Command::Neighbors(a) => neighbors(a, out),
        Command::Path(a) => path(a, out, err),
        Command::ConeCheck(a) => cone_check(a, out, err),
        Command::Farkas(a) => farkas(a, out, err),
        Command::VerifyTheorem(a) => verify_theorem(a, out, err),
        Command::EnumIw(a) => enum_iw_cmd(a, out),
        Command::Bruhat(a) => bruhat(a, out),
        Command::Sweep(a) => sweep::run(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn weyl(a: WeylArgs, out: &mut dyn Write) -> CmdResult {
    let w = parse_elem(a.elem.n, &a.elem.elem)?;
    let action = match &a.act {
        Some(text) => Some(format_character(&w.act(&parse_lambda(a.elem.n, text)?)?)),
        None => None,
    };
    if a.length && !a.elem.json {
        let _ = writeln!(out, "{}", w.length());
        return Ok(EXIT_PASS);
    }
    if a.elem.json {
        emit_json(
            out,
            &json!({
                "elem": w,
                "length": w.length(),
                "m": w.m_count(),
                "n": w.n_count(),
                "inverse": w.inverse(),
                "minimal_representative": is_minimal_representative(&w),
                "action": action,
            }),
        );
    } else {
        let _ = writeln!(out, "window: {w}");
        let _ = writeln!(
            out,
            "length: {} (M = {}, N = {})",
            w.length(),
            w.m_count(),
            w.n_count()
        );
        let _ = writeln!(out, "inverse: {}", w.inverse());
        let _ = writeln!(
            out,
            "minimal representative: {}",
            is_minimal_representative(&w)
        );
        if let Some(act) = action {
            let _ = writeln!(out, "action: {act}");
        }
    }
    Ok(EXIT_PASS)
}

fn neighbors(a: ElemArgs, out: &mut dyn Write) -> CmdResult {
    let w = parse_elem(a.n, &a.elem)?;
    let pairs = admissible_pairs(&w);
    let e = lower_neighbors(&w);
    let sep = is_separating(&w);
    if a.json {
        let pairs: Vec<_> = pairs
            .iter()
            .map(|p| {
                json!({
                    "i": p.i,
                    "j": p.j,
                    "class": p.class.to_string(),
                    "root": gamma(p, &w).ok(),
                })
            })
            .collect();
        emit_json(
            out,
            &json!({"elem": w, "pairs": pairs, "neighbors": e.roots, "separating": sep}),
        );
    } else {
        for p in &pairs {
            let root = match p.class {
                PairClass::Other => "-".to_string(),
                _ => gamma(p, &w)?.to_string(),
            };
            let _ = writeln!(out, "({}, {}) {} {}", p.i, p.j, p.class, root);
        }
        let roots: Vec<String> = e.roots.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "E_w: {{{}}}", roots.join(", "));
        let _ = writeln!(out, "separating: {sep}");
    }
    Ok(EXIT_PASS)
}

fn path(a: PathArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    warn_primes(&a.p, err);
    let mut reports = Vec::new();
    for &p in &a.p {
        reports.push(verify_path_lemmas(a.n, p)?);
    }
    let ok = reports.iter().all(|r| r.pass);
    if a.json {
        emit_json(out, &reports);
    } else {
        for r in &reports {
            let _ = writeln!(out, "n = {}, p = {}: {} steps", r.n, r.p, r.steps.len());
            for s in &r.steps {
                let listing = match s.printed_listing_matches {
                    Some(true) => " short-list=match",
                    Some(false) => " short-list=differs",
                    None => "",
                };
                let _ = writeln!(
                    out,
                    "  d={} i={} w=[{}] len={} |E|={} sep={} chi={} ha={} closed={} first-index {}/{}{} {}",
                    s.d,
                    s.i,
                    s.w,
                    s.length,
                    s.neighbors.len(),
                    s.separating,
                    s.chi,
                    s.ha_pipeline,
                    s.ha_closed_form,
                    s.pipeline_first_index.map_or("-".into(), |k| k.to_string()),
                    s.closed_form_first_index,
                    listing,
                    if s.pass() { "ok" } else { "FAIL" },
                );
            }
            let _ = writeln!(out, "verdict: {}", if r.pass { "PASS" } else { "FAIL" });
        }
    }
    Ok(exit_for(ok))
}

fn named_cone(kind: ConeKind, n: usize, p: i64) -> Result<Cone, Usage> {
    Ok(match kind {
        ConeKind::Gs => cone_gs(n)?,
        ConeKind::LminI => lmin_prefix_cone(n, p)?,
        ConeKind::PhaWmax => pha_wmax_cone(n)?,
        ConeKind::Lmin | ConeKind::Pha => {
            return Err(Usage(format!(
                "cone {} has no fixed inequality system; use gs, lmin-i or pha-wmax",
                kind.name()
            )))
        }
    })
}

fn cone_check(a: ConeCheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    warn_primes(&[a.p], err);
    let lam = parse_lambda(a.n, &a.lambda)?;
    let mut extra = serde_json::Map::new();
    let member = match a.cone {
        ConeKind::Lmin => lmin_member(&lam, a.p)?,
        ConeKind::Pha => {
            let text = a
                .elem
                .as_deref()
                .ok_or_else(|| Usage("--cone pha needs --elem".into()))?;
            let w = parse_elem(a.n, text)?;
            let check = pha_w_check(&lam, &w, a.p)?;
            extra.insert("chi".into(), json!(format_character(&check.chi)));
            extra.insert("lattice".into(), json!(check.lattice));
            check.member
        }
        kind => {
            let cone = named_cone(kind, a.n, a.p)?;
            let violated: Vec<Vec<String>> = cone
                .violated(&lam.coords())
                .into_iter()
                .map(|k| strings(&cone.hform[k]))
                .collect();
            extra.insert("violated".into(), json!(violated));
            cone.contains(&lam)
        }
    };
    if a.json {
        let mut obj = serde_json::Map::new();
        obj.insert("cone".into(), json!(a.cone.name()));
        obj.insert("n".into(), json!(a.n));
        obj.insert("p".into(), json!(a.p));
        obj.insert("lambda".into(), json!(format_character(&lam)));
        obj.insert("member".into(), json!(member));
        obj.extend(extra);
        emit_json(out, &obj);
    } else {
        let _ = writeln!(out, "member: {member}");
        for (k, v) in extra {
            let _ = writeln!(out, "{k}: {v}");
        }
    }
    Ok(exit_for(member))
}

fn farkas(a: FarkasArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    warn_primes(&[a.p], err);
    let cone = named_cone(a.cone, a.n, a.p)?;
    let target = parse_lambda(a.n, &a.target)?.coords();
    let cert = farkas_implies(&target, &cone)?;
    let implied = cert.is_implied();
    let (key, values) = match &cert {
        FarkasCertificate::Implied { multipliers, .. } => ("multipliers", strings(multipliers)),
        FarkasCertificate::NotImplied { witness, .. } => ("witness", strings(witness)),
    };
    if a.json {
        emit_json(
            out,
            &json!({
                "cone": a.cone.name(),
                "n": a.n,
                "p": a.p,
                "target": strings(&target),
                "system": cone.hform.iter().map(|f| strings(f)).collect::<Vec<_>>(),
                "implied": implied,
                key: values,
                "verified": cert.verify(&cone.hform),
            }),
        );
    } else {
        let _ = writeln!(out, "implied: {implied}");
        let _ = writeln!(out, "{key}: {}", values.join(" "));
    }
    Ok(exit_for(implied))
}

fn verify_theorem(a: PathArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    warn_primes(&a.p, err);
    let mut certs = Vec::new();
    for &p in &a.p {
        certs.push(envelope_certificate(a.n, p)?);
    }
    let ok = certs.iter().all(|c| c.passed());
    if a.json {
        if let [single] = certs.as_slice() {
            emit_json(out, single);
        } else {
            emit_json(out, &certs);
        }
    } else {
        for c in &certs {
            let failed = c.checks.iter().filter(|k| !k.ok).count();
            let _ = writeln!(
                out,
                "n = {}, p = {}: {} generators ({} base, {} path weights), {} functionals, {} checks, {} failed: {}",
                c.n,
                c.p,
                c.base_generators.len() + c.ha_weights.len(),
                c.base_generators.len(),
                c.ha_weights.len(),
                c.functionals.len(),
                c.checks.len(),
                failed,
                if c.passed() { "PASS" } else { "FAIL" },
            );
        }
    }
    Ok(exit_for(ok))
}

fn enum_iw_cmd(a: RankArgs, out: &mut dyn Write) -> CmdResult {
    let iw = enum_iw(a.n)?;
    let rows = iw
        .iter()
        .map(|w| Ok((w, w.length(), stratum_dim(w)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    if a.json {
        let v: Vec<_> = rows
            .iter()
            .map(|(w, l, d)| json!({"elem": w, "length": l, "stratum_dim": d}))
            .collect();
        emit_json(out, &json!({"n": a.n, "count": v.len(), "elements": v}));
    } else {
        for (w, l, d) in rows {
            let _ = writeln!(out, "{w}\tlength {l}\tdim {d}");
        }
    }
    Ok(EXIT_PASS)
}

fn bruhat(a: BruhatArgs, out: &mut dyn Write) -> CmdResult {
    let v = parse_elem(a.n, &a.elem)?;
    let w = parse_elem(a.n, &a.other)?;
    let holds = match a.order {
        Order::Bruhat => bruhat_leq(&v, &w)?,
        Order::Preceq => preceq(&v, &w)?,
    };
    if a.json {
        let order = match a.order {
            Order::Bruhat => "bruhat",
            Order::Preceq => "preceq",
        };
        emit_json(
            out,
            &json!({"left": v, "right": w, "order": order, "holds": holds}),
        );
    } else {
        let _ = writeln!(out, "{holds}");
    }
    Ok(exit_for(holds))
}
