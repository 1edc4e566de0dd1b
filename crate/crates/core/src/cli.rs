//! The `gcat` command line: subcommands over a bundle, a JSON report and
//! exit codes 0 (all checks pass), 1 (a check failed), 2 (input error).

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bundle::{parse_bundle_str, Bundle, BundleWriter, Model};
use crate::error::Error;
use crate::exactlin::RingSpec;
use crate::gcat::{same_gcat, validate_action, validate_equiv_morphism, validate_equivariant};
use crate::ginv::{is_covering, validate_invariant};
use crate::graded::{validate_deg_functor, validate_deg_morphism, validate_grading};
use crate::lincat::{validate_category, validate_functor};
use crate::orbit::{check_covering_characterization, factorize_through_P, orbit_category};
use crate::report::{Check, VerificationReport};
use crate::smash::{free_action_report, q_factorization, smash_product};
use crate::twofun::{verify_main_theorem, FixtureSuite};

#[derive(Debug, Parser)]
#[command(
    name = "gcat",
    version,
    about = "Orbit categories, smash products and their duality, checked exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Input bundle.
    #[arg(long)]
    pub input: PathBuf,
    /// Where to write the report (default: stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Restrict to checks (validate, verify-theorem, roundtrip) or to the
    /// named structure (orbit, smash, check-covering, factorize).
    #[arg(long = "check", value_name = "NAME")]
    pub checks: Vec<String>,
    /// Leave `wall_time_ms` out of the report.
    #[arg(long)]
    pub no_timing: bool,
    /// Override the bundle's ring: `Q` or `Fp:p`.
    #[arg(long)]
    pub ring: Option<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run every validator on every structure in the bundle.
    Validate(Flags),
    /// Build C/G with (P, psi) for a G-category.
    Orbit(Flags),
    /// Build B#G with (Q, id) for a graded category.
    Smash(Flags),
    /// Test invariant functors for being G-coverings.
    CheckCovering(Flags),
    /// Factor invariant functors through (P, psi).
    Factorize(Flags),
    /// The full 2-equivalence battery.
    VerifyTheorem(Flags),
    /// Only the unit and counit equations and the triangle identities.
    Roundtrip(Flags),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Orbit(_) => "orbit",
            Command::Smash(_) => "smash",
            Command::CheckCovering(_) => "check-covering",
            Command::Factorize(_) => "factorize",
            Command::VerifyTheorem(_) => "verify-theorem",
            Command::Roundtrip(_) => "roundtrip",
        }
    }

    pub fn flags(&self) -> &Flags {
        match self {
            Command::Validate(f)
            | Command::Orbit(f)
            | Command::Smash(f)
            | Command::CheckCovering(f)
            | Command::Factorize(f)
            | Command::VerifyTheorem(f)
            | Command::Roundtrip(f) => f,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub status: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<Bundle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Exit code and report, or exit code 2 with a message.
#[derive(Debug)]
pub enum Outcome {
    Done { code: i32, report: Box<Report> },
    InputError(String),
}

impl Outcome {
    pub fn code(&self) -> i32 {
        match self {
            Outcome::Done { code, .. } => *code,
            Outcome::InputError(_) => 2,
        }
    }
}

// Violated axioms are failed checks; everything else is bad input.
fn is_check_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::Validation { .. } | Error::NotNatural(_) | Error::Witness(_)
    )
}

struct Failure(Error);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e)
    }
}

fn record_err(r: &mut VerificationReport, name: &str, e: Error) -> Result<(), Failure> {
    if is_check_failure(&e) {
        r.fail(name, e.to_string());
        Ok(())
    } else {
        Err(Failure(e))
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Runs one subcommand on the bytes of its input bundle.
pub fn run_on_bytes(cmd: &Command, input: &[u8]) -> Outcome {
    let start = Instant::now();
    let flags = cmd.flags();
    let digest = hex_digest(input);
    let finish = |report: VerificationReport, artifact: Option<Bundle>| {
        let mut checks = report.checks;
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = checks.iter().all(|c| c.passed);
        let report = Report {
            command: cmd.name().to_string(),
            input_digest: digest.clone(),
            status: if passed { "pass" } else { "fail" }.to_string(),
            checks,
            artifact,
            wall_time_ms: (!flags.no_timing).then(|| start.elapsed().as_millis() as u64),
        };
        Outcome::Done {
            code: if passed { 0 } else { 1 },
            report: Box::new(report),
        }
    };
    let text = match std::str::from_utf8(input) {
        Ok(t) => t,
        Err(e) => return Outcome::InputError(format!("input is not UTF-8: {e}")),
    };
    let ring = match flags.ring.as_deref().map(RingSpec::parse).transpose() {
        Ok(r) => r,
        Err(e) => return Outcome::InputError(format!("--ring: {e}")),
    };
    let model = match parse_bundle_str(text).and_then(|b| b.load(ring)) {
        Ok(m) => m,
        Err(e) if is_check_failure(&e) => {
            let mut r = VerificationReport::new();
            r.fail("load", e.to_string());
            return finish(r, None);
        }
        Err(e) => return Outcome::InputError(e.to_string()),
    };
    let result = match cmd {
        Command::Validate(_) => validate(&model).map(|r| (r, None)),
        Command::Orbit(_) => orbit(&model, flags),
        Command::Smash(_) => smash(&model, flags),
        Command::CheckCovering(_) => check_covering(&model, flags).map(|r| (r, None)),
        Command::Factorize(_) => factorize(&model, flags),
        Command::VerifyTheorem(_) => Ok((theorem(&model, false), None)),
        Command::Roundtrip(_) => Ok((theorem(&model, true), None)),
    };
    let (report, artifact) = match result {
        Ok(x) => x,
        Err(Failure(e)) => return Outcome::InputError(e.to_string()),
    };
    let filtered = match cmd {
        Command::Validate(_) | Command::VerifyTheorem(_) | Command::Roundtrip(_) => {
            filter(report, &flags.checks)
        }
        _ => Ok(report),
    };
    match filtered {
        Ok(r) => finish(r, artifact),
        Err(msg) => Outcome::InputError(msg),
    }
}

/// Keeps checks named `NAME`, under `NAME/` or ending in `/NAME`.
fn filter(report: VerificationReport, names: &[String]) -> Result<VerificationReport, String> {
    if names.is_empty() {
        return Ok(report);
    }
    let hit = |c: &Check, n: &str| {
        c.name == n || c.name.starts_with(&format!("{n}/")) || c.name.ends_with(&format!("/{n}"))
    };
    if let Some(n) = names
        .iter()
        .find(|n| !report.checks.iter().any(|c| hit(c, n)))
    {
        return Err(format!("unknown check {n:?}"));
    }
    Ok(VerificationReport {
        checks: report
            .checks
            .into_iter()
            .filter(|c| names.iter().any(|n| hit(c, n)))
            .collect(),
    })
}

fn validate(m: &Model) -> Result<VerificationReport, Failure> {
    let mut r = VerificationReport::new();
    for (n, c) in &m.categories {
        r.absorb(&format!("category:{n}"), validate_category(c));
    }
    for (n, c) in &m.gcategories {
        r.absorb(&format!("gcategory:{n}"), validate_action(c));
    }
    for (n, b) in &m.graded {
        r.absorb(&format!("graded:{n}"), validate_grading(b));
    }
    for (n, f) in &m.functors {
        r.absorb(&format!("functor:{n}"), validate_functor(f));
    }
    for (n, _) in &m.transformations {
        // naturality was enforced on load
        r.pass(format!("transformation:{n}/natural"));
    }
    for (n, e) in &m.equiv_functors {
        r.absorb(&format!("equiv_functor:{n}"), validate_equivariant(e));
    }
    for (n, f, ws) in &m.inv_functors {
        r.absorb(&format!("inv_functor:{n}"), validate_invariant(f));
        for (i, w) in ws.iter().enumerate() {
            let name = format!("inv_functor:{n}/witness-{i}");
            match w.verify(f.functor()) {
                Ok(()) => r.pass(name),
                Err(e) => record_err(&mut r, &name, e)?,
            }
        }
    }
    for (n, h) in &m.deg_functors {
        r.absorb(&format!("deg_functor:{n}"), validate_deg_functor(h));
    }
    for (n, c) in &m.equiv_cells {
        r.absorb(&format!("equiv_cell:{n}"), validate_equiv_morphism(c));
    }
    for (n, c) in &m.deg_cells {
        r.absorb(&format!("deg_cell:{n}"), validate_deg_morphism(c));
    }
    Ok(r)
}

fn selected<'a, T>(
    list: &'a [(String, T)],
    names: &[String],
    kind: &str,
) -> Result<Vec<&'a (String, T)>, Failure> {
    if names.is_empty() {
        return Ok(list.iter().collect());
    }
    names
        .iter()
        .map(|n| {
            list.iter()
                .find(|(k, _)| k == n)
                .ok_or_else(|| Failure(Error::UnknownName(format!("{kind} {n}"))))
        })
        .collect()
}

fn first_selected<'a, T>(
    list: &'a [(String, T)],
    names: &[String],
    kind: &str,
) -> Result<&'a (String, T), Failure> {
    selected(list, names, kind)?
        .into_iter()
        .next()
        .ok_or_else(|| Failure(Error::UnknownName(format!("no {kind} in the bundle"))))
}

fn orbit(m: &Model, flags: &Flags) -> Result<(VerificationReport, Option<Bundle>), Failure> {
    let (name, c) = first_selected(&m.gcategories, &flags.checks, "gcategory")?;
    let mut r = VerificationReport::new();
    let action = validate_action(c);
    let ok = action.passed();
    r.absorb(&format!("gcategory:{name}"), action);
    if !ok {
        return Ok((r, None));
    }
    let o = match orbit_category(c) {
        Ok(o) => o,
        Err(e) => {
            record_err(&mut r, "orbit/construction", e)?;
            return Ok((r, None));
        }
    };
    r.absorb("orbit", validate_category(o.category()));
    r.absorb("orbit", validate_grading(o.carrier()));
    r.absorb("orbit/P", validate_invariant(o.p()));
    match is_covering(o.p(), &[]) {
        Ok(cov) => r.absorb("orbit/P", cov),
        Err(e) => record_err(&mut r, "orbit/P/covering", e)?,
    }
    let base = c.base();
    let n = base.num_objects();
    let bad = (0..n * n).find(|k| {
        let (x, y) = (k / n, k % n);
        let want: usize = c
            .group()
            .elements()
            .map(|a| base.dim(c.act_obj(a, x), y))
            .sum();
        o.category().dim(x, y) != want
    });
    r.record(
        "orbit/dimension",
        bad.map_or(Ok(()), |k| {
            Err(format!(
                "dim (C/G)({},{}) differs from the block sum",
                base.object_name(k / n),
                base.object_name(k % n)
            ))
        }),
    );
    let mut w = BundleWriter::new(m.ring);
    w.orbit(&format!("{name}/G"), name, &o);
    Ok((r, Some(w.finish())))
}

fn smash(m: &Model, flags: &Flags) -> Result<(VerificationReport, Option<Bundle>), Failure> {
    let (name, b) = first_selected(&m.graded, &flags.checks, "graded")?;
    let mut r = VerificationReport::new();
    let grading = validate_grading(b);
    let ok = grading.passed();
    r.absorb(&format!("graded:{name}"), grading);
    if !ok {
        return Ok((r, None));
    }
    let s = match smash_product(b) {
        Ok(s) => s,
        Err(e) => {
            record_err(&mut r, "smash/construction", e)?;
            return Ok((r, None));
        }
    };
    r.absorb("smash", validate_category(s.category()));
    r.absorb("smash", validate_action(s.carrier()));
    r.absorb("smash", free_action_report(s.carrier()));
    r.absorb("smash/Q", validate_invariant(s.q()));
    match is_covering(s.q(), &[]) {
        Ok(cov) => r.absorb("smash/Q", cov),
        Err(e) => record_err(&mut r, "smash/Q/covering", e)?,
    }
    match q_factorization(&s) {
        Ok(_) => r.pass("smash/Q/factorization-equivalence"),
        Err(e) => record_err(&mut r, "smash/Q/factorization-equivalence", e)?,
    }
    let mut w = BundleWriter::new(m.ring);
    w.smash(&format!("{name}#G"), name, &s);
    Ok((r, Some(w.finish())))
}

fn check_covering(m: &Model, flags: &Flags) -> Result<VerificationReport, Failure> {
    let mut r = VerificationReport::new();
    let all: Vec<_> = m
        .inv_functors
        .iter()
        .map(|(n, f, w)| (n.clone(), (f, w)))
        .collect();
    for (name, (f, ws)) in selected(&all, &flags.checks, "inv_functor")? {
        r.absorb(name, validate_invariant(f));
        match is_covering(f, ws) {
            Ok(cov) => r.absorb(name, cov),
            Err(e) => record_err(&mut r, &format!("{name}/dense"), e)?,
        }
    }
    Ok(r)
}

fn factorize(m: &Model, flags: &Flags) -> Result<(VerificationReport, Option<Bundle>), Failure> {
    let mut r = VerificationReport::new();
    let mut w = BundleWriter::new(m.ring);
    let all: Vec<_> = m
        .inv_functors
        .iter()
        .map(|(n, f, w)| (n.clone(), (f, w)))
        .collect();
    for (name, (f, ws)) in selected(&all, &flags.checks, "inv_functor")? {
        let dom = m
            .gcategories
            .iter()
            .find(|(_, c)| same_gcat(c, f.dom()))
            .map(|(n, _)| n.clone())
            .unwrap_or_else(|| format!("{name}.dom"));
        let o = match orbit_category(f.dom()) {
            Ok(o) => o,
            Err(e) => {
                record_err(&mut r, &format!("{name}/factorization"), e)?;
                continue;
            }
        };
        match factorize_through_P(&o, f) {
            Ok(h) => {
                r.pass(format!("{name}/factorization"));
                w.graded(&format!("{dom}/G"), o.carrier());
                w.inv_functor(&format!("{dom}/G.P"), o.p(), &[]);
                w.functor(&format!("{name}/G"), &h);
            }
            Err(e) => {
                record_err(&mut r, &format!("{name}/factorization"), e)?;
                continue;
            }
        }
        match check_covering_characterization(&o, f, ws) {
            Ok(ch) => r.absorb(name, ch.report()),
            Err(e) => record_err(&mut r, &format!("{name}/covering-iff-equivalence"), e)?,
        }
    }
    Ok((r, Some(w.finish())))
}

const ROUNDTRIP: [&str; 7] = [
    "eq1",
    "eq2",
    "eq3",
    "eq4",
    "triangle-sharp",
    "triangle-slash",
    "construction",
];

fn theorem(m: &Model, roundtrip_only: bool) -> VerificationReport {
    let mut suite = FixtureSuite {
        gcats: m.gcategories.clone(),
        graded: m.graded.clone(),
        ..FixtureSuite::default()
    };
    if !roundtrip_only {
        suite.equiv_functors = m.equiv_functors.clone();
        suite.equiv_cells = m.equiv_cells.clone();
        suite.deg_functors = m.deg_functors.clone();
        suite.deg_cells = m.deg_cells.clone();
    }
    let mut r = verify_main_theorem(&suite).flatten();
    if roundtrip_only {
        r.checks
            .retain(|c| ROUNDTRIP.iter().any(|k| c.name.ends_with(&format!("/{k}"))));
    }
    r
}

/// Parses `std::env::args`, runs, writes the report and returns the exit
/// code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    execute(&cli.command)
}

/// Reads the input, runs, writes the report; returns the exit code.
pub fn execute(cmd: &Command) -> i32 {
    let flags = cmd.flags();
    let bytes = match std::fs::read(&flags.input) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("gcat: cannot read {}: {e}", flags.input.display());
            return 2;
        }
    };
    match run_on_bytes(cmd, &bytes) {
        Outcome::InputError(msg) => {
            eprintln!("gcat: {msg}");
            2
        }
        Outcome::Done { code, report } => {
            let text = report.to_json();
            match &flags.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("gcat: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => print!("{text}"),
            }
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAIL {} at {}", c.name, c.locus.as_deref().unwrap_or(""));
            }
            code
        }
    }
}
