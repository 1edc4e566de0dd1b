//! Regenerates the shipped bundles and golden reports under `fixtures/`.
//!
//! ```text
//! cargo run --example write_fixtures
//! ```

use std::path::Path;

use gcat_duality::bundle::{bundle_to_string, emit_bundle};
use gcat_duality::cli::{run_on_bytes, Command, Flags, Outcome};
use gcat_duality::fixtures::shipped_bundles;

fn golden(cmd: fn(Flags) -> Command, file: &str, checks: &[&str]) -> (String, Command) {
    let flags = Flags {
        input: file.into(),
        output: None,
        checks: checks.iter().map(|s| s.to_string()).collect(),
        no_timing: true,
        ring: None,
    };
    (file.to_string(), cmd(flags))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(dir.join("golden"))?;
    for (name, b) in shipped_bundles() {
        emit_bundle(&b, &dir.join(name))?;
        println!("wrote {name} ({} bytes)", bundle_to_string(&b).len());
    }
    let runs = [
        (
            "verify-theorem_suite.json",
            golden(Command::VerifyTheorem, "suite.json", &[]),
        ),
        (
            "verify-theorem_suite_f5.json",
            golden(Command::VerifyTheorem, "suite_f5.json", &[]),
        ),
        ("orbit_pt2.json", golden(Command::Orbit, "pt2.json", &[])),
        ("smash_ga2.json", golden(Command::Smash, "ga2.json", &[])),
        (
            "check-covering_non_dense.json",
            golden(Command::CheckCovering, "non_dense.json", &[]),
        ),
        (
            "validate_neg_scaled_action.json",
            golden(Command::Validate, "neg_scaled_action.json", &[]),
        ),
        (
            "validate_neg_misgraded.json",
            golden(Command::Validate, "neg_misgraded.json", &[]),
        ),
        (
            "validate_neg_broken_square.json",
            golden(Command::Validate, "neg_broken_square.json", &[]),
        ),
    ];
    for (out, (input, cmd)) in runs {
        let bytes = std::fs::read(dir.join(&input))?;
        match run_on_bytes(&cmd, &bytes) {
            Outcome::Done { code, report } => {
                std::fs::write(dir.join("golden").join(out), report.to_json())?;
                println!("golden {out}: exit {code}");
            }
            Outcome::InputError(msg) => return Err(msg.into()),
        }
    }
    Ok(())
}
