//! Build a bundle in code, write it out and feed it to the `gcat` driver
//! in-process.
//!
//! ```text
//! cargo run --example bundle
//! ```

use std::sync::Arc;

use gcat_duality::bundle::{bundle_to_string, BundleWriter};
use gcat_duality::cli::{run_on_bytes, Command, Flags, Outcome};
use gcat_duality::exactlin::RingSpec;
use gcat_duality::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = RingSpec::Rationals;
    let mut w = BundleWriter::new(q);
    w.gcategory("CY3", &Arc::new(fixtures::cy3(q)));
    w.equiv_functor("SW2-nonstrict", &fixtures::sw2_nonstrict(q));
    let text = bundle_to_string(&w.finish());
    println!("{text}");

    let flags = Flags {
        input: "<memory>".into(),
        output: None,
        checks: vec!["eq1".into()],
        no_timing: true,
        ring: None,
    };
    match run_on_bytes(&Command::VerifyTheorem(flags), text.as_bytes()) {
        Outcome::Done { code, report } => println!("exit {code}\n{}", report.to_json()),
        Outcome::InputError(e) => eprintln!("input error: {e}"),
    }
    Ok(())
}
