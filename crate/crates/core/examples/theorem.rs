//! Unit, counit and triangle checks over the shipped fixture suite.
//!
//! ```text
//! cargo run --example theorem [Q|Fp:P]
//! ```

use gcat_duality::exactlin::RingSpec;
use gcat_duality::fixtures::theorem_suite;
use gcat_duality::verify_main_theorem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = RingSpec::parse(std::env::args().nth(1).as_deref().unwrap_or("Q"))?;
    let report = verify_main_theorem(&theorem_suite(ring, true));
    for rec in &report.records {
        let bad = rec.report.failures().count();
        println!(
            "{:<40} {:>3} checks  {}",
            rec.subject,
            rec.report.len(),
            if bad == 0 {
                "ok".into()
            } else {
                format!("{bad} FAILED")
            }
        );
    }
    if !report.passed() {
        std::process::exit(1);
    }
    Ok(())
}
