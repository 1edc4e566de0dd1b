//! Coverings versus equivalences `C/G -> D`, on a dense and a non-dense functor.
//!
//! ```text
//! cargo run --example covering
//! ```

use std::sync::Arc;

use gcat_duality::exactlin::RingSpec;
use gcat_duality::fixtures;
use gcat_duality::ginv::InvFunctor;
use gcat_duality::orbit::{check_covering_characterization, orbit_category};

fn show(
    name: &str,
    f: &InvFunctor,
    witnesses: &[gcat_duality::ginv::DensityWitness],
) -> Result<(), Box<dyn std::error::Error>> {
    let o = orbit_category(f.dom())?;
    let ch = check_covering_characterization(&o, f, witnesses)?;
    println!(
        "{name}: covering {} / equivalence {}",
        ch.covering.passed(),
        ch.equivalence.passed()
    );
    print!("{}", ch.equivalence);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = RingSpec::Rationals;
    let (f, w) = fixtures::point_into_smash_with_witness(q);
    show("point into GA2#C2", &f, &[w])?;
    show("x0 into SW2", &fixtures::sw2_point_inclusion(q), &[])?;
    let o = orbit_category(&Arc::new(fixtures::sw2(q)))?;
    show("P for SW2", o.p(), &[])?;
    Ok(())
}
