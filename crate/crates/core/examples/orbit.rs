//! Orbit category of `C3` rotating a 3-cycle quiver.
//!
//! ```text
//! cargo run --example orbit
//! ```

use std::sync::Arc;

use gcat_duality::exactlin::RingSpec;
use gcat_duality::fixtures;
use gcat_duality::orbit::{
    orbit2_iso, orbit_category, satisfies_matrix_identities, to_matrix_form,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = Arc::new(fixtures::cy3(RingSpec::Rationals));
    let o = orbit_category(&c)?;
    let cat = o.category();
    for x in 0..cat.num_objects() {
        for y in 0..cat.num_objects() {
            println!(
                "dim C/G({}, {}) = {}   blocks {:?}",
                cat.object_name(x),
                cat.object_name(y),
                cat.dim(x, y),
                o.block_table(x, y)
            );
        }
    }
    let f = cat.basis_morphism(0, 1, 0);
    let m = to_matrix_form(&o, &f);
    println!(
        "a0 in matrix form satisfies the shift identities: {}",
        satisfies_matrix_identities(&o, &m)
    );
    println!("{}", orbit2_iso(&o));
    Ok(())
}
