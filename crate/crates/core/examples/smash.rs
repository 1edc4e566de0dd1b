//! Smash product of the group algebra `kC2` graded by `C2`.
//!
//! ```text
//! cargo run --example smash
//! ```

use std::sync::Arc;

use gcat_duality::exactlin::RingSpec;
use gcat_duality::fixtures;
use gcat_duality::smash::{q_factorization, smash_product, verify_free_action};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = smash_product(&Arc::new(fixtures::ga2(RingSpec::Rationals)))?;
    let cat = s.category();
    for u in 0..cat.num_objects() {
        for v in 0..cat.num_objects() {
            println!(
                "{} -> {}: picks {:?}",
                cat.object_name(u),
                cat.object_name(v),
                s.picks(u, v)
            );
        }
    }
    println!("{}", verify_free_action(&s));
    let h = q_factorization(&s)?;
    println!("H surjective on objects: {}", h.is_object_surjective());
    Ok(())
}
