//! Prints the coordinate-relation scores for the default configuration over
//! a range of seeds and sample sizes.

use mpa_audit::transforms::{apply_pipeline, sample_uniform_square, Mixing2, MpaParams};
use mpa_audit::verify::check_coordinatewise_relation;

fn main() {
    let mixing = Mixing2::default_shear();
    let params = MpaParams::new(3.6, 0.9).unwrap();
    for n in [10_000, 100_000] {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0_f64;
        for seed in 1..=20 {
            let z = sample_uniform_square(n, seed).unwrap();
            let out = apply_pipeline(&mixing, &params, &z).unwrap();
            let v = check_coordinatewise_relation(&z, &out.zprime, 50, 0.01).unwrap();
            lo = lo.min(v.min_max_score());
            hi = hi.max(v.min_max_score());
        }
        println!("n = {n}: min-max score over seeds 1..=20 in [{lo:.4}, {hi:.4}]");
    }
}
