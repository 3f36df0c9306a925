//! Seeded random families, their reconstruction, and the exact checks.
//!
//! Usage: generate_and_verify [seed]

use std::time::Instant;

use triangular::interp::{reconstruct, verify_reconstruction, Check};
use triangular::primary::{family_to_json, gen_family};
use triangular::GenSpec;

fn main() -> triangular::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let specs = [
        GenSpec::new(&[5], (1, 4), 8, 8),
        GenSpec::new(&[3, 4], (1, 2), 12, 8),
        GenSpec::new(&[2, 2, 3], (1, 2), 8, 6),
    ];
    for spec in &specs {
        let family = gen_family(spec, seed)?;
        let start = Instant::now();
        let r = reconstruct(&family)?;
        let report = verify_reconstruction(&family, &r)?;
        println!(
            "fibers {:?}: {} points, {} nodes, verified in {:.2?}",
            spec.fibers,
            family.points().len(),
            family.node_count() - 1,
            start.elapsed()
        );
        for check in [
            Check::Factorization,
            Check::Idempotents,
            Check::LocalCongruences,
            Check::CofactorIdentity,
        ] {
            let (pass, fail, _) = report.tally(check);
            println!("  {:<24} {pass} pass, {fail} fail", check.label());
        }
        assert!(report.all_passed(), "{report}");
    }
    println!(
        "\nsmallest family as JSON:\n{}",
        family_to_json(&gen_family(&specs[0], seed)?)?
    );
    Ok(())
}
