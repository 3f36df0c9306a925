//! Four simple points in the plane, two above each of x1 = 0 and x1 = 1.
//! Prints the monic set T, the non-monic set N and the cofactors F.

use triangular::arith::rat;
use triangular::interp::{reconstruct, verify_reconstruction};
use triangular::PrimaryFamily;

fn main() -> triangular::Result<()> {
    let points: Vec<_> = [(0, 0), (0, 1), (1, 2), (1, 3)]
        .iter()
        .map(|&(a, b)| vec![rat(a), rat(b)])
        .collect();
    let family = PrimaryFamily::radical(2, &points)?;
    let r = reconstruct(&family)?;

    for level in 1..=2 {
        println!("T{level} = {}", r.t.get(level));
        println!("N{level} = {}", r.n_at(level));
        println!("F{level} = {}", r.f_at(level));
    }

    let report = verify_reconstruction(&family, &r)?;
    print!("\n{report}");
    assert!(report.all_passed());
    Ok(())
}
