//! Univariate Hermite interpolation: the roots 0 and 1, each of multiplicity 2.
//! The idempotents are the classical Hermite basis polynomials.

use triangular::arith::rat;
use triangular::interp::{idempotent_set, reconstruct};
use triangular::PrimaryFamily;

fn main() -> triangular::Result<()> {
    let family = PrimaryFamily::univariate(&[(rat(0), 2), (rat(1), 2)])?;
    let set = idempotent_set(&family, family.root())?;
    println!("branch product: {}", set.branch_product());
    for entry in &set.entries {
        println!("at {} (delta {}):", entry.coord, entry.delta);
        println!("  e  = {}", entry.e);
        println!("  u  = {}", entry.u);
        println!("  e~ = {}", entry.e_tilde);
    }
    println!("T1 = {}", reconstruct(&family)?.t.get(1));
    Ok(())
}
