//! Newton inversion in a local quotient with a nilpotent maximal ideal.

use triangular::arith::{parse_poly, rat};
use triangular::primary::LocalQuotient;
use triangular::TriangularSet;

fn main() -> triangular::Result<()> {
    // a single point at the origin with multiplicity 27
    let set = TriangularSet::new(vec![
        parse_poly("x1^3")?,
        parse_poly("x2^3 + x1")?,
        parse_poly("x3^3 + x2")?,
    ])?;
    let q = LocalQuotient::new(vec![rat(0), rat(0), rat(0)], set);
    let u = parse_poly("1 + x3")?;
    let (v, steps) = q.inverse_with_steps(&u)?;
    println!("1/({u}) = {v}");
    println!("{steps} Newton steps");
    assert!(q.modulus().mod_mul(&u, &v).is_one());

    match q.inverse(&parse_poly("x3 + x1")?) {
        Err(e) => println!("x3 + x1: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
