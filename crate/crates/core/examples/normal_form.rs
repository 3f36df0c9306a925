//! Normal forms modulo a triangular set, with the quotient witness.

use triangular::arith::parse_poly;
use triangular::TriangularSet;

fn main() -> triangular::Result<()> {
    let set = TriangularSet::new(vec![
        parse_poly("x1^2 - x1")?,
        parse_poly("x2^2 - (4*x1 + 1)*x2 + 6*x1")?,
    ])?;
    let f = parse_poly("x2^5 + x1^3*x2 - 7")?;
    let red = set.normal_form_with_quotients(&f);
    println!("f       = {f}");
    println!("NF(f)   = {}", red.remainder);
    for (i, q) in red.quotients.iter().enumerate() {
        println!("q{}      = {q}", i + 1);
    }

    let mut back = red.remainder.clone();
    for (q, t) in red.quotients.iter().zip(set.polys()) {
        back += &(q * t);
    }
    assert_eq!(back, f);
    assert_eq!(set.normal_form(&red.remainder), red.remainder);
    Ok(())
}
