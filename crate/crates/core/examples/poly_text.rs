//! Parsing, printing, shifting and Taylor coefficients of polynomials.

use triangular::arith::{parse_poly, rat};

fn main() -> triangular::Result<()> {
    let f = parse_poly("(x1 - 2)^3*x2 + x2^2/3 - 1")?;
    println!("f            = {f}");
    println!("df/dx1       = {}", f.diff(1));
    println!("f(x1 + 2)    = {}", f.translate_var(1, &rat(2)));
    println!("f(2, 5)      = {}", f.eval(&[rat(2), rat(5)]).unwrap());
    println!(
        "coeff of (x1-2)^3 (x2-5) = {}",
        f.taylor_coeff(&[3, 1], &[rat(2), rat(5)])
    );
    assert_eq!(parse_poly(&f.to_string())?, f);
    Ok(())
}
