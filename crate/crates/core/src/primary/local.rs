use num_traits::Zero;

use crate::arith::{MPoly, Rational};
use crate::error::{Error, Result};
use crate::triset::TriangularSet;

use super::family::show_path;

/// Newton steps before giving up. Far above anything a valid local quotient
/// of multiplicity below 2^64 can need.
const MAX_NEWTON_STEPS: usize = 64;

/// The local algebra `k[x_1..x_l] / <t_1, .., t_l>` of a primary triangular
/// set at `point`. Its maximal ideal is generated by the `x_j - a_j` and is
/// nilpotent.
#[derive(Clone, Debug)]
pub struct LocalQuotient {
    point: Vec<Rational>,
    set: TriangularSet,
}

impl LocalQuotient {
    pub fn new(point: Vec<Rational>, set: TriangularSet) -> Self {
        assert_eq!(
            point.len(),
            set.len(),
            "point and modulus must cover the same variables"
        );
        Self { point, set }
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    pub fn modulus(&self) -> &TriangularSet {
        &self.set
    }

    /// Inverse of `u` in the quotient, reduced modulo the primary set.
    pub fn inverse(&self, u: &MPoly) -> Result<MPoly> {
        self.inverse_with_steps(u).map(|(v, _)| v)
    }

    /// Newton iteration `v <- v (2 - u v)` from `v_0 = 1 / u(point)`, stopped
    /// by the exact residual test `u v = 1`. Also returns the number of
    /// updates performed.
    pub fn inverse_with_steps(&self, u: &MPoly) -> Result<(MPoly, usize)> {
        if u.top_var() > self.set.len() {
            return Err(Error::OutOfScope {
                var: u.top_var(),
                len: self.set.len(),
            });
        }
        let u = self.set.normal_form(u);
        let value = u.eval(&self.point).unwrap();
        if value.is_zero() {
            return Err(Error::NonUnit(format!("0 at {}", show_path(&self.point))));
        }
        let mut v = MPoly::constant(value.recip());
        let two = MPoly::int(2);
        for step in 0..=MAX_NEWTON_STEPS {
            let uv = self.set.mod_mul(&u, &v);
            if uv.is_one() {
                return Ok((v, step));
            }
            v = self.set.mod_mul(&v, &(&two - &uv));
        }
        Err(Error::NoConvergence(MAX_NEWTON_STEPS))
    }
}
