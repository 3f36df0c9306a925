use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{rat, Rational};

/// Multivariate polynomial over the rationals in the ordered variables
/// `x1 < x2 < ...`, stored recursively: a dense univariate polynomial in its
/// highest variable whose coefficients only involve strictly lower variables.
///
/// The representation is canonical (no trailing zero coefficients, degree at
/// least one for the `Dense` case), so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MPoly {
    Const(Rational),
    Dense { var: usize, coeffs: Vec<MPoly> },
}

impl Default for MPoly {
    fn default() -> Self {
        MPoly::zero()
    }
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::Const(Rational::zero())
    }

    pub fn one() -> Self {
        MPoly::Const(Rational::one())
    }

    pub fn constant(q: Rational) -> Self {
        MPoly::Const(q)
    }

    pub fn int(n: i64) -> Self {
        MPoly::Const(rat(n))
    }

    /// The variable `x_i`, `i >= 1`.
    pub fn var(i: usize) -> Self {
        assert!(i >= 1, "variables are numbered from 1");
        MPoly::Dense {
            var: i,
            coeffs: vec![MPoly::zero(), MPoly::one()],
        }
    }

    /// `x_i - a`.
    pub fn linear(i: usize, a: &Rational) -> Self {
        MPoly::from_coeffs(i, vec![MPoly::Const(-a), MPoly::one()])
    }

    /// Builds `sum_k coeffs[k] * x_var^k`. Every coefficient must only involve
    /// variables below `var`.
    pub fn from_coeffs(var: usize, mut coeffs: Vec<MPoly>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.top_var() < var));
        while coeffs.last().is_some_and(MPoly::is_zero) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => MPoly::zero(),
            1 => coeffs.pop().unwrap(),
            _ => MPoly::Dense { var, coeffs },
        }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, where
    /// `exponents[j]` is the power of `x_{j+1}`.
    pub fn from_terms<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (&'a [u32], Rational)>,
    {
        let mut acc = MPoly::zero();
        for (exps, c) in terms {
            let mut m = MPoly::Const(c);
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    m = &m * &MPoly::var(j + 1).pow(e);
                }
            }
            acc += &m;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MPoly::Const(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, MPoly::Const(q) if q.is_one())
    }

    pub fn as_constant(&self) -> Option<&Rational> {
        match self {
            MPoly::Const(q) => Some(q),
            MPoly::Dense { .. } => None,
        }
    }

    /// Index of the highest variable present; 0 for constants.
    pub fn top_var(&self) -> usize {
        match self {
            MPoly::Const(_) => 0,
            MPoly::Dense { var, .. } => *var,
        }
    }

    /// Coefficients in the top variable, lowest degree first. A constant is
    /// its own single coefficient.
    pub fn coeffs(&self) -> &[MPoly] {
        match self {
            MPoly::Const(_) => std::slice::from_ref(self),
            MPoly::Dense { coeffs, .. } => coeffs,
        }
    }

    pub fn degree_in(&self, var: usize) -> usize {
        match self {
            MPoly::Const(_) => 0,
            MPoly::Dense { var: v, coeffs } => {
                if *v == var {
                    coeffs.len() - 1
                } else if *v > var {
                    coeffs.iter().map(|c| c.degree_in(var)).max().unwrap_or(0)
                } else {
                    0
                }
            }
        }
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `x_var`.
    /// The coefficients may involve variables above `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let top = self.top_var();
        if top < var {
            return vec![self.clone()];
        }
        if top == var {
            return self.coeffs().to_vec();
        }
        let mut out: Vec<MPoly> = Vec::new();
        let x = MPoly::var(top);
        let mut xk = MPoly::one();
        for c in self.coeffs() {
            for (r, cr) in c.coeffs_in(var).into_iter().enumerate() {
                if out.len() <= r {
                    out.resize(r + 1, MPoly::zero());
                }
                out[r] += &(&cr * &xk);
            }
            xk = &xk * &x;
        }
        out
    }

    /// Leading coefficient in `x_var`.
    pub fn leading_coeff_in(&self, var: usize) -> MPoly {
        self.coeffs_in(var).pop().unwrap_or_default()
    }

    pub fn scale(&self, q: &Rational) -> MPoly {
        if q.is_zero() {
            return MPoly::zero();
        }
        match self {
            MPoly::Const(c) => MPoly::Const(c * q),
            MPoly::Dense { var, coeffs } => MPoly::Dense {
                var: *var,
                coeffs: coeffs.iter().map(|c| c.scale(q)).collect(),
            },
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `x_1 = a_1, ..., x_m = a_m`.
    pub fn eval_prefix(&self, a: &[Rational]) -> MPoly {
        match self {
            MPoly::Const(_) => self.clone(),
            MPoly::Dense { var, coeffs } => {
                if *var <= a.len() {
                    // all coefficients become constants
                    let x = &a[*var - 1];
                    let mut acc = Rational::zero();
                    for c in coeffs.iter().rev() {
                        let cv = c.eval_prefix(a);
                        acc = acc * x + cv.as_constant().expect("lower variables substituted");
                    }
                    MPoly::Const(acc)
                } else {
                    MPoly::from_coeffs(*var, coeffs.iter().map(|c| c.eval_prefix(a)).collect())
                }
            }
        }
    }

    /// Full evaluation; `None` if some variable beyond `a` remains.
    pub fn eval(&self, a: &[Rational]) -> Option<Rational> {
        if self.top_var() > a.len() {
            return None;
        }
        self.eval_prefix(a).as_constant().cloned()
    }

    /// Formal partial derivative with respect to `x_var`.
    pub fn diff(&self, var: usize) -> MPoly {
        match self {
            MPoly::Const(_) => MPoly::zero(),
            MPoly::Dense { var: v, coeffs } => {
                if *v < var {
                    MPoly::zero()
                } else if *v == var {
                    let out = coeffs
                        .iter()
                        .enumerate()
                        .skip(1)
                        .map(|(k, c)| c.scale(&rat(k as i64)))
                        .collect();
                    MPoly::from_coeffs(*v, out)
                } else {
                    MPoly::from_coeffs(*v, coeffs.iter().map(|c| c.diff(var)).collect())
                }
            }
        }
    }

    /// Substitutes `x_var -> x_var + a`.
    pub fn translate_var(&self, var: usize, a: &Rational) -> MPoly {
        match self {
            MPoly::Const(_) => self.clone(),
            MPoly::Dense { var: v, coeffs } => {
                if *v < var {
                    self.clone()
                } else if *v == var {
                    // Horner in (x + a) on the coefficient vector
                    let mut acc: Vec<MPoly> = Vec::with_capacity(coeffs.len());
                    for c in coeffs.iter().rev() {
                        // acc <- acc * (x + a) + c
                        let mut next = vec![MPoly::zero(); acc.len() + 1];
                        for (k, ak) in acc.iter().enumerate() {
                            next[k + 1] += ak;
                            next[k] += &ak.scale(a);
                        }
                        next[0] += c;
                        acc = next;
                    }
                    MPoly::from_coeffs(*v, acc)
                } else {
                    MPoly::from_coeffs(*v, coeffs.iter().map(|c| c.translate_var(var, a)).collect())
                }
            }
        }
    }

    /// Substitutes `x_j -> x_j + a_j` for every `j <= a.len()`. The monomial
    /// coefficients of the result are the shifted-basis coefficients of `self`
    /// at the point `a`.
    pub fn translate(&self, a: &[Rational]) -> MPoly {
        a.iter()
            .enumerate()
            .fold(self.clone(), |p, (j, aj)| p.translate_var(j + 1, aj))
    }

    /// Coefficients `c_r` with `self = sum_r c_r (x_var - a)^r`.
    pub fn shift(&self, var: usize, a: &Rational) -> Vec<MPoly> {
        self.translate_var(var, a).coeffs_in(var)
    }

    /// Inverse of [`MPoly::shift`]: `sum_r coeffs[r] (x_var - a)^r`.
    pub fn unshift(var: usize, a: &Rational, coeffs: &[MPoly]) -> MPoly {
        let lin = MPoly::linear(var, a);
        coeffs
            .iter()
            .rev()
            .fold(MPoly::zero(), |acc, c| &(&acc * &lin) + c)
    }

    /// Taylor coefficient of order `orders` at `point`, read off the
    /// shifted expansion (nested shifts in every variable).
    pub fn taylor_coeff(&self, orders: &[u32], point: &[Rational]) -> Rational {
        assert_eq!(orders.len(), point.len());
        let mut p = self.translate(point);
        // descend from the highest variable that the multi-index covers
        for (j, &i) in orders.iter().enumerate().rev() {
            p = p
                .coeffs_in(j + 1)
                .get(i as usize)
                .cloned()
                .unwrap_or_default();
        }
        p.as_constant()
            .cloned()
            .expect("point covers every variable of the polynomial")
    }

    /// Same quantity as [`MPoly::taylor_coeff`], computed as
    /// `(1 / i_1! ... i_m!) * d^{|i|} f / dx^i` evaluated at `point`.
    pub fn taylor_coeff_by_derivatives(&self, orders: &[u32], point: &[Rational]) -> Rational {
        assert_eq!(orders.len(), point.len());
        let mut p = self.clone();
        let mut fact = BigInt::one();
        for (j, &i) in orders.iter().enumerate() {
            for k in 1..=i {
                p = p.diff(j + 1);
                fact *= BigInt::from(k);
            }
        }
        let v = p
            .eval(point)
            .expect("point covers every variable of the polynomial");
        v / Rational::from_integer(fact)
    }

    /// All nonzero terms as `(exponents, coefficient)`, with `exponents` of
    /// length `nvars` (which must be at least `top_var`).
    pub fn terms(&self, nvars: usize) -> Vec<(Vec<u32>, Rational)> {
        assert!(nvars >= self.top_var());
        let mut out = Vec::new();
        let mut exps = vec![0u32; nvars];
        self.collect_terms(&mut exps, &mut out);
        out
    }

    fn collect_terms(&self, exps: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, Rational)>) {
        match self {
            MPoly::Const(q) => {
                if !q.is_zero() {
                    out.push((exps.clone(), q.clone()));
                }
            }
            MPoly::Dense { var, coeffs } => {
                for (k, c) in coeffs.iter().enumerate() {
                    exps[var - 1] = k as u32;
                    c.collect_terms(exps, out);
                }
                exps[var - 1] = 0;
            }
        }
    }

    /// Visits every nonzero rational coefficient.
    pub fn for_each_coeff<F: FnMut(&Rational)>(&self, f: &mut F) {
        match self {
            MPoly::Const(q) => {
                if !q.is_zero() {
                    f(q)
                }
            }
            MPoly::Dense { coeffs, .. } => coeffs.iter().for_each(|c| c.for_each_coeff(f)),
        }
    }

    pub fn num_terms(&self) -> usize {
        let mut n = 0;
        self.for_each_coeff(&mut |_| n += 1);
        n
    }
}

fn add_polys(a: &MPoly, b: &MPoly, negate_b: bool) -> MPoly {
    let (va, vb) = (a.top_var(), b.top_var());
    match (a, b) {
        (MPoly::Const(x), MPoly::Const(y)) => MPoly::Const(if negate_b { x - y } else { x + y }),
        _ if va == vb => {
            let (ca, cb) = (a.coeffs(), b.coeffs());
            let len = ca.len().max(cb.len());
            let out = (0..len)
                .map(|k| match (ca.get(k), cb.get(k)) {
                    (Some(x), Some(y)) => add_polys(x, y, negate_b),
                    (Some(x), None) => x.clone(),
                    (None, Some(y)) if negate_b => -y,
                    (None, Some(y)) => y.clone(),
                    (None, None) => unreachable!(),
                })
                .collect();
            MPoly::from_coeffs(va, out)
        }
        _ if va > vb => {
            let mut out = a.coeffs().to_vec();
            out[0] = add_polys(&out[0], b, negate_b);
            MPoly::from_coeffs(va, out)
        }
        _ => {
            let mut out: Vec<MPoly> = if negate_b {
                b.coeffs().iter().map(|c| -c).collect()
            } else {
                b.coeffs().to_vec()
            };
            out[0] = add_polys(a, &out[0], false);
            MPoly::from_coeffs(vb, out)
        }
    }
}

fn mul_polys(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero();
    }
    let (va, vb) = (a.top_var(), b.top_var());
    match (a, b) {
        (MPoly::Const(x), _) => b.scale(x),
        (_, MPoly::Const(y)) => a.scale(y),
        _ if va == vb => {
            let (ca, cb) = (a.coeffs(), b.coeffs());
            let mut out = vec![MPoly::zero(); ca.len() + cb.len() - 1];
            for (i, x) in ca.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in cb.iter().enumerate() {
                    if !y.is_zero() {
                        out[i + j] += &mul_polys(x, y);
                    }
                }
            }
            MPoly::from_coeffs(va, out)
        }
        _ if va > vb => MPoly::Dense {
            var: va,
            coeffs: a.coeffs().iter().map(|c| mul_polys(c, b)).collect(),
        },
        _ => MPoly::Dense {
            var: vb,
            coeffs: b.coeffs().iter().map(|c| mul_polys(a, c)).collect(),
        },
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        add_polys(self, rhs, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        add_polys(self, rhs, true)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        mul_polys(self, rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        match self {
            MPoly::Const(q) => MPoly::Const(-q),
            MPoly::Dense { var, coeffs } => MPoly::Dense {
                var: *var,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        *self = &*self - rhs;
    }
}

impl From<Rational> for MPoly {
    fn from(q: Rational) -> Self {
        MPoly::Const(q)
    }
}

impl std::iter::Sum for MPoly {
    fn sum<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        iter.fold(MPoly::zero(), |acc, p| &acc + &p)
    }
}

// Text form: grouped by the top variable, highest power first, e.g.
// `x2^2 - (4*x1 + 1)*x2 + 6*x1`. Each term is a sign plus an unsigned body.
fn signed_terms(p: &MPoly) -> Vec<(bool, String)> {
    match p {
        MPoly::Const(q) if q.is_zero() => vec![],
        MPoly::Const(q) => vec![(q.is_negative(), q.abs().to_string())],
        MPoly::Dense { var, coeffs } => {
            let mut out = Vec::new();
            for (k, c) in coeffs.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                if k == 0 {
                    out.extend(signed_terms(c));
                    continue;
                }
                let mono = if k == 1 {
                    format!("x{var}")
                } else {
                    format!("x{var}^{k}")
                };
                let inner = signed_terms(c);
                if inner.len() == 1 {
                    let (neg, body) = &inner[0];
                    let body = if body == "1" {
                        mono
                    } else {
                        format!("{body}*{mono}")
                    };
                    out.push((*neg, body));
                } else {
                    let neg = inner[0].0;
                    let shown = if neg {
                        join_terms(&signed_terms(&-c))
                    } else {
                        join_terms(&inner)
                    };
                    out.push((neg, format!("({shown})*{mono}")));
                }
            }
            out
        }
    }
}

fn join_terms(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(body);
    }
    s
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(&signed_terms(self)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, ratio};

    fn p(s: &str) -> MPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p("x1 + 1") + &p("x1 - 1"), p("2*x1"));
        assert_eq!(&p("x1 - 1") * &p("x1"), p("x1^2 - x1"));
        assert!((&p("x2^3 + x1") * &MPoly::zero()).is_zero());
        assert_eq!(&p("x2 + x1") - &p("x2"), p("x1"));
        assert_eq!(-&p("x1 - 3"), p("3 - x1"));
        assert_eq!(p("x1 + 2").scale(&ratio(1, 2)), p("1/2*x1 + 1"));
    }

    #[test]
    fn cancellation_collapses_levels() {
        let f = &p("x3*x1 + x2") - &p("x3*x1");
        assert_eq!(f.top_var(), 2);
        assert_eq!(f, MPoly::var(2));
    }

    #[test]
    fn eval_prefix_examples() {
        assert!(p("x1^2 - x1").eval_prefix(&[rat(1)]).is_zero());
        let f = p("x2^2 - (1 + 4*x1)*x2 + 6*x1");
        assert_eq!(f.eval_prefix(&[rat(0)]), p("x2^2 - x2"));
        assert_eq!(MPoly::int(5).eval_prefix(&[]), MPoly::int(5));
        assert_eq!(f.eval(&[rat(1), rat(2)]), Some(rat(0)));
        assert_eq!(f.eval(&[rat(1)]), None);
    }

    #[test]
    fn shift_examples() {
        let x2 = p("x1^2");
        assert_eq!(
            x2.shift(1, &rat(1)),
            vec![MPoly::int(1), MPoly::int(2), MPoly::int(1)]
        );
        assert_eq!(
            x2.shift(1, &rat(0)),
            vec![MPoly::int(0), MPoly::int(0), MPoly::int(1)]
        );
        let f = p("x1^2 - x1");
        let c = f.shift(1, &rat(1));
        assert_eq!(c, vec![MPoly::int(0), MPoly::int(1), MPoly::int(1)]);
        // multiplication oracle: (x-1)^2 + (x-1)
        let y = MPoly::linear(1, &rat(1));
        assert_eq!(&(&y * &y) + &y, f);
        assert_eq!(MPoly::unshift(1, &rat(1), &c), f);
    }

    #[test]
    fn shift_in_lower_variable() {
        let f = p("x2^2*x1 + x1^2 + 3");
        let c = f.shift(1, &rat(2));
        assert_eq!(MPoly::unshift(1, &rat(2), &c), f);
        assert_eq!(c.len(), 3);
        assert_eq!(c[2], MPoly::one());
    }

    #[test]
    fn taylor_examples() {
        assert_eq!(p("x1^2").taylor_coeff(&[2], &[rat(0)]), rat(1));
        assert_eq!(p("x1^2").taylor_coeff(&[1], &[rat(1)]), rat(2));
        let f = p("x2^2 - (1 + 4*x1)*x2 + 6*x1");
        let origin = [rat(0), rat(0)];
        assert_eq!(f.taylor_coeff(&[1, 1], &origin), rat(-4));
        assert_eq!(f.taylor_coeff_by_derivatives(&[1, 1], &origin), rat(-4));
    }

    #[test]
    fn diff_examples() {
        assert_eq!(p("x1^2 - x1").diff(1), p("2*x1 - 1"));
        assert!(p("6*x1").diff(2).is_zero());
        assert_eq!(p("x2^2 - (1 + 4*x1)*x2").diff(2), p("2*x2 - (1 + 4*x1)"));
    }

    #[test]
    fn display_groups_by_top_variable() {
        assert_eq!(
            p("x2^2 - (1 + 4*x1)*x2 + 6*x1").to_string(),
            "x2^2 - (4*x1 + 1)*x2 + 6*x1"
        );
        assert_eq!(p("(2*x1 - 1)*x2^2").to_string(), "(2*x1 - 1)*x2^2");
        assert_eq!(p("-x1^3 + 3/4").to_string(), "-x1^3 + 3/4");
        assert_eq!(MPoly::zero().to_string(), "0");
        assert_eq!(p("-2/3*x1*x2").to_string(), "-2/3*x1*x2");
    }

    #[test]
    fn terms_and_back() {
        let f = p("x2^2 - (1 + 4*x1)*x2 + 6*x1");
        let terms = f.terms(2);
        assert_eq!(terms.len(), 4);
        let g = MPoly::from_terms(terms.iter().map(|(e, c)| (e.as_slice(), c.clone())));
        assert_eq!(f, g);
    }
}
