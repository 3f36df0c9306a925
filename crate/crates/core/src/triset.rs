//! Triangular sets `(T1(x1), T2(x1, x2), ..., Tm(x1, ..., xm))` with each
//! `Tl` monic in `xl` and reduced modulo its predecessors, and normal forms
//! modulo the ideal they generate.

use std::fmt;

use crate::arith::MPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrisetViolation {
    /// `T_level` involves a variable above `x_level`.
    VariableSupport {
        level: usize,
        top: usize,
    },
    /// `T_level` has degree 0 in `x_level`.
    ZeroDegree {
        level: usize,
    },
    NotMonic {
        level: usize,
        leading: String,
    },
    /// Some coefficient of `T_level` has degree `>= d_var` in `x_var`.
    NotReduced {
        level: usize,
        var: usize,
        degree: usize,
        bound: usize,
    },
}

impl fmt::Display for TrisetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::VariableSupport { level, top } => {
                write!(f, "T{level} involves x{top}")
            }
            Self::ZeroDegree { level } => write!(f, "T{level} has degree 0 in x{level}"),
            Self::NotMonic { level, leading } => {
                write!(f, "T{level} is not monic: leading coefficient {leading}")
            }
            Self::NotReduced {
                level,
                var,
                degree,
                bound,
            } => write!(
                f,
                "tail of T{level} not reduced: degree {degree} in x{var}, bound d{var} = {bound}"
            ),
        }
    }
}

/// Checks monicity, variable support and reducedness of `(T1, ..., Tm)`.
pub fn validate_triangular(polys: &[MPoly]) -> Vec<TrisetViolation> {
    let mut out = Vec::new();
    let degrees: Vec<usize> = polys
        .iter()
        .enumerate()
        .map(|(i, t)| t.degree_in(i + 1))
        .collect();
    for (i, t) in polys.iter().enumerate() {
        let level = i + 1;
        if t.top_var() > level {
            out.push(TrisetViolation::VariableSupport {
                level,
                top: t.top_var(),
            });
            continue;
        }
        if t.top_var() < level {
            out.push(TrisetViolation::ZeroDegree { level });
            continue;
        }
        let lc = t.coeffs().last().unwrap();
        if !lc.is_one() {
            out.push(TrisetViolation::NotMonic {
                level,
                leading: lc.to_string(),
            });
        }
        for var in 1..level {
            let degree = t
                .coeffs()
                .iter()
                .map(|c| c.degree_in(var))
                .max()
                .unwrap_or(0);
            let bound = degrees[var - 1];
            if degree >= bound {
                out.push(TrisetViolation::NotReduced {
                    level,
                    var,
                    degree,
                    bound,
                });
            }
        }
    }
    out
}

/// A validated triangular set. Construction checks every invariant, so the
/// reduction routines below are total.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TriangularSet {
    polys: Vec<MPoly>,
}

/// `f = remainder + sum_l quotients[l] * T_{l+1}`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub remainder: MPoly,
    pub quotients: Vec<MPoly>,
}

impl TriangularSet {
    pub fn new(polys: Vec<MPoly>) -> Result<Self> {
        let v = validate_triangular(&polys);
        if v.is_empty() {
            Ok(Self { polys })
        } else {
            Err(Error::NotTriangular(v))
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Appends `T_{m+1}`, validating it against the current set.
    pub fn push(&mut self, t: MPoly) -> Result<()> {
        self.polys.push(t);
        let v = validate_triangular(&self.polys);
        if v.is_empty() {
            Ok(())
        } else {
            self.polys.pop();
            Err(Error::NotTriangular(v))
        }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    /// `T_level`, 1-based.
    pub fn get(&self, level: usize) -> &MPoly {
        &self.polys[level - 1]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.polys
            .iter()
            .enumerate()
            .map(|(i, t)| t.degree_in(i + 1))
            .collect()
    }

    /// `(T1, ..., T_m)`.
    pub fn prefix(&self, m: usize) -> TriangularSet {
        TriangularSet {
            polys: self.polys[..m].to_vec(),
        }
    }

    /// True when every `x_l`-degree of `f` is below `d_l`.
    pub fn is_reduced(&self, f: &MPoly) -> bool {
        self.degrees()
            .iter()
            .enumerate()
            .all(|(i, &d)| f.degree_in(i + 1) < d)
    }

    /// The unique representative of `f` modulo the ideal that is reduced
    /// with respect to every `T_l`. Variables above `x_m` are treated as free.
    pub fn normal_form(&self, f: &MPoly) -> MPoly {
        self.reduce_upto(f, self.len())
    }

    /// `normal_form(f * g)`.
    pub fn mod_mul(&self, f: &MPoly, g: &MPoly) -> MPoly {
        let m = self.len();
        let (f, g) = (self.reduce_upto(f, m), self.reduce_upto(g, m));
        self.mul_reduced(&f, &g, m)
    }

    // Product of two polynomials already reduced modulo T_1..T_m. Coefficient
    // products are reduced as they are formed.
    fn mul_reduced(&self, a: &MPoly, b: &MPoly, m: usize) -> MPoly {
        if a.is_zero() || b.is_zero() {
            return MPoly::zero();
        }
        let (va, vb) = (a.top_var(), b.top_var());
        if va == 0 || vb == 0 || m == 0 {
            return a * b;
        }
        if va != vb {
            let (hi, lo) = if va > vb { (a, b) } else { (b, a) };
            let v = hi.top_var();
            let below = m.min(v - 1);
            let coeffs = hi
                .coeffs()
                .iter()
                .map(|c| self.mul_reduced(c, lo, below))
                .collect();
            return MPoly::from_coeffs(v, coeffs);
        }
        let v = va;
        let below = m.min(v - 1);
        let (ca, cb) = (a.coeffs(), b.coeffs());
        let mut c = vec![MPoly::zero(); ca.len() + cb.len() - 1];
        for (i, x) in ca.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in cb.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += &self.mul_reduced(x, y, below);
                }
            }
        }
        if v <= m {
            self.divide_top(&mut c, v);
        }
        MPoly::from_coeffs(v, c)
    }

    // Reduces the coefficient vector of a polynomial in x_v (coefficients
    // already reduced below v) modulo the monic T_v.
    fn divide_top(&self, c: &mut Vec<MPoly>, v: usize) {
        let t = self.polys[v - 1].coeffs();
        let d = t.len() - 1;
        for k in (d..c.len()).rev() {
            let lc = std::mem::take(&mut c[k]);
            if lc.is_zero() {
                continue;
            }
            for (j, tj) in t[..d].iter().enumerate() {
                if !tj.is_zero() {
                    let prod = self.mul_reduced(&lc, tj, v - 1);
                    c[k - d + j] -= &prod;
                }
            }
        }
        c.truncate(d);
    }

    fn reduce_upto(&self, f: &MPoly, m: usize) -> MPoly {
        let MPoly::Dense { var, coeffs } = f else {
            return f.clone();
        };
        let var = *var;
        // coefficients live below `var`
        let below = m.min(var - 1);
        let mut c: Vec<MPoly> = coeffs.iter().map(|c| self.reduce_upto(c, below)).collect();
        if var > m {
            return MPoly::from_coeffs(var, c);
        }
        self.divide_top(&mut c, var);
        MPoly::from_coeffs(var, c)
    }

    /// Normal form together with an explicit ideal-membership witness.
    pub fn normal_form_with_quotients(&self, f: &MPoly) -> Reduction {
        let (remainder, quotients) = self.witness_upto(f, self.len());
        let mut quotients = quotients;
        quotients.resize(self.len(), MPoly::zero());
        Reduction {
            remainder,
            quotients,
        }
    }

    // Plain division, no interleaved coefficient reduction, so the quotients
    // are easy to track. Returns quotients for T_1..T_m.
    fn witness_upto(&self, f: &MPoly, m: usize) -> (MPoly, Vec<MPoly>) {
        let mut quotients = vec![MPoly::zero(); m];
        let MPoly::Dense { var, coeffs } = f else {
            return (f.clone(), quotients);
        };
        let var = *var;
        let x = MPoly::var(var);
        let mut rem = coeffs.clone();
        if var <= m {
            let t = self.polys[var - 1].coeffs();
            let d = t.len() - 1;
            let mut q = vec![MPoly::zero(); rem.len().saturating_sub(d)];
            for k in (d..rem.len()).rev() {
                let lc = std::mem::take(&mut rem[k]);
                if lc.is_zero() {
                    continue;
                }
                for (j, tj) in t[..d].iter().enumerate() {
                    rem[k - d + j] -= &(&lc * tj);
                }
                q[k - d] = lc;
            }
            rem.truncate(d);
            quotients[var - 1] = MPoly::from_coeffs(var, q);
        }
        let below = m.min(var - 1);
        let mut out = Vec::with_capacity(rem.len());
        let mut xk = MPoly::one();
        for c in &rem {
            let (r, qs) = self.witness_upto(c, below);
            for (i, qi) in qs.iter().enumerate() {
                quotients[i] += &(qi * &xk);
            }
            out.push(r);
            xk = &xk * &x;
        }
        (MPoly::from_coeffs(var, out), quotients)
    }
}

impl fmt::Display for TriangularSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.polys.iter().enumerate() {
            writeln!(f, "T{} = {}", i + 1, t)?;
        }
        Ok(())
    }
}
