use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::arith::{MPoly, Rational};
use crate::error::{Error, Result};

/// One generator `t_l` of a primary triangular set, in the shifted basis
///
/// ```text
/// t_l = (x_l - a_l)^delta + sum c[i_1, .., i_{l-1}, r] (x_l - a_l)^r prod_{j<l} (x_j - a_j)^{i_j}
/// ```
///
/// where `a` is the point of the component. Only the last coordinate `a_l`
/// is stored here; the others come from the ancestors in a
/// [`PrimaryFamily`](super::PrimaryFamily).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub level: usize,
    pub point_coord: Rational,
    pub delta: u32,
    /// Keys are multi-indices `(i_1, .., i_{l-1}, r)`. Zero coefficients are
    /// never stored.
    pub ctable: BTreeMap<Vec<u32>, Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentViolation {
    ZeroDelta,
    /// Wrong number of ancestor exponents supplied for this level.
    PrefixLength {
        expected: usize,
        found: usize,
    },
    IndexLength {
        idx: Vec<u32>,
    },
    /// Condition (i): some `i_u >= delta_u`, or `r >= delta`.
    IndexRange {
        idx: Vec<u32>,
    },
    /// Condition (ii): a pure `(x_l - a_l)^r` term with nonzero coefficient.
    PureTerm {
        idx: Vec<u32>,
    },
}

impl fmt::Display for ComponentViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroDelta => f.write_str("delta must be positive"),
            Self::PrefixLength { expected, found } => {
                write!(f, "expected {expected} ancestor exponents, found {found}")
            }
            Self::IndexLength { idx } => write!(f, "index {idx:?} has the wrong length"),
            Self::IndexRange { idx } => write!(f, "index {idx:?} out of range (condition (i))"),
            Self::PureTerm { idx } => {
                write!(f, "nonzero pure term at {idx:?} (condition (ii))")
            }
        }
    }
}

impl PrimaryComponent {
    /// `(x_level - a)^delta` with no tail.
    pub fn pure(level: usize, point_coord: Rational, delta: u32) -> Self {
        Self {
            level,
            point_coord,
            delta,
            ctable: BTreeMap::new(),
        }
    }

    pub fn with_coeff(mut self, idx: Vec<u32>, c: Rational) -> Self {
        self.set_coeff(idx, c);
        self
    }

    pub fn set_coeff(&mut self, idx: Vec<u32>, c: Rational) {
        if c.is_zero() {
            self.ctable.remove(&idx);
        } else {
            self.ctable.insert(idx, c);
        }
    }

    /// Checks the index ranges and the vanishing of pure terms, given the
    /// exponents `delta_1, .., delta_{l-1}` of the ancestors.
    pub fn validate(&self, delta_prefix: &[u32]) -> Vec<ComponentViolation> {
        let mut out = Vec::new();
        if self.delta == 0 {
            out.push(ComponentViolation::ZeroDelta);
        }
        if delta_prefix.len() + 1 != self.level {
            out.push(ComponentViolation::PrefixLength {
                expected: self.level.saturating_sub(1),
                found: delta_prefix.len(),
            });
            return out;
        }
        for (idx, c) in &self.ctable {
            if idx.len() != self.level {
                out.push(ComponentViolation::IndexLength { idx: idx.clone() });
                continue;
            }
            let (lower, r) = idx.split_at(self.level - 1);
            let in_range = lower.iter().zip(delta_prefix).all(|(i, d)| i < d) && r[0] < self.delta;
            if !in_range {
                out.push(ComponentViolation::IndexRange { idx: idx.clone() });
            }
            if lower.iter().all(|&i| i == 0) && !c.is_zero() {
                out.push(ComponentViolation::PureTerm { idx: idx.clone() });
            }
        }
        out
    }

    /// Standard-basis polynomial for this component; `path_prefix` supplies
    /// the ancestor coordinates `a_1, .., a_{l-1}`.
    pub fn expand(&self, path_prefix: &[Rational]) -> MPoly {
        assert_eq!(path_prefix.len() + 1, self.level, "path prefix length");
        let lins: Vec<MPoly> = path_prefix
            .iter()
            .chain(std::iter::once(&self.point_coord))
            .enumerate()
            .map(|(j, a)| MPoly::linear(j + 1, a))
            .collect();
        let mut powers: Vec<Vec<MPoly>> =
            lins.iter().map(|l| vec![MPoly::one(), l.clone()]).collect();
        let mut pow = |j: usize, e: u32| -> MPoly {
            let e = e as usize;
            while powers[j].len() <= e {
                let next = &powers[j][powers[j].len() - 1] * &lins[j];
                powers[j].push(next);
            }
            powers[j][e].clone()
        };
        let mut out = pow(self.level - 1, self.delta);
        for (idx, c) in &self.ctable {
            let mut term = MPoly::constant(c.clone());
            for (j, &e) in idx.iter().enumerate() {
                if e > 0 {
                    term = &term * &pow(j, e);
                }
            }
            out += &term;
        }
        out
    }

    /// Reads a monic `t` back into shifted-basis form at the point `path`
    /// (full point, `path.len()` is the level). Fails when `t` is not of the
    /// primary shape there, e.g. when `t(path) != 0`.
    pub fn extract(t: &MPoly, path: &[Rational], delta_prefix: &[u32]) -> Result<Self> {
        let level = path.len();
        if level == 0 || delta_prefix.len() + 1 != level {
            return Err(Error::Shape(format!(
                "point of length {level} with {} ancestor exponents",
                delta_prefix.len()
            )));
        }
        if t.top_var() != level {
            return Err(Error::Shape(format!(
                "expected a polynomial with top variable x{level}, got {t}"
            )));
        }
        if !t.coeffs().last().unwrap().is_one() {
            return Err(Error::Shape(format!("{t} is not monic in x{level}")));
        }
        let delta = t.degree_in(level) as u32;
        let shifted = t.translate(path);
        let mut comp = PrimaryComponent::pure(level, path[level - 1].clone(), delta);
        for (exps, c) in shifted.terms(level) {
            let (lower, r) = exps.split_at(level - 1);
            if r[0] == delta {
                // the monic leading term, nothing else reaches this degree
                continue;
            }
            if lower.iter().all(|&i| i == 0) {
                return Err(Error::Shape(format!(
                    "pure term of order {} has coefficient {c} at the point (value {} there)",
                    r[0],
                    t.eval(path).unwrap()
                )));
            }
            if lower.iter().zip(delta_prefix).any(|(i, d)| i >= d) {
                return Err(Error::Shape(format!(
                    "shifted term {exps:?} exceeds the ancestor exponents"
                )));
            }
            comp.set_coeff(exps, c);
        }
        Ok(comp)
    }
}
