use std::fmt;

use crate::arith::MPoly;
use crate::error::Result;
use crate::primary::PrimaryFamily;
use crate::triset::{validate_triangular, TriangularSet};

use super::{FamilyData, IdempotentSet, Reconstruction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// `T` is a triangular set with the family's degrees.
    Triangular,
    /// `T_{l+1}` reduces to the branch product at every depth-`l` node.
    Factorization,
    /// Completeness, orthogonality and idempotency of the `e~`, and the
    /// degree bound on `u`.
    Idempotents,
    /// `e~(g) = 1` at `g`, `0` at its siblings, and `u e = 1` at `g`.
    LocalCongruences,
    /// `F_l T_l = N_l` modulo `<T_1, .., T_{l-1}>`.
    CofactorIdentity,
    /// All-simple families only: `F_l = prod_{i<l} dT_i/dx_i` modulo
    /// `<T_1, .., T_{l-1}>`.
    RadicalDerivative,
}

impl Check {
    pub fn label(self) -> &'static str {
        match self {
            Check::Triangular => "(t) triangular",
            Check::Factorization => "(a) factorization",
            Check::Idempotents => "(b) idempotents",
            Check::LocalCongruences => "(c) local congruences",
            Check::CofactorIdentity => "(d) F*T = N",
            Check::RadicalDerivative => "(e) radical derivative",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: Check,
    /// Level or node the outcome refers to.
    pub scope: String,
    pub status: CheckStatus,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            CheckStatus::Pass => write!(f, "PASS {} [{}]", self.check.label(), self.scope),
            CheckStatus::Fail(why) => {
                write!(f, "FAIL {} [{}]: {why}", self.check.label(), self.scope)
            }
            CheckStatus::Skipped(why) => {
                write!(f, "SKIP {} [{}]: {why}", self.check.label(), self.scope)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes
            .iter()
            .all(|o| !matches!(o.status, CheckStatus::Fail(_)))
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes
            .iter()
            .filter(|o| matches!(o.status, CheckStatus::Fail(_)))
    }

    pub fn of(&self, check: Check) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(move |o| o.check == check)
    }

    /// `(passed, failed, skipped)` for one check.
    pub fn tally(&self, check: Check) -> (usize, usize, usize) {
        self.of(check)
            .fold((0, 0, 0), |(p, f, s), o| match o.status {
                CheckStatus::Pass => (p + 1, f, s),
                CheckStatus::Fail(_) => (p, f + 1, s),
                CheckStatus::Skipped(_) => (p, f, s + 1),
            })
    }

    fn push(
        &mut self,
        check: Check,
        scope: impl Into<String>,
        ok: bool,
        why: impl FnOnce() -> String,
    ) {
        let status = if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail(why())
        };
        self.outcomes.push(CheckOutcome {
            check,
            scope: scope.into(),
            status,
        });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        Ok(())
    }
}

/// Runs every check on `(t, n, f)` claimed for `family`. The idempotents are
/// recomputed from the family, not taken from the claim. Only an invalid
/// family is an error; everything else is reported.
pub fn verify_all(
    family: &PrimaryFamily,
    t: &[MPoly],
    n: &[MPoly],
    f: &[MPoly],
) -> Result<VerifyReport> {
    let data = FamilyData::new(family)?;
    let levels = family.n();
    let mut report = VerifyReport::default();

    let violations = validate_triangular(t);
    let degrees: Vec<u32> = t
        .iter()
        .enumerate()
        .map(|(i, p)| p.degree_in(i + 1) as u32)
        .collect();
    report.push(
        Check::Triangular,
        "T",
        violations.is_empty() && degrees == data.degrees && n.len() == levels && f.len() == levels,
        || {
            let mut why: Vec<String> = violations.iter().map(ToString::to_string).collect();
            if degrees != data.degrees {
                why.push(format!(
                    "degrees {degrees:?}, family has {:?}",
                    data.degrees
                ));
            }
            if n.len() != levels || f.len() != levels {
                why.push(format!(
                    "{} N and {} F levels for n = {levels}",
                    n.len(),
                    f.len()
                ));
            }
            why.join("; ")
        },
    );

    let internal = data.internal_nodes();
    for &node in &internal {
        let depth = family.depth(node);
        let scope = node_scope(family, node);
        let expected = data.branch_product(node);
        let ok = t
            .get(depth)
            .is_some_and(|tl| data.local(node).normal_form(tl) == expected);
        report.push(Check::Factorization, scope, ok, || {
            format!("T{} does not reduce to {expected}", depth + 1)
        });
    }

    for &node in &internal {
        let set = data.idempotent_set(node)?;
        check_idempotents(&mut report, &data, &set);
    }

    // (d) and (e) need the lower levels to be a triangular set
    let radical = family.is_radical();
    let mut derivative = MPoly::one();
    for level in 1..=levels {
        let scope = format!("level {level}");
        let lower = match TriangularSet::new(t[..(level - 1).min(t.len())].to_vec()) {
            Ok(s) if s.len() == level - 1 => s,
            _ => {
                report.push(Check::CofactorIdentity, scope.clone(), false, || {
                    "lower levels of T are not a triangular set".into()
                });
                if radical {
                    report.push(Check::RadicalDerivative, scope, false, || {
                        "lower levels of T are not a triangular set".into()
                    });
                }
                continue;
            }
        };
        match (t.get(level - 1), n.get(level - 1), f.get(level - 1)) {
            (Some(tl), Some(nl), Some(fl)) => {
                let residue = &lower.mod_mul(fl, tl) - &lower.normal_form(nl);
                report.push(
                    Check::CofactorIdentity,
                    scope.clone(),
                    residue.is_zero(),
                    || format!("F{level}*T{level} - N{level} reduces to {residue}"),
                );
            }
            _ => report.push(Check::CofactorIdentity, scope.clone(), false, || {
                "missing level".into()
            }),
        }
        if !radical {
            report.outcomes.push(CheckOutcome {
                check: Check::RadicalDerivative,
                scope,
                status: CheckStatus::Skipped("family is not radical".into()),
            });
            continue;
        }
        if level > 1 {
            let prev = &t[level - 2];
            derivative = lower.mod_mul(&derivative, &prev.diff(level - 1));
        }
        let ok = f
            .get(level - 1)
            .is_some_and(|fl| lower.normal_form(&(fl - &derivative)).is_zero());
        report.push(Check::RadicalDerivative, scope, ok, || {
            format!("F{level} differs from the product of dT_i/dx_i for i < {level}")
        });
    }

    Ok(report)
}

/// [`verify_all`] on a freshly computed reconstruction.
pub fn verify_reconstruction(family: &PrimaryFamily, r: &Reconstruction) -> Result<VerifyReport> {
    verify_all(family, r.t.polys(), &r.n, &r.f)
}

fn node_scope(family: &PrimaryFamily, node: crate::primary::NodeId) -> String {
    let path: Vec<String> = family.path(node).iter().map(ToString::to_string).collect();
    format!("node ({})", path.join(", "))
}

fn check_idempotents(report: &mut VerifyReport, data: &FamilyData<'_>, set: &IdempotentSet) {
    let family = data.family;
    let scope = node_scope(family, set.parent);
    let a = &set.algebra;
    let level = set.level;

    let sum: MPoly = set.entries.iter().map(|e| e.e_tilde.clone()).sum();
    let complete = a.normal_form(&sum).is_one();
    let mut orthogonal = true;
    let mut idempotent = true;
    let mut degree_ok = true;
    for (i, x) in set.entries.iter().enumerate() {
        if a.mod_mul(&x.e_tilde, &x.e_tilde) != x.e_tilde {
            idempotent = false;
        }
        if x.u.degree_in(level) >= x.delta as usize {
            degree_ok = false;
        }
        for y in &set.entries[i + 1..] {
            if !a.mod_mul(&x.e_tilde, &y.e_tilde).is_zero() {
                orthogonal = false;
            }
        }
    }
    report.push(
        Check::Idempotents,
        scope.clone(),
        complete && orthogonal && idempotent && degree_ok,
        || {
            let mut why = Vec::new();
            if !complete {
                why.push("sum of e~ is not 1");
            }
            if !orthogonal {
                why.push("some e~ products are nonzero");
            }
            if !idempotent {
                why.push("some e~^2 != e~");
            }
            if !degree_ok {
                why.push("deg u >= delta");
            }
            why.join(", ")
        },
    );

    let mut bad = Vec::new();
    for x in &set.entries {
        let own = data.local(x.child);
        if !own.normal_form(&x.e_tilde).is_one() {
            bad.push(format!("e~({}) is not 1 at its point", x.coord));
        }
        if !own.mod_mul(&x.u, &x.e).is_one() {
            bad.push(format!("u*e is not 1 at {}", x.coord));
        }
        for y in &set.entries {
            if y.child != x.child && !data.local(y.child).normal_form(&x.e_tilde).is_zero() {
                bad.push(format!(
                    "e~({}) does not vanish at sibling {}",
                    x.coord, y.coord
                ));
            }
        }
    }
    report.push(Check::LocalCongruences, scope, bad.is_empty(), || {
        bad.join("; ")
    });
}
