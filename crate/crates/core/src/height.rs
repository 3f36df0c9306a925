//! Heights of polynomials and primary families, and the dominating-term
//! growth indicators for `T` and `N` derived from them.
//!
//! A [`HeightReport`] holds one [`LevelRow`] per level. `BN` and `BT` are the
//! dominating terms of the height estimates with every hidden constant and log
//! factor set to one. They are indicators, not certified bounds, so `violN`
//! and `violT` only record whether the measured height exceeds them.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{rat_bitsize, MPoly, Rational};
use crate::error::Result;
use crate::primary::{NodeId, PrimaryFamily};

pub const INDICATOR_NOTE: &str = "indicator, not certified bound";

/// Max bit size over the coefficients of `f`; `h(0) = 0`.
pub fn poly_height(f: &MPoly) -> u64 {
    let mut h = 0;
    f.for_each_coeff(&mut |c| h = h.max(rat_bitsize(c)));
    h
}

/// Whether the monic leading term `(x_l - b_l)^delta` counts towards a
/// component height. Its coefficient contributes 0, so it adds
/// `delta * h(b_l)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LeadingTerm {
    #[default]
    Include,
    Exclude,
}

impl LeadingTerm {
    fn describe(self) -> &'static str {
        match self {
            LeadingTerm::Include => "leading term included as delta*h(b_l)",
            LeadingTerm::Exclude => "leading term excluded",
        }
    }
}

/// `max_i h(c[i]) + i_1 h(b_1) + ... + i_l h(b_l)` over the shifted-basis
/// table of the component at `node`, where `b` is the node's point prefix.
pub fn component_height(family: &PrimaryFamily, node: NodeId, leading: LeadingTerm) -> u64 {
    let Some(comp) = family.component(node) else {
        return 0;
    };
    let hp: Vec<u64> = family.path(node).iter().map(rat_bitsize).collect();
    let weight = |idx: &[u32]| -> u64 { idx.iter().zip(&hp).map(|(&i, &h)| i as u64 * h).sum() };
    let mut best = comp
        .ctable
        .iter()
        .map(|(idx, c)| rat_bitsize(c) + weight(idx))
        .max()
        .unwrap_or(0);
    if leading == LeadingTerm::Include {
        best = best.max(comp.delta as u64 * hp.last().copied().unwrap_or(0));
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Aggregates {
    /// Sum of component heights over depth-`l` nodes.
    pub h: u64,
    /// Max over chains to depth `l` of the summed component heights.
    pub l: u64,
    /// Max over chains to depth `l` of the product of the `delta`s.
    pub mu: u64,
    /// `d_1 + ... + d_l`.
    pub d: u64,
}

/// `(H_l, L_l, mu_l, D_l)`. Level 0 gives `(0, 0, 1, 0)`.
pub fn family_aggregates(
    family: &PrimaryFamily,
    level: usize,
    leading: LeadingTerm,
) -> Result<Aggregates> {
    let degrees = family.degrees()?;
    Ok(aggregates_with(family, &degrees, level, leading))
}

fn aggregates_with(
    family: &PrimaryFamily,
    degrees: &[u32],
    level: usize,
    leading: LeadingTerm,
) -> Aggregates {
    let nodes = family.nodes_at_depth(level);
    let mut agg = Aggregates {
        h: 0,
        l: 0,
        mu: 1,
        d: degrees[..level].iter().map(|&d| d as u64).sum(),
    };
    if level == 0 {
        return agg;
    }
    agg.mu = 0;
    for &node in &nodes {
        agg.h += component_height(family, node, leading);
        let along: u64 = family
            .chain(node)
            .into_iter()
            .map(|id| component_height(family, id, leading))
            .sum();
        agg.l = agg.l.max(along);
        agg.mu = agg.mu.max(family.multiplicity(node));
    }
    agg
}

/// `B_N = H_l + L_{l-1} D_l mu_{l-1}` and `B_T = D_l H_l + L_{l-1} D_l^2 mu_{l-1}`.
pub fn bound_indicators(cur: &Aggregates, prev: &Aggregates) -> (u64, u64) {
    let tail = prev.l * cur.d * prev.mu;
    (cur.h + tail, cur.d * cur.h + tail * cur.d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRow {
    pub level: usize,
    pub d: u32,
    #[serde(rename = "D")]
    pub big_d: u64,
    pub mu: u64,
    #[serde(rename = "H")]
    pub h: u64,
    #[serde(rename = "L")]
    pub l: u64,
    #[serde(rename = "hT")]
    pub h_t: u64,
    #[serde(rename = "hN")]
    pub h_n: u64,
    #[serde(rename = "BN")]
    pub b_n: u64,
    #[serde(rename = "BT")]
    pub b_t: u64,
    /// `hT / hN`, absent when `hN = 0`.
    #[serde(serialize_with = "ser_ratio")]
    pub ratio: Option<Rational>,
    #[serde(rename = "violN")]
    pub viol_n: bool,
    #[serde(rename = "violT")]
    pub viol_t: bool,
}

fn ser_ratio<S: serde::Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightReport {
    pub leading: LeadingTerm,
    pub rows: Vec<LevelRow>,
}

const CSV_HEADER: &str = "level,d,D,mu,H,L,hT,hN,BN,BT,ratio,violN,violT";

impl HeightReport {
    pub fn row(&self, level: usize) -> &LevelRow {
        &self.rows[level - 1]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(out, "{}", cells(r).join(","));
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let header: Vec<&str> = CSV_HEADER.split(',').collect();
        let body: Vec<Vec<String>> = self.rows.iter().map(cells).collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|j| {
                body.iter()
                    .map(|r| r[j].len())
                    .chain([header[j].len()])
                    .max()
                    .unwrap()
            })
            .collect();
        let line = |cells: &[&str]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            format!("| {} |\n", padded.join(" | "))
        };
        let mut out = line(&header);
        let rule: Vec<String> = widths
            .iter()
            .map(|&w| format!("{}:", "-".repeat(w + 1)))
            .collect();
        let _ = writeln!(out, "|{}|", rule.join("|"));
        for r in &body {
            let refs: Vec<&str> = r.iter().map(String::as_str).collect();
            out.push_str(&line(&refs));
        }
        let _ = writeln!(
            out,
            "\nBN, BT: {INDICATOR_NOTE}; {}.",
            self.leading.describe()
        );
        out
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Doc<'a> {
            indicators: &'static str,
            leading_term: LeadingTerm,
            convention: &'static str,
            rows: &'a [LevelRow],
        }
        let doc = Doc {
            indicators: INDICATOR_NOTE,
            leading_term: self.leading,
            convention: self.leading.describe(),
            rows: &self.rows,
        };
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        Ok(s)
    }
}

fn cells(r: &LevelRow) -> Vec<String> {
    let flag = |b: bool| if b { "1" } else { "0" }.to_string();
    vec![
        r.level.to_string(),
        r.d.to_string(),
        r.big_d.to_string(),
        r.mu.to_string(),
        r.h.to_string(),
        r.l.to_string(),
        r.h_t.to_string(),
        r.h_n.to_string(),
        r.b_n.to_string(),
        r.b_t.to_string(),
        r.ratio
            .as_ref()
            .map_or_else(|| "NA".into(), ToString::to_string),
        flag(r.viol_n),
        flag(r.viol_t),
    ]
}

/// Measured heights of `t` and `n` next to the family's aggregates and
/// indicators, one row per level.
pub fn measure(
    family: &PrimaryFamily,
    t: &[MPoly],
    n: &[MPoly],
    leading: LeadingTerm,
) -> Result<HeightReport> {
    let degrees = family.degrees()?;
    let mut prev = aggregates_with(family, &degrees, 0, leading);
    let mut rows = Vec::with_capacity(family.n());
    for level in 1..=family.n() {
        let cur = aggregates_with(family, &degrees, level, leading);
        let (b_n, b_t) = bound_indicators(&cur, &prev);
        let h_t = t.get(level - 1).map_or(0, poly_height);
        let h_n = n.get(level - 1).map_or(0, poly_height);
        let ratio = (h_n != 0).then(|| Rational::new(h_t.into(), h_n.into()));
        rows.push(LevelRow {
            level,
            d: degrees[level - 1],
            big_d: cur.d,
            mu: cur.mu,
            h: cur.h,
            l: cur.l,
            h_t,
            h_n,
            b_n,
            b_t,
            ratio,
            viol_n: h_n > b_n,
            viol_t: h_t > b_t,
        });
        prev = cur;
    }
    Ok(HeightReport { leading, rows })
}

/// Arithmetic mean of the defined `hT / hN` ratios at `level` across reports.
pub fn mean_ratio<'a>(
    reports: impl IntoIterator<Item = &'a HeightReport>,
    level: usize,
) -> Option<Rational> {
    let (sum, count) = reports
        .into_iter()
        .filter_map(|r| r.rows.get(level - 1)?.ratio.clone())
        .fold((Rational::zero(), 0i64), |(s, c), q| (s + q, c + 1));
    (count > 0).then(|| sum / Rational::from_integer(count.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, rat, ratio};
    use crate::interp::reconstruct;
    use crate::primary::PrimaryComponent;

    fn worked() -> PrimaryFamily {
        let pts: Vec<Vec<Rational>> = [(0, 0), (0, 1), (1, 2), (1, 3)]
            .iter()
            .map(|&(a, b)| vec![rat(a), rat(b)])
            .collect();
        PrimaryFamily::radical(2, &pts).unwrap()
    }

    #[test]
    fn poly_heights() {
        assert_eq!(
            poly_height(&parse_poly("x2^2 - (1 + 4*x1)*x2 + 6*x1").unwrap()),
            3
        );
        assert_eq!(poly_height(&MPoly::zero()), 0);
        assert_eq!(poly_height(&MPoly::var(1).pow(5)), 1);
        assert_eq!(poly_height(&parse_poly("x1 - 3/4").unwrap()), 3);
    }

    #[test]
    fn component_heights() {
        let fam = PrimaryFamily::univariate(&[(rat(3), 1)]).unwrap();
        let node = fam.children(fam.root())[0];
        assert_eq!(component_height(&fam, node, LeadingTerm::Include), 2);
        assert_eq!(component_height(&fam, node, LeadingTerm::Exclude), 0);

        let mut fam = PrimaryFamily::new(2);
        fam.insert(&[rat(0)], PrimaryComponent::pure(1, rat(0), 2))
            .unwrap();
        let comp = PrimaryComponent::pure(2, rat(0), 2).with_coeff(vec![1, 1], rat(1));
        let node = fam.insert(&[rat(0), rat(0)], comp).unwrap();
        assert_eq!(component_height(&fam, node, LeadingTerm::Include), 1);

        let fam = PrimaryFamily::univariate(&[(rat(0), 4)]).unwrap();
        let node = fam.children(fam.root())[0];
        assert_eq!(component_height(&fam, node, LeadingTerm::Include), 0);
    }

    #[test]
    fn shifted_table_weights_point_heights() {
        let mut fam = PrimaryFamily::new(2);
        fam.insert(&[rat(5)], PrimaryComponent::pure(1, rat(5), 2))
            .unwrap();
        let comp = PrimaryComponent::pure(2, rat(9), 1).with_coeff(vec![1, 0], ratio(7, 2));
        let node = fam.insert(&[rat(5), rat(9)], comp).unwrap();
        // h(7/2) + 1*h(5) = 3 + 3, leading 1*h(9) = 4
        assert_eq!(component_height(&fam, node, LeadingTerm::Include), 6);
        assert_eq!(component_height(&fam, node, LeadingTerm::Exclude), 6);
    }

    #[test]
    fn aggregates() {
        let fam = worked();
        let a2 = family_aggregates(&fam, 2, LeadingTerm::Include).unwrap();
        assert_eq!((a2.mu, a2.d), (1, 4));
        // heights: level 1 points 0, 1 -> 0, 1; level 2 points 0,1,2,3 -> 0,1,2,2
        assert_eq!(a2.h, 5);
        assert_eq!(a2.l, 3);
        let a0 = family_aggregates(&fam, 0, LeadingTerm::Include).unwrap();
        assert_eq!((a0.h, a0.l, a0.mu, a0.d), (0, 0, 1, 0));

        let fam = PrimaryFamily::univariate(&[(rat(0), 2), (rat(1), 2)]).unwrap();
        let a1 = family_aggregates(&fam, 1, LeadingTerm::Include).unwrap();
        assert_eq!((a1.mu, a1.d), (2, 4));
    }

    #[test]
    fn indicator_arithmetic() {
        let cur = Aggregates {
            h: 5,
            l: 0,
            mu: 0,
            d: 4,
        };
        let prev = Aggregates {
            h: 0,
            l: 3,
            mu: 2,
            d: 0,
        };
        assert_eq!(bound_indicators(&cur, &prev), (29, 116));
        let prev = Aggregates {
            h: 0,
            l: 3,
            mu: 1,
            d: 0,
        };
        assert_eq!(bound_indicators(&cur, &prev), (5 + 12, 20 + 48));
    }

    #[test]
    fn worked_report() {
        let fam = worked();
        let r = reconstruct(&fam).unwrap();
        let rep = measure(&fam, r.t.polys(), &r.n, LeadingTerm::Include).unwrap();
        let row = rep.row(2);
        assert_eq!((row.h_t, row.h_n), (3, 3));
        assert_eq!((row.mu, row.big_d), (1, 4));
        assert_eq!(row.ratio, Some(rat(1)));
        assert!(rep.rows.iter().all(|r| r.b_n <= r.b_t));
        let csv = rep.to_csv();
        assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(csv.lines().count(), 3);
        assert_eq!(
            csv,
            measure(&fam, r.t.polys(), &r.n, LeadingTerm::Include)
                .unwrap()
                .to_csv()
        );
        let md = rep.to_markdown();
        assert!(md.contains(INDICATOR_NOTE));
        let json: serde_json::Value = serde_json::from_str(&rep.to_json().unwrap()).unwrap();
        assert_eq!(json["indicators"], INDICATOR_NOTE);
        assert_eq!(json["rows"][1]["hT"], 3);
        assert_eq!(json["rows"][1]["ratio"], "1");
    }

    #[test]
    fn single_chain_has_equal_heights() {
        let mut fam = PrimaryFamily::new(2);
        fam.insert(&[rat(2)], PrimaryComponent::pure(1, rat(2), 2))
            .unwrap();
        let comp = PrimaryComponent::pure(2, rat(-1), 2).with_coeff(vec![1, 0], rat(3));
        fam.insert(&[rat(2), rat(-1)], comp).unwrap();
        let r = reconstruct(&fam).unwrap();
        let rep = measure(&fam, r.t.polys(), &r.n, LeadingTerm::Include).unwrap();
        assert!(rep.rows.iter().all(|row| row.h_t == row.h_n));
    }

    #[test]
    fn mean_of_ratios() {
        let fam = worked();
        let r = reconstruct(&fam).unwrap();
        let rep = measure(&fam, r.t.polys(), &r.n, LeadingTerm::Include).unwrap();
        assert_eq!(mean_ratio([&rep, &rep], 2), Some(rat(1)));
        assert_eq!(mean_ratio([], 2), None);
    }
}
