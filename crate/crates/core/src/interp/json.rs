use serde::{Deserialize, Serialize};

use crate::arith::{parse_poly, MPoly};
use crate::error::{Error, Result};

use super::Reconstruction;

const REDUCTION_NOTE: &str = "level l of T, N and F is reduced modulo (T1, ..., T(l-1))";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResultDoc {
    n: usize,
    reduction: String,
    levels: Vec<LevelDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    audit: Option<Vec<AuditDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LevelDoc {
    level: usize,
    #[serde(rename = "T")]
    t: String,
    #[serde(rename = "N")]
    n: String,
    #[serde(rename = "F")]
    f: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AuditDoc {
    path: Vec<String>,
    branch_product: String,
    children: Vec<ChildDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChildDoc {
    coord: String,
    delta: u32,
    e: String,
    u: String,
    e_tilde: String,
}

/// `T`, `N`, `F` as read back from a result file. Nothing is validated, so a
/// tampered file still loads and can be handed to the verifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultFile {
    pub t: Vec<MPoly>,
    pub n: Vec<MPoly>,
    pub f: Vec<MPoly>,
}

pub fn result_to_json(r: &Reconstruction, audit: bool) -> Result<String> {
    let levels = (1..=r.t.len())
        .map(|l| LevelDoc {
            level: l,
            t: r.t.get(l).to_string(),
            n: r.n_at(l).to_string(),
            f: r.f_at(l).to_string(),
        })
        .collect();
    let audit = audit.then(|| {
        r.idempotents
            .iter()
            .map(|set| AuditDoc {
                path: set.parent_path.iter().map(ToString::to_string).collect(),
                branch_product: set.branch_product().to_string(),
                children: set
                    .entries
                    .iter()
                    .map(|e| ChildDoc {
                        coord: e.coord.to_string(),
                        delta: e.delta,
                        e: e.e.to_string(),
                        u: e.u.to_string(),
                        e_tilde: e.e_tilde.to_string(),
                    })
                    .collect(),
            })
            .collect()
    });
    let doc = ResultDoc {
        n: r.t.len(),
        reduction: REDUCTION_NOTE.to_string(),
        levels,
        audit,
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}

pub fn result_from_json(s: &str) -> Result<ResultFile> {
    let doc: ResultDoc = serde_json::from_str(s)?;
    if doc.levels.len() != doc.n {
        return Err(Error::Malformed(format!(
            "{} levels for n = {}",
            doc.levels.len(),
            doc.n
        )));
    }
    let mut out = ResultFile {
        t: Vec::new(),
        n: Vec::new(),
        f: Vec::new(),
    };
    for (i, l) in doc.levels.iter().enumerate() {
        if l.level != i + 1 {
            return Err(Error::Malformed(format!(
                "level {} listed at position {}",
                l.level,
                i + 1
            )));
        }
        out.t.push(parse_poly(&l.t)?);
        out.n.push(parse_poly(&l.n)?);
        out.f.push(parse_poly(&l.f)?);
    }
    Ok(out)
}
