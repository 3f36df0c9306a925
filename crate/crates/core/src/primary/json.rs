use serde::{Deserialize, Serialize};

use crate::arith::parse_rational;
use crate::error::{Error, Result};

use super::component::PrimaryComponent;
use super::family::{FamilyViolation, PrimaryFamily};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyDoc {
    n: usize,
    degrees: Vec<u32>,
    nodes: Vec<NodeDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    path: Vec<String>,
    delta: u32,
    ctable: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    idx: Vec<u32>,
    coeff: String,
}

/// Family file text: nodes in depth-first order, table entries sorted by
/// index, rationals as `"a"` or `"a/b"`. Fails on families that do not
/// validate, since the degree vector is part of the format.
pub fn family_to_json(family: &PrimaryFamily) -> Result<String> {
    let degrees = family.degrees()?;
    let nodes = family
        .dfs()
        .into_iter()
        .map(|id| {
            let comp = family.component(id).unwrap();
            NodeDoc {
                path: family.path(id).iter().map(ToString::to_string).collect(),
                delta: comp.delta,
                ctable: comp
                    .ctable
                    .iter()
                    .map(|(idx, c)| EntryDoc {
                        idx: idx.clone(),
                        coeff: c.to_string(),
                    })
                    .collect(),
            }
        })
        .collect();
    let doc = FamilyDoc {
        n: family.n(),
        degrees,
        nodes,
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}

/// Builds the tree without checking the family invariants. Returns the
/// family and the declared degree vector.
pub fn parse_family(s: &str) -> Result<(PrimaryFamily, Vec<u32>)> {
    let doc: FamilyDoc = serde_json::from_str(s)?;
    if doc.n == 0 {
        return Err(Error::Malformed("n must be positive".into()));
    }
    let mut fam = PrimaryFamily::new(doc.n);
    for node in doc.nodes {
        let path = node
            .path
            .iter()
            .map(|a| parse_rational(a))
            .collect::<Result<Vec<_>>>()?;
        let Some(coord) = path.last().cloned() else {
            return Err(Error::Malformed("node with empty path".into()));
        };
        let mut comp = PrimaryComponent::pure(path.len(), coord, node.delta);
        for e in node.ctable {
            comp.set_coeff(e.idx, parse_rational(&e.coeff)?);
        }
        fam.insert(&path, comp)?;
    }
    Ok((fam, doc.degrees))
}

/// Checks the family invariants and that the declared degrees match the
/// fibers.
pub fn validate_loaded(
    family: &PrimaryFamily,
    declared: &[u32],
) -> Result<(), Vec<FamilyViolation>> {
    let actual = family.validate()?;
    if actual != declared {
        return Err(vec![FamilyViolation::DegreeMismatch {
            declared: declared.to_vec(),
            actual,
        }]);
    }
    Ok(())
}

/// Parses and validates a family file.
pub fn family_from_json(s: &str) -> Result<PrimaryFamily> {
    let (fam, declared) = parse_family(s)?;
    validate_loaded(&fam, &declared).map_err(Error::InvalidFamily)?;
    Ok(fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn sample() -> PrimaryFamily {
        let mut fam = PrimaryFamily::new(2);
        let a = fam
            .add_child(fam.root(), PrimaryComponent::pure(1, ratio(1, 2), 2))
            .unwrap();
        fam.add_child(
            a,
            PrimaryComponent::pure(2, rat(0), 1).with_coeff(vec![1, 0], ratio(-3, 7)),
        )
        .unwrap();
        fam.add_child(a, PrimaryComponent::pure(2, rat(5), 1))
            .unwrap();
        let b = fam
            .add_child(fam.root(), PrimaryComponent::pure(1, rat(-1), 1))
            .unwrap();
        fam.add_child(b, PrimaryComponent::pure(2, rat(2), 2))
            .unwrap();
        fam
    }

    #[test]
    fn schema_shape() {
        let s = family_to_json(&sample()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["degrees"], serde_json::json!([3, 2]));
        assert_eq!(v["nodes"][0]["path"], serde_json::json!(["1/2"]));
        assert_eq!(v["nodes"][1]["path"], serde_json::json!(["1/2", "0"]));
        assert_eq!(v["nodes"][1]["ctable"][0]["idx"], serde_json::json!([1, 0]));
        assert_eq!(v["nodes"][1]["ctable"][0]["coeff"], "-3/7");
        assert_eq!(v["nodes"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn text_round_trip_is_exact() {
        let s = family_to_json(&sample()).unwrap();
        let back = family_from_json(&s).unwrap();
        assert_eq!(back, sample());
        assert_eq!(family_to_json(&back).unwrap(), s);
    }

    #[test]
    fn degree_mismatch_and_malformed() {
        let s = family_to_json(&sample())
            .unwrap()
            .replace("\"degrees\": [\n    3,", "\"degrees\": [\n    4,");
        assert!(matches!(family_from_json(&s), Err(Error::InvalidFamily(_))));
        assert!(matches!(family_from_json("{"), Err(Error::Json(_))));
        let orphan = r#"{"n": 2, "degrees": [1, 1], "nodes": [{"path": ["0", "0"], "delta": 1, "ctable": []}]}"#;
        assert!(matches!(family_from_json(orphan), Err(Error::Malformed(_))));
        let bad_rat =
            r#"{"n": 1, "degrees": [1], "nodes": [{"path": ["1/0"], "delta": 1, "ctable": []}]}"#;
        assert!(matches!(
            family_from_json(bad_rat),
            Err(Error::Malformed(_))
        ));
    }
}
