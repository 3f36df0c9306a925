use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::arith::{MPoly, Rational};
use crate::error::{Error, Result};
use crate::triset::TriangularSet;

use super::component::{ComponentViolation, PrimaryComponent};
use super::local::LocalQuotient;

/// Index of a node in a [`PrimaryFamily`]. The root (empty point prefix) is
/// always `NodeId(0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub(crate) usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    parent: Option<NodeId>,
    depth: usize,
    component: Option<PrimaryComponent>,
    children: Vec<NodeId>,
}

/// The primary components of a zero-dimensional triangular ideal arranged in
/// a prefix tree over the solution points: the depth-`l` nodes are the
/// projections of the points on the first `l` coordinates, and each carries
/// the `l`-th generator of its primary triangular set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryFamily {
    n: usize,
    nodes: Vec<Node>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyViolation {
    Empty,
    DuplicateSibling {
        path: Vec<String>,
    },
    UnequalFiber {
        level: usize,
        path: Vec<String>,
        expected: u32,
        found: u32,
    },
    ShallowLeaf {
        path: Vec<String>,
    },
    Component {
        path: Vec<String>,
        violation: ComponentViolation,
    },
    DegreeMismatch {
        declared: Vec<u32>,
        actual: Vec<u32>,
    },
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &[String]| format!("({})", p.join(", "));
        match self {
            Self::Empty => f.write_str("family has no points"),
            Self::DuplicateSibling { path } => {
                write!(f, "repeated sibling coordinate at {}", show(path))
            }
            Self::UnequalFiber {
                level,
                path,
                expected,
                found,
            } => write!(
                f,
                "fiber over {} has degree {found} != {expected} in x{level}",
                show(path)
            ),
            Self::ShallowLeaf { path } => write!(f, "leaf {} does not reach depth n", show(path)),
            Self::Component { path, violation } => {
                write!(f, "component at {}: {violation}", show(path))
            }
            Self::DegreeMismatch { declared, actual } => {
                write!(
                    f,
                    "declared degrees {declared:?} but fibers give {actual:?}"
                )
            }
        }
    }
}

impl PrimaryFamily {
    /// An empty family in `n` variables (root only).
    pub fn new(n: usize) -> Self {
        Self {
            n,
            nodes: vec![Node {
                parent: None,
                depth: 0,
                component: None,
                children: Vec::new(),
            }],
        }
    }

    /// Adds a child carrying `component`, whose level must be one more than
    /// the parent's depth.
    pub fn add_child(&mut self, parent: NodeId, component: PrimaryComponent) -> Result<NodeId> {
        let depth = self.nodes[parent.0].depth + 1;
        if depth > self.n || component.level != depth {
            return Err(Error::Malformed(format!(
                "component of level {} under a node of depth {} (n = {})",
                component.level,
                depth - 1,
                self.n
            )));
        }
        let id = NodeId(self.nodes.len());
        self.nodes.push(Node {
            parent: Some(parent),
            depth,
            component: Some(component),
            children: Vec::new(),
        });
        self.nodes[parent.0].children.push(id);
        Ok(id)
    }

    /// Finds the child of `parent` with the given last coordinate.
    pub fn child_with_coord(&self, parent: NodeId, coord: &Rational) -> Option<NodeId> {
        self.children(parent)
            .iter()
            .copied()
            .find(|&c| &self.component(c).unwrap().point_coord == coord)
    }

    /// Inserts a component whose full point is `path`; every proper prefix of
    /// `path` must already be a node.
    pub fn insert(&mut self, path: &[Rational], component: PrimaryComponent) -> Result<NodeId> {
        let (last, prefix) = path
            .split_last()
            .ok_or_else(|| Error::Malformed("empty path".into()))?;
        if last != &component.point_coord {
            return Err(Error::Malformed(
                "path does not end at the component's coordinate".into(),
            ));
        }
        let mut node = self.root();
        for a in prefix {
            node = self.child_with_coord(node, a).ok_or_else(|| {
                Error::Malformed(format!("missing ancestor for path {}", show_path(path)))
            })?;
        }
        self.add_child(node, component)
    }

    /// All-simple family (every `delta = 1`) on the given points.
    pub fn radical(n: usize, points: &[Vec<Rational>]) -> Result<Self> {
        let mut fam = Self::new(n);
        for pt in points {
            if pt.len() != n {
                return Err(Error::Malformed(format!(
                    "point {} is not in {n} variables",
                    show_path(pt)
                )));
            }
            let mut node = fam.root();
            for (j, a) in pt.iter().enumerate() {
                node = match fam.child_with_coord(node, a) {
                    Some(c) => c,
                    None => fam.add_child(node, PrimaryComponent::pure(j + 1, a.clone(), 1))?,
                };
            }
        }
        Ok(fam)
    }

    /// Univariate family `{(x1 - a)^delta}`.
    pub fn univariate(roots: &[(Rational, u32)]) -> Result<Self> {
        let mut fam = Self::new(1);
        for (a, d) in roots {
            fam.add_child(NodeId(0), PrimaryComponent::pure(1, a.clone(), *d))?;
        }
        Ok(fam)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id.0].children
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id.0].parent
    }

    pub fn depth(&self, id: NodeId) -> usize {
        self.nodes[id.0].depth
    }

    pub fn component(&self, id: NodeId) -> Option<&PrimaryComponent> {
        self.nodes[id.0].component.as_ref()
    }

    pub fn component_mut(&mut self, id: NodeId) -> Option<&mut PrimaryComponent> {
        self.nodes[id.0].component.as_mut()
    }

    /// Root-to-node chain, root excluded.
    pub fn chain(&self, id: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut cur = id;
        while let Some(p) = self.nodes[cur.0].parent {
            out.push(cur);
            cur = p;
        }
        out.reverse();
        out
    }

    /// The point prefix `(a_1, .., a_l)` spelled by the path to `id`.
    pub fn path(&self, id: NodeId) -> Vec<Rational> {
        self.chain(id)
            .into_iter()
            .map(|c| self.component(c).unwrap().point_coord.clone())
            .collect()
    }

    /// `(delta_1, .., delta_l)` along the path to `id`.
    pub fn deltas(&self, id: NodeId) -> Vec<u32> {
        self.chain(id)
            .into_iter()
            .map(|c| self.component(c).unwrap().delta)
            .collect()
    }

    /// Local multiplicity `delta_1 * .. * delta_l` at `id`.
    pub fn multiplicity(&self, id: NodeId) -> u64 {
        self.deltas(id).iter().map(|&d| d as u64).product()
    }

    /// Depth-first preorder, root excluded.
    pub fn dfs(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len() - 1);
        let mut stack: Vec<NodeId> = self.children(self.root()).iter().rev().copied().collect();
        while let Some(id) = stack.pop() {
            out.push(id);
            stack.extend(self.children(id).iter().rev().copied());
        }
        out
    }

    /// Nodes at `depth` in depth-first order; depth 0 is the root.
    pub fn nodes_at_depth(&self, depth: usize) -> Vec<NodeId> {
        if depth == 0 {
            return vec![self.root()];
        }
        self.dfs()
            .into_iter()
            .filter(|&id| self.depth(id) == depth)
            .collect()
    }

    /// The solution points (leaves at depth n).
    pub fn points(&self) -> Vec<Vec<Rational>> {
        self.nodes_at_depth(self.n)
            .into_iter()
            .map(|id| self.path(id))
            .collect()
    }

    pub fn is_radical(&self) -> bool {
        self.nodes
            .iter()
            .filter_map(|n| n.component.as_ref())
            .all(|c| c.delta == 1)
    }

    /// The generator `t_l` at node `id` in the standard monomial basis.
    pub fn expand_node(&self, id: NodeId) -> MPoly {
        let comp = self.component(id).expect("root has no component");
        let mut path = self.path(id);
        path.pop();
        comp.expand(&path)
    }

    /// The primary triangular set `(t_1, .., t_l)` along the path to `id`;
    /// empty at the root.
    /// Fails only when some component along the path breaks condition (i).
    pub fn local_set(&self, id: NodeId) -> Result<TriangularSet> {
        let chain = self.chain(id);
        let polys = chain.iter().map(|&c| self.expand_node(c)).collect();
        TriangularSet::new(polys)
    }

    pub fn local_quotient(&self, id: NodeId) -> Result<LocalQuotient> {
        Ok(LocalQuotient::new(self.path(id), self.local_set(id)?))
    }

    /// Checks every family invariant and returns the fiber degrees
    /// `(d_1, .., d_n)`.
    pub fn validate(&self) -> Result<Vec<u32>, Vec<FamilyViolation>> {
        let mut out = Vec::new();
        if self.children(self.root()).is_empty() {
            return Err(vec![FamilyViolation::Empty]);
        }
        let mut degrees: Vec<Option<u32>> = vec![None; self.n];
        let mut internal = vec![self.root()];
        internal.extend(self.dfs());
        for id in internal {
            let depth = self.depth(id);
            let kids = self.children(id);
            if let Some(comp) = self.component(id) {
                let mut deltas = self.deltas(id);
                deltas.pop();
                for violation in comp.validate(&deltas) {
                    out.push(FamilyViolation::Component {
                        path: show_vec(&self.path(id)),
                        violation,
                    });
                }
            }
            if depth == self.n {
                continue;
            }
            if kids.is_empty() {
                out.push(FamilyViolation::ShallowLeaf {
                    path: show_vec(&self.path(id)),
                });
                continue;
            }
            let mut seen = HashSet::new();
            for &k in kids {
                if !seen.insert(&self.component(k).unwrap().point_coord) {
                    out.push(FamilyViolation::DuplicateSibling {
                        path: show_vec(&self.path(k)),
                    });
                }
            }
            let fiber: u32 = kids.iter().map(|&k| self.component(k).unwrap().delta).sum();
            match degrees[depth] {
                None => degrees[depth] = Some(fiber),
                Some(expected) if expected != fiber => out.push(FamilyViolation::UnequalFiber {
                    level: depth + 1,
                    path: show_vec(&self.path(id)),
                    expected,
                    found: fiber,
                }),
                Some(_) => {}
            }
        }
        if out.is_empty() {
            Ok(degrees.into_iter().map(|d| d.unwrap_or(0)).collect())
        } else {
            Err(out)
        }
    }

    /// [`validate`](Self::validate) as a `Result` with the crate error type.
    pub fn degrees(&self) -> Result<Vec<u32>> {
        self.validate().map_err(Error::InvalidFamily)
    }

    /// Per-node tables keyed by full path, depth-first. Mostly useful for
    /// comparing families independently of insertion order.
    pub fn by_path(&self) -> BTreeMap<Vec<String>, &PrimaryComponent> {
        self.dfs()
            .into_iter()
            .map(|id| (show_vec(&self.path(id)), self.component(id).unwrap()))
            .collect()
    }
}

fn show_vec(p: &[Rational]) -> Vec<String> {
    p.iter().map(ToString::to_string).collect()
}

pub(crate) fn show_path(p: &[Rational]) -> String {
    format!("({})", show_vec(p).join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, rat};

    fn worked() -> PrimaryFamily {
        let pts: Vec<Vec<Rational>> = [(0, 0), (0, 1), (1, 2), (1, 3)]
            .iter()
            .map(|&(a, b)| vec![rat(a), rat(b)])
            .collect();
        PrimaryFamily::radical(2, &pts).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(worked().validate(), Ok(vec![2, 2]));
        let pts = vec![
            vec![rat(0), rat(0)],
            vec![rat(0), rat(1)],
            vec![rat(1), rat(0)],
        ];
        let err = PrimaryFamily::radical(2, &pts)
            .unwrap()
            .validate()
            .unwrap_err();
        assert!(matches!(
            &err[..],
            [FamilyViolation::UnequalFiber {
                level: 2,
                expected: 2,
                found: 1,
                ..
            }]
        ));
        let uni = PrimaryFamily::univariate(&[(rat(0), 2), (rat(1), 2)]).unwrap();
        assert_eq!(uni.validate(), Ok(vec![4]));
    }

    #[test]
    fn detects_duplicates_and_shallow_leaves() {
        let mut fam = PrimaryFamily::new(2);
        let a = fam
            .add_child(fam.root(), PrimaryComponent::pure(1, rat(0), 1))
            .unwrap();
        fam.add_child(fam.root(), PrimaryComponent::pure(1, rat(0), 1))
            .unwrap();
        fam.add_child(a, PrimaryComponent::pure(2, rat(0), 2))
            .unwrap();
        let err = fam.validate().unwrap_err();
        assert!(err
            .iter()
            .any(|v| matches!(v, FamilyViolation::DuplicateSibling { .. })));
        assert!(err
            .iter()
            .any(|v| matches!(v, FamilyViolation::ShallowLeaf { .. })));
        assert!(PrimaryFamily::new(1).validate().is_err());
    }

    #[test]
    fn level_mismatch_rejected() {
        let mut fam = PrimaryFamily::new(1);
        assert!(fam
            .add_child(fam.root(), PrimaryComponent::pure(2, rat(0), 1))
            .is_err());
    }

    #[test]
    fn local_set_along_path() {
        let mut fam = PrimaryFamily::new(2);
        let a = fam
            .add_child(fam.root(), PrimaryComponent::pure(1, rat(1), 2))
            .unwrap();
        let b = fam
            .add_child(
                a,
                PrimaryComponent::pure(2, rat(0), 2).with_coeff(vec![1, 1], rat(3)),
            )
            .unwrap();
        let set = fam.local_set(b).unwrap();
        assert_eq!(set.get(1), &parse_poly("(x1 - 1)^2").unwrap());
        assert_eq!(set.get(2), &parse_poly("x2^2 + 3*(x1 - 1)*x2").unwrap());
        assert_eq!(fam.multiplicity(b), 4);
        assert_eq!(fam.path(b), vec![rat(1), rat(0)]);
    }

    #[test]
    fn dfs_order_is_preorder() {
        let fam = worked();
        let paths: Vec<_> = fam.dfs().into_iter().map(|id| fam.path(id)).collect();
        assert_eq!(
            paths,
            vec![
                vec![rat(0)],
                vec![rat(0), rat(0)],
                vec![rat(0), rat(1)],
                vec![rat(1)],
                vec![rat(1), rat(2)],
                vec![rat(1), rat(3)],
            ]
        );
    }
}
