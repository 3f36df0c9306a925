//! Interpolation of a triangular set from its primary components.
//!
//! At every node `a` of depth `l` the children's generators multiply to the
//! branch product `T_{l+1}[a]`, the image of `T_{l+1}` in the local algebra
//! at `a`. Sibling products `e` and their local inverses `u` give a complete
//! family of orthogonal idempotents `e~ = u e` of
//! `A_a = k[x_1..x_{l+1}] / <t_1, .., t_l, T_{l+1}[a]>`; chaining the
//! idempotents down the tree glues the branch products into `T_{l+1}`.
//! Chaining the plain `e`'s instead gives the non-monic `N_{l+1}` and the
//! cofactor `F_{l+1}` with `F T = N` modulo `<T_1, .., T_l>`.
//!
//! Every level is returned reduced modulo the levels below it.

mod json;
mod verify;

use crate::arith::{MPoly, Rational};
use crate::error::{Error, Result};
use crate::primary::{NodeId, PrimaryFamily};
use crate::triset::TriangularSet;

pub use json::{result_from_json, result_to_json, ResultFile};
pub use verify::{
    verify_all, verify_reconstruction, Check, CheckOutcome, CheckStatus, VerifyReport,
};

/// The idempotent data of one child `g` of a node `a`, all reduced in the
/// algebra `A_a` except `u`, which is reduced modulo the child's own primary
/// set (so its degree in `x_{l+1}` is below `delta(g)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentEntry {
    pub child: NodeId,
    pub coord: Rational,
    pub delta: u32,
    pub e: MPoly,
    pub u: MPoly,
    pub e_tilde: MPoly,
}

/// Idempotents of `A_a` for the children of one node `a` at depth `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSet {
    pub parent: NodeId,
    pub parent_path: Vec<Rational>,
    /// Level `l + 1` of the children.
    pub level: usize,
    /// `(t_1, .., t_l, T_{l+1}[a])`; its last element is the branch product.
    pub algebra: TriangularSet,
    pub entries: Vec<IdempotentEntry>,
}

impl IdempotentSet {
    pub fn branch_product(&self) -> &MPoly {
        self.algebra.get(self.level)
    }
}

/// Output of [`reconstruct`].
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub t: TriangularSet,
    pub n: Vec<MPoly>,
    pub f: Vec<MPoly>,
    /// One set per internal node, depth-first, root first.
    pub idempotents: Vec<IdempotentSet>,
}

impl Reconstruction {
    /// `N_l`, 1-based.
    pub fn n_at(&self, level: usize) -> &MPoly {
        &self.n[level - 1]
    }

    /// `F_l`, 1-based.
    pub fn f_at(&self, level: usize) -> &MPoly {
        &self.f[level - 1]
    }
}

/// Generators and primary sets of every node, computed once.
pub(crate) struct FamilyData<'a> {
    pub family: &'a PrimaryFamily,
    pub degrees: Vec<u32>,
    expanded: Vec<MPoly>,
    local: Vec<TriangularSet>,
}

impl<'a> FamilyData<'a> {
    pub fn new(family: &'a PrimaryFamily) -> Result<Self> {
        let degrees = family.degrees()?;
        let count = family.node_count();
        let mut expanded = vec![MPoly::one(); count];
        let mut local = vec![TriangularSet::empty(); count];
        for id in family.dfs() {
            let parent = family.parent(id).unwrap();
            let t = family.expand_node(id);
            let mut set = local[parent.index()].clone();
            set.push(t.clone())?;
            expanded[id.index()] = t;
            local[id.index()] = set;
        }
        Ok(Self {
            family,
            degrees,
            expanded,
            local,
        })
    }

    pub fn expanded(&self, id: NodeId) -> &MPoly {
        &self.expanded[id.index()]
    }

    pub fn local(&self, id: NodeId) -> &TriangularSet {
        &self.local[id.index()]
    }

    pub fn branch_product(&self, node: NodeId) -> MPoly {
        let set = self.local(node);
        self.family
            .children(node)
            .iter()
            .fold(MPoly::one(), |acc, &c| set.mod_mul(&acc, self.expanded(c)))
    }

    pub fn sibling_product(&self, child: NodeId) -> MPoly {
        let parent = self.family.parent(child).expect("root has no siblings");
        let set = self.local(parent);
        self.family
            .children(parent)
            .iter()
            .filter(|&&c| c != child)
            .fold(MPoly::one(), |acc, &c| set.mod_mul(&acc, self.expanded(c)))
    }

    pub fn idempotent_set(&self, node: NodeId) -> Result<IdempotentSet> {
        let level = self.family.depth(node) + 1;
        let mut algebra = self.local(node).clone();
        algebra.push(self.branch_product(node))?;
        let mut entries = Vec::new();
        for &child in self.family.children(node) {
            let e = self.sibling_product(child);
            let u = self.cofactor(child, &e)?;
            let e_tilde = algebra.mod_mul(&u, &e);
            let comp = self.family.component(child).unwrap();
            entries.push(IdempotentEntry {
                child,
                coord: comp.point_coord.clone(),
                delta: comp.delta,
                e,
                u,
                e_tilde,
            });
        }
        Ok(IdempotentSet {
            parent: node,
            parent_path: self.family.path(node),
            level,
            algebra,
            entries,
        })
    }

    fn cofactor(&self, child: NodeId, e: &MPoly) -> Result<MPoly> {
        let set = self.local(child);
        let q = crate::primary::LocalQuotient::new(self.family.path(child), set.clone());
        q.inverse(e)
    }

    fn internal_nodes(&self) -> Vec<NodeId> {
        let n = self.family.n();
        std::iter::once(self.family.root())
            .chain(
                self.family
                    .dfs()
                    .into_iter()
                    .filter(|&id| self.family.depth(id) < n),
            )
            .collect()
    }
}

/// `T_{l+1}[a]`: product of the children's generators modulo the primary
/// set at `node`.
pub fn branch_product(family: &PrimaryFamily, node: NodeId) -> Result<MPoly> {
    Ok(FamilyData::new(family)?.branch_product(node))
}

/// `e(g)`: product of the generators of the siblings of `child`, modulo the
/// parent's primary set.
pub fn idempotent_e(family: &PrimaryFamily, child: NodeId) -> Result<MPoly> {
    Ok(FamilyData::new(family)?.sibling_product(child))
}

/// `u(g)`: inverse of `e(g)` modulo the primary set at `child`.
pub fn cofactor_u(family: &PrimaryFamily, child: NodeId) -> Result<MPoly> {
    let data = FamilyData::new(family)?;
    let e = data.sibling_product(child);
    data.cofactor(child, &e)
}

/// `e~(g) = u(g) e(g)` reduced in the parent's algebra `A_a`.
pub fn idempotent_tilde(family: &PrimaryFamily, child: NodeId) -> Result<MPoly> {
    let data = FamilyData::new(family)?;
    let parent = family
        .parent(child)
        .ok_or_else(|| Error::Malformed("the root has no idempotent".into()))?;
    let set = data.idempotent_set(parent)?;
    Ok(set
        .entries
        .into_iter()
        .find(|e| e.child == child)
        .unwrap()
        .e_tilde)
}

/// Idempotents for all children of `node`.
pub fn idempotent_set(family: &PrimaryFamily, node: NodeId) -> Result<IdempotentSet> {
    FamilyData::new(family)?.idempotent_set(node)
}

/// Builds `T`, `N` and `F` level by level. The chain products of
/// idempotents are memoised per node and reduced modulo the levels built so
/// far.
pub fn reconstruct(family: &PrimaryFamily) -> Result<Reconstruction> {
    let data = FamilyData::new(family)?;
    let n = family.n();
    let count = family.node_count();

    let mut idem_of_child: Vec<Option<(MPoly, MPoly)>> = vec![None; count];
    let mut idempotents = Vec::new();
    for node in data.internal_nodes() {
        let set = data.idempotent_set(node)?;
        for entry in &set.entries {
            idem_of_child[entry.child.index()] = Some((entry.e.clone(), entry.e_tilde.clone()));
        }
        idempotents.push(set);
    }
    let branch: Vec<Option<&MPoly>> = {
        let mut b = vec![None; count];
        for set in &idempotents {
            b[set.parent.index()] = Some(set.branch_product());
        }
        b
    };

    let root = family.root();
    let t1 = branch[root.index()].unwrap().clone();
    let mut t = TriangularSet::new(vec![t1.clone()])?;
    let mut ns = vec![t1];
    let mut fs = vec![MPoly::one()];

    // chain products of e~ and of e, per node
    let mut chain_tilde = vec![MPoly::zero(); count];
    let mut chain_plain = vec![MPoly::zero(); count];
    chain_tilde[root.index()] = MPoly::one();
    chain_plain[root.index()] = MPoly::one();

    for depth in 1..n {
        let nodes = family.nodes_at_depth(depth);
        let mut t_next = MPoly::zero();
        let mut n_next = MPoly::zero();
        let mut f_next = MPoly::zero();
        for &node in &nodes {
            let parent = family.parent(node).unwrap();
            let (e, e_tilde) = idem_of_child[node.index()].as_ref().unwrap();
            let ct = t.mod_mul(&chain_tilde[parent.index()], e_tilde);
            let cp = t.mod_mul(&chain_plain[parent.index()], e);
            let bp = branch[node.index()].unwrap();
            t_next += &t.mod_mul(&ct, bp);
            n_next += &t.mod_mul(&cp, bp);
            f_next += &cp;
            chain_tilde[node.index()] = ct;
            chain_plain[node.index()] = cp;
        }
        t.push(t_next)?;
        ns.push(n_next);
        fs.push(f_next);
    }

    Ok(Reconstruction {
        t,
        n: ns,
        f: fs,
        idempotents,
    })
}

/// The monic triangular set only.
pub fn reconstruct_t(family: &PrimaryFamily) -> Result<TriangularSet> {
    reconstruct(family).map(|r| r.t)
}

/// `(N_1, .., N_n)`, with `N_1 = T_1`.
pub fn reconstruct_n(family: &PrimaryFamily) -> Result<Vec<MPoly>> {
    reconstruct(family).map(|r| r.n)
}

/// `(F_1, .., F_n)`, with `F_1 = 1`.
pub fn compute_f(family: &PrimaryFamily) -> Result<Vec<MPoly>> {
    reconstruct(family).map(|r| r.f)
}
