//! Cluster pictures: the tree of disc cuts of a root multiset.
//!
//! A cluster is any nonempty subset of the roots of the form D cap R for a
//! disc D.  Clusters ordered by inclusion form a tree whose leaves are the
//! individual roots; a proper cluster's depth is the minimal pairwise
//! valuation among its members, and children are the equivalence classes of
//! "valuation strictly greater than the depth".

use crate::error::Error;
use crate::field::{join_ctx, Ctx, Elem};
use crate::poly::{Disc, ValPoly};
use crate::rat::{fmt_q, Ext, Q};
use crate::Result;

pub type ClusterId = usize;

#[derive(Debug)]
struct Node {
    /// Sorted root indices.
    members: Vec<usize>,
    /// Minimal pairwise valuation; PosInf for singletons.
    depth: Ext,
    parent: Option<ClusterId>,
    children: Vec<ClusterId>,
}

/// The cluster picture of an odd-cardinality root multiset.
#[derive(Debug)]
pub struct ClusterTree {
    roots: Vec<Elem>,
    lead: Elem,
    ctx: Ctx,
    nodes: Vec<Node>,
    top: ClusterId,
}

impl ClusterTree {
    pub fn new(roots: Vec<Elem>, lead: Elem) -> Result<ClusterTree> {
        if roots.is_empty() {
            return Err(Error::SchemaError("at least one root is required".into()));
        }
        if roots.len().is_multiple_of(2) {
            return Err(Error::EvenDegreeUnsupported { n: roots.len() });
        }
        match lead.valuation() {
            Ok(Ext::Fin(_)) => {}
            Ok(_) | Err(Error::PrecisionExhausted { .. }) => {
                return Err(Error::UnsupportedLeadingCoefficient {
                    context: "the valuation of the leading coefficient cannot be established"
                        .into(),
                })
            }
            Err(e) => return Err(e),
        }
        let mut ctx = lead.ctx.clone();
        for r in &roots {
            ctx = join_ctx(&ctx, &r.ctx)?;
        }
        let roots: Vec<Elem> = roots.iter().map(|r| r.embed(&ctx)).collect();
        let lead = lead.embed(&ctx);

        let n = roots.len();
        let mut pv = vec![vec![Q::default(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = match roots[i].sub(&roots[j]).valuation() {
                    Ok(Ext::Fin(v)) => v,
                    Ok(_) => return Err(Error::IndistinctRoots { i, j }),
                    Err(Error::PrecisionExhausted { .. }) => {
                        return Err(Error::IndistinctRoots { i, j })
                    }
                    Err(e) => return Err(e),
                };
                pv[i][j] = v;
                pv[j][i] = v;
            }
        }

        let mut nodes = Vec::new();
        let all: Vec<usize> = (0..n).collect();
        let top = build(&mut nodes, all, &pv, None);
        Ok(ClusterTree {
            roots,
            lead,
            ctx,
            nodes,
            top,
        })
    }

    pub fn roots(&self) -> &[Elem] {
        &self.roots
    }

    pub fn lead(&self) -> &Elem {
        &self.lead
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn genus(&self) -> usize {
        (self.roots.len() - 1) / 2
    }

    pub fn poly(&self) -> ValPoly {
        ValPoly::from_roots(&self.roots, &self.lead)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ids(&self) -> impl Iterator<Item = ClusterId> {
        0..self.nodes.len()
    }

    pub fn top(&self) -> ClusterId {
        self.top
    }

    pub fn members(&self, id: ClusterId) -> &[usize] {
        &self.nodes[id].members
    }

    pub fn size(&self, id: ClusterId) -> usize {
        self.nodes[id].members.len()
    }

    pub fn is_even(&self, id: ClusterId) -> bool {
        self.size(id).is_multiple_of(2)
    }

    pub fn is_proper(&self, id: ClusterId) -> bool {
        self.size(id) >= 2
    }

    pub fn depth(&self, id: ClusterId) -> Ext {
        self.nodes[id].depth
    }

    pub fn parent(&self, id: ClusterId) -> Option<ClusterId> {
        self.nodes[id].parent
    }

    pub fn children(&self, id: ClusterId) -> &[ClusterId] {
        &self.nodes[id].children
    }

    /// The distinguished center: the member root with the lowest input index.
    pub fn center_root(&self, id: ClusterId) -> usize {
        self.nodes[id].members[0]
    }

    pub fn center(&self, id: ClusterId) -> &Elem {
        &self.roots[self.center_root(id)]
    }

    /// d_plus: the cluster's own depth (proper clusters only).
    pub fn depth_plus(&self, id: ClusterId) -> Result<Q> {
        match self.nodes[id].depth {
            Ext::Fin(v) => Ok(v),
            _ => Err(Error::invariant("d_plus of a singleton cluster")),
        }
    }

    /// d_minus: the parent's depth (non-top clusters only).
    pub fn depth_minus(&self, id: ClusterId) -> Result<Q> {
        match self.nodes[id].parent {
            Some(p) => self.depth_plus(p),
            None => Err(Error::invariant("d_minus of the top cluster")),
        }
    }

    /// The linking interval [d_minus, d_plus].
    pub fn interval(&self, id: ClusterId) -> Result<(Q, Q)> {
        Ok((self.depth_minus(id)?, self.depth_plus(id)?))
    }

    /// delta = d_plus - d_minus.
    pub fn relative_depth(&self, id: ClusterId) -> Result<Q> {
        let (lo, hi) = self.interval(id)?;
        Ok(hi - lo)
    }

    /// Root indices inside a disc.
    pub fn cut(&self, d: &Disc) -> Result<Vec<usize>> {
        let mut inside = Vec::new();
        for (i, r) in self.roots.iter().enumerate() {
            let diff = r.sub(&d.center);
            let is_in = match diff.valuation() {
                Ok(Ext::Fin(v)) => v >= d.depth,
                Ok(Ext::PosInf) => true,
                Ok(Ext::NegInf) => unreachable!(),
                Err(Error::PrecisionExhausted { .. }) => {
                    if diff.prec() >= d.depth {
                        true
                    } else {
                        return Err(Error::PrecisionExhausted {
                            context: format!(
                                "cannot place root {i} relative to {d}: difference known only \
                                 to precision {}",
                                fmt_q(diff.prec())
                            ),
                        });
                    }
                }
                Err(e) => return Err(e),
            };
            if is_in {
                inside.push(i);
            }
        }
        Ok(inside)
    }

    /// The cluster cut out by a disc, if any.  A nonempty cut is always a
    /// cluster of the tree.
    pub fn cluster_of_disc(&self, d: &Disc) -> Result<Option<ClusterId>> {
        let cut = self.cut(d)?;
        if cut.is_empty() {
            return Ok(None);
        }
        match self.nodes.iter().position(|n| n.members == cut) {
            Some(id) => Ok(Some(id)),
            None => Err(Error::invariant("a nonempty disc cut is not a cluster")),
        }
    }

    /// All clusters the disc is linked to: none when the disc misses the
    /// roots; the cut cluster alone at depths strictly inside its interval;
    /// the cut cluster together with all its children exactly at the cut
    /// cluster's own depth.
    pub fn linked_clusters(&self, d: &Disc) -> Result<Vec<ClusterId>> {
        let Some(s) = self.cluster_of_disc(d)? else {
            return Ok(Vec::new());
        };
        if self.nodes[s].depth == Ext::Fin(d.depth) {
            let mut out = vec![s];
            out.extend_from_slice(&self.nodes[s].children);
            Ok(out)
        } else {
            Ok(vec![s])
        }
    }

    /// Even-cardinality proper clusters, deepest first (ties by first member).
    pub fn even_clusters(&self) -> Vec<ClusterId> {
        let mut out: Vec<ClusterId> = self.ids().filter(|&id| self.is_even(id)).collect();
        out.sort_by(|&a, &b| {
            self.nodes[b]
                .depth
                .cmp(&self.nodes[a].depth)
                .then(self.nodes[a].members[0].cmp(&self.nodes[b].members[0]))
        });
        out
    }

    /// Nested textual rendering, e.g. "((0 1)_{5} 2 3 4)_{0}".
    pub fn picture(&self) -> String {
        self.render(self.top)
    }

    fn render(&self, id: ClusterId) -> String {
        let node = &self.nodes[id];
        if node.members.len() == 1 {
            return node.members[0].to_string();
        }
        let inner: Vec<String> = node.children.iter().map(|&c| self.render(c)).collect();
        let depth = match node.depth {
            Ext::Fin(v) => fmt_q(v),
            _ => unreachable!(),
        };
        format!("({})_{{{}}}", inner.join(" "), depth)
    }
}

fn build(
    nodes: &mut Vec<Node>,
    members: Vec<usize>,
    pv: &[Vec<Q>],
    parent: Option<ClusterId>,
) -> ClusterId {
    let id = nodes.len();
    nodes.push(Node {
        members: members.clone(),
        depth: Ext::PosInf,
        parent,
        children: Vec::new(),
    });
    if members.len() == 1 {
        return id;
    }
    let depth = members
        .iter()
        .enumerate()
        .flat_map(|(k, &i)| members[k + 1..].iter().map(move |&j| pv[i][j]))
        .min()
        .unwrap();
    nodes[id].depth = Ext::Fin(depth);
    // group members by "pairwise valuation exceeds the depth"; the
    // ultrametric inequality makes one representative per group enough
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &m in &members {
        match groups.iter_mut().find(|g| pv[g[0]][m] > depth) {
            Some(g) => g.push(m),
            None => groups.push(vec![m]),
        }
    }
    debug_assert!(groups.len() >= 2);
    for g in groups {
        let child = build(nodes, g, pv, Some(id));
        nodes[id].children.push(child);
    }
    id
}
