//! Special fibre assembly.
//!
//! Each valid disc D carries a component of the special fibre, a double cover
//! of a line branched over some of the marked points of D: the reductions of
//! the root clumps inside D plus the point at infinity.  Per marked point the
//! ramification invariant ell is read off the one-sided slope of the depth
//! function there; Riemann-Hurwitz then gives the component genus as
//! -1 + (sum of ell)/2, the all-zero case being the split cover by two lines.
//!
//! The slopes are taken from the per-interval depth functions assembled out
//! of the side forms, never from direct evaluation of the full polynomial:
//! at the depth of a cluster with several even children the true value 2 is
//! the supremum of the improvement sequence without being attained, so a
//! direct evaluation there cannot terminate, while the side forms see each
//! clump separately and stay computable.
//!
//! A second, independent description counts the branch points M of the cover
//! through cluster viability alone: an interior disc (whose cut is deeper
//! than the disc) has M = 1 or 2 according to whether its cut is viable; a
//! boundary disc, sitting exactly at the depth of its cut, has M = the number
//! of non-viable clusters among the cut and its children.  Both descriptions
//! must agree, and the assembly checks that they do.
//!
//! Global invariants: toric rank = viable minus uebereven clusters; 2-rank
//! both as (semi-viable minus semi-uebereven) minus toric and as the
//! Deuring-Shafarevich sum of max(M - 1, 0) over components; abelian rank =
//! genus minus toric rank.  Each viable cluster contributes two nodes joining
//! its two components, of thickness (b+ - b-) scaled by the uniformizer.

use num_integer::Integer;

use crate::clusters::{ClusterId, ClusterTree};
use crate::discs::{
    collect_valid_discs, t_r_on_interval, ClusterAnalysis, Uebereven, ValidDisc, Viability,
};
use crate::error::Error;
use crate::poly::Disc;
use crate::rat::{qi, Ext, Q};
use crate::Result;

/// Reduction type of one component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Irreducible {
        genus: usize,
    },
    /// The unramified double cover split into two rational lines; occurs
    /// exactly at the boundary disc of an uebereven cluster.
    TwoLines,
}

/// A marked point of a component: the reduction of a root clump (identified
/// by the cluster the clump generates) or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkedPoint {
    Clump(ClusterId),
    Infinity,
}

/// Ramification invariant at one marked point; zero where unramified,
/// otherwise an even number >= 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub point: MarkedPoint,
    pub ell: usize,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub disc: Disc,
    /// The cluster cut out by the disc.
    pub host: ClusterId,
    pub kind: ComponentKind,
    /// One entry per marked point, infinity last.
    pub ramification: Vec<BranchPoint>,
    /// Number of branch points, computed from viability.
    pub branch_points: usize,
}

impl Component {
    pub fn genus_contribution(&self) -> usize {
        match self.kind {
            ComponentKind::Irreducible { genus } => genus,
            ComponentKind::TwoLines => 0,
        }
    }
}

/// The pair of nodes where the two components of a viable cluster meet.
#[derive(Clone, Debug)]
pub struct NodePair {
    pub cluster: ClusterId,
    /// Indices into the component list.
    pub deep: usize,
    pub shallow: usize,
    /// b+ - b-, in raw valuation units.
    pub gap: Q,
    /// (b+ - b-) / v(pi), in units of the chosen uniformizer.
    pub thickness: Q,
}

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub genus: usize,
    pub toric_rank: usize,
    pub two_rank: usize,
    pub abelian_rank: usize,
    /// v(pi) used to scale thicknesses; the coarsest choice by default.
    pub uniformizer_valuation: Q,
    /// Whether the components listed here provably make up the whole fibre.
    pub complete: bool,
    pub components: Vec<Component>,
    pub nodes: Vec<NodePair>,
}

impl FiberReport {
    /// The 2-rank recomputed from branch point counts alone: each component
    /// with M branch points contributes max(M - 1, 0).
    pub fn two_rank_via_branch_counts(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.branch_points.saturating_sub(1))
            .sum()
    }
}

/// ell from the slope on the approach side of a marked point: away from a
/// branch point the depth function cannot fall, and where it does fall the
/// drop rate d determines ell = 1 + d.  Even nonzero rates never occur at
/// valid discs.
fn ell_from_slope(toward: i64, what: &str) -> Result<usize> {
    if toward >= 0 {
        Ok(0)
    } else if toward % 2 != 0 {
        Ok((1 - toward) as usize)
    } else {
        Err(Error::IndeterminateEll {
            context: format!("even one-sided slope {toward} toward {what}"),
        })
    }
}

/// The component carried by one valid disc.
pub fn component_at(
    tree: &ClusterTree,
    analyses: &[ClusterAnalysis],
    vd: &ValidDisc,
) -> Result<Component> {
    let host = vd.host;
    let b = vd.disc.depth;
    if !tree.is_even(host) {
        return Err(Error::invariant("a valid disc cuts an odd cluster"));
    }
    let Ext::Fin(host_depth) = tree.depth(host) else {
        return Err(Error::invariant(
            "a valid disc cuts a cluster of infinite depth",
        ));
    };
    let boundary = b == host_depth;
    let host_fun = t_r_on_interval(tree, &analyses[host])?;

    // finite marked points: the clumps of the cut at radius b, which are the
    // children of the host when the disc sits at the host's own depth and
    // the whole host otherwise; the slope toward a clump is read just inside
    // the interval of the cluster the clump generates
    let clumps: Vec<ClusterId> = if boundary {
        tree.children(host).to_vec()
    } else {
        vec![host]
    };
    let mut ramification = Vec::with_capacity(clumps.len() + 1);
    for &c in &clumps {
        if !tree.is_even(c) {
            return Err(Error::invariant("odd root clump at a valid disc"));
        }
        let slope = if boundary {
            t_r_on_interval(tree, &analyses[c])?.fun.right_slope(b)
        } else {
            host_fun.fun.right_slope(b)
        };
        let ell = ell_from_slope(slope, "a clump")?;
        ramification.push(BranchPoint {
            point: MarkedPoint::Clump(c),
            ell,
        });
    }
    let ell = ell_from_slope(-host_fun.fun.left_slope(b), "infinity")?;
    ramification.push(BranchPoint {
        point: MarkedPoint::Infinity,
        ell,
    });

    // the same count through viability alone: an irreducible cover of an
    // interior disc always keeps at least one branch point, while at a
    // boundary disc every non-viable linked cluster contributes one
    let mut linked = clumps;
    if boundary {
        linked.push(host);
    }
    for &s in &linked {
        if !analyses[s].viability.at_least_semi() {
            return Err(Error::invariant(
                "a cluster linked to a valid disc must be semi-viable",
            ));
        }
    }
    let branch_points = if boundary {
        linked
            .iter()
            .filter(|&&s| analyses[s].viability != Viability::Viable)
            .count()
    } else if analyses[host].viability == Viability::Viable {
        1
    } else {
        2
    };
    let ramified = ramification.iter().filter(|p| p.ell > 0).count();
    if branch_points != ramified {
        return Err(Error::invariant(format!(
            "branch points disagree between the viability count ({branch_points}) and the ramification count ({ramified})"
        )));
    }

    let total: usize = ramification.iter().map(|p| p.ell).sum();
    let uber_hub = boundary && analyses[host].uebereven == Uebereven::Full;
    if (total == 0) != uber_hub {
        return Err(Error::invariant(
            "an unramified cover must sit at an uebereven boundary disc and vice versa",
        ));
    }
    let kind = if total == 0 {
        ComponentKind::TwoLines
    } else {
        ComponentKind::Irreducible {
            genus: total / 2 - 1,
        }
    };
    Ok(Component {
        disc: vd.disc.clone(),
        host,
        kind,
        ramification,
        branch_points,
    })
}

fn qgcd(a: Q, b: Q) -> Q {
    let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    Q::new(num, a.denom() * b.denom())
}

fn find_component(components: &[Component], target: &Disc) -> Result<usize> {
    components
        .iter()
        .position(|c| c.disc.same_disc(target))
        .ok_or_else(|| Error::invariant("a cluster's valid disc has no component"))
}

/// Whether the deeper disc is contained in the shallower one.
fn nested(deep: &Disc, shallow: &Disc) -> Result<bool> {
    debug_assert!(deep.depth >= shallow.depth);
    let v = deep.center.sub(&shallow.center).valuation()?;
    Ok(v >= Ext::Fin(shallow.depth))
}

/// Assemble the fibre report.  `uniformizer` overrides v(pi) for thickness
/// scaling; by default the coarsest uniformizer making every thickness an
/// integer is used.
pub fn assemble(
    tree: &ClusterTree,
    analyses: &[ClusterAnalysis],
    uniformizer: Option<Q>,
) -> Result<FiberReport> {
    if let Some(u) = uniformizer {
        if u <= qi(0) {
            return Err(Error::SchemaError(
                "uniformizer valuation must be positive".into(),
            ));
        }
    }
    let discs = collect_valid_discs(tree, analyses)?;
    let mut components = Vec::with_capacity(discs.len());
    for vd in &discs {
        components.push(component_at(tree, analyses, vd)?);
    }

    let viable = analyses
        .iter()
        .filter(|a| a.viability == Viability::Viable)
        .count();
    let uber = analyses
        .iter()
        .filter(|a| a.uebereven == Uebereven::Full)
        .count();
    let semi = analyses
        .iter()
        .filter(|a| a.viability.at_least_semi())
        .count();
    let semi_uber = analyses
        .iter()
        .filter(|a| a.uebereven != Uebereven::Not)
        .count();
    let toric_rank = viable - uber;
    let route_a = (semi - semi_uber) as i64 - toric_rank as i64;
    let route_b: i64 = components
        .iter()
        .map(|c| c.branch_points.saturating_sub(1) as i64)
        .sum();
    if route_a < 0 || route_a != route_b {
        return Err(Error::invariant(format!(
            "2-rank routes disagree: {route_a} from viability counts, {route_b} from branch points"
        )));
    }
    let two_rank = route_a as usize;
    let genus = tree.genus();
    if toric_rank > genus {
        return Err(Error::invariant("toric rank exceeds the curve genus"));
    }
    let abelian_rank = genus - toric_rank;

    let gaps: Vec<(ClusterId, Q)> = analyses
        .iter()
        .filter(|a| a.viability == Viability::Viable)
        .map(|a| {
            let (lo, hi) = a
                .j_interval
                .expect("viable cluster without a disc interval");
            (a.cluster, hi - lo)
        })
        .collect();
    let vpi = uniformizer.unwrap_or_else(|| {
        gaps.iter()
            .map(|&(_, g)| g)
            .reduce(qgcd)
            .unwrap_or_else(|| qi(1))
    });
    let mut nodes = Vec::with_capacity(gaps.len());
    for (s, gap) in gaps {
        let (lo, hi) = analyses[s].j_interval.expect("checked above");
        let alpha = tree.center(s);
        let deep = find_component(&components, &Disc::new(alpha.clone(), hi))?;
        let shallow = find_component(&components, &Disc::new(alpha.clone(), lo))?;
        nodes.push(NodePair {
            cluster: s,
            deep,
            shallow,
            gap,
            thickness: gap / vpi,
        });
    }

    // the report is provably the whole fibre only when the components form a
    // single chain of discs, none of them sits at a cluster boundary, and the
    // genus bookkeeping closes
    let mut chain = true;
    for i in 0..components.len() {
        for j in (i + 1)..components.len() {
            chain &= nested(&components[i].disc, &components[j].disc)?;
        }
    }
    let no_hub = components
        .iter()
        .all(|c| matches!(tree.depth(c.host), Ext::Fin(d) if d != c.disc.depth));
    let genus_sum: usize = components.iter().map(|c| c.genus_contribution()).sum();
    let complete = chain && no_hub && toric_rank + genus_sum == genus;

    Ok(FiberReport {
        genus,
        toric_rank,
        two_rank,
        abelian_rank,
        uniformizer_valuation: vpi,
        complete,
        components,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clusters::ClusterTree;
    use crate::discs::analyze_all;
    use crate::field::{hensel_lift_root, make_field, make_field_with, Elem};
    use crate::psd::DEFAULT_CAP;
    use crate::rat::q;

    fn fiber(roots: Vec<Elem>, lead: Elem, uniformizer: Option<Q>) -> FiberReport {
        let tree = ClusterTree::new(roots, lead).unwrap();
        let analyses = analyze_all(&tree, DEFAULT_CAP).unwrap();
        assemble(&tree, &analyses, uniformizer).unwrap()
    }

    /// x(x - lambda)(x^3 + x^2 - 4x + 1).
    fn quintic(v_lambda: u32) -> (Vec<Elem>, Elem) {
        let ctx = make_field_with(3, 1, qi(24), 0b1101).unwrap();
        let cubic: Vec<Elem> = [1, -4, 1, 1]
            .iter()
            .map(|&n| Elem::from_i128(&ctx, n))
            .collect();
        let mut roots = vec![Elem::zero(&ctx), Elem::from_i128(&ctx, 1 << v_lambda)];
        for r0 in [0b010u32, 0b100, 0b111] {
            roots.push(hensel_lift_root(&ctx, &cubic, r0).unwrap());
        }
        (roots, Elem::one(&ctx))
    }

    /// x(x - lambda)(x^3 - 1) with v(lambda) given as a rational.
    fn cube_root_family(v_lambda: Q) -> (Vec<Elem>, Elem) {
        let e = *v_lambda.denom() as u32;
        let ctx = make_field(2, e, qi(24)).unwrap();
        let cube: Vec<Elem> = [-1, 0, 0, 1]
            .iter()
            .map(|&n| Elem::from_i128(&ctx, n))
            .collect();
        let mut roots = vec![
            Elem::zero(&ctx),
            Elem::pi_pow(&ctx, v_lambda).unwrap(),
            Elem::one(&ctx),
        ];
        for r0 in [0b10u32, 0b11] {
            roots.push(hensel_lift_root(&ctx, &cube, r0).unwrap());
        }
        (roots, Elem::one(&ctx))
    }

    #[test]
    fn quintic_deep_case_has_two_genus_zero_components() {
        let (roots, lead) = quintic(5);
        let f = fiber(roots, lead, None);
        assert_eq!(f.genus, 2);
        assert_eq!(f.toric_rank, 1);
        assert_eq!(f.two_rank, 0);
        assert_eq!(f.abelian_rank, 1);
        assert_eq!(f.components.len(), 2);
        for c in &f.components {
            assert_eq!(c.kind, ComponentKind::Irreducible { genus: 0 });
            assert_eq!(c.branch_points, 1);
        }
        // deep component branches over its clump, shallow over infinity
        assert_eq!(f.components[0].ramification.first().unwrap().ell, 2);
        assert_eq!(f.components[0].ramification.last().unwrap().ell, 0);
        assert_eq!(f.components[1].ramification.first().unwrap().ell, 0);
        assert_eq!(f.components[1].ramification.last().unwrap().ell, 2);
        // gap b+ - b- = 2 is the only one, so the default uniformizer is 2
        assert_eq!(f.uniformizer_valuation, qi(2));
        assert_eq!(f.nodes.len(), 1);
        assert_eq!(f.nodes[0].thickness, qi(1));
        assert_eq!((f.nodes[0].deep, f.nodes[0].shallow), (0, 1));
        // a genus-1 component exists beyond the valid discs
        assert!(!f.complete);
    }

    #[test]
    fn quintic_semi_case_is_a_single_genus_one_component() {
        let (roots, lead) = quintic(3);
        let f = fiber(roots, lead, None);
        assert_eq!(f.toric_rank, 0);
        assert_eq!(f.two_rank, 1);
        assert_eq!(f.abelian_rank, 2);
        assert_eq!(f.components.len(), 1);
        let c = &f.components[0];
        assert_eq!(c.kind, ComponentKind::Irreducible { genus: 1 });
        assert_eq!(c.branch_points, 2);
        assert!(c.ramification.iter().all(|p| p.ell == 2));
        assert!(f.nodes.is_empty());
        assert_eq!(f.uniformizer_valuation, qi(1));
        assert!(!f.complete);
    }

    #[test]
    fn quintic_thickness_respects_an_explicit_uniformizer() {
        let (roots, lead) = quintic(5);
        let f = fiber(roots, lead, Some(qi(1)));
        assert_eq!(f.uniformizer_valuation, qi(1));
        assert_eq!(f.nodes[0].thickness, qi(2));
    }

    #[test]
    fn cube_root_family_viable_case_is_complete() {
        let (roots, lead) = cube_root_family(qi(4));
        let f = fiber(roots, lead, None);
        assert_eq!(f.genus, 2);
        assert_eq!(f.toric_rank, 1);
        assert_eq!(f.two_rank, 0);
        assert_eq!(f.abelian_rank, 1);
        let genera: Vec<usize> = f
            .components
            .iter()
            .map(|c| c.genus_contribution())
            .collect();
        assert_eq!(genera, vec![0, 1]);
        // the deep component covers the line branched only above its clump;
        // the shallow one only above infinity, with ell = 2g
        assert_eq!(f.components[1].ramification.last().unwrap().ell, 4);
        assert_eq!(f.nodes[0].thickness, qi(1));
        assert_eq!(f.uniformizer_valuation, q(4, 3));
        assert!(f.complete);
    }

    #[test]
    fn cube_root_family_at_threshold_has_two_rank_one() {
        let (roots, lead) = cube_root_family(q(8, 3));
        let f = fiber(roots, lead, None);
        assert_eq!(f.toric_rank, 0);
        assert_eq!(f.two_rank, 1);
        assert_eq!(f.components.len(), 1);
        let c = &f.components[0];
        assert_eq!(c.kind, ComponentKind::Irreducible { genus: 2 });
        assert_eq!(c.branch_points, 2);
        assert!(f.complete);
    }

    #[test]
    fn uebereven_hub_splits_into_two_lines() {
        let ctx = make_field(1, 1, qi(30)).unwrap();
        let mk = |n: i128| Elem::from_i128(&ctx, n);
        let roots = vec![
            mk(0),
            mk(1 << 9),
            mk(1 << 4),
            mk((1 << 4) + (1 << 9)),
            mk(1),
        ];
        let f = fiber(roots, Elem::one(&ctx), None);
        assert_eq!(f.toric_rank, 2);
        assert_eq!(f.two_rank, 0);
        assert_eq!(f.abelian_rank, 0);
        let kinds: Vec<ComponentKind> = f.components.iter().map(|c| c.kind).collect();
        assert_eq!(
            kinds,
            vec![
                ComponentKind::Irreducible { genus: 0 },
                ComponentKind::Irreducible { genus: 0 },
                ComponentKind::TwoLines,
                ComponentKind::Irreducible { genus: 0 },
            ]
        );
        assert_eq!(f.components[2].branch_points, 0);
        // gaps 3, 3 and 2 give the coarsest uniformizer v(pi) = 1
        assert_eq!(f.uniformizer_valuation, qi(1));
        let mut th: Vec<Q> = f.nodes.iter().map(|n| n.thickness).collect();
        th.sort();
        assert_eq!(th, vec![qi(2), qi(3), qi(3)]);
        // the hub disc is linked to three clusters, so completeness is not claimed
        assert!(!f.complete);
    }
}
