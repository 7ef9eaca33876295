//! Valid-disc analysis of clusters.
//!
//! For an even cluster s with interval I(s) = [d-, d+], the depth function
//! along a center of s splits into two one-sided pieces computed from the
//! standard forms
//!
//! ```text
//!   f_plus(z)  = prod_{a in s}     (1 - (a - alpha)/beta_plus  * z),   v(beta_plus)  = d+
//!   f_minus(z) = prod_{a not in s} (1 - beta_minus/(a - alpha) * z),   v(beta_minus) = d-
//! ```
//!
//! Both have constant term 1, integral coefficients, and at least one
//! coefficient of valuation zero; their roots sit outside the integral model,
//! so their depth functions are reconstructed from the coefficients.  Writing
//! t_plus / t_minus for the depth functions of the forms at the discs D(0, x),
//! x >= 0, the cluster's own depth function on I(s) is
//!
//! ```text
//!   b  |->  min(t_plus(d+ - b), t_minus(b - d-)).
//! ```
//!
//! Each side climbs monotonically to the ceiling 2; b0 denotes the first
//! argument where it gets there and lambda the (odd) slope just left of b0.
//! The threshold B = b0(t_plus) + b0(t_minus) lies in [0, 4] and compares
//! against the relative depth delta(s) = d+ - d-: two valid discs linked to s
//! when delta > B, one when delta = B, none otherwise, located at depths
//! d+ - b0(t_plus) and d- + b0(t_minus).
//!
//! Odd clusters never reach the ceiling on the interior of their interval, so
//! they carry no valid discs and the engine is not invoked for them.

use num_integer::Integer;

use crate::clusters::{ClusterId, ClusterTree};
use crate::error::Error;
use crate::field::{enlarge_ramification, Ctx, Elem};
use crate::plfun::PLFun;
use crate::poly::{Disc, ValPoly};
use crate::psd::{t_fun_of_poly, TFun};
use crate::rat::{fmt_q, qi, Ext, Q};
use crate::Result;

/// How many valid discs a cluster is linked to: two, one, or none.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Viability {
    Viable,
    SemiViable,
    NotViable,
}

impl Viability {
    /// Linked to at least one valid disc.
    pub fn at_least_semi(self) -> bool {
        matches!(self, Viability::Viable | Viability::SemiViable)
    }
}

/// A cluster is uebereven when it is viable and all of its children are, and
/// semi-uebereven under the same condition with "at least semi-viable".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Uebereven {
    Full,
    Semi,
    Not,
}

/// The engine-derived data of an even cluster.
#[derive(Clone, Debug)]
pub struct Sides {
    pub t_plus: TFun,
    pub t_minus: TFun,
    pub b0_plus: Q,
    pub b0_minus: Q,
    pub lambda_plus: Option<i64>,
    pub lambda_minus: Option<i64>,
    /// B = b0_plus + b0_minus.
    pub threshold: Q,
}

/// Everything the analysis knows about one cluster.
#[derive(Clone, Debug)]
pub struct ClusterAnalysis {
    pub cluster: ClusterId,
    /// Index of the center root in the input order.
    pub center: usize,
    /// None for odd clusters, which get the trivial analysis.
    pub sides: Option<Sides>,
    pub viability: Viability,
    /// [b-, b+] in absolute depth, when nonempty.
    pub j_interval: Option<(Q, Q)>,
    /// Deepest first; one entry when semi-viable, two when viable.
    pub valid_discs: Vec<Disc>,
    pub uebereven: Uebereven,
}

/// The two standard forms of an even cluster.
#[derive(Clone, Debug)]
pub struct StandardForms {
    pub plus: ValPoly,
    pub minus: ValPoly,
}

/// An element of exact valuation w >= 0, enlarging ramification as needed.
fn pi_scalar(ctx: &Ctx, w: Q) -> Result<(Ctx, Elem)> {
    let den = *w.denom();
    debug_assert!(den > 0 && w >= qi(0));
    let e_new = (ctx.e as i128).lcm(&den);
    let e_new =
        u32::try_from(e_new).map_err(|_| Error::RamificationOverflow { e: e_new as u64 })?;
    let big = enlarge_ramification(ctx, e_new)?;
    let p = Elem::pi_pow(&big, w)?;
    Ok((big, p))
}

pub fn standard_forms(tree: &ClusterTree, s: ClusterId) -> Result<StandardForms> {
    if !tree.is_even(s) {
        return Err(Error::invariant(
            "standard forms are defined for even clusters only",
        ));
    }
    let (d_minus, d_plus) = tree.interval(s)?;
    let (ctx1, _) = pi_scalar(tree.ctx(), d_plus)?;
    let (ctx, beta_minus) = pi_scalar(&ctx1, d_minus)?;
    let alpha = tree.center(s).embed(&ctx);
    let one = Elem::one(&ctx);
    let shift_plus = -(d_plus * qi(ctx.e as i128)).to_integer() as i64;

    let mut plus = ValPoly::constant(one.clone());
    let mut minus = ValPoly::constant(one.clone());
    let (mut unit_plus, mut unit_minus) = (false, false);
    for (i, r) in tree.roots().iter().enumerate() {
        if i == tree.center_root(s) {
            continue;
        }
        let diff = r.embed(&ctx).sub(&alpha);
        let c = if tree.members(s).contains(&i) {
            // dividing by the pi power beta_plus keeps exact coefficients exact
            let c = diff.mul_pi(shift_plus)?;
            unit_plus |= c.valuation()? == Ext::Fin(qi(0));
            plus = plus.mul(&ValPoly::new(&ctx, vec![one.clone(), c.neg()]));
            continue;
        } else {
            beta_minus.div(&diff)?
        };
        unit_minus |= c.valuation()? == Ext::Fin(qi(0));
        minus = minus.mul(&ValPoly::new(&ctx, vec![one.clone(), c.neg()]));
    }
    if !unit_plus || !unit_minus {
        return Err(Error::invariant(format!(
            "standard forms of cluster {s} lack a valuation-zero coefficient"
        )));
    }
    debug_assert_eq!(plus.degree(), tree.size(s) - 1);
    debug_assert_eq!(minus.degree(), 2 * tree.genus() + 1 - tree.size(s));
    Ok(StandardForms { plus, minus })
}

/// The side depth functions t_plus and t_minus on [0, oo).
pub fn t_side_functions(tree: &ClusterTree, s: ClusterId, cap: u32) -> Result<(TFun, TFun)> {
    let forms = standard_forms(tree, s)?;
    let z = Elem::zero(forms.plus.ctx());
    let plus = t_fun_of_poly(&forms.plus, &z, qi(0), None, cap)?;
    let minus = t_fun_of_poly(&forms.minus, &z, qi(0), None, cap)?;
    Ok((plus, minus))
}

/// First argument where a side function reaches the ceiling, and its slope
/// just left of there.  The slope is undefined when b0 sits at the left edge
/// of the domain; otherwise it is a positive odd integer.
pub fn b0_and_slope(t: &TFun) -> Result<(Q, Option<i64>)> {
    let b0 = t
        .fun
        .first_reach(qi(2))
        .ok_or_else(|| Error::NeverReachesCeiling {
            context: "side depth function stays below the ceiling".into(),
        })?;
    if b0 == t.fun.lo {
        return Ok((b0, None));
    }
    let lam = t.fun.left_slope(b0);
    if lam < 1 || lam % 2 == 0 {
        return Err(Error::invariant(format!(
            "slope {lam} left of b0 = {} is not a positive odd integer",
            fmt_q(b0)
        )));
    }
    Ok((b0, Some(lam)))
}

/// Analyze one cluster: trivial for odd ones, the full side-function analysis
/// for even ones.  The uebereven flags are filled in by `analyze_all`.
pub fn analyze_cluster(tree: &ClusterTree, s: ClusterId, cap: u32) -> Result<ClusterAnalysis> {
    let center = tree.center_root(s);
    let trivial = ClusterAnalysis {
        cluster: s,
        center,
        sides: None,
        viability: Viability::NotViable,
        j_interval: None,
        valid_discs: Vec::new(),
        uebereven: Uebereven::Not,
    };
    if !tree.is_even(s) {
        return Ok(trivial);
    }
    let (t_plus, t_minus) = t_side_functions(tree, s, cap)?;
    let (b0_plus, lambda_plus) = b0_and_slope(&t_plus)?;
    let (b0_minus, lambda_minus) = b0_and_slope(&t_minus)?;
    if let Some(l) = lambda_plus {
        if l as usize > tree.size(s) - 1 {
            return Err(Error::invariant(format!(
                "deep-side slope {l} exceeds the form degree"
            )));
        }
    }
    if let Some(l) = lambda_minus {
        if l as usize > 2 * tree.genus() + 1 - tree.size(s) {
            return Err(Error::invariant(format!(
                "shallow-side slope {l} exceeds the form degree"
            )));
        }
    }
    let threshold = b0_plus + b0_minus;
    if threshold < qi(0) || threshold > qi(4) {
        return Err(Error::invariant(format!(
            "threshold {} outside [0, 4]",
            fmt_q(threshold)
        )));
    }
    let sides = Sides {
        t_plus,
        t_minus,
        b0_plus,
        b0_minus,
        lambda_plus,
        lambda_minus,
        threshold,
    };
    let delta = tree.relative_depth(s)?;
    let (d_minus, d_plus) = tree.interval(s)?;
    let alpha = tree.center(s);
    let b_plus = d_plus - b0_plus;
    let b_minus = d_minus + b0_minus;
    let (viability, j_interval, valid_discs) = match delta.cmp(&threshold) {
        std::cmp::Ordering::Greater => (
            Viability::Viable,
            Some((b_minus, b_plus)),
            vec![
                Disc::new(alpha.clone(), b_plus),
                Disc::new(alpha.clone(), b_minus),
            ],
        ),
        std::cmp::Ordering::Equal => {
            debug_assert_eq!(b_plus, b_minus);
            (
                Viability::SemiViable,
                Some((b_minus, b_plus)),
                vec![Disc::new(alpha.clone(), b_plus)],
            )
        }
        std::cmp::Ordering::Less => (Viability::NotViable, None, Vec::new()),
    };
    Ok(ClusterAnalysis {
        cluster: s,
        center,
        sides: Some(sides),
        viability,
        j_interval,
        valid_discs,
        uebereven: Uebereven::Not,
    })
}

/// Analyze every cluster and fill in the uebereven flags.  When all children
/// of a cluster reach at least semi-viability, the shared boundary disc is
/// valid from every side; the asserts pin the forced endpoint coincidences
/// b+(s) = d+(s) and b-(child) = d-(child).
pub fn analyze_all(tree: &ClusterTree, cap: u32) -> Result<Vec<ClusterAnalysis>> {
    let mut out = Vec::new();
    for s in tree.ids() {
        out.push(analyze_cluster(tree, s, cap)?);
    }
    for id in 0..out.len() {
        let kids = tree.children(id);
        if kids.is_empty() {
            continue;
        }
        let all_viable = kids.iter().all(|&c| out[c].viability == Viability::Viable);
        let all_semi = kids.iter().all(|&c| out[c].viability.at_least_semi());
        if out[id].viability == Viability::Viable && all_viable {
            out[id].uebereven = Uebereven::Full;
        } else if out[id].viability.at_least_semi() && all_semi {
            out[id].uebereven = Uebereven::Semi;
        }
        if all_semi {
            if !out[id].viability.at_least_semi() {
                return Err(Error::invariant(
                    "a cluster with semi-viable children must itself be semi-viable",
                ));
            }
            let b0p = out[id].sides.as_ref().map(|sd| sd.b0_plus);
            if b0p != Some(qi(0)) {
                return Err(Error::invariant(
                    "semi-viable children force the deep side to start at the ceiling",
                ));
            }
            for &c in kids {
                let b0m = out[c].sides.as_ref().map(|sd| sd.b0_minus);
                if b0m != Some(qi(0)) {
                    return Err(Error::invariant(
                        "a child of a semi-uebereven cluster must touch its shallow boundary",
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// A valid disc together with the cluster it cuts.
#[derive(Clone, Debug)]
pub struct ValidDisc {
    pub disc: Disc,
    pub host: ClusterId,
}

/// Deduplicate the per-cluster valid discs.  At a disc linked to three or
/// more clusters the deep disc of the parent coincides with the shallow disc
/// of every child; they all cut the parent, so (cut, depth) is a stable key.
/// Deepest first, ties by the host's first member.
pub fn collect_valid_discs(
    tree: &ClusterTree,
    analyses: &[ClusterAnalysis],
) -> Result<Vec<ValidDisc>> {
    let mut seen: Vec<(ClusterId, Q)> = Vec::new();
    let mut out = Vec::new();
    for a in analyses {
        for d in &a.valid_discs {
            let host = tree
                .cluster_of_disc(d)?
                .ok_or_else(|| Error::invariant("a valid disc cuts no cluster"))?;
            if seen.contains(&(host, d.depth)) {
                continue;
            }
            seen.push((host, d.depth));
            out.push(ValidDisc {
                disc: d.clone(),
                host,
            });
        }
    }
    out.sort_by(|x, y| {
        y.disc
            .depth
            .cmp(&x.disc.depth)
            .then_with(|| tree.members(x.host)[0].cmp(&tree.members(y.host)[0]))
    });
    Ok(out)
}

/// The depth function of the full polynomial on I(s), assembled from the two
/// side functions.  For odd clusters this is the zero function; in both cases
/// the value at d-(s) belongs to the parent's interval and may differ there
/// (the function is concave on each interval, not across intervals).  The top
/// cluster has no two-sided interval and is rejected.
pub fn t_r_on_interval(tree: &ClusterTree, a: &ClusterAnalysis) -> Result<TFun> {
    let s = a.cluster;
    let provenance = tree.roots().to_vec();
    let Some(sides) = &a.sides else {
        let d_minus = tree.depth_minus(s)?;
        let hi = tree.depth(s).fin();
        return Ok(TFun {
            fun: PLFun::constant(qi(0), d_minus, hi),
            provenance,
        });
    };
    let (d_minus, d_plus) = tree.interval(s)?;
    let delta = d_plus - d_minus;
    let plus = PLFun::envelope(sides.t_plus.fun.lines().to_vec(), qi(0), Some(delta));
    let minus = PLFun::envelope(sides.t_minus.fun.lines().to_vec(), qi(0), Some(delta));
    let fun = plus.reflect(d_plus).min_with(&minus.shift(d_minus));
    Ok(TFun { fun, provenance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{hensel_lift_root, make_field, make_field_with};
    use crate::plfun::Line;
    use crate::psd::{t_value, DEFAULT_CAP};
    use crate::rat::q;

    fn tree_of(roots: Vec<Elem>, lead: Elem) -> ClusterTree {
        ClusterTree::new(roots, lead).unwrap()
    }

    fn negligible(e: &Elem) -> bool {
        match e.valuation() {
            Ok(Ext::PosInf) => true,
            Ok(Ext::Fin(v)) => v >= qi(8),
            Err(_) => true, // all visible digits vanish
            _ => false,
        }
    }

    /// x(x - lambda)(x^3 + x^2 - 4x + 1) over the unramified cubic extension.
    fn quintic_roots(v_lambda: u32) -> (Vec<Elem>, Elem) {
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

    fn pair_cluster(tree: &ClusterTree) -> ClusterId {
        let evens = tree.even_clusters();
        assert_eq!(evens.len(), 1);
        evens[0]
    }

    #[test]
    fn quintic_standard_forms_are_the_unit_factor_and_the_cubic() {
        let (roots, lead) = quintic_roots(5);
        let tree = tree_of(roots, lead);
        let s = pair_cluster(&tree);
        let forms = standard_forms(&tree, s).unwrap();
        // f_plus = 1 - z after scaling the pair by beta_plus = lambda
        assert_eq!(forms.plus.degree(), 1);
        let one = Elem::one(forms.plus.ctx());
        assert!(negligible(&forms.plus.coeff(1).add(&one)));
        // f_minus reproduces the cubic factor exactly
        let expect = ValPoly::from_int_coeffs(forms.minus.ctx(), &[1, -4, 1, 1]);
        assert_eq!(forms.minus.degree(), 3);
        for i in 0..=3 {
            assert!(
                negligible(&forms.minus.coeff(i).sub(expect.coeff(i))),
                "coefficient {i} differs"
            );
        }
    }

    #[test]
    fn quintic_side_functions_and_threshold() {
        let (roots, lead) = quintic_roots(5);
        let tree = tree_of(roots, lead);
        let s = pair_cluster(&tree);
        let (tp, tm) = t_side_functions(&tree, s, DEFAULT_CAP).unwrap();
        let expect_plus =
            PLFun::envelope(vec![Line::new(1, qi(0)), Line::new(0, qi(2))], qi(0), None);
        let expect_minus = PLFun::envelope(
            vec![
                Line::new(3, qi(0)),
                Line::new(1, qi(1)),
                Line::new(0, qi(2)),
            ],
            qi(0),
            None,
        );
        assert_eq!(tp.fun, expect_plus);
        assert_eq!(tm.fun, expect_minus);
        assert_eq!(b0_and_slope(&tp).unwrap(), (qi(2), Some(1)));
        assert_eq!(b0_and_slope(&tm).unwrap(), (qi(1), Some(1)));
    }

    #[test]
    fn quintic_disc_counts_follow_the_threshold() {
        for (vl, expect) in [(2, 0usize), (3, 1), (5, 2)] {
            let (roots, lead) = quintic_roots(vl);
            let tree = tree_of(roots, lead);
            let s = pair_cluster(&tree);
            let a = analyze_cluster(&tree, s, DEFAULT_CAP).unwrap();
            let sides = a.sides.as_ref().unwrap();
            assert_eq!(sides.threshold, qi(3));
            assert_eq!(a.valid_discs.len(), expect, "at v(lambda) = {vl}");
            match vl {
                2 => {
                    assert_eq!(a.viability, Viability::NotViable);
                    assert_eq!(a.j_interval, None);
                }
                3 => {
                    assert_eq!(a.viability, Viability::SemiViable);
                    assert_eq!(a.j_interval, Some((qi(1), qi(1))));
                    assert!(a.valid_discs[0].same_disc(&Disc::new(Elem::zero(tree.ctx()), qi(1))));
                }
                _ => {
                    assert_eq!(a.viability, Viability::Viable);
                    assert_eq!(a.j_interval, Some((qi(1), qi(3))));
                    let z = Elem::zero(tree.ctx());
                    assert!(a.valid_discs[0].same_disc(&Disc::new(z.clone(), qi(3))));
                    assert!(a.valid_discs[1].same_disc(&Disc::new(z, qi(1))));
                }
            }
        }
    }

    #[test]
    fn quintic_interval_function_matches_direct_depth_values() {
        let (roots, lead) = quintic_roots(5);
        let tree = tree_of(roots, lead);
        let s = pair_cluster(&tree);
        let a = analyze_cluster(&tree, s, DEFAULT_CAP).unwrap();
        let tf = t_r_on_interval(&tree, &a).unwrap();
        let expect = PLFun::envelope(
            vec![
                Line::new(3, qi(0)),
                Line::new(1, qi(1)),
                Line::new(0, qi(2)),
                Line::new(-1, qi(5)),
            ],
            qi(0),
            Some(qi(5)),
        );
        assert_eq!(tf.fun, expect);
        for b in [qi(0), q(1, 2), q(13, 8), qi(3), q(7, 2), qi(5)] {
            let d = Disc::new(Elem::zero(tree.ctx()), b);
            let direct = t_value(tree.roots(), tree.lead(), &d, DEFAULT_CAP).unwrap();
            assert_eq!(direct, tf.fun.eval(b), "at depth {}", fmt_q(b));
        }
    }

    /// x(x - lambda)(x^3 - 1) with v(lambda) = 6: the shallow side climbs with
    /// slope 3 to a fractional b0, which only a certified limit can deliver.
    #[test]
    fn cube_root_family_reaches_fractional_threshold() {
        let ctx = make_field(2, 1, qi(24)).unwrap();
        let cube: Vec<Elem> = [-1, 0, 0, 1]
            .iter()
            .map(|&n| Elem::from_i128(&ctx, n))
            .collect();
        let mut roots = vec![Elem::zero(&ctx), Elem::from_i128(&ctx, 64), Elem::one(&ctx)];
        for r0 in [0b10u32, 0b11] {
            roots.push(hensel_lift_root(&ctx, &cube, r0).unwrap());
        }
        let lead = Elem::one(&ctx);
        let tree = tree_of(roots, lead);
        let s = pair_cluster(&tree);
        let a = analyze_cluster(&tree, s, DEFAULT_CAP).unwrap();
        let sides = a.sides.as_ref().unwrap();
        let expect_minus =
            PLFun::envelope(vec![Line::new(3, qi(0)), Line::new(0, qi(2))], qi(0), None);
        assert_eq!(sides.t_minus.fun, expect_minus);
        assert_eq!(sides.b0_minus, q(2, 3));
        assert_eq!(sides.threshold, q(8, 3));
        assert_eq!(a.viability, Viability::Viable);
        let z = Elem::zero(tree.ctx());
        assert!(a.valid_discs[0].same_disc(&Disc::new(z.clone(), qi(4))));
        assert!(a.valid_discs[1].same_disc(&Disc::new(z, q(2, 3))));
    }

    /// The analysis does not depend on which member anchors the cluster.
    #[test]
    fn recentered_analysis_finds_the_same_discs() {
        let (mut roots, lead) = quintic_roots(5);
        roots.swap(0, 1); // center becomes lambda instead of 0
        let tree = tree_of(roots, lead);
        let s = pair_cluster(&tree);
        let a = analyze_cluster(&tree, s, DEFAULT_CAP).unwrap();
        let sides = a.sides.as_ref().unwrap();
        assert_eq!(sides.threshold, qi(3));
        assert_eq!(a.j_interval, Some((qi(1), qi(3))));
        let z = Elem::zero(tree.ctx());
        assert!(a.valid_discs[0].same_disc(&Disc::new(z.clone(), qi(3))));
        assert!(a.valid_discs[1].same_disc(&Disc::new(z, qi(1))));
    }

    #[test]
    fn odd_clusters_get_the_trivial_analysis() {
        let (roots, lead) = quintic_roots(5);
        let tree = tree_of(roots, lead);
        for s in tree.ids() {
            if tree.is_even(s) {
                continue;
            }
            let a = analyze_cluster(&tree, s, DEFAULT_CAP).unwrap();
            assert!(a.sides.is_none());
            assert_eq!(a.viability, Viability::NotViable);
            assert!(a.valid_discs.is_empty());
        }
    }

    /// Two deep pairs inside an even four-element cluster make it uebereven;
    /// the shared boundary disc deduplicates across the three analyses.
    #[test]
    fn uebereven_hub_and_disc_deduplication() {
        let ctx = make_field(1, 1, qi(30)).unwrap();
        let mk = |n: i128| Elem::from_i128(&ctx, n);
        let roots = vec![
            mk(0),
            mk(1 << 9),
            mk(1 << 4),
            mk((1 << 4) + (1 << 9)),
            mk(1),
        ];
        let lead = Elem::one(&ctx);
        let tree = tree_of(roots, lead);
        let analyses = analyze_all(&tree, DEFAULT_CAP).unwrap();
        let hub = tree
            .ids()
            .find(|&s| tree.size(s) == 4)
            .expect("four-element cluster");
        assert_eq!(analyses[hub].uebereven, Uebereven::Full);
        assert_eq!(analyses[hub].viability, Viability::Viable);
        let sides = analyses[hub].sides.as_ref().unwrap();
        assert_eq!(sides.b0_plus, qi(0));
        assert_eq!(sides.lambda_plus, None);
        assert_eq!(sides.b0_minus, qi(2));
        for &c in tree.children(hub) {
            assert_eq!(analyses[c].viability, Viability::Viable);
            assert_eq!(analyses[c].uebereven, Uebereven::Not);
        }
        let discs = collect_valid_discs(&tree, &analyses).unwrap();
        let depths: Vec<Q> = discs.iter().map(|d| d.disc.depth).collect();
        assert_eq!(depths, vec![qi(7), qi(7), qi(4), qi(2)]);
        assert_eq!(discs[2].host, hub);
        assert_eq!(discs[3].host, hub);
    }
}
