//! Locate the valid discs linked to each even cluster: side functions,
//! the threshold B, the interval J, and the viability trichotomy.

use rstfiber::clusters::ClusterTree;
use rstfiber::discs::{analyze_all, standard_forms, Viability};
use rstfiber::field::{hensel_lift_root, make_field_with, Elem};
use rstfiber::psd::DEFAULT_CAP;
use rstfiber::rat::{fmt_q, qi};
use rstfiber::Result;

fn main() -> Result<()> {
    // y^2 = x (x - lambda) (x^3 + x^2 - 4x + 1) with v(lambda) = 5;
    // the cubic factor needs the residue field F_8
    let ctx = make_field_with(3, 1, qi(24), 0b1101)?;
    let cubic: Vec<Elem> = [1, -4, 1, 1]
        .iter()
        .map(|&c| Elem::from_i128(&ctx, c))
        .collect();
    let mut roots = vec![Elem::zero(&ctx), Elem::from_i128(&ctx, 32)];
    for r0 in [0b010, 0b100, 0b111] {
        roots.push(hensel_lift_root(&ctx, &cubic, r0)?);
    }
    let tree = ClusterTree::new(roots, Elem::one(&ctx))?;
    println!("picture {}", tree.picture());

    let analyses = analyze_all(&tree, DEFAULT_CAP)?;
    for a in &analyses {
        let Some(sides) = &a.sides else { continue };

        // the two standard forms split f at the cluster: roots inside,
        // scaled to the unit disc, against roots outside, inverted
        let forms = standard_forms(&tree, a.cluster)?;
        println!(
            "cluster {:?}: inner form degree {}, outer form degree {}",
            tree.members(a.cluster),
            forms.plus.degree(),
            forms.minus.degree()
        );
        println!(
            "  b+ = {}, b- = {}, B = {}",
            fmt_q(sides.b0_plus),
            fmt_q(sides.b0_minus),
            fmt_q(sides.threshold)
        );
        let verdict = match a.viability {
            Viability::Viable => "viable: two valid discs",
            Viability::SemiViable => "semi-viable: one valid disc",
            Viability::NotViable => "not viable: no valid disc",
        };
        println!(
            "  relative depth {} vs B: {}",
            fmt_q(tree.relative_depth(a.cluster)?),
            verdict
        );
        if let Some((lo, hi)) = a.j_interval {
            println!("  J = ({}, {})", fmt_q(lo), fmt_q(hi));
        }
        for d in &a.valid_discs {
            println!("  valid disc D({}, {})", a.center, fmt_q(d.depth));
        }
    }
    Ok(())
}
