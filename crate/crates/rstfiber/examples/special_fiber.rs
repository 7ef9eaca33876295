//! Full pipeline on a family with fractional valuations: components of the
//! special fiber, their genera and ramification, node thicknesses, and the
//! toric / 2-adic / abelian rank split.

use rstfiber::clusters::ClusterTree;
use rstfiber::discs::analyze_all;
use rstfiber::fiber::{assemble, ComponentKind, MarkedPoint};
use rstfiber::field::{hensel_lift_root, make_field, Elem};
use rstfiber::psd::DEFAULT_CAP;
use rstfiber::rat::{fmt_q, q, qi};
use rstfiber::Result;

fn main() -> Result<()> {
    // y^2 = x (x - lambda) (x^3 - 1) with v(lambda) = 10/3: the value group
    // needs denominator 3, so work in a ramified extension with e = 3
    let ctx = make_field(2, 3, qi(24))?;
    let cube: Vec<Elem> = [-1, 0, 0, 1]
        .iter()
        .map(|&c| Elem::from_i128(&ctx, c))
        .collect();
    let mut roots = vec![
        Elem::zero(&ctx),
        Elem::pi_pow(&ctx, q(10, 3))?,
        Elem::one(&ctx),
    ];
    for r0 in [0b10, 0b11] {
        roots.push(hensel_lift_root(&ctx, &cube, r0)?);
    }
    let tree = ClusterTree::new(roots, Elem::one(&ctx))?;

    let analyses = analyze_all(&tree, DEFAULT_CAP)?;
    let fiber = assemble(&tree, &analyses, None)?;

    println!("genus {}  picture {}", fiber.genus, tree.picture());
    for c in &fiber.components {
        let kind = match c.kind {
            ComponentKind::Irreducible { genus } => format!("irreducible, genus {genus}"),
            ComponentKind::TwoLines => "two lines crossing".to_string(),
        };
        println!(
            "component over D({}, {}): {}",
            tree.center_root(c.host),
            fmt_q(c.disc.depth),
            kind
        );
        for b in &c.ramification {
            let at = match b.point {
                MarkedPoint::Clump(id) => format!("clump {:?}", tree.members(id)),
                MarkedPoint::Infinity => "infinity".to_string(),
            };
            println!("  {} branch point(s) over {at}", b.ell);
        }
    }
    for n in &fiber.nodes {
        println!(
            "components {} and {} meet at two nodes, thickness {} = {} / v(pi)",
            n.deep,
            n.shallow,
            fmt_q(n.thickness),
            fmt_q(n.gap)
        );
    }
    println!(
        "toric rank {}  2-rank {}  abelian rank {}  v(pi) = {}",
        fiber.toric_rank,
        fiber.two_rank,
        fiber.abelian_rank,
        fmt_q(fiber.uniformizer_valuation)
    );
    println!(
        "model {}",
        if fiber.complete {
            "is complete: ranks and genera account for everything"
        } else {
            "leaves part of the fiber unlocated"
        }
    );
    Ok(())
}
