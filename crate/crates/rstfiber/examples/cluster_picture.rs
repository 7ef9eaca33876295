//! Build the cluster tree of a root set and walk its structure: depths,
//! children, centers, and the disc that cuts out each cluster.

use rstfiber::clusters::ClusterTree;
use rstfiber::field::{make_field, Elem};
use rstfiber::rat::{fmt_q, qi};
use rstfiber::Result;

fn main() -> Result<()> {
    let ctx = make_field(1, 1, qi(40))?;
    // two deep pairs inside a depth-4 clump, plus a unit root
    let roots: Vec<Elem> = [0, 512, 16, 528, 1]
        .iter()
        .map(|&r| Elem::from_i128(&ctx, r))
        .collect();
    let tree = ClusterTree::new(roots, Elem::one(&ctx))?;

    println!("genus {}, picture {}", tree.genus(), tree.picture());
    for id in tree.ids() {
        if !tree.is_proper(id) {
            continue;
        }
        let kids: Vec<String> = tree
            .children(id)
            .iter()
            .map(|&c| format!("{:?}", tree.members(c)))
            .collect();
        println!(
            "cluster {id}: members {:?} depth {} {} children [{}]",
            tree.members(id),
            tree.depth(id),
            if tree.is_even(id) { "even" } else { "odd " },
            kids.join(", ")
        );
    }

    // a disc sitting strictly inside a cluster's depth range cuts that
    // cluster out of the root set
    let hub = tree
        .ids()
        .find(|&id| tree.size(id) == 4)
        .expect("the four deep roots form a cluster");
    let (lo, hi) = tree.interval(hub)?;
    println!(
        "cluster {hub} is cut out by discs of depth in ({}, {}]",
        fmt_q(lo),
        fmt_q(hi)
    );
    Ok(())
}
