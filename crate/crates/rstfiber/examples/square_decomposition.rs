//! Part-square decompositions h = q^2 + rho on a disc, the depth value
//! t = min(2, v(rho) - v(h)), and its reconstruction as a piecewise linear
//! function of the disc depth.

use rstfiber::field::{make_field, Elem};
use rstfiber::poly::{Disc, ValPoly};
use rstfiber::psd::{good_decomposition_at, t_fun_reconstruct, t_value, DEFAULT_CAP};
use rstfiber::rat::{fmt_q, q, qi};
use rstfiber::Result;

fn main() -> Result<()> {
    let ctx = make_field(1, 2, qi(30))?;
    // h = x (x - 2) (x - 8): a chain of clusters along the 2-adic line
    let roots: Vec<Elem> = [0, 2, 8]
        .iter()
        .map(|&r| Elem::from_i128(&ctx, r))
        .collect();
    let lead = Elem::one(&ctx);
    let h = ValPoly::from_roots(&roots, &lead);

    for depth in [qi(0), q(1, 2), qi(1), qi(2), qi(3)] {
        let d = Disc::new(Elem::zero(&ctx), depth);
        let psd = good_decomposition_at(&h, &d, DEFAULT_CAP)?;
        println!(
            "depth {:>3}: t = {} after {} improvement steps ({:?})",
            fmt_q(depth),
            fmt_q(psd.t_clamped()),
            psd.iterations,
            psd.good.expect("decomposition is good")
        );
    }

    // the same values reconstructed as one function of the depth, pinning
    // chords through probe evaluations; t is concave between consecutive
    // cluster depths of the center path, here on [1, 3] (the depth interval
    // of the cluster {0, 8}), so reconstruct there
    let tf = t_fun_reconstruct(
        &roots,
        &lead,
        &Elem::zero(&ctx),
        qi(1),
        Some(qi(3)),
        DEFAULT_CAP,
    )?;
    println!("t as a function of depth b on [1, 3]:");
    for (lo, hi, line) in tf.fun.pieces() {
        let hi = hi.map(fmt_q).unwrap_or_else(|| "inf".into());
        println!(
            "  b in [{}, {}): {}*b + {}",
            fmt_q(lo),
            hi,
            line.slope,
            fmt_q(line.icept)
        );
    }
    let probe = q(5, 2);
    let direct = t_value(
        &roots,
        &lead,
        &Disc::new(Elem::zero(&ctx), probe),
        DEFAULT_CAP,
    )?;
    assert_eq!(tf.fun.eval(probe), direct);
    println!("cross-check at b = 5/2: {}", fmt_q(direct));

    // asking for the whole of [0, 4] crosses the convex corner at depth 1,
    // which the verification pass refuses rather than mis-fitting
    let err = t_fun_reconstruct(
        &roots,
        &lead,
        &Elem::zero(&ctx),
        qi(0),
        Some(qi(4)),
        DEFAULT_CAP,
    );
    println!(
        "reconstruction across the corner: {}",
        err.expect_err("rejected")
    );
    Ok(())
}
