//! Exact arithmetic in L = Q2^{nr}(pi), pi^e = 2: valuations, inversion,
//! and Hensel lifting of simple residue roots.

use rstfiber::field::{hensel_lift_root, make_field, make_field_with, Elem};
use rstfiber::rat::{q, qi};
use rstfiber::Result;

fn main() -> Result<()> {
    // residue degree 3, ramification 2, coefficients carried to 2^24
    let ctx = make_field(3, 2, qi(24))?;
    println!(
        "field: m = {}, e = {}, residue poly bits = {:#b}",
        ctx.m,
        ctx.e,
        ctx.res.poly()
    );

    let x = Elem::from_i128(&ctx, 6);
    let pi = Elem::pi(&ctx);
    println!("v(6)       = {}", x.valuation()?);
    println!("v(pi)      = {}", pi.valuation()?);
    println!("v(6*pi)    = {}", x.mul(&pi).valuation()?);

    // fractional powers of 2 live in a ramified extension
    let lam = Elem::pi_pow(&ctx, q(3, 2))?;
    println!("v(2^(3/2)) = {}", lam.valuation()?);

    // division happens inside the integral subring: v(a/b) = v(a) - v(b) >= 0
    let seven = Elem::from_i128(&ctx, 7);
    let ratio = seven.div(&seven)?;
    let off = ratio.sub(&Elem::one(&ctx)).valuation();
    println!("v(7/7 - 1) = {off:?} (indistinguishable from zero at this precision)");

    // lift a root of x^3 + x^2 - 4x + 1 from its residue
    let ctx = make_field_with(3, 1, qi(24), 0b1101)?;
    let coeffs: Vec<Elem> = [1, -4, 1, 1]
        .iter()
        .map(|&c| Elem::from_i128(&ctx, c))
        .collect();
    let r = hensel_lift_root(&ctx, &coeffs, 0b010)?;
    let mut val = Elem::zero(&ctx);
    for c in coeffs.iter().rev() {
        val = val.mul(&r).add(c);
    }
    match val.valuation() {
        Ok(v) => println!("f(lifted root) valuation: {v}"),
        Err(e) => println!("f(lifted root) is zero to working precision ({e})"),
    }
    Ok(())
}
