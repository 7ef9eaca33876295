//! Exact arithmetic in towers L = (unramified extension of Q_2 of degree m)
//! adjoined pi with pi^e = 2, normalized so that v(2) = 1 and v(pi) = 1/e.
//!
//! An element is stored in the pi-adic basis sum_{i<e} a_i pi^i with each a_i
//! an unramified-ring vector modulo 2^K.  The key fact making valuations exact
//! is that the terms a_i pi^i live in distinct valuation classes mod 1/e, so
//! v(sum) = min_i (v(a_i) + i/e) with no cancellation across i.  Only the
//! integral subring is represented; everything the pipeline touches is
//! integral once the input roots are.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::rat::{fmt_q, q, qi, Ext, Q};
use crate::residue::{RElem, ResidueField};
use crate::Result;

/// Hard bound on ramification; enlargements double e and must stay sane.
pub const MAX_E: u64 = 1 << 16;

/// Shared immutable description of a tower.
#[derive(Debug)]
pub struct FieldCtx {
    pub m: u32,
    pub e: u32,
    /// Working precision: valuations are meaningful strictly below this.
    pub precision: Q,
    /// Unramified coordinates are stored mod 2^kbits (kbits = ceil(N) + 8).
    kbits: u64,
    mask: BigUint,
    pub res: ResidueField,
}

pub type Ctx = Arc<FieldCtx>;

/// Tower with the default residue presentation for its degree.
pub fn make_field(m: u32, e: u32, precision: Q) -> Result<Ctx> {
    make_field_with(m, e, precision, ResidueField::default_poly(m))
}

/// Tower with an explicit residue presentation polynomial.
pub fn make_field_with(m: u32, e: u32, precision: Q, poly: u32) -> Result<Ctx> {
    if e == 0 || e as u64 > MAX_E {
        return Err(Error::RamificationOverflow { e: e as u64 });
    }
    if precision < qi(1) || precision > qi(1 << 20) {
        return Err(Error::SchemaError(format!(
            "working precision {} outside the sane range [1, 2^20]",
            fmt_q(precision)
        )));
    }
    let res = ResidueField::new(m, poly)?;
    let kbits = (precision.ceil().to_integer() as u64) + 8;
    let mask = (BigUint::one() << kbits) - BigUint::one();
    Ok(Arc::new(FieldCtx {
        m,
        e,
        precision,
        kbits,
        mask,
        res,
    }))
}

/// Same tower with ramification refined to e_new (e must divide e_new).
pub fn enlarge_ramification(ctx: &Ctx, e_new: u32) -> Result<Ctx> {
    if e_new as u64 > MAX_E || e_new == 0 {
        return Err(Error::RamificationOverflow { e: e_new as u64 });
    }
    if !e_new.is_multiple_of(ctx.e) {
        return Err(Error::invariant(format!(
            "enlarge_ramification: {} does not divide {}",
            ctx.e, e_new
        )));
    }
    if e_new == ctx.e {
        return Ok(ctx.clone());
    }
    make_field_with(ctx.m, e_new, ctx.precision, ctx.res.poly())
}

fn same_tower(a: &FieldCtx, b: &FieldCtx) -> bool {
    a.m == b.m && a.res.poly() == b.res.poly() && a.precision == b.precision
}

/// Context in which both arguments embed: same tower, lcm of ramifications.
pub fn join_ctx(a: &Ctx, b: &Ctx) -> Result<Ctx> {
    if !same_tower(a, b) {
        return Err(Error::invariant("join_ctx: incompatible towers"));
    }
    if a.e == b.e {
        return Ok(a.clone());
    }
    let e = (a.e as u64).lcm(&(b.e as u64));
    if e > MAX_E {
        return Err(Error::RamificationOverflow { e });
    }
    enlarge_ramification(if a.e > b.e { a } else { b }, e as u32)
}

// ---- unramified-ring vectors -------------------------------------------------

/// Coordinates of an unramified-ring element in the power basis of the
/// residue presentation, each held mod 2^kbits.
type Unram = Vec<BigUint>;

impl FieldCtx {
    fn un_zero(&self) -> Unram {
        vec![BigUint::zero(); self.m as usize]
    }

    fn un_is_zero(&self, a: &Unram) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    fn wrap_int(&self, x: &BigInt) -> BigUint {
        let modulus = BigInt::from(self.mask.clone()) + 1;
        x.mod_floor(&modulus).to_biguint().unwrap()
    }

    fn un_from_ints(&self, xs: &[i128]) -> Unram {
        let mut out = self.un_zero();
        for (i, &x) in xs.iter().enumerate().take(self.m as usize) {
            out[i] = self.wrap_int(&BigInt::from(x));
        }
        out
    }

    fn un_from_bits(&self, r: RElem) -> Unram {
        let mut out = self.un_zero();
        for (i, c) in out.iter_mut().enumerate() {
            if r >> i & 1 == 1 {
                *c = BigUint::one();
            }
        }
        out
    }

    fn un_add(&self, a: &Unram, b: &Unram) -> Unram {
        a.iter().zip(b).map(|(x, y)| (x + y) & &self.mask).collect()
    }

    fn un_sub(&self, a: &Unram, b: &Unram) -> Unram {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + (&self.mask - y) + 1u32) & &self.mask)
            .collect()
    }

    fn un_double(&self, a: &Unram, times: u64) -> Unram {
        a.iter().map(|x| (x << times) & &self.mask).collect()
    }

    /// Schoolbook product followed by reduction of x^m via the presentation
    /// polynomial lifted with 0/1 coefficients: x^m = -(lower part of P).
    fn un_mul(&self, a: &Unram, b: &Unram) -> Unram {
        let m = self.m as usize;
        let mut wide = vec![BigUint::zero(); 2 * m - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                wide[i + j] = (&wide[i + j] + x * y) & &self.mask;
            }
        }
        let plow = self.res.poly() & !(1u32 << self.m);
        for i in (m..2 * m - 1).rev() {
            if wide[i].is_zero() {
                continue;
            }
            let t = std::mem::take(&mut wide[i]);
            let neg = (&self.mask - &t + 1u32) & &self.mask;
            for j in 0..m {
                if plow >> j & 1 == 1 {
                    wide[i - m + j] = (&wide[i - m + j] + &neg) & &self.mask;
                }
            }
        }
        wide.truncate(m);
        wide
    }

    /// 2-adic valuation of the vector, None when zero mod 2^kbits.
    fn un_v2(&self, a: &Unram) -> Option<u64> {
        a.iter().filter_map(|c| c.trailing_zeros()).min()
    }

    fn un_residue(&self, a: &Unram) -> RElem {
        let mut r = 0;
        for (i, c) in a.iter().enumerate() {
            if c.is_odd() {
                r |= 1 << i;
            }
        }
        r
    }

    fn un_div_pow2(&self, a: &Unram, k: u64) -> Option<Unram> {
        let mut out = self.un_zero();
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.trailing_zeros().unwrap_or(0) < k {
                return None;
            }
            out[i] = c >> k;
        }
        Some(out)
    }
}

// ---- elements ----------------------------------------------------------------

/// An integral element of the tower.
#[derive(Clone, Debug)]
pub struct Elem {
    pub ctx: Ctx,
    /// a[i] is the coefficient of pi^i, an unramified vector.
    a: Vec<Unram>,
    /// Valuations are trusted strictly below this bound (unless exact).
    prec: Q,
    /// No rounding has occurred; an all-zero exact element is exactly zero.
    exact: bool,
}

impl Elem {
    pub fn zero(ctx: &Ctx) -> Elem {
        Elem {
            ctx: ctx.clone(),
            a: vec![ctx.un_zero(); ctx.e as usize],
            prec: ctx.precision,
            exact: true,
        }
    }

    pub fn one(ctx: &Ctx) -> Elem {
        Elem::from_i128(ctx, 1)
    }

    pub fn from_i128(ctx: &Ctx, x: i128) -> Elem {
        let mut z = Elem::zero(ctx);
        z.a[0] = ctx.un_from_ints(&[x]);
        z.exact = x
            .unsigned_abs()
            .checked_ilog2()
            .is_none_or(|b| (b as u64) < ctx.kbits);
        z
    }

    /// Element from integer literals: coords[i][j] is the j-th unramified
    /// coordinate of the pi^i coefficient.
    pub fn from_ints(ctx: &Ctx, coords: &[Vec<i128>]) -> Result<Elem> {
        if coords.len() > ctx.e as usize {
            return Err(Error::SchemaError(format!(
                "element has {} pi-coordinates but e = {}",
                coords.len(),
                ctx.e
            )));
        }
        let mut z = Elem::zero(ctx);
        for (i, row) in coords.iter().enumerate() {
            if row.len() > ctx.m as usize {
                return Err(Error::SchemaError(format!(
                    "element has {} unramified coordinates but m = {}",
                    row.len(),
                    ctx.m
                )));
            }
            z.a[i] = ctx.un_from_ints(row);
            if row.iter().any(|&x| {
                x.unsigned_abs()
                    .checked_ilog2()
                    .is_some_and(|b| b as u64 >= ctx.kbits)
            }) {
                z.exact = false;
            }
        }
        Ok(z)
    }

    /// The uniformizer pi, v = 1/e.
    pub fn pi(ctx: &Ctx) -> Elem {
        Elem::one(ctx).mul_pi(1).expect("pi is integral")
    }

    /// pi^(e*w); errors when w is not in the value group (1/e)Z or negative.
    pub fn pi_pow(ctx: &Ctx, w: Q) -> Result<Elem> {
        let scaled = w * qi(ctx.e as i128);
        if !scaled.denom().is_one() {
            return Err(Error::ValueGroupGap {
                needed: fmt_q(w),
                e: ctx.e,
            });
        }
        if scaled.is_negative() {
            return Err(Error::invariant(format!(
                "pi_pow of negative exponent {}",
                fmt_q(w)
            )));
        }
        Elem::one(ctx).mul_pi(scaled.to_integer() as i64)
    }

    /// Naive 0/1-coefficient lift of a residue element.
    pub fn lift(ctx: &Ctx, r: RElem) -> Elem {
        let mut z = Elem::zero(ctx);
        z.a[0] = ctx.un_from_bits(r);
        z
    }

    pub fn prec(&self) -> Q {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    fn stored_zero(&self) -> bool {
        self.a.iter().all(|c| self.ctx.un_is_zero(c))
    }

    /// Exact valuation: min over i of v2(a_i) + i/e, which has no
    /// cross-coordinate cancellation.  PosInf only for an exact zero.
    pub fn valuation(&self) -> Result<Ext> {
        let e = self.ctx.e as i128;
        let mut best: Option<Q> = None;
        for (i, c) in self.a.iter().enumerate() {
            if let Some(v2) = self.ctx.un_v2(c) {
                let v = qi(v2 as i128) + q(i as i128, e);
                if best.is_none_or(|b| v < b) {
                    best = Some(v);
                }
            }
        }
        match best {
            Some(v) if self.exact || v < self.prec => Ok(Ext::Fin(v)),
            Some(v) => Err(Error::PrecisionExhausted {
                context: format!(
                    "valuation {} not below precision bound {}",
                    fmt_q(v),
                    fmt_q(self.prec)
                ),
            }),
            None if self.exact => Ok(Ext::PosInf),
            None => Err(Error::PrecisionExhausted {
                context: format!("inexact zero at precision {}", fmt_q(self.prec)),
            }),
        }
    }

    /// Valuation when the element is known nonzero by construction.
    pub fn val(&self) -> Result<Q> {
        match self.valuation()? {
            Ext::Fin(v) => Ok(v),
            _ => Err(Error::invariant("val() of an exact zero")),
        }
    }

    fn joined(&self, other: &Elem) -> Result<(Elem, Elem)> {
        let ctx = join_ctx(&self.ctx, &other.ctx)?;
        Ok((self.embed(&ctx), other.embed(&ctx)))
    }

    /// Move to a finer ramification of the same tower (e | e_new).
    pub fn embed(&self, ctx2: &Ctx) -> Elem {
        if Arc::ptr_eq(&self.ctx, ctx2) || self.ctx.e == ctx2.e {
            let mut z = self.clone();
            z.ctx = ctx2.clone();
            return z;
        }
        assert!(
            same_tower(&self.ctx, ctx2) && ctx2.e.is_multiple_of(self.ctx.e),
            "embed into an incompatible context"
        );
        let t = (ctx2.e / self.ctx.e) as usize;
        let mut z = Elem::zero(ctx2);
        for (i, c) in self.a.iter().enumerate() {
            z.a[t * i] = c.clone();
        }
        z.prec = self.prec;
        z.exact = self.exact;
        z
    }

    pub fn add(&self, other: &Elem) -> Elem {
        let (x, y) = self.joined(other).expect("add: incompatible towers");
        let ctx = x.ctx.clone();
        let a =
            x.a.iter()
                .zip(&y.a)
                .map(|(p, q)| ctx.un_add(p, q))
                .collect();
        Elem {
            ctx,
            a,
            prec: x.prec.min(y.prec),
            exact: x.exact && y.exact,
        }
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        let (x, y) = self.joined(other).expect("sub: incompatible towers");
        let ctx = x.ctx.clone();
        let a =
            x.a.iter()
                .zip(&y.a)
                .map(|(p, q)| ctx.un_sub(p, q))
                .collect();
        Elem {
            ctx,
            a,
            prec: x.prec.min(y.prec),
            exact: x.exact && y.exact,
        }
    }

    pub fn neg(&self) -> Elem {
        Elem::zero(&self.ctx).sub(self)
    }

    pub fn mul(&self, other: &Elem) -> Elem {
        let (x, y) = self.joined(other).expect("mul: incompatible towers");
        let ctx = x.ctx.clone();
        if (x.exact && x.stored_zero()) || (y.exact && y.stored_zero()) {
            return Elem::zero(&ctx);
        }
        let e = ctx.e as usize;
        let mut acc: Vec<Unram> = vec![ctx.un_zero(); e];
        for (i, p) in x.a.iter().enumerate() {
            if ctx.un_is_zero(p) {
                continue;
            }
            for (j, qq) in y.a.iter().enumerate() {
                if ctx.un_is_zero(qq) {
                    continue;
                }
                let prod = ctx.un_mul(p, qq);
                let k = i + j;
                let (slot, wraps) = (k % e, (k / e) as u64);
                let term = if wraps > 0 {
                    ctx.un_double(&prod, wraps)
                } else {
                    prod
                };
                acc[slot] = ctx.un_add(&acc[slot], &term);
            }
        }
        // v(x~y~ - xy) >= min(v(x) + prec(y), v(y) + prec(x)); an undetectable
        // factor contributes its precision bound as the valuation lower bound.
        let vx = x.lower_val_bound();
        let vy = y.lower_val_bound();
        let prec = (vx + y.prec).min(vy + x.prec).min(ctx.precision);
        // guard: an exact product whose valuation nears the representation
        // width can wrap to a stored zero, so drop exactness there
        let exact = x.exact && y.exact && vx + vy < qi(ctx.kbits as i128 - 4);
        Elem {
            ctx,
            a: acc,
            prec,
            exact,
        }
    }

    fn lower_val_bound(&self) -> Q {
        match self.valuation() {
            Ok(Ext::Fin(v)) => v,
            _ => self.prec,
        }
    }

    /// Multiply by pi^k for k of either sign; negative k requires exact
    /// divisibility and otherwise reports the gap.
    pub fn mul_pi(&self, k: i64) -> Result<Elem> {
        let ctx = &self.ctx;
        let e = ctx.e as i64;
        let mut out = vec![ctx.un_zero(); e as usize];
        for (i, c) in self.a.iter().enumerate() {
            if ctx.un_is_zero(c) {
                continue;
            }
            let n = i as i64 + k;
            let qt = n.div_euclid(e);
            let r = n.rem_euclid(e) as usize;
            let scaled = if qt >= 0 {
                ctx.un_double(c, qt as u64)
            } else {
                ctx.un_div_pow2(c, (-qt) as u64)
                    .ok_or_else(|| Error::PrecisionExhausted {
                        context: format!("pi^{k} shift needs 2^{} to divide a coordinate", -qt),
                    })?
            };
            out[r] = ctx.un_add(&out[r], &scaled);
        }
        let shift = q(k as i128, e as i128);
        Ok(Elem {
            ctx: ctx.clone(),
            a: out,
            prec: (self.prec + shift).min(ctx.precision),
            exact: self.exact,
        })
    }

    /// Inverse of a unit (v = 0); internal helper behind div.
    fn inv_unit(&self) -> Elem {
        let ctx = &self.ctx;
        let r = ctx.un_residue(&self.a[0]);
        assert!(r != 0, "inv_unit of a non-unit");
        let mut x = Elem::lift(ctx, ctx.res.inv(r));
        // Newton x <- x(2 - ux): v(1 - ux) doubles each round, starting at 1/e.
        let two = Elem::from_i128(ctx, 2);
        let rounds = (64 - (ctx.e as u64 * (ctx.kbits + 1)).leading_zeros()) + 1;
        for _ in 0..rounds {
            let ux = self.mul(&x);
            x = x.mul(&two.sub(&ux));
        }
        x.prec = ctx.precision;
        x.exact = false;
        x
    }

    /// Field division inside the integral model: factor the divisor as
    /// pi^k * unit; the result must itself be integral to be representable.
    pub fn div(&self, other: &Elem) -> Result<Elem> {
        let (x, y) = self.joined(other)?;
        let vy = match y.valuation()? {
            Ext::Fin(v) => v,
            _ => return Err(Error::invariant("division by exact zero")),
        };
        let k = (vy * qi(y.ctx.e as i128)).to_integer() as i64;
        let unit = y.mul_pi(-k)?;
        let mut out = x.mul(&unit.inv_unit()).mul_pi(-k)?;
        let vx = x.lower_val_bound();
        out.prec = (x.prec - vy)
            .min(y.prec + vx - vy - vy)
            .min(x.ctx.precision);
        out.exact = false;
        Ok(out)
    }

    /// Reduction to the residue field; requires v >= 0.
    pub fn residue(&self) -> Result<RElem> {
        match self.valuation()? {
            Ext::PosInf => Ok(0),
            Ext::Fin(v) if v.is_negative() => Err(Error::NegativeValuation { val: fmt_q(v) }),
            Ext::Fin(v) if v > Q::zero() => Ok(0),
            Ext::Fin(_) => Ok(self.ctx.un_residue(&self.a[0])),
            Ext::NegInf => unreachable!(),
        }
    }
}

/// Display: nonzero pi-coordinates as hex vectors, lowest first.
impl std::fmt::Display for Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.a.iter().enumerate() {
            if self.ctx.un_is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coords: Vec<String> = c.iter().map(|x| format!("{x:x}")).collect();
            if i == 0 {
                write!(f, "[{}]", coords.join(","))?;
            } else {
                write!(f, "[{}]*pi^{i}", coords.join(","))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Square root of the residue field element, total because Frobenius is onto.
pub fn residue_sqrt(ctx: &Ctx, c: RElem) -> RElem {
    ctx.res.sqrt(c)
}

/// A monomial square root delta with v(delta) = w/2 and
/// delta^2 = lift(c) * 2^w modulo valuations > w.  Enlarges the ramification
/// first when w/2 is outside the value group, returning the context used.
pub fn sqrt_monomial(ctx: &Ctx, c: RElem, w: Q) -> Result<(Ctx, Elem)> {
    if c == 0 {
        return Err(Error::invariant("sqrt_monomial of residue zero"));
    }
    if w.is_negative() {
        return Err(Error::invariant("sqrt_monomial of negative level"));
    }
    let half = w / qi(2);
    let need = (half * qi(ctx.e as i128)).denom().to_i128().unwrap();
    let ctx2 = if need == 1 {
        ctx.clone()
    } else {
        let e = ctx.e as u64 * need as u64;
        if e > MAX_E {
            return Err(Error::RamificationOverflow { e });
        }
        enlarge_ramification(ctx, e as u32)?
    };
    let k = (half * qi(ctx2.e as i128)).to_integer() as i64;
    let delta = Elem::lift(&ctx2, ctx2.res.sqrt(c)).mul_pi(k)?;
    Ok((ctx2, delta))
}

/// Newton-lift a simple residue root of a polynomial over the unramified
/// subring (coefficients of pi-degree 0) until v(h(r)) >= the working
/// precision.  The residue root must be simple.
pub fn hensel_lift_root(ctx: &Ctx, coeffs: &[Elem], r0: RElem) -> Result<Elem> {
    for c in coeffs {
        if c.a.iter().skip(1).any(|u| !c.ctx.un_is_zero(u)) {
            return Err(Error::invariant(
                "hensel_lift_root: coefficients must be unramified",
            ));
        }
    }
    let rbar: Vec<RElem> = coeffs.iter().map(|c| c.ctx.un_residue(&c.a[0])).collect();
    let f = &ctx.res;
    let at = |x: RElem| rbar.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c));
    let dat = |x: RElem| {
        // derivative in char 2: only odd-degree coefficients survive
        let mut acc = 0;
        let mut xpow = 1;
        for (i, &c) in rbar.iter().enumerate().skip(1) {
            if i % 2 == 1 {
                acc = f.add(acc, f.mul(c, xpow));
            }
            xpow = f.mul(xpow, x);
        }
        acc
    };
    if at(r0) != 0 || dat(r0) == 0 {
        return Err(Error::NotSimpleRoot {
            context: format!(
                "residue value {:#x}, residue derivative {:#x} at root {:#x}",
                at(r0),
                dat(r0),
                r0
            ),
        });
    }
    let eval = |r: &Elem| -> Elem {
        let mut acc = Elem::zero(ctx);
        for c in coeffs.iter().rev() {
            acc = acc.mul(r).add(c);
        }
        acc
    };
    let deriv_coeffs: Vec<Elem> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&Elem::from_i128(ctx, i as i128)))
        .collect();
    let eval_d = |r: &Elem| -> Elem {
        let mut acc = Elem::zero(ctx);
        for c in deriv_coeffs.iter().rev() {
            acc = acc.mul(r).add(c);
        }
        acc
    };
    let mut r = Elem::lift(ctx, r0);
    for _ in 0..64 {
        let h = eval(&r);
        match h.valuation()? {
            Ext::PosInf => return Ok(r),
            Ext::Fin(v) if v >= ctx.precision => return Ok(r),
            _ => {}
        }
        let d = eval_d(&r);
        r = r.sub(&h.div(&d)?);
        // Newton stays in the unramified line and keeps the residue fixed
        r.prec = ctx.precision;
        r.exact = true;
    }
    Err(Error::IterationCapExceeded {
        cap: 64,
        context: "hensel_lift_root did not converge".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn ctx_me(m: u32, e: u32) -> Ctx {
        make_field(m, e, qi(24)).unwrap()
    }

    #[test]
    fn basic_valuations() {
        let c = ctx_me(1, 1);
        assert_eq!(Elem::from_i128(&c, 2).val().unwrap(), qi(1));
        assert_eq!(Elem::from_i128(&c, 12).val().unwrap(), qi(2));
        assert_eq!(Elem::from_i128(&c, -3).val().unwrap(), qi(0));
        let c2 = ctx_me(2, 4);
        assert_eq!(Elem::pi(&c2).val().unwrap(), q(1, 4));
        assert_eq!(Elem::from_i128(&c2, 2).val().unwrap(), qi(1));
        assert_eq!(Elem::zero(&c2).valuation().unwrap(), Ext::PosInf);
    }

    #[test]
    fn mixed_term_valuation_has_no_cross_cancellation() {
        // (1 + 2) * pi^3 in e = 2: coefficient 3 at pi^3 = 2 pi, so v = 3/2
        let c = ctx_me(1, 2);
        let x = Elem::from_i128(&c, 3).mul_pi(3).unwrap();
        assert_eq!(x.val().unwrap(), q(3, 2));
        // pi + 2 has v = 1/2 even though residues interact at coarser levels
        let y = Elem::pi(&c).add(&Elem::from_i128(&c, 2));
        assert_eq!(y.val().unwrap(), q(1, 2));
    }

    #[test]
    fn valuation_is_multiplicative() {
        let c = ctx_me(3, 3);
        let vals = [
            Elem::from_i128(&c, 6),
            Elem::pi(&c),
            Elem::from_ints(&c, &[vec![1, 1], vec![0, 2]]).unwrap(),
            Elem::from_ints(&c, &[vec![4], vec![0, 6], vec![2]]).unwrap(),
        ];
        for x in &vals {
            for y in &vals {
                let lhs = x.mul(y).val().unwrap();
                assert_eq!(lhs, x.val().unwrap() + y.val().unwrap());
            }
        }
    }

    #[test]
    fn ultrametric_inequality_with_equality_case() {
        let c = ctx_me(2, 2);
        let x = Elem::from_i128(&c, 4); // v = 2
        let y = Elem::pi(&c); // v = 1/2
        assert_eq!(x.add(&y).val().unwrap(), q(1, 2)); // strict case is equality
        let z = Elem::from_i128(&c, 12); // v = 2 as well
        let s = x.add(&z); // 16, v = 4 >= min
        assert!(s.val().unwrap() >= qi(2));
    }

    #[test]
    fn residue_is_a_ring_homomorphism() {
        let c = ctx_me(3, 2);
        let xs = [
            Elem::from_ints(&c, &[vec![1, 1, 0]]).unwrap(),
            Elem::from_ints(&c, &[vec![1, 0, 1]]).unwrap(),
            Elem::from_ints(&c, &[vec![3, 2, 1]]).unwrap(),
        ];
        let f = &c.res;
        for x in &xs {
            for y in &xs {
                assert_eq!(
                    x.mul(y).residue().unwrap(),
                    f.mul(x.residue().unwrap(), y.residue().unwrap())
                );
                assert_eq!(
                    x.add(y).residue().unwrap(),
                    x.residue().unwrap() ^ y.residue().unwrap()
                );
            }
        }
        // positive valuation reduces to zero; negative valuation is an error
        let p = Elem::pi(&c);
        assert_eq!(p.residue().unwrap(), 0);
    }

    #[test]
    fn division_undoes_multiplication() {
        let c = ctx_me(3, 2);
        let x = Elem::from_ints(&c, &[vec![1, 2, 0], vec![4]]).unwrap();
        let y = Elem::from_ints(&c, &[vec![3, 0, 2], vec![0, 2]]).unwrap();
        let z = x.mul(&y).div(&y).unwrap();
        let diff = z.sub(&x);
        match diff.valuation() {
            Ok(Ext::Fin(v)) => assert!(v >= qi(16), "v = {v}"),
            Ok(Ext::PosInf) => {}
            Ok(Ext::NegInf) => panic!(),
            Err(Error::PrecisionExhausted { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn inexact_zero_reports_precision_exhausted() {
        let c = ctx_me(1, 1);
        let third = Elem::one(&c).div(&Elem::from_i128(&c, 3)).unwrap();
        let z = third.sub(&third);
        assert!(matches!(
            z.valuation(),
            Err(Error::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn pi_pow_checks_the_value_group() {
        let c = ctx_me(1, 2);
        assert_eq!(Elem::pi_pow(&c, q(3, 2)).unwrap().val().unwrap(), q(3, 2));
        assert!(matches!(
            Elem::pi_pow(&c, q(1, 3)),
            Err(Error::ValueGroupGap { .. })
        ));
    }

    #[test]
    fn enlarge_preserves_valuations_and_is_idempotent() {
        let c = ctx_me(3, 2);
        let x = Elem::from_ints(&c, &[vec![2, 1], vec![0, 3]]).unwrap();
        let v = x.val().unwrap();
        let c6 = enlarge_ramification(&c, 6).unwrap();
        assert_eq!(x.embed(&c6).val().unwrap(), v);
        let again = enlarge_ramification(&c, 2).unwrap();
        assert!(Arc::ptr_eq(&again, &c));
        assert!(enlarge_ramification(&c, 5).is_err());
    }

    #[test]
    fn sqrt_monomial_squares_back() {
        let c = ctx_me(3, 1);
        for (cc, w) in [(0b011u32, qi(2)), (0b101, qi(1)), (1, q(3, 1))] {
            let (c2, d) = sqrt_monomial(&c, cc, w).unwrap();
            assert_eq!(d.val().unwrap(), w / qi(2));
            let target = Elem::lift(&c2, cc).mul(&Elem::pi_pow(&c2, w).unwrap());
            let err = d.mul(&d).sub(&target);
            match err.valuation().unwrap() {
                Ext::Fin(v) => assert!(v > w, "v = {v}, w = {w}"),
                Ext::PosInf => {}
                Ext::NegInf => panic!(),
            }
        }
        // odd level forces a ramification enlargement
        let (c2, d) = sqrt_monomial(&c, 1, qi(1)).unwrap();
        assert_eq!(c2.e, 2);
        assert_eq!(d.val().unwrap(), q(1, 2));
    }

    #[test]
    fn hensel_lifts_simple_roots() {
        let c = ctx_me(1, 1);
        // x^2 - x - 2 = (x - 2)(x + 1); residue roots 0 and 1 are simple
        let h = vec![
            Elem::from_i128(&c, -2),
            Elem::from_i128(&c, -1),
            Elem::from_i128(&c, 1),
        ];
        let r = hensel_lift_root(&c, &h, 0).unwrap();
        let diff = r.sub(&Elem::from_i128(&c, 2));
        assert!(matches!(
            diff.valuation().unwrap(),
            Ext::PosInf | Ext::Fin(_)
        ));
        if let Ext::Fin(v) = diff.valuation().unwrap() {
            assert!(v >= c.precision);
        }
        let r1 = hensel_lift_root(&c, &h, 1).unwrap();
        let d1 = r1.sub(&Elem::from_i128(&c, -1));
        if let Ext::Fin(v) = d1.valuation().unwrap() {
            assert!(v >= c.precision);
        }
    }

    #[test]
    fn hensel_rejects_non_simple_residue_roots() {
        let c = ctx_me(1, 1);
        // x^2 - 9 reduces to (x + 1)^2: the residue root 1 is not simple
        let h = vec![
            Elem::from_i128(&c, -9),
            Elem::zero(&c),
            Elem::from_i128(&c, 1),
        ];
        assert!(matches!(
            hensel_lift_root(&c, &h, 1),
            Err(Error::NotSimpleRoot { .. })
        ));
    }

    #[test]
    fn hensel_lifts_the_cubic_resolvent_roots() {
        // x^3 + x^2 - 4x + 1 over the unramified cubic with presentation
        // x^3 + x^2 + 1; its reduction equals the presentation, so the three
        // residue roots are the generator and its Frobenius conjugates.
        let c = make_field_with(3, 1, qi(24), 0b1101).unwrap();
        let h = vec![
            Elem::from_i128(&c, 1),
            Elem::from_i128(&c, -4),
            Elem::from_i128(&c, 1),
            Elem::from_i128(&c, 1),
        ];
        let roots: Vec<Elem> = [0b010u32, 0b100, 0b111]
            .iter()
            .map(|&r| hensel_lift_root(&c, &h, r).unwrap())
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(roots[i].sub(&roots[j]).val().unwrap(), qi(0));
                }
            }
        }
    }
}
