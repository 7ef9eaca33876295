//! Polynomials over a tower: Gauss valuations, translate/scale transforms to
//! a working disc, normalized residue reductions and the piecewise linear
//! valuation profile b |-> v(h on D_{alpha,b}).

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::field::{enlarge_ramification, join_ctx, Ctx, Elem};
use crate::plfun::{Line, PLFun};
use crate::rat::{fmt_q, qi, Ext, Q};
use crate::residue::RPoly;
use crate::Result;

/// The closed disc D_{center, depth} = { x : v(x - center) >= depth }.
#[derive(Clone, Debug)]
pub struct Disc {
    pub center: Elem,
    pub depth: Q,
}

impl Disc {
    pub fn new(center: Elem, depth: Q) -> Disc {
        Disc { center, depth }
    }

    /// Two discs are equal when the depths agree and each center lies in the
    /// other disc.
    pub fn same_disc(&self, other: &Disc) -> bool {
        if self.depth != other.depth {
            return false;
        }
        let diff = self.center.sub(&other.center);
        match diff.valuation() {
            Ok(Ext::Fin(v)) => v >= self.depth,
            Ok(_) => true,
            // indistinguishable from zero at working precision: same center
            // for every depth the precision can see
            Err(_) => diff.prec() >= self.depth,
        }
    }
}

impl std::fmt::Display for Disc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "D({}, {})", self.center, fmt_q(self.depth))
    }
}

/// Dense polynomial with coefficients in one tower context.
#[derive(Clone, Debug)]
pub struct ValPoly {
    ctx: Ctx,
    coeffs: Vec<Elem>,
}

impl ValPoly {
    /// Normalizes all coefficients into a common context and trims trailing
    /// exact zeros.
    pub fn new(ctx: &Ctx, coeffs: Vec<Elem>) -> ValPoly {
        let mut joined = ctx.clone();
        for c in &coeffs {
            joined = join_ctx(&joined, &c.ctx).expect("ValPoly: incompatible towers");
        }
        let mut coeffs: Vec<Elem> = coeffs.iter().map(|c| c.embed(&joined)).collect();
        while coeffs.len() > 1 {
            let last = coeffs.last().unwrap();
            if last.is_exact() && matches!(last.valuation(), Ok(Ext::PosInf)) {
                coeffs.pop();
            } else {
                break;
            }
        }
        if coeffs.is_empty() {
            coeffs.push(Elem::zero(&joined));
        }
        ValPoly {
            ctx: joined,
            coeffs,
        }
    }

    pub fn zero(ctx: &Ctx) -> ValPoly {
        ValPoly::new(ctx, vec![])
    }

    pub fn constant(c: Elem) -> ValPoly {
        let ctx = c.ctx.clone();
        ValPoly::new(&ctx, vec![c])
    }

    /// Test and example helper: integer coefficients, ascending degree.
    pub fn from_int_coeffs(ctx: &Ctx, cs: &[i128]) -> ValPoly {
        ValPoly::new(ctx, cs.iter().map(|&c| Elem::from_i128(ctx, c)).collect())
    }

    /// lead * prod (x - root).
    pub fn from_roots(roots: &[Elem], lead: &Elem) -> ValPoly {
        let ctx = lead.ctx.clone();
        let mut p = ValPoly::constant(lead.clone());
        for r in roots {
            let factor = ValPoly::new(&ctx, vec![r.neg(), Elem::one(&r.ctx)]);
            p = p.mul(&factor);
        }
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Elem {
        &self.coeffs[i]
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1
            && self.coeffs[0].is_exact()
            && matches!(self.coeffs[0].valuation(), Ok(Ext::PosInf))
    }

    pub fn embed(&self, ctx2: &Ctx) -> ValPoly {
        ValPoly::new(ctx2, self.coeffs.iter().map(|c| c.embed(ctx2)).collect())
    }

    pub fn add(&self, other: &ValPoly) -> ValPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        ValPoly::new(&self.ctx, out)
    }

    pub fn sub(&self, other: &ValPoly) -> ValPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ValPoly {
        ValPoly::new(&self.ctx, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, other: &ValPoly) -> ValPoly {
        let ctx = join_ctx(&self.ctx, &other.ctx).expect("mul: incompatible towers");
        let mut out = vec![Elem::zero(&ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        ValPoly::new(&ctx, out)
    }

    pub fn scale(&self, c: &Elem) -> ValPoly {
        ValPoly::new(&self.ctx, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let mut acc = Elem::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// h(beta z + alpha): Taylor shift by alpha, then scale degree i by beta^i.
    pub fn transform(&self, alpha: &Elem, beta: &Elem) -> ValPoly {
        let ctx = join_ctx(
            &join_ctx(&self.ctx, &alpha.ctx).expect("transform: towers"),
            &beta.ctx,
        )
        .expect("transform: towers");
        let n = self.coeffs.len() - 1;
        let alpha = alpha.embed(&ctx);
        let mut b: Vec<Elem> = self.coeffs.iter().map(|c| c.embed(&ctx)).collect();
        for i in 0..n {
            for j in (i..n).rev() {
                b[j] = b[j].add(&alpha.mul(&b[j + 1]));
            }
        }
        let beta = beta.embed(&ctx);
        let mut pow = Elem::one(&ctx);
        for c in b.iter_mut().skip(1) {
            pow = pow.mul(&beta);
            *c = c.mul(&pow);
        }
        ValPoly::new(&ctx, b)
    }

    /// Minimum coefficient valuation.  Errors with ZeroPolynomial for the
    /// exact zero polynomial and PrecisionExhausted when an undetectable
    /// coefficient could undercut the minimum.
    pub fn gauss_valuation(&self) -> Result<Q> {
        let mut best: Option<Q> = None;
        let mut weakest_bound: Option<Q> = None;
        for c in &self.coeffs {
            match c.valuation() {
                Ok(Ext::Fin(v)) => {
                    if best.is_none_or(|b| v < b) {
                        best = Some(v);
                    }
                }
                Ok(_) => {}
                Err(Error::PrecisionExhausted { .. }) => {
                    let p = c.prec();
                    if weakest_bound.is_none_or(|w| p < w) {
                        weakest_bound = Some(p);
                    }
                }
                Err(e) => return Err(e),
            }
        }
        match best {
            Some(v) => {
                if weakest_bound.is_some_and(|w| w <= v) {
                    Err(Error::PrecisionExhausted {
                        context: format!(
                            "Gauss valuation {} not certifiable below bound {}",
                            fmt_q(v),
                            fmt_q(weakest_bound.unwrap())
                        ),
                    })
                } else {
                    Ok(v)
                }
            }
            None if self.coeffs.iter().all(|c| c.is_exact()) => Err(Error::ZeroPolynomial),
            None => Err(Error::PrecisionExhausted {
                context: "all coefficients indistinguishable from zero".into(),
            }),
        }
    }

    /// The concave envelope b |-> min_i (v(H_i) + i b) of the coefficients of
    /// h(alpha + x), on b in [lo, hi].
    pub fn disc_valuation_fn(&self, alpha: &Elem, lo: Q, hi: Option<Q>) -> Result<PLFun> {
        let h = self.transform(alpha, &Elem::one(&self.ctx));
        let mut lines = Vec::new();
        let mut bounds = Vec::new();
        for (i, c) in h.coeffs.iter().enumerate() {
            match c.valuation() {
                Ok(Ext::Fin(v)) => lines.push(Line::new(i as i64, v)),
                Ok(_) => {}
                Err(Error::PrecisionExhausted { .. }) => bounds.push(Line::new(i as i64, c.prec())),
                Err(e) => return Err(e),
            }
        }
        if lines.is_empty() {
            return if h.coeffs.iter().all(|c| c.is_exact()) {
                Err(Error::ZeroPolynomial)
            } else {
                Err(Error::PrecisionExhausted {
                    context: "no coefficient valuation is certifiable".into(),
                })
            };
        }
        let env = PLFun::envelope(lines, lo, hi);
        for b in bounds {
            // an undetectable coefficient is only tolerable if its precision
            // bound line stays weakly above the envelope on the whole domain
            if env.min_with(&PLFun::envelope(vec![b], lo, hi)) != env {
                return Err(Error::PrecisionExhausted {
                    context: format!(
                        "coefficient of degree {} could undercut the valuation profile",
                        b.slope
                    ),
                });
            }
        }
        Ok(env)
    }

    /// Reduction at the Gauss disc of the current coordinates: residues of
    /// gamma^{-1} h with gamma = 2^{v(h)}.  Returns the reduction and v(h).
    pub fn normalized_reduction(&self) -> Result<(RPoly, Q)> {
        let v = self.gauss_valuation()?;
        let k = (v * qi(self.ctx.e as i128)).to_integer().to_i64().unwrap();
        let mut bits = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let shifted = c.mul_pi(-k)?;
            let r = match shifted.valuation() {
                Ok(_) => shifted.residue()?,
                // provably positive valuation at working precision: residue 0
                Err(Error::PrecisionExhausted { .. }) if shifted.prec() > Q::zero() => 0,
                Err(e) => return Err(e),
            };
            bits.push(r);
        }
        Ok((RPoly::trimmed(bits), v))
    }

    /// Coordinates z with x = alpha + beta z, beta = 2^depth; ramification is
    /// enlarged as needed to make the depth a value.
    pub fn to_disc_coords(&self, d: &Disc) -> Result<ValPoly> {
        let scaled = d.depth * qi(self.ctx.e as i128);
        let den = scaled.denom().to_i128().unwrap();
        let ctx = if den == 1 {
            join_ctx(&self.ctx, &d.center.ctx)?
        } else {
            let e = self.ctx.e as u64 * den as u64;
            if e > crate::field::MAX_E {
                return Err(Error::RamificationOverflow { e });
            }
            join_ctx(&enlarge_ramification(&self.ctx, e as u32)?, &d.center.ctx)?
        };
        if d.depth.is_negative() {
            return Err(Error::invariant("disc depths are nonnegative here"));
        }
        let beta = Elem::pi_pow(&ctx, d.depth)?;
        Ok(self.embed(&ctx).transform(&d.center.embed(&ctx), &beta))
    }

    /// Normalized reduction at a disc.
    pub fn reduction_at(&self, d: &Disc) -> Result<(RPoly, Q)> {
        self.to_disc_coords(d)?.normalized_reduction()
    }

    /// Lowest and highest residue degrees surviving reduction at the disc.
    pub fn reduction_degree_span(&self, d: &Disc) -> Result<(usize, usize)> {
        let (r, _) = self.reduction_at(d)?;
        r.degree_span()
            .ok_or_else(|| Error::invariant("normalized reduction is zero"))
    }
}

impl std::fmt::Display for ValPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_exact() && matches!(c.valuation(), Ok(Ext::PosInf)) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
