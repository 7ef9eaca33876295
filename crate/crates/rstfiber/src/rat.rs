//! Exact rational scalars for valuations, disc depths and precisions.

use num_rational::Ratio;
use num_traits::{One, Signed};

/// Valuations and depths are exact rationals throughout; no floats anywhere.
pub type Q = Ratio<i128>;

/// Shorthand for `n/d`.
pub fn q(n: i128, d: i128) -> Q {
    Ratio::new(n, d)
}

/// Shorthand for an integer rational.
pub fn qi(n: i128) -> Q {
    Ratio::from_integer(n)
}

/// A rational extended with both infinities, totally ordered.
///
/// `PosInf` is the valuation of an exact zero, `NegInf` the lower disc bound
/// of the root cluster containing everything.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Ext {
    NegInf,
    Fin(Q),
    PosInf,
}

impl Ext {
    pub fn fin(self) -> Option<Q> {
        match self {
            Ext::Fin(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    /// Finite value or panic; for places where finiteness is an invariant.
    pub fn unwrap_fin(self) -> Q {
        match self {
            Ext::Fin(x) => x,
            other => panic!("expected finite value, got {other:?}"),
        }
    }

    pub fn add_q(self, d: Q) -> Ext {
        match self {
            Ext::Fin(x) => Ext::Fin(x + d),
            other => other,
        }
    }
}

impl From<Q> for Ext {
    fn from(x: Q) -> Self {
        Ext::Fin(x)
    }
}

impl std::fmt::Display for Ext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::Fin(x) => write!(f, "{}", fmt_q(*x)),
            Ext::PosInf => write!(f, "inf"),
        }
    }
}

/// Render as `p` or `p/q`, the form used in every serialized document.
pub fn fmt_q(x: Q) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p` or `p/q`; rejects zero denominators and trailing garbage.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<i128>().ok()?,
            d.trim().parse::<i128>().ok()?,
        ),
        None => (s.parse::<i128>().ok()?, 1),
    };
    if d == 0 {
        return None;
    }
    Some(Ratio::new(n, d))
}

/// Floor of a rational as i128.
pub fn floor_q(x: Q) -> i128 {
    x.floor().to_integer()
}

/// True if `x` is a nonnegative integer.
pub fn is_nonneg_int(x: Q) -> bool {
    x.denom().is_one() && !x.is_negative()
}
