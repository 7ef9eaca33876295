//! Concave piecewise linear functions of a disc depth, stored as lower
//! envelopes of finitely many lines with integer slopes and rational
//! intercepts.
//!
//! Everything this crate needs (coefficient valuation profiles, square-defect
//! depth functions, their clamps, reflections and pointwise minima) is concave
//! on its domain, so one canonical representation covers all of it and
//! equality of functions is equality of pruned line sets.

use num_traits::Zero;

use crate::rat::{fmt_q, qi, Q};

/// The line y = slope * b + icept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Line {
    pub slope: i64,
    pub icept: Q,
}

impl Line {
    pub fn new(slope: i64, icept: Q) -> Line {
        Line { slope, icept }
    }

    pub fn at(&self, b: Q) -> Q {
        qi(self.slope as i128) * b + self.icept
    }

    /// Crossing abscissa with a line of different slope.
    fn cross(&self, other: &Line) -> Q {
        debug_assert_ne!(self.slope, other.slope);
        (other.icept - self.icept) / qi((self.slope - other.slope) as i128)
    }
}

/// min of the stored lines, restricted to [lo, hi] (hi = None means +inf).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFun {
    lines: Vec<Line>,
    pub lo: Q,
    pub hi: Option<Q>,
}

impl PLFun {
    /// Envelope of the given lines on the given interval; the representation
    /// keeps exactly the lines active on a subinterval of positive length,
    /// highest slope first, so equal functions compare equal.
    pub fn envelope(lines: Vec<Line>, lo: Q, hi: Option<Q>) -> PLFun {
        assert!(!lines.is_empty(), "envelope of no lines");
        if let Some(h) = hi {
            assert!(lo < h, "empty domain [{}, {}]", fmt_q(lo), fmt_q(h));
        }
        let mut sorted = lines;
        sorted.sort_by(|a, b| b.slope.cmp(&a.slope).then(a.icept.cmp(&b.icept)));
        sorted.dedup_by_key(|l| l.slope); // keeps the lowest intercept per slope
                                          // classic hull sweep: stack of (line, abscissa where it becomes active)
        let mut stack: Vec<(Line, Option<Q>)> = Vec::new(); // None start = -inf
        for l in sorted {
            loop {
                match stack.last() {
                    None => {
                        stack.push((l, None));
                        break;
                    }
                    Some((top, tstart)) => {
                        let c = top.cross(&l);
                        if tstart.is_some_and(|s| c <= s) {
                            stack.pop();
                        } else {
                            stack.push((l, Some(c)));
                            break;
                        }
                    }
                }
            }
        }
        // trim to the domain: a line must still be active on (lo, hi)
        let mut kept: Vec<Line> = Vec::new();
        for (i, (l, start)) in stack.iter().enumerate() {
            let end: Option<Q> = stack.get(i + 1).map(|(_, s)| s.unwrap());
            let starts_before_hi = match (start, hi) {
                (Some(s), Some(h)) => *s < h,
                _ => true,
            };
            let ends_after_lo = end.is_none_or(|e| e > lo);
            if starts_before_hi && ends_after_lo {
                kept.push(*l);
            }
        }
        debug_assert!(!kept.is_empty());
        PLFun {
            lines: kept,
            lo,
            hi,
        }
    }

    /// Constant function.
    pub fn constant(c: Q, lo: Q, hi: Option<Q>) -> PLFun {
        PLFun::envelope(vec![Line::new(0, c)], lo, hi)
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn contains(&self, b: Q) -> bool {
        b >= self.lo && self.hi.is_none_or(|h| b <= h)
    }

    pub fn eval(&self, b: Q) -> Q {
        assert!(self.contains(b), "eval outside the domain at {}", fmt_q(b));
        self.lines.iter().map(|l| l.at(b)).min().unwrap()
    }

    /// Consecutive active intervals: (start, end, line), highest slope first.
    pub fn pieces(&self) -> Vec<(Q, Option<Q>, Line)> {
        let mut out = Vec::new();
        let mut start = self.lo;
        for (i, l) in self.lines.iter().enumerate() {
            let end = match self.lines.get(i + 1) {
                Some(nl) => {
                    let c = l.cross(nl);
                    match self.hi {
                        Some(h) if c >= h => Some(h),
                        _ => Some(c),
                    }
                }
                None => self.hi,
            };
            out.push((start, end, *l));
            match end {
                Some(e) => start = e,
                None => break,
            }
            if self.hi == Some(start) {
                break;
            }
        }
        out
    }

    /// Breakpoints strictly inside the domain, ascending.
    pub fn breakpoints(&self) -> Vec<Q> {
        self.pieces()
            .iter()
            .filter_map(|(_, end, _)| *end)
            .filter(|e| Some(*e) != self.hi)
            .collect()
    }

    /// Slope of the piece just right of b (b must not be the right endpoint).
    pub fn right_slope(&self, b: Q) -> i64 {
        assert!(self.contains(b) && self.hi != Some(b));
        self.lines
            .iter()
            .filter(|l| l.at(b) == self.eval(b))
            .map(|l| l.slope)
            .min()
            .unwrap()
    }

    /// Slope of the piece just left of b (b must not be the left endpoint).
    pub fn left_slope(&self, b: Q) -> i64 {
        assert!(self.contains(b) && b != self.lo);
        self.lines
            .iter()
            .filter(|l| l.at(b) == self.eval(b))
            .map(|l| l.slope)
            .max()
            .unwrap()
    }

    /// Pointwise minimum on the intersection of domains.
    pub fn min_with(&self, other: &PLFun) -> PLFun {
        let lo = self.lo.max(other.lo);
        let hi = match (self.hi, other.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut lines = self.lines.clone();
        lines.extend_from_slice(&other.lines);
        PLFun::envelope(lines, lo, hi)
    }

    /// Cap the values at c (pointwise min with the constant).
    pub fn clamp_at(&self, c: Q) -> PLFun {
        self.min_with(&PLFun::constant(c, self.lo, self.hi))
    }

    pub fn add_const(&self, c: Q) -> PLFun {
        let lines = self
            .lines
            .iter()
            .map(|l| Line::new(l.slope, l.icept + c))
            .collect();
        PLFun {
            lines,
            lo: self.lo,
            hi: self.hi,
        }
    }

    /// b |-> f(c - b); the domain reflects too, so it needs a finite edge.
    pub fn reflect(&self, c: Q) -> PLFun {
        let hi = self.hi.expect("reflect needs a bounded domain");
        let lines = self
            .lines
            .iter()
            .map(|l| Line::new(-l.slope, l.icept + qi(l.slope as i128) * c))
            .collect();
        PLFun::envelope(lines, c - hi, Some(c - self.lo))
    }

    /// b |-> f(b - d).
    pub fn shift(&self, d: Q) -> PLFun {
        let lines = self
            .lines
            .iter()
            .map(|l| Line::new(l.slope, l.icept - qi(l.slope as i128) * d))
            .collect();
        PLFun {
            lines,
            lo: self.lo + d,
            hi: self.hi.map(|h| h + d),
        }
    }

    /// Smallest b in the domain with f(b) >= y, if any.
    pub fn first_reach(&self, y: Q) -> Option<Q> {
        if self.eval(self.lo) >= y {
            return Some(self.lo);
        }
        for (start, end, line) in self.pieces() {
            if line.slope <= 0 {
                continue; // value at start already checked transitively
            }
            let x = (y - line.icept) / qi(line.slope as i128);
            if x >= start && end.is_none_or(|e| x <= e) && self.eval(x) == y {
                return Some(x);
            }
        }
        None
    }
}

impl std::fmt::Display for PLFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let term = |l: &Line| -> String {
            let s = l.slope;
            let mut parts = Vec::new();
            match s {
                0 => {}
                1 => parts.push("b".to_string()),
                -1 => parts.push("-b".to_string()),
                _ => parts.push(format!("{s}b")),
            }
            if !l.icept.is_zero() || s == 0 {
                parts.push(fmt_q(l.icept));
            }
            parts.join(" + ").replace("+ -", "- ")
        };
        if self.lines.len() == 1 {
            write!(f, "{}", term(&self.lines[0]))?;
        } else {
            let body: Vec<String> = self.lines.iter().map(term).collect();
            write!(f, "min({})", body.join(", "))?;
        }
        match self.hi {
            Some(h) => write!(f, " on [{}, {}]", fmt_q(self.lo), fmt_q(h)),
            None => write!(f, " on [{}, inf)", fmt_q(self.lo)),
        }
    }
}
