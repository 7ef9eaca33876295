//! The residue fields F_{2^m}, m <= 16, presented as F_2[x]/(P).
//!
//! Elements are bitmasks (bit i = coefficient of x^i), so addition is xor and
//! everything else is carry-less polynomial arithmetic reduced mod P.  Square
//! roots are total: squaring is the Frobenius bijection, so
//! sqrt(c) = c^(2^(m-1)).

use crate::error::Error;
use crate::Result;

/// A concrete presentation of F_{2^m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    m: u32,
    /// Presentation polynomial; bit i is the coefficient of x^i, bit m is set.
    poly: u32,
}

/// Field elements are plain bitmasks of degree < m.
pub type RElem = u32;

impl ResidueField {
    /// Build F_2[x]/(poly), verifying the degree and irreducibility.
    pub fn new(m: u32, poly: u32) -> Result<ResidueField> {
        if m == 0 || m > 16 {
            return Err(Error::UnsupportedDegree { m });
        }
        if poly >> m != 1 {
            return Err(Error::SchemaError(format!(
                "presentation polynomial {poly:#b} does not have degree {m}"
            )));
        }
        let f = ResidueField { m, poly };
        if !f.presentation_irreducible() {
            return Err(Error::ReduciblePresentation { poly });
        }
        Ok(f)
    }

    /// Default presentation for each supported degree.
    pub fn default_poly(m: u32) -> u32 {
        match m {
            1 => 0b11,                // x + 1
            2 => 0b111,               // x^2 + x + 1
            3 => 0b1011,              // x^3 + x + 1
            4 => 0b1_0011,            // x^4 + x + 1
            5 => 0b10_0101,           // x^5 + x^2 + 1
            6 => 0b100_0011,          // x^6 + x + 1
            7 => 0b1000_0011,         // x^7 + x + 1
            8 => 0b1_0001_1011,       // x^8 + x^4 + x^3 + x + 1
            9 => 0b10_0001_0001,      // x^9 + x^4 + 1
            10 => 0b100_0000_1001,    // x^10 + x^3 + 1
            11 => 0b1000_0000_0101,   // x^11 + x^2 + 1
            12 => 0b1_0000_0101_0011, // x^12 + x^6 + x^4 + x + 1
            13 => 0b10_0000_0001_1011,
            14 => 0b100_0010_1000_0011,
            15 => 0b1000_0000_0000_0011, // x^15 + x + 1
            16 => 0b1_0001_0000_0000_1011,
            _ => 0,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    pub fn order(&self) -> u64 {
        1u64 << self.m
    }

    fn mask(&self) -> u32 {
        (1u32 << self.m) - 1
    }

    pub fn add(&self, a: RElem, b: RElem) -> RElem {
        a ^ b
    }

    pub fn mul(&self, a: RElem, b: RElem) -> RElem {
        let mut acc: u64 = 0;
        let a = a as u64;
        let mut b = b as u64;
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        self.reduce64(acc)
    }

    fn reduce64(&self, mut acc: u64) -> RElem {
        let p = self.poly as u64;
        let m = self.m;
        let mut i = 63;
        while i >= m as i64 {
            if acc >> i & 1 == 1 {
                acc ^= p << (i as u32 - m);
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
        (acc as u32) & self.mask()
    }

    pub fn sq(&self, a: RElem) -> RElem {
        self.mul(a, a)
    }

    pub fn pow(&self, mut a: RElem, mut n: u64) -> RElem {
        let mut out: RElem = 1;
        while n != 0 {
            if n & 1 == 1 {
                out = self.mul(out, a);
            }
            a = self.sq(a);
            n >>= 1;
        }
        out
    }

    /// Multiplicative inverse; zero is a caller bug.
    pub fn inv(&self, a: RElem) -> RElem {
        assert!(a != 0, "inverse of zero in F_2^{}", self.m);
        self.pow(a, self.order() - 2)
    }

    /// Total square root: the inverse of Frobenius.
    pub fn sqrt(&self, a: RElem) -> RElem {
        self.pow(a, 1u64 << (self.m - 1))
    }

    /// Absolute trace down to F_2: a + a^2 + ... + a^(2^(m-1)).
    pub fn trace(&self, a: RElem) -> RElem {
        let mut acc = 0;
        let mut t = a;
        for _ in 0..self.m {
            acc ^= t;
            t = self.sq(t);
        }
        acc
    }

    /// Degree-m irreducibility over F_2: x^(2^m) = x mod P and for every
    /// prime p | m, x^(2^(m/p)) != x mod P.
    fn presentation_irreducible(&self) -> bool {
        let x = self.reduce64(0b10);
        let frob_iter = |k: u32| {
            let mut a = x;
            for _ in 0..k {
                a = self.sq(a);
            }
            a
        };
        if frob_iter(self.m) != x {
            return false;
        }
        for p in prime_divisors(self.m) {
            if frob_iter(self.m / p) == x {
                return false;
            }
        }
        true
    }
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial over a residue field, ascending degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RPoly(pub Vec<RElem>);

impl RPoly {
    pub fn trimmed(mut coeffs: Vec<RElem>) -> RPoly {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        RPoly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c != 0)
    }

    /// Lowest and highest degrees with nonzero coefficient.
    pub fn degree_span(&self) -> Option<(usize, usize)> {
        let lo = self.0.iter().position(|&c| c != 0)?;
        let hi = self.0.iter().rposition(|&c| c != 0)?;
        Some((lo, hi))
    }

    /// In characteristic 2 over a perfect field, squares are exactly the
    /// polynomials supported on even degrees.
    pub fn is_square(&self) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || i % 2 == 0)
    }

    /// Square root of a square; the even-degree support is halved and each
    /// coefficient gets its Frobenius preimage.
    pub fn sqrt(&self, f: &ResidueField) -> RPoly {
        assert!(self.is_square(), "sqrt of a non-square residue polynomial");
        let half = self.0.len().div_ceil(2).max(1);
        let mut out = vec![0; half];
        for (i, &c) in self.0.iter().enumerate() {
            if c != 0 {
                out[i / 2] = f.sqrt(c);
            }
        }
        RPoly::trimmed(out)
    }

    pub fn eval(&self, f: &ResidueField, x: RElem) -> RElem {
        let mut acc = 0;
        for &c in self.0.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }
}

impl std::fmt::Display for RPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c, i) {
                (1, 0) => write!(f, "1")?,
                (c, 0) => write!(f, "{c:#x}")?,
                (1, 1) => write!(f, "z")?,
                (c, 1) => write!(f, "{c:#x}*z")?,
                (1, _) => write!(f, "z^{i}")?,
                (c, _) => write!(f, "{c:#x}*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
