//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Upper bound on the number of ring variables, auxiliary tags included.
pub const MAX_VARS: usize = 32;

/// Largest exponent a single variable may carry.
pub const MAX_EXPONENT: u32 = u16::MAX as u32;

/// A power product stored as a fixed-width exponent vector. Entries past the
/// ring's variable count are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
    // bit i set iff exps[i] > 0
    mask: u32,
}

impl Default for Monomial {
    fn default() -> Self {
        Self::one()
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = (0..MAX_VARS).rev().find(|&i| self.exps[i] > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            degree: 0,
            mask: 0,
        }
    }

    /// Panics if more than [`MAX_VARS`] entries are given or an exponent
    /// exceeds [`MAX_EXPONENT`].
    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXPONENT, "exponent overflow");
            m.exps[i] = e as u16;
        }
        m.refresh();
        m
    }

    pub fn var(index: usize, exp: u32) -> Self {
        let mut m = Monomial::one();
        assert!(index < MAX_VARS && exp <= MAX_EXPONENT);
        m.exps[index] = exp as u16;
        m.refresh();
        m
    }

    fn refresh(&mut self) {
        let mut degree = 0u32;
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            degree += e as u32;
            if e > 0 {
                mask |= 1 << i;
            }
        }
        self.degree = degree;
        self.mask = mask;
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Bitmask of the variables with a positive exponent.
    #[inline]
    pub fn support(&self) -> u32 {
        self.mask
    }

    pub fn is_one(&self) -> bool {
        self.mask == 0
    }

    pub fn degree_in(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            let e = self.exps[i] as u32 + other.exps[i] as u32;
            assert!(e <= MAX_EXPONENT, "exponent overflow");
            out.exps[i] = e as u16;
        }
        out.degree = self.degree + other.degree;
        out.mask = self.mask | other.mask;
        out
    }

    /// True if `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.mask & !other.mask != 0 || self.degree > other.degree {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i] - other.exps[i];
        }
        out.refresh();
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
        }
        out.refresh();
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].min(other.exps[i]);
        }
        out.refresh();
        out
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.mask & other.mask == 0
    }

    /// Drop all powers of variable `i`.
    pub fn without_var(&self, i: usize) -> Monomial {
        let mut out = *self;
        out.exps[i] = 0;
        out.refresh();
        out
    }

    /// Rearrange variables: entry `i` moves to position `map[i]`. Variables
    /// mapped to `None` must have exponent zero.
    pub fn remap(&self, map: &[Option<usize>]) -> Option<Monomial> {
        let mut out = Monomial::one();
        for (i, slot) in map.iter().enumerate() {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            let j = (*slot)?;
            out.exps[j] = e;
        }
        out.refresh();
        Some(out)
    }
}

/// Order used inside the two sides of a block elimination order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InnerOrder {
    Lex,
    GrevLex,
}

/// A monomial order on the ring's variable sequence (variable 0 largest).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
    /// Elimination order for the first `k` variables.
    BlockElim { k: usize, inner: InnerOrder },
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::BlockElim { k, inner } => {
                let inner = match inner {
                    InnerOrder::Lex => "lex",
                    InnerOrder::GrevLex => "grevlex",
                };
                write!(f, "elim({k},{inner})")
            }
        }
    }
}

#[inline]
fn lex_range(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    for i in lo..hi {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[inline]
fn revlex_tail(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    for i in (lo..hi).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[inline]
fn inner_cmp(inner: InnerOrder, a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    match inner {
        InnerOrder::Lex => lex_range(a, b, lo, hi),
        InnerOrder::GrevLex => a
            .degree_in(lo..hi)
            .cmp(&b.degree_in(lo..hi))
            .then_with(|| revlex_tail(a, b, lo, hi)),
    }
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => lex_range(a, b, 0, MAX_VARS),
            MonomialOrder::GrevLex => a
                .degree
                .cmp(&b.degree)
                .then_with(|| revlex_tail(a, b, 0, MAX_VARS)),
            MonomialOrder::BlockElim { k, inner } => {
                let k = k.min(MAX_VARS);
                a.degree_in(0..k)
                    .cmp(&b.degree_in(0..k))
                    .then_with(|| inner_cmp(inner, a, b, 0, k))
                    .then_with(|| inner_cmp(inner, a, b, k, MAX_VARS))
            }
        }
    }

    /// True if the order is degree-compatible on all variables.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }
}
