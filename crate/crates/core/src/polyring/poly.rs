use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::field::Field;
use super::monomial::Monomial;
use super::ring::{PolyRing, RingRef};
use super::PolyError;

/// A nonzero coefficient times a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<F: Field> {
    pub coeff: F::Elem,
    pub mono: Monomial,
}

/// Sparse polynomial. Terms are nonzero, distinct and strictly descending
/// under the ring's active order; zero is the empty term list.
#[derive(Clone)]
pub struct Poly<F: Field> {
    ring: RingRef<F>,
    terms: Vec<Term<F>>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::textio::render_polynomial(self))
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::textio::render_polynomial(self))
    }
}

/// Value bound to a variable by [`Poly::substitute`].
#[derive(Clone, Debug)]
pub enum Binding<F: Field> {
    Const(F::Elem),
    Poly(Poly<F>),
}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &RingRef<F>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef<F>, c: F::Elem) -> Self {
        Self::monomial(ring, c, Monomial::one())
    }

    pub fn one(ring: &RingRef<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn monomial(ring: &RingRef<F>, coeff: F::Elem, mono: Monomial) -> Self {
        let terms = if ring.field().is_zero(&coeff) {
            Vec::new()
        } else {
            vec![Term { coeff, mono }]
        };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &RingRef<F>, index: usize) -> Self {
        assert!(index < ring.nvars(), "variable index out of range");
        Self::monomial(ring, ring.field().one(), Monomial::var(index, 1))
    }

    pub fn var_named(ring: &RingRef<F>, name: &str) -> Result<Self, PolyError> {
        Ok(Self::var(ring, ring.require_var(name)?))
    }

    /// Build from arbitrary (coefficient, monomial) pairs: sorts, merges like
    /// terms and drops zeros.
    pub fn from_terms(ring: &RingRef<F>, raw: Vec<(F::Elem, Monomial)>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(raw.len());
        for (c, m) in raw {
            if field.is_zero(&c) {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term<F>> = acc
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wrap terms already in canonical order.
    pub(crate) fn from_sorted_terms(ring: &RingRef<F>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    /// True for a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn leading_term(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.mono.degree();
                self.terms.iter().all(|s| s.mono.degree() == d)
            }
        }
    }

    /// Homogeneous with respect to the variables in `range` alone.
    pub fn is_homogeneous_in(&self, range: std::ops::Range<usize>) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.mono.degree_in(range.clone());
                self.terms.iter().all(|s| s.mono.degree_in(range.clone()) == d)
            }
        }
    }

    /// Union of the supports of all terms.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, t| acc | t.mono.support())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Vec<Term<F>> {
        let field = self.field();
        let order = self.ring.order();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].mono, &b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other {
                        field.neg(&b[j].coeff)
                    } else {
                        b[j].coeff.clone()
                    };
                    out.push(Term {
                        coeff: c,
                        mono: b[j].mono,
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].coeff, &b[j].coeff)
                    } else {
                        field.add(&a[i].coeff, &b[j].coeff)
                    };
                    if !field.is_zero(&c) {
                        out.push(Term {
                            coeff: c,
                            mono: a[i].mono,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other {
                field.neg(&t.coeff)
            } else {
                t.coeff.clone()
            };
            out.push(Term { coeff: c, mono: t.mono });
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(Poly {
            ring: self.ring.clone(),
            terms: self.merge(other, false),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(Poly {
            ring: self.ring.clone(),
            terms: self.merge(other, true),
        })
    }

    pub fn neg(&self) -> Self {
        let field = self.field();
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.neg(&t.coeff),
                    mono: t.mono,
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(&t.coeff, c),
                    mono: t.mono,
                })
                .collect(),
        }
    }

    /// Multiply by `c * m`; order is preserved since orders are multiplicative.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(&t.coeff, c),
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Poly::zero(&self.ring);
        for t in &small.terms {
            let part = big.mul_term(&t.coeff, &t.mono);
            acc = Poly {
                ring: self.ring.clone(),
                terms: acc.merge(&part, false),
            };
        }
        Ok(acc)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Scale so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Formal partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Result<Self, PolyError> {
        if v >= self.ring.nvars() {
            return Err(PolyError::UnknownVariable(format!("#{v}")));
        }
        let field = self.field();
        let mut terms = Vec::new();
        for t in &self.terms {
            let e = t.mono.exponent(v);
            if e == 0 {
                continue;
            }
            let c = field.mul(&t.coeff, &field.from_i64(e as i64));
            if field.is_zero(&c) {
                continue;
            }
            let mono = t
                .mono
                .div(&Monomial::var(v, 1))
                .expect("variable divides the term");
            terms.push((c, mono));
        }
        // x^e -> x^(e-1) can reorder terms under lex-free orders, so re-sort
        Ok(Poly::from_terms(&self.ring, terms))
    }

    pub fn derivative_named(&self, name: &str) -> Result<Self, PolyError> {
        let v = self.ring.require_var(name)?;
        self.derivative(v)
    }

    /// Evaluate at a point (one value per ring variable).
    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem, PolyError> {
        if point.len() != self.ring.nvars() {
            return Err(PolyError::Arity {
                expected: self.ring.nvars(),
                found: point.len(),
            });
        }
        let field = self.field();
        let mut acc = field.zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..t.mono.exponent(i) {
                    v = field.mul(&v, x);
                }
            }
            acc = field.add(&acc, &v);
        }
        Ok(acc)
    }

    /// Simultaneous substitution of the bound variables, staying in the
    /// current ring.
    pub fn substitute(&self, bindings: &[(usize, Binding<F>)]) -> Result<Self, PolyError> {
        let n = self.ring.nvars();
        let mut images: Vec<Option<&Binding<F>>> = vec![None; n];
        for (v, b) in bindings {
            if *v >= n {
                return Err(PolyError::UnknownVariable(format!("#{v}")));
            }
            if let Binding::Poly(p) = b {
                if !PolyRing::same(p.ring(), &self.ring) {
                    return Err(PolyError::RingMismatch);
                }
            }
            images[*v] = Some(b);
        }
        let field = self.field();
        let mut acc = Poly::zero(&self.ring);
        let mut power_cache: HashMap<(usize, u32), Poly<F>> = HashMap::new();
        for t in &self.terms {
            let mut coeff = t.coeff.clone();
            let mut kept = Monomial::one();
            let mut factor = Poly::one(&self.ring);
            for v in 0..n {
                let e = t.mono.exponent(v);
                if e == 0 {
                    continue;
                }
                match images[v] {
                    None => kept = kept.mul(&Monomial::var(v, e)),
                    Some(Binding::Const(c)) => {
                        for _ in 0..e {
                            coeff = field.mul(&coeff, c);
                        }
                    }
                    Some(Binding::Poly(p)) => {
                        let pw = power_cache
                            .entry((v, e))
                            .or_insert_with(|| p.pow(e))
                            .clone();
                        factor = factor.mul(&pw)?;
                    }
                }
            }
            let part = factor.mul_term(&coeff, &kept);
            acc = acc.add(&part)?;
        }
        Ok(acc)
    }

    /// Substitute by variable names.
    pub fn substitute_named(&self, bindings: &[(&str, Binding<F>)]) -> Result<Self, PolyError> {
        let mut resolved = Vec::with_capacity(bindings.len());
        for (name, b) in bindings {
            resolved.push((self.ring.require_var(name)?, b.clone()));
        }
        self.substitute(&resolved)
    }

    /// Move into another ring. `map[i]` is the target index of variable `i`;
    /// unmapped variables must not occur.
    pub fn map_into(&self, target: &RingRef<F>, map: &[Option<usize>]) -> Result<Self, PolyError> {
        if target.field() != self.field() {
            return Err(PolyError::RingMismatch);
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let m = t.mono.remap(map).ok_or_else(|| {
                PolyError::InvalidRing("polynomial uses a variable absent from the target ring".into())
            })?;
            raw.push((t.coeff.clone(), m));
        }
        let mut terms: Vec<Term<F>> = raw
            .into_iter()
            .map(|(coeff, mono)| Term { coeff, mono })
            .collect();
        let order = target.order();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Ok(Poly {
            ring: target.clone(),
            terms,
        })
    }

    /// Same variables, re-sorted under the target ring's order.
    pub fn reorder(&self, target: &RingRef<F>) -> Result<Self, PolyError> {
        if target.vars() != self.ring.vars() {
            return Err(PolyError::RingMismatch);
        }
        let map: Vec<Option<usize>> = (0..self.ring.nvars()).map(Some).collect();
        self.map_into(target, &map)
    }

    /// Map into a ring with the same variable names (any order or block
    /// layout), matching variables by name.
    pub fn rename_into(&self, target: &RingRef<F>) -> Result<Self, PolyError> {
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v))
            .collect();
        self.map_into(target, &map)
    }

    /// Change the coefficient field term by term.
    pub fn convert_field<G: Field>(
        &self,
        target: &RingRef<G>,
        mut conv: impl FnMut(&F::Elem) -> Option<G::Elem>,
    ) -> Result<Poly<G>, PolyError> {
        if target.vars() != self.ring.vars() {
            return Err(PolyError::RingMismatch);
        }
        let mut raw = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = conv(&t.coeff).ok_or(PolyError::NotRepresentable)?;
            raw.push((c, t.mono));
        }
        Ok(Poly::from_terms(target, raw))
    }

    /// `self - c * m * g` restricted to the terms of `self` from `start` on.
    /// Used by the reduction loops; `g` must share the ring.
    pub(crate) fn sub_scaled_tail(
        field: &F,
        order: crate::polyring::MonomialOrder,
        f: &[Term<F>],
        c: &F::Elem,
        m: &Monomial,
        g: &[Term<F>],
    ) -> Vec<Term<F>> {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let mut gm = g.first().map(|t| t.mono.mul(m));
        while i < f.len() {
            let Some(gmono) = gm else { break };
            match order.cmp(&f[i].mono, &gmono) {
                Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: field.neg(&field.mul(c, &g[j].coeff)),
                        mono: gmono,
                    });
                    j += 1;
                    gm = g.get(j).map(|t| t.mono.mul(m));
                }
                Ordering::Equal => {
                    let v = field.sub_mul(&f[i].coeff, c, &g[j].coeff);
                    if !field.is_zero(&v) {
                        out.push(Term { coeff: v, mono: gmono });
                    }
                    i += 1;
                    j += 1;
                    gm = g.get(j).map(|t| t.mono.mul(m));
                }
            }
        }
        out.extend(f[i..].iter().cloned());
        while let Some(gmono) = gm {
            out.push(Term {
                coeff: field.neg(&field.mul(c, &g[j].coeff)),
                mono: gmono,
            });
            j += 1;
            gm = g.get(j).map(|t| t.mono.mul(m));
        }
        out
    }
}
