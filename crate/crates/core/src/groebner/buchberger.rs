//! Buchberger's algorithm with the Gebauer-Moeller installation of the
//! product and chain criteria.

use std::cmp::Ordering;

use super::engine::{Engine, GbStats, Selection};
use super::GbError;
use crate::polyring::{Field, Monomial, MonomialOrder, Poly, PolyRing, RingRef, Term};

/// Reducer view: leading monomial, inverse leading coefficient, terms.
struct Reducer<'a, F: Field> {
    lm: Monomial,
    inv_lc: Option<F::Elem>,
    terms: &'a [Term<F>],
    sugar: u32,
}

/// Full reduction of `terms` by `reducers`; the highest reducible term is
/// reduced first, divisors tried in sequence. Returns the remainder and its
/// sugar.
fn reduce_terms<F: Field>(
    field: &F,
    order: MonomialOrder,
    terms: Vec<Term<F>>,
    mut sugar: u32,
    reducers: &[Reducer<'_, F>],
    max_terms: usize,
    stats: &mut GbStats,
) -> Result<(Vec<Term<F>>, u32), GbError> {
    let mut rest = terms;
    let mut start = 0usize;
    let mut out: Vec<Term<F>> = Vec::new();
    while start < rest.len() {
        let lead = &rest[start];
        let hit = reducers.iter().find(|r| r.lm.divides(&lead.mono));
        match hit {
            None => {
                out.push(lead.clone());
                start += 1;
            }
            Some(r) => {
                let q = lead.mono.div(&r.lm).expect("divisible");
                let c = match &r.inv_lc {
                    None => lead.coeff.clone(),
                    Some(inv) => field.mul(&lead.coeff, inv),
                };
                sugar = sugar.max(q.degree() + r.sugar);
                rest = Poly::sub_scaled_tail(field, order, &rest[start + 1..], &c, &q, &r.terms[1..]);
                start = 0;
                let size = rest.len() + out.len();
                stats.max_intermediate_terms = stats.max_intermediate_terms.max(size as u64);
                if size > max_terms {
                    return Err(GbError::Budget(format!(
                        "intermediate polynomial with {size} terms exceeds the term budget"
                    )));
                }
            }
        }
    }
    Ok((out, sugar))
}

fn reducer_view<F: Field>(p: &Poly<F>, sugar: u32) -> Reducer<'_, F> {
    let field = p.field();
    let lc = p.leading_coeff().expect("nonzero reducer");
    Reducer {
        lm: *p.leading_monomial().expect("nonzero reducer"),
        inv_lc: if field.is_one(lc) {
            None
        } else {
            Some(field.inv(lc).expect("nonzero"))
        },
        terms: p.terms(),
        sugar,
    }
}

/// Remainder of `f` on division by `divisors`: `f - r` lies in the ideal
/// they generate and no term of `r` is divisible by a leading monomial.
pub fn normal_form<F: Field>(f: &Poly<F>, divisors: &[Poly<F>]) -> Result<Poly<F>, GbError> {
    for g in divisors {
        if !PolyRing::same(g.ring(), f.ring()) {
            return Err(GbError::Poly(crate::polyring::PolyError::RingMismatch));
        }
    }
    let views: Vec<Reducer<'_, F>> = divisors
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| reducer_view(g, 0))
        .collect();
    let mut stats = GbStats::default();
    let (terms, _) = reduce_terms(
        f.field(),
        f.ring().order(),
        f.terms().to_vec(),
        0,
        &views,
        usize::MAX,
        &mut stats,
    )?;
    Ok(Poly::from_sorted_terms(f.ring(), terms))
}

/// `(lcm/lt(f)) f - (lcm/lt(g)) g` for the leading monomials' lcm.
pub fn s_polynomial<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<Poly<F>, GbError> {
    if f.is_zero() || g.is_zero() {
        return Err(GbError::ZeroInput);
    }
    if !PolyRing::same(f.ring(), g.ring()) {
        return Err(GbError::Poly(crate::polyring::PolyError::RingMismatch));
    }
    let field = f.field();
    let (fm, gm) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let lcm = fm.lcm(gm);
    let a = f.mul_term(
        &field.inv(f.leading_coeff().unwrap()).unwrap(),
        &lcm.div(fm).unwrap(),
    );
    let b = g.mul_term(
        &field.inv(g.leading_coeff().unwrap()).unwrap(),
        &lcm.div(gm).unwrap(),
    );
    Ok(a.sub(&b)?)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct State<'e, F: Field> {
    ring: RingRef<F>,
    order: MonomialOrder,
    engine: &'e Engine,
    polys: Vec<Poly<F>>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GbStats,
}

impl<'e, F: Field> State<'e, F> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("nonzero basis element")
    }

    fn reduce(&mut self, terms: Vec<Term<F>>, sugar: u32) -> Result<(Vec<Term<F>>, u32), GbError> {
        let views: Vec<Reducer<'_, F>> = self
            .polys
            .iter()
            .zip(self.sugar.iter())
            .zip(self.active.iter())
            .filter(|(_, &a)| a)
            .map(|((p, &s), _)| reducer_view(p, s))
            .collect();
        reduce_terms(
            self.ring.field(),
            self.order,
            terms,
            sugar,
            &views,
            self.engine.budget().max_terms,
            &mut self.stats,
        )
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let si = self.sugar[i] + lcm.degree() - self.lm(i).degree();
        let sj = self.sugar[j] + lcm.degree() - self.lm(j).degree();
        si.max(sj)
    }

    /// Gebauer-Moeller update for the new element `h`.
    fn install(&mut self, h: usize) {
        let hm = *self.lm(h);
        // new pairs (g, h)
        let mut cands: Vec<(usize, Monomial, bool)> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| {
                let gm = self.lm(g);
                (g, gm.lcm(&hm), gm.is_coprime(&hm))
            })
            .collect();
        self.stats.pairs_considered += cands.len() as u64;

        // chain criterion among the new pairs: drop (g,h) when another
        // candidate's lcm properly divides it, keeping one of equal lcms
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::with_capacity(cands.len());
        let mut idx = 0;
        while idx < cands.len() {
            let (g, lcm, coprime) = cands[idx];
            let dominated = !coprime
                && (cands[idx + 1..].iter().any(|(_, l, _)| l.divides(&lcm))
                    || kept.iter().any(|(_, l, _)| l.divides(&lcm)));
            if dominated {
                self.stats.pairs_pruned += 1;
            } else {
                kept.push((g, lcm, coprime));
            }
            idx += 1;
        }
        cands.clear();

        // product criterion
        let mut fresh = Vec::new();
        for (g, lcm, coprime) in kept {
            if coprime {
                self.stats.pairs_pruned += 1;
            } else {
                let sugar = self.pair_sugar(g, h, &lcm);
                fresh.push(Pair { i: g, j: h, lcm, sugar });
            }
        }

        // chain criterion on old pairs
        let before = self.pairs.len();
        let polys = &self.polys;
        let lm = |k: usize| *polys[k].leading_monomial().unwrap();
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && lm(p.i).lcm(&hm) != p.lcm
                && lm(p.j).lcm(&hm) != p.lcm)
        });
        self.stats.pairs_pruned += (before - self.pairs.len()) as u64;

        // elements whose leading monomial h divides leave the basis
        for g in 0..h {
            if self.active[g] && hm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.pairs.extend(fresh);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let by_lcm_degree = self.engine.selection() == Selection::LcmDegree;
        let key = |p: &Pair| {
            if by_lcm_degree {
                p.lcm.degree()
            } else {
                p.sugar
            }
        };
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let c = key(a)
                .cmp(&key(b))
                .then_with(|| order.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if c == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    /// Insert a new (already reduced, nonzero) element. Returns true if the
    /// ideal turned out to be the unit ideal.
    fn push(&mut self, terms: Vec<Term<F>>, sugar: u32) -> bool {
        let p = Poly::from_sorted_terms(&self.ring, terms).monic();
        let unit = p.is_unit();
        self.polys.push(p);
        self.sugar.push(sugar);
        self.active.push(true);
        if !unit {
            self.install(self.polys.len() - 1);
        }
        unit
    }
}

/// Reduced Groebner basis of the ideal generated by `gens` under the order
/// of their ring. Output is sorted by increasing leading monomial.
pub(crate) fn reduced_basis<F: Field>(
    gens: &[Poly<F>],
    engine: &Engine,
) -> Result<(Vec<Poly<F>>, GbStats), GbError> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return Ok((Vec::new(), GbStats::default()));
    };
    let ring = first.ring().clone();
    let order = ring.order();
    let mut st = State {
        ring: ring.clone(),
        order,
        engine,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: GbStats {
            bases_computed: 1,
            ..GbStats::default()
        },
    };

    let mut input: Vec<&Poly<F>> = gens.iter().filter(|g| !g.is_zero()).collect();
    input.sort_by(|a, b| {
        order
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            .then_with(|| a.len().cmp(&b.len()))
    });
    let mut unit = false;
    for g in input {
        if !PolyRing::same(g.ring(), &ring) {
            return Err(GbError::Poly(crate::polyring::PolyError::RingMismatch));
        }
        let sugar = g.degree().unwrap_or(0);
        let (terms, sugar) = st.reduce(g.terms().to_vec(), sugar)?;
        if terms.is_empty() {
            st.stats.reductions_to_zero += 1;
            continue;
        }
        if st.push(terms, sugar) {
            unit = true;
            break;
        }
    }

    let mut processed = 0u64;
    while !unit {
        let Some(pair) = st.select() else { break };
        processed += 1;
        if processed > engine.budget().max_pairs {
            return Err(GbError::Budget(format!(
                "more than {} critical pairs",
                engine.budget().max_pairs
            )));
        }
        if processed.is_multiple_of(64) {
            engine.check_time()?;
        }
        let s = s_polynomial(&st.polys[pair.i], &st.polys[pair.j])?;
        let (terms, sugar) = st.reduce(s.into_terms(), pair.sugar)?;
        if terms.is_empty() {
            st.stats.reductions_to_zero += 1;
            continue;
        }
        if st.push(terms, sugar) {
            unit = true;
        }
    }
    engine.check_time()?;

    if unit {
        return Ok((vec![Poly::one(&ring)], st.stats));
    }

    // minimal basis: the active set; then inter-reduce tails
    let mut basis: Vec<Poly<F>> = st
        .polys
        .iter()
        .zip(st.active.iter())
        .filter(|(_, &a)| a)
        .map(|(p, _)| p.clone())
        .collect();
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut reduced = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<Reducer<'_, F>> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| reducer_view(p, 0))
            .collect();
        let lead = basis[k].terms()[0].clone();
        let (tail, _) = reduce_terms(
            ring.field(),
            order,
            basis[k].terms()[1..].to_vec(),
            0,
            &others,
            engine.budget().max_terms,
            &mut st.stats,
        )?;
        let mut terms = Vec::with_capacity(tail.len() + 1);
        terms.push(lead);
        terms.extend(tail);
        reduced.push(Poly::from_sorted_terms(&ring, terms));
    }
    Ok((reduced, st.stats))
}
