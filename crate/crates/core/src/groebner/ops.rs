use super::engine::Engine;
use super::ideal::Ideal;
use super::GbError;
use crate::polyring::{
    Field, InnerOrder, Monomial, MonomialOrder, Poly, PolyError, PolyRing, RingRef, Term,
};

/// Upper bound on enumerated standard monomials.
const MAX_QUOTIENT_SIZE: u64 = 50_000_000;

fn inner_of(order: MonomialOrder) -> InnerOrder {
    match order {
        MonomialOrder::Lex => InnerOrder::Lex,
        MonomialOrder::BlockElim { inner, .. } => inner,
        MonomialOrder::GrevLex => InnerOrder::GrevLex,
    }
}

fn inner_as_order(inner: InnerOrder) -> MonomialOrder {
    match inner {
        InnerOrder::Lex => MonomialOrder::Lex,
        InnerOrder::GrevLex => MonomialOrder::GrevLex,
    }
}

/// `I ∩ k[remaining variables]`, returned in the subring on the remaining
/// variables (same sequence, plain inner order of the ring).
pub fn eliminate<F: Field>(
    ideal: &Ideal<F>,
    vars: &[usize],
    engine: &Engine,
) -> Result<Ideal<F>, GbError> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let mut elim: Vec<usize> = vars.to_vec();
    elim.sort_unstable();
    elim.dedup();
    if let Some(&bad) = elim.iter().find(|&&v| v >= n) {
        return Err(GbError::Invalid(format!("variable index {bad} out of range")));
    }
    let inner = inner_of(ring.order());
    let sub_order = inner_as_order(inner);
    let keep: Vec<usize> = (0..n).filter(|v| !elim.contains(v)).collect();
    let (sub, sub_map) = ring.subring(&keep, sub_order)?;
    if elim.is_empty() {
        return ideal.map_into(&sub, &sub_map);
    }
    if ideal.has_unit_generator() {
        return Ok(Ideal::unit(&sub));
    }
    if ideal.is_zero_ideal() {
        return Ok(Ideal::zero(&sub));
    }

    let k = elim.len();
    let mut sequence = elim.clone();
    sequence.extend(keep.iter().copied());
    let order = MonomialOrder::BlockElim { k, inner };
    let (perm, perm_map) = ring.permuted(&sequence, order)?;
    let moved = ideal.map_into(&perm, &perm_map)?;
    let gb = moved.groebner_basis(order, engine)?;

    let elim_mask: u32 = (0..k).fold(0, |m, i| m | (1 << i));
    let back: Vec<Option<usize>> = (0..n).map(|i| if i < k { None } else { Some(i - k) }).collect();
    let mut kept = Vec::new();
    for g in gb.iter() {
        if g.support() & elim_mask == 0 {
            kept.push(g.map_into(&sub, &back)?);
        }
    }
    Ok(Ideal::from_basis(&sub, sub_order, kept))
}

/// [`eliminate`] by variable names.
pub fn eliminate_named<F: Field>(
    ideal: &Ideal<F>,
    names: &[&str],
    engine: &Engine,
) -> Result<Ideal<F>, GbError> {
    let idx = names
        .iter()
        .map(|n| ideal.ring().require_var(n))
        .collect::<Result<Vec<_>, PolyError>>()?;
    eliminate(ideal, &idx, engine)
}

/// Ideal in a ring with a leading auxiliary variable `t`, plus the map from
/// the original ring.
fn with_aux<F: Field>(ring: &RingRef<F>) -> Result<(RingRef<F>, Vec<Option<usize>>), GbError> {
    let aux = ring.with_leading_aux("t")?;
    let map = (0..ring.nvars()).map(|i| Some(i + 1)).collect();
    Ok((aux, map))
}

/// Drop the leading auxiliary variable: keep elements of `gb` free of it and
/// move them back into `ring`.
fn drop_aux<F: Field>(gb: &[Poly<F>], ring: &RingRef<F>) -> Result<Vec<Poly<F>>, GbError> {
    let back: Vec<Option<usize>> = (0..=ring.nvars()).map(|i| i.checked_sub(1)).collect();
    gb.iter()
        .filter(|g| g.support() & 1 == 0)
        .map(|g| g.map_into(ring, &back).map_err(GbError::from))
        .collect()
}

fn divide_out_var<F: Field>(g: &Poly<F>, v: usize) -> Poly<F> {
    let e = g.terms().iter().map(|t| t.mono.exponent(v)).min().unwrap_or(0);
    if e == 0 {
        return g.clone();
    }
    let x = Monomial::var(v, e);
    let terms = g
        .terms()
        .iter()
        .map(|t| Term {
            coeff: t.coeff.clone(),
            mono: t.mono.div(&x).expect("divisible"),
        })
        .collect();
    Poly::from_sorted_terms(g.ring(), terms)
}

/// `I : x_v^∞` for homogeneous `I`: with `x_v` last in grevlex, divide every
/// basis element by its largest power of `x_v`.
fn saturate_homogeneous_var<F: Field>(
    ideal: &Ideal<F>,
    v: usize,
    engine: &Engine,
) -> Result<Ideal<F>, GbError> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let mut sequence: Vec<usize> = (0..n).filter(|&i| i != v).collect();
    sequence.push(v);
    let (perm, map) = ring.permuted(&sequence, MonomialOrder::GrevLex)?;
    let moved = ideal.map_into(&perm, &map)?;
    let gb = moved.groebner_basis(MonomialOrder::GrevLex, engine)?;
    let mut back = vec![None; n];
    for (new, &old) in sequence.iter().enumerate() {
        back[new] = Some(old);
    }
    let mut changed = false;
    let mut gens = Vec::with_capacity(gb.len());
    for g in gb.iter() {
        changed |= g.terms().iter().all(|t| t.mono.exponent(n - 1) > 0);
        gens.push(divide_out_var(g, n - 1).map_into(ring, &back)?);
    }
    if !changed {
        return Ok(ideal.clone());
    }
    Ok(Ideal::new(ring, gens))
}

/// `I : f^∞` via `I + <t f - 1>` with `t` eliminated.
fn saturate_rabinowitsch<F: Field>(
    ideal: &Ideal<F>,
    f: &Poly<F>,
    engine: &Engine,
) -> Result<Ideal<F>, GbError> {
    let ring = ideal.ring();
    let (aux, map) = with_aux(ring)?;
    let moved = ideal.map_into(&aux, &map)?;
    let t = Poly::var(&aux, 0);
    let tf = t.mul(&f.map_into(&aux, &map)?)?.sub(&Poly::one(&aux))?;
    let full = moved.with_generators(vec![tf]);
    let gb = full.groebner_basis(aux.order(), engine)?;
    Ok(Ideal::new(ring, drop_aux(&gb, ring)?))
}

/// The saturation `I : f^∞`.
pub fn saturate<F: Field>(ideal: &Ideal<F>, f: &Poly<F>, engine: &Engine) -> Result<Ideal<F>, GbError> {
    if f.is_zero() {
        return Err(GbError::Invalid("saturation by the zero polynomial".into()));
    }
    let ring = ideal.ring();
    let f = if PolyRing::same(f.ring(), ring) {
        f.clone()
    } else {
        f.rename_into(ring)?
    };
    if ideal.has_unit_generator() || ideal.is_zero_ideal() || f.is_constant() {
        return Ok(ideal.clone());
    }
    if f.is_monomial() && ideal.is_homogeneous() {
        let m = *f.leading_monomial().expect("nonzero");
        let mut cur = ideal.clone();
        for v in 0..ring.nvars() {
            if m.exponent(v) > 0 {
                cur = saturate_homogeneous_var(&cur, v, engine)?;
                if cur.is_unit(engine)? {
                    return Ok(Ideal::unit(ring));
                }
            }
        }
        return cur.reduced(engine);
    }
    let sat = saturate_rabinowitsch(ideal, &f, engine)?;
    sat.reduced(engine)
}

/// `I ∩ J` by eliminating `t` from `t I + (1 - t) J`.
pub fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>, engine: &Engine) -> Result<Ideal<F>, GbError> {
    let ring = i.ring();
    let j = if PolyRing::same(j.ring(), ring) {
        j.clone()
    } else {
        j.rename_into(ring)?
    };
    if i.has_unit_generator() {
        return Ok(j);
    }
    if j.has_unit_generator() {
        return Ok(i.clone());
    }
    if i.is_zero_ideal() || j.is_zero_ideal() {
        return Ok(Ideal::zero(ring));
    }
    if j.contains_ideal(i, engine)? {
        return Ok(i.clone());
    }
    if i.contains_ideal(&j, engine)? {
        return Ok(j);
    }
    let (aux, map) = with_aux(ring)?;
    let t = Poly::var(&aux, 0);
    let one_minus_t = Poly::one(&aux).sub(&t)?;
    let mut gens = Vec::with_capacity(i.generators().len() + j.generators().len());
    for g in i.generators() {
        gens.push(t.mul(&g.map_into(&aux, &map)?)?);
    }
    for g in j.generators() {
        gens.push(one_minus_t.mul(&g.map_into(&aux, &map)?)?);
    }
    let full = Ideal::new(&aux, gens);
    let gb = full.groebner_basis(aux.order(), engine)?;
    Ideal::new(ring, drop_aux(&gb, ring)?).reduced(engine)
}

/// `I : J^∞`, the intersection of the saturations by the generators of `J`.
pub fn saturate_by_ideal<F: Field>(
    ideal: &Ideal<F>,
    by: &Ideal<F>,
    engine: &Engine,
) -> Result<Ideal<F>, GbError> {
    if by.is_zero_ideal() {
        return Err(GbError::Invalid("saturation by the zero ideal".into()));
    }
    if ideal.has_unit_generator() {
        return Ok(ideal.clone());
    }
    let mut acc: Option<Ideal<F>> = None;
    for g in by.generators() {
        if ideal.contains(g, engine)? {
            continue;
        }
        let s = saturate(ideal, g, engine)?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s, engine)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(ideal.ring())))
}

/// `f ∈ √I`, decided by whether `1 ∈ I + <t f - 1>`.
pub fn radical_membership<F: Field>(f: &Poly<F>, ideal: &Ideal<F>, engine: &Engine) -> Result<bool, GbError> {
    if f.is_zero() || ideal.has_unit_generator() {
        return Ok(true);
    }
    let ring = ideal.ring();
    let f = if PolyRing::same(f.ring(), ring) {
        f.clone()
    } else {
        f.rename_into(ring)?
    };
    if ideal.is_zero_ideal() {
        return Ok(false);
    }
    if ideal.contains(&f, engine)? {
        return Ok(true);
    }
    let (aux, map) = with_aux(ring)?;
    let aux = aux.with_order(MonomialOrder::GrevLex);
    let t = Poly::var(&aux, 0);
    let tf = t.mul(&f.map_into(&aux, &map)?)?.sub(&Poly::one(&aux))?;
    let full = ideal.map_into(&aux, &map)?.with_generators(vec![tf]);
    full.is_unit(engine)
}

/// `V(inner) ⊆ V(outer)`: every generator of `outer` lies in `√inner`.
pub fn variety_contains<F: Field>(
    outer: &Ideal<F>,
    inner: &Ideal<F>,
    engine: &Engine,
) -> Result<bool, GbError> {
    if inner.has_unit_generator() {
        return Ok(true);
    }
    for g in outer.generators() {
        if !radical_membership(g, inner, engine)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn max_independent(masks: &[u32], n: usize) -> usize {
    fn go(masks: &[u32], n: usize, idx: usize, cur: u32, size: usize, best: &mut usize) {
        if size + (n - idx) <= *best {
            return;
        }
        if idx == n {
            *best = size;
            return;
        }
        let with = cur | (1 << idx);
        if !masks.iter().any(|&m| m & !with == 0) {
            go(masks, n, idx + 1, with, size + 1, best);
        }
        go(masks, n, idx + 1, cur, size, best);
    }
    let mut best = 0;
    go(masks, n, 0, 0, 0, &mut best);
    best
}

/// Krull dimension of `V(I)` in affine space; `-1` for the unit ideal.
pub fn dimension<F: Field>(ideal: &Ideal<F>, engine: &Engine) -> Result<i64, GbError> {
    let n = ideal.ring().nvars();
    if ideal.is_zero_ideal() {
        return Ok(n as i64);
    }
    let gb = ideal.groebner_basis(MonomialOrder::GrevLex, engine)?;
    if gb.len() == 1 && gb[0].is_unit() {
        return Ok(-1);
    }
    let mut masks: Vec<u32> = gb
        .iter()
        .map(|g| g.leading_monomial().expect("nonzero").support())
        .collect();
    masks.sort_unstable();
    masks.dedup();
    Ok(max_independent(&masks, n) as i64)
}

/// `dim_k k[x]/I` for a zero-dimensional ideal: the number of standard
/// monomials of its grevlex basis.
pub fn quotient_basis_size<F: Field>(ideal: &Ideal<F>, engine: &Engine) -> Result<u64, GbError> {
    let n = ideal.ring().nvars();
    if ideal.is_zero_ideal() {
        return if n == 0 { Ok(1) } else { Err(GbError::NotZeroDimensional) };
    }
    let gb = ideal.groebner_basis(MonomialOrder::GrevLex, engine)?;
    if gb.len() == 1 && gb[0].is_unit() {
        return Ok(0);
    }
    let lms: Vec<Monomial> = gb.iter().map(|g| *g.leading_monomial().expect("nonzero")).collect();
    for v in 0..n {
        let pure = lms.iter().any(|m| m.support() == 1 << v);
        if !pure {
            return Err(GbError::NotZeroDimensional);
        }
    }
    fn count(lms: &[Monomial], n: usize, v: usize, m: Monomial, total: &mut u64) -> Result<(), GbError> {
        if v == n {
            *total += 1;
            if *total > MAX_QUOTIENT_SIZE {
                return Err(GbError::Budget("quotient basis too large to enumerate".into()));
            }
            return Ok(());
        }
        let mut cur = m;
        loop {
            if lms.iter().any(|l| l.divides(&cur)) {
                return Ok(());
            }
            count(lms, n, v + 1, cur, total)?;
            cur = cur.mul(&Monomial::var(v, 1));
        }
    }
    let mut total = 0;
    count(&lms, n, 0, Monomial::one(), &mut total)?;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PrimeField, Rationals};
    use crate::textio::parse_polynomial;

    fn ring(vars: &[&str]) -> RingRef<Rationals> {
        PolyRing::new(Rationals, vars, MonomialOrder::GrevLex).unwrap()
    }

    fn ideal(r: &RingRef<Rationals>, gens: &[&str]) -> Ideal<Rationals> {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect())
    }

    fn same(a: &Ideal<Rationals>, b: &Ideal<Rationals>) -> bool {
        a.same_ideal(b, &Engine::default()).unwrap()
    }

    #[test]
    fn twisted_cubic_eliminant() {
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&r, &["y - x^2", "z - x^3"]);
        let e = eliminate(&i, &[0], &Engine::default()).unwrap();
        assert_eq!(e.ring().vars(), &["y", "z"]);
        assert!(same(&e, &ideal(e.ring(), &["y^3 - z^2"])));
    }

    #[test]
    fn eliminate_trivial_cases() {
        let r = ring(&["x", "y"]);
        let eng = Engine::default();
        let unit = eliminate(&ideal(&r, &["1"]), &[0], &eng).unwrap();
        assert!(unit.has_unit_generator());
        let i = ideal(&r, &["x*y - 1"]);
        let same_i = eliminate(&i, &[], &eng).unwrap();
        assert!(same(&same_i, &i));
        assert!(eliminate(&i, &[0], &eng).unwrap().is_zero_ideal());
    }

    #[test]
    fn saturation_examples() {
        let r = ring(&["x", "y"]);
        let eng = Engine::default();
        let x = parse_polynomial("x", &r).unwrap();
        let s = saturate(&ideal(&r, &["x^2*y"]), &x, &eng).unwrap();
        assert!(same(&s, &ideal(&r, &["y"])));
        let s = saturate(&ideal(&r, &["x*(x-1)"]), &x, &eng).unwrap();
        assert!(same(&s, &ideal(&r, &["x - 1"])));
        let s = saturate(&ideal(&r, &["x^2"]), &x, &eng).unwrap();
        assert!(s.is_unit(&eng).unwrap());
    }

    #[test]
    fn homogeneous_and_general_saturation_agree() {
        let r = ring(&["x", "y", "z"]);
        let eng = Engine::default();
        let i = ideal(&r, &["x^2*y - x*z^2", "x*y^2*z", "y^3 - x*z^2"]);
        let f = parse_polynomial("x*y", &r).unwrap();
        let fast = saturate(&i, &f, &eng).unwrap();
        let slow = saturate_rabinowitsch(&i, &f, &eng).unwrap();
        assert!(same(&fast, &slow));
    }

    #[test]
    fn intersection_examples() {
        let r = ring(&["x", "y"]);
        let eng = Engine::default();
        let i = intersect(&ideal(&r, &["x"]), &ideal(&r, &["y"]), &eng).unwrap();
        assert!(same(&i, &ideal(&r, &["x*y"])));
        let i = intersect(&ideal(&r, &["x^2 + y"]), &ideal(&r, &["1"]), &eng).unwrap();
        assert!(same(&i, &ideal(&r, &["x^2 + y"])));
        let i = intersect(&ideal(&r, &["x"]), &ideal(&r, &["x"]), &eng).unwrap();
        assert!(same(&i, &ideal(&r, &["x"])));
        let i = intersect(&ideal(&r, &["x - 1"]), &ideal(&r, &["x + 1", "y"]), &eng).unwrap();
        assert!(same(&i, &ideal(&r, &["x^2 - 1", "x*y - y"])));
    }

    #[test]
    fn saturation_by_ideal_examples() {
        let r = ring(&["x", "y", "z"]);
        let eng = Engine::default();
        let s = saturate_by_ideal(&ideal(&r, &["x*y", "x*z"]), &ideal(&r, &["y", "z"]), &eng).unwrap();
        assert!(same(&s, &ideal(&r, &["x"])));
        let i = ideal(&r, &["x^2 - y*z"]);
        assert!(same(&saturate_by_ideal(&i, &ideal(&r, &["1"]), &eng).unwrap(), &i));
        let s = saturate_by_ideal(&ideal(&r, &["1"]), &ideal(&r, &["x"]), &eng).unwrap();
        assert!(s.has_unit_generator());
    }

    #[test]
    fn radical_membership_examples() {
        let r = ring(&["x", "y"]);
        let eng = Engine::default();
        let e = |s| parse_polynomial(s, &r).unwrap();
        assert!(radical_membership(&e("x"), &ideal(&r, &["x^2"]), &eng).unwrap());
        assert!(!radical_membership(&e("y"), &ideal(&r, &["x"]), &eng).unwrap());
        assert!(radical_membership(&e("0"), &ideal(&r, &["x"]), &eng).unwrap());
        assert!(radical_membership(&e("x + y"), &ideal(&r, &["x^3", "y^2 - x^2"]), &eng).unwrap());
    }

    #[test]
    fn variety_containment_examples() {
        let r = ring(&["x", "y"]);
        let eng = Engine::default();
        assert!(variety_contains(&ideal(&r, &["x"]), &ideal(&r, &["x", "y"]), &eng).unwrap());
        assert!(!variety_contains(&ideal(&r, &["x", "y"]), &ideal(&r, &["x"]), &eng).unwrap());
        assert!(variety_contains(&ideal(&r, &["x^2 + y^7"]), &ideal(&r, &["1"]), &eng).unwrap());
    }

    #[test]
    fn dimension_examples() {
        let r = ring(&["x", "y"]);
        let eng = Engine::default();
        assert_eq!(dimension(&ideal(&r, &["x"]), &eng).unwrap(), 1);
        assert_eq!(dimension(&ideal(&r, &[]), &eng).unwrap(), 2);
        assert_eq!(dimension(&ideal(&r, &["1"]), &eng).unwrap(), -1);
        assert_eq!(dimension(&ideal(&r, &["x*y"]), &eng).unwrap(), 1);
        assert_eq!(dimension(&ideal(&r, &["x^2", "y^3"]), &eng).unwrap(), 0);
    }

    #[test]
    fn quotient_size_examples() {
        let r = ring(&["x", "y"]);
        let eng = Engine::default();
        assert_eq!(quotient_basis_size(&ideal(&r, &["x^2", "y^3"]), &eng).unwrap(), 6);
        assert_eq!(quotient_basis_size(&ideal(&r, &["x - 1", "y - 2"]), &eng).unwrap(), 1);
        let r1 = ring(&["x"]);
        assert_eq!(quotient_basis_size(&ideal(&r1, &["x^2 - 1"]), &eng).unwrap(), 2);
        assert_eq!(
            quotient_basis_size(&ideal(&r, &["x"]), &eng),
            Err(GbError::NotZeroDimensional)
        );
    }

    #[test]
    fn prime_field_saturation() {
        let r = PolyRing::new(PrimeField::default(), &["x", "y"], MonomialOrder::GrevLex).unwrap();
        let eng = Engine::default();
        let i = Ideal::new(&r, vec![parse_polynomial("x^3*y - x^2*y^2", &r).unwrap()]);
        let s = saturate(&i, &parse_polynomial("x", &r).unwrap(), &eng).unwrap();
        let expected = Ideal::new(&r, vec![parse_polynomial("x*y - y^2", &r).unwrap()]);
        assert!(s.same_ideal(&expected, &eng).unwrap());
    }
}
