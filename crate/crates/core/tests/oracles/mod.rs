//! Randomized checks of the algebra against independent oracles. Shared by the
//! core property tests and the acceptance target.

#![allow(dead_code)]

use std::collections::HashSet;

use mlsing_core::groebner::{
    dimension, eliminate, normal_form, quotient_basis_size, s_polynomial, saturate, Engine, Ideal,
};
use mlsing_core::polyring::{
    Coefficient, Field, FieldSpec, Monomial, MonomialOrder, Poly, PolyRing, PrimeField, RingRef,
    DEFAULT_PRIME,
};
use mlsing_core::textio::{parse_polynomial, render_polynomial};
use mlsing_core::Rationals;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<(), String>;

/// Arithmetic mod a small prime. Lives here so point counting has a field the
/// library itself does not offer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Small(pub u64);

impl Field for Small {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.0)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (1..self.0).find(|x| (x * a) % self.0 == 1)
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.0);
        let r = ((n % &p) + &p) % &p;
        r.try_into().expect("reduced")
    }
    fn signed_repr(&self, a: &u64) -> (bool, String) {
        if *a > self.0 / 2 {
            (true, (self.0 - a).to_string())
        } else {
            (false, a.to_string())
        }
    }
    fn sample_data<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.0)
    }
    fn to_coefficient(&self, a: &u64) -> Coefficient {
        Coefficient::PrimeField {
            value: *a,
            modulus: self.0,
        }
    }
}

pub fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).expect("default prime")
}

pub fn ring<F: Field>(field: F, vars: &[&str], order: MonomialOrder) -> RingRef<F> {
    PolyRing::new(field, vars, order).expect("ring")
}

/// A random polynomial with up to `terms` terms of total degree at most `deg`
/// and small coefficients.
pub fn random_poly<F: Field, R: Rng>(r: &RingRef<F>, rng: &mut R, terms: usize, deg: u32) -> Poly<F> {
    let n = r.nvars();
    let mut raw = Vec::new();
    for _ in 0..rng.gen_range(1..=terms) {
        let mut exps = vec![0u32; n];
        let mut budget = rng.gen_range(0..=deg);
        while budget > 0 {
            exps[rng.gen_range(0..n)] += 1;
            budget -= 1;
        }
        let c = r.field().from_i64(rng.gen_range(-9..=9));
        raw.push((c, Monomial::from_exponents(&exps)));
    }
    Poly::from_terms(r, raw)
}

fn random_ideal<F: Field, R: Rng>(r: &RingRef<F>, rng: &mut R, max_gens: usize, deg: u32) -> Vec<Poly<F>> {
    let k = rng.gen_range(1..=max_gens);
    (0..k)
        .map(|_| random_poly(r, rng, 4, deg))
        .filter(|p| !p.is_zero())
        .collect()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Reduced-basis invariants on random ideals: every S-polynomial reduces to
/// zero, every generator reduces to zero, the basis is monic and
/// inter-reduced, and shuffling the generators gives the same basis.
pub fn gb_invariants(cases: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orders = [MonomialOrder::GrevLex, MonomialOrder::Lex];
    let mut done = 0;
    while done < cases {
        let order = orders[done % 2];
        let r = ring(fp(), &["x", "y", "z"], order);
        let gens = random_ideal(&r, &mut rng, 3, 3);
        if gens.is_empty() {
            continue;
        }
        done += 1;
        let engine = Engine::unlimited();
        let ideal = Ideal::new(&r, gens.clone());
        let gb = ideal.basis(&engine).map_err(err)?;
        for (i, f) in gb.iter().enumerate() {
            if !r.field().is_one(f.leading_coeff().expect("nonzero")) {
                return Err(format!("case {done}: basis element {f} is not monic"));
            }
            for (j, g) in gb.iter().enumerate().skip(i + 1) {
                let s = s_polynomial(f, g).map_err(err)?;
                if !normal_form(&s, &gb).map_err(err)?.is_zero() {
                    return Err(format!("case {done}: S({i},{j}) does not reduce to zero"));
                }
            }
            for (j, g) in gb.iter().enumerate() {
                if i == j {
                    continue;
                }
                let lm = g.leading_monomial().expect("nonzero");
                if f.terms().iter().any(|t| lm.divides(&t.mono)) {
                    return Err(format!("case {done}: basis is not inter-reduced"));
                }
            }
        }
        for g in &gens {
            if !normal_form(g, &gb).map_err(err)?.is_zero() {
                return Err(format!("case {done}: generator {g} not in its own ideal"));
            }
        }
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        let again = Ideal::new(&r, shuffled).basis(&Engine::unlimited()).map_err(err)?;
        if *again != *gb {
            return Err(format!("case {done}: basis depends on generator order"));
        }
    }
    Ok(())
}

/// `(I : f^∞) : f^∞ = I : f^∞`, and `I` is contained in its saturation.
pub fn saturation_idempotence(cases: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < cases {
        let r = ring(fp(), &["x", "y", "z"], MonomialOrder::GrevLex);
        let gens = random_ideal(&r, &mut rng, 3, 2);
        let f = if rng.gen_bool(0.5) {
            Poly::var(&r, rng.gen_range(0..3))
        } else {
            random_poly(&r, &mut rng, 3, 2)
        };
        if gens.is_empty() || f.is_zero() {
            continue;
        }
        done += 1;
        let engine = Engine::unlimited();
        let ideal = Ideal::new(&r, gens);
        let once = saturate(&ideal, &f, &engine).map_err(err)?;
        let twice = saturate(&once, &f, &engine).map_err(err)?;
        if !once.same_ideal(&twice, &engine).map_err(err)? {
            return Err(format!("case {done}: saturation is not idempotent"));
        }
        if !once.contains_ideal(&ideal, &engine).map_err(err)? {
            return Err(format!("case {done}: ideal not contained in its saturation"));
        }
    }
    Ok(())
}

/// Implicitization of random parametrized curves: the eliminant is nonzero,
/// lies in the graph ideal and vanishes on sampled points of the image.
pub fn elimination_vs_parametrization(cases: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = fp();
    let r = ring(f, &["t", "x", "y"], MonomialOrder::GrevLex);
    let tr = ring(f, &["t"], MonomialOrder::GrevLex);
    let mut done = 0;
    while done < cases {
        let gx = random_poly(&tr, &mut rng, 3, 3);
        let gy = random_poly(&tr, &mut rng, 3, 3);
        if gx.is_constant() && gy.is_constant() {
            continue;
        }
        done += 1;
        let lift = |g: &Poly<PrimeField>| g.map_into(&r, &[Some(0)]).expect("lift");
        let graph = Ideal::new(
            &r,
            vec![
                Poly::var(&r, 1).sub(&lift(&gx)).expect("ring"),
                Poly::var(&r, 2).sub(&lift(&gy)).expect("ring"),
            ],
        );
        let engine = Engine::unlimited();
        let image = eliminate(&graph, &[0], &engine).map_err(err)?;
        if image.is_zero_ideal() {
            return Err(format!("case {done}: eliminant of a curve in the plane is zero"));
        }
        for g in image.generators() {
            let back = g.map_into(&r, &[Some(1), Some(2)]).map_err(err)?;
            if !graph.contains(&back, &engine).map_err(err)? {
                return Err(format!("case {done}: eliminant {g} not in the graph ideal"));
            }
        }
        for _ in 0..20 {
            let t = f.sample_data(&mut rng);
            let x = gx.eval(&[t]).map_err(err)?;
            let y = gy.eval(&[t]).map_err(err)?;
            for g in image.generators() {
                if !f.is_zero(&g.eval(&[x, y]).map_err(err)?) {
                    return Err(format!("case {done}: {g} does not vanish on the image"));
                }
            }
        }
    }
    Ok(())
}

/// Adding the field equations `x^7 - x, y^7 - y` cuts a random ideal down to
/// its rational points over F_7. The result is radical and zero-dimensional,
/// so its quotient dimension must equal the number of points found by brute
/// force.
pub fn point_count_f7(cases: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = Small(7);
    let r = ring(f, &["x", "y"], MonomialOrder::GrevLex);
    let mut done = 0;
    while done < cases {
        let gens = random_ideal(&r, &mut rng, 2, 3);
        if gens.is_empty() {
            continue;
        }
        done += 1;
        let mut all = gens.clone();
        for v in 0..2 {
            let xv = Poly::var(&r, v);
            all.push(xv.pow(7).sub(&xv).expect("ring"));
        }
        let mut points = HashSet::new();
        for a in 0..7u64 {
            for b in 0..7u64 {
                let zero = gens
                    .iter()
                    .all(|g| g.eval(&[a, b]).map(|v| v == 0).unwrap_or(false));
                if zero {
                    points.insert((a, b));
                }
            }
        }
        let engine = Engine::unlimited();
        let ideal = Ideal::new(&r, all);
        let dim = dimension(&ideal, &engine).map_err(err)?;
        let size = quotient_basis_size(&ideal, &engine).map_err(err)?;
        let want_dim = if points.is_empty() { -1 } else { 0 };
        if dim != want_dim || size != points.len() as u64 {
            return Err(format!(
                "case {done}: dimension {dim}, degree {size}, but {} points over F_7",
                points.len()
            ));
        }
    }
    Ok(())
}

fn round_trip_one<F: Field>(r: &RingRef<F>, f: &Poly<F>) -> Outcome {
    let text = render_polynomial(f);
    let back = parse_polynomial(&text, r).map_err(|e| format!("{text}: {e}"))?;
    if back != *f {
        return Err(format!("'{text}' parsed back to '{}'", render_polynomial(&back)));
    }
    Ok(())
}

/// Render then parse random polynomials over fp and over q.
pub fn parser_round_trip(cases: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = ["p0", "p1", "p2", "ps", "b_x", "u10"];
    let rp = ring(fp(), &names, MonomialOrder::GrevLex);
    let rq = ring(Rationals, &names, MonomialOrder::Lex);
    for i in 0..cases {
        if i % 2 == 0 {
            round_trip_one(&rp, &random_poly(&rp, &mut rng, 6, 5))?;
        } else {
            let mut f = random_poly(&rq, &mut rng, 6, 5);
            let den = Rationals.from_i64(rng.gen_range(1..=12));
            f = f.scale(&Rationals.inv(&den).expect("nonzero"));
            round_trip_one(&rq, &f)?;
        }
    }
    Ok(())
}
