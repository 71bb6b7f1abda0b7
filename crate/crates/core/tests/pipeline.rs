use std::sync::Arc;

use mlsing_core::groebner::{variety_contains, Engine, Ideal};
use mlsing_core::pipeline::{
    agrees_mod_p, hadamard_product, jacobian, point_ideal, raw_duality, GeometryContext,
    LikelihoodRing, ModelSpec, PipelineError,
};
use mlsing_core::polyring::{Field, MonomialOrder, Poly, PolyRing, PrimeField, RingRef, DEFAULT_PRIME};
use mlsing_core::textio::{parse_model, parse_polynomial};
use mlsing_core::Rationals;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const DETERMINANTAL: &str = include_str!("../../../models/determinantal.model");
const TERNARY: &str = include_str!("../../../models/ternary.model");
const CUSPIDAL: &str = include_str!("../../../models/cuspidal.model");

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn context<F: Field>(text: &str, field: F) -> GeometryContext<F> {
    let spec = parse_model(text, field).unwrap();
    GeometryContext::new(spec, Arc::new(Engine::unlimited())).unwrap()
}

fn ideal<F: Field>(ring: &RingRef<F>, gens: &[&str]) -> Ideal<F> {
    Ideal::new(
        ring,
        gens.iter().map(|g| parse_polynomial(g, ring).unwrap()).collect(),
    )
}

fn same_variety<F: Field>(a: &Ideal<F>, b: &Ideal<F>, engine: &Engine) -> bool {
    variety_contains(a, b, engine).unwrap() && variety_contains(b, a, engine).unwrap()
}

fn ints<F: Field>(field: &F, xs: &[i64]) -> Vec<F::Elem> {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

#[test]
fn simplex_has_empty_singular_and_data_singular_loci() {
    let spec = ModelSpec::new(fp(), 2, Vec::new(), "simplex").unwrap();
    let ctx = GeometryContext::new(spec, Arc::new(Engine::unlimited())).unwrap();
    assert!(ctx.singular().unwrap().is_unit(ctx.engine()).unwrap());
    assert!(ctx.data_singular_locus().unwrap().is_unit(ctx.engine()).unwrap());
    assert_eq!(ctx.ml_degree(0).unwrap(), 1);
}

#[test]
fn non_homogeneous_models_are_rejected() {
    let r = ModelSpec::primal_ring(fp(), 2).unwrap();
    let f = parse_polynomial("p0^2 - p1", &r).unwrap();
    assert!(matches!(
        ModelSpec::new(fp(), 2, vec![f], "bad"),
        Err(PipelineError::Model(_))
    ));
}

#[test]
fn jacobian_of_the_determinantal_cubic() {
    let ctx = context(DETERMINANTAL, fp());
    let model = ctx.spec().model_ideal();
    let p = ctx.ring().primal().clone();
    let vars: Vec<usize> = (0..p.nvars()).collect();
    let j = jacobian(&model, &vars).unwrap();
    assert_eq!((j.rows(), j.cols()), (2, 5));
    let expected = parse_polynomial("3*p0^2 - p1^2 - p2^2 - p3^2", &p).unwrap();
    assert!(j.row(0).contains(&expected) || j.row(1).contains(&expected));
    assert_eq!(ctx.codimension().unwrap(), 2);
}

#[test]
fn determinantal_cubic_is_singular_at_one_point() {
    let ctx = context(DETERMINANTAL, fp());
    let p = ctx.ring().primal();
    let point = point_ideal(p, &ints(p.field(), &[1, 1, 1, 1, 4])).unwrap();
    assert!(same_variety(ctx.singular().unwrap(), &point, ctx.engine()));
}

#[test]
fn conic_dual_and_biduality() {
    let engine = Engine::unlimited();
    let r = PolyRing::new(Rationals, &["p0", "p1", "p2"], MonomialOrder::GrevLex).unwrap();
    let conic = ideal(&r, &["p0*p2 - p1^2"]);
    let raw = raw_duality(&conic, &engine).unwrap();
    assert_eq!(raw.codim, 1);
    let b = raw.dual.ring().clone();
    assert!(raw.dual.same_ideal(&ideal(&b, &["b1^2 - 4*b0*b2"]), &engine).unwrap());

    let back = raw_duality(&raw.dual, &engine).unwrap().dual;
    let positional: Vec<Option<usize>> = (0..3).map(Some).collect();
    let back = back.map_into(&r, &positional).unwrap();
    assert!(back.same_ideal(&conic, &engine).unwrap());
}

#[test]
fn product_of_two_points() {
    let f = Rationals;
    let lr = LikelihoodRing::new(f, 3).unwrap();
    let engine = Engine::unlimited();
    let third = f.from_ratio(&1.into(), &3.into()).unwrap();
    let x = point_ideal(lr.primal(), &[third.clone(), third.clone(), third.clone(), f.one()]).unwrap();
    let got = hadamard_product(&lr, &x, &lr.normal_point(), &engine).unwrap();
    let want = point_ideal(lr.data(), &ints(&f, &[1, 1, 1, -3])).unwrap();
    assert!(got.same_ideal(&want, &engine).unwrap());
}

fn line_times(point: &[i64]) -> (LikelihoodRing<Rationals>, Ideal<Rationals>) {
    let f = Rationals;
    let lr = LikelihoodRing::new(f, 2).unwrap();
    let engine = Engine::unlimited();
    let line = ideal(lr.primal(), &["p0 + p1 - ps"]);
    let y = point_ideal(lr.dual(), &ints(&f, point)).unwrap();
    let out = hadamard_product(&lr, &line, &y, &engine).unwrap();
    (lr, out)
}

#[test]
fn line_times_a_point_on_the_incidence_hypersurface_is_a_line() {
    let (_, product) = line_times(&[1, 1, -1]);
    let f = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let t0 = f.sample_data(&mut rng);
        let t1 = f.sample_data(&mut rng);
        let sum = f.add(&t0, &t1);
        let image = [t0.clone(), f.neg(&f.add(&t0, &sum)), sum];
        for g in product.generators() {
            assert!(f.is_zero(&g.eval(&image).unwrap()), "{g}");
        }
    }
    assert!(!product.is_unit(&Engine::unlimited()).unwrap());
}

#[test]
fn line_times_a_generic_point_is_a_point() {
    let (lr, product) = line_times(&[1, 2, -3]);
    let want = point_ideal(lr.data(), &ints(&Rationals, &[1, -4, 3])).unwrap();
    assert!(same_variety(&product, &want, &Engine::unlimited()));
}

#[test]
fn ternary_cubic_over_both_fields() {
    let q = context(TERNARY, Rationals);
    let m = context(TERNARY, fp());
    let dq = q.data_singular_locus().unwrap();
    let dm = m.data_singular_locus().unwrap();
    assert!(agrees_mod_p(dq, dm, m.engine()).unwrap());

    let u = q.ring().data();
    let want = ideal(u, &["2*u0 - u1 - u2", "u0 + u1 + u2 + us"]);
    assert!(same_variety(dq, &want, q.engine()));

    assert_eq!(q.ml_degree(0).unwrap(), 5);
    assert_eq!(m.ml_degree_checked(&[0, 1]).unwrap(), 5);

    let report = m.theorem_check().unwrap();
    assert!(report.lower_contained && !report.lower_equal);
    assert!(report.upper_contains && report.upper_equal);
}

#[test]
fn ternary_lower_bound_is_one_point() {
    let ctx = context(TERNARY, Rationals);
    let u = ctx.ring().data();
    let want = point_ideal(u, &ints(&Rationals, &[1, 1, 1, -3])).unwrap();
    assert!(same_variety(ctx.lower_bound().unwrap(), &want, ctx.engine()));
}

#[test]
fn cuspidal_cubic_has_empty_loci() {
    let ctx = context(CUSPIDAL, fp());
    assert!(ctx.singular().unwrap().is_unit(ctx.engine()).unwrap());
    assert!(ctx.data_singular_locus().unwrap().is_unit(ctx.engine()).unwrap());
    let dual = ctx.dual().unwrap();
    let cubic = dual.generators().iter().any(|g: &Poly<PrimeField>| g.degree() == Some(3));
    assert!(cubic);
}

fn product<F: Field>(ring: &RingRef<F>) -> Poly<F> {
    (0..ring.nvars()).fold(Poly::one(ring), |acc, i| acc.mul(&Poly::var(ring, i)).unwrap())
}

#[test]
fn simplex_conormal_dual_and_likelihood() {
    let spec = ModelSpec::new(Rationals, 3, Vec::new(), "simplex").unwrap();
    let ctx = GeometryContext::new(spec, Arc::new(Engine::unlimited())).unwrap();
    let engine = ctx.engine();
    let lr = ctx.ring();
    assert_eq!(ctx.codimension().unwrap(), 1);

    let pb = lr.primal_dual();
    let want = ideal(pb, &["p0 + p1 + p2 - ps", "b0 - b1", "b1 - b2", "b2 + bs"]);
    assert!(same_variety(ctx.conormal().unwrap(), &want, engine));
    assert!(same_variety(ctx.dual().unwrap(), &lr.normal_point(), engine));

    let full = lr.full();
    let e = ctx.extended_likelihood().unwrap();
    let sat = mlsing_core::groebner::saturate(e, &product(full), engine).unwrap();
    let elim: Vec<usize> = (0..2 * lr.width()).collect();
    let image = mlsing_core::groebner::eliminate(&sat, &elim, engine).unwrap();
    let sum = Ideal::new(image.ring(), vec![Poly::var(image.ring(), 0)
        .add(&Poly::var(image.ring(), 1)).unwrap()
        .add(&Poly::var(image.ring(), 2)).unwrap()
        .add(&Poly::var(image.ring(), 3)).unwrap()]);
    assert!(image.same_ideal(&sum, engine).unwrap());
}

#[test]
fn conormal_contains_the_model_and_the_incidence_form() {
    let ctx = context(TERNARY, fp());
    let engine = ctx.engine();
    let lr = ctx.ring();
    let n = ctx.conormal().unwrap();
    let model = ctx.spec().model_ideal().rename_into(lr.primal_dual()).unwrap();
    assert!(n.contains_ideal(&model, engine).unwrap());
    let w = lr.width();
    let pb = lr.primal_dual();
    let incidence = (0..w).fold(Poly::zero(pb), |acc, i| {
        acc.add(&Poly::var(pb, i).mul(&Poly::var(pb, w + i)).unwrap()).unwrap()
    });
    assert!(n.contains(&incidence, engine).unwrap());
}

#[test]
fn data_sum_vanishes_on_the_data_singular_locus() {
    for text in [DETERMINANTAL, TERNARY] {
        let ctx = context(text, fp());
        let dsl = ctx.data_singular_locus().unwrap();
        assert!(!dsl.is_unit(ctx.engine()).unwrap());
        let sum = ctx.ring().data_sum();
        assert!(mlsing_core::groebner::radical_membership(&sum, dsl, ctx.engine()).unwrap());
    }
}

#[test]
fn ternary_ml_degree_is_seed_independent() {
    let ctx = context(TERNARY, fp());
    let degrees: Vec<u64> = (0..3).map(|s| ctx.ml_degree(s).unwrap()).collect();
    assert_eq!(degrees, vec![5, 5, 5]);
}

#[test]
fn smooth_off_the_boundary_collapses_both_bounds() {
    let ctx = context(CUSPIDAL, fp());
    let report = ctx.theorem_check().unwrap();
    assert!(report.lower_contained && report.lower_equal);
    assert!(report.upper_contains && report.upper_equal);
    assert_eq!(report.dims.dsl, -1);
}

#[test]
fn determinantal_cubic_biduality() {
    let ctx = context(DETERMINANTAL, fp());
    let engine = ctx.engine();
    let dual = ctx.dual().unwrap();
    let back = raw_duality(dual, engine).unwrap().dual;
    let positional: Vec<Option<usize>> = (0..5).map(Some).collect();
    let back = back.map_into(ctx.ring().primal(), &positional).unwrap();
    assert!(same_variety(&back, &ctx.spec().model_ideal(), engine));
}
