use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::geometry::{
    codimension, conormal_ideal, dual_ideal, hadamard_minors, hadamard_product, product_of_vars,
    singular_ideal,
};
use super::spec::{LikelihoodRing, ModelSpec};
use super::PipelineError;
use crate::groebner::{
    dimension, eliminate, quotient_basis_size, saturate, variety_contains, Engine, GbError, Ideal,
};
use crate::polyring::{Binding, Field, Poly};

/// Attempts per seed before a degenerate fiber is reported.
const ML_ATTEMPTS: usize = 5;

/// Projective dimensions (`-1` for empty) of the varieties in the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremDims {
    pub sing: i64,
    pub dual: i64,
    pub dsl: i64,
    pub hadamard: i64,
}

/// Outcome of checking both inclusions of the data-singular-locus bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub lower_contained: bool,
    pub lower_equal: bool,
    pub upper_contains: bool,
    pub upper_equal: bool,
    pub dims: TheoremDims,
    /// Expected dimension of the upper bound; `None` when a factor is empty.
    pub edim: Option<i64>,
    /// True when `edim < 0`: the product is expected to be empty but may not be.
    pub edim_possibly_empty: bool,
}

fn time<T>(what: &str, f: impl FnOnce() -> Result<T, PipelineError>) -> Result<T, PipelineError> {
    let started = Instant::now();
    let out = f();
    log::info!("{what}: {:.2?}", started.elapsed());
    out
}

fn projdim<F: Field>(i: &Ideal<F>, engine: &Engine) -> Result<i64, PipelineError> {
    let d = dimension(i, engine)?;
    Ok(if d <= 0 { -1 } else { d - 1 })
}

/// A model with lazily computed pipeline artifacts.
pub struct GeometryContext<F: Field> {
    spec: ModelSpec<F>,
    ring: LikelihoodRing<F>,
    engine: Arc<Engine>,
    model_ideal: Ideal<F>,
    codim: OnceLock<usize>,
    singular_full: OnceLock<Ideal<F>>,
    singular: OnceLock<Ideal<F>>,
    conormal: OnceLock<Ideal<F>>,
    dual: OnceLock<Ideal<F>>,
    extended: OnceLock<Ideal<F>>,
    dsl: OnceLock<Ideal<F>>,
    lower: OnceLock<Ideal<F>>,
    upper: OnceLock<Ideal<F>>,
    ml_degrees: Mutex<BTreeMap<u64, u64>>,
}

fn cached<T>(
    cell: &OnceLock<T>,
    f: impl FnOnce() -> Result<T, PipelineError>,
) -> Result<&T, PipelineError> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = f()?;
    Ok(cell.get_or_init(|| v))
}

impl<F: Field> GeometryContext<F> {
    pub fn new(spec: ModelSpec<F>, engine: Arc<Engine>) -> Result<Self, PipelineError> {
        let ring = LikelihoodRing::new(spec.field().clone(), spec.states())?;
        let model_ideal = spec.model_ideal().rename_into(ring.primal())?;
        Ok(GeometryContext {
            spec,
            ring,
            engine,
            model_ideal,
            codim: OnceLock::new(),
            singular_full: OnceLock::new(),
            singular: OnceLock::new(),
            conormal: OnceLock::new(),
            dual: OnceLock::new(),
            extended: OnceLock::new(),
            dsl: OnceLock::new(),
            lower: OnceLock::new(),
            upper: OnceLock::new(),
            ml_degrees: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn spec(&self) -> &ModelSpec<F> {
        &self.spec
    }

    pub fn ring(&self) -> &LikelihoodRing<F> {
        &self.ring
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    /// Model equations plus the sum relation, in the primal block.
    pub fn model_ideal(&self) -> &Ideal<F> {
        &self.model_ideal
    }

    pub fn codimension(&self) -> Result<usize, PipelineError> {
        cached(&self.codim, || codimension(&self.model_ideal, &self.engine)).copied()
    }

    /// Jacobian minors plus the model ideal: every singular point.
    pub fn singular_full(&self) -> Result<&Ideal<F>, PipelineError> {
        cached(&self.singular_full, || {
            let c = self.codimension()?;
            time("singular locus", || singular_ideal(&self.model_ideal, c, &self.engine))
        })
    }

    /// Singular points off the coordinate hyperplanes (closure).
    pub fn singular(&self) -> Result<&Ideal<F>, PipelineError> {
        cached(&self.singular, || {
            let full = self.singular_full()?;
            let prod = product_of_vars(self.ring.primal().vars(), self.ring.primal())?;
            time("singular locus off the hyperplanes", || {
                Ok(saturate(full, &prod, &self.engine)?)
            })
        })
    }

    /// The conormal ideal in the primal and dual blocks.
    pub fn conormal(&self) -> Result<&Ideal<F>, PipelineError> {
        cached(&self.conormal, || {
            let c = self.codimension()?;
            let full = self.singular_full()?;
            time("conormal variety", || {
                conormal_ideal(&self.model_ideal, full, c, self.ring.primal_dual(), &self.engine)
            })
        })
    }

    /// The dual variety in the dual block.
    pub fn dual(&self) -> Result<&Ideal<F>, PipelineError> {
        cached(&self.dual, || {
            let n = self.conormal()?;
            time("dual variety", || Ok(dual_ideal(n, &self.engine)?.rename_into(self.ring.dual())?))
        })
    }

    /// Conormal ideal plus the Hadamard minors, in the full ring.
    pub fn extended_likelihood(&self) -> Result<&Ideal<F>, PipelineError> {
        cached(&self.extended, || {
            let n = self.conormal()?.rename_into(self.ring.full())?;
            Ok(n.with_generators(hadamard_minors(&self.ring)))
        })
    }

    /// The data singular locus, in the data block.
    pub fn data_singular_locus(&self) -> Result<&Ideal<F>, PipelineError> {
        cached(&self.dsl, || {
            let sing = self.singular()?;
            if sing.is_unit(&self.engine)? {
                return Ok(Ideal::unit(self.ring.data()));
            }
            let full = self.ring.full();
            let e = self.extended_likelihood()?;
            let g = e.sum(&sing.rename_into(full)?)?;
            time("data singular locus", || {
                let prod = product_of_vars(full.vars(), full)?;
                let sat = saturate(&g, &prod, &self.engine)?;
                let elim: Vec<usize> = (0..2 * self.ring.width()).collect();
                Ok(eliminate(&sat, &elim, &self.engine)?.rename_into(self.ring.data())?)
            })
        })
    }

    /// Hadamard product of the singular locus with `[1 : ... : 1 : -1]`.
    pub fn lower_bound(&self) -> Result<&Ideal<F>, PipelineError> {
        cached(&self.lower, || {
            let sing = self.singular()?;
            time("lower bound", || {
                hadamard_product(&self.ring, sing, &self.ring.normal_point(), &self.engine)
            })
        })
    }

    /// Hadamard product of the singular locus with the dual variety.
    pub fn upper_bound(&self) -> Result<&Ideal<F>, PipelineError> {
        cached(&self.upper, || {
            let sing = self.singular()?;
            let dual = self.dual()?;
            time("upper bound", || hadamard_product(&self.ring, sing, dual, &self.engine))
        })
    }

    /// `projdim(sing) + projdim(dual) - 1`; `None` if either is empty.
    pub fn expected_hadamard_dimension(&self) -> Result<Option<i64>, PipelineError> {
        let s = projdim(self.singular()?, &self.engine)?;
        let d = projdim(self.dual()?, &self.engine)?;
        if s < 0 || d < 0 {
            return Ok(None);
        }
        Ok(Some(s + d - 1))
    }

    /// Check both inclusions. A failed inclusion is an invariant violation.
    pub fn theorem_check(&self) -> Result<TheoremReport, PipelineError> {
        let eng = &*self.engine;
        let dsl = self.data_singular_locus()?;
        let lower = self.lower_bound()?;
        let upper = self.upper_bound()?;
        let lower_contained = variety_contains(dsl, lower, eng)?;
        let upper_contains = variety_contains(upper, dsl, eng)?;
        if !lower_contained || !upper_contains {
            return Err(PipelineError::Invariant(format!(
                "bound violated for model '{}': lower contained = {lower_contained}, upper contains = {upper_contains}",
                self.spec.label()
            )));
        }
        let lower_equal = variety_contains(lower, dsl, eng)?;
        let upper_equal = variety_contains(dsl, upper, eng)?;
        let dims = TheoremDims {
            sing: projdim(self.singular()?, eng)?,
            dual: projdim(self.dual()?, eng)?,
            dsl: projdim(dsl, eng)?,
            hadamard: projdim(upper, eng)?,
        };
        let edim = self.expected_hadamard_dimension()?;
        Ok(TheoremReport {
            lower_contained,
            lower_equal,
            upper_contains,
            upper_equal,
            dims,
            edim,
            edim_possibly_empty: edim.is_some_and(|e| e < 0),
        })
    }

    /// Random data with `us = -(u0 + ... + u(m-1)) != 0`.
    fn draw_data(&self, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
        let field = self.spec.field();
        loop {
            let mut u: Vec<F::Elem> = (0..self.ring.states()).map(|_| field.sample_data(rng)).collect();
            let sum = u.iter().fold(field.zero(), |a, x| field.add(&a, x));
            if field.is_zero(&sum) {
                continue;
            }
            u.push(field.neg(&sum));
            return u;
        }
    }

    /// Critical-point count of the fiber over the given data point.
    pub fn fiber_degree(&self, data: &[F::Elem]) -> Result<u64, PipelineError> {
        let w = self.ring.width();
        if data.len() != w {
            return Err(PipelineError::Model(format!("expected {w} data values, found {}", data.len())));
        }
        let pb = self.ring.primal_dual();
        let full = self.ring.full();
        let bindings: Vec<(usize, Binding<F>)> = data
            .iter()
            .enumerate()
            .map(|(i, c)| (2 * w + i, Binding::Const(c.clone())))
            .collect();
        let mut gens = self.conormal()?.rename_into(pb)?.generators().to_vec();
        for g in hadamard_minors(&self.ring) {
            let s = g.substitute(&bindings)?;
            gens.push(s.map_into(pb, &(0..full.nvars()).map(|i| (i < 2 * w).then_some(i)).collect::<Vec<_>>())?);
        }
        let fiber = Ideal::new(pb, gens);
        let prod = product_of_vars(pb.vars(), pb)?;
        let sat = saturate(&fiber, &prod, &self.engine)?;
        let elim: Vec<usize> = (w..2 * w).collect();
        let p = eliminate(&sat, &elim, &self.engine)?.rename_into(self.ring.primal())?;
        let chart = Poly::var(self.ring.primal(), w - 1).sub(&Poly::one(self.ring.primal()))?;
        let affine = p.with_generators(vec![chart]);
        match quotient_basis_size(&affine, &self.engine) {
            Ok(n) => Ok(n),
            Err(GbError::NotZeroDimensional) => Err(PipelineError::Degenerate(
                "the fiber over the sampled data is not finite".into(),
            )),
            Err(e) => Err(e.into()),
        }
    }

    /// ML degree from data drawn with the given seed; degenerate draws are
    /// retried with further values from the same stream.
    pub fn ml_degree(&self, seed: u64) -> Result<u64, PipelineError> {
        if let Some(&d) = self.ml_degrees.lock().expect("ml degree lock").get(&seed) {
            return Ok(d);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut last = None;
        for attempt in 0..ML_ATTEMPTS {
            let data = self.draw_data(&mut rng);
            let r = time(&format!("ml degree (seed {seed}, attempt {attempt})"), || {
                self.fiber_degree(&data)
            });
            match r {
                Ok(d) => {
                    self.ml_degrees.lock().expect("ml degree lock").insert(seed, d);
                    return Ok(d);
                }
                Err(PipelineError::Degenerate(msg)) => last = Some(msg),
                Err(e) => return Err(e),
            }
        }
        Err(PipelineError::Degenerate(format!(
            "{} after {ML_ATTEMPTS} draws with seed {seed}",
            last.unwrap_or_default()
        )))
    }

    /// ML degree over several seeds; disagreement is an error.
    pub fn ml_degree_checked(&self, seeds: &[u64]) -> Result<u64, PipelineError> {
        let mut values = Vec::with_capacity(seeds.len());
        for &s in seeds {
            values.push((s, self.ml_degree(s)?));
        }
        let first = values.first().map(|v| v.1).ok_or_else(|| PipelineError::Model("no seeds".into()))?;
        if values.iter().any(|v| v.1 != first) {
            return Err(PipelineError::Unstable(values));
        }
        Ok(first)
    }
}
