use super::PipelineError;
use crate::groebner::Ideal;
use crate::polyring::{BlockRole, Field, MonomialOrder, Poly, PolyError, PolyRing, RingRef};

/// A statistical model: `states` probability coordinates and homogeneous
/// equations in `p0 .. p(states-1), ps`.
#[derive(Clone, Debug)]
pub struct ModelSpec<F: Field> {
    field: F,
    states: usize,
    primal: RingRef<F>,
    polys: Vec<Poly<F>>,
    label: String,
}

fn names(stem: &str, m: usize) -> Vec<String> {
    let mut v: Vec<String> = (0..m).map(|i| format!("{stem}{i}")).collect();
    v.push(format!("{stem}s"));
    v
}

impl<F: Field> ModelSpec<F> {
    /// The ring `k[p0 .. p(m-1), ps]` with grevlex.
    pub fn primal_ring(field: F, states: usize) -> Result<RingRef<F>, PolyError> {
        PolyRing::with_blocks(
            field,
            vec![(BlockRole::Primal, names("p", states))],
            MonomialOrder::GrevLex,
        )
    }

    pub fn new(field: F, states: usize, polys: Vec<Poly<F>>, label: impl Into<String>) -> Result<Self, PipelineError> {
        if states < 2 {
            return Err(PipelineError::Model(format!("states must be at least 2, got {states}")));
        }
        if 3 * (states + 1) + 1 > crate::polyring::MAX_VARS {
            return Err(PipelineError::Model(format!("{states} states exceed the supported ring size")));
        }
        let primal = Self::primal_ring(field.clone(), states)?;
        let mut moved = Vec::with_capacity(polys.len());
        for f in polys {
            let f = f.rename_into(&primal)?;
            if !f.is_homogeneous() {
                return Err(PipelineError::Model(format!(
                    "model polynomial is not homogeneous: {f}"
                )));
            }
            if !f.is_zero() {
                moved.push(f);
            }
        }
        Ok(ModelSpec {
            field,
            states,
            primal,
            polys: moved,
            label: label.into(),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn primal(&self) -> &RingRef<F> {
        &self.primal
    }

    pub fn model_polys(&self) -> &[Poly<F>] {
        &self.polys
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `p0 + ... + p(m-1) - ps`.
    pub fn sum_relation(&self) -> Poly<F> {
        let r = &self.primal;
        let mut s = Poly::zero(r);
        for i in 0..self.states {
            s = s.add(&Poly::var(r, i)).expect("same ring");
        }
        s.sub(&Poly::var(r, self.states)).expect("same ring")
    }

    /// The model ideal with the sum relation adjoined.
    pub fn model_ideal(&self) -> Ideal<F> {
        let mut gens = self.polys.clone();
        gens.push(self.sum_relation());
        Ideal::new(&self.primal, gens)
    }

    /// Same model over another field; `None` if a coefficient does not map.
    pub fn convert<G: Field>(
        &self,
        field: G,
        conv: impl Fn(&F::Elem) -> Option<G::Elem>,
    ) -> Result<ModelSpec<G>, PipelineError> {
        let ring = ModelSpec::primal_ring(field.clone(), self.states)?;
        let polys = self
            .polys
            .iter()
            .map(|f| f.convert_field(&ring, &conv))
            .collect::<Result<Vec<_>, _>>()?;
        ModelSpec::new(field, self.states, polys, self.label.clone())
    }
}

/// `k[P, B, U]` with `P = (p0.., ps)`, `B = (b0.., bs)`, `U = (u0.., us)`
/// and the subrings the pipeline works in.
#[derive(Clone, Debug)]
pub struct LikelihoodRing<F: Field> {
    m: usize,
    full: RingRef<F>,
    p: RingRef<F>,
    b: RingRef<F>,
    u: RingRef<F>,
    pb: RingRef<F>,
}

impl<F: Field> LikelihoodRing<F> {
    pub fn new(field: F, states: usize) -> Result<Self, PolyError> {
        let mk = |blocks: Vec<(BlockRole, Vec<String>)>| {
            PolyRing::with_blocks(field.clone(), blocks, MonomialOrder::GrevLex)
        };
        let (pn, bn, un) = (names("p", states), names("b", states), names("u", states));
        Ok(LikelihoodRing {
            m: states,
            full: mk(vec![
                (BlockRole::Primal, pn.clone()),
                (BlockRole::Dual, bn.clone()),
                (BlockRole::Data, un.clone()),
            ])?,
            p: mk(vec![(BlockRole::Primal, pn.clone())])?,
            b: mk(vec![(BlockRole::Dual, bn.clone())])?,
            u: mk(vec![(BlockRole::Data, un)])?,
            pb: mk(vec![(BlockRole::Primal, pn), (BlockRole::Dual, bn)])?,
        })
    }

    pub fn states(&self) -> usize {
        self.m
    }

    /// Coordinates per block, `m + 1`.
    pub fn width(&self) -> usize {
        self.m + 1
    }

    pub fn full(&self) -> &RingRef<F> {
        &self.full
    }

    pub fn primal(&self) -> &RingRef<F> {
        &self.p
    }

    pub fn dual(&self) -> &RingRef<F> {
        &self.b
    }

    pub fn data(&self) -> &RingRef<F> {
        &self.u
    }

    pub fn primal_dual(&self) -> &RingRef<F> {
        &self.pb
    }

    /// The ideal of the point `[1 : ... : 1 : -1]` in the dual block.
    pub fn normal_point(&self) -> Ideal<F> {
        let r = &self.b;
        let w = self.width();
        let mut gens = Vec::new();
        for i in 1..self.m {
            gens.push(Poly::var(r, i - 1).sub(&Poly::var(r, i)).expect("same ring"));
        }
        gens.push(Poly::var(r, self.m - 1).add(&Poly::var(r, w - 1)).expect("same ring"));
        Ideal::new(r, gens)
    }

    /// `u0 + ... + us`.
    pub fn data_sum(&self) -> Poly<F> {
        let r = &self.u;
        (0..self.width()).fold(Poly::zero(r), |acc, i| acc.add(&Poly::var(r, i)).expect("same ring"))
    }
}

/// The ideal of a projective point given by its coordinates, in `ring`.
pub fn point_ideal<F: Field>(ring: &RingRef<F>, coords: &[F::Elem]) -> Result<Ideal<F>, PipelineError> {
    let n = ring.nvars();
    if coords.len() != n {
        return Err(PolyError::Arity {
            expected: n,
            found: coords.len(),
        }
        .into());
    }
    let field = ring.field();
    let Some(pivot) = coords.iter().position(|c| !field.is_zero(c)) else {
        return Err(PipelineError::Model("the zero vector is not a projective point".into()));
    };
    let xp = Poly::var(ring, pivot);
    let mut gens = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        if i == pivot {
            continue;
        }
        // c_pivot * x_i - c_i * x_pivot
        let g = Poly::var(ring, i)
            .scale(&coords[pivot])
            .sub(&xp.scale(c))
            .expect("same ring");
        gens.push(g);
    }
    Ok(Ideal::new(ring, gens))
}
