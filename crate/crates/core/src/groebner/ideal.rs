use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use super::buchberger::{normal_form, reduced_basis};
use super::engine::{CachedBasis, Engine, ENGINE_VERSION};
use super::GbError;
use crate::polyring::{Field, MonomialOrder, Poly, PolyRing, RingRef};
use crate::textio::{parse_polynomial, render_polynomial};

type BasisCache<F> = Arc<RwLock<HashMap<MonomialOrder, Arc<Vec<Poly<F>>>>>>;

/// A finitely generated ideal with memoized reduced bases per order.
///
/// Zero generators are dropped; a nonzero constant generator collapses the
/// generator list to `[1]`.
#[derive(Clone)]
pub struct Ideal<F: Field> {
    ring: RingRef<F>,
    gens: Vec<Poly<F>>,
    bases: BasisCache<F>,
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &RingRef<F>, gens: Vec<Poly<F>>) -> Self {
        let mut gens: Vec<Poly<F>> = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                if PolyRing::same(g.ring(), ring) {
                    g
                } else {
                    g.rename_into(ring).expect("generator ring matches ideal ring")
                }
            })
            .collect();
        if gens.iter().any(|g| g.is_unit()) {
            gens = vec![Poly::one(ring)];
        }
        Ideal {
            ring: ring.clone(),
            gens,
            bases: Arc::new(RwLock::new(HashMap::new())),
        }
    }

    pub fn unit(ring: &RingRef<F>) -> Self {
        Self::new(ring, vec![Poly::one(ring)])
    }

    pub fn zero(ring: &RingRef<F>) -> Self {
        Self::new(ring, Vec::new())
    }

    /// An ideal whose generators are already the reduced basis for `order`.
    pub(crate) fn from_basis(ring: &RingRef<F>, order: MonomialOrder, basis: Vec<Poly<F>>) -> Self {
        let ideal = Self::new(ring, basis.clone());
        let target = ring.with_order(order);
        let basis: Vec<Poly<F>> = basis
            .iter()
            .map(|g| g.reorder(&target).expect("same variables"))
            .collect();
        ideal
            .bases
            .write()
            .expect("basis cache lock")
            .insert(order, Arc::new(basis));
        ideal
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// True if a generator is a nonzero constant (no basis computation).
    pub fn has_unit_generator(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_unit()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Ideal sum: generators concatenated.
    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>, GbError> {
        if !PolyRing::same(&self.ring, &other.ring) && self.ring.vars() != other.ring.vars() {
            return Err(GbError::Poly(crate::polyring::PolyError::RingMismatch));
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    pub fn with_generators(&self, extra: Vec<Poly<F>>) -> Ideal<F> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    /// Move into another ring via an index map (see [`Poly::map_into`]).
    pub fn map_into(&self, target: &RingRef<F>, map: &[Option<usize>]) -> Result<Ideal<F>, GbError> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.map_into(target, map))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(target, gens))
    }

    /// Move into a ring that contains all variables used, matched by name.
    pub fn rename_into(&self, target: &RingRef<F>) -> Result<Ideal<F>, GbError> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.rename_into(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(target, gens))
    }

    fn cache_key(&self, ring: &RingRef<F>, gens: &[Poly<F>]) -> String {
        let mut key = format!(
            "{ENGINE_VERSION}\nfield={}\norder={}\nvars={}\n",
            ring.field().spec(),
            ring.order(),
            ring.vars().join(",")
        );
        for g in gens {
            key.push_str(&render_polynomial(g));
            key.push('\n');
        }
        key
    }

    /// The reduced Groebner basis under `order`, monic, sorted by increasing
    /// leading monomial; polynomials live in `ring().with_order(order)`.
    pub fn groebner_basis(
        &self,
        order: MonomialOrder,
        engine: &Engine,
    ) -> Result<Arc<Vec<Poly<F>>>, GbError> {
        if let Some(b) = self.bases.read().expect("basis cache lock").get(&order) {
            return Ok(b.clone());
        }
        let ring = self.ring.with_order(order);
        let gens: Vec<Poly<F>> = self
            .gens
            .iter()
            .map(|g| g.reorder(&ring))
            .collect::<Result<_, _>>()?;

        let basis = if self.has_unit_generator() {
            vec![Poly::one(&ring)]
        } else if let Some(cache) = engine.cache() {
            let key = self.cache_key(&ring, &gens);
            let hit = cache.lookup(&key).and_then(|entry| {
                let parsed: Option<Vec<Poly<F>>> = entry
                    .generators
                    .iter()
                    .map(|s| parse_polynomial(s, &ring).ok())
                    .collect();
                parsed.map(|p| (p, entry.stats))
            });
            match hit {
                Some((basis, stats)) => {
                    engine.note_cache(true);
                    engine.record(&stats);
                    basis
                }
                None => {
                    engine.note_cache(false);
                    let (basis, stats) = reduced_basis(&gens, engine)?;
                    engine.record(&stats);
                    cache.store(
                        &key,
                        &CachedBasis {
                            generators: basis.iter().map(render_polynomial).collect(),
                            stats,
                        },
                    );
                    basis
                }
            }
        } else {
            let started = std::time::Instant::now();
            let (basis, stats) = reduced_basis(&gens, engine)?;
            engine.record(&stats);
            let ms = started.elapsed().as_millis();
            if ms > 200 {
                log::debug!(
                    "basis of {} generators in {} vars ({}): {} elements, {} pairs, {ms} ms",
                    gens.len(),
                    ring.nvars(),
                    order,
                    basis.len(),
                    stats.pairs_considered
                );
            }
            basis
        };
        let basis = Arc::new(basis);
        self.bases
            .write()
            .expect("basis cache lock")
            .insert(order, basis.clone());
        Ok(basis)
    }

    /// Reduced basis under the ring's own order.
    pub fn basis(&self, engine: &Engine) -> Result<Arc<Vec<Poly<F>>>, GbError> {
        self.groebner_basis(self.ring.order(), engine)
    }

    pub fn is_unit(&self, engine: &Engine) -> Result<bool, GbError> {
        if self.has_unit_generator() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        let gb = self.groebner_basis(MonomialOrder::GrevLex, engine)?;
        Ok(gb.len() == 1 && gb[0].is_unit())
    }

    /// Ideal membership by reduction against the grevlex basis.
    pub fn contains(&self, f: &Poly<F>, engine: &Engine) -> Result<bool, GbError> {
        if f.is_zero() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        let gb = self.groebner_basis(MonomialOrder::GrevLex, engine)?;
        let ring = gb[0].ring().clone();
        let f = f.rename_into(&ring)?;
        Ok(normal_form(&f, &gb)?.is_zero())
    }

    /// `other ⊆ self` as ideals.
    pub fn contains_ideal(&self, other: &Ideal<F>, engine: &Engine) -> Result<bool, GbError> {
        for g in other.generators() {
            if !self.contains(g, engine)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals.
    pub fn same_ideal(&self, other: &Ideal<F>, engine: &Engine) -> Result<bool, GbError> {
        Ok(self.contains_ideal(other, engine)? && other.contains_ideal(self, engine)?)
    }

    /// The ideal generated by its reduced grevlex basis, in the ring's order.
    pub fn reduced(&self, engine: &Engine) -> Result<Ideal<F>, GbError> {
        let gb = self.groebner_basis(MonomialOrder::GrevLex, engine)?;
        let gens = gb
            .iter()
            .map(|g| g.reorder(&self.ring))
            .collect::<Result<Vec<_>, _>>()?;
        let out = Ideal::new(&self.ring, gens);
        out.bases
            .write()
            .expect("basis cache lock")
            .insert(MonomialOrder::GrevLex, gb);
        Ok(out)
    }
}
