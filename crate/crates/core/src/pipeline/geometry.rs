//! Jacobians, singular loci, conormal and dual varieties, Hadamard products.
//! These work on any ring; the likelihood-specific wiring lives in the
//! context.

use super::spec::LikelihoodRing;
use super::PipelineError;
use crate::groebner::{dimension, eliminate, saturate, saturate_by_ideal, Engine, Ideal};
use crate::polyring::{BlockRole, Field, MonomialOrder, Poly, PolyMatrix, PolyRing, RingRef};

/// Rows are the generators, columns the listed variables.
pub fn jacobian<F: Field>(ideal: &Ideal<F>, vars: &[usize]) -> Result<PolyMatrix<F>, PipelineError> {
    let mut rows = Vec::with_capacity(ideal.generators().len());
    for g in ideal.generators() {
        rows.push(
            vars.iter()
                .map(|&v| g.derivative(v))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if rows.is_empty() {
        return Err(PipelineError::Model("jacobian of the zero ideal".into()));
    }
    Ok(PolyMatrix::from_rows(rows)?)
}

/// The ideal of `k x k` minors.
pub fn minors_ideal<F: Field>(m: &PolyMatrix<F>, k: usize) -> Result<Ideal<F>, PipelineError> {
    Ok(Ideal::new(m.ring(), m.minors(k)?))
}

/// Codimension of the projective variety of a homogeneous ideal.
pub fn codimension<F: Field>(ideal: &Ideal<F>, engine: &Engine) -> Result<usize, PipelineError> {
    let d = dimension(ideal, engine)?;
    if d < 0 {
        return Err(PipelineError::Model("the model ideal is the unit ideal".into()));
    }
    Ok(ideal.ring().nvars() - d as usize)
}

/// `<c x c minors of the Jacobian> + I`, guarded against models where the
/// rank condition does not cut out a proper subvariety.
pub fn singular_ideal<F: Field>(ideal: &Ideal<F>, c: usize, engine: &Engine) -> Result<Ideal<F>, PipelineError> {
    let vars: Vec<usize> = (0..ideal.ring().nvars()).collect();
    let jac = jacobian(ideal, &vars)?;
    if c == 0 || c > jac.rows().min(jac.cols()) {
        return Err(PipelineError::NotEquidimensional(format!(
            "codimension {c} does not fit a {}x{} Jacobian",
            jac.rows(),
            jac.cols()
        )));
    }
    let full = minors_ideal(&jac, c)?.sum(ideal)?;
    let dim_x = dimension(ideal, engine)?;
    let dim_s = dimension(&full, engine)?;
    if dim_s >= dim_x {
        return Err(PipelineError::NotEquidimensional(format!(
            "the rank condition holds on a set of dimension {dim_s} inside a variety of dimension {dim_x}"
        )));
    }
    Ok(full)
}

/// `(<(c+1)-minors of [b; Jac]> + I) : S^∞` in `pb`, where the first block
/// of `pb` holds the variables of `ideal` and the second the dual ones.
pub fn conormal_ideal<F: Field>(
    ideal: &Ideal<F>,
    singular_full: &Ideal<F>,
    c: usize,
    pb: &RingRef<F>,
    engine: &Engine,
) -> Result<Ideal<F>, PipelineError> {
    let n = ideal.ring().nvars();
    if pb.nvars() != 2 * n {
        return Err(PipelineError::Model("conormal ring must double the variables".into()));
    }
    let embed: Vec<Option<usize>> = (0..n).map(Some).collect();
    let vars: Vec<usize> = (0..n).collect();
    let jac = jacobian(ideal, &vars)?;
    let mut rows: Vec<Vec<Poly<F>>> = Vec::with_capacity(jac.rows() + 1);
    rows.push((0..n).map(|i| Poly::var(pb, n + i)).collect());
    for r in 0..jac.rows() {
        rows.push(
            jac.row(r)
                .iter()
                .map(|e| e.map_into(pb, &embed))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let aug = PolyMatrix::from_rows(rows)?;
    let k = c + 1;
    let minors = if k <= aug.rows().min(aug.cols()) {
        minors_ideal(&aug, k)?
    } else {
        Ideal::zero(pb)
    };
    let base = minors.sum(&ideal.map_into(pb, &embed)?)?;
    let sing = singular_full.reduced(engine)?.map_into(pb, &embed)?;
    Ok(saturate_by_ideal(&base, &sing, engine)?)
}

/// Project a conormal ideal to its second block.
pub fn dual_ideal<F: Field>(conormal: &Ideal<F>, engine: &Engine) -> Result<Ideal<F>, PipelineError> {
    let n = conormal.ring().nvars() / 2;
    let vars: Vec<usize> = (0..n).collect();
    Ok(eliminate(conormal, &vars, engine)?)
}

/// Product of all variables of a ring, as a polynomial in `target`.
pub(crate) fn product_of_vars<F: Field>(vars: &[String], target: &RingRef<F>) -> Result<Poly<F>, PipelineError> {
    let mut f = Poly::one(target);
    for v in vars {
        f = f.mul(&Poly::var_named(target, v)?)?;
    }
    Ok(f)
}

/// The 2x2 minors of `[[p_i b_i]_i, [u_i]_i]` in the full likelihood ring.
pub fn hadamard_minors<F: Field>(lr: &LikelihoodRing<F>) -> Vec<Poly<F>> {
    let r = lr.full();
    let w = lr.width();
    let pb = |i: usize| Poly::var(r, i).mul(&Poly::var(r, w + i)).expect("same ring");
    let u = |i: usize| Poly::var(r, 2 * w + i);
    let mut out = Vec::new();
    for i in 0..w {
        for j in i + 1..w {
            let g = pb(i)
                .mul(&u(j))
                .and_then(|a| a.sub(&pb(j).mul(&u(i))?))
                .expect("same ring");
            out.push(g);
        }
    }
    out
}

/// `p0 b0 + ... + ps bs` in the full likelihood ring.
pub fn incidence_form<F: Field>(lr: &LikelihoodRing<F>) -> Poly<F> {
    let r = lr.full();
    let w = lr.width();
    (0..w).fold(Poly::zero(r), |acc, i| {
        acc.add(&Poly::var(r, i).mul(&Poly::var(r, w + i)).expect("same ring"))
            .expect("same ring")
    })
}

/// Hadamard product of `a` (primal block) and `b` (dual block) with respect
/// to the incidence hypersurface, as an ideal in the data block.
pub fn hadamard_product<F: Field>(
    lr: &LikelihoodRing<F>,
    a: &Ideal<F>,
    b: &Ideal<F>,
    engine: &Engine,
) -> Result<Ideal<F>, PipelineError> {
    let full = lr.full();
    if a.has_unit_generator() || b.has_unit_generator() {
        return Ok(Ideal::unit(lr.data()));
    }
    let mut gens: Vec<Poly<F>> = Vec::new();
    gens.extend(a.rename_into(full)?.generators().iter().cloned());
    gens.extend(b.rename_into(full)?.generators().iter().cloned());
    gens.push(incidence_form(lr));
    gens.extend(hadamard_minors(lr));
    let g = Ideal::new(full, gens);
    let w = lr.width();
    let mut pbvars = lr.primal().vars().to_vec();
    pbvars.extend(lr.dual().vars().iter().cloned());
    let sat = saturate(&g, &product_of_vars(&pbvars, full)?, engine)?;
    let elim: Vec<usize> = (0..2 * w).collect();
    let out = eliminate(&sat, &elim, engine)?;
    Ok(out.rename_into(lr.data())?)
}

/// Conormal and dual of a plain projective variety (no sum relation, no
/// data block).
#[derive(Clone, Debug)]
pub struct RawDuality<F: Field> {
    pub codim: usize,
    pub singular_full: Ideal<F>,
    pub conormal: Ideal<F>,
    pub dual: Ideal<F>,
}

fn dual_name(v: &str) -> String {
    match v.strip_prefix('p') {
        Some(rest) => format!("b{rest}"),
        None => format!("b_{v}"),
    }
}

/// Dual variable names for `ring`: `p*` becomes `b*`, anything else gets a
/// `b_` prefix; clashes fall back to `_d` suffixes.
pub fn dual_names<F: Field>(ring: &RingRef<F>) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(ring.nvars());
    for v in ring.vars() {
        let mut name = dual_name(v);
        while ring.var_index(&name).is_some() || out.contains(&name) {
            name.push_str("_d");
        }
        out.push(name);
    }
    out
}

/// Conormal variety and dual of the projective variety `V(ideal)`.
pub fn raw_duality<F: Field>(ideal: &Ideal<F>, engine: &Engine) -> Result<RawDuality<F>, PipelineError> {
    let ring = ideal.ring().with_order(MonomialOrder::GrevLex);
    let ideal = ideal.rename_into(&ring)?;
    if !ideal.is_homogeneous() {
        return Err(PipelineError::Model("raw mode needs a homogeneous ideal".into()));
    }
    if ideal.is_zero_ideal() {
        return Err(PipelineError::Model("the zero ideal has no conormal variety".into()));
    }
    let n = ring.nvars();
    if 2 * n + 1 > crate::polyring::MAX_VARS {
        return Err(PipelineError::Model("too many variables for raw mode".into()));
    }
    let pb = PolyRing::with_blocks(
        ring.field().clone(),
        vec![
            (BlockRole::Primal, ring.vars().to_vec()),
            (BlockRole::Dual, dual_names(&ring)),
        ],
        MonomialOrder::GrevLex,
    )?;
    let codim = codimension(&ideal, engine)?;
    let singular_full = singular_ideal(&ideal, codim, engine)?;
    let conormal = conormal_ideal(&ideal, &singular_full, codim, &pb, engine)?;
    let dual = dual_ideal(&conormal, engine)?;
    Ok(RawDuality {
        codim,
        singular_full,
        conormal,
        dual,
    })
}
