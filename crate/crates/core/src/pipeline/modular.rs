use super::PipelineError;
use crate::groebner::{Engine, Ideal};
use crate::polyring::{PolyRing, PrimeField, Rationals};

/// Reduce a rational ideal modulo the field's prime. Fails if a denominator
/// vanishes modulo the prime.
pub fn reduce_mod_p(ideal: &Ideal<Rationals>, field: PrimeField) -> Result<Ideal<PrimeField>, PipelineError> {
    let src = ideal.ring();
    let ring = PolyRing::with_blocks(field, src.block_names(), src.order())?;
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.convert_field(&ring, |c| field.reduce_rational(c)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(&ring, gens))
}

/// Whether the reduction of `rational` modulo the prime generates the same
/// ideal as `modular`.
pub fn agrees_mod_p(
    rational: &Ideal<Rationals>,
    modular: &Ideal<PrimeField>,
    engine: &Engine,
) -> Result<bool, PipelineError> {
    let field = *modular.ring().field();
    let reduced = reduce_mod_p(rational, field)?.rename_into(modular.ring())?;
    Ok(reduced.same_ideal(modular, engine)?)
}
