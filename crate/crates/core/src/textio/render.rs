use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::groebner::Ideal;
use crate::polyring::{Field, MonomialOrder, Poly, PolyRing, RingRef, Term};

/// Output flavor for ideals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RenderOptions {
    pub format: OutputFormat,
    /// Order used to sort terms in the output.
    pub order: MonomialOrder,
}

/// One block of a serialized ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub role: crate::polyring::BlockRole,
    pub vars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDoc {
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<BlockDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

/// The JSON ideal schema: `{ring: {vars, blocks, field}, generators: [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<u32>,
    pub ring: RingDoc,
    pub generators: Vec<String>,
}

fn render_monomial<F: Field>(ring: &PolyRing<F>, t: &Term<F>, out: &mut String) {
    let mut first = true;
    for i in 0..ring.nvars() {
        let e = t.mono.exponent(i);
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(ring.var_name(i));
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

fn render_terms<F: Field>(ring: &PolyRing<F>, terms: &[Term<F>]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let field = ring.field();
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        let (neg, mag) = field.signed_repr(&t.coeff);
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if t.mono.is_one() {
            out.push_str(&mag);
        } else {
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            render_monomial(ring, t, &mut out);
        }
    }
    out
}

/// Exact rendering: coefficients as they are, terms in the ring's order.
/// `parse_polynomial(render_polynomial(f)) == f`.
pub fn render_polynomial<F: Field>(f: &Poly<F>) -> String {
    render_terms(f.ring(), f.terms())
}

/// The canonical display form: over the rationals integer-cleared with
/// content one and positive leading coefficient, over a prime field monic.
pub fn display_form<F: Field>(f: &Poly<F>) -> Poly<F> {
    let mut coeffs: Vec<F::Elem> = f.terms().iter().map(|t| t.coeff.clone()).collect();
    f.field().display_normalize(&mut coeffs);
    let terms = f
        .terms()
        .iter()
        .zip(coeffs)
        .map(|(t, coeff)| Term { coeff, mono: t.mono })
        .collect();
    Poly::from_sorted_terms(f.ring(), terms)
}

fn compare_terms<F: Field>(order: MonomialOrder, a: &[Term<F>], b: &[Term<F>], field: &F) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match order.cmp(&x.mono, &y.mono) {
            Ordering::Equal => {}
            o => return o.reverse(),
        }
        let (xs, ys) = (field.signed_repr(&x.coeff), field.signed_repr(&y.coeff));
        match (xs.0, xs.1.len(), &xs.1).cmp(&(ys.0, ys.1.len(), &ys.1)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Display forms of the generators in `order`, sorted by total degree, then
/// leading monomial (larger first), then the whole term sequence; duplicates
/// removed.
pub fn canonical_generators<F: Field>(ideal: &Ideal<F>, order: MonomialOrder) -> Vec<Poly<F>> {
    let ring = ideal.ring().with_order(order);
    let field = ring.field().clone();
    let mut gens: Vec<Poly<F>> = ideal
        .generators()
        .iter()
        .map(|g| display_form(&g.reorder(&ring).expect("same variables")))
        .collect();
    gens.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| compare_terms(order, a.terms(), b.terms(), &field))
    });
    gens.dedup();
    gens
}

pub fn ring_doc<F: Field>(ring: &RingRef<F>) -> RingDoc {
    RingDoc {
        vars: ring.vars().to_vec(),
        blocks: ring
            .block_names()
            .into_iter()
            .map(|(role, vars)| BlockDoc { role, vars })
            .collect(),
        field: Some(ring.field().spec().to_string()),
    }
}

pub fn ideal_doc<F: Field>(ideal: &Ideal<F>, order: MonomialOrder) -> IdealDoc {
    IdealDoc {
        format: Some(1),
        ring: ring_doc(ideal.ring()),
        generators: canonical_generators(ideal, order)
            .iter()
            .map(render_polynomial)
            .collect(),
    }
}

/// Deterministic text (one generator per line) or JSON rendering.
pub fn render_ideal<F: Field>(ideal: &Ideal<F>, opts: &RenderOptions) -> String {
    match opts.format {
        OutputFormat::Text => canonical_generators(ideal, opts.order)
            .iter()
            .map(render_polynomial)
            .collect::<Vec<_>>()
            .join("\n"),
        OutputFormat::Json => serde_json::to_string_pretty(&ideal_doc(ideal, opts.order))
            .expect("serializable"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PrimeField, Rationals};
    use crate::textio::parse_polynomial;

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal<Rationals> {
        let r = PolyRing::new(Rationals, vars, MonomialOrder::GrevLex).unwrap();
        Ideal::new(&r, gens.iter().map(|g| parse_polynomial(g, &r).unwrap()).collect())
    }

    #[test]
    fn generators_sorted() {
        let i = ideal(&["x", "y"], &["y", "x"]);
        assert_eq!(render_ideal(&i, &RenderOptions::default()), "x\ny");
    }

    #[test]
    fn zero_ideal_renders_empty() {
        let i = ideal(&["x", "y"], &[]);
        assert_eq!(render_ideal(&i, &RenderOptions::default()), "");
        let json = render_ideal(
            &i,
            &RenderOptions {
                format: OutputFormat::Json,
                ..Default::default()
            },
        );
        let doc: IdealDoc = serde_json::from_str(&json).unwrap();
        assert!(doc.generators.is_empty());
        assert_eq!(doc.ring.vars, vec!["x", "y"]);
    }

    #[test]
    fn content_is_removed_over_q() {
        let i = ideal(&["x", "y"], &["2*x - 2*y"]);
        assert_eq!(render_ideal(&i, &RenderOptions::default()), "x - y");
        let j = ideal(&["x", "y"], &["-1/3*x + 1/2*y^2"]);
        assert_eq!(render_ideal(&j, &RenderOptions::default()), "3*y^2 - 2*x");
    }

    #[test]
    fn prime_field_display_is_monic_and_symmetric() {
        let r = PolyRing::new(PrimeField::default(), &["x", "y"], MonomialOrder::GrevLex).unwrap();
        let f = parse_polynomial("3*x - 6*y", &r).unwrap();
        assert_eq!(render_polynomial(&display_form(&f)), "x - 2*y");
    }

    #[test]
    fn exact_rendering_round_trips() {
        let r = PolyRing::new(Rationals, &["x", "y"], MonomialOrder::GrevLex).unwrap();
        for src in ["-x^2*y + 3/7*y - 5", "x", "-1", "0", "2*x*y^3"] {
            let f = parse_polynomial(src, &r).unwrap();
            let back = parse_polynomial(&render_polynomial(&f), &r).unwrap();
            assert_eq!(back, f);
        }
    }
}
