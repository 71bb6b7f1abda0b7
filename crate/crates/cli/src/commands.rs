//! Subcommands, looked up by name in a registry of trait objects. Each one
//! is written once, generically over the coefficient field.

use std::sync::Arc;

use mlsing_core::groebner::{eliminate_named, saturate, saturate_by_ideal, Engine, Ideal};
use mlsing_core::pipeline::{agrees_mod_p, raw_duality, GeometryContext, ModelSpec};
use mlsing_core::polyring::{Field, InnerOrder, MonomialOrder, PrimeField, Rationals};
use mlsing_core::textio::{
    display_form, ideal_doc, parse_polynomial, render_ideal, render_polynomial, ring_doc, IdealDoc,
    ModelFile, OutputFormat, RenderOptions,
};
use serde::Serialize;

use crate::error::CliError;
use crate::report::{Artifacts, Report};
use crate::Options;

/// Parsed command input.
pub enum Input {
    Model(ModelFile),
    Ideal(IdealDoc),
}

impl Input {
    pub fn field_hint(&self) -> Option<String> {
        match self {
            Input::Model(m) => m.field.map(|f| f.to_string()),
            Input::Ideal(d) => d.ring.field.clone(),
        }
    }
}

/// Everything a command needs for one invocation over the field `F`.
pub struct Run<'a, F: Field> {
    pub field: F,
    pub opts: &'a Options,
    pub input: &'a Input,
    pub engine: Arc<Engine>,
}

/// What a command produced: the report for stdout and remarks for stderr.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub notes: Vec<String>,
}

pub trait Command: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn execute_q(&self, run: &Run<'_, Rationals>) -> Result<Output, CliError>;
    fn execute_fp(&self, run: &Run<'_, PrimeField>) -> Result<Output, CliError>;
}

macro_rules! command {
    ($ty:ident, $name:literal, $summary:literal, $body:ident) => {
        pub struct $ty;

        impl Command for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn summary(&self) -> &'static str {
                $summary
            }
            fn execute_q(&self, run: &Run<'_, Rationals>) -> Result<Output, CliError> {
                $body(run)
            }
            fn execute_fp(&self, run: &Run<'_, PrimeField>) -> Result<Output, CliError> {
                $body(run)
            }
        }
    };
}

command!(ParseCmd, "parse", "Validate a model or ideal file and echo it in canonical form", parse_cmd);
command!(GbCmd, "gb", "Reduced Groebner basis of an ideal file", gb_cmd);
command!(EliminateCmd, "eliminate", "Eliminate variables (--vars) from an ideal file", eliminate_cmd);
command!(SaturateCmd, "saturate", "Saturate an ideal file by one or more polynomials (--by)", saturate_cmd);
command!(SingularCmd, "singular", "Singular locus of a model off the coordinate hyperplanes", singular_cmd);
command!(ConormalCmd, "conormal", "Conormal variety of a model (or of an ideal file with --raw)", conormal_cmd);
command!(DualCmd, "dual", "Dual variety of a model (or of an ideal file with --raw)", dual_cmd);
command!(MlDegCmd, "mldeg", "ML degree from seeded random data", mldeg_cmd);
command!(DslCmd, "dsl", "Data singular locus of a model", dsl_cmd);
command!(HadamardCmd, "hadamard", "Hadamard product of the singular locus with the dual (--with dual) or the normal point (--with point)", hadamard_cmd);
command!(CheckTheoremCmd, "check-theorem", "Check both inclusions bounding the data singular locus", check_theorem_cmd);
command!(RunAllCmd, "run-all", "Full pipeline and report", run_all_cmd);

pub struct Registry {
    commands: Vec<Box<dyn Command>>,
}

impl Registry {
    pub fn builtin() -> Self {
        let mut r = Registry { commands: Vec::new() };
        r.register(Box::new(ParseCmd));
        r.register(Box::new(GbCmd));
        r.register(Box::new(EliminateCmd));
        r.register(Box::new(SaturateCmd));
        r.register(Box::new(SingularCmd));
        r.register(Box::new(ConormalCmd));
        r.register(Box::new(DualCmd));
        r.register(Box::new(MlDegCmd));
        r.register(Box::new(DslCmd));
        r.register(Box::new(HadamardCmd));
        r.register(Box::new(CheckTheoremCmd));
        r.register(Box::new(RunAllCmd));
        r
    }

    pub fn register(&mut self, cmd: Box<dyn Command>) {
        assert!(self.get(cmd.name()).is_none(), "duplicate command {}", cmd.name());
        self.commands.push(cmd);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Command> {
        self.commands.iter().find(|c| c.name() == name).map(|c| c.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Command> {
        self.commands.iter().map(|c| c.as_ref())
    }
}

impl<F: Field> Run<'_, F> {
    fn format(&self) -> OutputFormat {
        if self.opts.json {
            OutputFormat::Json
        } else {
            OutputFormat::Text
        }
    }

    fn model_file(&self) -> Result<&ModelFile, CliError> {
        match self.input {
            Input::Model(m) => Ok(m),
            Input::Ideal(_) => Err(CliError::Input(
                "this command expects a model file, not an ideal document".into(),
            )),
        }
    }

    fn model(&self) -> Result<ModelSpec<F>, CliError> {
        let file = self.model_file()?;
        file.into_spec(self.field.clone()).map_err(|source| CliError::Parse {
            path: self.opts.input.display().to_string(),
            source,
        })
    }

    fn context(&self) -> Result<GeometryContext<F>, CliError> {
        Ok(GeometryContext::new(self.model()?, self.engine.clone())?)
    }

    fn ideal(&self) -> Result<Ideal<F>, CliError> {
        match self.input {
            Input::Ideal(doc) => doc
                .to_ideal(self.field.clone(), MonomialOrder::GrevLex)
                .map_err(|source| CliError::Parse {
                    path: self.opts.input.display().to_string(),
                    source,
                }),
            Input::Model(_) => Err(CliError::Input(
                "this command expects an ideal document (JSON), not a model file".into(),
            )),
        }
    }

    fn render(&self, ideal: &Ideal<F>) -> String {
        render_ideal(
            ideal,
            &RenderOptions {
                format: self.format(),
                order: MonomialOrder::GrevLex,
            },
        )
    }

    fn seeds(&self) -> Vec<u64> {
        (0..self.opts.ml_checks.max(1) as u64)
            .map(|k| self.opts.seed.wrapping_add(k))
            .collect()
    }
}

fn finish(mut s: String) -> String {
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn json<T: Serialize>(v: &T) -> String {
    finish(serde_json::to_string_pretty(v).expect("serializable"))
}

fn ideal_output<F: Field>(run: &Run<'_, F>, ideal: &Ideal<F>) -> Output {
    Output {
        stdout: finish(run.render(ideal)),
        notes: Vec::new(),
    }
}

fn parse_order(s: &str) -> Result<MonomialOrder, CliError> {
    match s {
        "grevlex" => Ok(MonomialOrder::GrevLex),
        "lex" => Ok(MonomialOrder::Lex),
        _ => {
            let k = s
                .strip_prefix("elim:")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k > 0)
                .ok_or_else(|| {
                    CliError::Input(format!("unknown order '{s}' (use grevlex, lex or elim:<k>)"))
                })?;
            Ok(MonomialOrder::BlockElim {
                k,
                inner: InnerOrder::GrevLex,
            })
        }
    }
}

#[derive(Serialize)]
struct ModelEcho {
    format: u32,
    label: String,
    field: String,
    states: usize,
    equations: Vec<String>,
}

fn parse_cmd<F: Field>(run: &Run<'_, F>) -> Result<Output, CliError> {
    if let Input::Ideal(_) = run.input {
        let ideal = run.ideal()?;
        return Ok(ideal_output(run, &ideal));
    }
    let spec = run.model()?;
    let echo = ModelEcho {
        format: 1,
        label: spec.label().to_string(),
        field: run.field.spec().to_string(),
        states: spec.states(),
        equations: spec
            .model_polys()
            .iter()
            .map(|f| render_polynomial(&display_form(f)))
            .collect(),
    };
    let stdout = if run.opts.json {
        json(&echo)
    } else {
        let mut s = format!(
            "format: 1\nlabel: {}\nfield: {}\nstates: {}\n",
            echo.label, echo.field, echo.states
        );
        for e in &echo.equations {
            s.push_str(&format!("eq: {e}\n"));
        }
        s
    };
    Ok(Output {
        stdout,
        notes: Vec::new(),
    })
}

fn gb_cmd<F: Field>(run: &Run<'_, F>) -> Result<Output, CliError> {
    let ideal = run.ideal()?;
    let order = parse_order(&run.opts.order)?;
    if let MonomialOrder::BlockElim { k, .. } = order {
        if k >= ideal.ring().nvars() {
            return Err(CliError::Input(format!(
                "elim:{k} needs more than {k} variables"
            )));
        }
    }
    let gb = ideal.groebner_basis(order, &run.engine)?;
    let ring = ideal.ring().with_order(order);
    let out = Ideal::new(&ring, gb.to_vec());
    Ok(Output {
        stdout: finish(render_ideal(
            &out,
            &RenderOptions {
                format: run.format(),
                order,
            },
        )),
        notes: Vec::new(),
    })
}

fn eliminate_cmd<F: Field>(run: &Run<'_, F>) -> Result<Output, CliError> {
    let ideal = run.ideal()?;
    let names: Vec<&str> = run.opts.vars.iter().map(String::as_str).collect();
    let out = eliminate_named(&ideal, &names, &run.engine)?;
    Ok(ideal_output(run, &out))
}

fn saturate_cmd<F: Field>(run: &Run<'_, F>) -> Result<Output, CliError> {
    let ideal = run.ideal()?;
    if run.opts.by.is_empty() {
        return Err(CliError::Input("saturate needs at least one --by polynomial".into()));
    }
    let by = run
        .opts
        .by
        .iter()
        .map(|s| {
            parse_polynomial(s, ideal.ring()).map_err(|source| CliError::Parse {
                path: "--by".into(),
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let out = if by.len() == 1 {
        saturate(&ideal, &by[0], &run.engine)?
    } else {
        saturate_by_ideal(&ideal, &Ideal::new(ideal.ring(), by), &run.engine)?
    };
    Ok(ideal_output(run, &out))
}

fn singular_cmd<F: Field>(run: &Run<'_, F>) -> Result<Output, CliError> {
    let ctx = run.context()?;
    let sing = ctx.singular()?;
    let mut out = ideal_output(run, sing);
    if sing.has_unit_generator() {
        out.notes.push("no singular points off the coordinate hyperplanes".into());
    }
    Ok(out)
}

fn conormal_cmd<F: Field>(run: &Run<'_, F>) -> Result<Output, CliError> {
    if run.opts.raw {
        let d = raw_duality(&run.ideal()?, &run.engine)?;
        return Ok(ideal_output(run, &d.conormal));
    }
    let ctx = run.context()?;
    Ok(ideal_output(run, ctx.conormal()?))
}

fn dual_cmd<F: Field>(run: &Run<'_, F>) -> Result<Output, CliError> {
    if run.opts.raw {
        let d = raw_duality(&run.ideal()?, &run.engine)?;
        return Ok(ideal_output(run, &d.dual));
    }
    let ctx = run.context()?;
    Ok(ideal_output(run, ctx.dual()?))
}

#[derive(Serialize)]
struct MlDegreeDoc {
    model: String,
    field: String,
    seeds: Vec<u64>,
    ml_degree: u64,
}

fn mldeg_cmd<F: Field>(run: &Run<'_, F>) -> Result<Output, CliError> {
    let ctx = run.context()?;
    let seeds = run.seeds();
    let d = ctx.ml_degree_checked(&seeds)?;
    let stdout = if run.opts.json {
        json(&MlDegreeDoc {
            model: ctx.spec().label().to_string(),
            field: run.field.spec().to_string(),
            seeds,
            ml_degree: d,
        })
    } else {
        format!("{d}\n")
    };
    Ok(Output {
        stdout,
        notes: Vec::new(),
    })
}

#[derive(Serialize)]
struct NotedIdeal {
    #[serde(flatten)]
    doc: IdealDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

const EMPTY_DSL: &str = "data singular locus is empty";

/// Recompute the data singular locus over the rationals and compare it with
/// `modular` after reduction modulo the prime.
fn verify_over_q<F: Field>(run: &Run<'_, F>, modular: &Ideal<F>) -> Result<Option<bool>, CliError> {
    if !run.opts.verify_q {
        return Ok(None);
    }
    let Some(prime) = parse_prime(&run.field.spec().to_string()) else {
        return Ok(None);
    };
    let qctx = GeometryContext::new(
        run.model_file()?
            .into_spec(Rationals)
            .map_err(|source| CliError::Parse {
                path: run.opts.input.display().to_string(),
                source,
            })?,
        run.engine.clone(),
    )?;
    let q = qctx.data_singular_locus()?;
    let docs = ideal_doc(modular, MonomialOrder::GrevLex);
    let modular = docs
        .to_ideal(prime, MonomialOrder::GrevLex)
        .map_err(|e| CliError::Invariant(e.to_string()))?;
    let ok = agrees_mod_p(q, &modular, &run.engine)?;
    if !ok {
        return Err(CliError::Invariant(
            "the rational data singular locus does not reduce to the modular one".into(),
        ));
    }
    Ok(Some(ok))
}

fn parse_prime(spec: &str) -> Option<PrimeField> {
    let p: u64 = spec.strip_prefix("fp:")?.parse().ok()?;
    PrimeField::new(p).ok()
}

fn dsl_cmd<F: Field>(run: &Run<'_, F>) -> Result<Output, CliError> {
    let ctx = run.context()?;
    let dsl = ctx.data_singular_locus()?;
    let empty = dsl.has_unit_generator();
    let verified = verify_over_q(run, dsl)?;
    let mut notes = Vec::new();
    if empty {
        notes.push(EMPTY_DSL.to_string());
    }
    if verified == Some(true) {
        notes.push("rational recomputation agrees modulo the prime".into());
    }
    let stdout = if run.opts.json {
        json(&NotedIdeal {
            doc: ideal_doc(dsl, MonomialOrder::GrevLex),
            note: empty.then(|| EMPTY_DSL.to_string()),
        })
    } else {
        finish(run.render(dsl))
    };
    Ok(Output { stdout, notes })
}

fn hadamard_cmd<F: Field>(run: &Run<'_, F>) -> Result<Output, CliError> {
    let ctx = run.context()?;
    let out = match run.opts.with.as_str() {
        "dual" => ctx.upper_bound()?,
        "point" => ctx.lower_bound()?,
        other => {
            return Err(CliError::Input(format!(
                "unknown --with '{other}' (use dual or point)"
            )))
        }
    };
    Ok(ideal_output(run, out))
}

fn theorem_text(t: &mlsing_core::pipeline::TheoremReport) -> String {
    let edim = match t.edim {
        None => "none (a factor is empty)".to_string(),
        Some(e) if e < 0 => format!("{e} (possibly empty)"),
        Some(e) => e.to_string(),
    };
    format!(
        "lower_contained: {}\nlower_equal: {}\nupper_contains: {}\nupper_equal: {}\ndim_sing: {}\ndim_dual: {}\ndim_dsl: {}\ndim_hadamard: {}\nedim: {edim}\n",
        t.lower_contained,
        t.lower_equal,
        t.upper_contains,
        t.upper_equal,
        t.dims.sing,
        t.dims.dual,
        t.dims.dsl,
        t.dims.hadamard,
    )
}

fn check_theorem_cmd<F: Field>(run: &Run<'_, F>) -> Result<Output, CliError> {
    let ctx = run.context()?;
    let t = ctx.theorem_check()?;
    let stdout = if run.opts.json { json(&t) } else { theorem_text(&t) };
    Ok(Output {
        stdout,
        notes: Vec::new(),
    })
}

fn lines<F: Field>(ideal: &Ideal<F>) -> Vec<String> {
    mlsing_core::textio::canonical_generators(ideal, MonomialOrder::GrevLex)
        .iter()
        .map(render_polynomial)
        .collect()
}

fn run_all_cmd<F: Field>(run: &Run<'_, F>) -> Result<Output, CliError> {
    let ctx = run.context()?;
    let sing = ctx.singular()?;
    let dual = ctx.dual()?;
    let dsl = ctx.data_singular_locus()?;
    let ml_degree = ctx.ml_degree_checked(&run.seeds())?;
    let theorem = ctx.theorem_check()?;
    let verify_q = verify_over_q(run, dsl)?;
    let report = Report {
        model: ctx.spec().label().to_string(),
        field: run.field.spec().to_string(),
        seed: run.opts.seed,
        ring: ring_doc(ctx.ring().full()),
        artifacts: Artifacts {
            sing: lines(sing),
            dual: lines(dual),
            dsl: lines(dsl),
        },
        ml_degree,
        theorem,
        stats: run.engine.stats(),
        verify_q,
    };
    let mut notes = Vec::new();
    if dsl.has_unit_generator() {
        notes.push(EMPTY_DSL.to_string());
    }
    let stdout = if run.opts.json {
        json(&report)
    } else {
        report.to_text(&theorem_text(&report.theorem))
    };
    Ok(Output { stdout, notes })
}
