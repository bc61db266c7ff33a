//! Command dispatch. Every command returns a [`Report`] whose JSON form is
//! deterministic: objects are built from ordered maps and vectors only.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use dgsymp_core::cdga::{cotangent_module, CdgaPresentation, GcAlgebra};
use dgsymp_core::complexes::{CohomologyTable, Evaluation, FreeComplex};
use dgsymp_core::derham::{build_dr, closed_forms, DeRhamComplex};
use dgsymp_core::kernel::GradedMatrix;
use dgsymp_core::moduli::{
    base_change_check, complex_isomorphism, cotangent_prsymp_of, cotangent_st, prsymp_pair, prsymp_st_comparison, tangent_prsymp_of,
    validate_coalgebroid,
};
use dgsymp_core::symplectic::{bilinear_form, is_nondegenerate, qf_space, quadratic_form, sharp};
use serde::Serialize;
use serde_json::{json, Value};

use crate::document::{point, InputDocument, DEFAULT_MAX_POLYDEG, DEFAULT_MAX_WEIGHT};
use crate::error::CliError;

pub const COMMANDS: [&str; 11] = [
    "validate",
    "dr",
    "closed-forms",
    "check-symplectic",
    "quadform",
    "qf-space",
    "tangent-prsymp",
    "cotangent-prsymp",
    "cotangent-st",
    "base-change",
    "validate-coalgebroid",
];

/// Values given on the command line take precedence over `params`.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub p: Option<u32>,
    pub n: Option<i32>,
    pub max_weight: Option<u32>,
    pub max_polydeg: Option<u32>,
    pub omega: Option<String>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    #[serde(rename = "W")]
    pub max_weight: u32,
    #[serde(rename = "D")]
    pub max_polydeg: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub window: Window,
    #[serde(rename = "window-limited")]
    pub window_limited: bool,
    pub result: Value,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}  (W = {}, D = {})\n", self.command, self.window.max_weight, self.window.max_polydeg);
        s.push_str(&self.text);
        if self.window_limited {
            s.push_str("window-limited: true\n");
        }
        s
    }
}

struct Ctx<'a> {
    doc: &'a InputDocument,
    window: Window,
    p: u32,
    n: Option<i32>,
    omega: Option<String>,
    alpha: Option<String>,
    beta: Option<String>,
}

struct Out {
    result: Value,
    text: String,
    window_limited: bool,
}

pub fn run(command: &str, doc: &InputDocument, o: &Overrides) -> Result<Report, CliError> {
    let params = &doc.params;
    let window = Window {
        max_weight: o.max_weight.or(params.max_weight).unwrap_or(DEFAULT_MAX_WEIGHT),
        max_polydeg: o.max_polydeg.or(params.max_polydeg).unwrap_or(DEFAULT_MAX_POLYDEG),
    };
    let ctx = Ctx {
        doc,
        window: window.clone(),
        p: o.p.or(params.p).unwrap_or(2),
        n: o.n.or(params.n),
        omega: o.omega.clone().or_else(|| params.omega.clone()),
        alpha: o.alpha.clone().or_else(|| params.alpha.clone()),
        beta: o.beta.clone().or_else(|| params.beta.clone()),
    };
    let out = match command {
        "validate" => validate(&ctx)?,
        "dr" => dr(&ctx)?,
        "closed-forms" => forms(&ctx)?,
        "check-symplectic" => check_symplectic(&ctx)?,
        "quadform" => quadform(&ctx)?,
        "qf-space" => qf(&ctx)?,
        "tangent-prsymp" => tangent(&ctx)?,
        "cotangent-prsymp" => cotangent(&ctx)?,
        "cotangent-st" => st(&ctx)?,
        "base-change" => base_change(&ctx)?,
        "validate-coalgebroid" => coalgebroid(&ctx)?,
        other => return Err(CliError::Parse { field: "command".into(), message: format!("unknown command {other}") }),
    };
    Ok(Report { command: command.to_string(), window, window_limited: out.window_limited, result: out.result, text: out.text })
}

fn matrix_json(m: &GradedMatrix, alg: &GcAlgebra) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| (0..m.cols()).map(|j| alg.format(&m.get_or_zero(i, j))).collect()).collect();
    json!(rows)
}

fn matrix_text(m: &GradedMatrix, alg: &GcAlgebra) -> String {
    let rows: Vec<String> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| alg.format(&m.get_or_zero(i, j))).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", rows.iter().map(|r| format!("[{r}]")).collect::<Vec<_>>().join(", "))
}

fn ranks_json(c: &FreeComplex) -> Value {
    json!(c.ranks().into_iter().map(|(d, r)| (d.to_string(), r)).collect::<BTreeMap<_, _>>())
}

fn table_json(t: &CohomologyTable) -> Value {
    json!(t.dims.iter().map(|(d, r)| (d.to_string(), *r)).collect::<BTreeMap<_, _>>())
}

fn table_text(t: &CohomologyTable) -> String {
    let parts: Vec<String> = t.dims.iter().map(|(d, r)| format!("H^{d} = {r}")).collect();
    if parts.is_empty() {
        "acyclic".into()
    } else {
        parts.join(", ")
    }
}

impl Ctx<'_> {
    fn n(&self) -> Result<i32, CliError> {
        self.n.ok_or_else(|| CliError::Parse { field: "params.n".into(), message: "n is required (use --n)".into() })
    }

    fn build_dr(&self, a: &Arc<CdgaPresentation>) -> Result<DeRhamComplex, CliError> {
        Ok(build_dr(a, self.window.max_weight, self.window.max_polydeg)?)
    }

    /// Evaluation on the base: exact over the ground field, otherwise at `base_point`.
    fn base_eval<'p>(&self, base: &CdgaPresentation, slot: &'p mut Option<dgsymp_core::cdga::Point>) -> Result<Evaluation<'p>, CliError> {
        if let Some(spec) = &self.doc.params.base_point {
            *slot = Some(point(base, spec, "params.base_point")?);
            return Ok(Evaluation::At(slot.as_ref().expect("just set")));
        }
        Ok(Evaluation::Exact)
    }
}

fn validate(ctx: &Ctx) -> Result<Out, CliError> {
    let a = ctx.doc.presentation()?;
    let report = a.validate()?;
    let alg = a.algebra();
    let gens: Vec<Value> = alg
        .generators()
        .iter()
        .zip(&a.differential().images)
        .map(|(g, d)| json!({"name": g.name, "degree": g.degree, "d": alg.format(d)}))
        .collect();
    let l = cotangent_module(&a);
    let text = format!(
        "generators: {}\nd^2 = 0: {}\ngraded-commutative: {}\ncotangent ranks: {}\n",
        report.generators,
        report.square_zero,
        report.graded_commutative,
        serde_json::to_string(&ranks_json(&l)).expect("json")
    );
    Ok(Out {
        result: json!({
            "generators": gens,
            "square_zero": report.square_zero,
            "graded_commutative": report.graded_commutative,
            "cotangent_ranks": ranks_json(&l),
        }),
        text,
        window_limited: false,
    })
}

fn dr(ctx: &Ctx) -> Result<Out, CliError> {
    let a = ctx.doc.presentation()?;
    let dr = ctx.build_dr(&a)?;
    let ids = dr.check_identities();
    let weights: BTreeMap<String, usize> = dr.gmc().components().iter().map(|(p, c)| (p.to_string(), c.rank())).collect();
    let mut text = String::new();
    for (p, r) in &weights {
        let _ = writeln!(text, "weight {p}: rank {r}");
    }
    let _ = writeln!(text, "ε² = 0 and εd + dε = 0 on {} monomials: {}", ids.monomials_checked, ids.holds());
    let _ = writeln!(text, "bounded in weight: {}", !dr.exceeds_window());
    Ok(Out {
        result: json!({
            "weights": weights,
            "monomials_checked": ids.monomials_checked,
            "epsilon_square_failures": ids.epsilon_square_failures,
            "anticommutator_failures": ids.anticommutator_failures,
            "identities_hold": ids.holds(),
            "bounded": !dr.exceeds_window(),
        }),
        text,
        window_limited: dr.exceeds_window() || dr.dropped_terms(),
    })
}

fn forms(ctx: &Ctx) -> Result<Out, CliError> {
    let a = ctx.doc.presentation()?;
    let dr = ctx.build_dr(&a)?;
    let n = ctx.n()?;
    let cf = closed_forms(&dr, ctx.p, n)?;
    let listed: Vec<Vec<String>> = cf.forms.iter().map(|f| f.tail.iter().map(|w| dr.format(w)).collect()).collect();
    let mut text = format!("closed {}-forms of degree {n}: {}\n", ctx.p, cf.forms.len());
    for tail in &listed {
        let _ = writeln!(text, "  {}", tail.join("  |  "));
    }
    Ok(Out {
        result: json!({"p": ctx.p, "n": n, "dimension": cf.forms.len(), "forms": listed}),
        text,
        window_limited: cf.window_limited,
    })
}

fn check_symplectic(ctx: &Ctx) -> Result<Out, CliError> {
    let a = ctx.doc.presentation()?;
    let dr = ctx.build_dr(&a)?;
    let spec = ctx.doc.form_spec(ctx.omega.as_deref())?;
    let form = ctx.doc.form(spec, &dr)?;
    let closure = form.verify(&dr)?;
    let s = sharp(&dr, &form, form.n)?;
    let mut points = ctx.doc.points(&a)?;
    if points.is_empty() {
        points.push(a.origin());
    }
    let r = is_nondegenerate(&s, &points)?;
    let alg = a.algebra();
    let det = alg.format(&s.det);
    let failing: Vec<String> = r.failing_points.iter().map(|&k| points[k].describe(alg)).collect();
    let text = format!(
        "form {} (n = {}), closed: {}\nsharp = {}\nnon-degenerate: {}, det = {det}\nstrict inverse: {}\n{}",
        spec.name,
        form.n,
        closure.closed,
        matrix_text(&s.matrix, alg),
        r.nondegenerate,
        r.strict,
        if failing.is_empty() { String::new() } else { format!("fails at: {}\n", failing.join(", ")) }
    );
    Ok(Out {
        result: json!({
            "form": spec.name,
            "n": form.n,
            "closed": closure.closed,
            "sharp": matrix_json(&s.matrix, alg),
            "pairing": matrix_json(&s.pairing(), alg),
            "det": det,
            "nondegenerate": r.nondegenerate,
            "strict": r.strict,
            "points": points.iter().map(|p| p.describe(alg)).collect::<Vec<_>>(),
            "failing_points": failing,
        }),
        text,
        window_limited: closure.window_limited || dr.dropped_terms(),
    })
}

fn quadform(ctx: &Ctx) -> Result<Out, CliError> {
    let a = ctx.doc.presentation()?;
    let dr = ctx.build_dr(&a)?;
    let omega = ctx.doc.form(ctx.doc.form_spec(ctx.omega.as_deref())?, &dr)?;
    let s = sharp(&dr, &omega, omega.n)?;
    let alpha_name = ctx.alpha.as_deref().ok_or_else(|| CliError::Parse { field: "params.alpha".into(), message: "alpha is required".into() })?;
    let alpha = ctx.doc.form(ctx.doc.form_spec(Some(alpha_name))?, &dr)?;
    let alg = a.algebra();
    let (value, label) = match ctx.beta.as_deref() {
        Some(b) => {
            let beta = ctx.doc.form(ctx.doc.form_spec(Some(b))?, &dr)?;
            (bilinear_form(&dr, &s, &alpha, &beta)?, "B")
        }
        None => (quadratic_form(&dr, &s, &alpha)?, "q"),
    };
    let points = ctx.doc.points(&a)?;
    let at: Vec<Value> =
        points.iter().map(|p| json!({"point": p.describe(alg), "value": p.eval(alg, &value).to_string()})).collect();
    let mut text = format!("{label} = {}\n", alg.format(&value));
    for p in &points {
        let _ = writeln!(text, "  at {}: {}", p.describe(alg), p.eval(alg, &value));
    }
    Ok(Out { result: json!({"kind": label, "value": alg.format(&value), "at_points": at}), text, window_limited: dr.dropped_terms() })
}

fn qf(ctx: &Ctx) -> Result<Out, CliError> {
    let a = ctx.doc.presentation()?;
    let n = ctx.n()?;
    let points = ctx.doc.points(&a)?;
    let table = match points.first() {
        Some(p) => qf_space(&a, n, Evaluation::At(p))?,
        None => qf_space(&a, n, Evaluation::Exact)?,
    };
    let text = format!("H(Hom(A[{}], Sym²𝕃)): {}\nH^0 = {}\n", -n, table_text(&table), table.dim(0));
    Ok(Out { result: json!({"n": n, "cohomology": table_json(&table), "dimension": table.dim(0)}), text, window_limited: table.window_limited })
}

fn tangent(ctx: &Ctx) -> Result<Out, CliError> {
    let a = ctx.doc.presentation()?;
    let base = ctx.doc.base()?;
    let dr = ctx.build_dr(&a)?;
    let n = ctx.n()?;
    let t = tangent_prsymp_of(&dr, n, &base)?;
    let mut slot = None;
    let h = t.cohomology(ctx.base_eval(&base, &mut slot)?)?;
    let text = format!("rank by degree: {}\ncohomology: {}\n", serde_json::to_string(&ranks_json(&t)).expect("json"), table_text(&h));
    Ok(Out {
        result: json!({"n": n, "ranks": ranks_json(&t), "cohomology": table_json(&h)}),
        text,
        window_limited: dr.dropped_terms() || h.window_limited,
    })
}

fn cotangent(ctx: &Ctx) -> Result<Out, CliError> {
    let a = ctx.doc.presentation()?;
    let base = ctx.doc.base()?;
    let dr = ctx.build_dr(&a)?;
    let n = ctx.n()?;
    let c = cotangent_prsymp_of(&dr, n, &base)?;
    let (e, f) = prsymp_pair(&dr, n, &base)?;
    let matches_st = prsymp_st_comparison(&c, &cotangent_st(&e, f.gmc())?).is_ok();
    let dual_to_tangent = match tangent_prsymp_of(&dr, n, &base) {
        Ok(t) => Some(complex_isomorphism(&t.dual(), &c.complex).is_some()),
        Err(dgsymp_core::Error::NotBounded(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mut slot = None;
    let h = c.complex.cohomology(ctx.base_eval(&base, &mut slot)?)?;
    let blocks: Vec<Value> = c.blocks.iter().map(|&(p, _, r)| json!({"p": p, "rank": r})).collect();
    let text = format!(
        "summands: {}\ncohomology: {}\nmatches source-target formula: {matches_st}\ndual to tangent: {}\n",
        c.blocks.iter().map(|&(p, _, r)| format!("p={p}: {r}")).collect::<Vec<_>>().join(", "),
        table_text(&h),
        dual_to_tangent.map_or("n/a (unbounded)".to_string(), |b| b.to_string()),
    );
    Ok(Out {
        result: json!({
            "n": n,
            "summands": blocks,
            "ranks": ranks_json(&c.complex),
            "cohomology": table_json(&h),
            "matches_source_target": matches_st,
            "dual_to_tangent": dual_to_tangent,
        }),
        text,
        window_limited: c.window_limited || h.window_limited,
    })
}

fn st(ctx: &Ctx) -> Result<Out, CliError> {
    let a = ctx.doc.presentation()?;
    let base = ctx.doc.base()?;
    let dr = ctx.build_dr(&a)?;
    let n = ctx.n()?;
    let (e, f) = prsymp_pair(&dr, n, &base)?;
    let l = cotangent_st(&e, f.gmc())?;
    let mut slot = None;
    let h = l.complex.cohomology(ctx.base_eval(&base, &mut slot)?)?;
    let blocks: Vec<Value> = l.blocks.iter().map(|&(w, _, r)| json!({"weight": w, "rank": r})).collect();
    let text = format!(
        "|Hom(E, F)^∨|^l with E = B(2)[{}], F = DR ⊗ B\nweights: {}\ncohomology: {}\n",
        -n - 2,
        l.blocks.iter().map(|&(w, _, r)| format!("{w}: {r}")).collect::<Vec<_>>().join(", "),
        table_text(&h)
    );
    Ok(Out {
        result: json!({"n": n, "weights": blocks, "ranks": ranks_json(&l.complex), "cohomology": table_json(&h)}),
        text,
        window_limited: dr.exceeds_window() || dr.dropped_terms() || h.window_limited,
    })
}

fn base_change(ctx: &Ctx) -> Result<Out, CliError> {
    let a = ctx.doc.presentation()?;
    let base = ctx.doc.base()?;
    let (target, phi) = ctx.doc.target(&base)?;
    let dr = ctx.build_dr(&a)?;
    let n = ctx.n()?;
    let (e, f) = prsymp_pair(&dr, n, &base)?;
    let r = base_change_check(&e, f.gmc(), &phi, &target)?;
    let ranks = |m: &BTreeMap<i32, usize>| json!(m.iter().map(|(p, r)| (p.to_string(), *r)).collect::<BTreeMap<_, _>>());
    let text = format!(
        "comparison is an isomorphism: {}\nHom(E,F) ≅ E^∨ ⊗ F before/after: {}/{}\n",
        r.isomorphism, r.tensor_hom_source, r.tensor_hom_target
    );
    Ok(Out {
        result: json!({
            "n": n,
            "isomorphism": r.isomorphism,
            "tensor_hom_source": r.tensor_hom_source,
            "tensor_hom_target": r.tensor_hom_target,
            "source_ranks": ranks(&r.source_ranks),
            "target_ranks": ranks(&r.target_ranks),
            "source_dimension": r.source_dimension,
            "target_dimension": r.target_dimension,
        }),
        text,
        window_limited: dr.exceeds_window() || dr.dropped_terms(),
    })
}

fn coalgebroid(ctx: &Ctx) -> Result<Out, CliError> {
    let a = ctx.doc.presentation()?;
    let c = ctx.doc.coalgebroid(&a, ctx.window.max_weight, ctx.window.max_polydeg)?;
    let r = validate_coalgebroid(&c);
    let mut text = format!("coalgebroid: {}\n", if r.passed() { "pass" } else { "fail" });
    let mut checks = Vec::new();
    for ch in &r.checks {
        let _ = writeln!(
            text,
            "  {}: {}{}",
            ch.axiom.name(),
            if ch.passed { "pass" } else { "fail" },
            if ch.offending.is_empty() { String::new() } else { format!(" (first offending: {})", ch.offending[0]) }
        );
        checks.push(json!({"axiom": ch.axiom.name(), "passed": ch.passed, "offending": ch.offending}));
    }
    Ok(Out {
        result: json!({"passed": r.passed(), "monomials_checked": r.monomials_checked, "checks": checks}),
        text,
        window_limited: false,
    })
}
