//! Commands: each takes a parsed scenario and returns a JSON report with
//! its checks and a short human summary.

use serde_json::{json, Map, Value};

use crate::charts::{has_interior_codim1_stratum, stratify, suborbifold_model, LocalChart, Stratum};
use crate::germs::{
    cocycle_identities, faithfulness_check, invariant_projection, is_regular_value, lift_replacement_invariance,
    obstruction_certificate, preimage_model, preimage_model_boundary, real_target_structure, recenter, sard_sample,
    InvariantProjection, MapGerm, PreimageModel, Reason,
};
use crate::groups::{GroupHom, InvariantOutcome, Subgroup};
use crate::onedim::{
    assemble_components, boundary_parity, classify_1_orbifold, forbidden_index2_check, retraction_contradiction,
    OneOrbifoldComponent, OneOrbifoldType, Piece, RetractionOutcome, RetractionScenario,
};
use crate::ratlin::{format_rational, zero_vec, Matrix, Rational, Subspace};
use crate::scenario::{atlas_scenario, chart_scenario, components, germ_scenario, name_of, suborbifold_request, RunError};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SARD_SAMPLES: usize = 10_000;
pub const DEFAULT_SARD_SEED: u64 = 42;

type Res<T> = Result<T, RunError>;

#[derive(Clone, Debug)]
pub struct Report {
    pub value: Value,
    pub passed: bool,
    pub summary: Vec<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("reports serialize") + "\n"
    }
}

struct Builder {
    command: &'static str,
    name: String,
    seed: Option<u64>,
    checks: Vec<(String, bool)>,
    body: Map<String, Value>,
    summary: Vec<String>,
}

impl Builder {
    fn new(command: &'static str, v: &Value) -> Self {
        Self { command, name: name_of(v), seed: None, checks: Vec::new(), body: Map::new(), summary: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    fn put(&mut self, key: &str, v: Value) {
        self.body.insert(key.to_string(), v);
    }

    fn say(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }

    fn finish(mut self) -> Report {
        let passed = self.checks.iter().all(|(_, ok)| *ok);
        let failed: Vec<&str> = self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
        if self.checks.is_empty() {
            self.summary.push(format!("{}: done", self.name));
        } else if failed.is_empty() {
            self.summary.push(format!("{}: all {} checks passed", self.name, self.checks.len()));
        } else {
            self.summary.push(format!("{}: failed: {}", self.name, failed.join(", ")));
        }
        let checks: Vec<Value> = self.checks.iter().map(|(n, ok)| json!({"name": n, "passed": ok})).collect();
        let mut value = Map::new();
        value.insert("tool".into(), json!("orbicalc"));
        value.insert("version".into(), json!(VERSION));
        value.insert("command".into(), json!(self.command));
        value.insert("scenario".into(), json!(self.name));
        value.insert("seed".into(), self.seed.map_or(Value::Null, |s| json!(s)));
        value.insert("status".into(), json!(if passed { "ok" } else { "failed" }));
        value.insert("checks".into(), Value::Array(checks));
        value.extend(self.body);
        Report { value: Value::Object(value), passed, summary: self.summary }
    }
}

pub fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn vec_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_strings())
}

pub fn subspace_json(s: &Subspace) -> Value {
    json!({"dim": s.dim(), "basis": s.to_strings()})
}

fn subgroup_json(h: &Subgroup) -> Value {
    json!({"order": h.order(), "members": h.members()})
}

fn fmt_vec(v: &[Rational]) -> String {
    format!("({})", v.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

fn stratum_json(s: &Stratum) -> Value {
    json!({
        "isotropy": subgroup_json(&s.isotropy),
        "fixed": subspace_json(&s.fixed),
        "dim": s.dim,
        "codim": s.codim,
        "boundary": s.boundary,
        "singular": s.is_singular(),
    })
}

fn projection_json(proj: &InvariantProjection, b: &mut Builder, label: &str) -> Value {
    let checks = proj.check();
    let cocycle = cocycle_identities(proj);
    b.check(format!("{label}: projection idempotent"), checks.idempotent);
    b.check(format!("{label}: projection commutes with N"), checks.commutes_with_n);
    b.check(format!("{label}: image of A_x inside K"), checks.image_in_k);
    b.check(format!("{label}: g - I maps into K"), checks.a_gamma_into_k);
    b.check(format!("{label}: N fixes ker A_x pointwise"), checks.kernel_fixed_by_n);
    b.check(format!("{label}: ker A_x + im A_x is direct"), checks.direct_sum);
    b.check(format!("{label}: cocycle identities"), cocycle.passed());
    json!({
        "n": subgroup_json(&proj.n),
        "a_gamma": proj.a_gamma.iter().map(|(g, a)| json!({"element": g, "matrix": matrix_json(a)})).collect::<Vec<_>>(),
        "average": matrix_json(&proj.average),
        "a_x": matrix_json(&proj.projection),
        "kernel": subspace_json(&proj.kernel),
        "image": subspace_json(&proj.image),
        "k": subspace_json(&proj.k),
        "checks": {
            "idempotent": checks.idempotent,
            "commutes_with_n": checks.commutes_with_n,
            "image_in_k": checks.image_in_k,
            "a_gamma_into_k": checks.a_gamma_into_k,
            "kernel_fixed_by_n": checks.kernel_fixed_by_n,
            "direct_sum": checks.direct_sum,
        },
        "cocycle": {
            "pairs_checked": cocycle.pairs_checked,
            "failures": cocycle.failures.iter().map(|(g, d, w)| json!([g, d, w])).collect::<Vec<_>>(),
        },
    })
}

fn model_json(m: &PreimageModel) -> Value {
    let boundary = m.boundary.as_ref().map_or(Value::Null, |bd| {
        json!({
            "on_boundary": bd.on_boundary,
            "boundary_kernel": bd.boundary_kernel.as_ref().map_or(Value::Null, subspace_json),
        })
    });
    json!({
        "point": vec_json(&m.point),
        "p": vec_json(&m.p),
        "jacobian": matrix_json(&m.jacobian),
        "kernel": subspace_json(&m.kernel),
        "g": subgroup_json(&m.g),
        "gamma_s_order": m.gamma_s.order(),
        "gamma_s_cosets": m.gamma_s.cosets(),
        "full": m.suborbifold.full,
        "dim": m.dim,
        "boundary": boundary,
    })
}

/// Model of `f^{-1}(p)` at `x` after moving `x` to the origin.
pub fn local_model(germ: &MapGerm, x: &[Rational]) -> Result<(MapGerm, PreimageModel), RunError> {
    let local = recenter(germ, x).map_err(RunError::math)?;
    let (o, q0) = (zero_vec(local.source().dim()), zero_vec(local.target().dim()));
    let model = if local.source().has_boundary() {
        preimage_model_boundary(&local, &q0, &o)
    } else {
        preimage_model(&local, &q0, &o)
    }
    .map_err(RunError::math)?;
    Ok((local, model))
}

fn point_section(germ: &MapGerm, x: &[Rational], b: &mut Builder) -> Res<Value> {
    let label = format!("point {}", fmt_vec(x));
    let (local, model) = local_model(germ, x)?;
    let group = local.source().group();
    let (n, k) = (local.source().dim(), local.target().dim());
    b.check(format!("{label}: dim S = dim O - dim P"), model.dim == n - k && model.kernel.dim() == n - k);
    b.check(format!("{label}: K is invariant"), group.elements().iter().all(|g| model.kernel.is_invariant_under(g)));
    b.check(format!("{label}: |Gamma_S| |G| = |Gamma|"), model.gamma_s.order() * model.g.order() == group.order());
    b.check(format!("{label}: Gamma_S acts effectively on K"), model.gamma_s_effective(&local));
    b.check(format!("{label}: suborbifold is full"), model.suborbifold.full);
    let faith = faithfulness_check(&local, &model);
    b.check(format!("{label}: N meets G trivially"), faith.intersection_trivial);
    b.check(format!("{label}: N injects into Gamma_S"), faith.injective);
    let proj = invariant_projection(&local);
    let projection = projection_json(&proj, b, &label);
    let real = if k == 1 && local.target().group().is_trivial() {
        let r = real_target_structure(&local, &model).map_err(RunError::math)?;
        b.check(format!("{label}: real target splitting"), r.holds());
        json!({
            "gamma_s_is_gamma": r.gamma_s_is_gamma,
            "ker_ax": subspace_json(&r.ker_ax),
            "ker_ax_fixed": r.ker_ax_fixed,
            "ker_ax_is_fixed_line": r.ker_ax_is_fixed_line,
            "image_is_kernel": r.image_is_kernel,
            "stratum_dim": r.stratum_dim,
            "stratum_ok": r.stratum_ok,
        })
    } else {
        Value::Null
    };
    b.say(format!(
        "{label}: isotropy order {}, preimage dim {}, |Gamma_S| = {}, |G| = {}",
        group.order(),
        model.dim,
        model.gamma_s.order(),
        model.g.order()
    ));
    Ok(json!({
        "point": vec_json(x),
        "isotropy_order": group.order(),
        "preimage": model_json(&model),
        "faithfulness": {
            "n_order": faith.n_order,
            "g_order": faith.g_order,
            "intersection_trivial": faith.intersection_trivial,
            "images": faith.images,
            "injective": faith.injective,
        },
        "projection": projection,
        "real_target": real,
    }))
}

/// The full germ pipeline: equivariance, regularity, preimage models at each
/// supplied lift, the invariant projection, faithfulness and lift
/// replacement.
pub fn analyze(v: &Value) -> Res<Report> {
    let s = germ_scenario(v)?;
    let germ = s.germ()?;
    let mut b = Builder::new("analyze", v);
    b.check("equivariance", true);
    let base = germ.base_point().to_vec();
    let at_base = germ.lift().eval(&base).map_err(RunError::math)?;
    let p = s.p.clone().unwrap_or_else(|| at_base.clone());
    let lifts = s.preimage_lifts.clone().unwrap_or_else(|| if at_base == p { vec![base.clone()] } else { Vec::new() });
    let reg = is_regular_value(&germ, &p, &lifts).map_err(RunError::math)?;
    b.check("regular value", reg.regular);
    b.put("germ", json!({
        "source_dim": germ.source().dim(),
        "target_dim": germ.target().dim(),
        "source_order": germ.source().group().order(),
        "target_order": germ.target().group().order(),
        "n_order": germ.theta().kernel().order(),
        "base_point": vec_json(&base),
        "lift": germ.lift().to_string(),
    }));
    b.put("p", vec_json(&p));
    b.put("regularity", json!({
        "regular": reg.regular,
        "points": reg.points.iter().map(|(x, r)| json!({"point": vec_json(x), "rank": r})).collect::<Vec<_>>(),
    }));
    if reg.regular {
        b.say(format!("p = {} is a regular value ({} preimage lifts)", fmt_vec(&p), lifts.len()));
    } else {
        b.say(format!("p = {} is not a regular value", fmt_vec(&p)));
    }
    let base_projection = if germ.is_centered_at(&base) {
        let proj = invariant_projection(&germ);
        b.say(format!("base point: |N| = {}, rank A_x = {}", proj.n.order(), proj.image.dim()));
        projection_json(&proj, &mut b, "base point")
    } else {
        Value::Null
    };
    b.put("projection", base_projection);
    let mut replacement = Vec::new();
    for eta in 0..germ.target().group().order() {
        let r = lift_replacement_invariance(&germ, eta).map_err(RunError::math)?;
        b.check(format!("lift replacement eta={eta}"), r.passed());
        replacement.push(json!({"eta": eta, "kernels_equal": r.kernels_equal(), "n_equal": r.n_equal()}));
    }
    b.put("replacement", Value::Array(replacement));
    let mut points = Vec::new();
    if reg.regular {
        for x in &lifts {
            points.push(point_section(&germ, x, &mut b)?);
        }
    }
    b.put("points", Value::Array(points));
    Ok(b.finish())
}

fn outcome_str(o: &InvariantOutcome) -> &'static str {
    match o {
        InvariantOutcome::Found(_) => "found",
        InvariantOutcome::CertifiedNone => "certified-none",
        InvariantOutcome::NoneFound => "none-found",
    }
}

pub fn obstruct(v: &Value) -> Res<Report> {
    let s = germ_scenario(v)?;
    let theta = GroupHom::from_generator_matrices(s.source.group().clone(), s.target.group().clone(), &s.theta_gen_images)
        .map_err(RunError::math)?;
    let cert = obstruction_certificate(&s.source, &s.target, &theta);
    let mut b = Builder::new("obstruct", v);
    let (n, k) = (s.source.dim(), s.target.dim());
    let detail = match &cert.reason {
        Reason::EqualDimNontrivialKernel { n: nn } => {
            b.check("reason a re-verified", n == k && !nn.is_trivial() && *nn == theta.kernel());
            json!({"n": subgroup_json(nn)})
        }
        Reason::NoInvariantSubspace { dim } => {
            let ok = cert.invariant_search.as_ref().is_some_and(|s| {
                s.outcome == InvariantOutcome::CertifiedNone && s.leaves.iter().all(|l| l.irreducible)
            });
            b.check("reason b re-verified", ok && *dim == n - k);
            json!({"dim": dim})
        }
        Reason::LinearWitness { map } => {
            let w = cert.witness_germ(&s.source, &s.target, &theta);
            let regular = w.as_ref().is_some_and(|g| g.jacobian_at(&zero_vec(n)).map(|j| j.rank() == k).unwrap_or(false));
            b.check("witness germ valid and regular at the center", regular);
            json!({"map": matrix_json(map)})
        }
        Reason::SourceTooSmall => json!({"source_dim": n, "target_dim": k}),
        Reason::NoEquivariantMap | Reason::Inconclusive => Value::Null,
    };
    let search = cert.invariant_search.as_ref().map_or(Value::Null, |s| {
        json!({
            "outcome": outcome_str(&s.outcome),
            "found": match &s.outcome { InvariantOutcome::Found(w) => subspace_json(w), _ => Value::Null },
            "dim_wanted": s.dim_wanted,
            "seed": s.seed,
            "commutant_dim": s.commutant_dim,
            "leaves": s.leaves.iter().map(|l| json!({"subspace": subspace_json(&l.subspace), "irreducible": l.irreducible})).collect::<Vec<_>>(),
        })
    });
    b.say(format!("verdict: {} (reason {})", cert.verdict.as_str(), cert.reason.code()));
    b.put("verdict", json!(cert.verdict.as_str()));
    b.put("reason", json!(cert.reason.code()));
    b.put("detail", detail);
    b.put("invariant_search", search);
    Ok(b.finish())
}

pub fn sard(v: &Value, samples: Option<usize>, seed: Option<u64>, boxes: Option<Vec<(Rational, Rational)>>) -> Res<Report> {
    let s = germ_scenario(v)?;
    let germ = s.germ()?;
    let cfg = v.get("sard");
    let samples = samples
        .or_else(|| cfg.and_then(|c| c.get("samples")).and_then(Value::as_u64).map(|n| n as usize))
        .unwrap_or(DEFAULT_SARD_SAMPLES);
    let seed = seed.or_else(|| cfg.and_then(|c| c.get("seed")).and_then(Value::as_u64)).unwrap_or(DEFAULT_SARD_SEED);
    let boxes = match boxes {
        Some(b) => b,
        None => match cfg.and_then(|c| c.get("box")) {
            Some(bx) => bx
                .as_array()
                .ok_or_else(|| RunError::Input { path: "$.sard.box".into(), message: "expected an array".into() })?
                .iter()
                .enumerate()
                .map(|(i, pair)| {
                    let path = format!("$.sard.box[{i}]");
                    let lohi = crate::scenario::vector(pair, &path)?;
                    match lohi.as_slice() {
                        [lo, hi] => Ok((lo.clone(), hi.clone())),
                        _ => Err(RunError::Input { path, message: "expected [lo, hi]".into() }),
                    }
                })
                .collect::<Res<Vec<_>>>()?,
            None => {
                return Err(RunError::Input {
                    path: "--box".into(),
                    message: "give one --box lo hi per target coordinate".into(),
                })
            }
        },
    };
    let r = sard_sample(&germ, &boxes, samples, seed, s.table.as_ref()).map_err(RunError::math)?;
    let mut b = Builder::new("sard", v);
    b.seed = Some(seed);
    b.say(format!(
        "{} samples: {} regular, {} critical, {} unresolved; regular fraction {}",
        r.samples, r.regular, r.critical, r.unresolved, r.regular_fraction
    ));
    b.put("box", Value::Array(boxes.iter().map(|(lo, hi)| json!([q(lo), q(hi)])).collect()));
    b.put("samples", json!(r.samples));
    b.put("regular", json!(r.regular));
    b.put("critical", json!(r.critical));
    b.put("unresolved", json!(r.unresolved));
    b.put("regular_fraction", json!(r.regular_fraction));
    b.put("critical_values", Value::Array(r.critical_values.iter().map(|c| vec_json(c)).collect()));
    Ok(b.finish())
}

fn chart_json(chart: &LocalChart) -> Value {
    let strata = stratify(chart);
    let idx2 = forbidden_index2_check(chart);
    json!({
        "dim": chart.dim(),
        "boundary": chart.has_boundary(),
        "order": chart.group().order(),
        "strata": strata.strata.iter().map(stratum_json).collect::<Vec<_>>(),
        "singular_dims": strata.singular().map(|s| s.dim).collect::<Vec<_>>(),
        "has_interior_codim1_stratum": has_interior_codim1_stratum(chart),
        "index2": {
            "forbidden": idx2.forbidden,
            "index2_count": idx2.index2_count,
            "witness": idx2.witness.as_ref().map_or(Value::Null, |(h, line)| json!({
                "subgroup": subgroup_json(h),
                "fixed_line": subspace_json(line),
            })),
        },
    })
}

pub fn strata(v: &Value) -> Res<Report> {
    let chart = chart_scenario(v)?;
    let mut b = Builder::new("strata", v);
    let report = stratify(&chart);
    let dims: Vec<String> = report.singular().map(|s| s.dim.to_string()).collect();
    b.say(format!(
        "chart of dim {} with group of order {}: {} singular strata, dims [{}]",
        chart.dim(),
        chart.group().order(),
        dims.len(),
        dims.join(", ")
    ));
    b.put("chart", chart_json(&chart));
    if let Some((w, lambda)) = suborbifold_request(v, &chart)? {
        let m = suborbifold_model(&chart, &w, &lambda).map_err(RunError::math)?;
        let effective = m.intrinsic_isotropy.cosets().iter().skip(1).all(|c| !w.is_fixed_pointwise_by(chart.group().element(c[0])));
        b.check("intrinsic isotropy acts effectively", effective);
        b.check("full exactly when lambda is the whole group", m.full == (m.lambda.order() == chart.group().order()));
        b.say(format!(
            "suborbifold of dim {}: |Omega| = {}, intrinsic isotropy of order {}, full = {}",
            w.dim(),
            m.omega.order(),
            m.intrinsic_isotropy.order(),
            m.full
        ));
        b.put("suborbifold", json!({
            "subspace": subspace_json(&m.subspace),
            "lambda": subgroup_json(&m.lambda),
            "omega": subgroup_json(&m.omega),
            "intrinsic_order": m.intrinsic_isotropy.order(),
            "full": m.full,
        }));
    }
    Ok(b.finish())
}

fn type_json(t: OneOrbifoldType) -> Value {
    json!(t.letter().to_string())
}

fn component_json(c: OneOrbifoldComponent) -> Value {
    let t = classify_1_orbifold(c);
    match c {
        OneOrbifoldComponent::Loop => json!({"shape": "loop", "ends": [], "type": type_json(t)}),
        OneOrbifoldComponent::Interval(a, b) => {
            let e = |x| match x {
                crate::onedim::End::Boundary => "boundary",
                crate::onedim::End::Mirror => "mirror",
            };
            json!({"shape": "interval", "ends": [e(a), e(b)], "type": type_json(t)})
        }
    }
}

fn parity_json(cs: &[OneOrbifoldComponent]) -> Value {
    match boundary_parity(cs) {
        Ok(r) => json!({"boundary_points": r.boundary_points, "even": r.even}),
        Err(e) => json!({"error": e.to_string()}),
    }
}

pub fn classify1(v: &Value) -> Res<Report> {
    let cs = components(v)?;
    let mut b = Builder::new("classify1", v);
    let types: String = cs.iter().map(|&c| classify_1_orbifold(c).letter()).collect();
    b.say(format!("types: {types}"));
    b.put("components", Value::Array(cs.iter().map(|&c| component_json(c)).collect()));
    b.put("parity", parity_json(&cs));
    Ok(b.finish())
}

/// Hypothesis check, index-2 check per chart, the contradiction argument when
/// a candidate retraction is given, and assembly with the parity count when
/// pieces are given.
pub fn retraction(v: &Value) -> Res<Report> {
    let s = atlas_scenario(v)?;
    let mut b = Builder::new("retraction", v);
    let charts: Vec<Value> = s
        .atlas
        .charts
        .iter()
        .map(|nc| {
            let mut c = chart_json(&nc.chart);
            c["name"] = json!(nc.name);
            c
        })
        .collect();
    b.put("charts", Value::Array(charts));
    let hyp = crate::onedim::no_retraction_hypothesis(&s.atlas);
    b.put("hypothesis", json!({
        "holds": hyp.holds,
        "breaking": hyp.charts.iter().flat_map(|c| c.interior_codim1.iter().map(move |&i| json!({
            "chart": c.chart,
            "stratum": stratum_json(&c.singular[i]),
        }))).collect::<Vec<_>>(),
    }));
    b.say(format!("no interior codimension-1 strata: {}", hyp.holds));
    let index2_free = s.atlas.charts.iter().all(|nc| !forbidden_index2_check(&nc.chart).forbidden);
    b.put("index2_free", json!(index2_free));

    let retraction = match (&s.target, &s.p) {
        (Some(target), Some(p)) if !s.germs.is_empty() && s.pieces.is_empty() => {
            let scen = RetractionScenario {
                target: target.clone(),
                germs: s.germs.iter().map(|g| (g.chart, g.germ.clone())).collect(),
                p: p.clone(),
            };
            let r = retraction_contradiction(&s.atlas, &scen).map_err(RunError::math)?;
            match r.outcome {
                RetractionOutcome::HypothesisNotMet => {
                    b.say("hypothesis not met: a retraction is not excluded");
                    json!({"outcome": "hypothesis-not-met"})
                }
                RetractionOutcome::Contradiction(c) => {
                    b.check("boundary germs restrict to the identity", !c.boundary_charts_checked.is_empty());
                    b.check("p is regular at the boundary point", c.boundary_model.dim + target.dim() == c.boundary_point.len());
                    b.check("no stratum can host the forced mirror point", c.contradiction);
                    b.say(format!(
                        "contradiction: {} boundary point, forced type (c) component, {} interior singular strata, none admits a mirror point",
                        c.boundary_points,
                        c.mirror_checks.len()
                    ));
                    json!({
                        "outcome": "contradiction",
                        "boundary_charts_checked": c.boundary_charts_checked,
                        "boundary_chart": c.boundary_chart,
                        "boundary_point": vec_json(&c.boundary_point),
                        "boundary_model": model_json(&c.boundary_model),
                        "boundary_points": c.boundary_points,
                        "mirror_point_forced": c.mirror_point_forced,
                        "forced_type": "c",
                        "mirror_checks": c.mirror_checks.iter().map(|m| json!({
                            "chart": m.chart,
                            "stratum_dim": m.stratum_dim,
                            "isotropy_order": m.isotropy_order,
                            "ker_ax_dim": m.ker_ax_dim,
                            "im_ax_dim": m.im_ax_dim,
                            "admits_mirror": m.admits_mirror,
                        })).collect::<Vec<_>>(),
                        "contradiction": c.contradiction,
                    })
                }
            }
        }
        _ => Value::Null,
    };
    b.put("retraction", retraction);

    let assembly = if s.pieces.is_empty() {
        Value::Null
    } else {
        let p = s.p.clone().ok_or_else(|| RunError::Input { path: "$.p".into(), message: "pieces need p".into() })?;
        let pieces = s
            .pieces
            .iter()
            .enumerate()
            .map(|(i, (c, point))| {
                let germ = s.germ_on(*c).cloned().ok_or_else(|| RunError::Input {
                    path: format!("$.pieces[{i}].chart"),
                    message: "no germ declared on this chart".into(),
                })?;
                Ok(Piece { chart: *c, germ, point: point.clone() })
            })
            .collect::<Res<Vec<_>>>()?;
        let a = assemble_components(&s.atlas, &pieces, &s.gluings, &p).map_err(RunError::math)?;
        let cs: Vec<OneOrbifoldComponent> = a.components.iter().map(|c| c.component).collect();
        let only_ab = a.components.iter().all(|c| matches!(c.kind, OneOrbifoldType::A | OneOrbifoldType::B));
        let parity = boundary_parity(&cs).ok();
        if index2_free {
            b.check("index-2 free atlas gives only types a and b", only_ab);
            b.check("boundary point count is even", parity.as_ref().is_some_and(|r| r.even));
        }
        let types: String = a.components.iter().map(|c| c.kind.letter()).collect();
        b.say(format!("assembled {} components, types {types}", a.components.len()));
        json!({
            "pieces": a.kinds.iter().zip(&s.pieces).map(|(k, (c, x))| json!({
                "chart": s.atlas.charts[*c].name,
                "point": vec_json(x),
                "kind": k.as_str(),
            })).collect::<Vec<_>>(),
            "verified_gluings": a.verified_gluings,
            "components": a.components.iter().map(|c| {
                let mut j = component_json(c.component);
                j["pieces"] = json!(c.pieces);
                j
            }).collect::<Vec<_>>(),
            "parity": parity_json(&cs),
        })
    };
    b.put("assembly", assembly);
    Ok(b.finish())
}

/// Runs `command` (`analyze`, `strata`, `obstruct`, `sard`, `classify1`,
/// `retraction`) on a scenario, with sampling settings from the scenario.
pub fn run_command(command: &str, v: &Value) -> Res<Report> {
    match command {
        "analyze" => analyze(v),
        "strata" => strata(v),
        "obstruct" => obstruct(v),
        "sard" => sard(v, None, None, None),
        "classify1" => classify1(v),
        "retraction" => retraction(v),
        other => Err(RunError::Input { path: "$.command".into(), message: format!("unknown command {other:?}") }),
    }
}
