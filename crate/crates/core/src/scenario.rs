//! Scenario files: JSON in, typed charts, germs and atlases out.
//!
//! Rationals are strings (`"3/4"`, `"-2"`); plain JSON integers are accepted
//! as a convenience, floats are not. Errors carry the path of the offending
//! field, e.g. `$.source.generators[0][1][1]`.

use serde_json::{Map, Value};
use thiserror::Error;

use crate::charts::{build_chart, verify_embedding, LocalChart};
use crate::germs::{MapGerm, PreimageTable};
use crate::onedim::{Atlas, GlueVia, Gluing, NamedChart, NamedEmbedding, OneOrbifoldComponent, End, Port};
use crate::groups::Subgroup;
use crate::ratlin::{parse_rational, rat, Matrix, MultiPoly, Rational, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RunError {
    #[error("{0}")]
    Io(String),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    /// A mathematical check failed before a report could be produced.
    #[error("{0}")]
    Math(String),
}

impl RunError {
    /// 1 for unusable input, 2 for failed mathematics.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Io(_) | RunError::Input { .. } => 1,
            RunError::Math(_) => 2,
        }
    }

    fn input(path: &str, message: impl Into<String>) -> Self {
        RunError::Input { path: path.to_string(), message: message.into() }
    }

    pub(crate) fn math(e: impl std::fmt::Display) -> Self {
        RunError::Math(e.to_string())
    }
}

type Res<T> = Result<T, RunError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Chart,
    Germ,
    Atlas,
    Components,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Chart => "chart",
            Kind::Germ => "germ",
            Kind::Atlas => "atlas",
            Kind::Components => "components",
        }
    }
}

/// Explicit `"kind"` if present, otherwise guessed from the keys.
pub fn kind_of(v: &Value) -> Res<Kind> {
    let obj = object(v, "$")?;
    if let Some(k) = obj.get("kind") {
        return match k.as_str() {
            Some("chart") => Ok(Kind::Chart),
            Some("germ") => Ok(Kind::Germ),
            Some("atlas") => Ok(Kind::Atlas),
            Some("components") => Ok(Kind::Components),
            _ => Err(RunError::input("$.kind", "expected one of chart, germ, atlas, components")),
        };
    }
    if obj.contains_key("components") {
        Ok(Kind::Components)
    } else if obj.contains_key("charts") {
        Ok(Kind::Atlas)
    } else if obj.contains_key("source") {
        Ok(Kind::Germ)
    } else if obj.contains_key("dim") || obj.contains_key("chart") {
        Ok(Kind::Chart)
    } else {
        Err(RunError::input("$", "cannot tell the scenario kind; add a \"kind\" field"))
    }
}

pub fn parse_json(text: &str) -> Res<Value> {
    serde_json::from_str(text).map_err(|e| RunError::input("$", format!("invalid JSON: {e}")))
}

pub fn name_of(v: &Value) -> String {
    v.get("name").and_then(Value::as_str).unwrap_or("unnamed").to_string()
}

fn object<'a>(v: &'a Value, path: &str) -> Res<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| RunError::input(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Res<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| RunError::input(path, "expected an array"))
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Res<&'a Value> {
    object(v, path)?.get(key).ok_or_else(|| RunError::input(&format!("{path}.{key}"), "missing field"))
}

fn opt_field<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.get(key).filter(|x| !x.is_null())
}

fn usize_of(v: &Value, path: &str) -> Res<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| RunError::input(path, "expected a nonnegative integer"))
}

fn str_of<'a>(v: &'a Value, path: &str) -> Res<&'a str> {
    v.as_str().ok_or_else(|| RunError::input(path, "expected a string"))
}

pub fn rational(v: &Value, path: &str) -> Res<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|_| RunError::input(path, format!("malformed rational {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(rat)
            .ok_or_else(|| RunError::input(path, "numbers must be integers; write fractions as \"p/q\" strings")),
        _ => Err(RunError::input(path, "expected a rational string")),
    }
}

pub fn vector(v: &Value, path: &str) -> Res<Vec<Rational>> {
    array(v, path)?.iter().enumerate().map(|(i, x)| rational(x, &format!("{path}[{i}]"))).collect()
}

fn vector_of_len(v: &Value, len: usize, path: &str) -> Res<Vec<Rational>> {
    let out = vector(v, path)?;
    if out.len() != len {
        return Err(RunError::input(path, format!("expected {len} entries, found {}", out.len())));
    }
    Ok(out)
}

pub fn matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Res<Matrix> {
    let rs = array(v, path)?;
    if rs.len() != rows {
        return Err(RunError::input(path, format!("expected {rows} rows, found {}", rs.len())));
    }
    let rows_v = rs.iter().enumerate().map(|(i, r)| vector_of_len(r, cols, &format!("{path}[{i}]"))).collect::<Res<_>>()?;
    Matrix::from_rows(rows_v, cols).map_err(|e| RunError::input(path, e.to_string()))
}

fn square_list(v: &Value, dim: usize, path: &str) -> Res<Vec<Matrix>> {
    array(v, path)?.iter().enumerate().map(|(i, m)| matrix(m, dim, dim, &format!("{path}[{i}]"))).collect()
}

pub fn chart(v: &Value, path: &str) -> Res<LocalChart> {
    let dim = usize_of(field(v, "dim", path)?, &format!("{path}.dim"))?;
    let boundary = match opt_field(v, "boundary") {
        None => false,
        Some(b) => b.as_bool().ok_or_else(|| RunError::input(&format!("{path}.boundary"), "expected a boolean"))?,
    };
    let gens = match opt_field(v, "generators") {
        None => Vec::new(),
        Some(g) => square_list(g, dim, &format!("{path}.generators"))?,
    };
    if boundary && dim == 0 {
        return Err(RunError::input(path, "a boundary chart needs dimension at least 1"));
    }
    build_chart(dim, &gens, boundary).map_err(RunError::math)
}

/// `[[{"coef": "c", "exps": [e1, ..]}, ..], ..]`, one list per output.
pub fn lift(v: &Value, nvars: usize, out_dim: usize, path: &str) -> Res<MultiPoly> {
    let coords = array(v, path)?;
    if coords.len() != out_dim {
        return Err(RunError::input(path, format!("expected {out_dim} output coordinates, found {}", coords.len())));
    }
    let mut out = Vec::with_capacity(out_dim);
    for (i, c) in coords.iter().enumerate() {
        let cp = format!("{path}[{i}]");
        let mut terms = Vec::new();
        for (j, t) in array(c, &cp)?.iter().enumerate() {
            let tp = format!("{cp}[{j}]");
            let coef = rational(field(t, "coef", &tp)?, &format!("{tp}.coef"))?;
            let ep = format!("{tp}.exps");
            let exps = array(field(t, "exps", &tp)?, &ep)?
                .iter()
                .enumerate()
                .map(|(k, e)| {
                    e.as_u64()
                        .and_then(|x| u32::try_from(x).ok())
                        .ok_or_else(|| RunError::input(&format!("{ep}[{k}]"), "expected a small nonnegative integer"))
                })
                .collect::<Res<Vec<u32>>>()?;
            if exps.len() != nvars {
                return Err(RunError::input(&ep, format!("expected {nvars} exponents, found {}", exps.len())));
            }
            terms.push((coef, exps));
        }
        out.push(terms);
    }
    MultiPoly::new(nvars, out).map_err(|e| RunError::input(path, e.to_string()))
}

fn points(v: &Value, dim: usize, path: &str) -> Res<Vec<Vec<Rational>>> {
    array(v, path)?.iter().enumerate().map(|(i, x)| vector_of_len(x, dim, &format!("{path}[{i}]"))).collect()
}

fn theta_images(v: &Value, source: &LocalChart, target: &LocalChart, path: &str) -> Res<Vec<Matrix>> {
    let want = source.group().generators().len();
    let imgs = match opt_field(v, "theta_gen_images") {
        Some(x) => square_list(x, target.dim(), &format!("{path}.theta_gen_images"))?,
        None if target.group().is_trivial() => vec![Matrix::identity(target.dim()); want],
        None => return Err(RunError::input(&format!("{path}.theta_gen_images"), "missing field")),
    };
    if imgs.len() != want {
        return Err(RunError::input(
            &format!("{path}.theta_gen_images"),
            format!("expected {want} images (one per source generator), found {}", imgs.len()),
        ));
    }
    Ok(imgs)
}

/// A germ scenario with its optional extras.
#[derive(Clone, Debug)]
pub struct GermScenario {
    pub name: String,
    pub source: LocalChart,
    pub target: LocalChart,
    pub theta_gen_images: Vec<Matrix>,
    /// Absent for pure obstruction questions.
    pub lift: Option<MultiPoly>,
    pub base_point: Option<Vec<Rational>>,
    pub p: Option<Vec<Rational>>,
    pub preimage_lifts: Option<Vec<Vec<Rational>>>,
    pub table: Option<PreimageTable>,
}

impl GermScenario {
    pub fn germ(&self) -> Res<MapGerm> {
        let lift = self.lift.clone().ok_or_else(|| RunError::input("$.lift", "missing field"))?;
        MapGerm::new(&self.source, &self.target, lift, &self.theta_gen_images, self.base_point.clone())
            .map_err(RunError::math)
    }
}

pub fn germ_scenario(v: &Value) -> Res<GermScenario> {
    let source = chart(field(v, "source", "$")?, "$.source")?;
    let target = chart(field(v, "target", "$")?, "$.target")?;
    let theta_gen_images = theta_images(v, &source, &target, "$")?;
    let (n, k) = (source.dim(), target.dim());
    let lift = opt_field(v, "lift").map(|l| lift(l, n, k, "$.lift")).transpose()?;
    let base_point = opt_field(v, "base_point").map(|b| vector_of_len(b, n, "$.base_point")).transpose()?;
    let p = opt_field(v, "p").map(|x| vector_of_len(x, k, "$.p")).transpose()?;
    let preimage_lifts = opt_field(v, "preimage_lifts").map(|x| points(x, n, "$.preimage_lifts")).transpose()?;
    let table = opt_field(v, "table")
        .map(|t| {
            array(t, "$.table")?
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let ep = format!("$.table[{i}]");
                    let p = vector_of_len(field(e, "p", &ep)?, k, &format!("{ep}.p"))?;
                    let lifts = points(field(e, "lifts", &ep)?, n, &format!("{ep}.lifts"))?;
                    Ok((p, lifts))
                })
                .collect::<Res<Vec<_>>>()
                .map(|entries| PreimageTable { entries })
        })
        .transpose()?;
    Ok(GermScenario { name: name_of(v), source, target, theta_gen_images, lift, base_point, p, preimage_lifts, table })
}

/// The chart of a chart scenario: either the top level or its `"chart"`.
pub fn chart_scenario(v: &Value) -> Res<LocalChart> {
    match opt_field(v, "chart") {
        Some(c) => chart(c, "$.chart"),
        None => chart(v, "$"),
    }
}

/// `"suborbifold": {"subspace": [vectors], "lambda": [generators]}` on a
/// chart scenario; `lambda` defaults to the whole chart group.
pub fn suborbifold_request(v: &Value, chart: &LocalChart) -> Res<Option<(Subspace, Subgroup)>> {
    let Some(s) = opt_field(v, "suborbifold") else { return Ok(None) };
    let n = chart.dim();
    let vectors = points(field(s, "subspace", "$.suborbifold")?, n, "$.suborbifold.subspace")?;
    let group = chart.group();
    let lambda = match opt_field(s, "lambda") {
        None => group.whole(),
        Some(l) => {
            let mats = square_list(l, n, "$.suborbifold.lambda")?;
            let idx = mats
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    group.index_of(m).ok_or_else(|| {
                        RunError::input(&format!("$.suborbifold.lambda[{i}]"), "not an element of the chart group")
                    })
                })
                .collect::<Res<Vec<_>>>()?;
            group.generated_subgroup(&idx)
        }
    };
    Ok(Some((Subspace::span(n, &vectors), lambda)))
}

pub fn components(v: &Value) -> Res<Vec<OneOrbifoldComponent>> {
    let list = array(field(v, "components", "$")?, "$.components")?;
    list.iter()
        .enumerate()
        .map(|(i, c)| {
            let cp = format!("$.components[{i}]");
            let shape = str_of(field(c, "shape", &cp)?, &format!("{cp}.shape"))?;
            let ends = match opt_field(c, "ends") {
                None => Vec::new(),
                Some(e) => array(e, &format!("{cp}.ends"))?
                    .iter()
                    .enumerate()
                    .map(|(j, x)| {
                        let ep = format!("{cp}.ends[{j}]");
                        match str_of(x, &ep)? {
                            "boundary" => Ok(End::Boundary),
                            "mirror" => Ok(End::Mirror),
                            _ => Err(RunError::input(&ep, "expected \"boundary\" or \"mirror\"")),
                        }
                    })
                    .collect::<Res<Vec<_>>>()?,
            };
            match (shape, ends.as_slice()) {
                ("loop", []) => Ok(OneOrbifoldComponent::Loop),
                ("loop", _) => Err(RunError::input(&format!("{cp}.ends"), "a loop has no ends")),
                ("interval", [a, b]) => Ok(OneOrbifoldComponent::Interval(*a, *b)),
                ("interval", _) => Err(RunError::input(&format!("{cp}.ends"), "an interval has exactly two ends")),
                _ => Err(RunError::input(&format!("{cp}.shape"), "expected \"loop\" or \"interval\"")),
            }
        })
        .collect()
}

/// A candidate germ on one chart of an atlas.
#[derive(Clone, Debug)]
pub struct AtlasGerm {
    pub chart: usize,
    pub germ: MapGerm,
}

#[derive(Clone, Debug)]
pub struct AtlasScenario {
    pub name: String,
    pub atlas: Atlas,
    pub target: Option<LocalChart>,
    pub germs: Vec<AtlasGerm>,
    pub p: Option<Vec<Rational>>,
    /// `(chart, point)`; the piece uses the germ declared on that chart.
    pub pieces: Vec<(usize, Vec<Rational>)>,
    pub gluings: Vec<Gluing>,
}

impl AtlasScenario {
    pub fn germ_on(&self, chart: usize) -> Option<&MapGerm> {
        self.germs.iter().find(|g| g.chart == chart).map(|g| &g.germ)
    }
}

fn chart_ref(atlas: &Atlas, v: &Value, path: &str) -> Res<usize> {
    match v {
        Value::String(s) => atlas.index_of(s).ok_or_else(|| RunError::input(path, format!("no chart named {s:?}"))),
        Value::Number(_) => {
            let i = usize_of(v, path)?;
            if i < atlas.charts.len() {
                Ok(i)
            } else {
                Err(RunError::input(path, format!("no chart {i}")))
            }
        }
        _ => Err(RunError::input(path, "expected a chart name or index")),
    }
}

fn port_ref(v: &Value, npieces: usize, path: &str) -> Res<(usize, Port)> {
    let pair = array(v, path)?;
    if pair.len() != 2 {
        return Err(RunError::input(path, "expected [piece, \"+\" or \"-\"]"));
    }
    let piece = usize_of(&pair[0], &format!("{path}[0]"))?;
    if piece >= npieces {
        return Err(RunError::input(&format!("{path}[0]"), format!("no piece {piece}")));
    }
    let port = Port::parse(str_of(&pair[1], &format!("{path}[1]"))?)
        .ok_or_else(|| RunError::input(&format!("{path}[1]"), "expected \"+\" or \"-\""))?;
    Ok((piece, port))
}

pub fn atlas_scenario(v: &Value) -> Res<AtlasScenario> {
    let mut atlas = Atlas::default();
    for (i, c) in array(field(v, "charts", "$")?, "$.charts")?.iter().enumerate() {
        let cp = format!("$.charts[{i}]");
        let name = match opt_field(c, "name") {
            Some(n) => str_of(n, &format!("{cp}.name"))?.to_string(),
            None => format!("chart{i}"),
        };
        if atlas.index_of(&name).is_some() {
            return Err(RunError::input(&format!("{cp}.name"), format!("duplicate chart name {name:?}")));
        }
        let chart = chart(c, &cp)?;
        atlas.charts.push(NamedChart { name, chart });
    }
    if let Some(es) = opt_field(v, "embeddings") {
        for (i, e) in array(es, "$.embeddings")?.iter().enumerate() {
            let ep = format!("$.embeddings[{i}]");
            let s = chart_ref(&atlas, field(e, "source", &ep)?, &format!("{ep}.source"))?;
            let t = chart_ref(&atlas, field(e, "target", &ep)?, &format!("{ep}.target"))?;
            let (sc, tc) = (atlas.chart(s).clone(), atlas.chart(t).clone());
            let linear = matrix(field(e, "linear", &ep)?, tc.dim(), sc.dim(), &format!("{ep}.linear"))?;
            let translate = match opt_field(e, "translate") {
                Some(x) => vector_of_len(x, tc.dim(), &format!("{ep}.translate"))?,
                None => vec![rat(0); tc.dim()],
            };
            let imgs = theta_images(e, &sc, &tc, &ep)?;
            let embedding = verify_embedding(&sc, &tc, &linear, &translate, &imgs)
                .map_err(|err| RunError::Math(format!("embedding {i}: {err}")))?;
            atlas.embeddings.push(NamedEmbedding { source: s, target: t, embedding });
        }
    }
    let target = opt_field(v, "target").map(|t| chart(t, "$.target")).transpose()?;
    let mut germs = Vec::new();
    if let Some(gs) = opt_field(v, "germs") {
        let target =
            target.as_ref().ok_or_else(|| RunError::input("$.target", "germs need a target chart"))?;
        for (i, g) in array(gs, "$.germs")?.iter().enumerate() {
            let gp = format!("$.germs[{i}]");
            let c = chart_ref(&atlas, field(g, "chart", &gp)?, &format!("{gp}.chart"))?;
            let source = atlas.chart(c).clone();
            let l = lift(field(g, "lift", &gp)?, source.dim(), target.dim(), &format!("{gp}.lift"))?;
            let imgs = theta_images(g, &source, target, &gp)?;
            let germ = MapGerm::new(&source, target, l, &imgs, None)
                .map_err(|e| RunError::Math(format!("germ on chart {}: {e}", atlas.charts[c].name)))?;
            germs.push(AtlasGerm { chart: c, germ });
        }
    }
    let p = match (opt_field(v, "p"), &target) {
        (Some(x), Some(t)) => Some(vector_of_len(x, t.dim(), "$.p")?),
        (Some(_), None) => return Err(RunError::input("$.target", "p needs a target chart")),
        (None, _) => None,
    };
    let mut pieces = Vec::new();
    if let Some(ps) = opt_field(v, "pieces") {
        for (i, pc) in array(ps, "$.pieces")?.iter().enumerate() {
            let pp = format!("$.pieces[{i}]");
            let c = chart_ref(&atlas, field(pc, "chart", &pp)?, &format!("{pp}.chart"))?;
            let point = vector_of_len(field(pc, "point", &pp)?, atlas.chart(c).dim(), &format!("{pp}.point"))?;
            pieces.push((c, point));
        }
    }
    let mut gluings = Vec::new();
    if let Some(gs) = opt_field(v, "gluings") {
        for (i, g) in array(gs, "$.gluings")?.iter().enumerate() {
            let gp = format!("$.gluings[{i}]");
            let a = port_ref(field(g, "a", &gp)?, pieces.len(), &format!("{gp}.a"))?;
            let b = port_ref(field(g, "b", &gp)?, pieces.len(), &format!("{gp}.b"))?;
            let via = opt_field(g, "via")
                .map(|w| {
                    let wp = format!("{gp}.via");
                    let chart = chart_ref(&atlas, field(w, "chart", &wp)?, &format!("{wp}.chart"))?;
                    let into_a = usize_of(field(w, "into_a", &wp)?, &format!("{wp}.into_a"))?;
                    let into_b = usize_of(field(w, "into_b", &wp)?, &format!("{wp}.into_b"))?;
                    let point = vector_of_len(field(w, "point", &wp)?, atlas.chart(chart).dim(), &format!("{wp}.point"))?;
                    Ok(GlueVia { chart, into_a, into_b, point })
                })
                .transpose()?;
            gluings.push(Gluing { a, b, via });
        }
    }
    Ok(AtlasScenario { name: name_of(v), atlas, target, germs, p, pieces, gluings })
}
