use std::collections::BTreeMap;

use crate::germs::{preimage_model, preimage_model_boundary, recenter, GermError, MapGerm, PreimageModel};
use crate::ratlin::{zero_vec, Rational};

use super::{classify_1_orbifold, Atlas, End, OneDimError, OneOrbifoldComponent, OneOrbifoldType};

/// A point of a one-dimensional preimage inside one chart.
#[derive(Clone, Debug)]
pub struct Piece {
    pub chart: usize,
    pub germ: MapGerm,
    pub point: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Port {
    Plus,
    Minus,
}

impl Port {
    pub fn as_str(self) -> &'static str {
        match self {
            Port::Plus => "+",
            Port::Minus => "-",
        }
    }

    pub fn parse(s: &str) -> Option<Port> {
        match s {
            "+" => Some(Port::Plus),
            "-" => Some(Port::Minus),
            _ => None,
        }
    }
}

/// How the curve through a piece looks locally.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceKind {
    /// Manifold point: the curve leaves through `+` and `-`.
    Arc,
    /// Boundary point of the curve; only `+` (into the interior).
    BoundaryEnd,
    /// `Z2` acting by `-1` on the curve; only `+`.
    MirrorEnd,
}

impl PieceKind {
    pub fn ports(self) -> &'static [Port] {
        match self {
            PieceKind::Arc => &[Port::Plus, Port::Minus],
            PieceKind::BoundaryEnd | PieceKind::MirrorEnd => &[Port::Plus],
        }
    }

    pub fn end(self) -> Option<End> {
        match self {
            PieceKind::Arc => None,
            PieceKind::BoundaryEnd => Some(End::Boundary),
            PieceKind::MirrorEnd => Some(End::Mirror),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PieceKind::Arc => "arc",
            PieceKind::BoundaryEnd => "boundary-end",
            PieceKind::MirrorEnd => "mirror-end",
        }
    }
}

/// Identification of the curve leaving `a` with the curve leaving `b`,
/// optionally witnessed through a common chart embedded into both.
#[derive(Clone, Debug)]
pub struct Gluing {
    pub a: (usize, Port),
    pub b: (usize, Port),
    pub via: Option<GlueVia>,
}

#[derive(Clone, Debug)]
pub struct GlueVia {
    pub chart: usize,
    /// Embedding indices of the atlas, from `chart` into the charts of the
    /// two pieces.
    pub into_a: usize,
    pub into_b: usize,
    pub point: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct AssembledComponent {
    pub pieces: Vec<usize>,
    pub component: OneOrbifoldComponent,
    pub kind: OneOrbifoldType,
}

#[derive(Clone, Debug)]
pub struct Assembly {
    pub kinds: Vec<PieceKind>,
    pub models: Vec<PreimageModel>,
    pub verified_gluings: usize,
    pub components: Vec<AssembledComponent>,
}

fn piece_model(i: usize, piece: &Piece, p: &[Rational]) -> Result<(PieceKind, PreimageModel), OneDimError> {
    let value = piece.germ.lift().eval(&piece.point).map_err(GermError::from)?;
    if value != p {
        return Err(GermError::NotInPreimage { point: piece.point.clone(), value }.into());
    }
    let local = recenter(&piece.germ, &piece.point)?;
    let origin = zero_vec(piece.point.len());
    let q = zero_vec(p.len());
    let model = if local.source().has_boundary() {
        preimage_model_boundary(&local, &q, &origin)?
    } else {
        preimage_model(&local, &q, &origin)?
    };
    if model.dim != 1 {
        return Err(OneDimError::PieceNotOneDim { piece: i, dim: model.dim });
    }
    let on_boundary = model.boundary.as_ref().is_some_and(|b| b.on_boundary);
    let kind = match (on_boundary, model.gamma_s.order()) {
        (true, _) => PieceKind::BoundaryEnd,
        (false, 1) => PieceKind::Arc,
        (false, 2) => PieceKind::MirrorEnd,
        (false, order) => return Err(OneDimError::UnexpectedIsotropy { piece: i, order }),
    };
    Ok((kind, model))
}

fn check_via(atlas: &Atlas, pieces: &[Piece], gi: usize, g: &Gluing, via: &GlueVia, p: &[Rational]) -> Result<(), OneDimError> {
    let bad = |reason: String| OneDimError::BadGluing { gluing: gi, reason };
    let emb = |idx: usize| atlas.embeddings.get(idx).ok_or_else(|| bad(format!("no embedding {idx}")));
    let (ea, eb) = (emb(via.into_a)?, emb(via.into_b)?);
    let (pa, pb) = (&pieces[g.a.0], &pieces[g.b.0]);
    if ea.source != via.chart || eb.source != via.chart {
        return Err(bad("embeddings must start at the gluing chart".into()));
    }
    if ea.target != pa.chart || eb.target != pb.chart {
        return Err(bad("embeddings must end at the charts of the glued pieces".into()));
    }
    let ya = ea.embedding.apply(&via.point);
    let yb = eb.embedding.apply(&via.point);
    for (y, piece, side) in [(&ya, pa, "a"), (&yb, pb, "b")] {
        let v = piece.germ.lift().eval(y).map_err(|e| bad(e.to_string()))?;
        if v != p {
            return Err(bad(format!("glue point does not lie on the preimage in the chart of side {side}")));
        }
    }
    let fa = pa.germ.lift().compose_affine(&ea.embedding.linear, &ea.embedding.translate);
    let fb = pb.germ.lift().compose_affine(&eb.embedding.linear, &eb.embedding.translate);
    if !fa.sub(&fb).is_identically_zero() {
        return Err(bad("the two lifts disagree on the gluing chart".into()));
    }
    let iso_y = atlas.chart(via.chart).isotropy_at(&via.point)?;
    let iso_a = atlas.chart(pa.chart).isotropy_at(&ya)?;
    let iso_b = atlas.chart(pb.chart).isotropy_at(&yb)?;
    let orders = vec![iso_y.order(), iso_a.order(), iso_b.order()];
    let maps_in = |e: &super::NamedEmbedding, target: &crate::groups::Subgroup| {
        iso_y.members().iter().all(|&m| target.contains(e.embedding.theta.apply(m)))
    };
    if orders[0] != orders[1] || orders[0] != orders[2] || !maps_in(ea, &iso_a) || !maps_in(eb, &iso_b) {
        return Err(OneDimError::MismatchedIsotropy { gluing: gi, orders });
    }
    Ok(())
}

/// Classifies each piece from its preimage model, checks that every port is
/// glued exactly once, verifies the declared gluings, and follows them into
/// components.
pub fn assemble_components(
    atlas: &Atlas,
    pieces: &[Piece],
    gluings: &[Gluing],
    p: &[Rational],
) -> Result<Assembly, OneDimError> {
    let mut kinds = Vec::with_capacity(pieces.len());
    let mut models = Vec::with_capacity(pieces.len());
    for (i, piece) in pieces.iter().enumerate() {
        if piece.chart >= atlas.charts.len() {
            return Err(OneDimError::Malformed(format!("piece {i} refers to chart {}", piece.chart)));
        }
        let (k, m) = piece_model(i, piece, p)?;
        kinds.push(k);
        models.push(m);
    }
    let mut partner: BTreeMap<(usize, Port), (usize, Port)> = BTreeMap::new();
    let mut verified = 0;
    for (gi, g) in gluings.iter().enumerate() {
        for (piece, port) in [g.a, g.b] {
            let kind = kinds.get(piece).ok_or_else(|| OneDimError::Malformed(format!("gluing {gi} refers to piece {piece}")))?;
            if !kind.ports().contains(&port) {
                return Err(OneDimError::UnknownPort { piece, port: port.as_str().into() });
            }
        }
        if g.a == g.b {
            return Err(OneDimError::PortReused { piece: g.a.0, port: g.a.1.as_str().into() });
        }
        for (x, y) in [(g.a, g.b), (g.b, g.a)] {
            if partner.insert(x, y).is_some() {
                return Err(OneDimError::PortReused { piece: x.0, port: x.1.as_str().into() });
            }
        }
        if let Some(via) = &g.via {
            check_via(atlas, pieces, gi, g, via, p)?;
            verified += 1;
        }
    }
    for (i, k) in kinds.iter().enumerate() {
        for &port in k.ports() {
            if !partner.contains_key(&(i, port)) {
                return Err(OneDimError::OpenPort { piece: i, port: port.as_str().into() });
            }
        }
    }
    // Every port is glued exactly once, so each component is a cycle of
    // arcs or a path between two end pieces.
    let mut seen = vec![false; pieces.len()];
    let mut components = Vec::new();
    for start in 0..pieces.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for &port in kinds[i].ports() {
                let (j, _) = partner[&(i, port)];
                if !seen[j] {
                    seen[j] = true;
                    members.push(j);
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        let ends: Vec<End> = members.iter().filter_map(|&i| kinds[i].end()).collect();
        let component = match ends.as_slice() {
            [] => OneOrbifoldComponent::Loop,
            [a, b] => OneOrbifoldComponent::Interval(*a, *b),
            _ => unreachable!("a path has exactly two ends"),
        };
        components.push(AssembledComponent { pieces: members, component, kind: classify_1_orbifold(component) });
    }
    Ok(Assembly { kinds, models, verified_gluings: verified, components })
}
