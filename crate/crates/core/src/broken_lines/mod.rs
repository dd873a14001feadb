//! Broken-line diagrams: finite trees of straight segments in the affine
//! manifold with infinite input legs and radial output legs.
//!
//! Edge tangents are written in the chart named by the edge, at the
//! representative of the start vertex in that chart; the segment is traced
//! through the transition matrices until it reaches the end vertex. An
//! input leg is the ray leaving its vertex that ends up parallel to the
//! leg's class in the leg's chart; its weight is the divisibility of the
//! class. An output leg runs from its vertex straight to the origin, and
//! its class must point from the origin towards the vertex.
//!
//! With a single self-glued chart a ray point has two representatives in
//! the same chart; a tangent is read at `(r, 0)` unless it points out of
//! the cone there and into it from `(0, r)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{is_primitive, primitive_part, wedge, Scalar, Vec2Q, Vec2Z};
use crate::liouville::LiouvillePath;
use crate::tropical::{Chart, Locus, Piece, Rotation, Trace, TraceStop, TropManifold, TropPoint};

pub mod svg;

pub use svg::render_svg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrokenLineError {
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("diagram has not passed validation")]
    NotValidated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LegKind {
    Input,
    Output,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// Chart in which `tangent` is written; must contain `from`.
    pub chart: Chart,
    /// Primitive direction of motion from `from` to `to`.
    pub tangent: Vec2Z,
    pub weight: u64,
    /// Charts the segment may pass through; unrestricted when `None`.
    pub cones: Option<Vec<Chart>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Leg {
    pub vertex: usize,
    pub chart: Chart,
    /// Asymptotic direction times multiplicity, in `chart`.
    pub class: Vec2Z,
    pub kind: LegKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BrokenLineDiagram {
    pub vertices: Vec<TropPoint>,
    pub edges: Vec<Edge>,
    pub legs: Vec<Leg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Sector,
    Transport,
    Balancing,
    Leg,
    Monotonicity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Location {
    Vertex(usize),
    Edge(usize),
    Leg(usize),
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckKind::Sector => "sector",
            CheckKind::Transport => "transport",
            CheckKind::Balancing => "balancing",
            CheckKind::Leg => "leg",
            CheckKind::Monotonicity => "monotonicity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub location: Location,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub pass: bool,
    /// Sorted by kind, then location.
    pub checks: Vec<Check>,
    validated: Option<ValidatedDiagram>,
}

impl ValidationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    pub fn validated(&self) -> Result<&ValidatedDiagram, BrokenLineError> {
        self.validated.as_ref().ok_or(BrokenLineError::NotValidated)
    }

    pub fn into_validated(self) -> Result<ValidatedDiagram, BrokenLineError> {
        self.validated.ok_or(BrokenLineError::NotValidated)
    }
}

/// A diagram that passed every check, with its traced geometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedDiagram {
    manifold: TropManifold,
    diagram: BrokenLineDiagram,
    vertices: Vec<TropPoint>,
    /// Traced edges and input legs; edges first, in diagram order.
    traces: Vec<Trace>,
    /// Edge weight of each trace; leg directions already carry theirs.
    weights: Vec<BigInt>,
    /// Weighted tangents leaving each vertex, in its canonical chart.
    away: Vec<Vec<Vec2Z>>,
    /// For each output leg, the charts containing its segment.
    output_charts: Vec<Vec<Chart>>,
}

/// Geometry of a diagram computed without requiring it to be valid.
#[derive(Debug, Clone, Default)]
pub(crate) struct Geometry {
    pub(crate) vertices: Vec<TropPoint>,
    pub(crate) edges: Vec<Option<Trace>>,
    pub(crate) input_legs: Vec<(usize, Option<Trace>)>,
}

impl BrokenLineDiagram {
    /// Structural checks; returns the canonical vertices.
    pub fn well_formed(&self, m: &TropManifold) -> Result<Vec<TropPoint>, BrokenLineError> {
        let bad = |msg: String| BrokenLineError::MalformedDiagram(msg);
        if self.vertices.is_empty() {
            return Err(bad("a diagram needs at least one vertex".into()));
        }
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            let c = m.normalize(v).map_err(|e| bad(format!("vertex {i}: {e}")))?;
            if c.is_origin() {
                return Err(bad(format!("vertex {i} is the origin")));
            }
            if vertices.contains(&c) {
                return Err(bad(format!("vertex {i} repeats an earlier vertex")));
            }
            vertices.push(c);
        }
        let nv = vertices.len();
        let check_chart = |c: Chart, what: String| {
            if c.index() < m.n() {
                Ok(())
            } else {
                Err(bad(format!("{what}: chart {c} out of range")))
            }
        };
        for (i, e) in self.edges.iter().enumerate() {
            if e.from >= nv || e.to >= nv {
                return Err(bad(format!("edge {i}: vertex index out of range")));
            }
            if e.from == e.to {
                return Err(bad(format!("edge {i} is a loop")));
            }
            check_chart(e.chart, format!("edge {i}"))?;
            for &c in e.cones.iter().flatten() {
                check_chart(c, format!("edge {i} cones"))?;
            }
            if e.tangent.is_zero() || !is_primitive(&e.tangent) {
                return Err(bad(format!("edge {i}: tangent {} is not primitive", e.tangent)));
            }
            if e.weight == 0 {
                return Err(bad(format!("edge {i}: weight must be positive")));
            }
        }
        for (i, l) in self.legs.iter().enumerate() {
            if l.vertex >= nv {
                return Err(bad(format!("leg {i}: vertex index out of range")));
            }
            check_chart(l.chart, format!("leg {i}"))?;
            if l.class.is_zero() {
                return Err(bad(format!("leg {i}: class is zero")));
            }
        }
        // a graph with |E| = |V| - 1 is a tree iff it is connected
        if self.edges.len() + 1 != nv {
            return Err(bad(format!("{} edges on {} vertices is not a tree", self.edges.len(), nv)));
        }
        let mut parent: Vec<usize> = (0..nv).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, e) in self.edges.iter().enumerate() {
            let (a, b) = (root(&mut parent, e.from), root(&mut parent, e.to));
            if a == b {
                return Err(bad(format!("edge {i} closes a cycle")));
            }
            parent[a] = b;
        }
        Ok(vertices)
    }

    /// Multiplies every weight and leg class by `k`.
    pub fn scaled_weights(&self, k: u64) -> BrokenLineDiagram {
        let kb = BigInt::from(k);
        BrokenLineDiagram {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|e| Edge { weight: e.weight * k, ..e.clone() }).collect(),
            legs: self.legs.iter().map(|l| Leg { class: l.class.scale(&kb), ..l.clone() }).collect(),
        }
    }
}

/// Representatives of canonical `p` in chart `c`, in the order of
/// [`TropManifold::representations`].
fn reps_in(m: &TropManifold, p: &TropPoint, c: Chart) -> Vec<Vec2Q> {
    m.representations(p).into_iter().filter(|(rc, _)| *rc == c).map(|(_, q)| q).collect()
}

fn points_into_cone(q: &Vec2Q, t: &Vec2Z) -> bool {
    !(q.a.is_zero() && t.a.is_negative() || q.b.is_zero() && t.b.is_negative())
}

/// Representative of `p` in chart `c` at which to read tangent `t`.
fn tangent_base(m: &TropManifold, p: &TropPoint, c: Chart, t: &Vec2Z) -> Option<Vec2Q> {
    let reps = reps_in(m, p, c);
    reps.iter().find(|q| points_into_cone(q, t)).or(reps.first()).cloned()
}

/// Re-expresses `v`, a tangent at the representative `(c, q)` of canonical
/// `p`, in the frame of `p`'s own chart.
fn to_canonical_frame(m: &TropManifold, p: &TropPoint, c: Chart, q: &Vec2Q, v: &Vec2Z) -> Vec2Z {
    if c == p.chart && *q == p.coords {
        v.clone()
    } else {
        m.inverse_transition(p.chart).apply(v)
    }
}

fn pieces_increasing(path: &LiouvillePath, pieces: &[Piece]) -> (bool, Vec<Scalar>) {
    let values: Vec<Scalar> = pieces.iter().map(|pc| pc.dir.pair(path.corner(pc.chart))).collect();
    let ok = values.windows(2).all(|w| w[0] < w[1]);
    (ok, values)
}

fn list(values: &[Scalar]) -> String {
    let parts: Vec<String> = values.iter().map(crate::lattice::format_scalar).collect();
    format!("[{}]", parts.join(", "))
}

/// Ray tangent at an input leg's vertex: the transport of the class whose
/// line runs off to infinity parallel to the class, trying the fewest
/// chart steps first.
fn find_input_leg(m: &TropManifold, v: &TropPoint, leg: &Leg) -> Option<(Chart, Vec2Q, Vec2Z, Trace)> {
    let n = m.n() as i64;
    let mut steps: Vec<i64> = (-3 * n..=3 * n).collect();
    steps.sort_by_key(|s| (s.abs(), *s < 0));
    for s in steps {
        let target = Chart::from_index((leg.chart.index() as i64 + s).rem_euclid(n) as usize);
        let t = m.transport_matrix(leg.chart, s).apply(&leg.class);
        for q in reps_in(m, v, target) {
            let Ok(trace) = m.trace(target, &q, &t, TraceStop::Infinity) else { continue };
            let (end_chart, end_dir) = trace.final_direction();
            if end_chart == leg.chart && *end_dir == leg.class {
                return Some((target, q, t, trace));
            }
        }
    }
    None
}

fn piece_charts(m: &TropManifold, pc: &Piece) -> Vec<Chart> {
    let mut out = vec![pc.chart];
    if pc.start.a.is_zero() && pc.dir.a.is_zero() {
        out.push(m.prev(pc.chart));
    }
    if pc.start.b.is_zero() && pc.dir.b.is_zero() {
        out.push(m.next(pc.chart));
    }
    out
}

/// Traces what can be traced, ignoring failures.
pub(crate) fn geometry(m: &TropManifold, d: &BrokenLineDiagram) -> Geometry {
    let vertices: Vec<TropPoint> = d.vertices.iter().filter_map(|v| m.normalize(v).ok()).collect();
    if vertices.len() != d.vertices.len() {
        return Geometry { vertices, ..Geometry::default() };
    }
    let edges = d
        .edges
        .iter()
        .map(|e| {
            let from = vertices.get(e.from)?;
            let to = vertices.get(e.to)?;
            let q = tangent_base(m, from, e.chart, &e.tangent)?;
            m.trace(e.chart, &q, &e.tangent, TraceStop::At(to)).ok()
        })
        .collect();
    let input_legs = d
        .legs
        .iter()
        .filter(|l| l.kind == LegKind::Input)
        .map(|l| {
            let trace = vertices.get(l.vertex).and_then(|v| find_input_leg(m, v, l)).map(|(.., t)| t);
            (l.vertex, trace)
        })
        .collect();
    Geometry { vertices, edges, input_legs }
}

/// Runs every check on `d`.
pub fn validate(
    m: &TropManifold,
    path: &LiouvillePath,
    d: &BrokenLineDiagram,
) -> Result<ValidationReport, BrokenLineError> {
    if path.manifold() != m {
        return Err(BrokenLineError::MalformedDiagram(
            "the Liouville path belongs to a different manifold".into(),
        ));
    }
    let vertices = d.well_formed(m)?;
    let nv = vertices.len();
    let mut checks = Vec::new();
    let mut push = |kind, location, ok, detail: String| checks.push(Check { kind, location, ok, detail });
    let mut away: Vec<Vec<Vec2Z>> = vec![Vec::new(); nv];
    let mut incomplete = vec![false; nv];
    let mut traces = Vec::new();
    let mut weights = Vec::new();
    let mut output_charts = Vec::new();

    for (i, e) in d.edges.iter().enumerate() {
        let loc = Location::Edge(i);
        let from = &vertices[e.from];
        let to = &vertices[e.to];
        let w = BigInt::from(e.weight);
        let Some(q) = tangent_base(m, from, e.chart, &e.tangent) else {
            push(CheckKind::Sector, loc, false, format!("vertex {} is not in chart {}", e.from, e.chart));
            push(CheckKind::Transport, loc, false, "not traced".into());
            incomplete[e.from] = true;
            incomplete[e.to] = true;
            continue;
        };
        match m.trace(e.chart, &q, &e.tangent, TraceStop::At(to)) {
            Err(err) => {
                push(CheckKind::Sector, loc, true, format!("starts in chart {}", e.chart));
                push(CheckKind::Transport, loc, false, err.to_string());
                incomplete[e.from] = true;
                incomplete[e.to] = true;
            }
            Ok(trace) => {
                let outside: Vec<String> = match &e.cones {
                    None => Vec::new(),
                    Some(cones) => trace
                        .pieces
                        .iter()
                        .filter(|pc| !piece_charts(m, pc).iter().any(|c| cones.contains(c)))
                        .map(|pc| pc.chart.to_string())
                        .collect(),
                };
                if outside.is_empty() {
                    push(CheckKind::Sector, loc, true, format!("starts in chart {}", e.chart));
                } else {
                    push(CheckKind::Sector, loc, false, format!("passes through undeclared charts {}", outside.join(", ")));
                }
                let rays: Vec<String> = trace.crossings.iter().map(|c| format!("D{}", c.ray + 1)).collect();
                push(CheckKind::Transport, loc, true, format!("reaches vertex {} crossing [{}]", e.to, rays.join(", ")));
                away[e.from].push(to_canonical_frame(m, from, e.chart, &q, &e.tangent).scale(&w));
                let last = trace.pieces.last().expect("a trace has at least one piece");
                let end = last.end.as_ref().expect("traces to a vertex end");
                away[e.to].push(to_canonical_frame(m, to, last.chart, end, &-&last.dir).scale(&w));
                let (ok, values) = pieces_increasing(path, &trace.pieces);
                push(CheckKind::Monotonicity, loc, ok, format!("pairings {}", list(&values)));
                traces.push(trace);
                weights.push(w);
            }
        }
    }

    let mut leg_traces = Vec::new();
    for (i, l) in d.legs.iter().enumerate() {
        let loc = Location::Leg(i);
        let v = &vertices[l.vertex];
        match l.kind {
            LegKind::Input => {
                let in_quadrant = l.class.in_closed_quadrant();
                push(
                    CheckKind::Sector,
                    loc,
                    in_quadrant,
                    if in_quadrant {
                        format!("class {} in chart {}", l.class, l.chart)
                    } else {
                        format!("class {} is not in the cone of chart {}", l.class, l.chart)
                    },
                );
                match in_quadrant.then(|| find_input_leg(m, v, l)).flatten() {
                    None => {
                        push(CheckKind::Leg, loc, false, "no ray from the vertex is asymptotic to the class".into());
                        incomplete[l.vertex] = true;
                    }
                    Some((c, q, t, trace)) => {
                        push(CheckKind::Leg, loc, true, format!("leaves with tangent {} in chart {}", t, c));
                        away[l.vertex].push(to_canonical_frame(m, v, c, &q, &t));
                        let (ok, values) = pieces_increasing(path, &trace.pieces);
                        push(CheckKind::Monotonicity, loc, ok, format!("pairings {}", list(&values)));
                        leg_traces.push(trace);
                    }
                }
            }
            LegKind::Output => {
                let reps = reps_in(m, v, l.chart);
                if reps.is_empty() {
                    push(CheckKind::Sector, loc, false, format!("vertex {} is not in chart {}", l.vertex, l.chart));
                    push(CheckKind::Leg, loc, false, "not checked".into());
                    incomplete[l.vertex] = true;
                    continue;
                }
                push(CheckKind::Sector, loc, true, format!("vertex {} in chart {}", l.vertex, l.chart));
                let radial = reps.iter().find(|q| {
                    let c = l.class.to_rational();
                    crate::lattice::wedge_q(&c, q).is_zero() && c.dot(q).is_positive()
                });
                match radial {
                    None => {
                        push(CheckKind::Leg, loc, false, format!("class {} does not point at the vertex", l.class));
                        incomplete[l.vertex] = true;
                    }
                    Some(q) => {
                        push(CheckKind::Leg, loc, true, format!("runs to the origin from {}", q));
                        away[l.vertex].push(to_canonical_frame(m, v, l.chart, q, &-&l.class));
                        output_charts.push(m.charts_containing(v));
                    }
                }
            }
        }
    }
    weights.extend(leg_traces.iter().map(|_| BigInt::one()));
    traces.extend(leg_traces);

    for (i, tangents) in away.iter().enumerate() {
        let sum = tangents.iter().fold(Vec2Z::zero(), |acc, t| &acc + t);
        let ok = !incomplete[i] && sum.is_zero();
        let detail = if incomplete[i] {
            format!("incomplete: partial sum {sum}")
        } else {
            format!("sum {sum} in chart {}", vertices[i].chart)
        };
        push(CheckKind::Balancing, Location::Vertex(i), ok, detail);
    }

    checks.sort_by_key(|c| (c.kind, c.location));
    let pass = checks.iter().all(|c| c.ok);
    let validated = pass.then(|| ValidatedDiagram {
        manifold: m.clone(),
        diagram: d.clone(),
        vertices,
        traces,
        weights,
        away,
        output_charts,
    });
    Ok(ValidationReport { pass, checks, validated })
}

impl ValidatedDiagram {
    pub fn diagram(&self) -> &BrokenLineDiagram {
        &self.diagram
    }

    pub fn manifold(&self) -> &TropManifold {
        &self.manifold
    }

    /// Canonical vertex positions.
    pub fn vertices(&self) -> &[TropPoint] {
        &self.vertices
    }

    pub fn traces(&self) -> &[Trace] {
        &self.traces
    }

    /// Coefficients of `[D_1], ..., [D_n]`: each transversal passage
    /// through the ray of `D_j` adds `|wedge(r_j, weight * tangent)|`.
    pub fn homology_class(&self) -> Vec<BigInt> {
        let m = &self.manifold;
        let mut class = vec![BigInt::zero(); m.n()];
        for (trace, w) in self.traces.iter().zip(&self.weights) {
            for c in &trace.crossings {
                // in the chart where the ray is the first axis, r_j = (1, 0)
                let t = match c.rotation {
                    Rotation::Counterclockwise => &c.dir_before,
                    Rotation::Clockwise => &c.dir_after,
                };
                class[c.ray] += wedge(&Vec2Z::new(1, 0), t).abs() * w;
            }
        }
        for (v, tangents) in self.vertices.iter().zip(&self.away) {
            if let Locus::Ray(j) = m.locus(v) {
                // tangents leaving into the next chart cross the ray here
                for t in tangents.iter().filter(|t| t.b.is_negative()) {
                    class[j] += t.b.abs();
                }
            }
        }
        class
    }

    /// The lowest chart whose closed cone contains the whole diagram.
    pub fn is_localized(&self) -> Option<Chart> {
        let m = &self.manifold;
        if self.traces.iter().any(|t| !t.crossings.is_empty()) {
            return None;
        }
        for (v, tangents) in self.vertices.iter().zip(&self.away) {
            if matches!(m.locus(v), Locus::Ray(_))
                && tangents.iter().any(|t| t.b.is_negative())
                && tangents.iter().any(|t| t.b.is_positive())
            {
                return None;
            }
        }
        let mut common: BTreeSet<Chart> = m.charts().collect();
        let mut keep = |charts: Vec<Chart>| {
            let set: BTreeSet<Chart> = charts.into_iter().collect();
            common = common.intersection(&set).copied().collect();
        };
        for v in &self.vertices {
            keep(m.charts_containing(v));
        }
        for trace in &self.traces {
            for pc in &trace.pieces {
                keep(piece_charts(m, pc));
            }
        }
        for charts in &self.output_charts {
            keep(charts.clone());
        }
        common.into_iter().next()
    }
}

/// Validates and returns the boundary class, or `NotValidated`.
pub fn homology_class(
    m: &TropManifold,
    path: &LiouvillePath,
    d: &BrokenLineDiagram,
) -> Result<Vec<BigInt>, BrokenLineError> {
    Ok(validate(m, path, d)?.into_validated()?.homology_class())
}

/// Validates and returns the localizing chart, or `NotValidated`.
pub fn is_localized(
    m: &TropManifold,
    path: &LiouvillePath,
    d: &BrokenLineDiagram,
) -> Result<Option<Chart>, BrokenLineError> {
    Ok(validate(m, path, d)?.into_validated()?.is_localized())
}

/// Divisibility of a leg class, which is its weight.
pub fn leg_weight(class: &Vec2Z) -> Option<BigInt> {
    primitive_part(class).ok().map(|(_, d)| d)
}
