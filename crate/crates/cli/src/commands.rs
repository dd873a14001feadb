use std::path::Path;

use serde_json::{json, Value};

use thetatrop_core::broken_lines::{render_svg, validate};
use thetatrop_core::homology::IntersectionLattice;
use thetatrop_core::lattice::parse_scalar;
use thetatrop_core::liouville::LiouvilleError;
use thetatrop_core::rings::{
    local_mul, local_normal_form, monoid_mul, parse_expression, vertex_mul, CertifiedClass, LocalElement,
    MonoidRingElement,
};
use thetatrop_core::tropical::Rotation;
use thetatrop_core::{LiouvillePath, Mat2Z, PCertificate, Scalar, TangentVector, TropManifold, Vec2Q};

use crate::schema::*;

/// A command either succeeds or reports a failed check; both print JSON.
pub enum Outcome {
    Success(Value),
    Failure(Value),
}

pub type CommandResult = Result<Outcome, SchemaError>;

fn malformed(e: impl ToString) -> SchemaError {
    SchemaError(e.to_string())
}

fn matrix(m: &Mat2Z) -> Value {
    let [[a, b], [c, d]] = m.rows();
    to_value(&[[Int(a.clone()), Int(b.clone())], [Int(c.clone()), Int(d.clone())]])
}

fn pair(v: &Vec2Q) -> Value {
    to_value(&[Rational(v.a.clone()), Rational(v.b.clone())])
}

fn scalar(x: &Scalar) -> Value {
    to_value(&Rational(x.clone()))
}

fn rotation(r: Rotation) -> &'static str {
    match r {
        Rotation::Clockwise => "clockwise",
        Rotation::Counterclockwise => "counterclockwise",
    }
}

pub fn parse_rational(text: &str) -> Result<Scalar, SchemaError> {
    parse_scalar(text).map_err(malformed)
}

pub fn trop_build(p: &ProjectFile) -> CommandResult {
    let m = p.manifold()?;
    let transitions: Vec<Value> = m.transitions().iter().map(matrix).collect();
    Ok(Outcome::Success(json!({
        "n": m.n(),
        "self_intersections": p.self_intersections,
        "transitions": transitions,
        "monodromy": matrix(&m.monodromy()),
    })))
}

pub fn trop_points(p: &ProjectFile, bound: u64) -> CommandResult {
    let m = p.manifold()?;
    let pts = m.integral_points(bound);
    Ok(Outcome::Success(json!({ "bound": bound, "count": pts.len(), "points": to_value(&points(&pts)) })))
}

pub fn trop_monodromy(p: &ProjectFile) -> CommandResult {
    let mu = p.manifold()?.monodromy();
    Ok(Outcome::Success(json!({ "matrix": matrix(&mu), "trace": to_value(&Int(mu.trace())) })))
}

pub fn trop_linear_functions(p: &ProjectFile) -> CommandResult {
    let basis = p.manifold()?.linear_function_basis();
    let values: Vec<Vec<Int>> = basis.iter().map(|f| ints(&f.values)).collect();
    Ok(Outcome::Success(json!({ "rank": basis.len(), "basis": to_value(&values) })))
}

pub fn trop_transport(p: &ProjectFile, chart: usize, vector: &str, steps: i64) -> CommandResult {
    let m = p.manifold()?;
    let v = TangentVector { chart: m.chart(chart).map_err(malformed)?, vec: parse_vector(vector)? };
    let w = m.transport_steps(&v, steps);
    Ok(Outcome::Success(json!({
        "chart": w.chart.number(),
        "vector": to_value(&[Int(w.vec.a.clone()), Int(w.vec.b.clone())]),
    })))
}

fn liouville_path(p: &ProjectFile) -> Result<(TropManifold, LiouvillePath), SchemaError> {
    let m = p.manifold()?;
    let a = p.require_ample()?;
    let path = LiouvillePath::synthesize(&m, &a).map_err(malformed)?;
    Ok((m, path))
}

pub fn liouville_synth(p: &ProjectFile) -> CommandResult {
    let (m, path) = liouville_path(p)?;
    let corners: Vec<Value> = m
        .charts()
        .map(|c| json!({ "chart": c.number(), "coords": pair(path.corner(c)) }))
        .collect();
    let degrees: Vec<Value> = path.ample().boundary_degrees(&m).iter().map(scalar).collect();
    Ok(Outcome::Success(json!({
        "corners": corners,
        "orientation": rotation(path.orientation()),
        "boundary_degrees": degrees,
    })))
}

pub fn liouville_check(p: &ProjectFile) -> CommandResult {
    let (_, path) = liouville_path(p)?;
    let contact = path.check_contact();
    let convex = path.check_convex();
    let segments: Vec<Value> = contact
        .segments
        .iter()
        .map(|s| {
            json!({
                "divisor": s.divisor + 1,
                "chart": s.chart.number(),
                "start": pair(&s.start),
                "displacement": pair(&s.displacement),
                "wedge": scalar(&s.wedge),
                "ok": s.ok,
            })
        })
        .collect();
    let corners: Vec<Value> = convex
        .corners
        .iter()
        .map(|c| {
            json!({
                "chart": c.corner.number(),
                "incoming": pair(&c.incoming),
                "outgoing": pair(&c.outgoing),
                "wedge": scalar(&c.wedge),
                "ok": c.ok,
            })
        })
        .collect();
    let pass = contact.pass && convex.pass;
    let report = json!({
        "pass": pass,
        "contact": { "pass": contact.pass, "segments": segments },
        "convex": { "pass": convex.pass, "corners": corners },
    });
    Ok(if pass { Outcome::Success(report) } else { Outcome::Failure(report) })
}

pub fn liouville_lengths(p: &ProjectFile, pts: Option<&str>, bound: u64) -> CommandResult {
    let (m, path) = liouville_path(p)?;
    let pts = match pts {
        Some(text) => parse_points(text, &m)?,
        // the origin carries no orbit
        None => m.integral_points(bound).into_iter().filter(|q| !q.is_origin()).collect(),
    };
    let mut lengths = Vec::with_capacity(pts.len());
    for q in &pts {
        let l = path.orbit_length(q).map_err(malformed)?;
        lengths.push(json!({ "point": to_value(&PointDto::from_point(q)), "length": scalar(&l) }));
    }
    Ok(Outcome::Success(json!({ "lengths": lengths })))
}

pub fn liouville_filter(p: &ProjectFile, slope: &str) -> CommandResult {
    let (_, path) = liouville_path(p)?;
    let s = parse_rational(slope)?;
    let pts = path.theta_below_slope(&s).map_err(|e| match e {
        LiouvilleError::SlopeOnSpectrum(_) => SchemaError(format!("{e}; choose a slope off the length spectrum")),
        other => malformed(other),
    })?;
    Ok(Outcome::Success(json!({
        "slope": scalar(&s),
        "count": pts.len(),
        "points": to_value(&points(&pts)),
    })))
}

fn diagram_setup(
    p: &ProjectFile,
    index: usize,
) -> Result<(TropManifold, LiouvillePath, thetatrop_core::BrokenLineDiagram), SchemaError> {
    let (m, path) = liouville_path(p)?;
    let d = p.diagram(index)?.to_diagram(&m)?;
    Ok((m, path, d))
}

pub fn broken_validate(p: &ProjectFile, index: usize) -> CommandResult {
    let (m, path, d) = diagram_setup(p, index)?;
    let report = validate(&m, &path, &d).map_err(malformed)?;
    let v = to_value(&ReportDto::from_report(&report));
    Ok(if report.pass { Outcome::Success(v) } else { Outcome::Failure(v) })
}

pub fn broken_class(p: &ProjectFile, index: usize) -> CommandResult {
    let (m, path, d) = diagram_setup(p, index)?;
    let report = validate(&m, &path, &d).map_err(malformed)?;
    let Ok(v) = report.validated() else {
        return Ok(Outcome::Failure(to_value(&ReportDto::from_report(&report))));
    };
    let class = v.homology_class();
    let expr = thetatrop_core::ClassExpr::from_boundary(class.clone());
    let mut canonical = d.clone();
    canonical.vertices = v.vertices().to_vec();
    Ok(Outcome::Success(json!({
        "class": to_value(&ints(&class)),
        "expression": expr.to_string(),
        "localized": v.is_localized().map(|c| c.number()),
        "diagram": to_value(&DiagramDto::from_diagram(&canonical)),
    })))
}

pub fn broken_render(p: &ProjectFile, index: Option<usize>, bound: u64, out: &Path) -> CommandResult {
    let m = p.manifold()?;
    let path = match p.ample()? {
        Some(a) => Some(LiouvillePath::synthesize(&m, &a).map_err(malformed)?),
        None => None,
    };
    let d = match index {
        Some(i) => Some(p.diagram(i)?.to_diagram(&m)?),
        None if p.has_diagram() => Some(p.diagram(0)?.to_diagram(&m)?),
        None => None,
    };
    let svg = render_svg(&m, d.as_ref(), path.as_ref(), bound);
    std::fs::write(out, &svg).map_err(|e| SchemaError(format!("cannot write {}: {e}", out.display())))?;
    Ok(Outcome::Success(json!({ "out": out.display().to_string(), "bytes": svg.len() })))
}

fn lattice(p: &ProjectFile) -> Result<IntersectionLattice, SchemaError> {
    let m = p.manifold()?;
    IntersectionLattice::new(m.boundary(), p.extras()).map_err(malformed)
}

pub fn homology_pair(p: &ProjectFile, class: &str) -> CommandResult {
    let l = lattice(p)?;
    let c = parse_class(class, l.n())?;
    let v = l.intersection_vector(&c).map_err(malformed)?;
    Ok(Outcome::Success(json!({ "expression": c.to_string(), "intersections": to_value(&ints(&v)) })))
}

pub fn homology_certify(p: &ProjectFile, class: &str, certificate: Option<&str>) -> CommandResult {
    let l = lattice(p)?;
    let c = parse_class(class, l.n())?;
    let cert = match certificate {
        Some(text) => parse_certificate(text, l.n())?,
        None => match PCertificate::boundary(&c) {
            Some(cert) => cert,
            None => {
                return Ok(Outcome::Failure(json!({
                    "valid": false,
                    "reason": "no certificate given and the class is not a non-negative boundary class",
                })))
            }
        },
    };
    let report = l.verify_p_certificate(&c, &cert);
    let v = to_value(&CertificateReportDto::from_report(&report));
    Ok(if report.valid { Outcome::Success(v) } else { Outcome::Failure(v) })
}

pub fn homology_degree(p: &ProjectFile, class: &str) -> CommandResult {
    let l = lattice(p)?;
    let a = p.require_ample()?;
    let c = parse_class(class, l.n())?;
    let d = l.ample_degree(&a, &c).map_err(malformed)?;
    Ok(Outcome::Success(json!({ "expression": c.to_string(), "degree": scalar(&d) })))
}

pub fn ring_vertex_mul(p: &ProjectFile, left: &str, right: &str) -> CommandResult {
    let m = p.manifold()?;
    let x = parse_vertex_element(left, &m)?;
    let y = parse_vertex_element(right, &m)?;
    let prod = vertex_mul(&m, &x, &y).map_err(malformed)?;
    Ok(Outcome::Success(to_value(&VertexElementDto::from_element(&prod))))
}

/// A local element as JSON terms or as an expression such as `"x*y + u^-1"`.
fn parse_local(text: &str) -> Result<LocalElement, SchemaError> {
    if text.trim_start().starts_with('{') {
        let dto: LocalElementDto = serde_json::from_str(text).map_err(|e| SchemaError(format!("element: {e}")))?;
        dto.to_element()
    } else {
        let raw = parse_expression(text).map_err(malformed)?;
        local_normal_form(raw).map_err(malformed)
    }
}

pub fn ring_local_mul(left: &str, right: &str) -> CommandResult {
    let prod = local_mul(&parse_local(left)?, &parse_local(right)?).map_err(malformed)?;
    Ok(Outcome::Success(to_value(&LocalElementDto::from_element(&prod))))
}

pub fn ring_normal_form(expr: &str) -> CommandResult {
    let e = parse_local(expr)?;
    Ok(Outcome::Success(to_value(&LocalElementDto::from_element(&e))))
}

fn parse_monoid(text: &str, l: &IntersectionLattice) -> Result<MonoidRingElement, SchemaError> {
    let dto: MonoidElementDto = serde_json::from_str(text).map_err(|e| SchemaError(format!("element: {e}")))?;
    let mut out = MonoidRingElement::zero();
    for t in &dto.terms {
        let class = t.class.to_class(l.n())?;
        let cert = match &t.certificate {
            Some(c) => c.to_certificate(l.n())?,
            None => PCertificate::boundary(&class)
                .ok_or_else(|| SchemaError(format!("class {class} needs an explicit certificate")))?,
        };
        let certified = CertifiedClass::new(l, class, cert).map_err(malformed)?;
        out.add_term(certified, t.coeff.0.clone());
    }
    Ok(out)
}

pub fn ring_monoid_mul(p: &ProjectFile, left: &str, right: &str, trunc: &str) -> CommandResult {
    let l = lattice(p)?;
    let a = p.require_ample()?;
    let x = parse_monoid(left, &l)?;
    let y = parse_monoid(right, &l)?;
    let prod = monoid_mul(&l, &x, &y, &a, &parse_rational(trunc)?).map_err(malformed)?;
    Ok(Outcome::Success(to_value(&MonoidElementDto::from_element(&prod))))
}

