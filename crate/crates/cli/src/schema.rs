//! JSON shapes read and written by the command line.
//!
//! Charts are numbered from 1, rationals travel as strings (`"5/2"`,
//! `"-3"`, `"0.75"`), and integers as JSON numbers of any size.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use thetatrop_core::broken_lines::{
    BrokenLineDiagram, Check, CheckKind, Edge, Leg, LegKind, Location, ValidationReport,
};
use thetatrop_core::homology::{CertificateReport, ExtraClass, Summand};
use thetatrop_core::lattice::{format_scalar, parse_scalar};
use thetatrop_core::rings::local::Branch;
use thetatrop_core::rings::{LocalElement, LocalMonomial, MonoidRingElement, VertexElement};
use thetatrop_core::{
    AmpleData, BoundaryData, Chart, ClassExpr, PCertificate, Scalar, TropManifold, TropPoint, Vec2Q,
    Vec2Z,
};

/// A malformed document; maps to exit code 2.
#[derive(Debug)]
pub struct SchemaError(pub String);

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad<T>(msg: impl Into<String>) -> Result<T, SchemaError> {
    Err(SchemaError(msg.into()))
}

/// Exact rational, written as a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational(pub Scalar);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = match Value::deserialize(d)? {
            Value::String(s) => s,
            Value::Number(n) => n.to_string(),
            other => return Err(D::Error::custom(format!("expected a rational, got {other}"))),
        };
        parse_scalar(&text).map(Rational).map_err(D::Error::custom)
    }
}

/// Exact integer, written as a JSON number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = match Value::deserialize(d)? {
            Value::String(s) => s,
            Value::Number(n) => n.to_string(),
            other => return Err(D::Error::custom(format!("expected an integer, got {other}"))),
        };
        BigInt::from_str(text.trim())
            .map(Int)
            .map_err(|_| D::Error::custom(format!("expected an integer, got {text}")))
    }
}

pub fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

fn unints(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|i| i.0.clone()).collect()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectFile {
    #[serde(default)]
    pub n: Option<usize>,
    pub self_intersections: Vec<i64>,
    #[serde(default)]
    pub ample: Option<Vec<Rational>>,
    #[serde(default)]
    pub extra_classes: Vec<ExtraClassDto>,
    #[serde(default)]
    pub diagram: Option<DiagramDto>,
    #[serde(default)]
    pub diagrams: Vec<DiagramDto>,
}

impl ProjectFile {
    pub fn parse(text: &str) -> Result<ProjectFile, SchemaError> {
        let p: ProjectFile = serde_json::from_str(text).map_err(|e| SchemaError(format!("project file: {e}")))?;
        if let Some(n) = p.n {
            if n != p.self_intersections.len() {
                return bad(format!("n = {n} but {} self-intersections given", p.self_intersections.len()));
            }
        }
        if p.diagram.is_some() && !p.diagrams.is_empty() {
            return bad("give either `diagram` or `diagrams`, not both");
        }
        Ok(p)
    }

    pub fn manifold(&self) -> Result<TropManifold, SchemaError> {
        TropManifold::build(BoundaryData::new(self.self_intersections.clone())).map_err(|e| SchemaError(e.to_string()))
    }

    pub fn ample(&self) -> Result<Option<AmpleData>, SchemaError> {
        let Some(a) = &self.ample else { return Ok(None) };
        let data = AmpleData::new(a.iter().map(|r| r.0.clone()).collect()).map_err(|e| SchemaError(e.to_string()))?;
        if data.len() != self.self_intersections.len() {
            return bad(format!(
                "{} ample coefficients for {} boundary components",
                data.len(),
                self.self_intersections.len()
            ));
        }
        Ok(Some(data))
    }

    pub fn require_ample(&self) -> Result<AmpleData, SchemaError> {
        self.ample()?.ok_or_else(|| SchemaError("this command needs `ample` in the project file".into()))
    }

    pub fn extras(&self) -> Vec<ExtraClass> {
        self.extra_classes
            .iter()
            .map(|e| ExtraClass { name: e.name.clone(), pairings: unints(&e.pairings) })
            .collect()
    }

    /// The diagram at `index` (zero-based).
    pub fn diagram(&self, index: usize) -> Result<&DiagramDto, SchemaError> {
        match (&self.diagram, index) {
            (Some(d), 0) => Ok(d),
            (Some(_), _) => bad(format!("no diagram {index}; the file holds one")),
            (None, _) if self.diagrams.is_empty() => bad("the project file holds no diagram"),
            (None, i) => self
                .diagrams
                .get(i)
                .ok_or_else(|| SchemaError(format!("no diagram {i}; the file holds {}", self.diagrams.len()))),
        }
    }

    pub fn has_diagram(&self) -> bool {
        self.diagram.is_some() || !self.diagrams.is_empty()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtraClassDto {
    pub name: String,
    pub pairings: Vec<Int>,
}

fn chart(m: &TropManifold, number: usize) -> Result<Chart, SchemaError> {
    m.chart(number).map_err(|e| SchemaError(e.to_string()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDto {
    pub chart: usize,
    pub coords: [Rational; 2],
}

impl PointDto {
    pub fn from_point(p: &TropPoint) -> PointDto {
        PointDto { chart: p.chart.number(), coords: [Rational(p.coords.a.clone()), Rational(p.coords.b.clone())] }
    }

    /// The point, normalized to its canonical chart.
    pub fn to_point(&self, m: &TropManifold) -> Result<TropPoint, SchemaError> {
        let c = chart(m, self.chart)?;
        let p = TropPoint::new(c, Vec2Q::new(self.coords[0].0.clone(), self.coords[1].0.clone()));
        m.normalize(&p).map_err(|e| SchemaError(e.to_string()))
    }
}

pub fn points(ps: &[TropPoint]) -> Vec<PointDto> {
    ps.iter().map(PointDto::from_point).collect()
}

/// Accepts a bare list, or any object with a `points` list such as the
/// output of `trop points`.
pub fn parse_points(text: &str, m: &TropManifold) -> Result<Vec<TropPoint>, SchemaError> {
    #[derive(Deserialize)]
    struct Wrapped {
        points: Vec<PointDto>,
    }
    let value: Value = serde_json::from_str(text).map_err(|e| SchemaError(format!("points: {e}")))?;
    let dtos: Vec<PointDto> = if value.is_array() {
        serde_json::from_str(text)
    } else {
        serde_json::from_str::<Wrapped>(text).map(|w| w.points)
    }
    .map_err(|e| SchemaError(format!("points: {e}")))?;
    dtos.iter().map(|d| d.to_point(m)).collect()
}

fn vec2z(v: &[Int; 2]) -> Vec2Z {
    Vec2Z::new(v[0].0.clone(), v[1].0.clone())
}

fn int_pair(v: &Vec2Z) -> [Int; 2] {
    [Int(v.a.clone()), Int(v.b.clone())]
}

pub fn parse_vector(text: &str) -> Result<Vec2Z, SchemaError> {
    let v: [Int; 2] = serde_json::from_str(text).map_err(|e| SchemaError(format!("vector: {e}")))?;
    Ok(vec2z(&v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LegKindDto {
    Input,
    Output,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDto {
    pub from: usize,
    pub to: usize,
    pub chart: usize,
    pub tangent: [Int; 2],
    pub weight: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cones: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegDto {
    pub vertex: usize,
    pub chart: usize,
    pub class: [Int; 2],
    pub kind: LegKindDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDto {
    pub vertices: Vec<PointDto>,
    #[serde(default)]
    pub edges: Vec<EdgeDto>,
    #[serde(default)]
    pub legs: Vec<LegDto>,
}

impl DiagramDto {
    pub fn to_diagram(&self, m: &TropManifold) -> Result<BrokenLineDiagram, SchemaError> {
        let vertices = self.vertices.iter().map(|p| p.to_point(m)).collect::<Result<_, _>>()?;
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let cones = match &e.cones {
                None => None,
                Some(cs) => Some(cs.iter().map(|&c| chart(m, c)).collect::<Result<_, _>>()?),
            };
            edges.push(Edge {
                from: e.from,
                to: e.to,
                chart: chart(m, e.chart)?,
                tangent: vec2z(&e.tangent),
                weight: e.weight,
                cones,
            });
        }
        let mut legs = Vec::with_capacity(self.legs.len());
        for l in &self.legs {
            legs.push(Leg {
                vertex: l.vertex,
                chart: chart(m, l.chart)?,
                class: vec2z(&l.class),
                kind: match l.kind {
                    LegKindDto::Input => LegKind::Input,
                    LegKindDto::Output => LegKind::Output,
                },
            });
        }
        Ok(BrokenLineDiagram { vertices, edges, legs })
    }

    pub fn from_diagram(d: &BrokenLineDiagram) -> DiagramDto {
        DiagramDto {
            vertices: points(&d.vertices),
            edges: d
                .edges
                .iter()
                .map(|e| EdgeDto {
                    from: e.from,
                    to: e.to,
                    chart: e.chart.number(),
                    tangent: int_pair(&e.tangent),
                    weight: e.weight,
                    cones: e.cones.as_ref().map(|cs| cs.iter().map(|c| c.number()).collect()),
                })
                .collect(),
            legs: d
                .legs
                .iter()
                .map(|l| LegDto {
                    vertex: l.vertex,
                    chart: l.chart.number(),
                    class: int_pair(&l.class),
                    kind: match l.kind {
                        LegKind::Input => LegKindDto::Input,
                        LegKind::Output => LegKindDto::Output,
                    },
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckDto {
    pub kind: String,
    pub location: BTreeMap<&'static str, usize>,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct ReportDto {
    pub pass: bool,
    pub checks: Vec<CheckDto>,
}

impl ReportDto {
    pub fn from_report(r: &ValidationReport) -> ReportDto {
        ReportDto { pass: r.pass, checks: r.checks.iter().map(check).collect() }
    }
}

fn check(c: &Check) -> CheckDto {
    let (key, i) = match c.location {
        Location::Vertex(i) => ("vertex", i),
        Location::Edge(i) => ("edge", i),
        Location::Leg(i) => ("leg", i),
    };
    let kind = match c.kind {
        CheckKind::Sector => "sector",
        CheckKind::Transport => "transport",
        CheckKind::Balancing => "balancing",
        CheckKind::Leg => "leg",
        CheckKind::Monotonicity => "monotonicity",
    };
    CheckDto { kind: kind.into(), location: BTreeMap::from([(key, i)]), ok: c.ok, detail: c.detail.clone() }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDto {
    pub boundary: Vec<Int>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extras: BTreeMap<String, Int>,
}

impl ClassDto {
    pub fn to_class(&self, n: usize) -> Result<ClassExpr, SchemaError> {
        if self.boundary.len() != n {
            return bad(format!("class has {} boundary coefficients, expected {n}", self.boundary.len()));
        }
        let mut c = ClassExpr::from_boundary(unints(&self.boundary));
        for (name, k) in &self.extras {
            c = c.with_extra(name, k.0.clone());
        }
        Ok(c)
    }

    pub fn from_class(c: &ClassExpr) -> ClassDto {
        ClassDto {
            boundary: ints(c.boundary()),
            extras: c.extras().iter().map(|(k, v)| (k.clone(), Int(v.clone()))).collect(),
        }
    }
}

pub fn parse_class(text: &str, n: usize) -> Result<ClassExpr, SchemaError> {
    let dto: ClassDto = serde_json::from_str(text).map_err(|e| SchemaError(format!("class: {e}")))?;
    dto.to_class(n)
}

/// One summand: `{"divisor": 2, "multiplicity": 1}` or `{"generator": class}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<ClassDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDto {
    pub summands: Vec<SummandDto>,
}

impl CertificateDto {
    pub fn to_certificate(&self, n: usize) -> Result<PCertificate, SchemaError> {
        let mut summands = Vec::with_capacity(self.summands.len());
        for s in &self.summands {
            summands.push(match (s.divisor, &s.multiplicity, &s.generator) {
                (Some(d), Some(k), None) => {
                    if d == 0 || d > n {
                        return bad(format!("divisor {d} out of range 1..={n}"));
                    }
                    Summand::Boundary { divisor: d - 1, multiplicity: k.0.clone() }
                }
                (None, None, Some(g)) => Summand::Generator(g.to_class(n)?),
                _ => return bad("a summand is either {divisor, multiplicity} or {generator}"),
            });
        }
        Ok(PCertificate { summands })
    }

    pub fn from_certificate(c: &PCertificate) -> CertificateDto {
        CertificateDto {
            summands: c
                .summands
                .iter()
                .map(|s| match s {
                    Summand::Boundary { divisor, multiplicity } => SummandDto {
                        divisor: Some(divisor + 1),
                        multiplicity: Some(Int(multiplicity.clone())),
                        generator: None,
                    },
                    Summand::Generator(g) => {
                        SummandDto { divisor: None, multiplicity: None, generator: Some(ClassDto::from_class(g)) }
                    }
                })
                .collect(),
        }
    }
}

pub fn parse_certificate(text: &str, n: usize) -> Result<PCertificate, SchemaError> {
    let dto: CertificateDto = serde_json::from_str(text).map_err(|e| SchemaError(format!("certificate: {e}")))?;
    dto.to_certificate(n)
}

#[derive(Debug, Serialize)]
pub struct SummandCheckDto {
    pub index: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairings: Option<Vec<Int>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CertificateReportDto {
    pub valid: bool,
    pub total: ClassDto,
    pub total_matches: bool,
    pub summands: Vec<SummandCheckDto>,
}

impl CertificateReportDto {
    pub fn from_report(r: &CertificateReport) -> CertificateReportDto {
        CertificateReportDto {
            valid: r.valid,
            total: ClassDto::from_class(&r.total),
            total_matches: r.total_matches,
            summands: r
                .summands
                .iter()
                .map(|s| SummandCheckDto {
                    index: s.index,
                    ok: s.ok,
                    pairings: s.pairings.as_deref().map(ints),
                    reason: s.reason.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexTermDto {
    pub point: PointDto,
    pub coeff: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexElementDto {
    pub terms: Vec<VertexTermDto>,
}

impl VertexElementDto {
    pub fn to_element(&self, m: &TropManifold) -> Result<VertexElement, SchemaError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.point.to_point(m)?, t.coeff.0.clone())))
            .collect::<Result<Vec<_>, SchemaError>>()?;
        VertexElement::from_terms(m, terms).map_err(|e| SchemaError(e.to_string()))
    }

    pub fn from_element(e: &VertexElement) -> VertexElementDto {
        VertexElementDto {
            terms: e
                .terms()
                .iter()
                .map(|(p, c)| VertexTermDto { point: PointDto::from_point(p), coeff: Rational(c.clone()) })
                .collect(),
        }
    }
}

pub fn parse_vertex_element(text: &str, m: &TropManifold) -> Result<VertexElement, SchemaError> {
    let dto: VertexElementDto = serde_json::from_str(text).map_err(|e| SchemaError(format!("element: {e}")))?;
    dto.to_element(m)
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchDto {
    X,
    Y,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalTermDto {
    pub branch: BranchDto,
    pub exp: u32,
    pub upow: i64,
    pub coeff: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalElementDto {
    pub terms: Vec<LocalTermDto>,
    /// Human-readable form; ignored on input.
    #[serde(default)]
    pub text: Option<String>,
}

impl LocalElementDto {
    pub fn to_element(&self) -> Result<LocalElement, SchemaError> {
        let mut out = LocalElement::zero();
        for t in &self.terms {
            let branch = match t.branch {
                BranchDto::X => Branch::X,
                BranchDto::Y => Branch::Y,
            };
            let m = LocalMonomial::new(branch, t.exp, t.upow).map_err(|e| SchemaError(e.to_string()))?;
            out = out.add(&LocalElement::monomial(m, t.coeff.0.clone()));
        }
        Ok(out)
    }

    pub fn from_element(e: &LocalElement) -> LocalElementDto {
        LocalElementDto {
            terms: e
                .terms()
                .iter()
                .map(|(m, c)| LocalTermDto {
                    branch: match m.branch() {
                        Branch::X => BranchDto::X,
                        Branch::Y => BranchDto::Y,
                    },
                    exp: m.exp(),
                    upow: m.upow(),
                    coeff: Rational(c.clone()),
                })
                .collect(),
            text: Some(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonoidTermDto {
    pub class: ClassDto,
    /// Defaults to the boundary certificate of the class.
    #[serde(default)]
    pub certificate: Option<CertificateDto>,
    pub coeff: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonoidElementDto {
    pub terms: Vec<MonoidTermDto>,
}

impl MonoidElementDto {
    pub fn from_element(e: &MonoidRingElement) -> MonoidElementDto {
        MonoidElementDto {
            terms: e
                .terms()
                .map(|(class, cert, coeff)| MonoidTermDto {
                    class: ClassDto::from_class(class),
                    certificate: Some(CertificateDto::from_certificate(cert)),
                    coeff: Rational(coeff.clone()),
                })
                .collect(),
        }
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("schema types serialize")
}
