//! SVG picture of the manifold developed into the plane.
//!
//! Chart 1 is drawn as the quadrant between the rays of `D_1` and `D_n`,
//! and chart `i + 1` is glued to chart `i` along the ray of `D_i`, so the
//! picture is cut along the ray of `D_n`. Lattice coordinates are sheared
//! so that the three rays of the triangle of lines meet at 120 degrees.

use std::fmt::Write;

use num_traits::{ToPrimitive, Zero};

use super::{geometry, leg_weight, BrokenLineDiagram, LegKind};
use crate::lattice::{format_scalar, Mat2Z, Scalar, Vec2Q};
use crate::liouville::LiouvillePath;
use crate::tropical::{Chart, Piece, TropManifold};

const UNIT: f64 = 40.0;
const MARGIN: f64 = 30.0;

struct Canvas {
    body: String,
    min: (f64, f64),
    max: (f64, f64),
}

fn num(x: f64) -> String {
    let r = (x * 100.0).round() / 100.0;
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r:.2}")
}

impl Canvas {
    fn new() -> Canvas {
        Canvas { body: String::new(), min: (0.0, 0.0), max: (0.0, 0.0) }
    }

    fn see(&mut self, p: (f64, f64)) {
        self.min = (self.min.0.min(p.0), self.min.1.min(p.1));
        self.max = (self.max.0.max(p.0), self.max.1.max(p.1));
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), class: &str) {
        self.see(a);
        self.see(b);
        let _ = writeln!(
            self.body,
            r#"  <line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1)
        );
    }

    fn dot(&mut self, p: (f64, f64), r: f64, class: &str) {
        self.see(p);
        let _ = writeln!(self.body, r#"  <circle class="{class}" cx="{}" cy="{}" r="{}"/>"#, num(p.0), num(p.1), num(r));
    }

    fn text(&mut self, p: (f64, f64), class: &str, text: &str) {
        self.see(p);
        let _ = writeln!(self.body, r#"  <text class="{class}" x="{}" y="{}">{}</text>"#, num(p.0), num(p.1), text);
    }

    fn polyline(&mut self, pts: &[(f64, f64)], class: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|p| {
                self.see(*p);
                format!("{},{}", num(p.0), num(p.1))
            })
            .collect();
        let _ = writeln!(self.body, r#"  <polyline class="{class}" points="{}"/>"#, coords.join(" "));
    }

    fn finish(self) -> String {
        let x0 = self.min.0 - MARGIN;
        let y0 = self.min.1 - MARGIN;
        let w = self.max.0 - self.min.0 + 2.0 * MARGIN;
        let h = self.max.1 - self.min.1 + 2.0 * MARGIN;
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
            num(w),
            num(h),
            num(x0),
            num(y0),
            num(w),
            num(h)
        );
        out.push_str(concat!(
            "  <style>\n",
            "    .ray { stroke: #555; stroke-width: 1.5; }\n",
            "    .cut { stroke: #555; stroke-width: 1.5; stroke-dasharray: 4 3; }\n",
            "    .point { fill: #999; }\n",
            "    .origin { fill: #000; }\n",
            "    .level { fill: none; stroke: #2a7; stroke-width: 1; stroke-dasharray: 6 3; }\n",
            "    .edge, .input { stroke: #c22; stroke-width: 2; }\n",
            "    .output { stroke: #22c; stroke-width: 2; }\n",
            "    .vertex { fill: #c22; }\n",
            "    text { font-family: sans-serif; font-size: 12px; }\n",
            "  </style>\n",
        ));
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

/// Development matrices: chart-`i` coordinates to the plane.
fn development(m: &TropManifold) -> Vec<Mat2Z> {
    let mut gs = vec![Mat2Z::identity()];
    for c in m.charts().take(m.n() - 1) {
        let last = gs.last().expect("non-empty");
        gs.push(last.mul(m.inverse_transition(c)));
    }
    gs
}

fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Plane position (SVG pixels) of chart coordinates `q` under `g`.
fn place(g: &Mat2Z, q: &Vec2Q) -> (f64, f64) {
    let v = g.apply_q(q);
    let (x, y) = (to_f64(&v.a), to_f64(&v.b));
    ((x - y / 2.0) * UNIT, -(y * 3f64.sqrt() / 2.0) * UNIT)
}

fn piece_end(pc: &Piece, reach: &Scalar) -> Vec2Q {
    match &pc.end {
        Some(e) => e.clone(),
        None => {
            let longest = pc.dir.a.clone().max(pc.dir.b.clone());
            let t = Scalar::from_integer(1.into()).max(reach / Scalar::from_integer(longest));
            pc.start.offset(&t, &pc.dir)
        }
    }
}

/// Renders the developed charts with integral points up to `bound`, and
/// optionally a diagram and a level set of the orbit length.
pub fn render_svg(
    m: &TropManifold,
    diagram: Option<&BrokenLineDiagram>,
    path: Option<&LiouvillePath>,
    bound: u64,
) -> String {
    let gs = development(m);
    let g = |c: Chart| &gs[c.index()];
    let n = m.n();
    let mut canvas = Canvas::new();
    let origin = (0.0, 0.0);
    let b = Scalar::from_integer(bound.into());

    if bound > 0 {
        for c in m.charts() {
            let end = place(g(c), &Vec2Q::new(b.clone(), Scalar::zero()));
            canvas.line(origin, end, "ray");
            canvas.text((end.0 * 1.1, end.1 * 1.1), "label", &format!("D{}", c.number()));
        }
        let first = Vec2Q::new(Scalar::zero(), b.clone());
        let closing = gs[n - 1].apply_q(&Vec2Q::new(b.clone(), Scalar::zero()));
        if gs[0].apply_q(&first) != closing {
            let end = place(&gs[0], &first);
            canvas.line(origin, end, "cut");
            canvas.text((end.0 * 1.1, end.1 * 1.1), "label", &format!("D{n}"));
        }
    }

    for p in m.integral_points(bound) {
        if !p.is_origin() {
            canvas.dot(place(g(p.chart), &p.coords), 2.0, "point");
        }
    }
    canvas.dot(origin, 3.0, "origin");

    if let Some(path) = path.filter(|_| bound > 0) {
        let a = path.ample().coefficients();
        let min_a = a.iter().min().expect("ample data is non-empty");
        let level = &b * min_a;
        let on_ray = |j: usize| Vec2Q::new(&level / &a[j], Scalar::zero());
        let mut pts = vec![place(&gs[0], &Vec2Q::new(Scalar::zero(), &level / &a[n - 1]))];
        pts.extend((0..n).map(|j| place(&gs[j], &on_ray(j))));
        canvas.polyline(&pts, "level");
        let tag = pts[pts.len() / 2];
        canvas.text((tag.0 + 6.0, tag.1 - 6.0), "label", &format!("length {}", format_scalar(&level)));
    }

    if let Some(d) = diagram {
        let geo = geometry(m, d);
        let reach = &b + Scalar::from_integer(1.into());
        let draw = |canvas: &mut Canvas, pieces: &[Piece], class: &str, label: Option<String>| {
            for (i, pc) in pieces.iter().enumerate() {
                let s = place(g(pc.chart), &pc.start);
                let e = place(g(pc.chart), &piece_end(pc, &reach));
                canvas.line(s, e, class);
                if let (0, Some(text)) = (i, &label) {
                    canvas.text(((s.0 + e.0) / 2.0 + 4.0, (s.1 + e.1) / 2.0 - 4.0), "weight", text);
                }
            }
        };
        for (e, trace) in d.edges.iter().zip(&geo.edges) {
            if let Some(trace) = trace {
                let label = (e.weight > 1).then(|| e.weight.to_string());
                draw(&mut canvas, &trace.pieces, "edge", label);
            }
        }
        let inputs = d.legs.iter().filter(|l| l.kind == LegKind::Input);
        for (l, (_, trace)) in inputs.zip(&geo.input_legs) {
            if let Some(trace) = trace {
                let w = leg_weight(&l.class).filter(|w| *w > 1.into());
                draw(&mut canvas, &trace.pieces, "input", w.map(|w| w.to_string()));
            }
        }
        for l in d.legs.iter().filter(|l| l.kind == LegKind::Output) {
            if let Some(v) = geo.vertices.get(l.vertex) {
                canvas.line(place(g(v.chart), &v.coords), origin, "output");
            }
        }
        for v in &geo.vertices {
            canvas.dot(place(g(v.chart), &v.coords), 4.0, "vertex");
        }
    }
    canvas.finish()
}
