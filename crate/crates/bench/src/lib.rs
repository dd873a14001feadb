//! Fixtures shared by the benchmarks.

use thetatrop_core::broken_lines::{BrokenLineDiagram, Edge, Leg, LegKind};
use thetatrop_core::{AmpleData, Chart, LiouvillePath, TropManifold, TropPoint, Vec2Z};

pub fn manifold(ks: &[i64]) -> TropManifold {
    TropManifold::from_self_intersections(ks).expect("valid boundary data")
}

pub fn uniform_path(ks: &[i64]) -> LiouvillePath {
    LiouvillePath::synthesize(&manifold(ks), &AmpleData::uniform(ks.len())).expect("positive ample data")
}

fn chart(number: usize) -> Chart {
    Chart::from_number(number).expect("chart exists")
}

/// The two-vertex broken line on the square, one edge crossing a ray.
pub fn figure() -> BrokenLineDiagram {
    let leg = |vertex, c, a: i64, b: i64, kind| Leg { vertex, chart: chart(c), class: Vec2Z::new(a, b), kind };
    BrokenLineDiagram {
        vertices: vec![TropPoint::from_ints(chart(2), 1, 1), TropPoint::from_ints(chart(2), 0, 2)],
        edges: vec![Edge { from: 0, to: 1, chart: chart(2), tangent: Vec2Z::new(-1, 1), weight: 1, cones: None }],
        legs: vec![
            leg(0, 2, 2, 0, LegKind::Input),
            leg(1, 1, 1, 1, LegKind::Input),
            leg(0, 2, 1, 1, LegKind::Output),
        ],
    }
}
