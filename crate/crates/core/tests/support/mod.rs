//! Independent oracles and random generators shared by the integration
//! tests and the acceptance harness.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use thetatrop_core::broken_lines::{BrokenLineDiagram, Edge, Leg, LegKind};
use thetatrop_core::homology::{ClassExpr, ExtraClass, IntersectionLattice, PCertificate, Summand};
use thetatrop_core::lattice::{primitive_part, Vec2Q, Vec2Z};
use thetatrop_core::rings::local::{Branch, LocalElement, LocalMonomial};
use thetatrop_core::tropical::{Chart, Trace, TraceStop};
use thetatrop_core::{AmpleData, BoundaryData, LiouvillePath, TropManifold, TropPoint};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Boundary data of the standard examples with ample coefficients.
pub fn fixtures() -> Vec<(&'static str, Vec<i64>, Vec<i64>)> {
    vec![
        ("three lines in P2", vec![1, 1, 1], vec![1, 1, 1]),
        ("conic and line", vec![4, 1], vec![1, 1]),
        ("nodal cubic", vec![7], vec![1]),
        ("cubic surface triangle", vec![-1, -1, -1], vec![1, 1, 1]),
        ("degree five del Pezzo", vec![-1, -1, -1, -1, -1], vec![1, 1, 1, 1, 1]),
        ("punctured A1 fiber", vec![1, 1, 0], vec![1, 1, 1]),
    ]
}

pub fn manifold(ks: &[i64]) -> TropManifold {
    TropManifold::from_self_intersections(ks).unwrap()
}

pub fn ample(a: &[i64]) -> AmpleData {
    AmpleData::new(a.iter().map(|&x| q(x)).collect()).unwrap()
}

pub fn path(ks: &[i64], a: &[i64]) -> LiouvillePath {
    LiouvillePath::synthesize(&manifold(ks), &ample(a)).unwrap()
}

// ---------------------------------------------------------------- monodromy

pub type M2 = [[i64; 2]; 2];

pub fn m2_mul(x: M2, y: M2) -> M2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (0..2).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    out
}

/// `M_n ... M_1` with `M_i = [[0, -1], [1, -k_i]]`, multiplied out by hand.
pub fn oracle_monodromy(ks: &[i64]) -> M2 {
    ks.iter().fold([[1, 0], [0, 1]], |acc, &k| m2_mul([[0, -1], [1, -k]], acc))
}

pub fn m2_of(m: &thetatrop_core::Mat2Z) -> M2 {
    let r = m.rows();
    let f = |x: &BigInt| i64::try_from(x).unwrap();
    [[f(r[0][0]), f(r[0][1])], [f(r[1][0]), f(r[1][1])]]
}

/// Linear functions on chart 1 that survive continuation around the
/// origin: the kernel of `mu^T - I`.
pub fn developing_rank(ks: &[i64]) -> usize {
    let mu = oracle_monodromy(ks);
    let a = [[mu[0][0] - 1, mu[1][0]], [mu[0][1], mu[1][1] - 1]];
    if a.iter().flatten().all(|&x| x == 0) {
        2
    } else if a[0][0] * a[1][1] - a[0][1] * a[1][0] == 0 {
        1
    } else {
        0
    }
}

// ---------------------------------------------------------------- lengths

/// `a * a_i + b * a_{i-1}` for a canonical point of chart `i`.
pub fn hand_length(a: &[i64], p: &TropPoint) -> Q {
    let n = a.len();
    let i = p.chart.index();
    &p.coords.a * q(a[i]) + &p.coords.b * q(a[(i + n - 1) % n])
}

pub fn brute_force_count(ks: &[i64], a: &[i64], slope: &Q) -> usize {
    let m = manifold(ks);
    // far beyond slope / min a
    let bound = (slope / q(*a.iter().min().unwrap())).ceil().to_integer();
    let bound = u64::try_from(&bound).unwrap() + 2;
    m.integral_points(bound)
        .iter()
        .filter(|p| p.is_origin() || hand_length(a, p) < *slope)
        .count()
}

// ---------------------------------------------------------------- local ring

/// Polynomial in `x, y` with rational coefficients, keyed by exponents.
pub type Poly = BTreeMap<(u32, u32), Q>;

pub fn poly_mul(f: &Poly, g: &Poly) -> Poly {
    let mut out = Poly::new();
    for ((a, b), c) in f {
        for ((d, e), h) in g {
            let entry = out.entry((a + d, b + e)).or_insert_with(Q::zero);
            *entry += c * h;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn poly_add(f: &Poly, g: &Poly) -> Poly {
    let mut out = f.clone();
    for (k, c) in g {
        *out.entry(*k).or_insert_with(Q::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn xy_minus_one_pow(k: u32) -> Poly {
    let base: Poly = [((1, 1), q(1)), ((0, 0), q(-1))].into_iter().collect();
    (0..k).fold([((0, 0), q(1))].into_iter().collect(), |acc, _| poly_mul(&acc, &base))
}

/// A rational function `P / (xy - 1)^N`.
#[derive(Debug, Clone)]
pub struct RatFn {
    pub num: Poly,
    pub den_pow: u32,
}

impl RatFn {
    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn { num: poly_mul(&self.num, &other.num), den_pow: self.den_pow + other.den_pow }
    }

    pub fn same(&self, other: &RatFn) -> bool {
        poly_mul(&self.num, &xy_minus_one_pow(other.den_pow)) == poly_mul(&other.num, &xy_minus_one_pow(self.den_pow))
    }
}

pub fn ratfn_of(e: &LocalElement) -> RatFn {
    let den_pow = e.terms().keys().map(|m| (-m.upow()).max(0)).max().unwrap_or(0) as u32;
    let mut num = Poly::new();
    for (m, c) in e.terms() {
        let mono: Poly = match m.branch() {
            Branch::X => [((m.exp(), 0), c.clone())].into_iter().collect(),
            Branch::Y => [((0, m.exp()), c.clone())].into_iter().collect(),
        };
        let shift = u32::try_from(m.upow() + i64::from(den_pow)).unwrap();
        num = poly_add(&num, &poly_mul(&mono, &xy_minus_one_pow(shift)));
    }
    RatFn { num, den_pow }
}

pub fn random_local(rng: &mut ChaCha8Rng) -> LocalElement {
    let mut e = LocalElement::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let branch = if rng.gen_bool(0.5) { Branch::X } else { Branch::Y };
        let lo = if branch == Branch::Y { 1 } else { 0 };
        let m = LocalMonomial::new(branch, rng.gen_range(lo..=3), rng.gen_range(-3..=3)).unwrap();
        let c = Q::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=4).into());
        e = e.add(&LocalElement::monomial(m, c));
    }
    e
}

/// Rank over Q of the given rows.
pub fn rank(rows: &[Poly]) -> usize {
    let keys: Vec<(u32, u32)> = {
        let mut k: Vec<_> = rows.iter().flat_map(|r| r.keys().copied()).collect();
        k.sort();
        k.dedup();
        k
    };
    let mut mat: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| keys.iter().map(|k| r.get(k).cloned().unwrap_or_else(Q::zero)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..keys.len() {
        let Some(p) = (rank..mat.len()).find(|&i| !mat[i][col].is_zero()) else { continue };
        mat.swap(rank, p);
        let pivot_row = mat[rank].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot_row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis monomials `x^a u^c`, `y^b u^c` with `exp + |c| <= d`, each
/// multiplied by `(xy - 1)^d` to clear denominators.
pub fn basis_rows(d: u32) -> Vec<Poly> {
    let mut rows = Vec::new();
    let d_i = i64::from(d);
    for exp in 0..=d {
        for c in -d_i..=d_i {
            if i64::from(exp) + c.abs() > d_i {
                continue;
            }
            let shift = u32::try_from(c + d_i).unwrap();
            rows.push(poly_mul(&[((exp, 0), q(1))].into_iter().collect(), &xy_minus_one_pow(shift)));
            if exp > 0 {
                rows.push(poly_mul(&[((0, exp), q(1))].into_iter().collect(), &xy_minus_one_pow(shift)));
            }
        }
    }
    rows
}

/// The unrestricted family `x^a y^b u^c` with `a + b + |c| <= d`.
pub fn unrestricted_rows(d: u32) -> Vec<Poly> {
    let mut rows = Vec::new();
    let d_i = i64::from(d);
    for a in 0..=d {
        for b in 0..=d - a {
            for c in -d_i..=d_i {
                if i64::from(a + b) + c.abs() > d_i {
                    continue;
                }
                let shift = u32::try_from(c + d_i).unwrap();
                rows.push(poly_mul(&[((a, b), q(1))].into_iter().collect(), &xy_minus_one_pow(shift)));
            }
        }
    }
    rows
}

// ---------------------------------------------------------------- P-cone

/// Random lattice with extra classes, boundary-positive ample data and a
/// certified class.
pub fn random_certified(rng: &mut ChaCha8Rng) -> (IntersectionLattice, AmpleData, ClassExpr, PCertificate) {
    loop {
        let n = rng.gen_range(1..=6);
        let ks: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=5)).collect();
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
        let m = manifold(&ks);
        let amp = ample(&a);
        if !amp.is_boundary_positive(&m) {
            continue;
        }
        let extras: Vec<ExtraClass> = (0..rng.gen_range(0..=3))
            .map(|i| ExtraClass {
                name: format!("E{i}"),
                pairings: (0..n).map(|_| BigInt::from(rng.gen_range(0..=3))).collect(),
            })
            .collect();
        let l = IntersectionLattice::new(&BoundaryData::new(ks.clone()), extras.clone()).unwrap();
        let mut summands = Vec::new();
        let mut class = ClassExpr::zero(n);
        for _ in 0..rng.gen_range(1..=5) {
            if !extras.is_empty() && rng.gen_bool(0.4) {
                let e = &extras[rng.gen_range(0..extras.len())];
                if e.pairings.iter().all(Zero::is_zero) {
                    continue;
                }
                let g = ClassExpr::extra(n, &e.name).scale(&BigInt::from(rng.gen_range(1..=3)));
                class = &class + &g;
                summands.push(Summand::Generator(g));
            } else {
                let divisor = rng.gen_range(0..n);
                let multiplicity = BigInt::from(rng.gen_range(0..=3));
                class = &class + &ClassExpr::divisor(n, divisor).scale(&multiplicity);
                summands.push(Summand::Boundary { divisor, multiplicity });
            }
        }
        return (l, amp, class, PCertificate { summands });
    }
}

// ---------------------------------------------------------------- diagrams

/// Manifolds with trivial monodromy and ample data positive on every
/// boundary component.
pub fn diagram_manifolds() -> Vec<(Vec<i64>, Vec<i64>)> {
    vec![
        (vec![0, 0, 0, 0], vec![1, 1, 1, 1]),
        (vec![0, 0, 0, 0], vec![1, 2, 1, 3]),
        (vec![1, 1, 1], vec![1, 1, 1]),
        (vec![1, 1, 1], vec![2, 1, 3]),
        (vec![-1, -1, -1, -1, -1, -1], vec![1, 1, 1, 1, 1, 1]),
    ]
}

fn param_length(start: &Vec2Q, end: &Vec2Q, dir: &Vec2Z) -> Q {
    if dir.a.is_zero() {
        (&end.b - &start.b) / Q::from_integer(dir.b.clone())
    } else {
        (&end.a - &start.a) / Q::from_integer(dir.a.clone())
    }
}

/// The point at parameter `t` along a trace, with the direction there.
pub fn point_along(m: &TropManifold, trace: &Trace, t: &Q) -> (TropPoint, Chart, Vec2Z) {
    let mut left = t.clone();
    for pc in &trace.pieces {
        let len = pc.end.as_ref().map(|e| param_length(&pc.start, e, &pc.dir));
        match len {
            Some(len) if left >= len => left -= len,
            _ => {
                let p = pc.start.offset(&left, &pc.dir);
                return (m.normalize(&TropPoint::new(pc.chart, p)).unwrap(), pc.chart, pc.dir.clone());
            }
        }
    }
    let last = trace.pieces.last().unwrap();
    let end = last.end.clone().unwrap();
    (m.normalize(&TropPoint::new(last.chart, end)).unwrap(), last.chart, last.dir.clone())
}

pub fn total_length(trace: &Trace) -> Option<Q> {
    trace
        .pieces
        .iter()
        .map(|pc| pc.end.as_ref().map(|e| param_length(&pc.start, e, &pc.dir)))
        .sum()
}

/// `v` at the representative `(c, q)` of canonical `p`, in `p`'s chart.
fn canonical_frame(m: &TropManifold, p: &TropPoint, c: Chart, coords: &Vec2Q, v: &Vec2Z) -> Vec2Z {
    if c == p.chart && *coords == p.coords {
        v.clone()
    } else {
        m.inverse_transition(p.chart).apply(v)
    }
}

fn random_primitive(rng: &mut ChaCha8Rng) -> Vec2Z {
    loop {
        let v = Vec2Z::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        if let Ok((p, d)) = primitive_part(&v) {
            if d.is_one() {
                return p;
            }
        }
    }
}

fn random_vertex(rng: &mut ChaCha8Rng, m: &TropManifold) -> TropPoint {
    let c = Chart::from_index(rng.gen_range(0..m.n()));
    let a = rng.gen_range(1..=4);
    let b = if rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..=4) };
    TropPoint::from_ints(c, a, b)
}

/// A random balanced tree. In local mode all vertices sit inside one
/// chart; otherwise edges leave in random directions.
pub fn random_diagram(rng: &mut ChaCha8Rng, m: &TropManifold) -> BrokenLineDiagram {
    'attempt: loop {
        let local = rng.gen_bool(0.5);
        let nv = rng.gen_range(1..=4);
        let mut vertices: Vec<TropPoint> = Vec::new();
        let mut edges: Vec<Edge> = Vec::new();
        let mut traces: Vec<Trace> = Vec::new();
        if local {
            let c = Chart::from_index(rng.gen_range(0..m.n()));
            let mut pool: Vec<(i64, i64)> = (1..=5).flat_map(|a| (1..=5).map(move |b| (a, b))).collect();
            pool.shuffle(rng);
            vertices = pool[..nv].iter().map(|&(a, b)| TropPoint::from_ints(c, a, b)).collect();
            for i in 1..nv {
                let from = rng.gen_range(0..i);
                let d = &vertices[i].coords - &vertices[from].coords;
                let d = d.to_integral().unwrap();
                let (t, _) = primitive_part(&d).unwrap();
                edges.push(Edge { from, to: i, chart: c, tangent: t, weight: rng.gen_range(1..=3), cones: None });
            }
        } else {
            vertices.push(m.normalize(&random_vertex(rng, m)).unwrap());
            while vertices.len() < nv {
                let from = rng.gen_range(0..vertices.len());
                let start = vertices[from].clone();
                let t = random_primitive(rng);
                let Ok(trace) = m.trace(start.chart, &start.coords, &t, TraceStop::Infinity) else { continue 'attempt };
                let (p, _, _) = point_along(m, &trace, &q(rng.gen_range(1..=3)));
                if p.is_origin() || vertices.contains(&p) {
                    continue 'attempt;
                }
                vertices.push(p);
                edges.push(Edge {
                    from,
                    to: vertices.len() - 1,
                    chart: start.chart,
                    tangent: t,
                    weight: rng.gen_range(1..=3),
                    cones: None,
                });
            }
        }
        let vertices: Vec<TropPoint> = vertices.iter().map(|v| m.normalize(v).unwrap()).collect();
        let mut sums = vec![Vec2Z::zero(); vertices.len()];
        for e in &edges {
            let from = &vertices[e.from];
            let to = &vertices[e.to];
            let Ok(trace) = m.trace(e.chart, &from.coords, &e.tangent, TraceStop::At(to)) else { continue 'attempt };
            let w = BigInt::from(e.weight);
            sums[e.from] = &sums[e.from] + &e.tangent.scale(&w);
            let last = trace.pieces.last().unwrap();
            let back = canonical_frame(m, to, last.chart, last.end.as_ref().unwrap(), &-&last.dir);
            sums[e.to] = &sums[e.to] + &back.scale(&w);
            traces.push(trace);
        }
        let mut legs = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            let deficit = -&sums[i];
            if deficit.is_zero() && rng.gen_bool(0.7) {
                continue;
            }
            let (radial, _) = primitive_part(&v.coords.to_integral().unwrap()).unwrap();
            let mut ks: Vec<i64> = (1..=8).collect();
            if !local {
                ks.shuffle(rng);
            }
            let mut placed = false;
            for k in ks {
                let rho = radial.scale(&BigInt::from(k));
                let tau = &deficit + &rho;
                if tau.is_zero() {
                    continue;
                }
                let Ok(trace) = m.trace(v.chart, &v.coords, &tau, TraceStop::Infinity) else { continue };
                let (end_chart, end_dir) = trace.final_direction();
                legs.push(Leg { vertex: i, chart: end_chart, class: end_dir.clone(), kind: LegKind::Input });
                legs.push(Leg { vertex: i, chart: v.chart, class: rho, kind: LegKind::Output });
                placed = true;
                break;
            }
            if !placed {
                continue 'attempt;
            }
        }
        return BrokenLineDiagram { vertices, edges, legs };
    }
}

/// Splits edge `e` at the midpoint of its trace.
pub fn refine_edge(m: &TropManifold, d: &BrokenLineDiagram, e: usize) -> BrokenLineDiagram {
    let canon: Vec<TropPoint> = d.vertices.iter().map(|v| m.normalize(v).unwrap()).collect();
    let edge = &d.edges[e];
    let from = &canon[edge.from];
    let trace = m.trace(edge.chart, &from.coords, &edge.tangent, TraceStop::At(&canon[edge.to])).unwrap();
    let half = total_length(&trace).unwrap() / q(2);
    let (mid, chart, dir) = point_along(m, &trace, &half);
    let mut out = d.clone();
    let mid_index = out.vertices.len();
    out.vertices.push(mid);
    out.edges[e].to = mid_index;
    out.edges.push(Edge { from: mid_index, to: edge.to, chart, tangent: dir, weight: edge.weight, cones: None });
    out
}
