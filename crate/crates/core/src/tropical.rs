//! The integral affine manifold glued from one quadrant per node.
//!
//! Chart `i` is the closed quadrant `Q_i` spanned by the loops around the
//! two divisors meeting at node `i`. In chart coordinates `(a, b)` the
//! first axis is the ray of divisor `D_i` and the second axis is the ray of
//! `D_{i-1}`. Crossing the ray of `D_i` moves from chart `i` to chart `i+1`
//! by the transition matrix `[[0, -1], [1, -k_i]]`, where `k_i = D_i^2`.
//!
//! Charts are stored zero-based; [`Chart::number`] gives the one-based
//! index used in files and reports.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{Mat2Z, Scalar, Vec2Q, Vec2Z};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TropError {
    #[error("bad boundary data: {0}")]
    BadInput(String),
    #[error("point has negative chart coordinates {0}")]
    NegativeCoords(Box<Vec2Q>),
    #[error("chart {0} out of range for a cycle of {1} components")]
    ChartOutOfRange(usize, usize),
    #[error("function values violate the linearity relation at divisor {0}")]
    NotLinear(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("cannot trace from the origin")]
    StartsAtOrigin,
    #[error("zero direction")]
    ZeroDirection,
    #[error("start point is not in the closed cone of chart {0}")]
    StartNotInCone(Chart),
    #[error("line runs into the origin")]
    HitsOrigin,
    #[error("line crosses more than {0} rays")]
    TooManyCrossings(usize),
    #[error("line goes to infinity without reaching its target")]
    MissedTarget,
}

/// Index of a chart (equivalently a node of the boundary cycle).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chart(usize);

impl Chart {
    pub const FIRST: Chart = Chart(0);

    pub fn from_index(index: usize) -> Chart {
        Chart(index)
    }

    /// Chart from its one-based number. Returns `None` for `0`.
    pub fn from_number(number: usize) -> Option<Chart> {
        number.checked_sub(1).map(Chart)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn number(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rotation {
    Counterclockwise,
    Clockwise,
}

/// Number of boundary components and their self-intersections `k_i`,
/// indexed by divisor `D_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundaryData {
    pub n: usize,
    pub self_intersections: Vec<i64>,
}

impl BoundaryData {
    pub fn new(self_intersections: Vec<i64>) -> Self {
        BoundaryData { n: self_intersections.len(), self_intersections }
    }
}

/// A point of the manifold in the coordinates of one chart.
///
/// Field order makes the derived ordering `(chart, a, b)` lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropPoint {
    pub chart: Chart,
    pub coords: Vec2Q,
}

impl TropPoint {
    pub fn new(chart: Chart, coords: Vec2Q) -> Self {
        TropPoint { chart, coords }
    }

    pub fn from_ints(chart: Chart, a: i64, b: i64) -> Self {
        TropPoint { chart, coords: Vec2Q::from_ints(a, b) }
    }

    /// The distinguished representative of the singular point.
    pub fn origin() -> Self {
        TropPoint { chart: Chart::FIRST, coords: Vec2Q::zero() }
    }

    pub fn is_origin(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.is_integral()
    }
}

impl fmt::Display for TropPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chart {} {}", self.chart, self.coords)
    }
}

/// A lattice vector in the tangent space of one chart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TangentVector {
    pub chart: Chart,
    pub vec: Vec2Z,
}

/// Which part of a chart's closed cone a canonical point occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Locus {
    Origin,
    /// On the ray of divisor `D_j` (`j` zero-based).
    Ray(usize),
    Interior(Chart),
}

/// Values `alpha_j` of a piecewise linear function on the primitive ray
/// generators of the divisors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearFunction {
    pub values: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropManifold {
    boundary: BoundaryData,
    transitions: Vec<Mat2Z>,
    inverses: Vec<Mat2Z>,
}

/// Transition matrix from chart `i` to chart `i+1` for `k_i`.
pub fn gluing_matrix(k: i64) -> Mat2Z {
    Mat2Z::new(0, -1, 1, -k)
}

impl TropManifold {
    pub fn build(data: BoundaryData) -> Result<TropManifold, TropError> {
        if data.n < 1 {
            return Err(TropError::BadInput("need at least one boundary component".into()));
        }
        if data.self_intersections.len() != data.n {
            return Err(TropError::BadInput(format!(
                "n = {} but {} self-intersections given",
                data.n,
                data.self_intersections.len()
            )));
        }
        let transitions: Vec<Mat2Z> = data.self_intersections.iter().map(|&k| gluing_matrix(k)).collect();
        let inverses = transitions
            .iter()
            .map(|m| m.inverse().expect("gluing matrices have determinant one"))
            .collect();
        Ok(TropManifold { boundary: data, transitions, inverses })
    }

    pub fn from_self_intersections(ks: &[i64]) -> Result<TropManifold, TropError> {
        Self::build(BoundaryData::new(ks.to_vec()))
    }

    pub fn n(&self) -> usize {
        self.boundary.n
    }

    pub fn boundary(&self) -> &BoundaryData {
        &self.boundary
    }

    pub fn self_intersection(&self, divisor: usize) -> i64 {
        self.boundary.self_intersections[divisor]
    }

    pub fn charts(&self) -> impl Iterator<Item = Chart> {
        (0..self.n()).map(Chart)
    }

    pub fn chart(&self, number: usize) -> Result<Chart, TropError> {
        match Chart::from_number(number) {
            Some(c) if c.0 < self.n() => Ok(c),
            _ => Err(TropError::ChartOutOfRange(number, self.n())),
        }
    }

    pub fn next(&self, c: Chart) -> Chart {
        Chart((c.0 + 1) % self.n())
    }

    pub fn prev(&self, c: Chart) -> Chart {
        Chart((c.0 + self.n() - 1) % self.n())
    }

    /// Transition from chart `c` to chart `c+1`.
    pub fn transition(&self, c: Chart) -> &Mat2Z {
        &self.transitions[c.0]
    }

    pub fn transitions(&self) -> &[Mat2Z] {
        &self.transitions
    }

    /// Transition from chart `c+1` back to chart `c`.
    pub fn inverse_transition(&self, c: Chart) -> &Mat2Z {
        &self.inverses[c.0]
    }

    /// `M_n ... M_1`: carries chart-1 vectors once counterclockwise
    /// through charts `2, ..., n` and back to chart 1.
    pub fn monodromy(&self) -> Mat2Z {
        self.transitions
            .iter()
            .fold(Mat2Z::identity(), |acc, m| m.mul(&acc))
    }

    /// Matrix carrying chart-`from` vectors `steps` charts onward
    /// (counterclockwise for positive `steps`, clockwise for negative).
    pub fn transport_matrix(&self, from: Chart, steps: i64) -> Mat2Z {
        let mut acc = Mat2Z::identity();
        let mut c = from;
        if steps >= 0 {
            for _ in 0..steps {
                acc = self.transition(c).mul(&acc);
                c = self.next(c);
            }
        } else {
            for _ in 0..(-steps) {
                c = self.prev(c);
                acc = self.inverse_transition(c).mul(&acc);
            }
        }
        acc
    }

    pub fn transport_steps(&self, v: &TangentVector, steps: i64) -> TangentVector {
        let n = self.n() as i64;
        let target = (v.chart.0 as i64 + steps).rem_euclid(n) as usize;
        TangentVector {
            chart: Chart(target),
            vec: self.transport_matrix(v.chart, steps).apply(&v.vec),
        }
    }

    /// Moves `v` to `to` stepping chart by chart in the given direction,
    /// taking the fewest steps (zero when `to` is `v`'s own chart).
    pub fn transport_vector(&self, v: &TangentVector, to: Chart, direction: Rotation) -> TangentVector {
        let n = self.n();
        let steps = match direction {
            Rotation::Counterclockwise => ((to.0 + n - v.chart.0) % n) as i64,
            Rotation::Clockwise => -(((v.chart.0 + n - to.0) % n) as i64),
        };
        self.transport_steps(v, steps)
    }

    /// Transport once around the whole cycle; equals applying the
    /// monodromy (or its inverse) when based at chart 1.
    pub fn transport_loop(&self, v: &TangentVector, direction: Rotation) -> TangentVector {
        let n = self.n() as i64;
        match direction {
            Rotation::Counterclockwise => self.transport_steps(v, n),
            Rotation::Clockwise => self.transport_steps(v, -n),
        }
    }

    /// Pulls a covector on chart `c+1` back to chart `c`.
    pub fn covector_to_prev(&self, c_next: Chart, covector: &Vec2Q) -> Vec2Q {
        let c = self.prev(c_next);
        self.transition(c).transpose().apply_q(covector)
    }

    /// Pushes a covector on chart `c-1` forward to chart `c`.
    pub fn covector_to_next(&self, c_prev: Chart, covector: &Vec2Q) -> Vec2Q {
        self.inverse_transition(c_prev).transpose().apply_q(covector)
    }

    /// Where a canonical point sits.
    pub fn locus(&self, p: &TropPoint) -> Locus {
        if p.is_origin() {
            Locus::Origin
        } else if p.coords.b.is_zero() {
            Locus::Ray(p.chart.0)
        } else if p.coords.a.is_zero() {
            Locus::Ray(self.prev(p.chart).0)
        } else {
            Locus::Interior(p.chart)
        }
    }

    /// Canonical representative: the origin becomes `(chart 1, (0, 0))`,
    /// a point on the ray of `D_j` becomes `(chart j, (r, 0))`, interior
    /// points are unchanged.
    pub fn normalize(&self, p: &TropPoint) -> Result<TropPoint, TropError> {
        if p.chart.0 >= self.n() {
            return Err(TropError::ChartOutOfRange(p.chart.number(), self.n()));
        }
        if p.coords.a.is_negative() || p.coords.b.is_negative() {
            return Err(TropError::NegativeCoords(Box::new(p.coords.clone())));
        }
        if p.is_origin() {
            return Ok(TropPoint::origin());
        }
        if p.coords.a.is_zero() {
            return Ok(TropPoint {
                chart: self.prev(p.chart),
                coords: Vec2Q::new(p.coords.b.clone(), Scalar::zero()),
            });
        }
        Ok(p.clone())
    }

    /// Every `(chart, coordinates)` pair describing the canonical point `p`.
    /// The origin is listed once per chart; ray points appear in both
    /// adjacent charts (twice in the single chart when `n = 1`).
    pub fn representations(&self, p: &TropPoint) -> Vec<(Chart, Vec2Q)> {
        match self.locus(p) {
            Locus::Origin => self.charts().map(|c| (c, Vec2Q::zero())).collect(),
            Locus::Ray(j) => {
                let r = if p.coords.b.is_zero() { p.coords.a.clone() } else { p.coords.b.clone() };
                vec![
                    (Chart(j), Vec2Q::new(r.clone(), Scalar::zero())),
                    (self.next(Chart(j)), Vec2Q::new(Scalar::zero(), r)),
                ]
            }
            Locus::Interior(c) => vec![(c, p.coords.clone())],
        }
    }

    /// Charts whose closed cone contains `p`, ascending.
    pub fn charts_containing(&self, p: &TropPoint) -> Vec<Chart> {
        let mut charts: Vec<Chart> = self.representations(p).into_iter().map(|(c, _)| c).collect();
        charts.sort();
        charts.dedup();
        charts
    }

    /// Coordinates of `p` in chart `c`, if `p` lies in `Q_c`.
    pub fn coords_in(&self, p: &TropPoint, c: Chart) -> Option<Vec2Q> {
        self.representations(p)
            .into_iter()
            .find(|(rc, _)| *rc == c)
            .map(|(_, v)| v)
    }

    /// The primitive generator of the ray of `D_j`, canonically in chart `j`.
    pub fn ray_generator(&self, divisor: usize) -> TropPoint {
        TropPoint::from_ints(Chart(divisor), 1, 0)
    }

    /// All integral points with canonical coordinates bounded by `bound`,
    /// origin first, sorted by `(chart, a, b)`.
    pub fn integral_points(&self, bound: u64) -> Vec<TropPoint> {
        let mut points = vec![TropPoint::origin()];
        for c in self.charts() {
            for a in 1..=bound {
                points.push(TropPoint::from_ints(c, a as i64, 0));
                for b in 1..=bound {
                    points.push(TropPoint::from_ints(c, a as i64, b as i64));
                }
            }
        }
        points.sort();
        points
    }

    /// Rows of the cyclic system `alpha_{i-1} + k_i alpha_i + alpha_{i+1} = 0`.
    pub fn linearity_system(&self) -> Vec<Vec<BigInt>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut row = vec![BigInt::zero(); n];
                row[(i + n - 1) % n] += 1;
                row[i] += self.self_intersection(i);
                row[(i + 1) % n] += 1;
                row
            })
            .collect()
    }

    /// A Hermite-reduced integer basis of the globally linear functions.
    pub fn linear_function_basis(&self) -> Vec<LinearFunction> {
        integer_kernel(&self.linearity_system(), self.n())
            .into_iter()
            .map(|values| LinearFunction { values })
            .collect()
    }

    /// Follows the straight line from `start` (given in chart `chart`) in
    /// direction `dir`, crossing rays by the transition matrices.
    pub fn trace(
        &self,
        chart: Chart,
        start: &Vec2Q,
        dir: &Vec2Z,
        stop: TraceStop<'_>,
    ) -> Result<Trace, TraceError> {
        trace_line(self, chart, start, dir, stop)
    }
}

impl LinearFunction {
    pub fn zero(n: usize) -> Self {
        LinearFunction { values: vec![BigInt::zero(); n] }
    }

    /// First divisor at which the linearity relation fails.
    pub fn violation(&self, m: &TropManifold) -> Option<usize> {
        if self.values.len() != m.n() {
            return Some(0);
        }
        m.linearity_system().iter().position(|row| {
            !row.iter()
                .zip(&self.values)
                .map(|(r, v)| r * v)
                .sum::<BigInt>()
                .is_zero()
        })
    }

    /// Value at a point `(chart i, (a, b))`: `a * alpha_i + b * alpha_{i-1}`.
    pub fn evaluate(&self, m: &TropManifold, p: &TropPoint) -> Result<Scalar, TropError> {
        if let Some(j) = self.violation(m) {
            return Err(TropError::NotLinear(j));
        }
        let i = p.chart.index();
        let prev = m.prev(p.chart).index();
        Ok(&p.coords.a * BigRational::from_integer(self.values[i].clone())
            + &p.coords.b * BigRational::from_integer(self.values[prev].clone()))
    }
}

/// Integer basis of `{x in Z^cols : rows * x = 0}` in row Hermite form.
pub fn integer_kernel(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    // columns of u track the unimodular column operations applied to a
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let swap_cols = |m: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };
    let sub_col = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in m.iter_mut() {
            let t = &row[src] * q;
            row[dst] -= t;
        }
    };
    let mut pivot = 0;
    for r in 0..a.len() {
        if pivot == cols {
            break;
        }
        loop {
            let best = (pivot..cols)
                .filter(|&j| !a[r][j].is_zero())
                .min_by(|&x, &y| a[r][x].abs().cmp(&a[r][y].abs()));
            let Some(best) = best else { break };
            swap_cols(&mut a, pivot, best);
            swap_cols(&mut u, pivot, best);
            let mut done = true;
            for j in pivot + 1..cols {
                if a[r][j].is_zero() {
                    continue;
                }
                let q = a[r][j].div_floor(&a[r][pivot]);
                sub_col(&mut a, j, pivot, &q);
                sub_col(&mut u, j, pivot, &q);
                if !a[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    let basis: Vec<Vec<BigInt>> = (pivot..cols)
        .map(|j| (0..cols).map(|i| u[i][j].clone()).collect())
        .collect();
    hermite_rows(basis)
}

/// Row Hermite normal form: positive pivots, entries above each pivot
/// reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&x, &y| rows[x][c].abs().cmp(&rows[y][c].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot_row = rows[r].clone();
            for row in rows.iter_mut().take(r) {
                let q = row[c].div_floor(&pivot_row[c]);
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

/// When a traced line stops.
#[derive(Debug, Clone, Copy)]
pub enum TraceStop<'a> {
    /// Stop on first reaching the given canonical point.
    At(&'a TropPoint),
    /// Follow the line to infinity.
    Infinity,
}

/// A maximal straight piece of a traced line inside one chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub chart: Chart,
    pub start: Vec2Q,
    /// `None` when the piece runs off to infinity.
    pub end: Option<Vec2Q>,
    pub dir: Vec2Z,
}

/// A transversal passage through the ray of divisor `D_ray`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub ray: usize,
    pub point: TropPoint,
    pub from: Chart,
    pub to: Chart,
    pub dir_before: Vec2Z,
    pub dir_after: Vec2Z,
    /// Counterclockwise when moving from chart `c` to chart `c+1`.
    pub rotation: Rotation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub pieces: Vec<Piece>,
    pub crossings: Vec<Crossing>,
}

impl Trace {
    /// Chart and direction of the last piece.
    pub fn final_direction(&self) -> (Chart, &Vec2Z) {
        let last = self.pieces.last().expect("a trace has at least one piece");
        (last.chart, &last.dir)
    }

    pub fn first_piece(&self) -> &Piece {
        &self.pieces[0]
    }

    pub fn is_infinite(&self) -> bool {
        self.pieces.last().is_some_and(|p| p.end.is_none())
    }
}

fn trace_line(
    m: &TropManifold,
    chart: Chart,
    start: &Vec2Q,
    dir: &Vec2Z,
    stop: TraceStop<'_>,
) -> Result<Trace, TraceError> {
    if dir.is_zero() {
        return Err(TraceError::ZeroDirection);
    }
    if start.is_zero() {
        return Err(TraceError::StartsAtOrigin);
    }
    if start.a.is_negative() || start.b.is_negative() {
        return Err(TraceError::StartNotInCone(chart));
    }
    let max_crossings = 64 * m.n() + 64;
    let mut chart = chart;
    let mut p = start.clone();
    let mut t = dir.clone();

    // A start on a boundary ray with the direction pointing out of the
    // cone belongs to the neighbouring chart; that is not a crossing.
    if p.a.is_zero() && t.a.is_negative() {
        let prev = m.prev(chart);
        let inv = m.inverse_transition(prev);
        p = inv.apply_q(&p);
        t = inv.apply(&t);
        chart = prev;
    } else if p.b.is_zero() && t.b.is_negative() {
        let tr = m.transition(chart);
        p = tr.apply_q(&p);
        t = tr.apply(&t);
        chart = m.next(chart);
    }

    let mut pieces = Vec::new();
    let mut crossings = Vec::new();
    loop {
        let exit_a = t.a.is_negative().then(|| &p.a / BigRational::from_integer(-&t.a));
        let exit_b = t.b.is_negative().then(|| &p.b / BigRational::from_integer(-&t.b));
        let exit = match (&exit_a, &exit_b) {
            (Some(x), Some(y)) => Some(x.min(y).clone()),
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        };

        if let TraceStop::At(target) = stop {
            let hit = m
                .representations(target)
                .into_iter()
                .filter(|(c, _)| *c == chart)
                .filter_map(|(_, q)| line_parameter(&p, &t, &q))
                .filter(|mu| mu.is_positive() && exit.as_ref().is_none_or(|e| mu <= e))
                .min();
            if let Some(mu) = hit {
                let end = p.offset(&mu, &t);
                pieces.push(Piece { chart, start: p, end: Some(end), dir: t });
                return Ok(Trace { pieces, crossings });
            }
        }

        let Some(lambda) = exit else {
            pieces.push(Piece { chart, start: p, end: None, dir: t });
            return match stop {
                TraceStop::At(_) => Err(TraceError::MissedTarget),
                TraceStop::Infinity => Ok(Trace { pieces, crossings }),
            };
        };

        let q = p.offset(&lambda, &t);
        if q.is_zero() {
            return Err(TraceError::HitsOrigin);
        }
        pieces.push(Piece { chart, start: p, end: Some(q.clone()), dir: t.clone() });
        if crossings.len() >= max_crossings {
            return Err(TraceError::TooManyCrossings(max_crossings));
        }
        if q.a.is_zero() {
            // leaving through the ray of D_{chart-1}
            let prev = m.prev(chart);
            let inv = m.inverse_transition(prev);
            let (p_new, t_new) = (inv.apply_q(&q), inv.apply(&t));
            crossings.push(Crossing {
                ray: prev.index(),
                point: TropPoint::new(prev, p_new.clone()),
                from: chart,
                to: prev,
                dir_before: t,
                dir_after: t_new.clone(),
                rotation: Rotation::Clockwise,
            });
            chart = prev;
            p = p_new;
            t = t_new;
        } else {
            // leaving through the ray of D_chart
            let next = m.next(chart);
            let tr = m.transition(chart);
            let (p_new, t_new) = (tr.apply_q(&q), tr.apply(&t));
            crossings.push(Crossing {
                ray: chart.index(),
                point: TropPoint::new(chart, q),
                from: chart,
                to: next,
                dir_before: t,
                dir_after: t_new.clone(),
                rotation: Rotation::Counterclockwise,
            });
            chart = next;
            p = p_new;
            t = t_new;
        }
    }
}

/// `mu` with `p + mu * t = q`, if `q` lies on the line.
fn line_parameter(p: &Vec2Q, t: &Vec2Z, q: &Vec2Q) -> Option<Scalar> {
    let d = q - p;
    let ta = BigRational::from_integer(t.a.clone());
    let tb = BigRational::from_integer(t.b.clone());
    let mu = if !ta.is_zero() { &d.a / &ta } else { &d.b / &tb };
    (&ta * &mu == d.a && &tb * &mu == d.b).then_some(mu)
}
