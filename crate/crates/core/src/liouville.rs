//! Polygonal model of the Liouville class of the contact boundary.
//!
//! The class `A(s)` is a covector-valued path. Near node `i` it sits at the
//! corner `P_i`, which in chart-`i` dual coordinates is `(a_i, a_{i-1})`:
//! it pairs to `a_i` with the ray of `D_i` and to `a_{i-1}` with the ray of
//! `D_{i-1}`. Along divisor `D_i` the path runs straight from `P_i` to
//! `P_{i+1}` inside the affine line where the pairing with the ray of
//! `D_i` equals `a_i`. Orbit lengths of integral points are maxima of the
//! pairing with this path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::lattice::{format_scalar, wedge_q, Scalar, Vec2Q};
use crate::tropical::{Chart, Rotation, TropManifold, TropPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiouvilleError {
    #[error("ample coefficient {index} is {value}, must be strictly positive")]
    NonPositiveCoefficient { index: usize, value: String },
    #[error("{got} ample coefficients for {expected} boundary components")]
    LengthMismatch { expected: usize, got: usize },
    #[error("the origin carries no periodic orbit")]
    OriginHasNoOrbit,
    #[error("slope must be positive")]
    NonPositiveSlope,
    #[error("slope {0} equals the length of an orbit")]
    SlopeOnSpectrum(String),
}

/// Coefficients `a_i` of an ample divisor `sum a_i D_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AmpleData {
    coefficients: Vec<Scalar>,
}

impl AmpleData {
    pub fn new(coefficients: Vec<Scalar>) -> Result<AmpleData, LiouvilleError> {
        if let Some((index, value)) = coefficients.iter().enumerate().find(|(_, a)| !a.is_positive()) {
            return Err(LiouvilleError::NonPositiveCoefficient {
                index,
                value: format_scalar(value),
            });
        }
        Ok(AmpleData { coefficients })
    }

    pub fn uniform(n: usize) -> AmpleData {
        AmpleData { coefficients: vec![Scalar::from_integer(BigInt::from(1)); n] }
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Intersection numbers `A . D_j = a_{j-1} + k_j a_j + a_{j+1}`
    /// (indices mod n, so `n = 1` and `n = 2` count each node once).
    pub fn boundary_degrees(&self, m: &TropManifold) -> Vec<Scalar> {
        m.linearity_system()
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.coefficients)
                    .map(|(r, a)| BigRational::from_integer(r.clone()) * a)
                    .sum()
            })
            .collect()
    }

    /// Whether `A . D_j > 0` for every boundary component.
    pub fn is_boundary_positive(&self, m: &TropManifold) -> bool {
        self.boundary_degrees(m).iter().all(Signed::is_positive)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiouvillePath {
    manifold: TropManifold,
    ample: AmpleData,
    corners: Vec<Vec2Q>,
    orientation: Rotation,
}

/// One straight segment of the path, written in a single chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentCheck {
    /// Divisor the segment runs along (zero-based).
    pub divisor: usize,
    pub chart: Chart,
    pub start: Vec2Q,
    pub displacement: Vec2Q,
    pub wedge: Scalar,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactReport {
    pub segments: Vec<SegmentCheck>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerCheck {
    pub corner: Chart,
    pub incoming: Vec2Q,
    pub outgoing: Vec2Q,
    pub wedge: Scalar,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexReport {
    pub corners: Vec<CornerCheck>,
    pub pass: bool,
}

impl LiouvillePath {
    /// Builds the path with corner `P_i = (a_i, a_{i-1})` in chart `i`.
    pub fn synthesize(m: &TropManifold, ample: &AmpleData) -> Result<LiouvillePath, LiouvilleError> {
        if ample.len() != m.n() {
            return Err(LiouvilleError::LengthMismatch { expected: m.n(), got: ample.len() });
        }
        let a = ample.coefficients();
        let corners = m
            .charts()
            .map(|c| Vec2Q::new(a[c.index()].clone(), a[m.prev(c).index()].clone()))
            .collect();
        Ok(LiouvillePath {
            manifold: m.clone(),
            ample: ample.clone(),
            corners,
            orientation: Rotation::Counterclockwise,
        })
    }

    /// The same polygon traversed the other way round.
    pub fn reversed(&self) -> LiouvillePath {
        let orientation = match self.orientation {
            Rotation::Counterclockwise => Rotation::Clockwise,
            Rotation::Clockwise => Rotation::Counterclockwise,
        };
        LiouvillePath { orientation, ..self.clone() }
    }

    pub fn manifold(&self) -> &TropManifold {
        &self.manifold
    }

    pub fn ample(&self) -> &AmpleData {
        &self.ample
    }

    pub fn orientation(&self) -> Rotation {
        self.orientation
    }

    /// Corner `P_c` in chart-`c` dual coordinates.
    pub fn corner(&self, c: Chart) -> &Vec2Q {
        &self.corners[c.index()]
    }

    pub fn corners(&self) -> &[Vec2Q] {
        &self.corners
    }

    /// `P_{c+1}` pulled back into chart `c`.
    pub fn next_corner_in(&self, c: Chart) -> Vec2Q {
        let next = self.manifold.next(c);
        self.manifold.covector_to_prev(next, self.corner(next))
    }

    /// `P_{c-1}` pushed forward into chart `c`.
    pub fn prev_corner_in(&self, c: Chart) -> Vec2Q {
        let prev = self.manifold.prev(c);
        self.manifold.covector_to_next(prev, self.corner(prev))
    }

    /// The segment along `D_c` as (start, displacement) in chart `c`,
    /// following the path's orientation.
    pub fn segment(&self, c: Chart) -> (Vec2Q, Vec2Q) {
        let here = self.corner(c).clone();
        let there = self.next_corner_in(c);
        match self.orientation {
            Rotation::Counterclockwise => {
                let d = &there - &here;
                (here, d)
            }
            Rotation::Clockwise => {
                let d = &here - &there;
                (there, d)
            }
        }
    }

    /// Contact condition: the path turns clockwise about the origin,
    /// `wedge(A, dA) < 0` on every segment.
    pub fn check_contact(&self) -> ContactReport {
        let segments: Vec<SegmentCheck> = self
            .manifold
            .charts()
            .map(|c| {
                let (start, displacement) = self.segment(c);
                let wedge = wedge_q(&start, &displacement);
                let ok = wedge.is_negative();
                SegmentCheck { divisor: c.index(), chart: c, start, displacement, wedge, ok }
            })
            .collect();
        let pass = segments.iter().all(|s| s.ok);
        ContactReport { segments, pass }
    }

    /// Discrete local convexity: consecutive displacements at each corner
    /// keep turning clockwise, `wedge(d_in, d_out) < 0`.
    pub fn check_convex(&self) -> ConvexReport {
        let corners: Vec<CornerCheck> = self
            .manifold
            .charts()
            .map(|c| {
                let here = self.corner(c);
                let before = here - &self.prev_corner_in(c);
                let after = &self.next_corner_in(c) - here;
                let (incoming, outgoing) = match self.orientation {
                    Rotation::Counterclockwise => (before, after),
                    Rotation::Clockwise => (zero_minus(&after), zero_minus(&before)),
                };
                let wedge = wedge_q(&incoming, &outgoing);
                let ok = wedge.is_negative();
                CornerCheck { corner: c, incoming, outgoing, wedge, ok }
            })
            .collect();
        let pass = corners.iter().all(|c| c.ok);
        ConvexReport { corners, pass }
    }

    /// Length of the orbit torus indexed by `p`: the largest pairing of
    /// `p` with a corner of the path, over the corners of every chart
    /// containing `p` and their neighbours.
    pub fn orbit_length(&self, p: &TropPoint) -> Result<Scalar, LiouvilleError> {
        if p.is_origin() {
            return Err(LiouvilleError::OriginHasNoOrbit);
        }
        let m = &self.manifold;
        let canonical = m.normalize(p).map_err(|_| LiouvilleError::OriginHasNoOrbit)?;
        m.representations(&canonical)
            .into_iter()
            .flat_map(|(c, v)| {
                [self.prev_corner_in(c), self.corner(c).clone(), self.next_corner_in(c)]
                    .map(|cov| cov.dot(&v))
            })
            .max()
            .ok_or(LiouvilleError::OriginHasNoOrbit)
    }

    /// Integral points with orbit length below `slope`, plus the origin.
    pub fn theta_below_slope(&self, slope: &Scalar) -> Result<Vec<TropPoint>, LiouvilleError> {
        if !slope.is_positive() {
            return Err(LiouvilleError::NonPositiveSlope);
        }
        let min_a = self
            .ample
            .coefficients()
            .iter()
            .min()
            .expect("ample data is non-empty")
            .clone();
        // every point with max(a, b) > bound has length > slope
        let bound = (slope / &min_a).floor().to_integer();
        let bound: u64 = bound.try_into().unwrap_or(u64::MAX);
        let mut out = Vec::new();
        for p in self.manifold.integral_points(bound) {
            if p.is_origin() {
                out.push(p);
                continue;
            }
            let len = self.orbit_length(&p)?;
            if &len == slope {
                return Err(LiouvilleError::SlopeOnSpectrum(format_scalar(slope)));
            }
            if &len < slope {
                out.push(p);
            }
        }
        Ok(out)
    }
}

fn zero_minus(v: &Vec2Q) -> Vec2Q {
    &Vec2Q::zero() - v
}

/// Orbit length computed from the point's own corner only,
/// `a * a_i + b * a_{i-1}` for a canonical point `(chart i, (a, b))`.
pub fn corner_length(path: &LiouvillePath, p: &TropPoint) -> Scalar {
    path.corner(p.chart).dot(&p.coords)
}
