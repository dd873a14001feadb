//! The vertex `V_n`: `n` coordinate planes glued cyclically along their
//! axes, with basis `theta_p` indexed by integral points of the manifold.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::RingError;
use crate::lattice::Scalar;
use crate::tropical::{TropManifold, TropPoint};

/// Finite linear combination of theta functions, keyed by canonical
/// points. The origin key is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexElement {
    terms: BTreeMap<TropPoint, Scalar>,
}

impl VertexElement {
    pub fn zero() -> VertexElement {
        VertexElement::default()
    }

    pub fn one() -> VertexElement {
        VertexElement::theta_canonical(TropPoint::origin())
    }

    fn theta_canonical(p: TropPoint) -> VertexElement {
        let mut terms = BTreeMap::new();
        terms.insert(p, Scalar::from_integer(1.into()));
        VertexElement { terms }
    }

    /// `theta_p` for any chart representation of an integral point.
    pub fn theta(m: &TropManifold, p: &TropPoint) -> Result<VertexElement, RingError> {
        Ok(VertexElement::theta_canonical(canonical_integral(m, p)?))
    }

    /// Sums the given terms after normalizing their points.
    pub fn from_terms(
        m: &TropManifold,
        terms: impl IntoIterator<Item = (TropPoint, Scalar)>,
    ) -> Result<VertexElement, RingError> {
        let mut out = VertexElement::zero();
        for (p, coeff) in terms {
            out.add_term(canonical_integral(m, &p)?, coeff);
        }
        Ok(out)
    }

    fn add_term(&mut self, p: TropPoint, coeff: Scalar) {
        let entry = self.terms.entry(p.clone()).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> &BTreeMap<TropPoint, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, p: &TropPoint) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &VertexElement) -> VertexElement {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> VertexElement {
        if k.is_zero() {
            return VertexElement::zero();
        }
        VertexElement {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * k)).collect(),
        }
    }
}

fn canonical_integral(m: &TropManifold, p: &TropPoint) -> Result<TropPoint, RingError> {
    let q = m.normalize(p)?;
    if !q.is_integral() {
        return Err(RingError::NonIntegralPoint(Box::new(q)));
    }
    Ok(q)
}

fn check_cycle(m: &TropManifold) -> Result<(), RingError> {
    if m.n() < 3 {
        Err(RingError::UnsupportedBoundaryLength(m.n()))
    } else {
        Ok(())
    }
}

/// `theta_p * theta_q`: `Some(p + q)` when a closed cone contains both
/// points (added in the lowest such chart), `None` when the product is zero.
pub fn theta_product(m: &TropManifold, p: &TropPoint, q: &TropPoint) -> Result<Option<TropPoint>, RingError> {
    check_cycle(m)?;
    let p = canonical_integral(m, p)?;
    let q = canonical_integral(m, q)?;
    if p.is_origin() {
        return Ok(Some(q));
    }
    if q.is_origin() {
        return Ok(Some(p));
    }
    let shared = m.charts_containing(&q);
    for c in m.charts_containing(&p) {
        if !shared.contains(&c) {
            continue;
        }
        let (Some(u), Some(v)) = (m.coords_in(&p, c), m.coords_in(&q, c)) else {
            continue;
        };
        return Ok(Some(m.normalize(&TropPoint::new(c, &u + &v))?));
    }
    Ok(None)
}

/// Bilinear extension of [`theta_product`].
pub fn vertex_mul(m: &TropManifold, e1: &VertexElement, e2: &VertexElement) -> Result<VertexElement, RingError> {
    check_cycle(m)?;
    let mut out = VertexElement::zero();
    for (p, a) in &e1.terms {
        for (q, b) in &e2.terms {
            if let Some(r) = theta_product(m, p, q)? {
                out.add_term(r, a * b);
            }
        }
    }
    Ok(out)
}
