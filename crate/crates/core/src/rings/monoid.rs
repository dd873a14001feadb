//! The monoid ring of `P`, truncated by the degree of an ample class.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::RingError;
use crate::homology::{ClassExpr, IntersectionLattice, PCertificate};
use crate::lattice::Scalar;
use crate::liouville::AmpleData;

/// A class together with a certificate that it lies in `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedClass {
    class: ClassExpr,
    certificate: PCertificate,
}

impl CertifiedClass {
    pub fn new(l: &IntersectionLattice, class: ClassExpr, certificate: PCertificate) -> Result<CertifiedClass, RingError> {
        if !l.verify_p_certificate(&class, &certificate).valid {
            return Err(RingError::NotCertified(class.to_string()));
        }
        Ok(CertifiedClass { class, certificate })
    }

    /// The unit class `0` with the empty certificate.
    pub fn zero(n: usize) -> CertifiedClass {
        CertifiedClass { class: ClassExpr::zero(n), certificate: PCertificate::default() }
    }

    pub fn class(&self) -> &ClassExpr {
        &self.class
    }

    pub fn certificate(&self) -> &PCertificate {
        &self.certificate
    }

    /// Sum of two certified classes, certified by concatenation.
    pub fn add(&self, other: &CertifiedClass) -> CertifiedClass {
        CertifiedClass {
            class: &self.class + &other.class,
            certificate: self.certificate.concat(&other.certificate),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Term {
    coeff: Scalar,
    certificate: PCertificate,
}

/// Finite sum `sum c_k q^k` over certified classes `k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonoidRingElement {
    terms: BTreeMap<ClassExpr, Term>,
}

impl MonoidRingElement {
    pub fn zero() -> MonoidRingElement {
        MonoidRingElement::default()
    }

    /// `q^0`.
    pub fn one(n: usize) -> MonoidRingElement {
        MonoidRingElement::monomial(CertifiedClass::zero(n), Scalar::from_integer(1.into()))
    }

    pub fn monomial(class: CertifiedClass, coeff: Scalar) -> MonoidRingElement {
        let mut out = MonoidRingElement::zero();
        out.add_term(class, coeff);
        out
    }

    /// Adds `coeff * q^class`; the first certificate seen for a class is kept.
    pub fn add_term(&mut self, class: CertifiedClass, coeff: Scalar) {
        let CertifiedClass { class, certificate } = class;
        let entry = self
            .terms
            .entry(class.clone())
            .or_insert_with(|| Term { coeff: Scalar::zero(), certificate });
        entry.coeff += coeff;
        if entry.coeff.is_zero() {
            self.terms.remove(&class);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, class: &ClassExpr) -> Scalar {
        self.terms.get(class).map_or_else(Scalar::zero, |t| t.coeff.clone())
    }

    /// Terms in class order as `(class, certificate, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&ClassExpr, &PCertificate, &Scalar)> {
        self.terms.iter().map(|(k, t)| (k, &t.certificate, &t.coeff))
    }
}

/// Convolution product, dropping classes of ample degree above `trunc`.
pub fn monoid_mul(
    l: &IntersectionLattice,
    m1: &MonoidRingElement,
    m2: &MonoidRingElement,
    a: &AmpleData,
    trunc: &Scalar,
) -> Result<MonoidRingElement, RingError> {
    if trunc.is_negative() {
        return Err(RingError::NegativeTruncation);
    }
    let mut out = MonoidRingElement::zero();
    for (c1, t1) in &m1.terms {
        for (c2, t2) in &m2.terms {
            let class = c1 + c2;
            if &l.ample_degree(a, &class)? > trunc {
                continue;
            }
            let certified = CertifiedClass { class, certificate: t1.certificate.concat(&t2.certificate) };
            out.add_term(certified, &t1.coeff * &t2.coeff);
        }
    }
    Ok(out)
}
