//! Intersection numbers with the boundary divisors and certified
//! membership in the positive cone `P`.
//!
//! Classes are written as integer combinations of the boundary components
//! `D_1, ..., D_n` plus named extra classes, each extra class being known
//! only through its intersection vector `(C . D_1, ..., C . D_n)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::lattice::Scalar;
use crate::liouville::AmpleData;
use crate::tropical::BoundaryData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("unknown class name {0:?}")]
    UnknownClassName(String),
    #[error("class name {0:?} declared twice")]
    DuplicateClassName(String),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("divisor index {0} out of range")]
    DivisorOutOfRange(usize),
}

/// A class given by its intersection numbers with the boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtraClass {
    pub name: String,
    pub pairings: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    n: usize,
    matrix: Vec<Vec<BigInt>>,
    extras: BTreeMap<String, Vec<BigInt>>,
}

/// Integer combination of boundary components and named extra classes.
///
/// Extra coefficients equal to zero are never stored, so equal classes
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassExpr {
    boundary: Vec<BigInt>,
    extras: BTreeMap<String, BigInt>,
}

impl ClassExpr {
    pub fn zero(n: usize) -> ClassExpr {
        ClassExpr { boundary: vec![BigInt::zero(); n], extras: BTreeMap::new() }
    }

    pub fn from_boundary<T: Into<BigInt>>(coefficients: impl IntoIterator<Item = T>) -> ClassExpr {
        ClassExpr {
            boundary: coefficients.into_iter().map(Into::into).collect(),
            extras: BTreeMap::new(),
        }
    }

    /// The class `D_i` (zero-based `i`).
    pub fn divisor(n: usize, i: usize) -> ClassExpr {
        let mut c = ClassExpr::zero(n);
        c.boundary[i] = BigInt::from(1);
        c
    }

    /// The named extra class with coefficient one.
    pub fn extra(n: usize, name: &str) -> ClassExpr {
        ClassExpr::zero(n).with_extra(name, BigInt::from(1))
    }

    /// Adds `coeff` times the named class.
    pub fn with_extra(mut self, name: &str, coeff: impl Into<BigInt>) -> ClassExpr {
        let coeff = coeff.into();
        let entry = self.extras.entry(name.to_string()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.extras.remove(name);
        }
        self
    }

    pub fn n(&self) -> usize {
        self.boundary.len()
    }

    pub fn boundary(&self) -> &[BigInt] {
        &self.boundary
    }

    pub fn extras(&self) -> &BTreeMap<String, BigInt> {
        &self.extras
    }

    pub fn is_zero(&self) -> bool {
        self.boundary.iter().all(Zero::is_zero) && self.extras.is_empty()
    }

    /// Whether the class has no extra part.
    pub fn is_boundary_supported(&self) -> bool {
        self.extras.is_empty()
    }

    pub fn scale(&self, k: &BigInt) -> ClassExpr {
        if k.is_zero() {
            return ClassExpr::zero(self.n());
        }
        ClassExpr {
            boundary: self.boundary.iter().map(|x| x * k).collect(),
            extras: self.extras.iter().map(|(name, x)| (name.clone(), x * k)).collect(),
        }
    }
}

impl Add for &ClassExpr {
    type Output = ClassExpr;

    /// Boundary parts of different lengths are padded with zeros.
    fn add(self, rhs: &ClassExpr) -> ClassExpr {
        let len = self.boundary.len().max(rhs.boundary.len());
        let boundary = (0..len)
            .map(|i| {
                let x = self.boundary.get(i).cloned().unwrap_or_default();
                let y = rhs.boundary.get(i).cloned().unwrap_or_default();
                x + y
            })
            .collect();
        let mut out = ClassExpr { boundary, extras: self.extras.clone() };
        for (name, coeff) in &rhs.extras {
            out = out.with_extra(name, coeff.clone());
        }
        out
    }
}

impl Neg for &ClassExpr {
    type Output = ClassExpr;

    fn neg(self) -> ClassExpr {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .boundary
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*D{}", c, i + 1))
            .collect();
        terms.extend(self.extras.iter().map(|(name, c)| format!("{c}*{name}")));
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Summand {
    /// `multiplicity * D_divisor`, divisor zero-based.
    Boundary { divisor: usize, multiplicity: BigInt },
    /// A class with non-negative intersections with every `D_i` and
    /// positive total intersection.
    Generator(ClassExpr),
}

/// A decomposition of a class into generators of `P`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PCertificate {
    pub summands: Vec<Summand>,
}

impl PCertificate {
    /// The certificate writing a boundary class as its own coefficients.
    /// Returns `None` if the class has extra parts or negative coefficients.
    pub fn boundary(c: &ClassExpr) -> Option<PCertificate> {
        if !c.is_boundary_supported() || c.boundary.iter().any(Signed::is_negative) {
            return None;
        }
        let summands = c
            .boundary
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(divisor, m)| Summand::Boundary { divisor, multiplicity: m.clone() })
            .collect();
        Some(PCertificate { summands })
    }

    /// Certificate of a sum.
    pub fn concat(&self, other: &PCertificate) -> PCertificate {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        PCertificate { summands }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandCheck {
    pub index: usize,
    pub ok: bool,
    /// Intersection vector for generator summands.
    pub pairings: Option<Vec<BigInt>>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub valid: bool,
    pub total: ClassExpr,
    pub total_matches: bool,
    pub summands: Vec<SummandCheck>,
}

impl IntersectionLattice {
    pub fn new(boundary: &BoundaryData, extras: Vec<ExtraClass>) -> Result<IntersectionLattice, HomologyError> {
        let n = boundary.n;
        if boundary.self_intersections.len() != n {
            return Err(HomologyError::LengthMismatch { expected: n, got: boundary.self_intersections.len() });
        }
        let mut matrix = vec![vec![BigInt::zero(); n]; n];
        for (i, &k) in boundary.self_intersections.iter().enumerate() {
            matrix[i][i] += k;
            // one node between each consecutive pair; for n = 1 the node
            // lies on D_1 itself and for n = 2 both nodes join D_1 and D_2
            matrix[i][(i + 1) % n] += 1;
            matrix[(i + 1) % n][i] += 1;
        }
        let mut named = BTreeMap::new();
        for extra in extras {
            if extra.pairings.len() != n {
                return Err(HomologyError::LengthMismatch { expected: n, got: extra.pairings.len() });
            }
            if named.insert(extra.name.clone(), extra.pairings).is_some() {
                return Err(HomologyError::DuplicateClassName(extra.name));
            }
        }
        Ok(IntersectionLattice { n, matrix, extras: named })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    pub fn extras(&self) -> impl Iterator<Item = (&str, &[BigInt])> {
        self.extras.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    fn check_shape(&self, c: &ClassExpr) -> Result<(), HomologyError> {
        if c.n() != self.n {
            return Err(HomologyError::LengthMismatch { expected: self.n, got: c.n() });
        }
        match c.extras.keys().find(|name| !self.extras.contains_key(*name)) {
            Some(name) => Err(HomologyError::UnknownClassName(name.clone())),
            None => Ok(()),
        }
    }

    /// `c . D_i` (zero-based `i`).
    pub fn pair(&self, c: &ClassExpr, i: usize) -> Result<BigInt, HomologyError> {
        self.check_shape(c)?;
        if i >= self.n {
            return Err(HomologyError::DivisorOutOfRange(i));
        }
        let boundary: BigInt = c.boundary.iter().zip(&self.matrix).map(|(x, row)| x * &row[i]).sum();
        let extra: BigInt = c.extras.iter().map(|(name, x)| x * &self.extras[name][i]).sum();
        Ok(boundary + extra)
    }

    /// `(c . D_1, ..., c . D_n)`.
    pub fn intersection_vector(&self, c: &ClassExpr) -> Result<Vec<BigInt>, HomologyError> {
        (0..self.n).map(|i| self.pair(c, i)).collect()
    }

    /// Checks that the summands are generators of `P` adding up to `c`.
    pub fn verify_p_certificate(&self, c: &ClassExpr, cert: &PCertificate) -> CertificateReport {
        let mut total = ClassExpr::zero(self.n);
        let mut summands = Vec::with_capacity(cert.summands.len());
        for (index, summand) in cert.summands.iter().enumerate() {
            let (ok, pairings, reason) = match summand {
                Summand::Boundary { divisor, multiplicity } => {
                    if *divisor >= self.n {
                        (false, None, Some(format!("divisor D{} out of range", divisor + 1)))
                    } else {
                        total = &total + &ClassExpr::divisor(self.n, *divisor).scale(multiplicity);
                        if multiplicity.is_negative() {
                            (false, None, Some("negative boundary multiple".to_string()))
                        } else {
                            (true, None, None)
                        }
                    }
                }
                Summand::Generator(g) => match self.intersection_vector(g) {
                    Err(e) => (false, None, Some(e.to_string())),
                    Ok(v) => {
                        total = &total + g;
                        let sum: BigInt = v.iter().sum();
                        if let Some(i) = v.iter().position(Signed::is_negative) {
                            (false, Some(v), Some(format!("negative intersection with D{}", i + 1)))
                        } else if !sum.is_positive() {
                            (false, Some(v), Some("total intersection with the boundary is not positive".into()))
                        } else {
                            (true, Some(v), None)
                        }
                    }
                },
            };
            summands.push(SummandCheck { index, ok, pairings, reason });
        }
        let total_matches = total == *c;
        let valid = total_matches && summands.iter().all(|s| s.ok);
        CertificateReport { valid, total, total_matches, summands }
    }

    /// `sum_i a_i (c . D_i)`.
    pub fn ample_degree(&self, a: &AmpleData, c: &ClassExpr) -> Result<Scalar, HomologyError> {
        if a.len() != self.n {
            return Err(HomologyError::LengthMismatch { expected: self.n, got: a.len() });
        }
        let v = self.intersection_vector(c)?;
        Ok(v
            .into_iter()
            .zip(a.coefficients())
            .map(|(x, ai)| Scalar::from_integer(x) * ai)
            .sum())
    }
}
