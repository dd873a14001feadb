//! Laurent monomials `x^a y^b` of the torus ring, written by exponent.

use crate::lattice::Vec2Z;

/// `x^p * x^q = x^(p + q)`.
pub fn torus_product(p: &Vec2Z, q: &Vec2Z) -> Vec2Z {
    p + q
}
