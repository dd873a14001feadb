mod support;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::*;
use thetatrop_core::homology::{ClassExpr, IntersectionLattice, PCertificate};
use thetatrop_core::rings::local::{Branch, LocalElement, LocalMonomial};
use thetatrop_core::rings::{local_mul, monoid_mul, vertex_mul, CertifiedClass, MonoidRingElement, VertexElement};
use thetatrop_core::tropical::Chart;
use thetatrop_core::{BoundaryData, TropPoint};

#[test]
fn pentagon_table() {
    let m = manifold(&[-1; 5]);
    let x = |i: usize| VertexElement::theta(&m, &m.ray_generator(i)).unwrap();
    for i in 0..5 {
        for j in 0..5 {
            let prod = vertex_mul(&m, &x(i), &x(j)).unwrap();
            let expected = if i == j {
                VertexElement::theta(&m, &TropPoint::from_ints(Chart::from_index(i), 2, 0)).unwrap()
            } else if (i + 1) % 5 == j || (j + 1) % 5 == i {
                let later = if (i + 1) % 5 == j { j } else { i };
                VertexElement::theta(&m, &TropPoint::from_ints(Chart::from_index(later), 1, 1)).unwrap()
            } else {
                VertexElement::zero()
            };
            assert_eq!(prod, expected, "x{} x{}", i + 1, j + 1);
        }
    }
}

#[test]
fn vertex_ring_is_commutative_and_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let n = rng.gen_range(3..=5);
        let ks: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let m = manifold(&ks);
        let pts = m.integral_points(3);
        let mut pick = || {
            let e = VertexElement::theta(&m, &pts[rng.gen_range(0..pts.len())]).unwrap();
            e.scale(&q(rng.gen_range(1..=3)))
        };
        let (a, b, c) = (pick(), pick(), pick());
        assert_eq!(vertex_mul(&m, &a, &b).unwrap(), vertex_mul(&m, &b, &a).unwrap());
        let left = vertex_mul(&m, &vertex_mul(&m, &a, &b).unwrap(), &c).unwrap();
        let right = vertex_mul(&m, &a, &vertex_mul(&m, &b, &c).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn local_basis_is_independent() {
    let rows = basis_rows(6);
    assert_eq!(rank(&rows), rows.len());
    let family = unrestricted_rows(2);
    assert!(rank(&family) < family.len());
}

#[test]
fn local_products_match_rational_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let (a, b) = (random_local(&mut rng), random_local(&mut rng));
        let prod = local_mul(&a, &b).unwrap();
        assert!(ratfn_of(&prod).same(&ratfn_of(&a).mul(&ratfn_of(&b))));
    }
}

#[test]
fn basis_products_have_nonnegative_integer_constants() {
    for a in 0..4 {
        for b in 1..4 {
            for c in -2..=2 {
                let x = LocalElement::monomial(LocalMonomial::new(Branch::X, a, c).unwrap(), q(1));
                let y = LocalElement::monomial(LocalMonomial::new(Branch::Y, b, -c).unwrap(), q(1));
                let prod = local_mul(&x, &y).unwrap();
                assert!(prod.terms().values().all(|v| v.is_integer() && !v.is_negative()));
            }
        }
    }
}

#[test]
fn monoid_truncation_respects_degrees() {
    let l = IntersectionLattice::new(&BoundaryData::new(vec![1, 1, 1]), Vec::new()).unwrap();
    let a = ample(&[1, 2, 3]);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let random = |rng: &mut ChaCha8Rng| {
        let mut e = MonoidRingElement::zero();
        for _ in 0..3 {
            let class = ClassExpr::from_boundary((0..3).map(|_| rng.gen_range(0..3)).collect::<Vec<i64>>());
            let cert = PCertificate::boundary(&class).unwrap();
            e.add_term(CertifiedClass::new(&l, class, cert).unwrap(), q(rng.gen_range(1..4)));
        }
        e
    };
    for _ in 0..50 {
        let (x, y) = (random(&mut rng), random(&mut rng));
        let trunc = q(rng.gen_range(0..60));
        let prod = monoid_mul(&l, &x, &y, &a, &trunc).unwrap();
        for (class, cert, coeff) in prod.terms() {
            assert!(l.ample_degree(&a, class).unwrap() <= trunc);
            assert!(l.verify_p_certificate(class, cert).valid);
            assert!(!coeff.is_zero());
        }
        for (c1, _, _) in x.terms() {
            for (c2, _, _) in y.terms() {
                let sum = c1 + c2;
                let d = l.ample_degree(&a, &sum).unwrap();
                assert_eq!(d, l.ample_degree(&a, c1).unwrap() + l.ample_degree(&a, c2).unwrap());
            }
        }
    }
}
