mod support;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::*;
use thetatrop_core::tropical::Chart;
use thetatrop_core::TropPoint;

#[test]
fn monodromy_matches_hand_products() {
    assert_eq!(oracle_monodromy(&[1, 1, 1]), [[1, 0], [0, 1]]);
    assert_eq!(oracle_monodromy(&[0, 0, 0, 0]), [[1, 0], [0, 1]]);
    assert_eq!(oracle_monodromy(&[-1, -1, -1]), [[-1, 0], [0, -1]]);
    let t = [[0, -1], [1, 1]];
    let fifth = (0..5).fold([[1, 0], [0, 1]], |acc, _| m2_mul(t, acc));
    assert_eq!(oracle_monodromy(&[-1; 5]), fifth);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.gen_range(1..=7);
        let ks: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        assert_eq!(m2_of(&manifold(&ks).monodromy()), oracle_monodromy(&ks), "{ks:?}");
    }
}

#[test]
fn parabolic_fixtures_fix_a_primitive_direction() {
    for ks in [vec![4, 1], vec![1, 1, 0]] {
        let mu = manifold(&ks).monodromy();
        assert_eq!(mu.trace(), BigInt::from(2));
        let o = oracle_monodromy(&ks);
        // kernel of mu - I, primitive
        let (a, b) = if o[0][1] != 0 || o[0][0] != 1 { (o[0][1], 1 - o[0][0]) } else { (1 - o[1][1], o[1][0]) };
        let g = num_integer::gcd(a, b);
        let v = thetatrop_core::Vec2Z::new(a / g, b / g);
        assert_eq!(mu.apply(&v), v, "{ks:?}");
    }
}

#[test]
fn linear_function_ranks() {
    assert_eq!(manifold(&[1, 1, 1]).linear_function_basis().len(), 2);
    assert_eq!(manifold(&[-1, -1, -1]).linear_function_basis().len(), 0);
    let basis = manifold(&[4, 1]).linear_function_basis();
    assert_eq!(basis.len(), 1);
    let v = &basis[0].values;
    assert_eq!(&v[0] * BigInt::from(-2), v[1]);

    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let n = rng.gen_range(1..=6);
        let ks: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        let m = manifold(&ks);
        let basis = m.linear_function_basis();
        assert_eq!(basis.len(), developing_rank(&ks), "{ks:?}");
        assert!(basis.iter().all(|f| f.violation(&m).is_none()));
    }
}

#[test]
fn fixture_paths_are_contact_and_convex() {
    for (name, ks, a) in fixtures() {
        let p = path(&ks, &a);
        assert!(p.check_contact().pass, "{name}");
        assert!(p.check_convex().pass, "{name}");
    }
}

#[test]
fn lengths_are_positive_homogeneous_and_match_the_own_corner() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let fx = fixtures();
    for _ in 0..500 {
        let (_, ks, a) = &fx[rng.gen_range(0..fx.len())];
        let p = path(ks, a);
        let m = manifold(ks);
        let c = Chart::from_index(rng.gen_range(0..ks.len()));
        let (x, y) = (rng.gen_range(0..20), rng.gen_range(0..20));
        if x == 0 && y == 0 {
            continue;
        }
        let pt = m.normalize(&TropPoint::from_ints(c, x, y)).unwrap();
        let len = p.orbit_length(&pt).unwrap();
        assert!(len.is_positive());
        assert_eq!(len, hand_length(a, &pt));
        let r = rng.gen_range(2..6);
        let scaled = m.normalize(&TropPoint::from_ints(c, r * x, r * y)).unwrap();
        assert_eq!(p.orbit_length(&scaled).unwrap(), len * q(r));
    }
}

#[test]
fn filtration_counts_match_brute_force() {
    let p = path(&[1, 1, 1], &[1, 1, 1]);
    let slope = Q::new(5.into(), 2.into());
    assert_eq!(p.theta_below_slope(&slope).unwrap().len(), 10);
    assert_eq!(brute_force_count(&[1, 1, 1], &[1, 1, 1], &slope), 10);

    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (_, ks, a) in fixtures() {
        let p = path(&ks, &a);
        let mut last = 0;
        let mut slopes: Vec<Q> = (0..20).map(|_| Q::new(rng.gen_range(1..=40).into(), 7.into())).collect();
        slopes.sort();
        for s in slopes {
            let Ok(points) = p.theta_below_slope(&s) else { continue };
            assert_eq!(points.len(), brute_force_count(&ks, &a, &s));
            assert!(points.len() >= last);
            last = points.len();
        }
    }
}
