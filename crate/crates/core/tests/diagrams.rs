mod support;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::*;
use thetatrop_core::broken_lines::validate;
use thetatrop_core::homology::{ClassExpr, IntersectionLattice, PCertificate};

#[test]
fn zero_class_iff_localized_on_generated_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let cases = diagram_manifolds();
    let (mut zero, mut nonzero) = (0, 0);
    for _ in 0..200 {
        let (ks, a) = &cases[rng.gen_range(0..cases.len())];
        let m = manifold(ks);
        let p = path(ks, a);
        let d = random_diagram(&mut rng, &m);
        let report = validate(&m, &p, &d).unwrap();
        assert!(report.pass, "{:?}\n{:?}", d, report.failures().collect::<Vec<_>>());
        let v = report.into_validated().unwrap();
        let class = v.homology_class();
        let is_zero = class.iter().all(Zero::is_zero);
        assert_eq!(is_zero, v.is_localized().is_some(), "{d:?}");
        if is_zero {
            zero += 1;
        } else {
            nonzero += 1;
        }
        let l = IntersectionLattice::new(m.boundary(), Vec::new()).unwrap();
        let c = ClassExpr::from_boundary(class);
        assert!(l.verify_p_certificate(&c, &PCertificate::boundary(&c).unwrap()).valid);
    }
    assert!(zero >= 30 && nonzero >= 30, "zero {zero}, nonzero {nonzero}");
}

#[test]
fn refining_an_edge_changes_nothing() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let cases = diagram_manifolds();
    let mut refined = 0;
    while refined < 60 {
        let (ks, a) = &cases[rng.gen_range(0..cases.len())];
        let m = manifold(ks);
        let p = path(ks, a);
        let d = random_diagram(&mut rng, &m);
        if d.edges.is_empty() {
            continue;
        }
        let e = rng.gen_range(0..d.edges.len());
        let r = refine_edge(&m, &d, e);
        let before = validate(&m, &p, &d).unwrap().into_validated().unwrap();
        // the midpoint can land on another vertex of a free tree
        let Ok(report) = validate(&m, &p, &r) else { continue };
        assert!(report.pass, "{:?}", report.failures().collect::<Vec<_>>());
        let after = report.into_validated().unwrap();
        assert_eq!(before.homology_class(), after.homology_class());
        assert_eq!(before.is_localized(), after.is_localized());
        refined += 1;
    }
}
