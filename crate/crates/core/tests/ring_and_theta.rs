use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torelli::catalogue::{load, torelli_pool};
use torelli::symplectic::{embed_iota, extract_iota_preimage, H1Class};
use torelli::theta::{
    is_even, poincare_dual, theta_translation, torelli_action_trivial,
    torelli_action_trivial_on_pool, KnElement, RootTorsorPoint,
};
use torelli::torus::{build_ring, extract_f, verify_ring, RingViolation, TorusRing};
use torelli::{tau1, Error};

#[test]
fn rings_of_pool_elements_round_trip() {
    for g in [2, 3] {
        for aut in torelli_pool(g, 20).unwrap() {
            let tau = tau1(&aut).unwrap().bounded;
            let ring = build_ring(&tau).unwrap();
            assert!(verify_ring(&ring).is_empty());
            let f = extract_f(&ring).unwrap();
            assert_eq!(f, embed_iota(&tau));
            assert_eq!(extract_iota_preimage(&f).unwrap(), tau);
        }
    }
}

#[test]
fn seeded_perturbations_fail_associativity() {
    let g = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for aut in torelli_pool(g, 8).unwrap() {
        let ring = build_ring(&tau1(&aut).unwrap().bounded).unwrap();
        let mut f = ring.f().clone();
        let (row, col) = (rng.gen_range(0..f.rows()), rng.gen_range(0..f.cols()));
        f[(row, col)] += rng.gen_range(1..=3);
        let bent = TorusRing::from_f(g, f).unwrap();
        let report = verify_ring(&bent);
        assert!(report
            .iter()
            .any(|v| matches!(v, RingViolation::Associativity { .. })));
        assert!(!report
            .iter()
            .any(|v| matches!(v, RingViolation::PairingNotUnimodular { .. })));
    }
}

#[test]
fn bounding_pair_ring_equals_embedding_of_its_value() {
    let bp = load(3).unwrap().automorphism("bp1").unwrap();
    let tau = tau1(&bp).unwrap().bounded;
    let ring = build_ring(&tau).unwrap();
    assert_eq!(extract_f(&ring).unwrap(), embed_iota(&tau));
    // the triple product of the a1, b1, b2 duals reads off the coefficient of a1^b1^b2
    let pq = ring.basis_product(ring.e(1), ring.e(3)).to_vec();
    let mut e0 = vec![0; ring.dimension()];
    e0[ring.e(0)] = 1;
    assert_eq!(ring.mul(&e0, &pq)[ring.vol()], 1);
}

#[test]
fn bounding_pair_translation() {
    let cat = load(3).unwrap();
    let bp = cat.automorphism("bp1").unwrap();
    let a = cat
        .get("bp1")
        .unwrap()
        .bounding_pair
        .clone()
        .unwrap()
        .class_a;
    // 2 g' PD(a) with g' = 1
    let expected: Vec<u64> = poincare_dual(&(2 * &a))
        .iter()
        .map(|x| x.rem_euclid(4) as u64)
        .collect();
    let t = theta_translation(&bp, 4).unwrap();
    assert_eq!(t, expected);
    assert!(t.iter().any(|&x| x != 0));
    assert_eq!(theta_translation(&bp, 2).unwrap(), vec![0; 6]);
    assert_eq!(theta_translation(&bp, 1).unwrap(), vec![0; 6]);
}

#[test]
fn translations_over_the_pool() {
    let pool = torelli_pool(3, 20).unwrap();
    let mut nonzero_at_4 = false;
    for a in &pool {
        for n in [1, 2] {
            assert!(theta_translation(a, n).unwrap().iter().all(|&x| x == 0));
        }
        let t = theta_translation(a, 4).unwrap();
        assert!(is_even(&t, 4));
        nonzero_at_4 |= t.iter().any(|&x| x != 0);
        for b in pool.iter().take(6) {
            let sum: Vec<u64> = t
                .iter()
                .zip(theta_translation(b, 4).unwrap())
                .map(|(x, y)| (x + y) % 4)
                .collect();
            assert_eq!(theta_translation(&a.compose(b).unwrap(), 4).unwrap(), sum);
        }
    }
    assert!(nonzero_at_4);
    assert_eq!(torelli_action_trivial_on_pool(2, 3, &pool), Ok(true));
    assert_eq!(torelli_action_trivial_on_pool(4, 3, &pool), Ok(false));
    assert_eq!(torelli_action_trivial_on_pool(1, 3, &pool), Ok(true));
}

#[test]
fn torelli_elements_act_by_their_translation() {
    let pool = torelli_pool(3, 6).unwrap();
    let root = RootTorsorPoint::new(3, 4, &[1, 0, 3, 2, 0, 1]).unwrap();
    for aut in &pool {
        let k = KnElement::from_torelli(aut, 4).unwrap();
        assert!(k.is_even());
        let moved = k.act(&root).unwrap();
        let t = theta_translation(aut, 4).unwrap();
        let expected: Vec<i64> = root
            .offset()
            .iter()
            .zip(&t)
            .map(|(&o, &x)| (o + x) as i64)
            .collect();
        assert_eq!(moved, RootTorsorPoint::new(3, 4, &expected).unwrap());
    }
}

#[test]
fn sp_lifts_compose_with_translations() {
    let cat = load(3).unwrap();
    let m = cat.automorphism("c1").unwrap().sp_matrix();
    let lift = KnElement::from_sp(&m, 4).unwrap();
    let t = KnElement::translation_by(3, 4, &[2, 0, 0, 2, 0, 0]).unwrap();
    // conjugating a translation by a linear map translates by the image
    let conj = lift.compose(&t).unwrap().compose(&lift.inverse()).unwrap();
    let pushed = m.apply(&H1Class::from_coords(3, vec![2, 0, 0, 2, 0, 0]).unwrap());
    assert_eq!(
        conj,
        KnElement::translation_by(3, 4, pushed.coords()).unwrap()
    );
}

#[test]
fn theta_errors() {
    let cat = load(3).unwrap();
    let twist = cat.automorphism("a1").unwrap();
    assert_eq!(theta_translation(&twist, 4), Err(Error::NotTorelli));
    let bp = cat.automorphism("bp1").unwrap();
    assert!(matches!(
        theta_translation(&bp, 3),
        Err(Error::InvalidModulus { .. })
    ));
    assert_eq!(torelli_action_trivial(4, 3), Ok(false));
}
