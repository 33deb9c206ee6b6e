use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stabforge::codes::{self, hamming_weight};
use stabforge::concat;
use stabforge::gf::Field;
use stabforge::pauli::PauliSpace;
use stabforge::stab;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn q_strategy() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5])
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn field_distributes(q in prop::sample::select(vec![2u64, 3, 4, 7, 8, 9, 16, 25, 27]), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let f = Field::with_order(q).unwrap();
        let (a, b, c) = (a % f.order(), b % f.order(), c % f.order());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn solve_commutation_meets_constraints(q in q_strategy(), n in 1usize..4, seed: u64, ell_frac in 0.0f64..1.0) {
        let space = PauliSpace::with_q(q, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ell = 1 + (ell_frac * (2 * n) as f64) as usize % (2 * n);
        let gens = stab::sample_independent(&space, ell, &mut rng).unwrap();
        let b: Vec<u32> = (0..ell).map(|i| ((seed >> (i % 60)) % q) as u32).collect();
        let sigma = stab::solve_commutation(&space, &gens, &b).unwrap();
        for (g, &bi) in gens.iter().zip(&b) {
            prop_assert_eq!(space.symp(&sigma, g).unwrap(), bi);
        }
    }

    #[test]
    fn phi_preserves_weight(q in q_strategy(), n in 1usize..6, seed: u64) {
        let space = PauliSpace::with_q(q, n).unwrap();
        let p = space.random(&mut ChaCha8Rng::seed_from_u64(seed));
        let image = space.phi(&p).unwrap();
        prop_assert_eq!(hamming_weight(&image), p.weight());
        prop_assert_eq!(space.phi_inv(&image).unwrap(), p);
    }

    #[test]
    fn quantum_distance_at_least_normalizer_distance(q in prop::sample::select(vec![2u64, 3]), n in 1usize..4, k_frac in 0.0f64..1.0, seed: u64) {
        let k = ((k_frac * n as f64) as usize).max(1).min(n);
        let space = PauliSpace::with_q(q, n).unwrap();
        let code = stab::sample_code(&space, k, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let cs = codes::stabilizer_code(code.stabilizer()).unwrap();
        let cn = codes::normalizer_code(&code).unwrap();
        let (d, degenerate) = codes::quantum_distance(&cs, &cn).unwrap();
        let dn = cn.min_distance().unwrap();
        prop_assert!(d >= dn);
        prop_assert_eq!(degenerate, d > dn);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn concatenated_encoding_is_additive(q in prop::sample::select(vec![2u64, 3]), seed: u64, m1 in prop::collection::vec(0u32..1000, 3), m2 in prop::collection::vec(0u32..1000, 3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cc = concat::sample_concat(q, 1, 4, 2, &mut rng).unwrap();
        prop_assert_eq!(cc.outer().dimension(), 3);
        let outer = cc.outer().field().clone();
        let inner = cc.space().phi_tower().unwrap().ext().clone();
        let m1: Vec<u32> = m1.iter().map(|&x| x % outer.order()).collect();
        let m2: Vec<u32> = m2.iter().map(|&x| x % outer.order()).collect();
        let sum: Vec<u32> = m1.iter().zip(&m2).map(|(&a, &b)| outer.add(a, b)).collect();
        let e1 = cc.encode_message(&m1).unwrap();
        let e2 = cc.encode_message(&m2).unwrap();
        let es = cc.encode_message(&sum).unwrap();
        let expected: Vec<u32> = e1.iter().zip(&e2).map(|(&a, &b)| inner.add(a, b)).collect();
        prop_assert_eq!(es, expected);
        if m1.iter().any(|&x| x != 0) {
            prop_assert!(hamming_weight(&e1) >= cc.outer().min_distance().unwrap());
        }
    }
}
