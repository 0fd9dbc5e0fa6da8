mod common;

use leaky::intersect::{psi_integral, psi_kappa_integral, recursion_lhs, recursion_rhs};
use leaky::Problem;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn kappa_powers_match_set_partition_expansion() {
    for n in 3..=7usize {
        for e in common::psi_vectors(n, n as u32 - 3) {
            let f = n - 3 - e.iter().sum::<u32>() as usize;
            assert_eq!(psi_kappa_integral(&e, f as u32), common::kappa_by_partitions(&e, f), "e={e:?}");
        }
    }
}

#[test]
fn pure_kappa_values() {
    let values: Vec<String> = (3..=8).map(|n| psi_kappa_integral(&vec![0; n], n as u32 - 3).to_string()).collect();
    let oracle: Vec<String> = (3..=8).map(|n| common::kappa_by_partitions(&vec![0; n], n - 3).to_string()).collect();
    assert_eq!(values, oracle);
    assert_eq!(values[..3], ["1", "1", "5"]);
}

#[test]
fn recursion_holds_with_zero_marked_entry() {
    let p = Problem::new(0, 1, vec![0, 3, -1, 0, 1], vec![1, 0, 0, 0, 0]);
    assert!(recursion_rhs(&p, 0, 1).unwrap().is_zero());
    assert!(recursion_lhs(&p, 0, 1).is_zero());
}

proptest! {
    #[test]
    fn string_consistency(e in proptest::collection::vec(0u32..4, 3..8)) {
        prop_assert_eq!(psi_kappa_integral(&e, 0), psi_integral(e.len(), &e));
    }

    #[test]
    fn recursion_identity_random(seed in 0u64..100_000, n in 4usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(-3..=3);
        let x = common::random_profile(&mut rng, n, 0, k, 10);
        let mut e = vec![0u32; n];
        for _ in 0..rng.gen_range(1..=n as u32 - 3) {
            e[rng.gen_range(0..n)] += 1;
        }
        let f = n as u32 - 3 - e.iter().sum::<u32>();
        let p = Problem::new(0, k, x, e.clone());
        for s in (0..n).filter(|&s| e[s] > 0) {
            prop_assert_eq!(recursion_rhs(&p, s, f).unwrap(), recursion_lhs(&p, s, f));
        }
    }
}
