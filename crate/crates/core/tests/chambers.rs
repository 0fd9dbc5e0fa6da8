mod common;

use leaky::chambers::{chamber_polynomial, classify, cross_wall, walls, Chamber, Vanishing, Wall};
use leaky::{compute_h, FixtureOracle, Problem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every integer point with `|x_i| <= bound` on the degree hyperplane.
fn grid(n: usize, k: i64, bound: i64) -> Vec<Vec<i64>> {
    common::tuples(n - 1, (2 * bound + 1) as usize)
        .into_iter()
        .filter_map(|t| {
            let mut x: Vec<i64> = t.into_iter().map(|v| v as i64 - bound).collect();
            let last = k * (n as i64 - 2) - x.iter().sum::<i64>();
            (last.abs() <= bound).then(|| {
                x.push(last);
                x
            })
        })
        .collect()
}

#[test]
fn chamber_polynomials_agree_with_counts_on_grid() {
    let oracle = FixtureOracle::builtin();
    for (n, k, e, bound) in [
        (4usize, 1i64, vec![0u32; 4], 8i64),
        (4, 0, vec![0; 4], 8),
        (4, 2, vec![1, 0, 0, 0], 8),
        (5, 1, vec![1, 0, 0, 0, 0], 4),
        (5, 2, vec![0; 5], 4),
    ] {
        let mut polys: Vec<(Chamber, leaky::Poly)> = Vec::new();
        for x in grid(n, k, bound) {
            let Ok(chamber) = Chamber::at(k, &x) else { continue };
            let p = Problem::new(0, k, x.clone(), e.clone());
            let poly = match polys.iter().find(|(c, _)| c.contains(k, &x)) {
                Some((_, poly)) => poly.clone(),
                None => {
                    let poly = chamber_polynomial(&p).unwrap();
                    polys.push((chamber, poly.clone()));
                    poly
                }
            };
            assert_eq!(poly.eval_int(&x), compute_h(&p, &oracle).unwrap(), "x={x:?}");
        }
    }
}

#[test]
fn empty_flanking_chambers_give_zero() {
    // with |e| = n - 3 the single vertex cover exists everywhere
    let w = Wall::new(&[0, 1], 4).unwrap();
    let wc = cross_wall(1, &[1, 0, 0, 0], &w).unwrap();
    assert!(wc.computed.is_zero() && wc.formula.is_zero());
}

#[test]
fn random_walls_six_markings() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let all = walls(6);
    for _ in 0..40 {
        let w = &all[rng.gen_range(0..all.len())];
        let k = rng.gen_range(-2..=3);
        let mut e = vec![0u32; 6];
        for _ in 0..rng.gen_range(0..=3) {
            e[rng.gen_range(0..6)] += 1;
        }
        let wc = cross_wall(k, &e, w).unwrap();
        assert!(wc.agrees(), "{w} k={k} e={e:?}");
    }
}

#[test]
fn classifier_matches_counts_with_signed_profiles() {
    let oracle = FixtureOracle::builtin();
    for k in [-2i64, -1, 0, 1, 2] {
        for x in grid(4, k, 3) {
            for e in common::psi_vectors(4, 1) {
                let p = Problem::new(0, k, x.clone(), e);
                let zero = compute_h(&p, &oracle).unwrap().is_zero();
                assert_eq!(classify(&p).unwrap() == Vanishing::Zero, zero, "{p:?}");
            }
        }
    }
}
