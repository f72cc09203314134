use std::collections::BTreeMap;

use num::BigInt;
use orbipencil::fpgroups::{
    abelianize, kernel_rank, reidemeister_schreier, snf_i64, todd_coxeter, CyclicFreeProduct, Presentation, Word,
};
use proptest::prelude::*;

/// `(presentation, subgroup words, index)`.
fn closed_examples() -> Vec<(Presentation, Vec<Word>, usize)> {
    let p = |t: &str| Presentation::parse(t).unwrap();
    let z23 = p("gens: a b\na^2\nb^3");
    let derived = vec![
        Word::commutator(&Word::gen(0), &Word::gen(1)),
        Word::commutator(&Word::gen(0), &Word::power_of(1, -1)),
    ];
    vec![
        (p("gens: a\na^6"), vec![], 6),
        (p("gens: a b\na^2\nb^3\n(a b)^3"), vec![], 12),
        (p("gens: a b\na^2\nb^2\n(a b)^3"), vec![], 6),
        (p("gens: a b\na^4\na^2 b^-2\nb^-1 a b a"), vec![], 8),
        (p("gens: a b\na^2\nb^5\n(a b)^2"), vec![Word::gen(1)], 2),
        (p("gens: a b\na^2\nb^3\n(a b)^5"), vec![Word::gen(0)], 30),
        (z23, derived, 6),
    ]
}

fn rotate(w: &Word, k: usize) -> Word {
    let letters: Vec<(usize, i64)> = w.letters().collect();
    if letters.is_empty() {
        return w.clone();
    }
    let k = k % letters.len();
    Word::from_syllables(letters[k..].iter().chain(&letters[..k]).copied())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coset_count_ignores_relator_and_subgroup_order(
        which in 0usize..7,
        perm_seed in any::<u64>(),
        rot in 0usize..7,
        invert in any::<bool>(),
    ) {
        let (p, h, index) = closed_examples().swap_remove(which);
        let mut rels = p.relators.clone();
        let mut hs = h.clone();
        // deterministic shuffle from the seed
        let n = rels.len();
        for i in (1..n).rev() {
            rels.swap(i, (perm_seed as usize >> (i % 16)) % (i + 1));
        }
        hs.reverse();
        let rels = rels
            .iter()
            .map(|r| { let r = rotate(r, rot); if invert { r.inverse() } else { r } })
            .collect();
        let q = Presentation::new(p.generator_names().to_vec(), rels);
        let t = todd_coxeter(&q, &hs, 100_000);
        prop_assert!(t.is_closed());
        prop_assert_eq!(t.coset_count, index);
    }
}

/// Invariant factors of `Z^r × Π Z_{m_i}` from the primary decomposition,
/// independent of any matrix reduction.
fn primary_invariants(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &m in orders {
        let (mut m, mut p) = (m, 2);
        while m > 1 {
            let mut q = 1;
            while m % p == 0 {
                m /= p;
                q *= p;
            }
            if q > 1 {
                by_prime.entry(p).or_default().push(q);
            }
            p += 1;
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable();
        // largest powers go to the last invariant factor
        for (k, q) in powers.iter().rev().enumerate() {
            out[len - 1 - k] *= q;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn free_product_abelianization(r in 0usize..4, torsion in proptest::collection::vec(2u64..13, 0..5)) {
        let g = CyclicFreeProduct::new(r, torsion.clone());
        let a = abelianize(&g.presentation());
        prop_assert_eq!(a.free_rank, r);
        prop_assert_eq!(a.torsion.clone(), primary_invariants(&torsion));
        prop_assert_eq!(a, g.abelianization());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn snf_divisibility_and_permutation(
        rows in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-12i64..=12, c), r)),
        rs in any::<u64>(),
        cs in any::<u64>(),
    ) {
        let s = snf_i64(&rows);
        prop_assert_eq!(s.rank, s.invariant_factors.len());
        for w in s.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        prop_assert!(s.invariant_factors.iter().all(|d| *d > BigInt::from(0)));

        let mut permuted = rows.clone();
        permuted.rotate_left(rs as usize % rows.len());
        let c = rows[0].len();
        let k = cs as usize % c;
        for row in permuted.iter_mut() {
            row.rotate_left(k);
        }
        if rs & 1 == 1 {
            permuted.reverse();
        }
        prop_assert_eq!(snf_i64(&permuted), s);
    }
}

#[test]
fn kernel_rank_matches_rewriting_on_grid() {
    for s in 2..=3usize {
        let mut ms = vec![2u64; s];
        loop {
            let g = CyclicFreeProduct::new(0, ms.clone());
            let k = kernel_rank(&ms).unwrap();
            let m = k.m as i64;
            // generators follow the canonical (sorted) torsion order
            let images: Vec<i64> = g.torsion().iter().map(|&mi| m / mi as i64).collect();
            let kernel = reidemeister_schreier(&g.presentation(), &images, k.m).unwrap();
            assert!(kernel.relators.is_empty(), "{ms:?}");
            assert_eq!(abelianize(&kernel).free_rank as i64, k.rho, "{ms:?}");
            assert!(k.euler_identity_holds);
            // next tuple in the grid
            let Some(i) = ms.iter().rposition(|&x| x < 5) else { break };
            ms[i] += 1;
            for x in &mut ms[i + 1..] {
                *x = 2;
            }
        }
    }
}
