mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use porc_core::synth::DIRECT_LIMIT;
use porc_core::{
    bezout_cofactors, brute_force_count, count_at, counting_eval, exponent_space_count,
    porc_canonicalize, smith_normal_form, synthesize_counting_function, synthesize_gcd_function,
    synthesize_gcd_function_with, IntPoly, MonomialSystem, RatPoly, Strategy as Construction,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| IntPoly::from_i64s(&c))
}

fn family(max_len: usize, max_deg: usize, bound: i64) -> impl Strategy<Value = Vec<IntPoly>> {
    prop::collection::vec(poly(max_deg, bound), 1..=max_len)
        .prop_filter("not all zero", |fs| fs.iter().any(|f| !f.is_zero()))
}

fn system(max_eq: usize, max_neq: usize) -> impl Strategy<Value = MonomialSystem> {
    any::<u64>()
        .prop_map(move |seed| random_system(&mut StdRng::seed_from_u64(seed), max_eq, max_neq))
}

fn admissible(sys: &MonomialSystem, q0: u64) -> bool {
    let group: BigInt = BigInt::from(q0).pow(sys.n() as u32) - 1u32;
    group.pow(sys.k() as u32) <= BigInt::from(1_000_000)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn bezout_identity(fs in family(4, 6, 20)) {
        let b = bezout_cofactors(&fs).unwrap();
        let combo = fs.iter().zip(&b.cofactors).fold(RatPoly::zero(), |acc, (f, c)| &acc + &(&f.to_rat() * c));
        prop_assert_eq!(combo, b.gcd.to_rat());
        prop_assert!(b.gcd.leading().unwrap() > &BigInt::zero());
        prop_assert!(b.gcd.content().is_one());
        for f in &fs {
            let (_, r) = f.to_rat().div_rem(&b.gcd.to_rat());
            prop_assert!(r.is_zero());
        }
        let lcm = b.cofactors.iter().fold(BigInt::one(), |acc, c| {
            c.coeffs().iter().fold(acc, |a, x| num_integer::Integer::lcm(&a, x.denom()))
        });
        prop_assert_eq!(lcm, b.denominator_lcm);
    }

    #[test]
    fn snf_unimodular_invariance(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut m = random_matrix(&mut rng, 5, 15);
        let before = smith_normal_form(&m);
        prop_assert!(before.is_chain());
        scramble(&mut rng, &mut m, 30);
        prop_assert_eq!(before, smith_normal_form(&m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn synthesis_is_sound(fs in family(4, 5, 15)) {
        let g = synthesize_gcd_function(&fs).unwrap();
        porc_core::check_structure(&g).unwrap();
        for x in -200i64..=200 {
            let x = BigInt::from(x);
            if g.f.eval(&x).is_zero() {
                continue;
            }
            let h = gcd_all(fs.iter().map(|f| f.eval(&x)));
            prop_assert_eq!(BigRational::from_integer(h), g.eval(&x), "x = {}", x);
        }
    }

    #[test]
    fn direct_and_factored_agree(fs in family(3, 3, 6)) {
        let auto = synthesize_gcd_function(&fs).unwrap();
        if auto.m <= DIRECT_LIMIT {
            let direct = synthesize_gcd_function_with(&fs, Construction::Direct).unwrap();
            let factored = synthesize_gcd_function_with(&fs, Construction::Factored).unwrap();
            prop_assert_eq!(&direct.f, &factored.f);
            for x in 0..2 * auto.m as i64 {
                let x = BigInt::from(x);
                prop_assert_eq!(direct.d.eval(&x), factored.d.eval(&x));
            }
        }
    }

    #[test]
    fn residue_table_matches_eval(fs in family(3, 3, 8)) {
        let g = synthesize_gcd_function(&fs).unwrap();
        if g.d.period().map_or(true, |n| n > 600) {
            return Ok(());
        }
        let table = g.residue_table().unwrap();
        for x in -(table.modulus as i64) * 5..(table.modulus as i64) * 5 {
            let x = BigInt::from(x);
            prop_assert_eq!(BigRational::from_integer(table.eval(&x)), g.eval_signed(&x));
        }
    }

    #[test]
    fn canonical_form_keeps_values(
        terms in prop::collection::vec((-6i64..=6, 1i64..=6, -30i64..=30, 1u64..=12), 0..6),
        alpha in -5i64..=5,
    ) {
        let raw: Vec<(BigRational, BigInt, u64)> = terms
            .iter()
            .map(|&(num, den, n, m)| (BigRational::new(num.into(), den.into()), BigInt::from(n), m))
            .collect();
        let alpha = BigRational::from_integer(alpha.into());
        let e = porc_canonicalize(alpha.clone(), raw.clone());
        for x in -30i64..=30 {
            let xb = BigInt::from(x);
            let direct = raw.iter().fold(alpha.clone(), |acc, (c, n, m)| {
                let g = gcd_all([&xb - n, BigInt::from(*m)]);
                acc + c * BigRational::from_integer(g)
            });
            prop_assert_eq!(e.eval(&xb), direct);
        }
        for t in e.terms() {
            prop_assert!(t.m > 1 && t.n > 0 && t.n < t.m && !t.coeff.is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn synthesized_counts_match_count_at(sys in system(3, 2)) {
        let cf = synthesize_counting_function(&sys).unwrap();
        for q0 in 2..=50u64 {
            prop_assert_eq!(counting_eval(&cf, q0).unwrap(), count_at(&sys, q0).unwrap(), "q = {}\n{}", q0, sys);
        }
    }

    #[test]
    fn count_at_matches_oracles(sys in system(3, 2)) {
        for q0 in [2u64, 3, 4, 5, 7, 8, 9] {
            if !admissible(&sys, q0) {
                continue;
            }
            let (p, e) = prime_power(q0).unwrap();
            let expected = count_at(&sys, q0).unwrap();
            prop_assert_eq!(BigInt::from(exponent_space_count(&sys, q0, 1_000_000).unwrap()), expected.clone());
            if q0 <= 5 || sys.k() <= 2 {
                prop_assert_eq!(BigInt::from(brute_force_count(&sys, p, e, 1_000_000).unwrap()), expected);
            }
        }
    }

    #[test]
    fn redundant_equation_is_harmless(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sys = random_system(&mut rng, 3, 1);
        let eqs = sys.equations();
        let mut combo = vec![IntPoly::zero(); sys.k()];
        for row in &eqs {
            let c = BigInt::from(rng.gen_range(-3..=3));
            for (acc, e) in combo.iter_mut().zip(row.iter()) {
                *acc = &*acc + &e.scale(&c);
            }
        }
        let mut extended = sys.clone();
        extended.equation(combo).unwrap();
        for q0 in 2..=20u64 {
            prop_assert_eq!(count_at(&sys, q0).unwrap(), count_at(&extended, q0).unwrap());
        }
    }

    #[test]
    fn inequation_repeating_an_equation_counts_zero(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut sys = random_system(&mut rng, 3, 1);
        let Some(row) = sys.equations().first().map(|r| (*r).clone()) else { return Ok(()) };
        sys.inequation(row).unwrap();
        for q0 in 2..=20u64 {
            prop_assert_eq!(count_at(&sys, q0).unwrap(), BigInt::zero());
        }
        let cf = synthesize_counting_function(&sys).unwrap();
        for q0 in 2..=20u64 {
            prop_assert_eq!(counting_eval(&cf, q0).unwrap(), BigInt::zero());
        }
    }
}

#[test]
fn corpus_counts_agree_everywhere() {
    for (name, sys) in corpus() {
        let cf = synthesize_counting_function(&sys).unwrap();
        for q0 in 2..=50u64 {
            assert_eq!(
                counting_eval(&cf, q0).unwrap(),
                count_at(&sys, q0).unwrap(),
                "{name} at {q0}"
            );
        }
        for q0 in [2u64, 3, 4, 5, 7, 8, 9] {
            if admissible(&sys, q0) {
                let (p, e) = prime_power(q0).unwrap();
                let brute = brute_force_count(&sys, p, e, 1_000_000).unwrap();
                assert_eq!(
                    BigInt::from(brute),
                    count_at(&sys, q0).unwrap(),
                    "{name} at {q0}"
                );
            }
        }
    }
}

#[test]
fn large_modulus_families_synthesize() {
    // m grows quickly for coprime families; the factored construction keeps
    // these tractable
    let mut rng = StdRng::seed_from_u64(7);
    let mut big = 0;
    for _ in 0..100 {
        let fs: Vec<IntPoly> = (0..rng.gen_range(2..=3))
            .map(|_| random_poly(&mut rng, 5, 15))
            .collect();
        if fs.iter().all(|f| f.is_zero()) {
            continue;
        }
        let g = synthesize_gcd_function(&fs).unwrap();
        if g.m > DIRECT_LIMIT {
            big += 1;
        }
        for x in -50i64..=50 {
            let x = BigInt::from(x);
            if !g.f.eval(&x).is_zero() {
                let h = gcd_all(fs.iter().map(|f| f.eval(&x)));
                assert_eq!(BigRational::from_integer(h), g.eval(&x));
            }
        }
    }
    assert!(
        big > 10,
        "only {big} families needed the factored construction"
    );
}
