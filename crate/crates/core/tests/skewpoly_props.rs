use std::sync::Arc;

use proptest::prelude::*;
use skewquad::skewpoly::normalize_word;
use skewquad::{GaussianRational, LinearSubstitution, Monomial, SignSystem, SkewPoly};

const MAX_N: usize = 5;
const MAX_DEG: u32 = 4;

fn signs_from_bits(n: usize, bits: u32) -> SignSystem {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits >> k & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    SignSystem::from_edges(n, &edges).unwrap()
}

type RawTerm = (Vec<u32>, i8, i8);

fn raw_poly() -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec(
        (
            prop::collection::vec(0u32..=MAX_DEG, MAX_N),
            -3i8..=3,
            -2i8..=2,
        ),
        0..5,
    )
}

fn build(ctx: &Arc<SignSystem>, raw: &[RawTerm]) -> SkewPoly {
    let n = ctx.n();
    let terms = raw.iter().map(|(exps, re, im)| {
        // lower exponents until the total degree fits
        let mut e: Vec<u32> = exps[..n].to_vec();
        while e.iter().sum::<u32>() > MAX_DEG {
            let k = e.iter().position(|&x| x > 0).unwrap();
            e[k] -= 1;
        }
        let c = GaussianRational::from_parts((i64::from(*re), 1), (i64::from(*im), 1));
        (c, e)
    });
    SkewPoly::from_terms(ctx, terms).unwrap()
}

fn ctx_strategy() -> impl Strategy<Value = Arc<SignSystem>> {
    (1..=MAX_N, any::<u32>()).prop_map(|(n, bits)| Arc::new(signs_from_bits(n, bits)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn multiplication_is_associative(ctx in ctx_strategy(), a in raw_poly(), b in raw_poly(), c in raw_poly()) {
        let (a, b, c) = (build(&ctx, &a), build(&ctx, &b), build(&ctx, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(ctx in ctx_strategy(), a in raw_poly(), b in raw_poly(), c in raw_poly()) {
        let (a, b, c) = (build(&ctx, &a), build(&ctx, &b), build(&ctx, &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn normalize_word_concatenates(
        ctx in ctx_strategy(),
        u in prop::collection::vec(0usize..MAX_N, 0..6),
        v in prop::collection::vec(0usize..MAX_N, 0..6),
    ) {
        let n = ctx.n();
        let u: Vec<usize> = u.into_iter().map(|x| x % n).collect();
        let v: Vec<usize> = v.into_iter().map(|x| x % n).collect();
        let (su, mu) = normalize_word(&ctx, &u).unwrap();
        let (sv, mv) = normalize_word(&ctx, &v).unwrap();
        let uv: Vec<usize> = u.iter().chain(&v).copied().collect();
        let (suv, muv) = normalize_word(&ctx, &uv).unwrap();
        let (s, m) = mu.mul(&mv, &ctx);
        prop_assert_eq!(muv.clone(), m);
        prop_assert_eq!(suv, su * sv * s);

        // a normal-form word is fixed with sign +1
        let sorted: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, muv.exps()[i] as usize)).collect();
        prop_assert_eq!(normalize_word(&ctx, &sorted).unwrap(), (1, muv));

        // word products agree with polynomial products of variables
        let as_poly = uv.iter().fold(SkewPoly::one(&ctx), |acc, &i| &acc * &SkewPoly::var(&ctx, i));
        let expected = SkewPoly::term(&ctx, muv_of(&ctx, &uv), GaussianRational::from_int(suv.into()));
        prop_assert_eq!(as_poly, expected);
    }

    #[test]
    fn negation_substitution_is_an_involution(ctx in ctx_strategy(), a in raw_poly(), set in any::<u8>()) {
        let n = ctx.n();
        let idx: Vec<usize> = (0..n).filter(|&i| set >> i & 1 == 1).collect();
        let theta = LinearSubstitution::negate(n, &idx);
        prop_assert!(theta.check(&ctx).is_ok());
        let a = build(&ctx, &a);
        prop_assert_eq!(a.substitute(&theta).unwrap().substitute(&theta).unwrap(), a);
    }

    #[test]
    fn sum_of_squares_is_central(ctx in ctx_strategy()) {
        prop_assert!(SkewPoly::sum_of_squares(&ctx).is_central());
    }
}

fn muv_of(ctx: &SignSystem, w: &[usize]) -> Monomial {
    normalize_word(ctx, w).unwrap().1
}

/// Relation preservation checked on every pair of images expanded by hand:
/// `Σ_{a,b} p_a q_b (x_a x_b − ε x_b x_a)` in normal-form coordinates.
fn brute_force_preserves(ctx: &SignSystem, images: &[Vec<GaussianRational>]) -> bool {
    let n = ctx.n();
    let zero = GaussianRational::zero();
    for i in 0..n {
        for j in i + 1..n {
            // coefficient of each normal-form quadratic monomial x_a x_b (a ≤ b)
            let mut coeff = vec![vec![zero.clone(); n]; n];
            let e = GaussianRational::from_int(ctx.eps(i, j).into());
            for a in 0..n {
                for b in 0..n {
                    let lhs = &images[i][a] * &images[j][b];
                    let rhs = &(&images[j][a] * &images[i][b]) * &e;
                    let c = &lhs - &rhs;
                    if c == zero {
                        continue;
                    }
                    let (s, m) = normalize_word(ctx, &[a, b]).unwrap();
                    let pos: Vec<usize> = (0..n)
                        .flat_map(|v| std::iter::repeat_n(v, m.exps()[v] as usize))
                        .collect();
                    let term = &c * &GaussianRational::from_int(s.into());
                    coeff[pos[0]][pos[1]] = &coeff[pos[0]][pos[1]] + &term;
                }
            }
            if coeff.iter().flatten().any(|c| *c != zero) {
                return false;
            }
        }
    }
    true
}

fn unit_strategy() -> impl Strategy<Value = GaussianRational> {
    prop_oneof![
        Just(GaussianRational::zero()),
        Just(GaussianRational::zero()),
        Just(GaussianRational::one()),
        Just(GaussianRational::from_int(-1)),
        Just(GaussianRational::i()),
        Just(GaussianRational::from_int(2)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn relation_check_matches_brute_force(
        n in 1usize..=4,
        bits in any::<u32>(),
        entries in prop::collection::vec(unit_strategy(), 16),
        diagonal in any::<bool>(),
    ) {
        let ctx = Arc::new(signs_from_bits(n, bits));
        let images: Vec<Vec<GaussianRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if diagonal && i != j { GaussianRational::zero() } else { entries[i * 4 + j].clone() })
                    .collect()
            })
            .collect();
        let sub = LinearSubstitution::new(images.clone());
        prop_assert_eq!(sub.check(&ctx).is_ok(), brute_force_preserves(&ctx, &images));
    }
}

#[test]
fn knorrer_theta_satisfies_relations_when_new_variables_commute() {
    // u, v commute with each other and carry the same signs against the rest
    for bits in 0..1u32 << 3 {
        let base = signs_from_bits(3, bits);
        let signs: Vec<i8> = (0..3)
            .map(|k| if bits >> k & 1 == 1 { 1 } else { -1 })
            .collect();
        let with_u = base.adjoin_variable(&signs).unwrap();
        let mut v_signs = signs.clone();
        v_signs.push(1);
        let ext = Arc::new(with_u.adjoin_variable(&v_signs).unwrap());
        let theta = LinearSubstitution::knorrer_theta(5, 3, 4);
        assert!(theta.check(&ext).is_ok());
        let u = SkewPoly::var(&ext, 3);
        let v = SkewPoly::var(&ext, 4);
        let uv = (&u * &v).substitute(&theta).unwrap();
        assert_eq!(uv, &(&u * &u) + &(&v * &v));
    }
}

#[test]
fn monomial_counts_match_free_series() {
    use skewquad::series::{count_monomials, free_algebra_series};
    for n in 1..=6 {
        let s = free_algebra_series(n, 8);
        for d in 0..=8u32 {
            assert_eq!(
                count_monomials(n, d) as i64,
                s.coeffs()[d as usize],
                "n={n} d={d}"
            );
        }
    }
}
