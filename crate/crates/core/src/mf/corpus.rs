//! Known factorizations and seeded random generators for test corpora.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::GaussianRational;
use crate::skewpoly::{SignSystem, SkewPoly};

use super::hilbert::monomials_of_degree;
use super::{MatrixFactorization, PolyMatrix, TrivialVariant};

/// `f_ε = u·v` with `u = Σ αⱼxⱼ`, `v = Σ αⱼ⁻¹xⱼ`, where `α₁ = 1` and
/// `αⱼ² = −ε₁ⱼ`. Exists exactly when every triangle is negative.
pub fn rank_one_witness(ctx: &Arc<SignSystem>) -> Option<MatrixFactorization> {
    let n = ctx.n();
    let alpha: Vec<GaussianRational> = (0..n)
        .map(|j| {
            if j == 0 || ctx.eps(0, j) == -1 {
                GaussianRational::one()
            } else {
                GaussianRational::i()
            }
        })
        .collect();
    let inv: Vec<GaussianRational> = alpha.iter().map(|a| a.inv().expect("unit")).collect();
    let f = SkewPoly::sum_of_squares(ctx);
    let mf = MatrixFactorization::rank_one(
        &f,
        SkewPoly::linear(ctx, &alpha),
        SkewPoly::linear(ctx, &inv),
    )
    .ok()?;
    mf.is_valid().then_some(mf)
}

/// `[[x, y + √−1 z], [y − √−1 z, −x]]` squared is `(x² + y² + z²)E₂` in `k[x,y,z]`.
pub fn example_commutative_rank_two() -> MatrixFactorization {
    let ctx = Arc::new(SignSystem::commutative(3));
    let i = GaussianRational::i();
    let one = GaussianRational::one();
    let zero = GaussianRational::zero();
    let x = SkewPoly::var(&ctx, 0);
    let a = SkewPoly::linear(&ctx, &[zero.clone(), one.clone(), i.clone()]);
    let b = SkewPoly::linear(&ctx, &[zero, one, -i]);
    let m = PolyMatrix::from_rows(&ctx, vec![vec![x.clone(), a], vec![b, -&x]]).expect("square");
    let f = SkewPoly::sum_of_squares(&ctx);
    MatrixFactorization::new(f, vec![0, 0], vec![1, 1], m.clone(), m).expect("shapes")
}

/// The `2^{n−1}` factorizations `(x₁ ± x₂ ± ⋯ ± xₙ)²` of `f` over the
/// anticommutative algebra.
pub fn example_rank_one_family(n: usize) -> Vec<MatrixFactorization> {
    let ctx = Arc::new(SignSystem::anticommutative(n));
    let f = SkewPoly::sum_of_squares(&ctx);
    (0..1u64 << (n - 1))
        .map(|mask| {
            let coeffs: Vec<GaussianRational> = (0..n)
                .map(|j| {
                    let neg = j > 0 && mask >> (j - 1) & 1 == 1;
                    GaussianRational::from_int(if neg { -1 } else { 1 })
                })
                .collect();
            let l = SkewPoly::linear(&ctx, &coeffs);
            MatrixFactorization::rank_one(&f, l.clone(), l).expect("shapes")
        })
        .collect()
}

fn random_coeff<R: Rng>(rng: &mut R) -> GaussianRational {
    match rng.gen_range(0..6) {
        0 => GaussianRational::from_int(1),
        1 => GaussianRational::from_int(-1),
        2 => GaussianRational::from_int(2),
        3 => GaussianRational::i(),
        4 => -GaussianRational::i(),
        _ => GaussianRational::from_parts((1, 2), (1, 1)),
    }
}

/// A random homogeneous element of degree `degree` with up to `max_terms`
/// terms; zero for negative degree.
pub fn random_homogeneous<R: Rng>(
    ctx: &Arc<SignSystem>,
    degree: i64,
    max_terms: usize,
    rng: &mut R,
) -> SkewPoly {
    if degree < 0 || max_terms == 0 {
        return SkewPoly::zero(ctx);
    }
    let monos = monomials_of_degree(ctx.n(), degree as u32);
    let k = rng.gen_range(0..=max_terms.min(monos.len()));
    monos
        .choose_multiple(rng, k)
        .fold(SkewPoly::zero(ctx), |acc, m| {
            &acc + &SkewPoly::term(ctx, m.clone(), random_coeff(rng))
        })
}

/// Applies random graded elementary automorphisms `P` of `F⁰` and `Q` of `F¹`:
/// `Φ⁰ ↦ PΦ⁰Q`, `Φ¹ ↦ Q⁻¹Φ¹P⁻¹`.
pub fn random_basis_change<R: Rng>(
    mf: &MatrixFactorization,
    steps: usize,
    rng: &mut R,
) -> MatrixFactorization {
    let r = mf.rank();
    if r < 2 {
        return mf.clone();
    }
    let ctx = mf.ctx().clone();
    let mut out = mf.clone();
    for _ in 0..steps {
        let s = rng.gen_range(0..r);
        let mut t = rng.gen_range(0..r - 1);
        if t >= s {
            t += 1;
        }
        let on_f0 = rng.gen_bool(0.5);
        let shifts = if on_f0 { &out.m0 } else { &out.m1 };
        let c = random_homogeneous(&ctx, shifts[t] - shifts[s], 2, rng);
        if c.is_zero() {
            continue;
        }
        // E + c·e_{st} has inverse E − c·e_{st}
        let mut p = PolyMatrix::identity(&ctx, r);
        p[(s, t)] = c.clone();
        let mut p_inv = PolyMatrix::identity(&ctx, r);
        p_inv[(s, t)] = -&c;
        if on_f0 {
            out.phi0 = p.checked_mul(&out.phi0).expect("square");
            out.phi1 = out.phi1.checked_mul(&p_inv).expect("square");
        } else {
            out.phi0 = out.phi0.checked_mul(&p).expect("square");
            out.phi1 = p_inv.checked_mul(&out.phi1).expect("square");
        }
    }
    out
}

fn random_signs<R: Rng>(n: usize, rng: &mut R) -> Vec<i8> {
    (0..n)
        .map(|_| if rng.gen_bool(0.5) { 1 } else { -1 })
        .collect()
}

fn random_sign_system<R: Rng>(n: usize, rng: &mut R) -> SignSystem {
    let mut eps = vec![vec![1i8; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            eps[i][j] = e;
            eps[j][i] = e;
        }
    }
    SignSystem::new(n, eps).expect("symmetric")
}

/// Sign system with every triangle negative: `εᵢⱼ = −sᵢsⱼ`.
fn all_negative_triangles<R: Rng>(n: usize, rng: &mut R) -> SignSystem {
    let s = random_signs(n, rng);
    let eps = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 1 } else { -s[i] * s[j] })
                .collect()
        })
        .collect();
    SignSystem::new(n, eps).expect("symmetric")
}

fn random_trivial<R: Rng>(ctx: &Arc<SignSystem>, rank: usize, rng: &mut R) -> MatrixFactorization {
    let f = SkewPoly::sum_of_squares(ctx);
    let shifts: Vec<i64> = (0..rank).map(|_| rng.gen_range(-1..=1)).collect();
    let variant = if rng.gen_bool(0.5) {
        TrivialVariant::PhiF
    } else {
        TrivialVariant::FPhi
    };
    MatrixFactorization::trivial(&f, &shifts, variant).expect("central quadric")
}

/// A valid factorization of `x₁² + ⋯ + xₙ²` of rank at most `max_rank` over
/// some sign system on `n` variables.
fn random_case<R: Rng>(n: usize, max_rank: usize, rng: &mut R) -> MatrixFactorization {
    let mut mf = match rng.gen_range(0..3) {
        0 if n >= 3 && max_rank >= 2 => {
            let base = random_case(n - 2, max_rank / 2, rng);
            base.knorrer_extend_squares(&random_signs(n - 2, rng))
                .expect("sign-fixed quadric")
        }
        1 => {
            let ctx = Arc::new(all_negative_triangles(n, rng));
            rank_one_witness(&ctx).expect("all triangles negative")
        }
        _ => {
            let ctx = Arc::new(random_sign_system(n, rng));
            random_trivial(&ctx, rng.gen_range(1..=max_rank), rng)
        }
    };
    if mf.rank() < max_rank && rng.gen_bool(0.5) {
        let extra = rng.gen_range(1..=max_rank - mf.rank());
        let triv = random_trivial(mf.ctx(), extra, rng);
        mf = if rng.gen_bool(0.5) {
            mf.direct_sum(&triv)
        } else {
            triv.direct_sum(&mf)
        }
        .expect("same quadric");
    }
    if rng.gen_bool(0.3) {
        mf = mf.suspend();
    }
    let k = rng.gen_range(-1..=1);
    random_basis_change(&mf.shifted(k), 3, rng)
}

/// `cases` valid factorizations with `n ≤ 4` variables and rank `≤ 3`,
/// reproducible from `seed`.
pub fn random_corpus(seed: u64, cases: usize) -> Vec<MatrixFactorization> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            random_case(n, 3, &mut rng)
        })
        .collect()
}
