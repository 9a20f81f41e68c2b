//! Truncated integer power series and the Hilbert-series identities for
//! quadric hypersurfaces `A = S/(f)` in `n` variables.

use num_integer::binomial;
use serde::{Deserialize, Serialize};

/// A power series truncated after degree `len − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Series(pub Vec<i64>);

impl Series {
    pub fn zero(len: usize) -> Self {
        Series(vec![0; len])
    }

    /// A polynomial given by its coefficients, truncated or padded to `len`.
    pub fn poly(coeffs: &[i64], len: usize) -> Self {
        let mut c = coeffs.to_vec();
        c.resize(len, 0);
        Series(c)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn mul(&self, other: &Series) -> Series {
        let len = self.len().min(other.len());
        let mut out = vec![0i64; len];
        for (i, &a) in self.0.iter().enumerate().take(len) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Series(out)
    }

    /// `t ↦ −t`.
    pub fn negate_variable(&self) -> Series {
        Series(
            self.0
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    /// Multiplicative inverse; the constant term must be ±1.
    pub fn inverse(&self) -> Option<Series> {
        let c0 = *self.0.first()?;
        if c0 != 1 && c0 != -1 {
            return None;
        }
        let len = self.len();
        let mut out = vec![0i64; len];
        out[0] = c0;
        for k in 1..len {
            let s: i64 = (1..=k).map(|j| self.0[j] * out[k - j]).sum();
            out[k] = -c0 * s;
        }
        Some(Series(out))
    }

    /// Division by `1 − t^step` (cumulative sums with stride `step`).
    pub fn div_one_minus_power(&self, step: usize) -> Series {
        let mut out = self.0.clone();
        for k in step..out.len() {
            out[k] += out[k - step];
        }
        Series(out)
    }
}

/// `(1 − t)^{−n}` truncated to degree `max_degree`.
pub fn free_algebra_series(n: usize, max_degree: usize) -> Series {
    let mut s = Series::poly(&[1], max_degree + 1);
    for _ in 0..n {
        s = s.div_one_minus_power(1);
    }
    s
}

/// Hilbert series of `S/(f)` for a regular element of degree 2.
pub fn quadric_series(n: usize, max_degree: usize) -> Series {
    free_algebra_series(n, max_degree).mul(&Series::poly(&[1, 0, -1], max_degree + 1))
}

/// Number of exponent vectors of length `n` and total degree `d`, counted
/// by explicit enumeration.
pub fn count_monomials(n: usize, d: u32) -> u64 {
    fn go(vars: usize, d: u32, bound: Option<u32>) -> u64 {
        if vars == 0 {
            return u64::from(d == 0);
        }
        let top = bound.map_or(d, |b| b.min(d));
        (0..=top).map(|e| go(vars - 1, d - e, None)).sum()
    }
    go(n, d, None)
}

/// Monomials of degree `d` with exponent of `x₁` at most 1 (the standard
/// monomials of `S/(f)` when `LM(f) = x₁²`).
pub fn count_standard_monomials(n: usize, d: u32) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    (0..=d.min(1)).map(|e| count_monomials(n - 1, d - e)).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesCheck {
    pub name: String,
    pub computed: Vec<i64>,
    pub expected: Vec<i64>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub n: usize,
    pub max_degree: usize,
    pub checks: Vec<SeriesCheck>,
}

impl HilbertReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SeriesCheck> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

fn check(name: &str, computed: Series, expected: Series) -> SeriesCheck {
    SeriesCheck {
        name: name.to_string(),
        ok: computed == expected,
        computed: computed.0,
        expected: expected.0,
    }
}

/// Checks the Hilbert-series identities of `S`, `A = S/(f)`, the Koszul dual
/// `A^!`, the extension `A^![u]/(u² − w)` and `(A†)^!` for `A† = S[u;−1]/(f+u²)`,
/// coefficientwise up to `max_degree`.
pub fn hilbert_checks(n: usize, max_degree: usize) -> HilbertReport {
    let len = max_degree + 1;
    let one_plus_t_pow_n = Series((0..len).map(|d| binomial(n as i64, d as i64)).collect());
    let mut checks = Vec::new();

    let h_s = free_algebra_series(n, max_degree);
    let by_count = Series(
        (0..len)
            .map(|d| count_monomials(n, d as u32) as i64)
            .collect(),
    );
    let by_binomial = Series(
        (0..len)
            .map(|d| binomial((n + d) as i64 - 1, d as i64))
            .collect(),
    );
    let by_inverse = Series::poly(&[1, -1], len)
        .inverse()
        .map(|s| (0..n).fold(Series::poly(&[1], len), |acc, _| acc.mul(&s)))
        .unwrap_or_else(|| Series::zero(len));
    checks.push(check(
        "dim S_d by monomial count = C(n+d-1,d)",
        by_count.clone(),
        by_binomial.clone(),
    ));
    checks.push(check("H_S = (1-t)^-n", h_s.clone(), by_binomial));
    checks.push(check("H_S via series inversion", by_inverse, by_count));

    let h_a = quadric_series(n, max_degree);
    let h_a_closed = Series(
        (0..len)
            .map(|d| {
                let top = binomial((n + d) as i64 - 1, d as i64);
                let low = if d >= 2 {
                    binomial((n + d) as i64 - 3, d as i64 - 2)
                } else {
                    0
                };
                top - low
            })
            .collect(),
    );
    let h_a_standard = Series(
        (0..len)
            .map(|d| count_standard_monomials(n, d as u32) as i64)
            .collect(),
    );
    checks.push(check("H_A = H_S (1-t^2)", h_a.clone(), h_a_closed.clone()));
    checks.push(check(
        "dim A_d by standard monomials",
        h_a_standard,
        h_a_closed,
    ));

    let h_dual = h_a
        .negate_variable()
        .inverse()
        .unwrap_or_else(|| Series::zero(len));
    let h_dual_closed = one_plus_t_pow_n.div_one_minus_power(2);
    checks.push(check(
        "H_{A^!}(t) = 1/H_A(-t) = (1+t)^n/(1-t^2)",
        h_dual.clone(),
        h_dual_closed.clone(),
    ));
    let koszul = h_a.mul(&h_dual_closed.negate_variable());
    checks.push(check(
        "H_A(t) H_{A^!}(-t) = 1",
        koszul,
        Series::poly(&[1], len),
    ));

    let extended = h_dual
        .div_one_minus_power(1)
        .mul(&Series::poly(&[1, 0, -1], len));
    let extended_closed = one_plus_t_pow_n.div_one_minus_power(1);
    checks.push(check(
        "H_{A^![u]/(u^2-w)} = H_{A^!}(1-t^2)/(1-t) = (1+t)^n/(1-t)",
        extended,
        extended_closed.clone(),
    ));
    let dagger_dual = quadric_series(n + 1, max_degree)
        .negate_variable()
        .inverse()
        .unwrap_or_else(|| Series::zero(len));
    checks.push(check(
        "H_{(A+)^!} = 1/H_{A+}(-t) = (1+t)^n/(1-t)",
        dagger_dual,
        extended_closed,
    ));

    HilbertReport {
        n,
        max_degree,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_series_examples() {
        assert_eq!(free_algebra_series(3, 4).0, vec![1, 3, 6, 10, 15]);
        // (1 - t^2)/(1 - t)^3 expanded by hand: (1+t)/(1-t)^2 = 1 + 3t + 5t^2 + 7t^3
        assert_eq!(quadric_series(3, 3).0, vec![1, 3, 5, 7]);
        // n = 1: H_A = 1 + t, 1/(1 - t) = 1 + t + t^2 + ...
        let h = quadric_series(1, 3);
        assert_eq!(h.0, vec![1, 1, 0, 0]);
        assert_eq!(h.negate_variable().inverse().unwrap().0, vec![1, 1, 1, 1]);
    }

    #[test]
    fn inverse_requires_unit_constant() {
        assert!(Series::poly(&[2, 1], 3).inverse().is_none());
        assert!(Series::poly(&[], 0).inverse().is_none());
    }

    #[test]
    fn monomial_counts() {
        for n in 1..=6 {
            for d in 0..=8u32 {
                let expected = binomial((n + d as usize) as u64 - 1, u64::from(d));
                assert_eq!(count_monomials(n, d), expected, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn all_identities_hold_small() {
        for n in 1..=6 {
            let r = hilbert_checks(n, 10);
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
