//! Chebyshev polynomials of the first kind: floating and exact-rational
//! scalar evaluation, matrix evaluation through a spectral decomposition,
//! and the rational-eigenvalue filter for perfect state transfer.
//!
//! `T_0 = 1`, `T_1 = x`, `T_n = 2x T_{n-1} - T_{n-2}`; on `[-1, 1]` the
//! values satisfy `T_n(cos θ) = cos nθ`, hence `|T_n| <= 1` there.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::spectral::{SpectralDecomposition, DEFAULT_CLUSTER_TOL};

/// Floating slack allowed on the `|T_n(x)| <= 1` bound for `|x| <= 1`.
/// The three-term recurrence drifts by well under this up to n = 10^4.
pub const BOUND_SLACK: f64 = 1e-12;

/// `T_n(x)` by the three-term recurrence.
///
/// For `|x| <= 1` the result is asserted (not clamped) to respect the
/// `|T_n| <= 1` bound within [`BOUND_SLACK`].
pub fn cheb_scalar(n: u32, x: f64) -> f64 {
    let value = match n {
        0 => 1.0,
        1 => x,
        _ => {
            let mut prev = 1.0;
            let mut current = x;
            for _ in 2..=n {
                (prev, current) = (current, 2.0 * x * current - prev);
            }
            current
        }
    };
    if x.abs() <= 1.0 {
        assert!(
            value.abs() <= 1.0 + BOUND_SLACK,
            "|T_{n}({x})| = {} exceeds the unit bound",
            value.abs()
        );
    }
    value
}

/// Exact rational `T_n(x)`.
///
/// Internally runs the integer recurrence on numerators over a fixed
/// power-of-denominator scale, so no gcd reduction happens per step;
/// coefficients grow like 2^(n-1), hence big integers.
pub fn cheb_rational(n: u32, x: &BigRational) -> BigRational {
    match n {
        0 => BigRational::one(),
        1 => x.clone(),
        _ => {
            let p = x.numer();
            let q = x.denom();
            let two_p: BigInt = p * 2;
            let q_squared: BigInt = q * q;
            // a_k = T_k(p/q) * q^k, an integer: a_k = 2p a_{k-1} - q² a_{k-2}.
            let mut previous = BigInt::one();
            let mut current = p.clone();
            for _ in 2..=n {
                let next = &two_p * &current - &q_squared * &previous;
                previous = current;
                current = next;
            }
            BigRational::new(current, q.pow(n))
        }
    }
}

/// `T_n(M)` for a decomposed symmetric matrix: `Σ T_n(λ_i) E_i`.
///
/// # Panics
/// If some eigenvalue exceeds 1 in absolute value beyond the cluster
/// tolerance; Chebyshev evaluation is only contractive on `[-1, 1]`.
pub fn cheb_matrix(sd: &SpectralDecomposition, n: u32) -> DMatrix<f64> {
    for &lambda in sd.eigenvalues() {
        assert!(
            lambda.abs() <= 1.0 + DEFAULT_CLUSTER_TOL,
            "eigenvalue {lambda} outside [-1, 1]"
        );
    }
    sd.poly_apply(|lambda| cheb_scalar(n, lambda))
}

/// `T_n(M)` by the matrix three-term recurrence, independent of any
/// spectral decomposition. The spectral route and this one must agree.
pub fn cheb_matrix_recurrence(matrix: &DMatrix<f64>, n: u32) -> Result<DMatrix<f64>> {
    let (rows, cols) = matrix.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    Ok(match n {
        0 => DMatrix::identity(rows, rows),
        1 => matrix.clone(),
        _ => {
            let mut previous = DMatrix::identity(rows, rows);
            let mut current = matrix.clone();
            for _ in 2..=n {
                let next = matrix * &current * 2.0 - &previous;
                previous = current;
                current = next;
            }
            current
        }
    })
}

/// Whether a rational number in `[-1, 1]` can satisfy `T_τ(x) = ±1` for
/// some time τ at all.
///
/// Any such x lies in cos(ℚπ), and the only rationals there are
/// {-1, -1/2, 0, 1/2, 1}; everything else certifies that no perfect state
/// transfer time exists when x sits in an eigenvalue support.
pub fn rational_pst_filter(x: &BigRational) -> Result<bool> {
    if x.abs() > BigRational::one() {
        return Err(Error::FilterDomain {
            value: x.to_string(),
        });
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok(x.is_zero() || x.abs() == BigRational::one() || x.abs() == half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn ratio(numer: i64, denom: i64) -> BigRational {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    #[test]
    fn scalar_base_cases() {
        assert_eq!(cheb_scalar(0, 0.37), 1.0);
        assert_eq!(cheb_scalar(1, 0.37), 0.37);
        assert_eq!(cheb_scalar(2, 0.0), -1.0);
    }

    #[test]
    fn scalar_matches_cos_form_at_two_thirds_pi() {
        // T_6(cos 2π/3) = cos 4π = 1, and cos 2π/3 = -1/2.
        assert!((cheb_scalar(6, -0.5) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn rational_examples() {
        assert_eq!(cheb_rational(2, &ratio(0, 1)), ratio(-1, 1));
        for tau in [1u32, 5, 17, 100] {
            assert_eq!(cheb_rational(tau, &ratio(1, 1)), ratio(1, 1));
        }
        // T_3(x) = 4x³ - 3x at x = -1/2.
        assert_eq!(cheb_rational(3, &ratio(-1, 2)), ratio(1, 1));
    }

    #[test]
    fn rational_agrees_with_float_on_small_denominators() {
        for q in 1i64..=10 {
            for p in -q..=q {
                if num_integer::gcd(p.abs(), q) != 1 {
                    continue;
                }
                let x = ratio(p, q);
                for n in 0u32..=50 {
                    let exact = cheb_rational(n, &x);
                    let float = cheb_scalar(n, p as f64 / q as f64);
                    let exact_f64 = exact.to_f64_lossy();
                    assert!(
                        (exact_f64 - float).abs() <= 1e-12,
                        "n={n} x={p}/{q}: exact {exact_f64} vs float {float}"
                    );
                }
            }
        }
    }

    trait ToF64Lossy {
        fn to_f64_lossy(&self) -> f64;
    }
    impl ToF64Lossy for BigRational {
        fn to_f64_lossy(&self) -> f64 {
            let numer = self.numer().to_string().parse::<f64>().unwrap();
            let denom = self.denom().to_string().parse::<f64>().unwrap();
            numer / denom
        }
    }

    #[test]
    fn semigroup_identity() {
        // T_m(T_n(x)) = T_{mn}(x), an independent sanity identity.
        let xs: Vec<f64> = (0..=40).map(|k| -1.0 + k as f64 / 20.0).collect();
        for &x in &xs {
            for m in 0u32..=12 {
                for n in 0u32..=12 {
                    let composed = cheb_scalar(m, cheb_scalar(n, x));
                    let direct = cheb_scalar(m * n, x);
                    assert!(
                        (composed - direct).abs() <= 1e-10,
                        "m={m} n={n} x={x}: {composed} vs {direct}"
                    );
                }
            }
        }
    }

    #[test]
    fn cos_form_identity_on_random_angles() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for _ in 0..1000 {
            let theta: f64 = rng.gen_range(0.0..=std::f64::consts::PI);
            let n = rng.gen_range(0u32..=200);
            let lhs = cheb_scalar(n, theta.cos());
            let rhs = (n as f64 * theta).cos();
            assert!(
                (lhs - rhs).abs() <= 1e-10,
                "n={n} theta={theta}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn matrix_routes_agree_on_a_discriminant() {
        use crate::graph::Graph;
        use crate::operators::WalkOperators;
        use crate::spectral::decompose;

        for g in [
            Graph::cycle(4).unwrap(),
            Graph::complete_multipartite(3, 2).unwrap(),
            Graph::from_edge_list("0 1\n1 2\n2 3\n0 3\n0 2").unwrap(),
        ] {
            let ops = WalkOperators::from_graph(&g);
            let sd = decompose(ops.discriminant(), DEFAULT_CLUSTER_TOL).unwrap();
            for n in 0..=24 {
                let spectral_route = cheb_matrix(&sd, n);
                let recurrence_route = cheb_matrix_recurrence(ops.discriminant(), n).unwrap();
                let dev = (spectral_route - recurrence_route)
                    .iter()
                    .fold(0.0f64, |acc, &v| acc.max(v.abs()));
                assert!(dev <= 1e-9, "n={n}: routes differ by {dev}");
            }
        }
    }

    #[test]
    fn matrix_base_cases() {
        use crate::graph::Graph;
        use crate::operators::WalkOperators;
        use crate::spectral::decompose;

        let ops = WalkOperators::from_graph(&Graph::cycle(5).unwrap());
        let sd = decompose(ops.discriminant(), DEFAULT_CLUSTER_TOL).unwrap();
        let n = ops.vertex_count();
        let t0 = cheb_matrix(&sd, 0);
        let t1 = cheb_matrix(&sd, 1);
        assert!((t0 - DMatrix::identity(n, n)).amax() <= 1e-12);
        assert!((t1 - ops.discriminant()).amax() <= 1e-12);
    }

    #[test]
    fn filter_accepts_exactly_the_five_values() {
        assert!(rational_pst_filter(&ratio(-1, 2)).unwrap());
        assert!(rational_pst_filter(&ratio(1, 1)).unwrap());
        assert!(rational_pst_filter(&ratio(0, 1)).unwrap());
        assert!(!rational_pst_filter(&ratio(-1, 3)).unwrap());
        assert!(!rational_pst_filter(&ratio(3, 7)).unwrap());
        assert!(matches!(
            rational_pst_filter(&ratio(3, 2)),
            Err(Error::FilterDomain { .. })
        ));
        // f64 round-trip sanity for the filter's common call sites.
        assert!(rational_pst_filter(&BigRational::from_f64(-0.5).unwrap()).unwrap());
    }
}
