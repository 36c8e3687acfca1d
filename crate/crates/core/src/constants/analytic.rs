//! `ζ(2)`, `ζ′(2)` and Euler's `γ` by Euler–Maclaurin summation.

/// Cut-off for the explicit part of every sum.
const N: u32 = 20;

/// `B₂, B₄, …, B₁₂`.
const BERNOULLI: [f64; 6] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
];

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `Σ_{n≥N} f(n) = ∫_N^∞ f + f(N)/2 − Σ_k B_{2k}/(2k)!·f^(2k−1)(N)`,
/// with `deriv(m)` giving `f^(m)(N)`.
fn em_tail(integral: f64, f_n: f64, deriv: impl Fn(u32) -> f64) -> f64 {
    let mut s = integral + f_n / 2.0;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let m = 2 * (k as u32 + 1);
        s -= b / factorial(m) * deriv(m - 1);
    }
    s
}

/// `ζ(2)`.
pub fn zeta2() -> f64 {
    let n = f64::from(N);
    let head: f64 = (1..N).map(|k| 1.0 / f64::from(k * k)).sum();
    // (x⁻²)^(m) = (−1)^m (m+1)! x^(−2−m)
    let tail = em_tail(1.0 / n, 1.0 / (n * n), |m| {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        sign * factorial(m + 1) * libm::pow(n, -2.0 - f64::from(m))
    });
    head + tail
}

/// `ζ′(2) = −Σ log n / n²`.
pub fn zeta_prime_2() -> f64 {
    let n = f64::from(N);
    let ln = libm::log(n);
    let head: f64 = (2..N)
        .map(|k| libm::log(f64::from(k)) / f64::from(k * k))
        .sum();
    // d^m/dx^m (log x / x²) = (α log x + β)·x^(−2−m),
    // α' = −(2+m)α, β' = α − (2+m)β
    let tail = em_tail((ln + 1.0) / n, ln / (n * n), |m| {
        let (mut al, mut be) = (1.0, 0.0);
        for j in 0..m {
            let q = f64::from(2 + j);
            let next_be = al - q * be;
            al *= -q;
            be = next_be;
        }
        (al * ln + be) * libm::pow(n, -2.0 - f64::from(m))
    });
    -(head + tail)
}

/// Euler's constant `γ = H_n − log n − 1/(2n) + Σ_k B_{2k}/(2k·n^(2k))`.
pub fn euler_gamma() -> f64 {
    let n = f64::from(N);
    let h: f64 = (1..=N).map(|k| 1.0 / f64::from(k)).sum();
    let mut g = h - libm::log(n) - 1.0 / (2.0 * n);
    for (k, b) in BERNOULLI.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        g += b / (two_k * libm::pow(n, two_k));
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta2_is_pi_squared_over_six() {
        let pi = core::f64::consts::PI;
        assert!((zeta2() - pi * pi / 6.0).abs() < 1e-15);
    }

    #[test]
    fn against_plain_series() {
        // slow direct sums with an integral tail, accurate to ~1e-13
        let m = 2_000_000u64;
        let mf = m as f64;
        let mut z = 0.0;
        let mut zp = 0.0;
        let mut h = 0.0;
        for k in (1..=m).rev() {
            let kf = k as f64;
            z += 1.0 / (kf * kf);
            zp += libm::log(kf) / (kf * kf);
            h += 1.0 / kf;
        }
        z += 1.0 / mf - 1.0 / (2.0 * mf * mf);
        zp += (libm::log(mf) + 1.0) / mf - libm::log(mf) / (2.0 * mf * mf);
        let g = h - libm::log(mf) - 1.0 / (2.0 * mf) + 1.0 / (12.0 * mf * mf);
        assert!((zeta2() - z).abs() < 1e-12);
        assert!((zeta_prime_2() + zp).abs() < 1e-12);
        assert!((euler_gamma() - g).abs() < 1e-12);
    }

    #[test]
    fn twelve_digits() {
        assert!((zeta2() - 1.644934066848226).abs() < 1e-12);
        assert!((euler_gamma() - 0.577215664901533).abs() < 1e-12);
        assert!((zeta_prime_2() + 0.937548254315844).abs() < 1e-12);
    }
}
