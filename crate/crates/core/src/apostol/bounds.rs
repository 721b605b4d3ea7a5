use std::f64::consts::{LN_2, PI};

use super::Regime;

/// Envelope `|B_n(a; z)| ≲ prefactor · n! · base_ratio^n`; the implicit
/// constant of the growth estimate is not part of it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailBound {
    pub base_ratio: f64,
    pub prefactor: f64,
}

impl TailBound {
    /// Bound for the term `|B_n| x^n / n!`.
    pub fn term(&self, n: u32, x: f64) -> f64 {
        self.prefactor * (self.base_ratio * x).powi(n as i32)
    }

    /// Geometric bound for `Σ_{m ≥ n} |B_m| x^m / m!`, infinite when the
    /// per-degree ratio is not below 1.
    pub fn series_tail(&self, n: u32, x: f64) -> f64 {
        let q = self.base_ratio * x;
        if q >= 1.0 {
            f64::INFINITY
        } else {
            self.term(n, x) / (1.0 - q)
        }
    }
}

/// Growth envelope for degree `n`.
///
/// Generic `z`: `n!/(log 2)^n · e^{log 2·|a|} · max{|z|^{n−1}|z−1|^{−n}, |z−1|^{−1}}`,
/// folded into `prefactor · n! · base_ratio^n` with
/// `base_ratio = max{|z|/|z−1|, 1}/log 2`.
/// `z = 1`: `n!/(2π)^n · e^{2π|a|}`. For `n = 0` the prefactor is 1.
pub fn tail_bound(n: u32, abs_a: f64, z: (f64, f64), regime: Regime) -> TailBound {
    match regime {
        Regime::ZEqualsOne => TailBound {
            base_ratio: 1.0 / (2.0 * PI),
            prefactor: if n == 0 {
                1.0
            } else {
                (2.0 * PI * abs_a).exp()
            },
        },
        Regime::Generic => {
            let abs_z = z.0.hypot(z.1);
            let dist = (z.0 - 1.0).hypot(z.1);
            let m = (abs_z / dist).max(1.0);
            TailBound {
                base_ratio: m / LN_2,
                prefactor: if n == 0 {
                    1.0
                } else {
                    (LN_2 * abs_a).exp() / (dist * m)
                },
            }
        }
    }
}

/// Distance from the origin to the nearest nonzero pole of the generating
/// function, `min_k |−Log z + 2πik|` over `k ∈ [−3, 3]` with the principal
/// logarithm. `λ(0) = ∞`.
pub fn lambda(z: (f64, f64)) -> f64 {
    let r = z.0.hypot(z.1);
    if r == 0.0 {
        return f64::INFINITY;
    }
    let (re, im) = (-r.ln(), -z.1.atan2(z.0));
    (-3..=3)
        .map(|k| re.hypot(im + 2.0 * PI * f64::from(k)))
        .filter(|d| *d > 1e-300)
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn per_degree_ratios() {
        let b = tail_bound(5, 1.0, (1.0, 0.0), Regime::ZEqualsOne);
        assert!((b.base_ratio - 1.0 / (2.0 * PI)).abs() < 1e-15);
        let b = tail_bound(5, 0.0, (-1.0, 0.0), Regime::Generic);
        assert!((b.base_ratio - 1.0 / LN_2).abs() < 1e-15);
        assert_eq!(
            tail_bound(0, 3.0, (0.5, 0.0), Regime::Generic).prefactor,
            1.0
        );
        assert!(b.series_tail(0, 1.0).is_infinite());
        assert!(b.series_tail(0, 0.5).is_finite());
    }

    #[test]
    fn lambda_values() {
        assert!((lambda((1.0, 0.0)) - 2.0 * PI).abs() < 1e-12);
        assert!((lambda((-1.0, 0.0)) - PI).abs() < 1e-12);
        assert!((lambda((0.5, 0.0)) - LN_2).abs() < 1e-12);
        assert!(lambda((0.0, 0.0)).is_infinite());
    }
}
