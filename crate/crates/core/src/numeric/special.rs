//! Special functions: log-gamma, regularized incomplete gamma, binary entropy.

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

const MAX_ITER: usize = 1000;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x > 0.
pub fn ln_gamma<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // Reflection: Γ(x)Γ(1−x) = π / sin(πx)
        let pi = T::PI();
        return (pi / (pi * x).sin()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (x + T::count(i));
    }
    let t = x + T::lit(LANCZOS_G) + half;
    half * (T::lit(2.0) * T::PI()).ln() + (x + half) * t.ln() - t + acc.ln()
}

/// Regularized lower incomplete gamma P(a, x) = γ(a, x) / Γ(a).
///
/// Series for `x < a + 1`, Lentz continued fraction for the complement otherwise.
pub fn regularized_lower_incomplete_gamma<T: Real>(shape: T, x: T) -> Result<T> {
    incomplete_gamma_pair(shape, x).map(|(p, _)| p)
}

/// Regularized upper incomplete gamma Q(a, x) = 1 − P(a, x), without cancellation.
pub fn regularized_upper_incomplete_gamma<T: Real>(shape: T, x: T) -> Result<T> {
    incomplete_gamma_pair(shape, x).map(|(_, q)| q)
}

fn incomplete_gamma_pair<T: Real>(a: T, x: T) -> Result<(T, T)> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(invalid("shape", format!("must be > 0, got {a}")));
    }
    if !(x >= T::zero()) {
        return Err(invalid("x", format!("must be >= 0, got {x}")));
    }
    if x == T::zero() {
        return Ok((T::zero(), T::one()));
    }
    if x.is_infinite() {
        return Ok((T::one(), T::zero()));
    }
    let log_prefactor = a * x.ln() - x - ln_gamma(a);
    if x < a + T::one() {
        let p = (series(a, x)?.ln() + log_prefactor).exp().min(T::one());
        Ok((p, T::one() - p))
    } else {
        let q = (log_prefactor + continued_fraction(a, x)?.ln()).exp().min(T::one());
        Ok((T::one() - q, q))
    }
}

/// Σ xⁿ / (a(a+1)…(a+n)).
fn series<T: Real>(a: T, x: T) -> Result<T> {
    let eps = T::epsilon();
    let mut ap = a;
    let mut term = T::one() / a;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        ap = ap + T::one();
        term = term * x / ap;
        sum = sum + term;
        if term.abs() <= sum.abs() * eps {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence("incomplete gamma series"))
}

/// Continued fraction with Q(a, x) = e^{−x} xᵃ / Γ(a) · CF, modified Lentz.
fn continued_fraction<T: Real>(a: T, x: T) -> Result<T> {
    let eps = T::epsilon();
    let tiny = T::min_positive_value() / eps;
    let two = T::lit(2.0);
    let mut b = x + T::one() - a;
    let mut c = T::one() / tiny;
    let mut d = T::one() / b;
    let mut h = d;
    for i in 1..=MAX_ITER {
        let n = T::count(i);
        let an = -n * (n - a);
        b = b + two;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = T::one() / d;
        let delta = d * c;
        h = h * delta;
        if (delta - T::one()).abs() <= eps {
            return Ok(h);
        }
    }
    Err(Error::NoConvergence("incomplete gamma continued fraction"))
}

/// H(p) = −p log₂ p − (1−p) log₂(1−p), with 0·log 0 = 0.
pub fn binary_entropy<T: Real>(p: T) -> Result<T> {
    if !(p >= T::zero() && p <= T::one()) {
        return Err(invalid("p", format!("must lie in [0, 1], got {p}")));
    }
    let h = |q: T| if q > T::zero() { -q * q.log2() } else { T::zero() };
    Ok(h(p) + h(T::one() - p))
}
