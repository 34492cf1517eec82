//! Scalar numeric primitives shared by every map family.
//!
//! All state lives in IEEE-754 binary64; higher precision appears only in
//! test oracles. The logit/sigmoid pair is the workhorse: iterating the map
//! families in logit space turns each multiplicative update into an exact
//! additive one, so orbits stay finite for arbitrarily large drives where
//! the direct rational form would overflow.

/// Natural logit `ln(x/(1-x))`, computed as `ln(x) - ln_1p(-x)` so inputs
/// within a few ulps of 0 or 1 keep full precision.
pub fn logit(x: f64) -> f64 {
    x.ln() - (-x).ln_1p()
}

/// Inverse of [`logit`]. Two-branch form: never overflows, and rounds onto
/// 0 or 1 only when no representable value strictly inside (0,1) remains.
pub fn sigmoid(l: f64) -> f64 {
    if l >= 0.0 {
        1.0 / (1.0 + (-l).exp())
    } else {
        let e = l.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + e^l)`, the stable primitive behind `ln σ(l) = -softplus(-l)`.
pub fn softplus(l: f64) -> f64 {
    if l > 0.0 {
        l + (-l).exp().ln_1p()
    } else {
        l.exp().ln_1p()
    }
}

/// `ln(e^a + e^b)` shifted by the maximum; tolerates `-inf` entries.
pub fn log_sum_exp2(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln Σ exp(v_i)` over a slice; tolerates `-inf` entries.
pub fn log_sum_exp(vals: &[f64]) -> f64 {
    let m = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let s: f64 = vals.iter().map(|v| (v - m).exp()).sum();
    m + s.ln()
}

/// Replace a state that rounded onto a boundary by the nearest representable
/// interior value. The flag records that saturation happened; 0 and 1 are
/// repelling fixed points of every map here, so landing on them exactly is
/// always a floating-point artifact, never dynamics.
pub fn clamp_interior(x: f64) -> (f64, bool) {
    if x <= 0.0 {
        (f64::from_bits(1), true)
    } else if x >= 1.0 {
        (1.0_f64.next_down(), true)
    } else {
        (x, false)
    }
}

/// `n` evenly spaced values spanning `[lo, hi]` inclusive; `n == 1` yields
/// `[lo]`. Endpoints are exact, which keeps sweep grids reproducible.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 1, "linspace needs at least one point");
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / ((n - 1) as f64);
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

/// Deterministic interior grid on (0,1): midpoints `(k + 1/2)/n`.
pub fn unit_midpoints(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| (k as f64 + 0.5) / n as f64)
}

/// Neumaier-compensated accumulator; long time averages (1e6 samples and up)
/// need the compensation for the social-cost identity to hold to 1e-10.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Ordinary least-squares slope of `ys` against `xs` (intercept fitted).
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "slope fit needs at least two points");
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}
