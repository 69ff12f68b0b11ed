//! Quadrature and finite-difference kernels on uniform grids.
//!
//! All routines are order-2 or order-4 accurate in the spacing `h`.
//! Cumulative sums are compensated (Kahan) so that symmetry identities
//! like `φ(0) = 1/2` survive multi-million-sample grids at the 1e-12
//! level.

use alloc::vec::Vec;

/// Compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Composite trapezoid rule for samples of `f` at spacing `h`.
pub fn trapezoid(f: &[f64], h: f64) -> f64 {
    match f.len() {
        0 | 1 => 0.0,
        _ => {
            let mut acc = KahanSum::new();
            acc.add(0.5 * f[0]);
            for &v in &f[1..f.len() - 1] {
                acc.add(v);
            }
            acc.add(0.5 * f[f.len() - 1]);
            acc.value() * h
        }
    }
}

/// Composite Simpson rule; falls back to trapezoid corrections on an even
/// number of panels' leftover interval.
pub fn simpson(f: &[f64], h: f64) -> f64 {
    let n = f.len();
    if n < 3 {
        return trapezoid(f, h);
    }
    let mut acc = KahanSum::new();
    let mut i = 0;
    while i + 2 < n {
        acc.add(f[i] + 4.0 * f[i + 1] + f[i + 2]);
        i += 2;
    }
    let mut total = acc.value() * h / 3.0;
    if i + 1 < n {
        // one panel left: 3-point closed rule on the final pair
        total += h * (5.0 * f[n - 1] + 8.0 * f[n - 2] - f[n - 3]) / 12.0;
    }
    total
}

/// Cumulative trapezoid: `out[k] = ∫_{x_0}^{x_k} f`.
pub fn cumulative_trapezoid(f: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(f.len());
    let mut acc = KahanSum::new();
    out.push(0.0);
    for k in 1..f.len() {
        acc.add(0.5 * h * (f[k - 1] + f[k]));
        out.push(acc.value());
    }
    out
}

/// Cumulative Simpson: order-4 accurate antiderivative samples.
///
/// Each interval is integrated with the parabola through three
/// neighbouring samples, alternating the left rule
/// `h(5f_k + 8f_{k+1} - f_{k+2})/12` on even intervals with the mirrored
/// right rule on odd ones so consecutive pairs telescope into composite
/// Simpson panels and the O(h⁴) local errors cancel globally.
pub fn cumulative_simpson(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    if n < 3 {
        return cumulative_trapezoid(f, h);
    }
    let mut out = Vec::with_capacity(n);
    let mut acc = KahanSum::new();
    out.push(0.0);
    for k in 0..n - 1 {
        let inc = if k % 2 == 0 {
            if k + 2 < n {
                h * (5.0 * f[k] + 8.0 * f[k + 1] - f[k + 2]) / 12.0
            } else {
                h * (-f[k - 1] + 8.0 * f[k] + 5.0 * f[k + 1]) / 12.0
            }
        } else {
            h * (-f[k - 1] + 8.0 * f[k] + 5.0 * f[k + 1]) / 12.0
        };
        acc.add(inc);
        out.push(acc.value());
    }
    out
}

/// Second-order central first derivative at interior node `i`.
#[inline]
pub fn central_d1(f: &[f64], i: usize, h: f64) -> f64 {
    (f[i + 1] - f[i - 1]) / (2.0 * h)
}

/// Second-order central second derivative at interior node `i`.
#[inline]
pub fn central_d2(f: &[f64], i: usize, h: f64) -> f64 {
    (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h)
}

/// Divergence-form operator `(p·f')'` at node `i` with midpoint-averaged
/// coefficient samples: second-order accurate and in exact discrete
/// agreement with the assembled stiffness matrices.
#[inline]
pub fn sturm_liouville_term(p: &[f64], f: &[f64], i: usize, h: f64) -> f64 {
    let p_plus = 0.5 * (p[i] + p[i + 1]);
    let p_minus = 0.5 * (p[i - 1] + p[i]);
    (p_plus * (f[i + 1] - f[i]) - p_minus * (f[i] - f[i - 1])) / (h * h)
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        num += (xi - mx) * (yi - my);
        den += (xi - mx) * (xi - mx);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn samples(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> (Vec<f64>, f64) {
        let h = (b - a) / (n - 1) as f64;
        ((0..n).map(|i| f(a + i as f64 * h)).collect(), h)
    }

    #[test]
    fn simpson_is_fourth_order_on_smooth_integrands() {
        let exact = 1.0 - libm::cos(1.0);
        let (f1, h1) = samples(libm::sin, 0.0, 1.0, 101);
        let (f2, h2) = samples(libm::sin, 0.0, 1.0, 201);
        let e1 = (simpson(&f1, h1) - exact).abs();
        let e2 = (simpson(&f2, h2) - exact).abs();
        assert!(e1 < 1e-9);
        assert!(e1 / e2 > 12.0, "expected ~16x reduction, got {}", e1 / e2);
    }

    #[test]
    fn cumulative_simpson_matches_antiderivative() {
        let (f, h) = samples(|x| x * x * libm::exp(-x), 0.0, 3.0, 1001);
        let cum = cumulative_simpson(&f, h);
        let anti = |x: f64| 2.0 - (x * x + 2.0 * x + 2.0) * libm::exp(-x);
        for (k, &v) in cum.iter().enumerate().step_by(100) {
            let x = k as f64 * h;
            assert!((v - anti(x)).abs() < 1e-11, "k={k}: {v} vs {}", anti(x));
        }
    }

    #[test]
    fn central_differences_converge_quadratically() {
        let (f, h) = samples(libm::exp, 0.0, 1.0, 101);
        let d1 = central_d1(&f, 50, h);
        let d2 = central_d2(&f, 50, h);
        let x = 50.0 * h;
        assert!((d1 - libm::exp(x)).abs() < 5e-5);
        assert!((d2 - libm::exp(x)).abs() < 2e-4);
    }

    #[test]
    fn kahan_survives_many_small_terms() {
        let mut acc = KahanSum::new();
        for _ in 0..10_000_000 {
            acc.add(0.1);
        }
        assert!((acc.value() - 1e6).abs() < 1e-7);
    }

    #[test]
    fn slope_recovers_linear_data() {
        let x: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.5 * v - 2.0).collect();
        assert!((ls_slope(&x, &y) - 3.5).abs() < 1e-12);
    }
}
