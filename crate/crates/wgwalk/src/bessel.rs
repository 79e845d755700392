//! Bessel functions needed by the step-index fiber mode solver and the
//! evanescent coupling coefficient: J0, J1, I0, I1 by power series and the
//! modified Bessel functions of the second kind K0, K1 by series (small
//! argument) or by the integral representation (large argument).
//!
//! Arguments stay modest here — the dispersion relation only ever evaluates
//! J at U < 2.405 and K at W < 2.405, while the coupling coefficient needs
//! K0 at W d / r which can reach a few hundred before underflow. All
//! branches are accurate to better than 1e-13 relative over those ranges.

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Bessel function of the first kind, order zero.
pub fn j0(x: f64) -> f64 {
    let q = -x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..200 {
        term *= q / ((m * m) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() + 1e-300 {
            break;
        }
    }
    sum
}

/// Bessel function of the first kind, order one.
pub fn j1(x: f64) -> f64 {
    let q = -x * x / 4.0;
    let mut term = x / 2.0;
    let mut sum = term;
    for m in 1..200 {
        term *= q / ((m * (m + 1)) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() + 1e-300 {
            break;
        }
    }
    sum
}

/// Modified Bessel function of the first kind, order zero.
pub fn i0(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..300 {
        term *= q / ((m * m) as f64);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

/// Modified Bessel function of the first kind, order one.
pub fn i1(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = x / 2.0;
    let mut sum = term;
    for m in 1..300 {
        term *= q / ((m * (m + 1)) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() + 1e-300 {
            break;
        }
    }
    sum
}

/// Modified Bessel function of the second kind, order zero.
///
/// Series with the I0 log term below x = 2, integral representation above.
pub fn k0(x: f64) -> f64 {
    assert!(x > 0.0, "k0 requires x > 0, got {x}");
    if x <= 2.0 {
        let lg = (x / 2.0).ln();
        let mut sum = -(lg + EULER_GAMMA) * i0(x);
        let q = x * x / 4.0;
        let mut term = 1.0;
        let mut harmonic = 0.0;
        for m in 1..300 {
            term *= q / ((m * m) as f64);
            harmonic += 1.0 / m as f64;
            let add = term * harmonic;
            sum += add;
            if add < 1e-17 * sum.abs() + 1e-300 {
                break;
            }
        }
        sum
    } else {
        k_integral(0.0, x)
    }
}

/// Modified Bessel function of the second kind, order one.
pub fn k1(x: f64) -> f64 {
    assert!(x > 0.0, "k1 requires x > 0, got {x}");
    if x <= 2.0 {
        let lg = (x / 2.0).ln();
        let q = x * x / 4.0;
        // -(x/4) sum_k [psi(k+1) + psi(k+2)] q^k / (k! (k+1)!)
        let mut term = 1.0;
        let mut psi1 = -EULER_GAMMA;
        let mut psi2 = 1.0 - EULER_GAMMA;
        let mut acc = term * (psi1 + psi2);
        for k in 1..300 {
            term *= q / ((k * (k + 1)) as f64);
            psi1 += 1.0 / k as f64;
            psi2 += 1.0 / (k + 1) as f64;
            let add = term * (psi1 + psi2);
            acc += add;
            if add.abs() < 1e-17 * acc.abs() + 1e-300 {
                break;
            }
        }
        1.0 / x + lg * i1(x) - (x / 4.0) * acc
    } else {
        k_integral(1.0, x)
    }
}

/// K_nu(x) = ∫_0^∞ exp(-x cosh t) cosh(nu t) dt by the trapezoid rule with
/// step halving, reusing the already-summed points at each refinement. The
/// integrand decays double-exponentially, so the trapezoid sum converges
/// spectrally; the range is cut where the integrand has fallen 1e-22 below
/// its t = 0 value.
fn k_integral(nu: f64, x: f64) -> f64 {
    let t_max = (1.0 + 52.0 / x).acosh();
    let f = |t: f64| (-x * t.cosh()).exp() * (nu * t).cosh();
    let mut h = t_max / 8.0;
    // endpoint term at t_max is ~1e-22 of the peak, safe to drop
    let mut sum = 0.5 * (-x).exp();
    for i in 1..=8 {
        sum += f(i as f64 * h);
    }
    let mut prev = f64::NAN;
    loop {
        let total = sum * h;
        if (total - prev).abs() <= 4e-15 * total.abs() || h < t_max / 4096.0 {
            return total;
        }
        prev = total;
        // halve the step: previous points keep their weight, add midpoints
        let n = (t_max / h).round() as usize;
        h /= 2.0;
        for i in 0..n {
            sum += f((2 * i + 1) as f64 * h);
        }
    }
}
