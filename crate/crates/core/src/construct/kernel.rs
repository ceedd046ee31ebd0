//! The logarithmic kernel `f1(θ) = -2 log|2 sin πθ|` on R/Z and its double
//! smoothing `f2 = f1 * χ * χ` by the box `χ = (Cp/2) 1_{|θ| <= 1/Cp}`.

use std::f64::consts::PI;
use std::sync::OnceLock;

const ZETA3: f64 = 1.202_056_903_159_594_3;
const GL_NODES: usize = 24;

/// Reduces θ to `(-1/2, 1/2]`.
pub fn reduce_angle(theta: f64) -> f64 {
    let t = theta - theta.round();
    if t <= -0.5 {
        t + 1.0
    } else {
        t
    }
}

/// `-2 log|2 sin πθ|`, with the value 0 at θ = 0.
pub fn f1_eval(theta: f64) -> f64 {
    let t = reduce_angle(theta);
    if t == 0.0 {
        return 0.0;
    }
    -2.0 * (2.0 * (PI * t).sin().abs()).ln()
}

/// `f2^(m) = f1^(m) (Cp sin(2πm/Cp) / 2πm)^2` with `f1^(m) = 1/|m|`, `f1^(0) = 0`.
pub fn f2_hat(m: i64, c: f64, p: u64) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let w = 2.0 * PI * m as f64 / (c * p as f64);
    let s = w.sin() / w;
    s * s / m.unsigned_abs() as f64
}

/// Half-width of the triangle `χ * χ`.
pub fn smoothing_width(c: f64, p: u64) -> f64 {
    2.0 / (c * p as f64)
}

/// `h(t) = f1(t) + 2 log(2π|t|) = -2 log(sin πt / πt)`, analytic on |t| < 1.
fn h_smooth(t: f64) -> f64 {
    let x = PI * t;
    if x == 0.0 {
        return 0.0;
    }
    -2.0 * (x.sin() / x).ln()
}

/// Gauss-Legendre nodes and weights on [0, 1].
fn gauss_legendre() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        let n = GL_NODES;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out.push(((x + 1.0) / 2.0, w / 2.0));
        }
        out
    })
}

/// `ψ(t) = t² log|t| / 2 - 3t²/4`, so that `ψ'' = log|t|`.
fn psi(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t * t * t.abs().ln() / 2.0 - 0.75 * t * t
    }
}

/// Triangle average of `log|·|` over `[u - 1, u + 1]` with weight `1 - |s|`.
fn triangle_log(u: f64) -> f64 {
    let u = u.abs();
    if u <= 2.0 {
        return psi(u + 1.0) - 2.0 * psi(u) + psi(u - 1.0);
    }
    let q = 1.0 / (u * u);
    let mut acc = 0.0;
    let mut qk = q;
    for k in 1..200 {
        let kf = k as f64;
        let term = qk / (kf * (2.0 * kf + 1.0) * (2.0 * kf + 2.0));
        acc += term;
        if term < 1e-20 {
            break;
        }
        qk *= q;
    }
    u.ln() - acc
}

/// `f2(θ) = (f1 * χ * χ)(θ)`.
///
/// The kernel is split as `f1(t) = -2 log(2π|t|) + h(t)`. The logarithmic
/// part is averaged against the triangle `χ * χ` in closed form and the
/// analytic part `h` by Gauss-Legendre quadrature. Requires `C >= 4`.
pub fn f2_eval(theta: f64, c: f64, p: u64) -> f64 {
    let a = smoothing_width(c, p);
    let t = reduce_angle(theta);
    let log_part = -2.0 * (2.0 * PI).ln() - 2.0 * (a.ln() + triangle_log(t / a));
    let smooth = gauss_legendre()
        .iter()
        .map(|&(v, w)| w * (1.0 - v) * (h_smooth(t - a * v) + h_smooth(t + a * v)))
        .sum::<f64>();
    log_part + smooth
}

fn zeta_even(n: usize) -> f64 {
    // ζ(2n)
    const SMALL: [f64; 5] = [
        1.644_934_066_848_226_4,
        1.082_323_233_711_138_2,
        1.017_343_061_984_449_1,
        1.004_077_356_197_944_3,
        1.000_994_575_127_818_1,
    ];
    if n <= 5 {
        return SMALL[n - 1];
    }
    (1..60).map(|k: i32| (k as f64).powi(-2 * n as i32)).sum()
}

/// `ζ(3) - Cl3(x)` for real x, where `Cl3(x) = Σ cos(kx)/k³`.
pub fn zeta3_minus_clausen3(x: f64) -> f64 {
    let mut x = x.rem_euclid(2.0 * PI);
    if x > PI {
        x = 2.0 * PI - x;
    }
    if x == 0.0 {
        return 0.0;
    }
    let x2 = x * x;
    let r = x2 / (4.0 * PI * PI);
    let mut series = 0.0;
    let mut rk = r;
    for n in 1..80 {
        let nf = n as f64;
        let term = zeta_even(n) * rk / (nf * (2.0 * nf + 1.0) * (2.0 * nf + 2.0));
        series += term;
        if term < 1e-20 {
            break;
        }
        rk *= r;
    }
    0.75 * x2 - 0.5 * x2 * x.ln() + x2 * series
}

/// `Cl3(x) = Σ_{k>=1} cos(kx)/k³`.
pub fn clausen3(x: f64) -> f64 {
    ZETA3 - zeta3_minus_clausen3(x)
}

/// `f2` through the second antiderivative `G(θ) = (ζ(3) - Cl3(2πθ))/(2π²)`
/// of f1. The second difference cancels about `log10(θ²/a²)` digits, so
/// this route is only accurate when the smoothing width is not tiny.
pub fn f2_eval_clausen(theta: f64, c: f64, p: u64) -> f64 {
    let a = smoothing_width(c, p);
    let g = |t: f64| zeta3_minus_clausen3(2.0 * PI * t) / (2.0 * PI * PI);
    (g(theta + a) - 2.0 * g(theta) + g(theta - a)) / (a * a)
}

/// `2 Σ_{m>=1} min(1/m, C²p²/(4π²m³))`, the majorant of `||g2^||_1`.
pub fn g2_l1_majorant(c: f64, p: u64) -> f64 {
    let k = (c * p as f64 / (2.0 * PI)).powi(2);
    let n = k.sqrt().floor() as u64;
    let harmonic = if n < 64 {
        (1..=n).map(|m| 1.0 / m as f64).sum::<f64>()
    } else {
        let nf = n as f64;
        nf.ln() + 0.577_215_664_901_532_9 + 1.0 / (2.0 * nf) - 1.0 / (12.0 * nf * nf)
            + 1.0 / (120.0 * nf.powi(4))
    };
    // Σ_{m>n} m^{-3}: a short direct head, then Euler-Maclaurin
    let head_end = n + 64;
    let head: f64 = (n + 1..head_end).map(|m| (m as f64).powi(-3)).sum();
    let nn = head_end as f64;
    let tail = 1.0 / (2.0 * nn * nn) + 1.0 / (2.0 * nn.powi(3)) + 1.0 / (4.0 * nn.powi(4))
        - 1.0 / (12.0 * nn.powi(6));
    2.0 * (harmonic + k * (head + tail))
}
