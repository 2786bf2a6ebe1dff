use super::chain::TpmChain;
use super::jet::Jet;

/// `(ln weight, q_h, w_tot)` of every path with non-zero conditional probability,
/// grouped by `(n₄, n₀)`.
fn weighted_edges(chain: &TpmChain) -> Vec<(usize, usize, f64, f64, f64)> {
    (0..32usize)
        .filter_map(|bits| {
            let p: [usize; 5] = std::array::from_fn(|k| (bits >> (4 - k)) & 1);
            let prob = chain.conditional_probability(&p);
            if prob <= 0.0 {
                return None;
            }
            let inc = chain.increments(&p);
            Some((p[4], p[0], prob.ln(), inc.q_h, inc.w_tot()))
        })
        .collect()
}

fn exponent(phi: [f64; 2], dir: [f64; 2], log_p: f64, q_h: f64, w: f64) -> Jet {
    Jet {
        v: log_p + phi[0] * q_h + phi[1] * w,
        d: dir[0] * q_h + dir[1] * w,
        dd: 0.0,
    }
}

/// Largest eigenvalue of a non-negative 2×2 matrix `[[a, b], [c, d]]`.
fn perron_root(a: Jet, b: Jet, c: Jet, d: Jet) -> Jet {
    let half_diff = (a - d).scale(0.5);
    let disc = half_diff * half_diff + b * c;
    if disc.v > 0.0 {
        (a + d).scale(0.5) + disc.sqrt()
    } else if a.v >= d.v {
        a
    } else {
        d
    }
}

/// Scaled cumulant generating function along the line `φ + t·dir`, as a jet in `t` at `t = 0`.
///
/// `φ(φ₁, φ₂) = lim (1/N) ln⟨exp(φ₁ Q_h + φ₂ W)⟩` over `N` cycles, equal to
/// the log of the Perron root of the tilted one-cycle matrix
/// `T[n₄][n₀] = Σ P(path) e^{φ₁ q_h + φ₂ w_tot}`. Entries are accumulated
/// relative to the largest log-weight so large tilts do not overflow.
pub fn cgf_jet(chain: &TpmChain, phi: [f64; 2], dir: [f64; 2]) -> Jet {
    let edges = weighted_edges(chain);
    let shift = edges
        .iter()
        .map(|&(_, _, lp, q, w)| lp + phi[0] * q + phi[1] * w)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut t = [[Jet::constant(0.0); 2]; 2];
    for &(to, from, lp, q, w) in &edges {
        t[to][from] = t[to][from] + exponent(phi, dir, lp - shift, q, w).exp();
    }
    let root = perron_root(t[0][0], t[0][1], t[1][0], t[1][1]);
    let mut out = root.ln();
    out.v += shift;
    out
}

pub fn cgf(chain: &TpmChain, phi1: f64, phi2: f64) -> f64 {
    cgf_jet(chain, [phi1, phi2], [0.0, 0.0]).v
}

/// Single-cycle CGF `ln Σ_paths π(n₀) P(path|n₀) e^{φ₁ q_h + φ₂ w_tot}`,
/// ignoring correlations between consecutive cycles.
pub fn cgf_iid_jet(chain: &TpmChain, phi: [f64; 2], dir: [f64; 2]) -> Jet {
    let terms: Vec<_> = chain
        .paths()
        .into_iter()
        .filter(|(_, p)| *p > 0.0)
        .map(|(path, p)| {
            let inc = chain.increments(&path);
            exponent(phi, dir, p.ln(), inc.q_h, inc.w_tot())
        })
        .collect();
    let shift = terms.iter().map(|j| j.v).fold(f64::NEG_INFINITY, f64::max);
    let sum: Jet = terms
        .iter()
        .map(|j| {
            Jet {
                v: j.v - shift,
                ..*j
            }
            .exp()
        })
        .sum();
    let mut out = sum.ln();
    out.v += shift;
    out
}

pub fn cgf_iid(chain: &TpmChain, phi1: f64, phi2: f64) -> f64 {
    cgf_iid_jet(chain, [phi1, phi2], [0.0, 0.0]).v
}

/// Moments of single-cycle `q_h` and `w_tot` by explicit enumeration of the
/// 32 paths from the stationary distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathMoments {
    pub mean_q_h: f64,
    pub mean_w: f64,
    pub var_q_h: f64,
    pub var_w: f64,
}

pub fn path_moments(chain: &TpmChain) -> PathMoments {
    let (mut mq, mut mw, mut mq2, mut mw2) = (0.0, 0.0, 0.0, 0.0);
    for (path, p) in chain.paths() {
        let inc = chain.increments(&path);
        let w = inc.w_tot();
        mq += p * inc.q_h;
        mw += p * w;
        mq2 += p * inc.q_h * inc.q_h;
        mw2 += p * w * w;
    }
    PathMoments {
        mean_q_h: mq,
        mean_w: mw,
        var_q_h: mq2 - mq * mq,
        var_w: mw2 - mw * mw,
    }
}

/// `(∂φ/∂φ₂, ∂²φ/∂φ₂²)` at the origin: long-time mean and variance rate of `w_tot`.
pub fn work_cumulants(chain: &TpmChain) -> (f64, f64) {
    let j = cgf_jet(chain, [0.0, 0.0], [0.0, 1.0]);
    (j.d, j.dd)
}

/// `(∂φ/∂φ₁, ∂²φ/∂φ₁²)` at the origin for `q_h`.
pub fn heat_cumulants(chain: &TpmChain) -> (f64, f64) {
    let j = cgf_jet(chain, [0.0, 0.0], [1.0, 0.0]);
    (j.d, j.dd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::solve_limit_cycle;
    use crate::model::EngineConfig;
    use proptest::prelude::*;

    fn chain(cfg: &EngineConfig) -> TpmChain {
        TpmChain::from_cycle(&solve_limit_cycle(cfg).unwrap())
    }

    #[test]
    fn vanishes_at_origin() {
        let c = chain(&EngineConfig::fig1().with_r(0.3));
        assert!(cgf(&c, 0.0, 0.0).abs() < 1e-15);
        assert!(cgf_iid(&c, 0.0, 0.0).abs() < 1e-15);
    }

    #[test]
    fn first_derivative_is_the_stationary_mean() {
        let c = chain(&EngineConfig::fig1().with_r(0.3));
        let m = path_moments(&c);
        let (mw, _) = work_cumulants(&c);
        let (mq, _) = heat_cumulants(&c);
        let scale = c.quanta[1];
        assert!((mw - m.mean_w).abs() < 1e-10 * scale);
        assert!((mq - m.mean_q_h).abs() < 1e-10 * scale);
    }

    #[test]
    fn jet_matches_finite_differences() {
        let c = chain(&EngineConfig::fig1().with_r(0.5));
        let s = 1.0 / c.quanta[1];
        let (p, dir) = ([0.3 * s, -0.7 * s], [0.5, 1.0]);
        let j = cgf_jet(&c, p, dir);
        let h = 1e-3 * s;
        let f = |t: f64| cgf(&c, p[0] + t * dir[0], p[1] + t * dir[1]);
        let d = (f(h) - f(-h)) / (2.0 * h);
        let dd = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        assert!((j.d - d).abs() < 1e-6 * d.abs().max(c.quanta[1]));
        assert!((j.dd - dd).abs() < 1e-4 * dd.abs());
    }

    #[test]
    fn large_tilts_stay_finite() {
        let c = chain(&EngineConfig::fig1());
        let s = 1e3 / c.quanta[1];
        for (a, b) in [(s, s), (-s, s), (s, -s), (-s, -s)] {
            assert!(cgf(&c, a, b).is_finite());
        }
    }

    #[test]
    fn iid_and_spectral_agree_when_cold_bath_resets() {
        let c = chain(&EngineConfig::fig1().with_tau_c(1e3).with_r(0.5));
        let s = 1.0 / c.quanta[1];
        for (a, b) in [(0.3, -0.5), (-1.2, 0.8), (2.0, 2.0)] {
            let (x, y) = (cgf(&c, a * s, b * s), cgf_iid(&c, a * s, b * s));
            assert!((x - y).abs() < 1e-10, "{x} vs {y}");
        }
    }

    proptest! {
        #[test]
        fn convex(
            a in -3.0..3.0f64, b in -3.0..3.0f64,
            c2 in -3.0..3.0f64, d in -3.0..3.0f64,
        ) {
            let ch = chain(&EngineConfig::fig1().with_r(0.4));
            let s = 1.0 / ch.quanta[1];
            let f = |x: f64, y: f64| cgf(&ch, x * s, y * s);
            let mid = f(0.5 * (a + c2), 0.5 * (b + d));
            prop_assert!(mid <= 0.5 * (f(a, b) + f(c2, d)) + 1e-10);
        }
    }
}
