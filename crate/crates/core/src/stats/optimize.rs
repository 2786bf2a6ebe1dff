/// `(√5 − 1)/2`.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Result of a one-dimensional minimisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`,
/// stopping when the bracket is narrower than `tol`.
pub fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Minimum {
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut evaluations = 2;
    while (b - a) > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        evaluations += 1;
        // the interior points can collide once the bracket reaches machine precision
        if c >= d {
            break;
        }
    }
    let (x, value) = if fc <= fd { (c, fc) } else { (d, fd) };
    Minimum {
        x,
        value,
        evaluations,
    }
}

/// Brackets the minimum of a convex `f` with derivative `df` by doubling
/// outward from `[−step, step]` until `df` changes sign, up to `|x| ≤ limit`.
pub fn bracket_convex(df: impl Fn(f64) -> f64, step: f64, limit: f64) -> Option<(f64, f64)> {
    let mut lo = -step;
    while df(lo) > 0.0 {
        if lo.abs() >= limit {
            return None;
        }
        lo = (2.0 * lo).max(-limit);
    }
    let mut hi = step;
    while df(hi) < 0.0 {
        if hi >= limit {
            return None;
        }
        hi = (2.0 * hi).min(limit);
    }
    Some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_a_parabola_vertex() {
        let m = golden_section(|x| (x - 1.3).powi(2) + 2.0, -10.0, 10.0, 1e-10);
        // value comparisons cannot locate a quadratic vertex better than ~√ε
        assert!((m.x - 1.3).abs() < 1e-7);
        assert!((m.value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn respects_the_bracket_edge() {
        let m = golden_section(|x| x, 0.0, 1.0, 1e-12);
        assert!(m.x < 1e-11);
    }

    #[test]
    fn brackets_expand_to_the_sign_change() {
        let (lo, hi) = bracket_convex(|x| x - 37.0, 1.0, 1e3).unwrap();
        assert!(lo < 37.0 && hi >= 37.0);
        assert!(bracket_convex(|_| 1.0, 1.0, 1e3).is_none());
    }
}
