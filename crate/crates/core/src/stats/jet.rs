use std::ops::{Add, Mul, Neg, Sub};

/// Truncated Taylor polynomial `v + d·t + ½dd·t²` in one variable.
///
/// Carries exact first and second derivatives through `+`, `×`, `exp`, `ln`
/// and `sqrt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d: f64,
    pub dd: f64,
}

impl Jet {
    pub const fn constant(v: f64) -> Self {
        Self { v, d: 0.0, dd: 0.0 }
    }

    /// The independent variable at `t = v`.
    pub const fn variable(v: f64) -> Self {
        Self { v, d: 1.0, dd: 0.0 }
    }

    pub fn scale(self, s: f64) -> Self {
        Self {
            v: self.v * s,
            d: self.d * s,
            dd: self.dd * s,
        }
    }

    /// Composition with a scalar function given its value and two derivatives.
    fn chain(self, f: f64, f1: f64, f2: f64) -> Self {
        Self {
            v: f,
            d: f1 * self.d,
            dd: f1 * self.dd + f2 * self.d * self.d,
        }
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    pub fn ln(self) -> Self {
        let x = self.v;
        self.chain(x.ln(), 1.0 / x, -1.0 / (x * x))
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.v))
    }
}

impl Add for Jet {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            v: self.v + o.v,
            d: self.d + o.d,
            dd: self.dd + o.dd,
        }
    }
}

impl Sub for Jet {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self {
            v: self.v * o.v,
            d: self.d * o.v + self.v * o.d,
            dd: self.dd * o.v + 2.0 * self.d * o.d + self.v * o.dd,
        }
    }
}

impl std::iter::Sum for Jet {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Jet::constant(0.0), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_of_a_composite() {
        // f(t) = ln(1 + e^{2t}) · sqrt(t) at t = 0.7
        let t = Jet::variable(0.7);
        let f = (Jet::constant(1.0) + t.scale(2.0).exp()).ln() * t.sqrt();
        let g = |x: f64| (1.0 + (2.0 * x).exp()).ln() * x.sqrt();
        let h = 1e-4;
        let d = (g(0.7 + h) - g(0.7 - h)) / (2.0 * h);
        let dd = (g(0.7 + h) - 2.0 * g(0.7) + g(0.7 - h)) / (h * h);
        assert!((f.v - g(0.7)).abs() < 1e-15);
        assert!((f.d - d).abs() < 1e-7);
        assert!((f.dd - dd).abs() < 1e-5);
    }
}
