//! Forward-mode truncated Taylor arithmetic in three variables, through total
//! order 4. A [`Jet4`] stores the Taylor coefficients f^(alpha)/alpha! of a
//! scalar at a point; sums, products and the elementary functions propagate
//! them exactly (truncation error lives strictly above the stored order), so
//! jets are exact on polynomials of degree <= 4.
//!
//! Differentiating a jet shifts coefficients down and loses one order of
//! validity; `ord` tracks how many orders of coefficients are still exact.

use crate::scalar::Real;

/// Truncation order of the jet algebra.
pub const JET_ORDER: usize = 4;
/// Number of monomials x^a y^b z^c with a+b+c <= 4.
pub const JET_LEN: usize = 35;

/// Multi-indices in the storage order: sorted by total degree, then
/// lexicographically in (a, b, c).
pub const MONOMIALS: [(u8, u8, u8); JET_LEN] = build_monomials();

const fn build_monomials() -> [(u8, u8, u8); JET_LEN] {
    let mut out = [(0u8, 0u8, 0u8); JET_LEN];
    let mut n = 0usize;
    let mut deg = 0u8;
    while deg <= JET_ORDER as u8 {
        let mut a = 0u8;
        while a <= deg {
            let mut b = 0u8;
            while a + b <= deg {
                out[n] = (a, b, deg - a - b);
                n += 1;
                b += 1;
            }
            a += 1;
        }
        deg += 1;
    }
    out
}

/// Lookup from (a, b, c) to the storage index; usize::MAX marks a+b+c > 4.
const INDEX: [[[usize; 5]; 5]; 5] = build_index();

const fn build_index() -> [[[usize; 5]; 5]; 5] {
    let mut idx = [[[usize::MAX; 5]; 5]; 5];
    let mut n = 0usize;
    while n < JET_LEN {
        let (a, b, c) = MONOMIALS[n];
        idx[a as usize][b as usize][c as usize] = n;
        n += 1;
    }
    idx
}

#[inline]
pub fn mono_index(a: usize, b: usize, c: usize) -> usize {
    INDEX[a][b][c]
}

const fn factorial(n: u8) -> u64 {
    match n {
        0 | 1 => 1,
        2 => 2,
        3 => 6,
        _ => 24,
    }
}

/// Truncated Taylor jet of a scalar function of three variables.
#[derive(Clone, Copy, Debug)]
pub struct Jet4<F> {
    /// Taylor coefficients in `MONOMIALS` order.
    pub c: [F; JET_LEN],
    /// Largest total order whose coefficients are exact.
    pub ord: u8,
}

impl<F: Real> Jet4<F> {
    pub fn zero() -> Self {
        Jet4 { c: [F::zero(); JET_LEN], ord: JET_ORDER as u8 }
    }

    pub fn constant(x: F) -> Self {
        let mut j = Self::zero();
        j.c[0] = x;
        j
    }

    /// The coordinate function `axis` seeded at value `x`.
    pub fn variable(x: F, axis: usize) -> Self {
        let mut j = Self::zero();
        j.c[0] = x;
        let e = match axis {
            0 => mono_index(1, 0, 0),
            1 => mono_index(0, 1, 0),
            _ => mono_index(0, 0, 1),
        };
        j.c[e] = F::one();
        j
    }

    #[inline]
    pub fn val(&self) -> F {
        self.c[0]
    }

    /// Partial derivative wrt `alpha`, read off the coefficients.
    pub fn deriv(&self, alpha: (u8, u8, u8)) -> F {
        let i = mono_index(alpha.0 as usize, alpha.1 as usize, alpha.2 as usize);
        debug_assert!(alpha.0 + alpha.1 + alpha.2 <= self.ord, "jet order exceeded");
        let fact = factorial(alpha.0) * factorial(alpha.1) * factorial(alpha.2);
        self.c[i] * F::of_int(fact as i64)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = *self;
        for i in 0..JET_LEN {
            out.c[i] = out.c[i] + o.c[i];
        }
        out.ord = self.ord.min(o.ord);
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = *self;
        for i in 0..JET_LEN {
            out.c[i] = out.c[i] - o.c[i];
        }
        out.ord = self.ord.min(o.ord);
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = *self;
        for i in 0..JET_LEN {
            out.c[i] = -out.c[i];
        }
        out
    }

    pub fn scale(&self, s: F) -> Self {
        let mut out = *self;
        for i in 0..JET_LEN {
            out.c[i] = out.c[i] * s;
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        out.ord = self.ord.min(o.ord);
        for i in 0..JET_LEN {
            if self.c[i] == F::zero() {
                continue;
            }
            let (a1, b1, c1) = MONOMIALS[i];
            for j in 0..JET_LEN {
                if o.c[j] == F::zero() {
                    continue;
                }
                let (a2, b2, c2) = MONOMIALS[j];
                let (a, b, c) = (a1 + a2, b1 + b2, c1 + c2);
                if a + b + c > JET_ORDER as u8 {
                    continue;
                }
                let k = mono_index(a as usize, b as usize, c as usize);
                out.c[k] = out.c[k] + self.c[i] * o.c[j];
            }
        }
        out
    }

    /// Composition with a univariate analytic function given by the Taylor
    /// coefficients g_k = f^(k)(u0)/k! about u0 = self.val(). Evaluated by
    /// Horner's scheme in the nilpotent part.
    pub fn compose(&self, g: [F; JET_ORDER + 1]) -> Self {
        let mut h = *self;
        h.c[0] = F::zero();
        let mut acc = Self::constant(g[JET_ORDER]);
        acc.ord = self.ord;
        for k in (0..JET_ORDER).rev() {
            acc = acc.mul(&h);
            acc.c[0] = acc.c[0] + g[k];
        }
        acc.ord = self.ord;
        acc
    }

    pub fn recip(&self) -> Self {
        let u0 = self.val();
        debug_assert!(u0 != F::zero(), "reciprocal of zero jet");
        let inv = F::one() / u0;
        let mut g = [F::zero(); JET_ORDER + 1];
        let mut p = inv;
        for k in 0..=JET_ORDER {
            g[k] = p;
            p = -p * inv;
        }
        self.compose(g)
    }

    pub fn sin(&self) -> Self {
        let u0 = self.val();
        let (s, c) = (u0.sin(), u0.cos());
        // derivatives of sin cycle (sin, cos, -sin, -cos)
        let seq = [s, c, -s, -c, s];
        let mut g = [F::zero(); JET_ORDER + 1];
        let mut fact = F::one();
        for k in 0..=JET_ORDER {
            if k > 0 {
                fact = fact * F::of_int(k as i64);
            }
            g[k] = seq[k] / fact;
        }
        self.compose(g)
    }

    pub fn cos(&self) -> Self {
        let u0 = self.val();
        let (s, c) = (u0.sin(), u0.cos());
        let seq = [c, -s, -c, s, c];
        let mut g = [F::zero(); JET_ORDER + 1];
        let mut fact = F::one();
        for k in 0..=JET_ORDER {
            if k > 0 {
                fact = fact * F::of_int(k as i64);
            }
            g[k] = seq[k] / fact;
        }
        self.compose(g)
    }

    pub fn exp(&self) -> Self {
        let e = self.val().exp();
        let mut g = [F::zero(); JET_ORDER + 1];
        let mut fact = F::one();
        for k in 0..=JET_ORDER {
            if k > 0 {
                fact = fact * F::of_int(k as i64);
            }
            g[k] = e / fact;
        }
        self.compose(g)
    }

    pub fn powi(&self, n: i32) -> Self {
        if n < 0 {
            return self.recip().powi(-n);
        }
        let mut acc = Self::constant(F::one());
        acc.ord = self.ord;
        let mut base = *self;
        let mut k = n as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Derivative jet along `axis`. One order of validity is spent; the top
    /// coefficients of the result are set to zero.
    pub fn partial(&self, axis: usize) -> Self {
        let mut out = Self::zero();
        out.ord = self.ord.saturating_sub(1);
        for i in 0..JET_LEN {
            let (a, b, c) = MONOMIALS[i];
            let (na, nb, nc, mult) = match axis {
                0 => (a as usize + 1, b as usize, c as usize, a as usize + 1),
                1 => (a as usize, b as usize + 1, c as usize, b as usize + 1),
                _ => (a as usize, b as usize, c as usize + 1, c as usize + 1),
            };
            if na + nb + nc > JET_ORDER {
                continue;
            }
            let src = mono_index(na, nb, nc);
            out.c[i] = self.c[src] * F::of_int(mult as i64);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_jet(p: [f64; 3]) -> Jet4<f64> {
        // f(x,y,z) = 3 + x^2 y - 2 z^4 + x y z
        let x = Jet4::variable(p[0], 0);
        let y = Jet4::variable(p[1], 1);
        let z = Jet4::variable(p[2], 2);
        let mut f = Jet4::constant(3.0);
        f = f.add(&x.mul(&x).mul(&y));
        f = f.sub(&z.powi(4).scale(2.0));
        f = f.add(&x.mul(&y).mul(&z));
        f
    }

    #[test]
    fn polynomial_exact() {
        let p = [1.5, -0.7, 0.3];
        let f = poly_jet(p);
        let val = 3.0 + p[0] * p[0] * p[1] - 2.0 * p[2].powi(4) + p[0] * p[1] * p[2];
        assert!((f.val() - val).abs() < 1e-13);
        // d/dx = 2xy + yz
        assert!((f.deriv((1, 0, 0)) - (2.0 * p[0] * p[1] + p[1] * p[2])).abs() < 1e-13);
        // d2/dx dy = 2x + z
        assert!((f.deriv((1, 1, 0)) - (2.0 * p[0] + p[2])).abs() < 1e-13);
        // d4/dz4 = -48
        assert!((f.deriv((0, 0, 4)) + 48.0).abs() < 1e-12);
    }

    #[test]
    fn transcendental_against_central_differences() {
        let p = [0.4, -0.2, 0.9];
        let f = |x: f64, y: f64, z: f64| (2.0 * x * y).sin() * (z * z).exp() + 1.0 / (2.0 + x.cos());
        let jf = {
            let x = Jet4::variable(p[0], 0);
            let y = Jet4::variable(p[1], 1);
            let z = Jet4::variable(p[2], 2);
            let a = x.mul(&y).scale(2.0).sin().mul(&z.mul(&z).exp());
            let b = x.cos().add(&Jet4::constant(2.0)).recip();
            a.add(&b)
        };
        let h = 1e-5;
        let dx = (f(p[0] + h, p[1], p[2]) - f(p[0] - h, p[1], p[2])) / (2.0 * h);
        let dz = (f(p[0], p[1], p[2] + h) - f(p[0], p[1], p[2] - h)) / (2.0 * h);
        assert!((jf.deriv((1, 0, 0)) - dx).abs() < 1e-9);
        assert!((jf.deriv((0, 0, 1)) - dz).abs() < 1e-9);
        let dxy = (f(p[0] + h, p[1] + h, p[2]) - f(p[0] + h, p[1] - h, p[2])
            - f(p[0] - h, p[1] + h, p[2])
            + f(p[0] - h, p[1] - h, p[2]))
            / (4.0 * h * h);
        assert!((jf.deriv((1, 1, 0)) - dxy).abs() < 1e-6);
    }

    #[test]
    fn partial_shifts_orders() {
        let p = [1.5, -0.7, 0.3];
        let f = poly_jet(p);
        let fx = f.partial(0);
        assert_eq!(fx.ord, 3);
        assert!((fx.val() - f.deriv((1, 0, 0))).abs() < 1e-13);
        assert!((fx.deriv((0, 1, 0)) - f.deriv((1, 1, 0))).abs() < 1e-13);
    }

    #[test]
    fn recip_is_inverse() {
        let p = [0.2, 0.1, -0.4];
        let f = poly_jet(p);
        let g = f.recip().mul(&f);
        assert!((g.val() - 1.0).abs() < 1e-13);
        for i in 1..JET_LEN {
            assert!(g.c[i].abs() < 1e-12);
        }
    }
}
