//! Closed-form scalar expressions over three coordinates, evaluable either to
//! a number or to a truncated Taylor jet. These trees hold the metric
//! coefficients and vector-field components of the model catalog.

use std::ops::{Add, Mul, Neg, Sub};

use crate::jet::Jet4;
use crate::scalar::Real;

#[derive(Clone, Debug)]
pub enum Expr<F> {
    Const(F),
    /// Coordinate x^i, i in {0, 1, 2}.
    Coord(usize),
    Sum(Vec<Expr<F>>),
    Prod(Vec<Expr<F>>),
    Neg(Box<Expr<F>>),
    Recip(Box<Expr<F>>),
    Powi(Box<Expr<F>>, i32),
    Sin(Box<Expr<F>>),
    Cos(Box<Expr<F>>),
    Exp(Box<Expr<F>>),
}

impl<F: Real> Expr<F> {
    pub fn zero() -> Self {
        Expr::Const(F::zero())
    }

    pub fn constant(x: F) -> Self {
        Expr::Const(x)
    }

    pub fn coord(i: usize) -> Self {
        assert!(i < 3);
        Expr::Coord(i)
    }

    pub fn sin(self) -> Self {
        Expr::Sin(Box::new(self))
    }

    pub fn cos(self) -> Self {
        Expr::Cos(Box::new(self))
    }

    pub fn exp(self) -> Self {
        Expr::Exp(Box::new(self))
    }

    pub fn recip(self) -> Self {
        Expr::Recip(Box::new(self))
    }

    pub fn powi(self, n: i32) -> Self {
        Expr::Powi(Box::new(self), n)
    }

    pub fn eval(&self, p: [F; 3]) -> F {
        match self {
            Expr::Const(c) => *c,
            Expr::Coord(i) => p[*i],
            Expr::Sum(xs) => xs.iter().fold(F::zero(), |acc, e| acc + e.eval(p)),
            Expr::Prod(xs) => xs.iter().fold(F::one(), |acc, e| acc * e.eval(p)),
            Expr::Neg(e) => -e.eval(p),
            Expr::Recip(e) => F::one() / e.eval(p),
            Expr::Powi(e, n) => e.eval(p).powi(*n),
            Expr::Sin(e) => e.eval(p).sin(),
            Expr::Cos(e) => e.eval(p).cos(),
            Expr::Exp(e) => e.eval(p).exp(),
        }
    }

    /// Value and gradient in one pass; much cheaper than a full jet when
    /// only first derivatives are needed (geodesic right-hand sides).
    pub fn eval_grad(&self, p: [F; 3]) -> (F, [F; 3]) {
        match self {
            Expr::Const(c) => (*c, [F::zero(); 3]),
            Expr::Coord(i) => {
                let mut g = [F::zero(); 3];
                g[*i] = F::one();
                (p[*i], g)
            }
            Expr::Sum(xs) => {
                let mut v = F::zero();
                let mut g = [F::zero(); 3];
                for e in xs {
                    let (ev, eg) = e.eval_grad(p);
                    v = v + ev;
                    for k in 0..3 {
                        g[k] = g[k] + eg[k];
                    }
                }
                (v, g)
            }
            Expr::Prod(xs) => {
                let mut v = F::one();
                let mut g = [F::zero(); 3];
                for e in xs {
                    let (ev, eg) = e.eval_grad(p);
                    for k in 0..3 {
                        g[k] = g[k] * ev + eg[k] * v;
                    }
                    v = v * ev;
                }
                (v, g)
            }
            Expr::Neg(e) => {
                let (v, g) = e.eval_grad(p);
                (-v, [-g[0], -g[1], -g[2]])
            }
            Expr::Recip(e) => {
                let (v, g) = e.eval_grad(p);
                let inv = F::one() / v;
                let d = -inv * inv;
                (inv, [g[0] * d, g[1] * d, g[2] * d])
            }
            Expr::Powi(e, n) => {
                let (v, g) = e.eval_grad(p);
                let d = F::of_int(*n as i64) * v.powi(*n - 1);
                (v.powi(*n), [g[0] * d, g[1] * d, g[2] * d])
            }
            Expr::Sin(e) => {
                let (v, g) = e.eval_grad(p);
                let c = v.cos();
                (v.sin(), [g[0] * c, g[1] * c, g[2] * c])
            }
            Expr::Cos(e) => {
                let (v, g) = e.eval_grad(p);
                let s = -v.sin();
                (v.cos(), [g[0] * s, g[1] * s, g[2] * s])
            }
            Expr::Exp(e) => {
                let (v, g) = e.eval_grad(p);
                let ex = v.exp();
                (ex, [g[0] * ex, g[1] * ex, g[2] * ex])
            }
        }
    }

    pub fn jet(&self, p: [F; 3]) -> Jet4<F> {
        match self {
            Expr::Const(c) => Jet4::constant(*c),
            Expr::Coord(i) => Jet4::variable(p[*i], *i),
            Expr::Sum(xs) => xs
                .iter()
                .fold(Jet4::zero(), |acc, e| acc.add(&e.jet(p))),
            Expr::Prod(xs) => xs
                .iter()
                .fold(Jet4::constant(F::one()), |acc, e| acc.mul(&e.jet(p))),
            Expr::Neg(e) => e.jet(p).neg(),
            Expr::Recip(e) => e.jet(p).recip(),
            Expr::Powi(e, n) => e.jet(p).powi(*n),
            Expr::Sin(e) => e.jet(p).sin(),
            Expr::Cos(e) => e.jet(p).cos(),
            Expr::Exp(e) => e.jet(p).exp(),
        }
    }
}

impl<F: Real> Add for Expr<F> {
    type Output = Expr<F>;
    fn add(self, rhs: Expr<F>) -> Expr<F> {
        Expr::Sum(vec![self, rhs])
    }
}

impl<F: Real> Sub for Expr<F> {
    type Output = Expr<F>;
    fn sub(self, rhs: Expr<F>) -> Expr<F> {
        Expr::Sum(vec![self, Expr::Neg(Box::new(rhs))])
    }
}

impl<F: Real> Mul for Expr<F> {
    type Output = Expr<F>;
    fn mul(self, rhs: Expr<F>) -> Expr<F> {
        Expr::Prod(vec![self, rhs])
    }
}

impl<F: Real> Neg for Expr<F> {
    type Output = Expr<F>;
    fn neg(self) -> Expr<F> {
        Expr::Neg(Box::new(self))
    }
}

/// A vector field with closed-form components.
#[derive(Clone, Debug)]
pub struct VectorFieldExpr<F> {
    pub comps: [Expr<F>; 3],
}

impl<F: Real> VectorFieldExpr<F> {
    pub fn new(comps: [Expr<F>; 3]) -> Self {
        VectorFieldExpr { comps }
    }

    /// The constant field d/dx^i.
    pub fn coordinate_basis(i: usize) -> Self {
        let mut comps = [Expr::zero(), Expr::zero(), Expr::zero()];
        comps[i] = Expr::constant(F::one());
        VectorFieldExpr { comps }
    }

    pub fn eval(&self, p: [F; 3]) -> [F; 3] {
        [self.comps[0].eval(p), self.comps[1].eval(p), self.comps[2].eval(p)]
    }

    pub fn jet(&self, p: [F; 3]) -> [Jet4<F>; 3] {
        [self.comps[0].jet(p), self.comps[1].jet(p), self.comps[2].jet(p)]
    }

    /// Lie bracket [X, Y] evaluated at p: X^i d_i Y^k - Y^i d_i X^k.
    pub fn bracket_at(&self, other: &Self, p: [F; 3]) -> [F; 3] {
        let xj = self.jet(p);
        let yj = other.jet(p);
        let mut out = [F::zero(); 3];
        for k in 0..3 {
            let mut s = F::zero();
            for i in 0..3 {
                let di = match i {
                    0 => (1, 0, 0),
                    1 => (0, 1, 0),
                    _ => (0, 0, 1),
                };
                s = s + xj[i].val() * yj[k].deriv(di) - yj[i].val() * xj[k].deriv(di);
            }
            out[k] = s;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_jet_agree() {
        // 2 + cos(2 pi x0) evaluated both ways
        let two_pi = Expr::constant(2.0 * std::f64::consts::PI);
        let e = Expr::constant(2.0) + (two_pi * Expr::coord(0)).cos();
        let p = [0.3, 0.0, 0.0];
        let v = e.eval(p);
        let j = e.jet(p);
        assert!((v - j.val()).abs() < 1e-15);
        assert!((v - (2.0 + (2.0 * std::f64::consts::PI * 0.3).cos())).abs() < 1e-15);
    }

    #[test]
    fn bracket_of_heisenberg_pair() {
        // X = x2 d1 + x3 d2, Y = d2; [X, Y] = -d1
        let x = VectorFieldExpr::new([Expr::coord(1), Expr::coord(2), Expr::zero()]);
        let y = VectorFieldExpr::<f64>::coordinate_basis(1);
        let b = x.bracket_at(&y, [0.7, -0.3, 0.5]);
        assert!((b[0] + 1.0).abs() < 1e-14);
        assert!(b[1].abs() < 1e-14);
        assert!(b[2].abs() < 1e-14);
    }
}
