//! First-order jets through dual numbers.
//!
//! A matrix `g` over a base ring `R` is lifted to `R[eps]`, perturbed to
//! `(I + eps X) g` for a trace-zero direction `X`, and pushed through any
//! polynomial map. The `eps` part of the result is the exact directional
//! derivative.

use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::ring::{RingDescriptor, Scalar};

/// The dual-number ring over `base`.
pub fn dual_of(base: &RingDescriptor) -> RingDescriptor {
    RingDescriptor::dual_numbers(base.clone())
}

pub fn lift(dual: &RingDescriptor, m: &Matrix) -> Matrix {
    m.map(|a| dual.embed(a))
}

pub fn lift_scalar(dual: &RingDescriptor, a: &Scalar) -> Scalar {
    dual.embed(a)
}

/// `a + eps b`.
pub fn jet_scalar(a: &Scalar, b: &Scalar) -> Scalar {
    Scalar::pair(a.clone(), b.clone())
}

pub fn real_part(dual: &RingDescriptor, m: &Matrix) -> Matrix {
    m.map(|a| dual.parts(a).0.clone())
}

pub fn eps_part(dual: &RingDescriptor, m: &Matrix) -> Matrix {
    m.map(|a| dual.parts(a).1.clone())
}

/// `a + eps b` entrywise.
pub fn jet_matrix(a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.n(), b.n());
    Matrix::from_fn(a.n(), |i, j| jet_scalar(a.get(i, j), b.get(i, j)))
}

/// `(I + eps X) g` over the dual ring, for `g` and `x` over the base.
pub fn perturb(base: &RingDescriptor, g: &Matrix, x: &Matrix) -> Matrix {
    jet_matrix(g, &x.mul(base, g))
}

/// Basis of `sl_n`: off-diagonal units `E_ij` in row-major order, then
/// `H_i = E_ii - E_(i+1)(i+1)`. For `n = 2` this is `E, F, H`.
pub fn sl_basis(base: &RingDescriptor, n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = Matrix::zero(base, n);
                m.set(i, j, base.one());
                out.push(m);
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        let mut m = Matrix::zero(base, n);
        m.set(i, i, base.one());
        m.set(i + 1, i + 1, base.from_int(-1));
        out.push(m);
    }
    out
}
