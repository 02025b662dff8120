//! Geometry of word maps on `SL_2`.
//!
//! For a two-letter word `w`, `W_w` is the fiber `w = I` and `T_w` is the
//! hypersurface `tr w = 2` in `SL_2 x SL_2`. This module has the closed
//! forms for commutators with a torus element, trace preimages, fiber
//! membership and jet Jacobians; the component catalogue with dimension
//! certificates lives in [`catalogue`], word enumeration in [`relations`]
//! and the explicit lemma checks in [`lemmas`].

pub mod catalogue;
pub mod lemmas;
pub mod relations;

use alloc::string::String;
use alloc::vec::Vec;

use crate::eval::{self, Binding, EvalError, ProbeReport};
use crate::matrix::{random_sl2, rank, Matrix, MatrixError};
use crate::ring::{RingDescriptor, RingError, Scalar};
use crate::word::{Word, WordWithConstants};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Sl2Error {
    #[error("lambda must satisfy lambda^2 != 1 (and lambda^4 != 1 where noted)")]
    DegenerateLambda,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{ring} lacks {what}")]
    RingLacksRoots { ring: String, what: String },
    #[error("component expects the word {expected}, got {found}")]
    WordMismatch { expected: String, found: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A point of `SL_2 x SL_2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sl2Pair {
    pub g1: Matrix,
    pub g2: Matrix,
}

impl Sl2Pair {
    pub fn new(ring: &RingDescriptor, g1: Matrix, g2: Matrix) -> Result<Self, Sl2Error> {
        for g in [&g1, &g2] {
            if g.n() != 2 || !g.is_special(ring) {
                return Err(Sl2Error::InvalidParams("pair entries must lie in SL_2".into()));
            }
        }
        Ok(Sl2Pair { g1, g2 })
    }

    pub fn to_vec(&self) -> Vec<Matrix> {
        alloc::vec![self.g1.clone(), self.g2.clone()]
    }
}

pub(crate) fn diag_torus(ring: &RingDescriptor, lambda: &Scalar) -> Result<Matrix, Sl2Error> {
    Ok(Matrix::diag(ring, &[lambda.clone(), ring.inv(lambda)?]))
}

fn check_lambda(ring: &RingDescriptor, lambda: &Scalar) -> Result<(), Sl2Error> {
    if ring.is_zero(lambda) || ring.is_one(&ring.mul(lambda, lambda)) {
        return Err(Sl2Error::DegenerateLambda);
    }
    Ok(())
}

/// `[t, g]` for `t = diag(l, 1/l)` and `g = [[a, b], [c, d]]` of determinant 1:
///
/// ```text
/// [[ad - bc l^2,    ab (l^2 - 1)],
///  [cd (l^-2 - 1),  ad - bc l^-2]]
/// ```
pub fn commutator_closed_form(ring: &RingDescriptor, lambda: &Scalar, g: &Matrix) -> Result<Matrix, Sl2Error> {
    let (a, b, c, d) = (g.get(0, 0), g.get(0, 1), g.get(1, 0), g.get(1, 1));
    let l2 = ring.mul(lambda, lambda);
    let l2inv = ring.inv(&l2)?;
    let ad = ring.mul(a, d);
    let bc = ring.mul(b, c);
    let one = ring.one();
    Ok(Matrix::two_by_two(
        ring.sub(&ad, &ring.mul(&bc, &l2)),
        ring.mul(&ring.mul(a, b), &ring.sub(&l2, &one)),
        ring.mul(&ring.mul(c, d), &ring.sub(&l2inv, &one)),
        ring.sub(&ad, &ring.mul(&bc, &l2inv)),
    ))
}

/// `(p, q)` with `p = (2 - a)/(l - 1/l)^2` and `q = (l^2 + l^-2 - a)/(l - 1/l)^2`,
/// so that `tr [diag(l, 1/l), g] = a` iff `bc = p`, and then `ad = q`.
pub fn preimage_coefficients(ring: &RingDescriptor, a: &Scalar, lambda: &Scalar) -> Result<(Scalar, Scalar), Sl2Error> {
    check_lambda(ring, lambda)?;
    let li = ring.inv(lambda)?;
    let diff = ring.sub(lambda, &li);
    let denom = ring.inv(&ring.mul(&diff, &diff))?;
    let p = ring.mul(&ring.sub(&ring.from_int(2), a), &denom);
    let l2 = ring.add(&ring.mul(lambda, lambda), &ring.mul(&li, &li));
    let q = ring.mul(&ring.sub(&l2, a), &denom);
    Ok((p, q))
}

/// A pair `(t, g)` with `t = diag(l, 1/l)` and `tr [t, g] = a`.
///
/// `g = [[q, b], [p/b, 1]]` when `q != 0`; otherwise `g = [[0, b], [-1/b, 0]]`.
pub fn trace_preimage_commutator(
    ring: &RingDescriptor,
    a: &Scalar,
    lambda: &Scalar,
    beta: &Scalar,
) -> Result<Sl2Pair, Sl2Error> {
    let (p, q) = preimage_coefficients(ring, a, lambda)?;
    if ring.is_zero(beta) {
        return Err(Sl2Error::InvalidParams("beta must be nonzero".into()));
    }
    let binv = ring.inv(beta)?;
    let g = if ring.is_zero(&q) {
        Matrix::two_by_two(ring.zero(), beta.clone(), ring.mul(&p, &binv), ring.zero())
    } else {
        Matrix::two_by_two(q, beta.clone(), ring.mul(&p, &binv), ring.one())
    };
    Ok(Sl2Pair { g1: diag_torus(ring, lambda)?, g2: g })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiberMembership {
    pub in_w: bool,
    pub in_t: bool,
}

/// `in_w`: the word value is `I`; `in_t`: the value is unipotent, which on
/// `SL_2` means trace 2.
pub fn fiber_membership(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    tuple: &[Matrix],
) -> Result<FiberMembership, Sl2Error> {
    let v = eval::eval_group(ring, w, binding, tuple)?;
    Ok(FiberMembership { in_w: v.is_identity(ring), in_t: v.is_unipotent(ring) })
}

/// Which fiber's defining equations to differentiate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equations {
    /// `w11 = 1, w12 = 0, w21 = 0`.
    WFiber,
    /// `tr w = target`.
    TFiber,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetJacobian {
    /// One row per equation, one column per direction `(argument, X)` with
    /// `X` running over `E, F, H`.
    pub rows: Vec<Vec<Scalar>>,
    pub rank: usize,
}

/// Jacobian of the fiber equations of `w` at `point`, along the directions
/// `(I + eps X) g_i`.
pub fn jet_jacobian(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    point: &[Matrix],
    equations: &Equations,
) -> Result<JetJacobian, Sl2Error> {
    let cols = eval::differential_columns(ring, w, binding, point, 2)?;
    let rows: Vec<Vec<Scalar>> = match equations {
        Equations::WFiber => [(0, 0), (0, 1), (1, 0)]
            .iter()
            .map(|&(i, j)| cols.iter().map(|d| d.get(i, j).clone()).collect())
            .collect(),
        Equations::TFiber => alloc::vec![cols.iter().map(|d| d.trace(ring)).collect()],
    };
    let rank = rank(ring, &rows);
    Ok(JetJacobian { rows, rank })
}

/// Derivative of `w` at `point` along `(I + eps X) g_arg`.
pub fn directional_derivative(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    point: &[Matrix],
    arg: usize,
    x: &Matrix,
) -> Result<Matrix, Sl2Error> {
    let dual = crate::jet::dual_of(ring);
    let mut t: Vec<Matrix> = point.iter().map(|g| crate::jet::lift(&dual, g)).collect();
    t[arg] = crate::jet::perturb(ring, &point[arg], x);
    let lifted = binding.map_matrices(|m| crate::jet::lift(&dual, m));
    let v = eval::eval_group(&dual, w, &lifted, &t)?;
    Ok(crate::jet::eps_part(&dual, &v))
}

/// Samples `tr w` with the variable `y_index` pinned to `sigma` and the
/// others drawn from `SL_2`. The word must have zero exponent sum in `y`.
pub fn wsigma_trace_probe<R: rand_core::RngCore + ?Sized>(
    ring: &RingDescriptor,
    w: &Word,
    y_index: usize,
    sigma: &Matrix,
    samples: usize,
    rng: &mut R,
) -> Result<ProbeReport, Sl2Error> {
    if !w.zero_exponent_sum_in(y_index) {
        return Err(Sl2Error::Precondition(alloc::format!(
            "exponent sum of {} in {w} is not zero",
            crate::word::var_name(y_index)
        )));
    }
    let m = w.max_var().max(y_index);
    let wc = WordWithConstants::from(w.clone());
    let binding = Binding::new();
    Ok(eval::value_probe(samples, || {
        let t: Vec<Matrix> = (1..=m)
            .map(|r| if r == y_index { Ok(sigma.clone()) } else { random_sl2(ring, rng) })
            .collect::<Result<_, _>>()?;
        Ok(eval::eval_group(ring, &wc, &binding, &t)?.trace(ring))
    })?)
}
