//! Explicit computations for `w = [[x, y], x [x, y] x^-1]`.

use super::{diag_torus, Sl2Error};
use crate::eval::{eval_group, Binding};
use crate::matrix::Matrix;
use crate::ring::{RingDescriptor, Scalar};
use crate::sl2::catalogue::CatalogueWord;
use crate::word::WordWithConstants;

fn ex5() -> WordWithConstants {
    CatalogueWord::Ex5.word().into()
}

fn unipotent(ring: &RingDescriptor, u: &Scalar) -> Matrix {
    Matrix::two_by_two(ring.one(), u.clone(), ring.zero(), ring.one())
}

/// `[[0, 1], [-1, 0]]`.
pub fn weyl_element(ring: &RingDescriptor) -> Matrix {
    Matrix::two_by_two(ring.zero(), ring.one(), ring.from_int(-1), ring.zero())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma78Report {
    pub value: Matrix,
    /// The value is lower unitriangular.
    pub in_u_minus: bool,
    /// `value = I` exactly when `u = 0`.
    pub trivial_iff_unit: bool,
}

impl Lemma78Report {
    pub fn holds(&self) -> bool {
        self.in_u_minus && self.trivial_iff_unit
    }
}

/// Evaluates `w(s, h)` at `s = diag(l, 1/l)`, `h = w0 [[1, u], [0, 1]]`.
pub fn lemma78_check(ring: &RingDescriptor, lambda: &Scalar, u: &Scalar) -> Result<Lemma78Report, Sl2Error> {
    if ring.is_zero(lambda) || ring.is_one(&ring.pow(lambda, 4)) {
        return Err(Sl2Error::DegenerateLambda);
    }
    let s = diag_torus(ring, lambda)?;
    let h = weyl_element(ring).mul(ring, &unipotent(ring, u));
    let value = eval_group(ring, &ex5(), &Binding::new(), &[s, h])?;
    let in_u_minus = ring.is_one(value.get(0, 0)) && ring.is_one(value.get(1, 1)) && ring.is_zero(value.get(0, 1));
    let trivial_iff_unit = value.is_identity(ring) == ring.is_zero(u);
    Ok(Lemma78Report { value, in_u_minus, trivial_iff_unit })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma101Report {
    /// `[u, g]`.
    pub z: Matrix,
    /// `z u z u^-1`.
    pub intermediate: Matrix,
    /// `w(u, g)`.
    pub value: Matrix,
    pub trace: Scalar,
    pub z_matches: bool,
    pub intermediate_matches: bool,
    /// `w(u, g)` equals the square of the intermediate matrix.
    pub value_is_square: bool,
    pub trace_is_34: bool,
    pub trace_not_two: bool,
}

impl Lemma101Report {
    pub fn holds(&self) -> bool {
        self.z_matches && self.intermediate_matches && self.value_is_square && self.trace_is_34 && self.trace_not_two
    }
}

/// With `u = [[1,1],[0,1]]` and `g = [[i r/2, -i r/2], [-i r, 0]]`
/// (`r = sqrt 2`): `[u, g] = [[0, 1/2], [-2, 0]]`, `z u z u^-1 =
/// [[-1, 1], [4, -5]]` and `w(u, g)` is its square, of trace 34.
pub fn lemma101_check(ring: &RingDescriptor) -> Result<Lemma101Report, Sl2Error> {
    let lacks = |what: &str| Sl2Error::RingLacksRoots { ring: alloc::format!("{ring}"), what: what.into() };
    let i = ring.sqrt_minus_one().ok_or_else(|| lacks("a square root of -1"))?;
    let r = ring.sqrt(&ring.from_int(2)).ok_or_else(|| lacks("a square root of 2"))?;
    let ir = ring.mul(&i, &r);
    let half = ring.inv(&ring.from_int(2))?;
    let ir2 = ring.mul(&ir, &half);
    let g = Matrix::two_by_two(ir2.clone(), ring.neg(&ir2), ring.neg(&ir), ring.zero());
    let u = unipotent(ring, &ring.one());
    let u_inv = u.inverse(ring)?;
    let z = u.mul(ring, &g).mul(ring, &u_inv).mul(ring, &g.inverse(ring)?);
    let intermediate = z.mul(ring, &u).mul(ring, &z).mul(ring, &u_inv);
    let value = eval_group(ring, &ex5(), &Binding::new(), &[u, g])?;
    let trace = value.trace(ring);
    let int = |k| ring.from_int(k);
    Ok(Lemma101Report {
        z_matches: z == Matrix::two_by_two(int(0), half, int(-2), int(0)),
        intermediate_matches: intermediate == Matrix::two_by_two(int(-1), int(1), int(4), int(-5)),
        value_is_square: value == intermediate.mul(ring, &intermediate),
        trace_is_34: trace == int(34),
        trace_not_two: trace != int(2),
        z,
        intermediate,
        value,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma78_over_q_and_f13() {
        let q = RingDescriptor::rationals();
        let r = lemma78_check(&q, &q.from_int(2), &q.zero()).unwrap();
        assert!(r.value.is_identity(&q) && r.holds());
        let r = lemma78_check(&q, &q.from_int(2), &q.one()).unwrap();
        assert!(!r.value.is_identity(&q) && r.holds());
        let f = RingDescriptor::prime_field(13).unwrap();
        for u in f.elements().unwrap() {
            let r = lemma78_check(&f, &f.from_int(2), &u).unwrap();
            assert!(r.holds());
        }
        assert!(matches!(lemma78_check(&f, &f.from_int(5), &f.one()), Err(Sl2Error::DegenerateLambda)));
    }

    #[test]
    fn lemma101_over_f17() {
        let f = RingDescriptor::prime_field(17).unwrap();
        let r = lemma101_check(&f).unwrap();
        assert!(r.holds(), "{r:?}");
        // tr M^2 = tr(M)^2 - 2 det M = 36 - 2
        let m = &r.intermediate;
        let expect = f.sub(&f.mul(&m.trace(&f), &m.trace(&f)), &f.mul(&f.from_int(2), &m.det(&f)));
        assert_eq!(r.trace, expect);
        assert!(matches!(lemma101_check(&RingDescriptor::prime_field(13).unwrap()), Err(Sl2Error::RingLacksRoots { .. })));
    }
}
