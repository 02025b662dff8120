//! Dense square matrices over a [`RingDescriptor`].

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_core::RngCore;

use crate::ring::{RingDescriptor, RingError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("rows do not form a non-empty square array")]
    NotSquare,
    #[error("dimension mismatch: expected {expected}x{expected}, found {found}x{found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// An `n x n` matrix stored row-major. All entries belong to one ring,
/// which is passed explicitly to every arithmetic method.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: usize,
    entries: Vec<Scalar>,
}

/// Characteristic polynomial coefficients `chi[0..n]`, stored as the
/// elementary symmetric functions of the eigenvalues: `chi[0]` is the
/// trace and `chi[n-1]` the determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPolyCoeffs {
    pub chi: Vec<Scalar>,
}

impl CharPolyCoeffs {
    /// `chi_i`, 1-based.
    pub fn get(&self, i: usize) -> &Scalar {
        &self.chi[i - 1]
    }
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::NotSquare);
        }
        Ok(Matrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        assert!(n >= 1);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Matrix { n, entries }
    }

    /// 2x2 matrix from row-major entries.
    pub fn two_by_two(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        Matrix { n: 2, entries: vec![a, b, c, d] }
    }

    pub fn identity(ring: &RingDescriptor, n: usize) -> Self {
        Self::scalar(ring, n, ring.one())
    }

    pub fn zero(ring: &RingDescriptor, n: usize) -> Self {
        Matrix::from_fn(n, |_, _| ring.zero())
    }

    pub fn scalar(ring: &RingDescriptor, n: usize, c: Scalar) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { c.clone() } else { ring.zero() })
    }

    pub fn diag(ring: &RingDescriptor, d: &[Scalar]) -> Self {
        Matrix::from_fn(d.len(), |i, j| if i == j { d[i].clone() } else { ring.zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn belongs_to(&self, ring: &RingDescriptor) -> bool {
        self.entries.iter().all(|a| ring.contains(a))
    }

    /// Entry-wise image under `f`, e.g. a ring embedding.
    pub fn map(&self, f: impl FnMut(&Scalar) -> Scalar) -> Matrix {
        Matrix { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, ring: &RingDescriptor, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| ring.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, ring: &RingDescriptor, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| ring.sub(a, b)).collect(),
        }
    }

    pub fn neg(&self, ring: &RingDescriptor) -> Matrix {
        self.map(|a| ring.neg(a))
    }

    pub fn scale(&self, ring: &RingDescriptor, c: &Scalar) -> Matrix {
        self.map(|a| ring.mul(c, a))
    }

    pub fn mul(&self, ring: &RingDescriptor, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        Matrix::from_fn(n, |i, j| {
            let mut acc = ring.mul(self.get(i, 0), other.get(0, j));
            for k in 1..n {
                acc = ring.add(&acc, &ring.mul(self.get(i, k), other.get(k, j)));
            }
            acc
        })
    }

    pub fn pow(&self, ring: &RingDescriptor, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(ring, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base);
            }
        }
        acc
    }

    pub fn trace(&self, ring: &RingDescriptor) -> Scalar {
        (1..self.n).fold(self.get(0, 0).clone(), |acc, i| ring.add(&acc, self.get(i, i)))
    }

    /// Exact determinant: cofactor expansion up to 3x3, fraction-free
    /// (Bareiss) elimination over `Q`, Gaussian elimination over other
    /// fields, and the division-free Berkowitz recurrence over dual numbers.
    pub fn det(&self, ring: &RingDescriptor) -> Scalar {
        let g = |i, j| self.get(i, j);
        match self.n {
            1 => g(0, 0).clone(),
            2 => ring.sub(&ring.mul(g(0, 0), g(1, 1)), &ring.mul(g(0, 1), g(1, 0))),
            3 => {
                let minor = |a: usize, b: usize, c: usize, d: usize| {
                    ring.sub(&ring.mul(g(1, a), g(2, b)), &ring.mul(g(1, c), g(2, d)))
                };
                let t0 = ring.mul(g(0, 0), &minor(1, 2, 2, 1));
                let t1 = ring.mul(g(0, 1), &minor(0, 2, 2, 0));
                let t2 = ring.mul(g(0, 2), &minor(0, 1, 1, 0));
                ring.add(&ring.sub(&t0, &t1), &t2)
            }
            _ => match ring {
                RingDescriptor::Rationals => self.det_bareiss_rational(),
                _ if ring.is_field() => self.det_gauss(ring),
                _ => self.charpoly(ring).chi.pop().expect("n >= 1"),
            },
        }
    }

    fn det_bareiss_rational(&self) -> Scalar {
        let n = self.n;
        // Clear denominators row by row, run integer Bareiss, rescale.
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for row in self.rows() {
            let q: Vec<&BigRational> = row
                .iter()
                .map(|a| match a {
                    Scalar::Rational(q) => q,
                    _ => panic!("non-rational entry"),
                })
                .collect();
            let l = q.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            m.push(q.iter().map(|x| x.numer() * (&l / x.denom())).collect());
            scale *= l;
        }
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Scalar::Rational(BigRational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        let d = if negate { -d } else { d };
        Scalar::Rational(BigRational::new(d, scale))
    }

    fn det_gauss(&self, ring: &RingDescriptor) -> Scalar {
        let n = self.n;
        let mut m = self.rows();
        let mut det = ring.one();
        for k in 0..n {
            let Some(r) = (k..n).find(|&r| !ring.is_zero(&m[r][k])) else {
                return ring.zero();
            };
            if r != k {
                m.swap(k, r);
                det = ring.neg(&det);
            }
            let pivot = m[k][k].clone();
            det = ring.mul(&det, &pivot);
            let p_inv = ring.inv(&pivot).expect("nonzero pivot in a field");
            for i in k + 1..n {
                if ring.is_zero(&m[i][k]) {
                    continue;
                }
                let f = ring.mul(&m[i][k], &p_inv);
                let pivot_row = m[k].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row).skip(k) {
                    *x = ring.sub(x, &ring.mul(&f, p));
                }
            }
        }
        det
    }

    /// Characteristic polynomial coefficients via the Berkowitz recurrence,
    /// valid over any commutative ring.
    pub fn charpoly(&self, ring: &RingDescriptor) -> CharPolyCoeffs {
        let n = self.n;
        // p holds det(lambda I - A_r) from the leading coefficient down.
        let mut p = vec![ring.one()];
        for r in 0..n {
            // A_r = [[A_{r-1}, S], [R, a_rr]]
            let a_rr = self.get(r, r).clone();
            let mut col = vec![ring.one(), ring.neg(&a_rr)];
            // v = A_{r-1}^k S, starting with S
            let mut v: Vec<Scalar> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let rs = (0..r).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(self.get(r, j), &v[j])));
                col.push(ring.neg(&rs));
                v = (0..r)
                    .map(|i| (0..r).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(self.get(i, j), &v[j]))))
                    .collect();
            }
            // lower-triangular Toeplitz product: (r+2) x (r+1)
            let next: Vec<Scalar> = (0..r + 2)
                .map(|i| {
                    (0..=r.min(i)).fold(ring.zero(), |acc, j| {
                        if i - j < col.len() && j < p.len() {
                            ring.add(&acc, &ring.mul(&col[i - j], &p[j]))
                        } else {
                            acc
                        }
                    })
                })
                .collect();
            p = next;
        }
        let chi = (1..=n)
            .map(|i| if i % 2 == 0 { p[i].clone() } else { ring.neg(&p[i]) })
            .collect();
        CharPolyCoeffs { chi }
    }

    /// The adjugate `M*` with `M M* = M* M = det(M) I`. For `n >= 3` it is
    /// computed from Cayley-Hamilton, so it is a polynomial in the entries
    /// and valid for singular `M` and over rings with zero divisors.
    pub fn adjugate(&self, ring: &RingDescriptor) -> Matrix {
        let n = self.n;
        match n {
            1 => Matrix::identity(ring, 1),
            2 => Matrix::two_by_two(
                self.get(1, 1).clone(),
                ring.neg(self.get(0, 1)),
                ring.neg(self.get(1, 0)),
                self.get(0, 0).clone(),
            ),
            _ => {
                // det(lambda I - M) = lambda^n + c_1 lambda^{n-1} + ... + c_n, c_i = (-1)^i chi_i
                // adj(M) = (-1)^{n-1} (M^{n-1} + c_1 M^{n-2} + ... + c_{n-1} I)
                let chi = self.charpoly(ring).chi;
                let c = |i: usize| if i.is_multiple_of(2) { chi[i - 1].clone() } else { ring.neg(&chi[i - 1]) };
                let mut acc = Matrix::identity(ring, n);
                for i in 1..n {
                    acc = acc.mul(ring, self).add(ring, &Matrix::scalar(ring, n, c(i)));
                }
                if (n - 1) % 2 == 1 {
                    acc.neg(ring)
                } else {
                    acc
                }
            }
        }
    }

    /// True inverse, `det^-1 * adjugate`.
    pub fn inverse(&self, ring: &RingDescriptor) -> Result<Matrix, MatrixError> {
        let d_inv = ring.inv(&self.det(ring))?;
        Ok(self.adjugate(ring).scale(ring, &d_inv))
    }

    pub fn is_identity(&self, ring: &RingDescriptor) -> bool {
        *self == Matrix::identity(ring, self.n)
    }

    /// Scalar matrix, i.e. central in `GL_n`.
    pub fn is_scalar(&self, ring: &RingDescriptor) -> bool {
        *self == Matrix::scalar(ring, self.n, self.get(0, 0).clone())
    }

    pub fn is_special(&self, ring: &RingDescriptor) -> bool {
        ring.is_one(&self.det(ring))
    }

    /// `(M - I)^n = 0`.
    pub fn is_unipotent(&self, ring: &RingDescriptor) -> bool {
        let n = self.n;
        let nil = self.sub(ring, &Matrix::identity(ring, n));
        nil.pow(ring, n as u64) == Matrix::zero(ring, n)
    }

    /// `M = +-I` in `SL_2`.
    pub fn is_central_sl2(&self, ring: &RingDescriptor) -> bool {
        self.n == 2 && (self.is_identity(ring) || self.neg(ring).is_identity(ring))
    }
}

/// Rank of a rectangular array of field elements.
pub fn rank(ring: &RingDescriptor, rows: &[Vec<Scalar>]) -> usize {
    assert!(ring.is_field(), "rank is computed over a field");
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..m.len()).find(|&r| !ring.is_zero(&m[r][c])) else {
            continue;
        };
        m.swap(rank, r);
        let p_inv = ring.inv(&m[rank][c]).expect("nonzero pivot");
        for i in 0..m.len() {
            if i == rank || ring.is_zero(&m[i][c]) {
                continue;
            }
            let f = ring.mul(&m[i][c], &p_inv);
            let pivot_row = m[rank].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot_row).skip(c) {
                *x = ring.sub(x, &ring.mul(&f, p));
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

pub fn random_matrix<R: RngCore + ?Sized>(ring: &RingDescriptor, n: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(n, |_, _| ring.random(rng))
}

/// Random element of `SL_2`: `a, b, c` free with `a != 0`, `d = (1 + bc)/a`.
pub fn random_sl2<R: RngCore + ?Sized>(ring: &RingDescriptor, rng: &mut R) -> Result<Matrix, MatrixError> {
    if !ring.is_field() {
        return Err(RingError::NotAField(alloc::format!("{ring}")).into());
    }
    let a = loop {
        let a = ring.random(rng);
        if !ring.is_zero(&a) {
            break a;
        }
    };
    let b = ring.random(rng);
    let c = ring.random(rng);
    let d = ring.div(&ring.add(&ring.one(), &ring.mul(&b, &c)), &a)?;
    Ok(Matrix::two_by_two(a, b, c, d))
}

/// Random element of `SL_n`; for `n = 2` identical to [`random_sl2`].
pub fn random_sln<R: RngCore + ?Sized>(ring: &RingDescriptor, n: usize, rng: &mut R) -> Result<Matrix, MatrixError> {
    if n == 2 {
        return random_sl2(ring, rng);
    }
    if !ring.is_field() {
        return Err(RingError::NotAField(alloc::format!("{ring}")).into());
    }
    loop {
        let mut m = random_matrix(ring, n, rng);
        let Ok(d_inv) = ring.inv(&m.det(ring)) else { continue };
        for j in 0..n {
            let v = ring.mul(&d_inv, m.get(0, j));
            m.set(0, j, v);
        }
        return Ok(m);
    }
}
