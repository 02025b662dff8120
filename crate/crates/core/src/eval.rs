//! Evaluation of words with constants on matrix tuples.
//!
//! [`eval_group`] is the literal word map on invertible matrices.
//! [`eval_adjugate_extension`] replaces every negative power `mu^-k` by
//! `(adj mu)^k`, which gives a polynomial map on all of `Ma_n` agreeing with
//! the word map on `SL_n` and differing by the factor
//! `prod det(mu_r)^{b_r}` on `GL_n`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::jet;
use crate::matrix::{rank, Matrix, MatrixError};
use crate::ring::{RingDescriptor, RingError, Scalar};
use crate::word::{Syllable, WordWithConstants};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("matrix for {what} is not invertible")]
    NotInvertible { what: String },
    #[error("constant `{0}` is not bound")]
    UnboundConstant(String),
    #[error("constant `{0}` is central; central constants must be allowed explicitly")]
    CentralConstant(String),
    #[error("expected {expected}x{expected} matrices, found {found}x{found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no matrix supplied for variable x{index}")]
    MissingVariable { index: usize },
    #[error("matrix size cannot be inferred from an empty tuple and binding")]
    UnknownDimension,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Assignment of matrices to constant symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Binding {
    map: BTreeMap<String, Matrix>,
    allow_central: bool,
}

impl Binding {
    pub fn new() -> Self {
        Binding::default()
    }

    /// A binding that accepts scalar matrices as constants.
    pub fn allowing_central() -> Self {
        Binding { map: BTreeMap::new(), allow_central: true }
    }

    pub fn insert(&mut self, ring: &RingDescriptor, name: &str, m: Matrix) -> Result<(), EvalError> {
        if !self.allow_central && m.is_scalar(ring) {
            return Err(EvalError::CentralConstant(name.into()));
        }
        if let Some(other) = self.map.values().next() {
            if other.n() != m.n() {
                return Err(EvalError::DimensionMismatch { expected: other.n(), found: m.n() });
            }
        }
        self.map.insert(name.into(), m);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Matrix> {
        self.map.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Matrix)> {
        self.map.iter()
    }

    pub fn dim(&self) -> Option<usize> {
        self.map.values().next().map(Matrix::n)
    }

    pub fn map_matrices(&self, mut f: impl FnMut(&Matrix) -> Matrix) -> Binding {
        Binding {
            map: self.map.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
            allow_central: self.allow_central,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Group,
    Extension,
}

fn infer_dim(tuple: &[Matrix], binding: &Binding) -> Result<usize, EvalError> {
    tuple.first().map(Matrix::n).or(binding.dim()).ok_or(EvalError::UnknownDimension)
}

fn check_dims(n: usize, w: &WordWithConstants, binding: &Binding, tuple: &[Matrix]) -> Result<(), EvalError> {
    if tuple.len() < w.max_var() {
        return Err(EvalError::MissingVariable { index: tuple.len() + 1 });
    }
    for m in tuple {
        if m.n() != n {
            return Err(EvalError::DimensionMismatch { expected: n, found: m.n() });
        }
    }
    for c in w.constants() {
        let m = binding.get(&c.name).ok_or_else(|| EvalError::UnboundConstant(c.name.clone()))?;
        if m.n() != n {
            return Err(EvalError::DimensionMismatch { expected: n, found: m.n() });
        }
    }
    Ok(())
}

fn evaluate(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    tuple: &[Matrix],
    n: usize,
    mode: Mode,
) -> Result<Matrix, EvalError> {
    check_dims(n, w, binding, tuple)?;
    let invert = |m: &Matrix, what: &dyn Fn() -> String| -> Result<Matrix, EvalError> {
        match mode {
            Mode::Extension => Ok(m.adjugate(ring)),
            Mode::Group => m.inverse(ring).map_err(|e| match e {
                MatrixError::Ring(RingError::NotInvertible) => EvalError::NotInvertible { what: what() },
                e => e.into(),
            }),
        }
    };
    // inverses are computed once per variable
    let mut inverses: BTreeMap<usize, Matrix> = BTreeMap::new();
    let mut acc = Matrix::identity(ring, n);
    for s in w.syllables() {
        let factor = match s {
            Syllable::Var(l) => {
                let mu = &tuple[l.var - 1];
                if l.exp > 0 {
                    mu.pow(ring, l.exp as u64)
                } else {
                    let inv = match inverses.get(&l.var) {
                        Some(inv) => inv.clone(),
                        None => {
                            let inv = invert(mu, &|| alloc::format!("x{}", l.var))?;
                            inverses.insert(l.var, inv.clone());
                            inv
                        }
                    };
                    inv.pow(ring, l.exp.unsigned_abs())
                }
            }
            Syllable::Const(c) => {
                let sigma = binding.get(&c.name).expect("checked above");
                if c.inverted {
                    invert(sigma, &|| c.name.clone())?
                } else {
                    sigma.clone()
                }
            }
        };
        acc = acc.mul(ring, &factor);
    }
    Ok(acc)
}

/// The word map: substitutes `tuple[r-1]` for `x_r` and bound matrices for
/// constants, using true inverses.
pub fn eval_group(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    tuple: &[Matrix],
) -> Result<Matrix, EvalError> {
    let n = infer_dim(tuple, binding)?;
    evaluate(ring, w, binding, tuple, n, Mode::Group)
}

/// Like [`eval_group`] but with the matrix size given, so the empty word
/// on an empty tuple is `I_n`.
pub fn eval_group_n(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    tuple: &[Matrix],
    n: usize,
) -> Result<Matrix, EvalError> {
    evaluate(ring, w, binding, tuple, n, Mode::Group)
}

/// The adjugate extension; defined on singular matrices too.
pub fn eval_adjugate_extension(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    tuple: &[Matrix],
) -> Result<Matrix, EvalError> {
    let n = infer_dim(tuple, binding)?;
    evaluate(ring, w, binding, tuple, n, Mode::Extension)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalReport {
    pub value: Matrix,
    pub ring: RingDescriptor,
    pub word_length: usize,
}

pub fn eval_report(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    tuple: &[Matrix],
) -> Result<EvalReport, EvalError> {
    Ok(EvalReport { value: eval_group(ring, w, binding, tuple)?, ring: ring.clone(), word_length: w.len() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionReport {
    pub delta: Scalar,
    pub extension: Matrix,
    pub group: Matrix,
    /// `extension == delta * group`.
    pub holds: bool,
}

/// `Delta = prod_r det(mu_r)^{b_r}`. Inverted constants contribute their
/// determinant as well, which is 1 for constants in `SL_n`.
pub fn restriction_delta(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    tuple: &[Matrix],
) -> Result<Scalar, EvalError> {
    let mut delta = ring.one();
    for s in w.syllables() {
        let (m, k) = match s {
            Syllable::Var(l) if l.exp < 0 => {
                (tuple.get(l.var - 1).ok_or(EvalError::MissingVariable { index: l.var })?, l.exp.unsigned_abs())
            }
            Syllable::Const(c) if c.inverted => {
                (binding.get(&c.name).ok_or_else(|| EvalError::UnboundConstant(c.name.clone()))?, 1)
            }
            _ => continue,
        };
        delta = ring.mul(&delta, &ring.pow(&m.det(ring), k));
    }
    Ok(delta)
}

/// Compares the extension with [`restriction_delta`] times the word map.
pub fn check_restriction_identities(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    tuple: &[Matrix],
) -> Result<RestrictionReport, EvalError> {
    let group = eval_group(ring, w, binding, tuple)?;
    let extension = eval_adjugate_extension(ring, w, binding, tuple)?;
    let delta = restriction_delta(ring, w, binding, tuple)?;
    let holds = extension == group.scale(ring, &delta);
    Ok(RestrictionReport { delta, extension, group, holds })
}

/// Checks `w~(.., c mu_r, ..) = c^{d_r} w~(..)` with `d_r` taken from the
/// exponent data of `w`.
pub fn homogeneity_check(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    tuple: &[Matrix],
    r: usize,
    c: &Scalar,
) -> Result<bool, EvalError> {
    let n = infer_dim(tuple, binding)?;
    let base = eval_adjugate_extension(ring, w, binding, tuple)?;
    let d = w.exponent_data(n).degrees.get(r - 1).copied().unwrap_or(0);
    let mut scaled = tuple.to_vec();
    if r > scaled.len() {
        return Err(EvalError::MissingVariable { index: r });
    }
    scaled[r - 1] = scaled[r - 1].scale(ring, c);
    let lhs = eval_adjugate_extension(ring, w, binding, &scaled)?;
    Ok(lhs == base.scale(ring, &ring.pow(c, d)))
}

pub const PROBE_VALUE_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ConstantSoFar,
    TakesManyValues,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    /// Distinct observed values, at most [`PROBE_VALUE_CAP`] of them.
    pub values: BTreeSet<Scalar>,
    /// Set when more distinct values were seen than are kept.
    pub truncated: bool,
    pub samples: usize,
    pub verdict: Verdict,
}

/// Draws `samples` values from `f` and reports whether more than one was seen.
pub fn value_probe(
    samples: usize,
    mut f: impl FnMut() -> Result<Scalar, EvalError>,
) -> Result<ProbeReport, EvalError> {
    let mut values = BTreeSet::new();
    let mut truncated = false;
    for _ in 0..samples {
        let v = f()?;
        if values.len() < PROBE_VALUE_CAP {
            values.insert(v);
        } else if !values.contains(&v) {
            truncated = true;
        }
    }
    let verdict = if values.len() > 1 { Verdict::TakesManyValues } else { Verdict::ConstantSoFar };
    Ok(ProbeReport { values, truncated, samples, verdict })
}

/// Samples `chi_i` of the word value with tuples drawn by `sampler`.
pub fn chi_probe_with(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    i: usize,
    n: usize,
    samples: usize,
    mut sampler: impl FnMut() -> Result<Vec<Matrix>, EvalError>,
) -> Result<ProbeReport, EvalError> {
    assert!((1..=n).contains(&i), "coefficient index out of range");
    value_probe(samples, || {
        let t = sampler()?;
        let v = eval_group_n(ring, w, binding, &t, n)?;
        Ok(v.charpoly(ring).get(i).clone())
    })
}

/// [`chi_probe_with`] with i.i.d. uniform-ish `SL_n` samples per variable.
pub fn chi_probe<R: rand_core::RngCore + ?Sized>(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    i: usize,
    n: usize,
    samples: usize,
    rng: &mut R,
) -> Result<ProbeReport, EvalError> {
    let m = w.max_var();
    chi_probe_with(ring, w, binding, i, n, samples, || {
        (0..m).map(|_| crate::matrix::random_sln(ring, n, rng).map_err(EvalError::from)).collect()
    })
}

/// Rank of the differential of the word map at `point`, read in the chart
/// `D -> D w(p)^-1` of the tangent space at `w(p)`. The coordinates are all
/// entries but the last diagonal one, so the rank is at most `n^2 - 1`.
pub fn dominance_probe(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    point: &[Matrix],
) -> Result<usize, EvalError> {
    let n = infer_dim(point, binding)?;
    let value = evaluate(ring, w, binding, point, n, Mode::Group)?;
    let value_inv = value.inverse(ring)?;
    let columns = differential_columns(ring, w, binding, point, n)?;
    let rows: Vec<Vec<Scalar>> = (0..n * n - 1)
        .map(|k| {
            columns
                .iter()
                .map(|d| d.mul(ring, &value_inv).get(k / n, k % n).clone())
                .collect()
        })
        .collect();
    Ok(rank(ring, &rows))
}

/// Directional derivatives of the word map at `point` along
/// `(I + eps X) g_i`, ordered by argument then by [`jet::sl_basis`].
pub fn differential_columns(
    ring: &RingDescriptor,
    w: &WordWithConstants,
    binding: &Binding,
    point: &[Matrix],
    n: usize,
) -> Result<Vec<Matrix>, EvalError> {
    let dual = jet::dual_of(ring);
    let lifted: Vec<Matrix> = point.iter().map(|g| jet::lift(&dual, g)).collect();
    let lifted_binding = binding.map_matrices(|m| jet::lift(&dual, m));
    let mut out = Vec::new();
    for i in 0..w.max_var().min(point.len()) {
        for x in jet::sl_basis(ring, n) {
            let mut t = lifted.clone();
            t[i] = jet::perturb(ring, &point[i], &x);
            let v = evaluate(&dual, w, &lifted_binding, &t, n, Mode::Group)?;
            out.push(jet::eps_part(&dual, &v));
        }
    }
    Ok(out)
}
