//! Catalogue of example words, their components and dimension certificates.
//!
//! Each component comes with an explicit parametrization by scalars and
//! conjugators. The rank of its differential at a parameter point bounds the
//! component dimension from below; `6 - rank` of the fiber-equation Jacobian
//! at the image point bounds it from above. When both meet the claimed
//! dimension the certificate is confirmed.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand_core::RngCore;

use super::{diag_torus, jet_jacobian, preimage_coefficients, Equations, Sl2Error, Sl2Pair};
use crate::eval::{eval_group, Binding};
use crate::jet;
use crate::matrix::{random_sl2, rank, Matrix};
use crate::ring::{RingDescriptor, Scalar};
use crate::word::{Letter, Word, WordWithConstants};

/// The example words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogueWord {
    /// `[x, y]`
    Ex1,
    /// `[x^m, y^n]`
    Ex2 { m: u32, n: u32 },
    /// `[x, y]^2`
    Ex3,
    /// `[x, y]^p`, `p` an odd prime
    Ex4 { p: u32 },
    /// `[[x, y], x [x, y] x^-1]`
    Ex5,
}

fn commutator_xy() -> Word {
    Word::commutator(&Word::var(1), &Word::var(2))
}

impl CatalogueWord {
    pub fn word(&self) -> Word {
        match *self {
            CatalogueWord::Ex1 => commutator_xy(),
            CatalogueWord::Ex2 { m, n } => Word::commutator(&Word::var(1).power(m as i64), &Word::var(2).power(n as i64)),
            CatalogueWord::Ex3 => commutator_xy().power(2),
            CatalogueWord::Ex4 { p } => commutator_xy().power(p as i64),
            CatalogueWord::Ex5 => {
                let c = commutator_xy();
                let x = Word::var(1);
                Word::commutator(&c, &x.concat(&c).concat(&x.inverse()))
            }
        }
    }

    /// Recognizes a catalogue word by its reduced letters.
    pub fn recognize(w: &Word) -> Option<CatalogueWord> {
        for c in [CatalogueWord::Ex1, CatalogueWord::Ex3, CatalogueWord::Ex5] {
            if c.word() == *w {
                return Some(c);
            }
        }
        if let [a, b, c, d] = w.letters() {
            if a.var == 1 && b.var == 2 && a.exp > 0 && b.exp > 0 && c == &Letter::new(1, -a.exp) && d == &Letter::new(2, -b.exp) {
                return Some(CatalogueWord::Ex2 { m: a.exp as u32, n: b.exp as u32 });
            }
        }
        let k = w.len() / 4;
        if k >= 3 && k % 2 == 1 && crate::ring::is_prime(k as u64) && commutator_xy().power(k as i64) == *w {
            return Some(CatalogueWord::Ex4 { p: k as u32 });
        }
        None
    }
}

impl fmt::Display for CatalogueWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogueWord::Ex1 => write!(f, "ex1"),
            CatalogueWord::Ex2 { m, n } => write!(f, "ex2(m={m},n={n})"),
            CatalogueWord::Ex3 => write!(f, "ex3"),
            CatalogueWord::Ex4 { p } => write!(f, "ex4(p={p})"),
            CatalogueWord::Ex5 => write!(f, "ex5"),
        }
    }
}

/// A point with `tr w = 2` and `w != I`, or `None` if none of
/// `lambda = 2, 3, ..., 41` works in this ring.
///
/// Examples 1 to 4 use `(diag(l, 1/l), [[1,1],[0,1]])`; example 5 uses
/// `(diag(l, 1/l), w0 [[1,1],[0,1]])` with `w0 = [[0,1],[-1,0]]`.
pub fn separation_witness(ring: &RingDescriptor, word: CatalogueWord) -> Result<Option<Sl2Pair>, Sl2Error> {
    let w = WordWithConstants::from(word.word());
    let one = ring.one();
    let zero = ring.zero();
    let u = Matrix::two_by_two(one.clone(), one.clone(), zero.clone(), one.clone());
    let w0 = Matrix::two_by_two(zero.clone(), one.clone(), ring.neg(&one), zero);
    let second = match word {
        CatalogueWord::Ex5 => w0.mul(ring, &u),
        _ => u,
    };
    for l in 2..=41 {
        let lambda = ring.from_int(l);
        let Ok(t) = diag_torus(ring, &lambda) else { continue };
        let point = vec![t.clone(), second.clone()];
        let v = eval_group(ring, &w, &Binding::new(), &point)?;
        if v.trace(ring) == ring.from_int(2) && !v.is_identity(ring) {
            return Ok(Some(Sl2Pair { g1: t, g2: second }));
        }
    }
    Ok(None)
}

/// Which factor of `[x^m, y^n]` is pinned to a torsion class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    X,
    Y,
}

/// The catalogued components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ComponentId {
    /// `closure of g (T x T) g^-1` in `W_[x,y]`.
    Ex1W,
    /// `closure of g (B x B) g^-1` in `T_[x,y]`.
    Ex1T,
    /// `C_j x G` (or `G x C_j`) in `W_[x^m,y^n]`, `j > 2` dividing `2m` (or `2n`).
    Ex2W { m: u32, n: u32, j: u32, side: Side },
    /// The quaternion family `g (diag(i,-i), [[0,mu],[-1/mu,0]]) g^-1`.
    Ex3W1,
    /// `tr [x, y] = z^j + z^-j` for a primitive `p`-th root `z`, inside `W_[x,y]^p`.
    Ex4T { p: u32, j: u32 },
    /// `tr [x, y] = a`.
    Sa { a: i64 },
    /// `closure of g (T x w0 T) g^-1`.
    Ex5W1,
    /// `closure of g (T x w0 B) g^-1`.
    Ex5T1,
    /// `C_w0 x G`.
    Ex5T2,
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentId::Ex1W => write!(f, "ex1.W"),
            ComponentId::Ex1T => write!(f, "ex1.T"),
            ComponentId::Ex2W { m, n, j, side } => {
                let s = match side {
                    Side::X => "x",
                    Side::Y => "y",
                };
                write!(f, "ex2.W{j}{s}(m={m},n={n})")
            }
            ComponentId::Ex3W1 => write!(f, "ex3.W1"),
            ComponentId::Ex4T { p, j } => write!(f, "ex4.T{j}(p={p})"),
            ComponentId::Sa { a } => write!(f, "sa(a={a})"),
            ComponentId::Ex5W1 => write!(f, "ex5.W1"),
            ComponentId::Ex5T1 => write!(f, "ex5.T1"),
            ComponentId::Ex5T2 => write!(f, "ex5.T2"),
        }
    }
}

impl FromStr for ComponentId {
    type Err = Sl2Error;

    /// Accepts `ex1.W`, `ex1.T`, `ex2.W<j>[x|y]`, `ex3.W1`, `ex4.T<j>`, `sa`,
    /// `ex5.W1`, `ex5.T1`, `ex5.T2` (case-insensitive). Example 2 defaults to
    /// `m = 2, n = 1`, example 4 to `p = 5`, `sa` to `a = -1`; use
    /// [`ComponentId::with_params`] to override. Parameter constraints are
    /// checked by [`ComponentId::validate`] when the component is used.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let bad = || Sl2Error::InvalidParams(format!("unknown component `{s}`"));
        let id = match lower.as_str() {
            "ex1.w" => ComponentId::Ex1W,
            "ex1.t" => ComponentId::Ex1T,
            "ex3.w1" => ComponentId::Ex3W1,
            "sa" => ComponentId::Sa { a: -1 },
            "ex5.w1" => ComponentId::Ex5W1,
            "ex5.t1" => ComponentId::Ex5T1,
            "ex5.t2" => ComponentId::Ex5T2,
            other => {
                if let Some(rest) = other.strip_prefix("ex2.w") {
                    let (digits, side) = match rest.strip_suffix('y') {
                        Some(d) => (d, Some(Side::Y)),
                        None => (rest.strip_suffix('x').unwrap_or(rest), None),
                    };
                    let j: u32 = digits.parse().map_err(|_| bad())?;
                    let side = side.unwrap_or(Side::X);
                    ComponentId::Ex2W { m: 2, n: 1, j, side }
                } else if let Some(rest) = other.strip_prefix("ex4.t") {
                    let j: u32 = rest.parse().map_err(|_| bad())?;
                    ComponentId::Ex4T { p: 5, j }
                } else {
                    return Err(bad());
                }
            }
        };
        Ok(id)
    }
}

impl ComponentId {
    /// Replaces the integer parameters `m`, `n` (example 2), `p` (example 4)
    /// and `a` (`sa`) where given.
    pub fn with_params(self, m: Option<u32>, n: Option<u32>, p: Option<u32>, a: Option<i64>) -> Result<Self, Sl2Error> {
        let id = match self {
            ComponentId::Ex2W { m: m0, n: n0, j, side } => {
                ComponentId::Ex2W { m: m.unwrap_or(m0), n: n.unwrap_or(n0), j, side }
            }
            ComponentId::Ex4T { p: p0, j } => ComponentId::Ex4T { p: p.unwrap_or(p0), j },
            ComponentId::Sa { a: a0 } => ComponentId::Sa { a: a.unwrap_or(a0) },
            other => other,
        };
        id.validate()?;
        Ok(id)
    }

    pub fn validate(&self) -> Result<(), Sl2Error> {
        match *self {
            ComponentId::Ex2W { m, n, j, side } => {
                let k = if side == Side::X { m } else { n };
                if m == 0 || n == 0 || j <= 2 || (2 * k) % j != 0 {
                    return Err(Sl2Error::InvalidParams(format!("need j > 2 dividing 2*{k}")));
                }
            }
            ComponentId::Ex4T { p, j } => {
                if p < 3 || !crate::ring::is_prime(p as u64) || j == 0 || j > (p - 1) / 2 {
                    return Err(Sl2Error::InvalidParams("need an odd prime p and 1 <= j <= (p-1)/2".into()));
                }
            }
            ComponentId::Sa { a: 2 } => {
                return Err(Sl2Error::InvalidParams("sa needs a != 2; the trace-2 case is ex1.T".into()));
            }
            _ => {}
        }
        Ok(())
    }

    /// All nine component kinds with default parameters.
    pub fn all() -> Vec<ComponentId> {
        vec![
            ComponentId::Ex1W,
            ComponentId::Ex1T,
            ComponentId::Ex2W { m: 2, n: 1, j: 4, side: Side::X },
            ComponentId::Ex3W1,
            ComponentId::Ex4T { p: 5, j: 1 },
            ComponentId::Sa { a: -1 },
            ComponentId::Ex5W1,
            ComponentId::Ex5T1,
            ComponentId::Ex5T2,
        ]
    }

    pub fn catalogue_word(&self) -> CatalogueWord {
        match *self {
            ComponentId::Ex1W | ComponentId::Ex1T | ComponentId::Sa { .. } => CatalogueWord::Ex1,
            ComponentId::Ex2W { m, n, .. } => CatalogueWord::Ex2 { m, n },
            ComponentId::Ex3W1 => CatalogueWord::Ex3,
            ComponentId::Ex4T { p, .. } => CatalogueWord::Ex4 { p },
            ComponentId::Ex5W1 | ComponentId::Ex5T1 | ComponentId::Ex5T2 => CatalogueWord::Ex5,
        }
    }

    pub fn word(&self) -> Word {
        self.catalogue_word().word()
    }

    pub fn claimed_dim(&self) -> usize {
        match self {
            ComponentId::Ex1W | ComponentId::Ex5W1 => 4,
            ComponentId::Ex3W1 => 3,
            _ => 5,
        }
    }

    /// The equations whose Jacobian gives the upper bound. Components on
    /// which the word is identically `I` use the `W` equations: there the
    /// trace has a critical point and its differential carries no
    /// information.
    pub fn equations(&self) -> Equations {
        match self {
            ComponentId::Ex1T | ComponentId::Sa { .. } | ComponentId::Ex5T1 => Equations::TFiber,
            _ => Equations::WFiber,
        }
    }

    /// Value of the defining function on the component: `I` for `W`
    /// equations, the trace target for `T` equations.
    fn trace_target(&self, ring: &RingDescriptor) -> Scalar {
        match self {
            ComponentId::Sa { a } => ring.from_int(*a),
            _ => ring.from_int(2),
        }
    }
}

/// Parameters of a component parametrization: free scalars and free
/// conjugators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoint {
    pub scalars: Vec<Scalar>,
    pub groups: Vec<Matrix>,
}

/// Fixed constants of a component family in a given ring (roots of unity,
/// traces).
fn fixed_constants(ring: &RingDescriptor, id: &ComponentId) -> Result<Vec<Scalar>, Sl2Error> {
    id.validate()?;
    let lacks = |what: String| Sl2Error::RingLacksRoots { ring: ring.to_string(), what };
    Ok(match *id {
        ComponentId::Ex2W { j, .. } => {
            vec![ring.primitive_root_of_unity(j as u64).ok_or_else(|| lacks(format!("a primitive {j}-th root of unity")))?]
        }
        ComponentId::Ex3W1 => vec![ring.sqrt_minus_one().ok_or_else(|| lacks("a square root of -1".into()))?],
        ComponentId::Ex4T { p, j } => {
            let z = ring.primitive_root_of_unity(p as u64).ok_or_else(|| lacks(format!("a primitive {p}-th root of unity")))?;
            let zj = ring.pow(&z, j as u64);
            vec![ring.add(&zj, &ring.inv(&zj)?)]
        }
        ComponentId::Sa { a } => vec![ring.from_int(a)],
        _ => vec![],
    })
}

fn conj(ring: &RingDescriptor, g: &Matrix, m: &Matrix) -> Result<Matrix, Sl2Error> {
    Ok(g.mul(ring, m).mul(ring, &g.inverse(ring)?))
}

fn upper(ring: &RingDescriptor, d: &Scalar, b: &Scalar) -> Result<Matrix, Sl2Error> {
    Ok(Matrix::two_by_two(d.clone(), b.clone(), ring.zero(), ring.inv(d)?))
}

fn antidiag(ring: &RingDescriptor, nu: &Scalar) -> Result<Matrix, Sl2Error> {
    Ok(Matrix::two_by_two(ring.zero(), nu.clone(), ring.neg(&ring.inv(nu)?), ring.zero()))
}

/// The parametrizing map, written over an arbitrary ring so it can be fed
/// dual numbers.
fn build(
    ring: &RingDescriptor,
    id: &ComponentId,
    fixed: &[Scalar],
    s: &[Scalar],
    g: &[Matrix],
) -> Result<[Matrix; 2], Sl2Error> {
    Ok(match id {
        ComponentId::Ex1W => [conj(ring, &g[0], &diag_torus(ring, &s[0])?)?, conj(ring, &g[0], &diag_torus(ring, &s[1])?)?],
        ComponentId::Ex1T => [
            conj(ring, &g[0], &upper(ring, &s[0], &s[1])?)?,
            conj(ring, &g[0], &upper(ring, &s[2], &s[3])?)?,
        ],
        ComponentId::Ex2W { side, .. } => {
            let c = conj(ring, &g[0], &diag_torus(ring, &fixed[0])?)?;
            match side {
                Side::X => [c, g[1].clone()],
                Side::Y => [g[1].clone(), c],
            }
        }
        ComponentId::Ex3W1 => {
            [conj(ring, &g[0], &diag_torus(ring, &fixed[0])?)?, conj(ring, &g[0], &antidiag(ring, &s[0])?)?]
        }
        ComponentId::Ex4T { .. } | ComponentId::Sa { .. } => {
            // g2 = [[alpha, beta], [p/beta, q/alpha]] with bc = p, ad = q
            let (p, q) = preimage_coefficients(ring, &fixed[0], &s[0])?;
            let (alpha, beta) = (&s[1], &s[2]);
            let m = Matrix::two_by_two(
                alpha.clone(),
                beta.clone(),
                ring.mul(&p, &ring.inv(beta)?),
                ring.mul(&q, &ring.inv(alpha)?),
            );
            [conj(ring, &g[0], &diag_torus(ring, &s[0])?)?, conj(ring, &g[0], &m)?]
        }
        ComponentId::Ex5W1 => {
            [conj(ring, &g[0], &diag_torus(ring, &s[0])?)?, conj(ring, &g[0], &antidiag(ring, &s[1])?)?]
        }
        ComponentId::Ex5T1 => {
            let h = antidiag(ring, &s[1])?.mul(ring, &upper(ring, &ring.one(), &s[2])?);
            [conj(ring, &g[0], &diag_torus(ring, &s[0])?)?, conj(ring, &g[0], &h)?]
        }
        ComponentId::Ex5T2 => [conj(ring, &g[0], &antidiag(ring, &ring.one())?)?, g[1].clone()],
    })
}

fn shape(id: &ComponentId) -> (usize, usize) {
    match id {
        ComponentId::Ex1W => (2, 1),
        ComponentId::Ex1T => (4, 1),
        ComponentId::Ex2W { .. } => (0, 2),
        ComponentId::Ex3W1 => (1, 1),
        ComponentId::Ex4T { .. } | ComponentId::Sa { .. } => (3, 1),
        ComponentId::Ex5W1 => (2, 1),
        ComponentId::Ex5T1 => (3, 1),
        ComponentId::Ex5T2 => (0, 2),
    }
}

/// Whether the parameters avoid the degenerate loci of the family.
fn params_valid(ring: &RingDescriptor, id: &ComponentId, fixed: &[Scalar], at: &ParamPoint) -> bool {
    let s = &at.scalars;
    let unit = |x: &Scalar| !ring.is_zero(x);
    let regular = |l: &Scalar| unit(l) && !ring.is_one(&ring.mul(l, l));
    let l4 = |l: &Scalar| ring.is_one(&ring.pow(l, 4));
    if !s.iter().all(unit) || !at.groups.iter().all(|g| g.n() == 2 && g.is_special(ring)) {
        return false;
    }
    match id {
        ComponentId::Ex1W => regular(&s[0]) && regular(&s[1]),
        ComponentId::Ex1T => regular(&s[0]) && regular(&s[2]),
        ComponentId::Ex4T { .. } | ComponentId::Sa { .. } => {
            regular(&s[0])
                && preimage_coefficients(ring, &fixed[0], &s[0]).is_ok_and(|(p, q)| unit(&p) && unit(&q))
        }
        ComponentId::Ex5W1 | ComponentId::Ex5T1 => regular(&s[0]) && !l4(&s[0]),
        _ => true,
    }
}

/// Draws a parameter point that avoids the degenerate loci.
pub fn sample_params<R: RngCore + ?Sized>(
    ring: &RingDescriptor,
    id: &ComponentId,
    rng: &mut R,
) -> Result<ParamPoint, Sl2Error> {
    let fixed = fixed_constants(ring, id)?;
    let (ns, ng) = shape(id);
    for _ in 0..1000 {
        let scalars = (0..ns).map(|_| ring.random_unit(rng)).collect();
        let groups = (0..ng).map(|_| random_sl2(ring, rng)).collect::<Result<_, _>>()?;
        let at = ParamPoint { scalars, groups };
        if params_valid(ring, id, &fixed, &at) {
            return Ok(at);
        }
    }
    Err(Sl2Error::InvalidParams(format!("no valid parameters for {id} found in {ring}")))
}

/// The point of `G x G` at the given parameters.
pub fn component_point(ring: &RingDescriptor, id: &ComponentId, at: &ParamPoint) -> Result<Sl2Pair, Sl2Error> {
    let fixed = fixed_constants(ring, id)?;
    let (ns, ng) = shape(id);
    if at.scalars.len() != ns || at.groups.len() != ng || !params_valid(ring, id, &fixed, at) {
        return Err(Sl2Error::InvalidParams(format!("parameters outside the domain of {id}")));
    }
    let [g1, g2] = build(ring, id, &fixed, &at.scalars, &at.groups)?;
    Ok(Sl2Pair { g1, g2 })
}

/// Rank of the differential of the parametrization at `at`, read on the
/// eight entries of the pair.
pub fn parametrization_rank(ring: &RingDescriptor, id: &ComponentId, at: &ParamPoint) -> Result<usize, Sl2Error> {
    component_point(ring, id, at)?;
    let fixed = fixed_constants(ring, id)?;
    let dual = jet::dual_of(ring);
    let fixed_d: Vec<Scalar> = fixed.iter().map(|a| dual.embed(a)).collect();
    let s_d: Vec<Scalar> = at.scalars.iter().map(|a| dual.embed(a)).collect();
    let g_d: Vec<Matrix> = at.groups.iter().map(|g| jet::lift(&dual, g)).collect();
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    let mut push = |pair: [Matrix; 2]| {
        columns.push(pair.iter().flat_map(|m| jet::eps_part(&dual, m).entries().to_vec()).collect());
    };
    for k in 0..s_d.len() {
        let mut s = s_d.clone();
        s[k] = jet::jet_scalar(&at.scalars[k], &ring.one());
        push(build(&dual, id, &fixed_d, &s, &g_d)?);
    }
    for k in 0..g_d.len() {
        for x in jet::sl_basis(ring, 2) {
            let mut g = g_d.clone();
            g[k] = jet::perturb(ring, &at.groups[k], &x);
            push(build(&dual, id, &fixed_d, &s_d, &g)?);
        }
    }
    let rows: Vec<Vec<Scalar>> = (0..8).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    Ok(rank(ring, &rows))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionCertificate {
    pub component: ComponentId,
    pub ring: RingDescriptor,
    pub point: Sl2Pair,
    pub params: ParamPoint,
    pub lower: usize,
    pub upper: usize,
    pub claimed: usize,
    pub confirmed: bool,
}

/// Bounds at one parameter point. The point is checked to satisfy the
/// component's equations before differentiating.
pub fn certificate_at(
    ring: &RingDescriptor,
    id: &ComponentId,
    w: &Word,
    at: &ParamPoint,
) -> Result<DimensionCertificate, Sl2Error> {
    let expected = id.word();
    if *w != expected {
        return Err(Sl2Error::WordMismatch { expected: expected.to_string(), found: w.to_string() });
    }
    let point = component_point(ring, id, at)?;
    let wc = WordWithConstants::from(w.clone());
    let b = Binding::new();
    let tuple = point.to_vec();
    let value = eval_group(ring, &wc, &b, &tuple)?;
    let equations = id.equations();
    let on_fiber = match equations {
        Equations::WFiber => value.is_identity(ring),
        Equations::TFiber => value.trace(ring) == id.trace_target(ring),
    };
    if !on_fiber {
        return Err(Sl2Error::InvalidParams(format!("parametrized point is not on the fiber of {id}")));
    }
    let lower = parametrization_rank(ring, id, at)?;
    let j = jet_jacobian(ring, &wc, &b, &tuple, &equations)?;
    let upper = 6 - j.rank;
    let claimed = id.claimed_dim();
    Ok(DimensionCertificate {
        component: id.clone(),
        ring: ring.clone(),
        point,
        params: at.clone(),
        lower,
        upper,
        claimed,
        confirmed: lower == claimed && upper == claimed,
    })
}

/// Number of parameter draws tried by [`dimension_certificate`].
pub const CERTIFICATE_ATTEMPTS: usize = 8;

/// Searches up to [`CERTIFICATE_ATTEMPTS`] random parameter points for one
/// where both bounds meet the claimed dimension. Bounds are valid at every
/// point, so the search only looks for a point generic enough; if none is
/// found the last certificate is returned unconfirmed.
pub fn dimension_certificate<R: RngCore + ?Sized>(
    ring: &RingDescriptor,
    id: &ComponentId,
    w: &Word,
    rng: &mut R,
) -> Result<DimensionCertificate, Sl2Error> {
    let mut last = None;
    for _ in 0..CERTIFICATE_ATTEMPTS {
        let at = sample_params(ring, id, rng)?;
        let cert = certificate_at(ring, id, w, &at)?;
        if cert.confirmed {
            return Ok(cert);
        }
        last = Some(cert);
    }
    Ok(last.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn catalogue_words() {
        assert_eq!(CatalogueWord::Ex1.word(), parse_word("[x,y]").unwrap());
        assert_eq!(CatalogueWord::Ex2 { m: 2, n: 1 }.word(), parse_word("[x^2,y]").unwrap());
        assert_eq!(CatalogueWord::Ex3.word().len(), 8);
        assert_eq!(CatalogueWord::Ex5.word(), parse_word("[[x,y],x[x,y]x^-1]").unwrap());
        for c in [
            CatalogueWord::Ex1,
            CatalogueWord::Ex2 { m: 3, n: 2 },
            CatalogueWord::Ex3,
            CatalogueWord::Ex4 { p: 7 },
            CatalogueWord::Ex5,
        ] {
            assert_eq!(CatalogueWord::recognize(&c.word()), Some(c));
        }
        assert_eq!(CatalogueWord::recognize(&parse_word("x y").unwrap()), None);
    }

    #[test]
    fn witnesses_for_all_examples() {
        let f = RingDescriptor::prime_field(101).unwrap();
        for c in [
            CatalogueWord::Ex1,
            CatalogueWord::Ex2 { m: 2, n: 1 },
            CatalogueWord::Ex3,
            CatalogueWord::Ex4 { p: 5 },
            CatalogueWord::Ex5,
        ] {
            let p = separation_witness(&f, c).unwrap().expect("witness");
            let v = eval_group(&f, &c.word().into(), &Binding::new(), &p.to_vec()).unwrap();
            assert_eq!(v.trace(&f), f.from_int(2));
            assert!(!v.is_identity(&f));
        }
    }

    #[test]
    fn component_ids_parse() {
        assert_eq!("ex5.W1".parse::<ComponentId>().unwrap(), ComponentId::Ex5W1);
        assert_eq!(
            "ex2.W4".parse::<ComponentId>().unwrap(),
            ComponentId::Ex2W { m: 2, n: 1, j: 4, side: Side::X }
        );
        assert!("ex2.W3".parse::<ComponentId>().unwrap().validate().is_err());
        assert!("ex4.T3".parse::<ComponentId>().unwrap().validate().is_err());
        assert!("ex2.W3y".parse::<ComponentId>().unwrap().with_params(None, Some(3), None, None).is_ok());
        assert!("ex6".parse::<ComponentId>().is_err());
        let id = "ex4.T1".parse::<ComponentId>().unwrap().with_params(None, None, Some(7), None).unwrap();
        assert_eq!(id, ComponentId::Ex4T { p: 7, j: 1 });
    }

    #[test]
    fn all_components_confirm_over_f101() {
        let f = RingDescriptor::prime_field(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for id in ComponentId::all() {
            let cert = dimension_certificate(&f, &id, &id.word(), &mut rng).unwrap();
            assert!(cert.lower <= cert.upper, "{id}");
            assert!(cert.confirmed, "{id}: lower {} upper {} claimed {}", cert.lower, cert.upper, cert.claimed);
        }
    }

    #[test]
    fn mismatched_word_is_rejected() {
        let f = RingDescriptor::prime_field(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = dimension_certificate(&f, &ComponentId::Ex1W, &parse_word("[x,y]^2").unwrap(), &mut rng);
        assert!(matches!(r, Err(Sl2Error::WordMismatch { .. })));
        let f13 = RingDescriptor::prime_field(13).unwrap();
        let r = dimension_certificate(&f13, &ComponentId::Ex4T { p: 5, j: 1 }, &CatalogueWord::Ex4 { p: 5 }.word(), &mut rng);
        assert!(matches!(r, Err(Sl2Error::RingLacksRoots { .. })));
    }
}
