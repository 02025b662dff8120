//! Exact coefficient domains.
//!
//! Every algebraic routine in this crate is written against a
//! [`RingDescriptor`], which acts as the arithmetic context for plain
//! [`Scalar`] values. Supported domains:
//!
//! * the rationals `Q` (arbitrary precision),
//! * prime fields `F_p` for `p < 2^63`,
//! * a single quadratic extension `K[sqrt(d)]` of either of those,
//! * dual numbers `R[eps]` with `eps^2 = 0` over any of the above.
//!
//! Scalars are kept in canonical form, so `==` on scalars is exact equality
//! of ring elements.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand_core::RngCore;

/// Errors raised by ring construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("element is not invertible")]
    NotInvertible,
    #[error("modulus {0} is not a prime below 2^63")]
    NotPrime(u64),
    #[error("discriminant {0} already has a square root in the base ring")]
    SquareDiscriminant(String),
    #[error("unsupported ring tower: {0}")]
    UnsupportedTower(&'static str),
    #[error("ring {0} is not a field")]
    NotAField(String),
}

/// An element of some exact ring.
///
/// The variant in use is dictated by the ring: `Rational` for `Q`, `Residue`
/// (in `[0, p)`) for `F_p`, and `Pair(a, b)` for both `a + b*sqrt(d)` and
/// `a + b*eps`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
    Pair(Box<(Scalar, Scalar)>),
}

impl Scalar {
    pub fn pair(a: Scalar, b: Scalar) -> Scalar {
        Scalar::Pair(Box::new((a, b)))
    }
}

/// Coefficient domain descriptor and arithmetic context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Rationals,
    #[non_exhaustive]
    PrimeField { p: u64 },
    /// `base[sqrt(d)]`; `d` is a base element without a square root in `base`.
    #[non_exhaustive]
    QuadraticExt { base: Box<RingDescriptor>, d: Scalar },
    #[non_exhaustive]
    DualNumbers { base: Box<RingDescriptor> },
}

impl RingDescriptor {
    pub fn rationals() -> Self {
        RingDescriptor::Rationals
    }

    pub fn prime_field(p: u64) -> Result<Self, RingError> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(RingDescriptor::PrimeField { p })
    }

    /// Adjoins a square root of `d` to `base`. Only one level of quadratic
    /// extension over `Q` or `F_p` is supported.
    pub fn quadratic_ext(base: RingDescriptor, d: Scalar) -> Result<Self, RingError> {
        match base {
            RingDescriptor::Rationals | RingDescriptor::PrimeField { .. } => {}
            RingDescriptor::QuadraticExt { .. } => {
                return Err(RingError::UnsupportedTower("nested quadratic extensions"))
            }
            RingDescriptor::DualNumbers { .. } => {
                return Err(RingError::UnsupportedTower("quadratic extension of dual numbers"))
            }
        }
        assert!(base.contains(&d), "discriminant is not an element of {base}");
        if base.characteristic() == 2 {
            return Err(RingError::UnsupportedTower("quadratic extension in characteristic 2"));
        }
        if base.sqrt(&d).is_some() {
            return Err(RingError::SquareDiscriminant(base.render(&d)));
        }
        Ok(RingDescriptor::QuadraticExt { base: Box::new(base), d })
    }

    /// `Q[i]`.
    pub fn gaussian_rationals() -> Self {
        let q = RingDescriptor::Rationals;
        let d = q.from_int(-1);
        RingDescriptor::quadratic_ext(q, d).expect("-1 is not a rational square")
    }

    pub fn dual_numbers(base: RingDescriptor) -> Self {
        RingDescriptor::DualNumbers { base: Box::new(base) }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingDescriptor::DualNumbers { .. })
    }

    /// 0 for characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match self {
            RingDescriptor::Rationals => 0,
            RingDescriptor::PrimeField { p } => *p,
            RingDescriptor::QuadraticExt { base, .. } | RingDescriptor::DualNumbers { base } => {
                base.characteristic()
            }
        }
    }

    /// The coefficient ring of an extension, `None` for `Q` and `F_p`.
    pub fn base(&self) -> Option<&RingDescriptor> {
        match self {
            RingDescriptor::QuadraticExt { base, .. } | RingDescriptor::DualNumbers { base } => {
                Some(base)
            }
            _ => None,
        }
    }

    /// Number of elements, for finite fields.
    pub fn order(&self) -> Option<u64> {
        match self {
            RingDescriptor::PrimeField { p } => Some(*p),
            RingDescriptor::QuadraticExt { base, .. } | RingDescriptor::DualNumbers { base } => {
                base.order().and_then(|q| q.checked_mul(q))
            }
            RingDescriptor::Rationals => None,
        }
    }

    /// Whether `a` has the representation this ring expects.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (RingDescriptor::Rationals, Scalar::Rational(_)) => true,
            (RingDescriptor::PrimeField { p }, Scalar::Residue(r)) => r < p,
            (RingDescriptor::QuadraticExt { base, .. }, Scalar::Pair(ab))
            | (RingDescriptor::DualNumbers { base }, Scalar::Pair(ab)) => {
                base.contains(&ab.0) && base.contains(&ab.1)
            }
            _ => false,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            RingDescriptor::Rationals => Scalar::Rational(BigRational::zero()),
            RingDescriptor::PrimeField { .. } => Scalar::Residue(0),
            RingDescriptor::QuadraticExt { base, .. } | RingDescriptor::DualNumbers { base } => {
                Scalar::pair(base.zero(), base.zero())
            }
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            RingDescriptor::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            RingDescriptor::PrimeField { p } => {
                let m = BigInt::from(*p);
                let r = ((n % &m) + &m) % &m;
                Scalar::Residue(u64::try_from(r).expect("residue below modulus"))
            }
            RingDescriptor::QuadraticExt { base, .. } | RingDescriptor::DualNumbers { base } => {
                Scalar::pair(base.from_bigint(n), base.zero())
            }
        }
    }

    /// Image of `num/den`; fails when `den` vanishes in the ring.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, RingError> {
        let d = self.inv(&self.from_bigint(den))?;
        Ok(self.mul(&self.from_bigint(num), &d))
    }

    /// Lifts an element of the coefficient ring into an extension.
    pub fn embed(&self, a: &Scalar) -> Scalar {
        let base = self.base().expect("embed requires an extension ring");
        debug_assert!(base.contains(a));
        Scalar::pair(a.clone(), base.zero())
    }

    /// Components `(a, b)` of `a + b*sqrt(d)` or `a + b*eps`.
    pub fn parts<'a>(&self, x: &'a Scalar) -> (&'a Scalar, &'a Scalar) {
        match x {
            Scalar::Pair(ab) => (&ab.0, &ab.1),
            _ => panic!("{self} has no component decomposition"),
        }
    }

    /// The infinitesimal `eps` of a dual-number ring.
    pub fn eps(&self) -> Scalar {
        match self {
            RingDescriptor::DualNumbers { base } => Scalar::pair(base.zero(), base.one()),
            _ => panic!("{self} is not a dual-number ring"),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        *a == self.zero()
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (RingDescriptor::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            (RingDescriptor::PrimeField { p }, Scalar::Residue(x), Scalar::Residue(y)) => {
                let s = x + y;
                Scalar::Residue(if s >= *p { s - p } else { s })
            }
            (RingDescriptor::QuadraticExt { base, .. }, Scalar::Pair(x), Scalar::Pair(y))
            | (RingDescriptor::DualNumbers { base }, Scalar::Pair(x), Scalar::Pair(y)) => {
                Scalar::pair(base.add(&x.0, &y.0), base.add(&x.1, &y.1))
            }
            _ => self.mismatch(a, b),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (RingDescriptor::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (RingDescriptor::PrimeField { p }, Scalar::Residue(x)) => {
                Scalar::Residue(if *x == 0 { 0 } else { p - x })
            }
            (RingDescriptor::QuadraticExt { base, .. }, Scalar::Pair(x))
            | (RingDescriptor::DualNumbers { base }, Scalar::Pair(x)) => {
                Scalar::pair(base.neg(&x.0), base.neg(&x.1))
            }
            _ => self.mismatch(a, a),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (RingDescriptor::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            (RingDescriptor::PrimeField { p }, Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(mul_mod(*x, *y, *p))
            }
            (RingDescriptor::QuadraticExt { base, d }, Scalar::Pair(x), Scalar::Pair(y)) => {
                // (a + b r)(c + e r) = (ac + d be) + (ae + bc) r
                let ac = base.mul(&x.0, &y.0);
                let be = base.mul(&x.1, &y.1);
                let ae = base.mul(&x.0, &y.1);
                let bc = base.mul(&x.1, &y.0);
                Scalar::pair(base.add(&ac, &base.mul(d, &be)), base.add(&ae, &bc))
            }
            (RingDescriptor::DualNumbers { base }, Scalar::Pair(x), Scalar::Pair(y)) => {
                let ac = base.mul(&x.0, &y.0);
                let ad = base.mul(&x.0, &y.1);
                let bc = base.mul(&x.1, &y.0);
                Scalar::pair(ac, base.add(&ad, &bc))
            }
            _ => self.mismatch(a, b),
        }
    }

    /// Multiplicative inverse. In dual numbers `(a + b eps)^-1 = a^-1 - a^-2 b eps`.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar, RingError> {
        match (self, a) {
            (RingDescriptor::Rationals, Scalar::Rational(x)) => {
                if x.is_zero() {
                    Err(RingError::NotInvertible)
                } else {
                    Ok(Scalar::Rational(x.recip()))
                }
            }
            (RingDescriptor::PrimeField { p }, Scalar::Residue(x)) => {
                if *x == 0 {
                    Err(RingError::NotInvertible)
                } else {
                    Ok(Scalar::Residue(pow_mod(*x, p - 2, *p)))
                }
            }
            (RingDescriptor::QuadraticExt { base, d }, Scalar::Pair(x)) => {
                // (a + b r)^-1 = (a - b r) / (a^2 - d b^2)
                let norm = base.sub(&base.mul(&x.0, &x.0), &base.mul(d, &base.mul(&x.1, &x.1)));
                let n_inv = base.inv(&norm)?;
                Ok(Scalar::pair(base.mul(&x.0, &n_inv), base.neg(&base.mul(&x.1, &n_inv))))
            }
            (RingDescriptor::DualNumbers { base }, Scalar::Pair(x)) => {
                let a_inv = base.inv(&x.0)?;
                let b = base.neg(&base.mul(&base.mul(&a_inv, &a_inv), &x.1));
                Ok(Scalar::pair(a_inv, b))
            }
            _ => self.mismatch(a, a),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, RingError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a^e` for signed `e`; negative powers need `a` invertible.
    pub fn pow_signed(&self, a: &Scalar, e: i64) -> Result<Scalar, RingError> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Some square root of `a`, if one exists in the ring.
    ///
    /// Over `Q` the non-negative root is returned, over `F_p` the smaller
    /// residue. In a quadratic extension the search is complete (odd
    /// characteristic); in dual numbers only units and zero are handled.
    pub fn sqrt(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (RingDescriptor::Rationals, Scalar::Rational(x)) => {
                if x.is_negative() {
                    return None;
                }
                let n = x.numer().sqrt();
                let d = x.denom().sqrt();
                if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
                    Some(Scalar::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            (RingDescriptor::PrimeField { p }, Scalar::Residue(x)) => {
                sqrt_mod(*x, *p).map(|r| Scalar::Residue(r.min(p - r)))
            }
            (RingDescriptor::QuadraticExt { base, d }, Scalar::Pair(x)) => {
                let (a0, b0) = (&x.0, &x.1);
                if base.is_zero(b0) {
                    if let Some(s) = base.sqrt(a0) {
                        return Some(Scalar::pair(s, base.zero()));
                    }
                    // a0 = d y^2
                    let q = base.div(a0, d).ok()?;
                    return base.sqrt(&q).map(|y| Scalar::pair(base.zero(), y));
                }
                // (u + v r)^2 = a0 + b0 r  <=>  u^2 + d v^2 = a0, 2uv = b0
                let norm = base.sub(&base.mul(a0, a0), &base.mul(d, &base.mul(b0, b0)));
                let n = base.sqrt(&norm)?;
                let two_inv = base.inv(&base.from_int(2)).ok()?;
                for cand in [n.clone(), base.neg(&n)] {
                    let u2 = base.mul(&base.add(a0, &cand), &two_inv);
                    if let Some(u) = base.sqrt(&u2) {
                        if base.is_zero(&u) {
                            continue;
                        }
                        let v = base.mul(b0, &base.inv(&base.add(&u, &u)).ok()?);
                        let root = Scalar::pair(u, v);
                        if self.mul(&root, &root) == *a {
                            return Some(root);
                        }
                    }
                }
                None
            }
            (RingDescriptor::DualNumbers { base }, Scalar::Pair(x)) => {
                if self.is_zero(a) {
                    return Some(self.zero());
                }
                let s = base.sqrt(&x.0)?;
                let two_s = base.add(&s, &s);
                let t = base.mul(&x.1, &base.inv(&two_s).ok()?);
                Some(Scalar::pair(s, t))
            }
            _ => self.mismatch(a, a),
        }
    }

    /// A square root of `-1`, if the ring has one.
    pub fn sqrt_minus_one(&self) -> Option<Scalar> {
        self.sqrt(&self.from_int(-1))
    }

    /// The smallest residue of multiplicative order exactly `k` in `F_q`,
    /// or `None` when `k` does not divide `q - 1`.
    ///
    /// Over `Q` only `k = 1, 2` succeed; in a quadratic extension the roots
    /// of the base are tried first, then `sqrt(-1)` for `k = 4`.
    pub fn primitive_root_of_unity(&self, k: u64) -> Option<Scalar> {
        if k == 0 {
            return None;
        }
        match self {
            RingDescriptor::PrimeField { p } => {
                let q1 = p - 1;
                if q1 % k != 0 {
                    return None;
                }
                let primes = prime_factors(k);
                (1..*p)
                    .find(|&y| {
                        pow_mod(y, k, *p) == 1
                            && primes.iter().all(|&l| pow_mod(y, k / l, *p) != 1)
                    })
                    .map(Scalar::Residue)
            }
            RingDescriptor::Rationals => match k {
                1 => Some(self.one()),
                2 => Some(self.from_int(-1)),
                _ => None,
            },
            RingDescriptor::QuadraticExt { base, .. } => {
                if let Some(z) = base.primitive_root_of_unity(k) {
                    return Some(self.embed(&z));
                }
                if k == 4 {
                    return self.sqrt_minus_one();
                }
                None
            }
            RingDescriptor::DualNumbers { base } => {
                base.primitive_root_of_unity(k).map(|z| self.embed(&z))
            }
        }
    }

    /// A random element. Rationals are drawn as small fractions
    /// `n/d` with `|n| <= 20`, `1 <= d <= 10`.
    pub fn random<R: RngCore + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            RingDescriptor::Rationals => {
                let n = (rng.next_u32() % 41) as i64 - 20;
                let d = (rng.next_u32() % 10) as i64 + 1;
                Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            RingDescriptor::PrimeField { p } => Scalar::Residue(rng.next_u64() % p),
            RingDescriptor::QuadraticExt { base, .. } | RingDescriptor::DualNumbers { base } => {
                let a = base.random(rng);
                let b = base.random(rng);
                Scalar::pair(a, b)
            }
        }
    }

    /// A random element that is a unit.
    pub fn random_unit<R: RngCore + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let a = self.random(rng);
            if self.inv(&a).is_ok() {
                return a;
            }
        }
    }

    /// All elements of a prime field in residue order.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match self {
            RingDescriptor::PrimeField { p } => Some((0..*p).map(Scalar::Residue)),
            _ => None,
        }
    }

    /// Canonical text form of a scalar; [`crate::literal::parse_scalar`]
    /// reads it back.
    pub fn render(&self, a: &Scalar) -> String {
        match (self, a) {
            (RingDescriptor::Rationals, Scalar::Rational(x)) => {
                if x.is_integer() {
                    format!("{}", x.numer())
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            (RingDescriptor::PrimeField { .. }, Scalar::Residue(x)) => format!("{x}"),
            (RingDescriptor::QuadraticExt { base, d }, Scalar::Pair(x)) => {
                let unit = if *d == base.from_int(-1) {
                    String::from("i")
                } else {
                    format!("sqrt({})", base.render(d))
                };
                render_pair(base, &x.0, &x.1, &unit)
            }
            (RingDescriptor::DualNumbers { base }, Scalar::Pair(x)) => {
                render_pair(base, &x.0, &x.1, "eps")
            }
            _ => self.mismatch(a, a),
        }
    }

    fn mismatch(&self, a: &Scalar, b: &Scalar) -> ! {
        panic!("scalars {a:?} / {b:?} do not belong to {self}")
    }
}

fn render_pair(base: &RingDescriptor, a: &Scalar, b: &Scalar, unit: &str) -> String {
    if base.is_zero(b) {
        return base.render(a);
    }
    let coeff = |b: &Scalar| -> String {
        let s = base.render(b);
        if base.is_one(b) {
            String::from(unit)
        } else if s[1..].contains(['+', '-']) {
            format!("({s})*{unit}")
        } else {
            format!("{s}*{unit}")
        }
    };
    let a_str = base.render(a);
    let a_str = if a_str[1..].contains(['+', '-']) { format!("({a_str})") } else { a_str };
    if base.is_zero(a) {
        let s = base.render(b);
        if s.starts_with('-') && !s[1..].contains(['+', '-']) {
            return format!("-{}", coeff(&base.neg(b)));
        }
        return coeff(b);
    }
    let s = base.render(b);
    if s.starts_with('-') && !s[1..].contains(['+', '-']) {
        format!("{a_str}-{}", coeff(&base.neg(b)))
    } else {
        format!("{a_str}+{}", coeff(b))
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Rationals => write!(f, "Q"),
            RingDescriptor::PrimeField { p } => write!(f, "Fp:{p}"),
            RingDescriptor::QuadraticExt { base, d } => {
                if *d == base.from_int(-1) {
                    write!(f, "{base}[i]")
                } else {
                    write!(f, "{base}[sqrt({})]", base.render(d))
                }
            }
            RingDescriptor::DualNumbers { base } => write!(f, "{base}[eps]"),
        }
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Tonelli-Shanks.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}
