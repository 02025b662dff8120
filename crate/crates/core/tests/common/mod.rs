#![allow(dead_code)]

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wordmap_core::matrix::Matrix;
use wordmap_core::ring::{RingDescriptor, Scalar};
use wordmap_core::word::{Letter, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q() -> RingDescriptor {
    RingDescriptor::rationals()
}

pub fn fp(p: u64) -> RingDescriptor {
    RingDescriptor::prime_field(p).unwrap()
}

pub fn m2(ring: &RingDescriptor, a: i64, b: i64, c: i64, d: i64) -> Matrix {
    Matrix::two_by_two(ring.from_int(a), ring.from_int(b), ring.from_int(c), ring.from_int(d))
}

/// Leibniz expansion over all permutations; only for small `n`.
pub fn leibniz_det(ring: &RingDescriptor, m: &Matrix) -> Scalar {
    let n = m.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = ring.zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let term = (0..n).fold(ring.one(), |acc, i| ring.mul(&acc, m.get(i, p[i])));
        total = if inversions % 2 == 0 { ring.add(&total, &term) } else { ring.sub(&total, &term) };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Sum of the principal `k x k` minors.
pub fn principal_minor_sum(ring: &RingDescriptor, m: &Matrix, k: usize) -> Scalar {
    let n = m.n();
    let mut total = ring.zero();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != k {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let sub = Matrix::from_fn(k, |i, j| m.get(idx[i], idx[j]).clone());
        total = ring.add(&total, &leibniz_det(ring, &sub));
    }
    total
}

/// Random reduced word in `vars` variables with total length at most `max_len`.
pub fn random_word(r: &mut ChaCha8Rng, vars: usize, max_len: usize) -> Word {
    use rand_chacha::rand_core::RngCore;
    let len = 1 + (r.next_u32() as usize) % max_len;
    let letters: Vec<Letter> = (0..len)
        .map(|_| {
            let var = 1 + (r.next_u32() as usize) % vars;
            let exp = if r.next_u32().is_multiple_of(2) { 1 } else { -1 };
            Letter::new(var, exp)
        })
        .collect();
    Word::from_letters(&letters)
}

/// Random matrix with nonzero determinant.
pub fn random_gl(ring: &RingDescriptor, n: usize, r: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = wordmap_core::matrix::random_matrix(ring, n, r);
        if !ring.is_zero(&m.det(ring)) {
            return m;
        }
    }
}
