//! Short relations satisfied by a pair of matrices.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use super::{Sl2Error, Sl2Pair};
use crate::matrix::Matrix;
use crate::ring::RingDescriptor;
use crate::word::{Letter, Word};

pub const MAX_SCAN_LEN: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationScan {
    /// Both matrices are the identity, so every word vanishes.
    Trivial,
    /// Non-empty reduced words of length at most the bound with value `I`,
    /// in shortlex order (`x < x^-1 < y < y^-1`).
    Relations(Vec<Word>),
}

// generator order: x, x^-1, y, y^-1
const GENS: [(usize, i64); 4] = [(1, 1), (1, -1), (2, 1), (2, -1)];

fn inverse_gen(k: u8) -> u8 {
    k ^ 1
}

/// Enumerates freely reduced words of length `1..=max_len` in `x, y` and
/// returns those that evaluate to `I` at `pair`.
pub fn relation_scan(ring: &RingDescriptor, pair: &Sl2Pair, max_len: usize) -> Result<RelationScan, Sl2Error> {
    if max_len > MAX_SCAN_LEN {
        return Err(Sl2Error::InvalidParams(alloc::format!("max_len {max_len} exceeds {MAX_SCAN_LEN}")));
    }
    if pair.g1.is_identity(ring) && pair.g2.is_identity(ring) {
        return Ok(RelationScan::Trivial);
    }
    let mats = [
        pair.g1.clone(),
        pair.g1.inverse(ring)?,
        pair.g2.clone(),
        pair.g2.inverse(ring)?,
    ];
    let mut found: Vec<Vec<u8>> = Vec::new();
    let mut seq: Vec<u8> = Vec::new();
    let mut prefix: Vec<Matrix> = alloc::vec![Matrix::identity(ring, 2)];
    scan(ring, &mats, max_len, &mut seq, &mut prefix, &mut found);
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(RelationScan::Relations(found.iter().map(|s| to_word(s)).collect()))
}

fn scan(
    ring: &RingDescriptor,
    mats: &[Matrix; 4],
    max_len: usize,
    seq: &mut Vec<u8>,
    prefix: &mut Vec<Matrix>,
    found: &mut Vec<Vec<u8>>,
) {
    if seq.len() == max_len {
        return;
    }
    for k in 0..4u8 {
        if seq.last().is_some_and(|&l| l == inverse_gen(k)) {
            continue;
        }
        let next = prefix.last().expect("root").mul(ring, &mats[k as usize]);
        seq.push(k);
        if next.is_identity(ring) {
            found.push(seq.clone());
        }
        prefix.push(next);
        scan(ring, mats, max_len, seq, prefix, found);
        prefix.pop();
        seq.pop();
    }
}

fn to_word(seq: &[u8]) -> Word {
    let letters: Vec<Letter> = seq
        .iter()
        .map(|&k| {
            let (var, exp) = GENS[k as usize];
            Letter::new(var, exp)
        })
        .collect();
    Word::from_letters(&letters)
}

/// Order of the group generated by `gens`, or `None` once more than `cap`
/// elements have been found.
pub fn generated_group_order(ring: &RingDescriptor, gens: &[Matrix], cap: usize) -> Result<Option<usize>, Sl2Error> {
    let Some(first) = gens.first() else { return Ok(Some(1)) };
    let mut step: Vec<Matrix> = Vec::new();
    for g in gens {
        step.push(g.clone());
        step.push(g.inverse(ring)?);
    }
    let id = Matrix::identity(ring, first.n());
    let mut seen: BTreeSet<Matrix> = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(h) = queue.pop_front() {
        for s in &step {
            let next = h.mul(ring, s);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Ok(None);
                }
                queue.push_back(next);
            }
        }
    }
    Ok(Some(seen.len()))
}
