//! Irreducible root systems and the orthogonal `A_1^r` search.
//!
//! Roots are stored with doubled coordinates so that the half-integral
//! roots of `E_6, E_7, E_8, F_4` are integer vectors. Property (*) asks for
//! `r = rank` positive roots, pairwise orthogonal, such that no sum or
//! difference of two of them is a root; these span a closed subsystem
//! `A_1 x ... x A_1`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("no irreducible root system of type {0}")]
    InvalidType(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            RootType::A => 'A',
            RootType::B => 'B',
            RootType::C => 'C',
            RootType::D => 'D',
            RootType::E => 'E',
            RootType::F => 'F',
            RootType::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A root in doubled coordinates: `e1 - e2` is `[2, -2, 0, ...]`.
pub type Root = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub kind: RootType,
    pub rank: usize,
    pub ambient_dim: usize,
    pub roots: Vec<Root>,
}

/// Parses labels like `E8`, `b3`.
pub fn parse_label(label: &str) -> Result<(RootType, usize), RootError> {
    let bad = || RootError::InvalidType(label.into());
    let label = label.trim();
    let mut chars = label.chars();
    let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
        Some('A') => RootType::A,
        Some('B') => RootType::B,
        Some('C') => RootType::C,
        Some('D') => RootType::D,
        Some('E') => RootType::E,
        Some('F') => RootType::F,
        Some('G') => RootType::G,
        _ => return Err(bad()),
    };
    let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
    Ok((kind, rank))
}

impl FromStr for RootSystem {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, rank) = parse_label(s)?;
        build(kind, rank)
    }
}

fn unit(dim: usize, i: usize, c: i32) -> Root {
    let mut v = vec![0; dim];
    v[i] = c;
    v
}

fn add(a: &[i32], b: &[i32]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i32], b: &[i32]) -> Root {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn neg(a: &[i32]) -> Root {
    a.iter().map(|x| -x).collect()
}

/// Inner product in doubled coordinates (four times the true value).
pub fn dot(a: &[i32], b: &[i32]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `+-e_i +- e_j` for `i < j < k`, doubled.
fn pm_pairs(dim: usize, k: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for si in [2, -2] {
                for sj in [2, -2] {
                    let mut v = vec![0; dim];
                    v[i] = si;
                    v[j] = sj;
                    out.push(v);
                }
            }
        }
    }
    out
}

/// All sign patterns `(+-1, ..., +-1)` of length `k`, with the parity of
/// minus signs recorded.
fn sign_patterns(k: usize) -> impl Iterator<Item = (Vec<i32>, usize)> {
    (0u32..1 << k).map(move |mask| {
        let signs: Vec<i32> = (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        (signs, mask.count_ones() as usize)
    })
}

/// The standard realization of an irreducible root system.
pub fn build(kind: RootType, rank: usize) -> Result<RootSystem, RootError> {
    let bad = || RootError::InvalidType(format!("{kind}{rank}"));
    let r = rank;
    let (ambient_dim, roots) = match kind {
        RootType::A if r >= 1 => {
            let d = r + 1;
            let mut v = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        v.push(sub(&unit(d, i, 2), &unit(d, j, 2)));
                    }
                }
            }
            (d, v)
        }
        RootType::B if r >= 2 => {
            let mut v = pm_pairs(r, r);
            for i in 0..r {
                v.push(unit(r, i, 2));
                v.push(unit(r, i, -2));
            }
            (r, v)
        }
        RootType::C if r >= 2 => {
            let mut v = pm_pairs(r, r);
            for i in 0..r {
                v.push(unit(r, i, 4));
                v.push(unit(r, i, -4));
            }
            (r, v)
        }
        RootType::D if r >= 4 => (r, pm_pairs(r, r)),
        RootType::E if r == 8 => {
            let mut v = pm_pairs(8, 8);
            for (s, minus) in sign_patterns(8) {
                if minus % 2 == 0 {
                    v.push(s);
                }
            }
            (8, v)
        }
        RootType::E if r == 7 => {
            let mut v = pm_pairs(8, 6);
            let e78 = vec![0, 0, 0, 0, 0, 0, 2, -2];
            v.push(neg(&e78));
            v.push(e78);
            // +-1/2 (e7 - e8 + sum_{i<=6} +-e_i), odd number of minus signs among the six
            for (s, minus) in sign_patterns(6) {
                if minus % 2 == 1 {
                    let mut root = s.clone();
                    root.extend([1, -1]);
                    v.push(neg(&root));
                    v.push(root);
                }
            }
            (8, v)
        }
        RootType::E if r == 6 => {
            let mut v = pm_pairs(8, 5);
            // +-1/2 (e8 - e7 - e6 + sum_{i<=5} +-e_i), even number of minus signs among the five
            for (s, minus) in sign_patterns(5) {
                if minus % 2 == 0 {
                    let mut root = s.clone();
                    root.extend([-1, -1, 1]);
                    v.push(neg(&root));
                    v.push(root);
                }
            }
            (8, v)
        }
        RootType::F if r == 4 => {
            let mut v = pm_pairs(4, 4);
            for i in 0..4 {
                v.push(unit(4, i, 2));
                v.push(unit(4, i, -2));
            }
            v.extend(sign_patterns(4).map(|(s, _)| s));
            (4, v)
        }
        RootType::G if r == 2 => {
            let mut v = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        v.push(sub(&unit(3, i, 2), &unit(3, j, 2)));
                        // 2e_i - e_j - e_k and its negative
                        let k = 3 - i - j;
                        if j < k {
                            let long = sub(&sub(&unit(3, i, 4), &unit(3, j, 2)), &unit(3, k, 2));
                            v.push(neg(&long));
                            v.push(long);
                        }
                    }
                }
            }
            (3, v)
        }
        _ => return Err(bad()),
    };
    let mut roots = roots;
    roots.sort_by(|a, b| b.cmp(a));
    roots.dedup();
    Ok(RootSystem { kind, rank, ambient_dim, roots })
}

impl RootSystem {
    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn contains(&self, v: &[i32]) -> bool {
        self.roots.binary_search_by(|r| v.cmp(r.as_slice())).is_ok()
    }

    /// Roots whose first nonzero coordinate is positive, in decreasing
    /// lexicographic order.
    pub fn positive_roots(&self) -> Vec<Root> {
        self.roots.iter().filter(|r| r.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)).cloned().collect()
    }

    pub fn is_closed_under_negation(&self) -> bool {
        self.roots.iter().all(|r| self.contains(&neg(r)))
    }

    /// `2 (a, b) / (b, b)` is an integer for every pair.
    pub fn cartan_integral(&self) -> bool {
        self.roots.iter().all(|a| self.roots.iter().all(|b| (2 * dot(a, b)) % dot(b, b) == 0))
    }

    /// `a, b` orthogonal with `a + b` and `a - b` not roots.
    pub fn strongly_orthogonal(&self, a: &[i32], b: &[i32]) -> bool {
        dot(a, b) == 0 && !self.contains(&add(a, b)) && !self.contains(&sub(a, b))
    }
}

/// Number of roots in the classical count.
pub fn expected_root_count(kind: RootType, rank: usize) -> usize {
    let r = rank;
    match kind {
        RootType::A => r * (r + 1),
        RootType::B | RootType::C => 2 * r * r,
        RootType::D => 2 * r * (r - 1),
        RootType::E => match r {
            6 => 72,
            7 => 126,
            _ => 240,
        },
        RootType::F => 48,
        RootType::G => 12,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarResult {
    pub holds: bool,
    pub witness: Option<Vec<Root>>,
}

/// Backtracking search over positive roots, in the order of
/// [`RootSystem::positive_roots`], for `rank` pairwise strongly orthogonal
/// roots. Returns the first witness found.
pub fn star_search(rs: &RootSystem) -> StarResult {
    let pos = rs.positive_roots();
    let n = pos.len();
    let words = n.div_ceil(64);
    // compat[i] is the bitset of j strongly orthogonal to i
    let mut compat = vec![vec![0u64; words]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && rs.strongly_orthogonal(&pos[i], &pos[j]) {
                compat[i][j / 64] |= 1 << (j % 64);
            }
        }
    }
    let all: Vec<u64> = (0..words)
        .map(|w| if (w + 1) * 64 <= n { u64::MAX } else { (1u64 << (n - w * 64)) - 1 })
        .collect();
    let mut chosen = Vec::new();
    let found = extend(&compat, &all, 0, rs.rank, &mut chosen);
    if found {
        StarResult { holds: true, witness: Some(chosen.iter().map(|&i| pos[i].clone()).collect()) }
    } else {
        StarResult { holds: false, witness: None }
    }
}

fn count(bits: &[u64]) -> usize {
    bits.iter().map(|b| b.count_ones() as usize).sum()
}

fn extend(compat: &[Vec<u64>], cand: &[u64], from: usize, need: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == need {
        return true;
    }
    if chosen.len() + count(cand) < need {
        return false;
    }
    for i in from..compat.len() {
        if cand[i / 64] >> (i % 64) & 1 == 0 {
            continue;
        }
        let next: Vec<u64> = cand
            .iter()
            .zip(&compat[i])
            .enumerate()
            .map(|(w, (c, k))| {
                // keep only indices above i
                let above = if w < i / 64 {
                    0
                } else if w == i / 64 {
                    if i % 64 == 63 { 0 } else { !0u64 << (i % 64 + 1) }
                } else {
                    !0
                };
                c & k & above
            })
            .collect();
        chosen.push(i);
        if extend(compat, &next, i + 1, need, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Checks a witness without reference to the search: right size, all
/// roots, pairwise strongly orthogonal.
pub fn verify_witness(rs: &RootSystem, witness: &[Root]) -> bool {
    witness.len() == rs.rank
        && witness.iter().all(|a| rs.contains(a))
        && witness
            .iter()
            .enumerate()
            .all(|(i, a)| witness[i + 1..].iter().all(|b| rs.strongly_orthogonal(a, b)))
}

/// Whether property (*) is expected: it fails exactly for `A_r` with
/// `r > 1`, `D_(2k+1)` with `k > 1`, and `E_6`.
pub fn expected_star(kind: RootType, rank: usize) -> bool {
    !matches!((kind, rank), (RootType::A, r) if r > 1)
        && !(kind == RootType::D && rank % 2 == 1)
        && !(kind == RootType::E && rank == 6)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub kind: RootType,
    pub rank: usize,
    pub result: StarResult,
    pub expected: bool,
}

impl TableRow {
    pub fn agrees(&self) -> bool {
        self.result.holds == self.expected
    }
}

/// All irreducible types of rank at most `max_rank`, in the order
/// `A, B, C, D, E, F, G`.
pub fn types_up_to(max_rank: usize) -> Vec<(RootType, usize)> {
    let mut out = Vec::new();
    out.extend((1..=max_rank).map(|r| (RootType::A, r)));
    out.extend((2..=max_rank).map(|r| (RootType::B, r)));
    out.extend((2..=max_rank).map(|r| (RootType::C, r)));
    out.extend((4..=max_rank).map(|r| (RootType::D, r)));
    out.extend((6..=max_rank.min(8)).map(|r| (RootType::E, r)));
    if max_rank >= 4 {
        out.push((RootType::F, 4));
    }
    if max_rank >= 2 {
        out.push((RootType::G, 2));
    }
    out
}

/// Runs [`star_search`] over [`types_up_to`] and records the expected
/// verdict next to each result.
pub fn verify_lemma_table(max_rank: usize) -> Vec<TableRow> {
    types_up_to(max_rank)
        .into_iter()
        .map(|(kind, rank)| {
            let rs = build(kind, rank).expect("valid type");
            TableRow { kind, rank, result: star_search(&rs), expected: expected_star(kind, rank) }
        })
        .collect()
}

/// `e1-e2`, `2e1`, `1/2e1-1/2e2+...` from doubled coordinates.
pub fn render_root(r: &[i32]) -> String {
    let mut s = String::new();
    for (i, &c) in r.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        let a = c.abs();
        let coeff = if a % 2 == 1 {
            format!("{a}/2")
        } else if a == 2 {
            String::new()
        } else {
            format!("{}", a / 2)
        };
        s.push_str(&format!("{sign}{coeff}e{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
