//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use wordmap_core::eval::{
    check_restriction_identities, dominance_probe, eval_adjugate_extension, eval_group, Binding,
};
use wordmap_core::matrix::{random_matrix, random_sl2, random_sln, Matrix};
use wordmap_core::ring::{RingDescriptor, Scalar};
use wordmap_core::rootsys::{types_up_to, verify_lemma_table, RootType};
use wordmap_core::sl2::catalogue::{dimension_certificate, separation_witness, CatalogueWord, ComponentId, Side};
use wordmap_core::sl2::lemmas::{lemma101_check, lemma78_check};
use wordmap_core::sl2::relations::{relation_scan, RelationScan};
use wordmap_core::sl2::{trace_preimage_commutator, Sl2Pair};
use wordmap_core::word::{parse, parse_word, ConstSymbol, Letter, Word, WordWithConstants};

const ADJUGATE_MATRICES: usize = 500;
const RESTRICTION_CASES: usize = 100;
const RESTRICTION_MAX_LEN: usize = 8;
const CLOSED_FORM_POINTS: usize = 50;
const HOMOGENEITY_WORDS: usize = 50;
const TRACE_FORMULA_POINTS: usize = 200;
const CERTIFICATE_SEED: u64 = 7;
const Q8_MAX_LEN: usize = 8;
const ROOT_TABLE_MAX_RANK: usize = 8;
const E8_TIME_LIMIT: Duration = Duration::from_secs(60);
const DOMINANCE_POINTS: usize = 10;
const DOMINANCE_MIN_HITS: usize = 9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn fp(p: u64) -> RingDescriptor {
    RingDescriptor::prime_field(p).unwrap()
}

fn q() -> RingDescriptor {
    RingDescriptor::rationals()
}

fn torus(ring: &RingDescriptor, l: &Scalar) -> Matrix {
    Matrix::diag(ring, &[l.clone(), ring.inv(l).unwrap()])
}

fn random_word(r: &mut ChaCha8Rng, vars: usize, max_len: usize) -> Word {
    loop {
        let len = 1 + r.next_u32() as usize % max_len;
        let letters: Vec<Letter> = (0..len)
            .map(|_| Letter::new(1 + r.next_u32() as usize % vars, if r.next_u32().is_multiple_of(2) { 1 } else { -1 }))
            .collect();
        let w = Word::from_letters(&letters);
        if !w.is_identity() {
            return w;
        }
    }
}

fn random_gl(ring: &RingDescriptor, n: usize, r: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(ring, n, r);
        if !ring.is_zero(&m.det(ring)) {
            return m;
        }
    }
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c01_adjugate() -> Outcome {
    let mut r = rng(1);
    let mut failures = 0;
    for ring in [q(), fp(101)] {
        for k in 0..ADJUGATE_MATRICES {
            let n = 2 + k % 3;
            let m = random_matrix(&ring, n, &mut r);
            let adj = m.adjugate(&ring);
            let d = Matrix::scalar(&ring, n, m.det(&ring));
            if m.mul(&ring, &adj) != d || adj.mul(&ring, &m) != d {
                failures += 1;
            }
        }
    }
    expect(failures == 0, || format!("{failures} failures"))?;
    Ok(format!("{} matrices over Q and F_101, 0 failures", 2 * ADJUGATE_MATRICES))
}

fn c02_restriction() -> Outcome {
    let ring = fp(101);
    let mut r = rng(2);
    let mut failures = 0;
    for k in 0..RESTRICTION_CASES {
        let n = 2 + k % 2;
        let w = random_word(&mut r, 2, RESTRICTION_MAX_LEN);
        let mut b = Binding::new();
        // every other case carries a constant: u s v s^-1
        let wc = if k % 4 < 2 {
            WordWithConstants::from(w.clone())
        } else {
            let s = loop {
                let s = random_sln(&ring, n, &mut r).unwrap();
                if !s.is_scalar(&ring) {
                    break s;
                }
            };
            b.insert(&ring, "s", s).unwrap();
            let c = ConstSymbol { name: "s".into(), inverted: false };
            let u = random_word(&mut r, 2, 3);
            WordWithConstants::new(vec![u, w.clone(), Word::var(1)], vec![c.clone(), c.inverse()]).unwrap()
        };
        let gl = vec![random_gl(&ring, n, &mut r), random_gl(&ring, n, &mut r)];
        if !check_restriction_identities(&ring, &wc, &b, &gl).map_err(|e| e.to_string())?.holds {
            failures += 1;
        }
        let sl = vec![random_sln(&ring, n, &mut r).unwrap(), random_sln(&ring, n, &mut r).unwrap()];
        let ext = eval_adjugate_extension(&ring, &wc, &b, &sl).map_err(|e| e.to_string())?;
        if ext != eval_group(&ring, &wc, &b, &sl).map_err(|e| e.to_string())? {
            failures += 1;
        }
    }
    expect(failures == 0, || format!("{failures} failures"))?;
    Ok(format!("{RESTRICTION_CASES} GL and {RESTRICTION_CASES} SL cases over F_101, n in {{2,3}}, 0 failures"))
}

fn c03_closed_form() -> Outcome {
    let w = parse("s x s^-1 x^-1").unwrap();
    let mut r = rng(3);
    for ring in [q(), fp(13)] {
        for _ in 0..CLOSED_FORM_POINTS {
            let s = loop {
                let s = ring.random_unit(&mut r);
                if !ring.is_one(&ring.mul(&s, &s)) {
                    break s;
                }
            };
            let y = random_matrix(&ring, 2, &mut r);
            let mut b = Binding::new();
            b.insert(&ring, "s", torus(&ring, &s)).unwrap();
            let got = eval_adjugate_extension(&ring, &w, &b, std::slice::from_ref(&y)).map_err(|e| e.to_string())?;
            let (y11, y12, y21, y22) = (y.get(0, 0), y.get(0, 1), y.get(1, 0), y.get(1, 1));
            let s2 = ring.mul(&s, &s);
            let s2i = ring.inv(&s2).unwrap();
            let one = ring.one();
            let want = Matrix::two_by_two(
                ring.sub(&ring.mul(y11, y22), &ring.mul(&s2, &ring.mul(y12, y21))),
                ring.mul(&ring.mul(y11, y12), &ring.sub(&s2, &one)),
                ring.mul(&ring.mul(y21, y22), &ring.sub(&s2i, &one)),
                ring.sub(&ring.mul(y11, y22), &ring.mul(&s2i, &ring.mul(y12, y21))),
            );
            expect(got == want, || format!("mismatch over {ring} at s = {}", ring.render(&s)))?;
        }
    }
    Ok(format!("{CLOSED_FORM_POINTS} points each over Q and F_13 match exactly"))
}

fn c04_homogeneity() -> Outcome {
    let ring = fp(101);
    let mut r = rng(4);
    for k in 0..HOMOGENEITY_WORDS {
        let n = 2 + k % 2;
        let w = random_word(&mut r, 3, 10);
        let wc = WordWithConstants::from(w.clone());
        let t: Vec<Matrix> = (0..3).map(|_| random_matrix(&ring, n, &mut r)).collect();
        let base = eval_adjugate_extension(&ring, &wc, &Binding::new(), &t).map_err(|e| e.to_string())?;
        for var in 1..=3 {
            let c = ring.random_unit(&mut r);
            let (pos, neg) = w.letters().iter().filter(|l| l.var == var).fold((0u64, 0u64), |(p, m), l| {
                if l.exp > 0 { (p + l.exp as u64, m) } else { (p, m + l.exp.unsigned_abs()) }
            });
            let d = pos + (n as u64 - 1) * neg;
            let mut scaled = t.clone();
            scaled[var - 1] = scaled[var - 1].scale(&ring, &c);
            let lhs = eval_adjugate_extension(&ring, &wc, &Binding::new(), &scaled).map_err(|e| e.to_string())?;
            expect(lhs == base.scale(&ring, &ring.pow(&c, d)), || format!("{w}, variable {var}"))?;
        }
    }
    Ok(format!("{HOMOGENEITY_WORDS} words, every variable scales by c^(a+ + (n-1) b)"))
}

fn commutator(ring: &RingDescriptor, g: &Matrix, h: &Matrix) -> Matrix {
    g.mul(ring, h).mul(ring, &g.inverse(ring).unwrap()).mul(ring, &h.inverse(ring).unwrap())
}

fn c05_trace_surjectivity() -> Outcome {
    let ring = fp(101);
    let (l, beta) = (ring.from_int(2), ring.one());
    let mut hits = 0;
    for a in ring.elements().unwrap() {
        let pair = trace_preimage_commutator(&ring, &a, &l, &beta).map_err(|e| e.to_string())?;
        Sl2Pair::new(&ring, pair.g1.clone(), pair.g2.clone()).map_err(|e| e.to_string())?;
        if commutator(&ring, &pair.g1, &pair.g2).trace(&ring) == a {
            hits += 1;
        }
    }
    expect(hits == 101, || format!("{hits}/101 hits"))?;
    Ok("101/101 traces hit exactly".into())
}

fn c06_trace_formula() -> Outcome {
    let mut r = rng(6);
    for ring in [fp(101), q()] {
        for _ in 0..TRACE_FORMULA_POINTS {
            let l = loop {
                let l = ring.random_unit(&mut r);
                if !ring.is_one(&ring.mul(&l, &l)) {
                    break l;
                }
            };
            let g = random_sl2(&ring, &mut r).unwrap();
            let lhs = commutator(&ring, &torus(&ring, &l), &g).trace(&ring);
            let diff = ring.sub(&l, &ring.inv(&l).unwrap());
            let rhs = ring.sub(&ring.from_int(2), &ring.mul(&ring.mul(g.get(0, 1), g.get(1, 0)), &ring.mul(&diff, &diff)));
            expect(lhs == rhs, || format!("mismatch over {ring}"))?;
        }
    }
    Ok(format!("{TRACE_FORMULA_POINTS} points each over F_101 and Q"))
}

fn c07_certificates() -> Outcome {
    let ring = fp(101);
    let table: [(ComponentId, usize); 9] = [
        (ComponentId::Ex1W, 4),
        (ComponentId::Ex1T, 5),
        (ComponentId::Ex2W { m: 2, n: 1, j: 4, side: Side::X }, 5),
        (ComponentId::Ex2W { m: 1, n: 2, j: 4, side: Side::Y }, 5),
        (ComponentId::Ex3W1, 3),
        (ComponentId::Ex4T { p: 5, j: 1 }, 5),
        (ComponentId::Ex4T { p: 5, j: 2 }, 5),
        (ComponentId::Ex5W1, 4),
        (ComponentId::Ex5T1, 5),
    ];
    let mut rows = Vec::new();
    for (id, dim) in table.iter().cloned().chain([(ComponentId::Ex5T2, 5)]) {
        let mut r = rng(CERTIFICATE_SEED);
        let c = dimension_certificate(&ring, &id, &id.word(), &mut r).map_err(|e| format!("{id}: {e}"))?;
        expect(c.lower == dim && c.upper == dim && c.confirmed, || {
            format!("{id}: lower {} upper {} expected {dim}", c.lower, c.upper)
        })?;
        rows.push(format!("{id}={dim}"));
    }
    Ok(rows.join(" "))
}

fn c08_separation() -> Outcome {
    let ring = fp(101);
    let words = [CatalogueWord::Ex1, CatalogueWord::Ex2 { m: 2, n: 1 }, CatalogueWord::Ex3, CatalogueWord::Ex4 { p: 5 }, CatalogueWord::Ex5];
    for cw in words {
        let pair = separation_witness(&ring, cw).map_err(|e| e.to_string())?.ok_or(format!("{cw}: none found"))?;
        let v = eval_group(&ring, &cw.word().into(), &Binding::new(), &pair.to_vec()).map_err(|e| e.to_string())?;
        let minus_i = v.sub(&ring, &Matrix::identity(&ring, 2));
        let nilpotent = minus_i.mul(&ring, &minus_i).entries().iter().all(|e| ring.is_zero(e));
        expect(v.trace(&ring) == ring.from_int(2) && !v.is_identity(&ring) && nilpotent, || format!("{cw}"))?;
    }
    Ok("5/5 words have a nontrivial unipotent value over F_101".into())
}

fn closure_size(ring: &RingDescriptor, gens: &[Matrix], cap: usize) -> usize {
    let mut seen: Vec<Matrix> = vec![Matrix::identity(ring, 2)];
    let mut i = 0;
    while i < seen.len() && seen.len() <= cap {
        for g in gens {
            let next = seen[i].mul(ring, g);
            if !seen.contains(&next) {
                seen.push(next);
            }
        }
        i += 1;
    }
    seen.len()
}

fn c09_quaternion() -> Outcome {
    let mut report = Vec::new();
    for (ring, mu) in [("Q[i]", 2), ("Fp:13", 3)] {
        let ring: RingDescriptor = ring.parse().unwrap();
        let i = ring.sqrt_minus_one().unwrap();
        let g1 = Matrix::diag(&ring, &[i.clone(), ring.neg(&i)]);
        let mu = ring.from_int(mu);
        let g2 = Matrix::two_by_two(ring.zero(), mu.clone(), ring.neg(&ring.inv(&mu).unwrap()), ring.zero());
        let pair = Sl2Pair::new(&ring, g1.clone(), g2.clone()).map_err(|e| e.to_string())?;
        let RelationScan::Relations(rels) = relation_scan(&ring, &pair, Q8_MAX_LEN).map_err(|e| e.to_string())? else {
            return Err("trivial pair".into());
        };
        for text in ["x^4", "x^2 y^-2", "[x,y] x^-2"] {
            let w = parse_word(text).unwrap();
            expect(rels.contains(&w), || format!("{text} missing over {ring}"))?;
        }
        let size = closure_size(&ring, &[g1, g2], 100);
        expect(size == 8, || format!("group of order {size} over {ring}"))?;
        report.push(format!("{ring}: {} relations, |G| = 8", rels.len()));
    }
    Ok(report.join("; "))
}

fn c10_lemma78() -> Outcome {
    let ring = fp(13);
    let lambdas: Vec<Scalar> =
        ring.elements().unwrap().filter(|l| !ring.is_zero(l) && !ring.is_one(&ring.pow(l, 4))).collect();
    let mut checked = 0;
    for l in &lambdas {
        for u in ring.elements().unwrap() {
            let rep = lemma78_check(&ring, l, &u).map_err(|e| e.to_string())?;
            let v = &rep.value;
            let lower = ring.is_one(v.get(0, 0)) && ring.is_one(v.get(1, 1)) && ring.is_zero(v.get(0, 1));
            expect(lower && v.is_identity(&ring) == ring.is_zero(&u), || {
                format!("lambda {} u {}", ring.render(l), ring.render(&u))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{} values of lambda with order > 4, {checked} pairs over F_13", lambdas.len()))
}

fn c11_lemma101() -> Outcome {
    let ring = fp(17);
    expect(ring.sqrt_minus_one() == Some(ring.from_int(4)), || "i != 4".into())?;
    expect(ring.sqrt(&ring.from_int(2)) == Some(ring.from_int(6)), || "sqrt 2 != 6".into())?;
    let rep = lemma101_check(&ring).map_err(|e| e.to_string())?;
    let half = ring.inv(&ring.from_int(2)).unwrap();
    let z = Matrix::two_by_two(ring.zero(), half, ring.from_int(-2), ring.zero());
    expect(rep.z == z, || "z differs".into())?;
    expect(rep.holds(), || format!("{rep:?}"))?;
    // the integral matrix squared over Q: trace 34
    let qq = q();
    let m = Matrix::two_by_two(qq.from_int(-1), qq.one(), qq.from_int(4), qq.from_int(-5));
    let tr = m.mul(&qq, &m).trace(&qq);
    expect(tr == qq.from_int(34), || "trace over Q".into())?;
    Ok("F_17 (i = 4, sqrt 2 = 6): z, z u z u^-1 and trace 34 != 2 verified; Q(i, sqrt 2) not available".into())
}

fn c12_root_table() -> Outcome {
    let start = Instant::now();
    let rows = verify_lemma_table(ROOT_TABLE_MAX_RANK);
    let elapsed = start.elapsed();
    let failing: BTreeSet<String> = rows.iter().filter(|r| !r.result.holds).map(|r| format!("{}{}", r.kind, r.rank)).collect();
    let expected: BTreeSet<String> = types_up_to(ROOT_TABLE_MAX_RANK)
        .into_iter()
        .filter(|&(k, r)| (k == RootType::A && r >= 2) || (k == RootType::D && (r == 5 || r == 7)) || (k == RootType::E && r == 6))
        .map(|(k, r)| format!("{k}{r}"))
        .collect();
    expect(failing == expected, || format!("fails at {failing:?}"))?;
    expect(rows.len() == 8 + 7 + 7 + 5 + 3 + 1 + 1, || format!("{} rows", rows.len()))?;
    expect(elapsed < E8_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{} types, fails exactly at {}; table in {:.2?}", rows.len(), failing.into_iter().collect::<Vec<_>>().join(" "), elapsed))
}

fn c13_dominance() -> Outcome {
    let ring = fp(101);
    let mut r = rng(13);
    let mut report = Vec::new();
    for (text, want) in [("[x,y]", 3), ("x^2", 3), ("[[x,y],y]", 3)] {
        let w = parse(text).unwrap();
        let mut hits = 0;
        for _ in 0..DOMINANCE_POINTS {
            let t: Vec<Matrix> = (0..w.max_var()).map(|_| random_sl2(&ring, &mut r).unwrap()).collect();
            if dominance_probe(&ring, &w, &Binding::new(), &t).map_err(|e| e.to_string())? == want {
                hits += 1;
            }
        }
        expect(hits >= DOMINANCE_MIN_HITS, || format!("{text}: {hits}/{DOMINANCE_POINTS}"))?;
        report.push(format!("{text} {hits}/{DOMINANCE_POINTS}"));
    }
    let mut b = Binding::new();
    b.insert(&ring, "s", torus(&ring, &ring.from_int(2))).unwrap();
    let w = parse("x s x^-1").unwrap();
    let mut hits = 0;
    for _ in 0..DOMINANCE_POINTS {
        let g = random_sl2(&ring, &mut r).unwrap();
        if dominance_probe(&ring, &w, &b, &[g]).map_err(|e| e.to_string())? == 2 {
            hits += 1;
        }
    }
    expect(hits >= DOMINANCE_MIN_HITS, || format!("x s x^-1: {hits}/{DOMINANCE_POINTS}"))?;
    report.push(format!("x s x^-1 rank 2 {hits}/{DOMINANCE_POINTS}"));
    Ok(report.join(", "))
}

fn c14_determinism() -> Outcome {
    let runs: [&[&str]; 5] = [
        &["dimcert", "--example", "ex5.W1", "--ring", "Fp:101", "--seed", "7"],
        &["chi-probe", "--word", "[x,y]", "--seed", "5", "--samples", "40"],
        &["dominance", "--word", "[[x,y],y]", "--seed", "9"],
        &["lemma-check", "78", "--ring", "Q", "--seed", "2", "--samples", "10"],
        &["roots", "table", "--max-rank", "8"],
    ];
    for args in runs {
        let once = || Command::new(env!("CARGO_BIN_EXE_wordmap")).args(args).output().unwrap();
        let (a, b) = (once(), once());
        expect(a.status.success() && !a.stdout.is_empty(), || format!("{args:?} failed"))?;
        expect(a.stdout == b.stdout, || format!("{args:?} differs between runs"))?;
        serde_json::from_slice::<serde_json::Value>(&a.stdout).map_err(|e| e.to_string())?;
    }
    Ok(format!("{} commands, byte-identical JSON on repeat", runs.len()))
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("adjugate laws", c01_adjugate),
        ("restriction identities", c02_restriction),
        ("conjugation example closed form", c03_closed_form),
        ("homogeneity", c04_homogeneity),
        ("trace surjectivity witness", c05_trace_surjectivity),
        ("commutator trace formula", c06_trace_formula),
        ("dimension certificates", c07_certificates),
        ("separation witnesses", c08_separation),
        ("quaternion detection", c09_quaternion),
        ("lemma 78 check", c10_lemma78),
        ("lemma 101 check", c11_lemma101),
        ("root-system table", c12_root_table),
        ("dominance probe", c13_dominance),
        ("determinism", c14_determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.2}s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.2}s): {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
