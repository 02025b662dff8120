use wordmap_core::rootsys::{build, dot, expected_root_count, star_search, types_up_to, RootSystem};

/// Witness check written against the raw root list.
fn independent_check(rs: &RootSystem, w: &[Vec<i32>]) -> bool {
    let is_root = |v: &Vec<i32>| rs.roots.iter().any(|r| r == v);
    w.len() == rs.rank
        && w.iter().all(is_root)
        && w.iter().enumerate().all(|(i, a)| {
            w[i + 1..].iter().all(|b| {
                let sum: Vec<i32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let diff: Vec<i32> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                dot(a, b) == 0 && !is_root(&sum) && !is_root(&diff)
            })
        })
}

#[test]
fn witnesses_verify_and_are_deterministic() {
    for (kind, rank) in types_up_to(8) {
        let rs = build(kind, rank).unwrap();
        let first = star_search(&rs);
        assert_eq!(first, star_search(&rs), "{}", rs.label());
        if let Some(w) = &first.witness {
            assert!(independent_check(&rs, w), "{}", rs.label());
        }
    }
}

#[test]
fn axioms_for_every_type() {
    for (kind, rank) in types_up_to(8) {
        let rs = build(kind, rank).unwrap();
        assert_eq!(rs.roots.len(), expected_root_count(kind, rank));
        assert!(rs.is_closed_under_negation());
        assert!(rs.cartan_integral());
        // all roots have one of at most two lengths
        let mut lengths: Vec<i32> = rs.roots.iter().map(|r| dot(r, r)).collect();
        lengths.sort();
        lengths.dedup();
        assert!(lengths.len() <= 2, "{}", rs.label());
    }
}

#[test]
fn e_types_sit_inside_e8() {
    let e8 = build(wordmap_core::rootsys::RootType::E, 8).unwrap();
    for r in [6, 7] {
        let e = build(wordmap_core::rootsys::RootType::E, r).unwrap();
        assert!(e.roots.iter().all(|x| e8.contains(x)), "E{r}");
    }
}
