use blocktool_core::chartab::{class_fusion, restrict, CharacterTable};
use blocktool_core::{CycNum, FiniteGroup, GroupFile, Limits, PermGroup, Permutation};

fn corpus(name: &str) -> FiniteGroup {
    let path = format!("{}/../../corpus/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let file = GroupFile::parse(&std::fs::read_to_string(path).unwrap()).unwrap();
    FiniteGroup::new(file.to_group().unwrap(), Limits::default()).unwrap()
}

fn table(name: &str) -> CharacterTable {
    CharacterTable::compute(&corpus(name), name).unwrap()
}

fn sorted_degrees(t: &CharacterTable) -> Vec<u64> {
    let mut d = t.degrees();
    d.sort_unstable();
    d
}

#[test]
fn published_degree_multisets() {
    let cases: &[(&str, &[u64])] = &[
        ("trivial", &[1]),
        ("C2", &[1, 1]),
        ("C4", &[1, 1, 1, 1]),
        ("S3", &[1, 1, 2]),
        ("A4", &[1, 1, 1, 3]),
        ("S4", &[1, 1, 2, 3, 3]),
        ("D10", &[1, 1, 2, 2]),
        ("SL2_3", &[1, 1, 1, 2, 2, 2, 3]),
        ("A5", &[1, 3, 3, 4, 5]),
        ("PSL2_7", &[1, 3, 3, 6, 7, 8]),
    ];
    for (name, degrees) in cases {
        assert_eq!(sorted_degrees(&table(name)), *degrees, "{name}");
    }
}

/// S3 by hand: induce the characters of C3 = <(1 2 3)> and decompose.
#[test]
fn s3_matches_induced_characters() {
    let t = table("S3");
    // Classes in canonical order: identity, transpositions, 3-cycles.
    let orders: Vec<u64> = t.classes().iter().map(|c| c.order).collect();
    assert_eq!(orders, vec![1, 2, 3]);
    let int_row = |v: &[i64]| v.iter().map(|&x| CycNum::from_int(x)).collect::<Vec<_>>();
    assert_eq!(t.characters()[0], int_row(&[1, 1, 1]));
    assert_eq!(t.characters()[1], int_row(&[1, -1, 1]));
    // Inducing a faithful character of C3: 2 at 1, 0 on transpositions,
    // w + w^2 = -1 on 3-cycles.
    assert_eq!(t.characters()[2], int_row(&[2, 0, -1]));
}

#[test]
fn a5_has_golden_ratio_values() {
    let t = table("A5");
    let z = |k| CycNum::root_of_unity(5, k);
    // (1 + sqrt5)/2 = 1 + z + z^4 = -(z^2 + z^3)
    let golden = -(z(2) + z(3));
    assert_eq!(golden, CycNum::one() + z(1) + z(4));
    let three: Vec<usize> = (0..5).filter(|&i| t.degree(i) == 3).collect();
    assert_eq!(three.len(), 2);
    for &i in &three {
        let five_cycle_values: Vec<&CycNum> = (0..5)
            .filter(|&c| t.classes()[c].order == 5)
            .map(|c| &t.character(i)[c])
            .collect();
        let other = CycNum::one() - golden.clone();
        assert!(five_cycle_values.contains(&&golden) && five_cycle_values.contains(&&other));
    }
}

#[test]
fn restriction_to_c5_and_fusion() {
    let g = corpus("A5");
    let t = CharacterTable::compute(&g, "A5").unwrap();
    let c5 = PermGroup::new(5, vec![Permutation::from_cycles(5, &[&[1, 2, 3, 4, 5]]).unwrap()]).unwrap();
    let h = FiniteGroup::new(c5, Limits::default()).unwrap();
    let fusion = class_fusion(&h, &g).unwrap();
    let targets: Vec<usize> = fusion.map[1..].to_vec();
    let mut distinct = targets.clone();
    distinct.sort_unstable();
    distinct.dedup();
    assert_eq!(distinct.len(), 2);
    for c in &distinct {
        assert_eq!(targets.iter().filter(|x| *x == c).count(), 2);
    }
    let chi4 = (0..5).find(|&i| t.degree(i) == 4).unwrap();
    let res = restrict(t.character(chi4), &fusion);
    let expected: Vec<CycNum> = [4, -1, -1, -1, -1].iter().map(|&x| CycNum::from_int(x)).collect();
    assert_eq!(res, expected);
    // Trivial subgroup and the identity fusion.
    let triv = FiniteGroup::new(PermGroup::trivial(5), Limits::default()).unwrap();
    assert_eq!(class_fusion(&triv, &g).unwrap().map, vec![0]);
    assert_eq!(class_fusion(&g, &g).unwrap().map, (0..5).collect::<Vec<_>>());
}

#[test]
fn p_regular_classes() {
    let a5 = table("A5");
    let reg: Vec<u64> = a5.p_regular_classes(5).iter().map(|&c| a5.classes()[c].order).collect();
    assert_eq!(reg, vec![1, 2, 3]);
    let s3 = table("S3");
    assert_eq!(s3.p_regular_classes(3).len(), 2);
    assert_eq!(s3.p_regular_classes(7).len(), 3);
}

#[test]
fn json_round_trip_and_rejection() {
    let t = table("PSL2_7");
    let text = t.to_json();
    let back = CharacterTable::from_json(&text).unwrap();
    assert_eq!(back.to_json(), text);
    assert_eq!(back, t);
    // Corrupt one value: validation must fail.
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["characters"][1][0] = serde_json::json!({"m": 1, "terms": [[0, 2, 1]]});
    assert!(CharacterTable::from_json(&v.to_string()).is_err());
}
