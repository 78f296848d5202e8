use blocktool_core::lietype::{
    cross_check_small_instance, cyclic_sylow_criterion, grid, simple_order, CriterionReport, LieTypeCase, Series,
};
use blocktool_core::{Error, GroupFile, Limits};

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/lietype_grid.json");

fn the_grid() -> Vec<LieTypeCase> {
    grid(4, &[2, 3, 4, 5], 13)
}

/// Order of `a` mod p by listing powers.
fn naive_order(a: i64, p: u64) -> u64 {
    let a = a.rem_euclid(p as i64) as u64;
    let mut x = a;
    let mut d = 1;
    while x != 1 {
        x = x * a % p;
        d += 1;
    }
    d
}

fn pow_mod(q: u64, e: u32, p: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * q % p)
}

/// Direct evaluation of the criterion from the stated conditions, with the
/// group order reduced mod p term by term.
fn oracle(c: &LieTypeCase) -> bool {
    let (n, q, p) = (c.n as u64, c.q, c.p);
    let qm = |e: u32| (pow_mod(q, e, p) + p - 1) % p;
    let qp = |e: u32| (pow_mod(q, e, p) + 1) % p;
    let only_one = |d: u64, set: &[u64]| set.iter().filter(|k| *k % d == 0).count() == 1;
    let d = naive_order(q as i64, p);
    let bullet = match c.series {
        Series::A => p > n + 1 && only_one(d, &(2..=n + 1).collect::<Vec<_>>()),
        Series::TwistedA => p > n + 1 && only_one(naive_order(-(q as i64), p), &(2..=n + 1).collect::<Vec<_>>()),
        Series::B | Series::C => p > n && only_one(d, &(1..=n).map(|i| 2 * i).collect::<Vec<_>>()),
        Series::D => {
            let mut set: Vec<u64> = (1..n).map(|i| 2 * i).collect();
            set.push(n);
            p > n && only_one(d, &set)
        }
        Series::TwistedD => {
            let mut set: Vec<u64> = (1..n).map(|i| 2 * i).collect();
            set.push(2 * n);
            p > n && only_one(d, &set)
        }
        Series::TrialityD4 => qm(4) != 0 && p >= 5,
        Series::E6 | Series::TwistedE6 => qm(4) * qm(6) % p != 0 && p >= 7,
        Series::E7 => qm(4) * qm(6) % p != 0 && p >= 11,
    };
    // p divides |S| iff it divides one of the cyclotomic-type factors; the
    // power of q and the small gcd denominators are coprime to p >= 5.
    let factors: Vec<u64> = match c.series {
        Series::A => (2..=c.n + 1).map(qm).collect(),
        Series::TwistedA => (2..=c.n + 1).map(|i| if i % 2 == 0 { qm(i) } else { qp(i) }).collect(),
        Series::B | Series::C => (1..=c.n).map(|i| qm(2 * i)).collect(),
        Series::D => (1..c.n).map(|i| qm(2 * i)).chain([qm(c.n)]).collect(),
        Series::TwistedD => (1..c.n).map(|i| qm(2 * i)).chain([qp(c.n)]).collect(),
        Series::TrialityD4 => vec![(pow_mod(q, 8, p) + pow_mod(q, 4, p) + 1) % p, qm(6), qm(2)],
        Series::E6 => [12, 9, 8, 6, 5, 2].into_iter().map(qm).collect(),
        Series::TwistedE6 => [12, 9, 8, 6, 5, 2].into_iter().map(|i| if i % 2 == 1 { qp(i) } else { qm(i) }).collect(),
        Series::E7 => [18, 14, 12, 10, 8, 6, 2].into_iter().map(qm).collect(),
    };
    let divides_order = factors.contains(&0);
    bullet && p >= 5 && divides_order
}

#[test]
fn grid_matches_golden_file() {
    let reports: Vec<CriterionReport> = the_grid().iter().map(|c| cyclic_sylow_criterion(c).unwrap()).collect();
    let text = serde_json::to_string_pretty(&reports).unwrap() + "\n";
    if std::env::var_os("BLOCKTOOL_BLESS").is_some() {
        std::fs::write(GOLDEN, &text).unwrap();
    }
    let golden: Vec<CriterionReport> = serde_json::from_str(&std::fs::read_to_string(GOLDEN).unwrap()).unwrap();
    assert_eq!(golden, reports);
    for r in &golden {
        let base = if r.d_of_minus_q { -(r.q as i64) } else { r.q as i64 };
        assert_eq!(r.d, naive_order(base, r.p), "{r:?}");
        let case = LieTypeCase {
            series: r.series,
            n: r.n,
            q: r.q,
            p: r.p,
        };
        assert_eq!(r.criterion, oracle(&case), "{r:?}");
    }
}

#[test]
fn psl32_cross_check() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/PSL2_7.json");
    let g = GroupFile::parse(&std::fs::read_to_string(path).unwrap()).unwrap().to_group().unwrap();
    for (p, sylow) in [(3, 3), (7, 7)] {
        let case = LieTypeCase {
            series: Series::A,
            n: 2,
            q: 2,
            p,
        };
        let check = cross_check_small_instance(&case, &g, Limits::default()).unwrap();
        assert_eq!(check.sylow_order, sylow);
        assert!(check.sylow_cyclic && check.consistent);
        assert_eq!(check.criterion, p == 7);
    }
    let wrong = LieTypeCase {
        series: Series::A,
        n: 3,
        q: 2,
        p: 7,
    };
    assert!(matches!(
        cross_check_small_instance(&wrong, &g, Limits::default()),
        Err(Error::RealizationMismatch(_))
    ));
    assert_eq!(simple_order(Series::A, 2, 2).to_string(), "168");
}
