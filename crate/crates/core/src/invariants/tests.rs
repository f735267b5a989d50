use super::*;
use crate::doubling::{ag_fixtures, conic_even_mu, conic_odd_mu, double_ideal, AgKind};
use crate::polyring::Field;
use crate::resolution::acm_report;
use proptest::prelude::*;

fn mu(r: usize, n: usize, a: u32, e: &[&str]) -> MuMap {
    MuMap::parse(r, n, a, e, Field::Rational).unwrap()
}

/// Rao function of the odd-genus double conic, written out piecewise.
fn odd_table(b: i64, j: i64) -> i64 {
    if j == 1 {
        return 2 * b - 2;
    }
    if -b + 2 <= j && j <= 0 {
        return 2 * (j + b) - 3;
    }
    if 2 <= j && j <= b {
        return 2 * (b - j) + 1;
    }
    0
}

/// Rao function of the even-genus double conic, written out piecewise.
fn even_table(b: i64, j: i64) -> i64 {
    if j == 1 {
        return 2 * b - 1;
    }
    if -b < j && j <= 0 {
        return 2 * (b + j - 1);
    }
    if 2 <= j && j <= b + 1 {
        return 2 * (b - j + 1);
    }
    0
}

#[test]
fn formula_examples() {
    let m = mu(3, 3, 1, &["t", "u"]);
    assert_eq!(rao_formula(&m, 1).unwrap(), RaoValue { value: 0, is_bound: false });
    for j in -3..=6 {
        if j != 2 {
            assert_eq!(rao_formula(&m, j).unwrap().value, 0);
        }
    }
    let m = conic_odd_mu(2).unwrap();
    assert_eq!(rao_formula(&m, 0).unwrap().value, 1);
    assert_eq!(rao_formula(&m, 1).unwrap().value, 2);
    let unit = mu(4, 4, 0, &["1", "0", "2"]);
    for j in -2..=5 {
        let v = rao_formula(&unit, j).unwrap();
        assert_eq!(v.value, if j == 2 { 3 } else { 0 });
        assert_eq!(v.is_bound, j == 2);
    }
}

#[test]
fn direct_examples() {
    let x = double_ideal(&conic_odd_mu(2).unwrap()).unwrap();
    let vals: Vec<i64> = (-1..=3).map(|j| rao_direct(&x, j).unwrap()).collect();
    assert_eq!(vals, vec![0, 1, 2, 1, 0]);
    let x = double_ideal(&mu(3, 3, 1, &["t", "u"])).unwrap();
    assert_eq!(rao_direct(&x, 2).unwrap(), 0);
    let x = double_ideal(&conic_even_mu(2).unwrap()).unwrap();
    let vals: Vec<i64> = (-1..=3).map(|j| rao_direct(&x, j).unwrap()).collect();
    assert_eq!(vals, vec![0, 2, 3, 2, 0]);
}

#[test]
fn conic_tables() {
    for b in 1..=4i64 {
        let x = double_ideal(&conic_odd_mu(b as u32).unwrap()).unwrap();
        let p = rao_profile(&x).unwrap();
        for j in p.lo..=p.hi {
            assert_eq!(p.value(j), odd_table(b, j), "odd b={b} j={j}");
        }
        assert_eq!(p.total(), (p.lo..=p.hi).map(|j| odd_table(b, j)).sum::<i64>());
    }
    for b in 1..=3i64 {
        let x = double_ideal(&conic_even_mu(b as u32).unwrap()).unwrap();
        let p = rao_profile(&x).unwrap();
        for j in p.lo..=p.hi {
            assert_eq!(p.value(j), even_table(b, j), "even b={b} j={j}");
        }
    }
}

#[test]
fn profile_window_is_closed() {
    let x = double_ideal(&conic_odd_mu(3).unwrap()).unwrap();
    let p = rao_profile(&x).unwrap();
    assert_eq!(p.value(p.lo), 0);
    assert_eq!(p.value(p.hi), 0);
    assert_eq!(p.values[&0].source, RaoSource::BothAgree);
    assert_eq!(p.values[&2].source, RaoSource::Direct);
    let (exact, bound) = p.j2().unwrap();
    assert!(exact <= bound);
}

#[test]
fn genus_and_triples() {
    let x = double_ideal(&mu(3, 3, 1, &["t", "u"])).unwrap();
    assert_eq!(genus(&x).unwrap(), 3);
    let e = ag_fixtures(AgKind::Elliptic, 3).unwrap();
    assert_eq!(triple(&e).unwrap(), TripleClass { degree: 6, genus: 1, n: 5, ag_admissible: true });
    assert_eq!(triple_class(2, -4, 3), TripleClass { degree: 4, genus: -4, n: 3, ag_admissible: false });
    assert!(triple_class(4, 5, 4).ag_admissible);
    assert!(triple_class(2, 3, 2).ag_admissible);
    assert!(!triple_class(3, 3, 3).ag_admissible);
}

#[test]
fn family_dimensions() {
    for g in -6..=3 {
        assert_eq!(family_dimension(2, g, 3), 13 - 2 * g);
        // (n-1)(5-g)+3 for conics
        for n in 3..=6usize {
            assert_eq!(family_dimension(2, g, n), (n as i64 - 1) * (5 - g) + 3);
        }
    }
    assert_eq!(family_dimension(2, -1, 3), 15);
    // 4*(7-3) - 7 + 6 evaluated by hand
    assert_eq!(family_dimension(3, 3, 3), 15);
    assert_eq!(rnc_family_dimension(3, 3), 12);
    assert_eq!(rnc_family_dimension(2, 3), 8);
}

#[test]
fn second_difference_checks() {
    let fixtures = vec![
        double_ideal(&mu(3, 3, 1, &["t", "u"])).unwrap(),
        double_ideal(&conic_odd_mu(2).unwrap()).unwrap(),
        ag_fixtures(AgKind::Canonical, 4).unwrap(),
        ag_fixtures(AgKind::Elliptic, 3).unwrap(),
        double_ideal(&mu(2, 4, 5, &["u^5", "t^3", "0"])).unwrap(),
    ];
    for x in &fixtures {
        let rep = delta2_report(x).unwrap();
        assert!(rep.ok, "{rep:?}");
    }
    // ACM: symmetric h-vector exactly when Gorenstein
    for x in &fixtures {
        let rep = acm_report(&x.ideal, 11).unwrap();
        if rep.acm {
            let h = &rep.h_vector;
            let sym = h.iter().eq(h.iter().rev());
            assert_eq!(sym, rep.ag, "{h:?}");
        }
    }
}

#[test]
fn analyze_report_shape() {
    let x = double_ideal(&conic_odd_mu(2).unwrap()).unwrap();
    let rep = analyze(&x, 5).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    for key in ["triple", "genus", "hilbert_polynomial", "h_vector", "rao", "acm", "ag", "family_dimension"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(rep.genus, -1);
    assert_eq!(rep.hilbert_polynomial, "4t + 2");
    assert!(!rep.acm);
    assert_eq!(rep.rao.get(&1), Some(&2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn formula_matches_sections(r in 2usize..=3, extra in 0usize..=1, a in 0u32..=4, seed in 0u64..500) {
        prop_assume!(MuMap::exists(r, r + extra, a));
        let m = MuMap::random(r, r + extra, a, seed).unwrap();
        let x = double_ideal(&m).unwrap();
        let p = rao_profile(&x).unwrap();
        for (j, e) in &p.values {
            prop_assert!(e.value >= 0);
            if *j != 2 {
                prop_assert_eq!(e.value, e.formula);
            } else {
                prop_assert!(e.value <= e.formula);
            }
        }
    }
}
