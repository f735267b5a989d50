use super::*;
use crate::resolution::{acm_report, is_ag};
use proptest::prelude::*;

fn b() -> Ring {
    Ring::binary(Field::Rational)
}

fn forms(s: &[&str]) -> Vec<Poly> {
    s.iter().map(|x| b().parse(x).unwrap()).collect()
}

fn mu(r: usize, n: usize, a: u32, e: &[&str]) -> MuMap {
    MuMap::parse(r, n, a, e, Field::Rational).unwrap()
}

#[test]
fn psi_small() {
    assert_eq!(psi_matrix(3).unwrap(), vec![forms(&["t", "u", "0"]), forms(&["0", "t", "u"])]);
    assert_eq!(psi_matrix(2).unwrap(), vec![forms(&["1"])]);
    assert!(matches!(psi_matrix(1), Err(Error::Input(_))));
}

#[test]
fn psi4_last_column() {
    let p = psi_matrix(4).unwrap();
    // columns (1,2),(1,3),(1,4),(2,3),(2,4),(3,4)
    let col: Vec<Poly> = p.iter().map(|row| row[2].clone()).collect();
    assert_eq!(col, forms(&["u^2", "t*u", "t^2"]));
    for row in &p {
        for e in row {
            assert!(e.is_zero() || e.homogeneous_degree() == Some(2));
        }
    }
}

#[test]
fn existence_of_surjections() {
    assert!(MuMap::exists(2, 2, 0));
    assert!(!MuMap::exists(2, 2, 1));
    assert!(!MuMap::exists(2, 3, 1));
    assert!(MuMap::exists(2, 3, 2));
    assert!(MuMap::exists(3, 3, 1));
    assert!(!MuMap::exists(2, 2, 4));
    assert!(matches!(MuMap::random(2, 3, 1, 0), Err(Error::Input(_))));
}

#[test]
fn mu_validation() {
    assert!(matches!(MuMap::parse(3, 3, 1, &["t", "t^2"], Field::Rational), Err(Error::Input(_))));
    assert!(matches!(MuMap::parse(2, 3, 1, &["t", "u"], Field::Rational), Err(Error::Input(_))));
    assert!(matches!(MuMap::parse(3, 3, 1, &["t", "2*t"], Field::Rational), Err(Error::Input(_))));
    assert!(matches!(MuMap::parse(3, 3, 0, &["0", "0"], Field::Rational), Err(Error::Input(_))));
    assert!(matches!(MuMap::parse(2, 2, 1, &["t"], Field::Rational), Err(Error::Input(_))));
    assert!(matches!(MuMap::parse(3, 3, 1, &["t"], Field::Rational), Err(Error::Input(_))));
    assert!(MuMap::parse(2, 2, 0, &["5"], Field::Rational).is_ok());
    assert!(MuMap::parse(3, 4, 2, &["t^2", "0", "1"], Field::Rational).is_ok());
}

#[test]
fn compose_examples() {
    assert_eq!(compose_mu_psi(&mu(3, 3, 1, &["t", "u"])).unwrap(), forms(&["t^2", "2*t*u", "u^2"]));
    let m = conic_odd_mu(3).unwrap();
    assert_eq!(compose_mu_psi(&m).unwrap(), forms(&["u^6", "t^4"]));
    let m = mu(3, 5, 0, &["1", "1", "0", "0"]);
    assert_eq!(compose_mu_psi(&m).unwrap(), forms(&["t", "t + u", "u", "0", "0"]));
}

#[test]
fn mu_json_round_trip() {
    let m = mu(3, 4, 3, &["t^3 - u^3", "t*u^2", "t + u"]);
    let doc = m.to_doc();
    let text = serde_json::to_string(&doc).unwrap();
    let back: MuDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(MuMap::from_doc(&back).unwrap(), m);
    assert_eq!(doc.block2.len(), 1);
}

#[test]
fn eval_examples() {
    let m = conic_odd_mu(2).unwrap();
    let ev = MuEvaluator::new(&m).unwrap();
    let w = ev.ctx.x(3);
    assert_eq!(ev.eval_checked(&w).unwrap(), b().parse("t^2").unwrap());
    let q = ev.ctx.f(1, 2);
    assert_eq!(ev.eval_checked(&q).unwrap(), b().parse("u^4").unwrap());
    assert!(ev.eval_checked(&q.mul(&w)).unwrap().is_zero());
    assert!(matches!(ev.eval(&ev.ctx.x(0)), Err(Error::Input(_))));
    assert_eq!(ev.target_degree(1), 2);
}

#[test]
fn eval_is_independent_of_the_expression() {
    // f_{13} x_3 ... in two ways through ε: x_1 f_23 - x_2 f_13 + x_3 f_12 = 0
    let m = mu(3, 3, 1, &["t", "u"]);
    let ev = MuEvaluator::new(&m).unwrap();
    let c = &ev.ctx;
    for g in c.minors3().iter().chain(c.quadrics()) {
        for k in 0..=3 {
            let f = c.x(k).mul(g);
            assert_eq!(ev.eval(&f).unwrap(), ev.eval_shuffled(&f).unwrap());
        }
    }
}

#[test]
fn twisted_cubic_example() {
    let m = mu(3, 3, 1, &["t", "u"]);
    let x = double_ideal_checked(&m).unwrap();
    let c = &x.ctx;
    let n = [
        ["2*x1", "2*x2", "2*x3", "0", "0", "0"],
        ["-x0", "-x1", "-x2", "x1", "x2", "x3"],
        ["0", "0", "0", "-2*x0", "-2*x1", "-2*x2"],
    ];
    let mut gens = c.ideal().power(2).gens().to_vec();
    #[allow(clippy::needless_range_loop)]
    for col in 0..6 {
        let mut g = c.ring.zero();
        for (row, f) in c.quadrics().iter().enumerate() {
            g = &g + &c.ring.parse(n[row][col]).unwrap().mul(f);
        }
        gens.push(g);
    }
    let expect = Ideal::new(&c.ring, gens).unwrap();
    assert!(x.ideal.equals(&expect));
    assert_eq!(x.genus().unwrap(), 3);
    assert!(acm_report(&x.ideal, 7).unwrap().acm);
    assert!(x.invariants().unwrap().ok());
}

#[test]
fn conic_examples() {
    let x = double_ideal(&conic_odd_mu(3).unwrap()).unwrap();
    let r = x.ideal.ring().clone();
    let e = Ideal::parse(&r, &["w^2", "w*(x*z - y^2)", "(x*z - y^2)^2", "x^2*(x*z - y^2) - z^3*w"]).unwrap();
    assert!(x.ideal.equals(&e));
    let x = double_ideal(&conic_even_mu(1).unwrap()).unwrap();
    let e = Ideal::parse(
        &r,
        &["w^2", "w*(x*z - y^2)", "(x*z - y^2)^2", "x*(x*z - y^2) - y*z*w", "y*(x*z - y^2) - z^2*w"],
    )
    .unwrap();
    assert!(x.ideal.equals(&e));
    for b in 0..=4 {
        let x = double_ideal_checked(&conic_odd_mu(b).unwrap()).unwrap();
        assert!(x.ideal.equals(&conic_odd_ideal(b).unwrap()), "odd b={b}");
        assert_eq!(x.genus().unwrap(), 3 - 2 * b as i64);
    }
    for b in 1..=3 {
        let x = double_ideal_checked(&conic_even_mu(b).unwrap()).unwrap();
        assert!(x.ideal.equals(&conic_even_ideal(b).unwrap()), "even b={b}");
        assert_eq!(x.genus().unwrap(), 2 - 2 * b as i64);
    }
}

#[test]
fn conic_generator_twists() {
    let b = 3u32;
    let x = double_ideal(&conic_odd_mu(b).unwrap()).unwrap();
    let res = crate::resolution::free_resolution(&x.ideal).unwrap();
    let mut f1 = res.modules[1].clone();
    f1.sort();
    assert_eq!(f1, vec![2, 3, 4, b as i64 + 1]);
    let mut f2 = res.modules[2].clone();
    f2.sort();
    assert_eq!(f2, vec![4, 5, b as i64 + 2, b as i64 + 3]);
    assert_eq!(res.modules[3], vec![b as i64 + 4]);
}

#[test]
fn equivalence_examples() {
    let a = mu(3, 3, 1, &["t", "u"]);
    let b3 = mu(3, 3, 1, &["3*t", "3*u"]);
    let s = mu(3, 3, 1, &["u", "t"]);
    assert!(mu_equivalence_check(&a, &b3).unwrap());
    assert!(mu_equivalence_check(&a, &a).unwrap());
    assert!(!mu_equivalence_check(&a, &s).unwrap());
    assert!(double_ideal(&a).unwrap().ideal.equals(&double_ideal(&b3).unwrap().ideal));
    // swapping the entries gives a different doubling of the same curve
    assert!(!double_ideal(&a).unwrap().ideal.equals(&double_ideal(&s).unwrap().ideal));
    let other = mu(3, 4, 1, &["t", "u", "0"]);
    assert!(matches!(mu_equivalence_check(&a, &other), Err(Error::Input(_))));
}

#[test]
fn elliptic_fixtures() {
    let x = ag_fixtures(AgKind::Elliptic, 2).unwrap();
    let e = Ideal::parse(x.ideal.ring(), &["x0*x2 - x1^2", "x3^2"]).unwrap();
    assert!(x.ideal.equals(&e));
    for r in 3..=4 {
        let x = ag_fixtures(AgKind::Elliptic, r).unwrap();
        assert!(x.ideal.equals(&elliptic_ideal(r).unwrap()));
        assert!(scroll_ideal(r).unwrap().is_subset(&x.ideal));
        assert!(is_ag(&x.ideal).unwrap());
        assert_eq!(x.genus().unwrap(), 1);
    }
    let j = elliptic_ideal(3).unwrap();
    for g in ["x1*x4 - x0*x5", "x2*x4 - x1*x5", "x3*x4 - x2*x5"] {
        assert!(j.contains(&j.ring().parse(g).unwrap()));
    }
}

#[test]
fn canonical_fixtures() {
    let x = ag_fixtures(AgKind::Canonical, 4).unwrap();
    let rep = acm_report(&x.ideal, 3).unwrap();
    assert!(rep.acm && rep.ag);
    assert_eq!(rep.h_vector, vec![1, 3, 3, 1]);
    assert_eq!(x.genus().unwrap(), 5);
    for seed in 0..3 {
        let x = double_ideal(&canonical_mu_random(3, seed).unwrap()).unwrap();
        assert!(is_ag(&x.ideal).unwrap());
        assert_eq!(x.genus().unwrap(), 4);
    }
}

#[test]
fn degree_cap_is_reported() {
    let m = conic_odd_mu(4).unwrap();
    assert!(matches!(double_ideal_capped(&m, 2), Err(Error::Cap(_))));
}

#[test]
fn cokernel_dimension_matches_line_bundle() {
    for m in [conic_odd_mu(2).unwrap(), mu(3, 3, 1, &["t", "u"]), mu(3, 4, 2, &["t^2", "u^2", "1"]), elliptic_mu(3).unwrap()] {
        let x = double_ideal(&m).unwrap();
        let ic = x.ctx.ideal();
        for d in (m.a.max(1))..=(m.a + 3) {
            let want = (m.r as i64 * d as i64 - m.r as i64 - 2 + m.a as i64 + 1).max(0);
            let got = (x.ideal.hilbert_function(d as i64).unwrap() - ic.hilbert_function(d as i64).unwrap()) as i64;
            assert_eq!(got, want, "d={d} mu={:?}", m.to_doc());
        }
    }
}

#[test]
fn random_grid_small() {
    // primary and syzygy-lift constructions agree
    for r in 2..=3usize {
        for n in r..=r + 1 {
            for a in 0..=3u32 {
                if !MuMap::exists(r, n, a) {
                    continue;
                }
                let m = MuMap::random(r, n, a, 17 * a as u64 + n as u64).unwrap();
                let x = double_ideal_checked(&m).unwrap();
                assert!(x.invariants().unwrap().ok(), "{:?}", m.to_doc());
            }
        }
    }
}

#[test]
fn lift_skips_syzygies_already_in_the_ideal() {
    // r = 4: cubic syzygy generators whose images lie in the three quadrics
    let m = mu(4, 4, 0, &["2", "3", "-3"]);
    let x = double_ideal_checked(&m).unwrap();
    assert_eq!(x.ideal.gens().len(), 3);
    let m = MuMap::random(4, 5, 3, 1).unwrap();
    assert!(double_ideal_checked(&m).unwrap().invariants().unwrap().ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn rescaling_mu_keeps_the_ideal(r in 2usize..=3, extra in 0usize..=1, a in 0u32..=3, seed in 0u64..1000, c in 1i64..=5) {
        prop_assume!(MuMap::exists(r, r + extra, a));
        let m = MuMap::random(r, r + extra, a, seed).unwrap();
        let s = m.scaled(&Scalar::from_int(-c));
        prop_assert!(mu_equivalence_check(&m, &s).unwrap());
        prop_assert!(double_ideal(&m).unwrap().ideal.equals(&double_ideal(&s).unwrap().ideal));
    }

    #[test]
    fn doubling_invariants_hold(r in 2usize..=3, extra in 0usize..=2, a in 0u32..=4, seed in 0u64..1000) {
        prop_assume!(MuMap::exists(r, r + extra, a));
        let m = MuMap::random(r, r + extra, a, seed).unwrap();
        let x = double_ideal(&m).unwrap();
        let inv = x.invariants().unwrap();
        prop_assert!(inv.ok(), "{:?}", inv);
        prop_assert_eq!(x.genus().unwrap(), r as i64 + 1 - a as i64);
    }
}
