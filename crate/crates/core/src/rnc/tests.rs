use super::*;
use proptest::prelude::*;

fn ctx(r: usize, n: usize) -> RncContext {
    RncContext::new(r, n, Field::Rational).unwrap()
}

#[test]
fn twisted_cubic_ideal() {
    let i = rnc_ideal(3, 3).unwrap();
    let expect = Ideal::parse(i.ring(), &["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"]).unwrap();
    assert!(i.equals(&expect));
    assert_eq!(i.hilbert().unwrap().curve_data(), Some((3, 0)));
}

#[test]
fn conic_in_p3_and_p2() {
    let i = rnc_ideal(2, 3).unwrap();
    assert!(i.equals(&Ideal::parse(i.ring(), &["x0*x2 - x1^2", "x3"]).unwrap()));
    let j = rnc_ideal(2, 2).unwrap();
    assert_eq!(j.gens().len(), 1);
    assert!(j.equals(&Ideal::parse(j.ring(), &["x0*x2 - x1^2"]).unwrap()));
}

#[test]
fn generator_order_and_count() {
    for r in 2..=5 {
        for n in r..=r + 2 {
            let c = ctx(r, n);
            assert_eq!(c.generators().len(), (r * (r - 1)) / 2 + (n - r));
            let pairs = c.pairs().to_vec();
            let mut sorted = pairs.clone();
            sorted.sort();
            assert_eq!(pairs, sorted);
            assert_eq!(c.ideal().hilbert().unwrap().curve_data(), Some((r as i64, 0)));
        }
    }
}

#[test]
fn bad_parameters() {
    assert!(matches!(RncContext::new(1, 3, Field::Rational), Err(Error::Input(_))));
    assert!(matches!(RncContext::new(4, 3, Field::Rational), Err(Error::Input(_))));
}

#[test]
fn pullback_examples() {
    let c = ctx(3, 3);
    let b = &c.binary;
    assert!(c.pullback(&c.ring.parse("x0*x2 - x1^2").unwrap()).is_zero());
    assert_eq!(c.pullback(&c.x(0)), b.parse("t^3").unwrap());
    assert_eq!(pullback(&c.ring.parse("x1*x3").unwrap(), &c), b.parse("t^2*u^4").unwrap());
    let c5 = ctx(2, 4);
    assert!(c5.pullback(&c5.x(3)).is_zero());
}

#[test]
fn pullback_kernel_is_the_ideal() {
    for r in 2..=5 {
        let c = ctx(r, r);
        let i = c.ideal();
        for d in 1..=4u32 {
            let hf = i.hilbert_function(d as i64).unwrap() as usize;
            let all = monomials_of_degree(r + 1, d).len();
            assert_eq!(kernel_of_pullback_dim(&c, d), all - hf, "r={r} d={d}");
            // and (R/I_C)_d ≅ K[t,u]_{rd}
            assert_eq!(hf, (r as u32 * d + 1) as usize);
        }
    }
}

#[test]
fn lift_inverts_pullback() {
    let c = ctx(4, 5);
    let g = c.binary.parse("3*t^8 - t^5*u^3 + 2*u^8").unwrap();
    let f = c.lift(&g, 2).unwrap();
    assert_eq!(c.pullback(&f), g);
    assert!(matches!(c.lift(&g, 3), Err(Error::Input(_))));
}

#[test]
fn initial_ideal_of_curve() {
    for r in 2..=6 {
        let c = ctx(r, r);
        let (in1, _) = predicted_initial_ideals(r);
        let mut got = initial_generators(&c.ideal());
        let mut want = in1;
        got.sort_by_key(|m| m.exps(r + 1));
        want.sort_by_key(|m| m.exps(r + 1));
        assert_eq!(got, want, "r={r}");
    }
}

#[test]
fn initial_ideal_of_square() {
    for r in 3..=5 {
        let c = ctx(r, r);
        let (_, in2) = predicted_initial_ideals(r);
        let mut got = initial_generators(&c.ideal().power(2));
        let mut want = in2;
        got.sort_by_key(|m| m.exps(r + 1));
        want.sort_by_key(|m| m.exps(r + 1));
        assert_eq!(got, want, "r={r}");
    }
}

#[test]
fn minor_has_two_linear_expansions() {
    for r in 3..=6 {
        let c = ctx(r, r);
        for i in 2..=r {
            for j in i + 1..=r {
                for h in j + 1..=r {
                    let g = c.g(i, j, h);
                    let first = &(&c.x(i - 2).mul(&c.f(j, h)) - &c.x(j - 2).mul(&c.f(i, h))) + &c.x(h - 2).mul(&c.f(i, j));
                    let second = &(&c.x(i).mul(&c.f(j - 1, h - 1)) - &c.x(j).mul(&c.f(i - 1, h - 1)))
                        + &c.x(h).mul(&c.f(i - 1, j - 1));
                    assert_eq!(g, first, "({i},{j},{h})");
                    assert_eq!(g, second, "({i},{j},{h})");
                }
            }
        }
    }
}

#[test]
fn minor_times_variable_in_square() {
    for r in 3..=6 {
        let c = ctx(r, r);
        for i in 2..=r {
            for j in i + 1..=r {
                for h in j + 1..=r {
                    let g = c.g(i, j, h);
                    for k in h..=r {
                        let rhs = &(&c.f(i - 1, k).mul(&c.f(j, h)) - &c.f(j - 1, k).mul(&c.f(i, h)))
                            + &c.f(h - 1, k).mul(&c.f(i, j));
                        assert_eq!(c.x(k).mul(&g), rhs, "({i},{j},{h},{k})");
                    }
                }
            }
        }
    }
}

#[test]
fn minors_vanish_on_the_curve_but_not_in_the_square() {
    let c = ctx(4, 4);
    let g = c.g(2, 3, 4);
    let b = det(&c.catalecticant(3));
    assert_eq!(g, b);
    assert!(c.pullback(&g).is_zero());
    assert!(!c.ideal().power(2).contains(&g));
    for k in 0..=4 {
        assert!(c.ideal().power(2).contains(&c.x(k).mul(&g)));
    }
}

#[test]
fn square_saturation_small() {
    let rep = square_saturation_theorem(3, 3).unwrap();
    assert!(rep.equal && rep.square_is_saturated);
    assert_eq!(rep.quotient_dim_3, 0);
    let rep = square_saturation_theorem(4, 4).unwrap();
    assert!(rep.equal && !rep.square_is_saturated);
    assert_eq!(rep.minors_outside_square, 1);
    assert!(rep.quotient_dim_3 > 0);
    let rep = square_saturation_theorem(4, 5).unwrap();
    assert!(rep.equal);
}

#[test]
fn wahl_values() {
    let w = wahl_check(3, 3, -1, 5).unwrap();
    assert_eq!(w[&2], 1);
    assert!(w.iter().all(|(j, v)| *j == 2 || *v == 0));
    let w = wahl_check(4, 4, -1, 5).unwrap();
    assert_eq!(w[&2], 3);
    assert!(w.iter().all(|(j, v)| *j == 2 || *v == 0));
    let w = wahl_check(2, 2, -1, 4).unwrap();
    assert!(w.values().all(|v| *v == 0));
}

#[test]
fn epsilon_is_a_syzygy() {
    for r in 3..=5 {
        let c = ctx(r, r);
        let eps = epsilon_matrix(r).unwrap();
        assert_eq!(eps.ncols(), 2 * binomial(r as i64, 3) as usize);
        for col in eps.columns() {
            let mut acc = c.ring.zero();
            for (e, f) in col.iter().zip(c.quadrics()) {
                acc = &acc + &e.mul(f);
            }
            assert!(acc.is_zero());
        }
    }
    assert!(matches!(epsilon_matrix(2), Err(Error::Input(_))));
}

#[test]
fn psi3_kernel_generator() {
    let c = ctx(3, 3);
    let gens = psi_kernel_generators(&c);
    assert_eq!(gens.len(), 1);
    let b = &c.binary;
    assert_eq!(gens[0], vec![b.parse("u^2").unwrap(), b.parse("-t*u").unwrap(), b.parse("t^2").unwrap()]);
}

#[test]
fn conormal_small() {
    for r in 2..=6 {
        let rep = conormal_check(r, r).unwrap();
        assert!(rep.ok, "{rep:?}");
        assert_eq!(rep.kernel_generators as i64, binomial(r as i64 - 1, 2));
        if r >= 3 {
            assert_eq!(rep.generator_degree, 2);
        }
    }
}

#[test]
fn rnc_betti_tables() {
    for (r, n) in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4), (4, 5)] {
        let rep = betti_check_rnc(r, n).unwrap();
        assert!(rep.ok, "{rep:?}");
    }
    // twisted cubic: 3 quadrics, 2 linear syzygies
    assert_eq!(predicted_rnc_modules(3, 3), vec![vec![2, 2, 2], vec![3, 3]]);
}

#[test]
fn binomials() {
    assert_eq!(binomial(5, 2), 10);
    assert_eq!(binomial(2, 3), 0);
    assert_eq!(binomial(3, -1), 0);
    assert_eq!(binomial(0, 0), 1);
}

fn small_form(c: &RncContext, coeffs: &[i64], d: u32) -> Poly {
    let monos = monomials_of_degree(c.n + 1, d);
    let terms = monos.iter().zip(coeffs.iter().cycle()).map(|(m, k)| (*m, Scalar::from_int(*k))).collect();
    Poly::from_terms(c.ring.ctx, terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pullback_is_multiplicative(r in 2usize..=4, extra in 0usize..=2,
                                  a in prop::collection::vec(-3i64..=3, 1..12),
                                  b in prop::collection::vec(-3i64..=3, 1..12),
                                  da in 1u32..=2, db in 1u32..=2) {
        let c = ctx(r, r + extra);
        let f = small_form(&c, &a, da);
        let g = small_form(&c, &b, db);
        prop_assert_eq!(c.pullback(&f.mul(&g)), c.pullback(&f).mul(&c.pullback(&g)));
        prop_assert_eq!(c.pullback(&(&f + &g.mul(&c.x(0)))).is_zero(), c.pullback(&f) == c.pullback(&g.mul(&c.x(0))).neg());
    }

    #[test]
    fn pullback_of_ideal_vanishes(r in 2usize..=5, coeffs in prop::collection::vec(-3i64..=3, 1..8)) {
        let c = ctx(r, r + 1);
        let mut f = c.ring.zero();
        for (k, g) in c.generators().iter().enumerate() {
            let m = c.x(k % (r + 1));
            f = &f + &m.mul(g).scale(&Scalar::from_int(coeffs[k % coeffs.len()]));
        }
        prop_assert!(c.pullback(&f).is_zero());
    }
}
