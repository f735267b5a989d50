use super::*;
use crate::polyring::{Field, Ring};

fn p3() -> Ring {
    Ring::projective(3, Field::Rational)
}

fn res(r: &Ring, g: &[&str]) -> (Ideal, FreeResolution) {
    let i = Ideal::parse(r, g).unwrap();
    let f = free_resolution(&i).unwrap();
    (i, f)
}

#[test]
fn koszul_of_variables() {
    let r = p3();
    let (i, f) = res(&r, &["x0", "x1", "x2", "x3"]);
    assert_eq!(f.ranks(), vec![1, 4, 6, 4, 1]);
    assert!(f.compositions_vanish().unwrap());
    assert!(f.hilbert_identity(&i).unwrap());
}

#[test]
fn twisted_cubic() {
    let r = p3();
    let (i, f) = res(&r, &["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"]);
    assert_eq!(f.ranks(), vec![1, 3, 2]);
    assert_eq!(f.modules[2], vec![3, 3]);
    assert!(f.compositions_vanish().unwrap());
    assert!(f.hilbert_identity(&i).unwrap());
    assert!(is_acm(&i).unwrap());
    assert!(!is_ag(&i).unwrap());
}

#[test]
fn complete_intersection_is_ag() {
    let r = p3();
    let i = Ideal::parse(&r, &["x0*x2 - x1^2", "x3^2"]).unwrap();
    assert!(is_ag(&i).unwrap());
    let rep = acm_report(&i, 1).unwrap();
    assert_eq!(rep.h_vector, vec![1, 2, 1]);
}

#[test]
fn hypersurface() {
    let r = Ring::projective(2, Field::Rational);
    let (_, f) = res(&r, &["x0*x2 - x1^2"]);
    assert_eq!(f.modules, vec![vec![0], vec![2]]);
}

#[test]
fn non_minimal_input_prunes() {
    let r = p3();
    let (i, f) = res(&r, &["x0", "x0 + x1", "x1*x2", "x0*x3"]);
    assert_eq!(f.ranks(), vec![1, 2, 1]);
    assert!(f.hilbert_identity(&i).unwrap());
}

#[test]
fn koszul_syzygies_of_three_variables() {
    let r = p3();
    let m = ModuleMap::row(r.ctx, &[r.var(0), r.var(1), r.var(2)]);
    let s = syzygies(&m).unwrap();
    assert_eq!(s.ncols(), 3);
    assert!(m.compose(&s).unwrap().is_zero());
    assert_eq!(s.source, vec![2, 2, 2]);
}

#[test]
fn betti_text_layout() {
    let r = p3();
    let (_, f) = res(&r, &["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"]);
    let t = f.betti_text();
    assert!(t.contains("total: 1 3 2"), "{t}");
    assert!(t.contains("1: . 3 2"), "{t}");
}


#[test]
fn pruning_clears_rows_with_polynomial_multipliers() {
    // canonical doubling in P^5: the Schreyer frame has unit entries whose
    // rows also carry forms of positive degree
    let mu = crate::doubling::canonical_mu(5, &[1, 2, 3, 4]).unwrap();
    let x = crate::doubling::double_ideal(&mu).unwrap();
    let f = free_resolution(&x.ideal).unwrap();
    assert!(f.is_minimal());
    assert!(f.compositions_vanish().unwrap());
    assert!(f.hilbert_identity(&x.ideal).unwrap());
    assert_eq!(f.ranks().last(), Some(&1));
}

fn form(r: &Ring, d: u32, coeffs: &[i64]) -> crate::polyring::Poly {
    use crate::polyring::{monomials_of_degree, Poly, Scalar};
    let terms = monomials_of_degree(r.nvars(), d)
        .into_iter()
        .zip(coeffs.iter().cycle())
        .filter(|(_, c)| **c != 0)
        .map(|(m, c)| (m, Scalar::from_int(*c)))
        .collect();
    Poly::from_terms(r.ctx, terms)
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]

    #[test]
    fn resolutions_are_complexes(
        specs in proptest::collection::vec((1u32..=3, proptest::collection::vec(-2i64..=2, 1..9)), 1..4)
    ) {
        let r = p3();
        let gens: Vec<_> = specs.iter().map(|(d, c)| form(&r, *d, c)).filter(|g| !g.is_zero()).collect();
        proptest::prop_assume!(!gens.is_empty());
        let i = Ideal::new(&r, gens).unwrap();
        proptest::prop_assume!(!i.is_unit());
        let f = free_resolution(&i).unwrap();
        proptest::prop_assert!(f.is_minimal());
        proptest::prop_assert!(f.compositions_vanish().unwrap());
        proptest::prop_assert!(f.hilbert_identity(&i).unwrap());
    }
}
