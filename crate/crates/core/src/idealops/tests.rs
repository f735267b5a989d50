use super::*;
use crate::polyring::{Mono, Ring};

fn p3() -> Ring {
    Ring::projective(3, Field::Rational)
}

fn id(r: &Ring, g: &[&str]) -> Ideal {
    Ideal::parse(r, g).unwrap()
}

#[test]
fn power_of_two_generators() {
    let r = p3();
    let i = id(&r, &["x0*x2 - x1^2", "x3"]);
    let sq = i.power(2);
    assert_eq!(sq.gens().len(), 3);
    assert!(sq.equals(&id(&r, &["x3^2", "x3*x0*x2 - x3*x1^2", "x0^2*x2^2 - 2*x0*x1^2*x2 + x1^4"])));
}

#[test]
fn product_with_unit() {
    let r = p3();
    let i = id(&r, &["x0*x2 - x1^2", "x3"]);
    assert!(i.product(&Ideal::unit(&r)).unwrap().equals(&i));
}

#[test]
fn eliminate_parameter() {
    // x0 - s*x2, x1 - s*x3 with s of weight 0
    let r = Ring::new(
        ["s", "x0", "x1", "x2", "x3"].iter().map(|s| s.to_string()).collect(),
        Field::Rational,
        MonoOrder::DEGREVLEX.with_zero_mask(1),
    );
    let i = id(&r, &["x0 - s*x2", "x1 - s*x3"]);
    let e = eliminate(&i, &[0]).unwrap();
    let expect = Ideal::parse(e.ring(), &["x0*x3 - x1*x2"]).unwrap();
    assert!(e.is_subset(&expect) && expect.is_subset(&e));
    let z = eliminate(&id(&p3(), &["x3"]), &[3]).unwrap();
    assert!(z.is_zero());
}

#[test]
fn intersections() {
    let r = p3();
    let a = id(&r, &["x0"]);
    let b = id(&r, &["x1"]);
    assert!(intersect(&a, &b).unwrap().equals(&id(&r, &["x0*x1"])));
    let i = id(&r, &["x0*x2 - x1^2", "x3"]);
    assert!(intersect(&i, &i).unwrap().equals(&i));
}

#[test]
fn two_disjoint_conics() {
    let r = p3();
    let a = id(&r, &["x3", "x0*x2 - x1^2"]);
    let b = id(&r, &["x3 + x0", "x2^2 + x0*x2 - x1^2"]);
    let c = intersect(&a, &b).unwrap();
    assert_eq!(c.hilbert().unwrap().polynomial_string(), "4t + 2");
}

#[test]
fn quotients() {
    let r = p3();
    let q = quotient(&id(&r, &["x0^2"]), &id(&r, &["x0"])).unwrap();
    assert!(q.equals(&id(&r, &["x0"])));
    let i = id(&r, &["x0*x2 - x1^2", "x3^2"]);
    assert!(quotient(&i, &Ideal::unit(&r)).unwrap().equals(&i));
    assert!(quotient(&i, &Ideal::zero(&r)).is_err());
}

#[test]
fn saturation_of_embedded_point() {
    let r = p3();
    // ⟨x0⟩ ∩ ⟨x0..x3⟩^2 saturates to ⟨x0⟩
    let i = intersect(&id(&r, &["x0"]), &Ideal::maximal(&r).power(2)).unwrap();
    assert!(!i.equals(&id(&r, &["x0"])));
    let s = saturate(&i).unwrap();
    assert!(s.equals(&id(&r, &["x0"])));
    let s2 = saturate_by(&i, &Ideal::maximal(&r)).unwrap();
    assert!(s2.equals(&s));
    assert!(saturate(&s).unwrap().equals(&s));
}

#[test]
fn twisted_cubic_hilbert() {
    let r = p3();
    let i = id(&r, &["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"]);
    let h = i.hilbert_checked(40).unwrap();
    assert_eq!(h.polynomial_string(), "3t + 1");
    assert_eq!(h.curve_data(), Some((3, 0)));
    for d in 0..6 {
        assert_eq!(i.hilbert_function(d).unwrap() as usize, hilbert_function_by_rank(&i, d as u32));
    }
    assert!(i.is_saturated().unwrap());
}

#[test]
fn zero_ideal_two_vars() {
    let r = Ring::projective(1, Field::Rational);
    let z = Ideal::zero(&r);
    for d in 0..5 {
        assert_eq!(z.hilbert_function(d).unwrap(), d as i128 + 1);
    }
}

#[test]
fn conic_h_vector() {
    let r = Ring::projective(2, Field::Rational);
    let i = id(&r, &["x0*x2 - x1^2"]);
    // a plane conic has Krull dimension 2
    assert_eq!(i.h_vector(7).unwrap(), vec![1, 1]);
    assert_eq!(i.second_difference().unwrap(), vec![1, 1]);
}

#[test]
fn doc_roundtrip() {
    let r = p3();
    let i = id(&r, &["x1^2 - x0*x2", "x3"]);
    let doc = i.to_doc();
    let j = Ideal::from_doc(&doc).unwrap();
    assert_eq!(j.to_doc(), doc);
    let s = serde_json::to_string(&doc).unwrap();
    let back: IdealDoc = serde_json::from_str(&s).unwrap();
    assert_eq!(back, doc);
}

#[test]
fn minimalize_drops_redundant() {
    let r = p3();
    let i = id(&r, &["x0", "x0*x1", "x1^2", "x0^2 + x1^2"]);
    let m = i.minimalize();
    assert_eq!(m.gens().len(), 2);
    assert!(m.equals(&i));
}

#[test]
fn monomial_initial_numerator() {
    let n = monomial_numerator(&[Mono::from_exps(&[1, 1])], 2);
    assert_eq!(n, vec![1, 0, -1]);
}
