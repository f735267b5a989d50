use super::*;
use crate::doubling::{conic_even_ideal, conic_odd_ideal};
use crate::idealops::intersect;

fn p3() -> Ring {
    Ring::projective(3, Field::Rational)
}

#[test]
fn literal_families() {
    let f = build_family(FamilyKind::G1).unwrap();
    let fib = fiber(&f, &Scalar::from_int(0)).unwrap();
    assert!(fib.equals(&conic_odd_ideal(1).unwrap()));
    let f = build_family(FamilyKind::G3).unwrap();
    let fib = fiber(&f, &Scalar::from_int(0)).unwrap();
    assert!(fib.equals(&conic_odd_ideal(0).unwrap()));
    let h = fib.second_difference().unwrap();
    assert!(h.iter().eq(h.iter().rev()));
}

#[test]
fn genus_minus_one_family() {
    let f = build_family(FamilyKind::GMinus1).unwrap();
    assert_eq!(f.recipe, Recipe::Intersection);
    let g = f.ideal.ring().parse("x*(x*z - y^2) - z^2*w").unwrap();
    assert!(f.ideal.contains(&g));
    let special = fiber(&f, &Scalar::from_int(0)).unwrap();
    assert!(special.equals(&conic_odd_ideal(2).unwrap()));
    let general = fiber(&f, &Scalar::from_int(1)).unwrap();
    let r = p3();
    let two = intersect(
        &Ideal::parse(&r, &["w", "x*z - y^2"]).unwrap(),
        &Ideal::parse(&r, &["w + x", "z^2 + x*z - y^2"]).unwrap(),
    )
    .unwrap();
    assert!(general.equals(&two));
    assert_eq!(general.hilbert().unwrap().polynomial_string(), "4t + 2");
}

#[test]
fn genus_zero_family() {
    let f = build_family(FamilyKind::G0).unwrap();
    assert_eq!(f.recipe, Recipe::Quotient);
    let special = fiber(&f, &Scalar::from_int(0)).unwrap();
    assert!(special.equals(&conic_even_ideal(1).unwrap()));
}

#[test]
fn flatness() {
    let s = |v: &[i64]| v.iter().map(|&c| Scalar::from_int(c)).collect::<Vec<_>>();
    let rep = flatness_evidence(&build_family(FamilyKind::GMinus1).unwrap(), &s(&[0, 1, 2, -1])).unwrap();
    assert!(rep.constant);
    assert!(rep.polynomials.iter().all(|p| p == "4t + 2"));
    assert_eq!(rep.kind, "evidence");
    let rep = flatness_evidence(&build_family(FamilyKind::G0).unwrap(), &s(&[0, 1, 3, 5])).unwrap();
    assert!(rep.constant);
    assert!(rep.polynomials.iter().all(|p| p == "4t + 1"));
    let c = constant_family(&Ideal::parse(&p3(), &["w", "x*z - y^2"]).unwrap()).unwrap();
    let rep = flatness_evidence(&c, &s(&[0, 1, 2])).unwrap();
    assert!(rep.constant && rep.polynomials[0] == "2t + 1");
    assert!(matches!(flatness_evidence(&c, &s(&[1, 2, 3])), Err(Error::Input(_))));
    assert!(matches!(flatness_evidence(&c, &s(&[0, 1])), Err(Error::Input(_))));
}

#[test]
fn names_round_trip() {
    for k in [FamilyKind::GMinus1, FamilyKind::G0, FamilyKind::G1, FamilyKind::G3] {
        assert_eq!(FamilyKind::parse(k.name()), Some(k));
    }
    assert_eq!(FamilyKind::parse("g2"), None);
}
