//! One-parameter degenerations of curves in `P^3` onto double conics.
//!
//! A family lives in `K[x, y, z, w, s]` with `s` of weight 0, so that
//! homogeneity in `x, y, z, w` is kept while `s` varies. Fibers are taken by
//! substituting `s = c` and saturating.

use serde::{Deserialize, Serialize};

use crate::idealops::{intersect, quotient, saturate, Ideal};
use crate::polyring::{Field, Poly, Ring, Scalar};
use crate::{Error, Result};

/// The four degenerations, named by the genus of the general fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    /// Two disjoint conics degenerating to the genus `-1` double conic.
    #[serde(rename = "g-1")]
    GMinus1,
    #[serde(rename = "g0")]
    G0,
    #[serde(rename = "g1")]
    G1,
    #[serde(rename = "g3")]
    G3,
}

impl FamilyKind {
    pub fn parse(s: &str) -> Option<FamilyKind> {
        match s {
            "g-1" | "gm1" => Some(FamilyKind::GMinus1),
            "g0" => Some(FamilyKind::G0),
            "g1" => Some(FamilyKind::G1),
            "g3" => Some(FamilyKind::G3),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::GMinus1 => "g-1",
            FamilyKind::G0 => "g0",
            FamilyKind::G1 => "g1",
            FamilyKind::G3 => "g3",
        }
    }

    pub fn genus(&self) -> i64 {
        match self {
            FamilyKind::GMinus1 => -1,
            FamilyKind::G0 => 0,
            FamilyKind::G1 => 1,
            FamilyKind::G3 => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Recipe {
    Intersection,
    Quotient,
    Literal,
}

/// An ideal in `K[x, y, z, w][s]`.
#[derive(Clone, Debug)]
pub struct FamilyIdeal {
    pub recipe: Recipe,
    pub ideal: Ideal,
}

/// `K[x, y, z, w, s]` with `s` of weight 0.
pub fn family_ring() -> Ring {
    Ring::projective(3, Field::Rational).extend(&["s"], true)
}

fn parse_ideal(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
    Ideal::parse(ring, gens)
}

pub fn build_family(which: FamilyKind) -> Result<FamilyIdeal> {
    let ring = family_ring();
    Ok(match which {
        FamilyKind::GMinus1 => {
            let a = parse_ideal(&ring, &["w", "x*z - y^2"])?;
            let b = parse_ideal(&ring, &["w + s*x", "s*z^2 + x*z - y^2"])?;
            FamilyIdeal { recipe: Recipe::Intersection, ideal: intersect(&a, &b)? }
        }
        FamilyKind::G0 => {
            let a = parse_ideal(&ring, &["w^2 + s*(x*y - z*w)", "y*(x*z - y^2) - z^2*w"])?;
            let b = parse_ideal(&ring, &["x*y - z*w", "y^2", "y*w", "w^2"])?;
            FamilyIdeal { recipe: Recipe::Quotient, ideal: quotient(&a, &b)? }
        }
        FamilyKind::G1 => FamilyIdeal { recipe: Recipe::Literal, ideal: parse_ideal(&ring, &["w^2", "x*z - y^2 - z*w"])? },
        FamilyKind::G3 => FamilyIdeal { recipe: Recipe::Literal, ideal: parse_ideal(&ring, &["w", "(x*z - y^2)^2"])? },
    })
}

/// A family that does not depend on `s`.
pub fn constant_family(ideal: &Ideal) -> Result<FamilyIdeal> {
    let ring = family_ring();
    let gens: Vec<Poly> = ideal.gens().iter().map(|g| g.shift(ring.ctx, 0)).collect();
    Ok(FamilyIdeal { recipe: Recipe::Literal, ideal: Ideal::new(&ring, gens)? })
}

/// `(F|_{s=c})^sat ⊂ K[x, y, z, w]`.
pub fn fiber(f: &FamilyIdeal, c: &Scalar) -> Result<Ideal> {
    let p3 = Ring::projective(3, Field::Rational);
    let mut images: Vec<Poly> = (0..4).map(|i| p3.var(i)).collect();
    images.push(p3.constant(c.clone()));
    let gens: Vec<Poly> = f.ideal.gens().iter().map(|g| g.substitute(&images)).filter(|g| !g.is_zero()).collect();
    let fib = saturate(&Ideal::new(&p3, gens)?)?;
    let h = fib.hilbert()?;
    if h.curve_data().is_none() {
        return Err(Error::Invariant(format!("fiber at s = {c} is not a curve (P = {})", h.polynomial_string())));
    }
    Ok(fib)
}

/// Hilbert polynomials of sampled fibers. Constancy is evidence of flatness,
/// not a proof.
#[derive(Clone, Debug, Serialize)]
pub struct FlatnessEvidence {
    pub samples: Vec<String>,
    pub polynomials: Vec<String>,
    pub constant: bool,
    pub kind: &'static str,
}

pub fn flatness_evidence(f: &FamilyIdeal, samples: &[Scalar]) -> Result<FlatnessEvidence> {
    if samples.len() < 3 || !samples.iter().any(|c| c.is_zero()) {
        return Err(Error::Input("flatness evidence needs at least 3 samples including 0".into()));
    }
    let mut polys = Vec::new();
    for c in samples {
        polys.push(fiber(f, c)?.hilbert()?.polynomial_string());
    }
    let constant = polys.windows(2).all(|w| w[0] == w[1]);
    Ok(FlatnessEvidence {
        samples: samples.iter().map(|c| c.to_string()).collect(),
        polynomials: polys,
        constant,
        kind: "evidence",
    })
}

#[cfg(test)]
mod tests;
