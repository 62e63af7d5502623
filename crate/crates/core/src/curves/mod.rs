//! Point counting on hyperelliptic curves y^2 = f(x) (f monic of odd degree
//! 2g+1, genus g = 1 or 2) over prime fields, and the Frobenius
//! characteristic polynomial of the Jacobian.
//!
//! The genus-2 quadratic coefficient a2 comes from full F_{p^2} enumeration
//! for small p and from a baby-step/giant-step search in the Jacobian above
//! the enumeration threshold; the overlap band doubles as a permanent
//! cross-validation suite.

mod bsgs;
pub mod mumford;

pub use bsgs::{hasse_witt_mod_p, jacobian_order_bsgs, jacobian_order_bsgs_seeded};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{discriminant, is_prime_u64, PolyZ, PrimeFieldCtx};
use crate::weil::{validate_weil, WeilError, WeilPoly};

/// Largest p for which F_{p^2} enumeration is the a2 method (and the
/// default budget of `count_points_fp2`); BSGS takes over beyond it.
pub const FP2_ENUM_MAX: u64 = 499;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("bad curve model: {0}")]
    BadModel(String),
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("p = {0} exceeds the F_p^2 enumeration budget {1}")]
    BudgetExceeded(u64, u64),
    #[error("jacobian order not unique after divisor limit at p = {0}")]
    NonuniqueAfterLimit(u64),
    #[error("operation requires genus {0}, curve has genus {1}")]
    GenusMismatch(usize, usize),
    #[error(transparent)]
    Weil(#[from] WeilError),
}

/// y^2 = f(x), f monic of degree 2g+1 with nonzero discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperellipticCurve {
    label: String,
    genus: usize,
    f: PolyZ,
    disc: BigInt,
}

/// The JSON wire form of a curve: ascending integer coefficients, monic.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveSpec {
    pub label: String,
    pub genus: usize,
    pub f: Vec<i64>,
}

impl HyperellipticCurve {
    pub fn new(label: &str, genus: usize, f: PolyZ) -> Result<Self, CurveError> {
        if genus != 1 && genus != 2 {
            return Err(CurveError::BadModel(format!("genus {} not supported", genus)));
        }
        if f.is_zero() || !f.is_monic() {
            return Err(CurveError::BadModel("f must be monic".into()));
        }
        if f.degree() != 2 * genus + 1 {
            return Err(CurveError::BadModel(format!(
                "genus {} needs deg f = {}, got {} (even-degree models rejected)",
                genus,
                2 * genus + 1,
                f.degree()
            )));
        }
        let disc = discriminant(&f).expect("nonzero f");
        if disc.is_zero() {
            return Err(CurveError::BadModel("singular model: disc(f) = 0".into()));
        }
        Ok(HyperellipticCurve { label: label.into(), genus, f, disc })
    }

    pub fn from_spec(spec: &CurveSpec) -> Result<Self, CurveError> {
        HyperellipticCurve::new(&spec.label, spec.genus, PolyZ::from_i64(&spec.f))
    }

    pub fn to_spec(&self) -> CurveSpec {
        use num_traits::ToPrimitive;
        CurveSpec {
            label: self.label.clone(),
            genus: self.genus,
            f: self.f.coeffs().iter().map(|c| c.to_i64().expect("small coeff")).collect(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn f(&self) -> &PolyZ {
        &self.f
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// Good reduction: p odd prime not dividing disc(f).
    pub fn good_reduction(&self, p: u64) -> bool {
        p != 2 && is_prime_u64(p) && !(&self.disc % BigInt::from(p)).is_zero()
    }

    pub fn f_mod(&self, field: &PrimeFieldCtx) -> crate::algebra::PolyF {
        crate::algebra::PolyF::from_polyz(field, &self.f)
    }
}

/// Counts over F_p and (optionally) F_{p^2}, with the derived Weil
/// coefficients: a1 = n1 - (p+1) and a2 = (s1^2 - s2)/2, s_i the root
/// power sums p^i + 1 - n_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCounts {
    pub p: u64,
    pub n1: u64,
    pub n2: Option<u64>,
    pub a1: i64,
    pub a2: Option<i64>,
}

/// #C(F_p): the affine character sum plus the single point at infinity.
pub fn count_points_fp(curve: &HyperellipticCurve, p: u64) -> Result<u64, CurveError> {
    if !curve.good_reduction(p) {
        return Err(CurveError::BadReduction(p));
    }
    let field = PrimeFieldCtx::new(p).expect("prime");
    let f = curve.f_mod(&field);
    let mut is_square = vec![false; p as usize];
    for x in 1..p {
        is_square[field.mul(x, x) as usize] = true;
    }
    let mut count = 1u64; // infinity
    for x in 0..p {
        let fx = f.eval(x);
        if fx == 0 {
            count += 1;
        } else if is_square[fx as usize] {
            count += 2;
        }
    }
    Ok(count)
}

/// #C(F_{p^2}) by enumeration over F_p[t]/(t^2 - u), u a non-residue.
pub fn count_points_fp2(curve: &HyperellipticCurve, p: u64) -> Result<u64, CurveError> {
    count_points_fp2_budget(curve, p, FP2_ENUM_MAX)
}

pub fn count_points_fp2_budget(
    curve: &HyperellipticCurve,
    p: u64,
    budget: u64,
) -> Result<u64, CurveError> {
    if !curve.good_reduction(p) {
        return Err(CurveError::BadReduction(p));
    }
    if p > budget {
        return Err(CurveError::BudgetExceeded(p, budget));
    }
    let field = PrimeFieldCtx::new(p).expect("prime");
    let mut is_square = vec![false; p as usize];
    for x in 1..p {
        is_square[field.mul(x, x) as usize] = true;
    }
    let u = (2..p).find(|&z| !is_square[z as usize]).expect("odd p has a non-residue");

    let idx = |a: u64, b: u64| (a * p + b) as usize;
    // squares table for F_{p^2}: (a + b t)^2 = (a^2 + b^2 u) + (2ab) t
    let mut sq2 = vec![false; (p * p) as usize];
    for a in 0..p {
        for b in 0..p {
            if a == 0 && b == 0 {
                continue;
            }
            let re = field.add(field.mul(a, a), field.mul(field.mul(b, b), u));
            let im = field.mul(2 % p, field.mul(a, b));
            sq2[idx(re, im)] = true;
        }
    }
    let coeffs: Vec<u64> = {
        let f = curve.f_mod(&field);
        (0..=f.degree()).map(|i| f.coeff(i)).collect()
    };
    let mut count = 1u64; // infinity
    for a in 0..p {
        for b in 0..p {
            let (mut re, mut im) = (0u64, 0u64);
            for &c in coeffs.iter().rev() {
                // (re + im t)(a + b t) + c
                let nre = field.add(field.add(field.mul(re, a), field.mul(field.mul(im, b), u)), c);
                let nim = field.add(field.mul(re, b), field.mul(im, a));
                re = nre;
                im = nim;
            }
            if re == 0 && im == 0 {
                count += 1;
            } else if sq2[idx(re, im)] {
                count += 2;
            }
        }
    }
    Ok(count)
}

/// Counts with the genus-appropriate a2 source (None for genus 1).
pub fn point_counts(curve: &HyperellipticCurve, p: u64) -> Result<PointCounts, CurveError> {
    point_counts_seeded(curve, p, 0)
}

pub fn point_counts_seeded(
    curve: &HyperellipticCurve,
    p: u64,
    seed: u64,
) -> Result<PointCounts, CurveError> {
    let n1 = count_points_fp(curve, p)?;
    let a1 = n1 as i64 - (p as i64 + 1);
    if curve.genus == 1 {
        return Ok(PointCounts { p, n1, n2: None, a1, a2: None });
    }
    if p <= FP2_ENUM_MAX {
        let n2 = count_points_fp2(curve, p)?;
        let s1 = -(a1 as i128);
        let s2 = (p as i128) * (p as i128) + 1 - n2 as i128;
        let a2 = (s1 * s1 - s2) / 2;
        Ok(PointCounts { p, n1, n2: Some(n2), a1, a2: Some(a2 as i64) })
    } else {
        let (a2, _order) = jacobian_order_bsgs_seeded(curve, p, a1, seed)?;
        Ok(PointCounts { p, n1, n2: None, a1, a2: Some(a2) })
    }
}

/// Frobenius characteristic polynomial of the Jacobian, validated.
/// Genus 1: x^2 + a1 x + p. Genus 2: x^4 + a1 x^3 + a2 x^2 + a1 p x + p^2.
pub fn frobenius_poly(curve: &HyperellipticCurve, p: u64) -> Result<WeilPoly, CurveError> {
    frobenius_poly_seeded(curve, p, 0)
}

pub fn frobenius_poly_seeded(
    curve: &HyperellipticCurve,
    p: u64,
    seed: u64,
) -> Result<WeilPoly, CurveError> {
    let counts = point_counts_seeded(curve, p, seed)?;
    let poly = weil_poly_from_counts(&counts, curve.genus);
    Ok(validate_weil(&poly, &BigUint::from(p))?)
}

pub fn weil_poly_from_counts(counts: &PointCounts, genus: usize) -> PolyZ {
    let p = counts.p as i64;
    match genus {
        1 => PolyZ::from_i64(&[p, counts.a1, 1]),
        2 => {
            let a2 = counts.a2.expect("genus 2 needs a2");
            PolyZ::new(vec![
                BigInt::from(p) * BigInt::from(p),
                BigInt::from(counts.a1) * BigInt::from(p),
                BigInt::from(a2),
                BigInt::from(counts.a1),
                BigInt::from(1),
            ])
        }
        _ => unreachable!("genus validated at construction"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn curve_x5m1() -> HyperellipticCurve {
        HyperellipticCurve::new("x5-1", 2, PolyZ::from_i64(&[-1, 0, 0, 0, 0, 1])).unwrap()
    }

    pub(crate) fn curve_e1() -> HyperellipticCurve {
        HyperellipticCurve::new("e1", 1, PolyZ::from_i64(&[1, 1, 0, 1])).unwrap()
    }

    /// Direct y-loop enumeration; independent of the character-sum route.
    fn oracle_count_fp(curve: &HyperellipticCurve, p: u64) -> u64 {
        let field = PrimeFieldCtx::new(p).unwrap();
        let f = curve.f_mod(&field);
        let mut n = 1u64;
        for x in 0..p {
            for y in 0..p {
                if field.mul(y, y) == f.eval(x) {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn model_validation() {
        assert!(HyperellipticCurve::new("bad", 2, PolyZ::from_i64(&[1, 0, 1])).is_err());
        // disc = 0: f = x^3 (triple root)
        assert!(HyperellipticCurve::new("sing", 1, PolyZ::from_i64(&[0, 0, 0, 1])).is_err());
        // even-degree model rejected
        assert!(HyperellipticCurve::new("even", 2, PolyZ::from_i64(&[1, 0, 0, 0, 0, 0, 1])).is_err());
        // non-monic rejected
        assert!(HyperellipticCurve::new("nm", 1, PolyZ::from_i64(&[1, 1, 0, 2])).is_err());
    }

    #[test]
    fn count_fixtures() {
        // y^2 = x^3+x+1 over F_5: 9 points (exhaustive oracle agrees)
        let e = curve_e1();
        assert_eq!(count_points_fp(&e, 5).unwrap(), 9);
        assert_eq!(oracle_count_fp(&e, 5), 9);

        // y^2 = x^5-1: 8 points over F_7, 16 over F_11
        let c = curve_x5m1();
        assert_eq!(count_points_fp(&c, 7).unwrap(), 8);
        assert_eq!(oracle_count_fp(&c, 7), 8);
        assert_eq!(count_points_fp(&c, 11).unwrap(), 16);
        assert_eq!(oracle_count_fp(&c, 11), 16);

        assert!(matches!(count_points_fp(&c, 2), Err(CurveError::BadReduction(2))));
        // p = 5 divides disc(x^5 - 1)
        assert!(matches!(count_points_fp(&c, 5), Err(CurveError::BadReduction(5))));
    }

    #[test]
    fn count_fp2_fixtures() {
        let c = curve_x5m1();
        assert_eq!(count_points_fp2(&c, 7).unwrap(), 50);
        // p = 19: s2 = -76 forced by the supersingular split, so n2 = 438
        assert_eq!(count_points_fp2(&c, 19).unwrap(), 438);
        let e = curve_e1();
        assert_eq!(count_points_fp2(&e, 5).unwrap(), 27);
        assert!(matches!(
            count_points_fp2(&c, 503),
            Err(CurveError::BudgetExceeded(503, _))
        ));
    }

    #[test]
    fn frobenius_fixtures() {
        // sign convention lock: P(x) = x^2 + 3x + 5 for the p=5 elliptic fixture
        let e = curve_e1();
        let w = frobenius_poly(&e, 5).unwrap();
        assert_eq!(w.poly(), &PolyZ::from_i64(&[5, 3, 1]));

        // p = 19: (x^2 + 19)^2
        let c = curve_x5m1();
        let w = frobenius_poly(&c, 19).unwrap();
        assert_eq!(w.poly(), &PolyZ::from_i64(&[361, 0, 38, 0, 1]));

        // p = 11: trace = p + 1 - n1 = -4, so a1 = 4
        let w = frobenius_poly(&c, 11).unwrap();
        assert_eq!(w.poly().coeff(3), BigInt::from(4));
        assert_eq!(w.poly().coeff(1), BigInt::from(44));
    }

    #[test]
    fn power_sum_count_consistency() {
        // #C(F_{p^i}) = p^i + 1 - s_i for i = 1, 2: ties the exact counts to
        // the Newton power sums of the produced Weil polynomial.
        let curves = [curve_e1(), curve_x5m1()];
        for c in &curves {
            for p in [7u64, 11, 13, 19, 23, 101, 199] {
                if !c.good_reduction(p) {
                    continue;
                }
                let w = frobenius_poly(c, p).unwrap();
                let s = w.poly().power_sums(2);
                let n1 = count_points_fp(c, p).unwrap();
                assert_eq!(BigInt::from(p) + 1 - &s[0], BigInt::from(n1));
                let n2 = count_points_fp2(c, p).unwrap();
                assert_eq!(BigInt::from(p * p) + 1 - &s[1], BigInt::from(n2));
            }
        }
    }
}
