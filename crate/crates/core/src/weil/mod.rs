//! Weil-polynomial analytics.
//!
//! A q-Weil polynomial is monic with integer coefficients and all complex
//! roots of absolute value sqrt(q). Validation certifies this exactly: the
//! root multiset must be closed under a -> q/a (checked by stripping real
//! factors and testing the functional equation on the rest) and the real
//! transform h, with P(x) = x^g h(x + q/x), must have all roots real and
//! inside [-2 sqrt(q), 2 sqrt(q)] (Sturm counting with surd endpoints).
//!
//! On top of that sit the isogeny-splitting operations: factorization over
//! Z with the prime-field certification flag, detection of root-of-unity
//! ratios among distinct roots, base extension by Graeffe transform, m-th
//! power splitting, absolute-simplicity testing, and membership in the
//! "generic place" set (prime field + torsion-free + full-rank root group).

mod relations;

pub use relations::{phi_relation_search, PhiRelation, RelationKind};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    eval_at_surd, factor_over_z, graeffe_power, is_prime_power, AlgebraError, PolyZ, SturmChain,
    Surd,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("degree {0} is odd, want even degree 2g")]
    OddDegree(usize),
    #[error("q is not a prime power")]
    NotPrimePower,
    #[error("functional equation a_i = q^(g-i) a_(2g-i) failed")]
    FunctionalEquationFailed,
    #[error("some root is off the circle |x| = sqrt(q)")]
    RootsOffCircle,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A validated q-Weil polynomial of degree 2g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilPoly {
    poly: PolyZ,
    q: BigUint,
    p: BigUint,
    e: u32,
    g: usize,
    ordinary: bool,
}

impl WeilPoly {
    pub fn poly(&self) -> &PolyZ {
        &self.poly
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn q_u64(&self) -> Option<u64> {
        use num_traits::ToPrimitive;
        self.q.to_u64()
    }

    /// The rational prime below q.
    pub fn char_p(&self) -> &BigUint {
        &self.p
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    /// True when the middle coefficient is coprime to p (equivalently, the
    /// constant term of the real transform is).
    pub fn is_ordinary(&self) -> bool {
        self.ordinary
    }
}

impl std::fmt::Display for WeilPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (q={})", self.poly, self.q)
    }
}

/// Strips x^2 - q factors (and x -+ sqrt(q) for square q): these carry the
/// real Weil numbers +-sqrt(q). Returns (core, strip_multiplicity).
fn strip_real_factors(p: &PolyZ, q: &BigUint) -> (PolyZ, u32) {
    let qi = BigInt::from(q.clone());
    let x2q = PolyZ::new(vec![-qi, BigInt::zero(), BigInt::one()]);
    let mut core = p.clone();
    let mut strips = 0u32;
    while let Some(next) = core.div_exact(&x2q) {
        core = next;
        strips += 1;
    }
    let root = q.sqrt();
    if &root * &root == *q {
        let s = BigInt::from(root);
        for lin in [PolyZ::linear(s.clone()), PolyZ::linear(-s)] {
            while let Some(next) = core.div_exact(&lin) {
                core = next;
                strips += 1;
            }
        }
    }
    (core, strips)
}

/// Checks a_i = q^(g-i) a_(2g-i) for 0 <= i <= g on a monic even-degree poly.
fn functional_equation_holds(p: &PolyZ, q: &BigUint) -> bool {
    let d = p.degree();
    let g = d / 2;
    let qi = BigInt::from(q.clone());
    for i in 0..=g {
        if p.coeff(i) != qi.pow((g - i) as u32) * p.coeff(d - i) {
            return false;
        }
    }
    true
}

/// The unique monic degree-g integer h with P(x) = x^g h(x + q/x), by
/// peeling coefficients top-down; fails when the functional equation does.
pub fn real_weil_transform(p: &PolyZ, q: &BigUint) -> Result<PolyZ, WeilError> {
    if !p.is_monic() {
        return Err(WeilError::NotMonic);
    }
    let d = p.degree();
    if d % 2 != 0 || d == 0 {
        return Err(WeilError::OddDegree(d));
    }
    let g = d / 2;
    let qi = BigInt::from(q.clone());
    let x2q = PolyZ::new(vec![qi, BigInt::zero(), BigInt::one()]); // x^2 + q
    let mut rem = p.clone();
    let mut h = vec![BigInt::zero(); g + 1];
    for k in (0..=g).rev() {
        let c = rem.coeff(g + k);
        h[k] = c.clone();
        let term = x2q.pow(k as u32).shift(g - k).mul_scalar(&c);
        rem = rem.sub(&term);
    }
    if !rem.is_zero() {
        return Err(WeilError::FunctionalEquationFailed);
    }
    Ok(PolyZ::new(h))
}

/// Validates that `p` is a q-Weil polynomial, certifying the root bound
/// exactly via Sturm counting against the surd endpoints +-2 sqrt(q).
pub fn validate_weil(p: &PolyZ, q: &BigUint) -> Result<WeilPoly, WeilError> {
    if p.is_zero() || !p.is_monic() {
        return Err(WeilError::NotMonic);
    }
    let d = p.degree();
    if d % 2 != 0 || d == 0 {
        return Err(WeilError::OddDegree(d));
    }
    let g = d / 2;
    let (prime, e) = is_prime_power(q).ok_or(WeilError::NotPrimePower)?;

    let (core, _strips) = strip_real_factors(p, q);
    if !core.is_constant() {
        if !functional_equation_holds(&core, q) {
            return Err(WeilError::FunctionalEquationFailed);
        }
        let h = real_weil_transform(&core, q)?;
        certify_roots_in_weil_interval(&h, q)?;
    }

    let p_int = BigInt::from(prime.clone());
    let ordinary = !(p.coeff(g) % &p_int).is_zero();

    Ok(WeilPoly { poly: p.clone(), q: q.clone(), p: prime, e, g, ordinary })
}

/// All roots of h (squarefree part taken here) must be real and lie in
/// [-2 sqrt(q), 2 sqrt(q)].
fn certify_roots_in_weil_interval(h: &PolyZ, q: &BigUint) -> Result<(), WeilError> {
    let hs = h.squarefree_part();
    if hs.is_constant() {
        return Ok(());
    }
    let d = hs.degree();
    let chain = SturmChain::new(&hs)?;
    let four_q = BigUint::from(4u32) * q;
    let two_sqrt_q = Surd::sqrt_of_biguint(&four_q); // sqrt(4q) = 2 sqrt(q)
    let bound: BigInt = BigInt::from(four_q.sqrt()) + BigInt::from(2); // rational L > 2 sqrt(q)
    let lo = Surd::rational(BigRational::from_integer(-bound.clone()));
    let hi = Surd::rational(BigRational::from_integer(bound));

    if chain.count_in(&lo, &hi) != d {
        return Err(WeilError::RootsOffCircle); // not totally real
    }
    if chain.count_in(&two_sqrt_q, &hi) != 0 {
        return Err(WeilError::RootsOffCircle); // a root above 2 sqrt(q)
    }
    // (lo, -2 sqrt(q)] may contain only -2 sqrt(q) itself, when it is a root.
    let boundary_root = eval_at_surd(&hs, &two_sqrt_q.neg()).is_zero();
    let allowed = if boundary_root { 1 } else { 0 };
    if chain.count_in(&lo, &two_sqrt_q.neg()) != allowed {
        return Err(WeilError::RootsOffCircle); // a root below -2 sqrt(q)
    }
    Ok(())
}

/// One irreducible factor of a splitting, with its multiplicity.
pub type IsogenyFactor = (PolyZ, u32);

/// Factorization of P over Z together with the certification flag: when q
/// is prime and x^2 - q does not divide P, the factorization mirrors the
/// isogeny decomposition of the underlying abelian variety exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsogenyDecomposition {
    pub factors: Vec<IsogenyFactor>,
    pub certified: bool,
    pub note: Option<CertObstruction>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertObstruction {
    /// x^2 - q divides P: real Weil numbers present.
    RealFactor,
    /// q is a proper prime power, not a prime.
    NonPrimeField,
}

impl IsogenyDecomposition {
    /// Compact shape such as `"irreducible"`, `"Q1^2"`, `"Q1*Q2"`.
    pub fn shape(&self) -> String {
        if self.factors.len() == 1 && self.factors[0].1 == 1 {
            return "irreducible".into();
        }
        self.factors
            .iter()
            .enumerate()
            .map(|(i, (_, m))| {
                if *m == 1 {
                    format!("Q{}", i + 1)
                } else {
                    format!("Q{}^{}", i + 1, m)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Factors P over the integers; certified only under the exact hypotheses
/// (prime field and no x^2 - q factor) that let the polynomial splitting
/// be read as the isogeny splitting.
pub fn honda_tate_split(w: &WeilPoly) -> Result<IsogenyDecomposition, WeilError> {
    let fac = factor_over_z(&w.poly)?;
    debug_assert!(fac.unit.is_one());
    let (_, strips) = strip_real_factors(&w.poly, &w.q);
    let (certified, note) = if strips > 0 {
        (false, Some(CertObstruction::RealFactor))
    } else if !w.is_prime_field() {
        (false, Some(CertObstruction::NonPrimeField))
    } else {
        (true, None)
    };
    Ok(IsogenyDecomposition { factors: fac.factors, certified, note })
}

/// Orders n of roots of unity that can appear among ratios of Weil numbers
/// of a 2g-dimensional polynomial: phi(n) <= (2g)!, scanned up to 120.
pub fn root_of_unity_orders(g: usize) -> Vec<u64> {
    let mut bound = 1u64;
    for k in 1..=(2 * g as u64) {
        bound = bound.saturating_mul(k);
    }
    (2u64..=120).filter(|&n| euler_phi(n) <= bound).collect()
}

pub(crate) fn euler_phi(mut n: u64) -> u64 {
    let mut phi = 1u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut pk = 1;
            while n % d == 0 {
                n /= d;
                pk *= d;
            }
            phi *= pk - pk / d;
        }
        d += 1;
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

/// Degree of the squarefree part: the number of distinct roots.
fn distinct_root_count(p: &PolyZ) -> usize {
    p.squarefree_part().degree()
}

/// True iff two DISTINCT roots have a ratio that is a root of unity:
/// detected as a collapse of distinct roots under x -> x^n for some n with
/// phi(n) <= (2g)! (the ratio lives in the splitting field).
pub fn has_unit_root_ratio(w: &WeilPoly) -> bool {
    let sf = w.poly.squarefree_part();
    let d0 = sf.degree();
    if d0 <= 1 {
        return false;
    }
    for n in root_of_unity_orders(w.g) {
        let gr = graeffe_power(&sf, n).expect("monic squarefree");
        if distinct_root_count(&gr) < d0 {
            return true;
        }
    }
    false
}

/// Status of the place against the generic-place conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SAStatus {
    pub prime_field: bool,
    pub torsion_free: bool,
    /// None = relation search skipped; Some(true) = no relation found at the
    /// configured bound; Some(false) = a nontrivial relation exists.
    pub rank_ok: Option<bool>,
    pub in_sa: bool,
}

/// Combines the prime-field test, the torsion-freeness test (no unit root
/// ratio), and a bounded multiplicative-relation search. An inconclusive
/// rank search (None) does not block membership; that indeterminacy is
/// recorded by the caller.
pub fn sa_membership(w: &WeilPoly, _expected_rank: u32, relation_bound: Option<u32>) -> SAStatus {
    let prime_field = w.is_prime_field();
    let torsion_free = !has_unit_root_ratio(w);
    let rank_ok = relation_bound.map(|b| {
        phi_relation_search(w, b)
            .map(|rels| rels.is_empty())
            .unwrap_or(false)
    });
    let in_sa = prime_field && torsion_free && rank_ok != Some(false);
    SAStatus { prime_field, torsion_free, rank_ok, in_sa }
}

/// Graeffe transform revalidated against q^i: the Weil polynomial of the
/// base extension to the degree-i field.
pub fn base_extension(w: &WeilPoly, i: u32) -> Result<WeilPoly, WeilError> {
    assert!(i >= 1);
    let g = graeffe_power(&w.poly, i as u64)?;
    validate_weil(&g, &w.q.pow(i))
}

/// Witness for the absolute-simplicity decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AbsSimpleCertificate {
    /// Irreducible with no unit root ratio: every base extension stays
    /// irreducible, no scan needed.
    RootRatio,
    /// Irreducible and every scanned base extension stayed irreducible.
    ByExhaustion,
    /// P itself is reducible.
    ReducibleSelf,
    /// base_extension(P, i) is reducible for this witness i.
    ReducibleAt(u64),
}

/// Whether the underlying simple abelian variety stays simple over every
/// finite extension, decided from the polynomial side.
pub fn is_absolutely_simple(w: &WeilPoly) -> Result<(bool, AbsSimpleCertificate), WeilError> {
    let fac = factor_over_z(&w.poly)?;
    if !fac.is_irreducible() {
        return Ok((false, AbsSimpleCertificate::ReducibleSelf));
    }
    if !has_unit_root_ratio(w) {
        return Ok((true, AbsSimpleCertificate::RootRatio));
    }
    exhaustive_abs_simple(w)
}

/// The scan branch alone: checks irreducibility of every base extension up
/// to the unit-order bound. Exposed so tests can cross-validate it against
/// the certificate branch.
pub fn exhaustive_abs_simple(w: &WeilPoly) -> Result<(bool, AbsSimpleCertificate), WeilError> {
    if !factor_over_z(&w.poly)?.is_irreducible() {
        return Ok((false, AbsSimpleCertificate::ReducibleSelf));
    }
    let max_n = root_of_unity_orders(w.g).into_iter().max().unwrap_or(6);
    for i in 2..=max_n {
        let gr = graeffe_power(&w.poly, i)?;
        if !factor_over_z(&gr)?.is_irreducible() {
            return Ok((false, AbsSimpleCertificate::ReducibleAt(i)));
        }
    }
    Ok((true, AbsSimpleCertificate::ByExhaustion))
}

/// Writes P = Q^m with m maximal: m is the gcd of the multiplicities in the
/// squarefree decomposition and Q the corresponding root.
pub fn mth_power_split(w: &WeilPoly) -> (PolyZ, u32) {
    mth_power_split_poly(&w.poly)
}

pub fn mth_power_split_poly(p: &PolyZ) -> (PolyZ, u32) {
    let dec = p.squarefree_decomposition();
    if dec.is_empty() {
        return (p.clone(), 1);
    }
    let mut m = 0u32;
    for (_, mult) in &dec {
        m = num_integer::Integer::gcd(&m, mult);
    }
    let mut q = PolyZ::one();
    for (s, mult) in &dec {
        q = q.mul(&s.pow(mult / m));
    }
    debug_assert_eq!(q.pow(m), *p);
    (q, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pz(c: &[i64]) -> PolyZ {
        PolyZ::from_i64(c)
    }

    fn wq(c: &[i64], q: u64) -> WeilPoly {
        validate_weil(&pz(c), &BigUint::from(q)).unwrap()
    }

    #[test]
    fn validate_fixtures() {
        // |trace| = 3 <= 2 sqrt(5)
        let w = wq(&[5, 3, 1], 5);
        assert_eq!(w.genus(), 1);
        assert!(w.is_ordinary());
        assert!(w.is_prime_field());

        // quartic with h = y^2 - y - 8, roots ~ 3.37, -2.87 inside +-2 sqrt(5)
        let w = wq(&[25, -5, 2, -1, 1], 5);
        assert_eq!(w.genus(), 2);
        assert_eq!(real_weil_transform(w.poly(), w.q()).unwrap(), pz(&[-8, -1, 1]));

        // trace 10 > 4 sqrt(5): some root off the circle
        assert!(matches!(
            validate_weil(&pz(&[25, 50, 30, 10, 1]), &BigUint::from(5u32)),
            Err(WeilError::RootsOffCircle)
        ));
    }

    #[test]
    fn real_transform_fixtures() {
        assert_eq!(
            real_weil_transform(&pz(&[5, 3, 1]), &BigUint::from(5u32)).unwrap(),
            pz(&[3, 1])
        );
        // (x^2+19)^2 = x^4 + 38x^2 + 361 -> y^2
        assert_eq!(
            real_weil_transform(&pz(&[361, 0, 38, 0, 1]), &BigUint::from(19u32)).unwrap(),
            pz(&[0, 0, 1])
        );
        assert!(matches!(
            real_weil_transform(&pz(&[1, 2, 3, 4, 1]), &BigUint::from(5u32)),
            Err(WeilError::FunctionalEquationFailed)
        ));
    }

    #[test]
    fn functional_equation_mutants_rejected() {
        // single-coefficient +-1 mutations of valid fixtures must all fail
        let cases: Vec<(Vec<i64>, u64)> = vec![
            // genus 2, q=5: a3 = q a1 and a4 = q^2 are rigid
            (vec![26, -5, 2, -1, 1], 5),
            (vec![24, -5, 2, -1, 1], 5),
            (vec![25, -4, 2, -1, 1], 5),
            (vec![25, -6, 2, -1, 1], 5),
            (vec![25, -5, 2, 0, 1], 5),
            (vec![25, -5, 2, -2, 1], 5),
            (vec![360, 0, 38, 0, 1], 19),
            (vec![362, 0, 38, 0, 1], 19),
            (vec![361, 1, 38, 0, 1], 19),
            (vec![361, -1, 38, 0, 1], 19),
            (vec![361, 0, 38, 1, 1], 19),
            (vec![361, 0, 38, -1, 1], 19),
            // genus 1: q wrong by one
            (vec![4, 3, 1], 5),
            (vec![6, 3, 1], 5),
            (vec![18, 0, 1], 19),
            (vec![20, 0, 1], 19),
            // genus 1: trace pushed past the Hasse bound 2 sqrt(q)
            (vec![5, 5, 1], 5),
            (vec![5, -5, 1], 5),
            (vec![2, 3, 1], 2),
            (vec![3, -4, 1], 3),
        ];
        assert_eq!(cases.len(), 20);
        for (c, q) in cases {
            assert!(
                validate_weil(&pz(&c), &BigUint::from(q)).is_err(),
                "mutant {:?} q={} accepted",
                c,
                q
            );
        }
    }

    #[test]
    fn real_weil_factor_accepted() {
        // x^2 - q alone: roots exactly +-sqrt(q) lie on the circle
        let w = validate_weil(&pz(&[-5, 0, 1]), &BigUint::from(5u32)).unwrap();
        assert_eq!(w.genus(), 1);
        // and over q = p^2 the rational roots +-p
        let w = validate_weil(&pz(&[-9, 0, 1]), &BigUint::from(9u32)).unwrap();
        assert!(!w.is_prime_field());
    }

    #[test]
    fn honda_tate_fixtures() {
        // (x^2+19)^2 over q=19: certified, [(x^2+19, 2)]
        let w = wq(&[361, 0, 38, 0, 1], 19);
        let d = honda_tate_split(&w).unwrap();
        assert!(d.certified);
        assert_eq!(d.factors, vec![(pz(&[19, 0, 1]), 2)]);
        assert_eq!(d.shape(), "Q1^2");

        let w = wq(&[5, 3, 1], 5);
        let d = honda_tate_split(&w).unwrap();
        assert!(d.certified);
        assert_eq!(d.shape(), "irreducible");

        // (x^2-5)(x^2+x+5): x^2 - q divides, certification declined
        let p = pz(&[-5, 0, 1]).mul(&pz(&[5, 1, 1]));
        let w = validate_weil(&p, &BigUint::from(5u32)).unwrap();
        let d = honda_tate_split(&w).unwrap();
        assert!(!d.certified);
        assert_eq!(d.note, Some(CertObstruction::RealFactor));
        assert_eq!(d.factors.len(), 2);

        // prime-power field: decomposition returned but not certified
        let w = validate_weil(&pz(&[25, 5, 1]), &BigUint::from(25u32)).unwrap();
        let d = honda_tate_split(&w).unwrap();
        assert!(!d.certified);
        assert_eq!(d.note, Some(CertObstruction::NonPrimeField));
    }

    #[test]
    fn unit_root_ratio_fixtures() {
        // x^2+19: roots +-i sqrt(19), ratio -1
        assert!(has_unit_root_ratio(&wq(&[19, 0, 1], 19)));
        // ordinary elliptic: no ratio
        assert!(!has_unit_root_ratio(&wq(&[5, 3, 1], 5)));
        // repeated roots only: ratio 1 between EQUAL roots does not count
        assert!(!has_unit_root_ratio(&wq(&[25, 30, 19, 6, 1], 5))); // (x^2+3x+5)^2
    }

    #[test]
    fn sa_fixtures() {
        let w = wq(&[361, 0, 38, 0, 1], 19);
        let s = sa_membership(&w, 2, None);
        assert!(s.prime_field && !s.torsion_free && !s.in_sa);

        let w = wq(&[5, 3, 1], 5);
        let s = sa_membership(&w, 2, None);
        assert!(s.in_sa);
        assert_eq!(s.rank_ok, None);

        // q = p^2 fails the prime-field condition
        let w = validate_weil(&pz(&[25, 5, 1]), &BigUint::from(25u32)).unwrap();
        let s = sa_membership(&w, 2, None);
        assert!(!s.prime_field && !s.in_sa);
    }

    #[test]
    fn base_extension_fixtures() {
        let w = wq(&[5, 3, 1], 5);
        assert_eq!(base_extension(&w, 1).unwrap().poly(), w.poly());
        // pi^2 + pibar^2 = 9 - 10 = -1: x^2 + x + 25
        assert_eq!(base_extension(&w, 2).unwrap().poly(), &pz(&[25, 1, 1]));
        // x^2+19 squared roots both -19: (x+19)^2
        let w = wq(&[19, 0, 1], 19);
        assert_eq!(base_extension(&w, 2).unwrap().poly(), &pz(&[361, 38, 1]));
    }

    #[test]
    fn base_extension_multiplicative() {
        let fixtures = [wq(&[5, 3, 1], 5), wq(&[25, -5, 2, -1, 1], 5), wq(&[19, 0, 1], 19)];
        for w in &fixtures {
            for i in 1..=4u32 {
                for j in 1..=4u32 {
                    let a = base_extension(w, i * j).unwrap();
                    let b = base_extension(&base_extension(w, i).unwrap(), j).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn abs_simple_fixtures() {
        let w = wq(&[5, 3, 1], 5);
        let (s, cert) = is_absolutely_simple(&w).unwrap();
        assert!(s);
        assert_eq!(cert, AbsSimpleCertificate::RootRatio);

        let w = wq(&[19, 0, 1], 19);
        let (s, cert) = is_absolutely_simple(&w).unwrap();
        assert!(!s);
        assert_eq!(cert, AbsSimpleCertificate::ReducibleAt(2));

        let w = wq(&[361, 0, 38, 0, 1], 19);
        let (s, cert) = is_absolutely_simple(&w).unwrap();
        assert!(!s);
        assert_eq!(cert, AbsSimpleCertificate::ReducibleSelf);
    }

    #[test]
    fn mth_power_fixtures() {
        let w = wq(&[361, 0, 38, 0, 1], 19);
        assert_eq!(mth_power_split(&w), (pz(&[19, 0, 1]), 2));
        let w = wq(&[5, 3, 1], 5);
        assert_eq!(mth_power_split(&w), (pz(&[5, 3, 1]), 1));
        // (x^2+19)^2 (x^2+3x+19): gcd(2,1) = 1
        let p = pz(&[361, 0, 38, 0, 1]).mul(&pz(&[19, 3, 1]));
        let (q, m) = mth_power_split_poly(&p);
        assert_eq!(m, 1);
        assert_eq!(q, p);
    }

    #[test]
    fn unity_order_sets() {
        // g=1: phi(n) <= 2 means n in {2,3,4,6}
        assert_eq!(root_of_unity_orders(1), vec![2, 3, 4, 6]);
        // g=2: largest n with phi(n) <= 24 is 90
        let orders = root_of_unity_orders(2);
        assert_eq!(*orders.iter().max().unwrap(), 90);
        assert!(orders.contains(&84));
        assert!(!orders.contains(&97));
    }
}
