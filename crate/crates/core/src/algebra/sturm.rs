//! Exact real-root counting by Sturm sequences.
//!
//! Interval endpoints may be quadratic surds u + v*sqrt(m): signs of all
//! Sturm-chain values at such points are decided exactly by rational
//! comparisons, never by floating approximation. This is what certifies
//! "all roots in [-2 sqrt(q), 2 sqrt(q)]" for Weil polynomials.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, PolyZ};

/// Exact value a + b*sqrt(m) with rational a, b and integer m >= 0.
/// If m is a perfect square the radical is folded into the rational part.
#[derive(Debug, Clone, PartialEq)]
pub struct Surd {
    a: BigRational,
    b: BigRational,
    m: BigUint,
}

impl Surd {
    pub fn rational(a: BigRational) -> Self {
        Surd { a, b: BigRational::zero(), m: BigUint::zero() }
    }

    pub fn integer(a: i64) -> Self {
        Surd::rational(BigRational::from_integer(BigInt::from(a)))
    }

    /// a + b*sqrt(m), folding perfect-square radicands into the rational part.
    pub fn new(a: BigRational, b: BigRational, m: BigUint) -> Self {
        if b.is_zero() || m.is_zero() {
            return Surd::rational(a);
        }
        let r = m.sqrt();
        if &r * &r == m {
            let root = BigRational::from_integer(BigInt::from(r));
            return Surd::rational(a + b * root);
        }
        Surd { a, b, m }
    }

    /// sqrt(m) for a non-negative integer m.
    pub fn sqrt_of(m: u64) -> Self {
        Surd::new(BigRational::zero(), BigRational::one(), BigUint::from(m))
    }

    pub fn sqrt_of_biguint(m: &BigUint) -> Self {
        Surd::new(BigRational::zero(), BigRational::one(), m.clone())
    }

    pub fn neg(&self) -> Surd {
        Surd { a: -self.a.clone(), b: -self.b.clone(), m: self.m.clone() }
    }

    pub fn add_rational(&self, r: &BigRational) -> Surd {
        Surd { a: &self.a + r, b: self.b.clone(), m: self.m.clone() }
    }

    fn add(&self, rhs: &Surd) -> Surd {
        debug_assert!(self.b.is_zero() || rhs.b.is_zero() || self.m == rhs.m);
        let m = if self.b.is_zero() { rhs.m.clone() } else { self.m.clone() };
        Surd::new(&self.a + &rhs.a, &self.b + &rhs.b, m)
    }

    fn mul(&self, rhs: &Surd) -> Surd {
        debug_assert!(self.b.is_zero() || rhs.b.is_zero() || self.m == rhs.m);
        let m = if self.b.is_zero() { rhs.m.clone() } else { self.m.clone() };
        let mq = BigRational::from_integer(BigInt::from(m.clone()));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &mq;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Surd::new(a, b, m)
    }

    /// Exact sign: -1, 0, or 1.
    pub fn sign(&self) -> i8 {
        let sa = rational_sign(&self.a);
        if self.b.is_zero() {
            return sa;
        }
        let sb = rational_sign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // opposite signs: compare a^2 with b^2 m
        let a2 = &self.a * &self.a;
        let b2m = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.m.clone()));
        match a2.cmp(&b2m) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == 0
    }
}

fn rational_sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Horner evaluation of an integer polynomial at a surd.
pub fn eval_at_surd(p: &PolyZ, x: &Surd) -> Surd {
    let mut acc = Surd::rational(BigRational::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&Surd::rational(BigRational::from_integer(c.clone())));
    }
    acc
}

/// A Sturm chain for a squarefree polynomial.
pub struct SturmChain {
    chain: Vec<PolyZ>,
}

impl SturmChain {
    /// Builds the chain p, p', -rem(...), ... with positive-scalar
    /// normalization at every step (signs preserved).
    pub fn new(p: &PolyZ) -> Result<Self, AlgebraError> {
        if p.is_zero() {
            return Err(AlgebraError::ZeroPoly);
        }
        if !p.is_squarefree() {
            return Err(AlgebraError::NotSquarefree);
        }
        let mut chain = vec![p.primitive()];
        if p.degree() >= 1 {
            chain.push(p.derivative().primitive());
            loop {
                let n = chain.len();
                let a = &chain[n - 2];
                let b = &chain[n - 1];
                if b.is_constant() {
                    break;
                }
                let mut r = a.prem(b);
                if r.is_zero() {
                    break; // cannot happen for squarefree p, kept for safety
                }
                // prem scales a by lc(b)^(delta+1); if that factor is negative
                // the remainder sign flipped, so undo it before negating.
                let delta = a.degree() - b.degree();
                if b.lc().is_negative() && (delta + 1) % 2 == 1 {
                    r = r.neg();
                }
                chain.push(r.neg().primitive_keep_sign());
            }
        }
        Ok(SturmChain { chain })
    }

    /// Number of sign variations of the chain at x, zeros dropped.
    pub fn variations_at(&self, x: &Surd) -> usize {
        let signs: Vec<i8> = self
            .chain
            .iter()
            .map(|p| eval_at_surd(p, x).sign())
            .filter(|s| *s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Count of distinct real roots in (lo, hi].
    pub fn count_in(&self, lo: &Surd, hi: &Surd) -> usize {
        let vl = self.variations_at(lo);
        let vh = self.variations_at(hi);
        vl.saturating_sub(vh)
    }
}

impl PolyZ {
    /// Primitive part keeping the sign (divide by positive content only).
    fn primitive_keep_sign(&self) -> PolyZ {
        if self.is_zero() {
            return PolyZ::zero();
        }
        let c = self.content();
        PolyZ::new(self.coeffs().iter().map(|a| a / &c).collect())
    }
}

/// Exact count of distinct real roots of a squarefree polynomial in (lo, hi].
pub fn sturm_roots_in_interval(
    p: &PolyZ,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<usize, AlgebraError> {
    if lo >= hi {
        return Err(AlgebraError::EmptyInterval);
    }
    let chain = SturmChain::new(p)?;
    Ok(chain.count_in(&Surd::rational(lo.clone()), &Surd::rational(hi.clone())))
}

/// Sign variations of the Sturm chain of p at a rational point.
pub fn sturm_sign_variations(p: &PolyZ, at: &BigRational) -> Result<usize, AlgebraError> {
    let chain = SturmChain::new(p)?;
    Ok(chain.variations_at(&Surd::rational(at.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn pz(c: &[i64]) -> PolyZ {
        PolyZ::from_i64(c)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn fixtures() {
        // (x^2-2, -2, 2) -> 2
        assert_eq!(sturm_roots_in_interval(&pz(&[-2, 0, 1]), &rat(-2, 1), &rat(2, 1)).unwrap(), 2);
        // (x^2+1, -10, 10) -> 0
        assert_eq!(sturm_roots_in_interval(&pz(&[1, 0, 1]), &rat(-10, 1), &rat(10, 1)).unwrap(), 0);
        // y^2 - y - 8 has roots (1 +- sqrt(33))/2, both inside (-9/2, 9/2]
        assert_eq!(
            sturm_roots_in_interval(&pz(&[-8, -1, 1]), &rat(-9, 2), &rat(9, 2)).unwrap(),
            2
        );
    }

    #[test]
    fn rejects_non_squarefree() {
        assert!(matches!(
            sturm_roots_in_interval(&pz(&[1, 2, 1]), &rat(-3, 1), &rat(3, 1)),
            Err(AlgebraError::NotSquarefree)
        ));
        assert!(matches!(
            sturm_roots_in_interval(&pz(&[-2, 0, 1]), &rat(2, 1), &rat(-2, 1)),
            Err(AlgebraError::EmptyInterval)
        ));
    }

    #[test]
    fn endpoint_conventions() {
        // interval (a, b]: root at b counted, root at a not
        let p = pz(&[0, 1]); // root 0
        assert_eq!(sturm_roots_in_interval(&p, &rat(-1, 1), &rat(0, 1)).unwrap(), 1);
        assert_eq!(sturm_roots_in_interval(&p, &rat(0, 1), &rat(1, 1)).unwrap(), 0);
    }

    #[test]
    fn surd_signs() {
        // 3 - 2*sqrt(2) > 0 (9 > 8); 2 - 2*sqrt(2) < 0; sqrt(4) folds to 2
        let s = Surd::new(rat(3, 1), rat(-2, 1), BigUint::from(2u32));
        assert_eq!(s.sign(), 1);
        let s = Surd::new(rat(2, 1), rat(-2, 1), BigUint::from(2u32));
        assert_eq!(s.sign(), -1);
        let s = Surd::new(rat(-2, 1), rat(1, 1), BigUint::from(4u32));
        assert_eq!(s.sign(), 0);
        // 1 - sqrt(33)/6 vs 0: 1 < sqrt(33)/6? 36 vs 33 -> positive
        let s = Surd::new(rat(1, 1), rat(-1, 6), BigUint::from(33u32));
        assert_eq!(s.sign(), 1);
    }

    #[test]
    fn surd_endpoints_count() {
        // x^2 - 2 has no roots in (sqrt(2), 10]; one in (1, sqrt(2)]
        let p = pz(&[-2, 0, 1]);
        let chain = SturmChain::new(&p).unwrap();
        let s2 = Surd::sqrt_of(2);
        assert_eq!(chain.count_in(&s2, &Surd::integer(10)), 0);
        assert_eq!(chain.count_in(&Surd::integer(1), &s2), 1);
        // x^2 - 4q: roots exactly +-2 sqrt(q)
        let q = 19u64;
        let p = PolyZ::from_i64(&[-(4 * q as i64), 0, 1]);
        let chain = SturmChain::new(&p).unwrap();
        let two_sqrt_q = Surd::sqrt_of(4 * q);
        assert_eq!(chain.count_in(&two_sqrt_q.neg(), &two_sqrt_q), 1); // +2sqrt(q) only (half-open)
    }

    #[test]
    fn against_known_root_counts() {
        // products of linear factors: count equals number of distinct roots in range
        let p = pz(&[-1, 1]).mul(&pz(&[-3, 1])).mul(&pz(&[5, 1])); // roots 1, 3, -5
        assert_eq!(sturm_roots_in_interval(&p, &rat(-10, 1), &rat(10, 1)).unwrap(), 3);
        assert_eq!(sturm_roots_in_interval(&p, &rat(0, 1), &rat(2, 1)).unwrap(), 1);
        assert_eq!(sturm_roots_in_interval(&p, &rat(-10, 1), &rat(0, 1)).unwrap(), 1);
    }

    #[test]
    fn full_count_cross_checked_against_factorization() {
        // Sturm count over (-B, B] with B past the Cauchy bound equals the
        // number of distinct real roots, counted independently from the
        // factorization into linears and quadratics.
        use crate::algebra::factor_over_z;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..150 {
            // random product of 1..4 linear/quadratic monic factors
            let mut p = PolyZ::one();
            for _ in 0..rng.gen_range(1..=4usize) {
                if rng.gen_bool(0.5) {
                    p = p.mul(&pz(&[rng.gen_range(-9..=9), 1]));
                } else {
                    p = p.mul(&pz(&[rng.gen_range(-9..=9), rng.gen_range(-9..=9), 1]));
                }
            }
            let sf = p.squarefree_part();
            if sf.is_constant() {
                continue;
            }
            let expected: usize = factor_over_z(&sf)
                .unwrap()
                .factors
                .iter()
                .map(|(f, _)| match f.degree() {
                    1 => 1,
                    2 => {
                        // real roots iff the discriminant is positive
                        let d = &f.coeff(1) * &f.coeff(1)
                            - BigInt::from(4) * f.coeff(2) * f.coeff(0);
                        if d > BigInt::from(0) {
                            2
                        } else {
                            0
                        }
                    }
                    _ => unreachable!("factors of a product of linears and quadratics"),
                })
                .sum();
            let b: BigInt = sf.cauchy_bound() + BigInt::from(1);
            let count = sturm_roots_in_interval(
                &sf,
                &BigRational::from_integer(-b.clone()),
                &BigRational::from_integer(b),
            )
            .unwrap();
            assert_eq!(count, expected, "poly {:?}", sf);
        }
    }
}
