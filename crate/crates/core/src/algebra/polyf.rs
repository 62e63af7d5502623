//! Polynomials over a prime field F_ell (ell <= 2^62) and their complete
//! factorization: squarefree decomposition, distinct-degree splitting, then
//! Cantor–Zassenhaus equal-degree splitting. The equal-degree stage is
//! randomized but seeded from the field context plus a hash of the input, so
//! factorizations are reproducible.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::primes::{is_prime_u64, mul_mod_u64, pow_mod_u64};
use super::{AlgebraError, PolyZ};

/// A prime field F_ell together with the seed used by randomized
/// factorization steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeFieldCtx {
    ell: u64,
    seed: u64,
}

impl PrimeFieldCtx {
    pub fn new(ell: u64) -> Result<Self, AlgebraError> {
        Self::with_seed(ell, 0)
    }

    pub fn with_seed(ell: u64, seed: u64) -> Result<Self, AlgebraError> {
        if ell > (1u64 << 62) {
            return Err(AlgebraError::ModulusTooLarge(ell));
        }
        if !is_prime_u64(ell) {
            return Err(AlgebraError::NotPrime(ell));
        }
        Ok(PrimeFieldCtx { ell, seed })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b; // both < 2^62, no overflow
        if s >= self.ell {
            s - self.ell
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.ell - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod_u64(a, b, self.ell)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod_u64(a, e, self.ell)
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.ell != 0, "inverse of zero");
        self.pow(a % self.ell, self.ell - 2)
    }

    pub fn reduce_bigint(&self, a: &num_bigint::BigInt) -> u64 {
        use num_traits::Signed;
        let m = num_bigint::BigInt::from(self.ell);
        let mut r = a % &m;
        if r.is_negative() {
            r += &m;
        }
        // fits: 0 <= r < ell <= 2^62
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }
}

/// Dense polynomial over F_ell, ascending coefficients, no leading zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyF {
    ell: u64,
    coeffs: Vec<u64>,
}

impl PolyF {
    pub fn new(ctx: &PrimeFieldCtx, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % ctx.ell).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyF { ell: ctx.ell, coeffs }
    }

    pub fn zero(ctx: &PrimeFieldCtx) -> Self {
        PolyF { ell: ctx.ell, coeffs: vec![] }
    }

    pub fn one(ctx: &PrimeFieldCtx) -> Self {
        PolyF::new(ctx, vec![1])
    }

    pub fn x(ctx: &PrimeFieldCtx) -> Self {
        PolyF::new(ctx, vec![0, 1])
    }

    /// Reduction of an integer polynomial mod ell.
    pub fn from_polyz(ctx: &PrimeFieldCtx, p: &PolyZ) -> Self {
        PolyF::new(ctx, p.coeffs().iter().map(|c| ctx.reduce_bigint(c)).collect())
    }

    /// Lift to an integer polynomial with coefficients in [0, ell).
    pub fn to_polyz(&self) -> PolyZ {
        PolyZ::new(self.coeffs.iter().map(|&c| num_bigint::BigInt::from(c)).collect())
    }

    fn ctx(&self) -> PrimeFieldCtx {
        PrimeFieldCtx { ell: self.ell, seed: 0 }
    }

    pub fn modulus(&self) -> u64 {
        self.ell
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn degree(&self) -> usize {
        self.deg().expect("degree of zero polynomial")
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.ctx();
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn add(&self, rhs: &PolyF) -> PolyF {
        debug_assert_eq!(self.ell, rhs.ell);
        let f = self.ctx();
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyF::new(&f, (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &PolyF) -> PolyF {
        debug_assert_eq!(self.ell, rhs.ell);
        let f = self.ctx();
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyF::new(&f, (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect())
    }

    pub fn mul(&self, rhs: &PolyF) -> PolyF {
        debug_assert_eq!(self.ell, rhs.ell);
        if self.is_zero() || rhs.is_zero() {
            return PolyF { ell: self.ell, coeffs: vec![] };
        }
        let f = self.ctx();
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        PolyF::new(&f, out)
    }

    pub fn mul_scalar(&self, c: u64) -> PolyF {
        let f = self.ctx();
        PolyF::new(&f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> PolyF {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.mul_scalar(self.ctx().inv(self.lc()))
    }

    pub fn derivative(&self) -> PolyF {
        let f = self.ctx();
        if self.coeffs.len() <= 1 {
            return PolyF::zero(&f);
        }
        PolyF::new(
            &f,
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| f.mul(c, (i as u64 + 1) % f.ell))
                .collect(),
        )
    }

    pub fn divrem(&self, d: &PolyF) -> (PolyF, PolyF) {
        debug_assert_eq!(self.ell, d.ell);
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = self.ctx();
        let dd = d.degree();
        let dinv = f.inv(d.lc());
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        let mut quot = vec![0u64; n.saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = f.mul(*rem.last().unwrap(), dinv);
            if c != 0 {
                quot[k] = c;
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] = f.sub(rem[k + i], f.mul(c, dc));
                }
            }
            rem.pop();
        }
        (PolyF::new(&f, quot), PolyF::new(&f, rem))
    }

    pub fn rem(&self, d: &PolyF) -> PolyF {
        self.divrem(d).1
    }

    pub fn gcd(&self, other: &PolyF) -> PolyF {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
    pub fn xgcd(&self, other: &PolyF) -> (PolyF, PolyF, PolyF) {
        let f = self.ctx();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PolyF::one(&f), PolyF::zero(&f));
        let (mut t0, mut t1) = (PolyF::zero(&f), PolyF::one(&f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = f.inv(r0.lc());
        (r0.mul_scalar(c), s0.mul_scalar(c), t0.mul_scalar(c))
    }

    /// self^e mod m, with a BigUint exponent for the ell^d - 1 steps.
    pub fn pow_mod(&self, e: &BigUint, m: &PolyF) -> PolyF {
        let f = self.ctx();
        let mut acc = PolyF::one(&f);
        let mut base = self.rem(m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Takes every ell-th coefficient; inverse of x -> x^ell in char ell
    /// over the prime field (where a^ell = a).
    fn deflate(&self, ell: u64) -> PolyF {
        let f = self.ctx();
        let step = ell as usize;
        let out: Vec<u64> = self.coeffs.iter().step_by(step).copied().collect();
        PolyF::new(&f, out)
    }
}

/// Complete factorization over F_ell: `unit * prod factors^mult == input`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationF {
    pub unit: u64,
    pub factors: Vec<(PolyF, u32)>,
}

impl FactorizationF {
    pub fn product(&self, ctx: &PrimeFieldCtx) -> PolyF {
        let mut acc = PolyF::one(ctx).mul_scalar(self.unit);
        for (p, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(p);
            }
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

/// Complete factorization into monic irreducibles (squarefree decomposition,
/// distinct-degree, then equal-degree splitting). Deterministic for a fixed
/// context seed.
pub fn factor_mod_l(ctx: &PrimeFieldCtx, p: &PolyF) -> Result<FactorizationF, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPoly);
    }
    let unit = p.lc();
    let monic = p.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ stable_hash(p));
    let mut factors: Vec<(PolyF, u32)> = vec![];
    for (part, mult) in squarefree_decomposition(ctx, &monic) {
        for irr in factor_squarefree(ctx, &part, &mut rng) {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|a, b| (a.0.degree(), &a.0).cmp(&(b.0.degree(), &b.0)));
    let out = FactorizationF { unit, factors };
    debug_assert_eq!(out.product(ctx), *p);
    Ok(out)
}

fn stable_hash(p: &PolyF) -> u64 {
    let mut h = 0xcbf29ce484222325u64 ^ p.ell;
    for &c in &p.coeffs {
        h ^= c;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Char-ell squarefree decomposition of a monic polynomial.
fn squarefree_decomposition(ctx: &PrimeFieldCtx, f: &PolyF) -> Vec<(PolyF, u32)> {
    let mut out: Vec<(PolyF, u32)> = vec![];
    if f.deg() == Some(0) {
        return out;
    }
    let fp = f.derivative();
    if fp.is_zero() {
        // f = g(x^ell) = g(x)^ell over the prime field
        let g = f.deflate(ctx.ell);
        for (q, m) in squarefree_decomposition(ctx, &g) {
            out.push((q, m * (ctx.ell as u32)));
        }
        return out;
    }
    let c = f.gcd(&fp);
    let mut w = f.divrem(&c).0;
    let mut c = c;
    let mut i = 1u32;
    while w.deg() != Some(0) {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if fac.deg().map_or(false, |d| d > 0) {
            out.push((fac, i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if c.deg().map_or(false, |d| d > 0) {
        // remaining ell-th power part
        let g = c.deflate(ctx.ell);
        for (q, m) in squarefree_decomposition(ctx, &g) {
            out.push((q, m * (ctx.ell as u32)));
        }
    }
    out
}

/// Distinct-degree then equal-degree splitting of a monic squarefree input.
fn factor_squarefree(ctx: &PrimeFieldCtx, f: &PolyF, rng: &mut ChaCha8Rng) -> Vec<PolyF> {
    let mut out = vec![];
    let mut f = f.clone();
    if f.deg() == Some(0) {
        return out;
    }
    let mut h = PolyF::x(ctx).rem(&f);
    let mut d = 0usize;
    while let Some(df) = f.deg() {
        if df == 0 {
            break;
        }
        d += 1;
        if df < 2 * d {
            out.push(f.clone());
            break;
        }
        h = h.pow_mod(&BigUint::from(ctx.ell), &f);
        let g = h.sub(&PolyF::x(ctx).rem(&f)).gcd(&f);
        if g.deg().map_or(false, |dg| dg > 0) {
            equal_degree_split(ctx, &g, d, rng, &mut out);
            f = f.divrem(&g).0;
            h = h.rem(&f);
        }
    }
    out
}

/// Cantor–Zassenhaus split of a product of irreducibles of equal degree d.
fn equal_degree_split(ctx: &PrimeFieldCtx, f: &PolyF, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<PolyF>) {
    let df = f.degree();
    if df == d {
        out.push(f.monic());
        return;
    }
    let g = loop {
        let alpha = random_poly(ctx, df, rng);
        if alpha.deg().is_none() {
            continue;
        }
        let beta = if ctx.ell == 2 {
            // trace map sum alpha^(2^i), i < d
            let mut t = alpha.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // alpha^((ell^d - 1)/2) - 1
            let e = (BigUint::from(ctx.ell).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = alpha.pow_mod(&e, f);
            b.sub(&PolyF::one(ctx))
        };
        let g = beta.gcd(f);
        if let Some(dg) = g.deg() {
            if dg > 0 && dg < df {
                break g;
            }
        }
    };
    equal_degree_split(ctx, &g, d, rng, out);
    equal_degree_split(ctx, &f.divrem(&g).0, d, rng, out);
}

fn random_poly(ctx: &PrimeFieldCtx, below_deg: usize, rng: &mut ChaCha8Rng) -> PolyF {
    let coeffs: Vec<u64> = (0..below_deg).map(|_| rng.gen_range(0..ctx.ell)).collect();
    PolyF::new(ctx, coeffs)
}
