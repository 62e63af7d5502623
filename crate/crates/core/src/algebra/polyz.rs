//! Dense univariate polynomials with exact integer coefficients.
//!
//! Coefficients are stored in ascending order with no trailing zeros, so
//! `coeffs.len() == deg + 1` for nonzero polynomials and `coeffs` is empty
//! for the zero polynomial.
//!
//! The resultant convention is fixed as
//! `Res(a, b) = lc(a)^deg(b) * prod b(alpha_i)` over the roots `alpha_i`
//! of `a` (so `Res(x-2, x-3) = -1`); it is locked by unit tests.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyZ {
    coeffs: Vec<BigInt>,
}

impl PolyZ {
    pub fn zero() -> Self {
        PolyZ { coeffs: vec![] }
    }

    pub fn one() -> Self {
        PolyZ::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        PolyZ::new(vec![c])
    }

    pub fn x() -> Self {
        PolyZ::new(vec![BigInt::zero(), BigInt::one()])
    }

    /// Builds from ascending coefficients, trimming leading zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        PolyZ { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        PolyZ::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x - a`.
    pub fn linear(a: BigInt) -> Self {
        PolyZ::new(vec![-a, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
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

    /// Degree of a nonzero polynomial; panics on zero.
    pub fn degree(&self) -> usize {
        self.deg().expect("degree of zero polynomial")
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> PolyZ {
        if self.coeffs.len() <= 1 {
            return PolyZ::zero();
        }
        PolyZ::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn neg(&self) -> PolyZ {
        PolyZ::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, rhs: &PolyZ) -> PolyZ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        PolyZ::new(out)
    }

    pub fn sub(&self, rhs: &PolyZ) -> PolyZ {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &PolyZ) -> PolyZ {
        if self.is_zero() || rhs.is_zero() {
            return PolyZ::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyZ::new(out)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> PolyZ {
        PolyZ::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by x^k.
    pub fn shift(&self, k: usize) -> PolyZ {
        if self.is_zero() {
            return PolyZ::zero();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        PolyZ::new(out)
    }

    pub fn pow(&self, mut e: u32) -> PolyZ {
        let mut base = self.clone();
        let mut acc = PolyZ::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder by a monic divisor (exact over Z).
    pub fn divrem_monic(&self, d: &PolyZ) -> (PolyZ, PolyZ) {
        assert!(d.is_monic(), "divrem_monic needs a monic divisor");
        let dd = d.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone();
            if !c.is_zero() {
                quot[k] = c.clone();
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let idx = k + i;
                    let v = std::mem::take(&mut rem[idx]);
                    rem[idx] = v - &c * dc;
                }
            }
            rem.pop();
        }
        (PolyZ::new(quot), PolyZ::new(rem))
    }

    /// Exact division over Z, `None` when the divisor does not divide.
    pub fn div_exact(&self, d: &PolyZ) -> Option<PolyZ> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(PolyZ::zero());
        }
        if d.is_monic() {
            let (q, r) = self.divrem_monic(d);
            return if r.is_zero() { Some(q) } else { None };
        }
        // Non-monic: long division with an integrality check at each step.
        let dd = d.degree();
        if self.degree() < dd {
            return None;
        }
        let dl = d.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone();
            if !c.is_zero() {
                if (&c % &dl) != BigInt::zero() {
                    return None;
                }
                let q = &c / &dl;
                quot[k] = q.clone();
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let idx = k + i;
                    let v = std::mem::take(&mut rem[idx]);
                    rem[idx] = v - &q * dc;
                }
            }
            rem.pop();
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(PolyZ::new(quot))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &PolyZ) -> bool {
        other.div_exact(self).is_some()
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) * a = q*d + r`.
    pub fn prem(&self, d: &PolyZ) -> PolyZ {
        let dd = d.degree();
        let da = match self.deg() {
            None => return PolyZ::zero(),
            Some(da) if da < dd => return self.clone(),
            Some(da) => da,
        };
        let l = d.lc();
        let mut r = self.clone();
        let mut steps = 0usize;
        while let Some(dr) = r.deg() {
            if dr < dd {
                break;
            }
            let c = r.lc();
            r = r.mul_scalar(&l).sub(&d.shift(dr - dd).mul_scalar(&c));
            steps += 1;
        }
        // Normalize to the exact power lc^(da-dd+1).
        let want = da - dd + 1;
        if steps < want {
            r = r.mul_scalar(&l.pow((want - steps) as u32));
        }
        r
    }

    /// Content (gcd of coefficients, non-negative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::Integer::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> PolyZ {
        if self.is_zero() {
            return PolyZ::zero();
        }
        let mut c = self.content();
        if self.lc().sign() == Sign::Minus {
            c = -c;
        }
        PolyZ::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Subresultant gcd, returned primitive with positive leading coefficient.
    pub fn gcd(&self, other: &PolyZ) -> PolyZ {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree() - b.degree();
            let r = a.prem(&b);
            if r.is_zero() {
                return b.primitive();
            }
            if r.deg() == Some(0) {
                return PolyZ::one();
            }
            a = b;
            let denom = &g * h.pow(delta as u32);
            b = PolyZ::new(r.coeffs.iter().map(|c| c / &denom).collect());
            g = a.lc();
            h = if delta == 0 {
                h
            } else {
                let num = g.pow(delta as u32);
                num / h.pow((delta - 1) as u32)
            };
        }
    }

    /// Squarefree part (product of distinct irreducible factors).
    pub fn squarefree_part(&self) -> PolyZ {
        if self.is_zero() || self.is_constant() {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            return self.primitive();
        }
        self.primitive().div_exact(&g).expect("gcd divides").primitive()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Yun squarefree decomposition of the primitive part:
    /// `primitive(self) = prod S_i^i` with the `S_i` squarefree and coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(PolyZ, u32)> {
        let f = self.primitive();
        if f.is_constant() {
            return vec![];
        }
        let d = f.gcd(&f.derivative());
        if d.is_constant() {
            return vec![(f, 1)];
        }
        let mut out = vec![];
        let mut b = f.div_exact(&d).expect("gcd divides").primitive();
        let mut c = f.derivative().div_exact(&d).expect("gcd divides");
        let mut ds = c.sub(&b.derivative());
        let mut i = 1u32;
        while !b.is_constant() {
            let a = b.gcd(&ds);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = ds.div_exact(&a).expect("gcd divides");
            ds = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Replaces roots alpha by c*alpha: returns `c^deg * p(x/c)`.
    pub fn scale_roots(&self, c: &BigInt) -> PolyZ {
        if self.is_zero() {
            return PolyZ::zero();
        }
        let d = self.degree();
        let mut pw = BigInt::one();
        let mut out = self.coeffs.clone();
        for i in (0..=d).rev() {
            out[i] *= &pw;
            pw *= c;
        }
        PolyZ::new(out)
    }

    /// Power sums `s_1, ..., s_n` of the roots of a monic polynomial,
    /// via the Newton recurrence (exact integers).
    pub fn power_sums(&self, n: usize) -> Vec<BigInt> {
        assert!(self.is_monic(), "power sums need a monic polynomial");
        let d = self.degree();
        let a = |i: usize| self.coeff(i); // coefficient of x^i
        let mut s: Vec<BigInt> = Vec::with_capacity(n + 1);
        s.push(BigInt::from(d)); // s_0
        for k in 1..=n {
            let mut acc = BigInt::zero();
            // s_k + sum_{j=1}^{min(k,d)-?} a_{d-j} s_{k-j} + [k<=d] k*a_{d-k} = 0
            for j in 1..k.min(d + 1) {
                acc += a(d - j) * &s[k - j];
            }
            if k <= d {
                acc += BigInt::from(k) * a(d - k);
            }
            s.push(-acc);
        }
        s.remove(0);
        s
    }

    /// Reconstructs the monic polynomial of degree d from the power sums
    /// `s_1..s_d` of its roots. Test oracle for the resultant-based
    /// constructions; every division is exact.
    pub fn from_power_sums(s: &[BigInt], d: usize) -> PolyZ {
        assert!(s.len() >= d);
        let mut e: Vec<BigInt> = vec![BigInt::one()];
        for k in 1..=d {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                let term = &e[k - i] * &s[i - 1];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            let kk = BigInt::from(k);
            debug_assert!((&acc % &kk).is_zero());
            e.push(acc / kk);
        }
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (k, ek) in e.iter().enumerate() {
            let c = if k % 2 == 0 { ek.clone() } else { -ek.clone() };
            coeffs[d - k] = c;
        }
        PolyZ::new(coeffs)
    }

    /// x^n reduced modulo a monic polynomial.
    pub fn x_pow_mod(n: u64, modulus: &PolyZ) -> PolyZ {
        assert!(modulus.is_monic());
        if modulus.degree() == 0 {
            return PolyZ::zero();
        }
        let mut acc = PolyZ::one();
        let mut base = PolyZ::x();
        if modulus.degree() == 1 {
            base = base.divrem_monic(modulus).1;
        }
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).divrem_monic(modulus).1;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).divrem_monic(modulus).1;
            }
        }
        acc
    }

    /// Cauchy root bound: every complex root has |alpha| < bound.
    pub fn cauchy_bound(&self) -> BigInt {
        let lc = self.lc().abs();
        let mut m = BigInt::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        // 1 + ceil(max|a_i| / |lc|)
        BigInt::one() + num_integer::Integer::div_ceil(&m, &lc)
    }
}

impl fmt::Debug for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyZ({})", self)
    }
}

impl fmt::Display for PolyZ {
    /// Canonical text form: descending powers, e.g. `x^4 - x^3 + 2x^2 - 5x + 25`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let d = self.degree();
        let mut first = true;
        for i in (0..=d).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.sign() == Sign::Minus {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.sign() == Sign::Minus {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            if i >= 1 {
                write!(f, "x")?;
                if i >= 2 {
                    write!(f, "^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

/// Resultant with the convention `Res(a,b) = lc(a)^deg(b) * prod b(alpha_i)`,
/// computed by the subresultant polynomial remainder sequence.
pub fn resultant(a: &PolyZ, b: &PolyZ) -> Result<BigInt, AlgebraError> {
    if a.is_zero() || b.is_zero() {
        return Err(AlgebraError::ZeroPoly);
    }
    Ok(resultant_nonzero(a, b))
}

fn resultant_nonzero(a: &PolyZ, b: &PolyZ) -> BigInt {
    let (mut a, mut b, mut sign) = if a.degree() >= b.degree() {
        (a.clone(), b.clone(), false)
    } else {
        (b.clone(), a.clone(), a.degree() * b.degree() % 2 == 1)
    };
    if b.degree() == 0 {
        let r = b.lc().pow(a.degree() as u32);
        return if sign { -r } else { r };
    }
    let ca = a.content();
    let cb = b.content();
    let mult = ca.pow(b.degree() as u32) * cb.pow(a.degree() as u32);
    a = PolyZ::new(a.coeffs.iter().map(|c| c / &ca).collect());
    b = PolyZ::new(b.coeffs.iter().map(|c| c / &cb).collect());
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.degree() - b.degree();
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            sign = !sign;
        }
        let r = a.prem(&b);
        if r.is_zero() {
            return BigInt::zero();
        }
        a = b;
        let denom = &g * h.pow(delta as u32);
        b = PolyZ::new(r.coeffs.iter().map(|c| c / &denom).collect());
        g = a.lc();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32) / h.pow((delta - 1) as u32)
        };
        if b.deg() == Some(0) {
            let da = a.degree();
            let num = b.lc().pow(da as u32);
            let res = num / h.pow((da - 1) as u32);
            let res = mult * res;
            return if sign { -res } else { res };
        }
    }
}

/// Discriminant via `(-1)^(d(d-1)/2) Res(p, p') / lc(p)`.
pub fn discriminant(p: &PolyZ) -> Result<BigInt, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPoly);
    }
    let d = p.degree();
    if d == 0 {
        return Ok(BigInt::one());
    }
    let dp = p.derivative();
    let r = if dp.is_zero() {
        BigInt::zero()
    } else {
        resultant_nonzero(p, &dp)
    };
    let r = r / p.lc();
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -r } else { r })
}

/// Monic polynomial of the same degree whose roots are the n-th powers of
/// the roots of `p`, computed exactly as `Res_y(p(y), x - y^n)` (with the
/// y^n first reduced modulo p) by evaluation and interpolation.
pub fn graeffe_power(p: &PolyZ, n: u64) -> Result<PolyZ, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPoly);
    }
    if !p.is_monic() {
        return Err(AlgebraError::NotMonic);
    }
    assert!(n >= 1, "graeffe power needs n >= 1");
    if n == 1 || p.degree() == 0 {
        return Ok(p.clone());
    }
    let d = p.degree();
    let r = PolyZ::x_pow_mod(n, p); // deg r < d, same values y^n on the roots
    let mut points = Vec::with_capacity(d + 1);
    let mut values = Vec::with_capacity(d + 1);
    for x0 in interpolation_points(d + 1) {
        let b = PolyZ::constant(x0.clone()).sub(&r);
        let v = if b.is_zero() {
            BigInt::zero()
        } else {
            resultant_nonzero(p, &b)
        };
        points.push(x0);
        values.push(v);
    }
    let g = interpolate_integer(&points, &values);
    debug_assert_eq!(g.deg(), Some(d));
    debug_assert!(g.is_monic());
    Ok(g)
}

/// Monic polynomial of degree deg(a)*deg(b) whose roots are all pairwise
/// products of a root of `a` and a root of `b`, computed via
/// `Res_y(a(y), y^deg(b) * b(x/y))` by evaluation and interpolation.
pub fn composed_product(a: &PolyZ, b: &PolyZ) -> Result<PolyZ, AlgebraError> {
    if a.is_zero() || b.is_zero() {
        return Err(AlgebraError::ZeroPoly);
    }
    if !a.is_monic() || !b.is_monic() {
        return Err(AlgebraError::NotMonic);
    }
    let da = a.degree();
    let db = b.degree();
    if da == 0 || db == 0 {
        return Ok(PolyZ::one());
    }
    let n = da * db;
    let mut points = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    for x0 in interpolation_points(n + 1) {
        // y^db * b(x0/y) as a polynomial in y: coeff of y^k is b_{db-k} x0^{db-k}.
        let mut coeffs = vec![BigInt::zero(); db + 1];
        let mut pw = BigInt::one();
        for k in (0..=db).rev() {
            coeffs[k] = b.coeff(db - k) * &pw;
            pw *= &x0;
        }
        let by = PolyZ::new(coeffs);
        let v = if by.is_zero() {
            BigInt::zero()
        } else {
            resultant_nonzero(a, &by)
        };
        points.push(x0);
        values.push(v);
    }
    let g = interpolate_integer(&points, &values);
    debug_assert_eq!(g.deg(), Some(n));
    debug_assert!(g.is_monic());
    Ok(g)
}

fn interpolation_points(n: usize) -> Vec<BigInt> {
    let mut pts = Vec::with_capacity(n);
    pts.push(BigInt::zero());
    let mut k = 1i64;
    while pts.len() < n {
        pts.push(BigInt::from(k));
        if pts.len() < n {
            pts.push(BigInt::from(-k));
        }
        k += 1;
    }
    pts
}

/// Newton divided-difference interpolation; the result must be integral.
fn interpolate_integer(points: &[BigInt], values: &[BigInt]) -> PolyZ {
    let n = points.len();
    let xs: Vec<BigRational> = points.iter().map(|p| BigRational::from_integer(p.clone())).collect();
    let mut dd: Vec<BigRational> = values
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    // dd[i] becomes the i-th divided difference f[x_0..x_i].
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - level];
            dd[i] = num / den;
        }
    }
    // Horner expansion of the Newton form.
    let mut acc: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // acc = acc*(x - x_i) + dd[i]
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (j, c) in acc.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * &xs[i];
        }
        next[0] += &dd[i];
        acc = next;
    }
    let coeffs: Vec<BigInt> = acc
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolation produced a non-integer coefficient");
            c.to_integer()
        })
        .collect();
    PolyZ::new(coeffs)
}

/// n-th cyclotomic polynomial, by exact division of x^n - 1.
pub fn cyclotomic(n: u64) -> PolyZ {
    assert!(n >= 1);
    let mut num = {
        let mut c = vec![BigInt::zero(); n as usize + 1];
        c[0] = BigInt::from(-1);
        c[n as usize] = BigInt::one();
        PolyZ::new(c)
    };
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic(d);
            num = num.div_exact(&phi_d).expect("cyclotomic divides");
        }
    }
    num
}
