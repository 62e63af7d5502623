//! Jacobian arithmetic for odd-degree hyperelliptic models y^2 = f(x) over
//! a prime field, in Mumford representation (u, v) with u monic, deg v <
//! deg u <= g, and u | v^2 - f. Composition and reduction follow Cantor.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{PolyF, PrimeFieldCtx};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Divisor {
    pub u: PolyF,
    pub v: PolyF,
}

pub struct JacobianCtx {
    pub field: PrimeFieldCtx,
    pub f: PolyF,
    pub genus: usize,
}

impl JacobianCtx {
    pub fn new(field: PrimeFieldCtx, f: PolyF, genus: usize) -> Self {
        debug_assert_eq!(f.degree(), 2 * genus + 1);
        debug_assert!(f.is_monic());
        JacobianCtx { field, f, genus }
    }

    pub fn identity(&self) -> Divisor {
        Divisor { u: PolyF::one(&self.field), v: PolyF::zero(&self.field) }
    }

    pub fn is_identity(&self, d: &Divisor) -> bool {
        d.u.deg() == Some(0)
    }

    pub fn neg(&self, d: &Divisor) -> Divisor {
        Divisor { u: d.u.clone(), v: d.v.mul_scalar(self.field.ell() - 1).rem(&d.u) }
    }

    /// Invariant check: u monic, deg v < deg u, u | v^2 - f.
    pub fn on_curve(&self, d: &Divisor) -> bool {
        if !d.u.is_monic() {
            return false;
        }
        if let (Some(du), Some(dv)) = (d.u.deg(), d.v.deg()) {
            if dv >= du {
                return false;
            }
        }
        d.v.mul(&d.v).sub(&self.f).rem(&d.u).is_zero()
    }

    /// Cantor composition followed by reduction to deg u <= g.
    pub fn add(&self, d1: &Divisor, d2: &Divisor) -> Divisor {
        let (u1, v1) = (&d1.u, &d1.v);
        let (u2, v2) = (&d2.u, &d2.v);
        // d_aux = gcd(u1, u2) = e1 u1 + e2 u2
        let (d_aux, e1, e2) = u1.xgcd(u2);
        // d = gcd(d_aux, v1+v2) = c1 d_aux + c2 (v1+v2)
        let (d, c1, c2) = d_aux.xgcd(&v1.add(v2));
        let s1 = c1.mul(&e1);
        let s2 = c1.mul(&e2);
        let s3 = c2;
        let dd = d.mul(&d);
        let mut u = u1.mul(u2).divrem(&dd).0;
        let num = s1
            .mul(u1)
            .mul(v2)
            .add(&s2.mul(u2).mul(v1))
            .add(&s3.mul(&v1.mul(v2).add(&self.f)));
        let mut v = num.divrem(&d).0.rem(&u);
        // reduction
        while u.deg().map_or(false, |du| du > self.genus) {
            let num = self.f.sub(&v.mul(&v));
            u = num.divrem(&u).0;
            u = u.monic();
            v = v.mul_scalar(self.field.ell() - 1).rem(&u);
        }
        let u = u.monic();
        let v = v.rem(&u);
        let out = Divisor { u, v };
        debug_assert!(self.on_curve(&out));
        out
    }

    pub fn double(&self, d: &Divisor) -> Divisor {
        self.add(d, d)
    }

    /// Scalar multiple by |n|, negated when n < 0.
    pub fn mul(&self, d: &Divisor, n: i128) -> Divisor {
        let mut k = n.unsigned_abs();
        let mut base = d.clone();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base);
            }
        }
        if n < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }

    /// Canonical byte encoding of the Mumford pair, usable as a hash key.
    pub fn encode(&self, d: &Divisor) -> Vec<u8> {
        let mut out = vec![];
        out.push(d.u.coeffs().len() as u8);
        for &c in d.u.coeffs() {
            out.extend_from_slice(&c.to_le_bytes());
        }
        for &c in d.v.coeffs() {
            out.extend_from_slice(&c.to_le_bytes());
        }
        out
    }

    /// Degree-zero divisor class [P - infinity] from a random affine point.
    pub fn random_point_divisor(&self, rng: &mut ChaCha8Rng) -> Divisor {
        let p = self.field.ell();
        loop {
            let x0 = rng.gen_range(0..p);
            let fx = self.f.eval(x0);
            if fx == 0 {
                // ramification point: order-2 class, poor generator; skip
                continue;
            }
            if let Some(y0) = sqrt_mod(fx, p) {
                let u = PolyF::new(&self.field, vec![self.field.sub(0, x0), 1]);
                let v = PolyF::new(&self.field, vec![y0]);
                let d = Divisor { u, v };
                debug_assert!(self.on_curve(&d));
                return d;
            }
        }
    }

    /// A random class built from one or two random points.
    pub fn random_divisor(&self, rng: &mut ChaCha8Rng) -> Divisor {
        let d1 = self.random_point_divisor(rng);
        if self.genus >= 2 && rng.gen_bool(0.75) {
            let d2 = self.random_point_divisor(rng);
            self.add(&d1, &d2)
        } else {
            d1
        }
    }
}

/// Tonelli–Shanks square root mod an odd prime; None for non-residues.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let mulp = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulp(acc, b);
            }
            b = mulp(b, b);
            e >>= 1;
        }
        acc
    };
    if a == 0 {
        return Some(0);
    }
    if pow(a, (p - 1) / 2) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow(a, (p + 1) / 4));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while pow(z, (p - 1) / 2) == 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow(z, q);
    let mut t = pow(a, q);
    let mut r = pow(a, (q + 1) / 2);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mulp(tt, tt);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = mulp(b, b);
        }
        m = i;
        c = mulp(b, b);
        t = mulp(t, c);
        r = mulp(r, b);
    }
    Some(r)
}
