//! Exact factorization of integer polynomials of degree <= 16 into
//! irreducibles: Yun squarefree decomposition, factorization modulo a good
//! prime, quadratic Hensel lifting past a Mignotte-style coefficient bound,
//! then subset recombination with trial division. The degree cap keeps the
//! recombination stage cheap.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::polyf::{factor_mod_l, PolyF, PrimeFieldCtx};
use super::primes::primes_up_to;
use super::{AlgebraError, PolyZ};

/// `unit * prod factors^mult == input`, factors irreducible, primitive,
/// positive leading coefficient (hence monic for +-monic inputs).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationZ {
    pub unit: BigInt,
    pub factors: Vec<(PolyZ, u32)>,
}

impl FactorizationZ {
    pub fn product(&self) -> PolyZ {
        let mut acc = PolyZ::constant(self.unit.clone());
        for (p, m) in &self.factors {
            acc = acc.mul(&p.pow(*m));
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub fn factor_over_z(p: &PolyZ) -> Result<FactorizationZ, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPoly);
    }
    let deg = p.degree();
    if deg > 16 {
        return Err(AlgebraError::DegreeTooLarge(deg));
    }
    let mut unit = p.content();
    if p.lc().sign() == Sign::Minus {
        unit = -unit;
    }
    let f = p.primitive();
    let mut factors: Vec<(PolyZ, u32)> = vec![];
    for (part, mult) in f.squarefree_decomposition() {
        for irr in factor_squarefree(&part) {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs()))
    });
    let out = FactorizationZ { unit, factors };
    debug_assert_eq!(out.product(), *p);
    Ok(out)
}

fn factor_squarefree(f: &PolyZ) -> Vec<PolyZ> {
    let deg = f.degree();
    if deg <= 1 {
        return vec![f.clone()];
    }
    if f.is_monic() {
        return factor_squarefree_monic(f);
    }
    // Monicize: T(x) = lc^(deg-1) * f(x/lc) has roots lc * (roots of f).
    let lc = f.lc();
    let t = {
        let mut coeffs = Vec::with_capacity(deg + 1);
        for (i, c) in f.coeffs().iter().enumerate() {
            if i == deg {
                coeffs.push(BigInt::one());
            } else {
                coeffs.push(c * lc.pow((deg - 1 - i) as u32));
            }
        }
        PolyZ::new(coeffs)
    };
    let mut out = vec![];
    for tf in factor_squarefree_monic(&t) {
        // map roots back: factor of f is primitive(T_j(lc * x))
        let mapped = {
            let mut coeffs = Vec::with_capacity(tf.coeffs().len());
            let mut pw = BigInt::one();
            for c in tf.coeffs() {
                coeffs.push(c * &pw);
                pw *= &lc;
            }
            PolyZ::new(coeffs).primitive()
        };
        out.push(mapped);
    }
    debug_assert_eq!(
        out.iter().fold(PolyZ::one(), |acc, q| acc.mul(q)).primitive(),
        f.primitive()
    );
    out
}

fn factor_squarefree_monic(f: &PolyZ) -> Vec<PolyZ> {
    // Pick a good prime: f stays squarefree mod ell; prefer the candidate
    // with the fewest modular factors among the first few usable primes.
    let mut best: Option<(PrimeFieldCtx, Vec<PolyF>)> = None;
    let mut tried = 0;
    for ell in primes_up_to(10_000) {
        let ctx = PrimeFieldCtx::with_seed(ell, 0x5eed).unwrap();
        let fl = PolyF::from_polyz(&ctx, f);
        if fl.deg() != Some(f.degree()) {
            continue; // lc vanished (cannot happen for monic, kept for safety)
        }
        let g = fl.gcd(&fl.derivative());
        if g.deg() != Some(0) {
            continue; // not squarefree mod ell
        }
        let fac = factor_mod_l(&ctx, &fl).unwrap();
        let mods: Vec<PolyF> = fac.factors.into_iter().map(|(q, _)| q).collect();
        let better = match &best {
            None => true,
            Some((_, b)) => mods.len() < b.len(),
        };
        if better {
            best = Some((ctx, mods));
        }
        tried += 1;
        // an irreducible reduction settles it; otherwise a few more cheap
        // probes often find one and skip the lifting stage entirely
        if best.as_ref().map_or(false, |(_, m)| m.len() == 1) || tried >= 8 {
            break;
        }
    }
    let (ctx, mod_factors) = best.expect("some good prime exists for a squarefree polynomial");
    if mod_factors.len() == 1 {
        return vec![f.clone()];
    }

    // Lift factorization past twice the Mignotte-style bound.
    let bound = mignotte_bound(f);
    let ell_big = BigUint::from(ctx.ell());
    let mut modulus = ell_big.clone();
    let mut lift_steps = 0u32;
    while BigInt::from(modulus.clone()) <= &bound * 2 {
        modulus = &modulus * &modulus;
        lift_steps += 1;
    }
    let lifted = if lift_steps == 0 {
        mod_factors.iter().map(|g| g.to_polyz()).collect::<Vec<_>>()
    } else {
        lift_factor_list(f, &mod_factors, &ctx, &modulus)
    };

    // Subset recombination with trial division.
    let m_int = BigInt::from(modulus.clone());
    let mut live: Vec<PolyZ> = lifted;
    let mut rest = f.clone();
    let mut out = vec![];
    let mut size = 1usize;
    while 2 * size <= live.len() {
        let mut found = None;
        'subsets: for subset in subsets_of_size(live.len(), size) {
            let mut cand = PolyZ::one();
            for &i in &subset {
                cand = cand.mul(&live[i]);
                cand = reduce_symmetric(&cand, &m_int);
            }
            if let Some(q) = rest.div_exact(&cand) {
                out.push(cand);
                rest = q;
                found = Some(subset);
                break 'subsets;
            }
        }
        match found {
            Some(subset) => {
                let keep: Vec<PolyZ> = live
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                live = keep;
            }
            None => size += 1,
        }
    }
    if rest.degree() > 0 {
        out.push(rest);
    }
    out
}

/// Landau–Mignotte-style bound: coefficients of any factor of monic f are
/// bounded by 2^deg * (||f||_2 + 1).
fn mignotte_bound(f: &PolyZ) -> BigInt {
    let mut norm2 = BigInt::zero();
    for c in f.coeffs() {
        norm2 += c * c;
    }
    let norm = norm2.sqrt() + 1;
    (BigInt::one() << f.degree()) * norm
}

fn reduce_symmetric(p: &PolyZ, m: &BigInt) -> PolyZ {
    let half = m / 2;
    PolyZ::new(
        p.coeffs()
            .iter()
            .map(|c| {
                let mut r = c.mod_floor(m);
                if r > half {
                    r -= m;
                }
                r
            })
            .collect(),
    )
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// --- Hensel lifting ---------------------------------------------------------

/// Coefficients reduced into [0, m).
fn pm_reduce(p: &PolyZ, m: &BigInt) -> PolyZ {
    PolyZ::new(p.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn pm_mul(a: &PolyZ, b: &PolyZ, m: &BigInt) -> PolyZ {
    pm_reduce(&a.mul(b), m)
}

fn pm_sub(a: &PolyZ, b: &PolyZ, m: &BigInt) -> PolyZ {
    pm_reduce(&a.sub(b), m)
}

/// Division by a monic divisor with all arithmetic mod m.
fn pm_divrem_monic(a: &PolyZ, g: &PolyZ, m: &BigInt) -> (PolyZ, PolyZ) {
    debug_assert!(g.is_monic());
    let dg = g.degree();
    let mut rem: Vec<BigInt> = a.coeffs().to_vec();
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dg)];
    while rem.len() > dg {
        let k = rem.len() - 1 - dg;
        let c = rem.last().unwrap().mod_floor(m);
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, gc) in g.coeffs().iter().enumerate() {
                let idx = k + i;
                let v = std::mem::take(&mut rem[idx]);
                rem[idx] = (v - &c * gc).mod_floor(m);
            }
        }
        rem.pop();
    }
    (pm_reduce(&PolyZ::new(quot), m), pm_reduce(&PolyZ::new(rem), m))
}

/// One quadratic Hensel step: (f = g*h, s*g + t*h = 1) mod m lifts to mod m^2.
/// f and g monic.
fn hensel_step(
    f: &PolyZ,
    g: &PolyZ,
    h: &PolyZ,
    s: &PolyZ,
    t: &PolyZ,
    m: &BigInt,
) -> (PolyZ, PolyZ, PolyZ, PolyZ) {
    let m2 = m * m;
    let e = pm_sub(f, &g.mul(h), &m2);
    // With s*g + t*h = 1: dg = rem(t*e, g), dh = s*e + quo(t*e, g)*h gives
    // dg*h + dh*g = e*(s*g + t*h) = e, and g + dg stays monic.
    let (q, r) = pm_divrem_monic(&pm_mul(t, &e, &m2), g, &m2);
    let g1 = pm_reduce(&g.add(&r), &m2);
    let h1 = pm_reduce(&h.add(&pm_mul(s, &e, &m2)).add(&pm_mul(&q, h, &m2)), &m2);
    debug_assert!(pm_sub(f, &g1.mul(&h1), &m2).is_zero());
    let b = pm_reduce(
        &pm_mul(s, &g1, &m2).add(&pm_mul(t, &h1, &m2)).sub(&PolyZ::one()),
        &m2,
    );
    let (c, d) = pm_divrem_monic(&pm_mul(t, &b, &m2), &g1, &m2);
    let t1 = pm_sub(t, &d, &m2);
    let s1 = pm_sub(&pm_sub(s, &pm_mul(s, &b, &m2), &m2), &pm_mul(&c, &h1, &m2), &m2);
    debug_assert!(pm_sub(
        &pm_mul(&s1, &g1, &m2).add(&pm_mul(&t1, &h1, &m2)),
        &PolyZ::one(),
        &m2
    )
    .is_zero());
    (g1, h1, s1, t1)
}

/// Lifts a pair (G, H) with f = G*H from mod ell to mod `target` (a power
/// ell^(2^k)), starting from a Bezout identity computed in F_ell.
fn lift_pair(f: &PolyZ, g0: &PolyF, h0: &PolyF, ctx: &PrimeFieldCtx, target: &BigUint) -> (PolyZ, PolyZ) {
    let (one, s0, t0) = g0.xgcd(h0);
    debug_assert_eq!(one.deg(), Some(0));
    let mut g = g0.to_polyz();
    let mut h = h0.to_polyz();
    let mut s = s0.to_polyz();
    let mut t = t0.to_polyz();
    let mut m = BigInt::from(ctx.ell());
    let target = BigInt::from(target.clone());
    while m < target {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    (g, h)
}

/// Recursively lifts the full monic factor list of monic f to mod `target`.
fn lift_factor_list(f: &PolyZ, factors: &[PolyF], ctx: &PrimeFieldCtx, target: &BigUint) -> Vec<PolyZ> {
    if factors.len() == 1 {
        return vec![pm_reduce(f, &BigInt::from(target.clone()))];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let prod = |list: &[PolyF]| -> PolyF {
        let mut acc = PolyF::one(ctx);
        for q in list {
            acc = acc.mul(q);
        }
        acc
    };
    let g0 = prod(left);
    let h0 = prod(right);
    let (g, h) = lift_pair(f, &g0, &h0, ctx, target);
    let mut out = lift_factor_list(&g, left, ctx, target);
    out.extend(lift_factor_list(&h, right, ctx, target));
    out
}
