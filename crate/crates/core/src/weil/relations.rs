//! Bounded search for multiplicative relations among the roots of a Weil
//! polynomial, beyond the forced pairing pi * (q/pi) = q.
//!
//! For each exponent multiset E = (e_1 >= ... >= e_k), 1 <= e_j <= B, the
//! polynomial R_E whose roots are all products of e_j-th powers of roots is
//! built exactly (Graeffe transforms chained by composed products). A root
//! of R_E of the form zeta * q^(sum E / 2) with zeta a root of unity
//! witnesses a relation -- unless it is already explained by the forced
//! pairing. The forced count is computed on a generic model of the root
//! system (one free generator per conjugate pair, exact bookkeeping for the
//! rational/real roots +-sqrt(q)), and only an excess over that count is
//! reported. zeta = 1 reports a rank drop; zeta of order n > 1 reports
//! torsion of order n.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::algebra::{
    composed_product, cyclotomic, factor_over_z, graeffe_power, AlgebraError, PolyZ,
};

use super::{root_of_unity_orders, WeilError, WeilPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationKind {
    /// Some product of root powers equals a power of q exactly: the root
    /// group has smaller rank than generic.
    RankDrop,
    /// Some product of root powers is a primitive n-th root of unity times
    /// a power of q: the root group has torsion.
    Torsion(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiRelation {
    /// The exponent multiset E.
    pub exponents: Vec<u32>,
    /// t with the relation value zeta * q^t.
    pub q_power: u32,
    pub kind: RelationKind,
    /// Multiplicity found beyond the generic (forced) count.
    pub excess: usize,
}

/// One distinct root in the generic model: sign * q^(q_halves/2) * pi^(dir),
/// with pi a free generator shared by a conjugate pair.
#[derive(Debug, Clone, Copy)]
struct RootSymbol {
    sign: i8,
    q_halves: i64,
    generator: Option<(usize, i8)>,
}

pub fn phi_relation_search(w: &WeilPoly, bound: u32) -> Result<Vec<PhiRelation>, WeilError> {
    if bound == 0 || bound > 3 {
        return Err(WeilError::Algebra(AlgebraError::BoundTooLarge(bound)));
    }
    let sf = w.poly().squarefree_part();
    let d = sf.degree();
    if d == 0 {
        return Ok(vec![]);
    }
    let symbols = generic_symbols(&sf, w.q())?;
    debug_assert_eq!(symbols.len(), d);
    let torsion_orders = root_of_unity_orders(w.genus());
    let q_int = BigInt::from(w.q().clone());

    let mut out = vec![];
    for shape in exponent_shapes(d, bound) {
        let sum: u32 = shape.iter().sum();
        // |product| = q^(sum/2); a rational relation value needs that integral.
        let target = match exact_sqrt(&q_int.pow(sum)) {
            Some(v) => v,
            None => continue,
        };
        let t = sum / 2; // reported q-power (halved exponent, rounded for odd sums over square q)

        let mut r = graeffe_power(&sf, shape[0] as u64)?;
        for &e in &shape[1..] {
            r = composed_product(&r, &graeffe_power(&sf, e as u64)?)?;
        }

        // zeta = 1
        let actual = multiplicity_of(&r, &PolyZ::linear(target.clone()));
        let generic = generic_count(&symbols, &shape, sum as i64, 1);
        if actual > generic {
            out.push(PhiRelation {
                exponents: shape.clone(),
                q_power: t,
                kind: RelationKind::RankDrop,
                excess: actual - generic,
            });
        }
        // zeta of order n >= 2
        for &n in &torsion_orders {
            let m = cyclotomic(n).scale_roots(&target);
            let actual = multiplicity_of(&r, &m);
            let generic = if n == 2 { generic_count(&symbols, &shape, sum as i64, -1) } else { 0 };
            if actual > generic {
                out.push(PhiRelation {
                    exponents: shape.clone(),
                    q_power: t,
                    kind: RelationKind::Torsion(n),
                    excess: actual - generic,
                });
            }
        }
    }
    Ok(out)
}

fn exact_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.sign() == Sign::Minus {
        return None;
    }
    let r = v.sqrt();
    if &r * &r == *v {
        Some(r)
    } else {
        None
    }
}

fn multiplicity_of(r: &PolyZ, m: &PolyZ) -> usize {
    let mut count = 0;
    let mut cur = r.clone();
    while let Some(q) = cur.div_exact(m) {
        count += 1;
        cur = q;
    }
    count
}

/// Non-increasing exponent multisets over 1..=bound, of length 1..=d.
fn exponent_shapes(d: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![];
    let mut cur: Vec<u32> = vec![];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, d: usize, max: u32) {
        if cur.len() == d {
            return;
        }
        for e in (1..=max).rev() {
            cur.push(e);
            out.push(cur.clone());
            rec(out, cur, d, e);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, d, bound);
    out
}

/// Monic polynomial with roots q/alpha for the roots alpha of a factor of a
/// Weil polynomial: x^k Q(q/x) / Q(0), which is integral in this setting.
fn conjugate_transform(qpoly: &PolyZ, q: &BigInt) -> Result<PolyZ, WeilError> {
    let k = qpoly.degree();
    let c0 = qpoly.coeff(0);
    if c0.is_zero() {
        return Err(WeilError::RootsOffCircle); // zero root: not a Weil factor
    }
    let mut coeffs = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let num = qpoly.coeff(k - j) * q.pow((k - j) as u32);
        if (&num % &c0) != BigInt::zero() {
            return Err(WeilError::RootsOffCircle);
        }
        coeffs.push(num / &c0);
    }
    let out = PolyZ::new(coeffs);
    if !out.is_monic() {
        return Err(WeilError::RootsOffCircle);
    }
    Ok(out)
}

fn generic_symbols(sf: &PolyZ, q: &BigUint) -> Result<Vec<RootSymbol>, WeilError> {
    let q_int = BigInt::from(q.clone());
    let factors: Vec<PolyZ> = factor_over_z(sf)?.factors.into_iter().map(|(f, _)| f).collect();
    let mut used = vec![false; factors.len()];
    let mut symbols = vec![];
    let mut next_gen = 0usize;
    for i in 0..factors.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let f = &factors[i];
        let fhat = conjugate_transform(f, &q_int)?;
        if fhat == *f {
            let k = f.degree();
            if k == 1 {
                // rational root c with c^2 = q
                let c = -f.coeff(0);
                if &c * &c != q_int {
                    return Err(WeilError::RootsOffCircle);
                }
                let sign = if c.sign() == Sign::Minus { -1 } else { 1 };
                symbols.push(RootSymbol { sign, q_halves: 1, generator: None });
            } else if *f == PolyZ::new(vec![-q_int.clone(), BigInt::zero(), BigInt::one()]) {
                // x^2 - q: the two real roots +-sqrt(q)
                symbols.push(RootSymbol { sign: 1, q_halves: 1, generator: None });
                symbols.push(RootSymbol { sign: -1, q_halves: 1, generator: None });
            } else {
                // conjugation pairs the roots within the factor
                debug_assert!(k % 2 == 0, "self-paired factor of odd degree");
                for _ in 0..k / 2 {
                    let id = next_gen;
                    next_gen += 1;
                    symbols.push(RootSymbol { sign: 1, q_halves: 0, generator: Some((id, 1)) });
                    symbols.push(RootSymbol { sign: 1, q_halves: 2, generator: Some((id, -1)) });
                }
            }
        } else {
            // swapped pair of factors
            let j = factors
                .iter()
                .position(|g| *g == fhat)
                .expect("conjugate factor present in a Weil polynomial");
            debug_assert!(!used[j]);
            used[j] = true;
            for _ in 0..f.degree() {
                let id = next_gen;
                next_gen += 1;
                symbols.push(RootSymbol { sign: 1, q_halves: 0, generator: Some((id, 1)) });
                symbols.push(RootSymbol { sign: 1, q_halves: 2, generator: Some((id, -1)) });
            }
        }
    }
    Ok(symbols)
}

/// Number of ordered assignments of generic roots to the slots of `shape`
/// whose product is (want_sign) * q^(q_halves_target / 2) exactly.
fn generic_count(symbols: &[RootSymbol], shape: &[u32], q_halves_target: i64, want_sign: i8) -> usize {
    let d = symbols.len();
    let k = shape.len();
    let n_gens = symbols
        .iter()
        .filter_map(|s| s.generator.map(|(id, _)| id + 1))
        .max()
        .unwrap_or(0);
    let mut count = 0usize;
    let mut idx = vec![0usize; k];
    loop {
        let mut sign = 1i8;
        let mut halves = 0i64;
        let mut gens = vec![0i64; n_gens];
        for (slot, &i) in idx.iter().enumerate() {
            let e = shape[slot] as i64;
            let s = symbols[i];
            if s.sign < 0 && e % 2 == 1 {
                sign = -sign;
            }
            halves += s.q_halves * e;
            if let Some((id, dir)) = s.generator {
                gens[id] += dir as i64 * e;
            }
        }
        if sign == want_sign && halves == q_halves_target && gens.iter().all(|&v| v == 0) {
            count += 1;
        }
        // advance odometer
        let mut pos = 0;
        loop {
            if pos == k {
                return count;
            }
            idx[pos] += 1;
            if idx[pos] < d {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
