//! Density aggregation, the finite Chebotarev density formula, and the
//! effective exceptional-count bound shapes.
//!
//! Fractions are exact rationals internally; they are rendered as
//! "num/den" strings (JSON) or rounded decimals (CSV) only at
//! serialization time.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{SurveyConfig, SurveyError, SurveyRecord};

/// Sum over classes of (|C| / sum |C|) * prod_ell f_{C, ell}: the finite
/// density formula evaluated on user-supplied data. The empty product
/// (no ell) is 1.
pub fn chebotarev_density(
    class_sizes: &[u64],
    fractions: &[Vec<BigRational>],
) -> Result<BigRational, SurveyError> {
    if class_sizes.is_empty() || class_sizes.len() != fractions.len() {
        return Err(SurveyError::EmptyInput);
    }
    if class_sizes.iter().any(|&s| s == 0) {
        return Err(SurveyError::Domain("class sizes must be positive".into()));
    }
    let total: u64 = class_sizes.iter().sum();
    let total = BigRational::from_integer(BigInt::from(total));
    let mut acc = BigRational::zero();
    for (size, fs) in class_sizes.iter().zip(fractions.iter()) {
        let mut term = BigRational::from_integer(BigInt::from(*size)) / &total;
        for f in fs {
            if f < &BigRational::zero() || f > &BigRational::one() {
                return Err(SurveyError::Domain("fractions must lie in [0,1]".into()));
            }
            term *= f;
        }
        acc += term;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundVariant {
    /// Subvariety count shapes: x/(log x)^(1+1/d) * ((llx)^2 lllx)^(1/d),
    /// or x^(1-1/(2d)) (log x)^(-1+2/d) under GRH.
    Serre,
    /// Sieve shapes: x (llx)^(1+1/(3d)) / (log x)^(1+1/(6d)), or
    /// x^(1-1/(4d+2r+2)) (log x)^(2/(2d+r+1)) under GRH.
    Sieve,
}

/// Evaluates the named bound shape (no implied constants).
pub fn exceptional_bounds(
    x: f64,
    d: u32,
    r: u32,
    grh: bool,
    variant: BoundVariant,
) -> Result<f64, SurveyError> {
    if !(x >= 16.0) || d < 1 || r < 1 {
        return Err(SurveyError::Domain(format!(
            "need x >= 16 (got {}), d >= 1, r >= 1",
            x
        )));
    }
    let d = d as f64;
    let r = r as f64;
    let lx = x.ln();
    let llx = lx.ln();
    let value = match (variant, grh) {
        (BoundVariant::Serre, false) => {
            let lllx = llx.ln();
            if lllx <= 0.0 {
                return Err(SurveyError::Domain("x too small for iterated logs".into()));
            }
            x / lx.powf(1.0 + 1.0 / d) * (llx * llx * lllx).powf(1.0 / d)
        }
        (BoundVariant::Serre, true) => x.powf(1.0 - 1.0 / (2.0 * d)) * lx.powf(-1.0 + 2.0 / d),
        (BoundVariant::Sieve, false) => {
            x * llx.powf(1.0 + 1.0 / (3.0 * d)) / lx.powf(1.0 + 1.0 / (6.0 * d))
        }
        (BoundVariant::Sieve, true) => {
            x.powf(1.0 - 1.0 / (4.0 * d + 2.0 * r + 2.0)) * lx.powf(2.0 / (2.0 * d + r + 1.0))
        }
    };
    Ok(value)
}

/// Exact fraction rendered as "num/den", with a float echo for plotting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frac {
    pub exact: String,
    pub value: f64,
}

impl Frac {
    fn new(num: u64, den: u64) -> Frac {
        if den == 0 {
            return Frac { exact: "0/0".into(), value: 0.0 };
        }
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        Frac { exact: format!("{}/{}", num, den), value: r.to_f64().unwrap_or(0.0) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRow {
    pub class: String,
    pub n_good: u64,
    pub frac_simple: Frac,
    pub frac_m_power: Frac,
    pub frac_abs_simple: Frac,
    pub frac_full_galois: Frac,
    pub n_galois_identified: u64,
    pub frac_sa: Frac,
    pub n_exceptional: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundPoint {
    pub x: u64,
    pub exceptional_count: u64,
    pub serre: f64,
    pub serre_grh: f64,
    pub sieve: f64,
    pub sieve_grh: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub curve: String,
    pub x_max: u64,
    pub expected_m: u32,
    pub expected_group: Option<String>,
    pub congruence_modulus: Option<u64>,
    pub classes: Vec<ClassRow>,
    /// Exceptional primes: generic places whose decomposition is not the
    /// expected_m-th power of a single irreducible factor. Capped here;
    /// the full list stays recoverable from the record file.
    pub exceptional: Vec<u64>,
    pub exceptional_total: u64,
    pub bound_points: Vec<BoundPoint>,
    /// Smallest c with count <= c * shape at every checkpoint.
    pub fitted_c_serre: f64,
    pub fitted_c_sieve: f64,
}

const EXCEPTIONAL_REPORT_CAP: usize = 10_000;

/// Is this record the expected shape: a single irreducible factor to the
/// power expected_m?
fn is_expected_m_power(r: &SurveyRecord, expected_m: u32) -> bool {
    r.factors.len() == 1 && r.m_found == expected_m && r.factors[0].1 == expected_m
}

pub fn density_report(
    records: &[SurveyRecord],
    config: &SurveyConfig,
) -> Result<DensityReport, SurveyError> {
    if records.is_empty() {
        return Err(SurveyError::EmptyInput);
    }
    let modulus = config.congruence_modulus;
    let mut class_keys: Vec<String> = vec!["all".into()];
    if let Some(m) = modulus {
        for rclass in 1..m {
            if num_integer::Integer::gcd(&rclass, &m) == 1 {
                class_keys.push(format!("{} mod {}", rclass, m));
            }
        }
    }

    let in_class = |r: &SurveyRecord, key: &str| -> bool {
        if key == "all" {
            return true;
        }
        let m = modulus.unwrap();
        let rc: u64 = key.split(' ').next().unwrap().parse().unwrap();
        r.p % m == rc
    };

    let mut classes = vec![];
    for key in &class_keys {
        let rows: Vec<&SurveyRecord> = records.iter().filter(|r| in_class(r, key)).collect();
        let n = rows.len() as u64;
        let count = |pred: &dyn Fn(&SurveyRecord) -> bool| rows.iter().filter(|r| pred(r)).count() as u64;
        let simple = count(&|r| r.decomposition == "irreducible");
        let m_power = count(&|r| is_expected_m_power(r, config.expected_m));
        let abs_simple = count(&|r| r.abs_simple);
        let sa = count(&|r| r.sa.in_sa);
        let identified = count(&|r| r.galois.is_some());
        let full = match &config.expected_group {
            Some(g) => count(&|r| r.galois.as_ref().map_or(false, |id| &id.group == g)),
            None => 0,
        };
        let exceptional = count(&|r| r.sa.in_sa && !is_expected_m_power(r, config.expected_m));
        classes.push(ClassRow {
            class: key.clone(),
            n_good: n,
            frac_simple: Frac::new(simple, n),
            frac_m_power: Frac::new(m_power, n),
            frac_abs_simple: Frac::new(abs_simple, n),
            frac_full_galois: Frac::new(full, identified),
            n_galois_identified: identified,
            frac_sa: Frac::new(sa, n),
            n_exceptional: exceptional,
        });
    }

    let exceptional_primes: Vec<u64> = records
        .iter()
        .filter(|r| r.sa.in_sa && !is_expected_m_power(r, config.expected_m))
        .map(|r| r.p)
        .collect();

    // cumulative exceptional counts against the bound shapes at
    // geometrically spaced checkpoints
    let d = 2 * config.curve.genus as u32 * config.curve.genus as u32
        + config.curve.genus as u32
        + 1; // dim GSp_2g = 2g^2 + g + 1
    let r = config.curve.genus as u32 + 1; // rank of GSp_2g
    let mut bound_points = vec![];
    let mut fitted_c_serre: f64 = 0.0;
    let mut fitted_c_sieve: f64 = 0.0;
    if config.x_max >= 16 {
        let mut xs = vec![];
        let mut x = 16f64;
        while (x as u64) < config.x_max {
            xs.push(x as u64);
            x *= 2.0;
        }
        xs.push(config.x_max);
        for x in xs {
            let count = exceptional_primes.iter().filter(|&&p| p <= x).count() as u64;
            let serre = exceptional_bounds(x as f64, d, r, false, BoundVariant::Serre)?;
            let serre_grh = exceptional_bounds(x as f64, d, r, true, BoundVariant::Serre)?;
            let sieve = exceptional_bounds(x as f64, d, r, false, BoundVariant::Sieve)?;
            let sieve_grh = exceptional_bounds(x as f64, d, r, true, BoundVariant::Sieve)?;
            if serre > 0.0 {
                fitted_c_serre = fitted_c_serre.max(count as f64 / serre);
            }
            if sieve > 0.0 {
                fitted_c_sieve = fitted_c_sieve.max(count as f64 / sieve);
            }
            bound_points.push(BoundPoint { x, exceptional_count: count, serre, serre_grh, sieve, sieve_grh });
        }
    }

    let exceptional_total = exceptional_primes.len() as u64;
    let mut exceptional = exceptional_primes;
    exceptional.truncate(EXCEPTIONAL_REPORT_CAP);

    Ok(DensityReport {
        curve: config.curve.label.clone(),
        x_max: config.x_max,
        expected_m: config.expected_m,
        expected_group: config.expected_group.clone(),
        congruence_modulus: modulus,
        classes,
        exceptional,
        exceptional_total,
        bound_points,
        fitted_c_serre,
        fitted_c_sieve,
    })
}

impl DensityReport {
    /// Class table: one CSV row per congruence class.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "class,n_good,frac_simple,frac_m_power,frac_abs_simple,frac_full_galois,frac_sa,n_exceptional\n",
        );
        for c in &self.classes {
            out.push_str(&format!(
                "{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{}\n",
                c.class,
                c.n_good,
                c.frac_simple.value,
                c.frac_m_power.value,
                c.frac_abs_simple.value,
                c.frac_full_galois.value,
                c.frac_sa.value,
                c.n_exceptional
            ));
        }
        out
    }

    /// Count-vs-bound curves, one row per checkpoint (gnuplot-ready).
    pub fn bounds_csv(&self) -> String {
        let mut out = String::from("x,exceptional_count,serre,serre_grh,sieve,sieve_grh\n");
        for b in &self.bound_points {
            out.push_str(&format!(
                "{},{},{:.6},{:.6},{:.6},{:.6}\n",
                b.x, b.exceptional_count, b.serre, b.serre_grh, b.sieve, b.sieve_grh
            ));
        }
        out
    }
}
