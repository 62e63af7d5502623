//! The per-prime survey pipeline and its aggregation.
//!
//! For each good odd prime p up to x_max: count points, build and validate
//! the Frobenius polynomial, test generic-place membership, split over Z,
//! detect the m-th power structure, decide absolute simplicity, and
//! (budget permitting) identify the splitting-field Galois group. Records
//! stream to a JSONL file with a cursor checkpoint every 500 primes, so an
//! interrupted run resumes to a bit-identical report. Per-prime work is
//! pure; rayon workers share nothing and the fold is order-independent.

mod report;

pub use report::{
    chebotarev_density, density_report, exceptional_bounds, BoundPoint, BoundVariant, ClassRow,
    DensityReport,
};

use std::io::Write as _;
use std::path::{Path, PathBuf};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{
    count_points_fp, frobenius_poly_seeded, CurveError, CurveSpec, HyperellipticCurve,
};
use crate::galois::{galois_quartic_exact, identify_galois_sampled, GaloisId, IdMethod};
use crate::weil::{
    honda_tate_split, is_absolutely_simple, mth_power_split, sa_membership, SAStatus,
};

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("empty input")]
    EmptyInput,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("bad config: {0}")]
    BadConfig(String),
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl From<std::io::Error> for SurveyError {
    fn from(e: std::io::Error) -> Self {
        SurveyError::Io(e.to_string())
    }
}

fn default_expected_m() -> u32 {
    1
}
fn default_galois_budget() -> usize {
    100
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurveyConfig {
    pub curve: CurveSpec,
    pub x_max: u64,
    #[serde(default)]
    pub congruence_modulus: Option<u64>,
    #[serde(default = "default_expected_m")]
    pub expected_m: u32,
    /// Defaults to g + 1 when absent.
    #[serde(default)]
    pub expected_rank: Option<u32>,
    /// Label of the expected splitting-field group (e.g. "B2").
    #[serde(default)]
    pub expected_group: Option<String>,
    #[serde(default = "default_galois_budget")]
    pub galois_budget: usize,
    /// Bound for the multiplicative relation search; absent = skipped.
    #[serde(default)]
    pub relation_bound: Option<u32>,
    #[serde(default)]
    pub jobs: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub records_path: Option<String>,
    #[serde(default)]
    pub report_path: Option<String>,
}

impl SurveyConfig {
    pub fn validate(&self) -> Result<(), SurveyError> {
        if self.x_max < 3 {
            return Err(SurveyError::BadConfig("x_max must be >= 3".into()));
        }
        if self.expected_m == 0 {
            return Err(SurveyError::BadConfig("expected_m must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisRecord {
    pub group: String,
    pub method: String,
    pub samples_used: usize,
    pub rejected_ell: usize,
    pub observed: Vec<String>,
    pub ambiguous_with: Vec<String>,
}

impl From<&GaloisId> for GaloisRecord {
    fn from(id: &GaloisId) -> Self {
        GaloisRecord {
            group: id.group.to_string(),
            method: match id.method {
                IdMethod::Exact => "exact".into(),
                IdMethod::Sampled => "sampled".into(),
            },
            samples_used: id.samples_used,
            rejected_ell: id.rejected_ell,
            observed: id.observed_types.iter().map(|t| t.to_string()).collect(),
            ambiguous_with: id.ambiguous_with.iter().map(|g| g.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub count_us: u64,
    pub analyze_us: u64,
    pub galois_us: u64,
}

/// One prime's full pipeline result. Serializes losslessly to one JSON line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub schema: u32,
    pub p: u64,
    pub good: bool,
    pub n1: u64,
    pub a1: i64,
    pub a2: Option<i64>,
    /// Ascending coefficients of the Weil polynomial.
    pub coeffs: Vec<i64>,
    pub ordinary: bool,
    pub sa: SAStatus,
    pub decomposition: String,
    pub factors: Vec<(String, u32)>,
    pub certified: bool,
    pub m_found: u32,
    pub abs_simple: bool,
    pub galois: Option<GaloisRecord>,
    pub error: Option<String>,
    pub timings: Timings,
}

impl SurveyRecord {
    /// Copy with timings zeroed: the determinism contract compares these.
    pub fn without_timings(&self) -> SurveyRecord {
        let mut r = self.clone();
        r.timings = Timings::default();
        r
    }
}

pub struct SurveyOutput {
    pub records: Vec<SurveyRecord>,
    pub report: DensityReport,
}

/// Good odd primes of the curve up to x_max.
pub fn survey_primes(curve: &HyperellipticCurve, x_max: u64) -> Vec<u64> {
    crate::algebra::primes_up_to(x_max)
        .into_iter()
        .filter(|&p| curve.good_reduction(p))
        .collect()
}

fn process_prime(
    curve: &HyperellipticCurve,
    config: &SurveyConfig,
    p: u64,
    galois_gated_in: bool,
) -> SurveyRecord {
    let t0 = std::time::Instant::now();
    let mut rec = SurveyRecord {
        schema: 1,
        p,
        good: true,
        n1: 0,
        a1: 0,
        a2: None,
        coeffs: vec![],
        ordinary: false,
        sa: SAStatus { prime_field: true, torsion_free: false, rank_ok: None, in_sa: false },
        decomposition: String::new(),
        factors: vec![],
        certified: false,
        m_found: 0,
        abs_simple: false,
        galois: None,
        error: None,
        timings: Timings::default(),
    };
    match count_points_fp(curve, p) {
        Ok(n1) => {
            rec.n1 = n1;
            rec.a1 = n1 as i64 - (p as i64 + 1);
        }
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    }
    rec.timings.count_us = t0.elapsed().as_micros() as u64;

    let t1 = std::time::Instant::now();
    let w = match frobenius_poly_seeded(curve, p, config.seed ^ p) {
        Ok(w) => w,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    rec.coeffs = w
        .poly()
        .coeffs()
        .iter()
        .map(|c| c.to_i64().expect("survey coefficients fit i64"))
        .collect();
    if curve.genus() == 2 {
        rec.a2 = Some(rec.coeffs[2]);
    }
    rec.ordinary = w.is_ordinary();

    let expected_rank = config.expected_rank.unwrap_or(curve.genus() as u32 + 1);
    rec.sa = sa_membership(&w, expected_rank, config.relation_bound);
    match honda_tate_split(&w) {
        Ok(dec) => {
            rec.decomposition = dec.shape();
            rec.certified = dec.certified;
            rec.factors = dec.factors.iter().map(|(f, m)| (f.to_string(), *m)).collect();
        }
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    }
    let (_root, m) = mth_power_split(&w);
    rec.m_found = m;
    match is_absolutely_simple(&w) {
        Ok((simple, _cert)) => rec.abs_simple = simple,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    }
    rec.timings.analyze_us = t1.elapsed().as_micros() as u64;

    if config.galois_budget > 0 && galois_gated_in {
        let t2 = std::time::Instant::now();
        let id = if curve.genus() == 2 && rec.decomposition == "irreducible" {
            galois_quartic_exact(&w).ok()
        } else if w.poly().is_squarefree() {
            identify_galois_sampled(&w, config.galois_budget).ok()
        } else {
            None
        };
        rec.galois = id.as_ref().map(GaloisRecord::from);
        rec.timings.galois_us = t2.elapsed().as_micros() as u64;
    }
    rec
}

#[derive(Debug, Serialize, Deserialize)]
struct Cursor {
    records: usize,
    last_p: u64,
}

/// Runs the survey, streaming records and checkpointing every 500 primes.
/// With `resume`, previously written records are loaded and their primes
/// skipped; the final report is bit-identical to an uninterrupted run.
pub fn run_survey(config: &SurveyConfig, resume: bool) -> Result<SurveyOutput, SurveyError> {
    config.validate()?;
    let curve = HyperellipticCurve::from_spec(&config.curve)?;
    let primes = survey_primes(&curve, config.x_max);

    let mut records: Vec<SurveyRecord> = vec![];
    let mut start_index = 0usize;
    if resume {
        if let Some(path) = &config.records_path {
            if Path::new(path).exists() {
                records = read_records(path)?;
                let cursor_path = cursor_path(path);
                if cursor_path.exists() {
                    let cur: Cursor =
                        serde_json::from_str(&std::fs::read_to_string(&cursor_path)?)
                            .map_err(|e| SurveyError::Io(e.to_string()))?;
                    records.truncate(cur.records);
                }
                start_index = records.len();
                // consistency: the loaded records must match the prime list head
                for (r, &p) in records.iter().zip(primes.iter()) {
                    if r.p != p {
                        return Err(SurveyError::BadConfig(
                            "checkpoint does not match the configured survey".into(),
                        ));
                    }
                }
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| SurveyError::BadConfig(e.to_string()))?;

    let mut writer: Option<std::io::BufWriter<std::fs::File>> = match &config.records_path {
        Some(path) => {
            let file = if start_index > 0 {
                // rewrite the retained prefix, then append fresh records
                let tmp: Vec<String> = records
                    .iter()
                    .map(|r| serde_json::to_string(r).expect("record serializes"))
                    .collect();
                std::fs::write(path, tmp.join("\n") + if tmp.is_empty() { "" } else { "\n" })?;
                std::fs::OpenOptions::new().append(true).open(path)?
            } else {
                std::fs::File::create(path)?
            };
            Some(std::io::BufWriter::new(file))
        }
        None => None,
    };

    // Galois identification on every record up to x_max = 10^4; a strided
    // subset (by prime index) above, bounding survey cost.
    let galois_stride = (config.x_max / 10_000).max(1) as usize;
    let gated: Vec<(usize, u64)> = primes.iter().copied().enumerate().collect();

    for chunk in gated[start_index..].chunks(500) {
        let mut fresh: Vec<SurveyRecord> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&(idx, p)| {
                    let gate = config.x_max <= 10_000 || idx % galois_stride == 0;
                    process_prime(&curve, config, p, gate)
                })
                .collect()
        });
        fresh.sort_by_key(|r| r.p);
        if let Some(w) = writer.as_mut() {
            for r in &fresh {
                writeln!(w, "{}", serde_json::to_string(r).expect("record serializes"))?;
            }
            w.flush()?;
        }
        records.extend(fresh);
        if let Some(path) = &config.records_path {
            let cur = Cursor { records: records.len(), last_p: records.last().map_or(0, |r| r.p) };
            std::fs::write(cursor_path(path), serde_json::to_string(&cur).unwrap())?;
        }
    }
    drop(writer);

    let report = density_report(&records, config)?;
    if let Some(path) = &config.report_path {
        std::fs::write(path, serde_json::to_string_pretty(&report).unwrap())?;
        let csv_path = PathBuf::from(path).with_extension("csv");
        std::fs::write(&csv_path, report.to_csv())?;
        let bounds_path = PathBuf::from(path).with_extension("bounds.csv");
        std::fs::write(&bounds_path, report.bounds_csv())?;
    }
    Ok(SurveyOutput { records, report })
}

fn cursor_path(records_path: &str) -> PathBuf {
    PathBuf::from(format!("{}.cursor", records_path))
}

pub fn read_records(path: &str) -> Result<Vec<SurveyRecord>, SurveyError> {
    let data = std::fs::read_to_string(path)?;
    let mut out = vec![];
    for line in data.lines() {
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(line).map_err(|e| SurveyError::Io(e.to_string()))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm_config(x_max: u64) -> SurveyConfig {
        SurveyConfig {
            curve: CurveSpec { label: "x5-1".into(), genus: 2, f: vec![-1, 0, 0, 0, 0, 1] },
            x_max,
            congruence_modulus: Some(5),
            expected_m: 1,
            expected_rank: None,
            expected_group: Some("B2".into()),
            galois_budget: 40,
            relation_bound: None,
            jobs: 0,
            seed: 0,
            records_path: None,
            report_path: None,
        }
    }

    #[test]
    fn record_count_and_basics() {
        let config = cm_config(150);
        let out = run_survey(&config, false).unwrap();
        let curve = HyperellipticCurve::from_spec(&config.curve).unwrap();
        let n_good = survey_primes(&curve, 150).len();
        assert_eq!(out.records.len(), n_good);
        for r in &out.records {
            assert!(r.error.is_none(), "p={} error {:?}", r.p, r.error);
            assert!(r.good);
            // Hasse bound
            let bound = 2.0 * (r.p as f64).sqrt();
            assert!((r.a1.abs() as f64) <= 2.0 * bound);
            // CM structure: p = 4 mod 5 gives (x^2+p)^2
            if r.p % 5 == 4 {
                assert_eq!(r.decomposition, "Q1^2");
                assert_eq!(r.m_found, 2);
                assert!(!r.sa.in_sa); // torsion
            }
        }
    }

    #[test]
    fn genus1_smoke() {
        let config = SurveyConfig {
            curve: CurveSpec { label: "e1".into(), genus: 1, f: vec![1, 1, 0, 1] },
            x_max: 200,
            congruence_modulus: None,
            expected_m: 1,
            expected_rank: None,
            expected_group: None,
            galois_budget: 10,
            relation_bound: None,
            jobs: 1,
            seed: 0,
            records_path: None,
            report_path: None,
        };
        let out = run_survey(&config, false).unwrap();
        for r in &out.records {
            assert!(r.error.is_none());
            let hasse = 2.0 * (r.p as f64).sqrt();
            assert!((r.a1.abs() as f64) <= hasse, "p={} a1={}", r.p, r.a1);
            assert!(r.a2.is_none());
        }
    }

    #[test]
    fn determinism_and_parallel_eq_serial() {
        let mut c1 = cm_config(300);
        c1.jobs = 1;
        let mut c4 = cm_config(300);
        c4.jobs = 4;
        let out1 = run_survey(&c1, false).unwrap();
        let out1b = run_survey(&c1, false).unwrap();
        let out4 = run_survey(&c4, false).unwrap();
        let strip =
            |v: &[SurveyRecord]| v.iter().map(|r| r.without_timings()).collect::<Vec<_>>();
        assert_eq!(strip(&out1.records), strip(&out1b.records));
        assert_eq!(strip(&out1.records), strip(&out4.records));
        // reports bit-identical
        let j1 = serde_json::to_string(&out1.report).unwrap();
        let j1b = serde_json::to_string(&out1b.report).unwrap();
        let j4 = serde_json::to_string(&out4.report).unwrap();
        assert_eq!(j1, j1b);
        assert_eq!(j1, j4);
    }

    #[test]
    fn checkpoint_resume_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        let records_path = dir.path().join("records.jsonl");
        let mut config = cm_config(600);
        config.records_path = Some(records_path.to_str().unwrap().into());

        // fresh full run
        let full = run_survey(&config, false).unwrap();

        // simulate an interrupted run: keep only the first 500-record chunk
        let all = read_records(config.records_path.as_ref().unwrap()).unwrap();
        let keep = 37.min(all.len());
        let lines: Vec<String> =
            all[..keep].iter().map(|r| serde_json::to_string(r).unwrap()).collect();
        std::fs::write(&records_path, lines.join("\n") + "\n").unwrap();
        std::fs::write(
            format!("{}.cursor", records_path.to_str().unwrap()),
            serde_json::to_string(&Cursor { records: keep, last_p: all[keep - 1].p }).unwrap(),
        )
        .unwrap();

        let resumed = run_survey(&config, true).unwrap();
        assert_eq!(
            serde_json::to_string(&full.report).unwrap(),
            serde_json::to_string(&resumed.report).unwrap()
        );
    }

    #[test]
    fn m_times_deg_is_2g_on_certified_sa_records() {
        // P = Q^m with m maximal forces m * deg Q = 2g; tie that to the
        // recorded decomposition on generic-place records.
        let out = run_survey(&cm_config(400), false).unwrap();
        let mut checked = 0;
        for r in &out.records {
            if r.sa.in_sa && r.certified {
                let total: usize = r
                    .factors
                    .iter()
                    .map(|(f, m)| {
                        let poly = crate::cli::poly_from_text(f).unwrap();
                        poly.degree() * (*m as usize)
                    })
                    .sum();
                assert_eq!(total, 4, "p={}", r.p);
                assert_eq!(4 % (r.m_found as usize), 0);
                if r.factors.len() == 1 {
                    assert_eq!(r.m_found, r.factors[0].1, "p={}", r.p);
                }
                checked += 1;
            }
        }
        assert!(checked > 10);
    }
}
