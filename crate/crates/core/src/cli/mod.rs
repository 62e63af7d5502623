//! Command-line front end: every pipeline stage behind a subcommand, with
//! reproducible seeds and machine-readable output.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

mod poly_text;

pub use poly_text::{poly_from_text, poly_to_text};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::curves::{CurveSpec, HyperellipticCurve};
use crate::equidist::{equidist_experiment_jobs, group_order_and_bounds, Family, GroupSpec};
use crate::galois::{galois_quartic_exact, identify_galois_sampled};
use crate::survey::{exceptional_bounds, run_survey, BoundVariant, SurveyConfig};
use crate::weil::{honda_tate_split, validate_weil};
use crate::weyl::{
    build_group, c4_negative_control, conjugacy_classes, element_order_profile,
    jordan_control_s3, lemma42_check, weight_action_check, GroupName,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "weilsplit",
    about = "Surveys the isogeny splitting of Jacobians of small hyperelliptic curves modulo many primes"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Point counts of a curve at a prime.
    Count {
        /// Curve spec file: {"label": .., "genus": 1|2, "f": [c0, .., 1]}.
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: u64,
    },
    /// Frobenius characteristic polynomial of the Jacobian at a prime.
    Weil {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: u64,
    },
    /// Factor a Weil polynomial over Z with the certification flag.
    Split {
        /// Polynomial text ("x^4+38x^2+361") or ascending array ("[361,0,38,0,1]").
        #[arg(long)]
        poly: String,
        #[arg(long)]
        q: u64,
    },
    /// Identify the splitting-field Galois group inside B_g.
    Galois {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        q: u64,
        /// Force the exact resolvent route (genus 2, irreducible).
        #[arg(long, conflicts_with = "sample")]
        exact: bool,
        /// Force the Chebotarev sampling route.
        #[arg(long)]
        sample: bool,
        /// Usable auxiliary primes for the sampler.
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// Run the per-prime survey described by a JSON config file.
    Survey {
        #[arg(long)]
        config: String,
        #[arg(long)]
        resume: bool,
        /// Worker threads (0 = all cores); overrides the config value.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Equidistribution experiment for theta classes over a finite group.
    Equidist {
        /// gl2 | gl3 | gl4 | sl2 | sl3 | sl4 | sp4 | gsp4
        #[arg(long)]
        family: String,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Report exact group orders and bound checks instead of sampling.
        #[arg(long)]
        orders: bool,
    },
    /// Group checks and class tables.
    Group {
        /// d4 | d5 | mumford | classes | controls
        #[arg(long)]
        check: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Evaluate an exceptional-count bound shape.
    Bounds {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        grh: bool,
        /// serre | sieve
        #[arg(long, default_value = "serre")]
        variant: String,
    },
}

/// Entry point for the binary: parse, execute, map errors to exit codes.
pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    dispatch(&args)
}

pub fn dispatch(args: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints usage/synopsis; exit code 2 for usage errors
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(output) => {
            println!("{}", output);
            0
        }
        Err(msg) => {
            eprintln!("error: {}", msg);
            1
        }
    }
}

fn load_curve(path: &str) -> Result<HyperellipticCurve, String> {
    let data = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path, e))?;
    let spec: CurveSpec = serde_json::from_str(&data).map_err(|e| e.to_string())?;
    HyperellipticCurve::from_spec(&spec).map_err(|e| e.to_string())
}

fn parse_family(s: &str) -> Result<(Family, usize), String> {
    match s.to_ascii_lowercase().as_str() {
        "gl2" => Ok((Family::GL, 2)),
        "gl3" => Ok((Family::GL, 3)),
        "gl4" => Ok((Family::GL, 4)),
        "sl2" => Ok((Family::SL, 2)),
        "sl3" => Ok((Family::SL, 3)),
        "sl4" => Ok((Family::SL, 4)),
        "sp4" => Ok((Family::SP, 4)),
        "gsp4" => Ok((Family::GSP, 4)),
        other => Err(format!("unknown family '{}'", other)),
    }
}

/// Executes a parsed command, returning the printable output.
pub fn execute(cli: &Cli) -> Result<String, String> {
    match &cli.command {
        Command::Count { curve, p } => {
            let c = load_curve(curve)?;
            let counts = crate::curves::point_counts(&c, *p).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Csv => Ok(format!(
                    "p,n1,a1,n2,a2\n{},{},{},{},{}",
                    counts.p,
                    counts.n1,
                    counts.a1,
                    counts.n2.map_or(String::new(), |v| v.to_string()),
                    counts.a2.map_or(String::new(), |v| v.to_string())
                )),
                Format::Text => Ok(format!(
                    "p = {}: #C(F_p) = {}, a1 = {}{}",
                    counts.p,
                    counts.n1,
                    counts.a1,
                    counts.a2.map_or(String::new(), |a2| format!(", a2 = {}", a2))
                )),
                Format::Json => Ok(serde_json::to_string_pretty(&counts).unwrap()),
            }
        }
        Command::Weil { curve, p } => {
            let c = load_curve(curve)?;
            let w = crate::curves::frobenius_poly(&c, *p).map_err(|e| e.to_string())?;
            let coeffs: Vec<String> = w.poly().coeffs().iter().map(|c| c.to_string()).collect();
            let out = json!({
                "p": p,
                "poly": poly_to_text(w.poly()),
                "coeffs_ascending": coeffs,
                "ordinary": w.is_ordinary(),
            });
            match cli.format {
                Format::Text => Ok(format!("P(x) = {}", poly_to_text(w.poly()))),
                _ => Ok(serde_json::to_string_pretty(&out).unwrap()),
            }
        }
        Command::Split { poly, q } => {
            let p = poly_from_text(poly)?;
            let w = validate_weil(&p, &BigUint::from(*q)).map_err(|e| e.to_string())?;
            let dec = honda_tate_split(&w).map_err(|e| e.to_string())?;
            let factors: Vec<(String, u32)> =
                dec.factors.iter().map(|(f, m)| (poly_to_text(f), *m)).collect();
            let out = json!({
                "factors": factors,
                "certified": dec.certified,
                "note": dec.note.map(|n| format!("{:?}", n)),
                "shape": dec.shape(),
            });
            match cli.format {
                Format::Text => Ok(format!(
                    "{} = {}  (certified: {})",
                    poly_to_text(w.poly()),
                    factors
                        .iter()
                        .map(|(f, m)| if *m == 1 {
                            format!("({})", f)
                        } else {
                            format!("({})^{}", f, m)
                        })
                        .collect::<Vec<_>>()
                        .join(" "),
                    dec.certified
                )),
                _ => Ok(serde_json::to_string_pretty(&out).unwrap()),
            }
        }
        Command::Galois { poly, q, exact, sample, budget } => {
            let p = poly_from_text(poly)?;
            let w = validate_weil(&p, &BigUint::from(*q)).map_err(|e| e.to_string())?;
            let id = if *exact || (!*sample && w.genus() == 2) {
                galois_quartic_exact(&w).map_err(|e| e.to_string())?
            } else {
                identify_galois_sampled(&w, *budget).map_err(|e| e.to_string())?
            };
            let out = json!({
                "group": id.group.to_string(),
                "order": id.group.order(),
                "method": format!("{:?}", id.method),
                "samples_used": id.samples_used,
                "rejected_ell": id.rejected_ell,
                "observed_types": id.observed_types.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "ambiguous_with": id.ambiguous_with.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            });
            match cli.format {
                Format::Text => Ok(format!("Gal = {} (order {})", id.group, id.group.order())),
                _ => Ok(serde_json::to_string_pretty(&out).unwrap()),
            }
        }
        Command::Survey { config, resume, jobs } => {
            let data = std::fs::read_to_string(config).map_err(|e| format!("{}: {}", config, e))?;
            let mut cfg: SurveyConfig = serde_json::from_str(&data).map_err(|e| e.to_string())?;
            if let Some(j) = jobs {
                cfg.jobs = *j;
            }
            let out = run_survey(&cfg, *resume).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Csv => Ok(out.report.to_csv()),
                Format::Text => {
                    let mut s = format!(
                        "{}: {} records up to {}\n",
                        out.report.curve,
                        out.records.len(),
                        out.report.x_max
                    );
                    s.push_str(&out.report.to_csv());
                    Ok(s)
                }
                Format::Json => Ok(serde_json::to_string_pretty(&out.report).unwrap()),
            }
        }
        Command::Equidist { family, ell, samples, seed, jobs, orders } => {
            let (fam, n) = parse_family(family)?;
            let spec = GroupSpec::new(fam, n, *ell).map_err(|e| e.to_string())?;
            if *orders {
                let report = group_order_and_bounds(&spec, *seed);
                return match cli.format {
                    Format::Text => Ok(format!(
                        "|{}(F_{})| = {} (<= ell^{}: {}); classes {}{} <= {} ell^{}: {}",
                        report.family,
                        report.ell,
                        report.order,
                        report.dimension,
                        report.order_bound_holds,
                        report.class_count,
                        if report.class_count_exact { "" } else { " (sampled)" },
                        report.kappa,
                        report.rank,
                        report.class_bound_holds
                    )),
                    _ => Ok(serde_json::to_string_pretty(&report).unwrap()),
                };
            }
            let table = equidist_experiment_jobs(&spec, *samples, *seed, *jobs);
            match cli.format {
                Format::Csv => {
                    let mut s = String::from("class,count,frequency,target,deviation\n");
                    for r in &table.rows {
                        s.push_str(&format!(
                            "{},{},{:.6},{:.6},{:.6}\n",
                            r.class, r.count, r.frequency, r.target, r.deviation
                        ));
                    }
                    Ok(s)
                }
                Format::Text => {
                    let mut s = format!(
                        "{}(F_{}): {} samples, {} regular semisimple (filtered {:.4})\n",
                        table.family, table.ell, table.samples, table.regular_semisimple,
                        table.filtered_fraction
                    );
                    for r in &table.rows {
                        s.push_str(&format!(
                            "  {:<10} freq {:.5}  target {:.5}  dev {:.5}\n",
                            r.class, r.frequency, r.target, r.deviation
                        ));
                    }
                    Ok(s)
                }
                Format::Json => Ok(serde_json::to_string_pretty(&table).unwrap()),
            }
        }
        Command::Group { check, n } => match check.as_str() {
            "d4" | "d5" => {
                let n = if check == "d4" { 4 } else { 5 };
                let report = lemma42_check(n).map_err(|e| e.to_string())?;
                let out = json!({
                    "n": report.n,
                    "group_order": report.target_order,
                    "classes_checked": report.classes_checked,
                    "states_explored": report.states_explored,
                    "counterexamples": report.counterexamples.len(),
                });
                match cli.format {
                    Format::Text => Ok(format!(
                        "W(D{}) order {}: {} classes, {} states, {} counterexamples",
                        report.n,
                        report.target_order,
                        report.classes_checked,
                        report.states_explored,
                        report.counterexamples.len()
                    )),
                    _ => Ok(serde_json::to_string_pretty(&out).unwrap()),
                }
            }
            "mumford" => {
                let pi = build_group(GroupName::MumfordPi).map_err(|e| e.to_string())?;
                let orders = element_order_profile(&pi);
                let action = weight_action_check(&pi);
                let out = json!({
                    "order": pi.order(),
                    "element_orders": orders,
                    "order_8_absent": !orders.contains_key(&8),
                    "weight_action_transitive": action.transitive,
                    "max_weight_cycle": action.max_cycle_len,
                    "has_eight_cycle": action.has_eight_cycle,
                });
                match cli.format {
                    Format::Text => Ok(format!(
                        "MUMFORD_PI: order {}, element orders {:?}, order 8 absent: {}, weight action: transitive={}, max cycle {}",
                        pi.order(),
                        orders.keys().collect::<Vec<_>>(),
                        !orders.contains_key(&8),
                        action.transitive,
                        action.max_cycle_len
                    )),
                    _ => Ok(serde_json::to_string_pretty(&out).unwrap()),
                }
            }
            "classes" => {
                let n = n.ok_or("--n required for class tables")?;
                let g = build_group(GroupName::B(n)).map_err(|e| e.to_string())?;
                let classes = conjugacy_classes(&g);
                match cli.format {
                    Format::Csv | Format::Text => {
                        let mut s = String::from("type,size\n");
                        for c in &classes {
                            s.push_str(&format!("{},{}\n", c.ctype, c.size));
                        }
                        Ok(s)
                    }
                    Format::Json => {
                        let rows: Vec<_> = classes
                            .iter()
                            .map(|c| json!({"type": c.ctype.to_string(), "size": c.size}))
                            .collect();
                        Ok(serde_json::to_string_pretty(&json!({
                            "group": format!("B{}", n),
                            "order": g.order(),
                            "classes": rows,
                        }))
                        .unwrap())
                    }
                }
            }
            "controls" => {
                let out = json!({
                    "jordan_s3": jordan_control_s3(),
                    "c4_negative": c4_negative_control(),
                });
                Ok(serde_json::to_string_pretty(&out).unwrap())
            }
            other => Err(format!("unknown check '{}'", other)),
        },
        Command::Bounds { x, d, r, grh, variant } => {
            let v = match variant.to_ascii_lowercase().as_str() {
                "serre" => BoundVariant::Serre,
                "sieve" => BoundVariant::Sieve,
                other => return Err(format!("unknown variant '{}'", other)),
            };
            let value = exceptional_bounds(*x, *d, *r, *grh, v).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Text => Ok(format!("{}", value)),
                _ => Ok(serde_json::to_string_pretty(&json!({
                    "x": x, "d": d, "r": r, "grh": grh,
                    "variant": variant, "value": value,
                }))
                .unwrap()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<String, String> {
        let full: Vec<String> =
            std::iter::once("weilsplit".to_string()).chain(args.iter().map(|s| s.to_string())).collect();
        let cli = Cli::try_parse_from(&full).map_err(|e| e.to_string())?;
        execute(&cli)
    }

    #[test]
    fn split_fixture() {
        let out = run_args(&["split", "--poly", "x^4+38x^2+361", "--q", "19"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["certified"], true);
        assert_eq!(v["factors"][0][0], "x^2 + 19");
        assert_eq!(v["factors"][0][1], 2);
    }

    #[test]
    fn group_mumford_fixture() {
        let out = run_args(&["group", "--check", "mumford"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["order"], 48);
        assert_eq!(v["order_8_absent"], true);
        assert_eq!(v["has_eight_cycle"], false);
    }

    #[test]
    fn bounds_fixture() {
        let out = run_args(&["bounds", "--x", "100", "--d", "1", "--grh"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let val = v["value"].as_f64().unwrap();
        assert!((val - 46.0517).abs() < 1e-3);
    }

    #[test]
    fn galois_fixture() {
        let out = run_args(&["galois", "--poly", "x^4+9", "--q", "3", "--exact"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["group"], "V4(trans)");
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = run_args(&[
            "equidist", "--family", "gl2", "--ell", "101", "--samples", "2000", "--seed", "7",
        ])
        .unwrap();
        let b = run_args(&[
            "equidist", "--family", "gl2", "--ell", "101", "--samples", "2000", "--seed", "7",
        ])
        .unwrap();
        assert_eq!(a, b);
        let c = run_args(&[
            "equidist", "--family", "gl2", "--ell", "101", "--samples", "2000", "--seed", "8",
        ])
        .unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn usage_errors() {
        let full: Vec<String> =
            ["weilsplit", "split", "--nope"].iter().map(|s| s.to_string()).collect();
        assert!(Cli::try_parse_from(&full).is_err());
    }

    #[test]
    fn curve_file_commands() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("curve.json");
        std::fs::write(&path, r#"{"label":"e1","genus":1,"f":[1,1,0,1]}"#).unwrap();
        let out = run_args(&["count", "--curve", path.to_str().unwrap(), "--p", "5"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["n1"], 9);
        let out = run_args(&["weil", "--curve", path.to_str().unwrap(), "--p", "5"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["poly"], "x^2 + 3x + 5");
    }
}
