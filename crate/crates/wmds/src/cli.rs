//! Command-line front end: configuration parsing, pipeline orchestration,
//! and table/report emission.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error. Malformed
//! input produces a machine-readable `{"error": ...}` JSON object.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Deserialize;

use crate::action::{self, ActionContext};
use crate::arith::{FFRing, Poly};
use crate::cartan::{CartanData, CartanJson, DominantWeight, HPoint};
use crate::charfn;
use crate::error::{Error, Result};
use crate::hcoeff::HTable;
use crate::presets::Preset;
use crate::report;
use crate::weyl::enumerate_weyl;
use crate::zseries::{self, RegionSpec, ZConfig};
use crate::Rat;

#[derive(Parser, Debug)]
#[command(name = "wmds", about = "Weyl group multiple Dirichlet series engine", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the primary table to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dump the root table as CSV: coords, depth, mult, is_real, m_alpha.
    Roots {
        #[arg(long)]
        preset: Option<String>,
        /// Path to a Cartan JSON file {"A": [[..]], "n": k}.
        #[arg(long)]
        cartan: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        depth: i64,
    },
    /// Enumerate Weyl group elements up to a length cap.
    Weyl {
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        cartan: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        length: usize,
    },
    /// The coefficient series N(x; lambda): term table plus a JSON
    /// verification report.
    Nseries {
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        cartan: Option<PathBuf>,
        /// Comma-separated dominant weight coordinates, e.g. "1,0".
        #[arg(long, default_value = "")]
        lambda: String,
        #[arg(long, default_value_t = 5)]
        cap: i64,
    },
    /// Residue symbols and Gauss sums over `F_q0[t]`.
    Gauss {
        #[arg(long, default_value_t = 5)]
        p: u32,
        #[arg(long = "ext", default_value_t = 1)]
        ext_degree: u32,
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Polynomial a as ascending coefficients, e.g. "1" or "0,1".
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "0,1")]
        c: String,
        #[arg(long, default_value_t = 1)]
        t: i64,
    },
    /// Global H(c; m) coefficients for all monic tuples up to a degree bound.
    Hcoeff {
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        cartan: Option<PathBuf>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long = "ext", default_value_t = 1)]
        ext_degree: u32,
        /// m-tuple, entries as coefficient lists separated by ';'.
        #[arg(long, default_value = "")]
        m: String,
        #[arg(long = "degree-bound", default_value_t = 1)]
        degree_bound: u32,
        #[arg(long, default_value_t = 6)]
        cap: i64,
    },
    /// Partial sums of Z(s; m, Psi), configured by a JSON file.
    Zsum {
        /// Path to the ZConfig JSON.
        config: PathBuf,
    },
    /// Region predicates and hull generators.
    Regions {
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        cartan: Option<PathBuf>,
        /// Point as comma-separated rationals, e.g. "3/2,3/2".
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 8)]
        length: usize,
    },
    /// Weight multiplicities of V(lambda) by the Freudenthal recursion.
    Char {
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        cartan: Option<PathBuf>,
        #[arg(long, default_value = "")]
        lambda: String,
        #[arg(long, default_value_t = 5)]
        cap: i64,
    },
    /// Run the full property suite for a preset and emit a JSON report.
    Verify {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 4)]
        cap: i64,
    },
}

/// Parse argv and run; returns the process exit code.
pub fn main_entry() -> i32 {
    let cfg = match RunConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(e) => {
            // clap handles --help/--version printing itself.
            if e.use_stderr() {
                println!("{}", serde_json::json!({ "error": e.to_string() }));
                return 2;
            }
            let _ = e.print();
            return 0;
        }
    };
    run(&cfg)
}

/// Execute a parsed configuration; returns the exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    match execute(cfg) {
        Ok(Outcome { table, trailer, verified }) => {
            match (&cfg.out, table) {
                (Some(path), Some(content)) => {
                    if let Err(e) = std::fs::write(path, content) {
                        println!("{}", serde_json::json!({ "error": e.to_string() }));
                        return 2;
                    }
                }
                (None, Some(content)) => print!("{content}"),
                _ => {}
            }
            if let Some(t) = trailer {
                println!("{t}");
            }
            match verified {
                Some(false) => 1,
                _ => 0,
            }
        }
        Err(e) => {
            println!("{}", serde_json::json!({ "error": e.to_string() }));
            2
        }
    }
}

struct Outcome {
    /// The primary artifact (CSV table), honoring --out.
    table: Option<String>,
    /// A JSON trailer always printed to stdout.
    trailer: Option<String>,
    /// Some(false) turns into exit code 1.
    verified: Option<bool>,
}

fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Roots { preset, cartan, depth } => {
            let data = load_system(preset, cartan)?;
            if *depth < 1 {
                return Err(Error::InvalidInput("depth must be at least 1".into()));
            }
            let table = crate::roots::RootTable::generate(&data, *depth);
            let mut out = String::from("coords,depth,mult,is_real,m_alpha\n");
            for (b, info) in table.sorted_by_depth() {
                let coords: Vec<String> = b.0.iter().map(|k| k.to_string()).collect();
                out.push_str(&format!(
                    "\"{}\",{},{},{},{}\n",
                    coords.join(","),
                    b.depth(),
                    info.mult,
                    info.is_real,
                    info.m_alpha
                ));
            }
            Ok(Outcome { table: Some(out), trailer: None, verified: None })
        }
        Command::Weyl { preset, cartan, length } => {
            let data = load_system(preset, cartan)?;
            let mut out = String::from("length,word\n");
            for w in enumerate_weyl(&data, *length) {
                out.push_str(&format!("{},{}\n", w.length(&data), w.display()));
            }
            Ok(Outcome { table: Some(out), trailer: None, verified: None })
        }
        Command::Nseries { preset, cartan, lambda, cap } => {
            let data = load_system(preset, cartan)?;
            let lambda = parse_lambda(lambda, data.rank())?;
            let ctx = ActionContext::new(data.clone(), lambda, *cap)?;
            let n = action::n_series(&ctx)?;
            let mut table = String::from("coords,depth,coefficient\n");
            table.push_str(&n.dump_csv());
            // Verification report at this cap.
            let betas = report::monomial_box(data.rank(), 2);
            let involution = betas
                .iter()
                .all(|b| (0..data.rank()).all(|i| action::involution_check(&ctx, b, i)));
            let braid = betas.iter().all(|b| {
                (0..data.rank()).all(|i| {
                    (i + 1..data.rank())
                        .all(|j| action::braid_check(&ctx, b, i, j).unwrap_or(true))
                })
            });
            let words = enumerate_weyl(&data, 2);
            let mut cocycle = true;
            for w in &words {
                for w2 in &words {
                    cocycle &= action::cocycle_check(&ctx, w, w2)?;
                }
            }
            let mut invariance = true;
            for i in 0..data.rank() {
                invariance &= action::invariance_check(&ctx, i)?;
            }
            // FE windows need room on both sides of the reflection.
            let fe_ctx = ActionContext::new(data.clone(), ctx.lambda.clone(), (*cap).max(8))?;
            let fe_n = action::n_series(&fe_ctx)?;
            let mut fe_checks = true;
            for b in &betas {
                if b.is_nonneg() && b.depth() <= 2 {
                    for i in 0..data.rank() {
                        fe_checks &= action::fe_check(&fe_ctx, b, i, &fe_n)?;
                    }
                }
            }
            let json = serde_json::json!({
                "involution": involution,
                "braid": braid,
                "cocycle": cocycle,
                "invariance": invariance,
                "fe_checks": fe_checks,
            });
            let all = involution && braid && cocycle && invariance && fe_checks;
            Ok(Outcome {
                table: Some(table),
                trailer: Some(json.to_string()),
                verified: Some(all),
            })
        }
        Command::Gauss { p, ext_degree, n, a, c, t } => {
            let ring = FFRing::new(*p, *ext_degree, *n)?;
            let a = parse_poly(a)?;
            let c = parse_poly(c)?;
            if c.is_zero() {
                return Err(Error::InvalidInput("c must be nonzero".into()));
            }
            let mut lines = String::new();
            let monic_c = ring.make_monic(&c);
            match ring.residue_symbol(&a, &monic_c) {
                Ok(sym) => lines.push_str(&format!(
                    "residue_symbol,({})/({}),\"{}\"\n",
                    a.display(),
                    monic_c.display(),
                    sym
                )),
                Err(Error::NotCoprime) => {
                    lines.push_str("residue_symbol,not coprime,0\n");
                }
                Err(e) => return Err(e),
            }
            let g = ring.gauss_sum(&a, &c, *t);
            let z = g.to_complex();
            lines.push_str(&format!(
                "gauss_sum,\"g({},{};{})\",\"{}\",{:.12},{:.12}\n",
                a.display(),
                c.display(),
                t,
                g,
                z.re,
                z.im
            ));
            Ok(Outcome { table: Some(lines), trailer: None, verified: None })
        }
        Command::Hcoeff { preset, cartan, p, ext_degree, m, degree_bound, cap } => {
            let data = load_system(preset, cartan)?;
            let (dp, de) = match (p, preset) {
                (Some(p), _) => (*p, *ext_degree),
                (None, Some(name)) => Preset::parse(name)?.backend_field(),
                (None, None) => (5, 1),
            };
            let ring = FFRing::new(dp, de, data.n())?;
            let m = parse_tuple(m, data.rank())?;
            let table = HTable::new(&ring, data.clone(), *cap)?;
            let mut out = String::from("c_tuple,H\n");
            let mut degvecs: Vec<Vec<u32>> = vec![Vec::new()];
            for _ in 0..data.rank() {
                let mut next = Vec::new();
                for v in &degvecs {
                    for d in 0..=*degree_bound {
                        let mut v2 = v.clone();
                        v2.push(d);
                        next.push(v2);
                    }
                }
                degvecs = next;
            }
            for dv in degvecs {
                let lists: Vec<Vec<Poly>> =
                    dv.iter().map(|&d| ring.monic_polys(d)).collect();
                let mut idx = vec![0usize; data.rank()];
                loop {
                    let tuple: Vec<Poly> =
                        (0..data.rank()).map(|i| lists[i][idx[i]].clone()).collect();
                    let h = table.h_global(&tuple, &m)?;
                    let names: Vec<String> = tuple.iter().map(|f| f.display()).collect();
                    out.push_str(&format!("\"{}\",\"{}\"\n", names.join(";"), h));
                    let mut carry = true;
                    for i in 0..data.rank() {
                        if !carry {
                            break;
                        }
                        idx[i] += 1;
                        if idx[i] == lists[i].len() {
                            idx[i] = 0;
                        } else {
                            carry = false;
                        }
                    }
                    if carry {
                        break;
                    }
                }
            }
            Ok(Outcome { table: Some(out), trailer: None, verified: None })
        }
        Command::Zsum { config } => {
            let text = std::fs::read_to_string(config)
                .map_err(|e| Error::InvalidInput(format!("cannot read config: {e}")))?;
            let parsed: ZsumJson = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("bad config: {e}")))?;
            let data = match (&parsed.preset, &parsed.cartan) {
                (Some(name), None) => Preset::parse(name)?.data(),
                (None, Some(j)) => CartanData::from_json(j)?,
                _ => {
                    return Err(Error::InvalidInput(
                        "config needs exactly one of preset or cartan".into(),
                    ))
                }
            };
            let (p, e) = match (&parsed.preset, parsed.p) {
                (_, Some(p)) => (p, parsed.ext_degree.unwrap_or(1)),
                (Some(name), None) => Preset::parse(name)?.backend_field(),
                (None, None) => (5, 1),
            };
            let ring = FFRing::new(p, e, data.n())?;
            let m: Vec<Poly> = match &parsed.m {
                Some(lists) => {
                    if lists.len() != data.rank() {
                        return Err(Error::InvalidInput("m-tuple rank mismatch".into()));
                    }
                    lists.iter().map(|v| Poly::from_coeffs(v.clone())).collect()
                }
                None => vec![Poly::one(); data.rank()],
            };
            let s = parse_point_parts(&parsed.s_re, &parsed.s_im, data.rank())?;
            let omega = match &parsed.omega_exponents {
                Some(v) => Some(
                    v.iter()
                        .map(|t| crate::cartan::parse_rat(t))
                        .collect::<Result<Vec<Rat>>>()?,
                ),
                None => None,
            };
            let table = HTable::new(&ring, data.clone(), (parsed.n_max as i64 + 1) * 4)?;
            let zcfg = ZConfig { m, n_max: parsed.n_max, s, omega_exponents: omega };
            let rep = zseries::z_partial(&table, &zcfg)?;
            let json = serde_json::json!({
                "partial_sum_re": rep.total.re,
                "partial_sum_im": rep.total.im,
                "shells": rep
                    .shells
                    .iter()
                    .map(|c| serde_json::json!({"re": c.re, "im": c.im}))
                    .collect::<Vec<_>>(),
            });
            Ok(Outcome { table: None, trailer: Some(json.to_string()), verified: None })
        }
        Command::Regions { preset, cartan, point, length } => {
            let data = load_system(preset, cartan)?;
            let s = parse_point(point, data.rank())?;
            let spec = RegionSpec { rank: data.rank(), length_cap: *length };
            let mut out = String::from("check,value\n");
            out.push_str(&format!("in_L,{}\n", zseries::in_l(&s, &spec)));
            out.push_str(&format!("in_tits,{}\n", zseries::in_tits(&data, &s, &spec)));
            out.push_str(&format!("in_X0_approx,{}\n", zseries::in_x0_approx(&data, &s, &spec)));
            if data.a_matrix() == &vec![vec![2, -3], vec![-3, 2]] {
                let (a, b) = zseries::hyperbolic_tits_inequalities(&s.re[0], &s.re[1]);
                out.push_str(&format!("tits_inequality_plus,{a}\n"));
                out.push_str(&format!("tits_inequality_minus,{b}\n"));
            }
            out.push_str("generator,corner\n");
            for (w, corner) in zseries::hull_generators(&data, &spec) {
                let parts: Vec<String> = corner.iter().map(|r| r.to_string()).collect();
                out.push_str(&format!("{w},\"{}\"\n", parts.join(",")));
            }
            Ok(Outcome { table: Some(out), trailer: None, verified: None })
        }
        Command::Char { preset, cartan, lambda, cap } => {
            let data = load_system(preset, cartan)?;
            let lambda = parse_lambda(lambda, data.rank())?;
            let table = crate::roots::RootTable::generate(&data, (*cap).max(1));
            let chars = charfn::freudenthal(&data, &table, &lambda, *cap)?;
            let mut out = String::from("offset,depth,mult\n");
            out.push_str(&chars.dump_csv());
            Ok(Outcome { table: Some(out), trailer: None, verified: None })
        }
        Command::Verify { preset, cap } => {
            let preset = Preset::parse(preset)?;
            let report = report::run_verify(preset, *cap)?;
            let pass = report.pass;
            Ok(Outcome {
                table: None,
                trailer: Some(serde_json::to_string_pretty(&report).unwrap()),
                verified: Some(pass),
            })
        }
    }
}

#[derive(Deserialize)]
struct ZsumJson {
    preset: Option<String>,
    cartan: Option<CartanJson>,
    p: Option<u32>,
    ext_degree: Option<u32>,
    m: Option<Vec<Vec<u32>>>,
    n_max: u32,
    s_re: Vec<String>,
    s_im: Option<Vec<String>>,
    omega_exponents: Option<Vec<String>>,
}

fn load_system(preset: &Option<String>, cartan: &Option<PathBuf>) -> Result<CartanData> {
    match (preset, cartan) {
        (Some(name), None) => Ok(Preset::parse(name)?.data()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {path:?}: {e}")))?;
            let json: CartanJson = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("bad Cartan JSON: {e}")))?;
            CartanData::from_json(&json)
        }
        _ => Err(Error::InvalidInput(
            "specify exactly one of --preset or --cartan".into(),
        )),
    }
}

fn parse_lambda(s: &str, rank: usize) -> Result<DominantWeight> {
    if s.trim().is_empty() {
        return Ok(DominantWeight::zero(rank));
    }
    let coords: Vec<i64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad weight coordinate '{t}'")))
        })
        .collect::<Result<_>>()?;
    if coords.len() != rank {
        return Err(Error::InvalidInput("lambda rank mismatch".into()));
    }
    DominantWeight::new(coords)
}

fn parse_poly(s: &str) -> Result<Poly> {
    let coeffs: Vec<u32> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient '{t}'")))
        })
        .collect::<Result<_>>()?;
    Ok(Poly::from_coeffs(coeffs))
}

fn parse_tuple(s: &str, rank: usize) -> Result<Vec<Poly>> {
    if s.trim().is_empty() {
        return Ok(vec![Poly::one(); rank]);
    }
    let polys: Vec<Poly> = s.split(';').map(parse_poly).collect::<Result<_>>()?;
    if polys.len() != rank {
        return Err(Error::InvalidInput("tuple rank mismatch".into()));
    }
    Ok(polys)
}

fn parse_point(s: &str, rank: usize) -> Result<HPoint> {
    let parts: Vec<Rat> = s
        .split(',')
        .map(|t| crate::cartan::parse_rat(t))
        .collect::<Result<_>>()?;
    if parts.len() != rank {
        return Err(Error::InvalidInput("point rank mismatch".into()));
    }
    Ok(HPoint::real(parts))
}

fn parse_point_parts(re: &[String], im: &Option<Vec<String>>, rank: usize) -> Result<HPoint> {
    if re.len() != rank {
        return Err(Error::InvalidInput("s_re rank mismatch".into()));
    }
    let re: Vec<Rat> = re
        .iter()
        .map(|t| crate::cartan::parse_rat(t))
        .collect::<Result<_>>()?;
    let im: Vec<Rat> = match im {
        Some(v) => {
            if v.len() != rank {
                return Err(Error::InvalidInput("s_im rank mismatch".into()));
            }
            v.iter().map(|t| crate::cartan::parse_rat(t)).collect::<Result<_>>()?
        }
        None => vec![Rat::from_integer(0.into()); rank],
    };
    Ok(HPoint { re, im })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_and_point_parsing() {
        assert_eq!(parse_poly("0,1").unwrap(), Poly::t());
        assert_eq!(parse_poly("1").unwrap(), Poly::one());
        assert!(parse_poly("x").is_err());
        let p = parse_point("3/2,-7", 2).unwrap();
        assert_eq!(p.re[0], crate::rat_frac(3, 2));
        assert_eq!(p.re[1], crate::rat(-7));
        assert!(parse_point("1", 2).is_err());
    }

    #[test]
    fn malformed_cartan_is_exit_2() {
        let dir = std::env::temp_dir().join("wmds_cli_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad_cartan.json");
        std::fs::write(&path, r#"{"A": [[3]], "n": 1}"#).unwrap();
        let cfg = RunConfig {
            command: Command::Roots { preset: None, cartan: Some(path), depth: 3 },
            out: None,
        };
        assert_eq!(run(&cfg), 2);
    }

    #[test]
    fn roots_runs_clean() {
        let cfg = RunConfig {
            command: Command::Roots {
                preset: Some("a2-n2".into()),
                cartan: None,
                depth: 3,
            },
            out: None,
        };
        assert_eq!(run(&cfg), 0);
    }
}
