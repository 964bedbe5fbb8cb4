use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use muhzv::coeff_ring::{fmt_rational, int, parse_rational, rat, Rational};
use muhzv::comparison::{rho_mixed, rho_sh, rho_st};
use muhzv::json::*;
use muhzv::numeric_eval::{eval_ds, eval_gexpr, eval_zeta_mu, EvalResult};
use muhzv::relations::*;
use muhzv::shuffle_algebra::shuffle;
use muhzv::stuffle_algebra::mu_stuffle;
use muhzv::symbolic_values::{reg_sh_poly, reg_star_poly, tpoly_specialize_mu};
use muhzv::word_core::{BiIndex, SpecialTriple};

#[derive(Parser)]
#[command(name = "muhzv", version, about = "μ-multiple Hurwitz zeta values: products, regularization, evaluation")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    Star,
    Shuffle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Map {
    St,
    Sh,
    Mixed,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Suite {
    Clausen,
    Zeta2,
    Sum1,
    Sum2,
    Weighted,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// μ-stuffle product of two Y-words (or Y-polynomials).
    Stuffle {
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
    },
    /// Shuffle product of two X-words (or X-polynomials).
    Shuffle {
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
    },
    /// Regularized value as a polynomial in T.
    Regularize {
        #[arg(long, value_enum)]
        scheme: Scheme,
        #[arg(long)]
        anchor: String,
        #[arg(long)]
        word: String,
    },
    /// Apply a comparison map to a polynomial in T.
    Compare {
        #[arg(long, value_enum)]
        map: Map,
        #[arg(long)]
        m: String,
        #[arg(long)]
        mprime: String,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        poly: String,
    },
    /// Numerical value of a symbol or expression.
    Eval {
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, group = "target")]
        index: Option<String>,
        #[arg(long, group = "target")]
        ds: Option<String>,
        #[arg(long, group = "target")]
        gexpr: Option<String>,
    },
    /// Run a verification suite; exits nonzero if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long = "N")]
        big_n: Option<u32>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        n: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Generate and audit double shuffle relations.
    Relations {
        #[arg(long)]
        max_weight: u32,
        #[arg(long)]
        max_length: usize,
        #[arg(long, default_value = "1")]
        m_set: String,
        #[arg(long, default_value = "1")]
        anchor: String,
        #[arg(long, default_value = "2")]
        audit_mu: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn rational(s: &str) -> Result<Rational> {
    Ok(parse_rational(s.trim())?)
}

fn json_arg(s: &str) -> Result<Value> {
    Ok(parse(s)?)
}

fn print_json(v: &Value) {
    println!("{v}");
}

/// "k1,k2;m1,m2"
fn parse_index(s: &str) -> Result<BiIndex> {
    let (k, m) = s.split_once(';').context("index must look like \"k1,k2;m1,m2\"")?;
    let ks = k.split(',').map(|x| x.trim().parse::<u32>()).collect::<Result<Vec<_>, _>>()?;
    let ms = parse_rational_list(m)?;
    Ok(BiIndex::new(ks, ms)?)
}

/// "k1,k2;m1,m2;alt"
fn parse_triple(s: &str) -> Result<SpecialTriple> {
    let (base, alt) = s.rsplit_once(';').context("quasi-value must look like \"k;m;alt\"")?;
    Ok(SpecialTriple::new(parse_index(base)?, rational(alt)?)?)
}

fn print_eval(r: EvalResult) {
    println!("value     = {:.14e}", r.value);
    println!("err_bound = {:.14e}", r.err_bound);
}

fn list_or(arg: &Option<String>, default: Vec<Rational>) -> Result<Vec<Rational>> {
    match arg {
        Some(s) => Ok(parse_rational_list(s)?),
        None => Ok(default),
    }
}

fn run_suite(
    suite: Suite,
    big_n: Option<u32>,
    mu: &Option<String>,
    n: &Option<String>,
    tol: f64,
) -> Result<Vec<VerificationReport>> {
    let ns: Vec<u32> = big_n.map(|x| vec![x]).unwrap_or_else(|| vec![3, 4, 5]);
    let mus = list_or(mu, vec![int(1), int(2), rat(1, 2)])?;
    let shifts = list_or(n, vec![int(1), rat(3, 2)])?;
    let m = int(2);
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Clausen {
        out.extend(verify_clausen(tol)?);
    }
    if all || suite == Suite::Zeta2 {
        let zmus = if mu.is_some() { mus.clone() } else { vec![int(1), rat(1, 2), int(2), int(3)] };
        out.extend(verify_zeta2(&zmus, tol)?);
    }
    for &big_n in &ns {
        if all {
            out.extend(verify_classical_specializations(big_n, tol)?);
        }
        for mu in &mus {
            for nn in &shifts {
                if all || suite == Suite::Sum1 {
                    out.push(verify_sum_formula_1(big_n, nn, None, mu, tol)?);
                    if *nn != m {
                        out.push(verify_sum_formula_1(big_n, nn, Some(&m), mu, tol)?);
                    }
                }
                if all || suite == Suite::Sum2 {
                    out.push(verify_sum_formula_2(big_n, nn, mu, tol)?);
                }
                if all || suite == Suite::Weighted {
                    out.push(verify_weighted_sum(big_n, nn, mu, tol)?);
                }
            }
        }
    }
    sort_reports(&mut out);
    Ok(out)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Stuffle { w1, w2 } => {
            let a = ypoly_from_json(&json_arg(&w1)?)?;
            let b = ypoly_from_json(&json_arg(&w2)?)?;
            print_json(&ypoly_to_json(&mu_stuffle(&a, &b)));
        }
        Cmd::Shuffle { w1, w2 } => {
            let a = xpoly_from_json(&json_arg(&w1)?)?;
            let b = xpoly_from_json(&json_arg(&w2)?)?;
            print_json(&xpoly_to_json(&shuffle(&a, &b)));
        }
        Cmd::Regularize { scheme, anchor, word } => {
            let anchor = rational(&anchor)?;
            let v = json_arg(&word)?;
            let p = match scheme {
                Scheme::Star => {
                    if anchor <= int(0) {
                        bail!("anchor must be positive");
                    }
                    reg_star_poly(&ypoly_from_json(&v)?, &anchor)
                }
                Scheme::Shuffle => reg_sh_poly(&xpoly_from_json(&v)?, &anchor)?,
            };
            print_json(&tpolyg_to_json(&p));
        }
        Cmd::Compare { map, m, mprime, mu, poly } => {
            let (m, mp) = (rational(&m)?, rational(&mprime)?);
            if m <= int(0) || mp <= int(0) {
                bail!("shifts must be positive");
            }
            let p = tpolyg_from_json(&json_arg(&poly)?)?;
            let mut r = match map {
                Map::St => rho_st(&m, &mp, &p),
                Map::Sh => rho_sh(&m, &mp, &p),
                Map::Mixed => rho_mixed(&m, &mp, &p),
            };
            if let Some(mu) = mu {
                r = tpoly_specialize_mu(&r, &rational(&mu)?);
            }
            print_json(&tpolyg_to_json(&r));
        }
        Cmd::Eval { mu, tol, index, ds, gexpr } => {
            let mu = rational(&mu)?;
            let r = match (index, ds, gexpr) {
                (Some(i), _, _) => eval_zeta_mu(&parse_index(&i)?, &mu, tol)?,
                (_, Some(d), _) => eval_ds(&parse_triple(&d)?, &mu, tol)?,
                (_, _, Some(g)) => eval_gexpr(&gexpr_from_json(&json_arg(&g)?)?, &mu, tol)?,
                _ => bail!("one of --index, --ds, --gexpr is required"),
            };
            print_eval(r);
        }
        Cmd::Verify { suite, big_n, mu, n, tol } => {
            let reports = run_suite(suite, big_n, &mu, &n, tol)?;
            for r in &reports {
                println!("{r}");
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            println!("{} checks, {} failed", reports.len(), failed);
            return Ok(failed == 0);
        }
        Cmd::Relations { max_weight, max_length, m_set, anchor, audit_mu, out } => {
            let m_set = parse_rational_list(&m_set)?;
            let (anchor, audit_mu) = (rational(&anchor)?, rational(&audit_mu)?);
            let rels = gen_dsh_relations(max_weight, max_length, &m_set, &anchor, &audit_mu)?;
            let doc = json!({
                "parameters": {
                    "max_weight": max_weight,
                    "max_length": max_length,
                    "m_set": m_set.iter().map(fmt_rational).collect::<Vec<_>>(),
                    "anchor": fmt_rational(&anchor),
                    "audit_mu": fmt_rational(&audit_mu),
                },
                "relations": rels.iter().map(relation_to_json).collect::<Vec<_>>(),
            });
            let text = serde_json::to_string_pretty(&doc)? + "\n";
            std::fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
            println!("{} relations written to {}", rels.len(), out.display());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
