//! Command-line front end: subcommand dispatch, JSON persistence, and the
//! golden-report emission. Rationals serialize as `"p/q"` strings so exactness
//! survives round trips; identical inputs (including seeds) produce
//! byte-identical reports.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serializer;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::families::{enumerate, family_record};
use crate::germs::{
    absorb_f, cd2_invariants, cd2_uniqueness_check, ce_classify, disc1_candidates, CD2Std, CEGerm,
};
use crate::links::{build_link_artifacts, nonquotient_label, verify_artifacts, HatGerm};
use crate::qpoly::parse_poly;
use crate::rat::{fmt_rat, parse_rat, sign_word, Rat};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Serialize a rational as the string `p/q` (or `p`).
pub fn ser_rat<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

/// Serialize an optional rational the same way.
pub fn ser_opt_rat<S: Serializer>(
    r: &Option<Rat>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&fmt_rat(r)),
        None => s.serialize_none(),
    }
}

/// Exact arithmetic for terminal Fano 3-fold weighted hypersurfaces:
/// classification, blow-up calculus, germ analysis, and link verification.
#[derive(Parser, Debug)]
#[command(name = "wfano", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate all families with weights up to the bound.
    Enumerate {
        /// Weight bound; 168 gives the complete classification.
        #[arg(long, default_value_t = 168)]
        bound: u32,
        /// Output JSON path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invariants and basket for one (degree, weights) pair.
    Family {
        #[arg(long)]
        degree: u32,
        /// Comma-separated ascending weights, e.g. 1,3,5,7,8.
        #[arg(long)]
        weights: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify the link data for one of the families 100-103, 110.
    Link {
        #[arg(long)]
        family: u32,
        /// Equation file in the text grammar (defaults to the seeded sample).
        #[arg(long)]
        equation: Option<PathBuf>,
        /// Seed for the sample member when no equation is given.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the 2-ray game on a rank-2 grading given as JSON.
    Game {
        /// Matrix file: {"rows": [[..],[..]], "split": m, "labels": [..]}.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Germ analysis on a cE germ file.
    Germ {
        #[command(subcommand)]
        cmd: GermCmd,
    },
    /// Blow-up intersection products.
    Blowup {
        #[command(subcommand)]
        cmd: BlowupCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum GermCmd {
    /// Classify the germ type (absorbing the y^2-coefficient first).
    Classify(GermFileArgs),
    /// Evaluate the discrepancy-1 divisor candidates.
    Disc1(GermFileArgs),
    /// Invariants of a standard cD/2 model.
    Cd2 {
        /// Coefficient of the odd x-power term, as `p/q`.
        #[arg(long)]
        lambda: String,
        /// Exponent parameter; omit for the lambda = 0 branch.
        #[arg(long)]
        a: Option<u32>,
        /// The membership polynomial g(x^2, z) in variables x, z.
        #[arg(long)]
        g: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct GermFileArgs {
    /// Germ file: `vars:`, `f:`, `g:`, `h:` lines in the text grammar.
    #[arg(long)]
    file: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum BlowupCmd {
    /// prod(c_i) * Atop - prod(e_i) * Etop for classes c*A - e*E.
    Product {
        /// Semicolon-separated classes `c,e;c,e;...` with rational entries.
        #[arg(long)]
        classes: String,
        #[arg(long)]
        atop: String,
        #[arg(long)]
        etop: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parse a germ file: a `vars: a b` line naming two variables, then `f:`,
/// `g:`, `h:` lines; `#` starts a comment.
pub fn parse_germ_file(text: &str) -> Result<CEGerm> {
    let mut vars: Option<Vec<String>> = None;
    let mut parts: [Option<String>; 3] = [None, None, None];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or(Error::Parse {
            line: lineno + 1,
            col: 1,
            msg: "expected `key: value`".into(),
        })?;
        match key.trim() {
            "vars" => {
                let names: Vec<String> =
                    value.split_whitespace().map(|s| s.to_string()).collect();
                if names.len() != 2 {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        col: 1,
                        msg: "exactly two germ variables required".into(),
                    });
                }
                vars = Some(names);
            }
            "f" => parts[0] = Some(value.to_string()),
            "g" => parts[1] = Some(value.to_string()),
            "h" => parts[2] = Some(value.to_string()),
            other => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    col: 1,
                    msg: format!("unknown key `{other}`"),
                })
            }
        }
    }
    let vars = vars.ok_or_else(|| Error::input("missing `vars:` line"))?;
    let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let read = |slot: &Option<String>, which: &str| -> Result<crate::QPoly> {
        let src = slot
            .as_ref()
            .ok_or_else(|| Error::input(format!("missing `{which}:` line")))?;
        parse_poly(&names, src)
    };
    let f = read(&parts[0], "f")?;
    let g = read(&parts[1], "g")?;
    let h = read(&parts[2], "h")?;
    let deg = f
        .max_total_degree()
        .max(g.max_total_degree())
        .max(h.max_total_degree());
    CEGerm::new(&f, &g, &h, deg.max(crate::germs::MIN_TRUNCATION))
}

fn parse_weights(s: &str) -> Result<[u32; 5]> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::input(format!("malformed weights `{s}`")))?;
    parts
        .try_into()
        .map_err(|_| Error::input("exactly five weights required"))
}

fn emit(out: &Option<PathBuf>, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match out {
        Some(path) => std::fs::write(path, &text)
            .map_err(|e| Error::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tool_header() -> serde_json::Value {
    json!({
        "name": "wfano",
        "version": env!("CARGO_PKG_VERSION"),
        "schema_version": SCHEMA_VERSION,
    })
}

/// Run one parsed command; the exit status is 0 on success, 1 on a
/// verification mismatch, 2 on input errors (mapped by the binary).
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Enumerate { bound, out } => {
            if bound < 1 {
                return Err(Error::input("bound must be at least 1"));
            }
            let records = enumerate(bound);
            let records_json = serde_json::to_value(&records).expect("serializable");
            let digest = {
                let bytes = serde_json::to_vec(&records_json).expect("serializable");
                let mut h = Sha256::new();
                h.update(&bytes);
                format!("{:x}", h.finalize())
            };
            let index1 = records.iter().filter(|r| r.index == 1).count();
            let value = json!({
                "tool": tool_header(),
                "bound": bound,
                "count": records.len(),
                "count_index_1": index1,
                "count_index_ge_2": records.len() - index1,
                "digest": digest,
                "records": records_json,
            });
            emit(&out, &value)?;
            Ok(0)
        }
        Command::Family {
            degree,
            weights,
            out,
        } => {
            let w = parse_weights(&weights)?;
            let rec = family_record(degree, &w)?;
            let value = json!({
                "tool": tool_header(),
                "record": rec,
            });
            emit(&out, &value)?;
            Ok(0)
        }
        Command::Link {
            family,
            equation,
            seed,
            out,
        } => {
            let f = match &equation {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Error::input(format!("cannot read {}: {e}", path.display()))
                    })?;
                    Some(parse_poly(
                        &crate::links::SOURCE_VARS,
                        text.trim(),
                    )?)
                }
                None => {
                    if seed == 0 {
                        None
                    } else {
                        Some(crate::links::sample_member(family, seed)?)
                    }
                }
            };
            let art = build_link_artifacts(family, f)?;
            let ledger = verify_artifacts(&art)?;
            let pass = ledger.iter().all(|e| e.pass);
            let value = link_report_json(&art, &ledger, seed, equation.as_deref())?;
            emit(&out, &value)?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::Game { matrix, out } => {
            let text = std::fs::read_to_string(&matrix)
                .map_err(|e| Error::input(format!("cannot read {}: {e}", matrix.display())))?;
            let t = crate::ambient::toric_from_json(&text)?;
            let trace = crate::ambient::two_ray_game(&t)?;
            let value = json!({
                "tool": tool_header(),
                "inputs": { "matrix": t },
                "trace": trace,
            });
            emit(&out, &value)?;
            Ok(0)
        }
        Command::Germ { cmd } => run_germ(cmd),
        Command::Blowup { cmd } => run_blowup(cmd),
    }
}

fn run_germ(cmd: GermCmd) -> Result<i32> {
    match cmd {
        GermCmd::Classify(args) => {
            let text = std::fs::read_to_string(&args.file)
                .map_err(|e| Error::input(format!("cannot read {}: {e}", args.file.display())))?;
            let germ = parse_germ_file(&text)?;
            let absorbed = absorb_f(&germ)?;
            let ty = ce_classify(&absorbed)?;
            let value = json!({
                "tool": tool_header(),
                "inputs": { "file": args.file.display().to_string() },
                "type": ty.to_string(),
            });
            emit(&args.out, &value)?;
            Ok(0)
        }
        GermCmd::Disc1(args) => {
            let text = std::fs::read_to_string(&args.file)
                .map_err(|e| Error::input(format!("cannot read {}: {e}", args.file.display())))?;
            let germ = parse_germ_file(&text)?;
            let cands = disc1_candidates(&germ)?;
            let passing = cands.iter().filter(|c| c.hypothesis).count();
            let value = json!({
                "tool": tool_header(),
                "inputs": { "file": args.file.display().to_string() },
                "candidates": cands,
                "passing": passing,
            });
            emit(&args.out, &value)?;
            Ok(0)
        }
        GermCmd::Cd2 { lambda, a, g, out } => {
            let gp = parse_poly(&["x", "z"], &g)?;
            let std = CD2Std::new(parse_rat(&lambda)?, a, &gp)?;
            let inv = cd2_invariants(&std);
            let unique = cd2_uniqueness_check(&std);
            let value = json!({
                "tool": tool_header(),
                "inputs": { "lambda": lambda, "a": a, "g": g },
                "invariants": inv,
                "uniqueness_hypotheses": unique,
            });
            emit(&out, &value)?;
            Ok(0)
        }
    }
}

fn run_blowup(cmd: BlowupCmd) -> Result<i32> {
    match cmd {
        BlowupCmd::Product {
            classes,
            atop,
            etop,
            out,
        } => {
            let mut cls = Vec::new();
            for part in classes.split(';') {
                let (c, e) = part
                    .split_once(',')
                    .ok_or_else(|| Error::input(format!("malformed class `{part}`")))?;
                cls.push(crate::birational::DivClass::new(
                    parse_rat(c)?,
                    parse_rat(e)?,
                ));
            }
            let model = crate::birational::BlowupModel {
                atop: parse_rat(&atop)?,
                etop: parse_rat(&etop)?,
                disc: Rat::from_integer(0.into()),
                dim: cls.len(),
            };
            let value_r = crate::birational::product_class(&cls, &model)?;
            let value = json!({
                "tool": tool_header(),
                "inputs": { "classes": classes, "atop": atop, "etop": etop },
                "value": fmt_rat(&value_r),
                "sign": sign_word(&value_r),
                "assumption": "mixed pullback/exceptional products vanish",
            });
            emit(&out, &value)?;
            Ok(0)
        }
    }
}

fn germ_json(germ: &HatGerm) -> Result<serde_json::Value> {
    let normal_form = |kind: &str, germ: &CEGerm, order: &[String; 4]| -> Result<serde_json::Value> {
        let cands = disc1_candidates(germ)?;
        Ok(json!({
            "kind": kind,
            "coordinates": order,
            "f": germ.f.to_string(),
            "g": germ.g.to_string(),
            "h": germ.h.to_string(),
            "candidates": cands,
        }))
    };
    match germ {
        HatGerm::Ce { germ, order } => normal_form("normal-form", germ, order),
        HatGerm::CeHalf { germ, order } => normal_form("normal-form-index2-quotient", germ, order),
        HatGerm::Raw { phi } => Ok(json!({
            "kind": "raw",
            "phi": phi.to_string(),
        })),
    }
}

fn link_report_json(
    art: &crate::links::LinkArtifacts,
    ledger: &[crate::links::VerifyEntry],
    seed: u64,
    equation: Option<&Path>,
) -> Result<serde_json::Value> {
    let link = &art.link;
    let pass = ledger.iter().all(|e| e.pass);
    let quotient_flag = matches!(art.germ, HatGerm::CeHalf { .. });
    let mut value = json!({
        "tool": tool_header(),
        "family": art.fam.id,
        "inputs": {
            "equation_file": equation.map(|p| p.display().to_string()),
            "seed": seed,
            "equation": art.f.to_string(),
        },
        "source": link.source,
        "center": {
            "coordinate": crate::links::SOURCE_VARS[link.center],
            "r": link.center_type.0,
            "a": link.center_type.1,
            "tangent": crate::links::SOURCE_VARS[link.tangent],
            "unit": link.unit,
        },
        "blowup_weights": link.bw,
        "source_matrix": link.source_matrix,
        "target_matrix": link.target_matrix,
        "game": link.trace,
        "target": {
            "labels": link.target.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>(),
            "weights": link.target.iter().map(|(_, w)| *w).collect::<Vec<_>>(),
            "degree": link.dhat,
            "index": link.iota_hat,
            "minus_k3": fmt_rat(&link.khat3),
            "quotient_basket": link.target_basket,
            "nonquotient_point": link.qhat,
            "nonquotient_label": nonquotient_label(art)?,
            "nonquotient_is_index2_quotient": quotient_flag,
            "equation": link.fhat.to_string(),
        },
        "realized_contraction_weights": link.realized,
        "germ": germ_json(&art.germ)?,
        "assumptions": ["mixed pullback/exceptional products vanish"],
        "verify": ledger,
        "pass": pass,
    });
    if let Some(breve) = &art.breve {
        value["breve"] = json!({
            "ambient_weights": breve.ci.ambient_weights,
            "ambient_labels": breve.ci.ambient_labels,
            "degrees": breve.ci.degrees,
            "equations": [breve.ci.eq1.to_string(), breve.ci.eq2.to_string()],
            "minus_k3": fmt_rat(&breve.ci.minus_k3),
            "quotient_basket": breve.ci.basket,
            "link_back": {
                "identity": breve.rho_identity,
                "ambient_weights": breve.rho_ambient,
            },
            "e3": fmt_rat(&breve.breve_e3),
        });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn germ_file_round_trip() {
        let text = "# comment\nvars: z u\nf: 0\ng: 2*z^3\nh: -1*z^4 + u^6\n";
        let germ = parse_germ_file(text).unwrap();
        assert!(germ.f.is_zero());
        assert_eq!(germ.g.num_terms(), 1);
        assert_eq!(germ.h.num_terms(), 2);
        assert!(parse_germ_file("vars: z\nf: 0\ng: 0\nh: 0").is_err());
        assert!(parse_germ_file("f: 0").is_err());
    }

    #[test]
    fn weight_parsing() {
        assert_eq!(parse_weights("1,3,5,7,8").unwrap(), [1, 3, 5, 7, 8]);
        assert!(parse_weights("1,2").is_err());
        assert!(parse_weights("1,2,x,4,5").is_err());
    }
}
