//! `solvknot`: verification front end for the two solvable 2-knot group
//! families. Exit codes: 0 = all records pass (or are bounded/external),
//! 1 = at least one fail record, 2 = configuration or usage error.

use clap::{Parser, Subcommand, ValueEnum};
use solvknot_cli::claims::{exit_code, verify_all};
use solvknot_cli::config::{OutputFormat, RunConfig};
use solvknot_cli::expr::{
    eval_g6, eval_gamma_aut, eval_gamma_elt, parse_expression, Context,
};
use solvknot_cli::render::{
    report_json, report_markdown, verdict_table, verdicts_json, verdicts_markdown,
};
use solvknot_core::flat_aut::{
    element_order, is_meridianal, normalizer_membership, out_g6_cached,
};
use solvknot_core::flat_group::t_coordinates;
use solvknot_core::flat_sub::{centralizer, weight_orbit_normal_form, Family};
use solvknot_core::invariants::{doubly_slice_verdict, KnotFamily};
use solvknot_core::nil_aut::{
    aut_p_image, k_variant_report, out_gamma, outer_label, planar_centralizer,
    weight_orbit_normal_form_gamma,
};
use solvknot_core::nil_group::gamma_build;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "solvknot", version, about = "Exact verification of two solvable 2-knot group families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full claim catalog and print the report
    Verify {
        /// flat key-value config file
        #[arg(long)]
        config: Option<PathBuf>,
        /// output format (overrides the config file)
        #[arg(long)]
        format: Option<Format>,
    },
    /// Queries against the flat group and its automorphisms
    G6 {
        #[command(subcommand)]
        query: G6Query,
    },
    /// Queries against the Nil-manifold group Gamma(e, eta)
    Gamma {
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        eta: i64,
        #[command(subcommand)]
        query: GammaQuery,
    },
    /// Print the doubly-slice verdict table
    Verdicts {
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Doubly-slice verdict for one descriptor: g+, g-, pi(E,ETA), or fox
    DoublySlice { descriptor: String },
    /// Shorthand for `g6 out-table`
    OutTable,
    /// Shorthand for `g6 order <expr>`
    Order { expr: String },
    /// Shorthand for `g6 centralizer <expr>`
    Centralizer { expr: String },
    /// Shorthand for `g6 meridianal <expr>`
    Meridianal { expr: String },
    /// Shorthand for `g6 orbit <family> <word>`
    Orbit { family: String, word: String },
}

#[derive(Subcommand)]
enum G6Query {
    /// List the 96 outer classes with their orders
    OutTable,
    /// Order of an automorphism (infinite when no power is the identity)
    Order { expr: String },
    /// Canonical description of the centralizer in the normalizer
    Centralizer { expr: String },
    /// Whether an automorphism is meridianal
    Meridianal { expr: String },
    /// Weight-orbit normal form of `word * t` for the family g+ or g-
    Orbit { family: String, word: String },
}

#[derive(Subcommand)]
enum GammaQuery {
    /// List the outer classes with their orders
    OutTable,
    /// Order of the outer class of an automorphism expression
    Order { expr: String },
    /// Planar centralizer of an automorphism expression
    Centralizer { expr: String },
    /// Whether an automorphism is meridianal
    Meridianal { expr: String },
    /// Weight-orbit normal form of `word * t` (bounded search)
    Orbit {
        word: String,
        #[arg(long, default_value_t = 6)]
        radius: i64,
    },
    /// Integrality report for the indexed automorphism k[m,n]
    K { m: i64, n: i64 },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify { config, format } => {
            let cfg = match config {
                Some(path) => RunConfig::from_file(&path).map_err(|e| e.to_string())?,
                None => RunConfig::default(),
            };
            let records = verify_all(&cfg);
            let use_md = match format {
                Some(Format::Md) => true,
                Some(Format::Json) => false,
                None => cfg.output_format == OutputFormat::Markdown,
            };
            if use_md {
                print!("{}", report_markdown(&records));
            } else {
                print!("{}", report_json(&records));
            }
            Ok(ExitCode::from(exit_code(&records) as u8))
        }
        Command::G6 { query } => {
            g6_query(query)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gamma { e, eta, query } => {
            gamma_query(e, eta, query)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verdicts { format } => {
            let rows = verdict_table(&RunConfig::default().gamma_params);
            match format {
                Format::Json => print!("{}", verdicts_json(&rows)),
                Format::Md => print!("{}", verdicts_markdown(&rows)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::DoublySlice { descriptor } => {
            let fam = parse_descriptor(&descriptor)?;
            let v = doubly_slice_verdict(fam).map_err(|e| e.to_string())?;
            println!(
                "{}: {} (reason: {:?}{})",
                fam.display(),
                if v.doubly_slice { "doubly slice" } else { "not doubly slice" },
                v.reason,
                if v.external { ", decisive step external" } else { "" },
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::OutTable => {
            g6_query(G6Query::OutTable)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Order { expr } => {
            g6_query(G6Query::Order { expr })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Centralizer { expr } => {
            g6_query(G6Query::Centralizer { expr })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Meridianal { expr } => {
            g6_query(G6Query::Meridianal { expr })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbit { family, word } => {
            g6_query(G6Query::Orbit { family, word })?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_descriptor(s: &str) -> Result<KnotFamily, String> {
    let t = s.trim().to_ascii_lowercase();
    match t.as_str() {
        "g+" | "g(+)" => return Ok(KnotFamily::GPlus),
        "g-" | "g(-)" => return Ok(KnotFamily::GMinus),
        "fox" => return Ok(KnotFamily::Fox),
        _ => {}
    }
    let body = t
        .strip_prefix("pi(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("unknown descriptor `{}` (expected g+, g-, pi(e,eta), fox)", s))?;
    let (e, eta) = body
        .split_once(',')
        .ok_or_else(|| format!("descriptor `{}`: expected pi(e,eta)", s))?;
    let e: i64 = e.trim().parse().map_err(|_| format!("bad e in `{}`", s))?;
    let eta: i64 = eta.trim().parse().map_err(|_| format!("bad eta in `{}`", s))?;
    if e % 2 != 0 || (eta != 1 && eta != -1) || 3 * e - eta - 2 == 0 {
        return Err(format!("invalid parameters in `{}`: need e even, eta = +-1, q != 0", s));
    }
    Ok(KnotFamily::PiEEta { e, eta })
}

fn g6_query(query: G6Query) -> Result<(), String> {
    match query {
        G6Query::OutTable => {
            let out = out_g6_cached();
            println!("outer automorphism classes: {}", out.order());
            for k in 0..out.order() {
                println!(
                    "{:3}  {}  order {}",
                    k,
                    out.labels[k].display(),
                    out.table.order_of(k)
                );
            }
        }
        G6Query::Order { expr } => {
            let f = eval_g6(&parse_expression(&expr, Context::G6).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            match element_order(&f) {
                Some(k) => println!("order {}", k),
                None => println!("infinite order"),
            }
        }
        G6Query::Centralizer { expr } => {
            let f = eval_g6(&parse_expression(&expr, Context::G6).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            normalizer_membership(&f).map_err(|e| e.to_string())?;
            let c = centralizer(&f);
            println!("finite part: {} linear classes", c.finite_part_size());
            println!("translation lattice (quarter units), basis rows:");
            for row in &c.lattice.basis {
                println!("  {:?}", row);
            }
        }
        G6Query::Meridianal { expr } => {
            let f = eval_g6(&parse_expression(&expr, Context::G6).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let phi = normalizer_membership(&f).map_err(|e| e.to_string())?;
            let m = is_meridianal(&phi).map_err(|e| e.to_string())?;
            println!("{}", if m { "meridianal" } else { "not meridianal" });
        }
        G6Query::Orbit { family, word } => {
            let fam = match family.as_str() {
                "g+" | "plus" => Family::Plus,
                "g-" | "minus" => Family::Minus,
                other => return Err(format!("unknown family `{}` (expected g+ or g-)", other)),
            };
            let f = eval_g6(&parse_expression(&word, Context::G6).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let coords = t_coordinates(&f)
                .ok_or_else(|| format!("`{}` is not a pure translation", word))?;
            let cert = weight_orbit_normal_form(&coords, fam).map_err(|e| e.to_string())?;
            println!("n = {}", cert.lambda);
            println!("conjugator (T-coordinates): {:?}", cert.conjugator);
            println!("identity holds: {}", cert.identity_holds);
        }
    }
    Ok(())
}

fn gamma_query(e: i64, eta: i64, query: GammaQuery) -> Result<(), String> {
    let g = gamma_build(e, eta).map_err(|err| err.to_string())?;
    let parse_aut = |s: &str| {
        parse_expression(s, Context::GammaAut)
            .map_err(|err| err.to_string())
            .and_then(|ex| eval_gamma_aut(&g, &ex).map_err(|err| err.to_string()))
    };
    match query {
        GammaQuery::OutTable => {
            let out = out_gamma(&g).map_err(|err| err.to_string())?;
            println!("outer automorphism classes: {}", out.table.size);
            for (k, label) in out.labels.iter().enumerate() {
                println!(
                    "{:3}  w3={:?} linear={:?}  order {}",
                    k,
                    label.0,
                    label.1,
                    out.table.order_of(k)
                );
            }
        }
        GammaQuery::Order { expr } => {
            let phi = parse_aut(&expr)?;
            let out = out_gamma(&g).map_err(|err| err.to_string())?;
            let label = outer_label(&g, &phi).map_err(|err| err.to_string())?;
            match out.index_of(&label) {
                Some(k) => println!("outer class order {}", out.table.order_of(k)),
                None => println!("outer class not in the generated table"),
            }
        }
        GammaQuery::Centralizer { expr } => {
            let phi = parse_aut(&expr)?;
            let img = aut_p_image(&g, &phi).map_err(|err| err.to_string())?;
            let c = planar_centralizer(g.eta, &img);
            println!("finite part: {} linear classes", c.reps.len());
            println!("translation lattice (thirds units), basis rows:");
            for row in &c.lattice.basis {
                println!("  {:?}", row);
            }
        }
        GammaQuery::Meridianal { expr } => {
            let phi = parse_aut(&expr)?;
            let m = solvknot_core::nil_aut::is_meridianal(&g, &phi)
                .map_err(|err| err.to_string())?;
            println!("{}", if m { "meridianal" } else { "not meridianal" });
        }
        GammaQuery::Orbit { word, radius } => {
            let elt = parse_expression(&word, Context::GammaElt)
                .map_err(|err| err.to_string())
                .and_then(|ex| eval_gamma_elt(&g, &ex).map_err(|err| err.to_string()))?;
            let nf = weight_orbit_normal_form_gamma(&g, &elt, radius)
                .map_err(|err| err.to_string())?;
            println!("n = {} (search radius {})", nf.n, nf.radius);
            println!(
                "conjugator: twist {}, z^{} u^{} v^{}",
                nf.twist, nf.d, nf.i, nf.j
            );
            println!("label preserved by centralizer generators: {}", nf.preserved_by_centralizer);
        }
        GammaQuery::K { m, n } => {
            let rep = k_variant_report(&g, m, n).map_err(|err| err.to_string())?;
            println!(
                "k[{},{}]: s = {}, t = {}, p = {}",
                m, n, rep.params.s, rep.params.t, rep.params.p
            );
            println!("satisfies linear constraints: {}", rep.satisfies_linear_constraints);
            println!("satisfies p constraint: {}", rep.satisfies_p_constraint);
            if let Some(printed) = rep.matches_printed_display {
                println!("matches the displayed closed form: {}", printed);
                println!(
                    "matches the q/3-scaled closed form: {}",
                    rep.matches_q_scaled_form.unwrap_or(false)
                );
            }
        }
    }
    Ok(())
}
