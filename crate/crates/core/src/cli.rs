//! The `nilclean` command line.
//!
//! Exit codes: 0 when the result is true or every statement passes, 1 when it
//! is false or something fails, 2 for usage, parse and validation errors.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::build::BuildContext;
use crate::cleanness::{classify_ideal, decompose, verify_certificate, CertificateRecord, Flavor};
use crate::error::{Error, Result};
use crate::ideals::{all_ideals, ideal_generated_by, Ideal};
use crate::literal::parse_literal_list;
use crate::ring::{FiniteRing, Limits};
use crate::theorems::{build_corpus_with, render_table, run_all_on, run_statement_on, CorpusConfig, TheoremReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "nilclean", version, about = "Weak nil clean ideals of finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Size cap for building rings and enumerating ideal lattices.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// JSON file of named module actions and pairings for `@name` specs.
    #[arg(long, global = true)]
    modules: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the whole ring has a flavor.
    ClassifyRing {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "weak_nil_clean")]
        flavor: Flavor,
    },
    /// Decide whether the ideal generated by `--gens` has a flavor.
    ClassifyIdeal {
        #[arg(long)]
        ring: String,
        /// Comma separated generators; omitted means the zero ideal.
        #[arg(long, default_value = "")]
        gens: String,
        #[arg(long, default_value = "weak_nil_clean")]
        flavor: Flavor,
        /// Require the idempotent (and nilpotent) to lie in the ideal.
        #[arg(long)]
        restricted: bool,
    },
    /// List every two-sided ideal.
    Ideals {
        #[arg(long)]
        ring: String,
    },
    /// Emit a certificate for one element.
    Certify {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        element: String,
        #[arg(long, default_value = "weak_nil_clean")]
        flavor: Flavor,
        /// Restrict to the ideal generated by `--gens`.
        #[arg(long)]
        restricted: bool,
        #[arg(long)]
        gens: Option<String>,
    },
    /// Check a certificate file (`-` reads standard input).
    VerifyCert {
        #[arg(long)]
        cert: String,
    },
    /// Run the statement catalog on a corpus.
    Theorems {
        #[arg(long)]
        statement: Option<String>,
        /// `default` or a JSON corpus file.
        #[arg(long, default_value = "default")]
        corpus: String,
    },
    /// Describe the rings of a corpus.
    CorpusInfo {
        #[arg(long, default_value = "default")]
        corpus: String,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run(&cli) {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn context(cli: &Cli) -> Result<BuildContext> {
    let mut limits = Limits::default();
    if let Some(cap) = cli.cap {
        limits = Limits {
            max_ring_size: cap,
            lattice_cap: cap,
        };
    }
    let mut ctx = BuildContext::new(limits);
    if let Some(path) = &cli.modules {
        ctx.load_tables_json(&read_file(path)?)?;
    }
    Ok(ctx)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))
}

fn json_text(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values serialize");
    s.push('\n');
    s
}

fn elements(ring: &FiniteRing, text: &str) -> Result<Vec<usize>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    parse_literal_list(text)?
        .iter()
        .map(|lit| ring.from_literal(lit))
        .collect()
}

fn ideal(ring: &Arc<FiniteRing>, gens: &str) -> Result<Ideal> {
    ideal_generated_by(ring, &elements(ring, gens)?)
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let ctx = context(cli)?;
    match &cli.command {
        Command::ClassifyRing { ring, flavor } => {
            let r = ctx.build_str(ring)?;
            classify(cli.format, &Ideal::whole(&r), *flavor, false)
        }
        Command::ClassifyIdeal {
            ring,
            gens,
            flavor,
            restricted,
        } => {
            let r = ctx.build_str(ring)?;
            classify(cli.format, &ideal(&r, gens)?, *flavor, *restricted)
        }
        Command::Ideals { ring } => {
            let r = ctx.build_str(ring)?;
            let lattice = all_ideals(&r)?;
            let text = match cli.format {
                Format::Json => json_text(
                    &lattice
                        .iter()
                        .map(|i| json!({"generators": i.display(), "elements": i.display_elements(), "size": i.size()}))
                        .collect::<Vec<_>>(),
                ),
                Format::Table => {
                    let mut s = format!("{} has {} ideals\n", r.spec(), lattice.len());
                    for i in &lattice {
                        s.push_str(&format!("{:>6}  {}  {}\n", i.size(), i.display(), i.display_elements()));
                    }
                    s
                }
            };
            Ok((text, true))
        }
        Command::Certify {
            ring,
            element,
            flavor,
            restricted,
            gens,
        } => {
            let r = ctx.build_str(ring)?;
            let x = r.parse_element(element)?;
            let within = match (restricted, gens) {
                (false, _) => None,
                (true, Some(g)) => Some(ideal(&r, g)?),
                (true, None) => return Err(Error::validation("--restricted needs --gens")),
            };
            if let Some(i) = &within {
                if !i.contains(x) {
                    return Err(Error::validation(format!("{element} is not in {}", i.display())));
                }
            }
            match decompose(&r, x, *flavor, within.as_ref()) {
                Some(cert) => {
                    let record = CertificateRecord::new(&r, &cert);
                    let text = match cli.format {
                        Format::Json => json_text(&record),
                        Format::Table => {
                            let sign = if record.sign < 0 { "-" } else { "" };
                            format!(
                                "{} = {sign}{} + {} in {} ({}, commuting: {})\n",
                                record.x, record.e, record.w, record.ring_spec, record.flavor, record.commuting
                            )
                        }
                    };
                    Ok((text, true))
                }
                None => {
                    let text = match cli.format {
                        Format::Json => json_text(&json!({"ring": r.spec().to_string(), "x": r.display(x), "flavor": flavor, "certificate": null})),
                        Format::Table => format!("{} has no {} decomposition in {}\n", r.display(x), flavor, r.spec()),
                    };
                    Ok((text, false))
                }
            }
        }
        Command::VerifyCert { cert } => {
            let text = if cert == "-" {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::Config(format!("cannot read standard input: {e}")))?;
                s
            } else {
                read_file(Path::new(cert))?
            };
            let record: CertificateRecord =
                serde_json::from_str(&text).map_err(|e| Error::Certificate(format!("malformed certificate: {e}")))?;
            let (r, c) = record.resolve(&ctx)?;
            let valid = verify_certificate(&r, &c)?;
            let text = match cli.format {
                Format::Json => json_text(&json!({"valid": valid})),
                Format::Table => format!("{valid}\n"),
            };
            Ok((text, valid))
        }
        Command::Theorems { statement, corpus } => {
            if let Some(id) = statement {
                crate::theorems::find_statement(id)?;
            }
            let corpus = build_corpus_with(&ctx, &corpus_config(cli, corpus)?)?;
            let reports: Vec<TheoremReport> = match statement {
                Some(id) => vec![run_statement_on(id, &corpus)?],
                None => run_all_on(&corpus),
            };
            let ok = reports.iter().all(TheoremReport::passed);
            let text = match (cli.format, statement) {
                (Format::Json, Some(_)) => json_text(&reports[0]),
                (Format::Json, None) => json_text(&reports),
                (Format::Table, _) => render_table(&reports),
            };
            Ok((text, ok))
        }
        Command::CorpusInfo { corpus } => {
            let config = corpus_config(cli, corpus)?;
            let corpus = build_corpus_with(&ctx, &config)?;
            let rows: Vec<_> = corpus
                .entries
                .iter()
                .map(|e| (e.ring.spec().to_string(), e.ring.size(), e.ideals.len()))
                .collect();
            let text = match cli.format {
                Format::Json => json_text(
                    &rows
                        .iter()
                        .map(|(spec, size, ideals)| json!({"ring": spec, "size": size, "ideals": ideals}))
                        .collect::<Vec<_>>(),
                ),
                Format::Table => {
                    let mut s = format!("{} rings\n", rows.len());
                    for (spec, size, ideals) in &rows {
                        s.push_str(&format!("{size:>6} {ideals:>5}  {spec}\n"));
                    }
                    s
                }
            };
            Ok((text, true))
        }
    }
}

fn corpus_config(cli: &Cli, corpus: &str) -> Result<CorpusConfig> {
    let mut config = if corpus == "default" {
        CorpusConfig::default()
    } else {
        CorpusConfig::from_json(&read_file(Path::new(corpus))?)?
    };
    if let Some(cap) = cli.cap {
        config.max_ring_size = cap;
        config.lattice_cap = cap;
    }
    Ok(config)
}

fn classify(format: Format, ideal: &Ideal, flavor: Flavor, restricted: bool) -> Result<(String, bool)> {
    let ring = ideal.ring();
    let c = classify_ideal(ideal, flavor, restricted);
    let failure = c.failure.map(|x| ring.display(x));
    let text = match format {
        Format::Json => {
            let certificates: Vec<CertificateRecord> =
                c.witnesses.iter().map(|w| CertificateRecord::new(ring, w)).collect();
            json_text(&json!({
                "ring": ring.spec().to_string(),
                "ideal": ideal.display(),
                "elements": ideal.display_elements(),
                "flavor": flavor,
                "restricted": restricted,
                "holds": c.holds,
                "failure": failure,
                "certificates": certificates,
            }))
        }
        Format::Table => {
            let mut s = format!("{} in {}: {} = {}\n", ideal.display(), ring.spec(), flavor, c.holds);
            if let Some(f) = failure {
                s.push_str(&format!("failure witness: {f}\n"));
            }
            s
        }
    };
    Ok((text, c.holds))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = dispatch(std::iter::once("nilclean").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes_follow_the_result() {
        let (code, out, _) = call(&["classify-ideal", "--ring", "Z6", "--gens", "2", "--flavor", "weak_nil_clean"]);
        assert_eq!(code, 0);
        assert!(out.contains("= true"), "{out}");
        let (code, out, _) = call(&["classify-ideal", "--ring", "Z6", "--gens", "2", "--flavor", "nil_clean"]);
        assert_eq!(code, 1);
        assert!(out.contains("failure witness: 2"), "{out}");
    }

    #[test]
    fn usage_and_validation_errors_exit_2() {
        assert_eq!(call(&["classify-ring", "--ring", "Q5"]).0, 2);
        assert_eq!(call(&["classify-ring"]).0, 2);
        assert_eq!(call(&["classify-ring", "--ring", "Z6", "--flavor", "spotless"]).0, 2);
        assert_eq!(call(&["theorems", "--statement", "STMT-NOPE"]).0, 2);
        assert_eq!(call(&["ideals", "--ring", "Z300", "--cap", "100"]).0, 2);
        let (code, _, err) = call(&["certify", "--ring", "Z6", "--element", "[[1]]"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error:"), "{err}");
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("classify-ideal"));
    }
}
