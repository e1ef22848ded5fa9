//! Command-line front end. `main.rs` only parses arguments and maps the
//! outcome of [`run`] to an exit code.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalysis::{
    catalyst_filter, is_catalyst, min_catalyst_copies, mlocc_threshold, multicopy_filter,
};
use crate::error::Error;
use crate::majorization::{incomparable, l_set, majorizes};
use crate::probabilistic::{
    assisted_bounds, collective_useless, combined_pmax, is_lambda_catalyst, mlocc_attains,
};
use crate::rational::{format_decimal, format_fraction, parse_rational, Rational};
use crate::report::{self, RunReport, DEFAULT_PRECISION};
use crate::search::{search_catalysts_with, trade_off, SearchConfig, SearchMode};
use crate::vector::SchmidtVector;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NEGATIVE: u8 = 3;
pub const EXIT_RESOURCE: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    /// One JSON object per line (search hits stream as they are verified).
    Jsonl,
    Csv,
}

/// Exact entanglement transformation analysis (LOCC, catalysis, multiple copies).
///
/// Vectors are comma-separated decimals or fractions, e.g. "0.4,0.4,0.1,0.1"
/// or "50/103,30/103,23/103". Pass "-" to read a vector from the next stdin line.
#[derive(Debug, Parser)]
#[command(name = "entcat", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "human", global = true)]
    pub format: Format,
    /// Omit timing information so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub stable: bool,
    /// Decimal places for rounded output.
    #[arg(long, default_value_t = DEFAULT_PRECISION, global = true)]
    pub precision: u32,
    /// Rescale input vectors to sum to one instead of rejecting them.
    #[arg(long, global = true)]
    pub normalize: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Deterministic convertibility psi -> phi.
    Check { psi: String, phi: String },
    /// Does cat^{⊗m} catalyze psi -> phi?
    Catalyze {
        psi: String,
        phi: String,
        cat: String,
        #[arg(long, default_value_t = 1)]
        copies: u32,
        /// Also report the fewest copies up to this bound.
        #[arg(long)]
        find_min: Option<u32>,
        /// Check the probabilistic variant: P_max with the catalyst >= lambda.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Multiple-copy threshold, or with --lambda the copies needed to attain it.
    Mlocc {
        psi: String,
        phi: String,
        #[arg(long, default_value_t = 12)]
        max: u32,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Table of source copies against minimal catalyst copies.
    Tradeoff {
        psi: String,
        phi: String,
        cat: String,
        #[arg(long, default_value_t = 6)]
        max_source: u32,
        #[arg(long, default_value_t = 12)]
        max_cat: u32,
    },
    /// Maximal conversion probability, optionally with copies and a catalyst.
    Pmax {
        psi: String,
        phi: String,
        #[arg(long, default_value_t = 1)]
        source_copies: u32,
        #[arg(long)]
        cat: Option<String>,
        #[arg(long)]
        cat_copies: Option<u32>,
    },
    /// Lower and upper bounds on catalyst-assisted probability for p copies.
    Bounds {
        psi: String,
        phi: String,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Grid search for catalysts.
    Search {
        psi: String,
        phi: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        denominator: u64,
        #[arg(long, default_value_t = 1)]
        copies: u32,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        max_candidates: Option<usize>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Analysis(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Analysis(Error::ResourceLimit { .. }) => EXIT_RESOURCE,
            CliError::Analysis(_) | CliError::Usage(_) => EXIT_INPUT,
            CliError::Io(_) => 1,
        }
    }
}

/// Whether the command's answer was affirmative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    Negative,
}

impl Verdict {
    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Positive
        } else {
            Verdict::Negative
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Positive => EXIT_OK,
            Verdict::Negative => EXIT_NEGATIVE,
        }
    }
}

struct Inputs<'a> {
    stdin: &'a mut dyn BufRead,
    normalize: bool,
    echo: BTreeMap<String, String>,
}

impl Inputs<'_> {
    fn vector(&mut self, name: &str, text: &str) -> Result<SchmidtVector, CliError> {
        let owned;
        let text = if text == "-" {
            owned = self.next_line()?;
            owned.as_str()
        } else {
            text
        };
        let v = SchmidtVector::parse(text, self.normalize)?;
        self.echo.insert(name.to_string(), v.to_string());
        Ok(v)
    }

    fn next_line(&mut self) -> Result<String, CliError> {
        let mut line = String::new();
        loop {
            line.clear();
            if self.stdin.read_line(&mut line)? == 0 {
                return Err(CliError::Usage(
                    "stdin ended before all vectors were read".into(),
                ));
            }
            if !line.trim().is_empty() {
                return Ok(line.trim().to_string());
            }
        }
    }
}

fn lambda_arg(text: &Option<String>) -> Result<Option<Rational>, CliError> {
    Ok(text.as_deref().map(parse_rational).transpose()?)
}

struct Rendered {
    result: Value,
    human: String,
    csv: Option<String>,
    verdict: Verdict,
}

/// Runs one command, writing its output to `out`.
pub fn run(cli: &Cli, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<Verdict, CliError> {
    let started = Instant::now();
    let places = cli.precision;
    let mut inputs = Inputs {
        stdin,
        normalize: cli.normalize,
        echo: BTreeMap::new(),
    };
    let (name, rendered) = match &cli.command {
        Command::Check { psi, phi } => {
            let psi = inputs.vector("psi", psi)?;
            let phi = inputs.vector("phi", phi)?;
            ("check", render_check(&psi, &phi))
        }
        Command::Catalyze {
            psi,
            phi,
            cat,
            copies,
            find_min,
            lambda,
        } => {
            let psi = inputs.vector("psi", psi)?;
            let phi = inputs.vector("phi", phi)?;
            let cat = inputs.vector("cat", cat)?;
            let lambda = lambda_arg(lambda)?;
            (
                "catalyze",
                render_catalyze(&psi, &phi, &cat, *copies, *find_min, lambda, places)?,
            )
        }
        Command::Mlocc {
            psi,
            phi,
            max,
            lambda,
        } => {
            let psi = inputs.vector("psi", psi)?;
            let phi = inputs.vector("phi", phi)?;
            let lambda = lambda_arg(lambda)?;
            ("mlocc", render_mlocc(&psi, &phi, *max, lambda)?)
        }
        Command::Tradeoff {
            psi,
            phi,
            cat,
            max_source,
            max_cat,
        } => {
            let psi = inputs.vector("psi", psi)?;
            let phi = inputs.vector("phi", phi)?;
            let cat = inputs.vector("cat", cat)?;
            let table = trade_off(&psi, &phi, &cat, *max_source, *max_cat)?;
            let mut human = String::from("source copies | min catalyst copies | feasible alone\n");
            for r in &table.rows {
                let m = r
                    .min_catalyst_copies
                    .map_or("-".to_string(), |m| m.to_string());
                human.push_str(&format!(
                    "{:>13} | {:>19} | {}\n",
                    r.source_copies, m, r.feasible_without_catalyst
                ));
            }
            if !table.monotone {
                human.push_str("warning: minimal catalyst copies increase with source copies\n");
            }
            let rendered = Rendered {
                result: report::tradeoff(&table),
                csv: Some(table.to_csv()),
                human,
                verdict: Verdict::Positive,
            };
            ("tradeoff", rendered)
        }
        Command::Pmax {
            psi,
            phi,
            source_copies,
            cat,
            cat_copies,
        } => {
            let psi = inputs.vector("psi", psi)?;
            let phi = inputs.vector("phi", phi)?;
            let cat = cat
                .as_deref()
                .map(|c| inputs.vector("cat", c))
                .transpose()?;
            (
                "pmax",
                render_pmax(
                    &psi,
                    &phi,
                    *source_copies,
                    cat.as_ref(),
                    *cat_copies,
                    places,
                )?,
            )
        }
        Command::Bounds { psi, phi, power } => {
            let psi = inputs.vector("psi", psi)?;
            let phi = inputs.vector("phi", phi)?;
            let b = assisted_bounds(&psi, &phi, *power)?;
            let useless = collective_useless(&psi, &phi)?;
            let mut result = report::bounds(&b, places);
            result["collective_useless"] = json!(useless);
            let human = format!(
                "{} <= P^E_max(psi^{p} -> phi^{p}) <= {}  [{} <= . <= {}]{}\n",
                format_decimal(&b.lower, places),
                format_decimal(&b.upper, places),
                format_fraction(&b.lower),
                format_fraction(&b.upper),
                if useless {
                    "\ncopies and catalysts cannot raise the per-copy probability"
                } else {
                    ""
                },
                p = b.p,
            );
            (
                "bounds",
                Rendered {
                    result,
                    human,
                    csv: None,
                    verdict: Verdict::Positive,
                },
            )
        }
        Command::Search {
            psi,
            phi,
            dim,
            denominator,
            copies,
            lambda,
            max_candidates,
        } => {
            let psi = inputs.vector("psi", psi)?;
            let phi = inputs.vector("phi", phi)?;
            let mode = match lambda_arg(lambda)? {
                Some(l) => SearchMode::Lambda(l),
                None => SearchMode::Deterministic,
            };
            let cfg = SearchConfig {
                dimension: *dim,
                denominator: *denominator,
                max_candidates: max_candidates.unwrap_or(usize::MAX),
                mode,
                copies: *copies,
            };
            return run_search(cli, &psi, &phi, &cfg, inputs.echo, started, out);
        }
    };

    let timing = (!cli.stable).then(|| started.elapsed().as_millis() as u64);
    match cli.format {
        Format::Human => out.write_all(rendered.human.as_bytes())?,
        Format::Csv if rendered.csv.is_some() => out.write_all(rendered.csv.unwrap().as_bytes())?,
        Format::Csv => {
            return Err(CliError::Usage(format!(
                "csv output is not available for `{name}`"
            )))
        }
        Format::Json | Format::Jsonl => {
            let env = RunReport {
                command: name.to_string(),
                inputs: inputs.echo,
                result: rendered.result,
                exact: true,
                timing_ms: timing,
            };
            let text = if cli.format == Format::Json {
                serde_json::to_string_pretty(&env)
            } else {
                serde_json::to_string(&env)
            }
            .expect("json values serialize");
            writeln!(out, "{text}")?;
        }
    }
    Ok(rendered.verdict)
}

fn render_check(psi: &SchmidtVector, phi: &SchmidtVector) -> Rendered {
    let r = majorizes(psi, phi);
    let back = majorizes(phi, psi);
    let lset = l_set(psi, phi);
    let human = if r.feasible {
        "feasible: psi can be converted to phi with certainty\n".to_string()
    } else {
        let ls: Vec<String> = r.violated_prefixes.iter().map(|l| l.to_string()).collect();
        format!(
            "infeasible: prefix sums of psi exceed phi at l = {}{}\n",
            ls.join(", "),
            if back.feasible {
                ""
            } else {
                " (states are incomparable)"
            }
        )
    };
    Rendered {
        result: json!({
            "report": report::feasibility(&r),
            "l_set": report::lset(&lset),
            "incomparable": incomparable(psi, phi),
        }),
        human,
        csv: None,
        verdict: Verdict::from_bool(r.feasible),
    }
}

fn render_catalyze(
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    cat: &SchmidtVector,
    copies: u32,
    find_min: Option<u32>,
    lambda: Option<Rational>,
    places: u32,
) -> Result<Rendered, CliError> {
    let single = catalyst_filter(cat, psi, phi);
    let multi = multicopy_filter(cat, psi, phi);
    let mut result = json!({
        "copies": copies,
        "catalyst_filter": report::filter(&single),
        "multicopy_filter": report::filter(&multi),
    });
    let mut human = String::new();
    let verdict = if let Some(lambda) = lambda {
        let ok = is_lambda_catalyst(cat, psi, phi, &lambda, copies)?;
        let p = combined_pmax(psi, phi, 1, cat, copies)?;
        result["lambda"] = json!(report::ExactNumber::new(&lambda, places));
        result["probability"] = report::probability(&p, places);
        result["is_lambda_catalyst"] = json!(ok);
        human.push_str(&format!(
            "lambda-catalyst: {} (P_max = {} = {})\n",
            if ok { "yes" } else { "no" },
            format_decimal(&p.p_max, places),
            format_fraction(&p.p_max)
        ));
        Verdict::from_bool(ok)
    } else {
        let v = is_catalyst(cat, psi, phi, copies)?;
        result["verdict"] = report::verdict(&v);
        human.push_str(&format!(
            "catalyst={} (copies = {copies})\n",
            if v.is_catalyst { "yes" } else { "no" }
        ));
        Verdict::from_bool(v.is_catalyst)
    };
    human.push_str(&format!(
        "catalyst_filter={}\nmulticopy_filter={}{}\n",
        if single.passes { "passed" } else { "violated" },
        if multi.passes { "passed" } else { "violated" },
        if multi.passes {
            ""
        } else {
            " (no number of copies can catalyze)"
        },
    ));
    if let Some(m_max) = find_min {
        let m = min_catalyst_copies(cat, psi, phi, m_max)?;
        result["min_catalyst_copies"] = json!(m);
        human.push_str(&format!(
            "min copies (<= {m_max}): {}\n",
            m.map_or("none".to_string(), |m| m.to_string())
        ));
    }
    Ok(Rendered {
        result,
        human,
        csv: None,
        verdict,
    })
}

fn render_mlocc(
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    max: u32,
    lambda: Option<Rational>,
) -> Result<Rendered, CliError> {
    if let Some(lambda) = lambda {
        let k = mlocc_attains(psi, phi, &lambda, max)?;
        let human = match k {
            Some(k) => format!("attains {} with {k} copies\n", format_fraction(&lambda)),
            None => format!(
                "does not attain {} within {max} copies\n",
                format_fraction(&lambda)
            ),
        };
        return Ok(Rendered {
            result: json!({ "lambda": format_fraction(&lambda), "k_max": max, "copies": k }),
            human,
            csv: None,
            verdict: Verdict::from_bool(k.is_some()),
        });
    }
    let s = mlocc_threshold(psi, phi, max)?;
    let human = match s.threshold {
        Some(k) => format!(
            "threshold {k}: psi^k -> phi^k with certainty for every k >= {k} (checked up to {})\n",
            s.checked_up_to
        ),
        None => format!(
            "no threshold up to {max} (checked up to {})\n",
            s.checked_up_to
        ),
    };
    Ok(Rendered {
        result: report::stability(&s),
        human,
        csv: None,
        verdict: Verdict::from_bool(s.threshold.is_some()),
    })
}

fn render_pmax(
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    source_copies: u32,
    cat: Option<&SchmidtVector>,
    cat_copies: Option<u32>,
    places: u32,
) -> Result<Rendered, CliError> {
    let trivial = SchmidtVector::product_state();
    let (cat, m) = match cat {
        Some(c) => (c, cat_copies.unwrap_or(1)),
        None => (&trivial, 0),
    };
    let r = combined_pmax(psi, phi, source_copies, cat, m)?;
    let mut result = report::probability(&r, places);
    result["source_copies"] = json!(source_copies);
    result["cat_copies"] = json!(m);
    let human = format!(
        "P_max = {} ({}), minimizing l = {}{}\n",
        format_fraction(&r.p_max),
        format_decimal(&r.p_max, places),
        r.minimizing_l,
        if r.rank_deficient {
            " [target has larger Schmidt rank]"
        } else {
            ""
        }
    );
    Ok(Rendered {
        result,
        human,
        csv: None,
        verdict: Verdict::Positive,
    })
}

fn run_search(
    cli: &Cli,
    psi: &SchmidtVector,
    phi: &SchmidtVector,
    cfg: &SearchConfig,
    echo: BTreeMap<String, String>,
    started: Instant,
    out: &mut dyn Write,
) -> Result<Verdict, CliError> {
    let places = cli.precision;
    let mut hits = Vec::new();
    let mut found = 0usize;
    let mut io_err = None;
    let counters = search_catalysts_with(psi, phi, cfg, |hit| {
        found += 1;
        let written = match cli.format {
            Format::Jsonl => writeln!(out, "{}", json!({ "hit": report::search_hit(hit, places) })),
            Format::Human => writeln!(out, "hit: {}", hit.catalyst),
            Format::Json | Format::Csv => {
                hits.push(report::search_hit(hit, places));
                Ok(())
            }
        };
        if let Err(e) = written {
            io_err.get_or_insert(e);
        }
    })?;
    if let Some(e) = io_err {
        return Err(e.into());
    }
    let verdict = Verdict::from_bool(found > 0);
    let timing = (!cli.stable).then(|| started.elapsed().as_millis() as u64);
    match cli.format {
        Format::Human => writeln!(
            out,
            "enumerated {}, pruned {}, verified {}",
            counters.enumerated, counters.pruned_by_filter, counters.verified
        )?,
        Format::Jsonl => {
            let mut summary = json!({ "summary": { "command": "search", "inputs": echo, "counters": report::counters(&counters), "exact": true } });
            if let Some(t) = timing {
                summary["summary"]["timing_ms"] = json!(t);
            }
            writeln!(out, "{summary}")?;
        }
        Format::Json => {
            let env = RunReport {
                command: "search".into(),
                inputs: echo,
                result: json!({ "hits": hits, "counters": report::counters(&counters) }),
                exact: true,
                timing_ms: timing,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&env).expect("json values serialize")
            )?;
        }
        Format::Csv => {
            return Err(CliError::Usage(
                "csv output is not available for `search`".into(),
            ))
        }
    }
    Ok(verdict)
}
