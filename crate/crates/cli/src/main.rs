use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use halftwist_core::covers::{self, CoverSpec};
use halftwist_core::jacobian::{hypersurface_hodge_numbers, primitive_rank};
use halftwist_core::report::{self, SweepCheck};
use halftwist_core::{Abelian, Dim, HodgeStructure, Side};

#[derive(Parser)]
#[command(name = "halftwist", version, about = "Hodge data and half twists of cyclic covers of projective space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Primitive Hodge numbers of a degree-d hypersurface of dimension k
    Hodge {
        d: u32,
        k: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Eigenspace table of H^k_0 of the cyclic cover Y_k
    Eigenspaces {
        d: u32,
        k: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Half-twist predicates and, when it exists, the twisted table
    HalfTwist {
        d: u32,
        k: u32,
        /// Twist V(q) instead of V
        #[arg(long)]
        tate: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run the verification ledger
    VerifyPaper {
        /// Keep claims whose location or id starts with this prefix
        #[arg(long)]
        section: Option<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run a property check over a (d, k) grid
    Sweep {
        #[arg(long, default_value_t = 9)]
        d_max: u32,
        #[arg(long, default_value_t = 7)]
        k_max: u32,
        #[arg(long)]
        check: SweepCheck,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

enum Outcome {
    Pass,
    Failure,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Failure) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Hodge { d, k, format } => {
            check_degree(d)?;
            emit(format, hodge_json(d, k), hodge_table(d, k));
        }
        Command::Eigenspaces { d, k, format } => {
            let s = cover(d, k)?;
            let table = covers::full_primitive(s);
            emit(format, eigenspaces_json(&table), eigenspaces_table(&table));
        }
        Command::HalfTwist { d, k, tate, format } => {
            let s = cover(d, k)?;
            let (json, table) = half_twist_report(s, tate);
            emit(format, json, table);
        }
        Command::VerifyPaper { section, format } => {
            let reports = report::run_ledger(section.as_deref());
            if reports.is_empty() {
                return Err(format!("no claims match `{}`", section.unwrap_or_default()));
            }
            emit(format, json!(reports), report::render_ledger_table(&reports));
            if report::unexpected_failures(&reports) > 0 {
                return Ok(Outcome::Failure);
            }
        }
        Command::Sweep { d_max, k_max, check, jobs, format } => {
            check_degree(d_max)?;
            if k_max < 1 {
                return Err("--k-max must be at least 1".into());
            }
            let result = report::sweep(check, d_max, k_max, jobs);
            emit(format, json!(result), report::render_sweep_table(&result));
            if !result.passed() {
                return Ok(Outcome::Failure);
            }
        }
    }
    Ok(Outcome::Pass)
}

fn check_degree(d: u32) -> Result<(), String> {
    if d < 3 {
        return Err(format!("degree must be at least 3, got {d}"));
    }
    Ok(())
}

fn cover(d: u32, k: u32) -> Result<CoverSpec, String> {
    CoverSpec::new(d, k).map_err(|e| e.to_string())
}

fn emit(format: Format, json: Value, table: String) {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&json).expect("serializable") + "\n",
        Format::Table => table,
    };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn hodge_label(p: u32, q: u32) -> String {
    if p == q {
        format!("h^{{{p},{q}}}_0")
    } else {
        format!("h^{{{p},{q}}}")
    }
}

fn hodge_table(d: u32, k: u32) -> String {
    let cells: Vec<String> = hypersurface_hodge_numbers(d, k)
        .into_iter()
        .map(|(p, h)| format!("{}={h}", hodge_label(p, k - p)))
        .collect();
    format!("{}\ntotal {}\n", cells.join(" "), primitive_rank(d, k))
}

fn hodge_json(d: u32, k: u32) -> Value {
    let numbers: Vec<Value> = hypersurface_hodge_numbers(d, k)
        .into_iter()
        .map(|(p, h)| json!({ "p": p, "q": k - p, "h": number(&h) }))
        .collect();
    json!({ "d": d, "k": k, "hodge": numbers, "total": number(&primitive_rank(d, k)) })
}

fn number(n: &Dim) -> Value {
    serde_json::from_str(&n.to_string()).unwrap_or_else(|_| Value::String(n.to_string()))
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Positive => "positive",
        Side::Negative => "negative",
        Side::Real => "real",
    }
}

fn eigenspaces_table(table: &HodgeStructure) -> String {
    let field = table.field();
    let residues: Vec<u32> = table.support().iter().copied().collect();
    let mut out = String::new();
    let mut header = format!("{:<10}", "");
    for a in &residues {
        header.push_str(&format!("{:>8}", format!("i={a}")));
    }
    header.push_str(&format!("{:>8}", "sum"));
    out.push_str(&header);
    out.push('\n');
    let sums = table.hodge_numbers();
    for p in (0..=table.weight()).rev() {
        let mut row = format!("{:<10}", format!("h^{{{},{}}}", p, table.weight() - p));
        for &a in &residues {
            row.push_str(&format!("{:>8}", table.get(p, a)));
        }
        row.push_str(&format!("{:>8}", sums[p as usize]));
        out.push_str(&row);
        out.push('\n');
    }
    let units: Vec<String> = field.units().iter().map(u32::to_string).collect();
    let non_units: Vec<String> = residues.iter().filter(|a| !field.is_unit(**a)).map(u32::to_string).collect();
    out.push_str(&format!("units: {}\n", units.join(",")));
    out.push_str(&format!("non-units: {}\n", if non_units.is_empty() { "-".into() } else { non_units.join(",") }));
    out
}

fn eigenspaces_json(table: &HodgeStructure) -> Value {
    let field = table.field();
    let rows: Vec<Value> = (0..=table.weight())
        .rev()
        .map(|p| {
            let dims: Vec<Value> = table.support().iter().map(|&a| number(&table.get(p, a))).collect();
            json!({ "p": p, "q": table.weight() - p, "dims": dims })
        })
        .collect();
    let residues: Vec<Value> = table
        .support()
        .iter()
        .map(|&a| json!({ "i": a, "unit": field.is_unit(a), "side": side_name(field.side(a)) }))
        .collect();
    json!({ "d": field.degree(), "k": table.weight(), "residues": residues, "rows": rows })
}

fn abelian_json(summary: &Abelian) -> Value {
    let signature: Vec<Value> = summary
        .signature
        .iter()
        .map(|(a, (r, s))| json!({ "residue": a, "r": number(r), "s": number(s) }))
        .collect();
    json!({ "dim": number(&summary.dim_abelian), "signature": signature })
}

fn half_twist_report(s: CoverSpec, tate: bool) -> (Value, String) {
    let direct = covers::half_twist_exists_direct(s, tate);
    let any_cmtype = covers::half_twist_any_cmtype(s, tate);
    let qt = covers::qt_decompose(s).expect("extremal piece");
    let (printed_label, printed) = if tate {
        ("printed-criterion", covers::half_twist_exists_printed(s))
    } else {
        ("printed-corollary", covers::corollary_check(s).printed)
    };
    let derived = covers::half_twist_exists_derived(s);
    let flagged = printed != direct;

    let mut out = format!("d={} k={} q={} t={} tate={tate}\n", s.d, s.k, qt.q, qt.t);
    out.push_str(&format!("direct={direct} {printed_label}={printed} derived={derived} any-cmtype={any_cmtype}\n"));
    if flagged {
        out.push_str("flagged: closed form disagrees with the direct predicate\n");
    }
    let mut json = json!({
        "d": s.d, "k": s.k, "q": qt.q, "t": qt.t, "tate": tate,
        "direct": direct, printed_label: printed, "derived": derived,
        "any_cmtype": any_cmtype, "flagged": flagged, "exists": direct,
    });
    match covers::half_twist(s, tate) {
        Ok(half) => {
            out.push_str(&format!("exists; weight {} rank {}\n", half.weight(), half.rank()));
            out.push_str(&eigenspaces_table(&half));
            json["table"] = eigenspaces_json(&half);
            if let Ok(summary) = half.abelian_summary() {
                let types: Vec<String> =
                    summary.signature.iter().map(|(a, (r, s))| format!("{a}:({r},{s})")).collect();
                out.push_str(&format!("abelian dim {}, type {}\n", summary.dim_abelian, types.join(" ")));
                json["abelian"] = abelian_json(&summary);
            }
        }
        Err(e) => out.push_str(&format!("no half twist: {e}\n")),
    }
    (json, out)
}
