use anyhow::{bail, Context, Result};
use cyclicbent::{rational_float, rational_string, Rational64};
use serde_json::{json, Value};

use crate::{Cli, Format};

/// Prints one `PASS`/`FAIL` line and returns the verdict.
pub fn check(ok: bool, name: &str, detail: impl AsRef<str>) -> bool {
    println!("{} {name}: {}", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
    ok
}

/// `num/den (float)` for the summary lines.
pub fn rat(r: &Rational64) -> String {
    format!("{} ({})", rational_string(r), rational_float(r))
}

/// `{"exact": "num/den", "float": "..."}` for reports.
pub fn rat_json(r: &Rational64) -> Value {
    json!({ "exact": rational_string(r), "float": rational_float(r) })
}

/// Writes the report to `--out` in the requested format. Commands without a
/// tabular form pass `csv = None`.
pub fn emit(cli: &Cli, report: Value, csv: Option<String>) -> Result<()> {
    let Some(path) = &cli.out else {
        return Ok(());
    };
    let body = match (cli.format, csv) {
        (Format::Json, _) => serde_json::to_string_pretty(&report)? + "\n",
        (Format::Csv, Some(c)) => c,
        (Format::Csv, None) => bail!("this subcommand has no CSV form; use --format json"),
    };
    std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    println!("report written to {}", path.display());
    Ok(())
}
