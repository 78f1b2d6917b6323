use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use lftlab_core::scenarios::ScenarioReport;
use lftlab_core::series::fmt_sig;

use crate::config::Settings;
use crate::CliError;

pub fn complex(z: Complex64) -> String {
    format!("{} {}", fmt_sig(z.re), fmt_sig(z.im))
}

/// Two-column key/value listing.
#[derive(Default)]
pub struct Table {
    rows: Vec<(String, String)>,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(&mut self, key: &str, value: &str) {
        self.rows.push((key.to_string(), value.to_string()));
    }

    pub fn real(&mut self, key: &str, x: f64) {
        self.text(key, &fmt_sig(x));
    }

    pub fn complex(&mut self, key: &str, z: Complex64) {
        self.text(key, &complex(z));
    }

    pub fn render(&self) -> String {
        let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        self.rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
    }

    pub fn write_csv(&self, w: &mut dyn Write) -> lftlab_core::Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["key", "value"])?;
        for (k, v) in &self.rows {
            wtr.write_record([k, v])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

fn open(path: &Path) -> Result<Box<dyn Write>, CliError> {
    if path == Path::new("-") {
        Ok(Box::new(io::stdout().lock()))
    } else {
        Ok(Box::new(BufWriter::new(File::create(path)?)))
    }
}

/// Writes the requested JSON/CSV artifacts, then the table unless one of the
/// artifacts went to stdout.
pub fn emit<T, F>(s: &Settings, value: &T, table: Option<&Table>, csv: F) -> Result<(), CliError>
where
    T: Serialize,
    F: FnOnce(&mut dyn Write) -> lftlab_core::Result<()>,
{
    let mut stdout_taken = false;
    if let Some(p) = &s.json {
        let mut w = open(p)?;
        serde_json::to_writer_pretty(&mut w, value).map_err(lftlab_core::Error::from)?;
        writeln!(w)?;
        w.flush()?;
        stdout_taken |= p == Path::new("-");
    }
    if let Some(p) = &s.csv {
        let mut w = open(p)?;
        csv(&mut w)?;
        w.flush()?;
        stdout_taken |= p == Path::new("-");
    }
    if let (Some(t), false) = (table, stdout_taken) {
        print!("{}", t.render());
    }
    Ok(())
}

pub fn scenario_table(reports: &[ScenarioReport]) -> Table {
    let mut t = Table::new();
    for r in reports {
        let failed = r.failed_checks().count();
        t.text(
            &r.id,
            &format!(
                "{} ({} checks, {failed} failed, {:.1} ms)",
                format!("{:?}", r.verdict).to_uppercase(),
                r.checks.len(),
                r.runtime_ms
            ),
        );
        for c in r.failed_checks() {
            let space = c.space.map(|s| format!(" [{s}]")).unwrap_or_default();
            t.text(
                "  failed",
                &format!("{}{space}: {} {} {}", c.name, fmt_sig(c.value), c.comparator.symbol(), fmt_sig(c.threshold)),
            );
        }
    }
    t
}

pub fn scenario_csv(reports: &[ScenarioReport], w: &mut dyn Write) -> lftlab_core::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["id", "check", "space", "n", "m", "value", "comparator", "threshold", "source", "passed"])?;
    let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in reports {
        for c in &r.checks {
            wtr.write_record([
                r.id.clone(),
                c.name.clone(),
                c.space.map(|s| s.to_string()).unwrap_or_default(),
                opt(c.n),
                opt(c.m),
                fmt_sig(c.value),
                c.comparator.symbol().to_string(),
                fmt_sig(c.threshold),
                format!("{:?}", c.source).to_lowercase(),
                c.passed.map(|p| p.to_string()).unwrap_or_default(),
            ])?;
        }
    }
    wtr.flush()?;
    Ok(())
}
