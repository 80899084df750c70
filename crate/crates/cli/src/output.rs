//! Output sinks and formatting shared by all subcommands.
//!
//! Every output starts with the tool version, the subcommand and the
//! argument list as given, so a file records how to regenerate it. There are
//! no timestamps: rerunning the same command reproduces the file byte for byte.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

pub const TOOL: &str = "usptrace";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Provenance echoed into every output.
#[derive(Debug, Clone)]
pub struct Meta {
    pub command: &'static str,
    pub args: Vec<String>,
    pub seed: u64,
}

impl Meta {
    pub fn csv_header(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(w, "# {} {}", TOOL, env!("CARGO_PKG_VERSION"))?;
        writeln!(w, "# command: {}", self.command)?;
        writeln!(w, "# args: {}", self.args.join(" "))?;
        writeln!(w, "# seed: {}", self.seed)
    }

    pub fn json(&self) -> Value {
        json!({
            "tool": TOOL,
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "args": self.args,
            "seed": self.seed,
        })
    }
}

/// stdout or a file, buffered.
pub fn open(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// 17 significant digits, enough to round-trip any f64.
pub fn real(x: f64) -> String {
    if x == 0.0 {
        // avoid "-0.0000000000000000e0" for negative zero
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

/// A real as a JSON string (no precision lost to JSON number parsers).
pub fn jreal(x: f64) -> Value {
    Value::String(real(x))
}

pub fn jreals(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| jreal(x)).collect())
}

/// An exact integer given in decimal, as a JSON number of any size.
pub fn jint(decimal: &str) -> Value {
    Value::Number(decimal.parse().expect("decimal integer"))
}

/// Writes `body` (an object) with the `meta` block first.
pub fn write_json(w: &mut dyn Write, meta: &Meta, body: Map<String, Value>) -> io::Result<()> {
    let mut obj = Map::new();
    obj.insert("meta".into(), meta.json());
    obj.extend(body);
    serde_json::to_writer_pretty(&mut *w, &Value::Object(obj))?;
    writeln!(w)
}

/// Columns of reals, one row per index, as CSV after the header.
pub fn write_columns(w: &mut dyn Write, meta: &Meta, names: &[&str], cols: &[&[f64]]) -> io::Result<()> {
    meta.csv_header(w)?;
    writeln!(w, "{}", names.join(","))?;
    let n = cols.first().map_or(0, |c| c.len());
    for i in 0..n {
        let row: Vec<String> = cols.iter().map(|c| real(c[i])).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}
