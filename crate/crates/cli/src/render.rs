//! Plain tables rendered as Markdown, CSV or LaTeX, plus JSON passthrough.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Md,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Table { title: title.into(), headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// What a command produces: the JSON document and a tabular view of it.
#[derive(Clone, Debug)]
pub struct Output {
    pub json: Value,
    pub tables: Vec<Table>,
}

pub fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Md => out.tables.iter().map(markdown).collect::<Vec<_>>().join("\n"),
        Format::Csv => out.tables.iter().map(csv_table).collect::<Vec<_>>().join("\n"),
        Format::Latex => out.tables.iter().map(latex).collect::<Vec<_>>().join("\n"),
    }
}

fn markdown(t: &Table) -> String {
    let mut s = String::new();
    if !t.title.is_empty() {
        let _ = writeln!(s, "### {}\n", t.title);
    }
    let cell = |c: &str| c.replace('|', "\\|");
    let _ = writeln!(s, "| {} |", t.headers.iter().map(|h| cell(h)).collect::<Vec<_>>().join(" | "));
    let _ = writeln!(s, "|{}|", t.headers.iter().map(|_| "---").collect::<Vec<_>>().join("|"));
    for r in &t.rows {
        let _ = writeln!(s, "| {} |", r.iter().map(|c| cell(c)).collect::<Vec<_>>().join(" | "));
    }
    s
}

fn csv_table(t: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.headers).expect("in-memory write");
    for r in &t.rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV of UTF-8 cells")
}

/// Escapes the characters that are special in LaTeX text mode.
pub fn latex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' | '%' | '$' | '#' | '_' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '~' => out.push_str("\\textasciitilde{}"),
            '^' => out.push_str("\\textasciicircum{}"),
            '\\' => out.push_str("\\textbackslash{}"),
            _ => out.push(ch),
        }
    }
    out
}

/// `√(p/q)` becomes `$\sqrt{p/q}$`; anything else is escaped text.
fn latex_cell(c: &str) -> String {
    match c.strip_prefix("√(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => format!("$\\sqrt{{{}}}$", latex_escape(inner)),
        None => latex_escape(c),
    }
}

fn latex(t: &Table) -> String {
    let mut s = String::new();
    if !t.title.is_empty() {
        let _ = writeln!(s, "% {}", t.title.replace('\n', " "));
    }
    let _ = writeln!(s, "\\begin{{tabular}}{{{}}}", "l".repeat(t.headers.len()));
    let _ = writeln!(s, "\\hline");
    let _ = writeln!(s, "{} \\\\", t.headers.iter().map(|h| latex_cell(h)).collect::<Vec<_>>().join(" & "));
    let _ = writeln!(s, "\\hline");
    for r in &t.rows {
        let _ = writeln!(s, "{} \\\\", r.iter().map(|c| latex_cell(c)).collect::<Vec<_>>().join(" & "));
    }
    let _ = writeln!(s, "\\hline");
    let _ = writeln!(s, "\\end{{tabular}}");
    s
}
