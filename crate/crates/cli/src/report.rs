//! Report model shared by every subcommand and its three renderings.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Output format selected with `--format`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl Format {
    pub fn tag(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Md => "md",
        }
    }
}

/// A titled table whose cells are already rendered as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Section {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Section { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let row: Vec<String> = row.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(row.len(), self.columns.len(), "row width in section {}", self.title);
        self.rows.push(row);
    }
}

/// Everything a subcommand prints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub format: String,
    pub params: BTreeMap<String, String>,
    pub sections: Vec<Section>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            format: Format::Md.tag().into(),
            params: BTreeMap::new(),
            sections: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn section(&mut self, s: Section) -> &mut Self {
        self.sections.push(s);
        self
    }

    pub fn note(&mut self, n: impl Into<String>) -> &mut Self {
        self.notes.push(n.into());
        self
    }

    /// Appends the sections and notes of `other`, prefixing its section titles.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut s in other.sections {
            s.title = format!("{prefix}: {}", s.title);
            self.sections.push(s);
        }
        self.notes.extend(other.notes);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => render_json(self),
            Format::Csv => render_csv(self),
            Format::Md => render_md(self),
        }
    }
}

/// Pretty JSON with object keys in sorted order, so that parsing the output
/// and rendering it again reproduces it byte for byte.
pub fn render_json(r: &Report) -> String {
    let value = serde_json::to_value(r).expect("reports serialize");
    canonical_json(&value)
}

fn canonical_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn render_csv(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# command: {}", r.command);
    for (k, v) in &r.params {
        let _ = writeln!(out, "# {k} = {v}");
    }
    for s in &r.sections {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&s.columns).expect("in-memory csv");
        for row in &s.rows {
            w.write_record(row).expect("in-memory csv");
        }
        let bytes = w.into_inner().expect("in-memory csv");
        let _ = writeln!(out, "\n# {}", s.title);
        out.push_str(&String::from_utf8(bytes).expect("utf-8 cells"));
    }
    for n in &r.notes {
        let _ = writeln!(out, "\n# note: {n}");
    }
    out
}

fn render_md(r: &Report) -> String {
    let mut out = format!("# {}\n", r.command);
    if !r.params.is_empty() {
        out.push('\n');
        for (k, v) in &r.params {
            let _ = writeln!(out, "- {k}: {v}");
        }
    }
    for s in &r.sections {
        let _ = writeln!(out, "\n## {}\n", s.title);
        out.push_str(&md_table(s));
    }
    if !r.notes.is_empty() {
        out.push_str("\nNotes:\n\n");
        for n in &r.notes {
            let _ = writeln!(out, "- {n}");
        }
    }
    out
}

fn md_table(s: &Section) -> String {
    let width = |i: usize| {
        s.rows.iter().map(|r| r[i].chars().count()).chain([s.columns[i].chars().count(), 3]).max().unwrap_or(3)
    };
    let widths: Vec<usize> = (0..s.columns.len()).map(width).collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut out = line(&s.columns);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&format!("|-{}-|\n", rule.join("-|-")));
    for r in &s.rows {
        out.push_str(&line(r));
    }
    out
}
