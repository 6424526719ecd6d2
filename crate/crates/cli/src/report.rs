//! Reports shared by every subcommand, rendered as text, JSON or CSV from the
//! same data.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let row: Vec<String> = row.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// A two-column `key,value` table.
    pub fn fields<K: ToString, V: ToString>(name: &str, pairs: impl IntoIterator<Item = (K, V)>) -> Self {
        let mut t = Table::new(name, &["key", "value"]);
        for (k, v) in pairs {
            t.push([k.to_string(), v.to_string()]);
        }
        t
    }
}

/// A named block of free text, such as a printed presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub name: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Error => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: Vec<String>,
    pub tables: Vec<Table>,
    pub documents: Vec<Document>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub status: Status,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            schema: SCHEMA,
            command,
            tables: Vec::new(),
            documents: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            status: Status::Ok,
        }
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn document(&mut self, name: &str, text: String) {
        self.documents.push(Document { name: name.into(), text });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Records an assertion; a failed one marks the whole report failed.
    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        if !passed && self.status == Status::Ok {
            self.status = Status::Failed;
        }
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn fail_with(&mut self, message: impl Into<String>) {
        self.status = Status::Error;
        self.notes.push(format!("error: {}", message.into()));
    }

    pub fn table_named(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Tables with cells separated by ` | `. Notes, checks and documents follow.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "schema: {}", self.schema).unwrap();
        writeln!(out, "command: {}", self.command.join(" ")).unwrap();
        for t in &self.tables {
            writeln!(out, "\n== {} ==", t.name).unwrap();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|i| {
                    t.rows
                        .iter()
                        .map(|r| r[i].chars().count())
                        .chain([t.columns[i].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            for row in std::iter::once(&t.columns).chain(&t.rows) {
                let cells: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c:<w$}"))
                    .collect();
                writeln!(out, "{}", cells.join(" | ").trim_end()).unwrap();
            }
        }
        for d in &self.documents {
            writeln!(out, "\n== {} ==", d.name).unwrap();
            out.push_str(&d.text);
            if !d.text.ends_with('\n') {
                out.push('\n');
            }
        }
        if !self.checks.is_empty() {
            writeln!(out, "\nchecks:").unwrap();
            for c in &self.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "  {mark} {}: {}", c.name, c.detail).unwrap();
            }
        }
        if !self.notes.is_empty() {
            writeln!(out, "\nnotes:").unwrap();
            for n in &self.notes {
                writeln!(out, "  - {n}").unwrap();
            }
        }
        writeln!(out, "\nstatus: {}", self.status.as_str()).unwrap();
        out
    }

    /// Only the tables. With several tables each is preceded by a `# name`
    /// line and separated by a blank line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let several = self.tables.len() > 1;
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            if several {
                writeln!(out, "# {}", t.name).unwrap();
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&t.columns).expect("in-memory write");
            for r in &t.rows {
                w.write_record(r).expect("in-memory write");
            }
            out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf-8"));
        }
        out
    }
}

/// Recovers the tables from [`Report::to_text`] output.
/// Used to confirm that both renderings carry the same data.
pub fn parse_text_tables(text: &str) -> Vec<Table> {
    let mut tables = Vec::new();
    let mut current: Option<Table> = None;
    for line in text.lines() {
        if let Some(name) = line.strip_prefix("== ").and_then(|l| l.strip_suffix(" ==")) {
            tables.extend(current.take());
            current = Some(Table {
                name: name.into(),
                columns: Vec::new(),
                rows: Vec::new(),
            });
            continue;
        }
        let Some(t) = current.as_mut() else { continue };
        if line.is_empty() {
            tables.extend(current.take());
            continue;
        }
        let cells: Vec<String> = line.split(" | ").map(|c| c.trim().to_string()).collect();
        if t.columns.is_empty() {
            t.columns = cells;
        } else {
            t.rows.push(cells);
        }
    }
    tables.extend(current);
    tables
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new(vec!["ncalg".into(), "growth".into()]);
        let mut t = Table::new("series", &["degree", "count"]);
        t.push(["0", "1"]);
        t.push(["1", "2"]);
        r.table(t);
        r.table(Table::fields("summary", [("rules", "7"), ("order", "deglex x < y")]));
        r
    }

    #[test]
    fn failed_check_sets_status() {
        let mut r = sample();
        assert_eq!(r.status, Status::Ok);
        r.check("a", true, "");
        assert_eq!(r.status.exit_code(), 0);
        r.check("b", false, "off by one");
        assert_eq!(r.status, Status::Failed);
        assert_eq!(r.status.exit_code(), 1);
    }

    #[test]
    fn json_round_trips() {
        let r = sample();
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"schema\": 1"));
    }

    #[test]
    fn text_tables_parse_back() {
        let r = sample();
        assert_eq!(parse_text_tables(&r.to_text()), r.tables);
    }

    #[test]
    fn csv_single_table_has_plain_header() {
        let mut r = sample();
        r.tables.truncate(1);
        assert_eq!(r.to_csv(), "degree,count\n0,1\n1,2\n");
    }

    #[test]
    fn csv_quotes_commas() {
        let mut r = Report::new(vec![]);
        let mut t = Table::new("t", &["a"]);
        t.push(["x, y"]);
        r.table(t);
        assert_eq!(r.to_csv(), "a\n\"x, y\"\n");
    }
}
