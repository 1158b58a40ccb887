//! Reports: a table, free notes and named pass/fail checks.

use crate::config::Format;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub suite: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, columns: &[&str]) -> Self {
        Report { suite: suite.into(), columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
        pass
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    fn status_lines(&self, out: &mut String) {
        for c in &self.checks {
            out.push_str(&format!("{} {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail));
        }
        out.push_str(&format!("{} {}\n", if self.passed() { "PASS" } else { "FAIL" }, self.suite));
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                if !self.columns.is_empty() {
                    out.push_str(&self.columns.join(","));
                    out.push('\n');
                    for r in &self.rows {
                        out.push_str(&r.join(","));
                        out.push('\n');
                    }
                }
                for n in &self.notes {
                    out.push_str(&format!("# {n}\n"));
                }
            }
            Format::Text => {
                out.push_str(&format!("== {} ==\n", self.suite));
                if !self.columns.is_empty() {
                    let mut w: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
                    for r in &self.rows {
                        for (i, c) in r.iter().enumerate() {
                            w[i] = w[i].max(c.chars().count());
                        }
                    }
                    let line = |cells: &[String]| {
                        let padded: Vec<String> =
                            cells.iter().zip(&w).map(|(c, &n)| format!("{c}{}", " ".repeat(n - c.chars().count()))).collect();
                        padded.join("  ").trim_end().to_string() + "\n"
                    };
                    out.push_str(&line(&self.columns));
                    for r in &self.rows {
                        out.push_str(&line(r));
                    }
                }
                for n in &self.notes {
                    out.push_str(&format!("{n}\n"));
                }
            }
        }
        self.status_lines(&mut out);
        out
    }
}

/// Fixed-width scientific rendering used in every report.
pub fn sci(x: f64) -> String {
    format!("{x:.6e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_checks() {
        let mut r = Report::new("demo", &["a", "bb"]);
        r.row(vec!["1".into(), "2".into()]);
        r.check("one", true, "ok");
        assert!(r.passed());
        assert!(r.render(Format::Text).ends_with("PASS one: ok\nPASS demo\n"));
        r.check("two", false, "bad");
        assert!(!r.passed());
        let csv = r.render(Format::Csv);
        assert!(csv.starts_with("a,bb\n1,2\n"));
        assert!(csv.ends_with("FAIL two: bad\nFAIL demo\n"));
    }
}
