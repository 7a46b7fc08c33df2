//! Claim rows and their markdown and CSV renderings.

use std::fmt::{self, Write};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Section {
    Identity,
    Cohomology,
    Automorphisms,
    Action,
    Reduction,
    Extension,
    NullFiliform,
    Fingerprints,
}

impl Section {
    pub fn title(self) -> &'static str {
        match self {
            Section::Identity => "Zinbiel identity",
            Section::Cohomology => "Cohomology",
            Section::Automorphisms => "Automorphism templates",
            Section::Action => "Action on H²",
            Section::Reduction => "Orbit reduction cases",
            Section::Extension => "Extension table",
            Section::NullFiliform => "Extensions of F_n^0",
            Section::Fingerprints => "Fingerprint distinctness",
        }
    }

    fn key(self) -> &'static str {
        match self {
            Section::Identity => "identity",
            Section::Cohomology => "cohomology",
            Section::Automorphisms => "automorphisms",
            Section::Action => "action",
            Section::Reduction => "reduction",
            Section::Extension => "extension",
            Section::NullFiliform => "null_filiform",
            Section::Fingerprints => "fingerprints",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// The printed claim fails and a recorded correction passes.
    Erratum,
    /// A fingerprint collision listed in the committed collision file.
    ExpectedCollision,
    /// The printed claim fails, the failure is understood, and no correction is verified.
    ExplainedFail,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Erratum => "PASS (erratum)",
            Status::ExpectedCollision => "expected collision",
            Status::ExplainedFail => "FAIL (explained)",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Row {
    pub section: Section,
    pub family: String,
    pub n: usize,
    pub item: String,
    pub status: Status,
    /// Where the claim is made, in words.
    pub anchor: String,
    pub detail: String,
}

impl Row {
    pub fn new(section: Section, family: impl ToString, n: usize, item: impl Into<String>) -> Self {
        Row {
            section,
            family: family.to_string(),
            n,
            item: item.into(),
            status: Status::Pass,
            anchor: String::new(),
            detail: String::new(),
        }
    }

    pub fn anchor(mut self, a: impl Into<String>) -> Self {
        self.anchor = a.into();
        self
    }

    pub fn status(mut self, s: Status, detail: impl Into<String>) -> Self {
        self.status = s;
        self.detail = detail.into();
        self
    }

    pub fn check(self, ok: bool, detail: impl Into<String>) -> Self {
        self.status(if ok { Status::Pass } else { Status::Fail }, detail)
    }
}

#[derive(Clone, Debug)]
pub struct ReproduceReport {
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub rows: Vec<Row>,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

impl ReproduceReport {
    pub fn new(n_min: usize, n_max: usize, seed: u64, mut rows: Vec<Row>) -> Self {
        rows.sort_by(|a, b| (a.section, &a.family, a.n, &a.item).cmp(&(b.section, &b.family, b.n, &b.item)));
        ReproduceReport { n_min, n_max, seed, rows }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| matches!(r.status, Status::Fail | Status::ExplainedFail))
    }

    pub fn ok(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn count(&self, s: Status) -> usize {
        self.rows.iter().filter(|r| r.status == s).count()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("section,family,n,item,status,anchor,detail\n");
        for r in &self.rows {
            let cells = [r.section.key(), &r.family, &r.n.to_string(), &r.item, &r.status.to_string(), &r.anchor, &r.detail];
            let line: Vec<String> = cells.iter().map(|c| csv_field(c)).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Reproduction report\n");
        let _ = writeln!(s, "n = {}..{}, seed {}\n", self.n_min, self.n_max, self.seed);
        let _ = writeln!(
            s,
            "{} rows: {} PASS, {} PASS (erratum), {} expected collision, {} FAIL (explained), {} FAIL\n",
            self.rows.len(),
            self.count(Status::Pass),
            self.count(Status::Erratum),
            self.count(Status::ExpectedCollision),
            self.count(Status::ExplainedFail),
            self.count(Status::Fail)
        );
        let mut current = None;
        for r in &self.rows {
            if current != Some(r.section) {
                current = Some(r.section);
                let _ = writeln!(s, "\n## {}\n", r.section.title());
                let _ = writeln!(s, "| family | n | item | status | where | detail |\n|---|---|---|---|---|---|");
            }
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                md_cell(&r.family),
                r.n,
                md_cell(&r.item),
                r.status,
                md_cell(&r.anchor),
                md_cell(&r.detail)
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_sorted_and_quoted() {
        let rows = vec![
            Row::new(Section::Extension, "F1", 6, "2a").check(true, "a, b"),
            Row::new(Section::Cohomology, "F2", 5, "dims").check(false, "x"),
            Row::new(Section::Cohomology, "F1", 7, "dims").check(true, ""),
        ];
        let r = ReproduceReport::new(5, 7, 1, rows);
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[1], "cohomology,F1,7,dims,PASS,,");
        assert_eq!(lines[2], "cohomology,F2,5,dims,FAIL,,x");
        assert_eq!(lines[3], "extension,F1,6,2a,PASS,,\"a, b\"");
        assert!(!r.ok());
        assert!(r.to_markdown().contains("## Cohomology"));
    }
}
