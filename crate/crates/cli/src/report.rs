use std::io::{self, Write};
use std::time::Instant;

/// A tab-separated report: one `#`-prefixed header line naming the columns,
/// then one line per record. The last column is always `time_ms`.
pub struct Report {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    /// Records that count as violations or errors for the exit status.
    pub flagged: usize,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Report {
            columns: columns.to_vec(),
            rows: Vec::new(),
            flagged: 0,
        }
    }

    pub fn push(&mut self, row: Row) {
        assert_eq!(row.fields.len() + 1, self.columns.len(), "column count");
        self.flagged += usize::from(row.flagged);
        let mut fields = row.fields;
        fields.push(row.time_ms.to_string());
        self.rows.push(fields);
    }

    pub fn write(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "# {}", self.columns.join("\t"))?;
        for r in &self.rows {
            writeln!(out, "{}", r.join("\t"))?;
        }
        Ok(())
    }

    pub fn exit_code(&self) -> u8 {
        u8::from(self.flagged > 0)
    }
}

pub struct Row {
    fields: Vec<String>,
    flagged: bool,
    time_ms: u128,
}

impl Row {
    pub fn new(fields: Vec<String>, started: Instant) -> Self {
        Row {
            fields: fields.into_iter().map(|f| clean(&f)).collect(),
            flagged: false,
            time_ms: started.elapsed().as_millis(),
        }
    }

    pub fn flag(mut self, yes: bool) -> Self {
        self.flagged |= yes;
        self
    }

    /// A record for an input that could not be processed: `id`, then the
    /// message in the first result column and `-` elsewhere.
    pub fn error(id: String, width: usize, msg: &str, started: Instant) -> Self {
        let mut fields = vec![id, "-".into(), format!("error: {msg}")];
        fields.resize(width, "-".into());
        Row::new(fields, started).flag(true)
    }
}

/// Keeps records on one line and columns intact.
fn clean(s: &str) -> String {
    let s = s.replace(['\t', '\n', '\r'], " ");
    if s.is_empty() {
        "-".into()
    } else {
        s
    }
}
