use std::fmt;

/// Key/value lines with the values aligned in one column, followed by
/// optional free-form lines.
#[derive(Debug, Default)]
pub struct Summary {
    fields: Vec<(String, String)>,
    tail: Vec<String>,
}

impl Summary {
    pub fn new() -> Self {
        Summary::default()
    }

    pub fn field(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.fields.push((key.to_owned(), value.to_string()));
        self
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.tail.push(text.into());
        self
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            writeln!(f, "{k:<width$}  {v}")?;
        }
        for l in &self.tail {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Right-aligned columns under a header row.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> Vec<String> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let render = |cells: &mut dyn Iterator<Item = &str>| {
        cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = vec![render(&mut header.iter().copied())];
    out.extend(rows.iter().map(|r| render(&mut r.iter().map(String::as_str))));
    out
}
