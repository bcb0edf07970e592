use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// A command's result in all three formats.
pub struct Output {
    pub text: String,
    pub csv: String,
    pub json: Value,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        let mut s = match format {
            Format::Text => self.text.clone(),
            Format::Csv => self.csv.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serialisable"),
        };
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    }
}

/// Quotes a CSV field when needed.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row<I: IntoIterator<Item = S>, S: AsRef<str>>(cells: I) -> String {
    let mut row = cells.into_iter().map(|c| csv_field(c.as_ref())).collect::<Vec<_>>().join(",");
    row.push('\n');
    row
}

/// Ten decimals, the precision used for every real number in text output.
pub fn real(v: f64) -> String {
    format!("{v:.10}")
}
