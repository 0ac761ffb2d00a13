//! Records and their CSV / JSON rendering.

use std::io::Write;

use meantail::meantail::Value;
use meantail::Rational;
use serde_json::{json, Map, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One output field.
#[derive(Debug, Clone)]
pub enum Cell {
    Text(String),
    UInt(u64),
    Bool(bool),
    /// Exact or certified number; expands to a value and a decimal column in CSV.
    Num(Value),
    /// Ordered sub-fields; a nested object in JSON, `k=v; k=v` text in CSV.
    Group(Vec<(String, Cell)>),
    /// A JSON array, ` | `-joined text in CSV.
    List(Vec<String>),
    Missing,
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::UInt(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<Value> for Cell {
    fn from(v: Value) -> Self {
        Cell::Num(v)
    }
}

impl From<Rational> for Cell {
    fn from(q: Rational) -> Self {
        Cell::Num(Value::Exact(q))
    }
}

pub type Record = Vec<(String, Cell)>;

/// Decimal rendering settings; decimals are display-only.
#[derive(Debug, Clone, Copy)]
pub struct Style {
    pub digits: usize,
}

impl Style {
    pub fn decimal(&self, v: &Value) -> String {
        match v {
            Value::Exact(q) => q.to_decimal_string(self.digits),
            Value::Certified(c) => c.midpoint().to_decimal_string(self.digits),
        }
    }

    /// `p/q` for exact values, `midpoint ± radius` for enclosures.
    pub fn exact_text(&self, v: &Value) -> String {
        match v {
            Value::Exact(q) => q.to_fraction_string(),
            Value::Certified(c) => format!(
                "{} ± {}",
                c.midpoint().to_decimal_string(self.digits),
                c.radius().to_scientific_upper(3)
            ),
        }
    }

    fn value_json(&self, v: &Value) -> Json {
        match v {
            Value::Exact(q) => json!({ "exact": q.to_fraction_string(), "decimal": self.decimal(v) }),
            Value::Certified(c) => json!({
                "midpoint_decimal": c.midpoint().to_decimal_string(self.digits),
                "radius_decimal": c.radius().to_scientific_upper(3),
                "precision_bits": c.precision_bits(),
            }),
        }
    }

    pub fn cell_json(&self, cell: &Cell) -> Json {
        match cell {
            Cell::Text(s) => Json::String(s.clone()),
            Cell::UInt(v) => json!(v),
            Cell::Bool(b) => json!(b),
            Cell::Num(v) => self.value_json(v),
            Cell::Group(fields) => Json::Object(self.record_json(fields)),
            Cell::List(items) => json!(items),
            Cell::Missing => Json::Null,
        }
    }

    pub fn record_json(&self, record: &Record) -> Map<String, Json> {
        record.iter().map(|(k, c)| (k.clone(), self.cell_json(c))).collect()
    }

    fn cell_text(&self, cell: &Cell) -> String {
        match cell {
            Cell::Text(s) => s.clone(),
            Cell::UInt(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Num(v) => self.exact_text(v),
            Cell::Group(fields) => fields
                .iter()
                .map(|(k, c)| format!("{k}={}", self.cell_text(c)))
                .collect::<Vec<_>>()
                .join("; "),
            Cell::List(items) => items.join(" | "),
            Cell::Missing => String::new(),
        }
    }

    fn csv_columns(&self, record: &Record) -> (Vec<String>, Vec<String>) {
        let mut names = Vec::new();
        let mut fields = Vec::new();
        for (k, c) in record {
            names.push(k.clone());
            fields.push(self.cell_text(c));
            if let Cell::Num(v) = c {
                names.push(format!("{k}_decimal"));
                fields.push(self.decimal(v));
            }
        }
        (names, fields)
    }
}

/// Streams records in order as CSV rows or as a JSON array.
pub struct RecordWriter<W: Write> {
    style: Style,
    kind: Kind<W>,
    count: usize,
}

enum Kind<W: Write> {
    Csv(csv::Writer<W>),
    Json(W),
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W, format: Format, style: Style) -> Self {
        let kind = match format {
            Format::Csv => Kind::Csv(
                csv::WriterBuilder::new()
                    .quote_style(csv::QuoteStyle::NonNumeric)
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(out),
            ),
            Format::Json => Kind::Json(out),
        };
        Self { style, kind, count: 0 }
    }

    pub fn write(&mut self, record: &Record) -> std::io::Result<()> {
        match &mut self.kind {
            Kind::Csv(w) => {
                let (names, fields) = self.style.csv_columns(record);
                if self.count == 0 {
                    w.write_record(&names)?;
                }
                w.write_record(&fields)?;
                w.flush()?;
            }
            Kind::Json(w) => {
                let sep = if self.count == 0 { "[\n  " } else { ",\n  " };
                let obj = Json::Object(self.style.record_json(record));
                write!(w, "{sep}{}", serde_json::to_string(&obj)?)?;
                w.flush()?;
            }
        }
        self.count += 1;
        Ok(())
    }

    pub fn finish(self) -> std::io::Result<()> {
        match self.kind {
            Kind::Csv(mut w) => w.flush(),
            Kind::Json(mut w) => {
                if self.count == 0 {
                    writeln!(w, "[]")
                } else {
                    writeln!(w, "\n]")
                }
            }
        }
    }
}

/// Writes records keyed by the text of their first field (JSON) or as CSV rows.
pub fn write_keyed<W: Write>(mut out: W, format: Format, style: Style, records: &[Record]) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = RecordWriter::new(out, format, style);
            for r in records {
                w.write(r)?;
            }
            w.finish()
        }
        Format::Json => {
            let mut top = Map::new();
            for r in records {
                let key = match r.first() {
                    Some((_, Cell::Text(s))) => s.clone(),
                    _ => String::new(),
                };
                top.insert(key, Json::Object(style.record_json(&r[1..].to_vec())));
            }
            serde_json::to_writer_pretty(&mut out, &Json::Object(top))?;
            writeln!(out)
        }
    }
}

/// Writes a single record as one CSV row or one JSON object.
pub fn write_single<W: Write>(mut out: W, format: Format, style: Style, record: &Record) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = RecordWriter::new(out, format, style);
            w.write(record)?;
            w.finish()
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &Json::Object(style.record_json(record)))?;
            writeln!(out)
        }
    }
}
